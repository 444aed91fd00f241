//! Prime-field arithmetic with a fixed primitive root.
//!
//! A [`FieldCtx`] stores the full power and discrete-log tables of `F_q`, so
//! `dlog` and `class_index` are table lookups. Elements are canonical residues
//! in `0..q`.

use crate::error::{Error, Result};

/// A field element, always a canonical residue in `0..q`.
pub type Elem = u32;

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n`, ascending.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// `q` is a prime with `q ≡ 2k+1 (mod 4k)`.
pub fn admissible(q: u64, k: u64) -> bool {
    k >= 1 && is_prime(q) && q % (4 * k) == 2 * k + 1
}

fn pow_mod(base: u64, mut e: u64, m: u64) -> u64 {
    let mut b = base % m;
    let mut acc = 1 % m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

fn is_primitive(g: u64, q: u64, factors: &[u64]) -> bool {
    g % q != 0 && factors.iter().all(|&p| pow_mod(g, (q - 1) / p, q) != 1)
}

/// Smallest primitive root of the prime `q`.
pub fn smallest_primitive_root(q: u32) -> Result<u32> {
    let q64 = u64::from(q);
    if q < 3 || !is_prime(q64) {
        return Err(Error::NotPrime(q64));
    }
    let factors = prime_factors(q64 - 1);
    (2..q)
        .find(|&g| is_primitive(u64::from(g), q64, &factors))
        .ok_or(Error::NotPrime(q64))
}

/// The prime field `F_q` with a primitive root `g` and cyclotomic classes of order `2k`.
#[derive(Debug, Clone)]
pub struct FieldCtx {
    q: u32,
    k: u32,
    g: u32,
    // exp[i] = g^i for i in 0..q-1
    exp: Vec<u32>,
    // dlog[x] for x in 1..q; dlog[0] is unused
    dlog: Vec<u32>,
}

impl FieldCtx {
    /// Builds the context; `g` defaults to the smallest primitive root of `q`.
    pub fn new(q: u32, k: u32, g: Option<u32>) -> Result<Self> {
        let q64 = u64::from(q);
        if q < 3 || !is_prime(q64) {
            return Err(Error::NotPrime(q64));
        }
        if k < 3 {
            return Err(Error::BlockSizeTooSmall(k));
        }
        let g = match g {
            Some(g) => {
                let factors = prime_factors(q64 - 1);
                if g <= 1 || g >= q || !is_primitive(u64::from(g), q64, &factors) {
                    return Err(Error::NotPrimitive { q, g });
                }
                g
            }
            None => smallest_primitive_root(q)?,
        };
        let order = (q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut dlog = vec![u32::MAX; q as usize];
        let mut x = 1u64;
        for i in 0..order {
            exp.push(x as u32);
            dlog[x as usize] = i as u32;
            x = x * u64::from(g) % q64;
        }
        Ok(Self { q, k, g, exp, dlog })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn primitive_root(&self) -> u32 {
        self.g
    }

    /// Order `2k` of the cyclotomic classes.
    pub fn class_order(&self) -> u32 {
        2 * self.k
    }

    /// `(q-1)/(2k)`: the size of each cyclotomic class when `q` is admissible.
    pub fn class_size(&self) -> u32 {
        (self.q - 1) / self.class_order()
    }

    pub fn is_admissible(&self) -> bool {
        admissible(u64::from(self.q), u64::from(self.k))
    }

    /// Reduces an arbitrary integer to a canonical residue.
    pub fn reduce(&self, x: i64) -> Elem {
        x.rem_euclid(i64::from(self.q)) as Elem
    }

    /// Checks that `x` is a canonical residue.
    pub fn elem(&self, x: u64) -> Result<Elem> {
        if x < u64::from(self.q) {
            Ok(x as Elem)
        } else {
            Err(Error::OutOfRange { value: x, q: self.q })
        }
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let s = u64::from(a) + u64::from(b);
        (s % u64::from(self.q)) as Elem
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        (u64::from(a) * u64::from(b) % u64::from(self.q)) as Elem
    }

    /// Multiplicative inverse via the log tables.
    pub fn inv(&self, a: Elem) -> Result<Elem> {
        let l = self.dlog(a)?;
        Ok(self.power((self.q - 1 - l) % (self.q - 1)))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// `g^e`, with `e` taken modulo `q-1`.
    pub fn power(&self, e: u32) -> Elem {
        self.exp[(e % (self.q - 1)) as usize]
    }

    /// Discrete logarithm to base `g`, in `0..q-1`.
    pub fn dlog(&self, x: Elem) -> Result<u32> {
        if x == 0 {
            return Err(Error::ZeroElement);
        }
        self.dlog
            .get(x as usize)
            .copied()
            .ok_or(Error::OutOfRange { value: u64::from(x), q: self.q })
    }

    /// Table lookup without the zero check; `x` must be a nonzero residue.
    #[inline]
    pub(crate) fn log_of(&self, x: Elem) -> u32 {
        debug_assert!(x != 0 && x < self.q);
        self.dlog[x as usize]
    }

    /// Index `i` in `0..2k` of the cyclotomic class `C_i` containing `x`.
    pub fn class_index(&self, x: Elem) -> Result<u32> {
        Ok(self.dlog(x)? % self.class_order())
    }

    /// `(dlog(a) - dlog(b)) mod (q-1)`, the log of `a/b`.
    #[inline]
    pub(crate) fn log_ratio(&self, a: Elem, b: Elem) -> u32 {
        let m = self.q - 1;
        (self.log_of(a) + m - self.log_of(b)) % m
    }

    /// Elements of the class `C_i`, in increasing discrete-log order.
    pub fn class_elements(&self, i: u32) -> Vec<Elem> {
        let step = self.class_order();
        (0..self.class_size())
            .map(|t| self.power(i % step + step * t))
            .collect()
    }

    /// `g^{2k}`, the generator of the index-2k subgroup `C_0`.
    pub fn subgroup_generator(&self) -> Elem {
        self.power(self.class_order())
    }
}
