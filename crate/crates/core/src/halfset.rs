//! Cyclotomic half-sets `V = ±C_0 ∪ ±C_1 ∪ … ∪ ±C_{k-1}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

/// A half-set of `(F_q, +)` built from signed cyclotomic classes of order `2k`.
///
/// Part `V_i` is `C_i` when `signs[i] == 0` and `-C_i = C_{i+k}` otherwise.
/// `signs[0]` is always 0.
#[derive(Debug, Clone)]
pub struct HalfSet {
    ctx: Arc<FieldCtx>,
    signs: Vec<u8>,
    // part[x] = i if x ∈ V_i, u8::MAX otherwise (including x = 0)
    part: Vec<u8>,
}

impl HalfSet {
    pub fn new(ctx: Arc<FieldCtx>, signs: &[u8]) -> Result<Self> {
        let k = ctx.k() as usize;
        if !ctx.is_admissible() {
            return Err(Error::NotAdmissible { q: ctx.q(), k: ctx.k() });
        }
        if signs.len() != k {
            return Err(Error::SignLength { expected: k, got: signs.len() });
        }
        if let Some(&bad) = signs.iter().find(|&&s| s > 1) {
            return Err(Error::BadSign(bad));
        }
        if signs[0] != 0 {
            return Err(Error::NonzeroFirstSign);
        }
        let mut part = vec![u8::MAX; ctx.q() as usize];
        for x in 1..ctx.q() {
            let c = ctx.log_of(x) % ctx.class_order();
            let (i, neg) = if (c as usize) < k { (c as usize, 0) } else { (c as usize - k, 1) };
            if signs[i] == neg {
                part[x as usize] = i as u8;
            }
        }
        Ok(Self { ctx, signs: signs.to_vec(), part })
    }

    /// The standard half-set `C_0 ∪ … ∪ C_{k-1}`.
    pub fn standard(ctx: Arc<FieldCtx>) -> Result<Self> {
        let k = ctx.k() as usize;
        Self::new(ctx, &vec![0; k])
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn k(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[u8] {
        &self.signs
    }

    pub fn is_standard(&self) -> bool {
        self.signs.iter().all(|&s| s == 0)
    }

    /// The index `i` with `x ∈ V_i`, or `None` when `x ∉ V`.
    pub fn locate(&self, x: Elem) -> Option<usize> {
        match self.part.get(x as usize) {
            Some(&p) if p != u8::MAX => Some(p as usize),
            _ => None,
        }
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.locate(x).is_some()
    }

    /// Cyclotomic class index of the part `V_i`.
    pub fn part_class(&self, i: usize) -> u32 {
        i as u32 + u32::from(self.signs[i]) * self.ctx.k()
    }

    /// Elements of `V_i` in increasing discrete-log order.
    pub fn part_elements(&self, i: usize) -> Vec<Elem> {
        self.ctx.class_elements(self.part_class(i))
    }

    /// All points of `V`, ascending.
    pub fn elements(&self) -> Vec<Elem> {
        (1..self.ctx.q()).filter(|&x| self.contains(x)).collect()
    }
}

/// Every sign vector with leading zero, in binary counting order.
pub fn all_sign_vectors(k: usize) -> Vec<Vec<u8>> {
    (0..1u32 << (k - 1))
        .map(|m| {
            let mut v = vec![0u8; k];
            for (i, s) in v.iter_mut().enumerate().skip(1) {
                *s = ((m >> (i - 1)) & 1) as u8;
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::admissible;

    fn ctx(q: u32, k: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(q, k, None).unwrap())
    }

    #[test]
    fn signed_half_set_over_f73() {
        let w = HalfSet::new(ctx(73, 4), &[0, 1, 0, 0]).unwrap();
        assert_eq!(w.locate(68), Some(1));
        assert_eq!(w.locate(5), None);
        assert_eq!(w.locate(0), None);
        let v = HalfSet::standard(ctx(73, 4)).unwrap();
        assert_eq!(v.locate(1), Some(0));
        assert_eq!(v.locate(5), Some(1));
        assert_eq!(v.locate(25), Some(2));
        assert_eq!(v.locate(52), Some(3));
    }

    #[test]
    fn alternating_signs_over_f71_give_the_squares() {
        let w = HalfSet::new(ctx(71, 5), &[0, 1, 0, 1, 0]).unwrap();
        let squares: std::collections::BTreeSet<u32> = (1..71u32).map(|x| x * x % 71).collect();
        let elems: std::collections::BTreeSet<u32> = w.elements().into_iter().collect();
        assert_eq!(elems, squares);
    }

    #[test]
    fn construction_errors() {
        assert!(matches!(
            HalfSet::new(ctx(73, 4), &[1, 0, 0, 0]),
            Err(Error::NonzeroFirstSign)
        ));
        assert!(matches!(
            HalfSet::new(ctx(73, 4), &[0, 0, 0]),
            Err(Error::SignLength { expected: 4, got: 3 })
        ));
        assert!(matches!(
            HalfSet::standard(ctx(73, 3)),
            Err(Error::NotAdmissible { q: 73, k: 3 })
        ));
    }

    #[test]
    fn half_set_axioms_for_small_fields() {
        for k in 3..=6u32 {
            for q in (3..500u32).filter(|&q| admissible(q.into(), k.into())) {
                let c = ctx(q, k);
                let signs = all_sign_vectors(k as usize);
                assert_eq!(signs.len(), 1 << (k - 1));
                for s in signs {
                    let hs = HalfSet::new(c.clone(), &s).unwrap();
                    let elems = hs.elements();
                    assert_eq!(elems.len() as u32, (q - 1) / 2);
                    for x in 1..q {
                        assert!(hs.contains(x) != hs.contains(q - x));
                    }
                }
            }
        }
    }

    #[test]
    fn subgroup_fixes_each_part() {
        let hs = HalfSet::new(ctx(109, 6), &[0, 1, 0, 1, 0, 0]).unwrap();
        let f = hs.ctx().clone();
        for t in f.class_elements(0) {
            for x in hs.elements() {
                assert_eq!(hs.locate(f.mul(t, x)), hs.locate(x));
            }
        }
    }
}
