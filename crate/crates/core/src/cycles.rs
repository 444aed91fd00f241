//! Orthogonal `k`-cycle systems of `K_q` from simple Heffter spaces.
//!
//! An ordered block `(b_0, …, b_{k-1})` with distinct partial sums gives the
//! base cycle `(s_0, s_1, …, s_{k-2}, 0)`, whose edge differences are `±b_i`.
//! A parallel class covers every nonzero difference once up to sign, so the
//! translates of its base cycles by all of `F_q` decompose `K_q`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::hdm::{partial_sums, row_is_simple};
use crate::space::HeffterSpace;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleSystem {
    pub q: u32,
    pub k: usize,
    pub cycles: Vec<Vec<Elem>>,
}

impl CycleSystem {
    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.cycles.iter().map(Vec::len).sum()
    }

    /// Line format: header `q=<q> k=<k> system=<h>`, then one canonical cycle per line.
    pub fn to_text(&self, system: usize) -> String {
        let mut out = format!("q={} k={} system={}\n", self.q, self.k, system);
        for c in &self.cycles {
            let c = canonical_cycle(c);
            let line: Vec<String> = c.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }

    pub fn from_text(text: &str) -> Result<(Self, usize)> {
        let bad = |m: &str| Error::Certificate(m.to_string());
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty cycle file"))?;
        let mut q = None;
        let mut k = None;
        let mut system = None;
        for field in header.split_whitespace() {
            let (key, value) = field.split_once('=').ok_or_else(|| bad("malformed header"))?;
            let value: usize = value.parse().map_err(|_| bad("malformed header value"))?;
            match key {
                "q" => q = Some(value as u32),
                "k" => k = Some(value),
                "system" => system = Some(value),
                _ => return Err(bad("unknown header field")),
            }
        }
        let (q, k, system) = match (q, k, system) {
            (Some(q), Some(k), Some(s)) => (q, k, s),
            _ => return Err(bad("header must carry q, k and system")),
        };
        let cycles = lines
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split(',').map(|v| v.trim().parse::<u32>().map_err(|_| bad("bad vertex"))).collect())
            .collect::<Result<Vec<Vec<u32>>>>()?;
        Ok((CycleSystem { q, k, cycles }, system))
    }
}

/// Rotation starting at the minimum vertex, direction chosen so the second
/// vertex is the smaller neighbour.
pub fn canonical_cycle(c: &[Elem]) -> Vec<Elem> {
    let len = c.len();
    if len < 3 {
        return c.to_vec();
    }
    let start = (0..len).min_by_key(|&i| c[i]).unwrap_or(0);
    let next = c[(start + 1) % len];
    let prev = c[(start + len - 1) % len];
    if next <= prev {
        (0..len).map(|i| c[(start + i) % len]).collect()
    } else {
        (0..len).map(|i| c[(start + len - i) % len]).collect()
    }
}

/// First ordering (lexicographic over permutations fixing the first element)
/// with pairwise distinct partial sums.
pub fn order_block_simple(ctx: &FieldCtx, block: &[Elem]) -> Result<Vec<Elem>> {
    let sum = block.iter().fold(0, |acc, &x| ctx.add(acc, x));
    let bad = block.iter().any(|&x| x == 0 || block.contains(&ctx.neg(x)));
    if block.is_empty() || sum != 0 || bad {
        return Err(Error::InvalidBlock(block.to_vec()));
    }
    let k = block.len();
    let mut order = vec![block[0]];
    let mut used = vec![false; k];
    used[0] = true;
    let mut sums = vec![block[0]];

    fn go(ctx: &FieldCtx, block: &[Elem], used: &mut [bool], order: &mut Vec<Elem>, sums: &mut Vec<Elem>) -> bool {
        if order.len() == block.len() {
            return true;
        }
        let last = *sums.last().unwrap();
        for i in 0..block.len() {
            if used[i] {
                continue;
            }
            let s = ctx.add(last, block[i]);
            // the full sum is 0, so intermediate sums must avoid it
            let is_last = order.len() + 1 == block.len();
            if sums.contains(&s) || (!is_last && s == 0) {
                continue;
            }
            used[i] = true;
            order.push(block[i]);
            sums.push(s);
            if go(ctx, block, used, order, sums) {
                return true;
            }
            used[i] = false;
            order.pop();
            sums.pop();
        }
        false
    }

    if go(ctx, block, &mut used, &mut order, &mut sums) {
        Ok(order)
    } else {
        Err(Error::NoSimpleOrdering(block.to_vec()))
    }
}

/// Base cycle `(s_0, …, s_{k-2}, 0)` of a simple ordered block.
pub fn base_cycle(ctx: &FieldCtx, block: &[Elem]) -> Result<Vec<Elem>> {
    if !row_is_simple(ctx, block) {
        return Err(Error::NotSimple(block.to_vec()));
    }
    Ok(partial_sums(ctx, block))
}

/// One cycle system per parallel class. Blocks whose stored order is not simple are reordered.
pub fn build_cycle_systems(s: &HeffterSpace) -> Result<Vec<CycleSystem>> {
    let ctx = s.ctx();
    let q = ctx.q();
    s.classes()
        .iter()
        .map(|class| {
            let mut cycles = Vec::with_capacity(class.len() * q as usize);
            let bases = class
                .iter()
                .map(|block| {
                    let ordered =
                        if row_is_simple(ctx, block) { block.clone() } else { order_block_simple(ctx, block)? };
                    base_cycle(ctx, &ordered)
                })
                .collect::<Result<Vec<_>>>()?;
            for base in &bases {
                for gamma in 0..q {
                    cycles.push(base.iter().map(|&x| ctx.add(x, gamma)).collect());
                }
            }
            Ok(CycleSystem { q, k: s.k(), cycles })
        })
        .collect()
}

fn edge_index(q: u32, a: Elem, b: Elem) -> usize {
    let (lo, hi) = (a.min(b), a.max(b));
    lo as usize * q as usize + hi as usize
}

fn cycle_edges(c: &[Elem]) -> impl Iterator<Item = (Elem, Elem)> + '_ {
    (0..c.len()).map(move |i| (c[i], c[(i + 1) % c.len()]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CycleDefect {
    /// Cycle with a repeated or out-of-range vertex, or the wrong length.
    BadCycle(usize),
    DoubleEdge(Elem, Elem),
    MissingEdge(Elem, Elem),
}

/// `Ok(())` when the cycles partition the edges of `K_q`, otherwise the first defect.
pub fn check_cycle_system(cs: &CycleSystem) -> std::result::Result<(), CycleDefect> {
    let q = cs.q;
    let mut covered = vec![0u8; q as usize * q as usize];
    for (id, c) in cs.cycles.iter().enumerate() {
        let mut vertices = c.clone();
        vertices.sort_unstable();
        vertices.dedup();
        if c.len() != cs.k || vertices.len() != cs.k || c.iter().any(|&x| x >= q) {
            return Err(CycleDefect::BadCycle(id));
        }
        for (a, b) in cycle_edges(c) {
            let e = &mut covered[edge_index(q, a, b)];
            if *e == 1 {
                return Err(CycleDefect::DoubleEdge(a.min(b), a.max(b)));
            }
            *e = 1;
        }
    }
    for a in 0..q {
        for b in a + 1..q {
            if covered[edge_index(q, a, b)] == 0 {
                return Err(CycleDefect::MissingEdge(a, b));
            }
        }
    }
    Ok(())
}

pub fn verify_cycle_system(cs: &CycleSystem) -> bool {
    check_cycle_system(cs).is_ok()
}

/// No cycle of `a` shares more than one edge with a cycle of `b`.
pub fn verify_orthogonal(a: &CycleSystem, b: &CycleSystem) -> bool {
    if a.q != b.q || a.k != b.k {
        return false;
    }
    let q = a.q;
    // CSR map edge -> cycle ids of `a` through it
    let mut count = vec![0u32; q as usize * q as usize + 1];
    for c in &a.cycles {
        for (x, y) in cycle_edges(c) {
            count[edge_index(q, x, y) + 1] += 1;
        }
    }
    for i in 1..count.len() {
        count[i] += count[i - 1];
    }
    let mut fill = count.clone();
    let mut owners = vec![0u32; *count.last().unwrap() as usize];
    for (id, c) in a.cycles.iter().enumerate() {
        for (x, y) in cycle_edges(c) {
            let e = edge_index(q, x, y);
            owners[fill[e] as usize] = id as u32;
            fill[e] += 1;
        }
    }
    let mut ids = Vec::new();
    b.cycles.iter().all(|c| {
        ids.clear();
        for (x, y) in cycle_edges(c) {
            let e = edge_index(q, x, y);
            ids.extend_from_slice(&owners[count[e] as usize..count[e + 1] as usize]);
        }
        ids.sort_unstable();
        ids.windows(2).all(|w| w[0] != w[1])
    })
}

/// `⌊n/k³⌋` with `n = (q-1)/(2k)`.
pub fn guaranteed_count(q: u64, k: u64) -> Result<u64> {
    let not_admissible = Error::NotAdmissible { q: q as u32, k: k as u32 };
    if k < 3 || !crate::field::is_prime(q) || (q - 1) % (2 * k) != 0 {
        return Err(not_admissible);
    }
    let n = (q - 1) / (2 * k);
    if n % 2 == 0 {
        return Err(not_admissible);
    }
    Ok(n / k.pow(3))
}
