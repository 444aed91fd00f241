//! Row-by-row greedy construction of simple matrices over the standard half-set.
//!
//! Given a simple `(V,k,r-1)` matrix `A`, a new row is built as follows:
//! `b_0 ∈ C_0`, then `b_j ∈ C_j \ (Y_j ∪ Y'_j)` for `1 ≤ j ≤ k-3`, where
//!
//! * `Y_j  = { b_i · a_{h,j} / a_{h,i} : rows h, 0 ≤ i < j }` (new ratios),
//! * `Y'_j = { -(b_h + … + b_{j-1}) : 0 ≤ h < j }` (new partial sums).
//!
//! With `s = b_0 + … + b_{k-3}`, the last two entries are `x` and `-x-s` for
//! some `x ∈ X \ Z`, where `X = { x ∈ C_{k-2} : -x-s ∈ C_{k-1} }` and `Z` is
//! the union of
//!
//! * `Z_1 = { b_j · a_{h,k-2} / a_{h,j} }`,
//! * `Z_2 = { -s - b_j · a_{h,k-1} / a_{h,j} }`,
//! * `Z_3 = { -s · a_{h,k-2} / (a_{h,k-2} + a_{h,k-1}) }`,
//! * `Z_4 = { -(b_i + … + b_{k-3}) : 0 ≤ i ≤ k-3 }`.
//!
//! `|Z| ≤ (2r-1)(k-2) + r - 1` always holds and is asserted. Every output is
//! re-verified before it is returned.

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::halfset::HalfSet;
use crate::hdm::HeffterDifferenceMatrix;

use super::bound::forbidden_bound;

/// Membership rule for the next-to-last entry `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum XRule {
    /// `-x-s ∈ C_{k-1}`: the last entry lands in the right class.
    #[default]
    ZeroSum,
    /// `x+s ∈ C_{k-1}`, as the condition is sometimes written; the resulting
    /// last entry is in `-C_{k-1}`, so verification rejects the row.
    Literal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GreedyStats {
    pub x_size: usize,
    pub z_size: usize,
    /// `(2r-1)(k-2) + r - 1` for the row being built.
    pub n: usize,
}

fn pick(mut choices: Vec<Elem>, rng: &mut Option<ChaCha8Rng>) -> Option<Elem> {
    if choices.is_empty() {
        return None;
    }
    let i = match rng {
        Some(rng) => rng.random_range(0..choices.len()),
        None => 0,
    };
    Some(choices.swap_remove(i))
}

fn ratio(ctx: &FieldCtx, a: Elem, b: Elem) -> Elem {
    ctx.div(a, b).expect("matrix entries are nonzero")
}

/// Appends one row to `a`. With `rng = None` every choice takes the candidate of
/// smallest discrete log.
pub fn greedy_extend(
    a: &HeffterDifferenceMatrix,
    rng: &mut Option<ChaCha8Rng>,
    rule: XRule,
) -> Result<(HeffterDifferenceMatrix, GreedyStats)> {
    let hs = a.halfset();
    let ctx = hs.ctx().clone();
    let k = hs.k();
    if !hs.is_standard() {
        return Err(Error::InvalidHdm("greedy extension needs the standard half-set".into()));
    }
    let report = a.verify()?;
    if !report.is_valid() || !a.is_simple() {
        return Err(Error::InvalidHdm(format!("starting matrix is not a simple HDM: {report}")));
    }
    let row_no = a.r() + 1;
    let empty = |stage: String| Error::EmptyChoiceSet { stage, row: row_no };
    let rows = a.rows();

    let mut b: Vec<Elem> = Vec::with_capacity(k);
    b.push(pick(ctx.class_elements(0), rng).ok_or_else(|| empty("b0".into()))?);
    for j in 1..k - 2 {
        let mut forbidden = BTreeSet::new();
        for row in rows {
            for (i, &bi) in b.iter().enumerate() {
                forbidden.insert(ctx.mul(bi, ratio(&ctx, row[j], row[i])));
            }
        }
        for h in 0..j {
            let tail = b[h..j].iter().fold(0, |acc, &x| ctx.add(acc, x));
            forbidden.insert(ctx.neg(tail));
        }
        let choices: Vec<Elem> = ctx.class_elements(j as u32).into_iter().filter(|x| !forbidden.contains(x)).collect();
        b.push(pick(choices, rng).ok_or_else(|| empty(format!("b{j}")))?);
    }

    let s = b.iter().fold(0, |acc, &x| ctx.add(acc, x));
    let last_class = (k - 1) as u32;
    let x_set: Vec<Elem> = ctx
        .class_elements((k - 2) as u32)
        .into_iter()
        .filter(|&x| {
            let probe = match rule {
                XRule::ZeroSum => ctx.neg(ctx.add(x, s)),
                XRule::Literal => ctx.add(x, s),
            };
            probe != 0 && ctx.class_index(probe).ok() == Some(last_class)
        })
        .collect();

    let mut z = BTreeSet::new();
    for row in rows {
        let (pen, last) = (row[k - 2], row[k - 1]);
        for (j, &bj) in b.iter().enumerate() {
            z.insert(ctx.mul(bj, ratio(&ctx, pen, row[j])));
            z.insert(ctx.sub(ctx.neg(s), ctx.mul(bj, ratio(&ctx, last, row[j]))));
        }
        let denom = ctx.add(pen, last);
        assert!(denom != 0, "a_(h,k-2) + a_(h,k-1) vanished in a verified matrix");
        z.insert(ctx.neg(ctx.mul(s, ratio(&ctx, pen, denom))));
    }
    for i in 0..b.len() {
        let tail = b[i..].iter().fold(0, |acc, &x| ctx.add(acc, x));
        z.insert(ctx.neg(tail));
    }

    let n = forbidden_bound(k as u32, row_no as u32);
    assert!(z.len() as i64 <= n, "|Z| = {} exceeds n = {n}", z.len());
    let stats = GreedyStats { x_size: x_set.len(), z_size: z.len(), n: n as usize };

    let choices: Vec<Elem> = x_set.into_iter().filter(|x| !z.contains(x)).collect();
    let x = pick(choices, rng).ok_or_else(|| empty("x".into()))?;
    b.push(x);
    b.push(ctx.neg(ctx.add(x, s)));

    let out = a.with_row(b)?;
    let report = out.verify()?;
    if !report.is_valid() || !out.is_simple() {
        return Err(Error::InvalidHdm(format!("greedy row failed verification: {report}")));
    }
    Ok((out, stats))
}

/// Builds a simple `(V,k,r)` matrix over the standard half-set from the empty matrix.
pub fn greedy_build(
    ctx: Arc<FieldCtx>,
    r: usize,
    seed: Option<u64>,
) -> Result<(HeffterDifferenceMatrix, Vec<GreedyStats>)> {
    greedy_build_with(ctx, r, seed, XRule::ZeroSum)
}

pub fn greedy_build_with(
    ctx: Arc<FieldCtx>,
    r: usize,
    seed: Option<u64>,
    rule: XRule,
) -> Result<(HeffterDifferenceMatrix, Vec<GreedyStats>)> {
    let hs = HalfSet::standard(ctx)?;
    let mut rng = seed.map(ChaCha8Rng::seed_from_u64);
    let mut m = HeffterDifferenceMatrix::empty(hs);
    let mut stats = Vec::with_capacity(r);
    for _ in 0..r {
        let (next, st) = greedy_extend(&m, &mut rng, rule)?;
        m = next;
        stats.push(st);
    }
    Ok((m, stats))
}
