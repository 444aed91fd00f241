//! Heffter difference matrices: the `r × k` matrices whose rows generate the
//! parallel classes of a Heffter space.
//!
//! A matrix `B` over a cyclotomic half-set `V = V_0 ∪ … ∪ V_{k-1}` is valid when
//!
//! * (i) every row sums to zero,
//! * (ii) every entry of column `i` lies in `V_i`,
//! * (iii) for each column pair `i < j` the ratios `b_{h,i} / b_{h,j}` are
//!   pairwise distinct over the rows.
//!
//! Ratios are compared as differences of discrete logarithms. Rows in
//! reports and errors are numbered from 1, columns from 0.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::halfset::HalfSet;

#[derive(Debug, Clone)]
pub struct HeffterDifferenceMatrix {
    halfset: HalfSet,
    rows: Vec<Vec<Elem>>,
}

impl HeffterDifferenceMatrix {
    /// Wraps `rows` without verifying; entries must be residues and rows must have length `k`.
    pub fn new(halfset: HalfSet, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let k = halfset.k();
        let q = halfset.ctx().q();
        for (h, row) in rows.iter().enumerate() {
            if row.len() != k {
                return Err(Error::RowLength { row: h + 1, expected: k, got: row.len() });
            }
            if let Some(&x) = row.iter().find(|&&x| x >= q) {
                return Err(Error::OutOfRange { value: u64::from(x), q });
            }
        }
        Ok(Self { halfset, rows })
    }

    pub fn empty(halfset: HalfSet) -> Self {
        Self { halfset, rows: Vec::new() }
    }

    pub fn halfset(&self) -> &HalfSet {
        &self.halfset
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.halfset.ctx()
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.rows
    }

    pub fn r(&self) -> usize {
        self.rows.len()
    }

    pub fn k(&self) -> usize {
        self.halfset.k()
    }

    pub fn with_row(&self, row: Vec<Elem>) -> Result<Self> {
        let mut rows = self.rows.clone();
        rows.push(row);
        Self::new(self.halfset.clone(), rows)
    }

    pub fn into_rows(self) -> Vec<Vec<Elem>> {
        self.rows
    }

    /// Checks properties (i)-(iii), reporting the first witness of each failure.
    pub fn verify(&self) -> Result<HdmReport> {
        verify_hdm(self)
    }

    pub fn is_valid(&self) -> bool {
        self.verify().map(|r| r.is_valid()).unwrap_or(false)
    }

    pub fn is_simple(&self) -> bool {
        verify_simple(self)
    }

    /// Divides every row by its first entry.
    pub fn normalize(&self) -> Result<Self> {
        normalize(self)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZeroSumViolation {
    pub row: usize,
    pub sum: Elem,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipViolation {
    pub row: usize,
    pub col: usize,
    pub value: Elem,
    /// The part of `V` actually containing the value, if any.
    pub found_in: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioViolation {
    pub cols: (usize, usize),
    pub rows: (usize, usize),
    /// Discrete log of the repeated ratio.
    pub log_ratio: u32,
}

/// Outcome of [`verify_hdm`]. A `None` field means the property holds.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HdmReport {
    pub zero_sum: Option<ZeroSumViolation>,
    pub membership: Option<MembershipViolation>,
    pub ratios: Option<RatioViolation>,
}

impl HdmReport {
    pub fn is_valid(&self) -> bool {
        self.zero_sum.is_none() && self.membership.is_none() && self.ratios.is_none()
    }
}

impl fmt::Display for HdmReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.zero_sum {
            None => write!(f, "i: ok")?,
            Some(v) => write!(f, "i: FAIL (row {} sums to {})", v.row, v.sum)?,
        }
        match &self.membership {
            None => write!(f, ", ii: ok")?,
            Some(v) => match v.found_in {
                Some(p) => write!(
                    f,
                    ", ii: FAIL (entry {} at row {}, column {} lies in V_{})",
                    v.value, v.row, v.col, p
                )?,
                None => write!(
                    f,
                    ", ii: FAIL (entry {} at row {}, column {} is not in V)",
                    v.value, v.row, v.col
                )?,
            },
        }
        match &self.ratios {
            None => write!(f, ", iii: ok"),
            Some(v) => write!(
                f,
                ", iii: FAIL (columns {}/{} repeat a ratio in rows {} and {})",
                v.cols.0, v.cols.1, v.rows.0, v.rows.1
            ),
        }
    }
}

pub fn verify_hdm(b: &HeffterDifferenceMatrix) -> Result<HdmReport> {
    let ctx = b.ctx();
    let k = b.k();
    for (h, row) in b.rows.iter().enumerate() {
        if let Some(i) = row.iter().position(|&x| x == 0) {
            return Err(Error::ZeroEntry { row: h + 1, col: i });
        }
    }
    let mut report = HdmReport::default();

    report.zero_sum = b.rows.iter().enumerate().find_map(|(h, row)| {
        let sum = row.iter().fold(0, |acc, &x| ctx.add(acc, x));
        (sum != 0).then_some(ZeroSumViolation { row: h + 1, sum })
    });

    'membership: for (h, row) in b.rows.iter().enumerate() {
        for (i, &x) in row.iter().enumerate() {
            let found_in = b.halfset.locate(x);
            if found_in != Some(i) {
                report.membership = Some(MembershipViolation { row: h + 1, col: i, value: x, found_in });
                break 'membership;
            }
        }
    }

    'ratios: for i in 0..k {
        for j in i + 1..k {
            let mut logs: Vec<(u32, usize)> = b
                .rows
                .iter()
                .enumerate()
                .map(|(h, row)| (ctx.log_ratio(row[i], row[j]), h + 1))
                .collect();
            logs.sort_unstable();
            if let Some(w) = logs.windows(2).find(|w| w[0].0 == w[1].0) {
                report.ratios = Some(RatioViolation {
                    cols: (i, j),
                    rows: (w[0].1, w[1].1),
                    log_ratio: w[0].0,
                });
                break 'ratios;
            }
        }
    }
    Ok(report)
}

/// Partial sums `s_i = x_0 + … + x_i` of a row.
pub fn partial_sums(ctx: &FieldCtx, row: &[Elem]) -> Vec<Elem> {
    row.iter()
        .scan(0, |acc, &x| {
            *acc = ctx.add(*acc, x);
            Some(*acc)
        })
        .collect()
}

pub fn row_is_simple(ctx: &FieldCtx, row: &[Elem]) -> bool {
    let mut sums = partial_sums(ctx, row);
    sums.sort_unstable();
    sums.windows(2).all(|w| w[0] != w[1])
}

/// Every row has pairwise distinct partial sums.
pub fn verify_simple(b: &HeffterDifferenceMatrix) -> bool {
    b.rows.iter().all(|row| row_is_simple(b.ctx(), row))
}

pub fn normalize(b: &HeffterDifferenceMatrix) -> Result<HeffterDifferenceMatrix> {
    let ctx = b.ctx();
    let mut rows = Vec::with_capacity(b.r());
    for (h, row) in b.rows.iter().enumerate() {
        if let Some(i) = row.iter().position(|&x| x == 0) {
            return Err(Error::ZeroEntry { row: h + 1, col: i });
        }
        let inv = ctx.inv(row[0])?;
        rows.push(row.iter().map(|&x| ctx.mul(x, inv)).collect());
    }
    Ok(HeffterDifferenceMatrix { halfset: b.halfset.clone(), rows })
}

/// The logs of `row[i]/row[j]` for all `i < j`, in lexicographic pair order.
pub(crate) fn ratio_keys(ctx: &FieldCtx, row: &[Elem]) -> Vec<u32> {
    let k = row.len();
    let mut keys = Vec::with_capacity(k * (k - 1) / 2);
    for i in 0..k {
        for j in i + 1..k {
            keys.push(ctx.log_ratio(row[i], row[j]));
        }
    }
    keys
}

/// Two rows can coexist in a matrix iff no column pair gives them the same ratio.
pub fn rows_compatible(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> bool {
    debug_assert_eq!(a.len(), b.len());
    let k = a.len();
    for i in 0..k {
        for j in i + 1..k {
            if ctx.log_ratio(a[i], a[j]) == ctx.log_ratio(b[i], b[j]) {
                return false;
            }
        }
    }
    true
}
