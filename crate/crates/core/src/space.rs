//! Heffter spaces obtained by expanding a difference matrix under the
//! multiplicative action of `C_0`, plus an independent verifier.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};
use crate::halfset::HalfSet;
use crate::hdm::HeffterDifferenceMatrix;

/// Point set `V` with `r` parallel classes of ordered `k`-blocks.
#[derive(Debug, Clone)]
pub struct HeffterSpace {
    halfset: HalfSet,
    classes: Vec<Vec<Vec<Elem>>>,
}

impl HeffterSpace {
    /// Wraps classes without checking them; use [`verify_space`] for that.
    pub fn new(halfset: HalfSet, classes: Vec<Vec<Vec<Elem>>>) -> Result<Self> {
        let q = halfset.ctx().q();
        for block in classes.iter().flatten() {
            if let Some(&x) = block.iter().find(|&&x| x >= q) {
                return Err(Error::OutOfRange { value: u64::from(x), q });
            }
        }
        Ok(Self { halfset, classes })
    }

    pub fn halfset(&self) -> &HalfSet {
        &self.halfset
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        self.halfset.ctx()
    }

    pub fn classes(&self) -> &[Vec<Vec<Elem>>] {
        &self.classes
    }

    pub fn r(&self) -> usize {
        self.classes.len()
    }

    pub fn k(&self) -> usize {
        self.halfset.k()
    }

    /// `(q-1)/2`
    pub fn v(&self) -> usize {
        (self.ctx().q() as usize - 1) / 2
    }

    pub fn blocks(&self) -> impl Iterator<Item = &Vec<Elem>> {
        self.classes.iter().flatten()
    }

    pub fn density(&self) -> Ratio<u64> {
        density(self.v() as u64, self.k() as u64, self.r() as u64)
    }
}

/// `P_h = { t·B_h : t ∈ C_0 }` for every row, blocks ordered by `t = g^{2k j}`.
pub fn expand(b: &HeffterDifferenceMatrix) -> Result<HeffterSpace> {
    let report = b.verify()?;
    if !report.is_valid() {
        return Err(Error::InvalidHdm(report.to_string()));
    }
    let ctx = b.ctx();
    let multipliers = ctx.class_elements(0);
    let classes = b
        .rows()
        .iter()
        .map(|row| {
            multipliers
                .iter()
                .map(|&t| row.iter().map(|&x| ctx.mul(t, x)).collect())
                .collect()
        })
        .collect();
    Ok(HeffterSpace { halfset: b.halfset().clone(), classes })
}

/// Per-axiom outcome of [`verify_space`]; `None` means the axiom holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SpaceReport {
    /// Points form a half-set of `(F_q, +)`.
    pub half_set: Option<String>,
    /// Every block is zero-sum.
    pub additivity: Option<String>,
    /// Blocks have `k` distinct points, every point is on `r` blocks.
    pub configuration: Option<String>,
    /// Two points share at most one block.
    pub partial_linear: Option<String>,
    /// Each class partitions the point set.
    pub resolution: Option<String>,
}

impl SpaceReport {
    pub fn is_valid(&self) -> bool {
        self.axioms().iter().all(|(_, w)| w.is_none())
    }

    pub fn axioms(&self) -> [(&'static str, &Option<String>); 5] {
        [
            ("half-set", &self.half_set),
            ("additive", &self.additivity),
            ("configuration", &self.configuration),
            ("partial linear space", &self.partial_linear),
            ("resolution", &self.resolution),
        ]
    }
}

impl fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (name, w)) in self.axioms().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            match w {
                None => write!(f, "{name}: ok")?,
                Some(w) => write!(f, "{name}: FAIL ({w})")?,
            }
        }
        Ok(())
    }
}

/// Checks every Heffter-space axiom from the blocks alone.
pub fn verify_space(s: &HeffterSpace) -> SpaceReport {
    let ctx = s.ctx();
    let q = ctx.q();
    let k = s.k();
    let r = s.r();
    let mut report = SpaceReport::default();

    let points: BTreeSet<Elem> = s.blocks().flatten().copied().collect();
    report.half_set = if points.contains(&0) {
        Some("0 is a point".into())
    } else if let Some(&x) = points.iter().find(|&&x| points.contains(&ctx.neg(x))) {
        Some(format!("{x} and {} are both points", ctx.neg(x)))
    } else if points.len() != (q as usize - 1) / 2 {
        Some(format!("{} points, expected {}", points.len(), (q - 1) / 2))
    } else {
        None
    };

    report.additivity = s.blocks().find_map(|block| {
        let sum = block.iter().fold(0, |acc, &x| ctx.add(acc, x));
        (sum != 0).then(|| format!("block {block:?} sums to {sum}"))
    });

    let mut degree: HashMap<Elem, usize> = HashMap::new();
    report.configuration = None;
    for block in s.blocks() {
        let distinct: HashSet<Elem> = block.iter().copied().collect();
        if block.len() != k || distinct.len() != k {
            report.configuration = Some(format!("block {block:?} does not have {k} distinct points"));
            break;
        }
        for &x in block {
            *degree.entry(x).or_default() += 1;
        }
    }
    if report.configuration.is_none() {
        report.configuration = points.iter().find(|x| degree.get(x) != Some(&r)).map(|x| {
            format!("point {x} lies on {} blocks, expected {r}", degree.get(x).copied().unwrap_or(0))
        });
    }

    let mut pair_owner: HashMap<(Elem, Elem), usize> = HashMap::new();
    'pairs: for (id, block) in s.blocks().enumerate() {
        for (i, &a) in block.iter().enumerate() {
            for &b in &block[i + 1..] {
                let key = (a.min(b), a.max(b));
                if let Some(&other) = pair_owner.get(&key) {
                    if other != id {
                        report.partial_linear =
                            Some(format!("points {} and {} lie on blocks {other} and {id}", key.0, key.1));
                        break 'pairs;
                    }
                } else {
                    pair_owner.insert(key, id);
                }
            }
        }
    }

    'classes: for (h, class) in s.classes.iter().enumerate() {
        let mut seen = BTreeSet::new();
        for block in class {
            for &x in block {
                if !seen.insert(x) {
                    report.resolution = Some(format!("point {x} appears twice in class {}", h + 1));
                    break 'classes;
                }
            }
        }
        if seen != points {
            report.resolution = Some(format!("class {} does not cover every point", h + 1));
            break;
        }
    }
    report
}

/// Every block meets each part `V_i` of the half-set exactly once.
pub fn blocks_are_transversal(s: &HeffterSpace) -> bool {
    let k = s.k();
    s.blocks().all(|block| {
        let mut hit = vec![false; k];
        block.iter().all(|&x| match s.halfset.locate(x) {
            Some(i) if !hit[i] => {
                hit[i] = true;
                true
            }
            _ => false,
        })
    })
}

/// `r(k-1)/(v-1)`
pub fn density(v: u64, k: u64, r: u64) -> Ratio<u64> {
    assert!(v > 1, "density needs at least two points");
    Ratio::new(r * (k - 1), v - 1)
}

/// `x ↦ m·x` maps every class onto itself. `m` must lie in `C_0`.
pub fn automorphism_check(s: &HeffterSpace, multiplier: Elem) -> Result<bool> {
    let ctx = s.ctx();
    if multiplier == 0 || multiplier >= ctx.q() || ctx.class_index(multiplier)? != 0 {
        return Err(Error::NotInSubgroup(multiplier));
    }
    let sorted = |b: &[Elem]| {
        let mut b = b.to_vec();
        b.sort_unstable();
        b
    };
    Ok(s.classes.iter().all(|class| {
        let set: HashSet<Vec<Elem>> = class.iter().map(|b| sorted(b)).collect();
        class.iter().all(|b| {
            let image: Vec<Elem> = b.iter().map(|&x| ctx.mul(multiplier, x)).collect();
            set.contains(&sorted(&image))
        })
    }))
}

/// Partially filled `n × n` array; cell `(i, j)` holds the common point of
/// block `i` of one class and block `j` of another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeffterArray {
    n: usize,
    cells: Vec<Option<Elem>>,
}

impl HeffterArray {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> Option<Elem> {
        self.cells[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = Option<Elem>> + '_ {
        (0..self.n).map(move |j| self.get(i, j))
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = Option<Elem>> + '_ {
        (0..self.n).map(move |i| self.get(i, j))
    }

    /// Every row and column has `k` filled zero-sum cells and the entries form a half-set.
    pub fn verify(&self, ctx: &FieldCtx, k: usize) -> bool {
        let line_ok = |line: Vec<Option<Elem>>| {
            let filled: Vec<Elem> = line.into_iter().flatten().collect();
            filled.len() == k && filled.iter().fold(0, |acc, &x| ctx.add(acc, x)) == 0
        };
        let lines_ok = (0..self.n).all(|i| line_ok(self.row(i).collect()) && line_ok(self.column(i).collect()));
        let entries: Vec<Elem> = self.cells.iter().flatten().copied().collect();
        let set: HashSet<Elem> = entries.iter().copied().collect();
        lines_ok
            && set.len() == entries.len()
            && entries.len() == (ctx.q() as usize - 1) / 2
            && entries.iter().all(|&x| x != 0 && !set.contains(&ctx.neg(x)))
    }
}

pub fn to_heffter_array(p: &[Vec<Elem>], p2: &[Vec<Elem>]) -> Result<HeffterArray> {
    let n = p.len();
    if p2.len() != n {
        return Err(Error::ClassMismatch);
    }
    let owner = |class: &[Vec<Elem>]| -> Result<HashMap<Elem, usize>> {
        let mut map = HashMap::new();
        for (i, block) in class.iter().enumerate() {
            for &x in block {
                if map.insert(x, i).is_some() {
                    return Err(Error::ClassMismatch);
                }
            }
        }
        Ok(map)
    };
    let left = owner(p)?;
    let right = owner(p2)?;
    if left.len() != right.len() || left.keys().any(|x| !right.contains_key(x)) {
        return Err(Error::ClassMismatch);
    }
    let mut cells = vec![None; n * n];
    let mut points: Vec<Elem> = left.keys().copied().collect();
    points.sort_unstable();
    for x in points {
        let (i, j) = (left[&x], right[&x]);
        if cells[i * n + j].replace(x).is_some() {
            return Err(Error::AmbiguousCell { left: i, right: j });
        }
    }
    Ok(HeffterArray { n, cells })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f73_space() -> HeffterSpace {
        let ctx = Arc::new(FieldCtx::new(73, 4, None).unwrap());
        let hs = HalfSet::new(ctx, &[0, 1, 0, 0]).unwrap();
        let rows = vec![vec![1, 68, 25, 52], vec![1, 53, 49, 43], vec![1, 33, 50, 62], vec![1, 59, 35, 51]];
        expand(&HeffterDifferenceMatrix::new(hs, rows).unwrap()).unwrap()
    }

    #[test]
    fn first_class_matches_the_resolution_table() {
        let s = f73_space();
        let expected: Vec<Vec<u32>> = vec![
            vec![1, 68, 25, 52],
            vec![2, 63, 50, 31],
            vec![4, 53, 27, 62],
            vec![8, 33, 54, 51],
            vec![16, 66, 35, 29],
            vec![32, 59, 70, 58],
            vec![64, 45, 67, 43],
            vec![55, 17, 61, 13],
            vec![37, 34, 49, 26],
        ];
        assert_eq!(s.classes()[0], expected);
        assert_eq!(s.classes()[3][8], vec![37, 66, 54, 62]);
        assert_eq!((s.v(), s.k(), s.r()), (36, 4, 4));
    }

    #[test]
    fn expanded_space_verifies() {
        let s = f73_space();
        let rep = verify_space(&s);
        assert!(rep.is_valid(), "{rep}");
        assert!(blocks_are_transversal(&s));
        assert_eq!(s.blocks().count(), s.v() * s.r() / s.k());
        assert_eq!(s.density(), Ratio::new(12, 35));
    }

    #[test]
    fn corrupted_block_is_caught() {
        let s = f73_space();
        let mut classes = s.classes().to_vec();
        classes[0][0][1] = 63;
        let bad = HeffterSpace::new(s.halfset().clone(), classes).unwrap();
        let rep = verify_space(&bad);
        assert!(!rep.is_valid());
        assert!(rep.resolution.is_some());
        assert!(rep.partial_linear.is_some());
    }

    #[test]
    fn expand_rejects_invalid_matrices() {
        let ctx = Arc::new(FieldCtx::new(73, 4, None).unwrap());
        let hs = HalfSet::new(ctx, &[0, 1, 0, 0]).unwrap();
        let m = HeffterDifferenceMatrix::new(hs, vec![vec![1, 68, 25, 52], vec![1, 68, 25, 52]]).unwrap();
        assert!(matches!(expand(&m), Err(Error::InvalidHdm(_))));
    }

    #[test]
    fn densities() {
        assert_eq!(density(121, 11, 9), Ratio::new(3, 4));
        assert_eq!(density(105, 5, 21), Ratio::new(84, 104));
        assert!((*density(105, 5, 21).numer() as f64 / *density(105, 5, 21).denom() as f64 - 0.81).abs() < 0.005);
        assert_eq!(density(36, 4, 4), Ratio::new(12, 35));
    }

    #[test]
    fn multiplicative_automorphisms() {
        let s = f73_space();
        assert!(automorphism_check(&s, 2).unwrap());
        assert!(automorphism_check(&s, 1).unwrap());
        assert_eq!(automorphism_check(&s, 5), Err(Error::NotInSubgroup(5)));
    }

    #[test]
    fn heffter_array_from_two_classes() {
        let s = f73_space();
        let a = to_heffter_array(&s.classes()[0], &s.classes()[1]).unwrap();
        assert_eq!(a.n(), 9);
        assert_eq!(a.get(0, 0), Some(1));
        assert!(a.verify(s.ctx(), 4));
        for i in 0..9 {
            assert_eq!(a.row(i).flatten().count(), 4);
        }
        assert!(matches!(
            to_heffter_array(&s.classes()[0], &s.classes()[0]),
            Err(Error::AmbiguousCell { .. })
        ));
    }
}
