//! The field-size threshold above which the greedy row extension always succeeds.
//!
//! With `A = (2k-1)^2`, `n = (2r-1)(k-2) + r - 1` and `m = 4k(kn+1)`,
//! `Q(k,r) = ¼ [A + √(A² + 4m)]²`. Writing `y = √q`, `q > Q` is the same as
//! `y² - A·y - m > 0`, which is decided exactly by `q > m` and `(q-m)² > A²q`.

/// `(2r-1)(k-2) + r - 1`, the bound on the forbidden set `Z`. Negative for `r = 0`.
pub fn forbidden_bound(k: u32, r: u32) -> i64 {
    (2 * i64::from(r) - 1) * (i64::from(k) - 2) + i64::from(r) - 1
}

/// `Q(k,r)` in floating point.
pub fn q_bound(k: u32, r: u32) -> f64 {
    let a = f64::from(2 * k - 1).powi(2);
    let n = forbidden_bound(k, r) as f64;
    let k = f64::from(k);
    let root = (a * a + 16.0 * k * (k * n + 1.0)).sqrt();
    0.25 * (a + root).powi(2)
}

/// `q > Q(k,r)`, in exact integer arithmetic.
pub fn q_exceeds_bound(q: u64, k: u32, r: u32) -> bool {
    let a = i128::from(2 * k - 1).pow(2);
    let k128 = i128::from(k);
    let m = 4 * k128 * (k128 * i128::from(forbidden_bound(k, r)) + 1);
    let d = i128::from(q) - m;
    d > 0 && d * d > a * a * i128::from(q)
}

/// `8k⁴r`, the simpler threshold.
pub fn simplified_bound(k: u32, r: u32) -> u64 {
    8 * u64::from(k).pow(4) * u64::from(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        // ¼(25+√817)² and ¼(25+√1249)²
        let q31 = 0.25 * (25.0 + 817f64.sqrt()).powi(2);
        let q32 = 0.25 * (25.0 + 1249f64.sqrt()).powi(2);
        assert!((q_bound(3, 1) - q31).abs() < 1e-9);
        assert!((q_bound(3, 2) - q32).abs() < 1e-9);
        assert!((q_bound(3, 1) - 717.7901).abs() < 1e-3);
        assert!((q_bound(3, 2) - 910.2649).abs() < 1e-3);
    }

    #[test]
    fn exact_predicate_brackets() {
        assert!(q_exceeds_bound(727, 3, 1));
        assert!(!q_exceeds_bound(717, 3, 1));
        assert!(q_exceeds_bound(919, 3, 2));
        assert!(!q_exceeds_bound(907, 3, 2));
    }

    #[test]
    fn simplified() {
        assert_eq!(simplified_bound(6, 6), 62208);
        assert_eq!(simplified_bound(3, 2), 1296);
        assert_eq!(simplified_bound(3, 1), 648);
        assert_eq!(forbidden_bound(6, 6), 49);
        assert!((q_bound(6, 6) - 26940.356468).abs() < 1e-5);
    }

    #[test]
    fn exact_and_float_agree_near_the_boundary() {
        for k in 3..=8 {
            for r in 0..=10 {
                let b = q_bound(k, r);
                let base = b.floor() as u64;
                for q in base.saturating_sub(3)..=base + 3 {
                    if (q as f64 - b).abs() > 1e-6 * b {
                        assert_eq!(q_exceeds_bound(q, k, r), q as f64 > b, "k={k} r={r} q={q}");
                    }
                }
            }
        }
    }
}
