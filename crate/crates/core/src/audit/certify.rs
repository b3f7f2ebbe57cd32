//! Exhaustive check of the counting inequality over the parameter box.
//!
//! For fixed `delta`, every tuple `(r, s, a)` with `r, s >= 0`, `s >= 1 ⇒
//! r >= 1`, `2 <= a <= a_cap` is combined with the smallest admissible `t`,
//! `t = max(0, a - delta + 1 - (r + s) / 2)` (a half-integer), and kept when
//! `r + s + t <= delta - 1`. The bound holds when the largest right-hand side
//! divided by `delta` stays below `(9 delta - 5) / 2`.
//!
//! All arithmetic is on doubled integers so that half-integral `t` is exact.

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default `a_cap = DEFAULT_A_CAP_FACTOR * delta`.
pub const DEFAULT_A_CAP_FACTOR: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("delta must be at least 2, got {0}")]
    DeltaTooSmall(usize),
    #[error("a_cap must be at least 2, got {0}")]
    ACapTooSmall(usize),
    /// The right-hand side may still grow for some `a > a_cap`.
    #[error("a_cap = {a_cap} is not safe for delta = {delta} at r = {r}, s = {s}")]
    CapUnsafe {
        delta: usize,
        a_cap: usize,
        r: usize,
        s: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WorstTuple {
    pub r: usize,
    pub s: usize,
    pub a: usize,
    pub t: Ratio<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertResult {
    pub delta: usize,
    pub a_cap: usize,
    pub holds: bool,
    pub worst: WorstTuple,
    /// Largest right-hand side divided by `delta`.
    pub worst_n: Ratio<i64>,
    /// The same maximum over tuples with `t > 0` and `5r + 3s < 2 (delta + 1)`,
    /// the region the second analytic bound covers.
    pub worst_n_case_two: Option<Ratio<i64>>,
    /// `(9 delta - 5) / 2`.
    pub target: Ratio<i64>,
    pub tuples: u64,
    /// Printed closed form agreed with the re-derived one on every tuple.
    pub forms_agree: bool,
}

impl CertResult {
    pub fn margin(&self) -> Ratio<i64> {
        self.target - self.worst_n
    }
}

/// `2t` for the smallest admissible `t`.
fn t_twice(delta: i64, r: i64, s: i64, a: i64) -> i64 {
    (2 * a - 2 * delta + 2 - r - s).max(0)
}

fn feasible(delta: i64, r: i64, s: i64, t2: i64) -> bool {
    2 * (r + s) + t2 <= 2 * (delta - 1)
}

/// Twice the closed-form right-hand side, with `t = t2 / 2`.
pub fn counting_rhs_printed_twice(delta: i64, r: i64, s: i64, a: i64, t2: i64) -> i64 {
    2 * (3 * delta - 10 - r) * r - (a - 2) * t2
        + 4 * (delta + 3) * (delta - 1)
        + 2 * (a - 1) * (2 * delta - 2 - 2 * r - s)
}

/// Twice the right-hand side assembled from its parts: the nice-edge upper
/// bound minus the per-colour lower bound (with `delta - t >= r + s + 1`),
/// after cancelling `delta n`.
pub fn counting_rhs_rederived_twice(delta: i64, r: i64, s: i64, a: i64, t2: i64) -> i64 {
    let rest = delta - 1 - r - s;
    // Upper bound on nice edges: good pairs, nice pairs, remaining pairs.
    let nice_upper2 = 2 * (3 * (delta - 1) * r + (r + 6) * s + 6 * rest);
    // delta |W'| - (a-1) s - (a+r) t - 2 (a-1)(delta-1-r-s-t) - delta n,
    // with delta r = (delta - t) r + t r and (delta - t) r relaxed.
    let lower_minus_dn2 = -4 * delta * (delta - 1) + 2 * (r + s + 1) * r + t2 * r
        - 2 * (a - 1) * s
        - (a + r) * t2
        - 4 * (a - 1) * rest
        + 2 * (a - 1) * t2;
    nice_upper2 - lower_minus_dn2
}

/// Upper bounds on `n` from the two analytic cases: `t = 0`, and `t > 0`
/// maximised over real `r`. Returned as `(case one, case two)`.
pub fn analytic_case_bounds(delta: usize) -> (f64, f64) {
    let d = delta as f64;
    let one = 9.0 * d / 2.0 - 11.0 / 2.0 + 33.0 / (8.0 * d);
    let two = if delta <= 11 {
        (17.0 * d - 6.0) / 4.0 - 7.0 / (4.0 * d)
    } else if delta <= 22 {
        (32.0 * d - 60.0) / 7.0 + 260.0 / (7.0 * d)
    } else {
        112.0 * (d - 1.0) / 25.0 - 863.0 / (100.0 * d)
    };
    (one, two)
}

pub fn certify_counting_bound(delta: usize, a_cap: usize) -> Result<CertResult, CertError> {
    if delta < 2 {
        return Err(CertError::DeltaTooSmall(delta));
    }
    if a_cap < 2 {
        return Err(CertError::ACapTooSmall(a_cap));
    }
    let d = delta as i64;
    let cap = a_cap as i64;
    let mut best: Option<(i64, WorstTuple)> = None;
    let mut best_case_two: Option<i64> = None;
    let mut tuples = 0u64;
    let mut forms_agree = true;

    for r in 0..d {
        for s in 0..d - r {
            if s >= 1 && r == 0 {
                continue;
            }
            for a in 2..=cap {
                let t2 = t_twice(d, r, s, a);
                if !feasible(d, r, s, t2) {
                    // t is non-decreasing in a
                    break;
                }
                tuples += 1;
                let rhs2 = counting_rhs_rederived_twice(d, r, s, a, t2);
                if rhs2 != counting_rhs_printed_twice(d, r, s, a, t2) {
                    forms_agree = false;
                }
                if t2 > 0 && 5 * r + 3 * s < 2 * (d + 1) && best_case_two.is_none_or(|b| rhs2 > b) {
                    best_case_two = Some(rhs2);
                }
                if best.as_ref().is_none_or(|(b, _)| rhs2 > *b) {
                    best = Some((
                        rhs2,
                        WorstTuple {
                            r: r as usize,
                            s: s as usize,
                            a: a as usize,
                            t: Ratio::new(t2, 2),
                        },
                    ));
                }
            }
            if !tail_safe(d, r, s, cap) {
                return Err(CertError::CapUnsafe {
                    delta,
                    a_cap,
                    r: r as usize,
                    s: s as usize,
                });
            }
        }
    }

    let (rhs2, worst) = best.expect("r = s = 0, a = 2 is always feasible");
    Ok(CertResult {
        delta,
        a_cap,
        holds: rhs2 < d * (9 * d - 5),
        worst,
        worst_n: Ratio::new(rhs2, 2 * d),
        worst_n_case_two: best_case_two.map(|b| Ratio::new(b, 2 * d)),
        target: Ratio::new(9 * d - 5, 2),
        tuples,
        forms_agree,
    })
}

/// True when no `a > a_cap` can beat the values already seen: either
/// `a_cap + 1` is infeasible, or `t` is active at `a_cap` and the concave
/// right-hand side has already turned down.
fn tail_safe(d: i64, r: i64, s: i64, cap: i64) -> bool {
    let next = cap + 1;
    let t_next = t_twice(d, r, s, next);
    if !feasible(d, r, s, t_next) {
        return true;
    }
    let t_cap = t_twice(d, r, s, cap);
    t_cap > 0
        && counting_rhs_rederived_twice(d, r, s, next, t_next)
            <= counting_rhs_rederived_twice(d, r, s, cap, t_cap)
}

/// Certifies every `delta` in the range with `a_cap = 6 delta`, in parallel;
/// results are in `delta` order.
pub fn certify_range(
    deltas: std::ops::RangeInclusive<usize>,
) -> Vec<Result<CertResult, CertError>> {
    let list: Vec<usize> = deltas.collect();
    list.into_par_iter()
        .map(|d| certify_counting_bound(d, DEFAULT_A_CAP_FACTOR * d))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Independent evaluation over rationals with the un-relaxed
    /// `(delta - t) r` term, used to bound the relaxation.
    fn rhs_exact(d: i64, r: i64, s: i64, a: i64, t: Ratio<i64>) -> Ratio<i64> {
        let nice_upper = Ratio::from_integer((3 * d - 9 + s) * r + 6 * (d - 1));
        let dn_minus_lower =
            Ratio::from_integer(2 * d * (d - 1) + (a - 1) * (2 * d - 2 - 2 * r - s))
                - Ratio::from_integer(a - 2) * t
                - (Ratio::from_integer(d) - t) * r;
        nice_upper + dn_minus_lower
    }

    #[test]
    fn delta_five_holds_below_twenty() {
        let c = certify_counting_bound(5, 30).unwrap();
        assert!(c.holds);
        assert!(c.worst_n < Ratio::from_integer(20));
        assert!(c.forms_agree);
        assert_eq!(c.target, Ratio::new(40, 2));
    }

    #[test]
    fn small_deltas() {
        for d in 2..=30 {
            let c = certify_counting_bound(d, 6 * d).unwrap();
            assert!(c.holds, "delta {d}: {:?}", c.worst_n);
            assert!(c.forms_agree);
            let (one, two) = analytic_case_bounds(d);
            let worst = *c.worst_n.numer() as f64 / *c.worst_n.denom() as f64;
            assert!(
                worst <= one.max(two) + 1e-9,
                "delta {d}: {worst} > {one} / {two}"
            );
        }
    }

    fn approx(r: Ratio<i64>) -> f64 {
        *r.numer() as f64 / *r.denom() as f64
    }

    #[test]
    fn large_deltas_track_both_analytic_cases() {
        for d in 23..=200 {
            let c = certify_counting_bound(d, 6 * d).unwrap();
            let (one, two) = analytic_case_bounds(d);
            // The overall maximum sits on the edge of the t = 0 region and meets
            // the first bound up to rounding of r.
            assert!(approx(c.worst_n) <= one + 1e-9, "delta {d}");
            assert!(one - approx(c.worst_n) < 0.05, "delta {d}");
            assert!(
                c.worst.t <= Ratio::new(1, 2),
                "delta {d}: t = {}",
                c.worst.t
            );
            let active = approx(c.worst_n_case_two.unwrap());
            assert!(active <= two + 1e-9, "delta {d}: {active} > {two}");
            assert!(two - active < 1.0, "delta {d}: {active} far below {two}");
        }
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(
            certify_counting_bound(1, 6),
            Err(CertError::DeltaTooSmall(1))
        );
        assert_eq!(
            certify_counting_bound(4, 1),
            Err(CertError::ACapTooSmall(1))
        );
    }

    #[test]
    fn small_cap_is_rejected() {
        // a = 3 is still increasing with t = 0 for delta = 10.
        assert!(matches!(
            certify_counting_bound(10, 3),
            Err(CertError::CapUnsafe { .. })
        ));
        assert!(certify_counting_bound(10, 60).is_ok());
    }

    #[test]
    fn range_is_ordered() {
        let all = certify_range(2..=12);
        assert_eq!(all.len(), 11);
        for (i, c) in all.iter().enumerate() {
            assert_eq!(c.as_ref().unwrap().delta, i + 2);
        }
    }

    proptest! {
        #[test]
        fn closed_form_matches_parts(d in 2i64..200, r in 0i64..100, s in 0i64..100, a in 2i64..1200) {
            let t2 = t_twice(d, r, s, a);
            prop_assert_eq!(counting_rhs_printed_twice(d, r, s, a, t2), counting_rhs_rederived_twice(d, r, s, a, t2));
        }

        #[test]
        fn relaxation_only_loosens(
            (d, r, s, a) in (2i64..60)
                .prop_flat_map(|d| (Just(d), 0..d))
                .prop_flat_map(|(d, r)| (Just(d), Just(r), 0..d - r, 2..2 * d + 2))
        ) {
            let t2 = t_twice(d, r, s, a);
            prop_assume!(feasible(d, r, s, t2));
            let relaxed = Ratio::new(counting_rhs_printed_twice(d, r, s, a, t2), 2);
            prop_assert!(rhs_exact(d, r, s, a, Ratio::new(t2, 2)) <= relaxed);
        }
    }
}
