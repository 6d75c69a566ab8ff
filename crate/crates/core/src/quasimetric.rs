//! The Kuratowski-embedding metric γ and the canonical quasi-metric p of a
//! sequenced space.
//!
//! Both are weighted series over the exhaustion X¹ ⊆ X² ⊆ … with weights 2⁻ᵐ
//! and the squashing f(t) = t/(1+t): γ uses the two-sided sup norms
//! ‖d_x − d_y‖ over X^m, p the one-sided positive-part sups. Finite anchor
//! lists stabilize at m = L, so the infinite tail Σ_{m>L} 2⁻ᵐ g_L collapses
//! to the closed form 2⁻ᴸ g_L recorded in [`TailRule`].
//!
//! The zero set of p is exactly the causal relation J (provided the sequence
//! hull covers the space, or the space is flagged total), and the sandwich
//! γ ≤ p + pᵀ ≤ 2γ holds entrywise.

use crate::relation::causality;
use crate::seq::SequencedSpace;
use crate::space::{validate_axioms, Check};

/// Floating-point slack for the exhaustively checked inequalities.
pub const FP_SLACK: f64 = 1e-12;

/// Record of the closed-form tail summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TailRule {
    /// Level at which X^m stabilizes (the sequence length).
    pub level: usize,
    /// Weight of the appended tail term, 2^−level.
    pub weight: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QuasiMetricPair {
    pub gamma: Vec<Vec<f64>>,
    pub p: Vec<Vec<f64>>,
    pub seq_len: usize,
    pub tail_rule: TailRule,
}

fn squash(t: f64) -> f64 {
    t / (1.0 + t)
}

struct Levels {
    /// X^m point lists for m = 1..=L.
    sets: Vec<Vec<usize>>,
}

fn levels(seq_space: &SequencedSpace) -> Levels {
    let l = seq_space.seq_len();
    Levels { sets: (1..=l).map(|m| seq_space.xm_points(m)).collect() }
}

/// γ(x,y): symmetric series of two-sided sup norms plus the closed-form tail.
pub fn kuratowski_gamma(seq_space: &SequencedSpace) -> Vec<Vec<f64>> {
    let lv = levels(seq_space);
    let s = &seq_space.space;
    let n = s.len();
    let mut out = vec![vec![0.0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let mut acc = 0.0;
            let mut weight = 1.0;
            let mut last = 0.0;
            for set in &lv.sets {
                weight *= 0.5;
                let mut fwd = 0.0f64;
                let mut bwd = 0.0f64;
                for &z in set {
                    fwd = fwd.max((s.d(x, z) - s.d(y, z)).abs());
                    bwd = bwd.max((s.d(z, x) - s.d(z, y)).abs());
                }
                last = squash(fwd) + squash(bwd);
                acc += weight * last;
            }
            acc += weight * last; // tail: X^m constant for m ≥ L
            out[x][y] = acc;
        }
    }
    out
}

/// p(x,y): the asymmetric series of one-sided positive-part sups plus the
/// same closed-form tail.
pub fn quasi_metric_p(seq_space: &SequencedSpace) -> Vec<Vec<f64>> {
    let lv = levels(seq_space);
    let s = &seq_space.space;
    let n = s.len();
    let mut out = vec![vec![0.0; n]; n];
    for x in 0..n {
        for y in 0..n {
            let mut acc = 0.0;
            let mut weight = 1.0;
            let mut last = 0.0;
            for set in &lv.sets {
                weight *= 0.5;
                let mut fwd = 0.0f64; // sup (d_y − d_x): how much y out-reaches x
                let mut bwd = 0.0f64; // sup (d^x − d^y)
                for &z in set {
                    fwd = fwd.max(s.d(y, z) - s.d(x, z));
                    bwd = bwd.max(s.d(z, x) - s.d(z, y));
                }
                last = squash(fwd.max(0.0)) + squash(bwd.max(0.0));
                acc += weight * last;
            }
            acc += weight * last;
            out[x][y] = acc;
        }
    }
    out
}

/// Both matrices plus the tail-rule record.
pub fn quasi_metric_pair(seq_space: &SequencedSpace) -> QuasiMetricPair {
    let l = seq_space.seq_len();
    QuasiMetricPair {
        gamma: kuratowski_gamma(seq_space),
        p: quasi_metric_p(seq_space),
        seq_len: l,
        tail_rule: TailRule { level: l, weight: 0.5f64.powi(l as i32) },
    }
}

/// Exhaustive verification of the stated relationships between γ, p and J.
#[derive(Debug, Clone, PartialEq)]
pub struct QmReport {
    pub p_triangle: Check<(usize, usize, usize)>,
    /// min over triples of p(x,y) + p(y,z) − p(x,z); nonnegative up to slack.
    pub p_triangle_worst_slack: f64,
    /// {(x,y) : p(x,y) ≤ tol} = J as boolean matrices.
    pub zero_set_equals_j: Check<(usize, usize)>,
    /// γ ≤ p + pᵀ entrywise.
    pub sandwich_lower: Check<(usize, usize)>,
    /// p + pᵀ ≤ 2γ entrywise.
    pub sandwich_upper: Check<(usize, usize)>,
    /// min over entries of min(p+pᵀ−γ, 2γ−(p+pᵀ)).
    pub sandwich_worst_slack: f64,
    pub gamma_symmetric: Check<(usize, usize)>,
    pub gamma_zero_diagonal: Check<usize>,
    pub gamma_triangle: Check<(usize, usize, usize)>,
    /// γ > 0 off the diagonal; required only when d distinguishes points.
    pub gamma_definite: Check<(usize, usize)>,
}

impl QmReport {
    pub fn pass(&self) -> bool {
        self.p_triangle.pass
            && self.zero_set_equals_j.pass
            && self.sandwich_lower.pass
            && self.sandwich_upper.pass
            && self.gamma_symmetric.pass
            && self.gamma_zero_diagonal.pass
            && self.gamma_triangle.pass
            && self.gamma_definite.pass
    }
}

pub fn verify_qm_properties(seq_space: &SequencedSpace) -> QmReport {
    let pair = quasi_metric_pair(seq_space);
    let s = &seq_space.space;
    let n = s.len();
    let gamma = &pair.gamma;
    let p = &pair.p;

    let mut p_triangle = Check::pass();
    let mut p_triangle_worst_slack = f64::INFINITY;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let slack = p[x][y] + p[y][z] - p[x][z];
                if slack < p_triangle_worst_slack {
                    p_triangle_worst_slack = slack;
                }
                if slack < -FP_SLACK && p_triangle.pass {
                    p_triangle = Check::fail((x, y, z));
                }
            }
        }
    }
    if n == 0 {
        p_triangle_worst_slack = 0.0;
    }

    let j = causality(s);
    let mut zero_set_equals_j = Check::pass();
    'zs: for x in 0..n {
        for y in 0..n {
            if (p[x][y] <= s.tol()) != j.contains(x, y) {
                zero_set_equals_j = Check::fail((x, y));
                break 'zs;
            }
        }
    }

    let mut sandwich_lower = Check::pass();
    let mut sandwich_upper = Check::pass();
    let mut sandwich_worst_slack = f64::INFINITY;
    for x in 0..n {
        for y in 0..n {
            let sym = p[x][y] + p[y][x];
            let lower = sym - gamma[x][y];
            let upper = 2.0 * gamma[x][y] - sym;
            sandwich_worst_slack = sandwich_worst_slack.min(lower).min(upper);
            if lower < -FP_SLACK && sandwich_lower.pass {
                sandwich_lower = Check::fail((x, y));
            }
            if upper < -FP_SLACK && sandwich_upper.pass {
                sandwich_upper = Check::fail((x, y));
            }
        }
    }
    if n == 0 {
        sandwich_worst_slack = 0.0;
    }

    let mut gamma_symmetric = Check::pass();
    let mut gamma_zero_diagonal = Check::pass();
    let mut gamma_triangle = Check::pass();
    'gs: for x in 0..n {
        if gamma[x][x] != 0.0 {
            gamma_zero_diagonal = Check::fail(x);
        }
        for y in 0..n {
            if gamma[x][y] != gamma[y][x] {
                gamma_symmetric = Check::fail((x, y));
                break 'gs;
            }
        }
    }
    'gt: for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if gamma[x][z] > gamma[x][y] + gamma[y][z] + FP_SLACK {
                    gamma_triangle = Check::fail((x, y, z));
                    break 'gt;
                }
            }
        }
    }

    let mut gamma_definite = Check::pass();
    if validate_axioms(s).distinguishing.pass {
        'gd: for x in 0..n {
            for y in (x + 1)..n {
                if gamma[x][y] <= s.tol() {
                    gamma_definite = Check::fail((x, y));
                    break 'gd;
                }
            }
        }
    }

    QmReport {
        p_triangle,
        p_triangle_worst_slack,
        zero_set_equals_j,
        sandwich_lower,
        sandwich_upper,
        sandwich_worst_slack,
        gamma_symmetric,
        gamma_zero_diagonal,
        gamma_triangle,
        gamma_definite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{FiniteLorentzSpace, DEFAULT_TOL};

    fn c3_total() -> SequencedSpace {
        let s = FiniteLorentzSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 2.5],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap();
        SequencedSpace::total(s, vec![0, 2]).unwrap()
    }

    // Independent oracle: sum the infinite series term by term (X^m frozen at
    // the last level) until the increments vanish, instead of appending the
    // closed-form tail.
    fn series_oracle(seq: &SequencedSpace, x: usize, y: usize, one_sided: bool) -> f64 {
        let s = &seq.space;
        let f = |t: f64| t / (1.0 + t);
        let mut acc = 0.0;
        let mut m = 1usize;
        loop {
            let level = m.min(seq.seq_len());
            let set = seq.xm_points(level);
            let term = if one_sided {
                let mut fwd = 0.0f64;
                let mut bwd = 0.0f64;
                for &z in &set {
                    fwd = fwd.max(s.d(y, z) - s.d(x, z));
                    bwd = bwd.max(s.d(z, x) - s.d(z, y));
                }
                f(fwd.max(0.0)) + f(bwd.max(0.0))
            } else {
                let mut fwd = 0.0f64;
                let mut bwd = 0.0f64;
                for &z in &set {
                    fwd = fwd.max((s.d(x, z) - s.d(y, z)).abs());
                    bwd = bwd.max((s.d(z, x) - s.d(z, y)).abs());
                }
                f(fwd) + f(bwd)
            };
            let inc = 0.5f64.powi(m as i32) * term;
            acc += inc;
            if m > seq.seq_len() && inc < 1e-18 {
                return acc;
            }
            m += 1;
        }
    }

    #[test]
    fn gamma_matches_naive_series_oracle() {
        let seq = c3_total();
        let gamma = kuratowski_gamma(&seq);
        for x in 0..3 {
            for y in 0..3 {
                let oracle = series_oracle(&seq, x, y, false);
                assert!(
                    (gamma[x][y] - oracle).abs() < 1e-12,
                    "({x},{y}): {} vs {oracle}",
                    gamma[x][y]
                );
            }
        }
        assert_eq!(gamma[0][0], 0.0);
        assert!(gamma[0][1] > 0.0);
    }

    #[test]
    fn p_matches_naive_series_oracle_and_vanishes_on_j() {
        let seq = c3_total();
        let p = quasi_metric_p(&seq);
        for x in 0..3 {
            for y in 0..3 {
                let oracle = series_oracle(&seq, x, y, true);
                assert!((p[x][y] - oracle).abs() < 1e-12);
            }
        }
        // a ≤ b in J: p(a,b) = 0; the reverse direction is positive.
        assert_eq!(p[0][1], 0.0);
        assert!(p[1][0] > 0.0);
        assert_eq!(p[0][0], 0.0);
    }

    #[test]
    fn incomparable_distinguished_points_have_positive_gamma() {
        // two spacelike points distinguished by a common successor
        let s = FiniteLorentzSpace::new(
            vec!["u".into(), "v".into(), "w".into()],
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 2.0],
                vec![0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap();
        let seq = SequencedSpace::total(s, vec![0, 1, 2]).unwrap();
        let gamma = kuratowski_gamma(&seq);
        assert!(gamma[0][1] > 0.0);
    }

    #[test]
    fn report_passes_on_c3() {
        let report = verify_qm_properties(&c3_total());
        assert!(report.pass(), "{report:?}");
        assert!(report.p_triangle_worst_slack >= -FP_SLACK);
        assert!(report.sandwich_worst_slack >= -FP_SLACK);
    }

    #[test]
    fn report_passes_on_single_point() {
        let s = FiniteLorentzSpace::from_matrix(vec![vec![0.0]]).unwrap();
        let seq = SequencedSpace::total(s, vec![0]).unwrap();
        let report = verify_qm_properties(&seq);
        assert!(report.pass(), "{report:?}");
    }

    #[test]
    fn conjugate_of_reversed_space_is_the_transpose() {
        let seq = c3_total();
        let reversed =
            SequencedSpace::total(seq.space.order_reversed(), seq.seq().to_vec()).unwrap();
        let p = quasi_metric_p(&seq);
        let p_rev = quasi_metric_p(&reversed);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(p_rev[x][y], p[y][x]);
            }
        }
    }

    #[test]
    fn tail_rule_records_the_stabilization_level() {
        let pair = quasi_metric_pair(&c3_total());
        assert_eq!(pair.seq_len, 2);
        assert_eq!(pair.tail_rule.level, 2);
        assert_eq!(pair.tail_rule.weight, 0.25);
    }
}
