//! Explicit time functions built from weighted series of distance profiles.
//!
//! The single-series construction assigns weight 2⁻ⁿ to the n-th enumeration
//! point (n starting at 1) and sums f(d(xₙ,x)) − f(d(x,xₙ)) with
//! f(t) = t/(1+t), giving a bounded function, strictly increasing along
//! strict causality whenever the enumeration distinguishes points.
//!
//! The exhaustion-compatible family uses the double series with weights
//! 2⁻⁽ʲ⁺ᵏ⁾: level k contributes its own list, enumerated cyclically in j (a
//! finite list repeats forever, so the inner geometric sum has the closed
//! form 2⁻ⁱ/(1−2⁻ᴹ) per distinct point). Truncating the outer sum at k ≤ n
//! yields τₙ on the level-n quotient with the uniform bound |τₙ − τ| ≤ 2⁻ⁿ.

use thiserror::Error;

use crate::regions::{quotient, QuotientSpace, RegionError};
use crate::relation::{causality, strict_causality};
use crate::space::FiniteLorentzSpace;

#[derive(Debug, Error, PartialEq)]
pub enum TimefnError {
    #[error("enumeration entry {index} out of range for space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("normalization points have equal time value {0}")]
    EqualValues(f64),
    #[error("exhaustion must be increasing: level {level} is not contained in level {next}")]
    NotIncreasing { level: usize, next: usize },
    #[error("exhaustion must end at the full space; level {0} misses point {1}")]
    LastLevelNotFull(usize, usize),
    #[error("level {level} list entry {point} is not in that level's ring")]
    ListOutsideRing { level: usize, point: usize },
    #[error("level {level} list misses class {class} of the level quotient")]
    ListMissesClass { level: usize, class: usize },
    #[error("exhaustion and level lists are empty")]
    Empty,
    #[error(transparent)]
    Region(#[from] RegionError),
}

fn squash(t: f64) -> f64 {
    t / (1.0 + t)
}

/// A bounded time function: values per point, with the affine frame
/// (alpha, beta) tracking rescalings so that |value − beta| ≤ alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeFunction {
    values: Vec<f64>,
    alpha: f64,
    beta: f64,
    enumeration: Vec<usize>,
}

impl TimeFunction {
    pub fn value(&self, x: usize) -> f64 {
        self.values[x]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn enumeration(&self) -> &[usize] {
        &self.enumeration
    }

    /// First strict-causality pair on which the values fail to increase, or
    /// None when the function is a genuine time function for the space.
    pub fn monotonicity_violation(&self, space: &FiniteLorentzSpace) -> Option<(usize, usize)> {
        let strict = strict_causality(&causality(space));
        for x in 0..space.len() {
            for y in 0..space.len() {
                if strict.contains(x, y) && !(self.value(x) < self.value(y)) {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// The single-series time function over an explicit enumeration. Weights are
/// 2⁻ⁿ with n starting at 1 in enumeration order; alpha = 1, beta = 0.
pub fn time_function(
    space: &FiniteLorentzSpace,
    enumeration: &[usize],
) -> Result<TimeFunction, TimefnError> {
    for &i in enumeration {
        if i >= space.len() {
            return Err(TimefnError::IndexOutOfRange { index: i, size: space.len() });
        }
    }
    let values = (0..space.len())
        .map(|x| {
            let mut acc = 0.0;
            let mut weight = 1.0;
            for &p in enumeration {
                weight *= 0.5;
                acc += weight * (squash(space.d(p, x)) - squash(space.d(x, p)));
            }
            acc
        })
        .collect();
    Ok(TimeFunction { values, alpha: 1.0, beta: 0.0, enumeration: enumeration.to_vec() })
}

/// Rescale and shift so that the result is 0 at `x` and 1 at `y`.
pub fn affine_normalize(
    tf: &TimeFunction,
    x: usize,
    y: usize,
) -> Result<TimeFunction, TimefnError> {
    let c0 = tf.value(x);
    let c1 = tf.value(y);
    if c0 == c1 {
        return Err(TimefnError::EqualValues(c0));
    }
    let scale = c1 - c0;
    Ok(TimeFunction {
        values: tf.values.iter().map(|v| (v - c0) / scale).collect(),
        alpha: tf.alpha / scale.abs(),
        beta: (tf.beta - c0) / scale,
        enumeration: tf.enumeration.clone(),
    })
}

/// One level of the exhaustion-compatible family: the level quotient and the
/// truncated time function on its classes.
#[derive(Debug, Clone)]
pub struct FamilyLevel {
    pub quotient: QuotientSpace,
    /// τₙ per class of the level quotient.
    pub tau: Vec<f64>,
    /// max over ring points of `|τₙ([x]) − τ(x)|`.
    pub deviation: f64,
    /// The guaranteed uniform bound 2⁻ⁿ for this level.
    pub bound: f64,
}

#[derive(Debug, Clone)]
pub struct TimeFunctionFamily {
    pub levels: Vec<FamilyLevel>,
    /// The limit function on the whole space (full double sum).
    pub tau: TimeFunction,
}

impl TimeFunctionFamily {
    /// Every level's deviation stays within its 2⁻ⁿ bound.
    pub fn bounds_hold(&self) -> bool {
        self.levels.iter().all(|l| l.deviation <= l.bound)
    }
}

/// Builds the family of time functions over an increasing exhaustion
/// Y₁ ⊆ … ⊆ Y_N = X with one list of ring points per level; each list must
/// hit every class of its level quotient.
pub fn time_function_family(
    space: &FiniteLorentzSpace,
    exhaustion: &[Vec<usize>],
    level_lists: &[Vec<usize>],
) -> Result<TimeFunctionFamily, TimefnError> {
    if exhaustion.is_empty() || exhaustion.len() != level_lists.len() {
        return Err(TimefnError::Empty);
    }
    for level in 0..exhaustion.len() - 1 {
        let this = &exhaustion[level];
        let next = &exhaustion[level + 1];
        if !this.iter().all(|p| next.contains(p)) {
            return Err(TimefnError::NotIncreasing { level, next: level + 1 });
        }
    }
    let last = exhaustion.len() - 1;
    for p in 0..space.len() {
        if !exhaustion[last].contains(&p) {
            return Err(TimefnError::LastLevelNotFull(last, p));
        }
    }

    let mut quotients = Vec::with_capacity(exhaustion.len());
    for (level, y) in exhaustion.iter().enumerate() {
        let q = quotient(space, y)?;
        let list = &level_lists[level];
        for &p in list {
            if !q.ring.contains(&p) {
                return Err(TimefnError::ListOutsideRing { level, point: p });
            }
        }
        for (class_id, class) in q.classes.iter().enumerate() {
            if !list.iter().any(|p| class.contains(p)) {
                return Err(TimefnError::ListMissesClass { level, class: class_id });
            }
        }
        quotients.push(q);
    }

    // Per-level contribution at every point: the inner cyclic series in
    // closed form, Σᵢ 2⁻ⁱ/(1−2⁻ᴹ) · (f(d(sᵢ,x)) − f(d(x,sᵢ))).
    let n_levels = exhaustion.len();
    let n_points = space.len();
    let mut level_terms = vec![vec![0.0; n_points]; n_levels];
    for (level, list) in level_lists.iter().enumerate() {
        if list.is_empty() {
            continue; // empty ring level contributes nothing
        }
        let m = list.len();
        let norm = 1.0 - 0.5f64.powi(m as i32);
        for x in 0..n_points {
            let mut acc = 0.0;
            let mut weight = 1.0;
            for &s in list {
                weight *= 0.5;
                acc += weight / norm * (squash(space.d(s, x)) - squash(space.d(x, s)));
            }
            level_terms[level][x] = acc;
        }
    }

    // τ with the full double sum; outer weights 2⁻ᵏ, k = level + 1.
    let tau_values: Vec<f64> = (0..n_points)
        .map(|x| {
            let mut acc = 0.0;
            let mut weight = 1.0;
            for terms in &level_terms {
                weight *= 0.5;
                acc += weight * terms[x];
            }
            acc
        })
        .collect();
    let tau = TimeFunction { values: tau_values, alpha: 1.0, beta: 0.0, enumeration: Vec::new() };

    let mut levels = Vec::with_capacity(n_levels);
    for (idx, q) in quotients.into_iter().enumerate() {
        let truncate_at = idx + 1; // τₙ sums levels k = 1..=n
        let tau_n: Vec<f64> = (0..q.class_count())
            .map(|c| {
                let rep = q.representative(c);
                let mut acc = 0.0;
                let mut weight = 1.0;
                for terms in level_terms.iter().take(truncate_at) {
                    weight *= 0.5;
                    acc += weight * terms[rep];
                }
                acc
            })
            .collect();
        let mut deviation = 0.0f64;
        for &x in &q.ring {
            let class = q.class_of(x).expect("ring point has a class");
            deviation = deviation.max((tau_n[class] - tau.value(x)).abs());
        }
        levels.push(FamilyLevel {
            quotient: q,
            tau: tau_n,
            deviation,
            bound: 0.5f64.powi(truncate_at as i32),
        });
    }

    Ok(TimeFunctionFamily { levels, tau })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::DEFAULT_TOL;

    fn c3() -> FiniteLorentzSpace {
        FiniteLorentzSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 2.5],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap()
    }

    fn five_chain() -> FiniteLorentzSpace {
        let rows = (0..5)
            .map(|i| (0..5).map(|j| if j > i { (j - i) as f64 } else { 0.0 }).collect())
            .collect();
        FiniteLorentzSpace::from_matrix(rows).unwrap()
    }

    // Direct three-term oracle for the C3 series, written out per the formula
    // rather than via the implementation's accumulation loop.
    fn c3_series_oracle(space: &FiniteLorentzSpace, x: usize) -> f64 {
        let f = |t: f64| t / (1.0 + t);
        (1..=3)
            .map(|n| {
                let p = n - 1;
                0.5f64.powi(n as i32) * (f(space.d(p, x)) - f(space.d(x, p)))
            })
            .sum()
    }

    #[test]
    fn c3_values_match_hand_computed_fractions() {
        let s = c3();
        let tf = time_function(&s, &[0, 1, 2]).unwrap();
        assert!((tf.value(0) - (-3.0 / 14.0)).abs() < 1e-15);
        assert!((tf.value(1) - (3.0 / 16.0)).abs() < 1e-15);
        assert!((tf.value(2) - (27.0 / 56.0)).abs() < 1e-15);
        for x in 0..3 {
            assert!((tf.value(x) - c3_series_oracle(&s, x)).abs() < 1e-15);
        }
        assert!(tf.monotonicity_violation(&s).is_none());
    }

    #[test]
    fn single_point_time_function_is_zero() {
        let s = FiniteLorentzSpace::from_matrix(vec![vec![0.0]]).unwrap();
        let tf = time_function(&s, &[0]).unwrap();
        assert_eq!(tf.value(0), 0.0);
    }

    #[test]
    fn quotiented_antichain_time_function_is_zero() {
        let s = FiniteLorentzSpace::from_matrix(vec![vec![0.0; 3]; 3]).unwrap();
        let q = quotient(&s, &[0, 1, 2]).unwrap();
        assert_eq!(q.class_count(), 0, "antichain ring is empty");
        // The degenerate case collapses to the single-class picture: constant 0.
        let tf = time_function(&s, &[0, 1, 2]).unwrap();
        assert!(tf.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn values_stay_bounded_by_alpha() {
        let s = five_chain();
        let tf = time_function(&s, &[0, 1, 2, 3, 4]).unwrap();
        for &v in tf.values() {
            assert!((v - tf.beta()).abs() <= tf.alpha());
        }
    }

    #[test]
    fn normalize_c3_endpoints() {
        let s = c3();
        let tf = time_function(&s, &[0, 1, 2]).unwrap();
        let norm = affine_normalize(&tf, 0, 2).unwrap();
        assert_eq!(norm.value(0), 0.0);
        assert_eq!(norm.value(2), 1.0);
        let expected_b = (3.0 / 16.0 + 3.0 / 14.0) / (27.0 / 56.0 + 3.0 / 14.0);
        assert!((norm.value(1) - expected_b).abs() < 1e-15);
        assert!(norm.value(1) > 0.0 && norm.value(1) < 1.0);
        assert!(norm.monotonicity_violation(&s).is_none());
    }

    #[test]
    fn normalize_is_identity_on_already_normalized_input() {
        let s = c3();
        let tf = affine_normalize(&time_function(&s, &[0, 1, 2]).unwrap(), 0, 2).unwrap();
        let again = affine_normalize(&tf, 0, 2).unwrap();
        for x in 0..3 {
            assert_eq!(tf.value(x), again.value(x));
        }
    }

    #[test]
    fn normalize_rejects_equal_values() {
        let s = c3();
        let tf = time_function(&s, &[0, 1, 2]).unwrap();
        assert!(matches!(affine_normalize(&tf, 1, 1), Err(TimefnError::EqualValues(_))));
    }

    #[test]
    fn family_single_level_equals_tau() {
        let s = c3();
        let all = vec![0, 1, 2];
        let family = time_function_family(&s, std::slice::from_ref(&all), std::slice::from_ref(&all)).unwrap();
        assert_eq!(family.levels.len(), 1);
        let level = &family.levels[0];
        assert_eq!(level.bound, 0.5);
        assert_eq!(level.deviation, 0.0, "one level: τ₁ is τ");
        assert!(family.bounds_hold());
    }

    #[test]
    fn family_five_chain_middle_diamond() {
        let s = five_chain();
        let exhaustion = vec![vec![1, 2, 3], vec![0, 1, 2, 3, 4]];
        let lists = vec![vec![1, 2, 3], vec![0, 1, 2, 3, 4]];
        let family = time_function_family(&s, &exhaustion, &lists).unwrap();
        assert!(family.levels[0].deviation <= 0.5);
        assert!(family.levels[1].deviation == 0.0);
        assert!(family.bounds_hold());
        assert!(family.tau.monotonicity_violation(&s).is_none());
    }

    #[test]
    fn family_with_degenerate_first_level() {
        // Y₁ = {b} has an empty ring, so its list is empty and its quotient
        // has no classes; the bound holds vacuously.
        let s = c3();
        let exhaustion = vec![vec![1], vec![0, 1, 2]];
        let lists = vec![vec![], vec![0, 1, 2]];
        let family = time_function_family(&s, &exhaustion, &lists).unwrap();
        assert_eq!(family.levels[0].quotient.class_count(), 0);
        assert!(family.bounds_hold());
    }

    #[test]
    fn family_rejects_bad_exhaustions() {
        let s = c3();
        assert!(matches!(
            time_function_family(&s, &[vec![0, 1]], &[vec![0, 1]]),
            Err(TimefnError::LastLevelNotFull(..))
        ));
        assert!(matches!(
            time_function_family(&s, &[vec![0, 2], vec![0, 1, 2]], &[vec![0], vec![0, 1, 2]]),
            Err(TimefnError::ListMissesClass { .. })
        ));
        assert!(matches!(
            time_function_family(
                &s,
                &[vec![0, 1], vec![1, 2], vec![0, 1, 2]],
                &[vec![0, 1], vec![1, 2], vec![0, 1, 2]]
            ),
            Err(TimefnError::NotIncreasing { level: 0, next: 1 })
        ));
    }
}
