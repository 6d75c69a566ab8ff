//! Time-separation encoding: the pair (d, K) of a distance and an
//! intermediate causal relation I ⊆ K ⊆ J, packed into one matrix l valued in
//! {−∞} ∪ [0, ∞) with l = d on K and −∞ off K.

use thiserror::Error;

use crate::relation::{causality, chronology, Relation};
use crate::space::{FiniteLorentzSpace, SpaceError};

#[derive(Debug, Error, PartialEq)]
pub enum TimeSepError {
    #[error("relation has side {relation} but space has {space} points")]
    SizeMismatch { relation: usize, space: usize },
    #[error("K must be reflexive; missing diagonal pair ({0},{0})")]
    NotReflexive(usize),
    #[error("K must be transitive; witness ({0},{1},{2})")]
    NotTransitive(usize, usize, usize),
    #[error("K must contain the chronology I; missing pair ({0},{1})")]
    MissingChronologyPair(usize, usize),
    #[error("K must be contained in the causal relation J; extra pair ({0},{1})")]
    BeyondCausal(usize, usize),
    #[error("l matrix is not square: row {row} has {cols} entries, expected {side}")]
    NotSquare { side: usize, row: usize, cols: usize },
    #[error("l({0},{1}) and l({1},{0}) are both positive")]
    SymmetricPositivity(usize, usize),
    #[error("extended reverse triangle inequality fails at ({0},{1},{2})")]
    ExtendedTriangle(usize, usize, usize),
    #[error("l({index},{index}) must be 0, got {value}")]
    BadDiagonal { index: usize, value: f64 },
    #[error("l entry ({row},{col}) must be in {{-inf}} ∪ [0,inf), got {value}")]
    BadValue { row: usize, col: usize, value: f64 },
    #[error(transparent)]
    Space(#[from] SpaceError),
}

/// The function l: X×X → {−∞} ∪ [0, ∞) encoding a pair (d, K).
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeparation {
    labels: Vec<String>,
    l: Vec<f64>, // row-major, NEG_INFINITY off K
    tol: f64,
}

impl TimeSeparation {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    #[inline]
    pub fn l(&self, i: usize, j: usize) -> f64 {
        self.l[i * self.labels.len() + j]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    /// Builds a time separation from a raw matrix, validating the type
    /// invariants: entries in {−∞} ∪ [0, ∞), zero diagonal (within tol), no
    /// symmetric positivity, and the extended reverse triangle inequality
    /// with −∞ absorbing.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>, tol: f64) -> Result<Self, TimeSepError> {
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(TimeSepError::NotSquare { side: n, row: i, cols: row.len() });
            }
        }
        let mut l = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let ok = v == f64::NEG_INFINITY || (v.is_finite() && v >= 0.0);
                if !ok {
                    return Err(TimeSepError::BadValue { row: i, col: j, value: v });
                }
                if i == j && !(v.is_finite() && v.abs() <= tol) {
                    return Err(TimeSepError::BadDiagonal { index: i, value: v });
                }
                l.push(v);
            }
        }
        let ts = TimeSeparation { labels, l, tol };
        for x in 0..n {
            for y in (x + 1)..n {
                if ts.l(x, y) > tol && ts.l(y, x) > tol {
                    return Err(TimeSepError::SymmetricPositivity(x, y));
                }
            }
        }
        // Extended inequality: l(x,z) ≥ l(x,y) + l(y,z); −∞ absorbs.
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let sum = ts.l(x, y) + ts.l(y, z); // −∞ propagates
                    if sum > f64::NEG_INFINITY && ts.l(x, z) + tol < sum {
                        return Err(TimeSepError::ExtendedTriangle(x, y, z));
                    }
                }
            }
        }
        Ok(ts)
    }
}

fn validate_intermediate(
    space: &FiniteLorentzSpace,
    k: &Relation,
) -> Result<(), TimeSepError> {
    if k.len() != space.len() {
        return Err(TimeSepError::SizeMismatch { relation: k.len(), space: space.len() });
    }
    if let Some(i) = k.is_reflexive().witness {
        return Err(TimeSepError::NotReflexive(i));
    }
    if let Some((x, y, z)) = k.is_transitive().witness {
        return Err(TimeSepError::NotTransitive(x, y, z));
    }
    let i = chronology(space);
    if let Some((x, y)) = i.subset_of(k).witness {
        return Err(TimeSepError::MissingChronologyPair(x, y));
    }
    let j = causality(space);
    if let Some((x, y)) = k.subset_of(&j).witness {
        return Err(TimeSepError::BeyondCausal(x, y));
    }
    Ok(())
}

/// Packs (d, K) into l: requires I ⊆ K ⊆ J with K reflexive and transitive.
pub fn to_time_separation(
    space: &FiniteLorentzSpace,
    k: &Relation,
) -> Result<TimeSeparation, TimeSepError> {
    validate_intermediate(space, k)?;
    let n = space.len();
    let mut l = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            l.push(if k.contains(x, y) { space.d(x, y) } else { f64::NEG_INFINITY });
        }
    }
    Ok(TimeSeparation { labels: space.labels().to_vec(), l, tol: space.tol() })
}

/// Unpacks l into (d, K): d = positive part, K = {l ≥ 0}. Exact inverse of
/// [`to_time_separation`] on valid inputs.
pub fn from_time_separation(
    ts: &TimeSeparation,
) -> Result<(FiniteLorentzSpace, Relation), TimeSepError> {
    let n = ts.len();
    let mut rows = Vec::with_capacity(n);
    let mut matrix = vec![false; n * n];
    for x in 0..n {
        let mut row = Vec::with_capacity(n);
        for y in 0..n {
            let v = ts.l(x, y);
            if v == f64::NEG_INFINITY {
                row.push(0.0);
            } else {
                row.push(v);
                matrix[x * n + y] = true;
            }
        }
        rows.push(row);
    }
    let space = FiniteLorentzSpace::new(ts.labels().to_vec(), rows, ts.tol())?;
    Ok((space, Relation::custom(n, matrix)))
}
