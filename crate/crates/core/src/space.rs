//! Finite Lorentzian metric spaces and the axioms they must satisfy.
//!
//! A space is a labeled point set with a dense nonnegative distance matrix;
//! `d[i][j] > 0` means point `j` lies in the chronological future of point
//! `i`. All order comparisons go through one absolute tolerance `tol`
//! (default [`DEFAULT_TOL`]) so that every derived relation stays mutually
//! consistent.

use thiserror::Error;

/// Default comparison tolerance for distance ties.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SpaceError {
    #[error("distance matrix is not square: {rows} rows, row {row} has {cols} entries")]
    NotSquare { rows: usize, row: usize, cols: usize },
    #[error("label count {labels} does not match matrix side {side}")]
    LabelMismatch { labels: usize, side: usize },
    #[error("duplicate label {label:?} at indices {first} and {second}")]
    DuplicateLabel { label: String, first: usize, second: usize },
    #[error("negative distance d[{row}][{col}] = {value}")]
    NegativeDistance { row: usize, col: usize, value: f64 },
    #[error("non-finite distance d[{row}][{col}]")]
    NonFiniteDistance { row: usize, col: usize },
    #[error("nonzero diagonal d[{index}][{index}] = {value} exceeds tolerance {tol}")]
    NonzeroDiagonal { index: usize, value: f64, tol: f64 },
    #[error("tolerance must be a finite nonnegative real, got {0}")]
    BadTolerance(f64),
    #[error("point index {index} out of range for space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("point set must be nonempty")]
    EmptySelection,
}

/// A finite point set with a Lorentzian distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteLorentzSpace {
    labels: Vec<String>,
    dist: Vec<f64>, // row-major n×n, dist[i*n+j] = d(point_i, point_j)
    tol: f64,
}

impl FiniteLorentzSpace {
    /// Builds a space from labels and a row-major square matrix, validating
    /// the type invariants (square, nonnegative, zero diagonal within `tol`).
    pub fn new(labels: Vec<String>, rows: Vec<Vec<f64>>, tol: f64) -> Result<Self, SpaceError> {
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(SpaceError::BadTolerance(tol));
        }
        let n = rows.len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(SpaceError::NotSquare { rows: n, row: i, cols: row.len() });
            }
        }
        if labels.len() != n {
            return Err(SpaceError::LabelMismatch { labels: labels.len(), side: n });
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if labels[i] == labels[j] {
                    return Err(SpaceError::DuplicateLabel {
                        label: labels[i].clone(),
                        first: i,
                        second: j,
                    });
                }
            }
        }
        let mut dist = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(SpaceError::NonFiniteDistance { row: i, col: j });
                }
                if v < 0.0 {
                    return Err(SpaceError::NegativeDistance { row: i, col: j, value: v });
                }
                if i == j && v > tol {
                    return Err(SpaceError::NonzeroDiagonal { index: i, value: v, tol });
                }
                dist.push(v);
            }
        }
        Ok(Self { labels, dist, tol })
    }

    /// Convenience constructor with synthetic labels `p0..p{n-1}` and the
    /// default tolerance.
    pub fn from_matrix(rows: Vec<Vec<f64>>) -> Result<Self, SpaceError> {
        let labels = (0..rows.len()).map(|i| format!("p{i}")).collect();
        Self::new(labels, rows, DEFAULT_TOL)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.dist[i * self.labels.len() + j]
    }

    /// Strict chronological order: `i ≪ j`.
    #[inline]
    pub fn chron(&self, i: usize, j: usize) -> bool {
        self.d(i, j) > self.tol
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn matrix_rows(&self) -> Vec<Vec<f64>> {
        let n = self.len();
        (0..n).map(|i| (0..n).map(|j| self.d(i, j)).collect()).collect()
    }

    pub fn check_index(&self, i: usize) -> Result<(), SpaceError> {
        if i < self.len() {
            Ok(())
        } else {
            Err(SpaceError::IndexOutOfRange { index: i, size: self.len() })
        }
    }

    /// The space with reversed time orientation (transposed matrix).
    pub fn order_reversed(&self) -> FiniteLorentzSpace {
        let n = self.len();
        let mut dist = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                dist[j * n + i] = self.d(i, j);
            }
        }
        FiniteLorentzSpace { labels: self.labels.clone(), dist, tol: self.tol }
    }
}

/// One checked property with an optional witness of failure.
#[derive(Debug, Clone, PartialEq)]
pub struct Check<W> {
    pub pass: bool,
    pub witness: Option<W>,
}

impl<W> Check<W> {
    pub fn pass() -> Self {
        Check { pass: true, witness: None }
    }
    pub fn fail(witness: W) -> Self {
        Check { pass: false, witness: Some(witness) }
    }
}

/// Result of [`validate_axioms`].
#[derive(Debug, Clone, PartialEq)]
pub struct AxiomReport {
    /// d(x,z) ≥ d(x,y) + d(y,z) whenever both summands exceed `tol`.
    /// Witness: first failing (x, y, z) in lexicographic index order.
    pub reverse_triangle: Check<(usize, usize, usize)>,
    /// Every pair x ≠ y is separated by some z in a row or a column.
    /// Witness: first indistinguishable (x, y).
    pub distinguishing: Check<(usize, usize)>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.reverse_triangle.pass && self.distinguishing.pass
    }
}

/// Checks the two finite-space axioms (the compactness axiom is vacuous on
/// finite sets). Always produces a report; never errors.
pub fn validate_axioms(space: &FiniteLorentzSpace) -> AxiomReport {
    let n = space.len();
    let tol = space.tol();

    let mut reverse_triangle = Check::pass();
    'rt: for x in 0..n {
        for y in 0..n {
            if space.d(x, y) <= tol {
                continue;
            }
            for z in 0..n {
                if space.d(y, z) <= tol {
                    continue;
                }
                if space.d(x, z) + tol < space.d(x, y) + space.d(y, z) {
                    reverse_triangle = Check::fail((x, y, z));
                    break 'rt;
                }
            }
        }
    }

    let mut distinguishing = Check::pass();
    'dist: for x in 0..n {
        for y in (x + 1)..n {
            let separated = (0..n).any(|z| {
                (space.d(x, z) - space.d(y, z)).abs() > tol
                    || (space.d(z, x) - space.d(z, y)).abs() > tol
            });
            if !separated {
                distinguishing = Check::fail((x, y));
                break 'dist;
            }
        }
    }

    AxiomReport { reverse_triangle, distinguishing }
}

/// Chronological boundary decomposition of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct Boundaries {
    /// X⁺: points with no chronological future.
    pub future: Vec<usize>,
    /// X⁻: points with no chronological past.
    pub past: Vec<usize>,
    /// I(X) = X \ (X⁺ ∪ X⁻).
    pub interior: Vec<usize>,
}

/// Splits the space into future boundary, past boundary and chronological
/// interior.
pub fn boundaries(space: &FiniteLorentzSpace) -> Boundaries {
    let n = space.len();
    let mut future = Vec::new();
    let mut past = Vec::new();
    let mut interior = Vec::new();
    for x in 0..n {
        let in_future = (0..n).all(|y| space.d(x, y) <= space.tol());
        let in_past = (0..n).all(|y| space.d(y, x) <= space.tol());
        if in_future {
            future.push(x);
        }
        if in_past {
            past.push(x);
        }
        if !in_future && !in_past {
            interior.push(x);
        }
    }
    Boundaries { future, past, interior }
}
