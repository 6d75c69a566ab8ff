//! Boolean relations over a space: chronology I, its closed thickenings I_ε,
//! and the maximal causal relation J, together with the exhaustive property
//! report for J.

use thiserror::Error;

use crate::space::{Check, FiniteLorentzSpace};

#[derive(Debug, Error, PartialEq)]
pub enum RelationError {
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("relation has side {relation} but space has {space} points")]
    SizeMismatch { relation: usize, space: usize },
    #[error("point set must be nonempty")]
    EmptySelection,
    #[error("point index {index} out of range for space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
}

/// Provenance tag of a relation matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RelationKind {
    /// I: pairs with d > tol.
    Chronology,
    /// I_ε: pairs with d ≥ ε (closed condition).
    ChronologyEps(f64),
    /// J: the maximal causal relation of Def. 4.1.
    Causal,
    Custom,
}

/// A boolean square matrix over the point set of one space.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation {
    n: usize,
    matrix: Vec<bool>,
    kind: RelationKind,
}

impl Relation {
    pub fn custom(n: usize, matrix: Vec<bool>) -> Self {
        assert_eq!(matrix.len(), n * n, "relation matrix must be n*n");
        Relation { n, matrix, kind: RelationKind::Custom }
    }

    fn tagged(n: usize, matrix: Vec<bool>, kind: RelationKind) -> Self {
        Relation { n, matrix, kind }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn kind(&self) -> RelationKind {
        self.kind
    }

    #[inline]
    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.matrix[i * self.n + j]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.contains(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Relation {
        let mut matrix = vec![false; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                matrix[j * self.n + i] = self.contains(i, j);
            }
        }
        Relation::tagged(self.n, matrix, RelationKind::Custom)
    }

    /// Relational composition: (x,z) ∈ self∘other iff ∃y with
    /// (x,y) ∈ other and (y,z) ∈ self (the usual right-to-left convention
    /// is irrelevant here; we expose the symmetric helper below instead).
    pub fn compose_after(&self, first: &Relation) -> Relation {
        assert_eq!(self.n, first.n);
        let n = self.n;
        let mut matrix = vec![false; n * n];
        for x in 0..n {
            for y in 0..n {
                if !first.contains(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.contains(y, z) {
                        matrix[x * n + z] = true;
                    }
                }
            }
        }
        Relation::tagged(n, matrix, RelationKind::Custom)
    }

    pub fn is_reflexive(&self) -> Check<usize> {
        for i in 0..self.n {
            if !self.contains(i, i) {
                return Check::fail(i);
            }
        }
        Check::pass()
    }

    pub fn is_transitive(&self) -> Check<(usize, usize, usize)> {
        for x in 0..self.n {
            for y in 0..self.n {
                if !self.contains(x, y) {
                    continue;
                }
                for z in 0..self.n {
                    if self.contains(y, z) && !self.contains(x, z) {
                        return Check::fail((x, y, z));
                    }
                }
            }
        }
        Check::pass()
    }

    pub fn is_antisymmetric(&self) -> Check<(usize, usize)> {
        for x in 0..self.n {
            for y in (x + 1)..self.n {
                if self.contains(x, y) && self.contains(y, x) {
                    return Check::fail((x, y));
                }
            }
        }
        Check::pass()
    }

    pub fn is_irreflexive(&self) -> Check<usize> {
        for i in 0..self.n {
            if self.contains(i, i) {
                return Check::fail(i);
            }
        }
        Check::pass()
    }

    /// Entrywise subset check; witness is the first pair in self \ other.
    pub fn subset_of(&self, other: &Relation) -> Check<(usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if self.contains(i, j) && !other.contains(i, j) {
                    return Check::fail((i, j));
                }
            }
        }
        Check::pass()
    }
}

/// The chronological relation I: x ≪ y iff d(x,y) > tol.
pub fn chronology(space: &FiniteLorentzSpace) -> Relation {
    let n = space.len();
    let mut matrix = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            matrix[i * n + j] = space.d(i, j) > space.tol();
        }
    }
    Relation::tagged(n, matrix, RelationKind::Chronology)
}

/// The closed thickening I_ε: pairs with d(x,y) ≥ ε. Requires ε > 0.
pub fn chronology_eps(space: &FiniteLorentzSpace, eps: f64) -> Result<Relation, RelationError> {
    if !(eps > 0.0) {
        return Err(RelationError::NonPositiveEpsilon(eps));
    }
    let n = space.len();
    let mut matrix = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            matrix[i * n + j] = space.d(i, j) >= eps;
        }
    }
    Ok(Relation::tagged(n, matrix, RelationKind::ChronologyEps(eps)))
}

/// The maximal causal relation J: (x,y) ∈ J iff every point orders its
/// distances to x and y consistently, i.e. for all p,
/// d(p,y) ≥ d(p,x) − tol and d(x,p) ≥ d(y,p) − tol.
pub fn causality(space: &FiniteLorentzSpace) -> Relation {
    let n = space.len();
    let tol = space.tol();
    let mut matrix = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            let ok = (0..n).all(|p| {
                space.d(p, y) >= space.d(p, x) - tol && space.d(x, p) >= space.d(y, p) - tol
            });
            matrix[x * n + y] = ok;
        }
    }
    Relation::tagged(n, matrix, RelationKind::Causal)
}

/// Strict causality derived from J: (x,y) ∈ J and (y,x) ∉ J. Avoids
/// degenerate "strict" pairs between J-equivalent points.
pub fn strict_causality(j: &Relation) -> Relation {
    let n = j.len();
    let mut matrix = vec![false; n * n];
    for x in 0..n {
        for y in 0..n {
            matrix[x * n + y] = j.contains(x, y) && !j.contains(y, x);
        }
    }
    Relation::tagged(n, matrix, RelationKind::Custom)
}

/// Exhaustive property report on the causal relation of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct CausalReport {
    /// Closedness is automatic on a finite set.
    pub closed: bool,
    pub reflexive: Check<usize>,
    pub transitive: Check<(usize, usize, usize)>,
    pub antisymmetric: Check<(usize, usize)>,
    pub i_subset_j: Check<(usize, usize)>,
    /// I∘J ∪ J∘I ⊆ I.
    pub push_up: Check<(usize, usize)>,
    /// d(x,y) + d(y,z) ≤ d(x,z) + 2·tol along J-composable pairs.
    pub causal_additivity: Check<(usize, usize, usize)>,
}

impl CausalReport {
    pub fn all_pass(&self) -> bool {
        self.closed
            && self.reflexive.pass
            && self.transitive.pass
            && self.antisymmetric.pass
            && self.i_subset_j.pass
            && self.push_up.pass
            && self.causal_additivity.pass
    }
}

pub fn check_causal_properties(space: &FiniteLorentzSpace) -> CausalReport {
    let n = space.len();
    let tol = space.tol();
    let i = chronology(space);
    let j = causality(space);

    let i_after_j = i.compose_after(&j); // J then I
    let j_after_i = j.compose_after(&i); // I then J
    let mut push_up = Check::pass();
    'pu: for x in 0..n {
        for z in 0..n {
            if (i_after_j.contains(x, z) || j_after_i.contains(x, z)) && !i.contains(x, z) {
                push_up = Check::fail((x, z));
                break 'pu;
            }
        }
    }

    let mut causal_additivity = Check::pass();
    'ca: for x in 0..n {
        for y in 0..n {
            if !j.contains(x, y) {
                continue;
            }
            for z in 0..n {
                if j.contains(y, z) && space.d(x, y) + space.d(y, z) > space.d(x, z) + 2.0 * tol {
                    causal_additivity = Check::fail((x, y, z));
                    break 'ca;
                }
            }
        }
    }

    CausalReport {
        closed: true,
        reflexive: j.is_reflexive(),
        transitive: j.is_transitive(),
        antisymmetric: j.is_antisymmetric(),
        i_subset_j: i.subset_of(&j),
        push_up,
        causal_additivity,
    }
}

/// R⁺(A) ∩ R⁻(A): the convex hull of `a` under the given relation.
pub fn hull(
    space: &FiniteLorentzSpace,
    a: &[usize],
    relation: &Relation,
) -> Result<Vec<usize>, RelationError> {
    if a.is_empty() {
        return Err(RelationError::EmptySelection);
    }
    if relation.len() != space.len() {
        return Err(RelationError::SizeMismatch { relation: relation.len(), space: space.len() });
    }
    for &p in a {
        if p >= space.len() {
            return Err(RelationError::IndexOutOfRange { index: p, size: space.len() });
        }
    }
    let mut out = Vec::new();
    for x in 0..space.len() {
        let up = a.iter().any(|&p| relation.contains(p, x));
        let down = a.iter().any(|&q| relation.contains(x, q));
        if up && down {
            out.push(x);
        }
    }
    Ok(out)
}

/// Result of the strict generating-set check.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratingReport {
    pub ok: bool,
    /// Points with no strict predecessor or no strict successor in S.
    pub uncovered: Vec<usize>,
}

/// Checks the strict generating condition X = I(S): every point must lie
/// strictly between two members of S. Finite spaces always have chronological
/// boundary points, so this fails on them by construction; the report names
/// the uncovered points.
pub fn is_generating(space: &FiniteLorentzSpace, s: &[usize]) -> GeneratingReport {
    let mut uncovered = Vec::new();
    for x in 0..space.len() {
        let pred = s.iter().any(|&p| space.chron(p, x));
        let succ = s.iter().any(|&q| space.chron(x, q));
        if !(pred && succ) {
            uncovered.push(x);
        }
    }
    GeneratingReport { ok: uncovered.is_empty(), uncovered }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::DEFAULT_TOL;

    fn c3(dac: f64) -> FiniteLorentzSpace {
        FiniteLorentzSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 1.0, dac],
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap()
    }

    fn antichain3() -> FiniteLorentzSpace {
        FiniteLorentzSpace::from_matrix(vec![vec![0.0; 3], vec![0.0; 3], vec![0.0; 3]]).unwrap()
    }

    fn halfline(points: &[f64]) -> FiniteLorentzSpace {
        let rows = points
            .iter()
            .map(|&x| points.iter().map(|&y| (x - y).max(0.0)).collect())
            .collect();
        let labels = points.iter().map(|p| format!("{p}")).collect();
        FiniteLorentzSpace::new(labels, rows, DEFAULT_TOL).unwrap()
    }

    #[test]
    fn chronology_of_c3() {
        let s = c3(2.5);
        let i = chronology(&s);
        assert_eq!(i.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn chronology_eps_threshold_is_closed() {
        let s = c3(2.5);
        let ieps = chronology_eps(&s, 1.2).unwrap();
        assert_eq!(ieps.pairs(), vec![(0, 2)]);
        // closed condition: d = eps qualifies
        let at = chronology_eps(&s, 1.0).unwrap();
        assert_eq!(at.pairs(), vec![(0, 1), (0, 2), (1, 2)]);
        assert!(chronology_eps(&s, 0.0).is_err());
        assert!(chronology_eps(&s, -1.0).is_err());
    }

    #[test]
    fn chronology_of_antichain_is_empty() {
        assert!(chronology(&antichain3()).pairs().is_empty());
    }

    // Brute-force oracle straight from the definition, kept independent of
    // the implementation's loop structure.
    fn causality_oracle(space: &FiniteLorentzSpace, x: usize, y: usize) -> bool {
        (0..space.len()).all(|p| {
            space.d(p, y) >= space.d(p, x) - space.tol()
                && space.d(x, p) >= space.d(y, p) - space.tol()
        })
    }

    #[test]
    fn causality_of_c3_matches_oracle() {
        let s = c3(2.5);
        let j = causality(&s);
        let mut expected = vec![(0, 0), (0, 1), (0, 2), (1, 1), (1, 2), (2, 2)];
        expected.sort();
        assert_eq!(j.pairs(), expected);
        for x in 0..3 {
            for y in 0..3 {
                assert_eq!(j.contains(x, y), causality_oracle(&s, x, y));
            }
        }
    }

    #[test]
    fn causality_of_antichain_is_everything() {
        let j = causality(&antichain3());
        assert_eq!(j.pairs().len(), 9);
    }

    #[test]
    fn causality_one_sided_zero_pair() {
        // d(a,b) = d(b,a) = 0 but c separates: d(a,c) = 1, d(b,c) = 0.
        // (a,b) ∈ J (d(a,p) ≥ d(b,p) holds for all p), (b,a) ∉ J.
        let s = FiniteLorentzSpace::new(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 0.0, 1.0],
                vec![0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap();
        let j = causality(&s);
        assert!(j.contains(0, 1));
        assert!(!j.contains(1, 0));
        assert!(causality_oracle(&s, 0, 1));
        assert!(!causality_oracle(&s, 1, 0));
    }

    #[test]
    fn causal_report_c3_all_pass() {
        let report = check_causal_properties(&c3(2.5));
        assert!(report.all_pass(), "{report:?}");
    }

    #[test]
    fn causal_report_antichain_fails_antisymmetry() {
        let report = check_causal_properties(&antichain3());
        assert!(!report.antisymmetric.pass);
        assert_eq!(report.antisymmetric.witness, Some((0, 1)));
        assert!(report.reflexive.pass);
        assert!(report.transitive.pass);
    }

    #[test]
    fn hull_under_strict_and_reflexive_relations() {
        let s = c3(2.5);
        let i = chronology(&s);
        let j = causality(&s);
        assert_eq!(hull(&s, &[0, 2], &i).unwrap(), vec![1]);
        assert_eq!(hull(&s, &[0, 2], &j).unwrap(), vec![0, 1, 2]);
        assert_eq!(hull(&s, &[1], &i).unwrap(), Vec::<usize>::new());
        assert!(matches!(hull(&s, &[], &i), Err(RelationError::EmptySelection)));
    }

    #[test]
    fn generating_fails_on_chain_endpoints() {
        let s = c3(2.5);
        let report = is_generating(&s, &[0, 2]);
        assert!(!report.ok);
        assert_eq!(report.uncovered, vec![0, 2], "a lacks a predecessor, c a successor");
    }

    #[test]
    fn generating_on_five_chain_endpoints() {
        let rows = (1..=5)
            .map(|i| (1..=5).map(|j| if j > i { (j - i) as f64 } else { 0.0 }).collect())
            .collect();
        let s = FiniteLorentzSpace::from_matrix(rows).unwrap();
        let report = is_generating(&s, &[0, 4]);
        assert!(!report.ok);
        assert_eq!(report.uncovered, vec![0, 4]);
    }

    #[test]
    fn generating_on_halfline_sample_leaves_extremes_uncovered() {
        // The extreme sampled points are members of S but still lack a strict
        // predecessor/successor, exactly as on the 5-chain.
        let s = halfline(&[0.5, 1.0, 2.0, 3.0, 5.0]);
        let report = is_generating(&s, &[0, 4]);
        assert!(!report.ok);
        assert_eq!(report.uncovered, vec![0, 4]);
        // Interior points are covered.
        let strict = is_generating(&s, &[0, 1, 4]);
        assert!(strict.uncovered.contains(&0) && strict.uncovered.contains(&4));
        assert!(!strict.uncovered.contains(&2));
    }
}
