//! Bounded-region machinery: spacelike kernels, distance quotients and
//! nested-class point reconstruction.
//!
//! Restricting d to a region Y can merge points (two points of Y may agree on
//! every distance to the ring Y̊ = Y \ I⁰(Y)). The quotient collapses such
//! points into classes and inherits a distance matrix that is guaranteed to
//! distinguish — that is the whole point of the construction.

use thiserror::Error;

use crate::space::{FiniteLorentzSpace, SpaceError};

#[derive(Debug, Error, PartialEq)]
pub enum RegionError {
    #[error("region must be nonempty")]
    EmptyRegion,
    #[error("point index {index} out of range for space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("point {0} is not in the quotient ring")]
    NotInRing(usize),
    #[error("witness precondition failed: {0}")]
    WitnessPrecondition(String),
    #[error("nested classes are empty")]
    NoClasses,
    #[error("class at level {outer} is not contained in class at level {inner}")]
    NotNested { inner: usize, outer: usize },
    #[error("class intersection is empty; reconstruction hypotheses violated")]
    EmptyIntersection,
    #[error("class intersection has {0} points; reconstruction hypotheses violated")]
    AmbiguousIntersection(usize),
    #[error("class chain does not match the point's classes at level {0}")]
    ClassMismatch(usize),
    #[error(transparent)]
    Space(#[from] SpaceError),
}

fn check_region(space: &FiniteLorentzSpace, y: &[usize]) -> Result<(), RegionError> {
    if y.is_empty() {
        return Err(RegionError::EmptyRegion);
    }
    for &p in y {
        if p >= space.len() {
            return Err(RegionError::IndexOutOfRange { index: p, size: space.len() });
        }
    }
    Ok(())
}

/// I⁰(Y): points of Y at zero distance to and from every point of Y. Plays
/// the role of a local spacelike infinity.
pub fn spacelike_kernel(
    space: &FiniteLorentzSpace,
    y: &[usize],
) -> Result<Vec<usize>, RegionError> {
    check_region(space, y)?;
    let tol = space.tol();
    let mut kernel: Vec<usize> = y
        .iter()
        .copied()
        .filter(|&p| y.iter().all(|&q| space.d(p, q) <= tol && space.d(q, p) <= tol))
        .collect();
    kernel.sort_unstable();
    kernel.dedup();
    Ok(kernel)
}

/// The distance quotient of a region: classes of ring points that are
/// indistinguishable by d restricted to the ring, with the class-level
/// distance matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientSpace {
    /// Region the quotient was built from (sorted, deduped).
    pub region: Vec<usize>,
    /// Ring Y̊ = Y \ I⁰(Y), sorted.
    pub ring: Vec<usize>,
    /// Classes partition the ring; each class is sorted, classes ordered by
    /// their representative (= lowest member).
    pub classes: Vec<Vec<usize>>,
    /// Class-level space: label "Ck" for class k, distances between
    /// representatives.
    pub quotient: FiniteLorentzSpace,
}

impl QuotientSpace {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Representative (lowest index member) of class k.
    pub fn representative(&self, k: usize) -> usize {
        self.classes[k][0]
    }

    /// Class id of a ring point.
    pub fn class_of(&self, x: usize) -> Result<usize, RegionError> {
        self.classes
            .iter()
            .position(|c| c.contains(&x))
            .ok_or(RegionError::NotInRing(x))
    }

    pub fn qdist(&self, k1: usize, k2: usize) -> f64 {
        self.quotient.d(k1, k2)
    }
}

fn indistinguishable_on(
    space: &FiniteLorentzSpace,
    ring: &[usize],
    x: usize,
    y: usize,
) -> bool {
    let tol = space.tol();
    ring.iter().all(|&z| {
        (space.d(x, z) - space.d(y, z)).abs() <= tol && (space.d(z, x) - space.d(z, y)).abs() <= tol
    })
}

/// Builds the distance quotient of a region.
pub fn quotient(space: &FiniteLorentzSpace, y: &[usize]) -> Result<QuotientSpace, RegionError> {
    check_region(space, y)?;
    let mut region: Vec<usize> = y.to_vec();
    region.sort_unstable();
    region.dedup();
    let kernel = spacelike_kernel(space, &region)?;
    let ring: Vec<usize> = region.iter().copied().filter(|p| !kernel.contains(p)).collect();

    // classes require mutual indistinguishability with every member, so the
    // stated pairwise invariant holds verbatim even for tolerance ties
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut assigned = vec![false; ring.len()];
    for (i, &x) in ring.iter().enumerate() {
        if assigned[i] {
            continue;
        }
        let mut class = vec![x];
        assigned[i] = true;
        for (jj, &z) in ring.iter().enumerate().skip(i + 1) {
            if !assigned[jj] && class.iter().all(|&m| indistinguishable_on(space, &ring, m, z)) {
                class.push(z);
                assigned[jj] = true;
            }
        }
        classes.push(class);
    }

    let k = classes.len();
    let labels = (0..k).map(|c| format!("C{c}")).collect();
    let rows: Vec<Vec<f64>> = (0..k)
        .map(|c1| (0..k).map(|c2| space.d(classes[c1][0], classes[c2][0])).collect())
        .collect();
    // representative independence: any cross-member distance agrees with the
    // representative entry within twice the tolerance
    if cfg!(debug_assertions) {
        for (c1, class1) in classes.iter().enumerate() {
            for (c2, class2) in classes.iter().enumerate() {
                for &m1 in class1 {
                    for &m2 in class2 {
                        debug_assert!(
                            (space.d(m1, m2) - rows[c1][c2]).abs() <= 2.0 * space.tol() + 1e-15,
                            "qdist not representative-independent at ({m1},{m2})"
                        );
                    }
                }
            }
        }
    }
    let quotient_space = FiniteLorentzSpace::new(labels, rows, space.tol())?;

    Ok(QuotientSpace { region, ring, classes, quotient: quotient_space })
}

/// Verifies a class-nesting instance: with p ≪ x ≪ q, I(p,q) ⊆ Y ⊆ Y'
/// and p,q ∈ Y, the class of x in the Y'-quotient must be contained in its
/// class in the Y-quotient. Returns the verified inclusion.
pub fn nesting_check(
    space: &FiniteLorentzSpace,
    y: &[usize],
    y_prime: &[usize],
    x: usize,
    p: usize,
    q: usize,
) -> Result<bool, RegionError> {
    check_region(space, y)?;
    check_region(space, y_prime)?;
    space.check_index(x)?;
    space.check_index(p)?;
    space.check_index(q)?;
    if !(space.chron(p, x) && space.chron(x, q)) {
        return Err(RegionError::WitnessPrecondition(format!(
            "need p ≪ x ≪ q for p={p}, x={x}, q={q}"
        )));
    }
    if !(y.contains(&p) && y.contains(&q)) {
        return Err(RegionError::WitnessPrecondition("p and q must lie in Y".into()));
    }
    for z in 0..space.len() {
        if space.chron(p, z) && space.chron(z, q) && !y.contains(&z) {
            return Err(RegionError::WitnessPrecondition(format!(
                "I(p,q) ⊄ Y: point {z} missing"
            )));
        }
    }
    for &z in y {
        if !y_prime.contains(&z) {
            return Err(RegionError::WitnessPrecondition(format!("Y ⊄ Y': point {z} missing")));
        }
    }
    let q_small = quotient(space, y)?;
    let q_big = quotient(space, y_prime)?;
    let class_small = &q_small.classes[q_small.class_of(x)?];
    let class_big = &q_big.classes[q_big.class_of(x)?];
    Ok(class_big.iter().all(|m| class_small.contains(m)))
}

/// Recovers the unique point carried by a nested family of classes over an
/// increasing exhaustion: the intersection of the class member sets must be a
/// single point whose classes match the given ones.
pub fn reconstruct(
    space: &FiniteLorentzSpace,
    exhaustion: &[Vec<usize>],
    nested_classes: &[Vec<usize>],
) -> Result<usize, RegionError> {
    if nested_classes.is_empty() || exhaustion.len() != nested_classes.len() {
        return Err(RegionError::NoClasses);
    }
    for level in 1..nested_classes.len() {
        let outer = &nested_classes[level];
        let inner = &nested_classes[level - 1];
        if !outer.iter().all(|m| inner.contains(m)) {
            return Err(RegionError::NotNested { inner: level - 1, outer: level });
        }
    }
    let mut intersection: Vec<usize> = nested_classes[0].clone();
    for class in &nested_classes[1..] {
        intersection.retain(|m| class.contains(m));
    }
    match intersection.len() {
        0 => Err(RegionError::EmptyIntersection),
        1 => {
            let x = intersection[0];
            for (level, y) in exhaustion.iter().enumerate() {
                let q = quotient(space, y)?;
                let class = &q.classes[q.class_of(x)?];
                let given = &nested_classes[level];
                let mut a = class.clone();
                let mut b = given.clone();
                a.sort_unstable();
                b.sort_unstable();
                if a != b {
                    return Err(RegionError::ClassMismatch(level));
                }
            }
            Ok(x)
        }
        k => Err(RegionError::AmbiguousIntersection(k)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{validate_axioms, DEFAULT_TOL};

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

    // C3 plus a point z at zero distance to and from everything.
    fn c3_with_isolated() -> FiniteLorentzSpace {
        FiniteLorentzSpace::new(
            vec!["a".into(), "b".into(), "c".into(), "z".into()],
            vec![
                vec![0.0, 1.0, 2.5, 0.0],
                vec![0.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap()
    }

    // a -> {b, b2} -> c with b and b2 exact duplicates.
    fn duplicate_point_space() -> FiniteLorentzSpace {
        FiniteLorentzSpace::new(
            vec!["a".into(), "b".into(), "b2".into(), "c".into()],
            vec![
                vec![0.0, 1.0, 1.0, 2.5],
                vec![0.0, 0.0, 0.0, 1.0],
                vec![0.0, 0.0, 0.0, 1.0],
                vec![0.0, 0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap()
    }

    #[test]
    fn kernel_of_c3_is_empty() {
        assert!(spacelike_kernel(&c3(), &[0, 1, 2]).unwrap().is_empty());
    }

    #[test]
    fn kernel_of_antichain_is_everything() {
        let s = FiniteLorentzSpace::from_matrix(vec![vec![0.0; 3]; 3]).unwrap();
        assert_eq!(spacelike_kernel(&s, &[0, 1, 2]).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn kernel_sees_only_the_region() {
        // Within Y = {a, z} there are no positive distances, so both points
        // sit in the kernel even though a is related to b and c outside Y.
        let s = c3_with_isolated();
        assert_eq!(spacelike_kernel(&s, &[0, 3]).unwrap(), vec![0, 3]);
        assert!(matches!(spacelike_kernel(&s, &[]), Err(RegionError::EmptyRegion)));
    }

    #[test]
    fn quotient_of_distinguishing_region_is_identity() {
        let s = c3();
        let q = quotient(&s, &[0, 1, 2]).unwrap();
        assert_eq!(q.classes, vec![vec![0], vec![1], vec![2]]);
        assert_eq!(q.quotient.matrix_rows(), s.matrix_rows());
        assert!(validate_axioms(&q.quotient).all_pass());
    }

    #[test]
    fn quotient_merges_duplicate_points() {
        let s = duplicate_point_space();
        let q = quotient(&s, &[0, 1, 2, 3]).unwrap();
        assert_eq!(q.classes, vec![vec![0], vec![1, 2], vec![3]]);
        assert_eq!(q.class_of(1).unwrap(), q.class_of(2).unwrap());
        let report = validate_axioms(&q.quotient);
        assert!(report.all_pass(), "quotient must distinguish: {report:?}");
        assert_eq!(q.qdist(0, 2), 2.5);
    }

    #[test]
    fn quotient_of_antichain_is_empty() {
        let s = FiniteLorentzSpace::from_matrix(vec![vec![0.0; 3]; 3]).unwrap();
        let q = quotient(&s, &[0, 1, 2]).unwrap();
        assert!(q.ring.is_empty());
        assert_eq!(q.class_count(), 0);
    }

    // Two midpoints indistinguishable inside Y but separated by s ∈ Y' \ Y.
    fn splitting_space() -> FiniteLorentzSpace {
        FiniteLorentzSpace::new(
            vec!["p".into(), "x1".into(), "x2".into(), "q".into(), "s".into()],
            vec![
                vec![0.0, 1.0, 1.0, 2.0, 2.0],
                vec![0.0, 0.0, 0.0, 1.0, 1.0],
                vec![0.0, 0.0, 0.0, 1.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 0.0],
                vec![0.0, 0.0, 0.0, 0.0, 0.0],
            ],
            DEFAULT_TOL,
        )
        .unwrap()
    }

    #[test]
    fn nesting_holds_with_equality_for_equal_regions() {
        let s = c3();
        assert!(nesting_check(&s, &[0, 1, 2], &[0, 1, 2], 1, 0, 2).unwrap());
    }

    #[test]
    fn nesting_detects_strict_inclusion_when_region_grows() {
        let s = splitting_space();
        assert!(validate_axioms(&s).reverse_triangle.pass);
        let y = vec![0, 1, 2, 3];
        let y_prime = vec![0, 1, 2, 3, 4];
        let q_small = quotient(&s, &y).unwrap();
        let q_big = quotient(&s, &y_prime).unwrap();
        assert_eq!(q_small.classes[q_small.class_of(1).unwrap()], vec![1, 2]);
        assert_eq!(q_big.classes[q_big.class_of(1).unwrap()], vec![1]);
        assert!(nesting_check(&s, &y, &y_prime, 1, 0, 3).unwrap());
    }

    #[test]
    fn nesting_rejects_bad_witnesses() {
        let s = c3();
        // x not strictly between p and q
        assert!(matches!(
            nesting_check(&s, &[0, 1, 2], &[0, 1, 2], 0, 0, 2),
            Err(RegionError::WitnessPrecondition(_))
        ));
        // I(p,q) not inside Y
        assert!(matches!(
            nesting_check(&s, &[0, 2], &[0, 1, 2], 1, 0, 2),
            Err(RegionError::WitnessPrecondition(_))
        ));
    }

    #[test]
    fn reconstruct_singleton_chain() {
        let s = c3();
        let exhaustion = vec![vec![0, 1, 2], vec![0, 1, 2]];
        let classes = vec![vec![1], vec![1]];
        assert_eq!(reconstruct(&s, &exhaustion, &classes).unwrap(), 1);
    }

    #[test]
    fn reconstruct_shrinking_duplicate_class() {
        let s = splitting_space();
        let exhaustion = vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4]];
        let classes = vec![vec![1, 2], vec![1]];
        assert_eq!(reconstruct(&s, &exhaustion, &classes).unwrap(), 1);
    }

    #[test]
    fn reconstruct_rejects_non_nested_input() {
        let s = splitting_space();
        let exhaustion = vec![vec![0, 1, 2, 3], vec![0, 1, 2, 3, 4]];
        let classes = vec![vec![1], vec![2]];
        assert!(matches!(
            reconstruct(&s, &exhaustion, &classes),
            Err(RegionError::NotNested { .. })
        ));
    }
}
