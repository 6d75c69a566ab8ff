//! Discrete analogs of isocausal/maximal curves: strictly ordered chains, the
//! length functional, ď via longest-path dynamic programming over the strict
//! causal DAG, and the length-space check ď = d.
//!
//! The length of a chain is the sum of consecutive distances: inserting a
//! point can only decrease the sum (reverse triangle inequality), so the
//! infimum over partitions is attained at the finest one. A pair is strict
//! only when (x,y) ∈ J and (y,x) ∉ J, which keeps degenerate chains through
//! J-equivalent points out of the DAG and makes it acyclic whenever it is
//! well defined.

use thiserror::Error;

use crate::relation::{causality, chronology, strict_causality, Relation};
use crate::space::FiniteLorentzSpace;

#[derive(Debug, Error, PartialEq)]
pub enum ChainError {
    #[error("chain index {index} out of range for space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("chain must contain at least one point")]
    EmptyChain,
    #[error("chain is not a valid {mode:?} chain; first violating positions ({s},{t})")]
    InvalidChain { mode: ChainMode, s: usize, t: usize },
    #[error("points {0} and {1} are J-indistinguishable; strict causality is degenerate")]
    IndistinguishablePair(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// Every pair s < t satisfies ≪.
    Isochronal,
    /// Every pair s < t satisfies strict J.
    Isocausal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    pub points: Vec<usize>,
    pub mode: ChainMode,
}

impl Chain {
    pub fn isocausal(points: Vec<usize>) -> Self {
        Chain { points, mode: ChainMode::Isocausal }
    }

    pub fn isochronal(points: Vec<usize>) -> Self {
        Chain { points, mode: ChainMode::Isochronal }
    }
}

/// Outcome of the exhaustive pairwise chain check.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainCheck {
    pub ok: bool,
    /// First violating position pair (s, t) in lexicographic order.
    pub violation: Option<(usize, usize)>,
}

/// Validates a chain against its mode by checking every position pair.
pub fn validate_chain(space: &FiniteLorentzSpace, chain: &Chain) -> Result<ChainCheck, ChainError> {
    if chain.points.is_empty() {
        return Err(ChainError::EmptyChain);
    }
    for &p in &chain.points {
        if p >= space.len() {
            return Err(ChainError::IndexOutOfRange { index: p, size: space.len() });
        }
    }
    let relation_holds: Box<dyn Fn(usize, usize) -> bool> = match chain.mode {
        ChainMode::Isochronal => Box::new(|x, y| space.chron(x, y)),
        ChainMode::Isocausal => {
            let strict = strict_causality(&causality(space));
            Box::new(move |x, y| strict.contains(x, y))
        }
    };
    for s in 0..chain.points.len() {
        for t in (s + 1)..chain.points.len() {
            if !relation_holds(chain.points[s], chain.points[t]) {
                return Ok(ChainCheck { ok: false, violation: Some((s, t)) });
            }
        }
    }
    Ok(ChainCheck { ok: true, violation: None })
}

fn require_isocausal(space: &FiniteLorentzSpace, chain: &Chain) -> Result<(), ChainError> {
    let as_isocausal = Chain { points: chain.points.clone(), mode: ChainMode::Isocausal };
    let check = validate_chain(space, &as_isocausal)?;
    if let Some((s, t)) = check.violation {
        return Err(ChainError::InvalidChain { mode: ChainMode::Isocausal, s, t });
    }
    Ok(())
}

/// Σ d(cᵢ, cᵢ₊₁) over consecutive chain points; the value of the length
/// functional at the finest partition.
pub fn chain_length(space: &FiniteLorentzSpace, chain: &Chain) -> Result<f64, ChainError> {
    require_isocausal(space, chain)?;
    Ok(chain
        .points
        .windows(2)
        .map(|w| space.d(w[0], w[1]))
        .sum())
}

/// A chain is maximal when d is additive over every triple of its points.
pub fn is_maximal_chain(space: &FiniteLorentzSpace, chain: &Chain) -> Result<bool, ChainError> {
    require_isocausal(space, chain)?;
    let pts = &chain.points;
    let tol = space.tol();
    for i in 0..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                let lhs = space.d(pts[i], pts[j]) + space.d(pts[j], pts[k]);
                if (lhs - space.d(pts[i], pts[k])).abs() > tol {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Longest-path data for one source point.
struct DpRow {
    /// Best chain length from the source, NEG_INFINITY when unreachable.
    len: Vec<f64>,
    /// Cardinality of the best chain.
    card: Vec<usize>,
    /// Best chain itself (for traceback determinism the chains are
    /// materialized; desk-scale spaces keep this cheap).
    chain: Vec<Vec<usize>>,
}

fn topological_order(strict: &Relation) -> Vec<usize> {
    let n = strict.len();
    let mut order: Vec<usize> = (0..n).collect();
    let pred_count: Vec<usize> =
        (0..n).map(|v| (0..n).filter(|&u| strict.contains(u, v)).count()).collect();
    // strict J is transitive, so u < v implies pred_count(u) < pred_count(v)
    order.sort_by_key(|&v| (pred_count[v], v));
    order
}

fn dp_from_source(
    space: &FiniteLorentzSpace,
    strict: &Relation,
    order: &[usize],
    source: usize,
) -> DpRow {
    let n = space.len();
    let mut row = DpRow {
        len: vec![f64::NEG_INFINITY; n],
        card: vec![0; n],
        chain: vec![Vec::new(); n],
    };
    row.len[source] = 0.0;
    row.card[source] = 1;
    row.chain[source] = vec![source];
    for &v in order {
        if v == source {
            continue;
        }
        for u in 0..n {
            if !strict.contains(u, v) || row.len[u] == f64::NEG_INFINITY {
                continue;
            }
            let cand_len = row.len[u] + space.d(u, v);
            let cand_card = row.card[u] + 1;
            let better = if row.len[v] == f64::NEG_INFINITY {
                true
            } else if cand_len != row.len[v] {
                cand_len > row.len[v]
            } else if cand_card != row.card[v] {
                cand_card > row.card[v]
            } else {
                // equal length and cardinality: lexicographically smaller chain
                let mut cand = row.chain[u].clone();
                cand.push(v);
                cand < row.chain[v]
            };
            if better {
                let mut cand = row.chain[u].clone();
                cand.push(v);
                row.len[v] = cand_len;
                row.card[v] = cand_card;
                row.chain[v] = cand;
            }
        }
    }
    row
}

fn strict_dag(space: &FiniteLorentzSpace) -> Result<Relation, ChainError> {
    let j = causality(space);
    for x in 0..space.len() {
        for y in (x + 1)..space.len() {
            if j.contains(x, y) && j.contains(y, x) {
                return Err(ChainError::IndistinguishablePair(x, y));
            }
        }
    }
    Ok(strict_causality(&j))
}

/// The chain supremum ď as a full matrix: ď(x,y) is the longest isocausal
/// chain length from x to y when x ≪ y, else 0.
pub fn dcheck(space: &FiniteLorentzSpace) -> Result<Vec<Vec<f64>>, ChainError> {
    let strict = strict_dag(space)?;
    let i = chronology(space);
    let order = topological_order(&strict);
    let n = space.len();
    let mut out = vec![vec![0.0; n]; n];
    for x in 0..n {
        let row = dp_from_source(space, &strict, &order, x);
        for y in 0..n {
            if i.contains(x, y) {
                out[x][y] = row.len[y];
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct LengthReport {
    /// ď ≥ d − tol on every chronological pair.
    pub ok: bool,
    /// max over x ≪ y of d(x,y) − ď(x,y).
    pub worst_gap: f64,
    pub witness: Option<(usize, usize)>,
}

/// Checks the length-space property ď = d.
pub fn check_length_property(space: &FiniteLorentzSpace) -> Result<LengthReport, ChainError> {
    let dmat = dcheck(space)?;
    let mut worst_gap = f64::NEG_INFINITY;
    let mut witness = None;
    let mut any = false;
    for x in 0..space.len() {
        for y in 0..space.len() {
            if space.chron(x, y) {
                any = true;
                let gap = space.d(x, y) - dmat[x][y];
                if gap > worst_gap {
                    worst_gap = gap;
                    witness = Some((x, y));
                }
            }
        }
    }
    if !any {
        return Ok(LengthReport { ok: true, worst_gap: 0.0, witness: None });
    }
    Ok(LengthReport { ok: worst_gap <= space.tol(), worst_gap, witness })
}

/// A longest chain from x to y of maximal cardinality (then lexicographically
/// first), or None when x ≪ y fails.
pub fn maximal_chain_between(
    space: &FiniteLorentzSpace,
    x: usize,
    y: usize,
) -> Result<Option<Chain>, ChainError> {
    if x >= space.len() {
        return Err(ChainError::IndexOutOfRange { index: x, size: space.len() });
    }
    if y >= space.len() {
        return Err(ChainError::IndexOutOfRange { index: y, size: space.len() });
    }
    if !space.chron(x, y) {
        return Ok(None);
    }
    let strict = strict_dag(space)?;
    let order = topological_order(&strict);
    let row = dp_from_source(space, &strict, &order, x);
    Ok(Some(Chain::isocausal(row.chain[y].clone())))
}
