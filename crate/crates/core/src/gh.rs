//! Quasi-correspondence algebra, distortion, minimal-distortion search and
//! GH-convergence certification for sequenced spaces.
//!
//! An (m, ε) quasi-correspondence between sequenced spaces is a pair set
//! inside X^m × X'^m that covers both ε-cores, contains the first m anchor
//! pairs and has distortion strictly below ε. Points of a truncation outside
//! the ε-core need no partner; the search treats them as optional.
//!
//! The searcher is exact (full enumeration with running-distortion pruning)
//! while both cover sets have at most [`EXACT_COVER_LIMIT`] points, and falls
//! back to greedy profile matching plus pairwise local search beyond that.
//! Only the exact path can certify infeasibility.

use thiserror::Error;

use crate::seq::{SeqError, SequencedSpace};
use crate::space::{Check, FiniteLorentzSpace};

/// Cover-set size up to which the search enumerates exhaustively.
pub const EXACT_COVER_LIMIT: usize = 12;

/// Default node budget for the exact search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error, PartialEq)]
pub enum GhError {
    #[error("pair set must be nonempty")]
    EmptyPairs,
    #[error("epsilon must be positive, got {0}")]
    BadEpsilon(f64),
    #[error("order m={m} out of range 1..={max}")]
    OrderOutOfRange { m: usize, max: usize },
    #[error("pair ({0},{1}) has an out-of-range index")]
    PairOutOfRange(usize, usize),
    #[error("orders differ: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("selection must be nonempty, strictly increasing and within the sequence")]
    BadSelection,
    #[error("selection has no entries below the correspondence order {0}")]
    SelectionMissesOrder(usize),
    #[error("subsampled sequence no longer covers the space; uncovered points {0:?}")]
    SubsequenceNotGenerating(Vec<usize>),
    #[error("schedule invalid: {0}")]
    BadSchedule(String),
    #[error(transparent)]
    Seq(#[from] SeqError),
}

/// A set of index pairs with its (m, ε) metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiCorrespondence {
    pairs: Vec<(usize, usize)>,
    pub m: usize,
    pub eps: f64,
}

impl QuasiCorrespondence {
    pub fn new(mut pairs: Vec<(usize, usize)>, m: usize, eps: f64) -> Result<Self, GhError> {
        if pairs.is_empty() {
            return Err(GhError::EmptyPairs);
        }
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(GhError::BadEpsilon(eps));
        }
        if m == 0 {
            return Err(GhError::OrderOutOfRange { m, max: usize::MAX });
        }
        pairs.sort_unstable();
        pairs.dedup();
        Ok(QuasiCorrespondence { pairs, m, eps })
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }
}

/// sup over pair-pairs of |d(x,y) − d'(x',y')|, the pair with itself
/// included.
pub fn distortion(
    x: &FiniteLorentzSpace,
    xp: &FiniteLorentzSpace,
    pairs: &[(usize, usize)],
) -> Result<f64, GhError> {
    if pairs.is_empty() {
        return Err(GhError::EmptyPairs);
    }
    for &(a, b) in pairs {
        if a >= x.len() || b >= xp.len() {
            return Err(GhError::PairOutOfRange(a, b));
        }
    }
    let mut sup = 0.0f64;
    for &(a, ap) in pairs {
        for &(b, bp) in pairs {
            sup = sup.max((x.d(a, b) - xp.d(ap, bp)).abs());
        }
    }
    Ok(sup)
}

fn distortion_argmax(
    x: &FiniteLorentzSpace,
    xp: &FiniteLorentzSpace,
    pairs: &[(usize, usize)],
) -> (f64, usize, usize) {
    let mut sup = 0.0f64;
    let mut arg = (0, 0);
    for (i, &(a, ap)) in pairs.iter().enumerate() {
        for (j, &(b, bp)) in pairs.iter().enumerate() {
            let v = (x.d(a, b) - xp.d(ap, bp)).abs();
            if v > sup {
                sup = v;
                arg = (i, j);
            }
        }
    }
    (sup, arg.0, arg.1)
}

/// Verification report for one quasi-correspondence. Compactness of the pair
/// set is automatic on finite spaces and not reported separately.
#[derive(Debug, Clone, PartialEq)]
pub struct QcReport {
    /// Every pair lies in X^m × X'^m.
    pub within_truncations: Check<(usize, usize)>,
    /// I_ε(p¹..p^m) ⊆ R₁; witness is an uncovered point of X.
    pub cover1: Check<usize>,
    /// I_ε(p'¹..p'^m) ⊆ R₂; witness is an uncovered point of X'.
    pub cover2: Check<usize>,
    pub distortion: f64,
    /// dis R < ε; witness is the offending pair-pair.
    pub distortion_ok: Check<((usize, usize), (usize, usize))>,
    /// (p^r, p'^r) ∈ R for r = 1..m; witness is the 0-based rank.
    pub anchors_ok: Check<usize>,
}

impl QcReport {
    pub fn pass(&self) -> bool {
        self.within_truncations.pass
            && self.cover1.pass
            && self.cover2.pass
            && self.distortion_ok.pass
            && self.anchors_ok.pass
    }
}

fn check_order(xs: &SequencedSpace, xps: &SequencedSpace, m: usize) -> Result<(), GhError> {
    let max = xs.seq_len().min(xps.seq_len());
    if m < 1 || m > max {
        return Err(GhError::OrderOutOfRange { m, max });
    }
    Ok(())
}

/// Checks all quasi-correspondence conditions and reports witnesses.
pub fn verify_qc(
    xs: &SequencedSpace,
    xps: &SequencedSpace,
    qc: &QuasiCorrespondence,
) -> Result<QcReport, GhError> {
    check_order(xs, xps, qc.m)?;
    for &(a, b) in qc.pairs() {
        if a >= xs.space.len() || b >= xps.space.len() {
            return Err(GhError::PairOutOfRange(a, b));
        }
    }
    let xm1 = xs.xm_points(qc.m);
    let xm2 = xps.xm_points(qc.m);
    let mut within_truncations = Check::pass();
    for &(a, b) in qc.pairs() {
        if !xm1.contains(&a) || !xm2.contains(&b) {
            within_truncations = Check::fail((a, b));
            break;
        }
    }

    let r1: Vec<usize> = qc.pairs().iter().map(|&(a, _)| a).collect();
    let r2: Vec<usize> = qc.pairs().iter().map(|&(_, b)| b).collect();
    let mut cover1 = Check::pass();
    for p in xs.cover_eps(qc.m, qc.eps) {
        if !r1.contains(&p) {
            cover1 = Check::fail(p);
            break;
        }
    }
    let mut cover2 = Check::pass();
    for p in xps.cover_eps(qc.m, qc.eps) {
        if !r2.contains(&p) {
            cover2 = Check::fail(p);
            break;
        }
    }

    let (dis, wi, wj) = distortion_argmax(&xs.space, &xps.space, qc.pairs());
    let distortion_ok = if dis < qc.eps {
        Check::pass()
    } else {
        Check::fail((qc.pairs()[wi], qc.pairs()[wj]))
    };

    let mut anchors_ok = Check::pass();
    for r in 0..qc.m {
        let anchor = (xs.seq()[r], xps.seq()[r]);
        if !qc.pairs().contains(&anchor) {
            anchors_ok = Check::fail(r);
            break;
        }
    }

    Ok(QcReport {
        within_truncations,
        cover1,
        cover2,
        distortion: dis,
        distortion_ok,
        anchors_ok,
    })
}

/// Swaps the two sides; an (m, ε) X−X' qc becomes an (m, ε) X'−X qc.
pub fn transpose_qc(qc: &QuasiCorrespondence) -> QuasiCorrespondence {
    let pairs = qc.pairs().iter().map(|&(a, b)| (b, a)).collect();
    QuasiCorrespondence::new(pairs, qc.m, qc.eps).expect("transpose preserves validity")
}

/// Relational composition through a shared middle space: budget ε + ε'.
pub fn compose_qc(
    ab: &QuasiCorrespondence,
    bc: &QuasiCorrespondence,
) -> Result<QuasiCorrespondence, GhError> {
    if ab.m != bc.m {
        return Err(GhError::OrderMismatch(ab.m, bc.m));
    }
    let mut pairs = Vec::new();
    for &(a, b) in ab.pairs() {
        for &(b2, c) in bc.pairs() {
            if b == b2 {
                pairs.push((a, c));
            }
        }
    }
    QuasiCorrespondence::new(pairs, ab.m, ab.eps + bc.eps)
}

/// A restriction of a quasi-correspondence to a subsampled pair of sequences.
#[derive(Debug, Clone)]
pub struct RestrictedQc {
    pub qc: QuasiCorrespondence,
    pub xs: SequencedSpace,
    pub xps: SequencedSpace,
}

/// Restricts a qc along a strictly increasing selection of anchor positions
/// (0-based over the full sequences). The restricted order is the number of
/// selected positions below the original order m; the selection may keep
/// later anchors purely to preserve coverage of the re-sequenced spaces.
pub fn restrict_qc(
    xs: &SequencedSpace,
    xps: &SequencedSpace,
    qc: &QuasiCorrespondence,
    selection: &[usize],
) -> Result<RestrictedQc, GhError> {
    if selection.is_empty() || selection.windows(2).any(|w| w[0] >= w[1]) {
        return Err(GhError::BadSelection);
    }
    if *selection.last().unwrap() >= xs.seq_len().min(xps.seq_len()) {
        return Err(GhError::BadSelection);
    }
    let l = selection.iter().take_while(|&&r| r < qc.m).count();
    if l == 0 {
        return Err(GhError::SelectionMissesOrder(qc.m));
    }
    let sub_xs = xs.subsequence(selection)?;
    let sub_xps = xps.subsequence(selection)?;
    // Generating condition: subsampling must not lose coverage.
    let old_uncovered = xs.uncovered();
    let grown: Vec<usize> = sub_xs
        .uncovered()
        .into_iter()
        .filter(|p| !old_uncovered.contains(p))
        .collect();
    if !grown.is_empty() {
        return Err(GhError::SubsequenceNotGenerating(grown));
    }
    let old_uncovered_p = xps.uncovered();
    let grown_p: Vec<usize> = sub_xps
        .uncovered()
        .into_iter()
        .filter(|p| !old_uncovered_p.contains(p))
        .collect();
    if !grown_p.is_empty() {
        return Err(GhError::SubsequenceNotGenerating(grown_p));
    }

    let xm1 = sub_xs.xm_points(l);
    let xm2 = sub_xps.xm_points(l);
    let pairs: Vec<(usize, usize)> = qc
        .pairs()
        .iter()
        .copied()
        .filter(|&(a, b)| xm1.contains(&a) && xm2.contains(&b))
        .collect();
    let restricted = QuasiCorrespondence::new(pairs, l, qc.eps)?;
    Ok(RestrictedQc { qc: restricted, xs: sub_xs, xps: sub_xps })
}

/// One partner assignment task in the search: a required cover point on one
/// side, to be matched with a partner on the other side.
#[derive(Debug, Clone, Copy)]
struct Task {
    point: usize,
    /// true: point ∈ X needing a partner in X'^m; false: point ∈ X' needing
    /// a partner in X^m.
    left: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    pub best: Option<QuasiCorrespondence>,
    /// True when exhaustive enumeration completed, so a `None` best is a
    /// proof that no (m, ε) quasi-correspondence exists.
    pub certified: bool,
    pub nodes: u64,
    pub budget_exhausted: bool,
    /// Smallest distortion reached by the heuristic when nothing feasible
    /// was found; None for feasible or exactly-decided outcomes.
    pub near_miss: Option<f64>,
}

fn pair_mismatch(
    x: &FiniteLorentzSpace,
    xp: &FiniteLorentzSpace,
    p: (usize, usize),
    q: (usize, usize),
) -> f64 {
    (x.d(p.0, q.0) - xp.d(p.1, q.1)).abs()
}

fn incremental_distortion(
    x: &FiniteLorentzSpace,
    xp: &FiniteLorentzSpace,
    placed: &[(usize, usize)],
    cand: (usize, usize),
) -> f64 {
    // d is asymmetric, so both orderings of every pair-pair contribute.
    let mut worst = 0.0f64;
    for &q in placed {
        worst = worst.max(pair_mismatch(x, xp, cand, q));
        worst = worst.max(pair_mismatch(x, xp, q, cand));
    }
    worst
}

struct ExactSearch<'a> {
    x: &'a FiniteLorentzSpace,
    xp: &'a FiniteLorentzSpace,
    tasks: &'a [Task],
    domain_left: &'a [usize],
    domain_right: &'a [usize],
    eps: f64,
    budget: u64,
    nodes: u64,
    budget_exhausted: bool,
    best: Option<(f64, Vec<(usize, usize)>)>,
}

impl ExactSearch<'_> {
    /// Bound for pruning: the target ε, tightened to the incumbent once one
    /// assignment is complete. Pruning at ≥ bound keeps the infeasibility
    /// certificate exact (nothing below ε is ever cut before a feasible
    /// assignment exists) and makes the enumeration a true branch-and-bound.
    fn bound(&self) -> f64 {
        match &self.best {
            Some((b, _)) => self.eps.min(*b),
            None => self.eps,
        }
    }

    fn run(&mut self, depth: usize, placed: &mut Vec<(usize, usize)>, running: f64) {
        if self.budget_exhausted {
            return;
        }
        if depth == self.tasks.len() {
            if self.best.as_ref().map_or(true, |(bd, _)| running < *bd) {
                self.best = Some((running, placed.clone()));
            }
            return;
        }
        let task = self.tasks[depth];
        let domain = if task.left { self.domain_right } else { self.domain_left };
        for &partner in domain {
            self.nodes += 1;
            if self.nodes > self.budget {
                self.budget_exhausted = true;
                return;
            }
            let cand = if task.left { (task.point, partner) } else { (partner, task.point) };
            let inc = incremental_distortion(self.x, self.xp, placed, cand);
            let new_running = running.max(inc);
            if new_running >= self.bound() {
                continue;
            }
            placed.push(cand);
            self.run(depth + 1, placed, new_running);
            placed.pop();
            if self.budget_exhausted {
                return;
            }
        }
    }
}

/// Mean two-sided distance of a point; the per-point scale used to order
/// search tasks comparably across spaces of different cardinality.
fn row_mean(space: &FiniteLorentzSpace, p: usize) -> f64 {
    let sum: f64 = (0..space.len()).map(|q| space.d(p, q) + space.d(q, p)).sum();
    sum / space.len() as f64
}

/// Searches for an (m, eps) quasi-correspondence. Exact and certifying while
/// both cover sets have at most [`EXACT_COVER_LIMIT`] points; greedy with
/// pairwise local search beyond that (never certifying).
pub fn search_qc(
    xs: &SequencedSpace,
    xps: &SequencedSpace,
    m: usize,
    eps: f64,
    budget: u64,
) -> Result<SearchOutcome, GhError> {
    check_order(xs, xps, m)?;
    if !(eps > 0.0 && eps.is_finite()) {
        return Err(GhError::BadEpsilon(eps));
    }
    let x = &xs.space;
    let xp = &xps.space;

    let mut anchors: Vec<(usize, usize)> = (0..m).map(|r| (xs.seq()[r], xps.seq()[r])).collect();
    anchors.sort_unstable();
    anchors.dedup();
    let anchor_dis = distortion(x, xp, &anchors)?;
    if anchor_dis >= eps {
        // Anchor pairs are forced, so no qc can exist.
        return Ok(SearchOutcome {
            best: None,
            certified: true,
            nodes: 0,
            budget_exhausted: false,
            near_miss: None,
        });
    }

    let covered_left: Vec<usize> = anchors.iter().map(|&(a, _)| a).collect();
    let covered_right: Vec<usize> = anchors.iter().map(|&(_, b)| b).collect();
    let cover_left: Vec<usize> = xs
        .cover_eps(m, eps)
        .into_iter()
        .filter(|p| !covered_left.contains(p))
        .collect();
    let cover_right: Vec<usize> = xps
        .cover_eps(m, eps)
        .into_iter()
        .filter(|p| !covered_right.contains(p))
        .collect();
    let domain_left = xs.xm_points(m);
    let domain_right = xps.xm_points(m);

    let mut tasks: Vec<Task> = cover_left
        .iter()
        .map(|&p| Task { point: p, left: true })
        .chain(cover_right.iter().map(|&p| Task { point: p, left: false }))
        .collect();
    // Decreasing row-sum order (normalized per space so the two sides
    // interleave); ties by side then index for determinism.
    tasks.sort_by(|a, b| {
        let ra = if a.left { row_mean(x, a.point) } else { row_mean(xp, a.point) };
        let rb = if b.left { row_mean(x, b.point) } else { row_mean(xp, b.point) };
        rb.partial_cmp(&ra)
            .unwrap()
            .then_with(|| a.left.cmp(&b.left).reverse())
            .then_with(|| a.point.cmp(&b.point))
    });

    if tasks.is_empty() {
        let qc = QuasiCorrespondence::new(anchors, m, eps)?;
        return Ok(SearchOutcome {
            best: Some(qc),
            certified: true,
            nodes: 0,
            budget_exhausted: false,
            near_miss: None,
        });
    }

    if cover_left.len() <= EXACT_COVER_LIMIT && cover_right.len() <= EXACT_COVER_LIMIT {
        let mut search = ExactSearch {
            x,
            xp,
            tasks: &tasks,
            domain_left: &domain_left,
            domain_right: &domain_right,
            eps,
            budget,
            nodes: 0,
            budget_exhausted: false,
            best: None,
        };
        let mut placed = anchors.clone();
        search.run(0, &mut placed, anchor_dis);
        let nodes = search.nodes;
        let budget_exhausted = search.budget_exhausted;
        let best = match search.best {
            Some((_, pairs)) => Some(QuasiCorrespondence::new(pairs, m, eps)?),
            None => None,
        };
        return Ok(SearchOutcome {
            best,
            certified: !budget_exhausted,
            nodes,
            budget_exhausted,
            near_miss: None,
        });
    }

    // Greedy profile matching in two phases. The side with fewer cover
    // points is placed first as a scaffold, each point scored against
    // everything placed so far. The denser side is then matched purely
    // against the anchor-plus-scaffold profiles: scoring every point of it
    // against one fixed reference set keeps equal profiles tie-breaking
    // identically, which is what makes consistent matchings (e.g. a common
    // grid rounding) come out of index order. Residual clashes between
    // dense-side assignments are left to the local search.
    let scaffold_left = cover_left.len() <= cover_right.len();
    let mut ordered: Vec<Task> = tasks.iter().copied().filter(|t| t.left == scaffold_left).collect();
    ordered.extend(tasks.iter().copied().filter(|t| t.left != scaffold_left));
    let tasks = ordered;
    let mut placed = anchors.clone();
    let mut nodes = 0u64;
    let scaffold_len = anchors.len() + tasks.iter().filter(|t| t.left == scaffold_left).count();
    for task in &tasks {
        let domain = if task.left { &domain_right } else { &domain_left };
        let reference_len = if task.left == scaffold_left { placed.len() } else { scaffold_len };
        let mut best_partner = None;
        let mut best_score = (f64::INFINITY, f64::INFINITY);
        for &partner in domain {
            nodes += 1;
            let cand = if task.left { (task.point, partner) } else { (partner, task.point) };
            // score: worst mismatch first, then total mismatch as a
            // tie-break so quantization ties pick the best profile match
            let mut worst = 0.0f64;
            let mut total = 0.0f64;
            for &q in placed.iter().take(reference_len) {
                let m1 = pair_mismatch(x, xp, cand, q);
                let m2 = pair_mismatch(x, xp, q, cand);
                worst = worst.max(m1).max(m2);
                total += m1 + m2;
            }
            if (worst, total) < best_score {
                best_score = (worst, total);
                best_partner = Some(cand);
            }
        }
        placed.push(best_partner.expect("domains are nonempty: anchors belong to them"));
    }

    let movable_from = anchors.len();
    // Pairwise local search as a lexicographic descent on (worst mismatch,
    // number of pair-pairs attaining it). Each round scans every movable
    // assignment involved in a worst pair-pair and takes the best single
    // reassignment; scoring is incremental (replacing pair i only changes
    // mismatches involving i, everything else is a precomputed ceiling).
    const MATCH_SLACK: f64 = 1e-12;
    let mismatch_both = |p: (usize, usize), q: (usize, usize)| -> f64 {
        pair_mismatch(x, xp, p, q).max(pair_mismatch(x, xp, q, p))
    };
    let mut current = distortion(x, xp, &placed)?;
    let mut current_count = usize::MAX;
    for _round in 0..2000 {
        if current < eps {
            break;
        }
        // movable assignments involved in a worst pair-pair
        let mut involved: Vec<usize> = Vec::new();
        for a in movable_from..placed.len() {
            let hits_max = placed.iter().any(|&q| mismatch_both(placed[a], q) >= current - MATCH_SLACK);
            if hits_max {
                involved.push(a);
            }
        }
        let mut best_move: Option<(usize, (usize, usize), f64, usize)> = None;
        for &idx in &involved {
            // ceiling and at-max count with pair idx removed
            let mut without = 0.0f64;
            for a in 0..placed.len() {
                if a == idx {
                    continue;
                }
                for b in a..placed.len() {
                    if b == idx {
                        continue;
                    }
                    without = without.max(mismatch_both(placed[a], placed[b]));
                }
            }
            let mut without_count = 0usize;
            for a in 0..placed.len() {
                if a == idx {
                    continue;
                }
                for b in a..placed.len() {
                    if b == idx {
                        continue;
                    }
                    if mismatch_both(placed[a], placed[b]) >= without - MATCH_SLACK {
                        without_count += 1;
                    }
                }
            }
            let task_left = tasks[idx - movable_from].left;
            let domain = if task_left { &domain_right } else { &domain_left };
            let original = placed[idx];
            for &partner in domain {
                nodes += 1;
                let cand = if task_left {
                    (original.0, partner)
                } else {
                    (partner, original.1)
                };
                if cand == original {
                    continue;
                }
                let mut own = 0.0f64;
                for (q, &other) in placed.iter().enumerate() {
                    if q == idx {
                        continue;
                    }
                    own = own.max(mismatch_both(cand, other));
                    if own > current {
                        break;
                    }
                }
                let score = without.max(own);
                if score > current + MATCH_SLACK {
                    continue;
                }
                // count pair-pairs at the new maximum
                let count = if own > without + MATCH_SLACK {
                    placed
                        .iter()
                        .enumerate()
                        .filter(|&(q, &other)| q != idx && mismatch_both(cand, other) >= score - MATCH_SLACK)
                        .count()
                } else {
                    let own_at = placed
                        .iter()
                        .enumerate()
                        .filter(|&(q, &other)| q != idx && mismatch_both(cand, other) >= score - MATCH_SLACK)
                        .count();
                    without_count + own_at
                };
                let better = (score, count) < (current - MATCH_SLACK, usize::MAX)
                    || (score <= current + MATCH_SLACK && count < current_count);
                if better
                    && best_move
                        .as_ref()
                        .map_or(true, |&(_, _, s, c)| (score, count) < (s, c))
                {
                    best_move = Some((idx, cand, score, count));
                }
            }
        }
        match best_move {
            Some((idx, cand, score, count)) => {
                placed[idx] = cand;
                current = distortion(x, xp, &placed)?;
                debug_assert!(current <= score + MATCH_SLACK);
                current_count = count;
            }
            None => break,
        }
    }

    let (best, near_miss) = if current < eps {
        (Some(QuasiCorrespondence::new(placed, m, eps)?), None)
    } else {
        (None, Some(current))
    };
    Ok(SearchOutcome { best, certified: false, nodes, budget_exhausted: false, near_miss })
}

/// Backtracking search for a sequenced isomorphism: a bijection φ preserving
/// distances within tolerance and mapping anchors to anchors. Returns the
/// lexicographically first φ as an image vector, or None.
pub fn isomorphism_search(xs: &SequencedSpace, xps: &SequencedSpace) -> Option<Vec<usize>> {
    let n = xs.space.len();
    if n != xps.space.len() || xs.seq_len() != xps.seq_len() {
        return None;
    }
    let tol = xs.space.tol().max(xps.space.tol());
    let mut image: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    for r in 0..xs.seq_len() {
        let (a, b) = (xs.seq()[r], xps.seq()[r]);
        match image[a] {
            Some(existing) if existing != b => return None,
            Some(_) => {}
            None => {
                if used[b] {
                    return None;
                }
                image[a] = Some(b);
                used[b] = true;
            }
        }
    }
    let consistent = |image: &[Option<usize>], x: usize, c: usize| -> bool {
        for (q, &iq) in image.iter().enumerate() {
            if let Some(qi) = iq {
                if (xs.space.d(x, q) - xps.space.d(c, qi)).abs() > tol
                    || (xs.space.d(q, x) - xps.space.d(qi, c)).abs() > tol
                {
                    return false;
                }
            }
        }
        true
    };
    // anchor images must already be mutually consistent
    for x in 0..n {
        if let Some(c) = image[x] {
            if !consistent(&image, x, c) {
                return None;
            }
        }
    }

    fn assign(
        x: usize,
        n: usize,
        image: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        consistent: &dyn Fn(&[Option<usize>], usize, usize) -> bool,
    ) -> bool {
        if x == n {
            return true;
        }
        if image[x].is_some() {
            return assign(x + 1, n, image, used, consistent);
        }
        for c in 0..n {
            if used[c] || !consistent(image, x, c) {
                continue;
            }
            image[x] = Some(c);
            used[c] = true;
            if assign(x + 1, n, image, used, consistent) {
                return true;
            }
            image[x] = None;
            used[c] = false;
        }
        false
    }

    if assign(0, n, &mut image, &mut used, &consistent) {
        Some(image.into_iter().map(|v| v.expect("complete assignment")).collect())
    } else {
        None
    }
}

/// Convergence schedule: target distortions δ_m with optional onset
/// thresholds N_m (indices into the probed family).
#[derive(Debug, Clone, PartialEq)]
pub struct GhSchedule {
    pub deltas: Vec<f64>,
    pub thresholds: Option<Vec<usize>>,
}

impl GhSchedule {
    /// δ_m = 2⁻ᵐ, thresholds adaptive.
    pub fn halving(m_max: usize) -> GhSchedule {
        GhSchedule {
            deltas: (1..=m_max).map(|m| 0.5f64.powi(m as i32)).collect(),
            thresholds: None,
        }
    }

    pub fn validate(&self) -> Result<(), GhError> {
        if self.deltas.is_empty() {
            return Err(GhError::BadSchedule("no deltas".into()));
        }
        for w in self.deltas.windows(2) {
            if w[1] > w[0] {
                return Err(GhError::BadSchedule("deltas must be nonincreasing".into()));
            }
        }
        if self.deltas.iter().any(|&d| !(d > 0.0 && d.is_finite())) {
            return Err(GhError::BadSchedule("deltas must be positive".into()));
        }
        if let Some(t) = &self.thresholds {
            if t.len() != self.deltas.len() {
                return Err(GhError::BadSchedule("thresholds must match deltas".into()));
            }
            if t.windows(2).any(|w| w[1] <= w[0]) {
                return Err(GhError::BadSchedule("thresholds must be strictly increasing".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyCell {
    /// Index into the probed family.
    pub probe_index: usize,
    pub m: usize,
    pub delta: f64,
    /// Not required by the schedule (probe index below N_m).
    pub skipped: bool,
    pub found: bool,
    pub distortion: Option<f64>,
    pub certified_infeasible: bool,
    pub budget_exhausted: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CertifyVerdict {
    /// Every order m has an onset probe index from which all probes pass.
    Consistent { onsets: Vec<(usize, usize)> },
    /// First systematic failure: a required cell certified infeasible, or a
    /// clean search miss after successes.
    Refuted { m: usize, probe_index: usize },
    /// A required cell could not be decided within budget.
    Inconclusive { m: usize, probe_index: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyOutcome {
    pub cells: Vec<CertifyCell>,
    pub verdict: CertifyVerdict,
}

fn certify_cell(
    member: &SequencedSpace,
    target: &SequencedSpace,
    probe_index: usize,
    m: usize,
    delta: f64,
    budget: u64,
) -> Result<CertifyCell, GhError> {
    let outcome = search_qc(member, target, m, delta, budget)?;
    let dis = outcome
        .best
        .as_ref()
        .map(|qc| distortion(&member.space, &target.space, qc.pairs()))
        .transpose()?;
    let found = outcome.best.is_some();
    Ok(CertifyCell {
        probe_index,
        m,
        delta,
        skipped: false,
        found,
        distortion: dis,
        certified_infeasible: !found && outcome.certified,
        budget_exhausted: outcome.budget_exhausted,
    })
}

fn assemble_verdict(
    cells: &[CertifyCell],
    family_len: usize,
    m_max: usize,
    thresholds: Option<&[usize]>,
) -> CertifyVerdict {
    let mut onsets = Vec::new();
    for m in 1..=m_max {
        let row: Vec<&CertifyCell> = cells.iter().filter(|c| c.m == m).collect();
        // with an explicit threshold every unskipped probe is required; with
        // adaptive onsets only probes after the first success are
        let required_explicitly = thresholds.is_some();
        let mut first_success: Option<usize> = None;
        let mut failure: Option<(usize, bool)> = None;
        for cell in &row {
            if cell.skipped {
                continue;
            }
            if cell.found {
                if first_success.is_none() {
                    first_success = Some(cell.probe_index);
                }
            } else {
                let required = required_explicitly || first_success.is_some();
                if required && failure.is_none() {
                    failure = Some((cell.probe_index, cell.certified_infeasible));
                }
            }
        }
        match (first_success, failure) {
            (Some(onset), None) => onsets.push((m, onset)),
            (_, Some((idx, decidable))) => {
                return if decidable {
                    CertifyVerdict::Refuted { m, probe_index: idx }
                } else {
                    CertifyVerdict::Inconclusive { m, probe_index: idx }
                };
            }
            (None, None) => {
                // nothing succeeded: refuted if some required probe was
                // decidably infeasible, else inconclusive
                let last = family_len.saturating_sub(1);
                let any_certified = row.iter().any(|c| !c.skipped && c.certified_infeasible);
                return if any_certified {
                    CertifyVerdict::Refuted { m, probe_index: last }
                } else {
                    CertifyVerdict::Inconclusive { m, probe_index: last }
                };
            }
        }
    }
    CertifyVerdict::Consistent { onsets }
}

/// Probes a family of sequenced spaces against a target: for each order
/// m ≤ m_max and each required probe index, searches for an (m, δ_m)
/// quasi-correspondence. With explicit thresholds, probes below N_m are
/// skipped; otherwise the onset is adaptive (first succeeding probe).
///
/// `threads` caps the number of worker threads used for the independent
/// (m, probe) searches; the outcome is identical for every thread count.
pub fn certify_gh_convergence(
    family: &[SequencedSpace],
    target: &SequencedSpace,
    schedule: &GhSchedule,
    m_max: usize,
    budget: u64,
    threads: usize,
) -> Result<CertifyOutcome, GhError> {
    schedule.validate()?;
    if m_max < 1 || m_max > schedule.deltas.len() {
        return Err(GhError::BadSchedule(format!(
            "m_max {m_max} outside schedule of length {}",
            schedule.deltas.len()
        )));
    }
    if family.is_empty() {
        return Err(GhError::BadSchedule("family has no members to probe".into()));
    }

    // enumerate the cell grid; skipped cells need no search
    enum Slot {
        Skipped { probe_index: usize, m: usize, delta: f64 },
        Work { probe_index: usize, m: usize, delta: f64 },
    }
    let mut slots = Vec::new();
    for m in 1..=m_max {
        let delta = schedule.deltas[m - 1];
        let threshold = schedule.thresholds.as_ref().map(|t| t[m - 1]);
        for idx in 0..family.len() {
            if threshold.is_some_and(|n_m| idx < n_m) {
                slots.push(Slot::Skipped { probe_index: idx, m, delta });
            } else {
                slots.push(Slot::Work { probe_index: idx, m, delta });
            }
        }
    }

    let workers = threads.max(1).min(slots.len().max(1));
    let mut cells: Vec<Option<CertifyCell>> = Vec::with_capacity(slots.len());
    cells.resize_with(slots.len(), || None);
    if workers <= 1 {
        for (slot, cell) in slots.iter().zip(cells.iter_mut()) {
            *cell = Some(match *slot {
                Slot::Skipped { probe_index, m, delta } => CertifyCell {
                    probe_index,
                    m,
                    delta,
                    skipped: true,
                    found: false,
                    distortion: None,
                    certified_infeasible: false,
                    budget_exhausted: false,
                },
                Slot::Work { probe_index, m, delta } => {
                    certify_cell(&family[probe_index], target, probe_index, m, delta, budget)?
                }
            });
        }
    } else {
        let results: Vec<std::sync::Mutex<Option<Result<CertifyCell, GhError>>>> =
            slots.iter().map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|scope| {
            for worker in 0..workers {
                let slots = &slots;
                let results = &results;
                scope.spawn(move || {
                    for (i, slot) in slots.iter().enumerate() {
                        if i % workers != worker {
                            continue;
                        }
                        let cell = match *slot {
                            Slot::Skipped { probe_index, m, delta } => Ok(CertifyCell {
                                probe_index,
                                m,
                                delta,
                                skipped: true,
                                found: false,
                                distortion: None,
                                certified_infeasible: false,
                                budget_exhausted: false,
                            }),
                            Slot::Work { probe_index, m, delta } => certify_cell(
                                &family[probe_index],
                                target,
                                probe_index,
                                m,
                                delta,
                                budget,
                            ),
                        };
                        *results[i].lock().expect("no poisoning") = Some(cell);
                    }
                });
            }
        });
        for (i, slot) in results.into_iter().enumerate() {
            cells[i] = Some(slot.into_inner().expect("no poisoning").expect("worker visited")?);
        }
    }
    let cells: Vec<CertifyCell> = cells.into_iter().map(|c| c.expect("all slots filled")).collect();
    let verdict = assemble_verdict(&cells, family.len(), m_max, schedule.thresholds.as_deref());
    Ok(CertifyOutcome { cells, verdict })
}
