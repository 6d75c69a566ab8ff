//! Sequenced spaces: a space plus an ordered anchor list, and the truncations
//! X^m built from sequence prefixes.
//!
//! The anchor list is finite, so formulas with infinite tails are summed in
//! closed form with X^m held constant for m ≥ the list length. A finite space
//! always has chronological boundary points, hence never admits a strictly
//! generating set; the operative coverage notion here is the reflexive
//! chronological hull: the sequence covers the space when every point either
//! is an anchor or lies strictly between two anchors. Spaces where even that
//! fails (e.g. sampled diamonds with null rim points) can be flagged `total`,
//! which pins X^m to the whole space at every level.

use thiserror::Error;

use crate::space::FiniteLorentzSpace;

#[derive(Debug, Error, PartialEq)]
pub enum SeqError {
    #[error("generating sequence must be nonempty")]
    EmptySequence,
    #[error("sequence entry {index} out of range for space of {size} points")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("truncation order {m} out of range 1..={len}")]
    OrderOutOfRange { m: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SequencedSpace {
    pub space: FiniteLorentzSpace,
    seq: Vec<usize>,
    total: bool,
}

impl SequencedSpace {
    pub fn new(space: FiniteLorentzSpace, seq: Vec<usize>) -> Result<Self, SeqError> {
        Self::build(space, seq, false)
    }

    /// Sequenced space with the `total` convention: X^m is the whole space at
    /// every level, regardless of what the anchor prefix hulls.
    pub fn total(space: FiniteLorentzSpace, seq: Vec<usize>) -> Result<Self, SeqError> {
        Self::build(space, seq, true)
    }

    fn build(space: FiniteLorentzSpace, seq: Vec<usize>, total: bool) -> Result<Self, SeqError> {
        if seq.is_empty() {
            return Err(SeqError::EmptySequence);
        }
        for &i in &seq {
            if i >= space.len() {
                return Err(SeqError::IndexOutOfRange { index: i, size: space.len() });
            }
        }
        Ok(SequencedSpace { space, seq, total })
    }

    pub fn seq(&self) -> &[usize] {
        &self.seq
    }

    pub fn seq_len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_total(&self) -> bool {
        self.total
    }

    /// Points outside the reflexive chronological hull of the full sequence.
    pub fn uncovered(&self) -> Vec<usize> {
        if self.total {
            return Vec::new();
        }
        let xm = self.xm_points(self.seq.len());
        (0..self.space.len()).filter(|x| !xm.contains(x)).collect()
    }

    pub fn covers_space(&self) -> bool {
        self.uncovered().is_empty()
    }

    /// X^m as a sorted point list: anchors p¹..p^m together with every point
    /// strictly between two of them. Closure is the identity on finite sets.
    pub fn xm_points(&self, m: usize) -> Vec<usize> {
        debug_assert!(m >= 1 && m <= self.seq.len());
        if self.total {
            return (0..self.space.len()).collect();
        }
        let anchors = &self.seq[..m];
        let mut out = Vec::new();
        for x in 0..self.space.len() {
            let up = anchors.iter().any(|&p| p == x || self.space.chron(p, x));
            let down = anchors.iter().any(|&q| q == x || self.space.chron(x, q));
            if up && down {
                out.push(x);
            }
        }
        out
    }

    /// The ε-core I_ε(p¹..p^m): points with d(pⁱ,x) ≥ ε and d(x,pʲ) ≥ ε for
    /// some anchors i,j ≤ m. Always a subset of X^m.
    pub fn cover_eps(&self, m: usize, eps: f64) -> Vec<usize> {
        debug_assert!(m >= 1 && m <= self.seq.len());
        let anchors = &self.seq[..m];
        let mut out = Vec::new();
        for x in 0..self.space.len() {
            let up = anchors.iter().any(|&p| self.space.d(p, x) >= eps);
            let down = anchors.iter().any(|&q| self.space.d(x, q) >= eps);
            if up && down {
                out.push(x);
            }
        }
        out
    }

    /// Re-sequence along a strictly increasing selection of anchor positions
    /// (0-based). Used by quasi-correspondence restriction.
    pub fn subsequence(&self, selection: &[usize]) -> Result<SequencedSpace, SeqError> {
        let seq = selection
            .iter()
            .map(|&r| {
                self.seq
                    .get(r)
                    .copied()
                    .ok_or(SeqError::IndexOutOfRange { index: r, size: self.seq.len() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        SequencedSpace::build(self.space.clone(), seq, self.total)
    }
}

/// The truncation of a sequenced space at order m.
#[derive(Debug, Clone, PartialEq)]
pub struct Truncation {
    pub m: usize,
    /// X^m as a sorted point list.
    pub xm: Vec<usize>,
    eps_cover: EpsCover,
}

#[derive(Debug, Clone, PartialEq)]
struct EpsCover {
    space: FiniteLorentzSpace,
    anchors: Vec<usize>,
}

impl Truncation {
    /// I_ε(p¹..p^m) for the truncation's anchor prefix.
    pub fn cover_eps(&self, eps: f64) -> Vec<usize> {
        let s = &self.eps_cover.space;
        let anchors = &self.eps_cover.anchors;
        (0..s.len())
            .filter(|&x| {
                anchors.iter().any(|&p| s.d(p, x) >= eps)
                    && anchors.iter().any(|&q| s.d(x, q) >= eps)
            })
            .collect()
    }
}

/// Truncates a sequenced space at order m (1-based, m ≤ sequence length).
pub fn truncation(seq_space: &SequencedSpace, m: usize) -> Result<Truncation, SeqError> {
    if m < 1 || m > seq_space.seq_len() {
        return Err(SeqError::OrderOutOfRange { m, len: seq_space.seq_len() });
    }
    Ok(Truncation {
        m,
        xm: seq_space.xm_points(m),
        eps_cover: EpsCover {
            space: seq_space.space.clone(),
            anchors: seq_space.seq()[..m].to_vec(),
        },
    })
}
