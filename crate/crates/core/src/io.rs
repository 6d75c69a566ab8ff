//! JSON space files.
//!
//! Format: `{"labels": [..], "d": [[..]..], "tol": optional, "seq": optional,
//! "total": optional}` with the matrix row-major, `d[i][j] = d(labels[i],
//! labels[j])`. Loading validates the space invariants and reports the
//! offending entry; syntactic errors carry the parser's line/column.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::seq::{SeqError, SequencedSpace};
use crate::space::{FiniteLorentzSpace, SpaceError, DEFAULT_TOL};

#[derive(Debug, Error)]
pub enum IoError {
    #[error("JSON syntax error: {0}")]
    Syntax(#[from] serde_json::Error),
    #[error("invalid space data: {0}")]
    Invalid(#[from] SpaceError),
    #[error("invalid sequence: {0}")]
    BadSeq(#[from] SeqError),
    #[error("io error: {0}")]
    File(#[from] std::io::Error),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpaceFile {
    pub labels: Vec<String>,
    pub d: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seq: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total: Option<bool>,
}

impl SpaceFile {
    pub fn into_space(self) -> Result<FiniteLorentzSpace, IoError> {
        Ok(FiniteLorentzSpace::new(self.labels, self.d, self.tol.unwrap_or(DEFAULT_TOL))?)
    }

    /// The space plus its sequence when one is present in the file.
    pub fn into_parts(self) -> Result<(FiniteLorentzSpace, Option<SequencedSpace>), IoError> {
        let seq = self.seq.clone();
        let total = self.total.unwrap_or(false);
        let space = self.into_space()?;
        match seq {
            None => Ok((space, None)),
            Some(seq) => {
                let sequenced = if total {
                    SequencedSpace::total(space.clone(), seq)?
                } else {
                    SequencedSpace::new(space.clone(), seq)?
                };
                Ok((space, Some(sequenced)))
            }
        }
    }

    pub fn from_space(space: &FiniteLorentzSpace) -> SpaceFile {
        SpaceFile {
            labels: space.labels().to_vec(),
            d: space.matrix_rows(),
            tol: Some(space.tol()),
            seq: None,
            total: None,
        }
    }

    pub fn from_sequenced(seq_space: &SequencedSpace) -> SpaceFile {
        let mut file = SpaceFile::from_space(&seq_space.space);
        file.seq = Some(seq_space.seq().to_vec());
        if seq_space.is_total() {
            file.total = Some(true);
        }
        file
    }
}

pub fn parse_space_file(text: &str) -> Result<SpaceFile, IoError> {
    Ok(serde_json::from_str(text)?)
}

pub fn load_space_file(path: &std::path::Path) -> Result<SpaceFile, IoError> {
    parse_space_file(&std::fs::read_to_string(path)?)
}

pub fn save_space_file(path: &std::path::Path, file: &SpaceFile) -> Result<(), IoError> {
    std::fs::write(path, serde_json::to_string_pretty(file).map_err(IoError::Syntax)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_through_json() {
        let text = r#"{"labels":["a","b"],"d":[[0,1],[0,0]],"seq":[0,1]}"#;
        let file = parse_space_file(text).unwrap();
        let (space, seq) = file.into_parts().unwrap();
        assert_eq!(space.d(0, 1), 1.0);
        assert_eq!(space.tol(), DEFAULT_TOL);
        let seq = seq.unwrap();
        assert_eq!(seq.seq(), &[0, 1]);
        let out = serde_json::to_string(&SpaceFile::from_sequenced(&seq)).unwrap();
        let reread = parse_space_file(&out).unwrap().into_parts().unwrap();
        assert_eq!(reread.0.matrix_rows(), space.matrix_rows());
    }

    #[test]
    fn rejects_non_square_matrix_with_position() {
        let text = r#"{"labels":["a","b"],"d":[[0,1],[0]]}"#;
        let err = parse_space_file(text).unwrap().into_space().unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("row 1"), "{msg}");
    }

    #[test]
    fn rejects_negative_entry_and_bad_diagonal() {
        let neg = r#"{"labels":["a","b"],"d":[[0,-2],[0,0]]}"#;
        assert!(parse_space_file(neg).unwrap().into_space().is_err());
        let diag = r#"{"labels":["a","b"],"d":[[0.5,1],[0,0]]}"#;
        assert!(parse_space_file(diag).unwrap().into_space().is_err());
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_space_file("{\"labels\": [").unwrap_err();
        let msg = format!("{err}");
        assert!(msg.contains("line"), "{msg}");
    }
}
