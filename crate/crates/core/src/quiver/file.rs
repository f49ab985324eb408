//! JSON quiver description files.
//!
//! ```json
//! {
//!   "vertices": 2,
//!   "ordinary": [],
//!   "pairs": [[1, 2]],
//!   "arrows": [{"id": "b", "from": 1, "to": 2}, {"id": "c", "from": 2, "to": 1}],
//!   "dims": [{"size": 2, "starred": false}, {"size": 2, "starred": true}],
//!   "supermixed": {
//!     "factors": [{"vertex": 1, "group": "Sp"}],
//!     "shapes": [{"arrow": "b", "shape": "skew"}]
//!   }
//! }
//! ```
//!
//! Unknown keys are rejected at every level. `supermixed` is optional;
//! `starred` defaults to `false`.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Arrow, DimEntry, MixedRep, QuiverError};
use crate::supermixed::{ComponentShape, GroupKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawArrow {
    pub id: String,
    pub from: usize,
    pub to: usize,
}

/// Group replacement for the factor acting at `vertex`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawFactor {
    pub vertex: usize,
    pub group: GroupKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawShape {
    pub arrow: String,
    pub shape: ComponentShape,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSupermixed {
    #[serde(default)]
    pub factors: Vec<RawFactor>,
    #[serde(default)]
    pub shapes: Vec<RawShape>,
}

/// Quiver description exactly as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawQuiver {
    pub vertices: usize,
    #[serde(default)]
    pub ordinary: Vec<usize>,
    #[serde(default)]
    pub pairs: Vec<Vec<usize>>,
    #[serde(default)]
    pub arrows: Vec<RawArrow>,
    pub dims: Vec<DimEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub supermixed: Option<RawSupermixed>,
}

/// A parsed and validated description file.
#[derive(Clone, Debug)]
pub struct SpecFile {
    pub rep: MixedRep,
    pub supermixed: Option<RawSupermixed>,
}

impl RawQuiver {
    pub fn validate(&self) -> Result<MixedRep, QuiverError> {
        MixedRep::new(
            self.vertices,
            self.ordinary.clone(),
            self.pairs.clone(),
            self.arrows.iter().map(|a| Arrow { id: a.id.clone(), from: a.from, to: a.to }).collect(),
            self.dims.clone(),
        )
    }

    pub fn from_rep(rep: &MixedRep) -> Self {
        let q = rep.quiver();
        RawQuiver {
            vertices: q.vertex_count(),
            ordinary: q.ordinary().to_vec(),
            pairs: q.pairs().iter().map(|&(i, j)| vec![i, j]).collect(),
            arrows: q.arrows().iter().map(|a| RawArrow { id: a.id.clone(), from: a.from, to: a.to }).collect(),
            dims: rep.dims().entries().to_vec(),
            supermixed: None,
        }
    }
}

pub fn parse_spec_str(text: &str) -> Result<SpecFile, QuiverError> {
    let raw: RawQuiver = serde_json::from_str(text).map_err(|e| QuiverError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    Ok(SpecFile { rep: raw.validate()?, supermixed: raw.supermixed })
}

pub fn parse_spec(path: &Path) -> Result<SpecFile, QuiverError> {
    let text = std::fs::read_to_string(path).map_err(|e| QuiverError::Parse {
        line: 0,
        column: 0,
        message: format!("{}: {e}", path.display()),
    })?;
    parse_spec_str(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE1: &str = r#"{
  "vertices": 2,
  "ordinary": [],
  "pairs": [[1, 2]],
  "arrows": [
    {"id": "a1", "from": 1, "to": 1},
    {"id": "b", "from": 1, "to": 2},
    {"id": "c", "from": 2, "to": 1}
  ],
  "dims": [{"size": 2, "starred": false}, {"size": 2, "starred": true}]
}"#;

    #[test]
    fn example_one_parses() {
        let s = parse_spec_str(EXAMPLE1).unwrap();
        assert_eq!(s.rep.quiver().pairs().len(), 1);
        assert_eq!(s.rep.arrows().len(), 3);
        assert!(s.supermixed.is_none());
        let round = serde_json::to_string(&RawQuiver::from_rep(&s.rep)).unwrap();
        assert_eq!(parse_spec_str(&round).unwrap().rep, s.rep);
    }

    #[test]
    fn unknown_key_is_a_parse_error() {
        let text = EXAMPLE1.replacen("\"ordinary\"", "\"colour\": 1,\n  \"ordinary\"", 1);
        match parse_spec_str(&text) {
            Err(QuiverError::Parse { line, .. }) => assert!(line >= 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_file_is_a_parse_error() {
        assert!(matches!(parse_spec_str(""), Err(QuiverError::Parse { .. })));
    }

    #[test]
    fn malformed_pair_is_a_partition_violation() {
        let text = EXAMPLE1.replace("[[1, 2]]", "[[1], [2]]");
        assert!(matches!(parse_spec_str(&text), Err(QuiverError::PartitionViolation(_))));
    }

    #[test]
    fn supermixed_block() {
        let text = EXAMPLE1.replacen(
            "\"dims\"",
            "\"supermixed\": {\"factors\": [{\"vertex\": 2, \"group\": \"Sp\"}]},\n  \"dims\"",
            1,
        );
        let s = parse_spec_str(&text).unwrap();
        assert_eq!(s.supermixed.unwrap().factors[0].group, GroupKind::Sp);
    }
}
