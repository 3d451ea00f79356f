use std::fs;
use std::path::{Path, PathBuf};

use khoco_core::diagram::RawDiagram;
use khoco_core::LinkDiagram;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{path}: {source}")]
    Diagram { path: PathBuf, source: khoco_core::Error },
}

/// Braid-word input: `{"braid": "s1 s2^-1", "strands": 3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BraidDocument {
    pub braid: String,
    pub strands: usize,
    #[serde(default)]
    pub basepoint: Option<u32>,
    #[serde(default)]
    pub name: Option<String>,
    #[serde(default)]
    pub provenance: Option<String>,
}

#[derive(Debug, thiserror::Error)]
pub enum ParseError {
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Diagram(#[from] khoco_core::Error),
}

/// Reads a diagram document or a braid document.
pub fn parse_diagram(text: &str) -> Result<LinkDiagram, ParseError> {
    let v: serde_json::Value = serde_json::from_str(text)?;
    if v.get("braid").is_some() {
        let b: BraidDocument = serde_json::from_value(v)?;
        let mut d = LinkDiagram::from_braid(&b.braid, b.strands)?;
        if let Some(p) = b.basepoint {
            d = d.with_basepoint(p)?;
        }
        if let Some(n) = &b.name {
            d = d.with_name(n);
        }
        return Ok(d);
    }
    let raw: RawDiagram = serde_json::from_value(v)?;
    Ok(LinkDiagram::from_raw(&raw)?)
}

pub fn load_diagram(path: &Path) -> Result<LinkDiagram, IoError> {
    let text = fs::read_to_string(path).map_err(|source| IoError::Read { path: path.into(), source })?;
    parse_diagram(&text).map_err(|e| match e {
        ParseError::Json(source) => IoError::Json { path: path.into(), source },
        ParseError::Diagram(source) => IoError::Diagram { path: path.into(), source },
    })
}

pub fn to_json(raw: &RawDiagram) -> String {
    let mut s = serde_json::to_string_pretty(raw).expect("diagram serializes");
    s.push('\n');
    s
}

pub fn save_diagram(path: &Path, raw: &RawDiagram) -> Result<(), IoError> {
    fs::write(path, to_json(raw)).map_err(|source| IoError::Read { path: path.into(), source })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn braid_document() {
        let d = parse_diagram(r#"{"braid": "s1 s2^-1 s1^-1 s2", "strands": 3, "basepoint": 0}"#).unwrap();
        assert_eq!((d.n_plus(), d.n_minus()), (2, 2));
        assert_eq!(d.basepoint, Some(0));
        assert!(parse_diagram(r#"{"braid": "s3", "strands": 3}"#).is_err());
    }

    #[test]
    fn raw_round_trip() {
        let d = khoco_core::builders::pointed_trefoil();
        let back = parse_diagram(&to_json(&d.to_raw())).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn malformed_arc() {
        let doc = r#"{"crossings": [
            {"under_in": 7, "over_in": 1, "under_out": 7, "over_out": 7, "sign": 1}
        ]}"#;
        assert!(matches!(parse_diagram(doc), Err(ParseError::Diagram(_))));
    }
}
