//! JSON semigraph documents.
//!
//! ```json
//! {
//!   "rank": 1,
//!   "elements": [{"id": "v", "degree": [0]}, {"id": "t", "degree": [1]}],
//!   "products": [["v", "v", "v"], ["v", "t", "t"], ["t", "v", "t"]]
//! }
//! ```
//!
//! Pairs not listed in `products` are undefined products.

use std::fs;
use std::path::Path;

use serde::Serialize;
use thiserror::Error;

use crate::semigraph::{RawSemigraph, Semigraph, ValidationReport};

/// The on-disk form of a semigraph.
pub type SemigraphDocument = RawSemigraph;

#[derive(Debug, Error)]
pub enum IoError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] ValidationReport),
    #[error("{path}: {source}")]
    File { path: String, source: std::io::Error },
}

/// Machine-readable error list.
#[derive(Debug, Serialize)]
#[serde(tag = "error", rename_all = "snake_case")]
pub enum ErrorDocument<'a> {
    Syntax { line: usize, column: usize, message: &'a str },
    Invalid { violations: &'a ValidationReport },
    File { path: &'a str, message: String },
}

impl IoError {
    pub fn document(&self) -> ErrorDocument<'_> {
        match self {
            IoError::Syntax { line, column, message } => ErrorDocument::Syntax { line: *line, column: *column, message },
            IoError::Invalid(report) => ErrorDocument::Invalid { violations: report },
            IoError::File { path, source } => ErrorDocument::File { path, message: source.to_string() },
        }
    }
}

pub fn parse_document(text: &str) -> Result<SemigraphDocument, IoError> {
    serde_json::from_str(text).map_err(|e| IoError::Syntax { line: e.line(), column: e.column(), message: e.to_string() })
}

/// Parses and validates.
pub fn parse(text: &str) -> Result<Semigraph, IoError> {
    Ok(Semigraph::validate(&parse_document(text)?)?)
}

pub fn serialize(sg: &Semigraph) -> String {
    serde_json::to_string_pretty(&sg.to_raw()).expect("documents always serialise")
}

pub fn read_file(path: impl AsRef<Path>) -> Result<Semigraph, IoError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| IoError::File { path: path.display().to_string(), source })?;
    parse(&text)
}

pub fn write_file(path: impl AsRef<Path>, sg: &Semigraph) -> Result<(), IoError> {
    let path = path.as_ref();
    fs::write(path, serialize(sg) + "\n").map_err(|source| IoError::File { path: path.display().to_string(), source })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders::fixtures::*;
    use crate::semigraph::Violation;

    const F5: &str = r#"{
        "rank": 1,
        "elements": [{"id": "v", "degree": [0]}, {"id": "w", "degree": [0]}, {"id": "a", "degree": [1]}],
        "products": [["v","a","a"], ["a","w","a"], ["v","v","v"], ["w","w","w"]]
    }"#;

    #[test]
    fn path_document() {
        let sg = parse(F5).unwrap();
        assert_eq!(sg.len(), 3);
        assert_eq!(sg.to_raw(), f5().to_raw());
    }

    #[test]
    fn missing_idempotent_product() {
        let text = F5.replace(r#", ["w","w","w"]"#, "");
        let Err(IoError::Invalid(report)) = parse(&text) else { panic!("expected a validation error") };
        assert!(report.violations.contains(&Violation::NonIdempotentVertex { element: "w".into() }));
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::Associativity { triple, .. } if triple == &["a", "w", "w"])));
        let json = serde_json::to_string(&IoError::Invalid(report).document()).unwrap();
        assert!(json.contains("non_idempotent_vertex"));
    }

    #[test]
    fn schema_and_syntax_errors() {
        let text = F5.replace(r#""degree": [1]"#, r#""degree": [1, 0]"#);
        let Err(IoError::Invalid(report)) = parse(&text) else { panic!("expected a validation error") };
        assert!(matches!(report.violations[0], Violation::DegreeLength { .. }));
        let Err(IoError::Syntax { line, .. }) = parse("{\n  \"rank\": 1,\n  oops }") else { panic!() };
        assert_eq!(line, 3);
    }

    #[test]
    fn round_trip() {
        for (_, sg) in all() {
            let back = parse(&serialize(&sg)).unwrap();
            assert_eq!(back.to_raw(), sg.to_raw());
            assert_eq!(back.fingerprint(), sg.fingerprint());
        }
    }
}
