//! Reading and writing complexes.
//!
//! Two interchangeable encodings are supported:
//!
//! * JSON: `{"facets": [[1,2,3],[2,3,4]]}` with 1-based integer labels.
//! * Plain text: one facet per line, vertices separated by whitespace. Blank
//!   lines and lines starting with `#` are ignored. When any token is not a
//!   positive integer, all tokens are treated as opaque labels and mapped to
//!   `1..=n` in sorted label order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex, Vertex};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FacetDocument {
    facets: Vec<Vec<Vertex>>,
}

/// A parsed complex plus the original vertex names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledComplex {
    pub complex: SimplicialComplex,
    /// `labels[v - 1]` is the input name of vertex `v`. Absent when the
    /// input already used integer labels.
    pub labels: Option<Vec<String>>,
}

impl LabeledComplex {
    pub fn label(&self, v: Vertex) -> String {
        match &self.labels {
            Some(names) => names[v - 1].clone(),
            None => v.to_string(),
        }
    }
}

pub fn parse_json(input: &str) -> Result<SimplicialComplex, FormatError> {
    let doc: FacetDocument = serde_json::from_str(input)?;
    Ok(SimplicialComplex::new(doc.facets)?)
}

pub fn parse_text(input: &str) -> Result<LabeledComplex, FormatError> {
    let mut rows: Vec<(usize, Vec<&str>)> = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        rows.push((i + 1, trimmed.split_whitespace().collect()));
    }
    let numeric = rows
        .iter()
        .flat_map(|(_, toks)| toks.iter())
        .all(|t| t.parse::<Vertex>().is_ok_and(|v| v > 0));

    let (facets, labels) = if numeric {
        let facets = rows
            .iter()
            .map(|(_, toks)| toks.iter().map(|t| t.parse().unwrap()).collect())
            .collect::<Vec<Vec<Vertex>>>();
        (facets, None)
    } else {
        let mut names: Vec<String> = rows
            .iter()
            .flat_map(|(_, toks)| toks.iter().map(|t| t.to_string()))
            .collect();
        names.sort();
        names.dedup();
        let facets = rows
            .iter()
            .map(|(_, toks)| {
                toks.iter()
                    .map(|t| names.binary_search_by(|n| n.as_str().cmp(t)).unwrap() + 1)
                    .collect()
            })
            .collect::<Vec<Vec<Vertex>>>();
        (facets, Some(names))
    };

    if let Some((line, _)) = rows.iter().find(|(_, toks)| {
        let mut t = toks.clone();
        t.sort_unstable();
        t.windows(2).any(|w| w[0] == w[1])
    }) {
        return Err(FormatError::Line {
            line: *line,
            message: "repeated vertex within a facet".into(),
        });
    }
    if let Some(labels) = &labels {
        if labels.len() > crate::complex::MAX_VERTICES {
            return Err(FormatError::Line {
                line: rows.last().map_or(1, |r| r.0),
                message: format!(
                    "{} distinct labels exceed the supported maximum of {}",
                    labels.len(),
                    crate::complex::MAX_VERTICES
                ),
            });
        }
    }
    let complex = SimplicialComplex::new(facets)?;
    Ok(LabeledComplex { complex, labels })
}

/// Detects the encoding from the first non-blank character.
pub fn parse_auto(input: &str) -> Result<LabeledComplex, FormatError> {
    if input.trim_start().starts_with('{') {
        Ok(LabeledComplex {
            complex: parse_json(input)?,
            labels: None,
        })
    } else {
        parse_text(input)
    }
}

/// Canonical JSON: facets in canonical order, compact, trailing newline.
pub fn to_json(complex: &SimplicialComplex) -> String {
    let doc = FacetDocument {
        facets: complex.facet_lists(),
    };
    let mut s = serde_json::to_string(&doc).expect("facet lists serialize");
    s.push('\n');
    s
}

pub fn to_text(complex: &SimplicialComplex) -> String {
    to_text_labeled(&LabeledComplex {
        complex: complex.clone(),
        labels: None,
    })
}

pub fn to_text_labeled(input: &LabeledComplex) -> String {
    let mut out = String::new();
    for facet in input.complex.facets() {
        let row: Vec<String> = facet.vertices().iter().map(|&v| input.label(v)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
