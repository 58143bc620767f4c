//! The JSON problem format: a complex by its facets, optional multiplicities and a field.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{AlphaVector, Face, SimplicialComplex};
use crate::field::FieldSpec;

/// One `α_i(j)` entry; `facet` is 1-based as in hand-written input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphaRecord {
    pub facet: usize,
    pub vertex: usize,
    pub value: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub n: usize,
    pub facets: Vec<Vec<usize>>,
    /// Entries not listed default to 1.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<Vec<AlphaRecord>>,
    #[serde(rename = "char", default, skip_serializing_if = "Option::is_none")]
    pub characteristic: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{field}: {message}")]
    Invalid { field: String, message: String },
}

/// A validated problem.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Problem {
    pub complex: SimplicialComplex,
    /// `None` when the file has no `alpha` key.
    pub alpha: Option<AlphaVector>,
    pub field: FieldSpec,
}

impl Problem {
    /// The given multiplicities, or all ones.
    pub fn alpha_or_ones(&self) -> AlphaVector {
        self.alpha.clone().unwrap_or_else(|| AlphaVector::ones(&self.complex))
    }
}

fn invalid(field: impl Into<String>, message: impl ToString) -> ParseError {
    ParseError::Invalid { field: field.into(), message: message.to_string() }
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        serde_json::from_str(text).map_err(|e| ParseError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds the complex, multiplicities and field. Facets must be listed without
    /// repetition or containment so that the 1-based indices in `alpha` are unambiguous.
    pub fn validate(&self) -> Result<Problem, ParseError> {
        let complex = SimplicialComplex::from_facets(self.n, self.facets.iter().cloned())
            .map_err(|e| invalid("facets", e))?;
        if complex.num_facets() != self.facets.len() {
            let faces: Vec<Face> =
                self.facets.iter().map(|f| Face::from_vertices(f.iter().copied())).collect();
            let k = (0..faces.len())
                .find(|&k| (0..faces.len()).any(|j| j != k && faces[k].is_subset(faces[j])))
                .unwrap_or(0);
            return Err(invalid(
                format!("facets[{k}]"),
                format!("{} is repeated or contained in another facet", faces[k]),
            ));
        }
        let field = FieldSpec::new(self.characteristic.unwrap_or(0)).map_err(|e| invalid("char", e))?;
        let alpha = match &self.alpha {
            None => None,
            Some(records) => Some(Self::build_alpha(&complex, records)?),
        };
        Ok(Problem { complex, alpha, field })
    }

    fn build_alpha(
        complex: &SimplicialComplex,
        records: &[AlphaRecord],
    ) -> Result<AlphaVector, ParseError> {
        let mut overrides = Vec::with_capacity(records.len());
        for (t, r) in records.iter().enumerate() {
            let here = format!("alpha[{t}] (facet {}, vertex {})", r.facet, r.vertex);
            if r.facet == 0 || r.facet > complex.num_facets() {
                return Err(invalid(here, "no such facet"));
            }
            if r.vertex == 0 || r.vertex > complex.n() {
                return Err(invalid(here, "no such vertex"));
            }
            if complex.facets()[r.facet - 1].contains(r.vertex) {
                return Err(invalid(here, "vertex lies in the facet"));
            }
            if r.value == 0 {
                return Err(invalid(here, "value must be positive"));
            }
            if records[..t].iter().any(|s| (s.facet, s.vertex) == (r.facet, r.vertex)) {
                return Err(invalid(here, "pair given twice"));
            }
            overrides.push(((r.facet - 1, r.vertex), r.value));
        }
        AlphaVector::with_overrides(complex, overrides).map_err(|e| invalid("alpha", e))
    }

    /// Records for the entries of `alpha` that differ from 1.
    pub fn alpha_records(alpha: &AlphaVector) -> Vec<AlphaRecord> {
        alpha
            .entries()
            .filter(|&(_, v)| v != 1)
            .map(|((j, i), value)| AlphaRecord { facet: j + 1, vertex: i, value })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = r#"{"n": 4, "facets": [[1,2],[1,3],[2,4],[3,4]],
            "alpha": [{"facet": 4, "vertex": 2, "value": 2}], "char": 2}"#;
        let file = ProblemFile::from_json(text).unwrap();
        let p = file.validate().unwrap();
        assert_eq!(p.field.characteristic(), 2);
        assert_eq!(p.alpha.as_ref().unwrap().get(3, 2), Some(2));
        let again = ProblemFile::from_json(&file.to_json()).unwrap();
        assert_eq!(again, file);
    }

    #[test]
    fn vertex_inside_facet_is_named() {
        let text = r#"{"n": 3, "facets": [[1,2],[2,3]], "alpha": [{"facet": 1, "vertex": 2, "value": 2}]}"#;
        let err = ProblemFile::from_json(text).unwrap().validate().unwrap_err();
        assert_eq!(err.to_string(), "alpha[0] (facet 1, vertex 2): vertex lies in the facet");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = ProblemFile::from_json("{\n  \"n\": 3,\n  \"facets\": [1,2]]\n}").unwrap_err();
        assert!(matches!(err, ParseError::Syntax { line: 3, .. }), "{err}");
        let err = ProblemFile::from_json(r#"{"n": 3, "facets": [[1]], "extra": 1}"#).unwrap_err();
        assert!(err.to_string().contains("extra"));
    }

    #[test]
    fn nested_facets_are_rejected() {
        let file = ProblemFile::from_json(r#"{"n": 3, "facets": [[1,2,3],[1,2]]}"#).unwrap();
        let err = file.validate().unwrap_err();
        assert!(err.to_string().starts_with("facets[1]"), "{err}");
        let bad_char = ProblemFile::from_json(r#"{"n": 1, "facets": [[1]], "char": 4}"#).unwrap();
        assert!(bad_char.validate().unwrap_err().to_string().starts_with("char"));
    }
}
