//! The on-disk model format: a single JSON document with a `kind`
//! discriminator (`"contraction"`, `"chain"`, `"wps"`) and a versioned
//! `schema` field (`"kstab/1"`). Rationals are exact strings (`"p/q"`),
//! never floats. Ingestion errors carry the line and column of the offending
//! token.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::catalog::Payload;
use crate::chain::{BlowupChain, ChainError};
use crate::contraction::{ContractionError, ContractionModel};
use crate::picard::{DivisorClass, PicardError, PicardLattice};
use crate::wps::{InvariantDivisor, WeightedPlane, WpsBoundary, WpsError, WpsPair};

pub const SCHEMA: &str = "kstab/1";

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("model file is not valid JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("unsupported schema {found:?} (this build reads {SCHEMA:?})")]
    UnsupportedSchema { found: String },
    #[error(transparent)]
    Contraction(#[from] ContractionError),
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    Wps(#[from] WpsError),
    #[error(transparent)]
    Picard(#[from] PicardError),
}

/// The serialized form of a model document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelDoc {
    pub schema: String,
    #[serde(flatten)]
    pub body: ModelBody,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelBody {
    Contraction {
        name: String,
        n: usize,
        roots: Vec<DivisorClass>,
    },
    Chain(BlowupChain),
    Wps {
        name: String,
        weights: [u64; 3],
        boundary: Vec<WpsBoundary>,
        divisors: Vec<InvariantDivisor>,
    },
}

/// Parses and validates a model document from JSON text.
pub fn parse(text: &str) -> Result<Payload, ModelError> {
    let doc: ModelDoc = serde_json::from_str(text).map_err(|e| ModelError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if doc.schema != SCHEMA {
        return Err(ModelError::UnsupportedSchema { found: doc.schema });
    }
    realize(doc.body)
}

/// Validates a deserialized body into an engine payload.
pub fn realize(body: ModelBody) -> Result<Payload, ModelError> {
    match body {
        ModelBody::Contraction { name, n, roots } => {
            let lattice = PicardLattice::new(n)?;
            Ok(Payload::Contraction(ContractionModel::new(
                name, lattice, roots,
            )?))
        }
        ModelBody::Chain(chain) => {
            chain.validate()?;
            Ok(Payload::Chain(chain))
        }
        ModelBody::Wps {
            name,
            weights,
            boundary,
            divisors,
        } => {
            let plane = WeightedPlane::new(weights[0], weights[1], weights[2])?;
            let checked: Vec<InvariantDivisor> = divisors
                .into_iter()
                .map(|d| InvariantDivisor::new(d.name, d.degree, d.horizontal))
                .collect::<Result<_, WpsError>>()?;
            Ok(Payload::Wps {
                pair: WpsPair {
                    name,
                    plane,
                    boundary,
                },
                divisors: checked,
            })
        }
    }
}

/// Export: the inverse of [`parse`], used to copy catalog entries into
/// files users can modify.
pub fn to_doc(payload: &Payload) -> ModelDoc {
    let body = match payload {
        Payload::Contraction(m) => ModelBody::Contraction {
            name: m.name().to_string(),
            n: m.lattice().n(),
            roots: m.roots().to_vec(),
        },
        Payload::Chain(chain) => ModelBody::Chain(chain.clone()),
        Payload::Wps { pair, divisors } => ModelBody::Wps {
            name: pair.name.clone(),
            weights: [
                pair.plane.weights.0,
                pair.plane.weights.1,
                pair.plane.weights.2,
            ],
            boundary: pair.boundary.clone(),
            divisors: divisors.clone(),
        },
    };
    ModelDoc {
        schema: SCHEMA.to_string(),
        body,
    }
}

pub fn to_json_pretty(payload: &Payload) -> String {
    let mut text = serde_json::to_string_pretty(&to_doc(payload)).expect("model serializes");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_minimal_contraction() {
        let text = r#"{
            "schema": "kstab/1",
            "kind": "contraction",
            "name": "pair-of-points",
            "n": 2,
            "roots": [{"H": 0, "E": [1, -1]}]
        }"#;
        let payload = parse(text).unwrap();
        match payload {
            Payload::Contraction(m) => assert_eq!(m.ade_type().to_string(), "A1"),
            _ => panic!("wrong payload kind"),
        }
    }

    #[test]
    fn schema_mismatch_is_rejected() {
        let text = r#"{"schema": "kstab/2", "kind": "chain", "name": "x", "components": []}"#;
        assert!(matches!(
            parse(text),
            Err(ModelError::UnsupportedSchema { .. })
        ));
    }

    #[test]
    fn json_errors_carry_position() {
        let text = "{\n  \"schema\": \"kstab/1\",\n  oops\n}";
        match parse(text) {
            Err(ModelError::Json { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected a positioned JSON error, got {other:?}"),
        }
    }

    #[test]
    fn invalid_roots_are_rejected_on_ingest() {
        let text = r#"{
            "schema": "kstab/1",
            "kind": "contraction",
            "name": "bad",
            "n": 2,
            "roots": [{"H": 0, "E": [1, 0]}]
        }"#;
        assert!(matches!(parse(text), Err(ModelError::Contraction(_))));
    }
}
