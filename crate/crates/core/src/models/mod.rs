//! Fitting semantics: finite models, evidence closures, forcing, frame and
//! evidence condition audits, and countermodel extraction.

mod conditions;
mod evidence;
mod extract;
mod model;

use thiserror::Error;

use crate::syntax::{Label, ParseError};

pub use conditions::{check_conditions, Condition, ConditionReport, EvidenceUniverse, Violation};
pub use evidence::{ClosureKind, Evaluator};
pub use extract::{extract_countermodel, BranchSummary};
pub use model::{FittingModel, Interpretation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModelError {
    #[error(
        "the generated closure does not cover logics with axiom j5; use the inductive closure"
    )]
    ClosureScope,
    #[error("the accessibility relation is not Euclidean")]
    NotEuclidean,
    #[error("`{0}` is not a world of the model")]
    UnknownWorld(Label),
    #[error("label `{0}` is not interpreted")]
    Uninterpreted(Label),
    #[error("malformed model JSON: {0}")]
    Json(String),
    #[error("bad {field} `{text}` in model: {source}")]
    Parse {
        field: &'static str,
        text: String,
        source: ParseError,
    },
    #[error("unknown logic in model: {0}")]
    Logic(String),
    #[error("extracted model is not a countermodel: {0}")]
    NotACountermodel(String),
}
