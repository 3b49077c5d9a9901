//! Logic configurations, axiom schemes, rule sets and constant
//! specifications.

mod axioms;
mod config;
mod cs;
mod rules;

use thiserror::Error;

use crate::syntax::ParseError;

pub use axioms::{is_axiom_instance, is_tautology, AxiomScheme, TAUT_ATOM_CAP};
pub use config::{presets, AxiomSet, LogicConfig, SerialityMode, PRESETS};
pub use cs::{peel_constants, validate_cs, ConstantSpec, CsReport, CsViolation};
pub use rules::{rules_for_logic, stages_for_logic, RuleId, STAGE_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("unknown logic `{0}`")]
    UnknownLogic(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("invalid logic configuration: {0}")]
    InvalidConfig(String),
    #[error("{0}")]
    Language(String),
    #[error("tautology check over {count} opaque atoms exceeds the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },
    #[error("constant specification line {line}: {source}")]
    CsParse { line: usize, source: ParseError },
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
}
