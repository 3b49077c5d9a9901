//! The labeled sequent kernel: rule schemas, derivations, the derivation
//! checker and derivation transformations.

mod check;
mod derivation;
mod kernel;
pub(crate) mod transform;

use thiserror::Error;

use crate::logic::RuleId;
use crate::syntax::{Item, Label, ParseError, Sequent, Side};

pub use check::check_derivation;
pub use derivation::{Derivation, NodePath};
pub use kernel::{
    backward_instances, check_initial, expected_premises, instance_principals, is_initial,
    AnalyticityUniverse, RuleInstance,
};
pub use transform::{
    e_rule_terms_outside, generalized_axiom, prune_superfluous, substitute_label, trim_unused,
};

/// A violated side condition of a single rule application.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RuleError {
    #[error("rule ({0}) is not part of this calculus")]
    NotInCalculus(RuleId),
    #[error("({0}) is not an initial sequent")]
    NotInitial(RuleId),
    #[error("rule ({rule}) expects {expected} principal items, got {found}")]
    PrincipalCount {
        rule: RuleId,
        expected: usize,
        found: usize,
    },
    #[error("`{item}` does not fit the principal shape of ({rule})")]
    PrincipalShape { rule: RuleId, item: Item },
    #[error("principal `{item}` is missing from the {side:?} side of the conclusion")]
    PrincipalMissing { item: Item, side: Side },
    #[error("rule ({0}) needs an eigenlabel")]
    MissingEigenlabel(RuleId),
    #[error("rule ({rule}) takes no eigenlabel, got `{label}`")]
    UnexpectedEigenlabel { rule: RuleId, label: Label },
    #[error("eigenlabel `{label}` of ({rule}) occurs in conclusion")]
    EigenlabelNotFresh { rule: RuleId, label: Label },
    #[error("constant specification violation: `{item}` is not backed by an entry")]
    NotInCs { item: Item },
}

/// What went wrong at a derivation node.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CheckFailure {
    #[error(transparent)]
    Rule(#[from] RuleError),
    #[error("leaf is not justified by an initial sequent")]
    Unjustified,
    #[error("expected {expected} premises, found {found}")]
    PremiseCount { expected: usize, found: usize },
    #[error("premise {index} should be `{expected}` but is `{found}`")]
    PremiseMismatch {
        index: usize,
        expected: Sequent,
        found: Sequent,
    },
    #[error("{0}")]
    Language(String),
}

/// A checker verdict pinned to a node.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("node {path}{}: {failure}", rule.map(|r| format!(" ({r})")).unwrap_or_default())]
pub struct CheckError {
    pub path: NodePath,
    pub rule: Option<RuleId>,
    pub failure: CheckFailure,
}

/// Errors reading a derivation from JSON.
#[derive(Debug, Error)]
pub enum DerivationFormatError {
    #[error("malformed derivation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad {field} `{text}`: {source}")]
    Parse {
        field: &'static str,
        text: String,
        source: ParseError,
    },
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("`{0}` is not a label")]
    BadLabel(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PruneError {
    #[error("pruning needs a logic without (SE), (E?), (E??) or (AntiMon)")]
    NotJlMinus,
    #[error("input derivation does not check: {0}")]
    Invalid(#[from] CheckError),
    #[error("({rule}) at node {path} lacks the subterm property but is not superfluous")]
    NotSuperfluous { rule: RuleId, path: NodePath },
}
