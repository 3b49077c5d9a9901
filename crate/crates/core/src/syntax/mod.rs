//! Terms, formulas, labeled sequents, their concrete grammar, and the
//! structural measures used by the other modules.

mod formula;
mod lexer;
pub mod measures;
mod notation;
mod parser;
mod sequent;
mod term;

use thiserror::Error;

pub use formula::Formula;
pub use notation::Notation;
pub use parser::{
    classify, is_label_name, parse_formula, parse_item, parse_sequent, parse_term, IdentClass,
};
pub use sequent::{Item, Label, Sequent, Side};
pub use term::Term;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {message}")]
    Syntax { pos: usize, message: String },
    #[error("unknown identifier `{name}` at offset {pos}: expected {expected}")]
    UnknownIdentifier {
        pos: usize,
        name: String,
        expected: &'static str,
    },
    #[error("malformed atom at offset {pos}: {message}")]
    MalformedAtom { pos: usize, message: String },
}

impl ParseError {
    pub fn position(&self) -> usize {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownIdentifier { pos, .. }
            | ParseError::MalformedAtom { pos, .. } => *pos,
        }
    }
}
