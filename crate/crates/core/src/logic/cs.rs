use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use super::axioms::is_axiom_instance;
use super::config::LogicConfig;
use super::LogicError;
use crate::syntax::{classify, parse_formula, Formula, IdentClass, Term};

/// A finite constant specification: formulas `c_n : ... : c_1 : A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConstantSpec {
    entries: Vec<Formula>,
}

/// Splits `c_n : ... : c_1 : A` into its constants (outermost first) and `A`.
pub fn peel_constants(entry: &Formula) -> (Vec<&str>, &Formula) {
    let mut constants = Vec::new();
    let mut body = entry;
    while let Formula::Just(Term::Const(c), inner) = body {
        constants.push(&**c);
        body = inner;
    }
    (constants, body)
}

/// Splits the leading `c :` prefixes off a line, so that `c : A -> B` reads
/// as `c:(A -> B)`.
fn split_prefix(line: &str) -> (Vec<&str>, &str) {
    let mut constants = Vec::new();
    let mut rest = line;
    while let Some((head, tail)) = rest.split_once(':') {
        let head = head.trim();
        let is_constant = classify(head) == IdentClass::Constant
            && head.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_');
        if !is_constant {
            break;
        }
        constants.push(head);
        rest = tail;
    }
    (constants, rest)
}

impl ConstantSpec {
    pub fn new(entries: Vec<Formula>) -> ConstantSpec {
        let mut seen = BTreeSet::new();
        let entries = entries
            .into_iter()
            .filter(|e| seen.insert(e.clone()))
            .collect();
        ConstantSpec { entries }
    }

    pub fn empty() -> ConstantSpec {
        ConstantSpec::default()
    }

    /// One entry per line; `#` starts a comment.
    pub fn parse(text: &str) -> Result<ConstantSpec, LogicError> {
        let mut entries = Vec::new();
        for (n, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (constants, body) = split_prefix(line);
            let body = parse_formula(body).map_err(|source| LogicError::CsParse {
                line: n + 1,
                source,
            })?;
            let entry = constants
                .into_iter()
                .rev()
                .fold(body, |acc, c| Formula::just(Term::constant(c), acc));
            entries.push(entry);
        }
        Ok(ConstantSpec::new(entries))
    }

    pub fn load(path: &Path) -> Result<ConstantSpec, LogicError> {
        let text = std::fs::read_to_string(path).map_err(|e| LogicError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        ConstantSpec::parse(&text)
    }

    pub fn entries(&self) -> &[Formula] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, a: &Formula) -> bool {
        self.entries.contains(a)
    }

    /// The evidence atoms `(c, F)` that (I)AN may introduce, one per entry
    /// `c:F`.
    pub fn evidence_pairs(&self) -> Vec<(Term, Formula)> {
        self.entries
            .iter()
            .filter_map(|e| match e {
                Formula::Just(t @ Term::Const(_), body) => Some((t.clone(), (**body).clone())),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for ConstantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CsViolation {
    NotConstantShape(Formula),
    NotAxiom(Formula),
    NotDownwardClosed { entry: Formula, missing: Formula },
    NestedInJ4(Formula),
    Language { entry: Formula, message: String },
}

impl fmt::Display for CsViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CsViolation::NotConstantShape(e) => {
                write!(f, "`{e}` does not start with a justification constant")
            }
            CsViolation::NotAxiom(e) => write!(f, "`{e}` does not end in an axiom instance"),
            CsViolation::NotDownwardClosed { entry, missing } => {
                write!(f, "not downward closed: `{entry}` needs `{missing}`")
            }
            CsViolation::NestedInJ4(e) => {
                write!(f, "`{e}` nests constants, but the logic has j4")
            }
            CsViolation::Language { entry, message } => write!(f, "`{entry}`: {message}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CsReport {
    pub violations: Vec<CsViolation>,
    pub injective: bool,
}

impl CsReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the shape, axiom and closure conditions of `cs` for `cfg`.
pub fn validate_cs(cfg: &LogicConfig, cs: &ConstantSpec) -> CsReport {
    let mut violations = Vec::new();
    let mut associated: BTreeMap<&str, BTreeSet<&Formula>> = BTreeMap::new();
    for entry in cs.entries() {
        if let Err(e) = cfg.check_formula(entry) {
            violations.push(CsViolation::Language {
                entry: entry.clone(),
                message: e.to_string(),
            });
            continue;
        }
        let (constants, body) = peel_constants(entry);
        if constants.is_empty() {
            violations.push(CsViolation::NotConstantShape(entry.clone()));
            continue;
        }
        match is_axiom_instance(cfg, body) {
            Ok(Some(_)) => {}
            Ok(None) => violations.push(CsViolation::NotAxiom(entry.clone())),
            Err(e) => violations.push(CsViolation::Language {
                entry: entry.clone(),
                message: e.to_string(),
            }),
        }
        if cfg.justification.four {
            if constants.len() > 1 {
                violations.push(CsViolation::NestedInJ4(entry.clone()));
            }
        } else if let Formula::Just(_, tail) = entry {
            if constants.len() > 1 && !cs.contains(tail) {
                violations.push(CsViolation::NotDownwardClosed {
                    entry: entry.clone(),
                    missing: (**tail).clone(),
                });
            }
        }
        for c in constants {
            associated.entry(c).or_default().insert(body);
        }
    }
    let injective = associated.values().all(|bodies| bodies.len() <= 1);
    CsReport {
        violations,
        injective,
    }
}
