use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::LogicError;
use crate::syntax::{Formula, Item, Sequent, Term};

/// A subset of the five extra axioms, shared by the modal and the
/// justification component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AxiomSet {
    pub t: bool,
    pub d: bool,
    pub four: bool,
    pub b: bool,
    pub five: bool,
}

impl AxiomSet {
    pub const NONE: AxiomSet = AxiomSet {
        t: false,
        d: false,
        four: false,
        b: false,
        five: false,
    };

    fn from_letters(letters: &str) -> Option<AxiomSet> {
        let mut set = AxiomSet::NONE;
        for ch in letters.chars() {
            let slot = match ch {
                'T' => &mut set.t,
                'D' => &mut set.d,
                '4' => &mut set.four,
                'B' => &mut set.b,
                '5' => &mut set.five,
                _ => return None,
            };
            if *slot {
                return None;
            }
            *slot = true;
        }
        Some(set)
    }

    fn letters(&self) -> String {
        let mut out = String::new();
        for (on, ch) in [
            (self.d, 'D'),
            (self.t, 'T'),
            (self.b, 'B'),
            (self.four, '4'),
            (self.five, '5'),
        ] {
            if on {
                out.push(ch);
            }
        }
        out
    }

    /// True if every axiom of `self` is also in `other`.
    pub fn is_subset(&self, other: &AxiomSet) -> bool {
        (!self.t || other.t)
            && (!self.d || other.d)
            && (!self.four || other.four)
            && (!self.b || other.b)
            && (!self.five || other.five)
    }
}

/// How seriality is handled in D-logics.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SerialityMode {
    /// The (Ser) rule.
    #[default]
    Rule,
    /// The Fk variant: initial sequents `w E(t,false), G => D` replace (Ser).
    AxiomEBottom,
}

/// The axioms of a modal, justification or modal-justification logic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogicConfig {
    pub justification: AxiomSet,
    /// `None` for justification logics without a box.
    pub modal: Option<AxiomSet>,
    /// `t:A -> []A`; makes the config a modal-justification logic.
    pub connection: bool,
    /// The two extra rules of S4LPN.
    pub s4lpn_extras: bool,
    pub seriality: SerialityMode,
}

impl LogicConfig {
    pub fn justification(axioms: AxiomSet) -> LogicConfig {
        LogicConfig {
            justification: axioms,
            modal: None,
            connection: false,
            s4lpn_extras: false,
            seriality: SerialityMode::Rule,
        }
    }

    pub fn modal(axioms: AxiomSet) -> LogicConfig {
        LogicConfig {
            modal: Some(axioms),
            ..LogicConfig::justification(AxiomSet::NONE)
        }
    }

    pub fn modal_justification(modal: AxiomSet, justification: AxiomSet) -> LogicConfig {
        LogicConfig {
            modal: Some(modal),
            connection: true,
            ..LogicConfig::justification(justification)
        }
    }

    pub fn with_fk(mut self) -> LogicConfig {
        self.seriality = SerialityMode::AxiomEBottom;
        self
    }

    pub fn modal_enabled(&self) -> bool {
        self.modal.is_some()
    }

    /// Whether justification formulas belong to the language.
    pub fn has_justifications(&self) -> bool {
        self.modal.is_none() || self.connection
    }

    /// Pure modal logics have no terms.
    pub fn is_pure_modal(&self) -> bool {
        !self.has_justifications()
    }

    pub fn is_fk(&self) -> bool {
        self.seriality == SerialityMode::AxiomEBottom
    }

    /// The axioms shaping the accessibility relation: the union of both
    /// components.
    pub fn frame_axioms(&self) -> AxiomSet {
        let j = self.justification;
        let m = self.modal.unwrap_or(AxiomSet::NONE);
        AxiomSet {
            t: j.t || m.t,
            d: j.d || m.d,
            four: j.four || m.four,
            b: j.b || m.b,
            five: j.five || m.five,
        }
    }

    /// One of J, J4, JD, JD4, JT, LP: no (SE) and no weak negative checker.
    pub fn is_jl_minus(&self) -> bool {
        let j = self.justification;
        self.modal.is_none() && !j.b && !j.five && !self.s4lpn_extras
    }

    /// Whether saturated branches of this logic yield countermodels.
    pub fn countermodel_supported(&self) -> bool {
        let j = self.justification;
        !j.b && !j.five && !self.s4lpn_extras
    }

    pub fn validate(&self) -> Result<(), LogicError> {
        if self.connection && self.modal.is_none() {
            return Err(LogicError::InvalidConfig(
                "the connection axiom needs a modal component".into(),
            ));
        }
        if self.modal.is_some() && !self.connection && self.justification != AxiomSet::NONE {
            return Err(LogicError::InvalidConfig(
                "justification axioms in a modal logic need the connection axiom".into(),
            ));
        }
        if self.s4lpn_extras {
            let s4 = AxiomSet {
                t: true,
                four: true,
                ..AxiomSet::NONE
            };
            if self.justification != s4 || self.modal != Some(s4) || !self.connection {
                return Err(LogicError::InvalidConfig(
                    "the S4LPN extras only apply on top of S4LP".into(),
                ));
            }
        }
        if self.is_fk() && !self.frame_axioms().d {
            return Err(LogicError::InvalidConfig(
                "the Fk variant replaces seriality and needs a D axiom".into(),
            ));
        }
        Ok(())
    }

    /// Checks that a formula uses only the connectives and term operations
    /// of this logic.
    pub fn check_formula(&self, a: &Formula) -> Result<(), LogicError> {
        match a {
            Formula::Prop(_) | Formula::Bottom => Ok(()),
            Formula::Neg(b) => self.check_formula(b),
            Formula::And(b, c) | Formula::Or(b, c) | Formula::Imp(b, c) => {
                self.check_formula(b)?;
                self.check_formula(c)
            }
            Formula::Nec(b) => {
                if !self.modal_enabled() {
                    return Err(LogicError::Language(format!(
                        "`{a}` uses the box, but {self} has no modal component"
                    )));
                }
                self.check_formula(b)
            }
            Formula::Just(t, b) => {
                if !self.has_justifications() {
                    return Err(LogicError::Language(format!(
                        "`{a}` is a justification formula, but {self} is purely modal"
                    )));
                }
                self.check_term(t)?;
                self.check_formula(b)
            }
        }
    }

    pub fn check_term(&self, t: &Term) -> Result<(), LogicError> {
        let j = self.justification;
        let (allowed, op) = match t {
            Term::Var(_) | Term::Const(_) => return Ok(()),
            Term::Sum(l, r) | Term::App(l, r) => {
                self.check_term(l)?;
                return self.check_term(r);
            }
            Term::Bang(s) => (j.four, ("!", s)),
            Term::Query(s) => (j.five, ("?", s)),
            Term::BarQuery(s) => (j.b, ("??", s)),
        };
        if !allowed {
            return Err(LogicError::Language(format!(
                "operation `{}` in `{t}` is not in the language of {self}",
                op.0
            )));
        }
        self.check_term(op.1)
    }

    pub fn check_sequent(&self, s: &Sequent) -> Result<(), LogicError> {
        for (_, item) in s.items() {
            match item {
                Item::Labeled(_, a) => self.check_formula(a)?,
                Item::Rel(..) => {}
                Item::Ev(_, t, a) => {
                    if !self.has_justifications() {
                        return Err(LogicError::Language(format!(
                            "evidence atom `{item}` in purely modal {self}"
                        )));
                    }
                    self.check_term(t)?;
                    self.check_formula(a)?;
                }
            }
        }
        Ok(())
    }

    fn justification_name(&self) -> String {
        let j = self.justification;
        if j == (AxiomSet {
            t: true,
            four: true,
            ..AxiomSet::NONE
        }) {
            "LP".into()
        } else {
            format!("J{}", j.letters())
        }
    }

    fn modal_name(m: &AxiomSet) -> String {
        let letters = m.letters();
        match letters.as_str() {
            "" => "K".into(),
            "T4" => "S4".into(),
            "T45" => "S5".into(),
            _ if m.t || m.d => letters,
            _ => format!("K{letters}"),
        }
    }

    /// The conventional name, e.g. `LP`, `S4`, `TJT` or `JD+Fk`.
    pub fn name(&self) -> String {
        let mut name = match &self.modal {
            None => self.justification_name(),
            Some(m) if !self.connection => LogicConfig::modal_name(m),
            Some(m) => format!(
                "{}{}",
                LogicConfig::modal_name(m),
                self.justification_name()
            ),
        };
        if self.s4lpn_extras {
            name.push('N');
        }
        if self.is_fk() {
            name.push_str("+Fk");
        }
        name
    }
}

impl fmt::Display for LogicConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

fn parse_justification_name(name: &str) -> Option<AxiomSet> {
    if name == "LP" {
        return Some(AxiomSet {
            t: true,
            four: true,
            ..AxiomSet::NONE
        });
    }
    AxiomSet::from_letters(name.strip_prefix('J')?)
}

fn parse_modal_name(name: &str) -> Option<AxiomSet> {
    match name {
        "S4" => AxiomSet::from_letters("T4"),
        "S5" => AxiomSet::from_letters("T45"),
        _ => match name.strip_prefix('K') {
            Some(rest) => AxiomSet::from_letters(rest),
            None if name.starts_with('T') || name.starts_with('D') => AxiomSet::from_letters(name),
            None => None,
        },
    }
}

impl FromStr for LogicConfig {
    type Err = LogicError;

    /// Parses a logic name such as `J`, `JT45`, `LP`, `S4`, `KJ`, `S4LP`,
    /// `S4LPN`, optionally followed by `+Fk`.
    fn from_str(text: &str) -> Result<LogicConfig, LogicError> {
        let unknown = || LogicError::UnknownLogic(text.to_string());
        let (base, fk) = match text.strip_suffix("+Fk") {
            Some(base) => (base, true),
            None => (text, false),
        };
        let (base, extras) = match base {
            "S4LPN" => ("S4LP", true),
            _ => (base, false),
        };
        let mut cfg = if let Some(j) = parse_justification_name(base) {
            LogicConfig::justification(j)
        } else if let Some(m) = parse_modal_name(base) {
            LogicConfig::modal(m)
        } else {
            (1..base.len())
                .filter(|&i| base.is_char_boundary(i))
                .find_map(|i| {
                    let m = parse_modal_name(&base[..i])?;
                    let j = parse_justification_name(&base[i..])?;
                    Some(LogicConfig::modal_justification(m, j))
                })
                .ok_or_else(unknown)?
        };
        cfg.s4lpn_extras = extras;
        if fk {
            cfg = cfg.with_fk();
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Named logics offered by the command line.
pub const PRESETS: &[&str] = &[
    "J", "JD", "JT", "J4", "JD4", "LP", "JB", "JDB", "JTB", "JB4", "JDB4", "JTB4", "J5", "JD5",
    "JT5", "J45", "JD45", "JT45", "JB5", "JB45", "JDB5", "JTB5", "K", "T", "D", "K4", "KB", "K5",
    "KB5", "K45", "D5", "DB", "D4", "D45", "TB", "S4", "S5", "KJ", "TJT", "DJD", "D4JD4", "K4J4",
    "S4LP", "S4LPN",
];

pub fn presets() -> Vec<LogicConfig> {
    PRESETS
        .iter()
        .map(|name| name.parse().expect("preset names parse"))
        .collect()
}
