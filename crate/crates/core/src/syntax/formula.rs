use std::fmt;
use std::sync::Arc;

use super::notation::Notation;
use super::term::Term;

/// A formula of the modal-justification language.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Prop(Arc<str>),
    Bottom,
    Neg(Arc<Formula>),
    And(Arc<Formula>, Arc<Formula>),
    Or(Arc<Formula>, Arc<Formula>),
    Imp(Arc<Formula>, Arc<Formula>),
    /// `t:A`
    Just(Term, Arc<Formula>),
    /// `[]A`, the modal necessity operator.
    Nec(Arc<Formula>),
}

impl Formula {
    pub fn prop(name: &str) -> Formula {
        Formula::Prop(Arc::from(name))
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Neg(Arc::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Arc::new(a), Arc::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Arc::new(a), Arc::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Arc::new(a), Arc::new(b))
    }

    pub fn just(t: Term, a: Formula) -> Formula {
        Formula::Just(t, Arc::new(a))
    }

    pub fn nec(a: Formula) -> Formula {
        Formula::Nec(Arc::new(a))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Formula::Prop(_) | Formula::Bottom)
    }

    /// True if `[]` occurs anywhere in the formula.
    pub fn has_modality(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Bottom => false,
            Formula::Neg(a) => a.has_modality(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_modality() || b.has_modality()
            }
            Formula::Just(_, a) => a.has_modality(),
            Formula::Nec(_) => true,
        }
    }

    /// True if a justification assertion `t:A` occurs anywhere in the formula.
    pub fn has_justification(&self) -> bool {
        match self {
            Formula::Prop(_) | Formula::Bottom => false,
            Formula::Neg(a) | Formula::Nec(a) => a.has_justification(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.has_justification() || b.has_justification()
            }
            Formula::Just(..) => true,
        }
    }

    /// Number of connectives, operators and atoms.
    pub fn size(&self) -> usize {
        match self {
            Formula::Prop(_) | Formula::Bottom => 1,
            Formula::Neg(a) | Formula::Nec(a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
            Formula::Just(t, a) => t.size() + a.size(),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Formula::Imp(..) => 0,
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            _ => 3,
        }
    }

    pub(crate) fn fmt_at(
        &self,
        f: &mut fmt::Formatter<'_>,
        min_level: u8,
        nt: &Notation,
    ) -> fmt::Result {
        if self.level() < min_level {
            write!(f, "(")?;
            self.fmt_at(f, 0, nt)?;
            return write!(f, ")");
        }
        match self {
            Formula::Prop(p) => write!(f, "{p}"),
            Formula::Bottom => write!(f, "{}", nt.bottom),
            Formula::Neg(a) => {
                write!(f, "{}", nt.neg)?;
                a.fmt_at(f, 3, nt)
            }
            Formula::Nec(a) => {
                write!(f, "{}", nt.nec)?;
                a.fmt_at(f, 3, nt)
            }
            Formula::Just(t, a) => {
                // Compound sums and products read better parenthesized.
                t.fmt_at(f, 2, nt)?;
                write!(f, ":")?;
                a.fmt_at(f, 3, nt)
            }
            Formula::And(a, b) => {
                a.fmt_at(f, 2, nt)?;
                write!(f, "{}", nt.and)?;
                b.fmt_at(f, 3, nt)
            }
            Formula::Or(a, b) => {
                a.fmt_at(f, 1, nt)?;
                write!(f, "{}", nt.or)?;
                b.fmt_at(f, 2, nt)
            }
            Formula::Imp(a, b) => {
                a.fmt_at(f, 1, nt)?;
                write!(f, "{}", nt.imp)?;
                b.fmt_at(f, 0, nt)
            }
        }
    }

    /// Renders the formula in the given notation.
    pub fn render(&self, nt: &'static Notation) -> String {
        struct Show<'a>(&'a Formula, &'static Notation);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_at(f, 0, self.1)
            }
        }
        Show(self, nt).to_string()
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0, &Notation::ASCII)
    }
}
