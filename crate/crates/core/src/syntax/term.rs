use std::fmt;
use std::sync::Arc;

use super::notation::Notation;

/// A justification term.
///
/// Children are reference counted so that cloning the large sequents built
/// during proof search stays cheap.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Arc<str>),
    Const(Arc<str>),
    /// `s + t`
    Sum(Arc<Term>, Arc<Term>),
    /// `s * t`, application.
    App(Arc<Term>, Arc<Term>),
    /// `!t`, proof checker.
    Bang(Arc<Term>),
    /// `?t`, negative checker.
    Query(Arc<Term>),
    /// `??t`, weak negative checker.
    BarQuery(Arc<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(Arc::from(name))
    }

    pub fn constant(name: &str) -> Term {
        Term::Const(Arc::from(name))
    }

    pub fn sum(left: Term, right: Term) -> Term {
        Term::Sum(Arc::new(left), Arc::new(right))
    }

    pub fn app(left: Term, right: Term) -> Term {
        Term::App(Arc::new(left), Arc::new(right))
    }

    pub fn bang(inner: Term) -> Term {
        Term::Bang(Arc::new(inner))
    }

    pub fn query(inner: Term) -> Term {
        Term::Query(Arc::new(inner))
    }

    pub fn bar_query(inner: Term) -> Term {
        Term::BarQuery(Arc::new(inner))
    }

    /// True if the term contains no variables.
    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::Const(_) => true,
            Term::Sum(l, r) | Term::App(l, r) => l.is_ground() && r.is_ground(),
            Term::Bang(t) | Term::Query(t) | Term::BarQuery(t) => t.is_ground(),
        }
    }

    /// Number of nodes in the term tree.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) | Term::Const(_) => 1,
            Term::Sum(l, r) | Term::App(l, r) => 1 + l.size() + r.size(),
            Term::Bang(t) | Term::Query(t) | Term::BarQuery(t) => 1 + t.size(),
        }
    }

    /// Replaces every occurrence of the variable `name` by `by`.
    pub fn substitute(&self, name: &str, by: &Term) -> Term {
        match self {
            Term::Var(v) if &**v == name => by.clone(),
            Term::Var(_) | Term::Const(_) => self.clone(),
            Term::Sum(l, r) => Term::sum(l.substitute(name, by), r.substitute(name, by)),
            Term::App(l, r) => Term::app(l.substitute(name, by), r.substitute(name, by)),
            Term::Bang(t) => Term::bang(t.substitute(name, by)),
            Term::Query(t) => Term::query(t.substitute(name, by)),
            Term::BarQuery(t) => Term::bar_query(t.substitute(name, by)),
        }
    }

    fn level(&self) -> u8 {
        match self {
            Term::Sum(..) => 0,
            Term::App(..) => 1,
            _ => 2,
        }
    }

    fn starts_with_query(&self) -> bool {
        matches!(self, Term::Query(_) | Term::BarQuery(_))
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
            Term::Var(n) | Term::Const(n) => write!(f, "{n}"),
            Term::Sum(l, r) => {
                l.fmt_at(f, 0, nt)?;
                write!(f, "{}", nt.plus)?;
                r.fmt_at(f, 1, nt)
            }
            Term::App(l, r) => {
                l.fmt_at(f, 1, nt)?;
                write!(f, "{}", nt.times)?;
                r.fmt_at(f, 2, nt)
            }
            Term::Bang(t) => {
                write!(f, "{}", nt.bang)?;
                t.fmt_at(f, 2, nt)
            }
            Term::Query(t) => {
                // `??` lexes as one token, so `?` directly before another
                // question mark needs parentheses.
                write!(f, "{}", nt.query)?;
                if t.starts_with_query() {
                    write!(f, "(")?;
                    t.fmt_at(f, 0, nt)?;
                    write!(f, ")")
                } else {
                    t.fmt_at(f, 2, nt)
                }
            }
            Term::BarQuery(t) => {
                write!(f, "{}", nt.bar_query)?;
                t.fmt_at(f, 2, nt)
            }
        }
    }

    /// Renders the term in the given notation.
    pub fn render(&self, nt: &'static Notation) -> String {
        struct Show<'a>(&'a Term, &'static Notation);
        impl fmt::Display for Show<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_at(f, 0, self.1)
            }
        }
        Show(self, nt).to_string()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0, &Notation::ASCII)
    }
}
