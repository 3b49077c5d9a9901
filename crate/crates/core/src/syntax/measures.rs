//! Structural measures on terms, formulas and sequents.

use std::collections::BTreeSet;

use serde::Serialize;

use super::formula::Formula;
use super::sequent::{Item, Label, Sequent};
use super::term::Term;

/// All subterms of `t`, including `t` itself.
pub fn subterms(t: &Term) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    collect_subterms(t, &mut out);
    out
}

fn collect_subterms(t: &Term, out: &mut BTreeSet<Term>) {
    if !out.insert(t.clone()) {
        return;
    }
    match t {
        Term::Var(_) | Term::Const(_) => {}
        Term::Sum(l, r) | Term::App(l, r) => {
            collect_subterms(l, out);
            collect_subterms(r, out);
        }
        Term::Bang(s) | Term::Query(s) | Term::BarQuery(s) => collect_subterms(s, out),
    }
}

/// Every term heading a justification subformula of `a`.
pub fn terms_of(a: &Formula) -> Vec<&Term> {
    let mut out = Vec::new();
    collect_terms(a, &mut out);
    out
}

fn collect_terms<'a>(a: &'a Formula, out: &mut Vec<&'a Term>) {
    match a {
        Formula::Prop(_) | Formula::Bottom => {}
        Formula::Neg(b) | Formula::Nec(b) => collect_terms(b, out),
        Formula::And(b, c) | Formula::Or(b, c) | Formula::Imp(b, c) => {
            collect_terms(b, out);
            collect_terms(c, out);
        }
        Formula::Just(t, b) => {
            out.push(t);
            collect_terms(b, out);
        }
    }
}

/// The subformula set of `a`. Justification and box bodies are descended
/// into like any other connective.
pub fn jl_subformulas(a: &Formula) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    collect_subformulas(a, &mut out);
    out
}

pub(crate) fn collect_subformulas(a: &Formula, out: &mut BTreeSet<Formula>) {
    if !out.insert(a.clone()) {
        return;
    }
    match a {
        Formula::Prop(_) | Formula::Bottom => {}
        Formula::Neg(b) | Formula::Nec(b) | Formula::Just(_, b) => collect_subformulas(b, out),
        Formula::And(b, c) | Formula::Or(b, c) | Formula::Imp(b, c) => {
            collect_subformulas(b, out);
            collect_subformulas(c, out);
        }
    }
}

/// Rank of a term: atoms have rank 0 and every operation adds one.
pub fn rank(t: &Term) -> usize {
    match t {
        Term::Var(_) | Term::Const(_) => 0,
        Term::Sum(l, r) | Term::App(l, r) => rank(l).max(rank(r)) + 1,
        Term::Bang(s) | Term::Query(s) | Term::BarQuery(s) => rank(s) + 1,
    }
}

/// Replaces every `t:` by a box.
pub fn forgetful_projection(a: &Formula) -> Formula {
    match a {
        Formula::Prop(_) | Formula::Bottom => a.clone(),
        Formula::Neg(b) => Formula::neg(forgetful_projection(b)),
        Formula::And(b, c) => Formula::and(forgetful_projection(b), forgetful_projection(c)),
        Formula::Or(b, c) => Formula::or(forgetful_projection(b), forgetful_projection(c)),
        Formula::Imp(b, c) => Formula::imp(forgetful_projection(b), forgetful_projection(c)),
        Formula::Just(_, b) | Formula::Nec(b) => Formula::nec(forgetful_projection(b)),
    }
}

/// `a[by/x]`: replaces the variable `x` in every term position of `a`.
pub fn substitute_term(a: &Formula, x: &str, by: &Term) -> Formula {
    match a {
        Formula::Prop(_) | Formula::Bottom => a.clone(),
        Formula::Neg(b) => Formula::neg(substitute_term(b, x, by)),
        Formula::Nec(b) => Formula::nec(substitute_term(b, x, by)),
        Formula::And(b, c) => Formula::and(substitute_term(b, x, by), substitute_term(c, x, by)),
        Formula::Or(b, c) => Formula::or(substitute_term(b, x, by), substitute_term(c, x, by)),
        Formula::Imp(b, c) => Formula::imp(substitute_term(b, x, by), substitute_term(c, x, by)),
        Formula::Just(t, b) => Formula::just(t.substitute(x, by), substitute_term(b, x, by)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }
}

/// Occurrences of `:` and of the box in the negative and positive parts of
/// a sequent.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PolarityCounts {
    pub n_colon: usize,
    pub p_colon: usize,
    pub n_box: usize,
    pub p_box: usize,
}

/// Calls `visit` on every justification or box subformula occurrence of `a`
/// together with its polarity, starting from `pol`.
pub fn visit_modal_occurrences<'a>(
    a: &'a Formula,
    pol: Polarity,
    visit: &mut dyn FnMut(&'a Formula, Polarity),
) {
    match a {
        Formula::Prop(_) | Formula::Bottom => {}
        Formula::Neg(b) => visit_modal_occurrences(b, pol.flip(), visit),
        Formula::And(b, c) | Formula::Or(b, c) => {
            visit_modal_occurrences(b, pol, visit);
            visit_modal_occurrences(c, pol, visit);
        }
        Formula::Imp(b, c) => {
            visit_modal_occurrences(b, pol.flip(), visit);
            visit_modal_occurrences(c, pol, visit);
        }
        Formula::Just(_, b) | Formula::Nec(b) => {
            visit(a, pol);
            visit_modal_occurrences(b, pol, visit);
        }
    }
}

/// Counts polarities on `/\ Gamma^f -> \/ Delta^f`; relational and evidence
/// atoms are ignored.
pub fn polarity_counts(s: &Sequent) -> PolarityCounts {
    let mut counts = PolarityCounts::default();
    let mut tally = |a: &Formula, pol: Polarity| {
        let slot = match (a, pol) {
            (Formula::Just(..), Polarity::Negative) => &mut counts.n_colon,
            (Formula::Just(..), Polarity::Positive) => &mut counts.p_colon,
            (_, Polarity::Negative) => &mut counts.n_box,
            (_, Polarity::Positive) => &mut counts.p_box,
        };
        *slot += 1;
    };
    for item in s.ante() {
        if let Item::Labeled(_, a) = item {
            visit_modal_occurrences(a, Polarity::Negative, &mut tally);
        }
    }
    for item in s.succ() {
        if let Item::Labeled(_, a) = item {
            visit_modal_occurrences(a, Polarity::Positive, &mut tally);
        }
    }
    counts
}

/// Formulas occurring in labeled formulas or evidence atoms of `s`.
pub fn formulas_of(s: &Sequent) -> Vec<&Formula> {
    s.items()
        .filter_map(|(_, item)| match item {
            Item::Labeled(_, a) | Item::Ev(_, _, a) => Some(a),
            Item::Rel(..) => None,
        })
        .collect()
}

/// All subterms of terms occurring in labeled formulas or evidence atoms.
pub fn sub_tm(s: &Sequent) -> BTreeSet<Term> {
    let mut out = BTreeSet::new();
    for (_, item) in s.items() {
        match item {
            Item::Labeled(_, a) => {
                for t in terms_of(a) {
                    collect_subterms(t, &mut out);
                }
            }
            Item::Ev(_, t, a) => {
                collect_subterms(t, &mut out);
                for u in terms_of(a) {
                    collect_subterms(u, &mut out);
                }
            }
            Item::Rel(..) => {}
        }
    }
    out
}

/// All subformulas of formulas occurring in labeled formulas or evidence
/// atoms.
pub fn sub_fm(s: &Sequent) -> BTreeSet<Formula> {
    let mut out = BTreeSet::new();
    for a in formulas_of(s) {
        collect_subformulas(a, &mut out);
    }
    out
}

/// Whether `w |= a` is a labeled-subformula of `v |= b`. Below a
/// justification or box the label is arbitrary.
pub fn is_labeled_subformula(w: &Label, a: &Formula, v: &Label, b: &Formula) -> bool {
    if w == v && a == b {
        return true;
    }
    match b {
        Formula::Prop(_) | Formula::Bottom => false,
        Formula::Neg(c) => is_labeled_subformula(w, a, v, c),
        Formula::And(c, d) | Formula::Or(c, d) | Formula::Imp(c, d) => {
            is_labeled_subformula(w, a, v, c) || is_labeled_subformula(w, a, v, d)
        }
        Formula::Just(_, c) | Formula::Nec(c) => is_labeled_subformula(w, a, w, c),
    }
}

/// Number of distinct subterms of `s` whose main operation is `+`, `*` and
/// `!` respectively.
pub fn operator_counts(s: &Sequent) -> (usize, usize, usize) {
    let mut counts = (0, 0, 0);
    for t in sub_tm(s) {
        match t {
            Term::Sum(..) => counts.0 += 1,
            Term::App(..) => counts.1 += 1,
            Term::Bang(..) => counts.2 += 1,
            _ => {}
        }
    }
    counts
}
