//! Audits of frame properties and evidence conditions over a finite
//! universe of (term, formula) pairs.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::{Evaluator, FittingModel};
use crate::logic::ConstantSpec;
use crate::syntax::measures::{collect_subformulas, sub_fm, subterms};
use crate::syntax::{Formula, Item, Label, Sequent, Term};

/// The (term, formula) pairs an audit ranges over.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EvidenceUniverse {
    pub pairs: BTreeSet<(Term, Formula)>,
}

/// Upper bound on the number of pairs an audit universe is grown to.
const UNIVERSE_CAP: usize = 20_000;

impl EvidenceUniverse {
    pub fn new(pairs: impl IntoIterator<Item = (Term, Formula)>) -> EvidenceUniverse {
        EvidenceUniverse {
            pairs: pairs.into_iter().collect(),
        }
    }

    /// Pairs from the justification subformulas and evidence atoms of `s`,
    /// the base support of the model and the constant specification,
    /// closed under the pairs the evidence conditions relate within the
    /// subterms of those seeds.
    pub fn for_sequent(m: &FittingModel, cs: &ConstantSpec, s: &Sequent) -> EvidenceUniverse {
        let mut seeds: BTreeSet<(Term, Formula)> = BTreeSet::new();
        let mut formulas = sub_fm(s);
        for entry in cs.entries() {
            collect_subformulas(entry, &mut formulas);
        }
        for a in &formulas {
            if let Formula::Just(t, b) = a {
                seeds.insert((t.clone(), (**b).clone()));
            }
        }
        for (_, item) in s.items() {
            if let Item::Ev(_, t, a) = item {
                seeds.insert((t.clone(), a.clone()));
            }
        }
        seeds.extend(cs.evidence_pairs());
        seeds.extend(m.base_evidence.keys().cloned());
        EvidenceUniverse::closed(m, seeds)
    }

    /// Closes `seeds` downward along subterms and upward within the
    /// subterms of the seeds.
    pub fn closed(m: &FittingModel, seeds: BTreeSet<(Term, Formula)>) -> EvidenceUniverse {
        let mut terms: BTreeSet<Term> = BTreeSet::new();
        for (t, _) in &seeds {
            terms.extend(subterms(t));
        }
        let mut ev = Evaluator::new(m);
        let mut pairs = seeds;
        let j = m.logic.justification;
        loop {
            let mut added: Vec<(Term, Formula)> = Vec::new();
            for (t, f) in &pairs {
                match t {
                    Term::Sum(a, b) => {
                        added.push(((**a).clone(), f.clone()));
                        added.push(((**b).clone(), f.clone()));
                    }
                    Term::App(a, b) => {
                        for g in ev.candidates(a, f) {
                            added.push(((**a).clone(), Formula::imp(g.clone(), f.clone())));
                            added.push(((**b).clone(), g));
                        }
                    }
                    Term::Bang(a) | Term::Query(a) | Term::BarQuery(a) => {
                        let inner = match (t, f) {
                            (Term::Bang(_), Formula::Just(r, g)) if *r == **a => Some(g),
                            (Term::Query(_) | Term::BarQuery(_), Formula::Neg(nj)) => match &**nj {
                                Formula::Just(r, g) if *r == **a => Some(g),
                                _ => None,
                            },
                            _ => None,
                        };
                        if let Some(g) = inner {
                            added.push(((**a).clone(), (**g).clone()));
                        }
                    }
                    _ => {}
                }
                let negated = Formula::neg(Formula::just(t.clone(), f.clone()));
                let lifts = [
                    (
                        j.four,
                        Term::bang(t.clone()),
                        Formula::just(t.clone(), f.clone()),
                    ),
                    (j.b, Term::bar_query(t.clone()), negated.clone()),
                    (j.five, Term::query(t.clone()), negated),
                ];
                for (on, lifted, body) in lifts {
                    if on && terms.contains(&lifted) {
                        added.push((lifted, body));
                    }
                }
                for u in &terms {
                    match u {
                        Term::Sum(a, b) if **a == *t || **b == *t => {
                            added.push((u.clone(), f.clone()));
                        }
                        Term::App(a, b) if **a == *t => {
                            if let Formula::Imp(g, c) = f {
                                if pairs.contains(&((**b).clone(), (**g).clone())) {
                                    added.push((u.clone(), (**c).clone()));
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
            let before = pairs.len();
            pairs.extend(added);
            if pairs.len() == before || pairs.len() > UNIVERSE_CAP {
                break;
            }
        }
        EvidenceUniverse { pairs }
    }
}

/// A frame property or evidence condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Condition {
    WellFormed,
    Reflexivity,
    Seriality,
    Transitivity,
    Symmetry,
    Euclideanness,
    Application,
    Sum,
    Monotonicity,
    PositiveIntrospection,
    WeakNegativeIntrospection,
    NegativeIntrospection,
    StrongEvidence,
    AntiMonotonicity,
    ConsistentEvidence,
    CsRespect,
}

impl Condition {
    pub fn name(self) -> &'static str {
        match self {
            Condition::WellFormed => "well-formedness",
            Condition::Reflexivity => "reflexivity",
            Condition::Seriality => "seriality",
            Condition::Transitivity => "transitivity",
            Condition::Symmetry => "symmetry",
            Condition::Euclideanness => "euclideanness",
            Condition::Application => "E1 application",
            Condition::Sum => "E2 sum",
            Condition::Monotonicity => "E3 monotonicity",
            Condition::PositiveIntrospection => "E4 positive introspection",
            Condition::WeakNegativeIntrospection => "E5 weak negative introspection",
            Condition::NegativeIntrospection => "E6 negative introspection",
            Condition::StrongEvidence => "E7 strong evidence",
            Condition::AntiMonotonicity => "anti-monotonicity",
            Condition::ConsistentEvidence => "consistent evidence",
            Condition::CsRespect => "CS respect",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {}", self.condition, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub violations: Vec<Violation>,
    /// Conditions that were audited.
    pub checked: Vec<Condition>,
}

impl ConditionReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violated(&self, c: Condition) -> bool {
        self.violations.iter().any(|v| v.condition == c)
    }

    fn fail(&mut self, condition: Condition, witness: String) {
        self.violations.push(Violation { condition, witness });
    }
}

/// Audits the model against the frame and evidence conditions its logic
/// demands, over `universe`.
pub fn check_conditions(
    m: &FittingModel,
    cs: &ConstantSpec,
    universe: &EvidenceUniverse,
) -> ConditionReport {
    let mut report = ConditionReport::default();
    report.checked.push(Condition::WellFormed);
    if let Err(e) = m.well_formed() {
        report.fail(Condition::WellFormed, e.to_string());
        return report;
    }
    let mut ev = Evaluator::new(m);
    let worlds: Vec<Label> = ev.worlds().to_vec();
    let related = |w: &Label, v: &Label| m.rel.contains(&(w.clone(), v.clone()));
    let frame = m.logic.frame_axioms();
    let cfg = &m.logic;

    if frame.t {
        report.checked.push(Condition::Reflexivity);
        for w in worlds.iter().filter(|w| !related(w, w)) {
            report.fail(Condition::Reflexivity, format!("{w}"));
        }
    }
    if frame.d && !cfg.is_fk() {
        report.checked.push(Condition::Seriality);
        for w in &worlds {
            if !worlds.iter().any(|v| related(w, v)) {
                report.fail(Condition::Seriality, format!("{w}"));
            }
        }
    }
    if frame.four {
        report.checked.push(Condition::Transitivity);
        for (w, v) in &m.rel {
            for (v2, u) in &m.rel {
                if v == v2 && !related(w, u) {
                    report.fail(Condition::Transitivity, format!("{w} R {v} R {u}"));
                }
            }
        }
    }
    if frame.b {
        report.checked.push(Condition::Symmetry);
        for (w, v) in &m.rel {
            if !related(v, w) {
                report.fail(Condition::Symmetry, format!("{w} R {v}"));
            }
        }
    }
    if frame.five {
        report.checked.push(Condition::Euclideanness);
        for (w, v) in &m.rel {
            for (w2, u) in &m.rel {
                if w == w2 && !related(v, u) {
                    report.fail(Condition::Euclideanness, format!("{w} R {v}, {w} R {u}"));
                }
            }
        }
    }
    if !cfg.has_justifications() {
        return report;
    }

    let j = cfg.justification;
    let witness = |w: &Label, t: &Term, f: &Formula| format!("{w} E({t},{f})");
    report
        .checked
        .extend([Condition::Application, Condition::Sum, Condition::CsRespect]);
    if j.four {
        report
            .checked
            .extend([Condition::Monotonicity, Condition::PositiveIntrospection]);
    }
    if j.b {
        report.checked.push(Condition::WeakNegativeIntrospection);
    }
    if j.five {
        report
            .checked
            .extend([Condition::NegativeIntrospection, Condition::StrongEvidence]);
    }
    if cfg.s4lpn_extras {
        report
            .checked
            .extend([Condition::StrongEvidence, Condition::AntiMonotonicity]);
    }
    if cfg.is_fk() {
        report.checked.push(Condition::ConsistentEvidence);
    }

    for (t, f) in &universe.pairs {
        let here = ev.evidence_set(t, f);
        match t {
            Term::App(a, b) => {
                for g in ev.candidates(a, f) {
                    let left = ev.evidence_set(a, &Formula::imp(g.clone(), f.clone()));
                    let right = ev.evidence_set(b, &g);
                    for w in left.intersection(&right) {
                        if !here.contains(w) {
                            report.fail(Condition::Application, witness(w, t, f));
                        }
                    }
                }
            }
            Term::Sum(a, b) => {
                let parts = ev
                    .evidence_set(a, f)
                    .into_iter()
                    .chain(ev.evidence_set(b, f));
                for w in parts {
                    if !here.contains(&w) {
                        report.fail(Condition::Sum, witness(&w, t, f));
                    }
                }
            }
            _ => {}
        }
        if j.four {
            for w in &here {
                for (w2, v) in &m.rel {
                    if w2 == w && !here.contains(v) {
                        report.fail(Condition::Monotonicity, witness(v, t, f));
                    }
                }
            }
            if let (Term::Bang(a), Formula::Just(r, g)) = (t, f) {
                if **a == *r {
                    for w in ev.evidence_set(a, g) {
                        if !here.contains(&w) {
                            report.fail(Condition::PositiveIntrospection, witness(&w, t, f));
                        }
                    }
                }
            }
        }
        let question = match (t, f) {
            (Term::Query(a) | Term::BarQuery(a), Formula::Neg(nj)) => match &**nj {
                Formula::Just(r, g) if r == &**a => Some(((**a).clone(), (**g).clone())),
                _ => None,
            },
            _ => None,
        };
        if let (Term::BarQuery(_), Some((_, g)), true) = (t, &question, j.b) {
            for w in &worlds {
                let forced = ev.forces(w, &Formula::neg(g.clone())).unwrap_or(false);
                if forced && !here.contains(w) {
                    report.fail(Condition::WeakNegativeIntrospection, witness(w, t, f));
                }
            }
        }
        if let (Term::Query(_), Some((a, g)), true) = (t, &question, j.five) {
            let inner = ev.evidence_set(a, g);
            for w in &worlds {
                if !inner.contains(w) && !here.contains(w) {
                    report.fail(Condition::NegativeIntrospection, witness(w, t, f));
                }
            }
        }
        if j.five || cfg.s4lpn_extras {
            for w in &here {
                if !ev
                    .forces(w, &Formula::just(t.clone(), f.clone()))
                    .unwrap_or(false)
                {
                    report.fail(Condition::StrongEvidence, witness(w, t, f));
                }
            }
        }
        if cfg.s4lpn_extras {
            for (w, v) in &m.rel {
                if here.contains(v) && !here.contains(w) {
                    report.fail(Condition::AntiMonotonicity, witness(w, t, f));
                }
            }
        }
        if cfg.is_fk() && *f == Formula::Bottom {
            for w in &here {
                report.fail(Condition::ConsistentEvidence, witness(w, t, f));
            }
        }
    }
    for (c, f) in cs.evidence_pairs() {
        let here = ev.evidence_set(&c, &f);
        for w in worlds.iter().filter(|w| !here.contains(*w)) {
            report.fail(Condition::CsRespect, witness(w, &c, &f));
        }
    }
    report
}
