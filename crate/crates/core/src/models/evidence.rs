//! Evidence closures and forcing over a finite model.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::rc::Rc;

use fixedbitset::FixedBitSet;

use super::{FittingModel, Interpretation, ModelError};
use crate::syntax::{Formula, Item, Label, Sequent, Side, Term};

/// Which admissible evidence function a model is read with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureKind {
    /// Least function containing the base and closed under the
    /// application, sum, and (when present) verifier and monotonicity
    /// clauses, with `??` evidence everywhere under jB.
    Generated,
    /// Rank-staged construction with a single closure along the relation
    /// at the end; the only choice for logics with j5.
    Inductive,
}

impl ClosureKind {
    pub fn for_model(m: &FittingModel) -> ClosureKind {
        if m.logic.justification.five {
            ClosureKind::Inductive
        } else {
            ClosureKind::Generated
        }
    }
}

type WorldSet = FixedBitSet;

/// Memoizing evaluator over one model. Each evaluator owns its tables, so
/// separate evaluators may run on separate threads.
pub struct Evaluator<'m> {
    model: &'m FittingModel,
    kind: ClosureKind,
    index: BTreeMap<Label, usize>,
    names: Vec<Label>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    base: HashMap<(Term, Formula), WorldSet>,
    support: HashMap<Term, Vec<Formula>>,
    closed: HashMap<(Term, Formula), WorldSet>,
    staged: HashMap<(Term, Formula), WorldSet>,
    reach: HashMap<Term, Rc<BTreeSet<Formula>>>,
    forced: HashMap<(usize, Formula), bool>,
}

impl<'m> Evaluator<'m> {
    pub fn new(model: &'m FittingModel) -> Evaluator<'m> {
        Evaluator::with_kind(model, ClosureKind::for_model(model))
    }

    pub fn with_kind(model: &'m FittingModel, kind: ClosureKind) -> Evaluator<'m> {
        let index: BTreeMap<Label, usize> = model
            .worlds
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let n = index.len();
        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for (w, v) in &model.rel {
            if let (Some(&i), Some(&j)) = (index.get(w), index.get(v)) {
                succ[i].push(j);
                pred[j].push(i);
            }
        }
        let mut base = HashMap::new();
        let mut support: HashMap<Term, Vec<Formula>> = HashMap::new();
        for ((t, a), ws) in &model.base_evidence {
            let mut set = WorldSet::with_capacity(n);
            for w in ws {
                if let Some(&i) = index.get(w) {
                    set.insert(i);
                }
            }
            if !set.is_clear() {
                support.entry(t.clone()).or_default().push(a.clone());
            }
            base.insert((t.clone(), a.clone()), set);
        }
        let names = index.keys().cloned().collect();
        Evaluator {
            model,
            kind,
            index,
            names,
            succ,
            pred,
            base,
            support,
            closed: HashMap::new(),
            staged: HashMap::new(),
            reach: HashMap::new(),
            forced: HashMap::new(),
        }
    }

    pub fn kind(&self) -> ClosureKind {
        self.kind
    }

    pub fn worlds(&self) -> &[Label] {
        &self.names
    }

    pub fn successors(&self, w: &Label) -> Result<Vec<Label>, ModelError> {
        let i = self.world(w)?;
        Ok(self.succ[i]
            .iter()
            .map(|&j| self.names[j].clone())
            .collect())
    }

    fn world(&self, w: &Label) -> Result<usize, ModelError> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| ModelError::UnknownWorld(w.clone()))
    }

    fn empty(&self) -> WorldSet {
        WorldSet::with_capacity(self.index.len())
    }

    fn full(&self) -> WorldSet {
        let mut s = self.empty();
        s.insert_range(..);
        s
    }

    fn base_set(&self, t: &Term, a: &Formula) -> WorldSet {
        self.base
            .get(&(t.clone(), a.clone()))
            .cloned()
            .unwrap_or_else(|| self.empty())
    }

    /// Whether the relation is Euclidean.
    pub fn is_euclidean(&self) -> bool {
        self.succ.iter().all(|vs| {
            vs.iter()
                .all(|&v| vs.iter().all(|u| self.succ[v].contains(u)))
        })
    }

    fn spread(&self, mut set: WorldSet, forward: bool, backward: bool) -> WorldSet {
        let mut stack: Vec<usize> = set.ones().collect();
        while let Some(i) = stack.pop() {
            let mut next: Vec<usize> = Vec::new();
            if forward {
                next.extend(&self.succ[i]);
            }
            if backward {
                next.extend(&self.pred[i]);
            }
            for j in next {
                if !set.contains(j) {
                    set.insert(j);
                    stack.push(j);
                }
            }
        }
        set
    }

    /// Formulas `F` for which `t` may have nonempty evidence. Sets owed to
    /// `??` and `?` contain no implications and are left out; they only
    /// matter through direct lookups.
    fn reachable(&mut self, t: &Term) -> Rc<BTreeSet<Formula>> {
        if let Some(r) = self.reach.get(t) {
            return r.clone();
        }
        let mut out: BTreeSet<Formula> =
            self.support.get(t).into_iter().flatten().cloned().collect();
        match t {
            Term::Sum(a, b) => {
                out.extend(self.reachable(a).iter().cloned());
                out.extend(self.reachable(b).iter().cloned());
            }
            Term::App(a, _) => {
                for f in self.reachable(a).iter() {
                    if let Formula::Imp(_, consequent) = f {
                        out.insert((**consequent).clone());
                    }
                }
            }
            Term::Bang(a) if self.model.logic.justification.four => {
                for f in self.reachable(a).iter() {
                    out.insert(Formula::just((**a).clone(), f.clone()));
                }
            }
            _ => {}
        }
        let out = Rc::new(out);
        self.reach.insert(t.clone(), out.clone());
        out
    }

    /// Antecedents `G` with `G -> F` reachable for `s`.
    pub(crate) fn candidates(&mut self, s: &Term, f: &Formula) -> Vec<Formula> {
        self.reachable(s)
            .iter()
            .filter_map(|g| match g {
                Formula::Imp(ante, cons) if **cons == *f => Some((**ante).clone()),
                _ => None,
            })
            .collect()
    }

    /// The clauses shared by both constructions, over `sub` for subterms.
    fn one_step(
        &mut self,
        t: &Term,
        f: &Formula,
        sub: fn(&mut Evaluator<'m>, &Term, &Formula) -> WorldSet,
    ) -> WorldSet {
        let j = self.model.logic.justification;
        let mut set = self.base_set(t, f);
        match t {
            Term::Sum(a, b) => {
                set.union_with(&sub(self, a, f));
                set.union_with(&sub(self, b, f));
            }
            Term::App(a, b) => {
                for g in self.candidates(a, f) {
                    let mut both = sub(self, a, &Formula::imp(g.clone(), f.clone()));
                    if both.is_clear() {
                        continue;
                    }
                    both.intersect_with(&sub(self, b, &g));
                    set.union_with(&both);
                }
            }
            Term::Bang(a) if j.four => {
                if let Formula::Just(inner, g) = f {
                    if **a == *inner {
                        set.union_with(&sub(self, a, g));
                    }
                }
            }
            Term::BarQuery(r) if j.b => {
                if let Formula::Neg(nj) = f {
                    if matches!(&**nj, Formula::Just(inner, _) if **r == *inner) {
                        set = self.full();
                    }
                }
            }
            Term::Query(r) if j.five && self.kind == ClosureKind::Inductive => {
                if let Formula::Neg(nj) = f {
                    if let Formula::Just(inner, g) = &**nj {
                        if **r == *inner {
                            let mut outside = sub(self, r, g);
                            outside.toggle_range(..);
                            set.union_with(&outside);
                        }
                    }
                }
            }
            _ => {}
        }
        set
    }

    fn generated_set(&mut self, t: &Term, f: &Formula) -> WorldSet {
        let key = (t.clone(), f.clone());
        if let Some(s) = self.closed.get(&key) {
            return s.clone();
        }
        let mut set = self.one_step(t, f, Evaluator::generated_set);
        if self.model.logic.justification.four {
            set = self.spread(set, true, false);
        }
        self.closed.insert(key, set.clone());
        set
    }

    /// The staged set before the final closure along the relation.
    fn staged_set(&mut self, t: &Term, f: &Formula) -> WorldSet {
        let key = (t.clone(), f.clone());
        if let Some(s) = self.staged.get(&key) {
            return s.clone();
        }
        let set = self.one_step(t, f, Evaluator::staged_set);
        self.staged.insert(key, set.clone());
        set
    }

    fn inductive_set(&mut self, t: &Term, f: &Formula) -> WorldSet {
        let key = (t.clone(), f.clone());
        if let Some(s) = self.closed.get(&key) {
            return s.clone();
        }
        let j = self.model.logic.justification;
        let staged = self.staged_set(t, f);
        let set = self.spread(staged, j.four, j.five);
        self.closed.insert(key, set.clone());
        set
    }

    /// The worlds in the admissible evidence set for `(t, f)`.
    pub fn evidence_set(&mut self, t: &Term, f: &Formula) -> BTreeSet<Label> {
        let set = self.evidence_bits(t, f);
        set.ones().map(|i| self.names[i].clone()).collect()
    }

    fn evidence_bits(&mut self, t: &Term, f: &Formula) -> WorldSet {
        match self.kind {
            ClosureKind::Generated => self.generated_set(t, f),
            ClosureKind::Inductive => self.inductive_set(t, f),
        }
    }

    pub fn evidence(&mut self, w: &Label, t: &Term, f: &Formula) -> Result<bool, ModelError> {
        let i = self.world(w)?;
        Ok(self.evidence_bits(t, f).contains(i))
    }

    /// Preconditions of the closure this evaluator computes.
    pub fn check_scope(&self) -> Result<(), ModelError> {
        match self.kind {
            ClosureKind::Generated if self.model.logic.justification.five => {
                Err(ModelError::ClosureScope)
            }
            ClosureKind::Inductive
                if self.model.logic.justification.five && !self.is_euclidean() =>
            {
                Err(ModelError::NotEuclidean)
            }
            _ => Ok(()),
        }
    }

    fn forces_at(&mut self, i: usize, a: &Formula) -> bool {
        let key = (i, a.clone());
        if let Some(&b) = self.forced.get(&key) {
            return b;
        }
        let value = match a {
            Formula::Prop(p) => self
                .model
                .valuation
                .get(&**p)
                .is_some_and(|ws| ws.contains(&self.names[i])),
            Formula::Bottom => false,
            Formula::Neg(b) => !self.forces_at(i, b),
            Formula::And(b, c) => self.forces_at(i, b) && self.forces_at(i, c),
            Formula::Or(b, c) => self.forces_at(i, b) || self.forces_at(i, c),
            Formula::Imp(b, c) => !self.forces_at(i, b) || self.forces_at(i, c),
            Formula::Just(t, b) => {
                self.evidence_bits(t, b).contains(i) && self.all_successors(i, b)
            }
            Formula::Nec(b) => self.all_successors(i, b),
        };
        self.forced.insert(key, value);
        value
    }

    fn all_successors(&mut self, i: usize, b: &Formula) -> bool {
        let succ = self.succ[i].clone();
        succ.into_iter().all(|j| self.forces_at(j, b))
    }

    pub fn forces(&mut self, w: &Label, a: &Formula) -> Result<bool, ModelError> {
        let i = self.world(w)?;
        Ok(self.forces_at(i, a))
    }

    pub fn validates_item(
        &mut self,
        interp: &Interpretation,
        item: &Item,
    ) -> Result<bool, ModelError> {
        match item {
            Item::Labeled(w, a) => {
                let w = interp.get(w)?.clone();
                self.forces(&w, a)
            }
            Item::Rel(w, v) => {
                let (w, v) = (interp.get(w)?, interp.get(v)?);
                self.world(w)?;
                self.world(v)?;
                Ok(self.model.rel.contains(&(w.clone(), v.clone())))
            }
            Item::Ev(w, t, a) => {
                let w = interp.get(w)?.clone();
                self.evidence(&w, t, a)
            }
        }
    }

    /// Whether the sequent holds under `interp`: every antecedent item
    /// validated implies some succedent item validated.
    pub fn validates_sequent(
        &mut self,
        interp: &Interpretation,
        s: &Sequent,
    ) -> Result<bool, ModelError> {
        for item in s.side(Side::Ante) {
            if !self.validates_item(interp, item)? {
                return Ok(true);
            }
        }
        for item in s.side(Side::Succ) {
            if self.validates_item(interp, item)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

impl FittingModel {
    /// Membership in the generated closure of the base evidence.
    pub fn closure_membership(&self, w: &Label, t: &Term, f: &Formula) -> Result<bool, ModelError> {
        let mut ev = Evaluator::with_kind(self, ClosureKind::Generated);
        ev.check_scope()?;
        ev.evidence(w, t, f)
    }

    /// Membership in the rank-staged closure of the base evidence.
    pub fn inductive_closure_membership(
        &self,
        w: &Label,
        t: &Term,
        f: &Formula,
    ) -> Result<bool, ModelError> {
        let mut ev = Evaluator::with_kind(self, ClosureKind::Inductive);
        ev.check_scope()?;
        ev.evidence(w, t, f)
    }

    pub fn forces(&self, w: &Label, a: &Formula) -> Result<bool, ModelError> {
        Evaluator::new(self).forces(w, a)
    }

    pub fn validates_sequent(
        &self,
        interp: &Interpretation,
        s: &Sequent,
    ) -> Result<bool, ModelError> {
        Evaluator::new(self).validates_sequent(interp, s)
    }
}
