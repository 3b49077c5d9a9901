//! The reduction tree: each branch cycles through the stages of its logic.

use std::collections::{BTreeMap, BTreeSet};

use super::{SearchAudit, SearchOptions, SearchStats, UnknownReason};
use crate::calculus::transform::initial_leaf;
use crate::calculus::{expected_premises, instance_principals, AnalyticityUniverse, Derivation};
use crate::logic::{stages_for_logic, ConstantSpec, LogicConfig, RuleId};
use crate::models::BranchSummary;
use crate::syntax::{Formula, Item, Label, Sequent};

/// How a branch ended.
pub(crate) enum BranchOutcome {
    Closed(Derivation),
    /// Saturated; carries the unions of the sequents along the branch.
    Open(BranchSummary),
    Unknown(UnknownReason),
}

/// One backward step recorded on the linear part of a branch. Conclusions
/// are not stored; they are replayed from the branch's first sequent.
struct Step {
    rule: RuleId,
    principal: Vec<Item>,
    eigenlabel: Option<Label>,
}

#[derive(Clone)]
struct Branch {
    seq: Sequent,
    summary: BranchSummary,
    passes: usize,
    counts: BTreeMap<RuleId, usize>,
    /// Applications of (R:) and (R[]) per formula along the chain of
    /// eigenlabels leading to each label.
    chains: BTreeMap<Label, BTreeMap<Formula, usize>>,
    ser_generated: BTreeSet<Label>,
}

pub(crate) struct Engine<'a> {
    cfg: &'a LogicConfig,
    cs: &'a ConstantSpec,
    stages: Vec<RuleId>,
    universe: AnalyticityUniverse,
    options: &'a SearchOptions,
    chain_cap: Option<usize>,
    query_limit: Option<usize>,
    next_label: usize,
    total_passes: usize,
    /// Set when a chain counter blocked an application.
    pub(crate) capped: bool,
    /// Set when the split limit for (E?) and (E??) blocked an application.
    pub(crate) query_blocked: bool,
    pub(crate) stats: SearchStats,
    pub(crate) audit: Option<SearchAudit>,
}

fn is_branching(rule: RuleId) -> bool {
    rule.arity() > 1
}

fn consumes_principal(rule: RuleId) -> bool {
    use RuleId::*;
    matches!(
        rule,
        LNeg | RNeg | LAnd | RAnd | LOr | ROr | LImp | RImp | RJust | RBox
    )
}

impl<'a> Engine<'a> {
    pub(crate) fn new(
        cfg: &'a LogicConfig,
        cs: &'a ConstantSpec,
        root: &Sequent,
        options: &'a SearchOptions,
        chain_cap: Option<usize>,
        query_limit: Option<usize>,
    ) -> Engine<'a> {
        Engine {
            cfg,
            cs,
            stages: stages_for_logic(cfg),
            universe: AnalyticityUniverse::new(root, cs),
            options,
            chain_cap,
            query_limit,
            next_label: 0,
            total_passes: 0,
            capped: false,
            query_blocked: false,
            stats: SearchStats::default(),
            audit: options.audit.then(SearchAudit::default),
        }
    }

    fn fresh(&mut self) -> Label {
        loop {
            self.next_label += 1;
            let v = Label::new(&format!("v{}", self.next_label));
            if !self.universe.root_labels.contains(&v) {
                self.stats.labels_created += 1;
                return v;
            }
        }
    }

    pub(crate) fn run_root(&mut self, root: &Sequent) -> BranchOutcome {
        let branch = Branch {
            seq: root.clone(),
            summary: BranchSummary::from_sequents([root]),
            passes: 0,
            counts: BTreeMap::new(),
            chains: BTreeMap::new(),
            ser_generated: BTreeSet::new(),
        };
        self.run(branch, 0)
    }

    fn finish_branch(&mut self, b: &Branch) {
        self.stats.branches += 1;
        for (rule, n) in &b.counts {
            let slot = self.stats.max_branch_counts.entry(*rule).or_default();
            *slot = (*slot).max(*n);
        }
        self.stats.max_branch_passes = self.stats.max_branch_passes.max(b.passes);
        if let Some(audit) = &mut self.audit {
            audit.absorb(b.summary.gamma.iter().chain(&b.summary.delta));
        }
    }

    /// Chooses the eigenlabel of an instance and applies the seriality and
    /// chain policies. `None` skips the instance.
    fn prepare(
        &mut self,
        b: &Branch,
        rule: RuleId,
        mut principal: Vec<Item>,
    ) -> Option<(Vec<Item>, Option<Label>)> {
        match rule {
            RuleId::Ser => {
                let Item::Rel(w, _) = &principal[0] else {
                    return None;
                };
                // A second successor is never needed: substituting an
                // existing one and contracting removes it.
                let has_successor = b
                    .seq
                    .ante()
                    .iter()
                    .any(|i| matches!(i, Item::Rel(u, _) if u == w));
                if has_successor || (self.options.serial_once && b.ser_generated.contains(w)) {
                    return None;
                }
                let w = w.clone();
                let v = self.fresh();
                principal[0] = Item::rel(&w, &v);
                Some((principal, Some(v)))
            }
            RuleId::RJust | RuleId::RBox => {
                if let (Some(cap), Item::Labeled(w, f)) = (self.chain_cap, &principal[0]) {
                    let used = b.chains.get(w).and_then(|m| m.get(f)).copied().unwrap_or(0);
                    if used >= cap {
                        self.capped = true;
                        return None;
                    }
                }
                let v = self.fresh();
                Some((principal, Some(v)))
            }
            RuleId::EQuery | RuleId::EBarQuery => {
                let used = [RuleId::EQuery, RuleId::EBarQuery]
                    .iter()
                    .map(|r| b.counts.get(r).copied().unwrap_or(0))
                    .sum::<usize>();
                if self.query_limit.is_some_and(|limit| used >= limit) {
                    self.query_blocked = true;
                    return None;
                }
                Some((principal, None))
            }
            _ => Some((principal, None)),
        }
    }

    /// Records an applied step on the branch state.
    fn record(&mut self, b: &mut Branch, step: &Step, premise: Sequent) {
        *b.counts.entry(step.rule).or_default() += 1;
        if let Some(v) = &step.eigenlabel {
            if let Some(audit) = &mut self.audit {
                audit.eigenlabels.insert(v.clone());
            }
            match step.rule {
                RuleId::Ser => {
                    b.ser_generated.insert(v.clone());
                }
                RuleId::RJust | RuleId::RBox if self.chain_cap.is_some() => {
                    if let Item::Labeled(w, f) = &step.principal[0] {
                        let mut inherited = b.chains.get(w).cloned().unwrap_or_default();
                        *inherited.entry(f.clone()).or_default() += 1;
                        b.chains.insert(v.clone(), inherited);
                    }
                }
                _ => {}
            }
        }
        b.summary.absorb(&premise);
        b.seq = premise;
    }

    /// Condition (dagger) over the whole branch: an item that was once in
    /// the antecedent is not added again, even after a rule consumed it.
    fn seen_on_branch(&self, b: &Branch, premises: &[Sequent]) -> bool {
        premises.iter().any(|p| {
            let (added, _) = p.minus(&b.seq);
            added.iter().any(|i| b.summary.gamma.contains(i))
        })
    }

    fn assemble(&self, start: Sequent, trail: Vec<Step>, top: Derivation) -> Derivation {
        let mut conclusions = Vec::with_capacity(trail.len());
        let mut seq = start;
        for step in &trail {
            let next = expected_premises(
                self.cfg,
                self.cs,
                step.rule,
                &seq,
                &step.principal,
                step.eigenlabel.as_ref(),
            )
            .expect("recorded steps replay")
            .swap_remove(0);
            conclusions.push(std::mem::replace(&mut seq, next));
        }
        trail
            .into_iter()
            .zip(conclusions)
            .rev()
            .fold(top, |above, (step, sequent)| Derivation {
                sequent,
                rule: Some(step.rule),
                principal: step.principal,
                eigenlabel: step.eigenlabel,
                premises: vec![above],
            })
    }

    fn exhausted(&self, b: &Branch) -> bool {
        b.passes > self.options.fuel
            || self.total_passes > self.options.max_total_passes
            || b.seq.len() > self.options.max_items
    }

    fn run(&mut self, mut b: Branch, mut stage: usize) -> BranchOutcome {
        let start = b.seq.clone();
        let mut trail: Vec<Step> = Vec::new();
        let mut idle = 0;
        let cfg = self.cfg;
        let cs = self.cs;
        loop {
            if let Some(leaf) = initial_leaf(cfg, &b.seq) {
                self.finish_branch(&b);
                return BranchOutcome::Closed(self.assemble(start, trail, leaf));
            }
            if self.stages.is_empty() || idle >= self.stages.len() {
                self.finish_branch(&b);
                return BranchOutcome::Open(b.summary);
            }
            b.passes += 1;
            self.total_passes += 1;
            self.stats.stage_passes += 1;
            if self.exhausted(&b) {
                self.finish_branch(&b);
                return BranchOutcome::Unknown(UnknownReason::Fuel);
            }
            let rule = self.stages[stage];
            let candidates = instance_principals(cs, rule, &b.seq, &self.universe);
            let mut changed = false;
            for principal in candidates {
                let Some((principal, eigenlabel)) = self.prepare(&b, rule, principal) else {
                    continue;
                };
                let Ok(premises) =
                    expected_premises(cfg, cs, rule, &b.seq, &principal, eigenlabel.as_ref())
                else {
                    continue;
                };
                if !consumes_principal(rule) && self.seen_on_branch(&b, &premises) {
                    continue;
                }
                let step = Step {
                    rule,
                    principal,
                    eigenlabel,
                };
                if is_branching(rule) {
                    return self.split(b, start, trail, step, premises, stage);
                }
                let premise = premises.into_iter().next().expect("one premise");
                self.record(&mut b, &step, premise);
                trail.push(step);
                changed = true;
                if initial_leaf(cfg, &b.seq).is_some() || b.seq.len() > self.options.max_items {
                    break;
                }
            }
            stage = (stage + 1) % self.stages.len();
            idle = if changed { 0 } else { idle + 1 };
        }
    }

    /// Applies a two-premise step and searches both premises from the same
    /// stage. An open premise wins over an unknown one.
    fn split(
        &mut self,
        b: Branch,
        start: Sequent,
        trail: Vec<Step>,
        step: Step,
        premises: Vec<Sequent>,
        stage: usize,
    ) -> BranchOutcome {
        let mut closed = Vec::new();
        let mut unknown = None;
        for premise in premises {
            let mut child = b.clone();
            self.record(&mut child, &step, premise);
            match self.run(child, stage) {
                BranchOutcome::Closed(d) => closed.push(d),
                BranchOutcome::Open(summary) => return BranchOutcome::Open(summary),
                BranchOutcome::Unknown(reason) => unknown = Some(reason),
            }
        }
        if let Some(reason) = unknown {
            return BranchOutcome::Unknown(reason);
        }
        let node = Derivation {
            sequent: b.seq,
            rule: Some(step.rule),
            principal: step.principal,
            eigenlabel: step.eigenlabel,
            premises: closed,
        };
        BranchOutcome::Closed(self.assemble(start, trail, node))
    }
}
