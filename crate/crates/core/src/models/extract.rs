use std::collections::BTreeSet;

use super::{check_conditions, EvidenceUniverse, FittingModel, ModelError};
use crate::logic::{ConstantSpec, LogicConfig};
use crate::syntax::{Formula, Item, Sequent};

/// The unions of antecedents and succedents along an open branch.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BranchSummary {
    pub gamma: BTreeSet<Item>,
    pub delta: BTreeSet<Item>,
}

impl BranchSummary {
    pub fn from_sequents<'a>(branch: impl IntoIterator<Item = &'a Sequent>) -> BranchSummary {
        let mut summary = BranchSummary::default();
        for s in branch {
            summary.absorb(s);
        }
        summary
    }

    pub fn absorb(&mut self, s: &Sequent) {
        self.gamma.extend(s.ante().iter().cloned());
        self.delta.extend(s.succ().iter().cloned());
    }
}

/// Reads a model off a saturated branch and confirms it refutes `root`.
///
/// In serial frames, worlds left without a successor get a loop.
pub fn extract_countermodel(
    branch: &BranchSummary,
    root: &Sequent,
    cfg: &LogicConfig,
    cs: &ConstantSpec,
) -> Result<FittingModel, ModelError> {
    let mut m = FittingModel::new(*cfg);
    for item in branch.gamma.iter().chain(&branch.delta) {
        for w in item.labels() {
            m.add_world(w);
        }
    }
    for item in &branch.gamma {
        match item {
            Item::Rel(w, v) => m.relate(w, v),
            Item::Ev(w, t, a) => m.add_evidence(w, t.clone(), a.clone()),
            Item::Labeled(w, Formula::Prop(p)) => m.set_true(w, p),
            Item::Labeled(..) => {}
        }
    }
    // Search only adds atoms for constants of the root; the rest cannot
    // change what the root's formulas mean.
    let worlds: Vec<_> = m.worlds.iter().cloned().collect();
    for (c, f) in cs.evidence_pairs() {
        for w in &worlds {
            m.add_evidence(w, c.clone(), f.clone());
        }
    }
    if cfg.frame_axioms().d && !cfg.is_fk() {
        let dead: Vec<_> = m
            .worlds
            .iter()
            .filter(|w| !m.rel.iter().any(|(u, _)| u == *w))
            .cloned()
            .collect();
        for w in dead {
            m.relate(&w, &w);
        }
    }
    let interp = m.identity_for(root)?;
    if m.validates_sequent(&interp, root)? {
        return Err(ModelError::NotACountermodel(format!(
            "the model validates `{root}`"
        )));
    }
    let universe = EvidenceUniverse::for_sequent(&m, cs, root);
    let report = check_conditions(&m, cs, &universe);
    if let Some(v) = report.violations.first() {
        return Err(ModelError::NotACountermodel(v.to_string()));
    }
    Ok(m)
}
