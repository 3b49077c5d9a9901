//! Counts and bounds for the reduction tree of a root sequent.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::logic::{ConstantSpec, LogicConfig, RuleId};
use crate::syntax::measures::{operator_counts, polarity_counts};
use crate::syntax::{Item, Sequent};

/// Measures of the root sequent together with the search limits derived
/// from them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    /// Labels in the root.
    pub l: usize,
    /// Relational atoms in the root antecedent.
    pub r: usize,
    /// Evidence atoms in the root antecedent.
    pub e: usize,
    pub n_colon: usize,
    pub p_colon: usize,
    pub n_box: usize,
    pub p_box: usize,
    pub n_plus: usize,
    pub n_dot: usize,
    pub n_bang: usize,
    pub cs_size: usize,
    /// Stage passes allowed per branch.
    pub fuel: usize,
    /// Applications of (R:) or (R[]) allowed per formula along a chain of
    /// eigenlabels; `None` when the frame needs no such cap.
    pub chain_cap: Option<usize>,
}

pub const DEFAULT_FUEL: usize = 10_000;

/// Fills every count of [`SearchBudget`] from `root` and `cs`.
pub fn compute_budgets(cfg: &LogicConfig, cs: &ConstantSpec, root: &Sequent) -> SearchBudget {
    let pc = polarity_counts(root);
    let (n_plus, n_dot, n_bang) = operator_counts(root);
    let count = |f: fn(&Item) -> bool| root.ante().iter().filter(|i| f(i)).count();
    let frame = cfg.frame_axioms();
    SearchBudget {
        l: root.labels().len(),
        r: count(|i| matches!(i, Item::Rel(..))),
        e: count(|i| matches!(i, Item::Ev(..))),
        n_colon: pc.n_colon,
        p_colon: pc.p_colon,
        n_box: pc.n_box,
        p_box: pc.p_box,
        n_plus,
        n_dot,
        n_bang,
        cs_size: cs.evidence_pairs().len(),
        fuel: DEFAULT_FUEL,
        chain_cap: (frame.four || frame.five).then_some(pc.n_colon + pc.n_box + 1),
    }
}

/// A group of rules whose applications on one branch share a bound.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct BoundGroup(pub Vec<RuleId>);

impl SearchBudget {
    /// Upper bounds on rule applications per branch, for the logics whose
    /// termination argument gives explicit numbers: J, JT, LP and their
    /// modal counterparts KJ, TJT, S4LP.
    pub fn branch_bounds(&self, cfg: &LogicConfig) -> Vec<(BoundGroup, usize)> {
        use RuleId::*;
        let j = cfg.justification;
        let frame = cfg.frame_axioms();
        let supported = !j.d
            && !j.b
            && !j.five
            && !frame.d
            && !frame.b
            && !frame.five
            && !cfg.s4lpn_extras
            && cfg.has_justifications()
            && (frame.four == j.four);
        if !supported || (frame.four && !frame.t) {
            return Vec::new();
        }
        let n = self.n_colon + self.n_box;
        let p = self.p_colon + self.p_box;
        let (r, l, e, cs) = (self.r, self.l, self.e, self.cs_size);
        let mut out = Vec::new();
        let group = |rules: &[RuleId]| BoundGroup(rules.to_vec());
        let right = if frame.four { p * (n + 1) } else { p };
        out.push((group(&[RJust, RBox]), right));
        let left = if frame.four {
            n * (p * (n + 1) + r + l + p)
        } else if frame.t {
            n * (2 * p + r + l)
        } else {
            n * (p + r)
        };
        out.push((group(&[LJust, LBox]), left));
        out.push((group(&[E]), self.n_colon));
        if frame.four {
            out.push((group(&[AN]), cs * (right + l)));
        } else {
            out.push((group(&[IAN]), cs * (p + l)));
            let atoms = e + self.n_colon + cs * (p + l);
            out.push((group(&[ELeftSum]), self.n_plus * atoms));
            out.push((group(&[ERightSum]), self.n_plus * atoms));
            out.push((group(&[EApp]), self.n_dot * atoms));
        }
        if frame.t && !frame.four {
            out.push((group(&[Ref]), l + p));
        }
        out
    }

    /// Bounds exceeded by the given per-branch application counts.
    pub fn exceeded(
        &self,
        cfg: &LogicConfig,
        counts: &BTreeMap<RuleId, usize>,
    ) -> Vec<(BoundGroup, usize, usize)> {
        self.branch_bounds(cfg)
            .into_iter()
            .filter_map(|(g, bound)| {
                let used: usize =
                    g.0.iter()
                        .map(|r| counts.get(r).copied().unwrap_or(0))
                        .sum();
                (used > bound).then_some((g, used, bound))
            })
            .collect()
    }
}
