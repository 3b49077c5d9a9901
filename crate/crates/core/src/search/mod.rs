//! Backward proof search producing derivations or verified countermodels.

mod budget;
mod engine;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

pub use budget::{compute_budgets, BoundGroup, SearchBudget, DEFAULT_FUEL};

use crate::calculus::{check_derivation, trim_unused, Derivation};
use crate::logic::{stages_for_logic, ConstantSpec, LogicConfig, RuleId};
use crate::models::{extract_countermodel, FittingModel};
use crate::syntax::{Formula, Item, Label, Sequent, Term};
use engine::{BranchOutcome, Engine};

/// Environment variable overriding the default fuel.
pub const FUEL_ENV: &str = "JSEQ_FUEL";

/// Why the search gave no answer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum UnknownReason {
    /// A branch used up its stage passes or grew past the item limit.
    Fuel,
    /// A branch saturated in a logic whose saturated branches are not known
    /// to give countermodels.
    IncompleteFragment,
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            UnknownReason::Fuel => "fuel",
            UnknownReason::IncompleteFragment => "incomplete-fragment",
        })
    }
}

#[derive(Clone, Debug)]
pub enum SearchResult {
    Derivable(Derivation),
    NotDerivable(Box<FittingModel>),
    Unknown(UnknownReason),
}

impl SearchResult {
    pub fn is_derivable(&self) -> bool {
        matches!(self, SearchResult::Derivable(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, SearchResult::Unknown(_))
    }

    pub fn countermodel(&self) -> Option<&FittingModel> {
        match self {
            SearchResult::NotDerivable(m) => Some(m),
            _ => None,
        }
    }

    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            SearchResult::Derivable(d) => Some(d),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Stage passes per branch.
    pub fuel: usize,
    /// Never apply (Ser) to labels that (Ser) created. Without this flag
    /// (Ser) still only fires at labels that have no successor.
    pub serial_once: bool,
    /// Largest sequent a branch may reach before it counts as out of fuel.
    pub max_items: usize,
    /// Stage passes over the whole tree.
    pub max_total_passes: usize,
    /// Times the chain cap is doubled when a capped branch fails to give a
    /// countermodel.
    pub chain_retries: usize,
    /// Largest number of (E?) and (E??) splits per branch. The search
    /// deepens this limit from zero.
    pub max_query_splits: usize,
    /// Collect a [`SearchAudit`] of every branch.
    pub audit: bool,
}

impl Default for SearchOptions {
    fn default() -> SearchOptions {
        SearchOptions {
            fuel: DEFAULT_FUEL,
            serial_once: false,
            max_items: 4_000,
            max_total_passes: 1_000_000,
            chain_retries: 3,
            max_query_splits: 8,
            audit: false,
        }
    }
}

impl SearchOptions {
    /// Defaults, with the fuel taken from `JSEQ_FUEL` when it is set.
    pub fn from_env() -> SearchOptions {
        let fuel = std::env::var(FUEL_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_FUEL);
        SearchOptions {
            fuel,
            ..SearchOptions::default()
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub stage_passes: usize,
    pub branches: usize,
    pub labels_created: usize,
    pub max_branch_passes: usize,
    /// Largest number of applications of each rule on a single branch.
    pub max_branch_counts: BTreeMap<RuleId, usize>,
    pub chain_cap: Option<usize>,
}

/// Everything that appeared on any branch of the last reduction tree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchAudit {
    pub labels: BTreeSet<Label>,
    pub eigenlabels: BTreeSet<Label>,
    pub labeled: BTreeSet<(Label, Formula)>,
    pub evidence_terms: BTreeSet<Term>,
}

impl SearchAudit {
    fn absorb<'a>(&mut self, items: impl IntoIterator<Item = &'a Item>) {
        for item in items {
            self.labels.extend(item.labels().into_iter().cloned());
            match item {
                Item::Labeled(w, a) => {
                    self.labeled.insert((w.clone(), a.clone()));
                }
                Item::Ev(_, t, _) => {
                    self.evidence_terms.insert(t.clone());
                }
                Item::Rel(..) => {}
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchReport {
    pub result: SearchResult,
    pub budget: SearchBudget,
    pub stats: SearchStats,
    pub audit: Option<SearchAudit>,
}

impl SearchReport {
    /// Per-branch bounds exceeded during the search.
    pub fn exceeded_bounds(&self, cfg: &LogicConfig) -> Vec<(BoundGroup, usize, usize)> {
        self.budget.exceeded(cfg, &self.stats.max_branch_counts)
    }
}

const SEARCH_STACK: usize = 512 * 1024 * 1024;

/// Per-branch fuel at query limit zero when the query limit is still being
/// deepened. It doubles with each level; the last level gets the full fuel.
const QUERY_LEVEL_FUEL: usize = 32;

/// Runs the reduction tree on `root` with the budgets computed from it.
pub fn search(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    root: &Sequent,
    options: &SearchOptions,
) -> SearchReport {
    let mut budget = compute_budgets(cfg, cs, root);
    budget.fuel = options.fuel;
    search_with_budget(cfg, cs, root, budget, options)
}

/// Runs the reduction tree with an explicit budget.
pub fn search_with_budget(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    root: &Sequent,
    budget: SearchBudget,
    options: &SearchOptions,
) -> SearchReport {
    let options = SearchOptions {
        fuel: budget.fuel,
        ..options.clone()
    };
    let (cfg, cs, root) = (*cfg, cs.clone(), root.clone());
    std::thread::scope(|scope| {
        std::thread::Builder::new()
            .name("jseq-search".into())
            .stack_size(SEARCH_STACK)
            .spawn_scoped(scope, || run_search(&cfg, &cs, &root, budget, &options))
            .expect("spawn search thread")
            .join()
            .expect("search thread panicked")
    })
}

fn run_search(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    root: &Sequent,
    budget: SearchBudget,
    options: &SearchOptions,
) -> SearchReport {
    let stages = stages_for_logic(cfg);
    let queries = stages.contains(&RuleId::EQuery) || stages.contains(&RuleId::EBarQuery);
    let mut query_limit = queries.then_some(0);
    let mut cap = budget.chain_cap;
    let mut attempt = 0;
    loop {
        let mut level = options.clone();
        let starved = match query_limit {
            Some(limit) if limit < options.max_query_splits => {
                level.fuel = options.fuel.min(QUERY_LEVEL_FUEL << limit);
                level.fuel < options.fuel
            }
            _ => false,
        };
        let mut engine = Engine::new(cfg, cs, root, &level, cap, query_limit);
        let outcome = engine.run_root(root);
        let mut stats = engine.stats.clone();
        stats.chain_cap = cap;
        if let Some(limit) = query_limit {
            let retry = match outcome {
                BranchOutcome::Closed(_) => false,
                BranchOutcome::Unknown(UnknownReason::Fuel) => engine.query_blocked || starved,
                _ => engine.query_blocked,
            };
            if retry && limit < options.max_query_splits {
                query_limit = Some(limit + 1);
                continue;
            }
        }
        let result = match outcome {
            BranchOutcome::Closed(d) => {
                let d = trim_unused(&d);
                if let Err(e) = check_derivation(cfg, cs, &d) {
                    panic!("search built a derivation the checker rejects: {e}");
                }
                SearchResult::Derivable(d)
            }
            BranchOutcome::Unknown(reason) => SearchResult::Unknown(reason),
            BranchOutcome::Open(_) if !cfg.countermodel_supported() => {
                SearchResult::Unknown(UnknownReason::IncompleteFragment)
            }
            BranchOutcome::Open(summary) => match extract_countermodel(&summary, root, cfg, cs) {
                Ok(m) => SearchResult::NotDerivable(Box::new(m)),
                Err(_) if engine.capped && attempt < options.chain_retries => {
                    attempt += 1;
                    cap = cap.map(|c| 2 * c);
                    continue;
                }
                Err(_) => SearchResult::Unknown(UnknownReason::IncompleteFragment),
            },
        };
        return SearchReport {
            result,
            budget,
            stats,
            audit: engine.audit.take(),
        };
    }
}
