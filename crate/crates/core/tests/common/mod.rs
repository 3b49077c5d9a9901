//! Helpers shared by the integration tests: a seeded random corpus and
//! small oracles.

#![allow(dead_code)]

use std::collections::BTreeMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use jseq::logic::{ConstantSpec, LogicConfig};
use jseq::models::{FittingModel, Interpretation};
use jseq::syntax::{parse_formula, Formula, Item, Label, Sequent, Term};

pub const VARIABLES: [&str; 3] = ["x", "y", "z"];
pub const PROPS: [&str; 2] = ["P", "Q"];

/// The logics whose search must always terminate.
pub const TERMINATING: [&str; 9] = ["J", "JT", "LP", "K", "T", "S4", "KJ", "TJT", "S4LP"];

pub fn logic(name: &str) -> LogicConfig {
    name.parse().expect("known logic")
}

pub fn formula(text: &str) -> Formula {
    parse_formula(text).expect("formula parses")
}

#[derive(Clone, Debug)]
pub struct CorpusItem {
    pub sequent: Sequent,
    pub cs: ConstantSpec,
}

/// Operators allowed by the language of a logic.
#[derive(Clone, Copy, Debug)]
struct Language {
    terms: bool,
    boxes: bool,
    bang: bool,
}

impl Language {
    fn of(cfg: &LogicConfig) -> Language {
        Language {
            terms: cfg.has_justifications(),
            boxes: cfg.modal_enabled(),
            bang: cfg.justification.four,
        }
    }
}

struct Generator<'r> {
    rng: &'r mut StdRng,
    lang: Language,
    constants: Vec<String>,
}

impl Generator<'_> {
    fn atom_term(&mut self) -> Term {
        if !self.constants.is_empty() && self.rng.gen_bool(0.2) {
            let i = self.rng.gen_range(0..self.constants.len());
            Term::constant(&self.constants[i])
        } else {
            Term::var(VARIABLES[self.rng.gen_range(0..VARIABLES.len())])
        }
    }

    fn term(&mut self) -> Term {
        let choice = self.rng.gen_range(0..10);
        match choice {
            0 | 1 => Term::sum(self.atom_term(), self.atom_term()),
            2 | 3 => Term::app(self.atom_term(), self.atom_term()),
            4 if self.lang.bang => Term::bang(self.atom_term()),
            _ => self.atom_term(),
        }
    }

    fn formula(&mut self, depth: usize) -> Formula {
        if depth == 0 || self.rng.gen_bool(0.2) {
            return if self.rng.gen_bool(0.05) {
                Formula::Bottom
            } else {
                Formula::prop(PROPS[self.rng.gen_range(0..PROPS.len())])
            };
        }
        loop {
            let f = match self.rng.gen_range(0..8) {
                0 => Formula::neg(self.formula(depth - 1)),
                1 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
                2 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
                3 | 4 => Formula::imp(self.formula(depth - 1), self.formula(depth - 1)),
                5 | 6 if self.lang.terms => Formula::just(self.term(), self.formula(depth - 1)),
                5..=7 if self.lang.boxes => Formula::nec(self.formula(depth - 1)),
                _ => continue,
            };
            return f;
        }
    }
}

/// A constant specification pool: instances of axioms every logic with
/// justifications has, plus jT for reflexive ones.
fn cs_pool(cfg: &LogicConfig) -> Vec<&'static str> {
    let mut pool = vec![
        "P -> Q -> P",
        "x:P -> (x+y):P",
        "x:(P -> Q) -> y:P -> (x*y):Q",
    ];
    if cfg.justification.t {
        pool.push("x:P -> P");
    }
    pool
}

/// `n` random sequents for `cfg`: formula depth at most 3, at most two
/// labels, the variables x, y, z and at most two constant specification
/// entries.
pub fn corpus(cfg: &LogicConfig, n: usize, seed: u64) -> Vec<CorpusItem> {
    let mut rng = StdRng::seed_from_u64(seed);
    let lang = Language::of(cfg);
    (0..n)
        .map(|_| {
            let mut entries = Vec::new();
            if lang.terms {
                let pool = cs_pool(cfg);
                let k = rng.gen_range(0..=2);
                for i in 0..k {
                    let body = formula(pool[rng.gen_range(0..pool.len())]);
                    entries.push(Formula::just(Term::constant(&format!("c{}", i + 1)), body));
                }
            }
            let cs = ConstantSpec::new(entries);
            let constants = (1..=cs.len()).map(|i| format!("c{i}")).collect();
            let mut g = Generator {
                rng: &mut rng,
                lang,
                constants,
            };
            let w = Label::new("w");
            let v = Label::new("v");
            let two = g.rng.gen_bool(0.4);
            let mut ante = Vec::new();
            let mut succ = Vec::new();
            if two {
                ante.push(Item::rel(&w, &v));
            }
            let pick = |g: &mut Generator| {
                if two && g.rng.gen_bool(0.5) {
                    v.clone()
                } else {
                    w.clone()
                }
            };
            for _ in 0..g.rng.gen_range(0..=1) {
                let at = pick(&mut g);
                let d = g.rng.gen_range(1..=2);
                ante.push(Item::labeled(&at, g.formula(d)));
            }
            for _ in 0..g.rng.gen_range(1..=2) {
                let at = pick(&mut g);
                succ.push(Item::labeled(&at, g.formula(3)));
            }
            CorpusItem {
                sequent: Sequent::new(ante, succ),
                cs,
            }
        })
        .collect()
}

/// Every map from the labels of `s` into the worlds of `m`.
pub fn interpretations(m: &FittingModel, s: &Sequent) -> Vec<Interpretation> {
    let labels: Vec<Label> = s.labels().into_iter().collect();
    let worlds: Vec<Label> = m.worlds.iter().cloned().collect();
    let mut out = vec![BTreeMap::new()];
    for l in &labels {
        out = out
            .into_iter()
            .flat_map(|partial: BTreeMap<Label, Label>| {
                worlds.iter().map(move |w| {
                    let mut next = partial.clone();
                    next.insert(l.clone(), w.clone());
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Interpretation).collect()
}
