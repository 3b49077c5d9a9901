use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::ModelError;
use crate::logic::LogicConfig;
use crate::syntax::{is_label_name, parse_formula, parse_term, Formula, Label, Sequent, Term};

/// A finite Fitting model given by its possible evidence function; the
/// admissible evidence function is the closure computed by [`super::Evaluator`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FittingModel {
    pub worlds: BTreeSet<Label>,
    pub rel: BTreeSet<(Label, Label)>,
    pub base_evidence: BTreeMap<(Term, Formula), BTreeSet<Label>>,
    pub valuation: BTreeMap<String, BTreeSet<Label>>,
    pub logic: LogicConfig,
}

/// Maps sequent labels to worlds.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Interpretation(pub BTreeMap<Label, Label>);

impl Interpretation {
    pub fn identity(labels: impl IntoIterator<Item = Label>) -> Interpretation {
        Interpretation(labels.into_iter().map(|l| (l.clone(), l)).collect())
    }

    pub fn get(&self, label: &Label) -> Result<&Label, ModelError> {
        self.0
            .get(label)
            .ok_or_else(|| ModelError::Uninterpreted(label.clone()))
    }
}

impl FittingModel {
    pub fn new(logic: LogicConfig) -> FittingModel {
        FittingModel {
            worlds: BTreeSet::new(),
            rel: BTreeSet::new(),
            base_evidence: BTreeMap::new(),
            valuation: BTreeMap::new(),
            logic,
        }
    }

    pub fn add_world(&mut self, w: &Label) {
        self.worlds.insert(w.clone());
    }

    pub fn relate(&mut self, w: &Label, v: &Label) {
        self.add_world(w);
        self.add_world(v);
        self.rel.insert((w.clone(), v.clone()));
    }

    pub fn add_evidence(&mut self, w: &Label, t: Term, a: Formula) {
        self.add_world(w);
        self.base_evidence
            .entry((t, a))
            .or_default()
            .insert(w.clone());
    }

    pub fn set_true(&mut self, w: &Label, prop: &str) {
        self.add_world(w);
        self.valuation
            .entry(prop.to_string())
            .or_default()
            .insert(w.clone());
    }

    /// Identity interpretation over the labels of `s`, which must all be
    /// worlds.
    pub fn identity_for(&self, s: &Sequent) -> Result<Interpretation, ModelError> {
        let labels = s.labels();
        if let Some(missing) = labels.iter().find(|l| !self.worlds.contains(*l)) {
            return Err(ModelError::UnknownWorld(missing.clone()));
        }
        Ok(Interpretation::identity(labels))
    }

    /// Checks that every world mentioned by the relation, evidence and
    /// valuation is declared.
    pub fn well_formed(&self) -> Result<(), ModelError> {
        let mentioned = self
            .rel
            .iter()
            .flat_map(|(w, v)| [w, v])
            .chain(self.base_evidence.values().flatten())
            .chain(self.valuation.values().flatten());
        for w in mentioned {
            if !self.worlds.contains(w) {
                return Err(ModelError::UnknownWorld(w.clone()));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(ModelJson::from(self)).expect("model serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&ModelJson::from(self)).expect("model serializes")
    }

    pub fn from_json_str(text: &str) -> Result<FittingModel, ModelError> {
        let raw: ModelJson =
            serde_json::from_str(text).map_err(|e| ModelError::Json(e.to_string()))?;
        FittingModel::try_from(raw)
    }
}

#[derive(Serialize, Deserialize)]
struct EvidenceJson {
    term: String,
    formula: String,
    worlds: Vec<String>,
}

#[derive(Serialize, Deserialize)]
struct ModelJson {
    worlds: Vec<String>,
    rel: Vec<(String, String)>,
    evidence: Vec<EvidenceJson>,
    valuation: BTreeMap<String, Vec<String>>,
    logic: String,
}

fn names<'a>(labels: impl IntoIterator<Item = &'a Label>) -> Vec<String> {
    labels.into_iter().map(|l| l.name().to_string()).collect()
}

impl From<&FittingModel> for ModelJson {
    fn from(m: &FittingModel) -> ModelJson {
        ModelJson {
            worlds: names(&m.worlds),
            rel: m
                .rel
                .iter()
                .map(|(w, v)| (w.name().to_string(), v.name().to_string()))
                .collect(),
            evidence: m
                .base_evidence
                .iter()
                .filter(|(_, ws)| !ws.is_empty())
                .map(|((t, a), ws)| EvidenceJson {
                    term: t.to_string(),
                    formula: a.to_string(),
                    worlds: names(ws),
                })
                .collect(),
            valuation: m
                .valuation
                .iter()
                .map(|(p, ws)| (p.clone(), names(ws)))
                .collect(),
            logic: m.logic.name(),
        }
    }
}

fn label(name: &str) -> Result<Label, ModelError> {
    if is_label_name(name) {
        Ok(Label::new(name))
    } else {
        Err(ModelError::Json(format!("`{name}` is not a label")))
    }
}

fn labels(names: &[String]) -> Result<BTreeSet<Label>, ModelError> {
    names.iter().map(|n| label(n)).collect()
}

impl TryFrom<ModelJson> for FittingModel {
    type Error = ModelError;

    fn try_from(raw: ModelJson) -> Result<FittingModel, ModelError> {
        let logic: LogicConfig = raw
            .logic
            .parse()
            .map_err(|e: crate::logic::LogicError| ModelError::Logic(e.to_string()))?;
        let mut m = FittingModel::new(logic);
        m.worlds = labels(&raw.worlds)?;
        for (w, v) in &raw.rel {
            m.rel.insert((label(w)?, label(v)?));
        }
        for ev in &raw.evidence {
            let t = parse_term(&ev.term).map_err(|source| ModelError::Parse {
                field: "term",
                text: ev.term.clone(),
                source,
            })?;
            let a = parse_formula(&ev.formula).map_err(|source| ModelError::Parse {
                field: "formula",
                text: ev.formula.clone(),
                source,
            })?;
            m.base_evidence
                .entry((t, a))
                .or_default()
                .extend(labels(&ev.worlds)?);
        }
        for (p, ws) in &raw.valuation {
            m.valuation.insert(p.clone(), labels(ws)?);
        }
        m.well_formed()?;
        Ok(m)
    }
}
