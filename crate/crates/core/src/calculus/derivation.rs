use std::fmt;

use serde::{Deserialize, Serialize};

use super::{DerivationFormatError, RuleInstance};
use crate::logic::RuleId;
use crate::syntax::{is_label_name, parse_item, parse_sequent, Item, Label, Sequent};

/// Position of a node: premise indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodePath(pub Vec<usize>);

impl NodePath {
    pub fn child(&self, index: usize) -> NodePath {
        let mut steps = self.0.clone();
        steps.push(index);
        NodePath(steps)
    }
}

impl fmt::Display for NodePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("/");
        }
        for i in &self.0 {
            write!(f, "/{i}")?;
        }
        Ok(())
    }
}

/// A finite tree of rule applications. Leaves carry an initial-sequent
/// rule; a leaf with `rule == None` is an open goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub sequent: Sequent,
    pub rule: Option<RuleId>,
    pub principal: Vec<Item>,
    pub eigenlabel: Option<Label>,
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn leaf(sequent: Sequent, rule: RuleId, principal: Item) -> Derivation {
        Derivation {
            sequent,
            rule: Some(rule),
            principal: vec![principal],
            eigenlabel: None,
            premises: Vec::new(),
        }
    }

    pub fn open(sequent: Sequent) -> Derivation {
        Derivation {
            sequent,
            rule: None,
            principal: Vec::new(),
            eigenlabel: None,
            premises: Vec::new(),
        }
    }

    /// A node for `instance` with the given subderivations of its premises.
    pub fn node(instance: RuleInstance, premises: Vec<Derivation>) -> Derivation {
        Derivation {
            sequent: instance.conclusion,
            rule: Some(instance.rule),
            principal: instance.principal,
            eigenlabel: instance.eigenlabel,
            premises,
        }
    }

    /// Maximum number of successive rule applications above the root;
    /// initial sequents have height 0.
    pub fn height(&self) -> usize {
        self.premises
            .iter()
            .map(|p| p.height() + 1)
            .max()
            .unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }

    /// Pre-order traversal with node paths.
    pub fn walk<'a>(&'a self, visit: &mut dyn FnMut(&NodePath, &'a Derivation)) {
        fn go<'a>(
            d: &'a Derivation,
            path: &mut Vec<usize>,
            visit: &mut dyn FnMut(&NodePath, &'a Derivation),
        ) {
            visit(&NodePath(path.clone()), d);
            for (i, p) in d.premises.iter().enumerate() {
                path.push(i);
                go(p, path, visit);
                path.pop();
            }
        }
        go(self, &mut Vec::new(), visit)
    }

    pub fn at(&self, path: &NodePath) -> Option<&Derivation> {
        path.0.iter().try_fold(self, |d, &i| d.premises.get(i))
    }

    /// Rules applied anywhere in the tree, in pre-order.
    pub fn rules(&self) -> Vec<RuleId> {
        let mut out = Vec::new();
        self.walk(&mut |_, d| out.extend(d.rule));
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(DerivationJson::from(self)).expect("derivation serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&DerivationJson::from(self)).expect("derivation serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Derivation, DerivationFormatError> {
        let raw: DerivationJson = serde_json::from_str(text)?;
        raw.try_into()
    }

    /// Indented text tree, root first.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        self.walk(&mut |path, d| {
            let indent = "  ".repeat(path.0.len());
            let rule = d.rule.map_or("open".to_string(), |r| r.name().to_string());
            let eigen = d
                .eigenlabel
                .as_ref()
                .map(|v| format!(" [{v}]"))
                .unwrap_or_default();
            out.push_str(&format!("{indent}{}   ({rule}){eigen}\n", d.sequent));
        });
        out
    }

    /// A `bussproofs` proof tree.
    pub fn render_latex(&self) -> String {
        fn go(d: &Derivation, out: &mut String) {
            for p in &d.premises {
                go(p, out);
            }
            if d.premises.is_empty() {
                out.push_str("\\AxiomC{}\n");
            }
            if let Some(rule) = d.rule {
                out.push_str(&format!("\\RightLabel{{$({})$}}\n", rule.latex()));
            }
            let command = match d.premises.len() {
                0 | 1 => "UnaryInfC",
                2 => "BinaryInfC",
                3 => "TrinaryInfC",
                4 => "QuaternaryInfC",
                _ => "QuinaryInfC",
            };
            out.push_str(&format!("\\{command}{{${}$}}\n", d.sequent.render_latex()));
        }
        let mut out = String::from("\\begin{prooftree}\n");
        go(self, &mut out);
        out.push_str("\\end{prooftree}\n");
        out
    }
}

/// The wire format: every sequent, item and label as a grammar string.
#[derive(Serialize, Deserialize)]
struct DerivationJson {
    sequent: String,
    rule: Option<String>,
    principal: Vec<String>,
    eigenlabel: Option<String>,
    premises: Vec<DerivationJson>,
}

impl From<&Derivation> for DerivationJson {
    fn from(d: &Derivation) -> DerivationJson {
        DerivationJson {
            sequent: d.sequent.to_string(),
            rule: d.rule.map(|r| r.name().to_string()),
            principal: d.principal.iter().map(Item::to_string).collect(),
            eigenlabel: d.eigenlabel.as_ref().map(|v| v.name().to_string()),
            premises: d.premises.iter().map(DerivationJson::from).collect(),
        }
    }
}

impl TryFrom<DerivationJson> for Derivation {
    type Error = DerivationFormatError;

    fn try_from(raw: DerivationJson) -> Result<Derivation, DerivationFormatError> {
        let sequent =
            parse_sequent(&raw.sequent).map_err(|source| DerivationFormatError::Parse {
                field: "sequent",
                text: raw.sequent.clone(),
                source,
            })?;
        let rule = raw
            .rule
            .map(|r| r.parse().map_err(|_| DerivationFormatError::UnknownRule(r)))
            .transpose()?;
        let principal = raw
            .principal
            .iter()
            .map(|text| {
                parse_item(text).map_err(|source| DerivationFormatError::Parse {
                    field: "principal",
                    text: text.clone(),
                    source,
                })
            })
            .collect::<Result<_, _>>()?;
        let eigenlabel = match raw.eigenlabel {
            Some(name) if is_label_name(&name) => Some(Label::new(&name)),
            Some(name) => return Err(DerivationFormatError::BadLabel(name)),
            None => None,
        };
        let premises = raw
            .premises
            .into_iter()
            .map(Derivation::try_from)
            .collect::<Result<_, _>>()?;
        Ok(Derivation {
            sequent,
            rule,
            principal,
            eigenlabel,
            premises,
        })
    }
}
