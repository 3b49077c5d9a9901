use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::formula::Formula;
use super::notation::Notation;
use super::term::Term;

/// A world label of the extended labeled language.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Arc<str>);

impl Label {
    pub fn new(name: &str) -> Label {
        Label(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// One member of either side of a labeled sequent.
///
/// The variant order gives the canonical item order used for
/// deterministic enumeration: labeled formulas, then relational atoms, then
/// evidence atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Item {
    /// `w |= A`
    Labeled(Label, Formula),
    /// `w R v`
    Rel(Label, Label),
    /// `w E(t,A)`
    Ev(Label, Term, Formula),
}

impl Item {
    pub fn labeled(w: &Label, a: Formula) -> Item {
        Item::Labeled(w.clone(), a)
    }

    pub fn rel(w: &Label, v: &Label) -> Item {
        Item::Rel(w.clone(), v.clone())
    }

    pub fn ev(w: &Label, t: Term, a: Formula) -> Item {
        Item::Ev(w.clone(), t, a)
    }

    pub fn labels(&self) -> Vec<&Label> {
        match self {
            Item::Labeled(w, _) | Item::Ev(w, _, _) => vec![w],
            Item::Rel(w, v) => vec![w, v],
        }
    }

    pub fn mentions(&self, label: &Label) -> bool {
        self.labels().into_iter().any(|l| l == label)
    }

    /// Replaces every occurrence of label `from` by `to`.
    pub fn rename(&self, from: &Label, to: &Label) -> Item {
        let swap = |l: &Label| if l == from { to.clone() } else { l.clone() };
        match self {
            Item::Labeled(w, a) => Item::Labeled(swap(w), a.clone()),
            Item::Rel(w, v) => Item::Rel(swap(w), swap(v)),
            Item::Ev(w, t, a) => Item::Ev(swap(w), t.clone(), a.clone()),
        }
    }
}

impl Item {
    /// Math-mode LaTeX rendering.
    pub fn render_latex(&self) -> String {
        let nt = &Notation::LATEX;
        match self {
            Item::Labeled(w, a) => format!("{w} \\Vdash {}", a.render(nt)),
            Item::Rel(w, v) => format!("{w} R {v}"),
            Item::Ev(w, t, a) => format!("{w} E({},{})", t.render(nt), a.render(nt)),
        }
    }
}

impl fmt::Display for Item {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Item::Labeled(w, a) => write!(f, "{w} |= {a}"),
            Item::Rel(w, v) => write!(f, "{w} R {v}"),
            Item::Ev(w, t, a) => write!(f, "{w} E({t},{a})"),
        }
    }
}

/// Which side of a sequent an item lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Ante,
    Succ,
}

/// A labeled sequent `Gamma => Delta` over multisets of items.
///
/// Both sides are kept sorted, so derived equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequent {
    ante: Vec<Item>,
    succ: Vec<Item>,
}

impl Sequent {
    pub fn new(mut ante: Vec<Item>, mut succ: Vec<Item>) -> Sequent {
        ante.sort();
        succ.sort();
        Sequent { ante, succ }
    }

    /// The sequent `=> w |= A`.
    pub fn goal(w: &Label, a: Formula) -> Sequent {
        Sequent::new(vec![], vec![Item::labeled(w, a)])
    }

    pub fn ante(&self) -> &[Item] {
        &self.ante
    }

    pub fn succ(&self) -> &[Item] {
        &self.succ
    }

    pub fn side(&self, side: Side) -> &[Item] {
        match side {
            Side::Ante => &self.ante,
            Side::Succ => &self.succ,
        }
    }

    pub fn contains(&self, side: Side, item: &Item) -> bool {
        self.side(side).binary_search(item).is_ok()
    }

    pub fn count(&self, side: Side, item: &Item) -> usize {
        let items = self.side(side);
        let start = items.partition_point(|i| i < item);
        items[start..].iter().take_while(|i| *i == item).count()
    }

    pub fn insert(&mut self, side: Side, item: Item) {
        let items = match side {
            Side::Ante => &mut self.ante,
            Side::Succ => &mut self.succ,
        };
        let at = items.partition_point(|i| i <= &item);
        items.insert(at, item);
    }

    /// Removes one occurrence of `item`; returns false if it was absent.
    pub fn remove(&mut self, side: Side, item: &Item) -> bool {
        let items = match side {
            Side::Ante => &mut self.ante,
            Side::Succ => &mut self.succ,
        };
        match items.binary_search(item) {
            Ok(at) => {
                items.remove(at);
                true
            }
            Err(_) => false,
        }
    }

    /// Removes every occurrence of `item` from both sides.
    pub fn remove_all(&mut self, item: &Item) {
        self.ante.retain(|i| i != item);
        self.succ.retain(|i| i != item);
    }

    pub fn len(&self) -> usize {
        self.ante.len() + self.succ.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ante.is_empty() && self.succ.is_empty()
    }

    pub fn items(&self) -> impl Iterator<Item = (Side, &Item)> {
        self.ante
            .iter()
            .map(|i| (Side::Ante, i))
            .chain(self.succ.iter().map(|i| (Side::Succ, i)))
    }

    pub fn labels(&self) -> BTreeSet<Label> {
        self.items()
            .flat_map(|(_, i)| i.labels().into_iter().cloned())
            .collect()
    }

    pub fn rename(&self, from: &Label, to: &Label) -> Sequent {
        Sequent::new(
            self.ante.iter().map(|i| i.rename(from, to)).collect(),
            self.succ.iter().map(|i| i.rename(from, to)).collect(),
        )
    }

    /// Multiset difference `self - other`, per side.
    pub fn minus(&self, other: &Sequent) -> (Vec<Item>, Vec<Item>) {
        (
            multiset_minus(&self.ante, &other.ante),
            multiset_minus(&self.succ, &other.succ),
        )
    }
}

/// Multiset difference of two sorted slices.
fn multiset_minus(a: &[Item], b: &[Item]) -> Vec<Item> {
    let mut out = Vec::new();
    let mut j = 0;
    for item in a {
        while j < b.len() && &b[j] < item {
            j += 1;
        }
        if j < b.len() && &b[j] == item {
            j += 1;
        } else {
            out.push(item.clone());
        }
    }
    out
}

impl Sequent {
    /// Math-mode LaTeX rendering.
    pub fn render_latex(&self) -> String {
        let side = |items: &[Item]| {
            items
                .iter()
                .map(Item::render_latex)
                .collect::<Vec<_>>()
                .join(", ")
        };
        format!("{} \\Rightarrow {}", side(&self.ante), side(&self.succ))
            .trim()
            .to_string()
    }
}

fn join(items: &[Item]) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.ante.is_empty(), self.succ.is_empty()) {
            (true, true) => write!(f, "=>"),
            (true, false) => write!(f, "=> {}", join(&self.succ)),
            (false, true) => write!(f, "{} =>", join(&self.ante)),
            (false, false) => write!(f, "{} => {}", join(&self.ante), join(&self.succ)),
        }
    }
}
