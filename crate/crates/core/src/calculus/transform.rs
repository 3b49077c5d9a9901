//! Derivation transformations: label substitution, generalized initial
//! sequents, and removal of unused or superfluous steps.

use std::collections::BTreeSet;

use super::derivation::NodePath;
use super::kernel::{expected_premises, is_initial, RuleInstance};
use super::{check_derivation, Derivation, PruneError, RuleError};
use crate::logic::{rules_for_logic, ConstantSpec, LogicConfig, RuleId};
use crate::syntax::measures::sub_tm;
use crate::syntax::{Formula, Item, Label, Sequent, Side, Term};

fn all_labels(d: &Derivation) -> BTreeSet<Label> {
    let mut out = BTreeSet::new();
    d.walk(&mut |_, node| {
        out.extend(node.sequent.labels());
        out.extend(node.eigenlabel.iter().cloned());
    });
    out
}

fn fresh_label(taken: &BTreeSet<Label>, stem: &str) -> Label {
    (1..)
        .map(|i| Label::new(&format!("{stem}{i}")))
        .find(|l| !taken.contains(l))
        .expect("labels are unbounded")
}

fn rename_all(d: &Derivation, from: &Label, to: &Label) -> Derivation {
    let swap = |l: &Label| if l == from { to.clone() } else { l.clone() };
    Derivation {
        sequent: d.sequent.rename(from, to),
        rule: d.rule,
        principal: d.principal.iter().map(|i| i.rename(from, to)).collect(),
        eigenlabel: d.eigenlabel.as_ref().map(swap),
        premises: d.premises.iter().map(|p| rename_all(p, from, to)).collect(),
    }
}

/// Renames eigenlabels in `clash` to labels unused anywhere in the tree.
fn freshen_eigenlabels(
    d: &Derivation,
    clash: &BTreeSet<Label>,
    taken: &mut BTreeSet<Label>,
) -> Derivation {
    let mut node = d.clone();
    if let Some(v) = d.eigenlabel.as_ref().filter(|v| clash.contains(*v)) {
        let f = fresh_label(taken, "u");
        taken.insert(f.clone());
        node.eigenlabel = Some(f.clone());
        node.principal = d.principal.iter().map(|i| i.rename(v, &f)).collect();
        node.premises = d.premises.iter().map(|p| rename_all(p, v, &f)).collect();
    }
    node.premises = node
        .premises
        .iter()
        .map(|p| freshen_eigenlabels(p, clash, taken))
        .collect();
    node
}

/// Replaces every occurrence of `w` by `v`. Eigenlabels equal to `v` or
/// `w` are renamed apart first, so the result stays a derivation of the
/// same height.
pub fn substitute_label(d: &Derivation, v: &Label, w: &Label) -> Derivation {
    if v == w {
        return d.clone();
    }
    let mut taken = all_labels(d);
    taken.insert(v.clone());
    let clash: BTreeSet<Label> = [v.clone(), w.clone()].into_iter().collect();
    let fresh = freshen_eigenlabels(d, &clash, &mut taken);
    rename_all(&fresh, w, v)
}

fn apply(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    rule: RuleId,
    s: &Sequent,
    principal: Vec<Item>,
    eigenlabel: Option<Label>,
) -> Result<(RuleInstance, Vec<Sequent>), RuleError> {
    let premises = expected_premises(cfg, cs, rule, s, &principal, eigenlabel.as_ref())?;
    let instance = RuleInstance {
        rule,
        conclusion: s.clone(),
        premises: premises.clone(),
        principal,
        eigenlabel,
    };
    Ok((instance, premises))
}

/// A derivation of `w |= a, gamma => delta, w |= a`, by recursion on `a`.
pub fn generalized_axiom(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    w: &Label,
    a: &Formula,
    gamma: &[Item],
    delta: &[Item],
) -> Result<Derivation, RuleError> {
    let mut ante = gamma.to_vec();
    ante.push(Item::labeled(w, a.clone()));
    let mut succ = delta.to_vec();
    succ.push(Item::labeled(w, a.clone()));
    identity(cfg, cs, &Sequent::new(ante, succ), w, a)
}

fn identity(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    s: &Sequent,
    w: &Label,
    a: &Formula,
) -> Result<Derivation, RuleError> {
    use RuleId::*;
    let lab = |f: &Formula| Item::labeled(w, f.clone());
    let main = lab(a);
    // One rule on each side, then identity on the immediate subformulas.
    let pair = |first: RuleId, second: RuleId, subs: [&Formula; 2]| {
        let (inst, prems) = apply(cfg, cs, first, s, vec![main.clone()], None)?;
        let mut children = Vec::new();
        for (p, sub) in prems.iter().zip(subs) {
            let (inner, inner_prems) = apply(cfg, cs, second, p, vec![main.clone()], None)?;
            let top = identity(cfg, cs, &inner_prems[0], w, sub)?;
            children.push(Derivation::node(inner, vec![top]));
        }
        Ok(Derivation::node(inst, children))
    };
    match a {
        Formula::Prop(_) => Ok(Derivation::leaf(s.clone(), Ax, main)),
        Formula::Bottom => Ok(Derivation::leaf(s.clone(), AxBot, main)),
        Formula::Neg(b) => {
            let (inst, prems) = apply(cfg, cs, RNeg, s, vec![main.clone()], None)?;
            let (inner, inner_prems) = apply(cfg, cs, LNeg, &prems[0], vec![main.clone()], None)?;
            let leaf = identity(cfg, cs, &inner_prems[0], w, b)?;
            Ok(Derivation::node(
                inst,
                vec![Derivation::node(inner, vec![leaf])],
            ))
        }
        Formula::And(b, c) => pair(RAnd, LAnd, [b, c]),
        Formula::Or(b, c) => pair(LOr, ROr, [b, c]),
        Formula::Imp(b, c) => {
            let (inst, prems) = apply(cfg, cs, RImp, s, vec![main.clone()], None)?;
            let (inner, inner_prems) = apply(cfg, cs, LImp, &prems[0], vec![main.clone()], None)?;
            let left = identity(cfg, cs, &inner_prems[0], w, b)?;
            let right = identity(cfg, cs, &inner_prems[1], w, c)?;
            Ok(Derivation::node(
                inst,
                vec![Derivation::node(inner, vec![left, right])],
            ))
        }
        Formula::Just(t, b) => {
            let ev = Item::ev(w, t.clone(), (**b).clone());
            let (e_inst, e_prems) = apply(cfg, cs, E, s, vec![main.clone()], None)?;
            let v = fresh_label(&e_prems[0].labels(), "v");
            let (r_inst, r_prems) = apply(
                cfg,
                cs,
                RJust,
                &e_prems[0],
                vec![main.clone(), ev],
                Some(v.clone()),
            )?;
            let (l_inst, l_prems) = apply(
                cfg,
                cs,
                LJust,
                &r_prems[0],
                vec![main.clone(), Item::rel(w, &v)],
                None,
            )?;
            let top = identity(cfg, cs, &l_prems[0], &v, b)?;
            Ok(Derivation::node(
                e_inst,
                vec![Derivation::node(
                    r_inst,
                    vec![Derivation::node(l_inst, vec![top])],
                )],
            ))
        }
        Formula::Nec(b) => {
            let v = fresh_label(&s.labels(), "v");
            let (r_inst, r_prems) = apply(cfg, cs, RBox, s, vec![main.clone()], Some(v.clone()))?;
            let (l_inst, l_prems) = apply(
                cfg,
                cs,
                LBox,
                &r_prems[0],
                vec![main.clone(), Item::rel(w, &v)],
                None,
            )?;
            let top = identity(cfg, cs, &l_prems[0], &v, b)?;
            Ok(Derivation::node(
                r_inst,
                vec![Derivation::node(l_inst, vec![top])],
            ))
        }
    }
}

/// Items of the premise-side principal list that the node uses, as opposed
/// to the items it adds.
fn used_items(d: &Derivation) -> &[Item] {
    let Some(rule) = d.rule else { return &[] };
    match rule {
        RuleId::ELeftSum | RuleId::ERightSum => &d.principal[..1.min(d.principal.len())],
        RuleId::AN
        | RuleId::IAN
        | RuleId::EQuery
        | RuleId::EBarQuery
        | RuleId::Ref
        | RuleId::Ser => &[],
        _ => &d.principal,
    }
}

fn uses_anywhere(d: &Derivation, item: &Item) -> bool {
    used_items(d).contains(item) || d.premises.iter().any(|p| uses_anywhere(p, item))
}

/// Removes one occurrence of each item from every sequent of the tree.
fn strip(d: &Derivation, items: &[(Side, Item)]) -> Derivation {
    let mut out = d.clone();
    strip_in_place(&mut out, items);
    out
}

fn strip_in_place(d: &mut Derivation, items: &[(Side, Item)]) {
    for (side, item) in items {
        d.sequent.remove(*side, item);
    }
    for p in &mut d.premises {
        strip_in_place(p, items);
    }
}

/// The single antecedent item a one-premise node adds without consuming
/// anything, if that describes it.
fn sole_addition(d: &Derivation) -> Option<Item> {
    let [premise] = d.premises.as_slice() else {
        return None;
    };
    let (gone_ante, gone_succ) = d.sequent.minus(&premise.sequent);
    if !gone_ante.is_empty() || !gone_succ.is_empty() {
        return None;
    }
    let (mut added, added_succ) = premise.sequent.minus(&d.sequent);
    if added.len() != 1 || !added_succ.is_empty() {
        return None;
    }
    added.pop()
}

/// A premise of an (E?) or (E??) split that never uses the atom it adds.
fn unused_split_premise(d: &Derivation) -> Option<(usize, Item)> {
    if !matches!(d.rule, Some(RuleId::EQuery | RuleId::EBarQuery)) {
        return None;
    }
    d.premises.iter().enumerate().find_map(|(i, p)| {
        let (mut added, added_succ) = p.sequent.minus(&d.sequent);
        if added.len() != 1 || !added_succ.is_empty() {
            return None;
        }
        let item = added.pop()?;
        (!uses_anywhere(p, &item)).then_some((i, item))
    })
}

/// Splices out single-premise steps, and (E?) or (E??) splits, whose
/// added item is never used above them. The endsequent is unchanged.
pub fn trim_unused(d: &Derivation) -> Derivation {
    trim_owned(d.clone())
}

fn trim_owned(mut current: Derivation) -> Derivation {
    loop {
        let found = unused_split_premise(&current).or_else(|| {
            let added = sole_addition(&current)?;
            (!uses_anywhere(&current.premises[0], &added)).then_some((0, added))
        });
        let Some((i, added)) = found else { break };
        let mut next = current.premises.swap_remove(i);
        strip_in_place(&mut next, &[(Side::Ante, added)]);
        next.sequent = current.sequent;
        current = next;
    }
    current.premises = std::mem::take(&mut current.premises)
        .into_iter()
        .map(trim_owned)
        .collect();
    current
}

/// The evidence atom an E-rule node adds.
fn added_evidence(d: &Derivation) -> Option<Item> {
    match d.rule? {
        RuleId::ELeftSum | RuleId::ERightSum => d.principal.get(1).cloned(),
        RuleId::AN | RuleId::IAN => d.principal.first().cloned(),
        RuleId::EApp | RuleId::EBang | RuleId::Mon => sole_addition(d),
        _ => None,
    }
}

fn is_pruned_rule(rule: RuleId) -> bool {
    rule.is_e_rule() || rule == RuleId::Mon
}

/// Paths, rules and terms of the E-rule applications whose new term lies
/// outside `subterms`.
pub fn e_rule_terms_outside(
    d: &Derivation,
    subterms: &BTreeSet<Term>,
) -> Vec<(NodePath, RuleId, Term)> {
    let mut out = Vec::new();
    d.walk(&mut |path, node| {
        let Some(rule) = node.rule.filter(|r| is_pruned_rule(*r)) else {
            return;
        };
        if let Some(Item::Ev(_, t, _)) = added_evidence(node) {
            if !subterms.contains(&t) {
                out.push((path.clone(), rule, t));
            }
        }
    });
    out
}

/// Grows `family` along the dependent E-rule steps above and reports
/// whether any member is used by (AxE), (AxEBot) or (R:).
fn family_is_used(d: &Derivation, family: &mut BTreeSet<Item>) -> bool {
    let used_here = match d.rule {
        Some(RuleId::AxE) | Some(RuleId::AxEBot) => d.principal.iter().any(|i| family.contains(i)),
        Some(RuleId::RJust) => d.principal.get(1).is_some_and(|i| family.contains(i)),
        _ => false,
    };
    if used_here {
        return true;
    }
    if depends_on(d, family) {
        if let Some(atom) = added_evidence(d) {
            family.insert(atom);
        }
    }
    // Families grow by value, so a member found on one branch counts on all.
    d.premises.iter().any(|p| family_is_used(p, family))
}

fn depends_on(d: &Derivation, family: &BTreeSet<Item>) -> bool {
    d.rule.is_some_and(is_pruned_rule) && used_items(d).iter().any(|i| family.contains(i))
}

/// Removes `root` (an E-rule step) and every step above it that builds on
/// its family, taking the family's atoms out of the sequents above.
fn splice_family(d: &Derivation, family: &BTreeSet<Item>) -> Derivation {
    if depends_on(d, family)
        || (d.rule.is_some_and(is_pruned_rule)
            && added_evidence(d).is_some_and(|a| family.contains(&a)))
    {
        if let (Some(atom), [premise]) = (added_evidence(d), d.premises.as_slice()) {
            let mut next = strip(premise, &[(Side::Ante, atom)]);
            next.sequent = d.sequent.clone();
            return splice_family(&next, family);
        }
    }
    Derivation {
        premises: d
            .premises
            .iter()
            .map(|p| splice_family(p, family))
            .collect(),
        ..d.clone()
    }
}

/// Removes superfluous E-rule applications until every E-rule term lies in
/// the subterms of the endsequent.
pub fn prune_superfluous(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    d: &Derivation,
) -> Result<Derivation, PruneError> {
    let rules = rules_for_logic(cfg);
    if [
        RuleId::SE,
        RuleId::EQuery,
        RuleId::EBarQuery,
        RuleId::AntiMon,
    ]
    .iter()
    .any(|r| rules.contains(r))
    {
        return Err(PruneError::NotJlMinus);
    }
    check_derivation(cfg, cs, d)?;
    let subterms = sub_tm(&d.sequent);
    let mut current = d.clone();
    loop {
        let mut outside = e_rule_terms_outside(&current, &subterms);
        outside.sort_by_key(|(p, _, _)| p.0.len());
        let Some((path, rule, _)) = outside.into_iter().next() else {
            return Ok(current);
        };
        let node = current.at(&path).expect("path from walk");
        let atom = added_evidence(node).expect("E-rule adds an atom");
        let mut family: BTreeSet<Item> = [atom].into_iter().collect();
        if family_is_used(&node.premises[0], &mut family) {
            return Err(PruneError::NotSuperfluous { rule, path });
        }
        let replaced = splice_family(node, &family);
        current = replace_at(&current, &path.0, replaced);
        debug_assert!(check_derivation(cfg, cs, &current).is_ok());
    }
}

fn replace_at(d: &Derivation, path: &[usize], by: Derivation) -> Derivation {
    match path.split_first() {
        None => by,
        Some((&i, rest)) => {
            let mut node = d.clone();
            node.premises[i] = replace_at(&d.premises[i], rest, by);
            node
        }
    }
}

/// Closes an already-initial sequent, if it is one.
pub(crate) fn initial_leaf(cfg: &LogicConfig, s: &Sequent) -> Option<Derivation> {
    is_initial(cfg, s).map(|(rule, item)| Derivation::leaf(s.clone(), rule, item))
}
