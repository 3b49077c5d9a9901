//! Initial sequents and rule schemas, read in both directions.

use std::collections::{BTreeMap, BTreeSet};

use super::RuleError;
use crate::logic::{rules_for_logic, ConstantSpec, LogicConfig, RuleId};
use crate::syntax::measures::{collect_subformulas, sub_fm, sub_tm};
use crate::syntax::{Formula, Item, Label, Sequent, Side, Term};

/// The terms and formulas that backward rule instances may introduce.
#[derive(Clone, Debug, Default)]
pub struct AnalyticityUniverse {
    /// Subterms of the root sequent.
    pub subterms: BTreeSet<Term>,
    /// Subformulas of the root sequent and of the constant specification.
    pub subformulas: BTreeSet<Formula>,
    pub root_labels: BTreeSet<Label>,
    /// `t -> [s+t]` for every sum in `subterms`.
    left_sums: BTreeMap<Term, Vec<Term>>,
    /// `t -> [t+s]` for every sum in `subterms`.
    right_sums: BTreeMap<Term, Vec<Term>>,
    /// `(s, t)` for every product `s*t` in `subterms`.
    products: BTreeSet<(Term, Term)>,
    /// `t` for every `??t` in `subterms`.
    bar_query_inners: Vec<Term>,
    /// `t` for every `?t` in `subterms`.
    query_inners: Vec<Term>,
}

impl AnalyticityUniverse {
    pub fn new(root: &Sequent, cs: &ConstantSpec) -> AnalyticityUniverse {
        let subterms = sub_tm(root);
        let mut subformulas = sub_fm(root);
        for entry in cs.entries() {
            collect_subformulas(entry, &mut subformulas);
        }
        let mut uni = AnalyticityUniverse {
            root_labels: root.labels(),
            ..AnalyticityUniverse::default()
        };
        for t in &subterms {
            match t {
                Term::Sum(l, r) => {
                    uni.left_sums
                        .entry((**r).clone())
                        .or_default()
                        .push(t.clone());
                    uni.right_sums
                        .entry((**l).clone())
                        .or_default()
                        .push(t.clone());
                }
                Term::App(l, r) => {
                    uni.products.insert(((**l).clone(), (**r).clone()));
                }
                _ => {}
            }
        }
        for t in &subterms {
            match t {
                Term::Query(inner) => uni.query_inners.push((**inner).clone()),
                Term::BarQuery(inner) => uni.bar_query_inners.push((**inner).clone()),
                _ => {}
            }
        }
        uni.subterms = subterms;
        uni.subformulas = subformulas;
        uni
    }
}

/// One application of a rule: conclusion, premises and the principal items
/// that pin the instance down.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleInstance {
    pub rule: RuleId,
    pub conclusion: Sequent,
    pub premises: Vec<Sequent>,
    pub principal: Vec<Item>,
    pub eigenlabel: Option<Label>,
}

/// The first initial sequent pattern `s` matches, with its principal item.
pub fn is_initial(cfg: &LogicConfig, s: &Sequent) -> Option<(RuleId, Item)> {
    let rules = rules_for_logic(cfg);
    for item in s.ante() {
        if let Item::Labeled(_, Formula::Prop(_)) = item {
            if s.contains(Side::Succ, item) {
                return Some((RuleId::Ax, item.clone()));
            }
        }
    }
    for item in s.ante() {
        if let Item::Labeled(_, Formula::Bottom) = item {
            return Some((RuleId::AxBot, item.clone()));
        }
    }
    for item in s.ante() {
        if let Item::Rel(..) = item {
            if s.contains(Side::Succ, item) {
                return Some((RuleId::AxR, item.clone()));
            }
        }
    }
    if rules.contains(&RuleId::AxE) {
        for item in s.ante() {
            if let Item::Ev(..) = item {
                if s.contains(Side::Succ, item) {
                    return Some((RuleId::AxE, item.clone()));
                }
            }
        }
    }
    if rules.contains(&RuleId::AxEBot) {
        for item in s.ante() {
            if let Item::Ev(_, _, Formula::Bottom) = item {
                return Some((RuleId::AxEBot, item.clone()));
            }
        }
    }
    None
}

/// Checks that `s` is an instance of the initial sequent `rule` with the
/// given principal item.
pub fn check_initial(
    cfg: &LogicConfig,
    rule: RuleId,
    s: &Sequent,
    principal: &[Item],
) -> Result<(), RuleError> {
    if !rules_for_logic(cfg).contains(&rule) {
        return Err(RuleError::NotInCalculus(rule));
    }
    let [item] = principal else {
        return Err(RuleError::PrincipalCount {
            rule,
            expected: 1,
            found: principal.len(),
        });
    };
    let shape_ok = match (rule, item) {
        (RuleId::Ax, Item::Labeled(_, Formula::Prop(_))) => true,
        (RuleId::AxBot, Item::Labeled(_, Formula::Bottom)) => true,
        (RuleId::AxR, Item::Rel(..)) => true,
        (RuleId::AxE, Item::Ev(..)) => true,
        (RuleId::AxEBot, Item::Ev(_, _, Formula::Bottom)) => true,
        _ if !rule.is_initial() => return Err(RuleError::NotInitial(rule)),
        _ => false,
    };
    if !shape_ok {
        return Err(RuleError::PrincipalShape {
            rule,
            item: item.clone(),
        });
    }
    require(s, Side::Ante, item)?;
    if matches!(rule, RuleId::Ax | RuleId::AxR | RuleId::AxE) {
        require(s, Side::Succ, item)?;
    }
    Ok(())
}

fn require(s: &Sequent, side: Side, item: &Item) -> Result<(), RuleError> {
    if s.contains(side, item) {
        Ok(())
    } else {
        Err(RuleError::PrincipalMissing {
            item: item.clone(),
            side,
        })
    }
}

/// Number of leading principal items that must already be in the
/// conclusion; the rest are the items the rule adds.
fn present_count(rule: RuleId, principal_len: usize) -> usize {
    match rule {
        RuleId::ELeftSum | RuleId::ERightSum => 1,
        RuleId::AN
        | RuleId::IAN
        | RuleId::EQuery
        | RuleId::EBarQuery
        | RuleId::Ref
        | RuleId::Ser => 0,
        _ => principal_len,
    }
}

fn expected_len(rule: RuleId) -> usize {
    match rule {
        RuleId::LJust
        | RuleId::LBox
        | RuleId::RJust
        | RuleId::ELeftSum
        | RuleId::ERightSum
        | RuleId::EApp
        | RuleId::Mon
        | RuleId::AntiMon
        | RuleId::Trans
        | RuleId::Eucl => 2,
        _ => 1,
    }
}

fn shape_error(rule: RuleId, item: &Item) -> RuleError {
    RuleError::PrincipalShape {
        rule,
        item: item.clone(),
    }
}

fn with(base: &Sequent, ante: &[Item], succ: &[Item]) -> Sequent {
    let mut s = base.clone();
    for i in ante {
        s.insert(Side::Ante, i.clone());
    }
    for i in succ {
        s.insert(Side::Succ, i.clone());
    }
    s
}

fn without(base: &Sequent, side: Side, item: &Item) -> Sequent {
    let mut s = base.clone();
    s.remove(side, item);
    s
}

/// Computes the premises of the instance of `rule` with the given
/// principal items, validating every side condition of the schema.
pub fn expected_premises(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    rule: RuleId,
    conclusion: &Sequent,
    principal: &[Item],
    eigenlabel: Option<&Label>,
) -> Result<Vec<Sequent>, RuleError> {
    use RuleId::*;
    if rule.is_initial() {
        check_initial(cfg, rule, conclusion, principal)?;
        return Ok(Vec::new());
    }
    if !rules_for_logic(cfg).contains(&rule) {
        return Err(RuleError::NotInCalculus(rule));
    }
    let want = expected_len(rule);
    if principal.len() != want {
        return Err(RuleError::PrincipalCount {
            rule,
            expected: want,
            found: principal.len(),
        });
    }
    match (rule.has_eigenlabel(), eigenlabel) {
        (true, None) => return Err(RuleError::MissingEigenlabel(rule)),
        (false, Some(v)) => {
            return Err(RuleError::UnexpectedEigenlabel {
                rule,
                label: v.clone(),
            })
        }
        (true, Some(v)) if conclusion.labels().contains(v) => {
            return Err(RuleError::EigenlabelNotFresh {
                rule,
                label: v.clone(),
            })
        }
        _ => {}
    }

    // Presence of the conclusion-side principals, with multiplicity.
    let present = present_count(rule, principal.len());
    let succ_principal = matches!(rule, RNeg | RAnd | ROr | RImp | RBox | RJust);
    let mut needed: BTreeMap<(Side, &Item), usize> = BTreeMap::new();
    for (i, item) in principal[..present].iter().enumerate() {
        let side = if succ_principal && i == 0 {
            Side::Succ
        } else {
            Side::Ante
        };
        *needed.entry((side, item)).or_default() += 1;
    }
    for ((side, item), n) in needed {
        if conclusion.count(side, item) < n {
            return Err(RuleError::PrincipalMissing {
                item: item.clone(),
                side,
            });
        }
    }

    let p0 = &principal[0];
    let bad = || shape_error(rule, p0);
    let premises = match rule {
        LNeg | RNeg | LAnd | RAnd | LOr | ROr | LImp | RImp => {
            let Item::Labeled(w, a) = p0 else {
                return Err(bad());
            };
            let side = if succ_principal {
                Side::Succ
            } else {
                Side::Ante
            };
            let rest = without(conclusion, side, p0);
            let lab = |f: &Formula| Item::labeled(w, f.clone());
            match (rule, a) {
                (LNeg, Formula::Neg(b)) => vec![with(&rest, &[], &[lab(b)])],
                (RNeg, Formula::Neg(b)) => vec![with(&rest, &[lab(b)], &[])],
                (LAnd, Formula::And(b, c)) => vec![with(&rest, &[lab(b), lab(c)], &[])],
                (RAnd, Formula::And(b, c)) => {
                    vec![with(&rest, &[], &[lab(b)]), with(&rest, &[], &[lab(c)])]
                }
                (LOr, Formula::Or(b, c)) => {
                    vec![with(&rest, &[lab(b)], &[]), with(&rest, &[lab(c)], &[])]
                }
                (ROr, Formula::Or(b, c)) => vec![with(&rest, &[], &[lab(b), lab(c)])],
                (LImp, Formula::Imp(b, c)) => {
                    vec![with(&rest, &[], &[lab(b)]), with(&rest, &[lab(c)], &[])]
                }
                (RImp, Formula::Imp(b, c)) => vec![with(&rest, &[lab(b)], &[lab(c)])],
                _ => return Err(bad()),
            }
        }
        LJust | LBox => {
            let (Item::Labeled(w, a), Item::Rel(w2, v)) = (p0, &principal[1]) else {
                return Err(bad());
            };
            let body = match (rule, a) {
                (LJust, Formula::Just(_, b)) | (LBox, Formula::Nec(b)) => b,
                _ => return Err(bad()),
            };
            if w != w2 {
                return Err(shape_error(rule, &principal[1]));
            }
            vec![with(conclusion, &[Item::labeled(v, (**body).clone())], &[])]
        }
        RJust => {
            let Item::Labeled(w, Formula::Just(t, body)) = p0 else {
                return Err(bad());
            };
            let ev = Item::ev(w, t.clone(), (**body).clone());
            if principal[1] != ev {
                return Err(shape_error(rule, &principal[1]));
            }
            let v = eigenlabel.expect("checked above");
            let rest = without(conclusion, Side::Succ, p0);
            vec![with(
                &rest,
                &[Item::rel(w, v)],
                &[Item::labeled(v, (**body).clone())],
            )]
        }
        RBox => {
            let Item::Labeled(w, Formula::Nec(body)) = p0 else {
                return Err(bad());
            };
            let v = eigenlabel.expect("checked above");
            let rest = without(conclusion, Side::Succ, p0);
            vec![with(
                &rest,
                &[Item::rel(w, v)],
                &[Item::labeled(v, (**body).clone())],
            )]
        }
        E => {
            let Item::Labeled(w, Formula::Just(t, body)) = p0 else {
                return Err(bad());
            };
            vec![with(
                conclusion,
                &[Item::ev(w, t.clone(), (**body).clone())],
                &[],
            )]
        }
        AN | IAN => {
            let Item::Ev(_, c @ Term::Const(_), f) = p0 else {
                return Err(bad());
            };
            if !cs.contains(&Formula::just(c.clone(), f.clone())) {
                return Err(RuleError::NotInCs { item: p0.clone() });
            }
            vec![with(conclusion, &[p0.clone()], &[])]
        }
        ELeftSum | ERightSum => {
            let (Item::Ev(w, t, a), added @ Item::Ev(w2, st, a2)) = (p0, &principal[1]) else {
                return Err(bad());
            };
            let Term::Sum(l, r) = st else {
                return Err(shape_error(rule, added));
            };
            let kept = if rule == ELeftSum { r } else { l };
            if w != w2 || a != a2 || **kept != *t {
                return Err(shape_error(rule, added));
            }
            vec![with(conclusion, &[added.clone()], &[])]
        }
        EApp => {
            let (Item::Ev(w, s, ab), Item::Ev(w2, t, a)) = (p0, &principal[1]) else {
                return Err(bad());
            };
            let Formula::Imp(ante, cons) = ab else {
                return Err(bad());
            };
            if w != w2 || **ante != *a {
                return Err(shape_error(rule, &principal[1]));
            }
            let added = Item::ev(w, Term::app(s.clone(), t.clone()), (**cons).clone());
            vec![with(conclusion, &[added], &[])]
        }
        EBang => {
            let Item::Ev(w, t, a) = p0 else {
                return Err(bad());
            };
            let added = Item::ev(
                w,
                Term::bang(t.clone()),
                Formula::just(t.clone(), a.clone()),
            );
            vec![with(conclusion, &[added], &[])]
        }
        Mon | AntiMon => {
            let (Item::Ev(x, t, a), Item::Rel(w, v)) = (p0, &principal[1]) else {
                return Err(bad());
            };
            let (from, to) = if rule == Mon { (w, v) } else { (v, w) };
            if x != from {
                return Err(shape_error(rule, &principal[1]));
            }
            vec![with(conclusion, &[Item::ev(to, t.clone(), a.clone())], &[])]
        }
        SE => {
            let Item::Ev(w, t, a) = p0 else {
                return Err(bad());
            };
            let added = Item::labeled(w, Formula::just(t.clone(), a.clone()));
            vec![with(conclusion, &[added], &[])]
        }
        EQuery | EBarQuery => {
            let Item::Ev(w, q, f) = p0 else {
                return Err(bad());
            };
            let inner = match (rule, q) {
                (EQuery, Term::Query(t)) | (EBarQuery, Term::BarQuery(t)) => t,
                _ => return Err(bad()),
            };
            let Formula::Neg(nj) = f else {
                return Err(bad());
            };
            let Formula::Just(t2, a) = &**nj else {
                return Err(bad());
            };
            if **inner != *t2 {
                return Err(bad());
            }
            let left = if rule == EQuery {
                Item::ev(w, t2.clone(), (**a).clone())
            } else {
                Item::labeled(w, (**a).clone())
            };
            vec![
                with(conclusion, &[left], &[]),
                with(conclusion, &[p0.clone()], &[]),
            ]
        }
        Ref => {
            let Item::Rel(w, v) = p0 else {
                return Err(bad());
            };
            if w != v {
                return Err(bad());
            }
            vec![with(conclusion, &[p0.clone()], &[])]
        }
        Ser => {
            let Item::Rel(_, v) = p0 else {
                return Err(bad());
            };
            if Some(v) != eigenlabel {
                return Err(bad());
            }
            vec![with(conclusion, &[p0.clone()], &[])]
        }
        Sym => {
            let Item::Rel(w, v) = p0 else {
                return Err(bad());
            };
            vec![with(conclusion, &[Item::rel(v, w)], &[])]
        }
        EuclStar => {
            let Item::Rel(_, v) = p0 else {
                return Err(bad());
            };
            vec![with(conclusion, &[Item::rel(v, v)], &[])]
        }
        Trans => {
            let (Item::Rel(w, v), Item::Rel(v2, u)) = (p0, &principal[1]) else {
                return Err(bad());
            };
            if v != v2 {
                return Err(shape_error(rule, &principal[1]));
            }
            vec![with(conclusion, &[Item::rel(w, u)], &[])]
        }
        Eucl => {
            let (Item::Rel(w, v), Item::Rel(w2, u)) = (p0, &principal[1]) else {
                return Err(bad());
            };
            if w != w2 {
                return Err(shape_error(rule, &principal[1]));
            }
            vec![with(conclusion, &[Item::rel(v, u)], &[])]
        }
        Ax | AxBot | AxR | AxE | AxEBot => unreachable!("initial sequents handled above"),
    };
    Ok(premises)
}

/// Principal lists of every backward instance of `rule` on `s`, before
/// eigenlabels are chosen. Condition (dagger) and the analyticity
/// restrictions are applied here.
pub fn instance_principals(
    cs: &ConstantSpec,
    rule: RuleId,
    s: &Sequent,
    universe: &AnalyticityUniverse,
) -> Vec<Vec<Item>> {
    use RuleId::*;
    let ante = s.ante();
    let has = |item: &Item| s.contains(Side::Ante, item);
    let mut out: Vec<Vec<Item>> = Vec::new();
    let add_if_new = |out: &mut Vec<Vec<Item>>, principal: Vec<Item>, added: &Item| {
        if !has(added) {
            out.push(principal);
        }
    };
    let labels = || s.labels();
    match rule {
        LNeg | LAnd | LOr | LImp => {
            for item in ante {
                if let Item::Labeled(_, a) = item {
                    let hit = matches!(
                        (rule, a),
                        (LNeg, Formula::Neg(_))
                            | (LAnd, Formula::And(..))
                            | (LOr, Formula::Or(..))
                            | (LImp, Formula::Imp(..))
                    );
                    if hit {
                        out.push(vec![item.clone()]);
                    }
                }
            }
        }
        RNeg | RAnd | ROr | RImp | RBox => {
            for item in s.succ() {
                if let Item::Labeled(_, a) = item {
                    let hit = matches!(
                        (rule, a),
                        (RNeg, Formula::Neg(_))
                            | (RAnd, Formula::And(..))
                            | (ROr, Formula::Or(..))
                            | (RImp, Formula::Imp(..))
                            | (RBox, Formula::Nec(_))
                    );
                    if hit {
                        out.push(vec![item.clone()]);
                    }
                }
            }
        }
        RJust => {
            for item in s.succ() {
                if let Item::Labeled(w, Formula::Just(t, a)) = item {
                    let ev = Item::ev(w, t.clone(), (**a).clone());
                    if has(&ev) {
                        out.push(vec![item.clone(), ev]);
                    }
                }
            }
        }
        LJust | LBox => {
            for item in ante {
                let (w, body) = match (rule, item) {
                    (LJust, Item::Labeled(w, Formula::Just(_, b)))
                    | (LBox, Item::Labeled(w, Formula::Nec(b))) => (w, b),
                    _ => continue,
                };
                for rel in ante {
                    if let Item::Rel(w2, v) = rel {
                        if w2 == w {
                            let added = Item::labeled(v, (**body).clone());
                            add_if_new(&mut out, vec![item.clone(), rel.clone()], &added);
                        }
                    }
                }
            }
        }
        E => {
            for item in ante {
                if let Item::Labeled(w, Formula::Just(t, a)) = item {
                    let added = Item::ev(w, t.clone(), (**a).clone());
                    add_if_new(&mut out, vec![item.clone()], &added);
                }
            }
        }
        AN | IAN => {
            // Atoms for constants outside the root's subterms are never used.
            let pairs: Vec<_> = cs
                .evidence_pairs()
                .into_iter()
                .filter(|(c, f)| constant_chain_within(c, f, &universe.subterms))
                .collect();
            for w in labels() {
                for (c, f) in &pairs {
                    let added = Item::ev(&w, c.clone(), f.clone());
                    add_if_new(&mut out, vec![added.clone()], &added);
                }
            }
        }
        ELeftSum | ERightSum => {
            let index = if rule == ELeftSum {
                &universe.left_sums
            } else {
                &universe.right_sums
            };
            for item in ante {
                if let Item::Ev(w, t, a) = item {
                    for sum in index.get(t).into_iter().flatten() {
                        let added = Item::ev(w, sum.clone(), a.clone());
                        add_if_new(&mut out, vec![item.clone(), added.clone()], &added);
                    }
                }
            }
        }
        EApp => {
            for imp in ante {
                let Item::Ev(w, s_term, Formula::Imp(a, b)) = imp else {
                    continue;
                };
                for arg in ante {
                    let Item::Ev(w2, t, a2) = arg else { continue };
                    if w2 != w || a2 != &**a {
                        continue;
                    }
                    if !universe.products.contains(&(s_term.clone(), t.clone())) {
                        continue;
                    }
                    let added = Item::ev(w, Term::app(s_term.clone(), t.clone()), (**b).clone());
                    add_if_new(&mut out, vec![imp.clone(), arg.clone()], &added);
                }
            }
        }
        EBang => {
            for item in ante {
                if let Item::Ev(w, t, a) = item {
                    let bang = Term::bang(t.clone());
                    if universe.subterms.contains(&bang) {
                        let added = Item::ev(w, bang, Formula::just(t.clone(), a.clone()));
                        add_if_new(&mut out, vec![item.clone()], &added);
                    }
                }
            }
        }
        Mon | AntiMon => {
            for ev in ante {
                let Item::Ev(x, t, a) = ev else { continue };
                for rel in ante {
                    let Item::Rel(w, v) = rel else { continue };
                    let (from, to) = if rule == Mon { (w, v) } else { (v, w) };
                    if from == x {
                        let added = Item::ev(to, t.clone(), a.clone());
                        add_if_new(&mut out, vec![ev.clone(), rel.clone()], &added);
                    }
                }
            }
        }
        SE => {
            for item in ante {
                if let Item::Ev(w, t, a) = item {
                    let added = Item::labeled(w, Formula::just(t.clone(), a.clone()));
                    add_if_new(&mut out, vec![item.clone()], &added);
                }
            }
        }
        EQuery | EBarQuery => {
            let inners = if rule == EQuery {
                &universe.query_inners
            } else {
                &universe.bar_query_inners
            };
            // Witnesses are limited to `~t:A` occurring in the root or the CS.
            for w in labels() {
                for t in inners {
                    for a in &universe.subformulas {
                        let negated = Formula::neg(Formula::just(t.clone(), a.clone()));
                        if !universe.subformulas.contains(&negated) {
                            continue;
                        }
                        let q = if rule == EQuery {
                            Term::query(t.clone())
                        } else {
                            Term::bar_query(t.clone())
                        };
                        let witness = Item::ev(&w, q, negated);
                        let left = if rule == EQuery {
                            Item::ev(&w, t.clone(), a.clone())
                        } else {
                            Item::labeled(&w, a.clone())
                        };
                        if !has(&witness) && !has(&left) {
                            out.push(vec![witness]);
                        }
                    }
                }
            }
        }
        Ref => {
            for w in labels() {
                let added = Item::rel(&w, &w);
                add_if_new(&mut out, vec![added.clone()], &added);
            }
        }
        Ser => {
            // The successor label is chosen when the eigenlabel is.
            for w in labels() {
                out.push(vec![Item::rel(&w, &w)]);
            }
        }
        Sym | EuclStar => {
            for rel in ante {
                if let Item::Rel(w, v) = rel {
                    let added = if rule == Sym {
                        Item::rel(v, w)
                    } else {
                        Item::rel(v, v)
                    };
                    add_if_new(&mut out, vec![rel.clone()], &added);
                }
            }
        }
        Trans | Eucl => {
            // One instance per new edge; many pairs usually yield the same one.
            let mut fresh_edges = BTreeSet::new();
            for (i, first) in ante.iter().enumerate() {
                let Item::Rel(w, v) = first else { continue };
                for (j, second) in ante.iter().enumerate() {
                    let Item::Rel(x, u) = second else { continue };
                    if i == j {
                        continue;
                    }
                    let added = match rule {
                        Trans if x == v => Item::rel(w, u),
                        Eucl if x == w => Item::rel(v, u),
                        _ => continue,
                    };
                    if has(&added) || !fresh_edges.insert(added.clone()) {
                        continue;
                    }
                    out.push(vec![first.clone(), second.clone()]);
                }
            }
        }
        Ax | AxBot | AxR | AxE | AxEBot => {}
    }
    out.dedup();
    out
}

/// All backward instances of `rule` whose conclusion is `s`.
pub fn backward_instances(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    rule: RuleId,
    s: &Sequent,
    universe: &AnalyticityUniverse,
    fresh: &mut dyn FnMut() -> Label,
) -> Vec<RuleInstance> {
    if !rules_for_logic(cfg).contains(&rule) || rule.is_initial() {
        return Vec::new();
    }
    instance_principals(cs, rule, s, universe)
        .into_iter()
        .filter_map(|mut principal| {
            let eigenlabel = rule.has_eigenlabel().then(&mut *fresh);
            if let (RuleId::Ser, Some(v), Item::Rel(w, _)) =
                (rule, &eigenlabel, principal[0].clone())
            {
                principal[0] = Item::rel(&w, v);
            }
            let premises =
                expected_premises(cfg, cs, rule, s, &principal, eigenlabel.as_ref()).ok()?;
            Some(RuleInstance {
                rule,
                conclusion: s.clone(),
                premises,
                principal,
                eigenlabel,
            })
        })
        .collect()
}

/// Whether `c` and the constants prefixing `f` as `c1:c2:...:A` all lie in
/// `subterms`.
fn constant_chain_within(c: &Term, f: &Formula, subterms: &BTreeSet<Term>) -> bool {
    let mut body = f;
    while let Formula::Just(d @ Term::Const(_), inner) = body {
        if !subterms.contains(d) {
            return false;
        }
        body = inner;
    }
    subterms.contains(c)
}
