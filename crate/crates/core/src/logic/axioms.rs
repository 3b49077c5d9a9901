use std::fmt;

use serde::Serialize;

use super::config::LogicConfig;
use super::LogicError;
use crate::syntax::{Formula, Term};

/// Above this many opaque atoms the tautology check refuses to run.
pub const TAUT_ATOM_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AxiomScheme {
    Taut,
    Sum,
    JK,
    JT,
    JD,
    J4,
    JB,
    J5,
    K,
    T,
    D,
    Four,
    B,
    Five,
    Connection,
}

impl AxiomScheme {
    pub fn name(self) -> &'static str {
        match self {
            AxiomScheme::Taut => "Taut",
            AxiomScheme::Sum => "Sum",
            AxiomScheme::JK => "jK",
            AxiomScheme::JT => "jT",
            AxiomScheme::JD => "jD",
            AxiomScheme::J4 => "j4",
            AxiomScheme::JB => "jB",
            AxiomScheme::J5 => "j5",
            AxiomScheme::K => "K",
            AxiomScheme::T => "T",
            AxiomScheme::D => "D",
            AxiomScheme::Four => "4",
            AxiomScheme::B => "B",
            AxiomScheme::Five => "5",
            AxiomScheme::Connection => "connection",
        }
    }
}

impl fmt::Display for AxiomScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn just(a: &Formula) -> Option<(&Term, &Formula)> {
    match a {
        Formula::Just(t, b) => Some((t, b)),
        _ => None,
    }
}

fn nec(a: &Formula) -> Option<&Formula> {
    match a {
        Formula::Nec(b) => Some(b),
        _ => None,
    }
}

fn imp(a: &Formula) -> Option<(&Formula, &Formula)> {
    match a {
        Formula::Imp(b, c) => Some((b, c)),
        _ => None,
    }
}

fn neg(a: &Formula) -> Option<&Formula> {
    match a {
        Formula::Neg(b) => Some(b),
        _ => None,
    }
}

fn is_sum(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let (s, body) = just(lhs)?;
    let (sum, body2) = just(rhs)?;
    let Term::Sum(l, r) = sum else { return None };
    (body == body2 && (**l == *s || **r == *s)).then_some(())
}

fn is_jk(a: &Formula) -> Option<()> {
    let (lhs, rest) = imp(a)?;
    let (s, s_body) = just(lhs)?;
    let (ante, cons) = imp(s_body)?;
    let (inner, goal) = imp(rest)?;
    let (t, t_body) = just(inner)?;
    let (st, b) = just(goal)?;
    let Term::App(s2, t2) = st else { return None };
    (**s2 == *s && **t2 == *t && t_body == ante && b == cons).then_some(())
}

fn is_jt(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let (_, body) = just(lhs)?;
    (body == rhs).then_some(())
}

fn is_jd(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let (_, body) = just(lhs)?;
    (*body == Formula::Bottom && *rhs == Formula::Bottom).then_some(())
}

fn is_j4(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let (t, body) = just(lhs)?;
    let (bang, inner) = just(rhs)?;
    let Term::Bang(t2) = bang else { return None };
    (**t2 == *t && *inner == Formula::just(t.clone(), body.clone())).then_some(())
}

fn is_jb(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let body = neg(lhs)?;
    let (q, inner) = just(rhs)?;
    let Term::BarQuery(t) = q else { return None };
    let (t2, body2) = just(neg(inner)?)?;
    (**t == *t2 && body == body2).then_some(())
}

fn is_j5(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let denied = neg(lhs)?;
    let (t, _) = just(denied)?;
    let (q, inner) = just(rhs)?;
    let Term::Query(t2) = q else { return None };
    (**t2 == *t && neg(inner)? == denied).then_some(())
}

fn is_k(a: &Formula) -> Option<()> {
    let (lhs, rest) = imp(a)?;
    let (ante, cons) = imp(nec(lhs)?)?;
    let (inner, goal) = imp(rest)?;
    (nec(inner)? == ante && nec(goal)? == cons).then_some(())
}

fn is_t(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    (nec(lhs)? == rhs).then_some(())
}

fn is_d(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    (*nec(lhs)? == Formula::Bottom && *rhs == Formula::Bottom).then_some(())
}

fn is_four(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    nec(lhs)?;
    (nec(rhs)? == lhs).then_some(())
}

fn is_b(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let body = neg(lhs)?;
    (nec(neg(nec(rhs)?)?)? == body).then_some(())
}

fn is_five(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let denied = neg(lhs)?;
    nec(denied)?;
    (neg(nec(rhs)?)? == denied).then_some(())
}

fn is_connection(a: &Formula) -> Option<()> {
    let (lhs, rhs) = imp(a)?;
    let (_, body) = just(lhs)?;
    (nec(rhs)? == body).then_some(())
}

fn collect_opaque<'a>(a: &'a Formula, atoms: &mut Vec<&'a Formula>) {
    match a {
        Formula::Bottom => {}
        Formula::Prop(_) | Formula::Just(..) | Formula::Nec(_) => {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        Formula::Neg(b) => collect_opaque(b, atoms),
        Formula::And(b, c) | Formula::Or(b, c) | Formula::Imp(b, c) => {
            collect_opaque(b, atoms);
            collect_opaque(c, atoms);
        }
    }
}

fn eval_opaque(a: &Formula, atoms: &[&Formula], bits: u32) -> bool {
    match a {
        Formula::Bottom => false,
        Formula::Prop(_) | Formula::Just(..) | Formula::Nec(_) => {
            let i = atoms.iter().position(|x| *x == a).expect("atom collected");
            bits & (1 << i) != 0
        }
        Formula::Neg(b) => !eval_opaque(b, atoms, bits),
        Formula::And(b, c) => eval_opaque(b, atoms, bits) && eval_opaque(c, atoms, bits),
        Formula::Or(b, c) => eval_opaque(b, atoms, bits) || eval_opaque(c, atoms, bits),
        Formula::Imp(b, c) => !eval_opaque(b, atoms, bits) || eval_opaque(c, atoms, bits),
    }
}

/// Classical tautology with every justification and box subformula treated
/// as an opaque atom.
pub fn is_tautology(a: &Formula) -> Result<bool, LogicError> {
    let mut atoms = Vec::new();
    collect_opaque(a, &mut atoms);
    if atoms.len() > TAUT_ATOM_CAP {
        return Err(LogicError::TooManyAtoms {
            count: atoms.len(),
            cap: TAUT_ATOM_CAP,
        });
    }
    Ok((0..1u32 << atoms.len()).all(|bits| eval_opaque(a, &atoms, bits)))
}

/// The first enabled scheme `a` is an instance of, if any.
pub fn is_axiom_instance(
    cfg: &LogicConfig,
    a: &Formula,
) -> Result<Option<AxiomScheme>, LogicError> {
    let j = cfg.justification;
    let justification: [(bool, AxiomScheme, fn(&Formula) -> Option<()>); 7] = [
        (true, AxiomScheme::Sum, is_sum),
        (true, AxiomScheme::JK, is_jk),
        (j.t, AxiomScheme::JT, is_jt),
        (j.d, AxiomScheme::JD, is_jd),
        (j.four, AxiomScheme::J4, is_j4),
        (j.b, AxiomScheme::JB, is_jb),
        (j.five, AxiomScheme::J5, is_j5),
    ];
    if cfg.has_justifications() {
        for (on, scheme, matcher) in justification {
            if on && matcher(a).is_some() {
                return Ok(Some(scheme));
            }
        }
    }
    if let Some(m) = cfg.modal {
        let modal: [(bool, AxiomScheme, fn(&Formula) -> Option<()>); 7] = [
            (true, AxiomScheme::K, is_k),
            (m.t, AxiomScheme::T, is_t),
            (m.d, AxiomScheme::D, is_d),
            (m.four, AxiomScheme::Four, is_four),
            (m.b, AxiomScheme::B, is_b),
            (m.five, AxiomScheme::Five, is_five),
            (cfg.connection, AxiomScheme::Connection, is_connection),
        ];
        for (on, scheme, matcher) in modal {
            if on && matcher(a).is_some() {
                return Ok(Some(scheme));
            }
        }
    }
    if is_tautology(a)? {
        return Ok(Some(AxiomScheme::Taut));
    }
    Ok(None)
}
