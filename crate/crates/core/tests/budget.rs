//! Search budgets against hand-counted polarities and sizes.

mod common;

use common::*;
use jseq::logic::ConstantSpec;
use jseq::search::compute_budgets;
use jseq::syntax::measures::{polarity_counts, PolarityCounts};
use jseq::syntax::parse_sequent;

fn counts(text: &str) -> PolarityCounts {
    polarity_counts(&parse_sequent(text).unwrap())
}

#[test]
fn succedent_justification_is_positive() {
    let c = counts("=> w |= x:P");
    assert_eq!((c.n_colon, c.p_colon), (0, 1));
}

#[test]
fn antecedent_of_an_implication_flips() {
    // x:(y:A -> A) is negative; y:A sits left of an arrow inside it.
    let c = counts("=> w |= x:(y:A -> A) -> z:A");
    assert_eq!((c.n_colon, c.p_colon), (1, 2));
    let c = counts("w |= ~[]P => w |= []~Q");
    assert_eq!((c.n_box, c.p_box), (0, 2));
}

#[test]
fn budget_sizes() {
    let cfg = logic("J4");
    let cs = ConstantSpec::new(vec![formula("c:(P -> Q -> P)")]);
    let root = parse_sequent("w R v, v R u, w E(x+y,P) => u |= (x*!z):P").unwrap();
    let b = compute_budgets(&cfg, &cs, &root);
    assert_eq!((b.l, b.r, b.e), (3, 2, 1));
    assert_eq!((b.n_plus, b.n_dot, b.n_bang), (1, 1, 1));
    assert_eq!(b.cs_size, 1);
    assert_eq!(b.chain_cap, Some(b.n_colon + b.n_box + 1));
}
