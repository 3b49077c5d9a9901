use super::derivation::NodePath;
use super::kernel::expected_premises;
use super::{CheckError, CheckFailure, Derivation};
use crate::logic::{ConstantSpec, LogicConfig};

/// Checks every node of `d` against the calculus of `cfg` and `cs`.
/// Reports the first failing node in pre-order.
pub fn check_derivation(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    d: &Derivation,
) -> Result<(), CheckError> {
    cfg.check_sequent(&d.sequent).map_err(|e| CheckError {
        path: NodePath::default(),
        rule: d.rule,
        failure: CheckFailure::Language(e.to_string()),
    })?;
    check_node(cfg, cs, d, &mut Vec::new())
}

fn check_node(
    cfg: &LogicConfig,
    cs: &ConstantSpec,
    d: &Derivation,
    path: &mut Vec<usize>,
) -> Result<(), CheckError> {
    let fail = |failure: CheckFailure, path: &[usize]| CheckError {
        path: NodePath(path.to_vec()),
        rule: d.rule,
        failure,
    };
    let Some(rule) = d.rule else {
        return Err(fail(CheckFailure::Unjustified, path));
    };
    let expected = expected_premises(
        cfg,
        cs,
        rule,
        &d.sequent,
        &d.principal,
        d.eigenlabel.as_ref(),
    )
    .map_err(|e| fail(e.into(), path))?;
    if expected.len() != d.premises.len() {
        return Err(fail(
            CheckFailure::PremiseCount {
                expected: expected.len(),
                found: d.premises.len(),
            },
            path,
        ));
    }
    for (index, (want, got)) in expected.iter().zip(&d.premises).enumerate() {
        if *want != got.sequent {
            return Err(fail(
                CheckFailure::PremiseMismatch {
                    index,
                    expected: want.clone(),
                    found: got.sequent.clone(),
                },
                path,
            ));
        }
    }
    for (index, premise) in d.premises.iter().enumerate() {
        path.push(index);
        check_node(cfg, cs, premise, path)?;
        path.pop();
    }
    Ok(())
}
