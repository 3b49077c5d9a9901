use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::config::LogicConfig;
use super::LogicError;

/// Initial sequents and rules of the labeled calculi.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    Ax,
    AxBot,
    AxR,
    AxE,
    AxEBot,
    LNeg,
    RNeg,
    LAnd,
    RAnd,
    LOr,
    ROr,
    LImp,
    RImp,
    LJust,
    RJust,
    E,
    AN,
    IAN,
    ELeftSum,
    ERightSum,
    EApp,
    EBang,
    Mon,
    EBarQuery,
    SE,
    EQuery,
    LBox,
    RBox,
    Ref,
    Ser,
    Sym,
    Trans,
    Eucl,
    EuclStar,
    AntiMon,
}

impl RuleId {
    pub const ALL: [RuleId; 35] = [
        RuleId::Ax,
        RuleId::AxBot,
        RuleId::AxR,
        RuleId::AxE,
        RuleId::AxEBot,
        RuleId::LNeg,
        RuleId::RNeg,
        RuleId::LAnd,
        RuleId::RAnd,
        RuleId::LOr,
        RuleId::ROr,
        RuleId::LImp,
        RuleId::RImp,
        RuleId::LJust,
        RuleId::RJust,
        RuleId::E,
        RuleId::AN,
        RuleId::IAN,
        RuleId::ELeftSum,
        RuleId::ERightSum,
        RuleId::EApp,
        RuleId::EBang,
        RuleId::Mon,
        RuleId::EBarQuery,
        RuleId::SE,
        RuleId::EQuery,
        RuleId::LBox,
        RuleId::RBox,
        RuleId::Ref,
        RuleId::Ser,
        RuleId::Sym,
        RuleId::Trans,
        RuleId::Eucl,
        RuleId::EuclStar,
        RuleId::AntiMon,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Ax => "Ax",
            RuleId::AxBot => "AxBot",
            RuleId::AxR => "AxR",
            RuleId::AxE => "AxE",
            RuleId::AxEBot => "AxEBot",
            RuleId::LNeg => "L~",
            RuleId::RNeg => "R~",
            RuleId::LAnd => "L&",
            RuleId::RAnd => "R&",
            RuleId::LOr => "L|",
            RuleId::ROr => "R|",
            RuleId::LImp => "L->",
            RuleId::RImp => "R->",
            RuleId::LJust => "L:",
            RuleId::RJust => "R:",
            RuleId::E => "E",
            RuleId::AN => "AN",
            RuleId::IAN => "IAN",
            RuleId::ELeftSum => "El+",
            RuleId::ERightSum => "Er+",
            RuleId::EApp => "E*",
            RuleId::EBang => "E!",
            RuleId::Mon => "Mon",
            RuleId::EBarQuery => "E??",
            RuleId::SE => "SE",
            RuleId::EQuery => "E?",
            RuleId::LBox => "L[]",
            RuleId::RBox => "R[]",
            RuleId::Ref => "Ref",
            RuleId::Ser => "Ser",
            RuleId::Sym => "Sym",
            RuleId::Trans => "Trans",
            RuleId::Eucl => "Eucl",
            RuleId::EuclStar => "Eucl*",
            RuleId::AntiMon => "AntiMon",
        }
    }

    /// Name for LaTeX output.
    pub fn latex(self) -> &'static str {
        match self {
            RuleId::Ax => "Ax",
            RuleId::AxBot => "Ax\\bot",
            RuleId::AxR => "AxR",
            RuleId::AxE => "AxE",
            RuleId::AxEBot => "AxE\\bot",
            RuleId::LNeg => "L\\neg",
            RuleId::RNeg => "R\\neg",
            RuleId::LAnd => "L\\wedge",
            RuleId::RAnd => "R\\wedge",
            RuleId::LOr => "L\\vee",
            RuleId::ROr => "R\\vee",
            RuleId::LImp => "L\\rightarrow",
            RuleId::RImp => "R\\rightarrow",
            RuleId::LJust => "L:",
            RuleId::RJust => "R:",
            RuleId::E => "E",
            RuleId::AN => "AN",
            RuleId::IAN => "IAN",
            RuleId::ELeftSum => "El+",
            RuleId::ERightSum => "Er+",
            RuleId::EApp => "E\\cdot",
            RuleId::EBang => "E!",
            RuleId::Mon => "Mon",
            RuleId::EBarQuery => "E\\bar{?}",
            RuleId::SE => "SE",
            RuleId::EQuery => "E?",
            RuleId::LBox => "L\\Box",
            RuleId::RBox => "R\\Box",
            RuleId::Ref => "Ref",
            RuleId::Ser => "Ser",
            RuleId::Sym => "Sym",
            RuleId::Trans => "Trans",
            RuleId::Eucl => "Eucl",
            RuleId::EuclStar => "Eucl_*",
            RuleId::AntiMon => "Anti\\textrm{-}Mon",
        }
    }

    /// Number of premises.
    pub fn arity(self) -> usize {
        match self {
            RuleId::Ax | RuleId::AxBot | RuleId::AxR | RuleId::AxE | RuleId::AxEBot => 0,
            RuleId::RAnd | RuleId::LOr | RuleId::LImp | RuleId::EQuery | RuleId::EBarQuery => 2,
            _ => 1,
        }
    }

    pub fn is_initial(self) -> bool {
        self.arity() == 0
    }

    /// Rules whose premise introduces a fresh label.
    pub fn has_eigenlabel(self) -> bool {
        matches!(self, RuleId::RJust | RuleId::RBox | RuleId::Ser)
    }

    /// The rules that build new evidence terms, in the sense of pruning.
    pub fn is_e_rule(self) -> bool {
        matches!(
            self,
            RuleId::EApp
                | RuleId::ELeftSum
                | RuleId::ERightSum
                | RuleId::EBang
                | RuleId::AN
                | RuleId::IAN
        )
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RuleId {
    type Err = LogicError;

    fn from_str(text: &str) -> Result<RuleId, LogicError> {
        RuleId::ALL
            .iter()
            .copied()
            .find(|r| r.name() == text)
            .ok_or_else(|| LogicError::UnknownRule(text.to_string()))
    }
}

/// The initial sequents and rules of the calculus for `cfg`.
pub fn rules_for_logic(cfg: &LogicConfig) -> BTreeSet<RuleId> {
    use RuleId::*;
    let mut rules: BTreeSet<RuleId> =
        [Ax, AxBot, AxR, LNeg, RNeg, LAnd, RAnd, LOr, ROr, LImp, RImp]
            .into_iter()
            .collect();
    let j = cfg.justification;
    if cfg.has_justifications() {
        rules.extend([AxE, LJust, RJust, E, ELeftSum, ERightSum, EApp]);
        rules.insert(if j.four { AN } else { IAN });
        if j.four {
            rules.extend([EBang, Mon]);
        }
        if j.b {
            rules.insert(EBarQuery);
        }
        if j.five {
            rules.extend([SE, EQuery]);
        }
    }
    if cfg.modal_enabled() {
        rules.extend([LBox, RBox]);
    }
    let frame = cfg.frame_axioms();
    if frame.t {
        rules.insert(Ref);
    }
    if frame.d {
        rules.insert(if cfg.is_fk() { AxEBot } else { Ser });
    }
    if frame.four {
        rules.insert(Trans);
    }
    if frame.b {
        rules.insert(Sym);
    }
    if frame.five {
        rules.extend([Eucl, EuclStar]);
    }
    if cfg.s4lpn_extras {
        rules.extend([AntiMon, SE]);
    }
    rules
}

/// The order in which the reduction tree visits the active rules.
pub const STAGE_ORDER: [RuleId; 30] = [
    RuleId::LNeg,
    RuleId::RNeg,
    RuleId::LAnd,
    RuleId::RAnd,
    RuleId::LOr,
    RuleId::ROr,
    RuleId::LImp,
    RuleId::RImp,
    RuleId::LJust,
    RuleId::LBox,
    RuleId::RJust,
    RuleId::RBox,
    RuleId::E,
    RuleId::AN,
    RuleId::IAN,
    RuleId::ELeftSum,
    RuleId::ERightSum,
    RuleId::EApp,
    RuleId::EBang,
    RuleId::Mon,
    RuleId::Ref,
    RuleId::Ser,
    RuleId::Trans,
    RuleId::Sym,
    RuleId::Eucl,
    RuleId::EuclStar,
    RuleId::AntiMon,
    RuleId::SE,
    RuleId::EQuery,
    RuleId::EBarQuery,
];

pub fn stages_for_logic(cfg: &LogicConfig) -> Vec<RuleId> {
    let rules = rules_for_logic(cfg);
    STAGE_ORDER
        .iter()
        .copied()
        .filter(|r| rules.contains(r))
        .collect()
}
