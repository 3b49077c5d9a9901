/// Operator spellings used when printing terms and formulas.
#[derive(Debug)]
pub struct Notation {
    pub plus: &'static str,
    pub times: &'static str,
    pub bang: &'static str,
    pub query: &'static str,
    pub bar_query: &'static str,
    pub bottom: &'static str,
    pub neg: &'static str,
    pub nec: &'static str,
    pub and: &'static str,
    pub or: &'static str,
    pub imp: &'static str,
}

impl Notation {
    /// The input grammar; printing in it round-trips through the parser.
    pub const ASCII: Notation = Notation {
        plus: "+",
        times: "*",
        bang: "!",
        query: "?",
        bar_query: "??",
        bottom: "false",
        neg: "~",
        nec: "[]",
        and: " & ",
        or: " | ",
        imp: " -> ",
    };

    /// Math-mode LaTeX.
    pub const LATEX: Notation = Notation {
        plus: "+",
        times: "\\cdot ",
        bang: "!",
        query: "?",
        bar_query: "\\bar{?}",
        bottom: "\\bot",
        neg: "\\neg ",
        nec: "\\Box ",
        and: "\\wedge ",
        or: "\\vee ",
        imp: "\\rightarrow ",
    };
}
