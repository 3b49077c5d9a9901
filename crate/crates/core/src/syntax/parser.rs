use super::formula::Formula;
use super::lexer::{tokenize, Spanned, Tok};
use super::sequent::{Item, Label, Sequent};
use super::term::Term;
use super::ParseError;

/// The syntactic class of an identifier, decided by its first letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IdentClass {
    Variable,
    Constant,
    Proposition,
    Other,
}

pub fn classify(name: &str) -> IdentClass {
    match name.as_bytes().first() {
        Some(b'x'..=b'z') => IdentClass::Variable,
        Some(b'a'..=b'e') => IdentClass::Constant,
        Some(b'A'..=b'Z') => IdentClass::Proposition,
        _ => IdentClass::Other,
    }
}

/// True if `name` may be used as a world label.
pub fn is_label_name(name: &str) -> bool {
    matches!(name.as_bytes().first(), Some(b'a'..=b'w'))
        && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    at: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Result<Parser<'a>, ParseError> {
        Ok(Parser {
            toks: tokenize(text)?,
            at: 0,
            text,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|s| &s.tok)
    }

    fn peek2(&self) -> Option<&Tok> {
        self.toks.get(self.at + 1).map(|s| &s.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.text.len(), |s| s.pos)
    }

    fn bump(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.at).map(|s| s.tok.clone());
        if tok.is_some() {
            self.at += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.peek() {
            Some(tok) => tok.describe(),
            None => "end of input".to_string(),
        };
        ParseError::Syntax {
            pos: self.pos(),
            message: format!("expected {wanted}, found {found}"),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn starts_term(&self) -> bool {
        match self.peek() {
            Some(Tok::Bang | Tok::Query | Tok::BarQuery | Tok::LParen) => true,
            Some(Tok::Ident(name)) => {
                matches!(classify(name), IdentClass::Variable | IdentClass::Constant)
            }
            _ => false,
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.product()?;
        while self.eat(&Tok::Plus) {
            acc = Term::sum(acc, self.product()?);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.prefixed()?;
        while self.eat(&Tok::Star) {
            acc = Term::app(acc, self.prefixed()?);
        }
        Ok(acc)
    }

    fn prefixed(&mut self) -> Result<Term, ParseError> {
        match self.peek() {
            Some(Tok::Bang) => {
                self.bump();
                Ok(Term::bang(self.prefixed()?))
            }
            Some(Tok::Query) => {
                self.bump();
                Ok(Term::query(self.prefixed()?))
            }
            Some(Tok::BarQuery) => {
                self.bump();
                Ok(Term::bar_query(self.prefixed()?))
            }
            Some(Tok::LParen) => {
                self.bump();
                let inner = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                let pos = self.pos();
                let term = match classify(name) {
                    IdentClass::Variable => Term::var(name),
                    IdentClass::Constant => Term::constant(name),
                    _ => {
                        return Err(ParseError::UnknownIdentifier {
                            pos,
                            name: name.clone(),
                            expected: "a term (variables start with x-z, constants with a-e)",
                        })
                    }
                };
                self.bump();
                Ok(term)
            }
            _ => Err(self.unexpected("a term")),
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            Ok(Formula::imp(lhs, self.formula()?))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.conjunction()?;
        while self.eat(&Tok::Bar) {
            acc = Formula::or(acc, self.conjunction()?);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut acc = self.unary()?;
        while self.eat(&Tok::Amp) {
            acc = Formula::and(acc, self.unary()?);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.bump();
                Ok(Formula::neg(self.unary()?))
            }
            Some(Tok::BoxOp) => {
                self.bump();
                Ok(Formula::nec(self.unary()?))
            }
            Some(Tok::Ident(name)) if name == "false" => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Some(Tok::Ident(name)) if classify(name) == IdentClass::Proposition => {
                let prop = Formula::prop(name);
                self.bump();
                Ok(prop)
            }
            Some(Tok::LParen) => {
                // `(` opens either a justification term or a formula group.
                let save = self.at;
                if let Ok(term) = self.term() {
                    if self.eat(&Tok::Colon) {
                        return Ok(Formula::just(term, self.unary()?));
                    }
                }
                self.at = save;
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ if self.starts_term() => {
                let term = self.term()?;
                self.expect(Tok::Colon)?;
                Ok(Formula::just(term, self.unary()?))
            }
            Some(Tok::Ident(name)) => Err(ParseError::UnknownIdentifier {
                pos: self.pos(),
                name: name.clone(),
                expected: "a formula (propositions start with A-Z)",
            }),
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn label(&mut self) -> Result<Label, ParseError> {
        let pos = self.pos();
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.unexpected("a label"));
        };
        if !is_label_name(&name) {
            return Err(ParseError::UnknownIdentifier {
                pos,
                name,
                expected: "a label (labels start with a-w)",
            });
        }
        self.bump();
        Ok(Label::new(&name))
    }

    fn item(&mut self) -> Result<Item, ParseError> {
        let w = self.label()?;
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Forces) => {
                self.bump();
                Ok(Item::Labeled(w, self.formula()?))
            }
            Some(Tok::Ident(name)) if name == "R" => {
                self.bump();
                Ok(Item::Rel(w, self.label()?))
            }
            Some(Tok::Ident(name)) if name == "E" && self.peek2() == Some(&Tok::LParen) => {
                self.bump();
                self.bump();
                let t = self.term()?;
                self.expect(Tok::Comma)?;
                let a = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(Item::Ev(w, t, a))
            }
            _ => Err(ParseError::MalformedAtom {
                pos,
                message: format!(
                    "after label `{w}` expected `|=`, `R` or `E(`, found {}",
                    self.peek()
                        .map_or("end of input".to_string(), Tok::describe)
                ),
            }),
        }
    }

    fn items(&mut self, until: Option<&Tok>) -> Result<Vec<Item>, ParseError> {
        let mut out = Vec::new();
        if self.peek() == until {
            return Ok(out);
        }
        loop {
            out.push(self.item()?);
            if !self.eat(&Tok::Comma) {
                return Ok(out);
            }
        }
    }

    fn sequent(&mut self) -> Result<Sequent, ParseError> {
        let ante = self.items(Some(&Tok::Entails))?;
        self.expect(Tok::Entails)?;
        let succ = self.items(None)?;
        Ok(Sequent::new(ante, succ))
    }
}

pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(text)?;
    let a = p.formula()?;
    p.finish()?;
    Ok(a)
}

pub fn parse_item(text: &str) -> Result<Item, ParseError> {
    let mut p = Parser::new(text)?;
    let i = p.item()?;
    p.finish()?;
    Ok(i)
}

pub fn parse_sequent(text: &str) -> Result<Sequent, ParseError> {
    let mut p = Parser::new(text)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}
