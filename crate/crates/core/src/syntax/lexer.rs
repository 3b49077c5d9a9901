use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Bang,
    Query,
    BarQuery,
    Plus,
    Star,
    Colon,
    Tilde,
    BoxOp,
    Amp,
    Bar,
    Arrow,
    LParen,
    RParen,
    Comma,
    Forces,
    Entails,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(name) => format!("identifier `{name}`"),
            Tok::Bang => "`!`".into(),
            Tok::Query => "`?`".into(),
            Tok::BarQuery => "`??`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Tilde => "`~`".into(),
            Tok::BoxOp => "`[]`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Forces => "`|=`".into(),
            Tok::Entails => "`=>`".into(),
        }
    }
}

/// A token with the byte offset where it starts.
#[derive(Clone, Debug)]
pub(crate) struct Spanned {
    pub tok: Tok,
    pub pos: usize,
}

pub(crate) fn tokenize(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        let pos = i;
        let next = bytes.get(i + 1).copied();
        let (tok, len) = match c {
            b'!' => (Tok::Bang, 1),
            b'?' if next == Some(b'?') => (Tok::BarQuery, 2),
            b'?' => (Tok::Query, 1),
            b'+' => (Tok::Plus, 1),
            b'*' => (Tok::Star, 1),
            b':' => (Tok::Colon, 1),
            b'~' => (Tok::Tilde, 1),
            b'[' if next == Some(b']') => (Tok::BoxOp, 2),
            b'&' => (Tok::Amp, 1),
            b'|' if next == Some(b'=') => (Tok::Forces, 2),
            b'|' => (Tok::Bar, 1),
            b'-' if next == Some(b'>') => (Tok::Arrow, 2),
            b'=' if next == Some(b'>') => (Tok::Entails, 2),
            b'(' => (Tok::LParen, 1),
            b')' => (Tok::RParen, 1),
            b',' => (Tok::Comma, 1),
            c if c.is_ascii_alphabetic() => {
                let end = bytes[i..]
                    .iter()
                    .position(|b| !(b.is_ascii_alphanumeric() || *b == b'_'))
                    .map_or(bytes.len(), |n| i + n);
                (Tok::Ident(text[i..end].to_string()), end - i)
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos,
                    message: format!("unexpected character `{ch}`"),
                });
            }
        };
        out.push(Spanned { tok, pos });
        i += len;
    }
    Ok(out)
}
