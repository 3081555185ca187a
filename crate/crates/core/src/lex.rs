//! Tokenizer shared by the Γ-formula, mixed-formula and tropical grammars.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(&'static str),
    End,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

const SYMBOLS: &[&str] = &[
    "<=", ">=", "!=", "==", "&&", "||", "<", ">", "=", "&", "|", "!", "(", ")", "+", "-", "*", "/",
    "^", ",", "@", "[", "]",
];

const UNICODE: &[(char, &str)] = &[
    ('≤', "<="),
    ('≥', ">="),
    ('≠', "!="),
    ('∧', "&"),
    ('∨', "|"),
    ('¬', "!"),
    ('−', "-"),
];

pub(crate) fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let bytes: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < bytes.len() {
        let (pos, c) = bytes[i];
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let mut j = i;
            while j < bytes.len() && bytes[j].1.is_ascii_digit() {
                j += 1;
            }
            let end = bytes.get(j).map_or(src.len(), |b| b.0);
            let n: BigInt = src[pos..end].parse().expect("digits");
            out.push(Token { tok: Tok::Int(n), pos });
            i = j;
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].1.is_alphanumeric() || bytes[j].1 == '_') {
                j += 1;
            }
            let end = bytes.get(j).map_or(src.len(), |b| b.0);
            out.push(Token { tok: Tok::Ident(src[pos..end].to_string()), pos });
            i = j;
            continue;
        }
        if let Some((_, s)) = UNICODE.iter().find(|(u, _)| *u == c) {
            out.push(Token { tok: Tok::Sym(s), pos });
            i += 1;
            continue;
        }
        let rest = &src[pos..];
        match SYMBOLS.iter().find(|s| rest.starts_with(**s)) {
            Some(s) => {
                let sym: &'static str = match *s {
                    "==" => "=",
                    "&&" => "&",
                    "||" => "|",
                    other => other,
                };
                out.push(Token { tok: Tok::Sym(sym), pos });
                i += s.len();
            }
            None => return Err(Error::syntax(pos, format!("unexpected character `{c}`"))),
        }
    }
    out.push(Token { tok: Tok::End, pos: src.len() });
    Ok(out)
}

/// Cursor over a token stream with the small lookahead helpers every grammar
/// here needs.
pub(crate) struct Cursor {
    toks: Vec<Token>,
    at: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self> {
        Ok(Cursor { toks: tokenize(src)?, at: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.at].tok
    }

    pub fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.at + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    /// Position in the token stream, for backtracking with [`Cursor::reset`].
    pub fn mark(&self) -> usize {
        self.at
    }

    pub fn reset(&mut self, mark: usize) {
        self.at = mark;
    }

    pub fn pos(&self) -> usize {
        self.toks[self.at].pos
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].tok.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    pub fn is_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    pub fn is_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == s)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        if self.is_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn expect_sym(&mut self, s: &str) -> Result<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            Err(self.error(format!("expected `{s}`")))
        }
    }

    pub fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            _ => Err(self.error("unexpected trailing input")),
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        Error::syntax(self.pos(), msg)
    }

    /// `int ['/' int]`, without sign.
    pub fn unsigned_rational(&mut self) -> Result<Rat> {
        let n = match self.bump() {
            Tok::Int(n) => n,
            _ => return Err(self.error("expected a number")),
        };
        if self.is_sym("/") && matches!(self.peek_at(1), Tok::Int(_)) {
            self.bump();
            let pos = self.pos();
            let d = match self.bump() {
                Tok::Int(d) => d,
                _ => unreachable!(),
            };
            if d == BigInt::from(0) {
                return Err(Error::syntax(pos, "zero denominator"));
            }
            return Ok(Rat::from_bigs(n, d));
        }
        Ok(Rat::from_bigs(n, BigInt::from(1)))
    }

    /// Optionally signed rational.
    pub fn rational(&mut self) -> Result<Rat> {
        let neg = if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        };
        let r = self.unsigned_rational()?;
        Ok(if neg { -r } else { r })
    }

    /// Optionally signed integer.
    pub fn integer(&mut self) -> Result<i64> {
        let pos = self.pos();
        let r = self.rational()?;
        r.to_i64().ok_or_else(|| Error::syntax(pos, "expected an integer"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokens_and_positions() {
        let t = tokenize("2*x1 <= 1/2 ≠").unwrap();
        assert_eq!(t[0].tok, Tok::Int(2.into()));
        assert_eq!(t[2].tok, Tok::Ident("x1".into()));
        assert_eq!(t[3].tok, Tok::Sym("<="));
        assert_eq!(t[3].pos, 5);
        assert_eq!(t[7].tok, Tok::Sym("!="));
        assert!(tokenize("x # 1").is_err());
    }

    #[test]
    fn rationals() {
        let mut c = Cursor::new("-3/6 4").unwrap();
        assert_eq!(c.rational().unwrap(), Rat::new(-1, 2));
        assert_eq!(c.integer().unwrap(), 4);
        assert!(Cursor::new("1/0").unwrap().rational().is_err());
    }
}
