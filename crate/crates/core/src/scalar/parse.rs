//! Text syntax for scalars: integers, `p/q`, identifiers, `+ - * / ^` and parentheses.

use std::collections::BTreeSet;

use num_bigint::BigInt;

use super::{is_reserved_name, Poly, Rational, Scalar, ScalarError, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Tok {
    Num(String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Comma,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: usize,
}

/// Which identifiers may appear as parameters.
#[derive(Debug, Clone, Default)]
pub enum ParameterSet {
    /// Any identifier that is not a coframe name.
    #[default]
    Open,
    Declared(BTreeSet<Symbol>),
}

impl ParameterSet {
    pub fn declared<'a>(names: impl IntoIterator<Item = &'a str>) -> Self {
        ParameterSet::Declared(names.into_iter().map(Symbol::new).collect())
    }

    fn admit(&self, name: &str, pos: usize) -> Result<Symbol, ScalarError> {
        if is_reserved_name(name) {
            return Err(ScalarError::ReservedName {
                name: name.into(),
                pos,
            });
        }
        let s = Symbol::new(name);
        match self {
            ParameterSet::Open => Ok(s),
            ParameterSet::Declared(set) if set.contains(&s) => Ok(s),
            ParameterSet::Declared(_) => Err(ScalarError::Undeclared {
                name: name.into(),
                pos,
            }),
        }
    }
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || ('₀'..='₉').contains(&c)
}

pub(crate) fn lex(text: &str) -> Result<Vec<Token>, ScalarError> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let tok = match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '+' => Tok::Plus,
            '-' | '−' => Tok::Minus,
            '*' | '·' => Tok::Star,
            '/' => Tok::Slash,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push(Token { tok: Tok::Num(s), pos });
                continue;
            }
            c if is_ident_start(c) => {
                let start = i;
                while i < chars.len() && is_ident_continue(chars[i].1) {
                    i += 1;
                }
                let s: String = chars[start..i].iter().map(|(_, c)| c).collect();
                out.push(Token { tok: Tok::Ident(s), pos });
                continue;
            }
            other => {
                return Err(ScalarError::Syntax {
                    pos,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        out.push(Token { tok, pos });
        i += 1;
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Token],
    i: usize,
    end: usize,
    params: &'a ParameterSet,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.pos).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T, ScalarError> {
        Err(ScalarError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = match self.peek() {
            Some(Tok::Plus) => {
                self.i += 1;
                self.term()?
            }
            Some(Tok::Minus) => {
                self.i += 1;
                -self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.i += 1;
                    acc = acc + self.term()?;
                }
                Some(Tok::Minus) => {
                    self.i += 1;
                    acc = acc - self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.i += 1;
                    acc = acc * self.factor()?;
                }
                Some(Tok::Slash) => {
                    self.i += 1;
                    let pos = self.pos();
                    let d = self.factor()?;
                    acc = acc.checked_div(&d).map_err(|_| ScalarError::Syntax {
                        pos,
                        msg: "division by zero scalar".into(),
                    })?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Scalar, ScalarError> {
        if self.peek() == Some(&Tok::Minus) {
            self.i += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            self.i += 1;
            let neg = if self.peek() == Some(&Tok::Minus) {
                self.i += 1;
                true
            } else {
                false
            };
            let pos = self.pos();
            let e: i32 = match self.peek() {
                Some(Tok::Num(s)) => s.parse().map_err(|_| ScalarError::Syntax {
                    pos,
                    msg: "exponent too large".into(),
                })?,
                _ => return self.err("expected integer exponent"),
            };
            self.i += 1;
            let e = if neg { -e } else { e };
            return base.pow(e).map_err(|_| ScalarError::Syntax {
                pos,
                msg: "negative power of zero".into(),
            });
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.i += 1;
                let n: BigInt = s.parse().expect("digits");
                Ok(Scalar::from_rational(Rational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                let s = self.params.admit(&name, pos)?;
                Ok(Scalar::from_poly(Poly::var(s)))
            }
            Some(Tok::LParen) => {
                self.i += 1;
                let v = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected `)`");
                }
                self.i += 1;
                Ok(v)
            }
            _ => self.err("expected a number, parameter or `(`"),
        }
    }
}

/// Parses a complete token slice as one scalar expression.
pub(crate) fn parse_tokens(
    toks: &[Token],
    end: usize,
    params: &ParameterSet,
) -> Result<Scalar, ScalarError> {
    let mut p = Parser {
        toks,
        i: 0,
        end,
        params,
    };
    let v = p.expr()?;
    if p.i != toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(v)
}

pub fn parse_scalar_with(text: &str, params: &ParameterSet) -> Result<Scalar, ScalarError> {
    let toks = lex(text)?;
    parse_tokens(&toks, text.len(), params)
}

/// Parses a scalar expression accepting any non-reserved parameter name.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarError> {
    parse_scalar_with(text, &ParameterSet::Open)
}

/// Parses a parameter-free expression such as `-3/2`.
pub fn parse_rational(text: &str) -> Result<Rational, ScalarError> {
    let v = parse_scalar_with(text, &ParameterSet::Declared(BTreeSet::new()))?;
    v.as_rational().ok_or(ScalarError::Syntax {
        pos: 0,
        msg: "expected a rational number".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn precedence() {
        let a = parse_scalar("1 + 2*3^2").unwrap();
        assert_eq!(a, Scalar::int(19));
        assert_eq!(parse_scalar("-2^2").unwrap(), Scalar::int(-4));
        assert_eq!(parse_scalar("3/2*4").unwrap(), Scalar::int(6));
        assert_eq!(parse_scalar("2^-1").unwrap(), Scalar::frac(1, 2));
    }

    #[test]
    fn unicode_parameters() {
        assert_eq!(parse_scalar("λ*a₁").unwrap(), parse_scalar("lam*a1").unwrap());
        assert_eq!(parse_scalar("−λ").unwrap(), parse_scalar("-lam").unwrap());
    }

    #[test]
    fn errors_carry_position() {
        match parse_scalar("1 + * 2") {
            Err(ScalarError::Syntax { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_scalar("dt + 1"),
            Err(ScalarError::ReservedName { .. })
        ));
        assert!(matches!(parse_scalar("1/0"), Err(ScalarError::Syntax { .. })));
        assert!(matches!(
            parse_scalar_with("k", &ParameterSet::declared(["lam"])),
            Err(ScalarError::Undeclared { .. })
        ));
    }

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/2").unwrap(), rational(-3, 2));
        assert!(parse_rational("lam").is_err());
    }
}
