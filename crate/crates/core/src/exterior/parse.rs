//! Form literals: sums of `coeff*IJK` terms such as `12+34+56` or `-lam*15 + k*25`.

use super::{wedge_sign, ExteriorError, Form, Frame};
use crate::scalar::{lex, parse_tokens, ParameterSet, Scalar, Tok, Token};

/// Parses a blade word (`1256`, `e1256`, `dt`) into its mask and reordering sign.
pub fn parse_blade(word: &str, frame: Frame, pos: usize) -> Result<(u8, i8), ExteriorError> {
    let digits = if word == "dt" {
        if frame.dim() != 7 {
            return Err(ExteriorError::Syntax {
                pos,
                msg: "`dt` requires a seven-dimensional frame".into(),
            });
        }
        "7"
    } else {
        word.strip_prefix('e').unwrap_or(word)
    };
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return Err(ExteriorError::Syntax {
            pos,
            msg: format!("`{word}` is not a coframe monomial"),
        });
    }
    let mut mask = 0u8;
    let mut sign = 1i8;
    for (k, c) in digits.chars().enumerate() {
        let i = c.to_digit(10).expect("digit") as usize;
        if i == 0 || i > frame.dim() {
            return Err(ExteriorError::IndexOutOfRange {
                index: i,
                dim: frame.dim(),
            });
        }
        let bit = 1u8 << (i - 1);
        let s = wedge_sign(mask, bit).ok_or(ExteriorError::RepeatedIndex {
            index: i,
            pos: pos + k,
        })?;
        sign *= s;
        mask |= bit;
    }
    Ok((mask, sign))
}

fn blade_token(t: &Token, frame: Frame) -> Option<Result<(u8, i8), ExteriorError>> {
    match &t.tok {
        Tok::Num(s) => Some(parse_blade(s, frame, t.pos)),
        Tok::Ident(s) if s == "dt" || s.strip_prefix('e').is_some_and(|r| !r.is_empty() && r.chars().all(|c| c.is_ascii_digit())) => {
            Some(parse_blade(s, frame, t.pos))
        }
        _ => None,
    }
}

fn ends_value(t: &Tok) -> bool {
    matches!(t, Tok::Num(_) | Tok::Ident(_) | Tok::RParen)
}

/// Splits a token stream into signed terms at top-level `+` and `-`.
pub(crate) fn split_terms(toks: &[Token]) -> Vec<(bool, Vec<Token>)> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut neg = false;
    let mut depth = 0i32;
    let mut pending_sign = false;
    for (i, t) in toks.iter().enumerate() {
        let boundary = depth == 0
            && matches!(t.tok, Tok::Plus | Tok::Minus)
            && (i == 0 || ends_value(&toks[i - 1].tok));
        if boundary {
            if !cur.is_empty() {
                out.push((neg, std::mem::take(&mut cur)));
            }
            neg = t.tok == Tok::Minus;
            pending_sign = true;
            continue;
        }
        pending_sign = false;
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            _ => {}
        }
        cur.push(t.clone());
    }
    if !cur.is_empty() || out.is_empty() || pending_sign {
        out.push((neg, cur));
    }
    out
}

pub(crate) fn parse_form_tokens(
    toks: &[Token],
    end: usize,
    frame: Frame,
    params: &ParameterSet,
) -> Result<Form, ExteriorError> {
    if toks.is_empty() {
        return Err(ExteriorError::Syntax {
            pos: end,
            msg: "empty form".into(),
        });
    }
    let mut out = Form::zero(frame);
    for (neg, term) in split_terms(toks) {
        let Some(first) = term.first() else {
            return Err(ExteriorError::Syntax {
                pos: end,
                msg: "dangling sign".into(),
            });
        };
        let mut depth = 0;
        let mut star = None;
        for (i, t) in term.iter().enumerate() {
            match t.tok {
                Tok::LParen => depth += 1,
                Tok::RParen => depth -= 1,
                Tok::Star if depth == 0 => star = Some(i),
                _ => {}
            }
        }
        let (coeff, mask, sign) = match star {
            Some(i) => {
                if term.len() != i + 2 {
                    let pos = term.get(i + 1).map_or(end, |t| t.pos);
                    return Err(ExteriorError::Syntax {
                        pos,
                        msg: "expected a single coframe monomial after `*`".into(),
                    });
                }
                let (mask, sign) = blade_token(&term[i + 1], frame).unwrap_or_else(|| {
                    Err(ExteriorError::Syntax {
                        pos: term[i + 1].pos,
                        msg: "expected a coframe monomial".into(),
                    })
                })?;
                let next_pos = term[i].pos;
                (parse_tokens(&term[..i], next_pos, params)?, mask, sign)
            }
            None if term.len() == 1 && first.tok == Tok::Num("0".into()) => continue,
            None if term.len() == 1 => match blade_token(first, frame) {
                Some(r) => {
                    let (mask, sign) = r?;
                    (Scalar::one(), mask, sign)
                }
                None => (parse_tokens(&term, end, params)?, 0, 1),
            },
            None => (parse_tokens(&term, end, params)?, 0, 1),
        };
        let c = if (sign < 0) != neg { -coeff } else { coeff };
        out = &out + &Form::term(frame, mask, c);
    }
    Ok(out)
}

pub fn parse_form_with(text: &str, frame: Frame, params: &ParameterSet) -> Result<Form, ExteriorError> {
    let toks = lex(text)?;
    parse_form_tokens(&toks, text.len(), frame, params)
}

/// Parses a form literal with any non-reserved parameter names.
pub fn parse_form(text: &str, frame: Frame) -> Result<Form, ExteriorError> {
    parse_form_with(text, frame, &ParameterSet::Open)
}
