//! Nilpotent Lie algebras given by the differentials of a coframe.
//!
//! An algebra is stored as its Chevalley–Eilenberg differential on the coframe,
//! `d e^i`, written in Salamon notation such as `0,0,12,13,23,14`. Brackets are
//! recovered through `e^i([X,Y]) = -d e^i(X,Y)`.

mod basis;
mod catalog;
mod invariants;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::exterior::{parse_form_tokens, ExteriorError, Form, Frame};
use crate::scalar::{lex, Bindings, ParameterSet, ScalarError, Symbol, Tok, Token};

pub use basis::BasisChange;
pub use catalog::{catalog, catalog_entry, parse_list_file, NamedAlgebra};
pub use invariants::{
    generic_bindings, Evaluation, Fingerprint, RealForm, Series, Sign,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LieError {
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("expected 6 or 7 entries, found {0}")]
    EntryCount(usize),
    #[error("entry {index} is not a 2-form")]
    EntryGrade { index: usize },
    #[error("Jacobi identity fails: d(d e^{index}) = {certificate}")]
    Jacobi { index: usize, certificate: Form },
    #[error("not presented nilpotently: no filtration reaches e^{0:?}")]
    NotNilpotent(Vec<usize>),
    #[error("non-generic evaluation: {0}")]
    NonGeneric(String),
    #[error("singular basis change (determinant {0})")]
    Singular(String),
    #[error("dimension mismatch: {0} and {1}")]
    DimensionMismatch(usize, usize),
    #[error("list file line {line}: {msg}")]
    ListFile { line: usize, msg: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
}

/// Outcome of [`LieAlgebra::check_jacobi`]: the nonzero `d(d e^i)`, if any.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobiReport {
    pub failures: Vec<(usize, Form)>,
}

impl JacobiReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A Lie algebra presented by `d e^1, …, d e^n`.
#[derive(Clone, PartialEq)]
pub struct LieAlgebra {
    frame: Frame,
    d: Vec<Form>,
    /// `d(e^I)` for every mask `I`, indexed by mask.
    d_masks: Vec<Form>,
}

impl LieAlgebra {
    /// Builds the algebra and verifies the Jacobi identity.
    pub fn new(frame: Frame, d: Vec<Form>) -> Result<LieAlgebra, LieError> {
        let g = LieAlgebra::new_unchecked(frame, d)?;
        if let Some((index, certificate)) = g.check_jacobi().failures.into_iter().next() {
            return Err(LieError::Jacobi { index, certificate });
        }
        Ok(g)
    }

    /// Builds the derivation without checking `d² = 0`; shape is still validated.
    pub fn new_unchecked(frame: Frame, d: Vec<Form>) -> Result<LieAlgebra, LieError> {
        if d.len() != frame.dim() {
            return Err(LieError::EntryCount(d.len()));
        }
        for (i, f) in d.iter().enumerate() {
            if f.frame() != frame {
                return Err(ExteriorError::FrameMismatch(frame.dim(), f.frame().dim()).into());
            }
            if !matches!(f.grade(), Ok(None) | Ok(Some(2))) {
                return Err(LieError::EntryGrade { index: i + 1 });
            }
        }
        let size = 1usize << frame.dim();
        let mut d_masks = vec![Form::zero(frame); size];
        for mask in 1..size {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let head = Form::blade(frame, 1 << low);
            let tail = Form::blade(frame, rest as u8);
            let v = &d[low].wedge(&tail) - &head.wedge(&d_masks[rest]);
            d_masks[mask] = v;
        }
        Ok(LieAlgebra { frame, d, d_masks })
    }

    /// The abelian algebra of the given frame.
    pub fn abelian(frame: Frame) -> LieAlgebra {
        LieAlgebra::new_unchecked(frame, vec![Form::zero(frame); frame.dim()]).expect("valid shape")
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    /// `d e^i` for a 1-based index.
    pub fn de(&self, i: usize) -> &Form {
        &self.d[i - 1]
    }

    pub fn differentials(&self) -> &[Form] {
        &self.d
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.d.iter().flat_map(Form::symbols).collect()
    }

    /// The derivation of degree one extending the coframe differentials.
    pub fn extend_d(&self, a: &Form) -> Form {
        assert_eq!(a.frame(), self.frame, "form and algebra live on different frames");
        let mut out = Form::zero(self.frame);
        for (m, c) in a.terms() {
            out = &out + &self.d_masks[m as usize].scale(c);
        }
        out
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        let failures = self
            .d
            .iter()
            .enumerate()
            .filter_map(|(i, f)| {
                let dd = self.extend_d(f);
                (!dd.is_zero()).then_some((i + 1, dd))
            })
            .collect();
        JacobiReport { failures }
    }

    /// A peeling order `i_1, …, i_n` with each `d e^{i_k}` in `Λ²⟨e^{i_1},…,e^{i_{k-1}}⟩`.
    pub fn nilpotent_order(&self) -> Result<Vec<usize>, LieError> {
        let mut peeled = 0u8;
        let mut order = Vec::new();
        loop {
            let next = (1..=self.dim()).find(|&i| {
                peeled & (1 << (i - 1)) == 0 && self.d[i - 1].terms().all(|(m, _)| m & !peeled == 0)
            });
            match next {
                Some(i) => {
                    peeled |= 1 << (i - 1);
                    order.push(i);
                }
                None => break,
            }
        }
        if order.len() == self.dim() {
            Ok(order)
        } else {
            let stuck = (1..=self.dim()).filter(|i| !order.contains(i)).collect();
            Err(LieError::NotNilpotent(stuck))
        }
    }

    pub fn substitute(&self, b: &Bindings) -> Result<LieAlgebra, LieError> {
        let d = self
            .d
            .iter()
            .map(|f| f.substitute(b))
            .collect::<Result<Vec<_>, _>>()?;
        LieAlgebra::new_unchecked(self.frame, d)
    }

    /// Coordinates of `[e_j, e_k]` in the dual basis `e_1..e_n`.
    pub fn bracket(&self, j: usize, k: usize) -> Vec<crate::scalar::Scalar> {
        let pair = Form::e(self.frame, &[j, k]);
        self.d
            .iter()
            .map(|f| {
                let c = match pair.terms().next() {
                    Some((m, s)) => &f.coeff(m) * s,
                    None => crate::scalar::Scalar::zero(),
                };
                -c
            })
            .collect()
    }
}

impl fmt::Display for LieAlgebra {
    /// Salamon notation, e.g. `(0,0,12,13,23,14)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, d) in self.d.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{d}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra{self}")
    }
}

fn split_entries(toks: &[Token]) -> Vec<&[Token]> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            Tok::Comma if depth == 0 => {
                out.push(&toks[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&toks[start..]);
    out
}

/// Whether the outer parentheses enclose the whole token list.
fn wrapped(toks: &[Token]) -> bool {
    if toks.len() < 2 || toks[0].tok != Tok::LParen || toks[toks.len() - 1].tok != Tok::RParen {
        return false;
    }
    let mut depth = 0;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => {
                depth -= 1;
                if depth == 0 && i + 1 < toks.len() {
                    return false;
                }
            }
            _ => {}
        }
    }
    true
}

/// Parses Salamon notation with 6 or 7 comma-separated entries and checks Jacobi.
pub fn parse_salamon_with(text: &str, params: &ParameterSet) -> Result<LieAlgebra, LieError> {
    let mut toks = lex(text)?;
    if wrapped(&toks) {
        toks = toks[1..toks.len() - 1].to_vec();
    }
    let entries = split_entries(&toks);
    let frame = Frame::new(entries.len()).map_err(|_| LieError::EntryCount(entries.len()))?;
    let mut d = Vec::with_capacity(entries.len());
    for (i, entry) in entries.iter().enumerate() {
        let end = entry
            .last()
            .map_or(text.len(), |t| t.pos + 1);
        let f = parse_form_tokens(entry, end, frame, params)?;
        if !matches!(f.grade(), Ok(None) | Ok(Some(2))) {
            return Err(LieError::EntryGrade { index: i + 1 });
        }
        d.push(f);
    }
    LieAlgebra::new(frame, d)
}

/// [`parse_salamon_with`] accepting any non-reserved parameter name.
pub fn parse_salamon(text: &str) -> Result<LieAlgebra, LieError> {
    parse_salamon_with(text, &ParameterSet::Open)
}
