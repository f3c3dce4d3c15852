//! Exterior algebra over an oriented orthonormal coframe of dimension 6 or 7.
//!
//! Basis monomials `e^I` are stored as bitmasks (`bit i-1` for `e^i`). In a
//! seven-dimensional frame the last coframe element is `dt`.

mod complex;
mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

use num_traits::Signed;

use crate::scalar::{Bindings, Poly, Scalar, ScalarError, Symbol};

pub use complex::{
    lefschetz_coefficients, psi_minus, psi_plus, kahler_form, ComplexStructure, Lefschetz,
    LefschetzSlot, TypeKey,
};
pub use parse::{parse_blade, parse_form, parse_form_with};
pub(crate) use parse::parse_form_tokens;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExteriorError {
    #[error("frame dimension {0} is not supported (expected 6 or 7)")]
    Dimension(usize),
    #[error("forms live on different frames ({0} and {1})")]
    FrameMismatch(usize, usize),
    #[error("operation requires a homogeneous form, found grades {0:?}")]
    MixedGrade(Vec<usize>),
    #[error("contraction of a {outer}-form by a {inner}-form is undefined")]
    DegreeTooLarge { inner: usize, outer: usize },
    #[error("index {index} is outside the frame of dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("repeated index {index} at {pos}")]
    RepeatedIndex { index: usize, pos: usize },
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("the complex structure acts on six-dimensional frames only")]
    NotSixDimensional,
    #[error("form lies outside the expected SU(3) module; residual {0}")]
    OutsideModule(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// The oriented orthonormal coframe `e^1..e^n`, positively oriented by `e^{1..n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frame {
    dim: u8,
}

impl Frame {
    pub const SIX: Frame = Frame { dim: 6 };
    pub const SEVEN: Frame = Frame { dim: 7 };

    pub fn new(dim: usize) -> Result<Frame, ExteriorError> {
        match dim {
            6 => Ok(Frame::SIX),
            7 => Ok(Frame::SEVEN),
            d => Err(ExteriorError::Dimension(d)),
        }
    }

    pub fn dim(self) -> usize {
        self.dim as usize
    }

    pub fn full_mask(self) -> u8 {
        ((1u16 << self.dim) - 1) as u8
    }

    /// All masks of a given grade in ascending order.
    pub fn masks_of_grade(self, k: usize) -> Vec<u8> {
        (0..=self.full_mask())
            .filter(|m| m.count_ones() as usize == k)
            .collect()
    }

    pub fn volume(self) -> Form {
        Form::blade(self, self.full_mask())
    }
}

/// 1-based indices of a mask in increasing order.
pub fn mask_indices(mask: u8) -> Vec<usize> {
    (0..8).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect()
}

pub fn mask_of(indices: &[usize]) -> u8 {
    indices.iter().fold(0u8, |m, &i| m | 1 << (i - 1))
}

/// Sign of `e^A ∧ e^B = sign · e^{A∪B}`, or `None` when `A ∩ B ≠ ∅`.
pub fn wedge_sign(a: u8, b: u8) -> Option<i8> {
    if a & b != 0 {
        return None;
    }
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        inversions += ((a as u16) >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    Some(if inversions % 2 == 0 { 1 } else { -1 })
}

fn sign_scalar(c: &Scalar, sign: i8) -> Scalar {
    if sign < 0 {
        -c
    } else {
        c.clone()
    }
}

/// A differential form with constant (invariant) coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form {
    frame: Frame,
    terms: BTreeMap<u8, Scalar>,
}

impl Form {
    pub fn zero(frame: Frame) -> Form {
        Form {
            frame,
            terms: BTreeMap::new(),
        }
    }

    pub fn blade(frame: Frame, mask: u8) -> Form {
        Form::term(frame, mask, Scalar::one())
    }

    pub fn term(frame: Frame, mask: u8, c: Scalar) -> Form {
        assert!(mask & !frame.full_mask() == 0, "mask outside frame");
        let mut f = Form::zero(frame);
        if !c.is_zero() {
            f.terms.insert(mask, c);
        }
        f
    }

    /// `e^{i_1} ∧ … ∧ e^{i_k}` for 1-based indices in any order.
    pub fn e(frame: Frame, indices: &[usize]) -> Form {
        let mut f = Form::constant(frame, Scalar::one());
        for &i in indices {
            assert!(i >= 1 && i <= frame.dim(), "index outside frame");
            f = f.wedge(&Form::blade(frame, 1 << (i - 1)));
        }
        f
    }

    pub fn constant(frame: Frame, c: Scalar) -> Form {
        Form::term(frame, 0, c)
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (u8, &Scalar)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mask: u8) -> Scalar {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    /// Coefficient of `e^{indices}` where the indices may be unordered.
    pub fn coeff_of(&self, indices: &[usize]) -> Scalar {
        let basis = Form::e(self.frame, indices);
        let value = match basis.terms().next() {
            Some((m, s)) => &self.coeff(m) * s,
            None => Scalar::zero(),
        };
        value
    }

    pub fn grades(&self) -> BTreeSet<usize> {
        self.terms.keys().map(|m| m.count_ones() as usize).collect()
    }

    /// `Ok(None)` for the zero form, the grade of a homogeneous form, or an error.
    pub fn grade(&self) -> Result<Option<usize>, ExteriorError> {
        let g = self.grades();
        match g.len() {
            0 => Ok(None),
            1 => Ok(g.into_iter().next()),
            _ => Err(ExteriorError::MixedGrade(g.into_iter().collect())),
        }
    }

    pub fn grade_part(&self, k: usize) -> Form {
        Form {
            frame: self.frame,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.values().flat_map(Scalar::symbols).collect()
    }

    fn check_frame(&self, o: &Form) -> Result<(), ExteriorError> {
        if self.frame != o.frame {
            return Err(ExteriorError::FrameMismatch(self.frame.dim(), o.frame.dim()));
        }
        Ok(())
    }

    fn add_term(&mut self, mask: u8, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mask) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, o: &Form) -> Result<Form, ExteriorError> {
        self.check_frame(o)?;
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, k: &Scalar) -> Form {
        if k.is_zero() {
            return Form::zero(self.frame);
        }
        Form {
            frame: self.frame,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    pub fn try_wedge(&self, o: &Form) -> Result<Form, ExteriorError> {
        self.check_frame(o)?;
        let mut out = Form::zero(self.frame);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                if let Some(s) = wedge_sign(*ma, *mb) {
                    out.add_term(ma | mb, sign_scalar(&(ca * cb), s));
                }
            }
        }
        Ok(out)
    }

    /// Panics on a frame mismatch; see [`Form::try_wedge`].
    pub fn wedge(&self, o: &Form) -> Form {
        self.try_wedge(o).expect("wedge of forms on different frames")
    }

    /// `*e^I = sign(I, I^c) e^{I^c}`; requires a homogeneous form.
    pub fn hodge(&self) -> Result<Form, ExteriorError> {
        self.grade()?;
        let full = self.frame.full_mask();
        let mut out = Form::zero(self.frame);
        for (m, c) in &self.terms {
            let comp = full & !m;
            let s = wedge_sign(*m, comp).expect("disjoint");
            out.add_term(comp, sign_scalar(c, s));
        }
        Ok(out)
    }

    /// Metric inner product with `⟨e^I, e^J⟩ = δ_IJ`.
    pub fn try_inner(&self, o: &Form) -> Result<Scalar, ExteriorError> {
        self.check_frame(o)?;
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            if let Some(d) = o.terms.get(m) {
                acc += &(c * d);
            }
        }
        Ok(acc)
    }

    pub fn inner(&self, o: &Form) -> Scalar {
        self.try_inner(o).expect("inner product of forms on different frames")
    }

    /// Contraction `self ⌟ target`, the adjoint of `self ∧ ·`:
    /// `⟨self ⌟ γ, δ⟩ = ⟨γ, self ∧ δ⟩`.
    pub fn interior(&self, target: &Form) -> Result<Form, ExteriorError> {
        self.check_frame(target)?;
        if let (Some(i), Some(o)) = (self.grade()?, target.grade()?) {
            if i > o {
                return Err(ExteriorError::DegreeTooLarge { inner: i, outer: o });
            }
        }
        let mut out = Form::zero(self.frame);
        for (mj, cj) in &self.terms {
            for (mi, ci) in &target.terms {
                if mj & mi != *mj {
                    continue;
                }
                let rest = mi & !mj;
                let s = wedge_sign(*mj, rest).expect("disjoint");
                out.add_term(rest, sign_scalar(&(cj * ci), s));
            }
        }
        Ok(out)
    }

    pub fn map_coeffs<E>(&self, f: impl Fn(&Scalar) -> Result<Scalar, E>) -> Result<Form, E> {
        let mut out = Form::zero(self.frame);
        for (m, c) in &self.terms {
            out.add_term(*m, f(c)?);
        }
        Ok(out)
    }

    pub fn substitute(&self, b: &Bindings) -> Result<Form, ScalarError> {
        self.map_coeffs(|c| c.substitute(b))
    }

    /// The same coefficients viewed in another frame; panics if a mask does not fit.
    pub fn reframe(&self, frame: Frame) -> Form {
        Form {
            frame,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    assert!(m & !frame.full_mask() == 0, "form does not fit the target frame");
                    (*m, c.clone())
                })
                .collect(),
        }
    }

    /// Writes the form as `a + b ∧ e^n` with `a`, `b` free of the last coframe
    /// element `e^n`; both stay on the original frame.
    pub fn split_last(&self) -> (Form, Form) {
        let last = 1u8 << (self.frame.dim() - 1);
        let mut a = Form::zero(self.frame);
        let mut b = Form::zero(self.frame);
        for (m, c) in &self.terms {
            if m & last == 0 {
                a.add_term(*m, c.clone());
            } else {
                let rest = m & !last;
                let s = wedge_sign(rest, last).expect("disjoint");
                b.add_term(rest, sign_scalar(c, s));
            }
        }
        (a, b)
    }

    /// Terms in display order: by grade, then lexicographically by indices.
    fn display_order(&self) -> Vec<(u8, &Scalar)> {
        let mut v: Vec<(u8, &Scalar)> = self.terms().collect();
        v.sort_by_key(|(m, _)| (m.count_ones(), mask_indices(*m)));
        v
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, o: &Form) -> Form {
        self.try_add(o).expect("sum of forms on different frames")
    }
}

impl Add for Form {
    type Output = Form;
    fn add(self, o: Form) -> Form {
        &self + &o
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, o: &Form) -> Form {
        self + &(-o)
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(self, o: Form) -> Form {
        &self - &o
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form {
            frame: self.frame,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

fn blade_word(mask: u8) -> String {
    if mask == 0 {
        return "1".into();
    }
    mask_indices(mask).iter().map(|i| i.to_string()).collect()
}

impl fmt::Display for Form {
    /// Renders in the literal syntax accepted by [`parse_form`], e.g. `2/3*127 - 4*567`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            if m == 0 {
                write!(f, "({c})")?;
                continue;
            }
            let word = blade_word(m);
            let num = c.numerator();
            if c.is_polynomial() && num.num_terms() == 1 {
                let (mono, k) = num.leading().expect("nonzero");
                let neg = k.is_negative();
                match (i, neg) {
                    (0, true) => f.write_str("-")?,
                    (0, false) => {}
                    (_, true) => f.write_str(" - ")?,
                    (_, false) => f.write_str(" + ")?,
                }
                let abs = Scalar::from_poly(Poly::term(k.abs(), mono.clone()));
                if abs.is_one() {
                    f.write_str(&word)?;
                } else {
                    write!(f, "{abs}*{word}")?;
                }
            } else {
                if i > 0 {
                    f.write_str(" + ")?;
                }
                write!(f, "({c})*{word}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}", self.frame.dim(), self)
    }
}
