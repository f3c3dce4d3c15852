//! The standard almost complex structure on a six-dimensional coframe, type
//! decomposition and the SU(3) splitting of 4-forms.

use std::collections::BTreeMap;

use super::{mask_indices, parse_form, ExteriorError, Form, Frame};
use crate::linalg::{solve_rational, Matrix};
use crate::scalar::{Rational, Scalar};

/// `ω = e^{12} + e^{34} + e^{56}` on the given frame.
pub fn kahler_form(frame: Frame) -> Form {
    parse_form("12+34+56", frame).expect("literal")
}

/// `Re (e^1 + i e^2)(e^3 + i e^4)(e^5 + i e^6)`.
pub fn psi_plus(frame: Frame) -> Form {
    parse_form("135-146-236-245", frame).expect("literal")
}

/// `Im (e^1 + i e^2)(e^3 + i e^4)(e^5 + i e^6)`.
pub fn psi_minus(frame: Frame) -> Form {
    parse_form("136+145+235-246", frame).expect("literal")
}

/// Unordered type label `{p,q} + {q,p}` with `p >= q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TypeKey {
    pub p: usize,
    pub q: usize,
}

impl std::fmt::Display for TypeKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.p, self.q)
    }
}

/// `J e^{2m-1} = -e^{2m}`, `J e^{2m} = e^{2m-1}` on `e^1..e^6`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComplexStructure;

impl ComplexStructure {
    pub fn standard() -> Self {
        ComplexStructure
    }

    fn on_index(i: usize) -> (usize, i8) {
        if i % 2 == 1 {
            (i + 1, -1)
        } else {
            (i - 1, 1)
        }
    }

    fn check(a: &Form) -> Result<(), ExteriorError> {
        if a.frame().dim() != 6 && a.terms().any(|(m, _)| m & 0x40 != 0) {
            return Err(ExteriorError::NotSixDimensional);
        }
        Ok(())
    }

    /// Applies `J` to every factor.
    pub fn apply(&self, a: &Form) -> Result<Form, ExteriorError> {
        Self::check(a)?;
        let frame = a.frame();
        let mut out = Form::zero(frame);
        for (m, c) in a.terms() {
            let mut img = Form::constant(frame, c.clone());
            for i in mask_indices(m) {
                let (j, s) = Self::on_index(i);
                img = img.wedge(&Form::term(frame, 1 << (j - 1), Scalar::int(s as i64)));
            }
            out = &out + &img;
        }
        Ok(out)
    }

    /// `J` extended as a derivation; on a complex `(p,q)` form it acts as `i(p-q)`.
    pub fn derivation(&self, a: &Form) -> Result<Form, ExteriorError> {
        Self::check(a)?;
        let frame = a.frame();
        let mut out = Form::zero(frame);
        for (m, c) in a.terms() {
            let idx = mask_indices(m);
            for slot in 0..idx.len() {
                let mut img = Form::constant(frame, c.clone());
                for (k, &i) in idx.iter().enumerate() {
                    let f = if k == slot {
                        let (j, s) = Self::on_index(i);
                        Form::term(frame, 1 << (j - 1), Scalar::int(s as i64))
                    } else {
                        Form::blade(frame, 1 << (i - 1))
                    };
                    img = img.wedge(&f);
                }
                out = &out + &img;
            }
        }
        Ok(out)
    }

    /// Splits a homogeneous form into its real `{p,q}+{q,p}` components; the
    /// components sum to the input and only nonzero ones are returned.
    pub fn type_decompose(&self, a: &Form) -> Result<BTreeMap<TypeKey, Form>, ExteriorError> {
        Self::check(a)?;
        let Some(k) = a.grade()? else {
            return Ok(BTreeMap::new());
        };
        let keys: Vec<TypeKey> = (0..=k)
            .filter(|&q| 2 * q <= k)
            .map(|q| TypeKey { p: k - q, q })
            .filter(|t| t.p <= 3)
            .collect();
        let eig = |t: &TypeKey| -(((t.p - t.q) * (t.p - t.q)) as i64);
        let mut out = BTreeMap::new();
        for t in &keys {
            let mut proj = a.clone();
            for o in keys.iter().filter(|o| *o != t) {
                let d2 = self.derivation(&self.derivation(&proj)?)?;
                let shifted = &d2 - &proj.scale(&Scalar::int(eig(o)));
                proj = shifted.scale(&Scalar::frac(1, eig(t) - eig(o)));
            }
            if !proj.is_zero() {
                out.insert(*t, proj);
            }
        }
        Ok(out)
    }
}

/// Which of `ψ±` carries the 1-form component in [`lefschetz_coefficients`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LefschetzSlot {
    PsiPlus,
    PsiMinus,
}

/// `a = γ ∧ ψ + W ∧ ω + c ω²` with `W` primitive of type (1,1).
#[derive(Debug, Clone, PartialEq)]
pub struct Lefschetz {
    pub c0: Scalar,
    pub gamma: Form,
    pub w2: Form,
}

/// A basis of primitive real (1,1)-forms.
pub(crate) fn primitive_11_basis(frame: Frame) -> Vec<Form> {
    ["12-34", "34-56", "13+24", "14-23", "15+26", "16-25", "35+46", "36-45"]
        .iter()
        .map(|s| parse_form(s, frame).expect("literal"))
        .collect()
}

/// Solves for the SU(3) components of a 4-form on a six-dimensional frame.
pub fn lefschetz_coefficients(a: &Form, slot: LefschetzSlot) -> Result<Lefschetz, ExteriorError> {
    let frame = a.frame();
    if frame.dim() != 6 {
        return Err(ExteriorError::NotSixDimensional);
    }
    match a.grade()? {
        None | Some(4) => {}
        Some(g) => return Err(ExteriorError::MixedGrade(vec![g])),
    }
    let omega = kahler_form(frame);
    let psi = match slot {
        LefschetzSlot::PsiPlus => psi_plus(frame),
        LefschetzSlot::PsiMinus => psi_minus(frame),
    };
    let mut columns: Vec<Form> = (1..=6).map(|i| Form::e(frame, &[i]).wedge(&psi)).collect();
    let w_basis = primitive_11_basis(frame);
    columns.extend(w_basis.iter().map(|w| w.wedge(&omega)));
    columns.push(omega.wedge(&omega));
    let rows = frame.masks_of_grade(4);
    let mut m = Matrix::<Rational>::zeros(rows.len(), columns.len());
    for (j, col) in columns.iter().enumerate() {
        for (i, mask) in rows.iter().enumerate() {
            let c = col.coeff(*mask);
            m.set(i, j, c.as_rational().expect("constant basis"));
        }
    }
    let rhs: Vec<Scalar> = rows.iter().map(|mk| a.coeff(*mk)).collect();
    let sol = solve_rational(&m, &rhs, |r| Scalar::from_rational(r.clone()));
    if !sol.is_consistent() {
        let r: Vec<String> = sol.residual.iter().map(|s| s.to_string()).collect();
        return Err(ExteriorError::OutsideModule(r.join(", ")));
    }
    let mut gamma = Form::zero(frame);
    for i in 0..6 {
        gamma = &gamma + &Form::e(frame, &[i + 1]).scale(&sol.x[i]);
    }
    let mut w2 = Form::zero(frame);
    for (k, w) in w_basis.iter().enumerate() {
        w2 = &w2 + &w.scale(&sol.x[6 + k]);
    }
    Ok(Lefschetz {
        c0: sol.x[14].clone(),
        gamma,
        w2,
    })
}
