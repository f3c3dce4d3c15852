//! Invertible changes of coframe `f^i = Σ_j M_ij e^j`.

use std::fmt;

use super::{LieAlgebra, LieError};
use crate::exterior::{mask_indices, Form, Frame};
use crate::linalg::Matrix;
use crate::scalar::{Bindings, Scalar};

/// An invertible coframe change with its inverse cached.
#[derive(Clone, PartialEq)]
pub struct BasisChange {
    frame: Frame,
    matrix: Matrix<Scalar>,
    inverse: Matrix<Scalar>,
}

impl BasisChange {
    pub fn from_matrix(frame: Frame, matrix: Matrix<Scalar>) -> Result<BasisChange, LieError> {
        let n = frame.dim();
        if matrix.rows() != n || matrix.cols() != n {
            return Err(LieError::DimensionMismatch(n, matrix.rows().max(matrix.cols())));
        }
        let inverse = matrix
            .inverse()
            .ok_or_else(|| LieError::Singular(matrix.determinant().to_string()))?;
        Ok(BasisChange {
            frame,
            matrix,
            inverse,
        })
    }

    pub fn from_rows(frame: Frame, rows: Vec<Vec<Scalar>>) -> Result<BasisChange, LieError> {
        if rows.len() != frame.dim() || rows.iter().any(|r| r.len() != frame.dim()) {
            return Err(LieError::DimensionMismatch(frame.dim(), rows.len()));
        }
        BasisChange::from_matrix(frame, Matrix::from_rows(rows))
    }

    /// The new coframe given as 1-forms in the old one.
    pub fn from_coframe(frame: Frame, coframe: &[Form]) -> Result<BasisChange, LieError> {
        let rows = coframe
            .iter()
            .map(|f| {
                if f.grades().iter().any(|&g| g != 1) {
                    return Err(LieError::EntryGrade { index: 1 });
                }
                Ok((1..=frame.dim()).map(|j| f.coeff_of(&[j])).collect())
            })
            .collect::<Result<Vec<Vec<Scalar>>, _>>()?;
        BasisChange::from_rows(frame, rows)
    }

    pub fn identity(frame: Frame) -> BasisChange {
        let m = Matrix::identity(frame.dim());
        BasisChange {
            frame,
            matrix: m.clone(),
            inverse: m,
        }
    }

    /// Exchanges `e^i` and `e^j`.
    pub fn swap(frame: Frame, i: usize, j: usize) -> BasisChange {
        let mut m = Matrix::identity(frame.dim());
        m.set(i - 1, i - 1, Scalar::zero());
        m.set(j - 1, j - 1, Scalar::zero());
        m.set(i - 1, j - 1, Scalar::one());
        m.set(j - 1, i - 1, Scalar::one());
        BasisChange::from_matrix(frame, m).expect("permutation")
    }

    /// `f^i = c e^i`.
    pub fn scale(frame: Frame, i: usize, c: Scalar) -> Result<BasisChange, LieError> {
        let mut m = Matrix::identity(frame.dim());
        m.set(i - 1, i - 1, c);
        BasisChange::from_matrix(frame, m)
    }

    pub fn diagonal(frame: Frame, entries: Vec<Scalar>) -> Result<BasisChange, LieError> {
        let mut m = Matrix::identity(frame.dim());
        for (i, c) in entries.into_iter().enumerate() {
            m.set(i, i, c);
        }
        BasisChange::from_matrix(frame, m)
    }

    /// Redefines `e^i` as the given 1-form and keeps the other coframe elements.
    pub fn redefine(frame: Frame, i: usize, image: &Form) -> Result<BasisChange, LieError> {
        let mut m = Matrix::identity(frame.dim());
        for j in 1..=frame.dim() {
            m.set(i - 1, j - 1, image.coeff_of(&[j]));
        }
        BasisChange::from_matrix(frame, m)
    }

    /// Rotation by `(c, s)` with `c² + s² = 1` acting on the pairs `(e^1, e^3)`
    /// and `(e^2, e^4)` simultaneously, which commutes with the complex structure.
    pub fn so2_gauge(frame: Frame, c: Scalar, s: Scalar) -> Result<BasisChange, LieError> {
        let mut m = Matrix::identity(frame.dim());
        for (a, b) in [(0, 2), (1, 3)] {
            m.set(a, a, c.clone());
            m.set(a, b, s.clone());
            m.set(b, a, -&s);
            m.set(b, b, c.clone());
        }
        BasisChange::from_matrix(frame, m)
    }

    /// Applies `self` and then `next`.
    pub fn then(&self, next: &BasisChange) -> BasisChange {
        assert_eq!(self.frame, next.frame, "basis changes on different frames");
        BasisChange {
            frame: self.frame,
            matrix: next.matrix.mul(&self.matrix),
            inverse: self.inverse.mul(&next.inverse),
        }
    }

    /// Composes a sequence of steps in order of application.
    pub fn chain<'a>(frame: Frame, steps: impl IntoIterator<Item = &'a BasisChange>) -> BasisChange {
        steps
            .into_iter()
            .fold(BasisChange::identity(frame), |acc, s| acc.then(s))
    }

    pub fn inverse(&self) -> BasisChange {
        BasisChange {
            frame: self.frame,
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
        }
    }

    pub fn frame(&self) -> Frame {
        self.frame
    }

    pub fn matrix(&self) -> &Matrix<Scalar> {
        &self.matrix
    }

    pub fn determinant(&self) -> Scalar {
        self.matrix.determinant()
    }

    pub fn substitute(&self, b: &Bindings) -> Result<BasisChange, LieError> {
        let m = self.matrix.try_map(|c| c.substitute(b))?;
        BasisChange::from_matrix(self.frame, m)
    }

    /// Whether `M Mᵀ = 1`, so the new coframe is orthonormal for the old metric.
    pub fn is_orthogonal(&self) -> bool {
        self.matrix.mul(&self.matrix.transpose()) == Matrix::identity(self.frame.dim())
    }

    /// New coframe element `f^i` as a 1-form in the old coframe.
    pub fn new_covector(&self, i: usize) -> Form {
        row_form(self.frame, &self.matrix, i - 1)
    }

    /// Rewrites a form given in the old coframe in terms of the new one.
    pub fn to_new(&self, a: &Form) -> Form {
        let images: Vec<Form> = (0..self.frame.dim())
            .map(|j| row_form(self.frame, &self.inverse, j))
            .collect();
        substitute_linear(a, &images)
    }

    /// Rewrites a form given in the new coframe in terms of the old one.
    pub fn to_old(&self, a: &Form) -> Form {
        let images: Vec<Form> = (0..self.frame.dim())
            .map(|j| row_form(self.frame, &self.matrix, j))
            .collect();
        substitute_linear(a, &images)
    }
}

fn row_form(frame: Frame, m: &Matrix<Scalar>, r: usize) -> Form {
    (0..frame.dim()).fold(Form::zero(frame), |acc, j| {
        &acc + &Form::term(frame, 1 << j, m.get(r, j).clone())
    })
}

/// Replaces each coframe element `e^j` by `images[j]` and expands.
fn substitute_linear(a: &Form, images: &[Form]) -> Form {
    let frame = a.frame();
    let mut out = Form::zero(frame);
    for (mask, c) in a.terms() {
        let mut t = Form::constant(frame, c.clone());
        for i in mask_indices(mask) {
            t = t.wedge(&images[i - 1]);
        }
        out = &out + &t;
    }
    out
}

impl fmt::Debug for BasisChange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisChange{self}")
    }
}

impl fmt::Display for BasisChange {
    /// Lists the new coframe, e.g. `[f1 = 2, f2 = 1, ...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 1..=self.frame.dim() {
            if i > 1 {
                f.write_str(", ")?;
            }
            write!(f, "f{i} = {}", self.new_covector(i))?;
        }
        f.write_str("]")
    }
}

impl LieAlgebra {
    /// The same algebra written in the coframe `f = M e`.
    pub fn change_basis(&self, b: &BasisChange) -> Result<LieAlgebra, LieError> {
        if b.frame() != self.frame() {
            return Err(LieError::DimensionMismatch(self.dim(), b.frame().dim()));
        }
        let d = (1..=self.dim())
            .map(|i| b.to_new(&self.extend_d(&b.new_covector(i))))
            .collect();
        let g = LieAlgebra::new_unchecked(self.frame(), d)?;
        debug_assert_eq!(g.check_jacobi().holds(), self.check_jacobi().holds());
        Ok(g)
    }

    /// Whether `b` carries `self` exactly onto `target`.
    pub fn is_isomorphic_via(&self, b: &BasisChange, target: &LieAlgebra) -> Result<bool, LieError> {
        if self.dim() != target.dim() {
            return Err(LieError::DimensionMismatch(self.dim(), target.dim()));
        }
        Ok(self.change_basis(b)?.differentials() == target.differentials())
    }
}
