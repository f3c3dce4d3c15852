//! The three half-integrable G2T families, the classification replay and
//! contraction limits.

mod contraction;
mod theorem;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exterior::{Form, Frame};
use crate::g2::G2Error;
use crate::liealg::{parse_salamon, LieAlgebra, LieError};
use crate::scalar::{parse_scalar, Bindings, Scalar};
use crate::su3::{SU3Structure, Su3Error};

pub use contraction::{contraction_limit, converging_direction, Direction};
pub use theorem::{diagonal_solve, verify_theorem, witness_for, TheoremRow, TheoremTable};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("unknown family `{0}`")]
    Unknown(String),
    #[error("degenerate parameter: {0} vanishes")]
    Degenerate(String),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Su3(#[from] Su3Error),
    #[error(transparent)]
    G2(#[from] G2Error),
    #[error("no diagonal witness: {0}")]
    NoDiagonalWitness(String),
    #[error("contraction undefined as t -> {direction}: term {term} diverges")]
    Divergent { direction: Direction, term: String },
    #[error("theorem row {row} fails: {msg}")]
    Witness { row: String, msg: String },
}

/// One of the three classified families, written in the SU(3)-adapted coframe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Case1,
    Case2,
    Case3,
}

impl Family {
    pub const ALL: [Family; 3] = [Family::Case1, Family::Case2, Family::Case3];

    pub fn name(self) -> &'static str {
        match self {
            Family::Case1 => "case1",
            Family::Case2 => "case2",
            Family::Case3 => "case3",
        }
    }

    pub fn salamon(self) -> &'static str {
        match self {
            Family::Case1 => "0, lam*35, k*15, -lam*15 + k*25, 0, lam*13",
            Family::Case2 => "0, lam*35, 0, -lam*15, (z+a1)*13, a1*14 + z*23 + lam*13",
            Family::Case3 => "0, lam*35, 0, -lam*15, 0, a1*14 - a1*23 + lam*13",
        }
    }

    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Family::Case1 => &["lam", "k"],
            Family::Case2 => &["lam", "z", "a1"],
            Family::Case3 => &["lam", "a1"],
        }
    }

    /// Expressions that must not vanish.
    pub fn constraints(self) -> Vec<Scalar> {
        let exprs: &[&str] = match self {
            Family::Case1 => &["lam", "k"],
            Family::Case2 => &["lam", "z+a1"],
            Family::Case3 => &["lam"],
        };
        exprs.iter().map(|s| parse_scalar(s).expect("literal")).collect()
    }

    /// The symbolic algebra.
    pub fn algebra(self) -> LieAlgebra {
        parse_salamon(self.salamon()).expect("families satisfy Jacobi")
    }

    /// Algebra and standard structure, with the constraints checked against `b`.
    pub fn instantiate(self, b: Option<&Bindings>) -> Result<(LieAlgebra, SU3Structure), FamilyError> {
        let g = self.algebra();
        let g = match b {
            Some(b) => {
                for c in self.constraints() {
                    let v = c.substitute(b).map_err(LieError::from)?;
                    if v.is_zero() {
                        return Err(FamilyError::Degenerate(c.to_string()));
                    }
                }
                g.substitute(b)?
            }
            None => g,
        };
        let s = SU3Structure::standard(&g)?;
        Ok((g, s))
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Family, String> {
        Family::ALL
            .into_iter()
            .find(|fam| fam.name() == s)
            .ok_or_else(|| FamilyError::Unknown(s.into()).to_string())
    }
}

/// `(residual of dψ⁻ = ½λω², residual of d(ω²) = 0)` for the standard structure
/// on `g` and a given `λ`, used to exhibit the absence of solutions on fixed algebras.
pub fn lambda_equation_residual(g: &LieAlgebra, lambda: &Scalar) -> Result<(Form, Form), FamilyError> {
    let s = SU3Structure::standard(g)?;
    Ok(s.g2t_residual(lambda, &Form::zero(Frame::SIX)))
}

#[cfg(test)]
mod tests;
