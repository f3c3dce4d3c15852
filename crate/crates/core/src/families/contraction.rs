//! Contractions along the rescalings `f^i = t^{m_i} e^i`.

use std::fmt;

use super::FamilyError;
use crate::exterior::{mask_indices, Form};
use crate::liealg::LieAlgebra;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    ToZero,
    ToInfinity,
}

impl Direction {
    pub const BOTH: [Direction; 2] = [Direction::ToZero, Direction::ToInfinity];
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::ToZero => "0",
            Direction::ToInfinity => "infinity",
        })
    }
}

impl std::str::FromStr for Direction {
    type Err = String;
    fn from_str(s: &str) -> Result<Direction, String> {
        match s {
            "0" | "zero" | "to-zero" => Ok(Direction::ToZero),
            "inf" | "infinity" | "to-infinity" => Ok(Direction::ToInfinity),
            other => Err(format!("unknown direction `{other}` (expected `0` or `infinity`)")),
        }
    }
}

/// The termwise limit of `d f^i = Σ c_jk t^{m_i - m_j - m_k} f^{jk}`.
pub fn contraction_limit(g: &LieAlgebra, exponents: &[i32], direction: Direction) -> Result<LieAlgebra, FamilyError> {
    if exponents.len() != g.dim() {
        return Err(crate::liealg::LieError::DimensionMismatch(g.dim(), exponents.len()).into());
    }
    let fr = g.frame();
    let mut d = Vec::with_capacity(g.dim());
    for i in 1..=g.dim() {
        let mut out = Form::zero(fr);
        for (mask, c) in g.de(i).terms() {
            let idx = mask_indices(mask);
            let power = exponents[i - 1] - idx.iter().map(|&j| exponents[j - 1]).sum::<i32>();
            let survives = match (power.signum(), direction) {
                (0, _) => true,
                (1, Direction::ToZero) | (-1, Direction::ToInfinity) => false,
                _ => {
                    return Err(FamilyError::Divergent {
                        direction,
                        term: format!("{c} t^{power} in d f^{i}"),
                    })
                }
            };
            if survives {
                out = &out + &Form::term(fr, mask, c.clone());
            }
        }
        d.push(out);
    }
    let limit = LieAlgebra::new_unchecked(fr, d)?;
    debug_assert!(limit.check_jacobi().holds());
    Ok(limit)
}

/// The directions in which the contraction exists.
pub fn converging_direction(g: &LieAlgebra, exponents: &[i32]) -> Vec<Direction> {
    Direction::BOTH
        .into_iter()
        .filter(|&dir| contraction_limit(g, exponents, dir).is_ok())
        .collect()
}
