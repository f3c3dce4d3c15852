//! Rank-based invariants evaluated over the rationals.
//!
//! Parametric algebras are evaluated at two disjoint bindings of small primes;
//! if the two evaluations disagree the result is reported as non-generic.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{LieAlgebra, LieError};
use crate::exterior::Form;
use crate::linalg::{definiteness, Definiteness, Matrix};
use crate::scalar::{rational, Bindings, Rational, Scalar};

const PRIMES: [i64; 24] = [
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89,
];

/// How parameters are assigned before computing ranks.
#[derive(Debug, Clone, Default, PartialEq)]
pub enum Evaluation {
    /// Two disjoint prime bindings that must agree.
    #[default]
    Generic,
    /// A fixed binding; parameters left unbound fall back to the generic policy.
    At(Bindings),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Series {
    pub lower_central: Vec<usize>,
    pub derived: Vec<usize>,
    pub upper_central: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    fn of(x: &Rational) -> Sign {
        match x.cmp(&Rational::zero()) {
            Ordering::Less => Sign::Negative,
            Ordering::Equal => Sign::Zero,
            Ordering::Greater => Sign::Positive,
        }
    }
}

/// A sign that separates real forms sharing the same complexification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RealForm {
    /// Discriminant of `A ↦ [A,[A,[A,B]]] / (A∧B)` on `g/[g,g]` for 4-step algebras
    /// with two generators; negative means definite.
    Quadratic(Sign),
    /// Sign of `tr N²` for the endomorphism `N` of `g/[g,g]` induced by
    /// `[C,[A,B]]` on 3-step algebras with three generators and a 1-dimensional last term.
    Trilinear(Sign),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub betti: Vec<usize>,
    pub series: Series,
    /// Rank of the span of `α∧β` over exact 2-forms `α, β`.
    pub exact_wedge_rank: usize,
    /// Whether the exact 2-forms are spanned by decomposable ones; known only
    /// when `exact_wedge_rank <= 1`.
    pub decomposable: Option<bool>,
    pub real_form: Option<RealForm>,
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(
            f,
            "betti=({}) lcs=({}) derived=({}) ucs=({}) exact-wedge-rank={}",
            join(&self.betti),
            join(&self.series.lower_central),
            join(&self.series.derived),
            join(&self.series.upper_central),
            self.exact_wedge_rank
        )?;
        match self.decomposable {
            Some(b) => write!(f, " decomposable={b}")?,
            None => f.write_str(" decomposable=n/a")?,
        }
        if let Some(r) = self.real_form {
            write!(f, " real-form={r:?}")?;
        }
        Ok(())
    }
}

/// A parameter-free algebra with brackets tabulated over the rationals.
struct Numeric<'a> {
    g: &'a LieAlgebra,
    n: usize,
    /// `br[j][k]` are the coordinates of `[e_j, e_k]` (0-based).
    br: Vec<Vec<Vec<Rational>>>,
}

fn q(c: &Scalar) -> Rational {
    c.as_rational().expect("parameter-free coefficient")
}

/// Some basis of the span of the given vectors; callers only use basis-free data.
fn span(vectors: Vec<Vec<Rational>>, n: usize) -> Vec<Vec<Rational>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors);
    debug_assert_eq!(m.cols(), n);
    m.integer_row_basis()
}

impl<'a> Numeric<'a> {
    fn new(g: &'a LieAlgebra) -> Numeric<'a> {
        let n = g.dim();
        let br: Vec<Vec<Vec<Rational>>> = (1..=n)
            .map(|j| (1..=n).map(|k| g.bracket(j, k).iter().map(q).collect()).collect())
            .collect();
        // rescaling every basis vector by `l` multiplies all structure constants
        // by `l`; an integer table keeps the bracket arithmetic free of gcds
        let l = br
            .iter()
            .flatten()
            .flatten()
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let l = Rational::from_integer(l);
        let br = br
            .into_iter()
            .map(|row| row.into_iter().map(|v| v.into_iter().map(|c| c * &l).collect()).collect())
            .collect();
        Numeric { g, n, br }
    }

    fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.n];
        for (j, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (k, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (i, c) in self.br[j][k].iter().enumerate() {
                    if !c.is_zero() {
                        out[i] += &ab * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.n];
        v[i] = rational(1, 1);
        v
    }

    fn whole(&self) -> Vec<Vec<Rational>> {
        (0..self.n).map(|i| self.unit(i)).collect()
    }

    fn bracket_span(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut vs = Vec::new();
        for u in a {
            for v in b {
                vs.push(self.bracket(u, v));
            }
        }
        span(vs, self.n)
    }

    fn d_rank(&self, k: usize) -> usize {
        let frame = self.g.frame();
        if k >= self.n {
            return 0;
        }
        let cols = frame.masks_of_grade(k);
        let rows = frame.masks_of_grade(k + 1);
        let mut m = Matrix::<Rational>::zeros(rows.len(), cols.len());
        for (j, &cm) in cols.iter().enumerate() {
            let img = self.g.extend_d(&Form::blade(frame, cm));
            for (i, &rm) in rows.iter().enumerate() {
                let c = img.coeff(rm);
                if !c.is_zero() {
                    m.set(i, j, q(&c));
                }
            }
        }
        m.integer_rank()
    }

    fn betti(&self) -> Vec<usize> {
        let ranks: Vec<usize> = (0..=self.n).map(|k| self.d_rank(k)).collect();
        (0..=self.n)
            .map(|k| {
                let dim = binomial(self.n, k);
                dim - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 }
            })
            .collect()
    }

    /// Lower central series terms `g = g¹ ⊇ g² ⊇ …` until stable.
    fn lower_central_terms(&self) -> Vec<Vec<Vec<Rational>>> {
        let whole = self.whole();
        let mut terms = vec![whole.clone()];
        loop {
            let last = terms.last().expect("nonempty");
            if last.is_empty() {
                break;
            }
            let next = self.bracket_span(&whole, last);
            if next.len() == last.len() {
                break;
            }
            terms.push(next);
        }
        terms
    }

    fn derived(&self) -> Vec<usize> {
        let mut cur = self.whole();
        let mut dims = vec![cur.len()];
        while !cur.is_empty() {
            let next = self.bracket_span(&cur, &cur);
            if next.len() == cur.len() {
                break;
            }
            dims.push(next.len());
            cur = next;
        }
        dims
    }

    fn upper_central(&self) -> Vec<usize> {
        let mut z: Vec<Vec<Rational>> = Vec::new();
        let mut dims = Vec::new();
        loop {
            let annihilator = if z.is_empty() {
                self.whole()
            } else {
                Matrix::from_rows(z.clone()).kernel()
            };
            let mut rows = Vec::new();
            for j in 0..self.n {
                for w in &annihilator {
                    let row = (0..self.n)
                        .map(|m| {
                            self.br[m][j]
                                .iter()
                                .zip(w)
                                .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
                        })
                        .collect();
                    rows.push(row);
                }
            }
            let next = if rows.is_empty() {
                self.whole()
            } else {
                Matrix::from_rows(rows).kernel()
            };
            if next.len() == z.len() {
                break;
            }
            dims.push(next.len());
            z = next;
            if z.len() == self.n {
                break;
            }
        }
        dims
    }

    /// Standard basis vectors completing `sub` to the whole space.
    fn complement(&self, sub: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let mut acc = sub.to_vec();
        let mut out = Vec::new();
        for i in 0..self.n {
            let mut trial = acc.clone();
            trial.push(self.unit(i));
            if Matrix::from_rows(trial.clone()).integer_rank() > acc.len() {
                acc = span(trial, self.n);
                out.push(self.unit(i));
            }
        }
        out
    }

    /// Coordinate of `v` along the single generator `z`.
    fn along(z: &[Rational], v: &[Rational]) -> Rational {
        let i = z.iter().position(|x| !x.is_zero()).expect("nonzero generator");
        &v[i] / &z[i]
    }

    fn real_form(&self, lcs: &[Vec<Vec<Rational>>]) -> Option<RealForm> {
        let dims: Vec<usize> = lcs.iter().map(Vec::len).collect();
        let add = |a: &[Rational], b: &[Rational]| -> Vec<Rational> { a.iter().zip(b).map(|(x, y)| x + y).collect() };
        if dims.len() == 5 && dims[4] == 0 && dims[3] == 1 && dims[0] == dims[1] + 2 {
            let u = self.complement(&lcs[1]);
            let z = &lcs[3][0];
            let f = |a: &[Rational], b: &[Rational]| {
                Self::along(z, &self.bracket(a, &self.bracket(a, &self.bracket(a, b))))
            };
            let alpha = f(&u[0], &u[1]);
            let gamma = -f(&u[1], &u[0]);
            let s = add(&u[0], &u[1]);
            let two_beta = f(&s, &u[1]) - &alpha - &gamma;
            let disc = &two_beta * &two_beta / rational(4, 1) - &alpha * &gamma;
            return Some(RealForm::Quadratic(Sign::of(&disc)));
        }
        if dims.len() == 4 && dims[3] == 0 && dims[2] == 1 && dims[0] == dims[1] + 3 {
            let u = self.complement(&lcs[1]);
            let z = &lcs[2][0];
            let pairs = [(1, 2), (2, 0), (0, 1)];
            let m: Vec<Vec<Rational>> = (0..3)
                .map(|c| {
                    pairs
                        .iter()
                        .map(|&(a, b)| Self::along(z, &self.bracket(&u[c], &self.bracket(&u[a], &u[b]))))
                        .collect()
                })
                .collect();
            let mut tr = Rational::zero();
            for i in 0..3 {
                for k in 0..3 {
                    tr += &m[i][k] * &m[k][i];
                }
            }
            return Some(RealForm::Trilinear(Sign::of(&tr)));
        }
        None
    }

    /// Wedge rank and decomposability of the space of exact 2-forms.
    fn exact_wedges(&self) -> (usize, Option<bool>) {
        let frame = self.g.frame();
        let masks2 = frame.masks_of_grade(2);
        let vecs: Vec<Vec<Rational>> = self
            .g
            .differentials()
            .iter()
            .map(|f| masks2.iter().map(|&m| q(&f.coeff(m))).collect())
            .collect();
        let basis: Vec<Form> = span(vecs, masks2.len())
            .into_iter()
            .map(|v| {
                masks2.iter().zip(v).fold(Form::zero(frame), |acc, (&m, c)| {
                    &acc + &Form::term(frame, m, Scalar::from_rational(c))
                })
            })
            .collect();
        let masks4 = frame.masks_of_grade(4);
        let r = basis.len();
        let mut products = vec![vec![Form::zero(frame); r]; r];
        let mut rows = Vec::new();
        for a in 0..r {
            for b in a..r {
                let p = basis[a].wedge(&basis[b]);
                rows.push(masks4.iter().map(|&m| q(&p.coeff(m))).collect::<Vec<_>>());
                products[a][b] = p.clone();
                products[b][a] = p;
            }
        }
        let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows).integer_rank() };
        let decomposable = match rank {
            0 => Some(true),
            1 => {
                let w = products
                    .iter()
                    .flatten()
                    .find(|p| !p.is_zero())
                    .expect("rank one")
                    .clone();
                let (mask, wc) = w.terms().next().map(|(m, c)| (m, q(c))).expect("nonzero");
                let mut qm = Matrix::<Rational>::zeros(r, r);
                for a in 0..r {
                    for b in 0..r {
                        qm.set(a, b, q(&products[a][b].coeff(mask)) / &wc);
                    }
                }
                Some(definiteness(&qm) != Definiteness::Semidefinite)
            }
            _ => None,
        };
        (rank, decomposable)
    }

    fn series(&self) -> Series {
        self.series_with(&self.lower_central_terms())
    }

    fn series_with(&self, lcs: &[Vec<Vec<Rational>>]) -> Series {
        Series {
            lower_central: lcs.iter().map(Vec::len).collect(),
            derived: self.derived(),
            upper_central: self.upper_central(),
        }
    }

    fn fingerprint(&self) -> Fingerprint {
        let lcs = self.lower_central_terms();
        let (exact_wedge_rank, decomposable) = self.exact_wedges();
        Fingerprint {
            betti: self.betti(),
            series: self.series_with(&lcs),
            exact_wedge_rank,
            decomposable,
            real_form: self.real_form(&lcs),
        }
    }
}

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The two disjoint prime bindings used by [`Evaluation::Generic`].
pub fn generic_bindings(g: &LieAlgebra) -> [Bindings; 2] {
    let syms: Vec<_> = g.symbols().into_iter().collect();
    let m = syms.len();
    assert!(2 * m <= PRIMES.len(), "too many parameters for generic evaluation");
    let bind = |offset: usize| {
        syms.iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), rational(PRIMES[offset + i], 1)))
            .collect()
    };
    [bind(0), bind(m)]
}

impl LieAlgebra {
    fn evaluate<T: PartialEq + fmt::Debug>(
        &self,
        eval: &Evaluation,
        f: impl Fn(&Numeric<'_>) -> T,
    ) -> Result<T, LieError> {
        let base = match eval {
            Evaluation::Generic => self.clone(),
            Evaluation::At(b) => self.substitute(b)?,
        };
        if base.symbols().is_empty() {
            return Ok(f(&Numeric::new(&base)));
        }
        let [b1, b2] = generic_bindings(&base);
        let at = |b: &Bindings| -> Result<T, LieError> {
            let g = base
                .substitute(b)
                .map_err(|e| LieError::NonGeneric(format!("{b}: {e}")))?;
            Ok(f(&Numeric::new(&g)))
        };
        let (r1, r2) = (at(&b1)?, at(&b2)?);
        if r1 != r2 {
            return Err(LieError::NonGeneric(format!("{b1} gives {r1:?} but {b2} gives {r2:?}")));
        }
        Ok(r1)
    }

    /// `b_0, …, b_n` of the Chevalley–Eilenberg complex.
    pub fn betti_numbers(&self, eval: &Evaluation) -> Result<Vec<usize>, LieError> {
        self.evaluate(eval, |n| n.betti())
    }

    pub fn betti(&self, k: usize, eval: &Evaluation) -> Result<usize, LieError> {
        Ok(self.betti_numbers(eval)?.get(k).copied().unwrap_or(0))
    }

    pub fn series(&self, eval: &Evaluation) -> Result<Series, LieError> {
        self.evaluate(eval, |n| n.series())
    }

    pub fn fingerprint(&self, eval: &Evaluation) -> Result<Fingerprint, LieError> {
        self.evaluate(eval, |n| n.fingerprint())
    }
}
