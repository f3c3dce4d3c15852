//! Dense exact linear algebra over the rationals and over rational functions.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::scalar::{Rational, Scalar};

/// Exact field operations needed by Gaussian elimination.
pub trait Field: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    /// `o` must be nonzero.
    fn div(&self, o: &Self) -> Self;
}

impl Field for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl Field for Scalar {
    fn zero() -> Self {
        Scalar::zero()
    }
    fn one() -> Self {
        Scalar::one()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[F] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<Matrix<G>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn transpose(&self) -> Self {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, o: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out: Matrix<F> = Matrix::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = o.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        self.rref_limited(self.cols)
    }

    /// Row reduction choosing pivots only among the first `limit` columns.
    fn rref_limited(&mut self, limit: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = F::one().div(self.get(r, c));
            for j in c..self.cols {
                let v = self.get(r, j).mul(&inv);
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let b = self.get(r, j);
                    if !b.is_zero() {
                        let v = self.get(i, j).sub(&f.mul(b));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of the null space, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<F>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![F::zero(); self.cols];
            v[free] = F::one();
            for (r, &pc) in pivots.iter().enumerate() {
                let x = m.get(r, free);
                if !x.is_zero() {
                    v[pc] = F::zero().sub(x);
                }
            }
            out.push(v);
        }
        out
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<Matrix<F>> {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let n = self.rows;
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, F::one());
        }
        let pivots = aug.rref_limited(n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    pub fn determinant(&self) -> F {
        assert_eq!(self.rows, self.cols, "square matrix required");
        let mut m = self.clone();
        let n = self.rows;
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m.get(i, c).is_zero()) else {
                return F::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = F::zero().sub(&det);
            }
            let piv = m.get(c, c).clone();
            det = det.mul(&piv);
            for i in c + 1..n {
                let f = m.get(i, c).div(&piv);
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let v = m.get(i, j).sub(&f.mul(m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }
}

impl Matrix<Rational> {
    /// Nonzero rows of a fraction-free echelon form. Rows are scaled to integers
    /// once and every later division is exact, so no gcds are taken.
    fn integer_echelon(&self) -> Vec<Vec<BigInt>> {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows)
            .map(|r| {
                let row = self.row(r);
                let l = row.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&l / x.denom())).collect()
            })
            .collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let (head, tail) = a.split_at_mut(r + 1);
            let pivot = &head[r];
            for row in tail.iter_mut() {
                let f = std::mem::take(&mut row[c]);
                for j in c + 1..self.cols {
                    let v = &pivot[c] * &row[j] - &f * &pivot[j];
                    row[j] = v / &prev;
                }
            }
            prev = head[r][c].clone();
            r += 1;
        }
        a.truncate(r);
        a
    }

    pub fn integer_rank(&self) -> usize {
        self.integer_echelon().len()
    }

    /// A basis of the row space made of primitive integer vectors.
    pub fn integer_row_basis(&self) -> Vec<Vec<Rational>> {
        self.integer_echelon()
            .into_iter()
            .map(|row| {
                let g = row.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
                row.into_iter().map(|x| Rational::from_integer(x / &g)).collect()
            })
            .collect()
    }
}

/// Outcome of solving `A x = b` where `A` is rational and `b` may be symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution<B> {
    /// A particular solution with free variables set to zero.
    pub x: Vec<B>,
    /// Left-over entries of the reduced right-hand side; all zero iff consistent.
    pub residual: Vec<B>,
}

impl<B: Field> Solution<B> {
    pub fn is_consistent(&self) -> bool {
        self.residual.iter().all(Field::is_zero)
    }
}

/// Solves `A x = b` exactly for a rational coefficient matrix and a right-hand
/// side over any field extending the rationals.
pub fn solve_rational<B: Field>(a: &Matrix<Rational>, b: &[B], lift: impl Fn(&Rational) -> B) -> Solution<B> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let n = a.rows();
    let mut aug = Matrix::zeros(n, a.cols() + n);
    for i in 0..n {
        for j in 0..a.cols() {
            aug.set(i, j, a.get(i, j).clone());
        }
        aug.set(i, a.cols() + i, <Rational as One>::one());
    }
    let pivots = aug.rref_limited(a.cols());
    let eb: Vec<B> = (0..n)
        .map(|i| {
            let mut acc = B::zero();
            for (k, bk) in b.iter().enumerate() {
                let e = aug.get(i, a.cols() + k);
                if !Zero::is_zero(e) && !bk.is_zero() {
                    acc = acc.add(&lift(e).mul(bk));
                }
            }
            acc
        })
        .collect();
    let mut x = vec![B::zero(); a.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = eb[r].clone();
    }
    Solution {
        x,
        residual: eb[pivots.len()..].to_vec(),
    }
}

/// Definiteness class of a real symmetric form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Zero,
    Semidefinite,
    Indefinite,
}

/// Classifies a symmetric rational matrix by symmetric elimination.
pub fn definiteness(q: &Matrix<Rational>) -> Definiteness {
    let mut m = q.clone();
    let n = m.rows();
    let (mut pos, mut neg) = (false, false);
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        if let Some(idx) = active.iter().position(|&i| !Zero::is_zero(m.get(i, i))) {
            let p = active.remove(idx);
            let d = m.get(p, p).clone();
            if d > <Rational as Zero>::zero() {
                pos = true;
            } else {
                neg = true;
            }
            for &i in &active {
                for &j in &active {
                    let v = m.get(i, j) - m.get(i, p) * m.get(p, j) / &d;
                    m.set(i, j, v);
                }
            }
        } else if active
            .iter()
            .any(|&i| active.iter().any(|&j| !Zero::is_zero(m.get(i, j))))
        {
            return Definiteness::Indefinite;
        } else {
            break;
        }
        if pos && neg {
            return Definiteness::Indefinite;
        }
    }
    match (pos, neg) {
        (false, false) => Definiteness::Zero,
        (true, true) => Definiteness::Indefinite,
        _ => Definiteness::Semidefinite,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_scalar, rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rational(x, 1)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_kernel_inverse() {
        let a = q(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.integer_rank(), 2);
        assert_eq!(q(&[&[0, 0, 1], &[0, 0, 2], &[0, 3, 0]]).integer_rank(), 2);
        let basis = Matrix::from_rows(q(&[&[2, 4, 6], &[1, 0, 1]]).integer_row_basis());
        assert_eq!(basis.rank(), 2);
        assert_eq!(Matrix::from_rows([basis.row(0), basis.row(1), a.row(0)].map(<[_]>::to_vec).to_vec()).rank(), 2);
        for v in a.kernel() {
            assert!(a.mul_vec(&v).iter().all(|x| Zero::is_zero(x)));
        }
        let b = q(&[&[2, 1], &[1, 1]]);
        assert_eq!(b.inverse().unwrap(), q(&[&[1, -1], &[-1, 2]]));
        assert_eq!(b.determinant(), rational(1, 1));
        assert!(a.inverse().is_none());
    }

    #[test]
    fn symbolic_inverse() {
        let s = |t: &str| parse_scalar(t).unwrap();
        let m = Matrix::from_rows(vec![vec![s("lam"), s("1")], vec![s("0"), s("k")]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv.get(0, 1), &s("-1/(lam*k)"));
        assert_eq!(m.mul(&inv), Matrix::identity(2));
        assert_eq!(m.determinant(), s("lam*k"));
    }

    #[test]
    fn rational_solve_with_symbolic_rhs() {
        let a = q(&[&[1, 1], &[1, -1], &[2, 0]]);
        let s = |t: &str| parse_scalar(t).unwrap();
        let sol = solve_rational(&a, &[s("lam"), s("k"), s("lam + k")], |r| Scalar::from_rational(r.clone()));
        assert!(sol.is_consistent());
        assert_eq!(sol.x, vec![s("(lam+k)/2"), s("(lam-k)/2")]);
        let bad = solve_rational(&a, &[s("lam"), s("k"), s("0")], |r| Scalar::from_rational(r.clone()));
        assert!(!bad.is_consistent());
    }

    #[test]
    fn definiteness_classes() {
        assert_eq!(definiteness(&q(&[&[0, 1], &[1, 0]])), Definiteness::Indefinite);
        assert_eq!(definiteness(&q(&[&[1, 0], &[0, 0]])), Definiteness::Semidefinite);
        assert_eq!(definiteness(&q(&[&[0, 0], &[0, 0]])), Definiteness::Zero);
        assert_eq!(definiteness(&q(&[&[2, 1], &[1, 2]])), Definiteness::Semidefinite);
        assert_eq!(definiteness(&q(&[&[1, 2], &[2, 1]])), Definiteness::Indefinite);
    }
}
