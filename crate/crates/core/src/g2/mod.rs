//! The product G2-structure `φ = ω∧dt + ψ⁺` on `N × S¹` and its skew torsion.
//!
//! Products are always written with `dt = e^7` as the last factor.

use thiserror::Error;

use crate::exterior::{kahler_form, psi_minus, psi_plus, ExteriorError, Form, Frame, TypeKey};
use crate::liealg::{LieAlgebra, LieError};
use crate::linalg::{solve_rational, Matrix};
use crate::scalar::{Rational, Scalar};
use crate::su3::{SU3Structure, Su3Error, TorsionClasses};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum G2Error {
    #[error(transparent)]
    Su3(#[from] Su3Error),
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error("*φ mismatch, difference {0}")]
    HodgeMismatch(Form),
    #[error("not a G2T-structure: d*φ - θ∧*φ has residual {residual}")]
    NotG2T { residual: Form },
    #[error("Lee form {0} is not closed")]
    LeeNotClosed(Form),
    #[error("Lee form splits as {theta} but the SU(3) class β is {beta}")]
    LeeMismatch { theta: Form, beta: Form },
    #[error("torsion routes disagree ({route}): difference {difference}")]
    RouteMismatch { route: &'static str, difference: Form },
    #[error("{0}")]
    Precondition(&'static str),
}

/// `dt` on the seven-dimensional frame.
pub fn dt() -> Form {
    Form::e(Frame::SEVEN, &[7])
}

/// A six-dimensional form viewed on `N × S¹`.
pub fn lift(a: &Form) -> Form {
    a.reframe(Frame::SEVEN)
}

/// `(a, b)` with `x = a + b∧dt`, both returned on the six-dimensional frame.
pub fn split_dt(x: &Form) -> (Form, Form) {
    let (a, b) = x.split_last();
    (a.reframe(Frame::SIX), b.reframe(Frame::SIX))
}

pub fn phi() -> Form {
    let fr = Frame::SEVEN;
    &kahler_form(fr).wedge(&dt()) + &psi_plus(fr)
}

/// `ψ⁻∧dt + ½ω²`.
pub fn star_phi() -> Form {
    let fr = Frame::SEVEN;
    let omega = kahler_form(fr);
    &psi_minus(fr).wedge(&dt()) + &omega.wedge(&omega).scale(&Scalar::frac(1, 2))
}

/// `T = ⅙⟨dφ,*φ⟩φ - *dφ + *(θ∧φ)` from `dφ` and the Lee form alone.
pub fn torsion_formula(d_phi: &Form, theta: &Form) -> Result<Form, G2Error> {
    let (p, sp) = (phi(), star_phi());
    let c = d_phi.inner(&sp) * Scalar::frac(1, 6);
    let first = &p.scale(&c) - &d_phi.hodge()?;
    Ok(&first + &theta.wedge(&p).hodge()?)
}

/// The torsion assembled from the SU(3) classes, `dω` and `λ`:
/// `(⅔ν⁻ + W₁⁺)φ + *dω - *(β∧ω) + λψ⁻ + (2*(β∧ψ⁺) + W₂⁺ - 2W₁⁺ω)∧dt`
/// with the Hodge stars taken on `N`. It assumes `θ = β + λ dt`.
pub fn torsion_from_classes(c: &TorsionClasses, d_omega: &Form, lambda: &Scalar) -> Result<Form, G2Error> {
    let fr = Frame::SIX;
    let omega = kahler_form(fr);
    let coefficient = &(&c.nu_minus * &Scalar::frac(2, 3)) + &c.w1_plus;
    let base = &(&d_omega.hodge()? - &c.beta.wedge(&omega).hodge()?) + &psi_minus(fr).scale(lambda);
    let along = &(&c.beta.wedge(&psi_plus(fr)).hodge()?.scale(&Scalar::int(2)) + &c.w2_plus)
        - &omega.scale(&(&c.w1_plus * &Scalar::int(2)));
    Ok(&(&phi().scale(&coefficient) + &lift(&base)) + &lift(&along).wedge(&dt()))
}

/// Half-integrable short form: `T = *dω + λψ⁻` and `*T = -(dω + λψ⁺)∧dt`.
pub fn half_integrable_torsion(d_omega: &Form, lambda: &Scalar) -> Result<(Form, Form), G2Error> {
    let fr = Frame::SIX;
    let t = &d_omega.hodge()? + &psi_minus(fr).scale(lambda);
    let star_t = -&lift(&(d_omega + &psi_plus(fr).scale(lambda))).wedge(&dt());
    Ok((lift(&t), star_t))
}

/// Whether `x` is of pure type (2,2) on `N` with no `dt` component.
pub fn is_type_22(x: &Form) -> Result<bool, G2Error> {
    let (a, b) = split_dt(x);
    if !b.is_zero() {
        return Ok(false);
    }
    let parts = crate::exterior::ComplexStructure::standard().type_decompose(&a)?;
    Ok(parts.keys().all(|k| *k == TypeKey { p: 2, q: 2 }))
}

/// `⟨x, e^i∧φ⟩` for `i = 1..7`, the coordinates of the seven-dimensional component of a 4-form.
pub fn v7_coordinates(x: &Form) -> Vec<Scalar> {
    (1..=7).map(|i| x.inner(&Form::e(Frame::SEVEN, &[i]).wedge(&phi()))).collect()
}

/// The Gram matrix of `{e^i∧φ}`, which is `4·1`.
pub fn v7_gram() -> Matrix<Rational> {
    let basis: Vec<Form> = (1..=7).map(|i| Form::e(Frame::SEVEN, &[i]).wedge(&phi())).collect();
    let mut g = Matrix::zeros(7, 7);
    for i in 0..7 {
        for j in 0..7 {
            g.set(i, j, basis[i].inner(&basis[j]).as_rational().expect("constant"));
        }
    }
    g
}

/// Torsion data of a G2T-structure.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionReport {
    pub theta: Form,
    pub lambda: Scalar,
    pub t: Form,
    pub star_t: Form,
    pub d_t: Form,
    pub d_star_t: Form,
    pub inner_dphi_star_phi: Scalar,
    pub w1_plus: Scalar,
    pub is_strong: bool,
    pub dt_type_22: bool,
    pub dt_in_r_plus_s2: bool,
    /// Whether the half-integrable short form was also checked.
    pub short_route_checked: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct G2Structure {
    base: SU3Structure,
    product: LieAlgebra,
    phi: Form,
    star_phi: Form,
}

impl G2Structure {
    pub fn new(base: &SU3Structure) -> Result<G2Structure, G2Error> {
        let fr = Frame::SEVEN;
        let mut d: Vec<Form> = base.algebra().differentials().iter().map(lift).collect();
        d.push(Form::zero(fr));
        let product = LieAlgebra::new(fr, d)?;
        let (p, sp) = (phi(), star_phi());
        let diff = &p.hodge()? - &sp;
        if !diff.is_zero() {
            return Err(G2Error::HodgeMismatch(diff));
        }
        Ok(G2Structure {
            base: base.clone(),
            product,
            phi: p,
            star_phi: sp,
        })
    }

    pub fn base(&self) -> &SU3Structure {
        &self.base
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.product
    }

    pub fn phi(&self) -> &Form {
        &self.phi
    }

    pub fn star_phi(&self) -> &Form {
        &self.star_phi
    }

    pub fn d(&self, a: &Form) -> Form {
        self.product.extend_d(a)
    }

    /// The unique `θ` with `d*φ = θ∧*φ`.
    pub fn extract_theta(&self) -> Result<Form, G2Error> {
        let fr = Frame::SEVEN;
        let rhs_form = self.d(&self.star_phi);
        let rows = fr.masks_of_grade(5);
        let mut a = Matrix::<Rational>::zeros(rows.len(), 7);
        for j in 0..7 {
            let col = Form::e(fr, &[j + 1]).wedge(&self.star_phi);
            for (i, &m) in rows.iter().enumerate() {
                a.set(i, j, col.coeff(m).as_rational().expect("constant"));
            }
        }
        let rhs: Vec<Scalar> = rows.iter().map(|&m| rhs_form.coeff(m)).collect();
        let sol = solve_rational(&a, &rhs, |r| Scalar::from_rational(r.clone()));
        let theta = (0..7).fold(Form::zero(fr), |acc, j| &acc + &Form::e(fr, &[j + 1]).scale(&sol.x[j]));
        if !sol.is_consistent() {
            let residual = &rhs_form - &theta.wedge(&self.star_phi);
            return Err(G2Error::NotG2T { residual });
        }
        let d_theta = self.d(&theta);
        if !d_theta.is_zero() {
            return Err(G2Error::LeeNotClosed(d_theta));
        }
        Ok(theta)
    }

    pub fn torsion(&self) -> Result<TorsionReport, G2Error> {
        let theta = self.extract_theta()?;
        let d_phi = self.d(&self.phi);
        let t = torsion_formula(&d_phi, &theta)?;

        let classes = self.base.torsion_classes()?;
        let (beta, lam_form) = split_dt(&theta);
        let lambda = lam_form.coeff(0);
        if beta != classes.beta {
            return Err(G2Error::LeeMismatch {
                theta,
                beta: classes.beta,
            });
        }
        let d_omega = self.base.d(&self.base.omega());
        let t_classes = torsion_from_classes(&classes, &d_omega, &lambda)?;
        if t_classes != t {
            return Err(G2Error::RouteMismatch {
                route: "SU(3) classes",
                difference: &t_classes - &t,
            });
        }
        let star_t = t.hodge()?;
        let short_route_checked = self.base.is_half_integrable();
        if short_route_checked {
            let (ts, sts) = half_integrable_torsion(&d_omega, &lambda)?;
            if ts != t {
                return Err(G2Error::RouteMismatch {
                    route: "half-integrable T",
                    difference: &ts - &t,
                });
            }
            if sts != star_t {
                return Err(G2Error::RouteMismatch {
                    route: "half-integrable *T",
                    difference: &sts - &star_t,
                });
            }
        }
        let d_t = self.d(&t);
        let d_star_t = self.d(&star_t);
        let mut report = TorsionReport {
            inner_dphi_star_phi: d_phi.inner(&self.star_phi),
            w1_plus: classes.w1_plus,
            theta,
            lambda,
            t,
            star_t,
            d_t,
            d_star_t,
            is_strong: false,
            dt_type_22: false,
            dt_in_r_plus_s2: false,
            short_route_checked,
        };
        self.dt_tests(&mut report)?;
        Ok(report)
    }

    /// Fills the strongness and representation flags of a report from its `dT`.
    pub fn dt_tests(&self, r: &mut TorsionReport) -> Result<(), G2Error> {
        debug_assert_eq!(v7_gram(), Matrix::identity(7).map(|x: &Rational| x * Rational::from_integer(4.into())));
        r.is_strong = r.d_t.is_zero();
        r.dt_type_22 = is_type_22(&r.d_t)?;
        r.dt_in_r_plus_s2 = v7_coordinates(&r.d_t).iter().all(Scalar::is_zero);
        Ok(())
    }

    /// The eigenvalue of `Δω` on `N` when `ω` is an eigenform; for strong
    /// structures it must be `½λ²`.
    pub fn strong_eigen_check(&self) -> Result<Option<Scalar>, G2Error> {
        if !self.base.is_half_integrable() {
            return Err(G2Error::Precondition("the base structure is not half-integrable"));
        }
        let r = self.torsion()?;
        let omega = self.base.omega();
        let lap = self.base.laplacian(&omega)?;
        let c = lap.coeff_of(&[1, 2]);
        let proportional = lap == omega.scale(&c);
        if r.is_strong {
            let expected = &(&r.lambda * &r.lambda) * &Scalar::frac(1, 2);
            if !proportional || c != expected {
                return Err(G2Error::RouteMismatch {
                    route: "strong eigenvalue",
                    difference: &lap - &omega.scale(&expected),
                });
            }
        }
        Ok(proportional.then_some(c))
    }
}

pub fn build_product(s: &SU3Structure) -> Result<G2Structure, G2Error> {
    G2Structure::new(s)
}

#[cfg(test)]
mod oracle;
#[cfg(test)]
mod tests;
