//! Invariant SU(3)-structures on six-dimensional Lie algebras.
//!
//! A structure is a Lie algebra together with an orthonormal adapted coframe
//! in which `ω = e^{12}+e^{34}+e^{56}` and `ψ⁺ + iψ⁻ = (e^1+ie^2)(e^3+ie^4)(e^5+ie^6)`.
//! All forms returned here are written in the adapted coframe.

mod file;

use thiserror::Error;

use crate::exterior::{
    kahler_form, lefschetz_coefficients, psi_minus, psi_plus, ComplexStructure, ExteriorError,
    Form, Frame, LefschetzSlot,
};
use crate::liealg::{BasisChange, LieAlgebra, LieError};
use crate::scalar::{Scalar, ScalarError};

pub use file::{parse_structure_file, AlgebraSource, StructureFile};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Su3Error {
    #[error(transparent)]
    Lie(#[from] LieError),
    #[error(transparent)]
    Exterior(#[from] ExteriorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("SU(3)-structures need a six-dimensional algebra, found dimension {0}")]
    Dimension(usize),
    #[error("adapted coframe is not orthonormal")]
    NotOrthonormal,
    #[error("incompatible structure: ψ⁺∧ψ⁻ - 4 vol = {residual}")]
    Compatibility { residual: Form },
    #[error("dψ outside the SU(3) module: {0}")]
    OutsideModule(String),
    #[error("structure file: {0}")]
    File(String),
}

/// An SU(3)-structure on a six-dimensional Lie algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct SU3Structure {
    presentation: LieAlgebra,
    adaptation: BasisChange,
    adapted: LieAlgebra,
    j: ComplexStructure,
}

/// Intrinsic torsion components, all in the adapted coframe.
#[derive(Debug, Clone, PartialEq)]
pub struct TorsionClasses {
    pub w1_plus: Scalar,
    pub w1_minus: Scalar,
    pub w2_plus: Form,
    pub w2_minus: Form,
    /// Primitive `{2,1}` part of `dω`.
    pub omega3: Form,
    pub w4: Form,
    pub w5: Form,
    pub beta: Form,
    /// The 1-form multiplying `ψ⁻` in the splitting of `dψ⁻`.
    pub gamma_minus: Form,
    pub nu_plus: Scalar,
    pub nu_minus: Scalar,
    /// Six-dimensional Lee form `-J d*ω`.
    pub lee: Form,
}

impl SU3Structure {
    /// Builds the structure whose adapted coframe is `f = M e`.
    pub fn new(g: &LieAlgebra, adaptation: BasisChange) -> Result<SU3Structure, Su3Error> {
        if g.dim() != 6 {
            return Err(Su3Error::Dimension(g.dim()));
        }
        if !adaptation.is_orthogonal() {
            return Err(Su3Error::NotOrthonormal);
        }
        let fr = Frame::SIX;
        let pp = adaptation.to_old(&psi_plus(fr));
        let pm = adaptation.to_old(&psi_minus(fr));
        let residual = &pp.wedge(&pm) - &fr.volume().scale(&Scalar::int(4));
        if !residual.is_zero() {
            return Err(Su3Error::Compatibility { residual });
        }
        let adapted = g.change_basis(&adaptation)?;
        let s = SU3Structure {
            presentation: g.clone(),
            adaptation,
            adapted,
            j: ComplexStructure::standard(),
        };
        debug_assert_eq!(s.psi_plus().wedge(&s.psi_minus()), s.omega().wedge(&s.omega()).wedge(&s.omega()).scale(&Scalar::frac(2, 3)));
        debug_assert!(s.omega().wedge(&s.psi_plus()).is_zero());
        Ok(s)
    }

    /// The structure with the presentation coframe already adapted.
    pub fn standard(g: &LieAlgebra) -> Result<SU3Structure, Su3Error> {
        SU3Structure::new(g, BasisChange::identity(Frame::SIX))
    }

    pub fn presentation(&self) -> &LieAlgebra {
        &self.presentation
    }

    pub fn adaptation(&self) -> &BasisChange {
        &self.adaptation
    }

    /// The algebra written in the adapted coframe.
    pub fn algebra(&self) -> &LieAlgebra {
        &self.adapted
    }

    pub fn complex_structure(&self) -> ComplexStructure {
        self.j
    }

    pub fn omega(&self) -> Form {
        kahler_form(Frame::SIX)
    }

    pub fn psi_plus(&self) -> Form {
        psi_plus(Frame::SIX)
    }

    pub fn psi_minus(&self) -> Form {
        psi_minus(Frame::SIX)
    }

    /// `ω` written in the presentation coframe.
    pub fn omega_presented(&self) -> Form {
        self.adaptation.to_old(&self.omega())
    }

    pub fn psi_plus_presented(&self) -> Form {
        self.adaptation.to_old(&self.psi_plus())
    }

    pub fn d(&self, a: &Form) -> Form {
        self.adapted.extend_d(a)
    }

    pub fn substitute(&self, b: &crate::scalar::Bindings) -> Result<SU3Structure, Su3Error> {
        SU3Structure::new(&self.presentation.substitute(b)?, self.adaptation.substitute(b)?)
    }

    pub fn torsion_classes(&self) -> Result<TorsionClasses, Su3Error> {
        let d = |f: Form| self.d(&f);
        TorsionClasses::from_differentials(&d(self.omega()), &d(self.psi_plus()), &d(self.psi_minus()))
    }

    /// `dψ⁺ = 0` and `d(ω²) = 0`.
    pub fn is_half_integrable(&self) -> bool {
        let omega = self.omega();
        self.d(&self.psi_plus()).is_zero() && self.d(&omega.wedge(&omega)).is_zero()
    }

    /// Residuals of `dψ⁻ = β∧ψ⁻ + ½λω²` and `ω∧dω = ½β∧ω²`.
    pub fn g2t_residual(&self, lambda: &Scalar, beta: &Form) -> (Form, Form) {
        let omega = self.omega();
        let omega2 = omega.wedge(&omega);
        let pm = self.psi_minus();
        let r1 = &(&self.d(&pm) - &beta.wedge(&pm)) - &omega2.scale(&(lambda * &Scalar::frac(1, 2)));
        let r2 = &omega.wedge(&self.d(&omega)) - &beta.wedge(&omega2).scale(&Scalar::frac(1, 2));
        (r1, r2)
    }

    /// [`SU3Structure::g2t_residual`] with `λ = 2W₁⁻` and `β = -2W₅`.
    pub fn g2t_residual_intrinsic(&self) -> Result<(Form, Form), Su3Error> {
        let c = self.torsion_classes()?;
        Ok(self.g2t_residual(&(&c.w1_minus * &Scalar::int(2)), &c.beta))
    }

    /// `d(J dω)`, which vanishes exactly for strong structures.
    pub fn skt_form(&self) -> Result<Form, Su3Error> {
        let jd = self.j.apply(&self.d(&self.omega()))?;
        Ok(self.d(&jd))
    }

    /// `d* = -*d*`, valid in every degree on a six-dimensional frame.
    pub fn codifferential(&self, a: &Form) -> Result<Form, Su3Error> {
        Ok(-&self.d(&a.hodge()?).hodge()?)
    }

    /// Hodge Laplacian `d*d + dd*` of a homogeneous form.
    pub fn laplacian(&self, a: &Form) -> Result<Form, Su3Error> {
        a.grade()?;
        let first = self.codifferential(&self.d(a))?;
        let second = self.d(&self.codifferential(a)?);
        Ok(&first + &second)
    }
}

impl TorsionClasses {
    /// Decomposes given `dω`, `dψ⁺`, `dψ⁻` for the standard forms; the
    /// differentials need not come from a Lie algebra.
    pub fn from_differentials(d_omega: &Form, d_pp: &Form, d_pm: &Form) -> Result<TorsionClasses, Su3Error> {
        let fr = Frame::SIX;
        let omega = kahler_form(fr);
        let (pp, pm) = (psi_plus(fr), psi_minus(fr));
        let top = |f: Form| f.coeff(Frame::SIX.full_mask());
        let w1_plus = top(d_pp.wedge(&omega)) / Scalar::int(6);
        let w1_minus = top(d_pm.wedge(&omega)) / Scalar::int(6);
        let w4 = omega.interior(d_omega)?.scale(&Scalar::frac(1, 4));
        let w5 = pp.interior(d_pp)?.scale(&Scalar::frac(-1, 4));
        let beta = w5.scale(&Scalar::int(-2));

        let lp = lefschetz_coefficients(d_pp, LefschetzSlot::PsiPlus)
            .map_err(|e| Su3Error::OutsideModule(e.to_string()))?;
        if lp.gamma != -&beta || lp.c0 != w1_plus {
            return Err(Su3Error::OutsideModule(format!(
                "dψ⁺ splits with γ = {}, c = {} against β = {beta}, W1⁺ = {w1_plus}",
                lp.gamma, lp.c0
            )));
        }
        let lm = lefschetz_coefficients(d_pm, LefschetzSlot::PsiMinus)
            .map_err(|e| Su3Error::OutsideModule(e.to_string()))?;
        if lm.c0 != w1_minus {
            return Err(Su3Error::OutsideModule(format!(
                "dψ⁻ splits with c = {} against W1⁻ = {w1_minus}",
                lm.c0
            )));
        }

        let nu_minus = top(pp.wedge(d_omega)) / Scalar::int(4);
        let nu_plus = -(top(pm.wedge(d_omega)) / Scalar::int(4));
        let omega3 = &(&(d_omega - &w4.scale(&Scalar::int(2)).wedge(&omega)) - &pp.scale(&nu_plus))
            - &pm.scale(&nu_minus);

        // d(*ω) = d(ω²/2) = ω∧dω
        let d_star = -&omega.wedge(d_omega).hodge()?;
        let lee = -&ComplexStructure::standard().apply(&d_star)?;

        Ok(TorsionClasses {
            w1_plus,
            w1_minus,
            w2_plus: lp.w2,
            w2_minus: lm.w2,
            omega3,
            w4,
            w5,
            beta,
            gamma_minus: lm.gamma,
            nu_plus,
            nu_minus,
            lee,
        })
    }

    /// `-β∧ψ⁺ + W₂⁺∧ω + W₁⁺ω²`, equal to `dψ⁺`.
    pub fn rebuild_d_psi_plus(&self) -> Form {
        let fr = Frame::SIX;
        let omega = kahler_form(fr);
        &(&(-&self.beta).wedge(&psi_plus(fr)) + &self.w2_plus.wedge(&omega))
            + &omega.wedge(&omega).scale(&self.w1_plus)
    }

    /// `2W₄∧ω + Ω + ν⁺ψ⁺ + ν⁻ψ⁻`, equal to `dω`.
    pub fn rebuild_d_omega(&self) -> Form {
        let fr = Frame::SIX;
        let omega = kahler_form(fr);
        &(&(&self.w4.scale(&Scalar::int(2)).wedge(&omega) + &self.omega3)
            + &psi_plus(fr).scale(&self.nu_plus))
            + &psi_minus(fr).scale(&self.nu_minus)
    }

    /// `λ = 2W₁⁻`.
    pub fn lambda(&self) -> Scalar {
        &self.w1_minus * &Scalar::int(2)
    }
}

pub fn build_structure(g: &LieAlgebra, adaptation: BasisChange) -> Result<SU3Structure, Su3Error> {
    SU3Structure::new(g, adaptation)
}
