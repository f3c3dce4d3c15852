//! Independent check of a torsion form: the metric connection `∇ᵍ + ½T`
//! built from the Koszul formula must make `φ` parallel.

use crate::exterior::{mask_indices, Form};
use crate::liealg::LieAlgebra;
use crate::scalar::Scalar;

/// `∇'_{e_j} φ` for each `j`; all vanish exactly when `T` is the skew torsion of `φ`.
pub fn parallel_residuals(g: &LieAlgebra, phi: &Form, t: &Form) -> Vec<Form> {
    let n = g.dim();
    let fr = g.frame();
    // c[i][j][k] = e^i([e_j, e_k])
    let c: Vec<Vec<Vec<Scalar>>> = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| (1..=n).map(|k| -g.de(i).coeff_of(&[j, k])).collect())
                .collect()
        })
        .collect();
    let half = Scalar::frac(1, 2);
    (0..n)
        .map(|j| {
            // a[p][q] = g(∇'_{e_j} e_p, e_q)
            let a: Vec<Vec<Scalar>> = (0..n)
                .map(|p| {
                    (0..n)
                        .map(|q| {
                            let koszul = &(&(&c[q][j][p] - &c[j][p][q]) + &c[p][q][j]) * &half;
                            &koszul + &(&t.coeff_of(&[j + 1, p + 1, q + 1]) * &half)
                        })
                        .collect()
                })
                .collect();
            // ∇'_{e_j} e^q = -Σ_p a[p][q] e^p
            let images: Vec<Form> = (0..n)
                .map(|q| {
                    (0..n).fold(Form::zero(fr), |acc, p| {
                        &acc - &Form::e(fr, &[p + 1]).scale(&a[p][q])
                    })
                })
                .collect();
            let mut out = Form::zero(fr);
            for (mask, coeff) in phi.terms() {
                let idx = mask_indices(mask);
                for slot in 0..idx.len() {
                    let mut term = Form::constant(fr, coeff.clone());
                    for (k, &i) in idx.iter().enumerate() {
                        let f = if k == slot { images[i - 1].clone() } else { Form::e(fr, &[i]) };
                        term = term.wedge(&f);
                    }
                    out = &out + &term;
                }
            }
            out
        })
        .collect()
}
