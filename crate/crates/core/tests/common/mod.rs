//! Seeded randomized laws shared by the property suite and the acceptance run.
//! Every law runs 1000 cases from a fixed seed.

use g2t_core::exterior::{kahler_form, psi_minus, psi_plus, Form, Frame};
use g2t_core::families::Family;
use g2t_core::g2::{dt, half_integrable_torsion, lift, torsion_formula, torsion_from_classes, G2Structure};
use g2t_core::liealg::{catalog_entry, BasisChange, Evaluation, LieAlgebra};
use g2t_core::scalar::{Bindings, Scalar};
use g2t_core::su3::TorsionClasses;
use proptest::prelude::*;
use proptest::test_runner::{RngSeed, TestCaseError, TestRunner};

pub const CASES: u32 = 1000;

fn config(seed: u64) -> ProptestConfig {
    ProptestConfig {
        cases: CASES,
        rng_seed: RngSeed::Fixed(seed),
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn run<S>(seed: u64, strategy: S, law: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String>
where
    S: Strategy,
    S::Value: std::fmt::Debug,
{
    TestRunner::new(config(seed))
        .run(&strategy, law)
        .map_err(|e| e.to_string())
}

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-4i64..=4, 0u32..=2, 0u32..=2), 0..4).prop_map(|terms| {
        let (a, b) = (Scalar::var("a"), Scalar::var("b"));
        terms.into_iter().fold(Scalar::zero(), |acc, (c, i, j)| {
            let m = &a.pow(i as i32).unwrap() * &b.pow(j as i32).unwrap();
            &acc + &(&m * &Scalar::int(c))
        })
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (poly(), poly().prop_filter("nonzero denominator", |d| !d.is_zero()))
        .prop_map(|(n, d)| n.checked_div(&d).unwrap())
}

fn frame() -> impl Strategy<Value = Frame> {
    prop_oneof![Just(Frame::SIX), Just(Frame::SEVEN)]
}

fn form(fr: Frame, k: usize) -> impl Strategy<Value = Form> {
    let masks = fr.masks_of_grade(k);
    let n = masks.len();
    prop::collection::vec((0..n, -3i64..=3, 1i64..=3), 0..6).prop_map(move |terms| {
        terms.into_iter().fold(Form::zero(fr), |acc, (i, p, q)| {
            &acc + &Form::term(fr, masks[i], Scalar::frac(p, q))
        })
    })
}

fn graded_form() -> impl Strategy<Value = (Frame, usize, Form)> {
    frame()
        .prop_flat_map(|fr| (Just(fr), 0..=fr.dim()))
        .prop_flat_map(|(fr, k)| (Just(fr), Just(k), form(fr, k)))
}

fn nonzero_int() -> impl Strategy<Value = i64> {
    prop_oneof![-4i64..=-1, 1i64..=4]
}

/// Six-dimensional algebras from the catalog and bound family instances.
fn algebra() -> impl Strategy<Value = LieAlgebra> {
    let names = ["l6", "l7+", "l7-", "l15+", "l15-", "l24", "iwasawa", "torus"];
    prop_oneof![
        (0..names.len()).prop_map(move |i| catalog_entry(names[i]).unwrap()),
        (0..3usize, nonzero_int(), nonzero_int(), nonzero_int()).prop_filter_map(
            "degenerate binding",
            |(f, lam, x, y)| {
                let fam = Family::ALL[f];
                let b = match fam {
                    Family::Case1 => Bindings::new().with_int("lam", lam).with_int("k", x),
                    Family::Case2 => Bindings::new().with_int("lam", lam).with_int("z", x).with_int("a1", y),
                    Family::Case3 => Bindings::new().with_int("lam", lam).with_int("a1", x),
                };
                fam.instantiate(Some(&b)).ok().map(|(g, _)| g)
            }
        ),
    ]
}

fn invertible() -> impl Strategy<Value = BasisChange> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, 6), 6).prop_filter_map("singular", |rows| {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(Scalar::int).collect())
            .collect();
        BasisChange::from_rows(Frame::SIX, rows).ok()
    })
}

pub fn field_axioms() -> Result<(), String> {
    run(0x6774_0001, (scalar(), scalar(), scalar()), |(x, y, z)| {
        prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x + &(-&x)).is_zero());
        prop_assert_eq!(&x * &Scalar::one(), x.clone());
        if !x.is_zero() {
            prop_assert!((&x * &x.inv().unwrap()).is_one());
        }
        Ok(())
    })
}

pub fn double_hodge_sign() -> Result<(), String> {
    run(0x6774_0002, graded_form(), |(fr, k, a)| {
        let n = fr.dim();
        let sign = if (k * (n - k)) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(a.hodge().unwrap().hodge().unwrap(), a.scale(&Scalar::int(sign)));
        Ok(())
    })
}

pub fn wedge_with_hodge_is_inner() -> Result<(), String> {
    let pairs = graded_form().prop_flat_map(|(fr, k, a)| (Just(fr), Just(a), form(fr, k)));
    run(0x6774_0003, pairs, |(fr, a, b)| {
        let lhs = a.wedge(&b.hodge().unwrap());
        prop_assert_eq!(lhs, fr.volume().scale(&a.inner(&b)));
        Ok(())
    })
}

pub fn interior_is_adjoint_of_wedge() -> Result<(), String> {
    let triples = frame()
        .prop_flat_map(|fr| (Just(fr), 0..=fr.dim()))
        .prop_flat_map(|(fr, p)| (Just(fr), Just(p), 0..=fr.dim() - p))
        .prop_flat_map(|(fr, p, q)| (form(fr, p), form(fr, q), form(fr, p + q)));
    run(0x6774_0004, triples, |(a, b, c)| {
        prop_assert_eq!(a.interior(&c).unwrap().inner(&b), c.inner(&a.wedge(&b)));
        Ok(())
    })
}

pub fn d_squared_vanishes_after_basis_change() -> Result<(), String> {
    let forms = (0..=6usize).prop_flat_map(|k| form(Frame::SIX, k));
    run(0x6774_0005, (algebra(), invertible(), forms), |(g, m, a)| {
        let h = g.change_basis(&m).unwrap();
        prop_assert!(h.check_jacobi().holds());
        prop_assert!(h.extend_d(&h.extend_d(&a)).is_zero());
        Ok(())
    })
}

pub fn fingerprint_is_basis_invariant() -> Result<(), String> {
    run(0x6774_0006, (algebra(), invertible()), |(g, m)| {
        let h = g.change_basis(&m).unwrap();
        prop_assert_eq!(
            h.fingerprint(&Evaluation::Generic).unwrap(),
            g.fingerprint(&Evaluation::Generic).unwrap()
        );
        Ok(())
    })
}

pub fn torsion_routes_agree_on_half_integrable_instances() -> Result<(), String> {
    let params = (0..3usize, nonzero_int(), nonzero_int(), nonzero_int());
    run(0x6774_0007, params, |(f, lam, x, y)| {
        let fam = Family::ALL[f];
        let b = Bindings::new().with_int("lam", lam).with_int("k", x).with_int("z", x).with_int("a1", y);
        let Ok((_, s)) = fam.instantiate(Some(&b)) else { return Ok(()) };
        let g = G2Structure::new(&s).unwrap();
        let theta = g.extract_theta().unwrap();
        let direct = torsion_formula(&g.d(g.phi()), &theta).unwrap();
        let lambda = Scalar::int(lam);
        let (short, star_short) = half_integrable_torsion(&s.d(&s.omega()), &lambda).unwrap();
        prop_assert_eq!(&direct, &short);
        prop_assert_eq!(direct.hodge().unwrap(), star_short);
        let report = g.torsion().unwrap();
        prop_assert_eq!(report.t, direct);
        Ok(())
    })
}

/// Formal differentials with `β ≠ 0`: any `dψ⁺`, a `dω` whose `W₄` part is `β/4`,
/// and `θ = β + λ dt`.
pub fn torsion_routes_agree_on_formal_structures() -> Result<(), String> {
    let inputs = (form(Frame::SIX, 4), form(Frame::SIX, 3), -3i64..=3);
    run(0x6774_0008, inputs, |(d_pp, r, lam)| {
        let fr = Frame::SIX;
        let omega = kahler_form(fr);
        let lambda = Scalar::int(lam);
        let beta = psi_plus(fr).interior(&d_pp).unwrap().scale(&Scalar::frac(1, 2));
        let w4_r = omega.interior(&r).unwrap().scale(&Scalar::frac(1, 4));
        let shift = &beta.scale(&Scalar::frac(1, 2)) - &w4_r.scale(&Scalar::int(2));
        let d_omega = &r + &shift.wedge(&omega);
        let d_pm = &beta.wedge(&psi_minus(fr)) + &omega.wedge(&omega).scale(&Scalar::frac(lam, 2));

        let classes = TorsionClasses::from_differentials(&d_omega, &d_pp, &d_pm).unwrap();
        prop_assert_eq!(&classes.beta, &beta);
        prop_assert_eq!(classes.w4.scale(&Scalar::int(4)), beta.clone());
        prop_assert_eq!(classes.lambda(), lambda.clone());

        let d_phi = &lift(&d_omega).wedge(&dt()) + &lift(&d_pp);
        let theta = &lift(&beta) + &dt().scale(&lambda);
        let direct = torsion_formula(&d_phi, &theta).unwrap();
        let via_classes = torsion_from_classes(&classes, &d_omega, &lambda).unwrap();
        prop_assert_eq!(direct, via_classes);
        Ok(())
    })
}
