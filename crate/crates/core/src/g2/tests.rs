use super::*;
use crate::exterior::{parse_form, Frame};
use crate::families::Family;
use crate::liealg::{catalog_entry, BasisChange};
use crate::scalar::Scalar;
use crate::su3::SU3Structure;

fn f7(s: &str) -> Form {
    parse_form(s, Frame::SEVEN).unwrap()
}

fn iwasawa() -> SU3Structure {
    let g = catalog_entry("iwasawa").unwrap();
    let cof: Vec<Form> = ["2", "1", "4", "3", "-5", "-6"]
        .iter()
        .map(|s| parse_form(s, Frame::SIX).unwrap())
        .collect();
    SU3Structure::new(&g, BasisChange::from_coframe(Frame::SIX, &cof).unwrap()).unwrap()
}

fn assert_parallel(g: &G2Structure, t: &Form) {
    for (j, r) in oracle::parallel_residuals(g.algebra(), g.phi(), t).iter().enumerate() {
        assert!(r.is_zero(), "nabla_{} phi = {r}", j + 1);
    }
}

#[test]
fn phi_and_its_dual() {
    assert_eq!(phi(), f7("127+347+567+135-146-236-245"));
    assert_eq!(phi().hodge().unwrap(), star_phi());
    assert_eq!(phi().wedge(&star_phi()), Frame::SEVEN.volume().scale(&Scalar::int(7)));
}

#[test]
fn v7_gram_is_four_identity() {
    let g = v7_gram();
    for i in 0..7 {
        for j in 0..7 {
            let want = if i == j { 4 } else { 0 };
            assert_eq!(g.get(i, j), &crate::scalar::rational(want, 1));
        }
    }
}

#[test]
fn iwasawa_torsion() {
    let g = G2Structure::new(&iwasawa()).unwrap();
    let r = g.torsion().unwrap();
    assert!(r.theta.is_zero());
    assert_eq!(r.t, f7("4/3*127 + 4/3*347 - 8/3*567 + 1/3*135 - 1/3*146 - 1/3*236 - 1/3*245"));
    assert_eq!(r.inner_dphi_star_phi, Scalar::int(8));
    assert_eq!(r.w1_plus, Scalar::frac(2, 3));
    assert!(!r.is_strong);
    assert!(!r.short_route_checked);
    assert_parallel(&g, &r.t);
}

#[test]
fn published_iwasawa_torsion_is_not_parallel() {
    let g = G2Structure::new(&iwasawa()).unwrap();
    let candidate = &phi().scale(&Scalar::frac(2, 3)) - &f7("4*567");
    let residuals = oracle::parallel_residuals(g.algebra(), g.phi(), &candidate);
    assert!(residuals.iter().any(|r| !r.is_zero()));
}

#[test]
fn family_torsion_matches_oracle() {
    for fam in Family::ALL {
        let (_, s) = fam.instantiate(None).unwrap();
        let g = G2Structure::new(&s).unwrap();
        let r = g.torsion().unwrap();
        assert!(r.short_route_checked, "{fam}");
        assert_eq!(r.theta, f7("lam*7"), "{fam}");
        assert!(r.inner_dphi_star_phi.is_zero(), "{fam}");
        assert!(r.d_star_t.is_zero(), "{fam}");
        assert!(r.dt_type_22 && r.dt_in_r_plus_s2, "{fam}");
        assert!(!r.is_strong, "{fam}");
        assert_parallel(&g, &r.t);
    }
}

#[test]
fn family_dt() {
    let expect = [
        (Family::Case1, "-2*lam^2*1234 - (2*k^2 + 2*lam^2)*1256 - 2*lam^2*3456"),
        (Family::Case2, "-(2*a1^2 + 2*a1*z + 2*z^2 + 2*lam^2)*1234 - 2*lam^2*1256 - 2*lam^2*3456"),
        (Family::Case3, "-(2*a1^2 + 2*lam^2)*1234 - 2*lam^2*1256 - 2*lam^2*3456"),
    ];
    for (fam, dt) in expect {
        let (_, s) = fam.instantiate(None).unwrap();
        let r = G2Structure::new(&s).unwrap().torsion().unwrap();
        assert_eq!(r.d_t, f7(dt), "{fam}");
    }
}

#[test]
fn perturbed_structure_is_not_g2t() {
    use crate::liealg::parse_salamon;
    // dψ⁻ is a lone e1234, off the span of β∧ψ⁻ and ω²
    let g = parse_salamon("0,0,0,0,0,13").unwrap();
    let s = SU3Structure::standard(&g).unwrap();
    let err = G2Structure::new(&s).unwrap().torsion().unwrap_err();
    assert!(matches!(err, G2Error::NotG2T { .. }), "{err}");
}

#[test]
fn eigen_check_requires_half_integrable() {
    let g = G2Structure::new(&iwasawa()).unwrap();
    assert!(matches!(g.strong_eigen_check(), Err(G2Error::Precondition(_))));
}

#[test]
fn eigen_check_on_case3_at_a1_zero() {
    let b = crate::scalar::Bindings::new().with_int("a1", 0);
    let (_, s) = Family::Case3.instantiate(Some(&b)).unwrap();
    let g = G2Structure::new(&s).unwrap();
    assert_eq!(g.strong_eigen_check().unwrap(), Some(crate::scalar::parse_scalar("3*lam^2").unwrap()));
}

#[test]
fn torus_product_is_torsion_free() {
    let s = SU3Structure::standard(&catalog_entry("torus").unwrap()).unwrap();
    let g = G2Structure::new(&s).unwrap();
    let r = g.torsion().unwrap();
    assert!(r.t.is_zero() && r.theta.is_zero() && r.is_strong);
    assert_eq!(g.strong_eigen_check().unwrap(), Some(Scalar::int(0)));
}

#[test]
fn half_integrable_short_form() {
    let (_, s) = Family::Case1.instantiate(None).unwrap();
    let d_omega = s.d(&s.omega());
    let lam = crate::scalar::parse_scalar("lam").unwrap();
    let (t, st) = half_integrable_torsion(&d_omega, &lam).unwrap();
    assert_eq!(t.hodge().unwrap(), st);
}

#[test]
fn type_22_detection() {
    assert!(is_type_22(&f7("1234")).unwrap());
    assert!(!is_type_22(&f7("1357")).unwrap());
    assert!(!is_type_22(&f7("1237")).unwrap());
}
