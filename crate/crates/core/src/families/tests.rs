use super::*;
use crate::liealg::{catalog_entry, Evaluation};
use crate::scalar::Bindings;

#[test]
fn family_names_round_trip() {
    for fam in Family::ALL {
        assert_eq!(fam.name().parse::<Family>().unwrap(), fam);
    }
    assert!("case4".parse::<Family>().is_err());
}

#[test]
fn degenerate_bindings_rejected() {
    let b = Bindings::new().with_int("lam", 0);
    assert_eq!(Family::Case3.instantiate(Some(&b)).unwrap_err(), FamilyError::Degenerate("lam".into()));
    let b = Bindings::new().with_int("z", 2).with_int("a1", -2);
    assert!(matches!(Family::Case2.instantiate(Some(&b)), Err(FamilyError::Degenerate(_))));
}

#[test]
fn first_betti_at_most_three() {
    for fam in Family::ALL {
        let b = fam.algebra().betti_numbers(&Evaluation::Generic).unwrap();
        assert!(b[1] <= 3, "{fam}: {b:?}");
    }
}

#[test]
fn theorem_rows() {
    let table = verify_theorem();
    let summary: Vec<(&str, bool)> = table.rows.iter().map(|r| (r.entry, r.passes())).collect();
    assert_eq!(
        summary,
        [("l6", true), ("l7+", true), ("l7-", true), ("l15+", true), ("l15-", false), ("l24", true)]
    );
    assert!(matches!(table.check(), Err(FamilyError::Witness { row, .. }) if row == "l15-"));
}

#[test]
fn passing_witnesses_replay() {
    for row in verify_theorem().rows.into_iter().filter(TheoremRow::passes) {
        let (g, _) = row.family.instantiate(Some(&row.bindings)).unwrap();
        let target = catalog_entry(row.entry).unwrap();
        let w = row.witness.unwrap();
        assert!(!w.determinant().is_zero());
        assert_eq!(g.change_basis(&w).unwrap(), target, "{}", row.entry);
    }
}

#[test]
fn minus_35_row_is_separated_by_fingerprint() {
    let row = witness_for("l15-").unwrap();
    assert!(!row.fingerprints_match());
    assert!(matches!(row.error.as_deref(), Some(e) if e.contains("no diagonal witness")));
}

#[test]
fn unknown_row() {
    assert!(matches!(witness_for("l99"), Err(FamilyError::Unknown(_))));
}

#[test]
fn diagonal_solve_rejects_shape_mismatch() {
    let a = catalog_entry("l24").unwrap();
    let b = catalog_entry("l6").unwrap();
    assert!(matches!(diagonal_solve(&a, &b, &[]), Err(FamilyError::NoDiagonalWitness(_))));
}

#[test]
fn diagonal_solve_with_free_scale() {
    let g = crate::liealg::parse_salamon("0,0,3*12,0,0,0").unwrap();
    let h = crate::liealg::parse_salamon("0,0,12,0,0,0").unwrap();
    let w = diagonal_solve(&g, &h, &[(1, crate::scalar::Scalar::int(2))]).unwrap();
    assert_eq!(g.change_basis(&w).unwrap(), h);
}

#[test]
fn contraction_of_l7_rows() {
    let exps = [-1, 1, 0, -1, 1, -2];
    let l6 = catalog_entry("l6").unwrap();
    for name in ["l7+", "l7-"] {
        let g = catalog_entry(name).unwrap();
        assert_eq!(converging_direction(&g, &exps), [Direction::ToInfinity], "{name}");
        let limit = contraction_limit(&g, &exps, Direction::ToInfinity).unwrap();
        assert_eq!(limit, l6);
        assert!(matches!(
            contraction_limit(&g, &exps, Direction::ToZero),
            Err(FamilyError::Divergent { direction: Direction::ToZero, .. })
        ));
    }
}

#[test]
fn contraction_kills_case2_parameter() {
    let b = Bindings::new().with_int("lam", 1).with_int("z", 1).with_int("a1", 1);
    let (g, _) = Family::Case2.instantiate(Some(&b)).unwrap();
    let limit = contraction_limit(&g, &[-1, -1, 0, -2, -1, -1], Direction::ToZero).unwrap();
    assert!(limit.check_jacobi().holds());
    assert_eq!(limit.de(6).coeff_of(&[1, 4]), crate::scalar::Scalar::int(0));
}

#[test]
fn contraction_exponent_count() {
    let g = catalog_entry("l6").unwrap();
    assert!(contraction_limit(&g, &[0, 0], Direction::ToZero).is_err());
}

#[test]
fn direction_parsing() {
    assert_eq!("0".parse::<Direction>().unwrap(), Direction::ToZero);
    assert_eq!("infinity".parse::<Direction>().unwrap(), Direction::ToInfinity);
    assert!("sideways".parse::<Direction>().is_err());
}

#[test]
fn no_lambda_solution_on_fixed_structures() {
    let lam = crate::scalar::parse_scalar("lam").unwrap();
    for name in ["iwasawa", "l24"] {
        let g = catalog_entry(name).unwrap();
        let (r1, _) = lambda_equation_residual(&g, &lam).unwrap();
        assert!(!r1.is_zero(), "{name}");
    }
}
