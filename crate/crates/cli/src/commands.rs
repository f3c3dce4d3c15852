use std::path::Path;
use std::str::FromStr;

use g2t_core::exterior::{ExteriorError, Form, Frame};
use g2t_core::families::{
    contraction_limit, converging_direction, verify_theorem, Direction, Family, FamilyError,
};
use g2t_core::g2::{G2Error, G2Structure};
use g2t_core::liealg::{catalog_entry, parse_salamon, BasisChange, Evaluation, LieAlgebra, LieError};
use g2t_core::scalar::{Bindings, ScalarError};
use g2t_core::su3::{parse_structure_file, SU3Structure, Su3Error};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::Report;

/// Input problems exit with 2, failed checks with 1.
#[derive(Debug)]
pub enum CliError {
    Input(String),
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Failed(m) => m,
        }
    }
}

fn scalar_is_input(e: &ScalarError) -> bool {
    matches!(
        e,
        ScalarError::Syntax { .. } | ScalarError::ReservedName { .. } | ScalarError::Undeclared { .. }
    )
}

fn exterior_is_input(e: &ExteriorError) -> bool {
    match e {
        ExteriorError::Syntax { .. }
        | ExteriorError::RepeatedIndex { .. }
        | ExteriorError::IndexOutOfRange { .. }
        | ExteriorError::Dimension(_) => true,
        ExteriorError::Scalar(s) => scalar_is_input(s),
        _ => false,
    }
}

fn lie_is_input(e: &LieError) -> bool {
    match e {
        LieError::Exterior(x) => exterior_is_input(x),
        LieError::Scalar(s) => scalar_is_input(s),
        LieError::EntryCount(_)
        | LieError::EntryGrade { .. }
        | LieError::ListFile { .. }
        | LieError::UnknownAlgebra(_) => true,
        _ => false,
    }
}

fn su3_is_input(e: &Su3Error) -> bool {
    match e {
        Su3Error::File(_) => true,
        Su3Error::Lie(l) => lie_is_input(l),
        Su3Error::Exterior(x) => exterior_is_input(x),
        Su3Error::Scalar(s) => scalar_is_input(s),
        _ => false,
    }
}

impl From<LieError> for CliError {
    fn from(e: LieError) -> CliError {
        if lie_is_input(&e) {
            CliError::Input(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

impl From<Su3Error> for CliError {
    fn from(e: Su3Error) -> CliError {
        if su3_is_input(&e) {
            CliError::Input(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

impl From<G2Error> for CliError {
    fn from(e: G2Error) -> CliError {
        match e {
            G2Error::Lie(l) => l.into(),
            G2Error::Su3(s) => s.into(),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<FamilyError> for CliError {
    fn from(e: FamilyError) -> CliError {
        match e {
            FamilyError::Lie(l) => l.into(),
            FamilyError::Su3(s) => s.into(),
            FamilyError::G2(g) => g.into(),
            FamilyError::Unknown(_) => CliError::Input(e.to_string()),
            other => CliError::Failed(other.to_string()),
        }
    }
}

impl From<ScalarError> for CliError {
    fn from(e: ScalarError) -> CliError {
        if scalar_is_input(&e) {
            CliError::Input(e.to_string())
        } else {
            CliError::Failed(e.to_string())
        }
    }
}

pub fn parse_params(params: &[String]) -> Result<Bindings, CliError> {
    let mut b = Bindings::new();
    for p in params {
        b.parse_assignment(p)
            .map_err(|e| CliError::Input(format!("--param {p}: {e}")))?;
    }
    Ok(b)
}

/// A catalog name, a family name or Salamon notation, with `b` substituted.
pub fn resolve_algebra(arg: &str, b: &Bindings) -> Result<(LieAlgebra, &'static str), CliError> {
    if let Ok(g) = catalog_entry(arg) {
        return Ok((g.substitute(b)?, "catalog"));
    }
    if let Ok(fam) = Family::from_str(arg) {
        let (g, _) = fam.instantiate(Some(b))?;
        return Ok((g, "family"));
    }
    let g = parse_salamon(arg)?;
    Ok((g.substitute(b)?, "salamon"))
}

fn bindings_json(b: &Bindings) -> Value {
    let map: serde_json::Map<String, Value> = b
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(g2t_core::scalar::format_rational(v))))
        .collect();
    Value::Object(map)
}

fn joined(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn check(r: &mut Report, arg: &str, b: &Bindings) -> Result<(), CliError> {
    let g = match resolve_algebra(arg, b) {
        Ok((g, _)) => g,
        Err(CliError::Failed(msg)) => {
            r.check("jacobi", false, Some(msg));
            return Ok(());
        }
        Err(e) => return Err(e),
    };
    r.put("algebra", g.to_string());
    let jac = g.check_jacobi();
    let detail = jac
        .failures
        .iter()
        .map(|(i, f)| format!("d(d e{i}) = {f}"))
        .collect::<Vec<_>>()
        .join("; ");
    r.check("jacobi", jac.holds(), (!detail.is_empty()).then_some(detail));
    match g.nilpotent_order() {
        Ok(order) => r.check("nilpotent", true, Some(format!("peel order {}", joined(&order)))),
        Err(e) => r.check("nilpotent", false, Some(e.to_string())),
    }
    Ok(())
}

pub fn betti(r: &mut Report, arg: &str, b: &Bindings) -> Result<(), CliError> {
    let (g, _) = resolve_algebra(arg, b)?;
    r.put("algebra", g.to_string());
    match g.betti_numbers(&Evaluation::Generic) {
        Ok(bs) => {
            for (k, v) in bs.iter().enumerate() {
                r.put(&format!("b{k}"), *v);
            }
            let euler: i64 = bs
                .iter()
                .enumerate()
                .map(|(k, &v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
                .sum();
            r.check("euler_characteristic_zero", euler == 0, Some(format!("chi = {euler}")));
            let n = bs.len() - 1;
            let dual = (0..=n).all(|k| bs[k] == bs[n - k]);
            r.check("poincare_duality", dual, None);
        }
        Err(e) => r.check("generic_rank", false, Some(e.to_string())),
    }
    Ok(())
}

pub fn fingerprint(r: &mut Report, arg: &str, b: &Bindings) -> Result<(), CliError> {
    let (g, _) = resolve_algebra(arg, b)?;
    r.put("algebra", g.to_string());
    match g.fingerprint(&Evaluation::Generic) {
        Ok(fp) => {
            r.put("fingerprint", fp.to_string());
            r.put("betti", joined(&fp.betti));
            r.put("lower_central", joined(&fp.series.lower_central));
            r.put("derived", joined(&fp.series.derived));
            r.put("upper_central", joined(&fp.series.upper_central));
            r.put("exact_wedge_rank", fp.exact_wedge_rank);
            r.check("generic_rank", true, None);
        }
        Err(e) => r.check("generic_rank", false, Some(e.to_string())),
    }
    Ok(())
}

fn load_structure(path: &Path, b: &Bindings) -> Result<SU3Structure, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file = parse_structure_file(&text)?;
    Ok(file.build(b)?)
}

fn form(f: &Form) -> Value {
    Value::String(f.to_string())
}

pub fn su3(r: &mut Report, path: &Path, b: &Bindings) -> Result<(), CliError> {
    let s = load_structure(path, b)?;
    r.put("algebra", s.presentation().to_string());
    r.put("adapted_algebra", s.algebra().to_string());
    r.put("adaptation", s.adaptation().to_string());
    let c = s.torsion_classes()?;
    let d_omega = s.d(&s.omega());
    let d_pp = s.d(&s.psi_plus());
    r.put("d_omega", form(&d_omega));
    r.put("d_psi_plus", form(&d_pp));
    r.put("d_psi_minus", form(&s.d(&s.psi_minus())));
    r.put("w1_plus", c.w1_plus.to_string());
    r.put("w1_minus", c.w1_minus.to_string());
    r.put("w2_plus", form(&c.w2_plus));
    r.put("w2_minus", form(&c.w2_minus));
    r.put("omega3", form(&c.omega3));
    r.put("w4", form(&c.w4));
    r.put("w5", form(&c.w5));
    r.put("beta", form(&c.beta));
    r.put("nu_plus", c.nu_plus.to_string());
    r.put("nu_minus", c.nu_minus.to_string());
    r.put("lee", form(&c.lee));
    r.put("half_integrable", s.is_half_integrable());
    let (r1, r2) = s.g2t_residual_intrinsic()?;
    r.put("g2t_equations_hold", r1.is_zero() && r2.is_zero());
    r.check("compatible", true, None);
    r.check("d_omega_decomposition", c.rebuild_d_omega() == d_omega, None);
    r.check("d_psi_plus_decomposition", c.rebuild_d_psi_plus() == d_pp, None);
    Ok(())
}

pub fn g2t(r: &mut Report, path: &Path, b: &Bindings) -> Result<(), CliError> {
    let s = load_structure(path, b)?;
    r.put("algebra", s.presentation().to_string());
    let g = G2Structure::new(&s)?;
    let rep = match g.torsion() {
        Ok(rep) => rep,
        Err(e @ (G2Error::NotG2T { .. } | G2Error::LeeNotClosed(_))) => {
            r.check("g2t", false, Some(e.to_string()));
            return Ok(());
        }
        Err(e) => return Err(e.into()),
    };
    r.check("g2t", true, None);
    r.check("torsion_routes_agree", true, None);
    r.put("theta", form(&rep.theta));
    r.put("lambda", rep.lambda.to_string());
    r.put("T", form(&rep.t));
    r.put("star_T", form(&rep.star_t));
    r.put("dT", form(&rep.d_t));
    r.put("d_star_T", form(&rep.d_star_t));
    r.put("inner_dphi_star_phi", rep.inner_dphi_star_phi.to_string());
    r.put("w1_plus", rep.w1_plus.to_string());
    r.put("strong", rep.is_strong);
    r.put("dT_type_22", rep.dt_type_22);
    r.put("dT_in_R_plus_S2", rep.dt_in_r_plus_s2);
    if s.is_half_integrable() {
        r.check("co_closed", rep.d_star_t.is_zero(), None);
        r.check("dT_type_22", rep.dt_type_22, None);
        r.check("dT_no_V7", rep.dt_in_r_plus_s2, None);
        match g.strong_eigen_check() {
            Ok(ev) => {
                r.put("laplacian_omega", form(&s.laplacian(&s.omega())?));
                r.put("omega_eigenvalue", ev.map_or(Value::Null, |x| Value::String(x.to_string())));
                r.check("strong_eigenvalue", true, None);
            }
            Err(e) => r.check("strong_eigenvalue", false, Some(e.to_string())),
        }
    }
    Ok(())
}

pub fn theorem(r: &mut Report) -> Result<(), CliError> {
    let table = verify_theorem();
    let mut rows = Vec::new();
    for row in &table.rows {
        let witness = row.witness.as_ref().map(BasisChange::to_string);
        rows.push(json!({
            "entry": row.entry,
            "target": row.target,
            "family": row.family.name(),
            "bindings": bindings_json(&row.bindings),
            "witness": witness,
            "fingerprints_match": row.fingerprints_match(),
            "isomorphic": row.isomorphic,
            "passed": row.passes(),
            "error": row.error,
        }));
        let detail = row
            .error
            .clone()
            .or_else(|| row.witness.as_ref().map(|w| w.to_string()));
        r.check(format!("{} {} <- {}", row.entry, row.target, row.family), row.passes(), detail);
    }
    r.put("rows", Value::Array(rows));
    Ok(())
}

pub fn contract(
    r: &mut Report,
    arg: &str,
    b: &Bindings,
    exponents: &[i32],
    direction: Option<&str>,
    target: Option<&str>,
) -> Result<(), CliError> {
    let (g, _) = resolve_algebra(arg, b)?;
    r.put("algebra", g.to_string());
    r.put("exponents", exponents.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
    if exponents.len() != g.dim() {
        return Err(CliError::Input(format!(
            "--exponents has {} entries for a {}-dimensional algebra",
            exponents.len(),
            g.dim()
        )));
    }
    let converging = converging_direction(&g, exponents);
    r.put(
        "converging_directions",
        Value::Array(converging.iter().map(|d| Value::String(d.to_string())).collect()),
    );
    let dir = match direction {
        Some(d) => Direction::from_str(d).map_err(CliError::Input)?,
        None => match converging.as_slice() {
            [one] => *one,
            _ => {
                r.check("unique_direction", false, Some(format!("{} directions converge", converging.len())));
                return Ok(());
            }
        },
    };
    r.put("direction", dir.to_string());
    let limit = match contraction_limit(&g, exponents, dir) {
        Ok(l) => l,
        Err(e) => {
            r.check("converges", false, Some(e.to_string()));
            return Ok(());
        }
    };
    r.put("limit", limit.to_string());
    r.check("converges", true, None);
    r.check("limit_jacobi", limit.check_jacobi().holds(), None);
    if let Some(t) = target {
        let (h, _) = resolve_algebra(t, b)?;
        let a = limit.fingerprint(&Evaluation::Generic)?;
        let c = h.fingerprint(&Evaluation::Generic)?;
        r.put("target", h.to_string());
        r.check("limit_fingerprint_matches_target", a == c, Some(format!("{a} vs {c}")));
    }
    Ok(())
}

/// A random unimodular change of basis built from shears and swaps.
fn random_change(rng: &mut ChaCha8Rng, frame: Frame) -> BasisChange {
    let n = frame.dim();
    let mut steps = Vec::new();
    for _ in 0..4 {
        let i = rng.random_range(1..=n);
        let j = rng.random_range(1..=n);
        if i == j {
            continue;
        }
        if rng.random_bool(0.3) {
            steps.push(BasisChange::swap(frame, i, j));
        } else {
            let c = g2t_core::scalar::Scalar::int(rng.random_range(-3..=3));
            let image = &Form::e(frame, &[i]) + &Form::e(frame, &[j]).scale(&c);
            steps.push(BasisChange::redefine(frame, i, &image).expect("unimodular shear"));
        }
    }
    BasisChange::chain(frame, steps.iter())
}

pub fn selftest(r: &mut Report, seed: u64, cases: usize) -> Result<(), CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    r.put("seed", seed);
    r.put("cases", cases);
    let algebras: Vec<(String, LieAlgebra)> = g2t_core::liealg::catalog()
        .into_iter()
        .map(|n| {
            let g = n.algebra().expect("catalog");
            (n.name.to_string(), g)
        })
        .collect();
    let fingerprints: Vec<_> = algebras
        .iter()
        .map(|(_, g)| g.fingerprint(&Evaluation::Generic))
        .collect::<Result<_, _>>()?;
    let (mut d2_fail, mut fp_fail) = (None, None);
    for case in 0..cases {
        let k = rng.random_range(0..algebras.len());
        let (name, g) = &algebras[k];
        let m = random_change(&mut rng, g.frame());
        let h = g.change_basis(&m)?;
        if d2_fail.is_none() && !h.check_jacobi().holds() {
            d2_fail = Some(format!("case {case}: {name} via {m}"));
        }
        if fp_fail.is_none() && h.fingerprint(&Evaluation::Generic)? != fingerprints[k] {
            fp_fail = Some(format!("case {case}: {name} via {m}"));
        }
    }
    r.check("d_squared_zero_after_basis_change", d2_fail.is_none(), d2_fail);
    r.check("fingerprint_basis_invariant", fp_fail.is_none(), fp_fail);
    Ok(())
}
