//! Explicit isomorphisms from the families onto the six classified algebras.

use super::{Family, FamilyError};
use crate::exterior::{parse_form, Form, Frame};
use crate::liealg::{catalog_entry, BasisChange, Evaluation, Fingerprint, LieAlgebra};
use crate::scalar::{parse_rational, Bindings, Scalar, Symbol};

/// Diagonal `f^i = s_i e^i` carrying `g` onto `target`, which must share its
/// support term by term. Closed generators take the value from `free`
/// (1-based index, value) or 1.
pub fn diagonal_solve(
    g: &LieAlgebra,
    target: &LieAlgebra,
    free: &[(usize, Scalar)],
) -> Result<BasisChange, FamilyError> {
    let fail = |m: String| FamilyError::NoDiagonalWitness(m);
    if g.dim() != target.dim() {
        return Err(fail(format!("dimensions {} and {}", g.dim(), target.dim())));
    }
    let order = g.nilpotent_order()?;
    let mut s: Vec<Option<Scalar>> = vec![None; g.dim()];
    for i in order {
        let (src, dst) = (g.de(i), target.de(i));
        let support = |f: &Form| f.terms().map(|(m, _)| m).collect::<Vec<_>>();
        if support(src) != support(dst) {
            return Err(fail(format!("d e^{i} = {src} and {dst} have different shapes")));
        }
        let value = match src.terms().next() {
            None => free
                .iter()
                .find(|(k, _)| *k == i)
                .map_or_else(Scalar::one, |(_, v)| v.clone()),
            Some((mask, c)) => {
                let idx = crate::exterior::mask_indices(mask);
                let (j, k) = (idx[0], idx[1]);
                let sj = s[j - 1].clone().expect("peeled earlier");
                let sk = s[k - 1].clone().expect("peeled earlier");
                &(&dst.coeff(mask) * &sj) * &sk / c.clone()
            }
        };
        if value.is_zero() {
            return Err(fail(format!("scale of e^{i} vanishes")));
        }
        s[i - 1] = Some(value);
    }
    let frame = g.frame();
    let b = BasisChange::diagonal(frame, s.into_iter().map(|x| x.expect("all peeled")).collect())?;
    let mapped = g.change_basis(&b)?;
    if mapped.differentials() != target.differentials() {
        return Err(fail(format!("diagonal system is inconsistent: reached {mapped}")));
    }
    Ok(b)
}

/// One line of the classification: a family instance mapped onto a listed algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct TheoremRow {
    /// Catalog name of the target.
    pub entry: &'static str,
    pub target: String,
    pub family: Family,
    pub bindings: Bindings,
    pub witness: Option<BasisChange>,
    pub source_fingerprint: Option<Fingerprint>,
    pub target_fingerprint: Option<Fingerprint>,
    pub isomorphic: bool,
    pub error: Option<String>,
}

impl TheoremRow {
    pub fn fingerprints_match(&self) -> bool {
        self.source_fingerprint.is_some() && self.source_fingerprint == self.target_fingerprint
    }

    pub fn passes(&self) -> bool {
        self.isomorphic && self.fingerprints_match() && self.error.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TheoremTable {
    pub rows: Vec<TheoremRow>,
}

impl TheoremTable {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(TheoremRow::passes)
    }

    /// The first failing row as an error.
    pub fn check(&self) -> Result<(), FamilyError> {
        match self.rows.iter().find(|r| !r.passes()) {
            None => Ok(()),
            Some(r) => Err(FamilyError::Witness {
                row: r.entry.into(),
                msg: r.error.clone().unwrap_or_else(|| "witness or fingerprint mismatch".into()),
            }),
        }
    }
}

struct Recipe {
    entry: &'static str,
    family: Family,
    bindings: &'static [(&'static str, &'static str)],
    /// New coframe in terms of the family coframe, before the diagonal step.
    coframe: &'static [&'static str],
    free: &'static [(usize, &'static str)],
}

const RECIPES: [Recipe; 6] = [
    Recipe {
        entry: "l6",
        family: Family::Case1,
        bindings: &[],
        coframe: &["5", "1", "3", "2", "6", "lam*3 + k*4"],
        free: &[],
    },
    Recipe {
        entry: "l7+",
        family: Family::Case2,
        bindings: &[("lam", "1"), ("a1", "1"), ("z", "1")],
        coframe: &["1", "3", "5", "4", "2", "(z+a1)*6 - lam*5"],
        free: &[],
    },
    Recipe {
        entry: "l7-",
        family: Family::Case2,
        bindings: &[("lam", "1"), ("a1", "1"), ("z", "-4")],
        coframe: &["1", "3", "5", "4", "2", "(z+a1)*6 - lam*5"],
        free: &[(1, "1/2")],
    },
    Recipe {
        entry: "l15+",
        family: Family::Case3,
        bindings: &[("a1", "1")],
        coframe: &["1", "5", "3", "4 + lam/a1*3", "2", "6"],
        free: &[],
    },
    Recipe {
        entry: "l15-",
        family: Family::Case3,
        bindings: &[("a1", "-1")],
        coframe: &["1", "5", "3", "4 + lam/a1*3", "2", "6"],
        free: &[],
    },
    Recipe {
        entry: "l24",
        family: Family::Case3,
        bindings: &[("a1", "0")],
        coframe: &["1", "5", "3", "4", "6", "2"],
        free: &[],
    },
];

fn bindings_of(r: &Recipe) -> Bindings {
    r.bindings
        .iter()
        .map(|(k, v)| (Symbol::new(k), parse_rational(v).expect("literal")))
        .collect()
}

/// The witness for one catalog entry, or the reason it cannot be built.
pub fn witness_for(entry: &str) -> Result<TheoremRow, FamilyError> {
    let r = RECIPES
        .iter()
        .find(|r| r.entry == entry)
        .ok_or_else(|| FamilyError::Unknown(entry.into()))?;
    Ok(replay(r))
}

fn replay(r: &Recipe) -> TheoremRow {
    let bindings = bindings_of(r);
    let target = catalog_entry(r.entry).expect("catalog entry");
    let mut row = TheoremRow {
        entry: r.entry,
        target: target.to_string(),
        family: r.family,
        bindings: bindings.clone(),
        witness: None,
        source_fingerprint: None,
        target_fingerprint: target.fingerprint(&Evaluation::Generic).ok(),
        isomorphic: false,
        error: None,
    };
    let result = (|| -> Result<(BasisChange, Fingerprint, bool), FamilyError> {
        let (g, _) = r.family.instantiate(Some(&bindings))?;
        let fp = g.fingerprint(&Evaluation::Generic)?;
        let fr = Frame::SIX;
        let coframe: Vec<Form> = r.coframe.iter().map(|s| parse_form(s, fr).expect("literal")).collect();
        let perm = BasisChange::from_coframe(fr, &coframe)?.substitute(&bindings)?;
        let moved = g.change_basis(&perm)?;
        let free: Vec<(usize, Scalar)> = r
            .free
            .iter()
            .map(|(i, v)| (*i, Scalar::from_rational(parse_rational(v).expect("literal"))))
            .collect();
        let witness = match diagonal_solve(&moved, &target, &free) {
            Ok(diag) => perm.then(&diag),
            Err(e) => {
                row.witness = Some(perm);
                row.source_fingerprint = Some(fp);
                return Err(e);
            }
        };
        let iso = g.is_isomorphic_via(&witness, &target)?;
        Ok((witness, fp, iso))
    })();
    match result {
        Ok((w, fp, iso)) => {
            row.witness = Some(w);
            row.source_fingerprint = Some(fp);
            row.isomorphic = iso;
        }
        Err(e) => row.error = Some(e.to_string()),
    }
    row
}

/// Replays all six rows.
pub fn verify_theorem() -> TheoremTable {
    TheoremTable {
        rows: RECIPES.iter().map(replay).collect(),
    }
}
