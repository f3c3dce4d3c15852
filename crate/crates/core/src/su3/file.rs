//! Structure description files (TOML).
//!
//! ```toml
//! [algebra]
//! salamon = "0,0,0,0,13+42,14+23"   # or `name = "iwasawa"`, or `family = "case2"`
//!
//! [adaptation]
//! coframe = ["2", "1", "4", "3", "-5", "-6"]   # or `rows = ["0,1,0,0,0,0", ...]`
//!
//! [params]
//! lam = "1"
//! ```

use std::collections::BTreeMap;
use std::str::FromStr;

use serde::Deserialize;

use super::{SU3Structure, Su3Error};
use crate::exterior::{parse_form_with, Frame};
use crate::families::Family;
use crate::liealg::{catalog_entry, parse_salamon_with, BasisChange, LieAlgebra};
use crate::scalar::{parse_rational, parse_scalar_with, Bindings, ParameterSet, Scalar, Symbol};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraSource {
    Salamon(String),
    Catalog(String),
    Family(String),
}

/// How the adapted coframe is given.
#[derive(Debug, Clone, PartialEq)]
enum Adaptation {
    Identity,
    Rows(Vec<Vec<Scalar>>),
    Coframe(Vec<String>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct StructureFile {
    pub source: AlgebraSource,
    adaptation: Adaptation,
    pub bindings: Bindings,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFile {
    algebra: RawAlgebra,
    adaptation: Option<RawAdaptation>,
    params: Option<BTreeMap<String, toml::Value>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAlgebra {
    salamon: Option<String>,
    name: Option<String>,
    family: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAdaptation {
    rows: Option<Vec<String>>,
    coframe: Option<Vec<String>>,
}

fn file_err(msg: impl Into<String>) -> Su3Error {
    Su3Error::File(msg.into())
}

pub fn parse_structure_file(text: &str) -> Result<StructureFile, Su3Error> {
    let raw: RawFile = toml::from_str(text).map_err(|e| file_err(e.to_string()))?;
    let source = match (raw.algebra.salamon, raw.algebra.name, raw.algebra.family) {
        (Some(s), None, None) => AlgebraSource::Salamon(s),
        (None, Some(n), None) => AlgebraSource::Catalog(n),
        (None, None, Some(f)) => AlgebraSource::Family(f),
        _ => return Err(file_err("[algebra] needs exactly one of `salamon`, `name`, `family`")),
    };
    let mut bindings = Bindings::new();
    for (k, v) in raw.params.unwrap_or_default() {
        let text = match v {
            toml::Value::String(s) => s,
            toml::Value::Integer(i) => i.to_string(),
            other => return Err(file_err(format!("parameter `{k}` has unsupported value {other}"))),
        };
        let value = parse_rational(&text)?;
        bindings.insert(Symbol::new(&k), value);
    }
    let adaptation = match raw.adaptation {
        None => Adaptation::Identity,
        Some(RawAdaptation {
            rows: Some(rows),
            coframe: None,
        }) => {
            let parsed = rows
                .iter()
                .map(|r| {
                    r.split(',')
                        .map(|c| parse_scalar_with(c.trim(), &ParameterSet::Open))
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            Adaptation::Rows(parsed)
        }
        Some(RawAdaptation {
            rows: None,
            coframe: Some(c),
        }) => Adaptation::Coframe(c),
        Some(_) => return Err(file_err("[adaptation] needs exactly one of `rows`, `coframe`")),
    };
    Ok(StructureFile {
        source,
        adaptation,
        bindings,
    })
}

impl StructureFile {
    pub fn algebra(&self) -> Result<LieAlgebra, Su3Error> {
        Ok(match &self.source {
            AlgebraSource::Salamon(s) => parse_salamon_with(s, &ParameterSet::Open)?,
            AlgebraSource::Catalog(n) => catalog_entry(n)?,
            AlgebraSource::Family(f) => Family::from_str(f).map_err(file_err)?.algebra(),
        })
    }

    fn basis_change(&self) -> Result<BasisChange, Su3Error> {
        let fr = Frame::SIX;
        Ok(match &self.adaptation {
            Adaptation::Identity => BasisChange::identity(fr),
            Adaptation::Rows(r) => BasisChange::from_rows(fr, r.clone())?,
            Adaptation::Coframe(c) => {
                let forms = c
                    .iter()
                    .map(|s| parse_form_with(s, fr, &ParameterSet::Open))
                    .collect::<Result<Vec<_>, _>>()?;
                BasisChange::from_coframe(fr, &forms)?
            }
        })
    }

    /// The structure with file bindings, overridden by `extra`, substituted.
    pub fn build(&self, extra: &Bindings) -> Result<SU3Structure, Su3Error> {
        let b = self.bindings.merged(extra);
        let g = self.algebra()?.substitute(&b)?;
        let m = self.basis_change()?.substitute(&b)?;
        SU3Structure::new(&g, m)
    }
}
