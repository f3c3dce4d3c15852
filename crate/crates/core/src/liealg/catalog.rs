//! Built-in algebras and the `name : algebra` list-file format.

use super::{parse_salamon, LieAlgebra, LieError};

/// A named algebra in Salamon notation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedAlgebra {
    pub name: String,
    pub salamon: String,
}

impl NamedAlgebra {
    pub fn algebra(&self) -> Result<LieAlgebra, LieError> {
        parse_salamon(&self.salamon)
    }
}

const BUILTIN: [(&str, &str); 8] = [
    ("l6", "0,0,12,13,23,14"),
    ("l7+", "0,0,12,13,23,14+25"),
    ("l7-", "0,0,12,13,23,14-25"),
    ("l15+", "0,0,0,12,23,14+35"),
    ("l15-", "0,0,0,12,23,14-35"),
    ("l24", "0,0,0,12,13,23"),
    ("iwasawa", "0,0,0,0,13+42,14+23"),
    ("torus", "0,0,0,0,0,0"),
];

/// The embedded algebras, in a fixed order.
pub fn catalog() -> Vec<NamedAlgebra> {
    BUILTIN
        .iter()
        .map(|(n, s)| NamedAlgebra {
            name: (*n).into(),
            salamon: (*s).into(),
        })
        .collect()
}

/// Looks up a built-in algebra by name.
pub fn catalog_entry(name: &str) -> Result<LieAlgebra, LieError> {
    BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| LieError::UnknownAlgebra(name.into()))
        .and_then(|(_, s)| parse_salamon(s))
}

/// Parses one `name : algebra` entry per line; blank lines and `#` comments are skipped.
pub fn parse_list_file(text: &str) -> Result<Vec<(String, LieAlgebra)>, LieError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (name, body) = line.split_once(':').ok_or(LieError::ListFile {
            line: i + 1,
            msg: "expected `name : algebra`".into(),
        })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(LieError::ListFile {
                line: i + 1,
                msg: "empty name".into(),
            });
        }
        let g = parse_salamon(body.trim()).map_err(|e| LieError::ListFile {
            line: i + 1,
            msg: e.to_string(),
        })?;
        out.push((name.to_string(), g));
    }
    Ok(out)
}
