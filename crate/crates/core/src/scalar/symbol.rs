use std::fmt;
use std::sync::Arc;

/// A named real parameter such as `lam`, `k`, `z` or `a1`.
///
/// Names are canonicalised on construction: `λ` becomes `lam` and subscript
/// digits become ASCII digits, so `a₁` and `a1` are the same symbol.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Symbol(Arc<str>);

impl Symbol {
    pub fn new(name: &str) -> Self {
        Symbol(Arc::from(canonical_name(name).as_str()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

/// Identifiers that denote coframe elements and therefore cannot name parameters.
pub fn is_reserved_name(name: &str) -> bool {
    let name = canonical_name(name);
    if name == "dt" {
        return true;
    }
    match name.strip_prefix('e') {
        Some(rest) => !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()),
        None => false,
    }
}

fn canonical_name(name: &str) -> String {
    let mut out = String::with_capacity(name.len());
    for c in name.chars() {
        match c {
            'λ' => out.push_str("lam"),
            '₀'..='₉' => out.push(char::from(b'0' + (c as u32 - '₀' as u32) as u8)),
            _ => out.push(c),
        }
    }
    out
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Symbol {
    fn from(s: &str) -> Self {
        Symbol::new(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unicode_aliases() {
        assert_eq!(Symbol::new("λ"), Symbol::new("lam"));
        assert_eq!(Symbol::new("a₁"), Symbol::new("a1"));
    }

    #[test]
    fn reserved() {
        assert!(is_reserved_name("dt"));
        assert!(is_reserved_name("e12"));
        assert!(!is_reserved_name("e"));
        assert!(!is_reserved_name("eps"));
        assert!(!is_reserved_name("lam"));
    }
}
