//! Exact scalars: rationals and rational functions in named real parameters.

mod parse;
mod poly;
mod symbol;
mod value;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

pub use parse::{parse_rational, parse_scalar, parse_scalar_with, ParameterSet};
pub(crate) use parse::{lex, parse_tokens, Tok, Token};
pub use poly::{Monomial, Poly};
pub use symbol::{is_reserved_name, Symbol};
pub use value::Scalar;

/// Arbitrary-precision rational number in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds `n / d`; panics when `d == 0`.
pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero scalar")]
    DivisionByZero,
    #[error("unbound parameter `{0}`")]
    Unbound(Symbol),
    #[error("denominator vanishes at the binding")]
    VanishingDenominator,
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`{name}` at {pos} is a coframe name and cannot be a parameter")]
    ReservedName { name: String, pos: usize },
    #[error("undeclared parameter `{name}` at {pos}")]
    Undeclared { name: String, pos: usize },
}

/// An assignment of rational values to parameters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<Symbol, Rational>);

impl Bindings {
    pub fn new() -> Self {
        Bindings::default()
    }

    pub fn with(mut self, name: &str, value: Rational) -> Self {
        self.insert(Symbol::new(name), value);
        self
    }

    /// Shorthand for integer values.
    pub fn with_int(self, name: &str, value: i64) -> Self {
        self.with(name, rational(value, 1))
    }

    pub fn insert(&mut self, s: Symbol, v: Rational) {
        self.0.insert(s, v);
    }

    pub fn get(&self, s: &Symbol) -> Option<&Rational> {
        self.0.get(s)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Symbol, &Rational)> {
        self.0.iter()
    }

    /// Entries of `other` override entries of `self`.
    pub fn merged(&self, other: &Bindings) -> Bindings {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.insert(k.clone(), v.clone());
        }
        out
    }

    /// Parses `name=value` with a rational value.
    pub fn parse_assignment(&mut self, text: &str) -> Result<(), ScalarError> {
        let (name, value) = text.split_once('=').ok_or(ScalarError::Syntax {
            pos: 0,
            msg: "expected name=value".into(),
        })?;
        let name = name.trim();
        if name.is_empty() {
            return Err(ScalarError::Syntax {
                pos: 0,
                msg: "empty parameter name".into(),
            });
        }
        if is_reserved_name(name) {
            return Err(ScalarError::ReservedName {
                name: name.into(),
                pos: 0,
            });
        }
        let v = parse_rational(value.trim())?;
        self.insert(Symbol::new(name), v);
        Ok(())
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (k, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{k}=")?;
            poly::fmt_rational(v, f)?;
        }
        Ok(())
    }
}

impl FromIterator<(Symbol, Rational)> for Bindings {
    fn from_iter<I: IntoIterator<Item = (Symbol, Rational)>>(iter: I) -> Self {
        Bindings(iter.into_iter().collect())
    }
}

/// Formats a rational as `p` or `p/q`.
pub fn format_rational(c: &Rational) -> String {
    struct W<'a>(&'a Rational);
    impl fmt::Display for W<'_> {
        fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            poly::fmt_rational(self.0, f)
        }
    }
    W(c).to_string()
}
