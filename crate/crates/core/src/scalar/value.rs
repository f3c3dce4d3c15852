use std::borrow::Cow;
use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_traits::{One, Zero};

use super::{rational, Bindings, Poly, Rational, ScalarError, Symbol};

/// A rational function in the parameters, kept in canonical form: the fraction
/// is reduced, the denominator is monic in graded lexicographic order, and a
/// parameter-free value is always stored as a plain rational. Structural
/// equality is therefore mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(Rational),
    /// At least one side involves a parameter.
    Fraction { num: Poly, den: Poly },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar(Repr::Rational(Rational::zero()))
    }

    pub fn one() -> Self {
        Scalar(Repr::Rational(Rational::one()))
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_rational(rational(n, 1))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Scalar::from_rational(rational(n, d))
    }

    pub fn from_rational(c: Rational) -> Self {
        Scalar(Repr::Rational(c))
    }

    pub fn var(name: &str) -> Self {
        Scalar::from_poly(Poly::var(Symbol::new(name)))
    }

    pub fn from_poly(p: Poly) -> Self {
        match p.as_constant() {
            Some(c) => Scalar(Repr::Rational(c)),
            None => Scalar(Repr::Fraction {
                num: p,
                den: Poly::one(),
            }),
        }
    }

    /// Builds and normalises `num / den`.
    pub fn from_fraction(num: Poly, den: Poly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return Scalar::zero();
        }
        if let Some(c) = den.as_constant() {
            return Scalar::from_poly(num.scale(&c.recip()));
        }
        let g = num.gcd(&den);
        if g.is_one() {
            return Scalar::monic(num, den);
        }
        Scalar::monic(
            num.div_exact(&g).expect("gcd divides numerator"),
            den.div_exact(&g).expect("gcd divides denominator"),
        )
    }

    /// `num / den` for coprime inputs: only the unit is normalised.
    fn monic(num: Poly, den: Poly) -> Scalar {
        let lc = den.leading().map(|(_, c)| c.clone()).expect("nonzero");
        let (num, den) = if lc.is_one() {
            (num, den)
        } else {
            let inv = lc.recip();
            (num.scale(&inv), den.scale(&inv))
        };
        if den.is_one() {
            Scalar::from_poly(num)
        } else {
            Scalar(Repr::Fraction { num, den })
        }
    }

    /// Re-canonicalises; the stored form is already canonical so this is a copy.
    pub fn normalize(&self) -> Self {
        match &self.0 {
            Repr::Rational(_) => self.clone(),
            Repr::Fraction { num, den } => Scalar::reduce(num.clone(), den.clone()),
        }
    }

    pub fn numerator(&self) -> Cow<'_, Poly> {
        match &self.0 {
            Repr::Rational(c) => Cow::Owned(Poly::constant(c.clone())),
            Repr::Fraction { num, .. } => Cow::Borrowed(num),
        }
    }

    pub fn denominator(&self) -> Cow<'_, Poly> {
        match &self.0 {
            Repr::Rational(_) => Cow::Owned(Poly::one()),
            Repr::Fraction { den, .. } => Cow::Borrowed(den),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(&self.0, Repr::Rational(c) if c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(&self.0, Repr::Rational(c) if c.is_one())
    }

    pub fn is_polynomial(&self) -> bool {
        match &self.0 {
            Repr::Rational(_) => true,
            Repr::Fraction { den, .. } => den.is_one(),
        }
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match &self.0 {
            Repr::Rational(c) => Some(c.clone()),
            Repr::Fraction { .. } => None,
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        match &self.0 {
            Repr::Rational(_) => BTreeSet::new(),
            Repr::Fraction { num, den } => {
                let mut s = num.symbols();
                s.extend(den.symbols());
                s
            }
        }
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        if other.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.mul_ref(&other.inv_unchecked()))
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(c) => Scalar::from_rational(c.recip()),
            Repr::Fraction { num, den } => Scalar::monic(den.clone(), num.clone()),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(match base.0 {
            Repr::Rational(c) => Scalar::from_rational(num_traits::pow(c, k as usize)),
            Repr::Fraction { num, den } => Scalar::from_fraction_parts(num.pow(k), den.pow(k)),
        })
    }

    pub fn evaluate(&self, b: &Bindings) -> Result<Rational, ScalarError> {
        match &self.0 {
            Repr::Rational(c) => Ok(c.clone()),
            Repr::Fraction { num, den } => {
                let d = den.evaluate(b)?;
                if d.is_zero() {
                    return Err(ScalarError::VanishingDenominator);
                }
                Ok(num.evaluate(b)? / d)
            }
        }
    }

    /// Substitutes the bound parameters, leaving the others symbolic.
    pub fn substitute(&self, b: &Bindings) -> Result<Scalar, ScalarError> {
        match &self.0 {
            Repr::Rational(_) => Ok(self.clone()),
            Repr::Fraction { num, den } => {
                let d = den.substitute(b);
                if d.is_zero() {
                    return Err(ScalarError::VanishingDenominator);
                }
                Ok(Scalar::reduce(num.substitute(b), d))
            }
        }
    }

    fn add_ref(&self, o: &Scalar) -> Scalar {
        let (n1, d1, n2, d2) = match (&self.0, &o.0) {
            (Repr::Rational(a), Repr::Rational(b)) => return Scalar::from_rational(a + b),
            // adding a multiple of the denominator keeps the fraction reduced
            (Repr::Rational(c), Repr::Fraction { num, den }) | (Repr::Fraction { num, den }, Repr::Rational(c)) => {
                if c.is_zero() {
                    return Scalar(Repr::Fraction {
                        num: num.clone(),
                        den: den.clone(),
                    });
                }
                return Scalar::from_fraction_parts(num.add(&den.scale(c)), den.clone());
            }
            (Repr::Fraction { num: n1, den: d1 }, Repr::Fraction { num: n2, den: d2 }) => (n1, d1, n2, d2),
        };
        if d1 == d2 {
            return Scalar::reduce(n1.add(n2), d1.clone());
        }
        // with g = gcd of the denominators, any common factor of the sum's
        // numerator and denominator already divides g
        let g = d1.gcd(d2);
        let a = d1.div_exact(&g).expect("gcd divides");
        let b = d2.div_exact(&g).expect("gcd divides");
        let num = n1.mul(&b).add(&n2.mul(&a));
        if num.is_zero() {
            return Scalar::zero();
        }
        let den = a.mul(&b);
        if g.is_one() {
            return Scalar::monic(num, den);
        }
        let h = num.gcd(&g);
        if h.is_one() {
            return Scalar::monic(num, den.mul(&g));
        }
        Scalar::monic(
            num.div_exact(&h).expect("gcd divides"),
            den.mul(&g.div_exact(&h).expect("gcd divides")),
        )
    }

    /// A fraction already known to be reduced with a monic denominator.
    fn from_fraction_parts(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            Scalar::zero()
        } else if den.is_one() {
            Scalar::from_poly(num)
        } else {
            Scalar(Repr::Fraction { num, den })
        }
    }

    fn mul_ref(&self, o: &Scalar) -> Scalar {
        let (n1, d1, n2, d2) = match (&self.0, &o.0) {
            (Repr::Rational(a), Repr::Rational(b)) => return Scalar::from_rational(a * b),
            (Repr::Rational(c), Repr::Fraction { num, den }) | (Repr::Fraction { num, den }, Repr::Rational(c)) => {
                if c.is_zero() {
                    return Scalar::zero();
                }
                return Scalar(Repr::Fraction {
                    num: num.scale(c),
                    den: den.clone(),
                });
            }
            (Repr::Fraction { num: n1, den: d1 }, Repr::Fraction { num: n2, den: d2 }) => (n1, d1, n2, d2),
        };
        // both inputs are reduced, so only cross cancellations can occur
        let cancel = |n: &Poly, d: &Poly| {
            let g = n.gcd(d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).expect("gcd divides"), d.div_exact(&g).expect("gcd divides"))
            }
        };
        let (n1, d2) = cancel(n1, d2);
        let (n2, d1) = cancel(n2, d1);
        Scalar::monic(n1.mul(&n2), d1.mul(&d2))
    }

    fn neg_ref(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(c) => Scalar::from_rational(-c),
            Repr::Fraction { num, den } => Scalar(Repr::Fraction {
                num: num.neg(),
                den: den.clone(),
            }),
        }
    }

    /// Sign of a parameter-free value.
    pub fn sign(&self) -> Option<std::cmp::Ordering> {
        match &self.0 {
            Repr::Rational(c) => Some(c.cmp(&Rational::zero())),
            Repr::Fraction { .. } => None,
        }
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(c: Rational) -> Self {
        Scalar::from_rational(c)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                self.$f(o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$f(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$f(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$f(&o)
            }
        }
    };
}

impl Scalar {
    fn sub_ref(&self, o: &Scalar) -> Scalar {
        self.add_ref(&o.neg_ref())
    }

    fn div_panicking(&self, o: &Scalar) -> Scalar {
        self.checked_div(o).expect("division by zero scalar")
    }
}

binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
// Panics on a zero divisor; use `checked_div` to handle that case.
binop!(Div, div, div_panicking);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        *self = self.add_ref(o);
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        *self = self.sub_ref(o);
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = self.mul_ref(o);
    }
}

fn needs_parens(p: &Poly) -> bool {
    p.num_terms() > 1
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (num, den) = match &self.0 {
            Repr::Rational(c) => return Poly::constant(c.clone()).fmt_terms(f),
            Repr::Fraction { num, den } if den.is_one() => return num.fmt_terms(f),
            Repr::Fraction { num, den } => (num, den),
        };
        if needs_parens(num) {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        let single_monomial =
            den.num_terms() == 1 && den.leading().is_some_and(|(m, c)| c.is_one() && m.factors().count() == 1);
        if single_monomial {
            write!(f, "/{den}")
        } else {
            write!(f, "/({den})")
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
