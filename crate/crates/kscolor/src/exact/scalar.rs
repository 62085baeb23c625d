//! Scalars of the quadratic field Q(sqrt 2), represented as `rat + irr * sqrt(2)`
//! with both parts arbitrary-precision rationals.
//!
//! The representation is unique because sqrt(2) is irrational, so equality,
//! zero tests and sign decisions are all exact integer computations. Nothing
//! in this module touches floating point except the explicit [`ExactScalar::to_f64`]
//! embedding.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ExactError;

/// Arbitrary-precision rational. `BigRational` keeps gcd(numer, denom) = 1,
/// denom > 0 and zero as 0/1, which is exactly the canonical form we need.
pub type Rational = BigRational;

/// Element of Q(sqrt 2): `rat + irr * sqrt(2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactScalar {
    pub rat: Rational,
    pub irr: Rational,
}

impl ExactScalar {
    pub fn new(rat: Rational, irr: Rational) -> Self {
        ExactScalar { rat, irr }
    }

    pub fn from_int(n: i64) -> Self {
        ExactScalar {
            rat: Rational::from_integer(BigInt::from(n)),
            irr: Rational::zero(),
        }
    }

    pub fn from_rational(rat: Rational) -> Self {
        ExactScalar {
            rat,
            irr: Rational::zero(),
        }
    }

    /// The element sqrt(2) itself.
    pub fn sqrt2() -> Self {
        ExactScalar {
            rat: Rational::zero(),
            irr: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        ExactScalar {
            rat: Rational::zero(),
            irr: Rational::zero(),
        }
    }

    pub fn one() -> Self {
        ExactScalar {
            rat: Rational::one(),
            irr: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.irr.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.irr.is_zero()
    }

    /// Exact sign of `rat + irr * sqrt(2)`: -1, 0 or +1.
    ///
    /// Mixed-sign cases reduce to comparing `rat^2` against `2 * irr^2`,
    /// so no floating point is involved.
    pub fn signum(&self) -> i32 {
        let sr = rational_signum(&self.rat);
        let si = rational_signum(&self.irr);
        match (sr, si) {
            (0, s) | (s, 0) => s,
            (1, 1) => 1,
            (-1, -1) => -1,
            (1, -1) => {
                // rat > 0 > irr*sqrt2: positive iff rat^2 > 2*irr^2
                cmp_sq_vs_2sq(&self.rat, &self.irr)
            }
            (-1, 1) => -cmp_sq_vs_2sq(&self.rat, &self.irr),
            _ => unreachable!("signum returns -1, 0 or 1"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    ///
    /// Uses the conjugate: 1/(a + b sqrt2) = (a - b sqrt2) / (a^2 - 2 b^2).
    /// The denominator vanishes only for the zero element.
    pub fn inverse(&self) -> Option<ExactScalar> {
        if self.is_zero() {
            return None;
        }
        let denom = &self.rat * &self.rat - &self.irr * &self.irr * Rational::from_integer(2.into());
        Some(ExactScalar {
            rat: &self.rat / &denom,
            irr: -&self.irr / &denom,
        })
    }

    pub fn checked_div(&self, rhs: &ExactScalar) -> Result<ExactScalar, ExactError> {
        let inv = rhs.inverse().ok_or(ExactError::DivisionByZero)?;
        Ok(self * &inv)
    }

    /// Float embedding. Exact decisions never rely on this; it exists for
    /// distance output and reporting only.
    pub fn to_f64(&self) -> f64 {
        rational_to_f64(&self.rat) + rational_to_f64(&self.irr) * std::f64::consts::SQRT_2
    }
}

fn rational_signum(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.numer().is_negative() {
        -1
    } else {
        1
    }
}

/// Sign of rat^2 - 2*irr^2 (both nonzero by the caller).
fn cmp_sq_vs_2sq(rat: &Rational, irr: &Rational) -> i32 {
    let lhs = rat * rat;
    let rhs = irr * irr * Rational::from_integer(2.into());
    match lhs.cmp(&rhs) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn rational_to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

impl PartialOrd for ExactScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Numeric order of the field, decided exactly via the sign of the difference.
impl Ord for ExactScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self - other;
        match diff.signum() {
            -1 => Ordering::Less,
            0 => Ordering::Equal,
            _ => Ordering::Greater,
        }
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&ExactScalar> for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                (&self).$method(rhs)
            }
        }
    };
}

impl Add<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn add(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            rat: &self.rat + &rhs.rat,
            irr: &self.irr + &rhs.irr,
        }
    }
}

impl Sub<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn sub(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar {
            rat: &self.rat - &rhs.rat,
            irr: &self.irr - &rhs.irr,
        }
    }
}

/// (a + b s)(c + d s) = (ac + 2bd) + (ad + bc) s with s = sqrt(2).
impl Mul<&ExactScalar> for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        let two = Rational::from_integer(2.into());
        ExactScalar {
            rat: &self.rat * &rhs.rat + &self.irr * &rhs.irr * two,
            irr: &self.rat * &rhs.irr + &self.irr * &rhs.rat,
        }
    }
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar {
            rat: -&self.rat,
            irr: -&self.irr,
        }
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl From<i64> for ExactScalar {
    fn from(n: i64) -> Self {
        ExactScalar::from_int(n)
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// Textual format: "p/q" for rationals, "p/q+r/s*sqrt2" for mixed elements,
/// "r/s*sqrt2" for pure irrational parts. Denominators of 1 are dropped and a
/// unit coefficient on sqrt2 is written bare ("sqrt2", "-sqrt2").
impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.irr.is_zero() {
            return fmt_rational(&self.rat, f);
        }
        if !self.rat.is_zero() {
            fmt_rational(&self.rat, f)?;
            if self.irr.is_positive() {
                write!(f, "+")?;
            }
        }
        if self.irr.is_one() {
            return write!(f, "sqrt2");
        }
        if (-&self.irr).is_one() {
            return write!(f, "-sqrt2");
        }
        fmt_rational(&self.irr, f)?;
        write!(f, "*sqrt2")
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Rat,
    Sqrt2,
}

impl FromStr for ExactScalar {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(parse_err(s, "empty scalar"));
        }
        // Split into at most two terms at '+'/'-' signs that are not leading.
        let bytes = compact.as_bytes();
        let mut split_at = None;
        for (i, b) in bytes.iter().enumerate().skip(1) {
            if *b == b'+' || *b == b'-' {
                if split_at.is_some() {
                    return Err(parse_err(s, "more than two terms"));
                }
                split_at = Some(i);
            }
        }
        let (first, second) = match split_at {
            Some(i) => (&compact[..i], Some(&compact[i..])),
            None => (&compact[..], None),
        };

        let mut rat: Option<Rational> = None;
        let mut irr: Option<Rational> = None;
        for term in std::iter::once(first).chain(second) {
            let (value, kind) = parse_term(term).map_err(|reason| parse_err(s, &reason))?;
            let slot = match kind {
                Term::Rat => &mut rat,
                Term::Sqrt2 => &mut irr,
            };
            if slot.is_some() {
                return Err(parse_err(s, "duplicate term of the same kind"));
            }
            *slot = Some(value);
        }
        Ok(ExactScalar {
            rat: rat.unwrap_or_else(Rational::zero),
            irr: irr.unwrap_or_else(Rational::zero),
        })
    }
}

fn parse_err(input: &str, reason: &str) -> ExactError {
    ExactError::ParseScalar {
        input: input.to_string(),
        reason: reason.to_string(),
    }
}

fn parse_term(term: &str) -> Result<(Rational, Term), String> {
    let (negative, body) = match term.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, term.strip_prefix('+').unwrap_or(term)),
    };
    if body.is_empty() {
        return Err("empty term".to_string());
    }
    let (coef_str, is_sqrt2) = if body == "sqrt2" {
        ("1", true)
    } else if let Some(coef) = body.strip_suffix("*sqrt2") {
        (coef, true)
    } else {
        (body, false)
    };
    let coef = parse_fraction(coef_str)?;
    let value = if negative { -coef } else { coef };
    let kind = if is_sqrt2 { Term::Sqrt2 } else { Term::Rat };
    Ok((value, kind))
}

fn parse_fraction(s: &str) -> Result<Rational, String> {
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num_str).map_err(|_| format!("bad integer `{num_str}`"))?;
    let den = BigInt::from_str(den_str).map_err(|_| format!("bad integer `{den_str}`"))?;
    if den.is_zero() {
        return Err("zero denominator".to_string());
    }
    Ok(Rational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> ExactScalar {
        text.parse().unwrap()
    }

    #[test]
    fn conjugate_product() {
        let a = ExactScalar::new(Rational::one(), Rational::one());
        let b = ExactScalar::new(Rational::one(), -Rational::one());
        assert_eq!(&a * &b, ExactScalar::from_int(-1));
    }

    #[test]
    fn sqrt2_squared_is_two() {
        let r = ExactScalar::sqrt2();
        assert_eq!(&r * &r, ExactScalar::from_int(2));
    }

    #[test]
    fn division_by_self_is_one() {
        let a = s("3+2*sqrt2");
        assert_eq!(a.checked_div(&a).unwrap(), ExactScalar::one());
    }

    #[test]
    fn division_by_zero_is_error() {
        let a = ExactScalar::one();
        assert!(matches!(
            a.checked_div(&ExactScalar::zero()),
            Err(ExactError::DivisionByZero)
        ));
    }

    #[test]
    fn exact_signs_in_mixed_cases() {
        assert_eq!(s("3-2*sqrt2").signum(), 1); // 9 > 8
        assert_eq!(s("-3+2*sqrt2").signum(), -1);
        assert_eq!(s("1-sqrt2").signum(), -1); // 1 < 2
        assert_eq!(s("-1+sqrt2").signum(), 1);
        assert_eq!(s("0").signum(), 0);
        assert_eq!(s("-7/3").signum(), -1);
        assert_eq!(s("sqrt2").signum(), 1);
    }

    #[test]
    fn parse_accepts_documented_forms() {
        assert_eq!(s("5"), ExactScalar::from_int(5));
        assert_eq!(s("-5"), ExactScalar::from_int(-5));
        assert_eq!(s("1/2+0*sqrt2"), s("1/2"));
        assert_eq!(s("1/2"), ExactScalar::from_rational(Rational::new(1.into(), 2.into())));
        assert_eq!(s("sqrt2"), ExactScalar::sqrt2());
        assert_eq!(s("-sqrt2"), -ExactScalar::sqrt2());
        assert_eq!(s("2*sqrt2"), &ExactScalar::from_int(2) * &ExactScalar::sqrt2());
        assert_eq!(
            s("1-1/2*sqrt2"),
            ExactScalar::new(Rational::one(), Rational::new((-1).into(), 2.into()))
        );
        assert_eq!(s(" 1 + sqrt2 "), ExactScalar::new(Rational::one(), Rational::one()));
    }

    #[test]
    fn parse_rejects_malformed_input() {
        for bad in ["", "1+2", "sqrt2+sqrt2", "1+2+3*sqrt2", "1/0", "x", "1*sqrt3"] {
            assert!(bad.parse::<ExactScalar>().is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn display_roundtrips() {
        for text in ["0", "1", "-1", "1/2", "-3/7", "sqrt2", "-sqrt2", "3/2*sqrt2", "1+sqrt2", "1-1/2*sqrt2", "-2/3-5*sqrt2"] {
            let v = s(text);
            assert_eq!(v.to_string(), text);
            assert_eq!(s(&v.to_string()), v);
        }
    }

    #[test]
    fn float_embedding_matches() {
        let v = s("3-2*sqrt2");
        assert!((v.to_f64() - (3.0 - 2.0 * std::f64::consts::SQRT_2)).abs() < 1e-15);
    }

    #[test]
    fn numeric_order() {
        assert!(s("1") < s("sqrt2"));
        assert!(s("3/2") > s("sqrt2"));
        assert!(s("-sqrt2") < s("-1"));
        assert_eq!(s("2+sqrt2").cmp(&s("2+sqrt2")), Ordering::Equal);
    }
}
