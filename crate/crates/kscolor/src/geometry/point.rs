//! Projective points: lines through the origin of R^3 with a canonical
//! exact representative, so that a direction and its antipode (and every
//! nonzero rescaling) compare equal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::exact::{ExactScalar, ExactVec3, Rational};

use super::GeometryError;

/// A line through the origin, stored as a canonical representative vector.
///
/// Canonical form: all six integer coefficients (rational and sqrt2 parts of
/// the three coordinates) share no common factor, the vector is not divisible
/// by sqrt2 in the ring Z[sqrt2], and the first nonzero coordinate is
/// positive. Two vectors span the same line iff their canonical forms are
/// identical, which makes derived equality, hashing and ordering projective.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    rep: ExactVec3,
}

impl ProjectivePoint {
    /// Canonicalize a nonzero vector to its projective representative.
    pub fn new(v: &ExactVec3) -> Result<ProjectivePoint, GeometryError> {
        if v.is_zero() {
            return Err(GeometryError::ZeroVector);
        }

        // Scale so the first nonzero coordinate is 1. This is the step that
        // makes the form unique: Z[sqrt2] has infinitely many units
        // (powers of 1+sqrt2), so reducing integer content alone would not
        // identify e.g. (0,0,1) with (0,0,1+sqrt2).
        let lead = v
            .coords()
            .into_iter()
            .find(|c| !c.is_zero())
            .expect("nonzero vector has a nonzero coordinate")
            .clone();
        let v = v.scale(&lead.inverse().expect("leading coordinate is nonzero"));

        // Clear denominators: multiply by the lcm of all six denominators.
        let mut parts: Vec<(BigInt, BigInt)> = Vec::with_capacity(3);
        let mut lcm = BigInt::one();
        for c in v.coords() {
            lcm = lcm.lcm(c.rat.denom());
            lcm = lcm.lcm(c.irr.denom());
        }
        for c in v.coords() {
            let rat = c.rat.numer() * (&lcm / c.rat.denom());
            let irr = c.irr.numer() * (&lcm / c.irr.denom());
            parts.push((rat, irr));
        }

        loop {
            // Reduce the integer content.
            let mut gcd = BigInt::zero();
            for (a, b) in &parts {
                gcd = gcd.gcd(a);
                gcd = gcd.gcd(b);
            }
            if gcd > BigInt::one() {
                for (a, b) in parts.iter_mut() {
                    *a = &*a / &gcd;
                    *b = &*b / &gcd;
                }
            }
            // Divide by sqrt2 while possible: (a + b sqrt2)/sqrt2 = b + (a/2) sqrt2.
            let two = BigInt::from(2);
            if parts.iter().all(|(a, _)| (a % &two).is_zero()) {
                for (a, b) in parts.iter_mut() {
                    let half_a = &*a / &two;
                    *a = std::mem::replace(b, half_a);
                }
            } else {
                break;
            }
        }

        let mut rep = ExactVec3::new(
            scalar_from_ints(&parts[0]),
            scalar_from_ints(&parts[1]),
            scalar_from_ints(&parts[2]),
        );
        let lead_sign = rep
            .coords()
            .iter()
            .map(|c| c.signum())
            .find(|s| *s != 0)
            .expect("nonzero vector has a nonzero coordinate");
        if lead_sign < 0 {
            rep = rep.neg();
        }
        Ok(ProjectivePoint { rep })
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> ProjectivePoint {
        ProjectivePoint::new(&ExactVec3::from_ints(x, y, z)).expect("nonzero integer vector")
    }

    pub fn rep(&self) -> &ExactVec3 {
        &self.rep
    }

    pub fn dot(&self, other: &ProjectivePoint) -> ExactScalar {
        self.rep.dot(&other.rep)
    }

    pub fn is_orthogonal_to(&self, other: &ProjectivePoint) -> bool {
        self.dot(other).is_zero()
    }

    /// Whether every coordinate lies in Q (no sqrt2 component).
    pub fn is_rational(&self) -> bool {
        self.rep.coords().iter().all(|c| c.is_rational())
    }

    /// Exact squared sine of the angle between the two lines.
    ///
    /// sin^2 = 1 - <p,q>^2 / (<p,p> <q,q>), computed entirely in Q(sqrt 2).
    /// It is zero exactly when the lines coincide.
    pub fn sin_squared(&self, other: &ProjectivePoint) -> ExactScalar {
        let n = self.dot(other);
        let n2 = &n * &n;
        let d = &self.rep.norm_squared() * &other.rep.norm_squared();
        (&d - &n2).checked_div(&d).expect("norms are nonzero")
    }
}

fn scalar_from_ints((rat, irr): &(BigInt, BigInt)) -> ExactScalar {
    ExactScalar::new(
        Rational::from_integer(rat.clone()),
        BigRational::from_integer(irr.clone()),
    )
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: ExactVec3) -> ProjectivePoint {
        ProjectivePoint::new(&v).unwrap()
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(
            ProjectivePoint::from_ints(-6, 6, -3),
            ProjectivePoint::from_ints(2, -2, 1)
        );
        assert_eq!(
            ProjectivePoint::from_ints(0, 0, -5),
            ProjectivePoint::from_ints(0, 0, 1)
        );
    }

    #[test]
    fn sqrt2_multiples_are_identified() {
        // (0, sqrt2, 2) ~ (0, 1, sqrt2)
        let v = ExactVec3::new(0.into(), ExactScalar::sqrt2(), 2.into());
        let w = ExactVec3::new(0.into(), 1.into(), ExactScalar::sqrt2());
        assert_eq!(pt(v.clone()), pt(w.clone()));
        assert_eq!(pt(v).rep(), pt(w.clone()).rep());
        // and rescaling back by sqrt2 lands on the same point
        let back = w.scale(&ExactScalar::sqrt2());
        assert_eq!(pt(back), pt(w));
    }

    #[test]
    fn antipodes_and_rational_scalings_are_identified() {
        let p = ProjectivePoint::from_ints(2, -3, 5);
        assert_eq!(p, ProjectivePoint::from_ints(-2, 3, -5));
        assert_eq!(p, ProjectivePoint::from_ints(14, -21, 35));
    }

    #[test]
    fn zero_vector_is_rejected() {
        let z = ExactVec3::from_ints(0, 0, 0);
        assert!(matches!(ProjectivePoint::new(&z), Err(GeometryError::ZeroVector)));
    }

    #[test]
    fn leading_coordinate_is_positive() {
        let p = ProjectivePoint::from_ints(0, -1, 4);
        assert_eq!(p.rep(), &ExactVec3::from_ints(0, 1, -4));
    }

    #[test]
    fn sin_squared_is_exact() {
        let p = ProjectivePoint::from_ints(1, 0, 0);
        let q = ProjectivePoint::from_ints(0, 1, 0);
        assert_eq!(p.sin_squared(&q), ExactScalar::one());
        assert!(p.sin_squared(&p).is_zero());
        // (1,0,0) vs (1,1,0): sin^2 = 1/2
        let r = ProjectivePoint::from_ints(1, 1, 0);
        assert_eq!(
            p.sin_squared(&r),
            ExactScalar::from_rational(Rational::new(1.into(), 2.into()))
        );
    }
}
