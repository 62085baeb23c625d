//! Exact rotations from integer quaternions: the quaternion-to-matrix map
//! divided by the quaternion's squared norm gives a matrix of rationals
//! that is exactly orthogonal with determinant 1, so applying it preserves
//! every orthogonality relation of a direction set bit-for-bit.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{ExactScalar, ExactVec3, Rational};

use super::RationalGenError;

/// A rotation of R^3 with exactly rational matrix entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalRotation {
    quaternion: [i64; 4],
    matrix: [[Rational; 3]; 3],
}

impl RationalRotation {
    /// Builds the rotation for an integer quaternion (w, x, y, z) != 0.
    /// Exact orthogonality and unit determinant are checked at construction.
    pub fn new(quaternion: [i64; 4]) -> Result<RationalRotation, RationalGenError> {
        if quaternion == [0, 0, 0, 0] {
            return Err(RationalGenError::ZeroQuaternion);
        }
        let [w, x, y, z] = quaternion.map(BigInt::from);
        let norm2 = &w * &w + &x * &x + &y * &y + &z * &z;
        let two = BigInt::from(2);
        let raw = [
            [
                &w * &w + &x * &x - &y * &y - &z * &z,
                &two * (&x * &y - &w * &z),
                &two * (&x * &z + &w * &y),
            ],
            [
                &two * (&x * &y + &w * &z),
                &w * &w - &x * &x + &y * &y - &z * &z,
                &two * (&y * &z - &w * &x),
            ],
            [
                &two * (&x * &z - &w * &y),
                &two * (&y * &z + &w * &x),
                &w * &w - &x * &x - &y * &y + &z * &z,
            ],
        ];
        let matrix = raw.map(|row| row.map(|e| Rational::new(e, norm2.clone())));
        let rot = RationalRotation { quaternion, matrix };
        debug_assert!(rot.is_orthogonal(), "quaternion map must give M^T M = I");
        Ok(rot)
    }

    pub fn quaternion(&self) -> [i64; 4] {
        self.quaternion
    }

    pub fn matrix(&self) -> &[[Rational; 3]; 3] {
        &self.matrix
    }

    /// M^T M = I, checked in exact arithmetic.
    pub fn is_orthogonal(&self) -> bool {
        for i in 0..3 {
            for j in 0..3 {
                let dot = (0..3).fold(Rational::zero(), |acc, k| {
                    acc + &self.matrix[k][i] * &self.matrix[k][j]
                });
                let expect = if i == j {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if dot != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Exact determinant; always 1 for quaternion rotations.
    pub fn determinant(&self) -> Rational {
        let m = &self.matrix;
        let minor_a = &m[1][1] * &m[2][2] - &m[1][2] * &m[2][1];
        let minor_b = &m[1][0] * &m[2][2] - &m[1][2] * &m[2][0];
        let minor_c = &m[1][0] * &m[2][1] - &m[1][1] * &m[2][0];
        &m[0][0] * &minor_a - &m[0][1] * &minor_b + &m[0][2] * &minor_c
    }

    /// cos of the rotation angle: (w^2 - v.v) / (w^2 + v.v) for v = (x,y,z).
    pub fn cos_angle(&self) -> Rational {
        let [w, x, y, z] = self.quaternion.map(BigInt::from);
        let w2 = &w * &w;
        let v2 = &x * &x + &y * &y + &z * &z;
        Rational::new(&w2 - &v2, &w2 + &v2)
    }

    /// Exact sin^2 of the rotation angle.
    pub fn sin_squared_angle(&self) -> Rational {
        let c = self.cos_angle();
        Rational::one() - &c * &c
    }

    pub fn apply(&self, v: &ExactVec3) -> ExactVec3 {
        let [vx, vy, vz] = v.coords();
        let row = |i: usize| -> ExactScalar {
            let m = &self.matrix[i];
            &(&(&ExactScalar::from_rational(m[0].clone()) * vx)
                + &(&ExactScalar::from_rational(m[1].clone()) * vy))
                + &(&ExactScalar::from_rational(m[2].clone()) * vz)
        };
        ExactVec3::new(row(0), row(1), row(2))
    }
}
