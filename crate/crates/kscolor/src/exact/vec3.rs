//! Exact 3-vectors over Q(sqrt 2).
//!
//! Directions are never normalised to unit length (the norm usually leaves the
//! field); all downstream geometry uses scale-invariant formulas instead.

use std::fmt;

use super::{ExactError, ExactScalar};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactVec3 {
    pub x: ExactScalar,
    pub y: ExactScalar,
    pub z: ExactScalar,
}

impl ExactVec3 {
    pub fn new(x: ExactScalar, y: ExactScalar, z: ExactScalar) -> Self {
        ExactVec3 { x, y, z }
    }

    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        ExactVec3::new(x.into(), y.into(), z.into())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn coords(&self) -> [&ExactScalar; 3] {
        [&self.x, &self.y, &self.z]
    }

    /// Exact inner product.
    pub fn dot(&self, other: &ExactVec3) -> ExactScalar {
        &(&self.x * &other.x) + &(&(&self.y * &other.y) + &(&self.z * &other.z))
    }

    pub fn norm_squared(&self) -> ExactScalar {
        self.dot(self)
    }

    pub fn scale(&self, s: &ExactScalar) -> ExactVec3 {
        ExactVec3 {
            x: &self.x * s,
            y: &self.y * s,
            z: &self.z * s,
        }
    }

    pub fn neg(&self) -> ExactVec3 {
        ExactVec3 {
            x: -&self.x,
            y: -&self.y,
            z: -&self.z,
        }
    }

    /// Exact cross product. The result is orthogonal to both inputs; it is the
    /// zero vector exactly when the inputs are parallel, which is rejected.
    pub fn cross(&self, other: &ExactVec3) -> Result<ExactVec3, ExactError> {
        let out = ExactVec3 {
            x: &(&self.y * &other.z) - &(&self.z * &other.y),
            y: &(&self.z * &other.x) - &(&self.x * &other.z),
            z: &(&self.x * &other.y) - &(&self.y * &other.x),
        };
        if out.is_zero() {
            Err(ExactError::ParallelVectors)
        } else {
            Ok(out)
        }
    }
}

impl fmt::Display for ExactVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl fmt::Debug for ExactVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
