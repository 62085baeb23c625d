//! Dense rational direction sets and exact perturbation machinery: primitive
//! Pythagorean quadruples (rational points on the sphere), quaternion-derived
//! exact rotations, and totally incompatible perturbations of uncolorable
//! catalogs.

mod perturb;
mod rotation;

pub use perturb::{
    apply_plan, is_totally_incompatible, perturb_frames, PerturbationPlan, PerturbationPlanFile,
};
pub use rotation::RationalRotation;

use thiserror::Error;

use crate::geometry::{DirectionSet, GeometryError, ProjectivePoint};

#[derive(Debug, Error)]
pub enum RationalGenError {
    #[error("the zero quaternion defines no rotation")]
    ZeroQuaternion,
    #[error("direction set has no frames to perturb")]
    NoFrames,
    #[error("epsilon {epsilon} is not a positive finite number")]
    BadEpsilon { epsilon: f64 },
    #[error(
        "epsilon {epsilon} is too coarse: it must stay below {limit} \
         (half the minimum distance between distinct directions)"
    )]
    EpsilonTooLarge { epsilon: f64, limit: f64 },
    #[error(
        "no totally incompatible perturbation found in {attempts} attempts; \
         try a smaller epsilon or a different seed"
    )]
    RetriesExhausted { attempts: u32 },
    #[error("plan lists {quaternions} quaternions but the set has {frames} frames")]
    PlanMismatch { frames: usize, quaternions: usize },
    #[error("plan quaternion {quaternion:?} rotates by more than epsilon {epsilon}")]
    PlanTooCoarse { quaternion: [i64; 4], epsilon: f64 },
    #[error("plan rotations collide: result points coincide or frames touch")]
    PlanCollision,
    #[error(
        "no quadruple within distance {epsilon} of {target:?} for n <= {max_n}; \
         best found: {best}"
    )]
    ApproximationGuard {
        target: [f64; 3],
        epsilon: f64,
        max_n: i64,
        best: String,
    },
    #[error("max_n must be at least 1, got {max_n}")]
    BadMaxN { max_n: i64 },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

/// A primitive integer solution of x^2 + y^2 + z^2 = n^2, i.e. a rational
/// point (x,y,z)/n on the unit sphere. Canonical sign: the first nonzero of
/// (x, y, z) is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PythagoreanQuadruple {
    pub n: i64,
    pub x: i64,
    pub y: i64,
    pub z: i64,
}

impl PythagoreanQuadruple {
    pub fn direction(&self) -> ProjectivePoint {
        ProjectivePoint::from_ints(self.x, self.y, self.z)
    }
}

fn is_square(v: i64) -> Option<i64> {
    if v < 0 {
        return None;
    }
    let r = (v as f64).sqrt().round() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c * c == v {
            return Some(c);
        }
    }
    None
}

fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    use num_integer::Integer;
    a.abs().gcd(&b.abs()).gcd(&c.abs())
}

/// All primitive quadruples with n <= max_n, one per projective direction,
/// sorted by (n, x, y, z).
pub fn enumerate_quadruples(max_n: i64) -> Result<Vec<PythagoreanQuadruple>, RationalGenError> {
    if max_n < 1 {
        return Err(RationalGenError::BadMaxN { max_n });
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for x in -n..=n {
            for y in -n..=n {
                let rem = n * n - x * x - y * y;
                let Some(z_abs) = is_square(rem) else {
                    continue;
                };
                let zs: &[i64] = if z_abs == 0 { &[0] } else { &[z_abs, -z_abs] };
                for &z in zs {
                    if gcd3(x, y, z) != 1 {
                        continue;
                    }
                    // canonical sign: first nonzero coordinate positive;
                    // this also dedups antipodes.
                    let lead = [x, y, z].into_iter().find(|&c| c != 0).expect("n >= 1");
                    if lead < 0 {
                        continue;
                    }
                    out.push(PythagoreanQuadruple { n, x, y, z });
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The direction set of all rational sphere points with denominator <= max_n
/// (the height-limited shadow of the dense rational frame family).
pub fn rational_frames(max_n: i64) -> Result<DirectionSet, RationalGenError> {
    let quads = enumerate_quadruples(max_n)?;
    let points = quads.iter().map(|q| q.direction()).collect();
    Ok(DirectionSet::build(points)?)
}

fn distance_to_target(q: &PythagoreanQuadruple, target: [f64; 3]) -> f64 {
    let p = [q.x as f64, q.y as f64, q.z as f64];
    let dot = p[0] * target[0] + p[1] * target[1] + p[2] * target[2];
    let pp = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2])
        * (target[0] * target[0] + target[1] * target[1] + target[2] * target[2]);
    let sin2 = (1.0 - dot * dot / pp).max(0.0);
    sin2.sqrt()
}

/// Searches quadruples of increasing n for a rational direction within
/// projector distance `epsilon` of the target line. The guard bounds the
/// denominator; on failure the error reports the best direction seen.
pub fn approximate_direction(
    target: [f64; 3],
    epsilon: f64,
    max_n: i64,
) -> Result<PythagoreanQuadruple, RationalGenError> {
    if max_n < 1 {
        return Err(RationalGenError::BadMaxN { max_n });
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(RationalGenError::BadEpsilon { epsilon });
    }
    let mut best: Option<(f64, PythagoreanQuadruple)> = None;
    for q in enumerate_quadruples(max_n)? {
        let d = distance_to_target(&q, target);
        if d < epsilon {
            return Ok(q);
        }
        if best.map_or(true, |(bd, _)| d < bd) {
            best = Some((d, q));
        }
    }
    let best = match best {
        Some((d, q)) => format!("({}, {}, {})/{} at distance {}", q.x, q.y, q.z, q.n, d),
        None => "none".to_string(),
    };
    Err(RationalGenError::ApproximationGuard {
        target,
        epsilon,
        max_n,
        best,
    })
}
