//! MKC-style perturbations: replace each frame of an uncolorable set with an
//! independently rotated copy so close to the original that no experiment at
//! resolution epsilon can tell them apart, yet with every contextuality link
//! severed — the rotated frames share no points and carry no orthogonality
//! between one another, so the result is trivially colorable.

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::exact::{ExactScalar, Rational};
use crate::geometry::{DirectionSet, ProjectivePoint};

use super::rotation::RationalRotation;
use super::RationalGenError;

const MAX_ATTEMPTS: u32 = 64;

/// A reproducible record of one perturbation: the source set, the per-frame
/// rotations drawn, and the resulting totally incompatible set.
#[derive(Debug, Clone)]
pub struct PerturbationPlan {
    pub source: DirectionSet,
    pub rotations: Vec<RationalRotation>,
    pub epsilon: f64,
    pub seed: u64,
    pub result: DirectionSet,
    /// result point index -> (source frame, slot) it was rotated from.
    pub provenance: Vec<(usize, usize)>,
}

/// Serde model for replaying a plan bit-exactly:
/// the seed is provenance, the quaternions are the actual randomness.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerturbationPlanFile {
    pub source: String,
    pub seed: u64,
    pub epsilon: f64,
    pub quaternions: Vec<[i64; 4]>,
}

impl PerturbationPlan {
    pub fn to_file(&self, source_name: &str) -> PerturbationPlanFile {
        PerturbationPlanFile {
            source: source_name.to_string(),
            seed: self.seed,
            epsilon: self.epsilon,
            quaternions: self.rotations.iter().map(|r| r.quaternion()).collect(),
        }
    }
}

/// True iff every point lies in at most one frame.
pub fn is_totally_incompatible(ds: &DirectionSet) -> bool {
    ds.frames_of_points().iter().all(|f| f.len() <= 1)
}

/// Exact squared minimum projector distance over all distinct point pairs.
fn min_separation_squared(ds: &DirectionSet) -> Option<ExactScalar> {
    let pts = ds.points();
    let mut best: Option<ExactScalar> = None;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            let s2 = pts[i].sin_squared(&pts[j]);
            if best.as_ref().map_or(true, |b| &s2 < b) {
                best = Some(s2);
            }
        }
    }
    best
}

/// Draws a rotation with rotation-angle sine strictly below `limit`:
/// a quaternion (N, r1, r2, r3) with small random axis part and N large
/// enough, verified on the exact sin^2.
fn small_rotation(rng: &mut ChaCha12Rng, limit_squared: &Rational) -> RationalRotation {
    let axis: [i64; 3] = loop {
        let a = [
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
            rng.gen_range(-3..=3i64),
        ];
        if a != [0, 0, 0] {
            break a;
        }
    };
    let v2 = (axis[0] * axis[0] + axis[1] * axis[1] + axis[2] * axis[2]) as f64;
    let limit = limit_squared.to_f64().unwrap_or(0.0).sqrt();
    let mut n = ((2.0 * v2.sqrt() / limit).ceil() as i64).max(2);
    loop {
        let rot = RationalRotation::new([n, axis[0], axis[1], axis[2]])
            .expect("n >= 2 makes the quaternion nonzero");
        if &rot.sin_squared_angle() < limit_squared {
            return rot;
        }
        n = n.checked_mul(2).expect("angle shrinks before overflow");
    }
}

/// Independently rotates each frame of `ds` by a random rational rotation of
/// angle sine < epsilon, re-rolling until the rotated frames are pairwise
/// disjoint with no orthogonality across frames (hence totally
/// incompatible). Requires epsilon below half the minimum projector
/// distance between distinct points of `ds`, so each result point has an
/// unambiguous nearest original.
pub fn perturb_frames(
    ds: &DirectionSet,
    epsilon: f64,
    seed: u64,
) -> Result<PerturbationPlan, RationalGenError> {
    if ds.frames().is_empty() {
        return Err(RationalGenError::NoFrames);
    }
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(RationalGenError::BadEpsilon { epsilon });
    }
    let eps2 = Rational::from_float(epsilon * epsilon).expect("finite epsilon");
    if ds.len() > 1 {
        let min_sep2 = min_separation_squared(ds).expect("more than one point");
        // required: epsilon < min_separation / 2, i.e. 4 eps^2 < min_sep^2
        let four_eps2 = ExactScalar::from_rational(&Rational::from_integer(4.into()) * &eps2);
        if four_eps2 >= min_sep2 {
            let limit = min_sep2.to_f64().sqrt() / 2.0;
            return Err(RationalGenError::EpsilonTooLarge { epsilon, limit });
        }
    }

    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut attempts = 0;
    'attempt: while attempts < MAX_ATTEMPTS {
        attempts += 1;
        let rotations: Vec<RationalRotation> = ds
            .frames()
            .iter()
            .map(|_| small_rotation(&mut rng, &eps2))
            .collect();
        match assemble(ds, &rotations) {
            Some((result, provenance)) => {
                return Ok(PerturbationPlan {
                    source: ds.clone(),
                    rotations,
                    epsilon,
                    seed,
                    result,
                    provenance,
                });
            }
            None => continue 'attempt,
        }
    }
    Err(RationalGenError::RetriesExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// Replays a stored plan against its source set, revalidating everything.
pub fn apply_plan(
    ds: &DirectionSet,
    file: &PerturbationPlanFile,
) -> Result<PerturbationPlan, RationalGenError> {
    if file.quaternions.len() != ds.frames().len() {
        return Err(RationalGenError::PlanMismatch {
            frames: ds.frames().len(),
            quaternions: file.quaternions.len(),
        });
    }
    let rotations = file
        .quaternions
        .iter()
        .map(|&q| RationalRotation::new(q))
        .collect::<Result<Vec<_>, _>>()?;
    let eps2 = Rational::from_float(file.epsilon * file.epsilon)
        .ok_or(RationalGenError::BadEpsilon {
            epsilon: file.epsilon,
        })?;
    for rot in &rotations {
        if rot.sin_squared_angle() >= eps2 {
            return Err(RationalGenError::PlanTooCoarse {
                quaternion: rot.quaternion(),
                epsilon: file.epsilon,
            });
        }
    }
    let (result, provenance) = assemble(ds, &rotations).ok_or(RationalGenError::PlanCollision)?;
    Ok(PerturbationPlan {
        source: ds.clone(),
        rotations,
        epsilon: file.epsilon,
        seed: file.seed,
        result,
        provenance,
    })
}

/// Applies per-frame rotations and validates the construction: all rotated
/// points distinct, and the only orthogonal pairs in the result are the ones
/// inside each rotated frame (so frames stay pairwise totally incompatible).
fn assemble(
    ds: &DirectionSet,
    rotations: &[RationalRotation],
) -> Option<(DirectionSet, Vec<(usize, usize)>)> {
    let mut points: Vec<ProjectivePoint> = Vec::with_capacity(ds.frames().len() * 3);
    let mut provenance = Vec::with_capacity(ds.frames().len() * 3);
    for (f, &[i, j, k]) in ds.frames().iter().enumerate() {
        for (slot, p) in [i, j, k].into_iter().enumerate() {
            let rotated = rotations[f].apply(ds.point(p).rep());
            points.push(ProjectivePoint::new(&rotated).expect("rotations preserve nonzero"));
            provenance.push((f, slot));
        }
    }
    let result = DirectionSet::build(points).ok()?;
    if result.ortho_edges().len() != 3 * ds.frames().len() {
        return None;
    }
    if result.frames().len() != ds.frames().len() {
        return None;
    }
    debug_assert!(is_totally_incompatible(&result));
    Some((result, provenance))
}
