//! Regenerates the built-in catalog data files under catalogs/.
//!
//! peres33 is written down directly from its coordinate structure
//! (all projective directions with entries in {0, +-1, +-sqrt2} and squared
//! norm 1, 2, 3 or 4 of the listed shapes). The 31- and 33-direction
//! catalogs are recovered computationally: starting from a coordinate pool
//! known to contain them, directions are removed one at a time, keeping the
//! set uncolorable at every step, until the target size is reached.
//!
//! Run from the workspace root:
//!   cargo run --release -p kscolor --example gen_catalogs

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use kscolor::exact::{ExactScalar, ExactVec3};
use kscolor::geometry::{DirectionSet, ProjectivePoint};
use kscolor::solver::{solve, Verdict};

fn scalar(units: i64, sqrt2s: i64) -> ExactScalar {
    &ExactScalar::from(units) + &(&ExactScalar::from(sqrt2s) * &ExactScalar::sqrt2())
}

fn vec3(c: [(i64, i64); 3]) -> ExactVec3 {
    ExactVec3::new(
        scalar(c[0].0, c[0].1),
        scalar(c[1].0, c[1].1),
        scalar(c[2].0, c[2].1),
    )
}

/// The 33 Peres directions: coordinates in {0, +-1, +-sqrt2}, namely the
/// axes, the six (1,+-1,0)-type face diagonals, the twelve directions with
/// one zero and {1, sqrt2} in the other slots, and the twelve (1,1,sqrt2)
/// shapes with sqrt2 in each possible slot.
fn peres33_points() -> Vec<ProjectivePoint> {
    let mut vs: Vec<ExactVec3> = Vec::new();
    // axes
    vs.push(vec3([(1, 0), (0, 0), (0, 0)]));
    vs.push(vec3([(0, 0), (1, 0), (0, 0)]));
    vs.push(vec3([(0, 0), (0, 0), (1, 0)]));
    // (1, +-1, 0) type
    for s in [1, -1] {
        vs.push(vec3([(1, 0), (s, 0), (0, 0)]));
        vs.push(vec3([(1, 0), (0, 0), (s, 0)]));
        vs.push(vec3([(0, 0), (1, 0), (s, 0)]));
    }
    // one zero slot, {1, sqrt2} in the others, both arrangements
    for s in [1, -1] {
        vs.push(vec3([(0, 0), (1, 0), (0, s)]));
        vs.push(vec3([(0, 0), (0, 1), (s, 0)]));
        vs.push(vec3([(1, 0), (0, 0), (0, s)]));
        vs.push(vec3([(0, 1), (0, 0), (s, 0)]));
        vs.push(vec3([(1, 0), (0, s), (0, 0)]));
        vs.push(vec3([(0, 1), (s, 0), (0, 0)]));
    }
    // (1, +-1, +-sqrt2) with the sqrt2 slot varying
    for s in [1, -1] {
        for t in [1, -1] {
            vs.push(vec3([(1, 0), (s, 0), (0, t)]));
            vs.push(vec3([(1, 0), (0, t), (s, 0)]));
            vs.push(vec3([(0, 1), (s, 0), (t, 0)]));
        }
    }
    vs.iter()
        .map(|v| ProjectivePoint::new(v).expect("nonzero"))
        .collect()
}

/// All projectively distinct directions with integer coordinates in
/// {0, +-1, +-2}: 49 in total.
fn integer_pool() -> Vec<ProjectivePoint> {
    let mut seen = BTreeSet::new();
    for x in -2i64..=2 {
        for y in -2i64..=2 {
            for z in -2i64..=2 {
                if (x, y, z) == (0, 0, 0) {
                    continue;
                }
                seen.insert(ProjectivePoint::from_ints(x, y, z));
            }
        }
    }
    seen.into_iter().collect()
}

/// Union of the Peres 33 directions and the 49 integer directions: a
/// 73-direction uncolorable pool over Q(sqrt2) (they share the axes and the
/// six face diagonals).
fn sqrt2_pool() -> Vec<ProjectivePoint> {
    let mut seen: BTreeSet<ProjectivePoint> = peres33_points().into_iter().collect();
    seen.extend(integer_pool());
    seen.into_iter().collect()
}

fn is_uncolorable(points: &[ProjectivePoint]) -> bool {
    let ds = DirectionSet::build(points.to_vec()).expect("distinct points");
    solve(&ds).verdict == Verdict::Uncolorable
}

/// Removes directions in seeded random order, keeping the set uncolorable,
/// until exactly `target` remain. Returns None if this run gets stuck.
fn minimize(pool: &[ProjectivePoint], target: usize, seed: u64) -> Option<Vec<ProjectivePoint>> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut current = pool.to_vec();
    while current.len() > target {
        let mut order: Vec<usize> = (0..current.len()).collect();
        order.shuffle(&mut rng);
        let mut removed = false;
        for idx in order {
            let mut candidate = current.clone();
            candidate.remove(idx);
            if is_uncolorable(&candidate) {
                current = candidate;
                removed = true;
                break;
            }
        }
        if !removed {
            return None;
        }
    }
    Some(current)
}

fn minimize_with_restarts(
    label: &str,
    pool: &[ProjectivePoint],
    target: usize,
    seeds: std::ops::Range<u64>,
) -> Vec<ProjectivePoint> {
    for seed in seeds {
        if let Some(found) = minimize(pool, target, seed) {
            eprintln!("{label}: reached {target} directions with seed {seed}");
            return found;
        }
        eprintln!("{label}: seed {seed} got stuck, retrying");
    }
    panic!("{label}: no seed reached {target} directions");
}

fn write_catalog(name: &str, points: Vec<ProjectivePoint>, expect_len: usize) {
    assert_eq!(points.len(), expect_len, "{name}: wrong direction count");
    assert!(is_uncolorable(&points), "{name}: must be uncolorable");
    let ds = DirectionSet::build(points).expect("distinct points");
    let file = ds.to_file(name);
    let path = format!("catalogs/{name}.json");
    let json = serde_json::to_string_pretty(&file).expect("serializable");
    std::fs::write(&path, json + "\n").expect("writable");
    eprintln!(
        "{name}: {} directions, {} edges, {} frames -> {path}",
        ds.len(),
        ds.ortho_edges().len(),
        ds.frames().len()
    );
}

fn main() {
    let peres = peres33_points();
    assert_eq!(peres.len(), 33);
    write_catalog("peres33", peres.clone(), 33);

    let ints = integer_pool();
    assert_eq!(ints.len(), 49);
    assert!(is_uncolorable(&ints), "integer pool must be uncolorable");
    let ck31 = minimize_with_restarts("ck31", &ints, 31, 0..64);
    write_catalog("ck31", ck31, 31);

    let pool = sqrt2_pool();
    eprintln!("sqrt2 pool: {} directions", pool.len());
    assert!(is_uncolorable(&pool), "sqrt2 pool must be uncolorable");
    let peres_set: BTreeSet<_> = peres.into_iter().collect();
    for seed in 1000..1064 {
        let Some(found) = minimize(&pool, 33, seed) else {
            eprintln!("bub33: seed {seed} got stuck, retrying");
            continue;
        };
        let found_set: BTreeSet<_> = found.iter().cloned().collect();
        if found_set == peres_set {
            eprintln!("bub33: seed {seed} rediscovered peres33, retrying");
            continue;
        }
        if found.iter().all(|p| p.is_rational()) {
            eprintln!("bub33: seed {seed} kept no sqrt2 direction, retrying");
            continue;
        }
        eprintln!("bub33: reached 33 directions with seed {seed}");
        write_catalog("bub33", found, 33);
        return;
    }
    panic!("bub33: no seed produced a distinct 33-direction set");
}
