//! Two-agent deterministic hidden-variable models over direction sets.
//!
//! A model fixes the measurement menus of two parties (frames of a
//! `DirectionSet` each) and a finite list of hidden states, each state a
//! pair of frame functions — one per side, so each party's outcome depends
//! only on its own setting and the state (parameter independence by
//! construction). On top of that sit the two consistency notions this
//! module exists to separate: exact consistency (equal projectors must get
//! equal outcomes — checked by [`check_nature`]) and finite-precision
//! consistency (nearby projectors should get equal outcomes — violations
//! found by [`find_nature_fp_witness`]). [`run_fwt_pipeline`] demonstrates
//! on a Kochen–Specker catalog that a model can satisfy the former while
//! violating the latter at every hidden state: the MKC finite-precision
//! loophole, and its cost.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exact::{ExactScalar, Rational};
use crate::geometry::DirectionSet;
use crate::rational_gen::{perturb_frames, RationalGenError};
use crate::solver::{
    coloring_to_frame_function, solve, verify_coloring, Coloring, FrameFunction, SolverError,
    Verdict, OUTCOME_TRIPLES,
};

/// Hard cap on |frames_A| * |frames_B| * |states| in `run_experiment_grid`.
pub const GRID_GUARD: u128 = 250_000;

/// Re-rolls of the B side allowed before giving up on disjointness.
const MAX_SIDE_ATTEMPTS: u32 = 64;

#[derive(Debug, Error)]
pub enum BipartiteError {
    #[error("side A has {a} colorings but side B has {b}; hidden states come in pairs")]
    SideMismatch { a: usize, b: usize },
    #[error("experiment grid needs {size} runs, above the guard of {limit}")]
    GridGuard { size: u128, limit: u128 },
    #[error("hidden state index {z} is out of range; the model has {count} states")]
    BadState { z: usize, count: usize },
    #[error("merging needs identical settings on both sides")]
    SettingsDiffer,
    #[error(
        "hidden state {z} assigns {value_a} and {value_b} to the point shared by \
         A-frame {a_frame} and B-frame {b_frame}"
    )]
    MergeConflict {
        z: usize,
        a_frame: usize,
        b_frame: usize,
        value_a: u8,
        value_b: u8,
    },
    #[error("point {point} lies in {count} frames; pattern colorings need exactly one")]
    NotPartitioned { point: usize, count: usize },
    #[error("pattern {pattern:?} is not one of (1,1,0), (1,0,1), (0,1,1)")]
    BadPattern { pattern: [u8; 3] },
    #[error("perturbing side {side} failed")]
    Perturb {
        side: char,
        #[source]
        source: RationalGenError,
    },
    #[error("the sides still shared an exact direction after {attempts} re-rolls")]
    SharedPointsPersist { attempts: u32 },
    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// A deterministic two-agent hidden-variable model: each party holds a menu
/// of frames, and every hidden state fixes both parties' responses as frame
/// functions on their own menus.
#[derive(Debug, Clone)]
pub struct MkcModel {
    settings_a: DirectionSet,
    settings_b: DirectionSet,
    hidden_states: Vec<(FrameFunction, FrameFunction)>,
}

impl MkcModel {
    /// Validates every state against its side before accepting the model.
    pub fn new(
        settings_a: DirectionSet,
        settings_b: DirectionSet,
        hidden_states: Vec<(FrameFunction, FrameFunction)>,
    ) -> Result<MkcModel, BipartiteError> {
        for (lambda, mu) in &hidden_states {
            crate::solver::verify_frame_function(&settings_a, lambda)?;
            crate::solver::verify_frame_function(&settings_b, mu)?;
        }
        Ok(MkcModel {
            settings_a,
            settings_b,
            hidden_states,
        })
    }

    /// Builds states from per-side coloring lists, paired up index by index.
    pub fn from_colorings(
        settings_a: DirectionSet,
        settings_b: DirectionSet,
        colorings_a: &[Coloring],
        colorings_b: &[Coloring],
    ) -> Result<MkcModel, BipartiteError> {
        if colorings_a.len() != colorings_b.len() {
            return Err(BipartiteError::SideMismatch {
                a: colorings_a.len(),
                b: colorings_b.len(),
            });
        }
        let mut hidden_states = Vec::with_capacity(colorings_a.len());
        for (ca, cb) in colorings_a.iter().zip(colorings_b) {
            let lambda = coloring_to_frame_function(&settings_a, ca)?;
            let mu = coloring_to_frame_function(&settings_b, cb)?;
            hidden_states.push((lambda, mu));
        }
        Ok(MkcModel {
            settings_a,
            settings_b,
            hidden_states,
        })
    }

    pub fn settings_a(&self) -> &DirectionSet {
        &self.settings_a
    }

    pub fn settings_b(&self) -> &DirectionSet {
        &self.settings_b
    }

    pub fn hidden_states(&self) -> &[(FrameFunction, FrameFunction)] {
        &self.hidden_states
    }

    fn same_settings(&self) -> bool {
        self.settings_a == self.settings_b
    }
}

/// One realized run of the product experiment: both settings, the hidden
/// state, and the outcomes each party reads off its own frame function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRun {
    pub a_setting: usize,
    pub b_setting: usize,
    pub z: usize,
    pub outcome_f: [u8; 3],
    pub outcome_g: [u8; 3],
}

/// An exact consistency failure: a projector present on both sides whose
/// two assigned values differ in some hidden state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NatureViolation {
    pub a_frame: usize,
    pub b_frame: usize,
    pub i: usize,
    pub j: usize,
    pub z: usize,
    pub value_a: u8,
    pub value_b: u8,
}

/// A finite-precision consistency failure: two points closer than the scan
/// radius whose assigned values differ in hidden state `z`.
#[derive(Debug, Clone, PartialEq)]
pub struct NatureWitness {
    pub z: usize,
    pub a_frame: usize,
    pub b_frame: usize,
    pub i: usize,
    pub j: usize,
    pub distance: f64,
    pub values: (u8, u8),
}

/// point index -> list of (frame, slot) occurrences, in frame order.
fn occurrences(ds: &DirectionSet) -> Vec<Vec<(usize, usize)>> {
    let mut occ = vec![Vec::new(); ds.len()];
    for (f, &[i, j, k]) in ds.frames().iter().enumerate() {
        for (slot, point) in [i, j, k].into_iter().enumerate() {
            occ[point].push((f, slot));
        }
    }
    occ
}

/// point index -> assigned value, None for points outside every frame.
/// Well defined because the frame function passed model validation.
fn point_values(ds: &DirectionSet, ff: &FrameFunction) -> Vec<Option<u8>> {
    let mut values = vec![None; ds.len()];
    for (f, &[i, j, k]) in ds.frames().iter().enumerate() {
        let triple = ff.get(f);
        for (slot, point) in [i, j, k].into_iter().enumerate() {
            values[point] = Some(triple[slot]);
        }
    }
    values
}

/// Scans every cross-side pair of frames sharing an exact projective point
/// and reports each hidden state assigning it two different values. Empty
/// output means the model is consistent in the exact sense; a model whose
/// sides share no direction passes vacuously.
pub fn check_nature(model: &MkcModel) -> Vec<NatureViolation> {
    let occ_a = occurrences(model.settings_a());
    let occ_b = occurrences(model.settings_b());
    let index_b: HashMap<_, usize> = model
        .settings_b()
        .points()
        .iter()
        .enumerate()
        .map(|(i, p)| (p, i))
        .collect();

    let mut violations = Vec::new();
    for (pa, point) in model.settings_a().points().iter().enumerate() {
        let Some(&pb) = index_b.get(point) else {
            continue;
        };
        for &(a_frame, i) in &occ_a[pa] {
            for &(b_frame, j) in &occ_b[pb] {
                for (z, (lambda, mu)) in model.hidden_states().iter().enumerate() {
                    let value_a = lambda.get(a_frame)[i];
                    let value_b = mu.get(b_frame)[j];
                    if value_a != value_b {
                        violations.push(NatureViolation {
                            a_frame,
                            b_frame,
                            i,
                            j,
                            z,
                            value_a,
                            value_b,
                        });
                    }
                }
            }
        }
    }
    violations
}

/// Shared scan core: pairs of (A-point, B-point) drawn from the given sides,
/// compared under the given per-side value tables, radius applied exactly.
fn scan_close_pairs(
    side_a: &DirectionSet,
    side_b: &DirectionSet,
    values_a: &[Vec<Option<u8>>],
    values_b: &[Vec<Option<u8>>],
    epsilon: f64,
    skip_diagonal_and_below: bool,
) -> Vec<NatureWitness> {
    if !(epsilon > 0.0) || !epsilon.is_finite() {
        return Vec::new();
    }
    let eps = ExactScalar::from_rational(
        Rational::from_float(epsilon).expect("finite epsilon"),
    );
    let radius_squared = &eps * &eps;
    let occ_a = occurrences(side_a);
    let occ_b = occurrences(side_b);

    // Collected with the exact squared distance as primary sort key, so the
    // ascending order never depends on float rounding of near-ties.
    let mut hits: Vec<(ExactScalar, usize, usize, usize)> = Vec::new();
    for (pa, point_a) in side_a.points().iter().enumerate() {
        for (pb, point_b) in side_b.points().iter().enumerate() {
            if skip_diagonal_and_below && pb <= pa {
                continue;
            }
            if occ_a[pa].is_empty() || occ_b[pb].is_empty() {
                continue;
            }
            let s2 = point_a.sin_squared(point_b);
            if s2 >= radius_squared {
                continue;
            }
            for z in 0..values_a.len() {
                let (Some(va), Some(vb)) = (values_a[z][pa], values_b[z][pb]) else {
                    continue;
                };
                if va != vb {
                    hits.push((s2.clone(), z, pa, pb));
                }
            }
        }
    }
    hits.sort_by(|a, b| a.cmp(b));
    hits.into_iter()
        .map(|(s2, z, pa, pb)| {
            let (a_frame, i) = occ_a[pa][0];
            let (b_frame, j) = occ_b[pb][0];
            NatureWitness {
                z,
                a_frame,
                b_frame,
                i,
                j,
                distance: s2.to_f64().sqrt(),
                values: (
                    values_a[z][pa].expect("framed point"),
                    values_b[z][pb].expect("framed point"),
                ),
            }
        })
        .collect()
}

fn side_value_tables(
    model: &MkcModel,
) -> (Vec<Vec<Option<u8>>>, Vec<Vec<Option<u8>>>) {
    let values_a = model
        .hidden_states()
        .iter()
        .map(|(lambda, _)| point_values(model.settings_a(), lambda))
        .collect();
    let values_b = model
        .hidden_states()
        .iter()
        .map(|(_, mu)| point_values(model.settings_b(), mu))
        .collect();
    (values_a, values_b)
}

/// For each hidden state, finds every cross-side point pair strictly closer
/// than `epsilon` (exact comparison on squared sines) whose assigned values
/// differ. Sorted by distance ascending; each pair is labelled with its
/// first frame occurrence per side. Nonpositive epsilon yields no pairs.
pub fn find_nature_fp_witness(model: &MkcModel, epsilon: f64) -> Vec<NatureWitness> {
    let (values_a, values_b) = side_value_tables(model);
    scan_close_pairs(
        model.settings_a(),
        model.settings_b(),
        &values_a,
        &values_b,
        epsilon,
        false,
    )
}

/// Single-sided variant: scans distinct point pairs within side A against
/// the A-side responses alone. A nonempty result shows the A response is
/// already discontinuous without any reference to the other party.
pub fn find_nature_fp_witness_within_a(model: &MkcModel, epsilon: f64) -> Vec<NatureWitness> {
    let values_a: Vec<_> = model
        .hidden_states()
        .iter()
        .map(|(lambda, _)| point_values(model.settings_a(), lambda))
        .collect();
    scan_close_pairs(
        model.settings_a(),
        model.settings_a(),
        &values_a,
        &values_a,
        epsilon,
        true,
    )
}

/// Materializes the full product of settings and hidden states, one run per
/// triple, outcomes read off the per-side frame functions only.
pub fn run_experiment_grid(model: &MkcModel) -> Result<Vec<ExperimentRun>, BipartiteError> {
    let size = model.settings_a().frames().len() as u128
        * model.settings_b().frames().len() as u128
        * model.hidden_states().len() as u128;
    if size > GRID_GUARD {
        return Err(BipartiteError::GridGuard {
            size,
            limit: GRID_GUARD,
        });
    }
    let mut runs = Vec::with_capacity(size as usize);
    for a_setting in 0..model.settings_a().frames().len() {
        for b_setting in 0..model.settings_b().frames().len() {
            for (z, (lambda, mu)) in model.hidden_states().iter().enumerate() {
                runs.push(ExperimentRun {
                    a_setting,
                    b_setting,
                    z,
                    outcome_f: lambda.get(a_setting),
                    outcome_g: mu.get(b_setting),
                });
            }
        }
    }
    Ok(runs)
}

/// Merges one hidden state of a model with identical sides into a single
/// frame function: exact consistency at shared points is what makes the
/// merge well defined, and the result is revalidated on the common set.
pub fn merged_frame_function(
    model: &MkcModel,
    z: usize,
) -> Result<FrameFunction, BipartiteError> {
    if !model.same_settings() {
        return Err(BipartiteError::SettingsDiffer);
    }
    let Some((lambda, mu)) = model.hidden_states().get(z) else {
        return Err(BipartiteError::BadState {
            z,
            count: model.hidden_states().len(),
        });
    };
    let ds = model.settings_a();
    let values_a = point_values(ds, lambda);
    let values_b = point_values(ds, mu);
    let occ = occurrences(ds);
    for point in 0..ds.len() {
        if let (Some(value_a), Some(value_b)) = (values_a[point], values_b[point]) {
            if value_a != value_b {
                return Err(BipartiteError::MergeConflict {
                    z,
                    a_frame: occ[point][0].0,
                    b_frame: occ[point][0].0,
                    value_a,
                    value_b,
                });
            }
        }
    }
    let merged = FrameFunction::new(lambda.triples().to_vec());
    crate::solver::verify_frame_function(ds, &merged)?;
    Ok(merged)
}

/// One row of the discontinuity table: among point pairs strictly closer
/// than `radius`, how many carry different colors.
#[derive(Debug, Clone, PartialEq)]
pub struct StatsRow {
    pub radius: f64,
    pub pairs: u64,
    pub disagreements: u64,
    pub fraction: f64,
}

/// Quantifies how discontinuous a valid coloring is: for each radius, the
/// number of point pairs closer than it and the fraction of those pairs the
/// coloring separates. Distances are compared exactly on squared sines.
pub fn discontinuity_stats(
    ds: &DirectionSet,
    c: &Coloring,
    radii: &[f64],
) -> Result<Vec<StatsRow>, BipartiteError> {
    let violations = verify_coloring(ds, c)?;
    if !violations.is_empty() {
        return Err(SolverError::InvalidColoring { violations }.into());
    }
    let mut pair_data: Vec<(ExactScalar, bool)> = Vec::new();
    for i in 0..ds.len() {
        for j in (i + 1)..ds.len() {
            let s2 = ds.point(i).sin_squared(ds.point(j));
            pair_data.push((s2, c.get(i) != c.get(j)));
        }
    }
    let rows = radii
        .iter()
        .map(|&radius| {
            let mut pairs = 0u64;
            let mut disagreements = 0u64;
            if radius > 0.0 && radius.is_finite() {
                let r = ExactScalar::from_rational(
                    Rational::from_float(radius).expect("finite radius"),
                );
                let r2 = &r * &r;
                for (s2, differs) in &pair_data {
                    if *s2 < r2 {
                        pairs += 1;
                        if *differs {
                            disagreements += 1;
                        }
                    }
                }
            }
            let fraction = if pairs == 0 {
                0.0
            } else {
                disagreements as f64 / pairs as f64
            };
            StatsRow {
                radius,
                pairs,
                disagreements,
                fraction,
            }
        })
        .collect();
    Ok(rows)
}

/// Renders stats rows as CSV with a fixed header.
pub fn stats_to_csv(rows: &[StatsRow]) -> String {
    let mut out = String::from("radius,pairs,disagreements,fraction\n");
    for row in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            row.radius, row.pairs, row.disagreements, row.fraction
        ));
    }
    out
}

/// Builds the coloring that gives every frame the same outcome triple.
/// Requires the frames to partition the points (each point in exactly one
/// frame), which holds for every totally incompatible perturbed side; there
/// the per-frame values never interact, so any pattern choice is valid.
pub fn pattern_coloring(ds: &DirectionSet, pattern: [u8; 3]) -> Result<Coloring, BipartiteError> {
    if !OUTCOME_TRIPLES.contains(&pattern) {
        return Err(BipartiteError::BadPattern { pattern });
    }
    let occ = occurrences(ds);
    for (point, frames) in occ.iter().enumerate() {
        if frames.len() != 1 {
            return Err(BipartiteError::NotPartitioned {
                point,
                count: frames.len(),
            });
        }
    }
    let mut values = vec![0u8; ds.len()];
    for &[i, j, k] in ds.frames() {
        values[i] = pattern[0];
        values[j] = pattern[1];
        values[k] = pattern[2];
    }
    let c = Coloring::new(values)?;
    let violations = verify_coloring(ds, &c)?;
    debug_assert!(violations.is_empty(), "disjoint frames accept any pattern");
    Ok(c)
}

/// The pattern pairs used as extra hidden states by the pipeline. Each pair
/// disagrees at a fixed slot of every frame, so as long as both sides stay
/// within epsilon of the same source, every state is guaranteed a
/// finite-precision witness at radius 2*epsilon by the triangle inequality.
pub const FWT_HIDDEN_PATTERNS: [([u8; 3], [u8; 3]); 3] = [
    ([1, 1, 0], [0, 1, 1]),
    ([1, 0, 1], [1, 1, 0]),
    ([0, 1, 1], [1, 0, 1]),
];

/// One witness in the serialized report, with the exact canonical
/// coordinates of both points alongside the float distance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub z: usize,
    pub a_frame: usize,
    pub b_frame: usize,
    pub i: usize,
    pub j: usize,
    pub a_point: [String; 3],
    pub b_point: [String; 3],
    pub distance: f64,
    pub value_a: u8,
    pub value_b: u8,
}

/// Full serializable record of one pipeline run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FwtReport {
    pub set: String,
    pub epsilon: f64,
    /// Witness scan radius, 2 * epsilon.
    pub radius: f64,
    pub seed: u64,
    pub seed_a: u64,
    pub seed_b: u64,
    pub frames_per_side: usize,
    pub hidden_states: usize,
    pub nature_violations: usize,
    pub witnesses_per_state: Vec<usize>,
    pub witnesses: Vec<WitnessRecord>,
    /// True iff exact consistency holds and every hidden state has at least
    /// one finite-precision witness.
    pub passed: bool,
}

/// Fixed-increment 64-bit mixer used to derive independent per-side seeds.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn shares_exact_point(side_a: &DirectionSet, side_b: &DirectionSet) -> bool {
    let points_a: std::collections::HashSet<_> = side_a.points().iter().collect();
    side_b.points().iter().any(|p| points_a.contains(p))
}

/// Runs the finite-precision demonstration end to end on one source set:
/// perturb both sides independently (re-rolling side B until the sides
/// share no exact direction, so exact consistency holds vacuously), solve
/// each side for a witness coloring, add the three guaranteed-disagreeing
/// pattern states, and scan for finite-precision witnesses at radius
/// 2*epsilon. `passed` records whether every hidden state produced one.
///
/// The pattern states pass by construction. The solver-witness state z=0 is
/// the interesting one: the deterministic solver colors both sides by the
/// same per-frame pattern, so its witnesses exist exactly when some source
/// point sits in two frames at different sorted positions — a structural
/// property of the source's frame table that every Kochen–Specker catalog
/// here exhibits, and the trace of the source's uncolorability that
/// survives on the perturbed, individually colorable sides.
pub fn run_fwt_pipeline(
    ds: &DirectionSet,
    set_name: &str,
    epsilon: f64,
    seed: u64,
) -> Result<FwtReport, BipartiteError> {
    let mut state = seed;
    let seed_a = splitmix64(&mut state);
    let plan_a = perturb_frames(ds, epsilon, seed_a)
        .map_err(|source| BipartiteError::Perturb { side: 'A', source })?;

    let mut attempt = 0;
    let (seed_b, plan_b) = loop {
        attempt += 1;
        if attempt > MAX_SIDE_ATTEMPTS {
            return Err(BipartiteError::SharedPointsPersist {
                attempts: MAX_SIDE_ATTEMPTS,
            });
        }
        let candidate = splitmix64(&mut state);
        let plan = perturb_frames(ds, epsilon, candidate)
            .map_err(|source| BipartiteError::Perturb { side: 'B', source })?;
        if !shares_exact_point(&plan_a.result, &plan.result) {
            break (candidate, plan);
        }
    };

    let side_a = plan_a.result.clone();
    let side_b = plan_b.result.clone();

    // Totally incompatible sides are always colorable (any per-frame triple
    // works), so the solver verdicts here are COLORABLE with a witness.
    let report_a = solve(&side_a);
    let report_b = solve(&side_b);
    assert_eq!(report_a.verdict, Verdict::Colorable);
    assert_eq!(report_b.verdict, Verdict::Colorable);
    let witness_a = report_a.witness.expect("colorable verdict carries witness");
    let witness_b = report_b.witness.expect("colorable verdict carries witness");

    let mut colorings_a = vec![witness_a];
    let mut colorings_b = vec![witness_b];
    for (pattern_a, pattern_b) in FWT_HIDDEN_PATTERNS {
        colorings_a.push(pattern_coloring(&side_a, pattern_a)?);
        colorings_b.push(pattern_coloring(&side_b, pattern_b)?);
    }

    let model = MkcModel::from_colorings(side_a, side_b, &colorings_a, &colorings_b)?;
    let violations = check_nature(&model);
    let radius = 2.0 * epsilon;
    let witnesses = find_nature_fp_witness(&model, radius);

    let mut witnesses_per_state = vec![0usize; model.hidden_states().len()];
    for w in &witnesses {
        witnesses_per_state[w.z] += 1;
    }
    let passed = violations.is_empty()
        && !witnesses_per_state.is_empty()
        && witnesses_per_state.iter().all(|&n| n > 0);

    let point_coords = |ds: &DirectionSet, frame: usize, slot: usize| -> [String; 3] {
        let idx = ds.frames()[frame][slot];
        let coords = ds.point(idx).rep().coords();
        [
            coords[0].to_string(),
            coords[1].to_string(),
            coords[2].to_string(),
        ]
    };
    let records = witnesses
        .iter()
        .map(|w| WitnessRecord {
            z: w.z,
            a_frame: w.a_frame,
            b_frame: w.b_frame,
            i: w.i,
            j: w.j,
            a_point: point_coords(model.settings_a(), w.a_frame, w.i),
            b_point: point_coords(model.settings_b(), w.b_frame, w.j),
            distance: w.distance,
            value_a: w.values.0,
            value_b: w.values.1,
        })
        .collect();

    Ok(FwtReport {
        set: set_name.to_string(),
        epsilon,
        radius,
        seed,
        seed_a,
        seed_b,
        frames_per_side: ds.frames().len(),
        hidden_states: model.hidden_states().len(),
        nature_violations: violations.len(),
        witnesses_per_state,
        witnesses: records,
        passed,
    })
}
