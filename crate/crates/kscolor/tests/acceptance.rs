//! Acceptance suite: the eight end-to-end guarantees this workbench makes,
//! each criterion one test that prints a single pass line. Run with
//! `cargo test --test acceptance -- --nocapture` to see every line.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use kscolor::bipartite::{
    check_nature, merged_frame_function, pattern_coloring, run_fwt_pipeline, MkcModel,
    FWT_HIDDEN_PATTERNS,
};
use kscolor::catalog;
use kscolor::exact::{ExactScalar, ExactVec3, Rational};
use kscolor::geometry::{frame_distance, projector_distance, DirectionSet, Frame, ProjectivePoint};
use kscolor::rational_gen::{is_totally_incompatible, perturb_frames, rational_frames, RationalRotation};
use kscolor::solver::{
    count_colorings, export_cnf, solve, verify_coloring, verify_frame_function, Coloring, Verdict,
};

fn catalog_set(name: &str) -> DirectionSet {
    catalog::builtin(name).unwrap().directions
}

/// External SAT oracle: parses the exported DIMACS and decides it.
fn dimacs_is_satisfiable(cnf: &str) -> bool {
    let formula = varisat::dimacs::DimacsParser::parse(cnf.as_bytes()).expect("valid DIMACS");
    let mut solver = varisat::Solver::new();
    solver.add_formula(&formula);
    solver.solve().expect("solver runs")
}

#[test]
fn criterion_1_catalog_uncolorability() {
    for name in ["peres33", "ck31", "bub33"] {
        let ds = catalog_set(name);
        let start = Instant::now();
        let report = solve(&ds);
        let wall = start.elapsed();
        assert_eq!(report.verdict, Verdict::Uncolorable, "{name} must refute");
        assert!(wall < Duration::from_secs(10), "{name} took {wall:?}");

        let cnf = export_cnf(&ds, name);
        assert!(!dimacs_is_satisfiable(&cnf), "{name} CNF must be UNSAT");
    }
    println!("ACCEPTANCE 1 catalog-uncolorability: PASS");
}

#[test]
fn criterion_2_trivial_colorability() {
    let frame = DirectionSet::from_vectors(&[
        ExactVec3::from_ints(1, 0, 0),
        ExactVec3::from_ints(0, 1, 0),
        ExactVec3::from_ints(0, 0, 1),
    ])
    .unwrap();
    assert_eq!(count_colorings(&frame).unwrap(), 3);

    let empty = DirectionSet::build(Vec::new()).unwrap();
    assert_eq!(count_colorings(&empty).unwrap(), 1);
    println!("ACCEPTANCE 2 trivial-colorability: PASS");
}

#[test]
fn criterion_3_rational_sets_are_colorable() {
    for max_n in [1i64, 5, 13, 25] {
        let start = Instant::now();
        let ds = rational_frames(max_n).unwrap();
        let report = solve(&ds);
        let wall = start.elapsed();
        assert_eq!(report.verdict, Verdict::Colorable, "max_n {max_n}");
        let witness = report.witness.expect("colorable verdict has witness");
        assert!(
            verify_coloring(&ds, &witness).unwrap().is_empty(),
            "witness at max_n {max_n} must have zero violations"
        );
        if max_n == 25 {
            assert!(wall < Duration::from_secs(60), "max_n 25 took {wall:?}");
        }
    }
    println!("ACCEPTANCE 3 rational-colorability: PASS");
}

#[test]
fn criterion_4_perturbation_structure() {
    let source = catalog_set("peres33");
    for seed in 0..10u64 {
        let plan = perturb_frames(&source, 0.02, seed).unwrap();
        let result = &plan.result;

        // Exactly orthogonal frames, pairwise disjoint, nothing shared.
        assert_eq!(result.frames().len(), source.frames().len());
        assert_eq!(result.ortho_edges().len(), 3 * result.frames().len());
        assert!(is_totally_incompatible(result));
        for &[i, j, k] in result.frames() {
            // Frame construction revalidates exact orthogonality.
            Frame::new(
                result.point(i).clone(),
                result.point(j).clone(),
                result.point(k).clone(),
            )
            .unwrap();
        }

        // Every rotated frame stays within 0.02 of its source frame, and
        // every direction within 0.02 of its own source direction.
        for (f, &[i, j, k]) in result.frames().iter().enumerate() {
            let rotated = Frame::new(
                result.point(i).clone(),
                result.point(j).clone(),
                result.point(k).clone(),
            )
            .unwrap();
            let d = frame_distance(&source.frame(f), &rotated);
            assert!(d < 0.02, "seed {seed} frame {f} moved {d}");
        }
        for (idx, &(frame, slot)) in plan.provenance.iter().enumerate() {
            let origin = source.point(source.frames()[frame][slot]);
            let d = projector_distance(result.point(idx), origin);
            assert!(d < 0.02, "seed {seed} point {idx} moved {d}");
        }

        let report = solve(result);
        assert_eq!(report.verdict, Verdict::Colorable, "seed {seed}");
    }
    println!("ACCEPTANCE 4 mkc-perturbation: PASS");
}

#[test]
fn criterion_5_fwt_pipeline() {
    let source = catalog_set("peres33");
    for seed in 0..10u64 {
        let start = Instant::now();
        let report = run_fwt_pipeline(&source, "peres33", 0.02, seed).unwrap();
        let wall = start.elapsed();

        assert_eq!(report.nature_violations, 0, "seed {seed}");
        assert!(report.hidden_states > 0);
        for (z, &count) in report.witnesses_per_state.iter().enumerate() {
            assert!(count > 0, "seed {seed} state {z} found no witness");
        }
        for witness in &report.witnesses {
            assert!(witness.distance < 0.04, "seed {seed}: {}", witness.distance);
            assert_ne!(witness.value_a, witness.value_b);
        }
        assert!(report.passed);
        assert!(wall < Duration::from_secs(60), "seed {seed} took {wall:?}");

        let closest = &report.witnesses[0];
        println!(
            "  seed {seed}: {} witnesses; closest at distance {} with values {} vs {}",
            report.witnesses.len(),
            closest.distance,
            closest.value_a,
            closest.value_b
        );
    }
    println!("ACCEPTANCE 5 fwt-pipeline: PASS");
}

#[test]
fn criterion_6_lemma_2_merge() {
    // Forward direction: Nature-passing models with identical sides merge
    // into valid frame functions, state by state.
    let source = catalog_set("peres33");
    let side = perturb_frames(&source, 0.02, 99).unwrap().result;
    let mut colorings = vec![solve(&side).witness.unwrap()];
    for (pattern, _) in FWT_HIDDEN_PATTERNS {
        colorings.push(pattern_coloring(&side, pattern).unwrap());
    }
    let model =
        MkcModel::from_colorings(side.clone(), side.clone(), &colorings, &colorings).unwrap();
    assert!(check_nature(&model).is_empty());
    for z in 0..model.hidden_states().len() {
        let merged = merged_frame_function(&model, z).unwrap();
        verify_frame_function(&side, &merged).unwrap();
    }

    // Same on a rational Meyer-style set used as both sides.
    let rational = rational_frames(5).unwrap();
    let witness = solve(&rational).witness.unwrap();
    let model = MkcModel::from_colorings(
        rational.clone(),
        rational.clone(),
        std::slice::from_ref(&witness),
        std::slice::from_ref(&witness),
    )
    .unwrap();
    assert!(check_nature(&model).is_empty());
    verify_frame_function(&rational, &merged_frame_function(&model, 0).unwrap()).unwrap();

    // Converse: any set containing ck31 is uncolorable, so no valid
    // coloring input for a model over it exists at all.
    let ck31 = catalog_set("ck31");
    let mut points = ck31.points().to_vec();
    for extra in [
        ExactVec3::from_ints(1, 1, 1),
        ExactVec3::from_ints(3, 1, 2),
        ExactVec3::from_ints(5, 0, 1),
    ] {
        let p = ProjectivePoint::new(&extra).unwrap();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    let superset = DirectionSet::build(points).unwrap();
    let report = solve(&superset);
    assert_eq!(report.verdict, Verdict::Uncolorable);
    assert!(report.witness.is_none());

    // Feeding a model any total assignment anyway is rejected as invalid.
    let all_ones = Coloring::new(vec![1; superset.len()]).unwrap();
    assert!(MkcModel::from_colorings(
        superset.clone(),
        superset,
        std::slice::from_ref(&all_ones),
        std::slice::from_ref(&all_ones),
    )
    .is_err());
    println!("ACCEPTANCE 6 lemma-2-merge: PASS");
}

/// Draws a small direction set from a pool of integer (and sometimes
/// sqrt2-mixed) vectors, deduplicating projectively.
fn random_direction_set(rng: &mut ChaCha12Rng) -> DirectionSet {
    let target = rng.gen_range(3..=20);
    let mixed = rng.gen_bool(0.3);
    let mut seen = HashSet::new();
    let mut points = Vec::new();
    let mut attempts = 0;
    while points.len() < target && attempts < 400 {
        attempts += 1;
        let mut coord = || {
            let rat = rng.gen_range(-2i64..=2);
            let irr = if mixed { rng.gen_range(-1i64..=1) } else { 0 };
            ExactScalar::new(
                Rational::from_integer(rat.into()),
                Rational::from_integer(irr.into()),
            )
        };
        let v = ExactVec3::new(coord(), coord(), coord());
        if v.is_zero() {
            continue;
        }
        let p = ProjectivePoint::new(&v).unwrap();
        if seen.insert(p.clone()) {
            points.push(p);
        }
    }
    DirectionSet::build(points).unwrap()
}

#[test]
fn criterion_7_oracle_equivalences() {
    // Three-way agreement: backtracking verdict, exhaustive count, SAT.
    let mut rng = ChaCha12Rng::seed_from_u64(0x5EED);
    let mut colorable = 0;
    for case in 0..60 {
        let ds = random_direction_set(&mut rng);
        let verdict = solve(&ds).verdict;
        let count = count_colorings(&ds).unwrap();
        let sat = dimacs_is_satisfiable(&export_cnf(&ds, &format!("random-{case}")));
        assert_eq!(verdict == Verdict::Colorable, count > 0, "case {case}");
        assert_eq!(verdict == Verdict::Colorable, sat, "case {case}");
        if verdict == Verdict::Colorable {
            colorable += 1;
        }
    }
    assert!(colorable > 0, "sampling must include satisfiable sets");

    // Distance oracle: numerical eigenvalues of the projector difference.
    let mut max_err = 0.0f64;
    for _ in 0..1000 {
        let mut vector = || loop {
            let mut coord = || {
                ExactScalar::new(
                    Rational::from_integer(rng.gen_range(-5i64..=5).into()),
                    Rational::from_integer(rng.gen_range(-2i64..=2).into()),
                )
            };
            let v = ExactVec3::new(coord(), coord(), coord());
            if !v.is_zero() {
                return ProjectivePoint::new(&v).unwrap();
            }
        };
        let p = vector();
        let q = vector();
        let exact = projector_distance(&p, &q);
        let oracle = eigenvalue_distance(&p, &q);
        max_err = max_err.max((exact - oracle).abs());
    }
    assert!(max_err <= 1e-12, "largest deviation {max_err}");
    println!("ACCEPTANCE 7 oracle-equivalences: PASS");
}

/// Operator norm of P - Q via nalgebra's symmetric eigendecomposition.
fn eigenvalue_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    let projector = |point: &ProjectivePoint| {
        let c = point.rep().coords().map(ExactScalar::to_f64);
        let norm2 = c.iter().map(|x| x * x).sum::<f64>();
        nalgebra::Matrix3::from_fn(|i, j| c[i] * c[j] / norm2)
    };
    let diff = projector(p) - projector(q);
    nalgebra::SymmetricEigen::new(diff)
        .eigenvalues
        .iter()
        .fold(0.0f64, |acc, &ev| acc.max(ev.abs()))
}

#[test]
fn criterion_8_exactness_suite() {
    let mut rng = ChaCha12Rng::seed_from_u64(0xACCE);

    // 1000 random rational rotations are exactly orthogonal with det 1.
    let mut produced = 0;
    while produced < 1000 {
        let q: [i64; 4] = [
            rng.gen_range(-1000..=1000),
            rng.gen_range(-1000..=1000),
            rng.gen_range(-1000..=1000),
            rng.gen_range(-1000..=1000),
        ];
        if q == [0, 0, 0, 0] {
            continue;
        }
        let rotation = RationalRotation::new(q).unwrap();
        assert!(rotation.is_orthogonal());
        assert_eq!(
            rotation.determinant(),
            Rational::from_integer(1.into())
        );
        produced += 1;
    }

    // Canonicalization is invariant under scaling and sign on 1000 vectors.
    let mut checked = 0;
    while checked < 1000 {
        let mut coord = || {
            ExactScalar::new(
                Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()),
                Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into()),
            )
        };
        let v = ExactVec3::new(coord(), coord(), coord());
        if v.is_zero() {
            continue;
        }
        let scale = ExactScalar::new(
            Rational::from_integer(rng.gen_range(-9i64..=9).into()),
            Rational::from_integer(rng.gen_range(-9i64..=9).into()),
        );
        if scale.is_zero() {
            continue;
        }
        let base = ProjectivePoint::new(&v).unwrap();
        let scaled = ProjectivePoint::new(&v.scale(&scale)).unwrap();
        let negated = ProjectivePoint::new(&v.neg()).unwrap();
        assert_eq!(base, scaled, "scaling by {scale} changed the class");
        assert_eq!(base, negated);
        checked += 1;
    }
    println!("ACCEPTANCE 8 exactness-suite: PASS");
}
