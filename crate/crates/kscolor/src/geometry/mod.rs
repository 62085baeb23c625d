//! Projective geometry over Q(sqrt2): canonical points, frames, the
//! projector distance, and direction sets with their exact orthogonality
//! graphs.

mod frame;
mod point;
mod set;

pub use frame::{frame_distance, frame_distance_with, projector_distance, projector_distance_with, Frame, ProjectorNorm};
pub use point::ProjectivePoint;
pub use set::{DirectionSet, DirectionSetFile, FieldTag, LoadedDirectionSet};

use thiserror::Error;

use crate::exact::ExactError;

#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("cannot canonicalize the zero vector")]
    ZeroVector,
    #[error("frame points {p} and {q} are not orthogonal")]
    NotOrthogonal { p: String, q: String },
    #[error("frame repeats the point {point}")]
    DegenerateFrame { point: String },
    #[error("duplicate directions after canonicalization: {}", duplicates.join(", "))]
    DuplicatePoints { duplicates: Vec<String> },
    #[error("set {name} is declared rational but direction {direction} has a sqrt2 component")]
    FieldMismatch { name: String, direction: String },
    #[error(transparent)]
    Scalar(#[from] ExactError),
}

#[cfg(test)]
mod proptests {
    use proptest::prelude::*;

    use crate::exact::{ExactScalar, ExactVec3, Rational};

    use super::*;

    fn small_scalar() -> impl Strategy<Value = ExactScalar> {
        (-6i64..=6, -6i64..=6, 1i64..=4).prop_map(|(a, b, d)| {
            ExactScalar::new(
                Rational::new(a.into(), d.into()),
                Rational::new(b.into(), d.into()),
            )
        })
    }

    fn nonzero_vec() -> impl Strategy<Value = ExactVec3> {
        (small_scalar(), small_scalar(), small_scalar())
            .prop_map(|(x, y, z)| ExactVec3::new(x, y, z))
            .prop_filter("nonzero", |v| !v.is_zero())
    }

    fn int_point() -> impl Strategy<Value = ProjectivePoint> {
        (-3i64..=3, -3i64..=3, -3i64..=3)
            .prop_filter("nonzero", |&(x, y, z)| (x, y, z) != (0, 0, 0))
            .prop_map(|(x, y, z)| ProjectivePoint::from_ints(x, y, z))
    }

    proptest! {
        #[test]
        fn canonicalization_is_scale_invariant(v in nonzero_vec(), s in small_scalar()) {
            prop_assume!(!s.is_zero());
            let p = ProjectivePoint::new(&v).unwrap();
            let q = ProjectivePoint::new(&v.scale(&s)).unwrap();
            prop_assert_eq!(p, q);
        }

        #[test]
        fn canonical_form_is_a_fixed_point(v in nonzero_vec()) {
            let p = ProjectivePoint::new(&v).unwrap();
            let again = ProjectivePoint::new(p.rep()).unwrap();
            prop_assert_eq!(p.rep(), again.rep());
        }

        #[test]
        fn projector_distance_symmetric_bounded(p in int_point(), q in int_point()) {
            let d = projector_distance(&p, &q);
            prop_assert_eq!(d, projector_distance(&q, &p));
            prop_assert!((0.0..=1.0).contains(&d));
            prop_assert_eq!(d == 0.0, p == q);
        }

        #[test]
        fn triangles_match_brute_force(coords in proptest::collection::vec((-2i64..=2, -2i64..=2, -2i64..=2), 1..12)) {
            let mut points = Vec::new();
            for (x, y, z) in coords {
                if (x, y, z) == (0, 0, 0) {
                    continue;
                }
                let p = ProjectivePoint::from_ints(x, y, z);
                if !points.contains(&p) {
                    points.push(p);
                }
            }
            prop_assume!(!points.is_empty());
            let ds = DirectionSet::build(points.clone()).unwrap();
            let n = points.len();
            let mut brute = Vec::new();
            for i in 0..n {
                for j in i + 1..n {
                    for k in j + 1..n {
                        if points[i].is_orthogonal_to(&points[j])
                            && points[i].is_orthogonal_to(&points[k])
                            && points[j].is_orthogonal_to(&points[k])
                        {
                            brute.push([i, j, k]);
                        }
                    }
                }
            }
            prop_assert_eq!(ds.frames(), &brute[..]);
        }

        #[test]
        fn point_to_frame_bounds_frame_distance(f in random_frame(), g in random_frame()) {
            // For any point p of f: min_i d(p, g_i) <= frame_distance(f, g).
            let fd = frame_distance(&f, &g);
            for p in f.points() {
                let best = g
                    .points()
                    .iter()
                    .map(|q| projector_distance(p, q))
                    .fold(f64::INFINITY, f64::min);
                prop_assert!(best <= fd + 1e-15);
            }
        }
    }

    fn random_frame() -> impl Strategy<Value = Frame> {
        ((-5i64..=5, -5i64..=5, -5i64..=5), 0usize..3).prop_filter_map(
            "degenerate",
            |((x, y, z), axis)| {
                let v = ExactVec3::from_ints(x, y, z);
                if v.is_zero() {
                    return None;
                }
                let e = match axis {
                    0 => ExactVec3::from_ints(1, 0, 0),
                    1 => ExactVec3::from_ints(0, 1, 0),
                    _ => ExactVec3::from_ints(0, 0, 1),
                };
                let w = v.cross(&e).ok()?;
                let u = v.cross(&w).ok()?;
                Frame::new(
                    ProjectivePoint::new(&v).ok()?,
                    ProjectivePoint::new(&w).ok()?,
                    ProjectivePoint::new(&u).ok()?,
                )
                .ok()
            },
        )
    }
}
