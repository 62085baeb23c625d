//! Frames (orthonormal triples of directions) and the projector distance
//! used by the finite-precision arguments: for rank-1 projectors P_p, P_q
//! the operator norm of P_p - P_q equals sin of the angle between the lines.

use crate::exact::ExactScalar;

use super::point::ProjectivePoint;
use super::GeometryError;

/// Which matrix norm to apply to the projector difference P_p - P_q.
///
/// The nonzero eigenvalues of P_p - P_q are +/- sin(theta), so the Frobenius
/// norm is exactly sqrt(2) times the operator norm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ProjectorNorm {
    #[default]
    Operator,
    Frobenius,
}

impl ProjectorNorm {
    fn of_sin_squared(self, sin2: &ExactScalar) -> f64 {
        if sin2.is_zero() {
            return 0.0;
        }
        match self {
            ProjectorNorm::Operator => sin2.to_f64().sqrt(),
            ProjectorNorm::Frobenius => (2.0 * sin2.to_f64()).sqrt(),
        }
    }
}

/// Operator norm of P_p - P_q: sqrt(1 - <p,q>^2 / (<p,p><q,q>)).
///
/// The ratio is computed exactly; only the final square root is floating
/// point, so the result is 0.0 exactly when p = q.
pub fn projector_distance(p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    projector_distance_with(ProjectorNorm::Operator, p, q)
}

pub fn projector_distance_with(norm: ProjectorNorm, p: &ProjectivePoint, q: &ProjectivePoint) -> f64 {
    norm.of_sin_squared(&p.sin_squared(q))
}

/// An ordered triple of mutually orthogonal directions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Frame {
    points: [ProjectivePoint; 3],
}

impl Frame {
    /// Validates that the three points are distinct and pairwise orthogonal.
    pub fn new(
        p1: ProjectivePoint,
        p2: ProjectivePoint,
        p3: ProjectivePoint,
    ) -> Result<Frame, GeometryError> {
        let points = [p1, p2, p3];
        for i in 0..3 {
            for j in i + 1..3 {
                if points[i] == points[j] {
                    return Err(GeometryError::DegenerateFrame {
                        point: points[i].to_string(),
                    });
                }
                if !points[i].is_orthogonal_to(&points[j]) {
                    return Err(GeometryError::NotOrthogonal {
                        p: points[i].to_string(),
                        q: points[j].to_string(),
                    });
                }
            }
        }
        Ok(Frame { points })
    }

    pub fn points(&self) -> &[ProjectivePoint; 3] {
        &self.points
    }

    /// All six ordered presentations of the same unordered frame.
    pub fn orderings(&self) -> Vec<Frame> {
        const PERMS: [[usize; 3]; 6] = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        PERMS
            .iter()
            .map(|perm| Frame {
                points: [
                    self.points[perm[0]].clone(),
                    self.points[perm[1]].clone(),
                    self.points[perm[2]].clone(),
                ],
            })
            .collect()
    }

    /// Exact squared distance: max over own points of the min over the other
    /// frame's points of sin^2 of the pair angle.
    fn distance_squared(&self, other: &Frame) -> ExactScalar {
        self.points
            .iter()
            .map(|p| {
                other
                    .points
                    .iter()
                    .map(|q| p.sin_squared(q))
                    .min()
                    .expect("frame has points")
            })
            .max()
            .expect("frame has points")
    }
}

/// max_i min_j of the projector distance between the frames' points.
///
/// The max-min is resolved on exact squared sines; the square root happens
/// once at the end. Invariant under reordering of either frame.
pub fn frame_distance(f: &Frame, g: &Frame) -> f64 {
    frame_distance_with(ProjectorNorm::Operator, f, g)
}

pub fn frame_distance_with(norm: ProjectorNorm, f: &Frame, g: &Frame) -> f64 {
    norm.of_sin_squared(&f.distance_squared(g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn axes() -> Frame {
        Frame::new(
            ProjectivePoint::from_ints(1, 0, 0),
            ProjectivePoint::from_ints(0, 1, 0),
            ProjectivePoint::from_ints(0, 0, 1),
        )
        .unwrap()
    }

    #[test]
    fn distance_examples() {
        let p = ProjectivePoint::from_ints(1, 0, 0);
        let q = ProjectivePoint::from_ints(0, 1, 0);
        let r = ProjectivePoint::from_ints(1, 1, 0);
        assert_eq!(projector_distance(&p, &p), 0.0);
        assert_eq!(projector_distance(&p, &q), 1.0);
        assert!((projector_distance(&p, &r) - 0.7071067811865476).abs() < 1e-12);
    }

    #[test]
    fn frobenius_is_sqrt2_times_operator() {
        let p = ProjectivePoint::from_ints(1, 0, 0);
        let r = ProjectivePoint::from_ints(1, 2, 2);
        let op = projector_distance(&p, &r);
        let fr = projector_distance_with(ProjectorNorm::Frobenius, &p, &r);
        assert!((fr - 2.0_f64.sqrt() * op).abs() < 1e-15);
    }

    #[test]
    fn frame_requires_orthogonality() {
        let err = Frame::new(
            ProjectivePoint::from_ints(1, 0, 0),
            ProjectivePoint::from_ints(1, 1, 0),
            ProjectivePoint::from_ints(0, 0, 1),
        )
        .unwrap_err();
        assert!(matches!(err, GeometryError::NotOrthogonal { .. }));

        let err = Frame::new(
            ProjectivePoint::from_ints(1, 0, 0),
            ProjectivePoint::from_ints(-1, 0, 0),
            ProjectivePoint::from_ints(0, 0, 1),
        )
        .unwrap_err();
        assert!(matches!(err, GeometryError::DegenerateFrame { .. }));
    }

    #[test]
    fn frame_distance_ignores_ordering() {
        let f = axes();
        assert_eq!(frame_distance(&f, &f), 0.0);
        let g = Frame::new(
            ProjectivePoint::from_ints(0, 1, 0),
            ProjectivePoint::from_ints(1, 0, 0),
            ProjectivePoint::from_ints(0, 0, 1),
        )
        .unwrap();
        assert_eq!(frame_distance(&f, &g), 0.0);
        for h in f.orderings() {
            assert_eq!(frame_distance(&f, &h), 0.0);
        }
    }

    #[test]
    fn frame_distance_for_small_rational_rotation() {
        // Rotation about z by theta with sin(theta) = 2N/(N^2+1), N = 100:
        // columns (N^2-1, 2N, 0), (-2N, N^2-1, 0), (0, 0, 1) up to scale.
        let n = 100i64;
        let f = axes();
        let g = Frame::new(
            ProjectivePoint::from_ints(n * n - 1, 2 * n, 0),
            ProjectivePoint::from_ints(-2 * n, n * n - 1, 0),
            ProjectivePoint::from_ints(0, 0, 1),
        )
        .unwrap();
        let expected = 2.0 * n as f64 / (n as f64 * n as f64 + 1.0);
        assert!((frame_distance(&f, &g) - expected).abs() < 1e-9);
    }
}
