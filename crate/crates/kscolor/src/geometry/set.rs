//! Finite direction sets with their exact orthogonality graph and the frames
//! (triangles of that graph), plus the JSON interchange format.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::exact::{ExactScalar, ExactVec3};

use super::frame::Frame;
use super::point::ProjectivePoint;
use super::GeometryError;

/// A finite set of directions together with its exact orthogonality
/// structure. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionSet {
    points: Vec<ProjectivePoint>,
    ortho_edges: Vec<(usize, usize)>,
    frames: Vec<[usize; 3]>,
}

impl DirectionSet {
    /// Canonicalizes the input order, rejects duplicates, and computes all
    /// orthogonal pairs and all triangles of the orthogonality graph.
    pub fn build(points: Vec<ProjectivePoint>) -> Result<DirectionSet, GeometryError> {
        let mut seen: HashMap<&ProjectivePoint, usize> = HashMap::new();
        let mut duplicates = Vec::new();
        for (i, p) in points.iter().enumerate() {
            if seen.contains_key(p) {
                duplicates.push(format!("{p} (index {i})"));
            } else {
                seen.insert(p, i);
            }
        }
        if !duplicates.is_empty() {
            return Err(GeometryError::DuplicatePoints { duplicates });
        }

        let n = points.len();
        let mut adj = vec![vec![false; n]; n];
        let mut ortho_edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if points[i].is_orthogonal_to(&points[j]) {
                    adj[i][j] = true;
                    adj[j][i] = true;
                    ortho_edges.push((i, j));
                }
            }
        }

        let mut frames = Vec::new();
        for &(i, j) in &ortho_edges {
            for k in j + 1..n {
                if adj[i][k] && adj[j][k] {
                    frames.push([i, j, k]);
                }
            }
        }
        frames.sort_unstable();

        Ok(DirectionSet {
            points,
            ortho_edges,
            frames,
        })
    }

    pub fn from_vectors(vectors: &[ExactVec3]) -> Result<DirectionSet, GeometryError> {
        let points = vectors
            .iter()
            .map(ProjectivePoint::new)
            .collect::<Result<Vec<_>, _>>()?;
        DirectionSet::build(points)
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn point(&self, idx: usize) -> &ProjectivePoint {
        &self.points[idx]
    }

    pub fn index_of(&self, p: &ProjectivePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Unordered orthogonal pairs (i, j) with i < j, in lexicographic order.
    pub fn ortho_edges(&self) -> &[(usize, usize)] {
        &self.ortho_edges
    }

    /// Triangles of the orthogonality graph, sorted index triples in
    /// lexicographic order.
    pub fn frames(&self) -> &[[usize; 3]] {
        &self.frames
    }

    pub fn frame(&self, idx: usize) -> Frame {
        let [i, j, k] = self.frames[idx];
        Frame::new(
            self.points[i].clone(),
            self.points[j].clone(),
            self.points[k].clone(),
        )
        .expect("stored frame indices are mutually orthogonal")
    }

    /// Indices of frames containing each point.
    pub fn frames_of_points(&self) -> Vec<Vec<usize>> {
        let mut of = vec![Vec::new(); self.points.len()];
        for (f, tri) in self.frames.iter().enumerate() {
            for &i in tri {
                of[i].push(f);
            }
        }
        of
    }

    /// Whether every coordinate of every point lies in Q.
    pub fn is_rational(&self) -> bool {
        self.points.iter().all(|p| p.is_rational())
    }

    pub fn to_file(&self, name: &str) -> DirectionSetFile {
        let field = if self.is_rational() {
            FieldTag::Rational
        } else {
            FieldTag::Sqrt2
        };
        let directions = self
            .points
            .iter()
            .map(|p| {
                let [x, y, z] = p.rep().coords();
                [x.to_string(), y.to_string(), z.to_string()]
            })
            .collect();
        DirectionSetFile {
            name: name.to_string(),
            field,
            directions,
        }
    }
}

/// Coordinate field declared in a direction-set file.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Rational,
    Sqrt2,
}

/// Serde model of the direction-set JSON format:
/// {"name": ..., "field": "rational"|"sqrt2", "directions": [[s,s,s], ...]}
/// with each s in the exact scalar textual format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DirectionSetFile {
    pub name: String,
    pub field: FieldTag,
    pub directions: Vec<[String; 3]>,
}

/// A direction set read from a file, with any canonicalization warnings.
#[derive(Debug, Clone)]
pub struct LoadedDirectionSet {
    pub name: String,
    pub set: DirectionSet,
    /// One message per direction whose stored form was not canonical.
    pub warnings: Vec<String>,
}

impl DirectionSetFile {
    /// Parses, canonicalizes and validates the listed directions.
    ///
    /// A "rational" field tag with a sqrt2 component anywhere is an error; a
    /// "sqrt2" tag accepts purely rational entries. Non-canonical entries are
    /// accepted with a warning.
    pub fn into_set(self) -> Result<LoadedDirectionSet, GeometryError> {
        let mut points = Vec::with_capacity(self.directions.len());
        let mut warnings = Vec::new();
        for (idx, dir) in self.directions.iter().enumerate() {
            let coords: Vec<ExactScalar> = dir
                .iter()
                .map(|s| s.parse::<ExactScalar>())
                .collect::<Result<_, _>>()
            .map_err(GeometryError::Scalar)?;
            let v = ExactVec3::new(coords[0].clone(), coords[1].clone(), coords[2].clone());
            if self.field == FieldTag::Rational
                && v.coords().iter().any(|c| !c.is_rational())
            {
                return Err(GeometryError::FieldMismatch {
                    name: self.name.clone(),
                    direction: format!("{v}"),
                });
            }
            let p = ProjectivePoint::new(&v)?;
            if p.rep() != &v {
                warnings.push(format!(
                    "direction {idx} {v} stored non-canonically; using {p}"
                ));
            }
            points.push(p);
        }
        let set = DirectionSet::build(points)?;
        Ok(LoadedDirectionSet {
            name: self.name,
            set,
            warnings,
        })
    }
}
