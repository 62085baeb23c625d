//! DIMACS CNF encoding of the coloring constraints, for cross-validation
//! with external SAT solvers. Variable v = point index v-1 colored 1.
//!
//! The encoding is equivalent to the coloring conditions: an edge clause
//! (i OR j) forbids an orthogonal 0-0 pair, so every frame (whose pairs are
//! all edges) already has at least two 1s, and the frame clause
//! (NOT i OR NOT j OR NOT k) caps it at exactly two.

use std::fmt::Write;

use crate::geometry::DirectionSet;

/// Renders the set as DIMACS CNF text. Comment lines record the set name
/// and the point order so models can be mapped back to colorings.
pub fn export_cnf(ds: &DirectionSet, name: &str) -> String {
    let mut out = String::new();
    writeln!(out, "c set {name}").unwrap();
    for (i, p) in ds.points().iter().enumerate() {
        writeln!(out, "c point {i} = {p}").unwrap();
    }
    let clauses = ds.frames().len() + ds.ortho_edges().len();
    writeln!(out, "p cnf {} {}", ds.len(), clauses).unwrap();
    for &[i, j, k] in ds.frames() {
        writeln!(out, "-{} -{} -{} 0", i + 1, j + 1, k + 1).unwrap();
    }
    for &(i, j) in ds.ortho_edges() {
        writeln!(out, "{} {} 0", i + 1, j + 1).unwrap();
    }
    out
}
