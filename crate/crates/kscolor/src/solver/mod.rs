//! Colorability of direction sets: a coloring assigns 0 or 1 to every
//! direction so that every frame sums to exactly 2 and every orthogonal pair
//! sums to at least 1 (antipodal symmetry is already built into
//! ProjectivePoint). The solver is a plain deterministic DFS with unit
//! propagation; counting is independent brute force so the two can serve as
//! oracles for each other.

mod cnf;

pub use cnf::export_cnf;

use std::fmt;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::DirectionSet;

/// The admissible outcome triples for one frame: two 1s and one 0.
pub const OUTCOME_TRIPLES: [[u8; 3]; 3] = [[1, 1, 0], [1, 0, 1], [0, 1, 1]];

const COUNT_LIMIT: usize = 30;

#[derive(Debug, Error)]
pub enum SolverError {
    #[error("assignment covers {got} points but the set has {expected}")]
    AssignmentLength { expected: usize, got: usize },
    #[error("assignment value {value} at point {index} is not 0 or 1")]
    BadValue { index: usize, value: u8 },
    #[error("coloring is invalid: {}", format_violations(violations))]
    InvalidColoring { violations: Vec<Violation> },
    #[error("set has {size} points, above the exhaustive-enumeration limit of {limit}")]
    TooLarge { size: usize, limit: usize },
    #[error("frame function covers {got} frames but the set has {expected}")]
    FrameFunctionLength { expected: usize, got: usize },
    #[error("frame {frame} carries {triple:?}, not one of (1,1,0), (1,0,1), (0,1,1)")]
    BadTriple { frame: usize, triple: [u8; 3] },
    #[error("frames {frame_a} and {frame_b} disagree at shared point {point}")]
    Noncontextuality {
        frame_a: usize,
        frame_b: usize,
        point: usize,
    },
}

fn format_violations(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(Violation::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

/// A total {0,1} assignment on the points of a DirectionSet.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    values: Vec<u8>,
}

impl Coloring {
    pub fn new(values: Vec<u8>) -> Result<Coloring, SolverError> {
        for (index, &value) in values.iter().enumerate() {
            if value > 1 {
                return Err(SolverError::BadValue { index, value });
            }
        }
        Ok(Coloring { values })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn get(&self, idx: usize) -> u8 {
        self.values[idx]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn to_file(&self, set_name: &str) -> ColoringFile {
        ColoringFile {
            set: set_name.to_string(),
            assignment: self.values.clone(),
        }
    }
}

/// Serde model of the coloring JSON format:
/// {"set": name, "assignment": [0|1, ...]}.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ColoringFile {
    pub set: String,
    pub assignment: Vec<u8>,
}

impl ColoringFile {
    pub fn into_coloring(self) -> Result<Coloring, SolverError> {
        Coloring::new(self.assignment)
    }
}

/// Per-frame outcome triples, indexed like DirectionSet::frames().
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameFunction {
    triples: Vec<[u8; 3]>,
}

impl FrameFunction {
    pub fn new(triples: Vec<[u8; 3]>) -> FrameFunction {
        FrameFunction { triples }
    }

    pub fn triples(&self) -> &[[u8; 3]] {
        &self.triples
    }

    pub fn get(&self, frame: usize) -> [u8; 3] {
        self.triples[frame]
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Colorable,
    Uncolorable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Colorable => write!(f, "COLORABLE"),
            Verdict::Uncolorable => write!(f, "UNCOLORABLE"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveStats {
    /// Decision nodes expanded (propagated assignments not included).
    pub nodes: u64,
    /// Forced assignments attempted by unit propagation.
    pub propagations: u64,
    pub wall: Duration,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub verdict: Verdict,
    pub witness: Option<Coloring>,
    pub stats: SolveStats,
}

/// A violated coloring condition, reported with the offending values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Frame values do not sum to 2.
    Frame { frame: [usize; 3], values: [u8; 3] },
    /// Both ends of an orthogonal pair are 0.
    Edge { edge: (usize, usize), values: (u8, u8) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Frame { frame, values } => write!(
                f,
                "frame ({}, {}, {}) has values ({}, {}, {}) summing to {}",
                frame[0],
                frame[1],
                frame[2],
                values[0],
                values[1],
                values[2],
                values.iter().map(|&v| v as u32).sum::<u32>()
            ),
            Violation::Edge { edge, values } => write!(
                f,
                "orthogonal pair ({}, {}) has values ({}, {})",
                edge.0, edge.1, values.0, values.1
            ),
        }
    }
}

/// Lists every violated frame-sum and edge-sum condition; empty means valid.
pub fn verify_coloring(ds: &DirectionSet, c: &Coloring) -> Result<Vec<Violation>, SolverError> {
    if c.len() != ds.len() {
        return Err(SolverError::AssignmentLength {
            expected: ds.len(),
            got: c.len(),
        });
    }
    let mut violations = Vec::new();
    for &frame in ds.frames() {
        let values = [c.get(frame[0]), c.get(frame[1]), c.get(frame[2])];
        if values.iter().map(|&v| v as u32).sum::<u32>() != 2 {
            violations.push(Violation::Frame { frame, values });
        }
    }
    for &(i, j) in ds.ortho_edges() {
        let values = (c.get(i), c.get(j));
        if values.0 == 0 && values.1 == 0 {
            violations.push(Violation::Edge { edge: (i, j), values });
        }
    }
    Ok(violations)
}

struct Problem<'a> {
    ds: &'a DirectionSet,
    /// Edge partners per point.
    adj: Vec<Vec<usize>>,
    /// Frame indices per point.
    frames_of: Vec<Vec<usize>>,
    /// Static branch order: maximum constraint degree first.
    order: Vec<usize>,
}

impl<'a> Problem<'a> {
    fn new(ds: &'a DirectionSet) -> Problem<'a> {
        let n = ds.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in ds.ortho_edges() {
            adj[i].push(j);
            adj[j].push(i);
        }
        let frames_of = ds.frames_of_points();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&p| (std::cmp::Reverse(adj[p].len() + frames_of[p].len()), p));
        Problem {
            ds,
            adj,
            frames_of,
            order,
        }
    }
}

struct State {
    values: Vec<Option<bool>>,
    trail: Vec<usize>,
    nodes: u64,
    propagations: u64,
}

impl State {
    fn assign(&mut self, p: usize, v: bool) -> bool {
        match self.values[p] {
            Some(cur) => cur == v,
            None => {
                self.values[p] = Some(v);
                self.trail.push(p);
                true
            }
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let p = self.trail.pop().expect("trail underflow");
            self.values[p] = None;
        }
    }
}

/// Processes the trail from `mark` onward, applying the forcing rules:
/// a 0 forces every orthogonal partner to 1 (this covers "a frame with a 0
/// has two 1s", since frame pairs are edges); a frame holding two 1s forces
/// its third point to 0; a frame of three 1s is a conflict.
fn propagate(prob: &Problem, st: &mut State, mark: usize) -> bool {
    let mut head = mark;
    while head < st.trail.len() {
        let p = st.trail[head];
        head += 1;
        let v = st.values[p].expect("trail entries are assigned");
        if !v {
            for idx in 0..prob.adj[p].len() {
                let q = prob.adj[p][idx];
                st.propagations += 1;
                if !st.assign(q, true) {
                    return false;
                }
            }
        } else {
            for idx in 0..prob.frames_of[p].len() {
                let f = prob.frames_of[p][idx];
                let tri = prob.ds.frames()[f];
                let mut ones = 0;
                let mut open = None;
                for &q in &tri {
                    match st.values[q] {
                        Some(true) => ones += 1,
                        Some(false) => {}
                        None => open = Some(q),
                    }
                }
                if ones == 3 {
                    return false;
                }
                if ones == 2 {
                    if let Some(q) = open {
                        st.propagations += 1;
                        if !st.assign(q, false) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn dfs(prob: &Problem, st: &mut State) -> bool {
    let next = prob
        .order
        .iter()
        .copied()
        .find(|&p| st.values[p].is_none());
    let Some(p) = next else {
        return true;
    };
    st.nodes += 1;
    for v in [true, false] {
        let mark = st.trail.len();
        if st.assign(p, v) && propagate(prob, st, mark) && dfs(prob, st) {
            return true;
        }
        st.undo_to(mark);
    }
    false
}

/// Complete search for a coloring. Deterministic: static degree-descending
/// variable order, value 1 tried before 0.
pub fn solve(ds: &DirectionSet) -> SolveReport {
    let start = Instant::now();
    let prob = Problem::new(ds);
    let mut st = State {
        values: vec![None; ds.len()],
        trail: Vec::new(),
        nodes: 0,
        propagations: 0,
    };
    let found = dfs(&prob, &mut st);
    let stats = SolveStats {
        nodes: st.nodes,
        propagations: st.propagations,
        wall: start.elapsed(),
    };
    if found {
        let values = st
            .values
            .iter()
            .map(|v| u8::from(v.expect("search leaves assign every point")))
            .collect();
        let witness = Coloring::new(values).expect("binary values");
        let violations = verify_coloring(ds, &witness).expect("witness is total");
        assert!(
            violations.is_empty(),
            "solver produced an invalid witness: {}",
            format_violations(&violations)
        );
        SolveReport {
            verdict: Verdict::Colorable,
            witness: Some(witness),
            stats,
        }
    } else {
        SolveReport {
            verdict: Verdict::Uncolorable,
            witness: None,
            stats,
        }
    }
}

/// Exact count of valid colorings by brute force over all 2^n assignments.
/// Intentionally shares no logic with `solve` so each can cross-check the
/// other on small instances.
pub fn count_colorings(ds: &DirectionSet) -> Result<u64, SolverError> {
    let n = ds.len();
    if n > COUNT_LIMIT {
        return Err(SolverError::TooLarge {
            size: n,
            limit: COUNT_LIMIT,
        });
    }
    let frame_masks: Vec<u32> = ds
        .frames()
        .iter()
        .map(|&[i, j, k]| (1 << i) | (1 << j) | (1 << k))
        .collect();
    let edge_masks: Vec<u32> = ds
        .ortho_edges()
        .iter()
        .map(|&(i, j)| (1 << i) | (1 << j))
        .collect();
    let mut count = 0;
    for mask in 0u64..(1u64 << n) {
        let mask = mask as u32;
        let frames_ok = frame_masks.iter().all(|&fm| (mask & fm).count_ones() == 2);
        let edges_ok = edge_masks.iter().all(|&em| mask & em != 0);
        if frames_ok && edges_ok {
            count += 1;
        }
    }
    Ok(count)
}

/// Checks triple membership in T and agreement at every shared point.
pub fn verify_frame_function(ds: &DirectionSet, ff: &FrameFunction) -> Result<(), SolverError> {
    if ff.len() != ds.frames().len() {
        return Err(SolverError::FrameFunctionLength {
            expected: ds.frames().len(),
            got: ff.len(),
        });
    }
    for (f, &triple) in ff.triples().iter().enumerate() {
        if !OUTCOME_TRIPLES.contains(&triple) {
            return Err(SolverError::BadTriple { frame: f, triple });
        }
    }
    let mut assigned: Vec<Option<(u8, usize)>> = vec![None; ds.len()];
    for (f, &[i, j, k]) in ds.frames().iter().enumerate() {
        let triple = ff.get(f);
        for (slot, point) in [i, j, k].into_iter().enumerate() {
            match assigned[point] {
                None => assigned[point] = Some((triple[slot], f)),
                Some((value, first)) => {
                    if value != triple[slot] {
                        return Err(SolverError::Noncontextuality {
                            frame_a: first,
                            frame_b: f,
                            point,
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// Reads the frame-wise outcome triples off a valid coloring.
pub fn coloring_to_frame_function(
    ds: &DirectionSet,
    c: &Coloring,
) -> Result<FrameFunction, SolverError> {
    let violations = verify_coloring(ds, c)?;
    if !violations.is_empty() {
        return Err(SolverError::InvalidColoring { violations });
    }
    let triples = ds
        .frames()
        .iter()
        .map(|&[i, j, k]| [c.get(i), c.get(j), c.get(k)])
        .collect();
    Ok(FrameFunction::new(triples))
}

/// Rebuilds a point coloring from frame-wise values. Points lying in no
/// frame are assigned 1, which never violates an orthogonal-pair condition.
/// The result restricted to frame-covered points inverts
/// `coloring_to_frame_function`; its global validity additionally depends on
/// orthogonal pairs that cross frame boundaries.
pub fn frame_function_to_coloring(
    ds: &DirectionSet,
    ff: &FrameFunction,
) -> Result<Coloring, SolverError> {
    verify_frame_function(ds, ff)?;
    let mut values = vec![1u8; ds.len()];
    for (f, &[i, j, k]) in ds.frames().iter().enumerate() {
        let triple = ff.get(f);
        values[i] = triple[0];
        values[j] = triple[1];
        values[k] = triple[2];
    }
    Coloring::new(values)
}
