//! Constructors for classical strongly regular families.
//!
//! Vertex orders are fixed: Paley by field-element index, Rook row-major,
//! Triangular and Kneser by lexicographic subset order.

use itertools::Itertools;
use thiserror::Error;

use crate::field::{FieldError, GaloisField};
use crate::graph::{Graph, GraphError};
use crate::params::SrgParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("Paley graphs need q = 1 (mod 4), got {0}")]
    PaleyResidue(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("{family} needs {need}, got {got}")]
    Argument {
        family: &'static str,
        need: &'static str,
        got: String,
    },
}

fn arg_err(family: &'static str, need: &'static str, got: impl ToString) -> FamilyError {
    FamilyError::Argument { family, need, got: got.to_string() }
}

/// Paley graph on `GF(q)`: `u ~ v` iff `u − v` is a nonzero square.
pub fn paley(q: u64) -> Result<Graph, FamilyError> {
    let f = GaloisField::of_order(q)?;
    if q % 4 != 1 {
        return Err(FamilyError::PaleyResidue(q));
    }
    let qr = f.residue_table();
    let elems: Vec<_> = f.elements().collect();
    Ok(Graph::from_fn(q as usize, |i, j| qr[f.sub(elems[i], elems[j]).index()])?)
}

pub fn paley_params(q: u64) -> SrgParams {
    SrgParams { n: q, k: (q - 1) / 2, lambda: (q - 5) / 4, mu: (q - 1) / 4 }
}

/// `m × m` rook's graph: same row or same column.
pub fn rook(m: usize) -> Result<Graph, FamilyError> {
    if m < 2 {
        return Err(arg_err("rook", "m >= 2", m));
    }
    Ok(Graph::from_fn(m * m, |a, b| a / m == b / m || a % m == b % m)?)
}

pub fn rook_params(m: u64) -> SrgParams {
    SrgParams { n: m * m, k: 2 * m - 2, lambda: m - 2, mu: 2 }
}

fn subsets(m: usize, t: usize) -> Vec<Vec<usize>> {
    (0..m).combinations(t).collect()
}

/// Line graph of `K_m`: 2-subsets adjacent when they meet.
pub fn triangular(m: usize) -> Result<Graph, FamilyError> {
    if m < 5 {
        return Err(arg_err("triangular", "m >= 5", m));
    }
    let s = subsets(m, 2);
    Ok(Graph::from_fn(s.len(), |a, b| s[a].iter().any(|x| s[b].contains(x)))?)
}

pub fn triangular_params(m: u64) -> SrgParams {
    SrgParams { n: m * (m - 1) / 2, k: 2 * (m - 2), lambda: m - 2, mu: 4 }
}

/// Kneser graph: `t`-subsets of `0..m` adjacent when disjoint.
pub fn kneser(m: usize, t: usize) -> Result<Graph, FamilyError> {
    if t == 0 || m < 2 * t {
        return Err(arg_err("kneser", "1 <= t and m >= 2t", format!("m={m} t={t}")));
    }
    let s = subsets(m, t);
    Ok(Graph::from_fn(s.len(), |a, b| s[a].iter().all(|x| !s[b].contains(x)))?)
}

/// The Petersen graph: outer 5-cycle, spokes, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::from_edges(10, &edges).expect("valid edge list")
}

/// `K_{1,n−1}` centred at vertex 0.
pub fn star(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Graph::from_edges(n, &edges).expect("valid edge list")
}
