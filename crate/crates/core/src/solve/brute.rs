//! Independent oracle: row-by-row backtracking over adjacency matrices.
//!
//! Vertex 0 is pinned to `N(0) = {1..k}`, so results are counted up to
//! that normalisation only.

use itertools::Itertools;
use thiserror::Error;

use crate::graph::Graph;
use crate::params::SrgParams;

pub const BRUTE_MAX_N: u64 = 13;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("brute force handles n <= {BRUTE_MAX_N}, got {0}")]
pub struct TooLarge(pub u64);

struct Search {
    n: usize,
    k: usize,
    lambda: u32,
    mu: u32,
    adj: Vec<u32>,
    out: Vec<Graph>,
}

impl Search {
    fn target(&self, a: usize, b: usize) -> u32 {
        if self.adj[a] >> b & 1 == 1 {
            self.lambda
        } else {
            self.mu
        }
    }

    /// Fills row `i` (pairs `(i, j)`, `j > i`); rows before it are final.
    fn row(&mut self, i: usize) {
        let n = self.n;
        if i == n {
            let edges: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
                .filter(|&(a, b)| self.adj[a] >> b & 1 == 1)
                .collect();
            self.out.push(Graph::from_edges(n, &edges).expect("valid"));
            return;
        }
        let have = self.adj[i].count_ones() as usize;
        if have > self.k {
            return;
        }
        let need = self.k - have;
        let free: Vec<usize> = (i + 1..n).filter(|&j| (self.adj[j].count_ones() as usize) < self.k).collect();
        if free.len() < need {
            return;
        }
        for pick in free.into_iter().combinations(need) {
            for &j in &pick {
                self.adj[i] |= 1 << j;
                self.adj[j] |= 1 << i;
            }
            // row i is now final, so every pair (a, i) with a < i is decided
            let ok = (0..i).all(|a| (self.adj[a] & self.adj[i]).count_ones() == self.target(a, i));
            if ok {
                self.row(i + 1);
            }
            for &j in &pick {
                self.adj[i] &= !(1 << j);
                self.adj[j] &= !(1 << i);
            }
        }
    }
}

/// Every `(n,k,λ,μ)` graph with `N(0) = {1..k}`, in search order.
pub fn brute_force_srg(p: &SrgParams) -> Result<Vec<Graph>, TooLarge> {
    if p.n > BRUTE_MAX_N {
        return Err(TooLarge(p.n));
    }
    let (n, k) = (p.n as usize, p.k as usize);
    let mut s = Search { n, k, lambda: p.lambda as u32, mu: p.mu as u32, adj: vec![0; n], out: Vec::new() };
    for j in 1..=k {
        s.adj[0] |= 1 << j;
        s.adj[j] |= 1;
    }
    s.row(1);
    Ok(s.out)
}
