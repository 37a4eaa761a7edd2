//! Local structure: triangles, neighbourhood components and claws.

use super::{Graph, GraphError};

/// Degree used by the claw-count identity for the `(99,14,1,2)` case.
pub const CLAW_DEGREE: u64 = 14;

/// A connected component of the subgraph induced by `N(v)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodComponent {
    pub vertices: Vec<usize>,
    pub complete: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodComponents {
    pub center: usize,
    /// Ordered by smallest member.
    pub components: Vec<NeighborhoodComponent>,
}

impl NeighborhoodComponents {
    /// Component sizes, ascending.
    pub fn sizes(&self) -> Vec<usize> {
        let mut s: Vec<_> = self.components.iter().map(|c| c.vertices.len()).collect();
        s.sort_unstable();
        s
    }

    pub fn all_complete(&self) -> bool {
        self.components.iter().all(|c| c.complete)
    }

    /// `[c1, c2, c3, c4]`: number of components of each size 1..=4.
    /// `None` if a component is larger than four vertices.
    pub fn size_counts(&self) -> Option<[u64; 4]> {
        let mut c = [0u64; 4];
        for s in self.sizes() {
            *c.get_mut(s.checked_sub(1)?)? += 1;
        }
        Some(c)
    }
}

fn binom(n: u64, r: u64) -> u64 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl Graph {
    /// All triangles `[a, b, c]` with `a < b < c`, in lexicographic order.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in self.neighbors(a).filter(|&b| b > a) {
                for c in self.neighbors(b).filter(|&c| c > b) {
                    if self.has_edge(a, c) {
                        out.push([a, b, c]);
                    }
                }
            }
        }
        out
    }

    /// One vertex per triangle, triangles adjacent when they share a vertex.
    ///
    /// Requires every edge to lie in exactly one triangle. Output vertex `t`
    /// is the `t`-th triangle in lexicographic order of its vertex triple.
    pub fn triangular_view(&self) -> Result<Graph, GraphError> {
        for (i, j) in self.edges() {
            let t = self.common_count(i, j);
            if t != 1 {
                return Err(GraphError::NotLambdaOne(i, j, t));
            }
        }
        let tris = self.triangles();
        let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); self.n];
        for (t, tri) in tris.iter().enumerate() {
            for &v in tri {
                by_vertex[v].push(t);
            }
        }
        let mut edges = Vec::new();
        for incident in &by_vertex {
            for (x, &s) in incident.iter().enumerate() {
                for &t in &incident[x + 1..] {
                    edges.push((s, t));
                }
            }
        }
        Graph::from_edges(tris.len(), &edges)
    }

    /// Components of the subgraph induced by `N(v)`.
    pub fn neighborhood_components(&self, v: usize) -> NeighborhoodComponents {
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        let mut seen = vec![false; self.n];
        let mut components = Vec::new();
        for &start in &nbrs {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let x = comp[i];
                for &y in &nbrs {
                    if !seen[y] && self.has_edge(x, y) {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
                i += 1;
            }
            comp.sort_unstable();
            let complete = comp
                .iter()
                .enumerate()
                .all(|(a, &x)| comp[a + 1..].iter().all(|&y| self.has_edge(x, y)));
            components.push(NeighborhoodComponent { vertices: comp, complete });
        }
        NeighborhoodComponents { center: v, components }
    }

    /// Induced claws `K_{1,3}` centred at `v`: independent triples in `N(v)`.
    pub fn count_claws_at(&self, v: usize) -> u64 {
        let nbrs: Vec<usize> = self.neighbors(v).collect();
        let mut count = 0;
        for (x, &a) in nbrs.iter().enumerate() {
            for (y, &b) in nbrs.iter().enumerate().skip(x + 1) {
                if self.has_edge(a, b) {
                    continue;
                }
                count += nbrs[y + 1..]
                    .iter()
                    .filter(|&&c| !self.has_edge(a, c) && !self.has_edge(b, c))
                    .count() as u64;
            }
        }
        count
    }
}

/// Claws at a vertex of degree 14 whose neighbourhood is a disjoint union of
/// `c[i]` cliques of size `i + 1`:
/// `C(14,3) − 12·c2 − 11·3c3 − 10·6c4 − c3 − 4c4`.
pub fn claw_count_formula(c: [u64; 4]) -> Result<u64, GraphError> {
    let [c1, c2, c3, c4] = c;
    let covered = c1 + 2 * c2 + 3 * c3 + 4 * c4;
    if covered != CLAW_DEGREE {
        return Err(GraphError::BadComponentCounts { expected: CLAW_DEGREE, got: covered });
    }
    let total = binom(CLAW_DEGREE, 3);
    Ok(total - 12 * c2 - 11 * 3 * c3 - 10 * 6 * c4 - c3 - 4 * c4)
}

/// Neighbourhood shapes admissible for a 14-regular, μ = 2 graph on 99
/// vertices: cliques covering 14 vertices and carrying exactly 7 edges.
pub fn admissible_claw_shapes() -> Vec<[u64; 4]> {
    let mut out = Vec::new();
    for c4 in 0..=3 {
        for c3 in 0..=4 {
            for c2 in 0..=7 {
                let used = 2 * c2 + 3 * c3 + 4 * c4;
                if used > CLAW_DEGREE || c2 + 3 * c3 + 6 * c4 != 7 {
                    continue;
                }
                out.push([CLAW_DEGREE - used, c2, c3, c4]);
            }
        }
    }
    out
}
