use std::collections::BTreeMap;

use super::{Graph, GraphError};
use crate::params::SrgParams;

/// First pair found violating a λ or μ condition, with its observed count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub pair: (usize, usize),
    pub observed: usize,
}

/// Outcome of checking a graph against `(n, k, λ, μ)`.
///
/// The combinatorial scan fills `is_regular`, `lambda_ok` and `mu_ok`; the
/// integer matrix identity `A² = kI + λA + μ(J − I − A)` is evaluated
/// separately into `matrix_identity_ok`. The two always agree on a correct
/// implementation, see [`VerifyReport::routes_agree`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    /// Every degree equals `k`.
    pub is_regular: bool,
    /// degree -> number of vertices with that degree
    pub degrees: BTreeMap<usize, usize>,
    pub lambda_ok: bool,
    pub lambda_violation: Option<Violation>,
    pub mu_ok: bool,
    pub mu_violation: Option<Violation>,
    pub is_connected: bool,
    pub complement_connected: bool,
    pub matrix_identity_ok: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.is_regular && self.lambda_ok && self.mu_ok && self.matrix_identity_ok
    }

    pub fn routes_agree(&self) -> bool {
        self.matrix_identity_ok == (self.is_regular && self.lambda_ok && self.mu_ok)
    }

    /// Disconnected graph or disconnected complement.
    pub fn is_trivial(&self) -> bool {
        !self.is_connected || !self.complement_connected
    }

    fn degenerate(g: &Graph) -> Self {
        VerifyReport {
            is_regular: false,
            degrees: degree_multiset(g),
            lambda_ok: false,
            lambda_violation: None,
            mu_ok: false,
            mu_violation: None,
            is_connected: false,
            complement_connected: false,
            matrix_identity_ok: false,
        }
    }
}

fn degree_multiset(g: &Graph) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for d in g.degrees() {
        *m.entry(d).or_insert(0) += 1;
    }
    m
}

/// Checks `g` against `p` by a pairwise scan and, independently, by the
/// matrix identity over the integers.
pub fn verify_srg(g: &Graph, p: &SrgParams) -> Result<VerifyReport, GraphError> {
    if g.n() as u64 != p.n {
        return Err(GraphError::DimensionMismatch {
            graph: g.n(),
            params: p.n as usize,
        });
    }
    if g.n() < 3 {
        return Ok(VerifyReport::degenerate(g));
    }
    let (k, lambda, mu) = (p.k as usize, p.lambda as usize, p.mu as usize);
    let n = g.n();

    let degrees = degree_multiset(g);
    let is_regular = degrees.len() == 1 && degrees.contains_key(&k);

    let mut lambda_violation = None;
    let mut mu_violation = None;
    for i in 0..n {
        for j in i + 1..n {
            let c = g.common_count(i, j);
            if g.has_edge(i, j) {
                if c != lambda && lambda_violation.is_none() {
                    lambda_violation = Some(Violation { pair: (i, j), observed: c });
                }
            } else if c != mu && mu_violation.is_none() {
                mu_violation = Some(Violation { pair: (i, j), observed: c });
            }
        }
    }

    let is_connected = g.is_connected();
    let complement_connected = g.complement().is_connected();

    Ok(VerifyReport {
        is_regular,
        degrees,
        lambda_ok: lambda_violation.is_none(),
        lambda_violation,
        mu_ok: mu_violation.is_none(),
        mu_violation,
        is_connected,
        complement_connected,
        matrix_identity_ok: matrix_identity_holds(g, k, lambda, mu),
    })
}

/// Squares the 0/1 adjacency matrix row by row (adding neighbour rows) and
/// compares every entry with `kI + λA + μ(J − I − A)`.
fn matrix_identity_holds(g: &Graph, k: usize, lambda: usize, mu: usize) -> bool {
    let n = g.n();
    let dense: Vec<Vec<u32>> = (0..n)
        .map(|i| (0..n).map(|j| g.has_edge(i, j) as u32).collect())
        .collect();
    let mut square_row = vec![0u32; n];
    for (i, row_i) in dense.iter().enumerate() {
        square_row.iter_mut().for_each(|x| *x = 0);
        for (l, &a_il) in row_i.iter().enumerate() {
            if a_il == 0 {
                continue;
            }
            for (acc, &a_lj) in square_row.iter_mut().zip(&dense[l]) {
                *acc += a_lj;
            }
        }
        for (j, &got) in square_row.iter().enumerate() {
            let want = if i == j {
                k
            } else if row_i[j] == 1 {
                lambda
            } else {
                mu
            };
            if got as usize != want {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{petersen, star};

    fn params(n: u64, k: u64, l: u64, m: u64) -> SrgParams {
        SrgParams { n, k, lambda: l, mu: m }
    }

    #[test]
    fn petersen_passes() {
        let r = verify_srg(&petersen(), &params(10, 3, 0, 1)).unwrap();
        assert!(r.passed());
        assert!(r.is_connected && r.complement_connected);
        assert_eq!(r.degrees, BTreeMap::from([(3, 10)]));
    }

    #[test]
    fn petersen_wrong_lambda() {
        let r = verify_srg(&petersen(), &params(10, 3, 1, 1)).unwrap();
        assert!(!r.lambda_ok);
        assert!(r.mu_ok && r.is_regular);
        let v = r.lambda_violation.unwrap();
        assert_eq!(v.observed, 0);
        assert!(petersen().has_edge(v.pair.0, v.pair.1));
        assert!(!r.matrix_identity_ok);
        assert!(r.routes_agree());
    }

    #[test]
    fn star_is_not_regular() {
        let r = verify_srg(&star(10), &params(10, 3, 0, 1)).unwrap();
        assert!(r.lambda_ok);
        assert!(r.mu_ok);
        assert!(!r.is_regular);
        assert!(!r.matrix_identity_ok);
        assert_eq!(r.degrees, BTreeMap::from([(1, 9), (9, 1)]));
        assert!(!r.complement_connected);
    }

    #[test]
    fn dimension_mismatch() {
        let e = verify_srg(&petersen(), &params(9, 4, 1, 2)).unwrap_err();
        assert_eq!(e, GraphError::DimensionMismatch { graph: 10, params: 9 });
    }

    #[test]
    fn tiny_graphs_get_all_false_report() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let r = verify_srg(&g, &params(2, 1, 0, 0)).unwrap();
        assert!(!r.is_regular && !r.lambda_ok && !r.mu_ok && !r.matrix_identity_ok);
        assert!(!r.is_connected);
    }
}
