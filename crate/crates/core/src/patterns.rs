//! Paley(9) substructure: pair labels around a vertex, the local Paley(9)
//! pattern, and induced Paley(9) subgraphs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::encode::star_labels;
use crate::families::paley;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("edge ({0}, {1}) lies in {2} triangles, expected one")]
    NotLambdaOne(usize, usize, usize),
    #[error("vertex {vertex} outside N[{center}] meets N({center}) in {common} vertices {detail}")]
    BadOuterVertex { center: usize, vertex: usize, common: usize, detail: &'static str },
    #[error("pair ({0}, {1}) of the neighbourhood is attached to {2} outer vertices, expected one")]
    BadPair(usize, usize, usize),
}

/// Vertex outside `N[v]` and the non-adjacent pair of `N(v)` it attaches to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairLabel {
    pub vertex: usize,
    pub pair: (usize, usize),
}

/// Partner of every vertex of `N(v)` in the matching `N(v)` must form.
fn matching(g: &Graph, v: usize) -> Result<Vec<(usize, usize)>, PatternError> {
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    let mut out = Vec::new();
    for &i in &nbrs {
        let inside: Vec<usize> = g.neighbors(i).filter(|&x| g.has_edge(v, x)).collect();
        if inside.len() != 1 {
            return Err(PatternError::NotLambdaOne(v.min(i), v.max(i), inside.len()));
        }
        out.push((i, inside[0]));
    }
    Ok(out)
}

/// Labels every vertex of `V − N[v]` by the unique non-adjacent pair of
/// `N(v)` it is joined to.
pub fn pair_labels(g: &Graph, v: usize) -> Result<Vec<PairLabel>, PatternError> {
    matching(g, v)?;
    let mut labels = Vec::new();
    let mut hits = std::collections::BTreeMap::new();
    for u in (0..g.n()).filter(|&u| u != v && !g.has_edge(u, v)) {
        let common: Vec<usize> = g.neighbors(u).filter(|&x| g.has_edge(v, x)).collect();
        let bad = |detail| PatternError::BadOuterVertex { center: v, vertex: u, common: common.len(), detail };
        if common.len() != 2 {
            return Err(bad("(expected 2)"));
        }
        if g.has_edge(common[0], common[1]) {
            return Err(bad("(an adjacent pair)"));
        }
        let pair = (common[0], common[1]);
        *hits.entry(pair).or_insert(0usize) += 1;
        labels.push(PairLabel { vertex: u, pair });
    }
    let nbrs: Vec<usize> = g.neighbors(v).collect();
    for (x, &i) in nbrs.iter().enumerate() {
        for &j in &nbrs[x + 1..] {
            if !g.has_edge(i, j) {
                let c = hits.get(&(i, j)).copied().unwrap_or(0);
                if c != 1 {
                    return Err(PatternError::BadPair(i, j, c));
                }
            }
        }
    }
    Ok(labels)
}

/// Permutation (old → new) putting `v` at 0, the matching edges of `N(v)`
/// at `{1,2}, {3,4}, …` and each outer vertex at `k + 1 + t`, where `t`
/// indexes its pair label among the non-matching pairs in lexicographic
/// order. The relabelled graph satisfies the star preset.
pub fn star_relabeling(g: &Graph, v: usize) -> Result<Vec<usize>, PatternError> {
    let m = matching(g, v)?;
    let labels = pair_labels(g, v)?;
    let k = m.len();
    let mut perm = vec![usize::MAX; g.n()];
    perm[v] = 0;
    let mut next = 1;
    for &(i, j) in &m {
        if i < j {
            perm[i] = next;
            perm[j] = next + 1;
            next += 2;
        }
    }
    let order: std::collections::BTreeMap<(usize, usize), usize> =
        star_labels(k).into_iter().enumerate().map(|(t, p)| (p, t)).collect();
    for l in labels {
        let (a, b) = (perm[l.pair.0], perm[l.pair.1]);
        perm[l.vertex] = k + 1 + order[&(a.min(b), a.max(b))];
    }
    Ok(perm)
}

/// Exact isomorphism test by backtracking with degree pruning; intended for
/// small graphs.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.n() != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (dg, dh) = (g.degrees(), h.degrees());
    let mut sg = dg.clone();
    let mut sh = dh.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return false;
    }
    fn extend(g: &Graph, h: &Graph, dg: &[usize], dh: &[usize], map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let x = map.len();
        if x == g.n() {
            return true;
        }
        for y in 0..h.n() {
            if used[y] || dg[x] != dh[y] {
                continue;
            }
            if (0..x).all(|a| g.has_edge(a, x) == h.has_edge(map[a], y)) {
                used[y] = true;
                map.push(y);
                if extend(g, h, dg, dh, map, used) {
                    return true;
                }
                map.pop();
                used[y] = false;
            }
        }
        false
    }
    extend(g, h, &dg, &dh, &mut Vec::with_capacity(g.n()), &mut vec![false; h.n()])
}

fn paley9() -> Graph {
    paley(9).expect("9 is a prime power")
}

/// Outcome of the pattern check at one vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternCheck {
    pub holds: bool,
    /// First pair of matching edges whose 9-vertex set is not Paley(9).
    pub first_failure: Option<((usize, usize), (usize, usize))>,
    pub pairs_checked: usize,
}

/// For every two distinct matching edges `{v1,v2}`, `{v3,v4}` of `N(v)`,
/// tests whether `v`, `v1..v4` and the four outer vertices labelled
/// `{vi, vj}` (one end from each edge) induce Paley(9).
pub fn check_paley9_pattern(g: &Graph, v: usize) -> Result<PatternCheck, PatternError> {
    let m = matching(g, v)?;
    let labels = pair_labels(g, v)?;
    let by_pair: std::collections::BTreeMap<(usize, usize), usize> =
        labels.iter().map(|l| (l.pair, l.vertex)).collect();
    let lab = |a: usize, b: usize| by_pair[&(a.min(b), a.max(b))];
    let edges: Vec<(usize, usize)> = m.into_iter().filter(|&(i, j)| i < j).collect();
    let target = paley9();
    let mut checked = 0;
    for (x, &(v1, v2)) in edges.iter().enumerate() {
        for &(v3, v4) in &edges[x + 1..] {
            checked += 1;
            let set = [v, v1, v2, v3, v4, lab(v1, v3), lab(v1, v4), lab(v2, v3), lab(v2, v4)];
            let sub = g.induced(&set).expect("nine distinct vertices");
            if !is_isomorphic(&sub, &target) {
                return Ok(PatternCheck { holds: false, first_failure: Some(((v1, v2), (v3, v4))), pairs_checked: checked });
            }
        }
    }
    Ok(PatternCheck { holds: true, first_failure: None, pairs_checked: checked })
}

fn common(g: &Graph, a: usize, b: usize) -> Vec<usize> {
    g.neighbors(a).filter(|&x| g.has_edge(b, x)).collect()
}

/// Every 9-vertex set inducing Paley(9), sorted.
///
/// Paley(9) is the 3×3 rook graph. Each triangle `{a,b,c}` is taken as a
/// row; the column through `a` is a triangle `{a, x, y}` with `x, y`
/// outside `N(b) ∪ N(c)`, and the rest of the grid is forced to common
/// neighbours of a row vertex and a column vertex.
pub fn find_paley9_subgraphs(g: &Graph) -> Vec<Vec<usize>> {
    let target = paley9();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    for [a, b, c] in g.triangles() {
        let col: Vec<usize> = g
            .neighbors(a)
            .filter(|&x| x != b && x != c && !g.has_edge(b, x) && !g.has_edge(c, x))
            .collect();
        for (i, &x) in col.iter().enumerate() {
            for &y in &col[i + 1..] {
                if !g.has_edge(x, y) {
                    continue;
                }
                let (bx, by, cx, cy) = (common(g, b, x), common(g, b, y), common(g, c, x), common(g, c, y));
                for &p in bx.iter().filter(|&&p| p != a) {
                    for &q in by.iter().filter(|&&q| q != a) {
                        for &r in cx.iter().filter(|&&r| r != a) {
                            for &s in cy.iter().filter(|&&s| s != a) {
                                let mut set = vec![a, b, c, x, y, p, q, r, s];
                                set.sort_unstable();
                                set.dedup();
                                if set.len() != 9 || found.contains(&set) {
                                    continue;
                                }
                                if is_isomorphic(&g.induced(&set).expect("distinct"), &target) {
                                    found.insert(set);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::symmetry_break_star;
    use crate::families::{petersen, rook};
    use crate::params::SrgParams;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    #[test]
    fn labels_on_paley9() {
        let g = paley9();
        for v in 0..9 {
            let l = pair_labels(&g, v).unwrap();
            assert_eq!(l.len(), 4);
            let pairs: BTreeSet<_> = l.iter().map(|x| x.pair).collect();
            assert_eq!(pairs.len(), 4);
        }
        assert!(matches!(pair_labels(&petersen(), 0), Err(PatternError::NotLambdaOne(_, _, 0))));
    }

    #[test]
    fn pattern_on_paley9() {
        for v in 0..9 {
            let c = check_paley9_pattern(&paley9(), v).unwrap();
            assert!(c.holds);
            assert_eq!(c.pairs_checked, 1);
        }
        assert!(check_paley9_pattern(&petersen(), 0).is_err());
    }

    #[test]
    fn finder_small_cases() {
        assert_eq!(find_paley9_subgraphs(&paley9()), vec![(0..9).collect::<Vec<_>>()]);
        assert!(find_paley9_subgraphs(&petersen()).is_empty());
        // the 4×4 rook graph holds C(4,3)² = 16 induced 3×3 grids
        assert_eq!(find_paley9_subgraphs(&rook(4).unwrap()).len(), 16);
    }

    /// Brute force over all 9! bijections.
    fn iso_by_permutations(g: &Graph, h: &Graph) -> bool {
        use itertools::Itertools;
        (0..9).permutations(9).any(|p| g.edges().iter().all(|&(i, j)| h.has_edge(p[i], p[j])) && g.edge_count() == h.edge_count())
    }

    #[test]
    fn isomorphism_against_permutation_search() {
        let target = paley9();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for t in 0..20 {
            let mut perm: Vec<usize> = (0..9).collect();
            perm.shuffle(&mut rng);
            let mut g = target.relabel(&perm).unwrap();
            if t % 2 == 1 {
                // break it: swap one edge for a non-edge
                let (i, j) = g.edges()[t % 18];
                let (a, b) = (0..9).flat_map(|a| (a + 1..9).map(move |b| (a, b))).find(|&(a, b)| !g.has_edge(a, b)).unwrap();
                let mut e = g.edges();
                e.retain(|&x| x != (i, j));
                e.push((a, b));
                g = Graph::from_edges(9, &e).unwrap();
            }
            assert_eq!(is_isomorphic(&g, &target), iso_by_permutations(&g, &target), "case {t}");
            assert_eq!(is_isomorphic(&g, &target), t % 2 == 0);
        }
    }

    #[test]
    fn relabeling_matches_star_preset() {
        let g = paley9();
        let pre = symmetry_break_star(&SrgParams::new(9, 4, 1, 2).unwrap()).unwrap();
        for v in 0..9 {
            let h = g.relabel(&star_relabeling(&g, v).unwrap()).unwrap();
            assert_eq!(pre.first_violation(&h), None);
        }
    }
}
