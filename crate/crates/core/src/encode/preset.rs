//! Forced edge assignments: star symmetry breaking and Paley(9) blocks.

use std::collections::BTreeMap;

use super::EncodeError;
use crate::families::paley;
use crate::graph::Graph;
use crate::params::SrgParams;

/// Edge variables fixed before search, in insertion order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Preset {
    order: Vec<((usize, usize), bool)>,
    index: BTreeMap<(usize, usize), bool>,
}

impl Preset {
    pub fn new() -> Self {
        Self::default()
    }

    /// Forces pair `{i, j}` to `value`. Repeating an assignment is a no-op;
    /// contradicting one is an error.
    pub fn assign(&mut self, i: usize, j: usize, value: bool) -> Result<(), EncodeError> {
        if i == j {
            return Err(EncodeError::Preset(format!("self pair ({i}, {i})")));
        }
        let key = (i.min(j), i.max(j));
        match self.index.get(&key) {
            Some(&v) if v == value => Ok(()),
            Some(_) => Err(EncodeError::PresetConflict(key.0, key.1)),
            None => {
                self.index.insert(key, value);
                self.order.push((key, value));
                Ok(())
            }
        }
    }

    pub fn assignments(&self) -> &[((usize, usize), bool)] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<bool> {
        self.index.get(&(i.min(j), i.max(j))).copied()
    }

    /// Union of two presets; conflicting pairs are an error.
    pub fn merged(&self, other: &Preset) -> Result<Preset, EncodeError> {
        let mut out = self.clone();
        for &((i, j), v) in &other.order {
            out.assign(i, j, v)?;
        }
        Ok(out)
    }

    /// Every pair must lie inside `0..n`.
    pub fn check(&self, n: usize) -> Result<(), EncodeError> {
        match self.order.iter().find(|((_, j), _)| *j >= n) {
            Some(((i, j), _)) => Err(EncodeError::Preset(format!("pair ({i}, {j}) outside 0..{n}"))),
            None => Ok(()),
        }
    }

    /// First assignment that `g` disagrees with.
    pub fn first_violation(&self, g: &Graph) -> Option<(usize, usize)> {
        self.order
            .iter()
            .find(|&&((i, j), v)| g.has_edge(i, j) != v)
            .map(|&(pair, _)| pair)
    }

    /// Vertex 0 adjacent to exactly `1..=k`.
    pub fn star_normalization(n: usize, k: usize) -> Preset {
        let mut p = Preset::new();
        for j in 1..n {
            p.assign(0, j, j <= k).expect("fresh pairs");
        }
        p
    }
}

/// Non-matching pairs `{i, j}` of `1..=k` in lexicographic order, where the
/// matching is `{1,2}, {3,4}, …`. Label `t` belongs to vertex `k + 1 + t`.
pub fn star_labels(k: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=k {
        for j in i + 1..=k {
            if !(i % 2 == 1 && j == i + 1) {
                out.push((i, j));
            }
        }
    }
    out
}

/// One-vertex view for λ = 1, μ = 2: vertex 0 sees `1..=k`, whose
/// neighbourhood is the matching `{2i−1, 2i}`; every remaining vertex is
/// labelled by a non-matching pair of `N(0)` and adjacent to exactly that
/// pair within `N[0]`.
pub fn symmetry_break_star(p: &SrgParams) -> Result<Preset, EncodeError> {
    let (n, k) = (p.n as usize, p.k as usize);
    if p.lambda != 1 || p.mu != 2 || k % 2 != 0 || n != k * k / 2 + 1 {
        return Err(EncodeError::Preset(format!("star labelling needs lambda=1, mu=2, n=k^2/2+1; got {p}")));
    }
    let mut pre = Preset::star_normalization(n, k);
    for i in 1..=k {
        for j in i + 1..=k {
            pre.assign(i, j, i % 2 == 1 && j == i + 1)?;
        }
    }
    let labels = star_labels(k);
    debug_assert_eq!(labels.len(), n - k - 1);
    for (t, &(a, b)) in labels.iter().enumerate() {
        let v = k + 1 + t;
        for u in 1..=k {
            pre.assign(u, v, u == a || u == b)?;
        }
    }
    Ok(pre)
}

/// Copies of Paley(9) on the blocks `[9b, 9b+9)` for `b < count`.
pub fn preset_paley9_blocks(count: usize, n: usize) -> Result<Preset, EncodeError> {
    if 9 * count > n {
        return Err(EncodeError::Preset(format!("{count} blocks of 9 do not fit in {n} vertices")));
    }
    let p9 = paley(9).expect("9 is a prime power");
    let mut pre = Preset::new();
    for b in 0..count {
        for i in 0..9 {
            for j in i + 1..9 {
                pre.assign(9 * b + i, 9 * b + j, p9.has_edge(i, j))?;
            }
        }
    }
    Ok(pre)
}
