//! Variable numbering shared by every encoding.
//!
//! Edge variables come first: `id(i,j) = i·n − i(i+1)/2 + (j − i)` for
//! `i < j`, occupying `1..=C(n,2)`. Auxiliary blocks follow in the order
//! they are allocated.

use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AuxKind {
    /// `c_{i,j,k} ⟺ e_{i,k} ∧ e_{j,k}`
    Cherry,
    /// `a_{i,j,k} ⟺ ¬e_{i,j} ∧ e_{i,k} ∧ e_{k,j}`
    Angle,
    /// `t_{i,j,k} ⟺ e_{i,j} ∧ e_{i,k} ∧ e_{k,j}`
    Triangle,
    /// `w_{v,{a,b,c}}`: induced claw centred at `v`
    Claw,
}

impl AuxKind {
    pub fn name(self) -> &'static str {
        match self {
            AuxKind::Cherry => "cherry",
            AuxKind::Angle => "angle",
            AuxKind::Triangle => "triangle",
            AuxKind::Claw => "claw",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuxBlock {
    pub kind: AuxKind,
    pub start: u32,
    pub len: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarMap {
    n: usize,
    blocks: Vec<AuxBlock>,
    total: u32,
}

pub(crate) fn binom(n: u64, r: u64) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    (0..r as u128).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// Rank of `k` among `0..n` with `i` and `j` removed.
fn skip_rank(k: usize, i: usize, j: usize) -> usize {
    k - (k > i) as usize - (k > j) as usize
}

impl VarMap {
    pub fn new(n: usize) -> VarMap {
        let total = (n * (n - 1) / 2) as u32;
        VarMap { n, blocks: Vec::new(), total }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> u32 {
        (self.n * (self.n - 1) / 2) as u32
    }

    pub fn var_count(&self) -> u32 {
        self.total
    }

    pub fn blocks(&self) -> &[AuxBlock] {
        &self.blocks
    }

    /// 1-based id of edge `{i, j}`, in either orientation.
    #[inline]
    pub fn edge(&self, i: usize, j: usize) -> u32 {
        debug_assert!(i != j && i < self.n && j < self.n);
        let (i, j) = (i.min(j), i.max(j));
        (i * self.n - i * (i + 1) / 2 + (j - i)) as u32
    }

    /// Inverse of [`VarMap::edge`]; `None` outside the edge block.
    pub fn edge_pair(&self, id: u32) -> Option<(usize, usize)> {
        if id == 0 || id > self.edge_count() {
            return None;
        }
        let mut rest = id as usize;
        for i in 0..self.n {
            let row = self.n - 1 - i;
            if rest <= row {
                return Some((i, i + rest));
            }
            rest -= row;
        }
        None
    }

    /// 0-based index of the pair `{i, j}`.
    pub fn pair_index(&self, i: usize, j: usize) -> usize {
        self.edge(i, j) as usize - 1
    }

    /// Reserves a block of triple variables indexed by pair `{i,j}` and a
    /// third vertex `k`: `C(n,2)·(n−2)` ids.
    pub fn add_triple_block(&mut self, kind: AuxKind) -> AuxBlock {
        let len = (self.n * (self.n - 1) / 2 * (self.n - 2)) as u32;
        self.push(kind, len)
    }

    /// Reserves one claw variable per centre `v` and 3-subset of the others.
    pub fn add_claw_block(&mut self) -> AuxBlock {
        let per = binom(self.n as u64 - 1, 3) as u32;
        self.push(AuxKind::Claw, per * self.n as u32)
    }

    fn push(&mut self, kind: AuxKind, len: u32) -> AuxBlock {
        assert!(self.block(kind).is_none(), "{} block allocated twice", kind.name());
        let b = AuxBlock { kind, start: self.total + 1, len };
        self.total += len;
        self.blocks.push(b);
        b
    }

    pub fn block(&self, kind: AuxKind) -> Option<AuxBlock> {
        self.blocks.iter().copied().find(|b| b.kind == kind)
    }

    /// Id of the triple variable `(kind, {i,j}, k)`.
    pub fn triple(&self, kind: AuxKind, i: usize, j: usize, k: usize) -> u32 {
        let b = self.block(kind).expect("block not allocated");
        debug_assert!(k != i && k != j);
        let (i, j) = (i.min(j), i.max(j));
        b.start + (self.pair_index(i, j) * (self.n - 2) + skip_rank(k, i, j)) as u32
    }

    pub fn cherry(&self, i: usize, j: usize, k: usize) -> u32 {
        self.triple(AuxKind::Cherry, i, j, k)
    }

    pub fn angle(&self, i: usize, j: usize, k: usize) -> u32 {
        self.triple(AuxKind::Angle, i, j, k)
    }

    pub fn triangle(&self, i: usize, j: usize, k: usize) -> u32 {
        self.triple(AuxKind::Triangle, i, j, k)
    }

    /// Id of the claw variable for centre `v` and leaves `a < b < c`.
    pub fn claw(&self, v: usize, a: usize, b: usize, c: usize) -> u32 {
        let blk = self.block(AuxKind::Claw).expect("claw block not allocated");
        debug_assert!(a < b && b < c);
        let r = |x: usize| (x - (x > v) as usize) as u64;
        let rank = binom(r(a), 1) + binom(r(b), 2) + binom(r(c), 3);
        let per = binom(self.n as u64 - 1, 3);
        blk.start + (v as u128 * per + rank) as u32
    }

    /// Comment lines describing the numbering.
    pub fn legend(&self) -> Vec<String> {
        let mut out = vec![
            format!("n = {}", self.n),
            format!(
                "edge e(i,j), 0 <= i < j < n: id = i*n - i*(i+1)/2 + (j-i), ids 1..{}",
                self.edge_count()
            ),
        ];
        for b in &self.blocks {
            let rule = match b.kind {
                AuxKind::Claw => "start + v*C(n-1,3) + colex rank of {a,b,c} with v removed",
                _ => "start + (id(i,j)-1)*(n-2) + rank of k with i,j removed",
            };
            out.push(format!(
                "{} ids {}..{}: {}",
                b.kind.name(),
                b.start,
                b.start + b.len - 1,
                rule
            ));
        }
        out
    }

    /// Full assignment (index 0 unused) describing `g`, with every
    /// auxiliary variable set to the value its definition forces.
    pub fn assignment_for(&self, g: &Graph) -> Vec<bool> {
        assert_eq!(g.n(), self.n, "graph size does not match the variable map");
        let n = self.n;
        let mut a = vec![false; self.total as usize + 1];
        for (i, j) in g.edges() {
            a[self.edge(i, j) as usize] = true;
        }
        for b in &self.blocks {
            if b.kind == AuxKind::Claw {
                for v in 0..n {
                    for x in 0..n {
                        for y in x + 1..n {
                            for z in y + 1..n {
                                if [x, y, z].contains(&v) {
                                    continue;
                                }
                                let on = g.has_edge(v, x)
                                    && g.has_edge(v, y)
                                    && g.has_edge(v, z)
                                    && !g.has_edge(x, y)
                                    && !g.has_edge(x, z)
                                    && !g.has_edge(y, z);
                                a[self.claw(v, x, y, z) as usize] = on;
                            }
                        }
                    }
                }
                continue;
            }
            for i in 0..n {
                for j in i + 1..n {
                    for k in (0..n).filter(|&k| k != i && k != j) {
                        let (ik, jk, ij) = (g.has_edge(i, k), g.has_edge(j, k), g.has_edge(i, j));
                        let v = match b.kind {
                            AuxKind::Cherry => ik && jk,
                            AuxKind::Angle => !ij && ik && jk,
                            AuxKind::Triangle => ij && ik && jk,
                            AuxKind::Claw => unreachable!(),
                        };
                        a[self.triple(b.kind, i, j, k) as usize] = v;
                    }
                }
            }
        }
        a
    }
}
