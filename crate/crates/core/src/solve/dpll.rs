//! Small DPLL: two watched literals, chronological backtracking, branching
//! on the lowest unassigned variable with `true` first. No clause learning.

use std::time::Instant;

use crate::encode::CnfFormula;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DpllResult {
    Sat(Vec<bool>),
    Unsat,
    /// Decision limit or deadline reached.
    Unknown,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct DpllStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

// literal encoding: 2·v for v, 2·v + 1 for ¬v
#[inline]
fn lit(l: i32) -> usize {
    (l.unsigned_abs() as usize) << 1 | (l < 0) as usize
}

#[inline]
fn var(l: usize) -> usize {
    l >> 1
}

struct Frame {
    trail_len: usize,
    lit: usize,
    flipped: bool,
}

pub struct Dpll {
    nvars: usize,
    clauses: Vec<Vec<usize>>,
    watches: Vec<Vec<usize>>,
    units: Vec<usize>,
    trivially_unsat: bool,
    /// 0 unassigned, 1 true, 2 false
    value: Vec<u8>,
    trail: Vec<usize>,
    qhead: usize,
    frames: Vec<Frame>,
    cursor: usize,
    deadline: Option<Instant>,
    pub stats: DpllStats,
}

impl Dpll {
    pub fn new(f: &CnfFormula) -> Dpll {
        let nvars = f.var_count as usize;
        let mut s = Dpll {
            nvars,
            clauses: Vec::with_capacity(f.clauses.len()),
            watches: vec![Vec::new(); 2 * nvars + 2],
            units: Vec::new(),
            trivially_unsat: false,
            value: vec![0; nvars + 1],
            trail: Vec::new(),
            qhead: 0,
            frames: Vec::new(),
            cursor: 1,
            deadline: None,
            stats: DpllStats::default(),
        };
        for c in &f.clauses {
            let mut c: Vec<usize> = c.iter().map(|&l| lit(l)).collect();
            c.sort_unstable();
            c.dedup();
            match c.len() {
                0 => s.trivially_unsat = true,
                1 => s.units.push(c[0]),
                _ => {
                    let idx = s.clauses.len();
                    s.watches[c[0] ^ 1].push(idx);
                    s.watches[c[1] ^ 1].push(idx);
                    s.clauses.push(c);
                }
            }
        }
        s
    }

    #[inline]
    fn lit_value(&self, l: usize) -> u8 {
        // 1 true, 2 false, 0 unassigned
        match self.value[var(l)] {
            0 => 0,
            v => {
                if (v == 1) == (l & 1 == 0) {
                    1
                } else {
                    2
                }
            }
        }
    }

    /// Assigns `l` true; false if it is already false.
    fn enqueue(&mut self, l: usize) -> bool {
        match self.lit_value(l) {
            1 => true,
            2 => false,
            _ => {
                self.value[var(l)] = if l & 1 == 0 { 1 } else { 2 };
                self.trail.push(l);
                true
            }
        }
    }

    /// Unit propagation; false on conflict.
    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;
            // clauses watching ¬p are registered under p
            let mut ws = std::mem::take(&mut self.watches[p]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let false_lit = p ^ 1;
                let c = &mut self.clauses[ci];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if self.lit_value(first) == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..self.clauses[ci].len() {
                    let l = self.clauses[ci][k];
                    if self.lit_value(l) != 2 {
                        self.clauses[ci].swap(1, k);
                        self.watches[l ^ 1].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                i += 1;
                if !self.enqueue(first) {
                    ok = false;
                    break;
                }
            }
            self.watches[p] = ws;
            if !ok {
                self.stats.conflicts += 1;
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for &l in &self.trail[len..] {
            let v = var(l);
            self.value[v] = 0;
            self.cursor = self.cursor.min(v);
        }
        self.trail.truncate(len);
        self.qhead = len;
    }

    /// Pops frames until one can be flipped; false when none is left.
    fn backtrack(&mut self) -> bool {
        while let Some(fr) = self.frames.pop() {
            self.undo_to(fr.trail_len);
            if !fr.flipped {
                let neg = fr.lit ^ 1;
                self.frames.push(Frame { trail_len: fr.trail_len, lit: neg, flipped: true });
                self.enqueue(neg);
                return true;
            }
        }
        false
    }

    fn pick(&mut self) -> Option<usize> {
        while self.cursor <= self.nvars && self.value[self.cursor] != 0 {
            self.cursor += 1;
        }
        (self.cursor <= self.nvars).then_some(self.cursor)
    }

    /// Root-level pure literals, repeated to a fixpoint.
    fn assign_pure_literals(&mut self) {
        loop {
            let mut seen = vec![0u8; self.nvars + 1];
            for c in &self.clauses {
                if c.iter().any(|&l| self.lit_value(l) == 1) {
                    continue;
                }
                for &l in c.iter().filter(|&&l| self.lit_value(l) == 0) {
                    seen[var(l)] |= if l & 1 == 0 { 1 } else { 2 };
                }
            }
            let pure: Vec<usize> = (1..=self.nvars)
                .filter(|&v| self.value[v] == 0 && (seen[v] == 1 || seen[v] == 2))
                .map(|v| v << 1 | (seen[v] == 2) as usize)
                .collect();
            if pure.is_empty() {
                return;
            }
            for l in pure {
                self.enqueue(l);
            }
            if !self.propagate() {
                return;
            }
        }
    }

    fn root(&mut self, pure: bool) -> bool {
        if self.trivially_unsat {
            return false;
        }
        for l in std::mem::take(&mut self.units) {
            if !self.enqueue(l) {
                return false;
            }
        }
        if !self.propagate() {
            return false;
        }
        if pure {
            self.assign_pure_literals();
            // pure literals cannot create conflicts; propagation already ran
        }
        true
    }

    fn out_of_time(&self) -> bool {
        self.stats.decisions % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    /// Runs the search, calling `on_model` for every model until it returns
    /// false. Returns `None` when the decision limit was hit.
    fn search(&mut self, limit: u64, pure: bool, mut on_model: impl FnMut(&[u8]) -> bool) -> Option<()> {
        if !self.root(pure) {
            return Some(());
        }
        loop {
            if !self.propagate() {
                if !self.backtrack() {
                    return Some(());
                }
                continue;
            }
            match self.pick() {
                Some(v) => {
                    if self.stats.decisions >= limit || self.out_of_time() {
                        return None;
                    }
                    self.stats.decisions += 1;
                    let l = v << 1;
                    self.frames.push(Frame { trail_len: self.trail.len(), lit: l, flipped: false });
                    self.enqueue(l);
                }
                None => {
                    if !on_model(&self.value) || !self.backtrack() {
                        return Some(());
                    }
                }
            }
        }
    }
}

fn to_model(value: &[u8]) -> Vec<bool> {
    value.iter().map(|&v| v == 1).collect()
}

/// First model, if any, within `limit` decisions. Pure-literal elimination
/// runs at the root.
pub fn dpll_solve(f: &CnfFormula, limit: u64) -> (DpllResult, DpllStats) {
    dpll_solve_until(f, limit, None)
}

/// As [`dpll_solve`], also giving up once `deadline` passes.
pub fn dpll_solve_until(f: &CnfFormula, limit: u64, deadline: Option<Instant>) -> (DpllResult, DpllStats) {
    let mut s = Dpll::new(f);
    s.deadline = deadline;
    let mut found = None;
    let r = s.search(limit, true, |v| {
        found = Some(to_model(v));
        false
    });
    let res = match (r, found) {
        (_, Some(m)) => DpllResult::Sat(m),
        (Some(()), None) => DpllResult::Unsat,
        (None, None) => DpllResult::Unknown,
    };
    (res, s.stats)
}

/// All models (index 0 unused), up to `max_models`. `None` if the decision
/// limit was hit first. Pure literals are not used here since they would
/// drop models.
pub fn dpll_enumerate(f: &CnfFormula, limit: u64, max_models: usize) -> Option<Vec<Vec<bool>>> {
    let mut s = Dpll::new(f);
    let mut out = Vec::new();
    s.search(limit, false, |v| {
        out.push(to_model(v));
        out.len() < max_models
    })?;
    Some(out)
}
