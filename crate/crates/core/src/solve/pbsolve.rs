//! Depth-first PB search with bound propagation, for small instances and
//! cross-checks. Products of variables are handled directly.

use std::time::Instant;

use crate::encode::{PbFormula, Relation};

struct Row {
    /// (coef, vars) with the constraint read as `Σ ≥ rhs`
    terms: Vec<(i64, Vec<usize>)>,
    rhs: i64,
}

pub struct PbSearch {
    nvars: usize,
    rows: Vec<Row>,
    occurs: Vec<Vec<usize>>,
    /// 0 unassigned, 1 true, 2 false
    value: Vec<u8>,
    trail: Vec<usize>,
    deadline: Option<Instant>,
    pub decisions: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PbResult {
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

impl PbSearch {
    pub fn new(f: &PbFormula) -> PbSearch {
        let nvars = f.var_count as usize;
        let mut rows = Vec::new();
        for c in &f.constraints {
            let t: Vec<(i64, Vec<usize>)> =
                c.terms.iter().map(|t| (t.coef, t.vars.iter().map(|&v| v as usize).collect())).collect();
            let neg = || t.iter().map(|(c, v)| (-c, v.clone())).collect();
            match c.rel {
                Relation::Ge => rows.push(Row { terms: t.clone(), rhs: c.rhs }),
                Relation::Le => rows.push(Row { terms: neg(), rhs: -c.rhs }),
                Relation::Eq => {
                    rows.push(Row { terms: neg(), rhs: -c.rhs });
                    rows.push(Row { terms: t.clone(), rhs: c.rhs });
                }
            }
        }
        let mut occurs = vec![Vec::new(); nvars + 1];
        for (r, row) in rows.iter().enumerate() {
            for (_, vs) in &row.terms {
                for &v in vs {
                    if occurs[v].last() != Some(&r) {
                        occurs[v].push(r);
                    }
                }
            }
        }
        PbSearch { nvars, rows, occurs, value: vec![0; nvars + 1], trail: Vec::new(), deadline: None, decisions: 0 }
    }

    fn set(&mut self, v: usize, val: bool) {
        self.value[v] = if val { 1 } else { 2 };
        self.trail.push(v);
    }

    /// Checks row `r` and forces what it implies; false on conflict.
    fn examine(&mut self, r: usize, queue: &mut Vec<usize>) -> bool {
        let row = &self.rows[r];
        // largest value the left side can still reach
        let mut max = 0i64;
        for (c, vs) in &row.terms {
            if vs.iter().any(|&v| self.value[v] == 2) {
                continue;
            }
            if vs.iter().all(|&v| self.value[v] == 1) {
                max += c;
            } else {
                max += (*c).max(0);
            }
        }
        let slack = max - row.rhs;
        if slack < 0 {
            return false;
        }
        let mut forced: Vec<(usize, bool)> = Vec::new();
        for (c, vs) in &row.terms {
            if vs.iter().any(|&v| self.value[v] == 2) || vs.iter().all(|&v| self.value[v] == 1) {
                continue;
            }
            if *c > slack {
                // this term must end up true
                forced.extend(vs.iter().filter(|&&v| self.value[v] == 0).map(|&v| (v, true)));
            } else if -*c > slack {
                // this term must end up false
                let open: Vec<usize> = vs.iter().copied().filter(|&v| self.value[v] == 0).collect();
                if open.len() == 1 {
                    forced.push((open[0], false));
                }
            }
        }
        for (v, val) in forced {
            match self.value[v] {
                0 => {
                    self.set(v, val);
                    queue.push(v);
                }
                x if (x == 1) != val => return false,
                _ => {}
            }
        }
        true
    }

    fn propagate(&mut self, mut queue: Vec<usize>) -> bool {
        while let Some(v) = queue.pop() {
            for i in 0..self.occurs[v].len() {
                let r = self.occurs[v][i];
                if !self.examine(r, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        for &v in &self.trail[len..] {
            self.value[v] = 0;
        }
        self.trail.truncate(len);
    }

    fn dfs(&mut self, limit: u64, on_model: &mut dyn FnMut(&[u8]) -> bool) -> Option<bool> {
        let Some(v) = (1..=self.nvars).find(|&v| self.value[v] == 0) else {
            return Some(on_model(&self.value));
        };
        for val in [true, false] {
            if self.decisions >= limit
                || (self.decisions % 1024 == 0 && self.deadline.is_some_and(|d| Instant::now() >= d))
            {
                return None;
            }
            self.decisions += 1;
            let mark = self.trail.len();
            self.set(v, val);
            if self.propagate(vec![v]) && !self.dfs(limit, on_model)? {
                return Some(false);
            }
            self.undo_to(mark);
        }
        Some(true)
    }

    /// Calls `on_model` per model until it returns false. `None` if the
    /// decision limit was hit.
    fn run(&mut self, limit: u64, on_model: &mut dyn FnMut(&[u8]) -> bool) -> Option<()> {
        for r in 0..self.rows.len() {
            let mut q = Vec::new();
            if !self.examine(r, &mut q) || !self.propagate(q) {
                return Some(());
            }
        }
        self.dfs(limit, on_model).map(|_| ())
    }
}

fn to_model(value: &[u8]) -> Vec<bool> {
    value.iter().map(|&v| v == 1).collect()
}

/// First model of `f`, ignoring any objective.
pub fn pb_solve(f: &PbFormula, limit: u64) -> PbResult {
    pb_solve_until(f, limit, None)
}

/// As [`pb_solve`], also giving up once `deadline` passes.
pub fn pb_solve_until(f: &PbFormula, limit: u64, deadline: Option<Instant>) -> PbResult {
    let mut s = PbSearch::new(f);
    s.deadline = deadline;
    let mut found = None;
    let r = s.run(limit, &mut |v| {
        found = Some(to_model(v));
        false
    });
    match (found, r) {
        (Some(m), _) => PbResult::Sat(m),
        (None, Some(())) => PbResult::Unsat,
        (None, None) => PbResult::Unknown,
    }
}

/// All models, up to `max_models`; `None` if the limit was hit.
pub fn pb_enumerate(f: &PbFormula, limit: u64, max_models: usize) -> Option<Vec<Vec<bool>>> {
    let mut s = PbSearch::new(f);
    let mut out = Vec::new();
    s.run(limit, &mut |v| {
        out.push(to_model(v));
        out.len() < max_models
    })?;
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{PbConstraint, PbTerm};

    fn lin(terms: &[(i64, u32)], rel: Relation, rhs: i64) -> PbConstraint {
        PbConstraint::new(terms.iter().map(|&(c, v)| PbTerm::new(c, vec![v])).collect(), rel, rhs)
    }

    #[test]
    fn cardinality_models() {
        let mut f = PbFormula::new(5);
        f.push(lin(&[(1, 1), (1, 2), (1, 3), (1, 4), (1, 5)], Relation::Eq, 2));
        assert_eq!(pb_enumerate(&f, u64::MAX, usize::MAX).unwrap().len(), 10);
    }

    #[test]
    fn products_and_truth_table() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..200 {
            let nv = rng.gen_range(2..=6u32);
            let mut f = PbFormula::new(nv);
            for _ in 0..rng.gen_range(1..5) {
                let mut terms = Vec::new();
                for _ in 0..rng.gen_range(1..4) {
                    let a = rng.gen_range(1..=nv);
                    let b = rng.gen_range(1..=nv);
                    let vars = if a == b || rng.gen_bool(0.5) { vec![a] } else { vec![a, b] };
                    terms.push(PbTerm::new(rng.gen_range(-3..=3), vars));
                }
                let rel = [Relation::Eq, Relation::Ge, Relation::Le][rng.gen_range(0..3)];
                f.push(PbConstraint::new(terms, rel, rng.gen_range(-2..=3)));
            }
            let mut want: Vec<Vec<bool>> = (0..1u32 << nv)
                .map(|m| (0..=nv).map(|v| v > 0 && m >> (v - 1) & 1 == 1).collect::<Vec<_>>())
                .filter(|a| f.is_satisfied_by(a))
                .collect();
            let mut got = pb_enumerate(&f, u64::MAX, usize::MAX).unwrap();
            want.sort();
            got.sort();
            assert_eq!(got, want);
        }
    }

    #[test]
    fn infeasible_row() {
        let mut f = PbFormula::new(2);
        f.push(lin(&[(1, 1), (1, 2)], Relation::Ge, 3));
        assert_eq!(pb_solve(&f, 10), PbResult::Unsat);
    }
}
