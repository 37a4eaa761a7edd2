//! Clause encodings: binomial cardinality expansions and the cherry model.

use itertools::Itertools;

use super::{binom, AuxKind, EncodeError, EncodeOptions, VarMap};
use crate::params::SrgParams;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CnfFormula {
    pub var_count: u32,
    pub clauses: Vec<Vec<i32>>,
}

impl CnfFormula {
    pub fn new(var_count: u32) -> Self {
        CnfFormula { var_count, clauses: Vec::new() }
    }

    /// Appends a clause.
    ///
    /// # Panics
    /// On a zero literal, an out-of-range variable or a tautology.
    pub fn push(&mut self, clause: Vec<i32>) {
        for (x, &l) in clause.iter().enumerate() {
            assert!(l != 0 && l.unsigned_abs() <= self.var_count, "bad literal {l}");
            assert!(!clause[x + 1..].contains(&-l), "tautology on {}", l.abs());
        }
        self.clauses.push(clause);
    }

    pub fn extend(&mut self, clauses: impl IntoIterator<Item = Vec<i32>>) {
        for c in clauses {
            self.push(c);
        }
    }

    /// Index of the first clause falsified by `model` (index 0 unused).
    pub fn first_falsified(&self, model: &[bool]) -> Option<usize> {
        self.clauses.iter().position(|c| {
            !c.iter().any(|&l| model[l.unsigned_abs() as usize] == (l > 0))
        })
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.first_falsified(model).is_none()
    }
}

fn check_bound(len: usize, theta: usize) -> Result<(), EncodeError> {
    if theta > len {
        return Err(EncodeError::BadBound { len, theta });
    }
    Ok(())
}

fn exactly_count(len: usize, theta: usize) -> u128 {
    binom(len as u64, theta as u64 + 1) + binom(len as u64, (len - theta) as u64 + 1)
}

fn budget_check(what: impl Into<String>, required: u128, budget: u128) -> Result<(), EncodeError> {
    if required > budget {
        return Err(EncodeError::Budget { what: what.into(), required, budget });
    }
    Ok(())
}

fn subsets_with(vars: &[u32], size: usize, sign: i32, guard: Option<i32>) -> impl Iterator<Item = Vec<i32>> + '_ {
    vars.iter().combinations(size).map(move |s| {
        let mut c: Vec<i32> = s.into_iter().map(|&v| sign * v as i32).collect();
        c.extend(guard);
        c
    })
}

/// At most `theta` of `vars`: one all-negative clause per `(θ+1)`-subset.
pub fn cnf_at_most(vars: &[u32], theta: usize) -> Result<Vec<Vec<i32>>, EncodeError> {
    check_bound(vars.len(), theta)?;
    let need = binom(vars.len() as u64, theta as u64 + 1);
    budget_check(format!("at-most-{theta} over {} variables", vars.len()), need, super::CLAUSE_BUDGET)?;
    Ok(subsets_with(vars, theta + 1, -1, None).collect())
}

/// Exactly `theta` of `vars`: the at-most clauses plus one all-positive
/// clause per `(|vars|−θ+1)`-subset.
pub fn cnf_exactly(vars: &[u32], theta: usize) -> Result<Vec<Vec<i32>>, EncodeError> {
    cnf_exactly_guarded(vars, theta, None, super::CLAUSE_BUDGET)
}

/// [`cnf_exactly`] with `guard` appended to every clause, so the
/// constraint only binds when `guard` is false.
pub fn cnf_exactly_guarded(
    vars: &[u32],
    theta: usize,
    guard: Option<i32>,
    budget: u128,
) -> Result<Vec<Vec<i32>>, EncodeError> {
    check_bound(vars.len(), theta)?;
    let m = vars.len();
    budget_check(format!("exactly-{theta} over {m} variables"), exactly_count(m, theta), budget)?;
    let mut out: Vec<Vec<i32>> = subsets_with(vars, theta + 1, -1, guard).collect();
    out.extend(subsets_with(vars, m - theta + 1, 1, guard));
    Ok(out)
}

/// Clause count of [`encode_cnf`] without building it, enforcing the
/// per-expansion and total budgets.
pub fn estimate_cnf_clauses(p: &SrgParams, opts: &EncodeOptions) -> Result<u128, EncodeError> {
    let n = p.n as usize;
    let (k, l, m) = (p.k as usize, p.lambda as usize, p.mu as usize);
    let pairs = binom(n as u64, 2);
    let mut total = 0u128;
    if opts.regularity.include(p.mu) {
        check_bound(n - 1, k)?;
        let per = exactly_count(n - 1, k);
        budget_check(format!("regularity (exactly {k} of {}) at one vertex", n - 1), per, opts.clause_budget)?;
        total += per * n as u128;
    }
    check_bound(n - 2, l)?;
    check_bound(n - 2, m)?;
    let lam = exactly_count(n - 2, l);
    let mu = exactly_count(n - 2, m);
    budget_check(format!("lambda (exactly {l} of {} cherries) for one pair", n - 2), lam, opts.clause_budget)?;
    budget_check(format!("mu (exactly {m} of {} cherries) for one pair", n - 2), mu, opts.clause_budget)?;
    total += pairs * (lam + mu + 3 * (n as u128 - 2));
    total += opts.preset.assignments().len() as u128;
    budget_check("whole formula", total, opts.total_budget)?;
    Ok(total)
}

/// CNF for the existence of an `(n,k,λ,μ)` graph.
///
/// Cherry `c_{i,j,k} ⟺ e_{i,k} ∧ e_{j,k}` for every pair and third vertex;
/// per pair, exactly-λ over its cherries guarded by `¬e_{i,j}` and exactly-μ
/// guarded by `e_{i,j}`. Degree clauses follow `opts.regularity`; the
/// preset becomes unit clauses.
pub fn encode_cnf(p: &SrgParams, opts: &EncodeOptions) -> Result<(CnfFormula, VarMap), EncodeError> {
    let total = estimate_cnf_clauses(p, opts)?;
    let n = p.n as usize;
    let mut vm = VarMap::new(n);
    vm.add_triple_block(AuxKind::Cherry);
    opts.preset.check(n)?;
    let mut f = CnfFormula::new(vm.var_count());
    f.clauses.reserve(total as usize);

    for i in 0..n {
        for j in i + 1..n {
            for k in (0..n).filter(|&k| k != i && k != j) {
                let c = vm.cherry(i, j, k) as i32;
                let (ik, jk) = (vm.edge(i, k) as i32, vm.edge(j, k) as i32);
                f.push(vec![-c, ik]);
                f.push(vec![-c, jk]);
                f.push(vec![c, -ik, -jk]);
            }
        }
    }
    let budget = opts.clause_budget;
    for i in 0..n {
        for j in i + 1..n {
            let e = vm.edge(i, j) as i32;
            let cherries: Vec<u32> = (0..n).filter(|&k| k != i && k != j).map(|k| vm.cherry(i, j, k)).collect();
            f.extend(cnf_exactly_guarded(&cherries, p.lambda as usize, Some(-e), budget)?);
            f.extend(cnf_exactly_guarded(&cherries, p.mu as usize, Some(e), budget)?);
        }
    }
    if opts.regularity.include(p.mu) {
        for v in 0..n {
            let incident: Vec<u32> = (0..n).filter(|&u| u != v).map(|u| vm.edge(u, v)).collect();
            f.extend(cnf_exactly_guarded(&incident, p.k as usize, None, budget)?);
        }
    }
    for &((i, j), val) in opts.preset.assignments() {
        let e = vm.edge(i, j) as i32;
        f.push(vec![if val { e } else { -e }]);
    }
    Ok((f, vm))
}
