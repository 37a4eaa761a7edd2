//! Pseudo-Boolean encodings: products of edge variables, or their
//! linearisation through angle and triangle variables.

use std::fmt;

use super::{AuxKind, EncodeError, EncodeOptions, Preset, VarMap};
use crate::params::SrgParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Le,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Eq => "=",
            Relation::Ge => ">=",
            Relation::Le => "<=",
        })
    }
}

/// `coef · x_{v1} · x_{v2} · …`
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbTerm {
    pub coef: i64,
    pub vars: Vec<u32>,
}

impl PbTerm {
    pub fn new(coef: i64, vars: Vec<u32>) -> Self {
        PbTerm { coef, vars }
    }

    pub fn value(&self, model: &[bool]) -> i64 {
        if self.vars.iter().all(|&v| model[v as usize]) {
            self.coef
        } else {
            0
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbConstraint {
    pub terms: Vec<PbTerm>,
    pub rel: Relation,
    pub rhs: i64,
}

impl PbConstraint {
    /// Drops zero-coefficient terms.
    pub fn new(terms: Vec<PbTerm>, rel: Relation, rhs: i64) -> Self {
        let terms = terms.into_iter().filter(|t| t.coef != 0).collect();
        PbConstraint { terms, rel, rhs }
    }

    pub fn lhs(&self, model: &[bool]) -> i64 {
        self.terms.iter().map(|t| t.value(model)).sum()
    }

    pub fn holds(&self, model: &[bool]) -> bool {
        let l = self.lhs(model);
        match self.rel {
            Relation::Eq => l == self.rhs,
            Relation::Ge => l >= self.rhs,
            Relation::Le => l <= self.rhs,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PbFormula {
    pub var_count: u32,
    pub constraints: Vec<PbConstraint>,
    /// Minimised when present.
    pub objective: Option<Vec<PbTerm>>,
}

impl PbFormula {
    pub fn new(var_count: u32) -> Self {
        PbFormula { var_count, ..Default::default() }
    }

    /// # Panics
    /// On a repeated variable inside one product or an id out of range.
    pub fn push(&mut self, c: PbConstraint) {
        for t in &c.terms {
            assert!(!t.vars.is_empty(), "empty product");
            for (x, &v) in t.vars.iter().enumerate() {
                assert!(v >= 1 && v <= self.var_count, "variable {v} out of range");
                assert!(!t.vars[x + 1..].contains(&v), "repeated variable {v} in product");
            }
        }
        self.constraints.push(c);
    }

    pub fn is_linear(&self) -> bool {
        self.constraints.iter().flat_map(|c| &c.terms).all(|t| t.vars.len() == 1)
    }

    pub fn first_violated(&self, model: &[bool]) -> Option<usize> {
        self.constraints.iter().position(|c| !c.holds(model))
    }

    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        self.first_violated(model).is_none()
    }

    pub fn objective_value(&self, model: &[bool]) -> Option<i64> {
        self.objective.as_ref().map(|o| o.iter().map(|t| t.value(model)).sum())
    }

    pub(crate) fn push_preset(&mut self, vm: &VarMap, preset: &Preset) -> Result<(), EncodeError> {
        preset.check(vm.n())?;
        for &((i, j), val) in preset.assignments() {
            let t = PbTerm::new(1, vec![vm.edge(i, j)]);
            self.push(PbConstraint::new(vec![t], Relation::Eq, val as i64));
        }
        Ok(())
    }

    pub(crate) fn push_regularity(&mut self, vm: &VarMap, k: i64) {
        let n = vm.n();
        for v in 0..n {
            let terms = (0..n).filter(|&u| u != v).map(|u| PbTerm::new(1, vec![vm.edge(u, v)])).collect();
            self.push(PbConstraint::new(terms, Relation::Eq, k));
        }
    }
}

fn others(n: usize, i: usize, j: usize) -> impl Iterator<Item = usize> {
    (0..n).filter(move |&k| k != i && k != j)
}

/// `−λ e_ij + Σ_k e_ij e_ik e_kj = 0`
fn lambda_equation(vm: &VarMap, i: usize, j: usize, lambda: i64) -> PbConstraint {
    let e = vm.edge(i, j);
    let mut terms = vec![PbTerm::new(-lambda, vec![e])];
    terms.extend(others(vm.n(), i, j).map(|k| PbTerm::new(1, vec![e, vm.edge(i, k), vm.edge(k, j)])));
    PbConstraint::new(terms, Relation::Eq, 0)
}

/// `Σ_k e_ik e_kj − Σ_k e_ij e_ik e_kj + μ e_ij (rel) μ`
fn mu_equation(vm: &VarMap, i: usize, j: usize, mu: i64, rel: Relation) -> PbConstraint {
    let e = vm.edge(i, j);
    let n = vm.n();
    let mut terms: Vec<PbTerm> = others(n, i, j).map(|k| PbTerm::new(1, vec![vm.edge(i, k), vm.edge(k, j)])).collect();
    terms.extend(others(n, i, j).map(|k| PbTerm::new(-1, vec![e, vm.edge(i, k), vm.edge(k, j)])));
    terms.push(PbTerm::new(mu, vec![e]));
    PbConstraint::new(terms, rel, mu)
}

/// Edge variables only; per pair the λ equation (degree-3 products) and
/// the μ equation (degree 2 and 3). Degree equalities per
/// `opts.regularity`.
pub fn encode_pb_nonlinear(p: &SrgParams, opts: &EncodeOptions) -> Result<(PbFormula, VarMap), EncodeError> {
    let n = p.n as usize;
    let vm = VarMap::new(n);
    let mut f = PbFormula::new(vm.var_count());
    for i in 0..n {
        for j in i + 1..n {
            f.push(lambda_equation(&vm, i, j, p.lambda as i64));
            f.push(mu_equation(&vm, i, j, p.mu as i64, Relation::Eq));
        }
    }
    if opts.regularity.include(p.mu) {
        f.push_regularity(&vm, p.k as i64);
    }
    f.push_preset(&vm, &opts.preset)?;
    Ok((f, vm))
}

/// Linear form: angle `a_{i,j,k}` and triangle `t_{i,j,k}` variables, each
/// pinned by four inequalities, then `μ e_ij + Σ a = μ` and
/// `−λ e_ij + Σ t = 0` per pair.
pub fn encode_pb_linear(p: &SrgParams, opts: &EncodeOptions) -> Result<(PbFormula, VarMap), EncodeError> {
    let n = p.n as usize;
    let mut vm = VarMap::new(n);
    vm.add_triple_block(AuxKind::Angle);
    vm.add_triple_block(AuxKind::Triangle);
    let mut f = PbFormula::new(vm.var_count());
    let lin = |terms: &[(i64, u32)], rhs: i64| {
        PbConstraint::new(terms.iter().map(|&(c, v)| PbTerm::new(c, vec![v])).collect(), Relation::Ge, rhs)
    };
    for i in 0..n {
        for j in i + 1..n {
            let e = vm.edge(i, j);
            for k in others(n, i, j) {
                let (ik, kj) = (vm.edge(i, k), vm.edge(k, j));
                let a = vm.angle(i, j, k);
                f.push(lin(&[(-1, a), (-1, e)], -1));
                f.push(lin(&[(-1, a), (1, ik)], 0));
                f.push(lin(&[(-1, a), (1, kj)], 0));
                f.push(lin(&[(1, a), (1, e), (-1, ik), (-1, kj)], -1));
                let t = vm.triangle(i, j, k);
                f.push(lin(&[(-1, t), (1, e)], 0));
                f.push(lin(&[(-1, t), (1, ik)], 0));
                f.push(lin(&[(-1, t), (1, kj)], 0));
                f.push(lin(&[(1, t), (-1, e), (-1, ik), (-1, kj)], -2));
            }
            let mut mu_terms = vec![PbTerm::new(p.mu as i64, vec![e])];
            mu_terms.extend(others(n, i, j).map(|k| PbTerm::new(1, vec![vm.angle(i, j, k)])));
            f.push(PbConstraint::new(mu_terms, Relation::Eq, p.mu as i64));
            let mut lam_terms = vec![PbTerm::new(-(p.lambda as i64), vec![e])];
            lam_terms.extend(others(n, i, j).map(|k| PbTerm::new(1, vec![vm.triangle(i, j, k)])));
            f.push(PbConstraint::new(lam_terms, Relation::Eq, 0));
        }
    }
    if opts.regularity.include(p.mu) {
        f.push_regularity(&vm, p.k as i64);
    }
    f.push_preset(&vm, &opts.preset)?;
    Ok((f, vm))
}

/// Non-linear system for a `(n, k, λ, ≤ mu_max)` graph: λ equalities,
/// μ inequalities and degree equalities (a bounded μ does not force
/// regularity).
pub fn encode_triangular_view_for(n: usize, k: u64, lambda: u64, mu_max: u64) -> (PbFormula, VarMap) {
    let vm = VarMap::new(n);
    let mut f = PbFormula::new(vm.var_count());
    for i in 0..n {
        for j in i + 1..n {
            f.push(lambda_equation(&vm, i, j, lambda as i64));
            f.push(mu_equation(&vm, i, j, mu_max as i64, Relation::Le));
        }
    }
    f.push_regularity(&vm, k as i64);
    (f, vm)
}

/// The triangle graph a `(99,14,1,2)` graph would induce: `(231,18,5,≤3)`.
pub fn encode_triangular_view() -> (PbFormula, VarMap) {
    encode_triangular_view_for(231, 18, 5, 3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{paley, petersen};
    use crate::graph::Graph;

    fn p(n: u64, k: u64, l: u64, m: u64) -> SrgParams {
        SrgParams::new(n, k, l, m).unwrap()
    }

    #[test]
    fn lambda_equation_terms() {
        let vm = VarMap::new(4);
        let c = lambda_equation(&vm, 0, 1, 1);
        let terms: Vec<_> = c.terms.iter().map(|t| (t.coef, t.vars.clone())).collect();
        assert_eq!(terms, vec![(-1, vec![1]), (1, vec![1, 2, 4]), (1, vec![1, 3, 5])]);
    }

    #[test]
    fn angle_and_triangle_truth_tables() {
        let params = p(4, 2, 0, 2);
        let (f, vm) = encode_pb_linear(&params, &EncodeOptions { regularity: super::super::Regularity::Omit, ..Default::default() }).unwrap();
        // the eight defining inequalities of triple ({0,1}, 2)
        let defs = &f.constraints[0..8];
        let (e, ik, kj) = (vm.edge(0, 1), vm.edge(0, 2), vm.edge(2, 1));
        let (a, t) = (vm.angle(0, 1, 2), vm.triangle(0, 1, 2));
        for bits in 0..32u32 {
            let mut m = vec![false; f.var_count as usize + 1];
            for (x, v) in [e, ik, kj, a, t].into_iter().enumerate() {
                m[v as usize] = bits >> x & 1 == 1;
            }
            let (ve, vik, vkj, va, vt) = (m[e as usize], m[ik as usize], m[kj as usize], m[a as usize], m[t as usize]);
            let all = defs.iter().all(|c| c.holds(&m));
            let angle_ok = defs[..4].iter().all(|c| c.holds(&m));
            let tri_ok = defs[4..].iter().all(|c| c.holds(&m));
            assert_eq!(angle_ok, va == (!ve && vik && vkj), "angle {bits:05b}");
            assert_eq!(tri_ok, vt == (ve && vik && vkj), "triangle {bits:05b}");
            assert_eq!(all, angle_ok && tri_ok);
        }
    }

    #[test]
    fn sizes() {
        let params = p(9, 4, 1, 2);
        let (nl, vm) = encode_pb_nonlinear(&params, &EncodeOptions::default()).unwrap();
        assert_eq!(vm.var_count(), 36);
        assert_eq!(nl.constraints.len(), 72);
        assert!(!nl.is_linear());
        let (lin, vm) = encode_pb_linear(&params, &EncodeOptions::default()).unwrap();
        assert_eq!(vm.var_count(), 36 + 2 * 252);
        assert_eq!(lin.constraints.len(), 8 * 252 + 2 * 36);
        assert!(lin.is_linear());
        let (_, vm) = encode_pb_nonlinear(&p(10, 3, 0, 1), &EncodeOptions::default()).unwrap();
        assert_eq!(vm.var_count(), 45);
    }

    #[test]
    fn known_graphs_satisfy_both() {
        for (g, params) in [(paley(9).unwrap(), p(9, 4, 1, 2)), (petersen(), p(10, 3, 0, 1)), (paley(13).unwrap(), p(13, 6, 2, 3))] {
            for enc in [encode_pb_nonlinear, encode_pb_linear] {
                let (f, vm) = enc(&params, &EncodeOptions::default()).unwrap();
                assert_eq!(f.first_violated(&vm.assignment_for(&g)), None);
            }
        }
        // wrong λ is caught
        let (f, vm) = encode_pb_nonlinear(&p(9, 4, 2, 2), &EncodeOptions::default()).unwrap();
        assert!(!f.is_satisfied_by(&vm.assignment_for(&paley(9).unwrap())));
    }

    #[test]
    fn triangular_view_system() {
        let k33 = paley(9).unwrap().triangular_view().unwrap();
        let (f, vm) = encode_triangular_view_for(6, 3, 0, 3);
        assert_eq!(f.constraints.len(), 2 * 15 + 6);
        assert!(f.is_satisfied_by(&vm.assignment_for(&k33)));
        let (f, vm) = encode_triangular_view_for(6, 3, 0, 2);
        assert!(!f.is_satisfied_by(&vm.assignment_for(&k33)));
        let empty = Graph::empty(6).unwrap();
        let (f, vm) = encode_triangular_view_for(6, 3, 0, 3);
        assert!(!f.is_satisfied_by(&vm.assignment_for(&empty)));
    }
}
