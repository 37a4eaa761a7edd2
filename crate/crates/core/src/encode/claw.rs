//! Claw minimisation as PB optimisation.
//!
//! Hard part: degree equalities and the μ equation. Soft part: one claw
//! variable per centre and leaf triple, pinned by seven inequalities and
//! summed in the objective. At `n = 99` that is about 1.5·10⁷ claw variables,
//! so the formula is streamed rather than materialised.

use std::io::{self, Write};

use super::pb::PbFormula;
use super::write::{fmt_constraint, fmt_objective};
use super::{binom, EncodeError, PbConstraint, PbTerm, Preset, Relation, VarMap};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct ClawMaxSat {
    pub k: u64,
    pub mu: u64,
    pub vm: VarMap,
    /// Everything except the claw definitions.
    pub hard: PbFormula,
}

/// Claw objective for `n` vertices, degree `k` and common-neighbour count `mu`.
pub fn encode_maxsat_claw_for(n: usize, k: u64, mu: u64, preset: &Preset) -> Result<ClawMaxSat, EncodeError> {
    let mut vm = VarMap::new(n);
    vm.add_claw_block();
    let mut hard = PbFormula::new(vm.var_count());
    for i in 0..n {
        for j in i + 1..n {
            let e = vm.edge(i, j);
            let mut terms: Vec<PbTerm> = (0..n)
                .filter(|&x| x != i && x != j)
                .map(|x| PbTerm::new(1, vec![vm.edge(i, x), vm.edge(x, j)]))
                .collect();
            terms.extend((0..n).filter(|&x| x != i && x != j).map(|x| PbTerm::new(-1, vec![e, vm.edge(i, x), vm.edge(x, j)])));
            terms.push(PbTerm::new(mu as i64, vec![e]));
            hard.push(PbConstraint::new(terms, Relation::Eq, mu as i64));
        }
    }
    hard.push_regularity(&vm, k as i64);
    hard.push_preset(&vm, preset)?;
    Ok(ClawMaxSat { k, mu, vm, hard })
}

/// The `(99, 14, ·, 2)` instance.
pub fn encode_maxsat_claw() -> ClawMaxSat {
    encode_maxsat_claw_for(99, 14, 2, &Preset::default()).expect("empty preset")
}

impl ClawMaxSat {
    pub fn n(&self) -> usize {
        self.vm.n()
    }

    pub fn claw_var_count(&self) -> u128 {
        self.n() as u128 * binom(self.n() as u64 - 1, 3)
    }

    /// Total constraint count: hard part plus seven per claw variable.
    pub fn constraint_count(&self) -> u128 {
        self.hard.constraints.len() as u128 + 7 * self.claw_var_count()
    }

    /// Calls `f(v, [a, b, c])` for every centre and leaf triple `a < b < c`.
    pub fn for_each_claw(&self, mut f: impl FnMut(usize, [usize; 3])) {
        let n = self.n();
        for v in 0..n {
            for a in 0..n {
                for b in a + 1..n {
                    for c in b + 1..n {
                        if a != v && b != v && c != v {
                            f(v, [a, b, c]);
                        }
                    }
                }
            }
        }
    }

    /// `w ⟺ e_va ∧ e_vb ∧ e_vc ∧ ¬e_ab ∧ ¬e_ac ∧ ¬e_bc`
    pub fn claw_definition(&self, v: usize, [a, b, c]: [usize; 3]) -> [PbConstraint; 7] {
        let vm = &self.vm;
        let w = vm.claw(v, a, b, c);
        let lin = |terms: &[(i64, u32)], rhs| {
            PbConstraint::new(terms.iter().map(|&(c, x)| PbTerm::new(c, vec![x])).collect(), Relation::Ge, rhs)
        };
        let spokes = [vm.edge(v, a), vm.edge(v, b), vm.edge(v, c)];
        let rim = [vm.edge(a, b), vm.edge(a, c), vm.edge(b, c)];
        [
            lin(&[(-1, w), (1, spokes[0])], 0),
            lin(&[(-1, w), (1, spokes[1])], 0),
            lin(&[(-1, w), (1, spokes[2])], 0),
            lin(&[(-1, w), (-1, rim[0])], -1),
            lin(&[(-1, w), (-1, rim[1])], -1),
            lin(&[(-1, w), (-1, rim[2])], -1),
            lin(
                &[(1, w), (-1, spokes[0]), (-1, spokes[1]), (-1, spokes[2]), (1, rim[0]), (1, rim[1]), (1, rim[2])],
                -2,
            ),
        ]
    }

    fn objective_terms(&self) -> Vec<PbTerm> {
        let mut terms = Vec::new();
        self.for_each_claw(|v, [a, b, c]| terms.push(PbTerm::new(1, vec![self.vm.claw(v, a, b, c)])));
        terms
    }

    /// Materialised formula; only sensible for small `n`.
    pub fn to_formula(&self) -> PbFormula {
        let mut f = self.hard.clone();
        self.for_each_claw(|v, t| {
            for c in self.claw_definition(v, t) {
                f.push(c);
            }
        });
        f.objective = Some(self.objective_terms());
        f
    }

    /// Streams the OPB file without building the formula.
    pub fn write_opb<W: Write>(&self, mut w: W) -> io::Result<()> {
        writeln!(w, "* #variable= {} #constraint= {}", self.vm.var_count(), self.constraint_count())?;
        for line in self.vm.legend() {
            writeln!(w, "* {line}")?;
        }
        // the objective alone has one term per claw variable
        let mut obj = String::from("min:");
        self.for_each_claw(|v, [a, b, c]| {
            obj.push_str(" +1 x");
            obj.push_str(&self.vm.claw(v, a, b, c).to_string());
        });
        obj.push_str(" ;");
        writeln!(w, "{obj}")?;
        for c in &self.hard.constraints {
            writeln!(w, "{}", fmt_constraint(c))?;
        }
        let mut res = Ok(());
        self.for_each_claw(|v, t| {
            if res.is_ok() {
                for c in self.claw_definition(v, t) {
                    if let Err(e) = writeln!(w, "{}", fmt_constraint(&c)) {
                        res = Err(e);
                        return;
                    }
                }
            }
        });
        res
    }

    /// Whether `g` meets the hard constraints, and its objective value with
    /// every claw variable at its defined value.
    pub fn evaluate(&self, g: &Graph) -> (bool, u64) {
        let model = self.vm.assignment_for(g);
        let hard_ok = self.hard.is_satisfied_by(&model);
        let mut total = 0;
        self.for_each_claw(|v, [a, b, c]| total += model[self.vm.claw(v, a, b, c) as usize] as u64);
        (hard_ok, total)
    }

    /// Objective rendered as an OPB line; small `n` only.
    pub fn objective_line(&self) -> String {
        fmt_objective(&self.objective_terms())
    }
}
