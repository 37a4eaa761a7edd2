//! DIMACS and OPB writers.

use std::io::{self, Write};

use super::{CnfFormula, PbConstraint, PbFormula, PbTerm, Relation, VarMap};

/// `p cnf V C`, optional `c` legend lines, then one ` 0`-terminated clause
/// per line.
pub fn write_dimacs<W: Write>(f: &CnfFormula, legend: Option<&VarMap>, mut w: W) -> io::Result<()> {
    if let Some(vm) = legend {
        for line in vm.legend() {
            writeln!(w, "c {line}")?;
        }
    }
    writeln!(w, "p cnf {} {}", f.var_count, f.clauses.len())?;
    let mut line = String::new();
    for c in &f.clauses {
        line.clear();
        for l in c {
            line.push_str(&l.to_string());
            line.push(' ');
        }
        line.push('0');
        writeln!(w, "{line}")?;
    }
    Ok(())
}

pub(crate) fn fmt_terms(terms: &[PbTerm], negate: bool, out: &mut String) {
    for (x, t) in terms.iter().enumerate() {
        if x > 0 {
            out.push(' ');
        }
        let c = if negate { -t.coef } else { t.coef };
        if c >= 0 {
            out.push('+');
        }
        out.push_str(&c.to_string());
        for v in &t.vars {
            out.push_str(" x");
            out.push_str(&v.to_string());
        }
    }
}

/// One OPB constraint line without the newline; `≤` becomes a negated `≥`.
pub(crate) fn fmt_constraint(c: &PbConstraint) -> String {
    let mut s = String::new();
    let (negate, rel, rhs) = match c.rel {
        Relation::Le => (true, Relation::Ge, -c.rhs),
        r => (false, r, c.rhs),
    };
    fmt_terms(&c.terms, negate, &mut s);
    s.push_str(&format!(" {rel} {rhs} ;"));
    s
}

pub(crate) fn fmt_objective(terms: &[PbTerm]) -> String {
    let mut s = String::from("min: ");
    fmt_terms(terms, false, &mut s);
    s.push_str(" ;");
    s
}

/// `* #variable= V #constraint= C` header, optional legend and objective,
/// then one constraint per line.
pub fn write_opb<W: Write>(f: &PbFormula, legend: Option<&VarMap>, mut w: W) -> io::Result<()> {
    writeln!(w, "* #variable= {} #constraint= {}", f.var_count, f.constraints.len())?;
    if let Some(vm) = legend {
        for line in vm.legend() {
            writeln!(w, "* {line}")?;
        }
    }
    if let Some(obj) = &f.objective {
        writeln!(w, "{}", fmt_objective(obj))?;
    }
    for c in &f.constraints {
        writeln!(w, "{}", fmt_constraint(c))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dimacs(f: &CnfFormula) -> String {
        let mut out = Vec::new();
        write_dimacs(f, None, &mut out).unwrap();
        String::from_utf8(out).unwrap()
    }

    #[test]
    fn dimacs_lines() {
        assert_eq!(dimacs(&CnfFormula::new(0)), "p cnf 0 0\n");
        let mut f = CnfFormula::new(2);
        f.push(vec![1, -2]);
        assert_eq!(dimacs(&f), "p cnf 2 1\n1 -2 0\n");
    }

    #[test]
    fn opb_lines() {
        let le = PbConstraint::new(vec![PbTerm::new(2, vec![1]), PbTerm::new(-1, vec![2, 3])], Relation::Le, 1);
        assert_eq!(fmt_constraint(&le), "-2 x1 +1 x2 x3 >= -1 ;");
        let mut f = PbFormula::new(3);
        f.push(le);
        f.objective = Some(vec![PbTerm::new(1, vec![3])]);
        let mut out = Vec::new();
        write_opb(&f, None, &mut out).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "* #variable= 3 #constraint= 1\nmin: +1 x3 ;\n-2 x1 +1 x2 x3 >= -1 ;\n"
        );
    }
}
