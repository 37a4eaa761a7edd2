//! Readers for the DIMACS and OPB subsets the writers emit.

use super::{CnfFormula, PbConstraint, PbFormula, PbTerm, Relation};

fn err(line: usize, msg: impl Into<String>) -> String {
    format!("line {}: {}", line + 1, msg.into())
}

/// Parses DIMACS CNF. Tautologies are dropped and repeated literals merged.
pub fn read_dimacs(text: &str) -> Result<CnfFormula, String> {
    let mut header: Option<(u32, usize)> = None;
    let mut f = CnfFormula::default();
    let mut cur: Vec<i32> = Vec::new();
    let mut seen = 0;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('c') || t.starts_with('%') {
            continue;
        }
        if t.starts_with('p') {
            let w: Vec<&str> = t.split_whitespace().collect();
            match w.as_slice() {
                ["p", "cnf", v, c] => {
                    let v = v.parse().map_err(|_| err(i, "bad variable count"))?;
                    let c = c.parse().map_err(|_| err(i, "bad clause count"))?;
                    header = Some((v, c));
                    f.var_count = v;
                }
                _ => return Err(err(i, "expected `p cnf V C`")),
            }
            continue;
        }
        let (v, _) = header.ok_or_else(|| err(i, "clause before header"))?;
        for tok in t.split_whitespace() {
            let l: i32 = tok.parse().map_err(|_| err(i, format!("bad literal {tok:?}")))?;
            if l == 0 {
                seen += 1;
                let mut c = std::mem::take(&mut cur);
                c.sort_unstable_by_key(|l| (l.abs(), *l));
                c.dedup();
                if !c.windows(2).any(|w| w[0] == -w[1]) {
                    f.clauses.push(c);
                }
            } else if l.unsigned_abs() > v {
                return Err(err(i, format!("literal {l} exceeds {v} variables")));
            } else {
                cur.push(l);
            }
        }
    }
    let (_, c) = header.ok_or("missing `p cnf` header")?;
    if !cur.is_empty() {
        return Err("last clause is not terminated by 0".into());
    }
    if seen != c {
        return Err(format!("header promises {c} clauses, found {seen}"));
    }
    Ok(f)
}

fn parse_terms(toks: &[&str], nvars: u32, line: usize) -> Result<Vec<PbTerm>, String> {
    let mut terms = Vec::new();
    let mut i = 0;
    while i < toks.len() {
        let coef: i64 = toks[i].parse().map_err(|_| err(line, format!("expected coefficient, got {:?}", toks[i])))?;
        i += 1;
        let mut vars = Vec::new();
        while i < toks.len() && toks[i].starts_with('x') {
            let v: u32 = toks[i][1..].parse().map_err(|_| err(line, format!("bad variable {:?}", toks[i])))?;
            if v == 0 || v > nvars {
                return Err(err(line, format!("variable x{v} out of range")));
            }
            if vars.contains(&v) {
                return Err(err(line, format!("x{v} repeated in a product")));
            }
            vars.push(v);
            i += 1;
        }
        if vars.is_empty() {
            return Err(err(line, "coefficient without variables"));
        }
        terms.push(PbTerm::new(coef, vars));
    }
    Ok(terms)
}

/// Parses OPB with the `* #variable= V #constraint= C` header, optional
/// `min:` line and `>=` / `=` / `<=` constraints, one per line.
pub fn read_opb(text: &str) -> Result<PbFormula, String> {
    let mut f: Option<PbFormula> = None;
    let mut promised = 0;
    for (i, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.starts_with('*') {
            if f.is_none() {
                let w: Vec<&str> = t.split_whitespace().collect();
                if let Some(p) = w.iter().position(|&x| x == "#variable=") {
                    let v = w.get(p + 1).and_then(|x| x.parse().ok()).ok_or_else(|| err(i, "bad #variable="))?;
                    promised = w
                        .iter()
                        .position(|&x| x == "#constraint=")
                        .and_then(|q| w.get(q + 1)?.parse().ok())
                        .ok_or_else(|| err(i, "bad #constraint="))?;
                    f = Some(PbFormula::new(v));
                }
            }
            continue;
        }
        if t.is_empty() {
            continue;
        }
        let form = f.as_mut().ok_or_else(|| err(i, "missing `* #variable=` header"))?;
        let body = t.strip_suffix(';').ok_or_else(|| err(i, "missing `;`"))?.trim();
        if let Some(obj) = body.strip_prefix("min:") {
            let toks: Vec<&str> = obj.split_whitespace().collect();
            form.objective = Some(parse_terms(&toks, form.var_count, i)?);
            continue;
        }
        let toks: Vec<&str> = body.split_whitespace().collect();
        let n = toks.len();
        if n < 2 {
            return Err(err(i, "expected `terms REL rhs`"));
        }
        let rel = match toks[n - 2] {
            ">=" => Relation::Ge,
            "<=" => Relation::Le,
            "=" => Relation::Eq,
            r => return Err(err(i, format!("unknown relation {r:?}"))),
        };
        let rhs: i64 = toks[n - 1].parse().map_err(|_| err(i, "bad right-hand side"))?;
        let terms = parse_terms(&toks[..n - 2], form.var_count, i)?;
        form.constraints.push(PbConstraint::new(terms, rel, rhs));
    }
    let f = f.ok_or("missing `* #variable=` header")?;
    if f.constraints.len() != promised {
        return Err(format!("header promises {promised} constraints, found {}", f.constraints.len()));
    }
    Ok(f)
}
