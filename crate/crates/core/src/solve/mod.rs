//! Solving: builtin DPLL and PB search, a brute-force oracle, external
//! solver processes, and the encode → solve → decode → verify pipeline.

mod brute;
mod dpll;
mod external;
mod pbsolve;

pub use brute::{brute_force_srg, TooLarge, BRUTE_MAX_N};
pub use dpll::{dpll_enumerate, dpll_solve, dpll_solve_until, DpllResult, DpllStats};
pub use external::{parse_output, run_external, Dialect, SolverConfig};
pub use pbsolve::{pb_enumerate, pb_solve, pb_solve_until, PbResult};

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::encode::{
    encode_cnf, encode_pb_linear, encode_pb_nonlinear, write_dimacs, write_opb, CnfFormula, EncodeError,
    EncodeOptions, PbFormula, VarMap,
};
use crate::feasibility::{feasibility_report, Infeasibility, Verdict};
use crate::graph::{verify_srg, Graph, VerifyReport};
use crate::params::SrgParams;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("config: {0}")]
    Config(String),
    #[error("i/o: {0}")]
    Io(String),
    #[error("spawn: {0}")]
    Spawn(String),
    #[error("unparseable solver output: {0}")]
    Parse(String),
    #[error(transparent)]
    Encode(#[from] EncodeError),
    #[error("decode: model does not assign edge variable {0}")]
    MissingVariable(u32),
    #[error("verify: solver reported sat but {0}")]
    Verification(String),
    #[error(transparent)]
    Oracle(#[from] TooLarge),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Sat,
    Unsat,
    Unknown,
    /// Rejected by the feasibility screens; no solver was run.
    Infeasible,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Sat => "sat",
            Status::Unsat => "unsat",
            Status::Unknown => "unknown",
            Status::Infeasible => "infeasible",
        })
    }
}

/// Partial truth assignment over variable ids.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Model {
    values: Vec<Option<bool>>,
}

impl Model {
    /// From a dense vector whose index 0 is unused.
    pub fn from_bools(v: &[bool]) -> Model {
        let mut values: Vec<Option<bool>> = v.iter().map(|&b| Some(b)).collect();
        if let Some(first) = values.first_mut() {
            *first = None;
        }
        Model { values }
    }

    pub fn set(&mut self, id: u32, value: bool) {
        let id = id as usize;
        if self.values.len() <= id {
            self.values.resize(id + 1, None);
        }
        self.values[id] = Some(value);
    }

    pub fn get(&self, id: u32) -> Option<bool> {
        self.values.get(id as usize).copied().flatten()
    }

    /// Dense vector of length `var_count + 1`; unassigned ids read false.
    pub fn to_bools(&self, var_count: u32) -> Vec<bool> {
        (0..=var_count).map(|id| id > 0 && self.get(id) == Some(true)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SolveOutcome {
    pub status: Status,
    pub model: Option<Model>,
    pub wall_time: Duration,
    pub graph: Option<Graph>,
    pub report: Option<VerifyReport>,
    pub infeasibility: Option<Infeasibility>,
    /// Raw solver output, kept for diagnostics.
    pub stdout: String,
    pub note: Option<String>,
}

impl SolveOutcome {
    pub fn new(status: Status, wall_time: Duration) -> Self {
        SolveOutcome {
            status,
            model: None,
            wall_time,
            graph: None,
            report: None,
            infeasibility: None,
            stdout: String::new(),
            note: None,
        }
    }

    /// Sat with a graph that passed verification.
    pub fn is_verified_sat(&self) -> bool {
        self.status == Status::Sat && self.report.as_ref().is_some_and(|r| r.passed())
    }
}

/// Graph whose edge `{i,j}` is present iff variable `id(i,j)` is true.
/// Auxiliary variables are ignored.
pub fn decode_model(model: &Model, vm: &VarMap) -> Result<Graph, SolveError> {
    let mut edges = Vec::new();
    for id in 1..=vm.edge_count() {
        match model.get(id) {
            Some(true) => edges.push(vm.edge_pair(id).expect("inside edge block")),
            Some(false) => {}
            None => return Err(SolveError::MissingVariable(id)),
        }
    }
    Ok(Graph::from_edges(vm.n(), &edges).expect("edge ids decode to valid pairs"))
}

/// Builtin DPLL within `limit` decisions.
pub fn builtin_solve(f: &CnfFormula, limit: u64) -> SolveOutcome {
    builtin_solve_until(f, limit, None)
}

pub fn builtin_solve_until(f: &CnfFormula, limit: u64, time_limit: Option<Duration>) -> SolveOutcome {
    let start = Instant::now();
    let (res, stats) = dpll_solve_until(f, limit, time_limit.map(|t| start + t));
    let mut out = SolveOutcome::new(Status::Unknown, Duration::ZERO);
    match res {
        DpllResult::Sat(m) => {
            out.status = Status::Sat;
            out.model = Some(Model::from_bools(&m));
        }
        DpllResult::Unsat => out.status = Status::Unsat,
        DpllResult::Unknown => out.note = Some("decision or time limit reached".into()),
    }
    out.note.get_or_insert_with(|| format!("{} decisions, {} conflicts", stats.decisions, stats.conflicts));
    out.wall_time = start.elapsed();
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Cnf,
    PbNonlinear,
    PbLinear,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Cnf => "cnf",
            Strategy::PbNonlinear => "pb-nonlinear",
            Strategy::PbLinear => "pb-linear",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cnf" => Ok(Strategy::Cnf),
            "pb-nonlinear" | "pb" => Ok(Strategy::PbNonlinear),
            "pb-linear" => Ok(Strategy::PbLinear),
            other => Err(format!("unknown strategy {other:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Backend {
    /// DPLL for CNF, DFS for PB, bounded by a decision count and optionally
    /// by wall time.
    Builtin { decision_limit: u64, time_limit: Option<Duration> },
    External(SolverConfig),
}

enum Encoded {
    Cnf(CnfFormula),
    Pb(PbFormula),
}

impl Encoded {
    fn holds(&self, a: &[bool]) -> bool {
        match self {
            Encoded::Cnf(f) => f.is_satisfied_by(a),
            Encoded::Pb(f) => f.is_satisfied_by(a),
        }
    }
}

/// Screens, encodes, solves, decodes and verifies. A sat answer whose graph
/// fails verification is an error, never a success.
pub fn solve_and_verify(
    p: &SrgParams,
    strategy: Strategy,
    backend: &Backend,
    opts: &EncodeOptions,
) -> Result<SolveOutcome, SolveError> {
    let start = Instant::now();
    let report = feasibility_report(p);
    if let Verdict::Infeasible(why) = report.verdict {
        let mut out = SolveOutcome::new(Status::Infeasible, start.elapsed());
        out.note = Some(format!("rejected by feasibility screen: {why}"));
        out.infeasibility = Some(why);
        return Ok(out);
    }
    let (enc, vm) = match strategy {
        Strategy::Cnf => {
            let (f, vm) = encode_cnf(p, opts)?;
            (Encoded::Cnf(f), vm)
        }
        Strategy::PbNonlinear => {
            let (f, vm) = encode_pb_nonlinear(p, opts)?;
            (Encoded::Pb(f), vm)
        }
        Strategy::PbLinear => {
            let (f, vm) = encode_pb_linear(p, opts)?;
            (Encoded::Pb(f), vm)
        }
    };
    let mut out = match (backend, &enc) {
        (Backend::Builtin { decision_limit, time_limit }, Encoded::Cnf(f)) => {
            builtin_solve_until(f, *decision_limit, *time_limit)
        }
        (Backend::Builtin { decision_limit, time_limit }, Encoded::Pb(f)) => {
            let mut o = SolveOutcome::new(Status::Unknown, Duration::ZERO);
            match pb_solve_until(f, *decision_limit, time_limit.map(|t| Instant::now() + t)) {
                PbResult::Sat(m) => {
                    o.status = Status::Sat;
                    o.model = Some(Model::from_bools(&m));
                }
                PbResult::Unsat => o.status = Status::Unsat,
                PbResult::Unknown => o.note = Some("decision or time limit reached".into()),
            }
            o
        }
        (Backend::External(cfg), enc) => {
            let want = if matches!(enc, Encoded::Cnf(_)) { Dialect::DimacsSat } else { Dialect::OpbSat };
            if cfg.dialect != want {
                return Err(SolveError::Config(format!("strategy {strategy} needs a {want:?} solver, got {:?}", cfg.dialect)));
            }
            let suffix = if matches!(enc, Encoded::Cnf(_)) { ".cnf" } else { ".opb" };
            let mut file = tempfile::Builder::new()
                .prefix("srg-")
                .suffix(suffix)
                .tempfile()
                .map_err(|e| SolveError::Io(e.to_string()))?;
            {
                let mut w = std::io::BufWriter::new(file.as_file_mut());
                match enc {
                    Encoded::Cnf(f) => write_dimacs(f, Some(&vm), &mut w),
                    Encoded::Pb(f) => write_opb(f, Some(&vm), &mut w),
                }
                .and_then(|_| w.flush())
                .map_err(|e| SolveError::Io(e.to_string()))?;
            }
            run_external(file.path(), cfg)?
        }
    };
    if out.status == Status::Sat {
        let model = out.model.as_ref().expect("sat outcomes carry a model");
        let g = decode_model(model, &vm)?;
        let r = verify_srg(&g, p).expect("decoded graph has n vertices");
        if !r.passed() {
            return Err(SolveError::Verification(format!("the decoded graph fails {p}: {r:?}")));
        }
        if !enc.holds(&vm.assignment_for(&g)) {
            return Err(SolveError::Verification("the decoded graph violates the formula".into()));
        }
        out.graph = Some(g);
        out.report = Some(r);
    }
    out.wall_time = start.elapsed();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encode::{symmetry_break_star, Preset};
    use crate::families::paley;

    fn p(n: u64, k: u64, l: u64, m: u64) -> SrgParams {
        SrgParams::new(n, k, l, m).unwrap()
    }

    const BUILTIN: Backend = Backend::Builtin { decision_limit: 10_000_000, time_limit: None };

    #[test]
    fn decode_paley9() {
        let g = paley(9).unwrap();
        let vm = VarMap::new(9);
        let m = Model::from_bools(&vm.assignment_for(&g));
        assert_eq!(decode_model(&m, &vm).unwrap(), g);
        let empty = Model::from_bools(&vec![false; 37]);
        assert_eq!(decode_model(&empty, &vm).unwrap().edge_count(), 0);
        assert_eq!(decode_model(&Model::default(), &vm), Err(SolveError::MissingVariable(1)));
    }

    #[test]
    fn aux_variables_ignored() {
        let vm = {
            let mut v = VarMap::new(5);
            v.add_triple_block(crate::encode::AuxKind::Cherry);
            v
        };
        let mut a = vec![false; vm.var_count() as usize + 1];
        a[1] = true;
        let mut b = a.clone();
        b[vm.cherry(0, 1, 2) as usize] = true;
        assert_eq!(decode_model(&Model::from_bools(&a), &vm), decode_model(&Model::from_bools(&b), &vm));
    }

    #[test]
    fn pipeline_paley9_all_strategies() {
        for s in [Strategy::Cnf, Strategy::PbNonlinear, Strategy::PbLinear] {
            let opts = EncodeOptions::with_preset(Preset::star_normalization(9, 4));
            let out = solve_and_verify(&p(9, 4, 1, 2), s, &BUILTIN, &opts).unwrap();
            assert!(out.is_verified_sat(), "{s}");
        }
    }

    #[test]
    fn pipeline_petersen_forced_regularity() {
        let out = solve_and_verify(&p(10, 3, 0, 1), Strategy::Cnf, &BUILTIN, &EncodeOptions::forced_regularity()).unwrap();
        assert!(out.is_verified_sat());
    }

    #[test]
    fn krein_short_circuit() {
        let out = solve_and_verify(&p(28, 9, 0, 4), Strategy::Cnf, &BUILTIN, &EncodeOptions::default()).unwrap();
        assert_eq!(out.status, Status::Infeasible);
        assert_eq!(out.infeasibility, Some(Infeasibility::Krein(2)));
    }

    #[test]
    fn star_preset_pins_paley9() {
        let params = p(9, 4, 1, 2);
        let opts = EncodeOptions::with_preset(symmetry_break_star(&params).unwrap());
        let (f, vm) = encode_cnf(&params, &opts).unwrap();
        let models = dpll_enumerate(&f, u64::MAX, usize::MAX).unwrap();
        assert_eq!(models.len(), 1);
        let g = decode_model(&Model::from_bools(&models[0]), &vm).unwrap();
        assert!(verify_srg(&g, &params).unwrap().passed());
    }
}
