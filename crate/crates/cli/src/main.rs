//! `srg`: feasibility screening, constructions, verification, encoding,
//! solving and experiment tables for strongly regular graphs.
//!
//! Exit codes: 0 feasible/sat/pass, 1 infeasible/unsat/fail, 2 usage or
//! input error, 3 unknown.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use srg_core::encode::{
    encode_cnf, encode_maxsat_claw_for, encode_pb_linear, encode_pb_nonlinear, preset_paley9_blocks, read_dimacs,
    read_opb, symmetry_break_star, write_dimacs, write_opb, EncodeOptions, Preset, Regularity,
};
use srg_core::experiment::{parse_table, run_table, CSV_HEADER};
use srg_core::feasibility::{feasibility_report, Infeasibility, Verdict};
use srg_core::patterns::{check_paley9_pattern, find_paley9_subgraphs, pair_labels};
use srg_core::solve::{
    dpll_solve, pb_solve, solve_and_verify, Backend, Dialect, DpllResult, PbResult, SolverConfig, Status, Strategy,
};
use srg_core::{families, golay, verify_srg, Graph, SrgParams};

/// Environment variable naming the default solver config file.
const CONFIG_ENV: &str = "SRG_SOLVER_CONFIG";

#[derive(Parser)]
#[command(name = "srg", version, about = "Strongly regular graph search toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Copy)]
struct ParamArgs {
    n: u64,
    k: u64,
    lambda: u64,
    mu: u64,
}

impl ParamArgs {
    fn params(self) -> Result<SrgParams> {
        Ok(SrgParams::new(self.n, self.k, self.lambda, self.mu)?)
    }
}

#[derive(Args, Clone, Copy, Default)]
struct RegFlags {
    /// Always add regularity constraints.
    #[arg(long, conflicts_with = "omit_regularity")]
    force_regularity: bool,
    /// Never add regularity constraints.
    #[arg(long)]
    omit_regularity: bool,
}

impl RegFlags {
    fn regularity(self) -> Regularity {
        match (self.force_regularity, self.omit_regularity) {
            (true, _) => Regularity::Force,
            (_, true) => Regularity::Omit,
            _ => Regularity::Auto,
        }
    }
}

#[derive(Args, Clone, Default)]
struct EncodeFlags {
    #[command(flatten)]
    reg: RegFlags,
    /// Fix the neighbourhood of vertex 0 to 1..=k.
    #[arg(long)]
    star: bool,
    /// Full star labelling around vertex 0 (lambda = 1, mu = 2 only).
    #[arg(long, conflicts_with = "star")]
    star_break: bool,
    /// Preset this many disjoint Paley(9) blocks.
    #[arg(long, value_name = "COUNT")]
    paley9_blocks: Option<usize>,
}

impl EncodeFlags {
    fn options(&self, p: &SrgParams) -> Result<EncodeOptions> {
        let mut opts = EncodeOptions::default();
        opts.regularity = self.reg.regularity();
        let mut preset = Preset::new();
        if self.star {
            preset = Preset::star_normalization(p.n as usize, p.k as usize);
        }
        if self.star_break {
            preset = symmetry_break_star(p)?;
        }
        if let Some(c) = self.paley9_blocks {
            preset = preset.merged(&preset_paley9_blocks(c, p.n as usize)?)?;
        }
        preset.check(p.n as usize)?;
        opts.preset = preset;
        Ok(opts)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Cnf,
    PbNonlinear,
    PbLinear,
    /// Claw-minimisation MAX-SAT in OPB.
    Claw,
}

#[derive(Subcommand)]
enum Cmd {
    /// Counting, integrality and Krein screens.
    Feasible(ParamArgs),
    /// Build a graph from a classical family and write it after verifying.
    Construct {
        #[command(subcommand)]
        family: Family,
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
    /// Check a graph file against parameters.
    Verify {
        graph: PathBuf,
        #[command(flatten)]
        params: ParamArgs,
    },
    /// Write a DIMACS or OPB formula.
    Encode {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, value_enum, default_value = "cnf")]
        format: Format,
        #[arg(long, conflicts_with_all = ["pb_nonlinear", "pb_linear"])]
        cnf: bool,
        #[arg(long, conflicts_with = "pb_linear")]
        pb_nonlinear: bool,
        #[arg(long)]
        pb_linear: bool,
        #[command(flatten)]
        flags: EncodeFlags,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode, solve, decode and verify.
    Solve {
        #[command(flatten)]
        params: ParamArgs,
        /// cnf, pb-nonlinear or pb-linear; defaults to the solver's dialect.
        #[arg(long)]
        strategy: Option<Strategy>,
        /// Solver config file; falls back to $SRG_SOLVER_CONFIG.
        #[arg(long)]
        solver_config: Option<PathBuf>,
        /// Ignore any configured solver and use the builtin search.
        #[arg(long, conflicts_with = "solver_config")]
        builtin: bool,
        /// Seconds; overrides the config's limit.
        #[arg(long)]
        time_limit: Option<f64>,
        #[arg(long, default_value_t = u64::MAX)]
        decision_limit: u64,
        #[command(flatten)]
        flags: EncodeFlags,
        /// Where to write the graph on sat.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run a table of `n k lambda mu strategy limit_s` rows; CSV to stdout.
    Experiment {
        table: PathBuf,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        solver_config: Option<PathBuf>,
        #[arg(long, conflicts_with = "solver_config")]
        builtin: bool,
        #[command(flatten)]
        reg: RegFlags,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Pair labels and the Paley(9) pattern of a graph file.
    Pattern {
        graph: PathBuf,
        /// Only this vertex; default all.
        #[arg(long)]
        vertex: Option<usize>,
        /// Also list induced Paley(9) subgraphs.
        #[arg(long)]
        find: bool,
    },
    /// Builtin DPLL on a DIMACS file, competition-style output.
    Dpll {
        input: PathBuf,
        #[arg(long, default_value_t = u64::MAX)]
        decision_limit: u64,
    },
    /// Builtin PB search on an OPB file, competition-style output.
    Pbsolve {
        input: PathBuf,
        #[arg(long, default_value_t = u64::MAX)]
        decision_limit: u64,
    },
}

#[derive(Subcommand, Clone)]
enum Family {
    Paley { q: u64 },
    Rook { m: usize },
    Triangular { m: usize },
    Kneser { m: usize, t: usize },
    Petersen,
    Bvls,
}

fn out_writer(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn read_graph(path: &Path) -> Result<Graph> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Graph::parse_text(&text).with_context(|| format!("parsing {}", path.display()))?)
}

fn cmd_feasible(p: SrgParams) -> Result<u8> {
    let r = feasibility_report(&p);
    println!("params {p}");
    println!("counting {}", if r.counting_ok { "ok" } else { "fails" });
    println!("integrality {}", if r.integrality_ok { "ok" } else { "fails" });
    println!("conference {}", r.conference_case);
    if let Some(s) = &r.spectrum {
        println!("spectrum k={} r={} m_r={} s={} m_s={}", s.k, s.r, s.m_r, s.s, s.m_s);
    }
    if let Some(kr) = &r.krein {
        for i in 0..2 {
            let rel = if kr.holds(i) { "<=" } else { ">" };
            println!("krein{} {} {rel} {}", i + 1, kr.lhs[i], kr.rhs[i]);
        }
    }
    match &r.verdict {
        Verdict::Feasible => {
            println!("feasible");
            Ok(0)
        }
        Verdict::Infeasible(why) => {
            println!("infeasible: {why}");
            Ok(1)
        }
    }
}

fn construct(f: &Family) -> Result<(Graph, SrgParams)> {
    Ok(match *f {
        Family::Paley { q } => (families::paley(q)?, families::paley_params(q)),
        Family::Rook { m } => (families::rook(m)?, families::rook_params(m as u64)),
        Family::Triangular { m } => (families::triangular(m)?, families::triangular_params(m as u64)),
        Family::Kneser { m, t } => {
            let g = families::kneser(m, t)?;
            if t != 2 {
                bail!("kneser({m},{t}) is only checked for t = 2");
            }
            // complement of the triangular graph
            (g, families::triangular_params(m as u64).complement()?)
        }
        Family::Petersen => (families::petersen(), SrgParams::new(10, 3, 0, 1)?),
        Family::Bvls => (golay::bvls_construct(), SrgParams::new(243, 22, 1, 2)?),
    })
}

fn cmd_construct(f: &Family, output: Option<&Path>) -> Result<u8> {
    let (g, p) = construct(f)?;
    let r = verify_srg(&g, &p)?;
    if !r.passed() {
        bail!("constructed graph fails {p}: {r:?}");
    }
    let mut w = out_writer(output)?;
    g.write_text(&mut w)?;
    w.flush()?;
    eprintln!("verified {p}");
    Ok(0)
}

fn cmd_verify(path: &Path, p: SrgParams) -> Result<u8> {
    let g = read_graph(path)?;
    let r = verify_srg(&g, &p)?;
    let degs: Vec<String> = r.degrees.iter().map(|(d, c)| format!("{d}:{c}")).collect();
    println!("regular {} (degrees {})", r.is_regular, degs.join(" "));
    match r.lambda_violation {
        Some(v) => println!("lambda false: pair {:?} has {} common neighbours", v.pair, v.observed),
        None => println!("lambda {}", r.lambda_ok),
    }
    match r.mu_violation {
        Some(v) => println!("mu false: pair {:?} has {} common neighbours", v.pair, v.observed),
        None => println!("mu {}", r.mu_ok),
    }
    println!("matrix_identity {}", r.matrix_identity_ok);
    println!("connected {} complement_connected {}", r.is_connected, r.complement_connected);
    println!("{}", if r.passed() { "pass" } else { "fail" });
    Ok(if r.passed() { 0 } else { 1 })
}

fn cmd_encode(p: SrgParams, format: Format, flags: &EncodeFlags, output: Option<&Path>) -> Result<u8> {
    let opts = flags.options(&p)?;
    match format {
        Format::Cnf => {
            let (f, vm) = encode_cnf(&p, &opts)?;
            let mut w = out_writer(output)?;
            write_dimacs(&f, Some(&vm), &mut w)?;
            w.flush()?;
            eprintln!("{} variables, {} clauses", f.var_count, f.clauses.len());
        }
        Format::PbNonlinear | Format::PbLinear => {
            let (f, vm) = if matches!(format, Format::PbLinear) {
                encode_pb_linear(&p, &opts)?
            } else {
                encode_pb_nonlinear(&p, &opts)?
            };
            let mut w = out_writer(output)?;
            write_opb(&f, Some(&vm), &mut w)?;
            w.flush()?;
            eprintln!("{} variables, {} constraints", f.var_count, f.constraints.len());
        }
        Format::Claw => {
            if p.lambda != 1 {
                bail!("claw encoding needs lambda = 1, got {p}");
            }
            let m = encode_maxsat_claw_for(p.n as usize, p.k, p.mu, &opts.preset)?;
            let mut w = out_writer(output)?;
            m.write_opb(&mut w)?;
            w.flush()?;
            eprintln!("{} variables, {} constraints", m.vm.var_count(), m.constraint_count());
        }
    }
    Ok(0)
}

fn load_config(explicit: Option<&Path>, builtin: bool) -> Result<Option<SolverConfig>> {
    if builtin {
        return Ok(None);
    }
    let path = match explicit {
        Some(p) => Some(p.to_path_buf()),
        None => std::env::var_os(CONFIG_ENV).filter(|v| !v.is_empty()).map(PathBuf::from),
    };
    Ok(match path {
        Some(p) => Some(SolverConfig::load(&p)?),
        None => None,
    })
}

fn status_code(s: Status) -> u8 {
    match s {
        Status::Sat => 0,
        Status::Unsat | Status::Infeasible => 1,
        Status::Unknown => 3,
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_solve(
    p: SrgParams,
    strategy: Option<Strategy>,
    config: Option<SolverConfig>,
    time_limit: Option<f64>,
    decision_limit: u64,
    flags: &EncodeFlags,
    output: Option<&Path>,
) -> Result<u8> {
    let limit = match time_limit {
        Some(t) if t > 0.0 && t.is_finite() => Some(Duration::from_secs_f64(t)),
        Some(t) => bail!("time limit must be positive, got {t}"),
        None => None,
    };
    let (backend, strategy) = match config {
        Some(mut cfg) => {
            if let Some(t) = limit {
                cfg.time_limit = t;
            }
            let s = strategy.unwrap_or(match cfg.dialect {
                Dialect::DimacsSat => Strategy::Cnf,
                Dialect::OpbSat => Strategy::PbLinear,
            });
            (Backend::External(cfg), s)
        }
        None => (Backend::Builtin { decision_limit, time_limit: limit }, strategy.unwrap_or(Strategy::Cnf)),
    };
    let opts = flags.options(&p)?;
    let out = solve_and_verify(&p, strategy, &backend, &opts)?;
    println!("status {}", out.status);
    println!("time_s {:.3}", out.wall_time.as_secs_f64());
    if let Some(n) = &out.note {
        println!("note {n}");
    }
    if let Some(Infeasibility::Krein(i)) = out.infeasibility {
        println!("krein bound {i} fails");
    }
    if let Some(g) = &out.graph {
        println!("verified {p}");
        if let Some(path) = output {
            let mut w = out_writer(Some(path))?;
            g.write_text(&mut w)?;
            w.flush()?;
        }
    }
    Ok(status_code(out.status))
}

fn cmd_experiment(
    table: &Path,
    jobs: usize,
    config: Option<SolverConfig>,
    reg: RegFlags,
    output: Option<&Path>,
) -> Result<u8> {
    let text = std::fs::read_to_string(table).with_context(|| format!("reading {}", table.display()))?;
    let (rows, errs) = parse_table(&text);
    for e in &errs {
        eprintln!("{}:{}: {}", table.display(), e.line, e.message);
    }
    let backend = match config {
        Some(cfg) => Backend::External(cfg),
        None => Backend::Builtin { decision_limit: u64::MAX, time_limit: None },
    };
    let opts = EncodeOptions { regularity: reg.regularity(), ..EncodeOptions::default() };
    let results = run_table(&rows, &backend, &opts, jobs);
    let mut w = out_writer(output)?;
    writeln!(w, "{CSV_HEADER}")?;
    for r in &results {
        writeln!(w, "{}", r.csv_line())?;
        if !r.comment.is_empty() {
            eprintln!("{} {}: {}", r.params, r.strategy, r.comment);
        }
    }
    w.flush()?;
    Ok(if errs.is_empty() { 0 } else { 2 })
}

fn cmd_pattern(path: &Path, vertex: Option<usize>, find: bool) -> Result<u8> {
    let g = read_graph(path)?;
    let vs: Vec<usize> = match vertex {
        Some(v) if v < g.n() => vec![v],
        Some(v) => bail!("vertex {v} out of range for {} vertices", g.n()),
        None => (0..g.n()).collect(),
    };
    let mut all = true;
    for v in vs {
        let labels = pair_labels(&g, v)?;
        let c = check_paley9_pattern(&g, v)?;
        match c.first_failure {
            None => println!("vertex {v}: {} labels, pattern holds ({} pairs)", labels.len(), c.pairs_checked),
            Some((a, b)) => {
                all = false;
                println!("vertex {v}: {} labels, pattern fails at edges {a:?} {b:?}", labels.len());
            }
        }
    }
    if find {
        let subs = find_paley9_subgraphs(&g);
        println!("paley9_subgraphs {}", subs.len());
        for s in subs {
            let s: Vec<String> = s.iter().map(|v| v.to_string()).collect();
            println!("{}", s.join(" "));
        }
    }
    Ok(if all { 0 } else { 1 })
}

fn print_model(model: &[bool], prefix: &str, terminator: bool) {
    let mut line = String::from("v");
    for (v, &b) in model.iter().enumerate().skip(1) {
        line.push_str(&format!(" {}{prefix}{v}", if b { "" } else { "-" }));
        if line.len() > 70 {
            println!("{line}");
            line = String::from("v");
        }
    }
    if terminator {
        line.push_str(" 0");
    }
    if line != "v" {
        println!("{line}");
    }
}

fn cmd_dpll(input: &Path, limit: u64) -> Result<u8> {
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let f = read_dimacs(&text).map_err(anyhow::Error::msg)?;
    let (res, stats) = dpll_solve(&f, limit);
    println!("c decisions {} conflicts {}", stats.decisions, stats.conflicts);
    Ok(match res {
        DpllResult::Sat(m) => {
            println!("s SATISFIABLE");
            print_model(&m, "", true);
            0
        }
        DpllResult::Unsat => {
            println!("s UNSATISFIABLE");
            1
        }
        DpllResult::Unknown => {
            println!("s UNKNOWN");
            3
        }
    })
}

fn cmd_pbsolve(input: &Path, limit: u64) -> Result<u8> {
    let text = std::fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
    let f = read_opb(&text).map_err(anyhow::Error::msg)?;
    Ok(match pb_solve(&f, limit) {
        PbResult::Sat(m) => {
            println!("s SATISFIABLE");
            print_model(&m, "x", false);
            0
        }
        PbResult::Unsat => {
            println!("s UNSATISFIABLE");
            1
        }
        PbResult::Unknown => {
            println!("s UNKNOWN");
            3
        }
    })
}

fn run(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Feasible(a) => cmd_feasible(a.params()?),
        Cmd::Construct { family, output } => cmd_construct(&family, output.as_deref()),
        Cmd::Verify { graph, params } => cmd_verify(&graph, params.params()?),
        Cmd::Encode { params, format, cnf, pb_nonlinear, pb_linear, flags, output } => {
            let format = match (cnf, pb_nonlinear, pb_linear) {
                (true, _, _) => Format::Cnf,
                (_, true, _) => Format::PbNonlinear,
                (_, _, true) => Format::PbLinear,
                _ => format,
            };
            cmd_encode(params.params()?, format, &flags, output.as_deref())
        }
        Cmd::Solve { params, strategy, solver_config, builtin, time_limit, decision_limit, flags, output } => {
            let cfg = load_config(solver_config.as_deref(), builtin)?;
            cmd_solve(params.params()?, strategy, cfg, time_limit, decision_limit, &flags, output.as_deref())
        }
        Cmd::Experiment { table, jobs, solver_config, builtin, reg, output } => {
            let cfg = load_config(solver_config.as_deref(), builtin)?;
            cmd_experiment(&table, jobs, cfg, reg, output.as_deref())
        }
        Cmd::Pattern { graph, vertex, find } => cmd_pattern(&graph, vertex, find),
        Cmd::Dpll { input, decision_limit } => cmd_dpll(&input, decision_limit),
        Cmd::Pbsolve { input, decision_limit } => cmd_pbsolve(&input, decision_limit),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
