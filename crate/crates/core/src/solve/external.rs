//! External solver processes: configuration, launch with a time limit, and
//! parsing of `s ` / `v ` output lines.

use std::io::Read;
use std::path::Path;
use std::process::{Command, Stdio};
use std::str::FromStr;
use std::time::{Duration, Instant};

use super::{Model, SolveError, SolveOutcome, Status};

/// Output dialect of the model lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dialect {
    /// `v 1 -2 3 … 0`
    DimacsSat,
    /// `v x1 -x2 x3 …`
    OpbSat,
}

impl FromStr for Dialect {
    type Err = SolveError;
    fn from_str(s: &str) -> Result<Self, SolveError> {
        match s.trim() {
            "dimacs-sat" | "dimacs" | "cnf" => Ok(Dialect::DimacsSat),
            "opb-sat" | "opb" | "pb" => Ok(Dialect::OpbSat),
            other => Err(SolveError::Config(format!("unknown dialect {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolverConfig {
    /// Program and arguments; `{input}` is replaced by the formula path, or
    /// the path is appended when no placeholder is present.
    pub command: Vec<String>,
    pub time_limit: Duration,
    pub dialect: Dialect,
}

impl SolverConfig {
    pub fn new(command: &str, time_limit: Duration, dialect: Dialect) -> Result<Self, SolveError> {
        let command: Vec<String> = command.split_whitespace().map(String::from).collect();
        if command.is_empty() {
            return Err(SolveError::Config("empty solver_cmd".into()));
        }
        if time_limit.is_zero() {
            return Err(SolveError::Config("time limit must be positive".into()));
        }
        Ok(SolverConfig { command, time_limit, dialect })
    }

    /// Parses `key = value` lines (`:` also accepted, `#` starts a comment)
    /// with keys `solver_cmd`, `time_limit_s` and `dialect`.
    pub fn parse(text: &str) -> Result<Self, SolveError> {
        let (mut cmd, mut limit, mut dialect) = (None, None, None);
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once(['=', ':']) else {
                return Err(SolveError::Config(format!("line {}: expected key = value", no + 1)));
            };
            let value = value.trim().trim_matches('"');
            match key.trim() {
                "solver_cmd" => cmd = Some(value.to_string()),
                "time_limit_s" => {
                    let s: f64 = value
                        .parse()
                        .map_err(|_| SolveError::Config(format!("line {}: bad time_limit_s {value:?}", no + 1)))?;
                    if !(s > 0.0 && s.is_finite()) {
                        return Err(SolveError::Config("time limit must be positive".into()));
                    }
                    limit = Some(Duration::from_secs_f64(s));
                }
                "dialect" => dialect = Some(value.parse()?),
                other => return Err(SolveError::Config(format!("line {}: unknown key {other:?}", no + 1))),
            }
        }
        let cmd = cmd.ok_or_else(|| SolveError::Config("missing solver_cmd".into()))?;
        SolverConfig::new(
            &cmd,
            limit.unwrap_or(Duration::from_secs(60)),
            dialect.unwrap_or(Dialect::DimacsSat),
        )
    }

    pub fn load(path: &Path) -> Result<Self, SolveError> {
        let text = std::fs::read_to_string(path).map_err(|e| SolveError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn argv(&self, input: &Path) -> Vec<String> {
        let p = input.display().to_string();
        let mut out: Vec<String> = self.command.iter().map(|a| a.replace("{input}", &p)).collect();
        if !self.command.iter().any(|a| a.contains("{input}")) {
            out.push(p);
        }
        out
    }
}

/// Status and model from solver stdout.
pub fn parse_output(text: &str, dialect: Dialect) -> Result<(Status, Model), SolveError> {
    let mut status = None;
    let mut model = Model::default();
    for line in text.lines() {
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" | "OPTIMUM FOUND" => Status::Sat,
                "UNSATISFIABLE" => Status::Unsat,
                "UNKNOWN" => Status::Unknown,
                _ => return Err(SolveError::Parse(line.to_string())),
            });
        } else if let Some(rest) = line.strip_prefix("v ").or(if line == "v" { Some("") } else { None }) {
            for tok in rest.split_whitespace() {
                let (neg, body) = match tok.strip_prefix('-') {
                    Some(b) => (true, b),
                    None => (false, tok),
                };
                let id = match dialect {
                    Dialect::DimacsSat => body.parse::<u32>(),
                    Dialect::OpbSat => body.strip_prefix('x').unwrap_or("?").parse::<u32>(),
                }
                .map_err(|_| SolveError::Parse(line.to_string()))?;
                if id == 0 {
                    if dialect == Dialect::DimacsSat && !neg {
                        continue;
                    }
                    return Err(SolveError::Parse(line.to_string()));
                }
                model.set(id, !neg);
            }
        }
    }
    match status {
        Some(s) => Ok((s, model)),
        None => Err(SolveError::Parse("no status line in solver output".into())),
    }
}

fn kill_tree(child: &mut std::process::Child) {
    #[cfg(unix)]
    {
        let _ = Command::new("kill")
            .args(["-KILL", "--", &format!("-{}", child.id())])
            .stderr(Stdio::null())
            .status();
    }
    let _ = child.kill();
    let _ = child.wait();
}

/// Runs the solver on `input`; kills it at the time limit and reports
/// `Unknown` with whatever output it produced.
pub fn run_external(input: &Path, cfg: &SolverConfig) -> Result<SolveOutcome, SolveError> {
    if !input.exists() {
        return Err(SolveError::Io(format!("{} does not exist", input.display())));
    }
    let argv = cfg.argv(input);
    let start = Instant::now();
    let mut cmd = Command::new(&argv[0]);
    cmd.args(&argv[1..]).stdin(Stdio::null()).stdout(Stdio::piped()).stderr(Stdio::null());
    // own process group, so a wrapper script's children die with it
    #[cfg(unix)]
    std::os::unix::process::CommandExt::process_group(&mut cmd, 0);
    let mut child = cmd
        .spawn()
        .map_err(|e| SolveError::Spawn(format!("{}: {e}", argv[0])))?;
    let mut stdout = child.stdout.take().expect("piped");
    let reader = std::thread::spawn(move || {
        let mut buf = Vec::new();
        let _ = stdout.read_to_end(&mut buf);
        buf
    });
    let mut timed_out = false;
    loop {
        if child.try_wait().map_err(|e| SolveError::Io(e.to_string()))?.is_some() {
            break;
        }
        if start.elapsed() >= cfg.time_limit {
            kill_tree(&mut child);
            timed_out = true;
            break;
        }
        std::thread::sleep(Duration::from_millis(5));
    }
    let text = String::from_utf8_lossy(&reader.join().unwrap_or_default()).into_owned();
    let wall = start.elapsed();
    let mut out = SolveOutcome::new(Status::Unknown, wall);
    if timed_out {
        out.note = Some(format!("killed after {:.1} s", cfg.time_limit.as_secs_f64()));
    } else {
        let (status, model) = parse_output(&text, cfg.dialect)?;
        out.status = status;
        if status == Status::Sat {
            out.model = Some(model);
        }
    }
    out.stdout = text;
    Ok(out)
}
