use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("({n},{k},{lambda},{mu}): degree must satisfy 0 < k < n - 1")]
    Degree { n: u64, k: u64, lambda: u64, mu: u64 },
    #[error("({n},{k},{lambda},{mu}): need lambda < k and mu <= k")]
    Neighbours { n: u64, k: u64, lambda: u64, mu: u64 },
    #[error("complement of ({0},{1},{2},{3}) is degenerate")]
    DegenerateComplement(u64, u64, u64, u64),
    #[error("cannot parse parameters from {0:?}")]
    Parse(String),
}

/// Parameter tuple `(n, k, λ, μ)` of a strongly regular graph.
///
/// Fields are public so callers can hold arbitrary tuples; [`SrgParams::new`]
/// enforces `0 < k < n - 1`, `λ < k`, `μ <= k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SrgParams {
    pub n: u64,
    pub k: u64,
    pub lambda: u64,
    pub mu: u64,
}

impl SrgParams {
    pub fn new(n: u64, k: u64, lambda: u64, mu: u64) -> Result<Self, ParamError> {
        let p = SrgParams { n, k, lambda, mu };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<(), ParamError> {
        let SrgParams { n, k, lambda, mu } = *self;
        if k == 0 || k + 1 >= n {
            return Err(ParamError::Degree { n, k, lambda, mu });
        }
        if lambda >= k || mu > k {
            return Err(ParamError::Neighbours { n, k, lambda, mu });
        }
        Ok(())
    }

    /// Parameters of the complement graph: `(n, n-k-1, n-2-2k+μ, n-2k+λ)`.
    pub fn complement(&self) -> Result<SrgParams, ParamError> {
        let (n, k, l, m) = (self.n as i64, self.k as i64, self.lambda as i64, self.mu as i64);
        let degenerate = || ParamError::DegenerateComplement(self.n, self.k, self.lambda, self.mu);
        let kc = n - k - 1;
        let lc = n - 2 - 2 * k + m;
        let mc = n - 2 * k + l;
        if kc < 0 || lc < 0 || mc < 0 {
            return Err(degenerate());
        }
        SrgParams::new(self.n, kc as u64, lc as u64, mc as u64).map_err(|_| degenerate())
    }

    /// `λ = 1, μ = 2` family member with `n = k²/2 + 1`.
    pub fn is_lambda1_mu2(&self) -> bool {
        self.lambda == 1 && self.mu == 2 && self.k % 2 == 0 && self.n == self.k * self.k / 2 + 1
    }
}

/// Free-function form of [`SrgParams::complement`].
pub fn complement_params(p: &SrgParams) -> Result<SrgParams, ParamError> {
    p.complement()
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.n, self.k, self.lambda, self.mu)
    }
}

impl FromStr for SrgParams {
    type Err = ParamError;

    /// Accepts `n,k,l,m`, `(n,k,l,m)` or whitespace separated values.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let cleaned = s.trim().trim_start_matches('(').trim_end_matches(')');
        let nums: Result<Vec<u64>, _> = cleaned
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect();
        match nums.as_deref() {
            Ok([n, k, l, m]) => SrgParams::new(*n, *k, *l, *m),
            _ => Err(ParamError::Parse(s.to_string())),
        }
    }
}
