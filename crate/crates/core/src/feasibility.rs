//! Arithmetic screens for SRG parameter sets.
//!
//! Everything here is exact: eigenvalues live in `Q(√D)` via [`Surd`], so
//! conference-case parameters with irrational eigenvalues are handled
//! without floating point.

use std::cmp::Ordering;
use std::fmt;

use crate::params::SrgParams;
use crate::surd::Surd;

/// Why a parameter set was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Infeasibility {
    /// Tuple violates `0 < k < n-1`, `λ < k`, `μ <= k`.
    Degenerate,
    /// `(n − k − 1)μ ≠ k(k − λ − 1)`.
    Counting,
    /// Eigenvalue multiplicities are not non-negative integers.
    Integrality(String),
    /// Krein inequality number 1 or 2 fails.
    Krein(u8),
}

impl fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Infeasibility::Degenerate => f.write_str("degenerate parameters"),
            Infeasibility::Counting => f.write_str("counting condition fails"),
            Infeasibility::Integrality(why) => write!(f, "integrality: {why}"),
            Infeasibility::Krein(i) => write!(f, "Krein bound {i} fails"),
        }
    }
}

/// Non-trivial eigenvalues `r > s` and their multiplicities; `k` has
/// multiplicity one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub k: i128,
    pub r: Surd,
    pub s: Surd,
    pub m_r: u64,
    pub m_s: u64,
    /// `(λ − μ)² + 4(k − μ)`
    pub discriminant: i128,
    pub conference: bool,
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}^1, {}^{}, {}^{}}}", self.k, self.r, self.m_r, self.s, self.m_s)
    }
}

/// Both Krein inequalities, `lhs_i <= rhs_i`:
/// `(r+1)(k+r+2rs) <= (k+r)(s+1)²` and `(s+1)(k+s+2rs) <= (k+s)(r+1)²`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KreinReport {
    pub lhs: [Surd; 2],
    pub rhs: [Surd; 2],
}

impl KreinReport {
    /// `rhs − lhs` for each bound; negative means violated.
    pub fn slacks(&self) -> [Surd; 2] {
        [self.rhs[0] - self.lhs[0], self.rhs[1] - self.lhs[1]]
    }

    pub fn holds(&self, i: usize) -> bool {
        self.slacks()[i].signum() != Ordering::Less
    }

    pub fn ok(&self) -> bool {
        self.holds(0) && self.holds(1)
    }

    /// Index (1-based) of the first failing bound.
    pub fn first_failure(&self) -> Option<u8> {
        (0..2).find(|&i| !self.holds(i)).map(|i| i as u8 + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Feasible,
    Infeasible(Infeasibility),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FeasibilityReport {
    pub params: SrgParams,
    pub counting_ok: bool,
    pub integrality_ok: bool,
    pub conference_case: bool,
    pub spectrum: Option<Spectrum>,
    pub krein: Option<KreinReport>,
    pub verdict: Verdict,
}

impl FeasibilityReport {
    pub fn is_feasible(&self) -> bool {
        self.verdict == Verdict::Feasible
    }
}

/// `(n − k − 1)μ = k(k − λ − 1)`.
pub fn counting_check(p: &SrgParams) -> bool {
    let (n, k, l, m) = (p.n as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    (n - k - 1) * m == k * (k - l - 1)
}

fn isqrt(v: i128) -> Option<i128> {
    if v < 0 {
        return None;
    }
    let mut x = (v as f64).sqrt() as i128;
    while x * x > v {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= v {
        x += 1;
    }
    (x * x == v).then_some(x)
}

fn as_multiplicity(v: Surd, what: &str) -> Result<u64, Infeasibility> {
    match v.as_integer() {
        Some(m) if m >= 0 => Ok(m as u64),
        _ => Err(Infeasibility::Integrality(format!("{what} = {v} is not a natural number"))),
    }
}

/// Eigenvalues and multiplicities, or the integrality failure.
///
/// Multiplicities are computed twice, from `r, s` via the trace and from
/// the parameters directly, and the two must agree.
pub fn spectrum_of(p: &SrgParams) -> Result<Spectrum, Infeasibility> {
    if p.validate().is_err() {
        return Err(Infeasibility::Degenerate);
    }
    if !counting_check(p) {
        return Err(Infeasibility::Counting);
    }
    let (n, k, l, m) = (p.n as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    let a = l - m;
    let disc = a * a + 4 * (k - m);
    let root = Surd::sqrt(disc);
    let r = Surd::new(a, 1, 2, disc);
    let s = Surd::new(a, -1, 2, disc);
    let skew = 2 * k + (n - 1) * a;
    let conference = skew == 0;

    if conference {
        if (n - 1) % 2 != 0 {
            return Err(Infeasibility::Integrality(format!(
                "conference case needs odd n, got {n}"
            )));
        }
    } else if isqrt(disc).is_none() {
        return Err(Infeasibility::Integrality(format!(
            "discriminant {disc} is not a perfect square"
        )));
    }

    // from the parameters: m = ½[(n−1) ∓ (2k + (n−1)(λ−μ))/√D]
    let half = Surd::new(1, 0, 2, 1);
    let ratio = Surd::int(skew)
        .checked_div(root)
        .expect("discriminant is positive for valid parameters");
    let m_r_direct = half * (Surd::int(n - 1) - ratio);
    let m_s_direct = half * (Surd::int(n - 1) + ratio);

    // from the eigenvalues: m_s = ((n−1)r + k)/(r − s), m_r = ((n−1)s + k)/(s − r)
    let nm1 = Surd::int(n - 1);
    let kk = Surd::int(k);
    let m_s_trace = (nm1 * r + kk).checked_div(r - s).expect("r ≠ s");
    let m_r_trace = (nm1 * s + kk).checked_div(s - r).expect("r ≠ s");
    assert_eq!(m_r_direct, m_r_trace, "multiplicity formulas disagree for {p}");
    assert_eq!(m_s_direct, m_s_trace, "multiplicity formulas disagree for {p}");

    let m_r = as_multiplicity(m_r_direct, "m_r")?;
    let m_s = as_multiplicity(m_s_direct, "m_s")?;
    Ok(Spectrum {
        k,
        r,
        s,
        m_r,
        m_s,
        discriminant: disc,
        conference,
    })
}

/// Evaluates both Krein inequalities exactly.
pub fn krein_check(spec: &Spectrum) -> KreinReport {
    let one = Surd::int(1);
    let two = Surd::int(2);
    let (k, r, s) = (Surd::int(spec.k), spec.r, spec.s);
    let rs2 = two * r * s;
    KreinReport {
        lhs: [(r + one) * (k + r + rs2), (s + one) * (k + s + rs2)],
        rhs: [(k + r) * (s + one) * (s + one), (k + s) * (r + one) * (r + one)],
    }
}

/// Counting, integrality and Krein screens in that order; the first failure
/// decides the verdict.
pub fn feasibility_report(p: &SrgParams) -> FeasibilityReport {
    let mut report = FeasibilityReport {
        params: *p,
        counting_ok: false,
        integrality_ok: false,
        conference_case: false,
        spectrum: None,
        krein: None,
        verdict: Verdict::Feasible,
    };
    if p.validate().is_err() {
        report.verdict = Verdict::Infeasible(Infeasibility::Degenerate);
        return report;
    }
    report.counting_ok = counting_check(p);
    if !report.counting_ok {
        report.verdict = Verdict::Infeasible(Infeasibility::Counting);
        return report;
    }
    let (n, k, l, m) = (p.n as i128, p.k as i128, p.lambda as i128, p.mu as i128);
    report.conference_case = 2 * k + (n - 1) * (l - m) == 0;
    let spec = match spectrum_of(p) {
        Ok(s) => s,
        Err(why) => {
            report.verdict = Verdict::Infeasible(why);
            return report;
        }
    };
    report.integrality_ok = true;
    let krein = krein_check(&spec);
    if let Some(i) = krein.first_failure() {
        report.verdict = Verdict::Infeasible(Infeasibility::Krein(i));
    }
    report.spectrum = Some(spec);
    report.krein = Some(krein);
    report
}

/// The parameter sets with `λ = 1, μ = 2` that survive the counting and
/// integrality conditions.
///
/// Counting forces `n = k²/2 + 1`; the discriminant is `4k − 7 = t²`, and
/// integral multiplicities force `t | 63`. `t = 1` gives `k = 2`, i.e. the
/// triangle, which is excluded.
pub fn enumerate_lambda1_mu2() -> Vec<SrgParams> {
    let mut out = Vec::new();
    for t in (1..=63u64).filter(|t| 63 % t == 0) {
        if (t * t + 7) % 4 != 0 {
            continue;
        }
        let k = (t * t + 7) / 4;
        if k % 2 != 0 {
            continue;
        }
        let n = k * k / 2 + 1;
        if let Ok(p) = SrgParams::new(n, k, 1, 2) {
            out.push(p);
        }
    }
    out
}
