//! SAT and pseudo-Boolean encodings of SRG existence.

mod claw;
mod cnf;
mod pb;
mod preset;
mod varmap;
mod read;
mod write;

pub use claw::{encode_maxsat_claw, encode_maxsat_claw_for, ClawMaxSat};
pub use cnf::{cnf_at_most, cnf_exactly, cnf_exactly_guarded, encode_cnf, estimate_cnf_clauses, CnfFormula};
pub use pb::{
    encode_pb_linear, encode_pb_nonlinear, encode_triangular_view, encode_triangular_view_for,
    PbConstraint, PbFormula, PbTerm, Relation,
};
pub use preset::{preset_paley9_blocks, star_labels, symmetry_break_star, Preset};
pub use varmap::{AuxBlock, AuxKind, VarMap};
pub use read::{read_dimacs, read_opb};
pub use write::{write_dimacs, write_opb};

pub(crate) use varmap::binom;

use thiserror::Error;

/// Largest single cardinality expansion, in clauses.
pub const CLAUSE_BUDGET: u128 = 10_000_000;
/// Default cap on a whole CNF formula, in clauses.
pub const TOTAL_CLAUSE_BUDGET: u128 = 50_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EncodeError {
    #[error("{what} needs {required} clauses (about {}), budget is {budget}", sci(*required))]
    Budget { what: String, required: u128, budget: u128 },
    #[error("bound {theta} outside 0..={len}")]
    BadBound { len: usize, theta: usize },
    #[error("preset does not apply: {0}")]
    Preset(String),
    #[error("preset assigns pair ({0}, {1}) both ways")]
    PresetConflict(usize, usize),
}

/// `1.88e17`-style rendering.
pub fn sci(x: u128) -> String {
    format!("{:.2e}", x as f64)
}

/// Whether vertex-degree constraints are emitted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Regularity {
    /// Only when `μ ≤ 1`; for `μ > 1` constant λ and μ already force it.
    #[default]
    Auto,
    Force,
    Omit,
}

impl Regularity {
    pub fn include(self, mu: u64) -> bool {
        match self {
            Regularity::Auto => mu <= 1,
            Regularity::Force => true,
            Regularity::Omit => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodeOptions {
    pub regularity: Regularity,
    pub preset: Preset,
    pub clause_budget: u128,
    pub total_budget: u128,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            regularity: Regularity::Auto,
            preset: Preset::default(),
            clause_budget: CLAUSE_BUDGET,
            total_budget: TOTAL_CLAUSE_BUDGET,
        }
    }
}

impl EncodeOptions {
    pub fn with_preset(preset: Preset) -> Self {
        EncodeOptions { preset, ..Default::default() }
    }

    pub fn forced_regularity() -> Self {
        EncodeOptions { regularity: Regularity::Force, ..Default::default() }
    }
}
