//! Strongly regular graphs: feasibility screens, exact constructions,
//! SAT/PB encodings, solver drivers and verification.

pub mod families;
pub mod feasibility;
pub mod field;
pub mod golay;
pub mod encode;
pub mod experiment;
pub mod graph;
pub mod params;
pub mod patterns;
pub mod solve;
pub mod surd;

pub use feasibility::{feasibility_report, spectrum_of, FeasibilityReport, Spectrum};
pub use graph::{verify_srg, Graph, GraphError, VerifyReport};
pub use params::{complement_params, SrgParams};
