//! Joint measurability of triples of unbiased qubit measurements.
//!
//! The crate decides whether three two-outcome unbiased qubit POVMs admit a
//! common parent measurement, computes the geometric lower bound on the
//! total worst-case approximation error of any jointly measurable
//! substitute, constructs closed-form optimal substitutes for the solvable
//! configurations, and cross-checks everything with a derivative-free
//! numerical search.
//!
//! Start with [`bloch::MeasurementTriple`] and
//! [`compat::is_jointly_measurable_triple`], or see the `examples/`
//! directory for end-to-end walkthroughs.

pub mod analytic;
pub mod bloch;
pub mod compat;
pub mod error;
pub mod ft;
pub mod oracle;
pub mod report;
pub mod tol;
pub mod vec3;

pub use analytic::{approximate, ApproximationResult, CaseClass};
pub use bloch::{BlochVector, MeasurementTriple, QubitState};
pub use compat::{incompatibility_bound, is_jointly_measurable_triple, BoundReport, JmVerdict};
pub use error::{Error, Result};
pub use ft::{fermat_torricelli, FtResult, QuadVertices};
pub use oracle::{certify, minimize_total_distance, OracleConfig, OracleResult};
pub use vec3::Vec3;
