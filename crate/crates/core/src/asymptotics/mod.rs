//! Limiting constants and densities for `M_2(k)`, quadrature, and
//! theory-versus-data convergence reports.

mod constants;
mod curves;
mod quadrature;
mod report;

use thiserror::Error;

pub use constants::{theory_constants, TheoryConstants};
pub use curves::{
    curve_table, integrate_curve, one_sided_derivatives, u_r, u_z, v, v_piece, w, w_piece,
    CurveId, CurveTable,
};
pub use quadrature::{adaptive_simpson, integrate_with_breaks};
pub use report::{
    convergence_report, l1_distance, ConvergenceReport, Empirical, ReportRow, ReportTarget,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AsymptoticsError {
    #[error("{curve}({delta}) is undefined: domain is {domain}")]
    Domain {
        curve: &'static str,
        delta: f64,
        domain: &'static str,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("mismatched input: {0}")]
    Mismatched(String),
}
