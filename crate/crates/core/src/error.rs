//! Error type shared by all solver stages.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum EtrsError {
    #[error("dimension mismatch: {context} (expected {expected}, got {got})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("instance is infeasible: beta = {beta} < -sqrt(delta)*||b|| = {bound}")]
    Infeasible { beta: f64, bound: f64 },

    #[error("{solver} did not converge after {iterations} iterations (best residual {residual:.3e})")]
    Convergence {
        solver: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("conjugate gradient breakdown: {reason} (residual {residual:.3e})")]
    CgBreakdown { reason: &'static str, residual: f64 },

    #[error("hard-case recovery failed: {0}")]
    HardCase(String),

    #[error("degenerate geometry: {0}")]
    Degenerate(String),

    #[error("strong duality check inconclusive: {0}")]
    DualityInconclusive(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("parse error in {path} line {line}: {message}")]
    Parse {
        path: String,
        line: usize,
        message: String,
    },

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, EtrsError>;
