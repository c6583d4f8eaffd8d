use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("not QES-normalizable: quartic gauge coefficient a = {0} must be > 0")]
    NotNormalizable(f64),

    #[error("block not symmetrizable: sub*sup product {product} at row {row} is not positive")]
    NotSymmetrizable { row: usize, product: f64 },

    #[error("grid not reflection-closed")]
    GridNotReflectionClosed,

    #[error("gauge mismatch: {0}")]
    GaugeMismatch(String),

    #[error("operation requires an even gauge (no linear exponent term)")]
    OddGauge,

    #[error("tridiagonal eigensolver did not converge after {iterations} iterations (diag = {diag:?}, offdiag = {offdiag:?})")]
    NoConvergence {
        iterations: usize,
        diag: Vec<f64>,
        offdiag: Vec<f64>,
    },

    #[error("no closed form for n = {0}: closed forms exist only for n = 0 and n = 1")]
    NoClosedForm(u32),

    #[error("divergent inner product: {0}")]
    DivergentInnerProduct(String),

    #[error("non-finite potential value {value} at grid node {node} (r = {r})")]
    NonFinitePotential { node: usize, r: f64, value: f64 },

    #[error("zero wavefunction has no residual")]
    ZeroWavefunction,
}
