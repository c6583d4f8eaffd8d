//! Independent verification: finite-difference eigenvalues, weighted
//! quadrature, exact residuals and position audits.
//!
//! Nothing here reuses the block construction; the finite-difference route
//! discretises the half-line Schrödinger operators directly.

pub mod audit;
pub mod fd;
pub mod quadrature;
pub mod report;
pub mod residual;

pub use audit::{qes_position_audit, AuditEntry, AuditReport};
pub use fd::{fd_eigen_radial, fd_eigen_richardson, FdSpectrum, HalfLinePotential, RadialGrid, RichardsonLevel};
pub use quadrature::{weighted_inner_product, QuadratureScheme, Weight};
pub use report::{OracleEntry, OracleReport};
pub use residual::{residual_meter, EigenOperator};
