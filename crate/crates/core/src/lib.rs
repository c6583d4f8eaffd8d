//! Quasi-exactly solvable (QES) Dunkl oscillators on the line and in the plane,
//! and the QES Dunkl-Coulomb family in the plane.
//!
//! The crate is organised bottom-up:
//!
//! * [`quasi`] and [`grid`] hold the exact function class
//!   `exp(-(q4/4)x^4 - (q2/2)x^2 - q1 x) * P(x)` and sampled functions on
//!   reflection-closed grids.
//! * [`dunkl`] applies the reflection, Dunkl and extended Dunkl derivatives and
//!   the QES line Hamiltonian exactly on that class.
//! * [`radial`] applies the radial plane Hamiltonians exactly.
//! * [`tridiag`], [`block`] and [`spectra`] build and diagonalise the finite
//!   tridiagonal blocks and turn eigenpairs into energies and wavefunctions.
//! * [`es`] has the exactly solvable baselines (Laguerre machinery).
//! * [`oracle`] is the brute-force verification layer: finite differences,
//!   weighted quadrature, residual meters and position audits.

// `!(x > y)` is used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod block;
pub mod dunkl;
pub mod es;
pub mod grid;
pub mod oracle;
pub mod params;
pub mod potential;
pub mod quasi;
pub mod radial;
pub mod roots;
pub mod spectra;
pub mod tridiag;

mod error;

pub use block::{BlockKind, QesBlock, SymmetrizedBlock};
pub use dunkl::{HamiltonianForm, LineHamiltonian};
pub use error::{Error, Result};
pub use grid::GridFunction;
pub use params::{DunklParams, EffectiveL, GaugeParams, Parity, PlaneSector};
pub use quasi::{Gauge, QuasiPolynomial};
pub use radial::RadialHamiltonian;
pub use spectra::{Family, Provenance, QesSolution, SectorInfo};
