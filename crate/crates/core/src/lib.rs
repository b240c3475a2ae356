//! Eigenfunction-expansion toolkit.
//!
//! The crate is organized around five subsystems:
//!
//! * [`weights`] — weight sequences `M_p`, structural condition checks on
//!   finite prefixes, and the associated function `M(t) = sup_p log+ t^p/M_p`.
//! * [`indexing`] — graded multi-index enumeration and the renumbering of
//!   Laguerre eigenvalues into a single linear order.
//! * [`bases`] — orthonormal Laguerre, Hermite and spherical-harmonic
//!   families with their eigenvalues and Gaussian quadrature rules, plus
//!   abstract axes given by eigenvalue tables alone.
//! * [`coeffs`] — sparse coefficient tensors over products of axes:
//!   expansion, synthesis, decay classification, the Hankel–Clifford sign
//!   involution, polydisc generating functions and a seminorm estimator.
//! * [`solver`] — the diagonal solver for `L u = f`: exact symbol
//!   evaluation over the index lattice, resonance/zero-data sets,
//!   coefficient division, and Liouville small-divisor scans.

pub mod bases;
pub mod coeffs;
pub mod error;
pub mod indexing;
pub mod interval;
pub mod rational;
pub mod solver;
pub mod weights;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
