//! Orthonormal eigenbases: Laguerre functions on the half-line, Hermite
//! functions on the line, spherical harmonics, and abstract eigenvalue
//! tables, plus the Gaussian quadrature rules used to project onto them.

pub mod axis;
pub mod hermite;
pub mod laguerre;
pub mod quadrature;
pub mod sphere;

pub use axis::BasisAxis;
pub use quadrature::{make_quadrature, QuadKind, QuadratureRule};
pub use sphere::SphereIndexer;
