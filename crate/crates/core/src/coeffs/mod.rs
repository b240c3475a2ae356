//! Coefficient tensors and the operations on them: expansion by
//! quadrature, synthesis, decay classification, the Laguerre sign
//! involution, the polydisc generating function, and the weighted
//! seminorm estimator.

pub mod classify;
pub mod polydisc;
pub mod tensor;
pub mod transform;

pub use classify::{classify_decay, Classification, DecayFit};
pub use polydisc::{a_from_b, b_from_a, polydisc_eval, PolydiscValue};
pub use tensor::{CoefficientTensor, DROP_THRESHOLD};
pub use transform::{expand, expand_with_boost, estimate_g_seminorm, hankel_clifford, synthesize};
