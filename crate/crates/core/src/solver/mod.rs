//! Diagonal operators on coefficient tensors: exact symbols over
//! Q(sqrt 2), resonance detection, the coefficient-wise solve, and
//! small-divisor diagnostics.

pub mod liouville;
pub mod operator;
pub mod quadext;
pub mod resonance;

pub use liouville::{
    adversarial_c3, assess_growth_conditions, liouville_scan, report_csv, GrowthAssessment,
    LevelArg, LiouvilleReport, LiouvilleRow,
};
pub use operator::{forward_apply, symbol, CoeffValue, OperatorFactor, OperatorSpec};
pub use quadext::QuadExt;
pub use resonance::{
    resonance_scan, solve, Hypoellipticity, ResonanceReport, ResonanceVerdict, SolveOptions,
    SolveReport, SolveVerdict,
};
