pub mod constructions;
pub mod dyadic;
pub mod error;
pub mod exponent;
pub mod frames;
pub mod haar;
pub mod hs;
pub mod linalg;
pub mod norm_estimate;
pub mod report;
pub mod rng;
pub mod spaces;
pub mod tailvec;

pub use constructions::{ConstructionId, L1Counterexample};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use exponent::{conjugate_exponent, Exponent};
pub use frames::{FramePair, HilbertFrame};
pub use haar::{HaarIndex, StepFunction};
pub use hs::{AnalysisOperator, HsfOperator};
pub use norm_estimate::EstimatorConfig;
pub use report::{BatteryConfig, VerifyReport};
pub use spaces::{DualVec, OperatorArray, SeqVec};
pub use tailvec::TailVec;
