//! Exact computational toolkit for trace codes of linear codes over
//! extension fields: code constructors, trace/subfield subcodes, the λ
//! invariant, and maximum-trace-dimension probabilities.

pub mod codes;
pub mod error;
pub mod gf;
pub mod lambda;
pub mod linalg;
pub mod probability;
pub mod tracedim;
mod util;

pub use codes::{LinearCode, Multiplier, Support, WeightDistribution};
pub use error::{Error, Result};
pub use gf::{Element, FieldTower, Level};
pub use lambda::{LambdaMethod, LambdaValue, Rational, SubmatrixRankTable};
pub use linalg::Matrix;
pub use probability::{AlternantReport, ProbabilityResult, RngSpec};
pub use tracedim::SubfieldCode;
