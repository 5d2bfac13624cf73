pub mod abelian;
pub mod cyclo;
pub mod error;
pub mod metric;
pub mod pointed;
pub mod qscalars;

pub use abelian::{FinAbGroup, Subgroup};
pub use cyclo::Cyclotomic;
pub use error::{Error, Result};
pub use metric::{MetricGroup, RibbonPointedData};
