pub mod band;
pub mod su2;
pub mod build;
pub mod checks;

pub use band::{C64, TruncOp};
