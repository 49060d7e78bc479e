pub mod algkernel;
pub mod coring;
pub mod entwine;
pub mod error;
pub mod exactla;
pub mod frobenius;
pub mod graded;
pub mod report;

pub use error::{Error, Result};
