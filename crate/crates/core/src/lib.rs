//! Exact construction and verification of classical r-matrices and quantum
//! R-matrices built from symmetric pairs.

pub mod scalar;
pub mod tensor;
pub mod catalog;
pub mod lie;
pub mod linalg;
pub mod verify;
pub mod semiclassical;
pub mod grassmann;
pub mod job;
