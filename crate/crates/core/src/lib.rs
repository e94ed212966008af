pub mod cli;
pub mod error;
pub mod force;
pub mod grid;
pub mod kernels;
pub mod maps;
pub mod medium;
pub mod optics;
pub mod quadrature;
pub mod selftest;
pub mod specfun;
pub mod units;

pub use error::{Error, Result};
