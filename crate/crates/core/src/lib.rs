pub mod acceptance;
pub mod caustic;
pub mod cli;
pub mod config;
pub mod error;
pub mod polygon;
pub mod quadrature;
pub mod quantum;
pub mod section;
pub mod spectral;
pub mod special;
pub mod symplectic;
pub mod transition;

pub use error::{Error, Result};
