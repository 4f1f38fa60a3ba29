pub mod arith;
pub mod cyclic;
pub mod diagram;
pub mod error;
pub mod exp;
pub mod kernel;
pub mod model;
pub mod natpoly;
pub mod numerical;
pub mod rank2;
pub mod refute;
pub mod ray;

pub use arith::Rational;
pub use error::{Error, Result};
