//! Exact arithmetic substrate: rationals, polynomials, primes, ℤ[x]
//! factorization and real algebraic numbers.

pub mod algebraic;
pub mod factor;
pub mod modp;
pub mod parse;
pub mod poly;
pub mod primes;
pub mod qpoly;
pub mod rational;

pub use algebraic::{alg_sign, AlgebraicNumber};
pub use factor::{factor_int_poly, Factored};
pub use poly::{IntPoly, NatPoly};
pub use qpoly::QPoly;
pub use rational::Rational;
