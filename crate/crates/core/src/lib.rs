//! Exact-arithmetic engine for generalized Dynkin operators, logarithmic
//! derivatives, Rota-Baxter/Atkinson recursions and Magnus-type formulas on
//! graded Lie and Hopf algebras.
//!
//! All coefficients are exact rationals and every identity is checked with
//! zero tolerance. Series are computed in explicit truncations.

pub mod algebra;
pub mod dynkin;
pub mod enveloping;
pub mod error;
pub mod lincomb;
pub mod magnus;
pub mod ode;
pub mod random;
pub mod rational;
pub mod rota_baxter;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use rational::Rational;
