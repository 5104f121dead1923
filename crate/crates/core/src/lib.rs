//! Exact finite models of the Giry monad, convex spaces, the Σ functor and the
//! barycenter adjunction, with executable law suites over rational arithmetic.

pub mod algebra;
pub mod cli;
pub mod convex;
pub mod error;
pub mod factorization;
pub mod finmeas;
pub mod giry;
pub mod linalg;
pub mod model;
pub mod probes;
pub mod rational;
pub mod report;
pub mod sigma;

pub use error::{Error, Result};
pub use rational::{q, Rational};
