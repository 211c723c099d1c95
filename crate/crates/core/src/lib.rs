//! Exact polynomial algebra, Hasse-derivative calculus and polynomial-functor
//! decompositions, plus the single-step degree-reduction machinery built on
//! top of them.
#![no_std]

extern crate alloc;

pub mod error;
pub mod field;
pub mod functor;
pub mod groebner;
pub mod hasse;
pub mod matrix;
pub mod poly;
pub mod proofstep;

pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use poly::{GradedPoly, GradedRing, Monomial, RingRef, Variable};
