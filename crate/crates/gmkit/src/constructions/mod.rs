//! The main constructions: Eilenberg–Moore and Kleisli categories of graded
//! monads, Eilenberg–Moore categories of indexed monads, their comonad
//! duals, and the universality factorizations.

pub mod duals;
pub mod em_graded;
pub mod em_indexed;
pub mod factorize;
pub mod kl_graded;
