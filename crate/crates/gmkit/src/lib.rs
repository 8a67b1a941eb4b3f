//! Computing with graded and indexed (co)monads on finite categories.
//!
//! The toolkit validates the full axiom systems of graded monads (GM1..GM6),
//! graded comonads (GC1..GC6), indexed monads (IM1..IM7), and indexed
//! comonads (IC1..IC7) by exhaustive pointwise enumeration; materializes the
//! Eilenberg–Moore and Kleisli constructions (including the coend-quotient
//! Kleisli category) together with their adjunctions, comparison functors,
//! and universality factorizations; relates strict and lax monoidal actions
//! through resolutions; and runs a register mini-language whose denotational
//! semantics is the graded state monad.
//!
//! Start from the runnable examples (`cargo run --example ...`) or the thin
//! `gmkit` CLI for batch checking and building.

pub mod backend;
pub mod cli;
pub mod constructions;
pub mod effectlang;
pub mod error;
pub mod fincat;
pub mod graded;
pub mod indexed;
pub mod instances;
pub mod statemonads;
pub mod report;
pub mod resolutions;
pub mod setcat;
pub mod spec_io;

pub use error::{GmError, Result};
pub use report::{LawReport, LawStatus};
