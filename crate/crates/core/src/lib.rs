//! Exact linear-algebra models of regular (von Neumann) braid statistics.
//!
//! Every morphism is a finite matrix over Q or GF(p). The crate checks the
//! axioms of regular cocycles and their obstructors, regular braidings and
//! the component Yang-Baxter equation, obstructed algebras with regular
//! Yang-Baxter operators, and obstructed bialgebras with regular antipodes.
//! It also enumerates solutions over small prime fields.

pub mod braiding;
pub mod bundle;
pub mod cli;
pub mod cocycle;
pub mod error;
pub mod exact_linalg;
pub mod fixtures;
pub mod hopf;
pub mod report;
pub mod search;
pub mod ybop;

pub use error::{Error, Result};
pub use exact_linalg::{FieldSpec, Matrix};
pub use report::Report;
