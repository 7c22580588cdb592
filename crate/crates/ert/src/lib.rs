//! Explicit refinement types over a simply-typed core.
//!
//! The pipeline: parse `.ert` source, resolve names to de Bruijn
//! indices, check terms and proofs against the full rule set, erase
//! checked programs to a simply-typed language with error stops,
//! evaluate under the exception monad, and audit the refinement
//! discipline with a bounded model of the subset denotations.

#![allow(clippy::result_large_err)] // diagnostics carry rendered context by value

pub mod check;
pub mod ctx;
pub mod diag;
pub mod driver;
pub mod erase;
pub mod gen;
pub mod oracle;
pub mod pretty;
pub mod report;
pub mod stlc;
pub mod subst;
pub mod surface;
pub mod syntax;
