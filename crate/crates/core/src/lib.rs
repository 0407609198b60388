//! Diagram groups over string rewriting systems and closed subgroups of
//! Thompson's group F.
//!
//! The crate is organised bottom-up:
//!
//! - [`rewriting`]: words, rewriting systems, principal edges, derivations.
//! - [`diagram`]: the diagram calculus and its canonical reduced form.
//! - [`thompson`]: elements of F as tree pairs, branch pairs and PL maps.
//! - [`stallings`]: the Stallings 2-core of a finitely generated subgroup and
//!   the membership test for its closure.
//! - [`completion`]: the semi-completion of a core rewriting system.
//! - [`closure`]: generating sets of the closure and the linear-length
//!   factorization.
//! - [`hardness`]: encoding group presentations as tree rewriting systems.

pub mod closure;
pub mod completion;
pub mod diagram;
pub mod error;
pub mod hardness;
pub mod rewriting;
pub mod stallings;
pub mod thompson;

pub use error::{Error, Result};
