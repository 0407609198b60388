//! Words over an ordered alphabet, string rewriting systems, principal edges
//! and derivations in the Squier complex.

mod edge;
mod principal;
mod search;
mod system;
mod text;
mod word;

pub use edge::{DerivationPath, Direction, Side, SquierEdge};
pub use principal::{derivation_to_normal_form, normal_form, principal_edge};
pub use search::{default_cap, find_derivation, CAP_ENV};
pub use system::{shortlex, RewritingSystem, Rule, TreeValidation, TreeViolation};
pub(crate) use text::strip_comment;
pub use text::{format_system, parse_system};
pub use word::{Letter, Word};
