//! Thompson's group F as reduced tree pairs, branch-pair tables and exact
//! piecewise-linear maps of `[0,1]`.

mod convert;
mod dyadic;
mod element;
mod pl;
mod text;
mod tree;

pub use dyadic::DyadicRational;
pub use element::{random_element, BranchPairs, TreeDiagram};
pub use pl::{Orbital, PlMap, PlPiece};
pub use text::{format_element, format_generators, parse_element, parse_f_word, parse_generators};
pub use tree::{format_branch, parse_branch, Branch, Tree};
