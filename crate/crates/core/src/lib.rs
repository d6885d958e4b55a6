//! Eternal domination on interval graphs.
//!
//! For interval graphs, the eternal domination number of the games in which
//! all guards may move equals the clique-connected cover number, and both are
//! computed by one left-to-right sweep over a canonical interval model. This
//! crate provides that sweep ([`greedy`]), the minimum-weight neocolonization
//! and eternal dominating set it induces ([`neocolonization`]), the matching
//! defender strategy and game semantics ([`game`]), and exhaustive oracles for
//! cross-checking everything on small graphs ([`oracle`]).
//!
//! ```
//! use eternal_core::interval_model::{sample_model, normalize};
//! use eternal_core::greedy::eternal_domination_number;
//!
//! let model = normalize(&sample_model());
//! assert_eq!(eternal_domination_number(&model), 8);
//! ```

pub mod certificate;
pub mod error;
pub mod exec;
pub mod game;
pub mod graph;
pub mod greedy;
pub mod interval_model;
pub mod neocolonization;
pub mod oracle;
pub mod scaling;
pub mod verify;

pub use certificate::{solve, Certificate, Solution};
pub use error::ParseError;
pub use exec::Execution;
pub use game::{GameParams, GuardConfig};
pub use graph::Graph;
pub use greedy::GreedyResult;
pub use interval_model::{normalize, CanonicalModel, IntervalModel};
pub use neocolonization::Neocolonization;
pub use oracle::Oracle;
