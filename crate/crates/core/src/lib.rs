//! Extremal trees of the Sombor index for a fixed degree sequence.
//!
//! Among all trees with a given degree sequence the greedy tree minimizes
//! the Sombor index `SO(T) = sum over edges uv of sqrt(d_u^2 + d_v^2)` and
//! some alternating greedy tree maximizes it. This crate builds both
//! constructions ([`construct`]), evaluates general bond-incident-degree
//! indices and their exchange condition ([`indices`]), and checks the
//! extremality claims by exhaustive enumeration of every realizing tree
//! ([`oracle`]).

pub mod construct;
pub mod degseq;
pub mod indices;
pub mod oracle;
pub mod tree;

pub use construct::{
    alternating_greedy_all, alternating_greedy_one, greedy_tree, AlternatingTree, ConstructError,
    ConstructionTrace,
};
pub use degseq::{Degree, DegreeSequence, DegreeSequenceError, InternalDegreeSequence};
pub use indices::{
    check_exchange_condition, rf_index, sombor_condition_closed_form, sombor_edge, sombor_index,
    ConditionReport, EdgeFunction, IndexError, TOLERANCE,
};
pub use oracle::{
    edge_switch, enumerate_trees, extremal_report, local_min_check, sweep_verify, ExtremalReport,
    OracleError, SweepSummary, DEFAULT_CAP,
};
pub use tree::{canonical_form, CanonicalForm, Tree, TreeError};
