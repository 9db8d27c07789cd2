//! Simulation and exhaustive verification of self-stabilizing guarded-command
//! graph algorithms whose executions traverse lattices of global states.
//!
//! The crate has four layers:
//!
//! * [`graph`] — immutable simple graphs with memoised x-hop neighbourhoods,
//!   random generation and an edge-list file format.
//! * [`engine`] — deterministic execution of a [`program::NodeProgram`]
//!   under a central, distributed or synchronous daemon, with fresh or
//!   monotone-stale reads, plus move budgets and trace analysis.
//! * [`algorithms`] — the shipped programs: minimal dominating set (single
//!   rule and two-phase), graph colouring, two vertex-cover
//!   2-approximations, stable marriage, and a deliberately broken cover
//!   program used as a negative witness.
//! * [`verify`] — small-instance oracle: exhaustive state-space exploration,
//!   partition into lattice classes keyed by converged endpoint, rank,
//!   impedensability, meets/joins, and DOT diagrams.
//!
//! The `examples/` directory holds one runnable walkthrough per capability;
//! the `latlin` binary wraps the same entry points as `run`, `verify`,
//! `bench` and `gen` subcommands.

pub mod algorithms;
pub mod bench;
pub mod engine;
pub mod export;
pub mod graph;
pub mod program;
pub mod state;
pub mod verify;

#[cfg(test)]
pub(crate) mod fixtures;

pub use engine::{run, Daemon, ExecutionTrace, Outcome, ReadModel, RunConfig};
pub use graph::{Graph, NodeId};
pub use program::{Action, NodeProgram, StateView, ViewRadius};
pub use state::{GlobalState, LocalState, Membership, StateVariant};
