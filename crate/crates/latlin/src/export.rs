//! Structured output: trace records and run summaries.

use serde::Serialize;

use crate::engine::{Daemon, ExecutionTrace, MoveBudget, Outcome, ReadModel, RunConfig};
use crate::graph::Graph;
use crate::program::NodeProgram;
use crate::state::{GlobalState, Membership};

/// JSON record of a single run.
#[derive(Debug, Serialize)]
pub struct TraceRecord {
    pub algorithm: String,
    pub graph_hash: String,
    pub seed: u64,
    pub daemon: Daemon,
    pub read_model: String,
    pub moves: u64,
    pub converged: bool,
    pub final_state: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exhausted_node: Option<usize>,
}

impl TraceRecord {
    pub fn new(
        prog: &dyn NodeProgram,
        g: &Graph,
        cfg: &RunConfig,
        trace: &ExecutionTrace,
    ) -> Self {
        TraceRecord {
            algorithm: prog.name().to_string(),
            graph_hash: format!("{:016x}", g.fingerprint()),
            seed: cfg.seed,
            daemon: cfg.daemon,
            read_model: cfg.read_model.label(),
            moves: trace.total_moves,
            converged: trace.converged(),
            final_state: trace
                .final_state()
                .locals()
                .iter()
                .map(|l| l.to_string())
                .collect(),
            exhausted_node: match trace.outcome {
                Outcome::NoSolution { node } => Some(node),
                _ => None,
            },
        }
    }
}

/// Human-readable one-paragraph summary of a finished run.
pub fn summarize(
    prog: &dyn NodeProgram,
    g: &Graph,
    trace: &ExecutionTrace,
    budget: &MoveBudget,
) -> String {
    let status = match trace.outcome {
        Outcome::Converged => "converged".to_string(),
        Outcome::NoSolution { node } => format!("no solution (node {node} exhausted)"),
        Outcome::MovesExhausted => "did not converge before the move cap".to_string(),
    };
    let mut lines = vec![format!(
        "{status} after {} moves (budget {})",
        trace.total_moves, budget.budget
    )];
    let final_state = trace.final_state();
    if let Some(members) = final_state.membership_vector() {
        let chosen: Vec<String> = members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m == Membership::In)
            .map(|(i, _)| i.to_string())
            .collect();
        lines.push(format!(
            "selected set ({} of {}): {{{}}}",
            chosen.len(),
            g.node_count(),
            chosen.join(", ")
        ));
    } else {
        lines.push(format!("final state: {final_state}"));
    }
    if trace.converged() {
        lines.push(format!(
            "optimal: {}",
            prog.is_optimal(g, final_state)
        ));
    }
    lines.join("\n")
}

/// Distinct values in a colouring, for run summaries.
pub fn colour_count(s: &GlobalState) -> usize {
    let mut colours: Vec<_> = s
        .locals()
        .iter()
        .filter_map(|l| match l {
            crate::state::LocalState::Colour { colour } => Some(*colour),
            _ => None,
        })
        .collect();
    colours.sort_unstable();
    colours.dedup();
    colours.len()
}
