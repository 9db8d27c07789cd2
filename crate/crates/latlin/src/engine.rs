//! Deterministic execution of node programs under a chosen daemon and
//! read-freshness model.
//!
//! A step evaluates guards, lets the daemon pick a set of enabled movers,
//! and applies their actions atomically. Under fresh reads guards see the
//! real state. Under stale reads every node evaluates against its own
//! snapshot drawn from per-node publication histories, where successive
//! reads of the same subject never go backwards and never fall more than
//! `lag` publications behind the subject's latest value. A run ends when no
//! node is enabled under fresh reads, so convergence always means a real
//! fixpoint.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, SnapshotView, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState};

/// Scheduler adversary: which enabled nodes move in a step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Daemon {
    /// Exactly one enabled node per step, seeded choice.
    Central,
    /// A seeded nonempty subset: each enabled node independently with
    /// probability 1/2, redrawn while empty.
    Distributed,
    /// Every enabled node.
    Synchronous,
}

impl std::str::FromStr for Daemon {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "central" => Ok(Daemon::Central),
            "distributed" => Ok(Daemon::Distributed),
            "synchronous" => Ok(Daemon::Synchronous),
            other => Err(format!("unknown daemon {other:?}")),
        }
    }
}

/// Read-freshness model for guard evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadModel {
    /// Guards read the current state.
    Fresh,
    /// Monotone stale reads, at most `lag` publications behind. With
    /// `refresh_on_act` a node's own action fast-forwards its read cursors
    /// to the present.
    Amr { lag: u32, refresh_on_act: bool },
}

impl ReadModel {
    pub fn amr(lag: u32) -> Self {
        ReadModel::Amr {
            lag,
            refresh_on_act: false,
        }
    }

    pub fn label(&self) -> String {
        match self {
            ReadModel::Fresh => "fresh".to_string(),
            ReadModel::Amr { lag, .. } => format!("amr({lag})"),
        }
    }
}

/// Everything a single run needs besides the program, graph and init.
#[derive(Debug, Clone, Copy)]
pub struct RunConfig {
    pub daemon: Daemon,
    pub read_model: ReadModel,
    pub seed: u64,
    /// Cap on total moves; `None` means four times the move budget.
    pub max_moves: Option<u64>,
}

impl RunConfig {
    pub fn fresh(daemon: Daemon, seed: u64) -> Self {
        RunConfig {
            daemon,
            read_model: ReadModel::Fresh,
            seed,
            max_moves: None,
        }
    }
}

/// Consecutive move-less stale-read steps tolerated before a run is
/// declared divergent.
const STALL_CAP: u32 = 10_000;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("initial state has {actual} entries but the graph has {expected} nodes")]
    LengthMismatch { expected: usize, actual: usize },
    #[error("initial state variant does not match the program")]
    VariantMismatch,
    #[error("invalid initial state: {0}")]
    InvalidInit(String),
    #[error("operation requires a converged trace")]
    NotConverged,
}

/// Why a run stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    /// No node is enabled under fresh reads.
    Converged,
    /// A proposer exhausted its preference list.
    NoSolution { node: NodeId },
    /// The move cap was reached first.
    MovesExhausted,
}

/// One step: the state after the moves and who moved.
#[derive(Debug, Clone)]
pub struct Step {
    pub state: GlobalState,
    pub moved: Vec<NodeId>,
}

/// A complete run.
#[derive(Debug, Clone)]
pub struct ExecutionTrace {
    pub init: GlobalState,
    pub steps: Vec<Step>,
    pub outcome: Outcome,
    pub total_moves: u64,
    pub per_node_moves: Vec<u64>,
}

impl ExecutionTrace {
    pub fn converged(&self) -> bool {
        self.outcome == Outcome::Converged
    }

    pub fn final_state(&self) -> &GlobalState {
        self.steps.last().map_or(&self.init, |s| &s.state)
    }

    /// All states visited, starting with the initial one.
    pub fn states(&self) -> impl Iterator<Item = &GlobalState> {
        std::iter::once(&self.init).chain(self.steps.iter().map(|s| &s.state))
    }
}

/// Per-node effective domain sizes and the convergence bound they induce.
#[derive(Debug, Clone, Serialize)]
pub struct MoveBudget {
    pub domain_sizes: Vec<u64>,
    pub budget: u64,
}

/// Computes the move budget `Σ_i (mᵢ − 1)` over the per-node effective
/// domain sizes the program declares.
pub fn move_budget(prog: &dyn NodeProgram, g: &Graph) -> MoveBudget {
    let domain_sizes: Vec<u64> = g.nodes().map(|i| prog.domain_size(g, i)).collect();
    let budget = domain_sizes.iter().map(|&m| m.saturating_sub(1)).sum();
    MoveBudget {
        domain_sizes,
        budget,
    }
}

/// Checks a converged trace against its budget: the total must stay within
/// `Σ (mᵢ − 1)` and no single node may move more than `mᵢ − 1` times (a node
/// that does has revisited a local state).
pub fn replay_check(trace: &ExecutionTrace, budget: &MoveBudget) -> Result<bool, EngineError> {
    if !trace.converged() {
        return Err(EngineError::NotConverged);
    }
    if trace.total_moves > budget.budget {
        return Ok(false);
    }
    Ok(trace
        .per_node_moves
        .iter()
        .zip(&budget.domain_sizes)
        .all(|(&moves, &m)| moves <= m.saturating_sub(1)))
}

/// Publication histories plus per-(reader, subject) monotone read cursors.
struct StaleReads {
    histories: Vec<Vec<LocalState>>,
    cursors: Vec<Vec<usize>>,
    lag: usize,
    refresh_on_act: bool,
}

impl StaleReads {
    fn new(init: &GlobalState, lag: u32, refresh_on_act: bool) -> Self {
        let n = init.len();
        StaleReads {
            histories: init.locals().iter().map(|&l| vec![l]).collect(),
            cursors: vec![vec![0; n]; n],
            lag: lag as usize,
            refresh_on_act,
        }
    }

    /// Draws reader `i`'s snapshot. Each subject is read once; the drawn
    /// position is monotone per (reader, subject) and at most `lag` behind
    /// the subject's latest publication. The reader's own entry is fresh.
    fn draw_snapshot(
        &mut self,
        g: &Graph,
        radius: ViewRadius,
        i: NodeId,
        current: &GlobalState,
        rng: &mut ChaCha12Rng,
    ) -> SnapshotView {
        let histories = &self.histories;
        let cursors = &mut self.cursors[i];
        let lag = self.lag;
        let mut values = current.locals().to_vec();
        let mut read = |j: NodeId, rng: &mut ChaCha12Rng| {
            let hist = &histories[j];
            let latest = hist.len() - 1;
            let lo = cursors[j].max(latest.saturating_sub(lag));
            let idx = if lo >= latest {
                latest
            } else {
                rng.gen_range(lo..=latest)
            };
            cursors[j] = idx;
            hist[idx]
        };
        match radius {
            ViewRadius::Global => {
                for j in g.nodes() {
                    if j != i {
                        values[j] = read(j, rng);
                    }
                }
            }
            ViewRadius::Hops(r) => {
                for &j in g.ball(i, r) {
                    values[j] = read(j, rng);
                }
            }
        }
        SnapshotView::new(values)
    }

    fn publish(&mut self, j: NodeId, value: LocalState) {
        self.histories[j].push(value);
    }

    fn refresh_reader(&mut self, i: NodeId) {
        for (j, hist) in self.histories.iter().enumerate() {
            self.cursors[i][j] = hist.len() - 1;
        }
    }
}

/// Runs `prog` on `g` from `init` until no node is enabled under fresh
/// reads, a proposer's choices are exhausted, or the move cap is reached.
pub fn run(
    prog: &dyn NodeProgram,
    g: &Graph,
    init: &GlobalState,
    cfg: &RunConfig,
) -> Result<ExecutionTrace, EngineError> {
    if init.len() != g.node_count() {
        return Err(EngineError::LengthMismatch {
            expected: g.node_count(),
            actual: init.len(),
        });
    }
    if !init.all_variant(prog.variant()) {
        return Err(EngineError::VariantMismatch);
    }
    prog.validate_init(g, init).map_err(EngineError::InvalidInit)?;

    let max_moves = cfg
        .max_moves
        .unwrap_or_else(|| (4 * move_budget(prog, g).budget).max(1));
    let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed);
    let mut stale = match cfg.read_model {
        ReadModel::Fresh => None,
        ReadModel::Amr {
            lag,
            refresh_on_act,
        } => Some(StaleReads::new(init, lag, refresh_on_act)),
    };

    let mut state = init.clone();
    let mut steps = Vec::new();
    let mut total_moves = 0u64;
    let mut per_node_moves = vec![0u64; g.node_count()];
    let mut stalls = 0u32;

    let outcome = loop {
        if let Some(node) = prog.failed(g, &state) {
            break Outcome::NoSolution { node };
        }
        let fresh = prog.enabled_all(g, &state);
        if fresh.iter().all(Option::is_none) {
            break Outcome::Converged;
        }
        if total_moves >= max_moves {
            break Outcome::MovesExhausted;
        }

        // Candidate movers with their actions, as each node sees the world.
        let candidates: Vec<(NodeId, Action)> = match stale.as_mut() {
            None => fresh
                .iter()
                .enumerate()
                .filter_map(|(i, a)| a.map(|a| (i, a)))
                .collect(),
            Some(reads) => g
                .nodes()
                .filter_map(|i| {
                    let view = reads.draw_snapshot(g, prog.view_radius(), i, &state, &mut rng);
                    prog.enabled(g, &view, i).map(|a| (i, a))
                })
                .collect(),
        };

        if candidates.is_empty() {
            // Every enabled node is looking at stale values. Re-draw next
            // iteration; reads catch up because the windows only advance.
            stalls += 1;
            if stalls > STALL_CAP {
                break Outcome::MovesExhausted;
            }
            continue;
        }
        stalls = 0;

        let movers: Vec<(NodeId, Action)> = match cfg.daemon {
            Daemon::Central => {
                let pick = rng.gen_range(0..candidates.len());
                vec![candidates[pick]]
            }
            Daemon::Synchronous => candidates,
            Daemon::Distributed => loop {
                let subset: Vec<(NodeId, Action)> = candidates
                    .iter()
                    .copied()
                    .filter(|_| rng.gen_bool(0.5))
                    .collect();
                if !subset.is_empty() {
                    break subset;
                }
            },
        };

        let before = stale.is_some().then(|| state.clone());
        for &(i, action) in &movers {
            prog.apply(&mut state, i, action);
            per_node_moves[i] += 1;
            total_moves += 1;
        }
        if let (Some(reads), Some(before)) = (stale.as_mut(), before) {
            for j in g.nodes() {
                if state.local(j) != before.local(j) {
                    reads.publish(j, state.local(j));
                }
            }
            if reads.refresh_on_act {
                for &(i, _) in &movers {
                    reads.refresh_reader(i);
                }
            }
        }
        steps.push(Step {
            state: state.clone(),
            moved: movers.iter().map(|&(i, _)| i).collect(),
        });
    };

    Ok(ExecutionTrace {
        init: init.clone(),
        steps,
        outcome,
        total_moves,
        per_node_moves,
    })
}

/// Rank (sum of per-node state values) of every state along a trace.
pub fn rank_sequence(prog: &dyn NodeProgram, g: &Graph, trace: &ExecutionTrace) -> Vec<u64> {
    trace
        .states()
        .map(|s| g.nodes().map(|i| prog.state_value(g, s, i)).sum())
        .collect()
}

/// Nodes that returned to a previously held local state, with the revisited
/// value. Empty for lattice-traversing programs.
pub fn state_revisits(trace: &ExecutionTrace) -> Vec<(NodeId, LocalState)> {
    let n = trace.init.len();
    let mut revisits = Vec::new();
    for i in 0..n {
        let mut seen = vec![trace.init.local(i)];
        for step in &trace.steps {
            let v = step.state.local(i);
            if v != *seen.last().unwrap() {
                if seen[..seen.len() - 1].contains(&v) {
                    revisits.push((i, v));
                    break;
                }
                seen.push(v);
            }
        }
    }
    revisits
}

/// Nodes whose colour failed to strictly decrease on a move after their
/// first move. Empty for the colouring program under fresh reads.
pub fn nonmonotone_recolourings(trace: &ExecutionTrace) -> Vec<NodeId> {
    let n = trace.init.len();
    let mut bad = Vec::new();
    for i in 0..n {
        let move_results: Vec<u32> = trace
            .steps
            .iter()
            .filter(|step| step.moved.contains(&i))
            .filter_map(|step| match step.state.local(i) {
                LocalState::Colour { colour } => Some(colour),
                _ => None,
            })
            .collect();
        if move_results.windows(2).any(|w| w[1] >= w[0]) {
            bad.push(i);
        }
    }
    bad
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::mds_program;
    use crate::fixtures::g4;
    use crate::state::{flag_state, Membership::*};

    #[test]
    fn central_run_from_all_in_reaches_the_top_of_its_lattice() {
        let g = g4();
        let prog = mds_program();
        let trace = run(
            &prog,
            &g,
            &flag_state(&[In, In, In, In]),
            &RunConfig::fresh(Daemon::Central, 1),
        )
        .unwrap();
        assert!(trace.converged());
        assert_eq!(trace.total_moves, 2);
        assert_eq!(trace.final_state(), &flag_state(&[In, Out, In, Out]));
    }

    #[test]
    fn synchronous_run_from_all_out() {
        let g = g4();
        let prog = mds_program();
        let trace = run(
            &prog,
            &g,
            &flag_state(&[Out, Out, Out, Out]),
            &RunConfig::fresh(Daemon::Synchronous, 0),
        )
        .unwrap();
        assert!(trace.converged());
        assert_eq!(trace.total_moves, 2);
        assert_eq!(trace.steps.len(), 1);
        assert_eq!(trace.final_state(), &flag_state(&[Out, In, Out, In]));
    }

    #[test]
    fn fixpoint_gives_a_zero_length_trace() {
        let g = g4();
        let prog = mds_program();
        let trace = run(
            &prog,
            &g,
            &flag_state(&[In, Out, In, Out]),
            &RunConfig::fresh(Daemon::Distributed, 9),
        )
        .unwrap();
        assert!(trace.converged());
        assert_eq!(trace.steps.len(), 0);
        assert_eq!(trace.total_moves, 0);
    }

    #[test]
    fn variant_and_length_mismatches_are_rejected() {
        let g = g4();
        let prog = mds_program();
        let wrong_len = flag_state(&[In, In]);
        assert!(matches!(
            run(&prog, &g, &wrong_len, &RunConfig::fresh(Daemon::Central, 0)),
            Err(EngineError::LengthMismatch { .. })
        ));
        let wrong_variant = crate::state::colour_state(&[1, 1, 1, 1]);
        assert!(matches!(
            run(&prog, &g, &wrong_variant, &RunConfig::fresh(Daemon::Central, 0)),
            Err(EngineError::VariantMismatch)
        ));
    }

    #[test]
    fn budget_counts_domains() {
        let g = g4();
        let prog = mds_program();
        let b = move_budget(&prog, &g);
        assert_eq!(b.budget, 4);
        assert_eq!(b.domain_sizes, vec![2, 2, 2, 2]);
    }

    #[test]
    fn replay_check_requires_convergence() {
        let g = g4();
        let prog = mds_program();
        let trace = run(
            &prog,
            &g,
            &flag_state(&[In, In, In, In]),
            &RunConfig::fresh(Daemon::Central, 3),
        )
        .unwrap();
        let budget = move_budget(&prog, &g);
        assert!(replay_check(&trace, &budget).unwrap());

        let mut unconverged = trace;
        unconverged.outcome = Outcome::MovesExhausted;
        assert!(matches!(
            replay_check(&unconverged, &budget),
            Err(EngineError::NotConverged)
        ));
    }
}
