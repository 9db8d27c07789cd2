//! The pluggable guarded-command node program abstraction.
//!
//! A [`NodeProgram`] bundles everything the engine and the verifier need to
//! run and analyse one algorithm: guard evaluation over a (possibly stale)
//! view, action application, the legitimacy predicate, the per-node state
//! value that orders local states, and the effective local domain sizes that
//! bound convergence.

use crate::graph::{Graph, NodeId};
use crate::state::{GlobalState, LocalState, StateVariant};

/// How far a node's guards read.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViewRadius {
    /// Guards read only `ball(i, hops) ∪ {i}`.
    Hops(usize),
    /// Guards read every node.
    Global,
}

/// The action an enabled node will take. Actions are computed from the view
/// the guard saw and applied atomically to the real state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Action {
    /// Flip the membership flag.
    Toggle,
    /// Enter the set (two-phase dominating set, phase 1).
    EnterSet,
    /// Leave the set (two-phase dominating set, phase 2).
    LeaveSet,
    /// Recolour to the given value.
    SetColour(u32),
    /// Mark this node done without joining the cover.
    MarkDone,
    /// Join the cover together with `partner`, marking both done
    /// (single atomic two-node write).
    SelectEdge { partner: NodeId },
    /// Join the cover (pointed node with an uncovered edge).
    JoinCover,
    /// Join the cover and point at `target`, asking it to act next.
    PointAndJoin { target: NodeId },
    /// Advance to the next position in the preference list.
    Advance,
}

/// Read access to the local states a guard evaluates over.
///
/// Fresh execution reads the real global state; stale-read execution reads a
/// per-node snapshot drawn from publication histories. A node's own state is
/// always fresh.
pub trait StateView {
    fn local(&self, j: NodeId) -> LocalState;
}

impl StateView for GlobalState {
    fn local(&self, j: NodeId) -> LocalState {
        GlobalState::local(self, j)
    }
}

/// A materialised per-node snapshot used for stale reads.
pub struct SnapshotView {
    values: Vec<LocalState>,
}

impl SnapshotView {
    pub fn new(values: Vec<LocalState>) -> Self {
        SnapshotView { values }
    }
}

impl StateView for SnapshotView {
    fn local(&self, j: NodeId) -> LocalState {
        self.values[j]
    }
}

/// A guarded-command node program.
pub trait NodeProgram: Sync {
    /// Short identifier, e.g. `"mds"`.
    fn name(&self) -> &'static str;

    /// Local-state variant this program works over.
    fn variant(&self) -> StateVariant;

    /// Maximum hop distance any guard or action reads.
    fn view_radius(&self) -> ViewRadius;

    /// Evaluates node `i`'s guards over `view` and returns the enabled
    /// action, if any.
    fn enabled(&self, g: &Graph, view: &dyn StateView, i: NodeId) -> Option<Action>;

    /// Applies `action` at node `i`. Writes only `i`'s variables, except
    /// [`Action::SelectEdge`] which also writes the partner's.
    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action);

    /// The legitimacy predicate: true iff `s` is an optimal state.
    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool;

    /// The per-node state value; their sum is the rank of a state.
    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64;

    /// Position of node `i`'s local state in the per-node total order, with
    /// larger keys higher in the lattice. The default derives it from the
    /// state value, which decreases as a node ascends.
    fn order_key(&self, g: &Graph, s: &GlobalState, i: NodeId) -> i64 {
        -(self.state_value(g, s, i) as i64)
    }

    /// Effective local domain size of node `i`, as used by the convergence
    /// bound `Σ (domain − 1)`.
    fn domain_size(&self, g: &Graph, i: NodeId) -> u64;

    /// Every local state node `i` may take, for exhaustive exploration.
    fn local_domain(&self, g: &Graph, i: NodeId) -> Vec<LocalState>;

    /// The fixed initial state, for programs that prescribe one.
    fn canonical_init(&self, _g: &Graph) -> Option<GlobalState> {
        None
    }

    /// True if the program is defined only from its canonical init, so
    /// exhaustive verification explores the reachable slice rather than the
    /// full product space.
    fn fixed_init_only(&self) -> bool {
        false
    }

    /// Validates an initial state beyond the variant/length checks.
    fn validate_init(&self, _g: &Graph, _s: &GlobalState) -> Result<(), String> {
        Ok(())
    }

    /// If `s` is a dead end (for proposal programs: some proposer exhausted
    /// its list), returns the witness node.
    fn failed(&self, _g: &Graph, _s: &GlobalState) -> Option<NodeId> {
        None
    }

    /// Batch guard evaluation under fresh reads. Programs with expensive
    /// global guards override this with a shared per-step precomputation.
    fn enabled_all(&self, g: &Graph, s: &GlobalState) -> Vec<Option<Action>> {
        g.nodes().map(|i| self.enabled(g, s, i)).collect()
    }

    /// True if some action writes a neighbour's variables as well.
    fn writes_neighbor(&self) -> bool {
        false
    }

    /// True if the per-node order is one global total order independent of
    /// execution context, so meets and joins are defined across the whole
    /// state space rather than per lattice class.
    fn order_is_global(&self) -> bool {
        false
    }
}
