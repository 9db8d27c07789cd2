//! Stable-marriage proposal program.
//!
//! Every proposer holds a position in its own preference list. A proposer
//! must advance when it shares its proposed partner with someone that
//! partner prefers; advancing past the end of the list means the run ends
//! with no solution. The numeric positions form one global total order, so
//! the whole state space is a single lattice.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState, StateVariant};

#[derive(Debug, Error)]
pub enum SmpError {
    #[error("instance needs at least one proposer and one receiver")]
    Empty,
    #[error("proposer {0}'s preference list is not a permutation of the receivers")]
    BadProposerList(usize),
    #[error("receiver {0}'s preference list is not a permutation of the proposers")]
    BadReceiverList(usize),
}

/// Preference data: proposers rank receivers, receivers rank proposers.
#[derive(Debug, Clone)]
pub struct SmpInstance {
    proposer_prefs: Vec<Vec<usize>>,
    /// `receiver_rank[w][m]` is how receiver `w` ranks proposer `m`
    /// (lower preferred).
    receiver_rank: Vec<Vec<usize>>,
}

/// On-disk form: both sides as preference-ordered index lists.
#[derive(Debug, Serialize, Deserialize)]
pub struct SmpInstanceFile {
    pub men_pref: Vec<Vec<usize>>,
    pub women_pref: Vec<Vec<usize>>,
}

impl SmpInstance {
    /// Builds an instance from preference-ordered lists on both sides.
    pub fn from_preferences(
        proposer_prefs: Vec<Vec<usize>>,
        receiver_prefs: Vec<Vec<usize>>,
    ) -> Result<Self, SmpError> {
        let n_proposers = proposer_prefs.len();
        let n_receivers = receiver_prefs.len();
        if n_proposers == 0 || n_receivers == 0 {
            return Err(SmpError::Empty);
        }
        for (m, prefs) in proposer_prefs.iter().enumerate() {
            if !is_permutation(prefs, n_receivers) {
                return Err(SmpError::BadProposerList(m));
            }
        }
        let mut receiver_rank = vec![vec![0usize; n_proposers]; n_receivers];
        for (w, prefs) in receiver_prefs.iter().enumerate() {
            if !is_permutation(prefs, n_proposers) {
                return Err(SmpError::BadReceiverList(w));
            }
            for (rank, &m) in prefs.iter().enumerate() {
                receiver_rank[w][m] = rank;
            }
        }
        Ok(SmpInstance {
            proposer_prefs,
            receiver_rank,
        })
    }

    pub fn from_file(file: SmpInstanceFile) -> Result<Self, SmpError> {
        Self::from_preferences(file.men_pref, file.women_pref)
    }

    pub fn proposers(&self) -> usize {
        self.proposer_prefs.len()
    }

    pub fn receivers(&self) -> usize {
        self.receiver_rank.len()
    }

    /// Receiver proposed by `m` at 1-based list position `rank`.
    pub fn proposed(&self, m: usize, rank: u32) -> usize {
        self.proposer_prefs[m][rank as usize - 1]
    }

    pub fn receiver_rank(&self, w: usize, m: usize) -> usize {
        self.receiver_rank[w][m]
    }

    /// A graph carrier for the engine: proposers are nodes, guards read
    /// everyone, so no edges are needed.
    pub fn carrier_graph(&self) -> Graph {
        Graph::from_edges(self.proposers(), &[]).unwrap()
    }
}

fn is_permutation(list: &[usize], n: usize) -> bool {
    if list.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in list {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

fn rank_of(view: &dyn StateView, m: NodeId) -> u32 {
    match view.local(m) {
        LocalState::Proposal { rank } => rank,
        other => unreachable!("proposal program read {other:?}"),
    }
}

/// Proposal program over a fixed instance.
pub struct SmpProgram {
    inst: SmpInstance,
}

/// Proposal-advancing program for the given instance.
pub fn smp_program(inst: SmpInstance) -> SmpProgram {
    SmpProgram { inst }
}

impl SmpProgram {
    pub fn instance(&self) -> &SmpInstance {
        &self.inst
    }

    /// A proposer must advance iff a rival shares its proposal and the
    /// receiver prefers the rival.
    fn must_advance(&self, g: &Graph, view: &dyn StateView, m: NodeId) -> bool {
        let rank = rank_of(view, m);
        if rank as usize > self.inst.receivers() {
            return false;
        }
        let w = self.inst.proposed(m, rank);
        g.nodes().any(|m2| {
            if m2 == m {
                return false;
            }
            let rank2 = rank_of(view, m2);
            rank2 as usize <= self.inst.receivers()
                && self.inst.proposed(m2, rank2) == w
                && self.inst.receiver_rank(w, m2) < self.inst.receiver_rank(w, m)
        })
    }
}

impl NodeProgram for SmpProgram {
    fn name(&self) -> &'static str {
        "smp"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::Proposal
    }

    fn view_radius(&self) -> ViewRadius {
        ViewRadius::Global
    }

    fn enabled(&self, g: &Graph, view: &dyn StateView, m: NodeId) -> Option<Action> {
        self.must_advance(g, view, m).then_some(Action::Advance)
    }

    fn apply(&self, state: &mut GlobalState, m: NodeId, action: Action) {
        debug_assert_eq!(action, Action::Advance);
        if let LocalState::Proposal { rank } = state.local(m) {
            state.set_local(m, LocalState::Proposal { rank: rank + 1 });
        }
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        let n_w = self.inst.receivers();
        let mut taken = vec![false; n_w];
        for m in g.nodes() {
            let rank = rank_of(s, m);
            if rank as usize > n_w {
                return false;
            }
            let w = self.inst.proposed(m, rank);
            if taken[w] {
                return false;
            }
            taken[w] = true;
        }
        true
    }

    fn state_value(&self, _g: &Graph, s: &GlobalState, m: NodeId) -> u64 {
        u64::from(rank_of(s, m))
    }

    fn order_key(&self, _g: &Graph, s: &GlobalState, m: NodeId) -> i64 {
        i64::from(rank_of(s, m))
    }

    fn domain_size(&self, _g: &Graph, _i: NodeId) -> u64 {
        self.inst.receivers() as u64
    }

    fn local_domain(&self, _g: &Graph, _i: NodeId) -> Vec<LocalState> {
        (1..=self.inst.receivers() as u32)
            .map(|rank| LocalState::Proposal { rank })
            .collect()
    }

    fn canonical_init(&self, g: &Graph) -> Option<GlobalState> {
        Some(GlobalState::uniform(
            g.node_count(),
            LocalState::Proposal { rank: 1 },
        ))
    }

    fn validate_init(&self, g: &Graph, s: &GlobalState) -> Result<(), String> {
        if g.node_count() != self.inst.proposers() {
            return Err(format!(
                "instance has {} proposers but the graph has {} nodes",
                self.inst.proposers(),
                g.node_count()
            ));
        }
        for (m, l) in s.locals().iter().enumerate() {
            let LocalState::Proposal { rank } = *l else {
                return Err(format!("node {m} is not a proposal state"));
            };
            if rank < 1 || rank as usize > self.inst.receivers() {
                return Err(format!(
                    "proposer {m} starts at position {rank}, outside 1..={}",
                    self.inst.receivers()
                ));
            }
        }
        Ok(())
    }

    fn failed(&self, g: &Graph, s: &GlobalState) -> Option<NodeId> {
        g.nodes()
            .find(|&m| rank_of(s, m) as usize > self.inst.receivers())
    }

    fn order_is_global(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, Daemon, Outcome, RunConfig};
    use crate::state::proposal_state;

    /// Three proposers A, J, T and three receivers K, Z, M (indices 0, 1, 2).
    pub(crate) fn instance_3x3() -> SmpInstance {
        SmpInstance::from_preferences(
            vec![vec![1, 0, 2], vec![1, 0, 2], vec![0, 2, 1]],
            vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 1, 0]],
        )
        .unwrap()
    }

    #[test]
    fn converges_to_the_least_conflict_free_assignment() {
        let inst = instance_3x3();
        let g = inst.carrier_graph();
        let prog = smp_program(inst);
        let trace = run(
            &prog,
            &g,
            &proposal_state(&[1, 1, 1]),
            &RunConfig::fresh(Daemon::Central, 11),
        )
        .unwrap();
        assert!(trace.converged());
        assert!(trace.total_moves <= 6);
        assert_eq!(trace.final_state(), &proposal_state(&[1, 2, 2]));
        assert!(prog.is_optimal(&g, trace.final_state()));
    }

    #[test]
    fn exhausting_a_list_reports_no_solution() {
        let inst = instance_3x3();
        let g = inst.carrier_graph();
        let prog = smp_program(inst);
        let trace = run(
            &prog,
            &g,
            &proposal_state(&[3, 1, 2]),
            &RunConfig::fresh(Daemon::Central, 0),
        )
        .unwrap();
        assert_eq!(trace.outcome, Outcome::NoSolution { node: 0 });
        assert!(!trace.converged());
    }

    #[test]
    fn already_distinct_assignment_is_silent() {
        let inst = instance_3x3();
        let g = inst.carrier_graph();
        let prog = smp_program(inst);
        let trace = run(
            &prog,
            &g,
            &proposal_state(&[3, 1, 1]),
            &RunConfig::fresh(Daemon::Central, 0),
        )
        .unwrap();
        assert_eq!(trace.total_moves, 0);
        assert!(trace.converged());
    }

    #[test]
    fn from_one_two_three_the_solution_state_is_unreachable() {
        let inst = instance_3x3();
        let g = inst.carrier_graph();
        let prog = smp_program(inst);
        let trace = run(
            &prog,
            &g,
            &proposal_state(&[1, 2, 3]),
            &RunConfig::fresh(Daemon::Central, 0),
        )
        .unwrap();
        assert!(trace
            .states()
            .all(|s| s != &proposal_state(&[1, 2, 2])));
    }

    #[test]
    fn preference_lists_are_validated() {
        assert!(matches!(
            SmpInstance::from_preferences(vec![vec![0, 0]], vec![vec![0], vec![0]]),
            Err(SmpError::BadProposerList(0))
        ));
        assert!(matches!(
            SmpInstance::from_preferences(vec![vec![0, 1]], vec![vec![0], vec![1]]),
            Err(SmpError::BadReceiverList(1))
        ));
    }
}
