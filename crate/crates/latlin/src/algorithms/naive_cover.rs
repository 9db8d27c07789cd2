//! Naive vertex-cover program built from addable/removable macros, in the
//! style of the dominating-set rule.
//!
//! This program exists as a negative witness: its local states do not form
//! a total order, so a node can be forced back to a value it already left.
//! The verifier's revisit detector fires on it.

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState, Membership, StateVariant};

fn is_in(view: &dyn StateView, j: NodeId) -> bool {
    matches!(view.local(j), LocalState::Flag { st: Membership::In })
}

/// Out, with some incident edge uncovered.
fn addable(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    !is_in(view, i) && g.neighbors(i).iter().any(|&k| !is_in(view, k))
}

/// In, and removal keeps every incident edge covered.
fn removable(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    is_in(view, i) && g.neighbors(i).iter().all(|&k| is_in(view, k))
}

fn unsatisfied(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    addable(g, view, i) || removable(g, view, i)
}

/// The macro-style cover program that fails to induce lattices.
pub struct NaiveCoverProgram;

pub fn naive_vc_program() -> NaiveCoverProgram {
    NaiveCoverProgram
}

impl NodeProgram for NaiveCoverProgram {
    fn name(&self) -> &'static str {
        "naive-vc"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::Flag
    }

    fn view_radius(&self) -> ViewRadius {
        ViewRadius::Hops(3)
    }

    fn enabled(&self, g: &Graph, view: &dyn StateView, i: NodeId) -> Option<Action> {
        if !unsatisfied(g, view, i) {
            return None;
        }
        let wins = g
            .ball(i, 2)
            .iter()
            .all(|&j| !unsatisfied(g, view, j) || i > j);
        wins.then_some(Action::Toggle)
    }

    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action) {
        debug_assert_eq!(action, Action::Toggle);
        if let LocalState::Flag { st } = state.local(i) {
            state.set_local(i, LocalState::Flag { st: st.toggled() });
        }
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        let covered = g
            .edges()
            .iter()
            .all(|&(u, v)| is_in(s, u) || is_in(s, v));
        // Minimal: every member has an out neighbour whose edge it covers.
        covered
            && g.nodes().all(|i| {
                !is_in(s, i) || g.neighbors(i).iter().any(|&k| !is_in(s, k))
            })
    }

    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
        unsatisfied(g, s, i) as u64
    }

    fn domain_size(&self, _g: &Graph, _i: NodeId) -> u64 {
        2
    }

    fn local_domain(&self, _g: &Graph, _i: NodeId) -> Vec<LocalState> {
        vec![
            LocalState::Flag { st: Membership::In },
            LocalState::Flag {
                st: Membership::Out,
            },
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, state_revisits, Daemon, RunConfig};
    use crate::fixtures::path;
    use crate::graph::Graph;
    use crate::state::flag_state;
    use crate::state::Membership::{In, Out};

    #[test]
    fn path_of_four_forces_the_top_node_back_out() {
        let g = path(4);
        let prog = naive_vc_program();
        let init = flag_state(&[Out, Out, Out, Out]);
        let actions = prog.enabled_all(&g, &init);
        let enabled: Vec<_> = actions
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.map(|_| i))
            .collect();
        assert_eq!(enabled, vec![3]);

        let trace = run(&prog, &g, &init, &RunConfig::fresh(Daemon::Central, 0)).unwrap();
        assert!(trace.converged());
        // Node 3 joins, node 2 joins, node 3 is forced back out.
        let moved: Vec<_> = trace.steps.iter().map(|s| s.moved.clone()).collect();
        assert_eq!(moved, vec![vec![3], vec![2], vec![3], vec![1]]);
        assert_eq!(trace.final_state(), &flag_state(&[Out, In, In, Out]));
        let revisits = state_revisits(&trace);
        assert_eq!(revisits, vec![(3, LocalState::Flag { st: Out })]);
    }

    #[test]
    fn covered_edge_with_both_in_sheds_one_node_without_revisit() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let prog = naive_vc_program();
        let trace = run(
            &prog,
            &g,
            &flag_state(&[In, In]),
            &RunConfig::fresh(Daemon::Central, 0),
        )
        .unwrap();
        assert!(trace.converged());
        assert_eq!(trace.total_moves, 1);
        assert_eq!(trace.final_state(), &flag_state(&[In, Out]));
        assert!(state_revisits(&trace).is_empty());
    }
}
