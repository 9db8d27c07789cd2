//! Vertex-cover 2-approximation with an atomic two-node write.
//!
//! From the fixed all-out initial state, the highest not-yet-done id in each
//! three-hop ball acts: if all its incident edges are covered it just marks
//! itself done, otherwise it picks its highest-id not-done neighbour and
//! pulls both of them into the cover in one action. The partner's variables
//! are written inside the mover's action, so this program is flagged as a
//! non-distributed write.

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState, Membership, StateVariant};

fn fields(view: &dyn StateView, j: NodeId) -> (Membership, bool) {
    match view.local(j) {
        LocalState::Cover { st, done } => (st, done),
        other => unreachable!("cover program read {other:?}"),
    }
}

pub(crate) fn all_neighbors_in(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    g.neighbors(i).iter().all(|&k| fields(view, k).0 == Membership::In)
}

fn highest_undone_neighbor(g: &Graph, view: &dyn StateView, i: NodeId) -> Option<NodeId> {
    g.neighbors(i)
        .iter()
        .rev()
        .copied()
        .find(|&x| !fields(view, x).1)
}

/// Complete cover with every node done.
fn cover_reached(g: &Graph, s: &GlobalState) -> bool {
    let covered = g
        .edges()
        .iter()
        .all(|&(u, v)| fields(s, u).0 == Membership::In || fields(s, v).0 == Membership::In);
    covered && g.nodes().all(|i| fields(s, i).1)
}

/// Count of out-neighbours for an out node, zero otherwise.
fn out_pressure(g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
    match s.local(i).membership() {
        Some(Membership::Out) => g
            .neighbors(i)
            .iter()
            .filter(|&&j| s.local(j).membership() == Some(Membership::Out))
            .count() as u64,
        _ => 0,
    }
}

/// Vertex-cover program with the atomic edge-selection action.
pub struct CoverProgram;

/// 2-approximate vertex-cover program (atomic two-node write).
pub fn vc_program() -> CoverProgram {
    CoverProgram
}

impl NodeProgram for CoverProgram {
    fn name(&self) -> &'static str {
        "vc"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::Cover
    }

    fn view_radius(&self) -> ViewRadius {
        ViewRadius::Hops(3)
    }

    fn enabled(&self, g: &Graph, view: &dyn StateView, i: NodeId) -> Option<Action> {
        let (_, done) = fields(view, i);
        if done {
            return None;
        }
        let wins = g.ball(i, 3).iter().all(|&j| j < i || fields(view, j).1);
        if !wins {
            return None;
        }
        if all_neighbors_in(g, view, i) {
            Some(Action::MarkDone)
        } else {
            // An uncovered incident edge implies an undone neighbour when
            // execution started from the canonical init.
            match highest_undone_neighbor(g, view, i) {
                Some(partner) => Some(Action::SelectEdge { partner }),
                None => Some(Action::MarkDone),
            }
        }
    }

    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action) {
        match action {
            Action::MarkDone => {
                if let LocalState::Cover { st, .. } = state.local(i) {
                    state.set_local(i, LocalState::Cover { st, done: true });
                }
            }
            Action::SelectEdge { partner } => {
                state.set_local(
                    i,
                    LocalState::Cover {
                        st: Membership::In,
                        done: true,
                    },
                );
                state.set_local(
                    partner,
                    LocalState::Cover {
                        st: Membership::In,
                        done: true,
                    },
                );
            }
            _ => unreachable!("cover program emits mark-done/select-edge only"),
        }
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        cover_reached(g, s)
    }

    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
        out_pressure(g, s, i)
    }

    fn domain_size(&self, _g: &Graph, _i: NodeId) -> u64 {
        // Guards depend on the done bit only, so the effective domain is 2.
        2
    }

    fn local_domain(&self, _g: &Graph, _i: NodeId) -> Vec<LocalState> {
        let mut all = Vec::new();
        for st in [Membership::In, Membership::Out] {
            for done in [false, true] {
                all.push(LocalState::Cover { st, done });
            }
        }
        all
    }

    fn canonical_init(&self, g: &Graph) -> Option<GlobalState> {
        Some(GlobalState::uniform(
            g.node_count(),
            LocalState::Cover {
                st: Membership::Out,
                done: false,
            },
        ))
    }

    fn writes_neighbor(&self) -> bool {
        true
    }

    fn fixed_init_only(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{run, Daemon, RunConfig};
    use crate::fixtures::two_stars;
    use crate::graph::Graph;
    use crate::state::Membership::{In, Out};

    fn memberships(s: &GlobalState) -> Vec<Membership> {
        s.membership_vector().unwrap()
    }

    /// Brute-force minimum vertex cover size.
    pub(crate) fn optimum_cover_size(g: &Graph) -> usize {
        let n = g.node_count();
        (0..1u32 << n)
            .filter(|mask| {
                g.edges()
                    .iter()
                    .all(|&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1)
            })
            .map(|mask| mask.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn star_centres_pull_in_their_top_leaves_first() {
        let g = two_stars();
        let prog = vc_program();
        let init = prog.canonical_init(&g).unwrap();
        let first: Vec<NodeId> = prog
            .enabled_all(&g, &init)
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.map(|_| i))
            .collect();
        assert_eq!(first, vec![3, 7]);

        let trace = run(&prog, &g, &init, &RunConfig::fresh(Daemon::Synchronous, 0)).unwrap();
        assert_eq!(
            memberships(&trace.steps[0].state),
            vec![Out, In, Out, In, Out, Out, In, In]
        );
        assert!(trace.converged());
        assert!(prog.is_optimal(&g, trace.final_state()));
    }

    #[test]
    fn isolated_node_marks_done_and_stays_out() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let prog = vc_program();
        let trace = run(
            &prog,
            &g,
            &prog.canonical_init(&g).unwrap(),
            &RunConfig::fresh(Daemon::Central, 0),
        )
        .unwrap();
        assert_eq!(trace.total_moves, 1);
        assert_eq!(memberships(trace.final_state()), vec![Out]);
        assert!(trace.converged());
    }

    #[test]
    fn single_edge_selects_both_endpoints() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let prog = vc_program();
        let trace = run(
            &prog,
            &g,
            &prog.canonical_init(&g).unwrap(),
            &RunConfig::fresh(Daemon::Central, 0),
        )
        .unwrap();
        assert_eq!(memberships(trace.final_state()), vec![In, In]);
        // Ratio exactly two against the brute-force optimum.
        assert_eq!(optimum_cover_size(&g), 1);
    }

    #[test]
    fn initial_rank_sums_degrees() {
        let g = two_stars();
        let prog = vc_program();
        let init = prog.canonical_init(&g).unwrap();
        let rank: u64 = g.nodes().map(|i| prog.state_value(&g, &init, i)).sum();
        assert_eq!(rank, 12);
    }
}
