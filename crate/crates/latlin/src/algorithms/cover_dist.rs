//! Distributed mapping of the vertex-cover program: every action writes only
//! the acting node's own variables.
//!
//! Instead of pulling a neighbour in atomically, a joining node points at
//! its chosen partner. A pointed node acts with priority and joins only if
//! one of its edges is still uncovered; everyone else stands back while an
//! undone pointed node exists within four hops.

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState, Membership, StateVariant};

fn fields(view: &dyn StateView, j: NodeId) -> (Membership, bool, Option<NodeId>) {
    match view.local(j) {
        LocalState::PointedCover { st, done, point } => (st, done, point),
        other => unreachable!("pointed cover program read {other:?}"),
    }
}

fn pointed(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    g.neighbors(i).iter().any(|&j| fields(view, j).2 == Some(i))
}

/// Some node within four hops is pointed at and has not acted yet.
fn else_pointed(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    g.ball(i, 4).iter().any(|&j| {
        !fields(view, j).1 && g.neighbors(j).iter().any(|&k| fields(view, k).2 == Some(j))
    })
}

fn all_neighbors_in(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    g.neighbors(i)
        .iter()
        .all(|&k| fields(view, k).0 == Membership::In)
}

fn highest_undone_neighbor(g: &Graph, view: &dyn StateView, i: NodeId) -> Option<NodeId> {
    g.neighbors(i)
        .iter()
        .rev()
        .copied()
        .find(|&x| !fields(view, x).1)
}

/// Pointer-based vertex-cover program.
pub struct PointedCoverProgram;

/// 2-approximate vertex-cover program where nodes write only their own
/// variables.
pub fn vc_distributed_program() -> PointedCoverProgram {
    PointedCoverProgram
}

impl NodeProgram for PointedCoverProgram {
    fn name(&self) -> &'static str {
        "vc-dist"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::PointedCover
    }

    fn view_radius(&self) -> ViewRadius {
        // else_pointed inspects the neighbours of nodes four hops away.
        ViewRadius::Hops(5)
    }

    fn enabled(&self, g: &Graph, view: &dyn StateView, i: NodeId) -> Option<Action> {
        let (_, done, _) = fields(view, i);
        if done {
            return None;
        }
        if pointed(g, view, i) {
            return Some(if all_neighbors_in(g, view, i) {
                Action::MarkDone
            } else {
                Action::JoinCover
            });
        }
        if else_pointed(g, view, i) {
            return None;
        }
        let wins = g.ball(i, 3).iter().all(|&j| j < i || fields(view, j).1);
        if !wins {
            return None;
        }
        if all_neighbors_in(g, view, i) {
            Some(Action::MarkDone)
        } else {
            match highest_undone_neighbor(g, view, i) {
                Some(target) => Some(Action::PointAndJoin { target }),
                None => Some(Action::MarkDone),
            }
        }
    }

    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action) {
        let LocalState::PointedCover { st, point, .. } = state.local(i) else {
            unreachable!();
        };
        let next = match action {
            Action::MarkDone => LocalState::PointedCover {
                st,
                done: true,
                point,
            },
            Action::JoinCover => LocalState::PointedCover {
                st: Membership::In,
                done: true,
                point,
            },
            Action::PointAndJoin { target } => LocalState::PointedCover {
                st: Membership::In,
                done: true,
                point: Some(target),
            },
            _ => unreachable!("pointed cover program emits done/join/point only"),
        };
        state.set_local(i, next);
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        let covered = g.edges().iter().all(|&(u, v)| {
            fields(s, u).0 == Membership::In || fields(s, v).0 == Membership::In
        });
        covered && g.nodes().all(|i| fields(s, i).1)
    }

    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
        match s.local(i).membership() {
            Some(Membership::Out) => g
                .neighbors(i)
                .iter()
                .filter(|&&j| s.local(j).membership() == Some(Membership::Out))
                .count() as u64,
            _ => 0,
        }
    }

    fn domain_size(&self, _g: &Graph, _i: NodeId) -> u64 {
        2
    }

    fn local_domain(&self, g: &Graph, i: NodeId) -> Vec<LocalState> {
        let mut all = Vec::new();
        for st in [Membership::In, Membership::Out] {
            for done in [false, true] {
                all.push(LocalState::PointedCover {
                    st,
                    done,
                    point: None,
                });
                for &j in g.neighbors(i) {
                    all.push(LocalState::PointedCover {
                        st,
                        done,
                        point: Some(j),
                    });
                }
            }
        }
        all
    }

    fn canonical_init(&self, g: &Graph) -> Option<GlobalState> {
        Some(GlobalState::uniform(
            g.node_count(),
            LocalState::PointedCover {
                st: Membership::Out,
                done: false,
                point: None,
            },
        ))
    }

    fn fixed_init_only(&self) -> bool {
        true
    }
}
