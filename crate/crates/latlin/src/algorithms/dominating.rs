//! Minimal-dominating-set node programs.
//!
//! Both programs share the same addable/removable macros. The single-rule
//! program lets an unsatisfied node toggle only when it beats every
//! unsatisfied node within two hops, which orders the whole state space into
//! lattices. The two-phase variant admits every addable node unfiltered
//! (phase 1) and applies the id filter only to removals (phase 2), so its
//! lattice structure covers only the feasible states.

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState, Membership, StateVariant};

fn is_in(view: &dyn StateView, j: NodeId) -> bool {
    matches!(
        view.local(j),
        LocalState::Flag {
            st: Membership::In
        }
    )
}

/// Node `i` is out and so is its whole neighbourhood.
pub(crate) fn addable(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    !is_in(view, i) && g.neighbors(i).iter().all(|&j| !is_in(view, j))
}

/// Node `i` is in the set and every node it dominates (itself included)
/// stays dominated without it.
pub(crate) fn removable(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    if !is_in(view, i) {
        return false;
    }
    let covered_without_i = |j: NodeId| g.neighbors(j).iter().any(|&k| k != i && is_in(view, k));
    g.neighbors(i)
        .iter()
        .all(|&j| is_in(view, j) || covered_without_i(j))
        && covered_without_i(i)
}

pub(crate) fn unsatisfied(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    removable(g, view, i) || addable(g, view, i)
}

/// `flags[j]` says whether `j` is unsatisfied; `i` wins if nothing
/// unsatisfied within two hops outranks it.
fn beats_two_hop_rivals(g: &Graph, flags: &[bool], i: NodeId) -> bool {
    g.ball(i, 2).iter().all(|&j| !flags[j] || i > j)
}

/// Batch addable/removable evaluation via in-neighbour counts.
fn unsatisfied_flags(g: &Graph, s: &GlobalState) -> Vec<bool> {
    let member: Vec<bool> = g.nodes().map(|i| is_in(s, i)).collect();
    let in_nbrs: Vec<usize> = g
        .nodes()
        .map(|i| g.neighbors(i).iter().filter(|&&j| member[j]).count())
        .collect();
    g.nodes()
        .map(|i| {
            if member[i] {
                // Removable: i still dominated by another, and every
                // neighbour is in the set or dominated by a second member.
                in_nbrs[i] >= 1
                    && g.neighbors(i)
                        .iter()
                        .all(|&j| member[j] || in_nbrs[j] >= 2)
            } else {
                in_nbrs[i] == 0
            }
        })
        .collect()
}

fn dominating(g: &Graph, s: &GlobalState) -> bool {
    g.nodes()
        .all(|i| is_in(s, i) || g.neighbors(i).iter().any(|&j| is_in(s, j)))
}

/// A minimal dominating set: dominating, and dropping any member breaks it.
fn minimal_dominating(g: &Graph, s: &GlobalState) -> bool {
    if !dominating(g, s) {
        return false;
    }
    let mut probe = s.clone();
    for i in g.nodes() {
        if is_in(s, i) {
            probe.set_local(
                i,
                LocalState::Flag {
                    st: Membership::Out,
                },
            );
            let still = dominating(g, &probe);
            probe.set_local(i, LocalState::Flag { st: Membership::In });
            if still {
                return false;
            }
        }
    }
    true
}

fn flag_domain() -> Vec<LocalState> {
    vec![
        LocalState::Flag { st: Membership::In },
        LocalState::Flag {
            st: Membership::Out,
        },
    ]
}

/// Single-rule minimal-dominating-set program: an unsatisfied node with the
/// highest id among the unsatisfied in its two-hop ball toggles.
pub struct MdsProgram;

/// Single-rule lattice-inducing program for minimal dominating set.
pub fn mds_program() -> MdsProgram {
    MdsProgram
}

impl NodeProgram for MdsProgram {
    fn name(&self) -> &'static str {
        "mds"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::Flag
    }

    fn view_radius(&self) -> ViewRadius {
        // Unsatisfiedness of a two-hop rival reads that rival's own two-hop
        // surroundings.
        ViewRadius::Hops(4)
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

    fn enabled_all(&self, g: &Graph, s: &GlobalState) -> Vec<Option<Action>> {
        let flags = unsatisfied_flags(g, s);
        g.nodes()
            .map(|i| {
                (flags[i] && beats_two_hop_rivals(g, &flags, i)).then_some(Action::Toggle)
            })
            .collect()
    }

    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action) {
        debug_assert_eq!(action, Action::Toggle);
        if let LocalState::Flag { st } = state.local(i) {
            state.set_local(i, LocalState::Flag { st: st.toggled() });
        }
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        minimal_dominating(g, s)
    }

    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
        unsatisfied(g, s, i) as u64
    }

    fn domain_size(&self, _g: &Graph, _i: NodeId) -> u64 {
        2
    }

    fn local_domain(&self, _g: &Graph, _i: NodeId) -> Vec<LocalState> {
        flag_domain()
    }
}

/// Two-phase dominating-set program: addable nodes enter freely, removable
/// nodes leave under the two-hop id filter.
pub struct MdsTwoPhaseProgram;

/// Two-phase (eventually lattice-inducing) program for minimal dominating
/// set.
pub fn mds_two_phase_program() -> MdsTwoPhaseProgram {
    MdsTwoPhaseProgram
}

impl NodeProgram for MdsTwoPhaseProgram {
    fn name(&self) -> &'static str {
        "mds-ell"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::Flag
    }

    fn view_radius(&self) -> ViewRadius {
        ViewRadius::Hops(4)
    }

    fn enabled(&self, g: &Graph, view: &dyn StateView, i: NodeId) -> Option<Action> {
        if addable(g, view, i) {
            return Some(Action::EnterSet);
        }
        if removable(g, view, i)
            && g.ball(i, 2)
                .iter()
                .all(|&j| !removable(g, view, j) || i > j)
        {
            return Some(Action::LeaveSet);
        }
        None
    }

    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action) {
        let st = match action {
            Action::EnterSet => Membership::In,
            Action::LeaveSet => Membership::Out,
            _ => unreachable!("two-phase program emits enter/leave only"),
        };
        state.set_local(i, LocalState::Flag { st });
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        minimal_dominating(g, s)
    }

    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
        unsatisfied(g, s, i) as u64
    }

    fn domain_size(&self, _g: &Graph, _i: NodeId) -> u64 {
        2
    }

    fn local_domain(&self, _g: &Graph, _i: NodeId) -> Vec<LocalState> {
        flag_domain()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{g4, path};
    use crate::state::flag_state;
    use crate::state::Membership::{In, Out};

    fn enabled_set(prog: &dyn NodeProgram, g: &Graph, s: &GlobalState) -> Vec<NodeId> {
        prog.enabled_all(g, s)
            .iter()
            .enumerate()
            .filter_map(|(i, a)| a.map(|_| i))
            .collect()
    }

    /// Brute-force oracle: removable means the set minus the node still
    /// dominates, addable means node and neighbourhood are all out.
    fn oracle_unsatisfied(g: &Graph, s: &GlobalState, i: NodeId) -> bool {
        let dominating = |s: &GlobalState| {
            g.nodes().all(|v| {
                s.local(v).membership() == Some(In)
                    || g.neighbors(v)
                        .iter()
                        .any(|&u| s.local(u).membership() == Some(In))
            })
        };
        match s.local(i).membership().unwrap() {
            In => {
                let mut probe = s.clone();
                probe.set_local(i, LocalState::Flag { st: Out });
                dominating(&probe)
            }
            Out => {
                g.neighbors(i)
                    .iter()
                    .chain(std::iter::once(&i))
                    .all(|&j| s.local(j).membership() == Some(Out))
            }
        }
    }

    #[test]
    fn all_out_enables_the_heavier_endpoint_of_each_edge() {
        let g = g4();
        let s = flag_state(&[Out, Out, Out, Out]);
        assert_eq!(enabled_set(&mds_program(), &g, &s), vec![1, 3]);
    }

    #[test]
    fn optimal_states_are_silent() {
        let g = g4();
        let s = flag_state(&[Out, In, Out, In]);
        assert!(enabled_set(&mds_program(), &g, &s).is_empty());
        assert!(mds_program().is_optimal(&g, &s));
    }

    #[test]
    fn path_of_three_all_in_enables_only_the_top_id() {
        let g = path(3);
        let s = flag_state(&[In, In, In]);
        // Oracle first: all three are removable, so the two-hop filter
        // leaves only node 2.
        for i in g.nodes() {
            assert!(oracle_unsatisfied(&g, &s, i));
        }
        assert_eq!(enabled_set(&mds_program(), &g, &s), vec![2]);
    }

    #[test]
    fn batch_and_single_node_evaluation_agree() {
        let g = path(6);
        let prog = mds_program();
        for bits in 0..64u32 {
            let flags: Vec<_> = (0..6)
                .map(|i| if bits >> i & 1 == 1 { In } else { Out })
                .collect();
            let s = flag_state(&flags);
            let batch = prog.enabled_all(&g, &s);
            let single: Vec<_> = g.nodes().map(|i| prog.enabled(&g, &s, i)).collect();
            assert_eq!(batch, single, "state {s}");
            for i in g.nodes() {
                assert_eq!(unsatisfied(&g, &s, i), oracle_unsatisfied(&g, &s, i));
            }
        }
    }

    #[test]
    fn two_phase_admits_every_addable_node() {
        let g = g4();
        let prog = mds_two_phase_program();
        let s = flag_state(&[Out, Out, Out, Out]);
        assert_eq!(enabled_set(&prog, &g, &s), vec![0, 1, 2, 3]);
    }

    #[test]
    fn two_phase_removal_respects_the_id_filter() {
        let g = g4();
        let prog = mds_two_phase_program();
        let s = flag_state(&[In, Out, In, In]);
        assert_eq!(enabled_set(&prog, &g, &s), vec![3]);
        assert_eq!(prog.enabled(&g, &s, 3), Some(Action::LeaveSet));

        let silent = flag_state(&[Out, In, Out, In]);
        assert!(enabled_set(&prog, &g, &silent).is_empty());
    }

    #[test]
    fn state_values_count_unsatisfied_nodes() {
        let g = g4();
        let prog = mds_program();
        let s = flag_state(&[Out, Out, Out, Out]);
        let rank: u64 = g.nodes().map(|i| prog.state_value(&g, &s, i)).sum();
        assert_eq!(rank, 4);
        let opt = flag_state(&[In, Out, In, Out]);
        let rank: u64 = g.nodes().map(|i| prog.state_value(&g, &opt, i)).sum();
        assert_eq!(rank, 0);
    }
}
