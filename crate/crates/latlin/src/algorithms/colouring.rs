//! Graph-colouring node program.
//!
//! A node is unsatisfied if it conflicts with a neighbour or its colour can
//! be reduced. Only the highest-id unsatisfied node anywhere in the graph
//! recolours, taking the smallest colour absent from its neighbourhood.
//! Colours are positive integers starting at 1.

use crate::graph::{Graph, NodeId};
use crate::program::{Action, NodeProgram, StateView, ViewRadius};
use crate::state::{GlobalState, LocalState, StateVariant};

fn colour_of(view: &dyn StateView, j: NodeId) -> u32 {
    match view.local(j) {
        LocalState::Colour { colour } => colour,
        other => unreachable!("colouring program read {other:?}"),
    }
}

pub(crate) fn conflicted(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    let c = colour_of(view, i);
    g.neighbors(i).iter().any(|&j| colour_of(view, j) == c)
}

pub(crate) fn reducible(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    let c = colour_of(view, i);
    (1..c).any(|cand| g.neighbors(i).iter().all(|&j| colour_of(view, j) != cand))
}

pub(crate) fn unsatisfied(g: &Graph, view: &dyn StateView, i: NodeId) -> bool {
    conflicted(g, view, i) || reducible(g, view, i)
}

/// Smallest positive colour no neighbour of `i` holds.
pub(crate) fn min_free_colour(g: &Graph, view: &dyn StateView, i: NodeId) -> u32 {
    let mut taken: Vec<u32> = g.neighbors(i).iter().map(|&j| colour_of(view, j)).collect();
    taken.sort_unstable();
    let mut free = 1;
    for c in taken {
        if c == free {
            free += 1;
        } else if c > free {
            break;
        }
    }
    free
}

/// Greedy conflict-and-reduction colouring program with a global id filter.
pub struct GcProgram {
    max_colour: u32,
}

/// Colouring program whose initial colours must lie in `1..=max_init_colour`.
pub fn gc_program(max_init_colour: u32) -> GcProgram {
    assert!(max_init_colour >= 1, "colour domain must contain 1");
    GcProgram {
        max_colour: max_init_colour,
    }
}

/// Colour cap that accommodates every recolouring target on `g`: any move
/// assigns at most `max_degree + 1`, so one extra value covers reductions of
/// arbitrary initial colours.
pub fn default_colour_cap(g: &Graph) -> u32 {
    g.max_degree() as u32 + 2
}

impl GcProgram {
    pub fn max_colour(&self) -> u32 {
        self.max_colour
    }
}

impl NodeProgram for GcProgram {
    fn name(&self) -> &'static str {
        "gc"
    }

    fn variant(&self) -> StateVariant {
        StateVariant::Colour
    }

    fn view_radius(&self) -> ViewRadius {
        // The id filter quantifies over every node in the graph.
        ViewRadius::Global
    }

    fn enabled(&self, g: &Graph, view: &dyn StateView, i: NodeId) -> Option<Action> {
        if !unsatisfied(g, view, i) {
            return None;
        }
        let wins = g
            .nodes()
            .all(|j| j == i || !unsatisfied(g, view, j) || i > j);
        wins.then(|| Action::SetColour(min_free_colour(g, view, i)))
    }

    fn enabled_all(&self, g: &Graph, s: &GlobalState) -> Vec<Option<Action>> {
        let mover = g.nodes().rev().find(|&i| unsatisfied(g, s, i));
        let mut actions = vec![None; g.node_count()];
        if let Some(i) = mover {
            actions[i] = Some(Action::SetColour(min_free_colour(g, s, i)));
        }
        actions
    }

    fn apply(&self, state: &mut GlobalState, i: NodeId, action: Action) {
        let Action::SetColour(colour) = action else {
            unreachable!("colouring program emits recolourings only");
        };
        state.set_local(i, LocalState::Colour { colour });
    }

    fn is_optimal(&self, g: &Graph, s: &GlobalState) -> bool {
        g.nodes().all(|i| !conflicted(g, s, i) && !reducible(g, s, i))
    }

    fn state_value(&self, g: &Graph, s: &GlobalState, i: NodeId) -> u64 {
        if unsatisfied(g, s, i) {
            g.degree(i) as u64 + 2
        } else {
            u64::from(colour_of(s, i))
        }
    }

    fn domain_size(&self, g: &Graph, i: NodeId) -> u64 {
        g.degree(i) as u64 + 2
    }

    fn local_domain(&self, _g: &Graph, _i: NodeId) -> Vec<LocalState> {
        (1..=self.max_colour)
            .map(|colour| LocalState::Colour { colour })
            .collect()
    }

    fn validate_init(&self, _g: &Graph, s: &GlobalState) -> Result<(), String> {
        for (i, l) in s.locals().iter().enumerate() {
            let LocalState::Colour { colour } = *l else {
                return Err(format!("node {i} is not a colour state"));
            };
            if colour < 1 {
                return Err(format!("node {i} has colour 0; colours start at 1"));
            }
            if colour > self.max_colour {
                return Err(format!(
                    "node {i} has colour {colour}, above the cap {}",
                    self.max_colour
                ));
            }
        }
        Ok(())
    }
}
