//! Per-node local states and the global state vector.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graph::NodeId;

/// Set membership used by the dominating-set and vertex-cover programs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Membership {
    In,
    Out,
}

impl Membership {
    pub fn toggled(self) -> Self {
        match self {
            Membership::In => Membership::Out,
            Membership::Out => Membership::In,
        }
    }

    pub fn is_in(self) -> bool {
        self == Membership::In
    }
}

impl fmt::Display for Membership {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Membership::In => write!(f, "IN"),
            Membership::Out => write!(f, "OUT"),
        }
    }
}

/// The variables of one node. Each program works over exactly one variant.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalState {
    /// A bare membership flag (dominating set, naive vertex cover).
    Flag { st: Membership },
    /// A positive colour.
    Colour { colour: u32 },
    /// Vertex-cover state: membership plus a done marker.
    Cover { st: Membership, done: bool },
    /// Vertex-cover state with an optional pointer to a neighbour that has
    /// been asked to join.
    PointedCover {
        st: Membership,
        done: bool,
        point: Option<NodeId>,
    },
    /// A proposer's current position in its preference list, starting at 1.
    Proposal { rank: u32 },
}

/// Discriminant of [`LocalState`], used to reject mismatched initial states.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StateVariant {
    Flag,
    Colour,
    Cover,
    PointedCover,
    Proposal,
}

impl LocalState {
    pub fn variant(&self) -> StateVariant {
        match self {
            LocalState::Flag { .. } => StateVariant::Flag,
            LocalState::Colour { .. } => StateVariant::Colour,
            LocalState::Cover { .. } => StateVariant::Cover,
            LocalState::PointedCover { .. } => StateVariant::PointedCover,
            LocalState::Proposal { .. } => StateVariant::Proposal,
        }
    }

    /// Membership flag for the variants that carry one.
    pub fn membership(&self) -> Option<Membership> {
        match *self {
            LocalState::Flag { st }
            | LocalState::Cover { st, .. }
            | LocalState::PointedCover { st, .. } => Some(st),
            _ => None,
        }
    }

    pub fn done(&self) -> Option<bool> {
        match *self {
            LocalState::Cover { done, .. } | LocalState::PointedCover { done, .. } => Some(done),
            _ => None,
        }
    }
}

impl fmt::Display for LocalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LocalState::Flag { st } => write!(f, "{st}"),
            LocalState::Colour { colour } => write!(f, "{colour}"),
            LocalState::Cover { st, done } => {
                write!(f, "{st}{}", if done { "*" } else { "" })
            }
            LocalState::PointedCover { st, done, point } => {
                write!(f, "{st}{}", if done { "*" } else { "" })?;
                if let Some(j) = point {
                    write!(f, ">{j}")?;
                }
                Ok(())
            }
            LocalState::Proposal { rank } => write!(f, "{rank}"),
        }
    }
}

/// A global state: one local state per node, indexed by node id.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GlobalState {
    locals: Vec<LocalState>,
}

impl GlobalState {
    pub fn new(locals: Vec<LocalState>) -> Self {
        GlobalState { locals }
    }

    pub fn uniform(n: usize, local: LocalState) -> Self {
        GlobalState {
            locals: vec![local; n],
        }
    }

    pub fn len(&self) -> usize {
        self.locals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locals.is_empty()
    }

    pub fn local(&self, i: NodeId) -> LocalState {
        self.locals[i]
    }

    pub fn set_local(&mut self, i: NodeId, value: LocalState) {
        self.locals[i] = value;
    }

    pub fn locals(&self) -> &[LocalState] {
        &self.locals
    }

    /// Checks that every entry matches `variant`.
    pub fn all_variant(&self, variant: StateVariant) -> bool {
        self.locals.iter().all(|l| l.variant() == variant)
    }

    /// Membership vector for cover/flag variants (None for other variants).
    pub fn membership_vector(&self) -> Option<Vec<Membership>> {
        self.locals.iter().map(|l| l.membership()).collect()
    }
}

impl fmt::Display for GlobalState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "⟨")?;
        for (k, l) in self.locals.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        write!(f, "⟩")
    }
}

/// Shorthand constructors used heavily in tests and examples.
pub fn flag_state(pattern: &[Membership]) -> GlobalState {
    GlobalState::new(pattern.iter().map(|&st| LocalState::Flag { st }).collect())
}

pub fn colour_state(colours: &[u32]) -> GlobalState {
    GlobalState::new(
        colours
            .iter()
            .map(|&colour| LocalState::Colour { colour })
            .collect(),
    )
}

pub fn proposal_state(ranks: &[u32]) -> GlobalState {
    GlobalState::new(ranks.iter().map(|&rank| LocalState::Proposal { rank }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_compact() {
        let s = flag_state(&[Membership::In, Membership::Out]);
        assert_eq!(s.to_string(), "⟨IN,OUT⟩");
        let c = GlobalState::new(vec![
            LocalState::Cover {
                st: Membership::Out,
                done: true,
            },
            LocalState::PointedCover {
                st: Membership::In,
                done: true,
                point: Some(0),
            },
        ]);
        assert_eq!(c.to_string(), "⟨OUT*,IN*>0⟩");
    }

    #[test]
    fn variant_checks() {
        let s = colour_state(&[1, 2]);
        assert!(s.all_variant(StateVariant::Colour));
        assert!(!s.all_variant(StateVariant::Flag));
    }
}
