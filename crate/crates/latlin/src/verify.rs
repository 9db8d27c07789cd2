//! Exhaustive small-instance oracle: explores a program's state space and
//! checks the lattice structure its executions induce.
//!
//! States are grouped into classes by the endpoint they converge to; the
//! grouping is validated rather than assumed by running both the central
//! and the synchronous daemon from every state and requiring the same
//! endpoint. Within each class the per-node order keys define the partial
//! order; the report records suprema, optimality of suprema, revisit
//! witnesses, and whether pointwise meets and joins stay inside the class.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::engine::{self, run, Daemon, EngineError, Outcome, RunConfig};
use crate::graph::{Graph, NodeId};
use crate::program::NodeProgram;
use crate::state::{GlobalState, LocalState, Membership};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("state space has {size} states, above the capacity {capacity}")]
    CapacityExceeded { size: u128, capacity: u64 },
    #[error("state is not part of the explored space")]
    StateNotExplored,
    #[error("states converge to different endpoints")]
    CrossClass,
    #[error("local states of node {node} are unordered in this class")]
    UnorderedLocal { node: NodeId },
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Which part of the state space to enumerate.
pub enum Restriction {
    /// The full product of the per-node local domains.
    Full,
    /// Only states reachable from the given initial state by single moves.
    ReachableFrom(GlobalState),
    /// The subset of the full product satisfying a predicate.
    Filter(fn(&Graph, &GlobalState) -> bool),
}

/// Explored states plus their single-move transition structure.
pub struct StateSpace {
    pub states: Vec<GlobalState>,
    index: HashMap<GlobalState, usize>,
    /// `(mover, successor)` pairs per state.
    pub transitions: Vec<Vec<(NodeId, usize)>>,
    /// Transitions whose target fell outside the enumerated set.
    pub escapes: usize,
}

impl StateSpace {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn index_of(&self, s: &GlobalState) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Distinct membership vectors across the space, for programs whose
    /// progress is the cover they build.
    pub fn membership_projections(&self) -> BTreeSet<Vec<Membership>> {
        self.states
            .iter()
            .filter_map(|s| s.membership_vector())
            .collect()
    }
}

pub const DEFAULT_CAPACITY: u64 = 1 << 20;

/// Enumerates the state space of `prog` on `g` under `restriction` and
/// computes all single-node transitions.
pub fn explore(
    prog: &dyn NodeProgram,
    g: &Graph,
    restriction: Restriction,
    capacity: u64,
) -> Result<StateSpace, VerifyError> {
    let states = match &restriction {
        Restriction::Full | Restriction::Filter(_) => {
            let domains: Vec<Vec<LocalState>> =
                g.nodes().map(|i| prog.local_domain(g, i)).collect();
            let size: u128 = domains.iter().map(|d| d.len() as u128).product();
            if size > capacity as u128 {
                return Err(VerifyError::CapacityExceeded { size, capacity });
            }
            let mut all = Vec::with_capacity(size as usize);
            let mut odometer = vec![0usize; domains.len()];
            loop {
                let state = GlobalState::new(
                    odometer
                        .iter()
                        .enumerate()
                        .map(|(i, &d)| domains[i][d])
                        .collect(),
                );
                if match &restriction {
                    Restriction::Filter(f) => f(g, &state),
                    _ => true,
                } {
                    all.push(state);
                }
                let mut pos = domains.len();
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    odometer[pos] += 1;
                    if odometer[pos] < domains[pos].len() {
                        break;
                    }
                    odometer[pos] = 0;
                }
                if odometer.iter().all(|&d| d == 0) {
                    break;
                }
            }
            all
        }
        Restriction::ReachableFrom(init) => {
            let mut seen = HashMap::new();
            let mut order = vec![init.clone()];
            seen.insert(init.clone(), 0usize);
            let mut frontier = 0;
            while frontier < order.len() {
                if order.len() as u64 > capacity {
                    return Err(VerifyError::CapacityExceeded {
                        size: order.len() as u128,
                        capacity,
                    });
                }
                let current = order[frontier].clone();
                frontier += 1;
                for (i, action) in prog.enabled_all(g, &current).into_iter().enumerate() {
                    let Some(action) = action else { continue };
                    let mut next = current.clone();
                    prog.apply(&mut next, i, action);
                    if !seen.contains_key(&next) {
                        seen.insert(next.clone(), order.len());
                        order.push(next);
                    }
                }
            }
            order
        }
    };

    let index: HashMap<GlobalState, usize> = states
        .iter()
        .enumerate()
        .map(|(k, s)| (s.clone(), k))
        .collect();
    let mut escapes = 0;
    let mut transitions = Vec::with_capacity(states.len());
    for s in &states {
        let mut outgoing = Vec::new();
        for (i, action) in prog.enabled_all(g, s).into_iter().enumerate() {
            let Some(action) = action else { continue };
            let mut next = s.clone();
            prog.apply(&mut next, i, action);
            match index.get(&next) {
                Some(&t) => outgoing.push((i, t)),
                None => escapes += 1,
            }
        }
        transitions.push(outgoing);
    }
    Ok(StateSpace {
        states,
        index,
        transitions,
        escapes,
    })
}

/// Where a state ends up.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum EndPoint {
    Converged(GlobalState),
    NoSolution,
    Diverged,
}

/// One lattice class: all states converging to the same supremum.
#[derive(Debug, Serialize)]
pub struct ClassReport {
    pub members: Vec<usize>,
    pub supremum: GlobalState,
    /// The unique minimal state, when there is one.
    pub infimum: Option<GlobalState>,
    pub supremum_optimal: bool,
    pub meet_join_closed: bool,
}

/// A node that came back to a value it had already left, with the state the
/// offending run started from.
#[derive(Debug, Serialize)]
pub struct RevisitWitness {
    pub start: GlobalState,
    pub node: NodeId,
    pub revisited: LocalState,
}

#[derive(Debug, Serialize)]
pub struct LatticeReport {
    pub algorithm: String,
    pub state_count: usize,
    /// Number of lattice classes.
    pub w: usize,
    pub classes: Vec<ClassReport>,
    pub disjoint: bool,
    pub exhaustive: bool,
    pub suprema_optimal: bool,
    pub revisit_violations: Vec<RevisitWitness>,
    /// States whose central- and synchronous-daemon endpoints differ.
    pub daemon_mismatches: Vec<GlobalState>,
    /// States that hit the move cap.
    pub divergent: Vec<GlobalState>,
    /// States that end with an exhausted proposer.
    pub unsolvable: usize,
    /// Transitions that left the enumerated set.
    pub escapes: usize,
    /// Colour cap used when enumerating a colouring domain.
    pub colour_cap: Option<u32>,
}

impl LatticeReport {
    pub fn has_violations(&self) -> bool {
        !self.disjoint
            || !self.exhaustive
            || !self.suprema_optimal
            || !self.revisit_violations.is_empty()
            || !self.daemon_mismatches.is_empty()
            || !self.divergent.is_empty()
    }

    pub fn class_of(&self, space: &StateSpace, s: &GlobalState) -> Option<&ClassReport> {
        let idx = space.index_of(s)?;
        self.classes.iter().find(|c| c.members.contains(&idx))
    }
}

pub struct VerifyOptions {
    pub seed: u64,
    pub max_moves: Option<u64>,
    /// Classes larger than this get their meet/join closure sampled rather
    /// than checked over all pairs.
    pub meet_join_pair_cap: usize,
    pub colour_cap: Option<u32>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            seed: 0x1a77,
            max_moves: None,
            meet_join_pair_cap: 200_000,
            colour_cap: None,
        }
    }
}

/// Runs every explored state to its endpoint under the central and the
/// synchronous daemon and assembles the lattice report.
pub fn verify_partition(
    prog: &dyn NodeProgram,
    g: &Graph,
    space: &StateSpace,
    opts: &VerifyOptions,
) -> LatticeReport {
    let central = RunConfig {
        daemon: Daemon::Central,
        read_model: crate::engine::ReadModel::Fresh,
        seed: opts.seed,
        max_moves: opts.max_moves,
    };
    let synchronous = RunConfig {
        daemon: Daemon::Synchronous,
        ..central
    };

    struct PerState {
        endpoint: EndPoint,
        mismatch: bool,
        revisit: Option<(NodeId, LocalState)>,
    }

    let endpoint_of = |trace: &engine::ExecutionTrace| match trace.outcome {
        Outcome::Converged => EndPoint::Converged(trace.final_state().clone()),
        Outcome::NoSolution { .. } => EndPoint::NoSolution,
        Outcome::MovesExhausted => EndPoint::Diverged,
    };

    let results: Vec<PerState> = space
        .states
        .par_iter()
        .map(|s| {
            let tc = run(prog, g, s, &central).expect("explored state must be runnable");
            let ts = run(prog, g, s, &synchronous).expect("explored state must be runnable");
            let ec = endpoint_of(&tc);
            let es = endpoint_of(&ts);
            let revisit = engine::state_revisits(&tc)
                .into_iter()
                .chain(engine::state_revisits(&ts))
                .next();
            PerState {
                mismatch: ec != es,
                endpoint: ec,
                revisit,
            }
        })
        .collect();

    let mut by_endpoint: HashMap<GlobalState, Vec<usize>> = HashMap::new();
    let mut daemon_mismatches = Vec::new();
    let mut divergent = Vec::new();
    let mut unsolvable = 0;
    let mut revisit_violations = Vec::new();
    for (idx, r) in results.iter().enumerate() {
        if r.mismatch {
            daemon_mismatches.push(space.states[idx].clone());
        }
        if let Some((node, revisited)) = r.revisit {
            revisit_violations.push(RevisitWitness {
                start: space.states[idx].clone(),
                node,
                revisited,
            });
        }
        match &r.endpoint {
            EndPoint::Converged(f) => by_endpoint.entry(f.clone()).or_default().push(idx),
            EndPoint::NoSolution => unsolvable += 1,
            EndPoint::Diverged => divergent.push(space.states[idx].clone()),
        }
    }

    let mut classes: Vec<ClassReport> = by_endpoint
        .into_iter()
        .map(|(supremum, members)| {
            let supremum_optimal = prog.is_optimal(g, &supremum);
            let infimum = unique_minimum(prog, g, space, &members);
            let meet_join_closed =
                meet_join_closed(prog, g, space, &members, &supremum, opts.meet_join_pair_cap);
            ClassReport {
                members,
                supremum,
                infimum,
                supremum_optimal,
                meet_join_closed,
            }
        })
        .collect();
    classes.sort_by_key(|c| c.members.iter().copied().min().unwrap_or(usize::MAX));
    for class in &mut classes {
        class.members.sort_unstable();
    }

    LatticeReport {
        algorithm: prog.name().to_string(),
        state_count: space.len(),
        w: classes.len(),
        disjoint: daemon_mismatches.is_empty(),
        exhaustive: divergent.is_empty(),
        suprema_optimal: classes.iter().all(|c| c.supremum_optimal),
        classes,
        revisit_violations,
        daemon_mismatches,
        divergent,
        unsolvable,
        escapes: space.escapes,
        colour_cap: opts.colour_cap,
    }
}

/// `a ⪯ b` under the pointwise order: equal local values compare equal,
/// differing values compare by order key.
fn pointwise_le(
    prog: &dyn NodeProgram,
    g: &Graph,
    a: &GlobalState,
    b: &GlobalState,
) -> bool {
    g.nodes().all(|i| {
        a.local(i) == b.local(i) || prog.order_key(g, a, i) < prog.order_key(g, b, i)
    })
}

fn unique_minimum(
    prog: &dyn NodeProgram,
    g: &Graph,
    space: &StateSpace,
    members: &[usize],
) -> Option<GlobalState> {
    let minimal: Vec<&GlobalState> = members
        .iter()
        .map(|&k| &space.states[k])
        .filter(|s| {
            members.iter().all(|&o| {
                let other = &space.states[o];
                other == *s || !pointwise_le(prog, g, other, s)
            })
        })
        .collect();
    match minimal.as_slice() {
        [only] => Some((*only).clone()),
        _ => None,
    }
}

/// Pointwise meet/join of two states known to share the supremum `u`, which
/// settles order-key ties.
fn pointwise_combine(
    prog: &dyn NodeProgram,
    g: &Graph,
    s1: &GlobalState,
    s2: &GlobalState,
    supremum: Option<&GlobalState>,
    take_upper: bool,
) -> Result<GlobalState, VerifyError> {
    let mut locals = Vec::with_capacity(s1.len());
    for i in g.nodes() {
        let (a, b) = (s1.local(i), s2.local(i));
        if a == b {
            locals.push(a);
            continue;
        }
        let (k1, k2) = (prog.order_key(g, s1, i), prog.order_key(g, s2, i));
        let pick_first = if k1 != k2 {
            (k1 > k2) == take_upper
        } else {
            // Keys tie with distinct values: the one matching the supremum
            // is the upper of the two.
            let u = supremum.ok_or(VerifyError::UnorderedLocal { node: i })?;
            if a == u.local(i) {
                take_upper
            } else if b == u.local(i) {
                !take_upper
            } else {
                return Err(VerifyError::UnorderedLocal { node: i });
            }
        };
        locals.push(if pick_first { a } else { b });
    }
    Ok(GlobalState::new(locals))
}

fn shared_supremum(
    prog: &dyn NodeProgram,
    g: &Graph,
    s1: &GlobalState,
    s2: &GlobalState,
) -> Result<Option<GlobalState>, VerifyError> {
    if prog.order_is_global() {
        return Ok(None);
    }
    let cfg = RunConfig::fresh(Daemon::Central, 0x1a77);
    let t1 = run(prog, g, s1, &cfg)?;
    let t2 = run(prog, g, s2, &cfg)?;
    if !t1.converged() || !t2.converged() || t1.final_state() != t2.final_state() {
        return Err(VerifyError::CrossClass);
    }
    Ok(Some(t1.final_state().clone()))
}

/// Pointwise minimum of two states of the same lattice class (or of the one
/// global lattice, for programs with a global order).
pub fn meet(
    prog: &dyn NodeProgram,
    g: &Graph,
    s1: &GlobalState,
    s2: &GlobalState,
) -> Result<GlobalState, VerifyError> {
    let u = shared_supremum(prog, g, s1, s2)?;
    pointwise_combine(prog, g, s1, s2, u.as_ref(), false)
}

/// Pointwise maximum; see [`meet`].
pub fn join(
    prog: &dyn NodeProgram,
    g: &Graph,
    s1: &GlobalState,
    s2: &GlobalState,
) -> Result<GlobalState, VerifyError> {
    let u = shared_supremum(prog, g, s1, s2)?;
    pointwise_combine(prog, g, s1, s2, u.as_ref(), true)
}

fn meet_join_closed(
    prog: &dyn NodeProgram,
    g: &Graph,
    space: &StateSpace,
    members: &[usize],
    supremum: &GlobalState,
    pair_cap: usize,
) -> bool {
    let member_set: std::collections::HashSet<usize> = members.iter().copied().collect();
    let mut checked = 0usize;
    for (a, &ka) in members.iter().enumerate() {
        for &kb in members.iter().skip(a + 1) {
            if checked >= pair_cap {
                return true;
            }
            checked += 1;
            let (s1, s2) = (&space.states[ka], &space.states[kb]);
            for take_upper in [false, true] {
                let Ok(combined) =
                    pointwise_combine(prog, g, s1, s2, Some(supremum), take_upper)
                else {
                    return false;
                };
                match space.index_of(&combined) {
                    Some(idx) if member_set.contains(&idx) => {}
                    _ => return false,
                }
            }
        }
    }
    true
}

/// Sum of per-node state values.
pub fn rank(prog: &dyn NodeProgram, g: &Graph, s: &GlobalState) -> u64 {
    g.nodes().map(|i| prog.state_value(g, s, i)).sum()
}

/// Brute-force impedensability of node `i` in state `s`: the goal predicate
/// fails in `s` and keeps failing in every strictly higher state of `s`'s
/// class in which `i` kept its local state.
pub fn impedensable(
    prog: &dyn NodeProgram,
    g: &Graph,
    space: &StateSpace,
    s: &GlobalState,
    i: NodeId,
) -> Result<bool, VerifyError> {
    if space.index_of(s).is_none() {
        return Err(VerifyError::StateNotExplored);
    }
    if prog.is_optimal(g, s) {
        return Ok(false);
    }
    let cfg = RunConfig::fresh(Daemon::Central, 0x1a77);
    let own = run(prog, g, s, &cfg)?;
    let own_end = own.converged().then(|| own.final_state().clone());
    for t in &space.states {
        if t == s || t.local(i) != s.local(i) || !pointwise_le(prog, g, s, t) {
            continue;
        }
        let tt = run(prog, g, t, &cfg)?;
        let t_end = tt.converged().then(|| tt.final_state().clone());
        if t_end != own_end {
            continue;
        }
        if prog.is_optimal(g, t) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// DOT rendering of the per-class Hasse diagrams: single-move transitions
/// with transitive edges removed.
pub fn lattice_dot(space: &StateSpace, report: &LatticeReport) -> String {
    use std::fmt::Write;
    let mut out = String::from("digraph lattices {\n  rankdir=BT;\n  node [shape=box];\n");
    for (c, class) in report.classes.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{c} {{");
        let _ = writeln!(out, "    label=\"class {c}\";");
        for &k in &class.members {
            let label = space.states[k].to_string();
            let _ = writeln!(out, "    s{k} [label=\"{label}\"];");
        }
        for &(from, to) in &hasse_edges(space, &class.members) {
            let _ = writeln!(out, "    s{from} -> s{to};");
        }
        let _ = writeln!(out, "  }}");
    }
    out.push_str("}\n");
    out
}

/// In-class transition edges minus transitive ones.
fn hasse_edges(space: &StateSpace, members: &[usize]) -> Vec<(usize, usize)> {
    let member_set: std::collections::HashSet<usize> = members.iter().copied().collect();
    let edges: Vec<(usize, usize)> = members
        .iter()
        .flat_map(|&k| {
            space.transitions[k]
                .iter()
                .filter(|(_, t)| member_set.contains(t) && *t != k)
                .map(move |&(_, t)| (k, t))
        })
        .collect();
    let mut succ: HashMap<usize, Vec<usize>> = HashMap::new();
    for &(a, b) in &edges {
        succ.entry(a).or_default().push(b);
    }
    let reachable = |from: usize, to: usize, skip: (usize, usize)| -> bool {
        let mut stack = vec![from];
        let mut seen = std::collections::HashSet::new();
        while let Some(x) = stack.pop() {
            if x == to && x != from {
                return true;
            }
            if !seen.insert(x) {
                continue;
            }
            for &y in succ.get(&x).into_iter().flatten() {
                if (x, y) != skip {
                    stack.push(y);
                }
            }
        }
        false
    };
    edges
        .iter()
        .copied()
        .filter(|&(a, b)| !reachable(a, b, (a, b)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{
        gc_program, mds_program, mds_two_phase_program, naive_vc_program, smp_program,
        vc_program, SmpInstance,
    };
    use crate::fixtures::{g4, path, two_stars};
    use crate::state::Membership::{In, Out};
    use crate::state::{flag_state, proposal_state};

    fn full_space(prog: &dyn NodeProgram, g: &Graph) -> StateSpace {
        explore(prog, g, Restriction::Full, DEFAULT_CAPACITY).unwrap()
    }

    #[test]
    fn flag_space_on_four_nodes_has_sixteen_states() {
        let g = g4();
        let prog = mds_program();
        assert_eq!(full_space(&prog, &g).len(), 16);
    }

    #[test]
    fn colour_space_on_an_edge_with_cap_three_has_nine_states() {
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let prog = gc_program(3);
        assert_eq!(full_space(&prog, &g).len(), 9);
    }

    #[test]
    fn cover_reachable_space_projects_to_four_membership_vectors() {
        let g = two_stars();
        let prog = vc_program();
        let init = prog.canonical_init(&g).unwrap();
        let space = explore(
            &prog,
            &g,
            Restriction::ReachableFrom(init),
            DEFAULT_CAPACITY,
        )
        .unwrap();
        let projections = space.membership_projections();
        let expect: BTreeSet<Vec<Membership>> = [
            vec![Out, Out, Out, Out, Out, Out, Out, Out],
            vec![Out, In, Out, In, Out, Out, Out, Out],
            vec![Out, Out, Out, Out, Out, Out, In, In],
            vec![Out, In, Out, In, Out, Out, In, In],
        ]
        .into_iter()
        .collect();
        assert_eq!(projections, expect);
    }

    #[test]
    fn dominating_set_partition_matches_the_four_known_lattices() {
        let g = g4();
        let prog = mds_program();
        let space = full_space(&prog, &g);
        let report = verify_partition(&prog, &g, &space, &VerifyOptions::default());
        assert_eq!(report.w, 4);
        assert!(report.disjoint && report.exhaustive && report.suprema_optimal);
        assert!(report.revisit_violations.is_empty());
        let suprema: BTreeSet<String> =
            report.classes.iter().map(|c| c.supremum.to_string()).collect();
        let expect: BTreeSet<String> = [
            flag_state(&[In, Out, In, Out]),
            flag_state(&[Out, In, Out, In]),
            flag_state(&[Out, In, In, Out]),
            flag_state(&[In, Out, Out, In]),
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        assert_eq!(suprema, expect);
        for class in &report.classes {
            assert_eq!(class.members.len(), 4);
            assert!(class.meet_join_closed);
            assert!(class.infimum.is_some());
        }
    }

    #[test]
    fn two_phase_partition_on_feasible_states_matches_the_known_shapes() {
        fn feasible(g: &Graph, s: &GlobalState) -> bool {
            g.nodes().all(|i| {
                s.local(i).membership() == Some(In)
                    || g.neighbors(i)
                        .iter()
                        .any(|&j| s.local(j).membership() == Some(In))
            })
        }
        let g = g4();
        let prog = mds_two_phase_program();
        let space = explore(&prog, &g, Restriction::Filter(feasible), DEFAULT_CAPACITY).unwrap();
        assert_eq!(space.len(), 9);
        assert_eq!(space.escapes, 0);
        let report = verify_partition(&prog, &g, &space, &VerifyOptions::default());
        assert_eq!(report.w, 4);
        let mut shapes: Vec<(usize, String)> = report
            .classes
            .iter()
            .map(|c| (c.members.len(), c.supremum.to_string()))
            .collect();
        shapes.sort();
        assert_eq!(
            shapes,
            vec![
                (1, flag_state(&[Out, In, Out, In]).to_string()),
                (2, flag_state(&[In, Out, Out, In]).to_string()),
                (2, flag_state(&[Out, In, In, Out]).to_string()),
                (4, flag_state(&[In, Out, In, Out]).to_string()),
            ]
        );
    }

    #[test]
    fn naive_cover_on_a_path_shows_a_revisit() {
        let g = path(4);
        let prog = naive_vc_program();
        let space = full_space(&prog, &g);
        let report = verify_partition(&prog, &g, &space, &VerifyOptions::default());
        assert!(report
            .revisit_violations
            .iter()
            .any(|w| w.node == 3 && w.start == flag_state(&[Out, Out, Out, Out])));
        assert!(report.has_violations());
    }

    #[test]
    fn impedensable_matches_the_definition_on_small_cases() {
        let g = g4();
        let prog = mds_program();
        let space = full_space(&prog, &g);
        let all_out = flag_state(&[Out, Out, Out, Out]);
        assert!(impedensable(&prog, &g, &space, &all_out, 1).unwrap());
        assert!(!impedensable(&prog, &g, &space, &all_out, 0).unwrap());
        let optimal = flag_state(&[In, Out, In, Out]);
        for i in g.nodes() {
            assert!(!impedensable(&prog, &g, &space, &optimal, i).unwrap());
        }
    }

    #[test]
    fn impedensable_on_proposals() {
        let inst = SmpInstance::from_preferences(
            vec![vec![1, 0, 2], vec![1, 0, 2], vec![0, 2, 1]],
            vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 1, 0]],
        )
        .unwrap();
        let g = inst.carrier_graph();
        let prog = smp_program(inst);
        let space = full_space(&prog, &g);
        let start = proposal_state(&[1, 1, 1]);
        assert!(impedensable(&prog, &g, &space, &start, 1).unwrap());
        assert!(!impedensable(&prog, &g, &space, &start, 0).unwrap());
    }

    #[test]
    fn meet_and_join_on_one_dominating_set_class() {
        let g = g4();
        let prog = mds_program();
        let s1 = flag_state(&[In, Out, In, In]);
        let s2 = flag_state(&[In, In, In, Out]);
        assert_eq!(
            meet(&prog, &g, &s1, &s2).unwrap(),
            flag_state(&[In, In, In, In])
        );
        assert_eq!(
            join(&prog, &g, &s1, &s2).unwrap(),
            flag_state(&[In, Out, In, Out])
        );
        // Idempotence.
        assert_eq!(meet(&prog, &g, &s1, &s1).unwrap(), s1);
        assert_eq!(join(&prog, &g, &s1, &s1).unwrap(), s1);
        // Cross-class pairs are rejected.
        let other = flag_state(&[Out, Out, Out, Out]);
        assert!(matches!(
            meet(&prog, &g, &s1, &other),
            Err(VerifyError::CrossClass)
        ));
    }

    #[test]
    fn proposal_meet_join_follow_the_numeric_order_globally() {
        let inst = SmpInstance::from_preferences(
            vec![vec![1, 0, 2], vec![1, 0, 2], vec![0, 2, 1]],
            vec![vec![1, 2, 0], vec![0, 1, 2], vec![2, 1, 0]],
        )
        .unwrap();
        let g = inst.carrier_graph();
        let prog = smp_program(inst);
        let a = proposal_state(&[2, 1, 1]);
        let b = proposal_state(&[1, 2, 1]);
        assert_eq!(join(&prog, &g, &a, &b).unwrap(), proposal_state(&[2, 2, 1]));
        assert_eq!(meet(&prog, &g, &a, &b).unwrap(), proposal_state(&[1, 1, 1]));
    }

    #[test]
    fn rank_examples() {
        let g = g4();
        let prog = mds_program();
        assert_eq!(rank(&prog, &g, &flag_state(&[Out, Out, Out, Out])), 4);
        assert_eq!(rank(&prog, &g, &flag_state(&[In, Out, In, Out])), 0);

        let stars = two_stars();
        let vc = vc_program();
        let init = vc.canonical_init(&stars).unwrap();
        assert_eq!(rank(&vc, &stars, &init), 12);
    }

    #[test]
    fn capacity_errors_are_reported() {
        let g = path(6);
        let prog = mds_program();
        assert!(matches!(
            explore(&prog, &g, Restriction::Full, 16),
            Err(VerifyError::CapacityExceeded { size: 64, .. })
        ));
    }

    #[test]
    fn single_node_graph_forms_one_two_state_lattice() {
        let g = Graph::from_edges(1, &[]).unwrap();
        let prog = mds_program();
        let space = full_space(&prog, &g);
        let report = verify_partition(&prog, &g, &space, &VerifyOptions::default());
        assert_eq!(report.w, 1);
        assert_eq!(report.classes[0].supremum, flag_state(&[In]));
        assert_eq!(report.classes[0].members.len(), 2);
    }
}
