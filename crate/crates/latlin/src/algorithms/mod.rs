//! The node programs shipped with this crate.
//!
//! Programs are selected by name: `mds`, `mds-ell`, `gc`, `vc`, `vc-dist`,
//! `smp`, `naive-vc`.

mod colouring;
mod cover;
mod cover_dist;
mod dominating;
mod marriage;
mod naive_cover;

pub use colouring::{default_colour_cap, gc_program, GcProgram};
pub use cover::{vc_program, CoverProgram};
pub use cover_dist::{vc_distributed_program, PointedCoverProgram};
pub use dominating::{mds_program, mds_two_phase_program, MdsProgram, MdsTwoPhaseProgram};
pub use marriage::{smp_program, SmpError, SmpInstance, SmpInstanceFile, SmpProgram};
pub use naive_cover::{naive_vc_program, NaiveCoverProgram};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;

use crate::graph::Graph;
use crate::program::NodeProgram;
use crate::state::GlobalState;

/// All selectable algorithm names.
pub const ALGORITHM_NAMES: [&str; 7] =
    ["mds", "mds-ell", "gc", "vc", "vc-dist", "smp", "naive-vc"];

/// Builds the graph-algorithm program with the given name. The colour cap
/// applies to `gc` only and defaults to one more than any recolouring
/// target needs. `smp` takes an instance instead; see [`smp_program`].
pub fn program_by_name(
    name: &str,
    g: &Graph,
    colour_cap: Option<u32>,
) -> Result<Box<dyn NodeProgram>, String> {
    match name {
        "mds" => Ok(Box::new(mds_program())),
        "mds-ell" => Ok(Box::new(mds_two_phase_program())),
        "gc" => Ok(Box::new(gc_program(
            colour_cap.unwrap_or_else(|| default_colour_cap(g)),
        ))),
        "vc" => Ok(Box::new(vc_program())),
        "vc-dist" => Ok(Box::new(vc_distributed_program())),
        "naive-vc" => Ok(Box::new(naive_vc_program())),
        "smp" => Err("smp needs an instance file; use the instance loader".into()),
        other => Err(format!(
            "unknown algorithm {other:?}; expected one of {ALGORITHM_NAMES:?}"
        )),
    }
}

/// Uniform seeded draw from each node's local domain.
pub fn random_init(prog: &dyn NodeProgram, g: &Graph, seed: u64) -> GlobalState {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    GlobalState::new(
        g.nodes()
            .map(|i| {
                let domain = prog.local_domain(g, i);
                domain[rng.gen_range(0..domain.len())]
            })
            .collect(),
    )
}

/// The canonical init when the program prescribes one, otherwise a seeded
/// random state.
pub fn default_init(prog: &dyn NodeProgram, g: &Graph, seed: u64) -> GlobalState {
    prog.canonical_init(g)
        .unwrap_or_else(|| random_init(prog, g, seed))
}
