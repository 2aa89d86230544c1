//! Deterministic seed derivation.
//!
//! Every random stream in this crate is a ChaCha8 generator whose 64-bit seed
//! is derived through the splitmix64 finalizer. Streams are named by counters
//! rather than drawn from one shared sequence, so trajectory `i` sees the same
//! draws no matter how many workers run, which trajectories ran before it, or
//! whether a sibling stream consumed more entropy.
//!
//! Derivation tree used by the simulation harness:
//!
//! ```text
//! base_seed
//!   -> child(base, repeat)            one node per repeat
//!      -> child(.., trajectory)       one node per trajectory
//!         -> child(.., 0)             matrix generation stream
//!         -> child(.., 1)             refinement solver seed
//!            -> child(.., round)      one sampling stream per round
//! ```

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// splitmix64 increment.
const GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer: a fixed 64-bit bijection with good avalanche.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The `index`-th output of a splitmix64 sequence started at `parent`.
pub fn child_seed(parent: u64, index: u64) -> u64 {
    mix64(parent.wrapping_add(GAMMA.wrapping_mul(index.wrapping_add(1))))
}

/// Seed for one simulation trajectory.
pub fn trajectory_seed(base_seed: u64, repeat: u64, trajectory: u64) -> u64 {
    child_seed(child_seed(base_seed, repeat), trajectory)
}

/// Fixed-algorithm generator for a derived seed.
pub fn stream(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
