//! Workload builders shared by the benches.
//!
//! Every builder is deterministic in its seed so runs are comparable.

use mllnets::calculus::translate;
use mllnets::generate::{identity_style_net, random_proof_with_cuts, Params};
use mllnets::ProofNet;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Cut-free identity nets of roughly `leaves` leaves over all four kinds of leaf.
pub fn identity_workload(leaves: usize) -> ProofNet {
    identity_style_net(leaves)
}

/// A proof net of about `leaves` leaves with `cuts` cuts added on top of a random proof.
pub fn cut_workload(leaves: usize, cuts: usize, seed: u64) -> ProofNet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = Params { leaves, vars: 3, cuts: true };
    translate(&random_proof_with_cuts(&mut rng, &p, cuts)).expect("translations of proofs are proof nets")
}
