//! Proof nets for multiplicative linear logic with units.
//!
//! A net is a [`CutSequent`] (formula trees plus cut pairs) together with a
//! [`LeafFunction`] sending every negative leaf to a positive one. The crate
//! checks correctness by brute force over switchings and by a near-linear
//! reduction to contractibility, eliminates cuts stepwise or all at once,
//! composes nets as morphisms of a category, interprets them as GoI and
//! laminated GoI maps, and translates between nets and sequent proofs.

pub mod calculus;
pub mod category;
pub mod checker;
pub mod contract;
pub mod dot;
pub mod format;
pub mod generate;
pub mod goi;
pub mod lamination;
pub mod net;
pub mod rewrite;
pub mod syntax;

pub use calculus::{check_proof, sequentialize, translate, Proof, Rule};
pub use category::{compose_nets, identity_net, NetMorphism};
pub use checker::{check_fast, check_old_net, old_to_new, reduce_to_unit_free, OldNet};
pub use net::{
    check_matching, check_switching_oracle, is_proof_net, Counterexample, Defect, LeafFunction,
    ProofNet, Rejection,
};
pub use syntax::{
    parse_formula, Atom, Connective, CutSequent, Formula, ParseError, Polarity, SequentError,
    Side, Switching,
};
pub use goi::{compose_goi, identity_goi, GoiMorphism, SignedSet};
pub use lamination::{compose_lam, identity_lam, LaminatedMorphism};
pub use rewrite::{eliminate_cut, normalize_stepwise, turbo_normalize_net};
