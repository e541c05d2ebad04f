//! Random formulas, leaf functions, proofs and morphisms for testing and benchmarking.
//!
//! Proof nets are produced by translating random proofs, so they are correct
//! by construction.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::calculus::{translate, Origin, Proof};
use crate::category::{identity_net, NetMorphism};
use crate::net::{LeafFunction, ProofNet};
use crate::rewrite::turbo_normalize_net;
use crate::syntax::{Atom, CutSequent, Formula, Polarity};

const VARS: [&str; 6] = ["P", "Q", "R", "S", "T", "U"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Params {
    /// Approximate leaf count of generated proofs.
    pub leaves: usize,
    /// Number of distinct variables, at most 6.
    pub vars: usize,
    /// Whether proofs may use the cut rule.
    pub cuts: bool,
}

impl Default for Params {
    fn default() -> Params {
        Params { leaves: 12, vars: 2, cuts: true }
    }
}

fn var<R: Rng + ?Sized>(rng: &mut R, vars: usize) -> &'static str {
    VARS[rng.random_range(0..vars.clamp(1, VARS.len()))]
}

/// A uniformly shaped random formula with exactly `leaves` leaves.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, leaves: usize, vars: usize, units: f64) -> Formula {
    assert!(leaves >= 1, "formulas have at least one leaf");
    if leaves == 1 {
        let atom = if rng.random_bool(units) {
            if rng.random_bool(0.5) { Atom::One } else { Atom::Bot }
        } else {
            let v = var(rng, vars).to_string();
            if rng.random_bool(0.5) { Atom::Var(v) } else { Atom::DualVar(v) }
        };
        return Formula::Atom(atom);
    }
    let k = rng.random_range(1..leaves);
    let a = random_formula(rng, k, vars, units);
    let b = random_formula(rng, leaves - k, vars, units);
    if rng.random_bool(0.5) { Formula::tensor(a, b) } else { Formula::par(a, b) }
}

/// A balanced formula with `leaves` leaves, `⊗` and `⅋` alternating by depth,
/// leaves cycling through `P`, `Q⊥`, `⊥`, `1`.
pub fn balanced_formula(leaves: usize) -> Formula {
    fn build(n: usize, depth: usize, next: &mut usize) -> Formula {
        if n == 1 {
            *next += 1;
            return Formula::Atom(match *next % 4 {
                0 => Atom::One,
                1 => Atom::Var("P".to_string()),
                2 => Atom::DualVar("Q".to_string()),
                _ => Atom::Bot,
            });
        }
        let (a, b) = (build(n / 2, depth + 1, next), build(n - n / 2, depth + 1, next));
        if depth.is_multiple_of(2) { Formula::tensor(a, b) } else { Formula::par(a, b) }
    }
    assert!(leaves >= 1, "formulas have at least one leaf");
    build(leaves, 0, &mut 0)
}

/// The identity net on a balanced formula; it has `2 * (leaves / 2)` leaves
/// and exercises every kind of leaf and both connectives.
pub fn identity_style_net(leaves: usize) -> ProofNet {
    identity_net(&balanced_formula((leaves / 2).max(1))).net().clone()
}

/// A cut-free sequent of `trees` random formulas over `leaves` leaves in total.
pub fn random_sequent<R: Rng + ?Sized>(rng: &mut R, leaves: usize, trees: usize, vars: usize, units: f64) -> CutSequent {
    let trees = trees.clamp(1, leaves.max(1));
    let mut sizes = vec![1; trees];
    for _ in trees..leaves {
        sizes[rng.random_range(0..trees)] += 1;
    }
    CutSequent::cut_free(sizes.into_iter().map(|n| random_formula(rng, n, vars, units)).collect()).expect("nonempty")
}

fn positive_leaves(g: &CutSequent) -> Vec<usize> {
    (0..g.leaf_count()).filter(|&l| g.polarity(l) == Polarity::Positive).collect()
}

/// Any total leaf function on `g`, or `None` if `g` has no positive leaf.
pub fn random_leaf_function<R: Rng + ?Sized>(rng: &mut R, g: &CutSequent) -> Option<LeafFunction> {
    let pos = positive_leaves(g);
    if pos.is_empty() {
        return None;
    }
    let targets = (0..g.leaf_count())
        .map(|l| (g.polarity(l) == Polarity::Negative).then(|| pos[rng.random_range(0..pos.len())]))
        .collect();
    LeafFunction::from_targets(g, targets).ok()
}

/// A leaf function satisfying the matching condition, or `None` if none exists.
pub fn random_matching_function<R: Rng + ?Sized>(rng: &mut R, g: &CutSequent) -> Option<LeafFunction> {
    let pos = positive_leaves(g);
    let leaves = g.leaves();
    let mut targets = vec![None; g.leaf_count()];
    let mut vars: Vec<&str> = leaves.iter().filter_map(|(_, a, _)| a.var()).collect();
    vars.sort_unstable();
    vars.dedup();
    for v in vars {
        let mut ps: Vec<usize> =
            leaves.iter().filter(|(_, a, _)| *a == Atom::Var(v.to_string())).map(|(l, _, _)| *l).collect();
        let ns: Vec<usize> =
            leaves.iter().filter(|(_, a, _)| *a == Atom::DualVar(v.to_string())).map(|(l, _, _)| *l).collect();
        if ps.len() != ns.len() {
            return None;
        }
        ps.shuffle(rng);
        for (n, p) in ns.into_iter().zip(ps) {
            targets[n] = Some(p);
        }
    }
    for (l, a, _) in &leaves {
        if *a == Atom::Bot {
            if pos.is_empty() {
                return None;
            }
            targets[*l] = Some(pos[rng.random_range(0..pos.len())]);
        }
    }
    LeafFunction::from_targets(g, targets).ok()
}

fn base<R: Rng + ?Sized>(rng: &mut R, p: &Params) -> Proof {
    if rng.random_bool(0.75) {
        Proof::axiom(var(rng, p.vars), rng.random_bool(0.5))
    } else {
        Proof::one()
    }
}

fn random_mark<R: Rng + ?Sized>(rng: &mut R, premise: &CutSequent, at: usize) -> usize {
    let new = premise.forest().leaf_starts[at];
    let pos = positive_leaves(premise);
    let m = pos[rng.random_range(0..pos.len())];
    if m >= new { m + 1 } else { m }
}

fn free_trees(g: &CutSequent) -> Vec<usize> {
    (0..g.trees().len()).filter(|&t| !g.in_cut(t)).collect()
}

/// Interleave the side formulas of a binary rule at random.
fn random_layout<R: Rng + ?Sized>(
    rng: &mut R,
    left_len: usize,
    right_len: usize,
    skip: Option<(usize, usize)>,
) -> Vec<Origin> {
    let mut layout: Vec<Origin> = (0..left_len)
        .filter(|&i| skip.is_none_or(|(l, _)| l != i))
        .map(Origin::Left)
        .chain((0..right_len).filter(|&j| skip.is_none_or(|(_, r)| r != j)).map(Origin::Right))
        .collect();
    layout.shuffle(rng);
    if skip.is_some() {
        let at = rng.random_range(0..=layout.len());
        layout.insert(at, Origin::Principal);
    }
    layout
}

/// A random proof with roughly `p.leaves` leaves.
pub fn random_proof<R: Rng + ?Sized>(rng: &mut R, p: &Params) -> Proof {
    let mut proof = base(rng, p);
    let mut steps = 0;
    while proof.conclusion().leaf_count() < p.leaves && steps < 4 * p.leaves + 8 {
        steps += 1;
        let g = proof.conclusion().clone();
        let free = free_trees(&g);
        let room = p.leaves - g.leaf_count();
        match rng.random_range(0..10) {
            0..=1 => {
                let at = rng.random_range(0..=g.trees().len());
                let mark = random_mark(rng, &g, at);
                proof = Proof::bot(proof, at, Some(mark)).expect("bot on a positive mark");
            }
            2..=4 => {
                let adjacent: Vec<usize> = (0..g.trees().len().saturating_sub(1))
                    .filter(|&t| !g.in_cut(t) && !g.in_cut(t + 1))
                    .collect();
                if let Some(&at) = adjacent.get(rng.random_range(0..adjacent.len().max(1))) {
                    proof = Proof::par(proof, at).expect("par of adjacent free trees");
                }
            }
            5..=8 => {
                let other = if room > 4 && rng.random_bool(0.3) {
                    random_proof(rng, &Params { leaves: room / 2, ..*p })
                } else {
                    base(rng, p)
                };
                let l = free[rng.random_range(0..free.len())];
                let of = free_trees(other.conclusion());
                let r = of[rng.random_range(0..of.len())];
                let (n, m) = (g.trees().len(), other.conclusion().trees().len());
                proof = if rng.random_bool(0.5) {
                    let layout = random_layout(rng, n, m, Some((l, r)));
                    Proof::tensor(proof, other, l, r, layout)
                } else {
                    let layout = random_layout(rng, m, n, Some((r, l)));
                    Proof::tensor(other, proof, r, l, layout)
                }
                .expect("tensor of free trees");
            }
            _ if p.cuts => {
                let small: Vec<usize> = free.iter().copied().filter(|&t| g.trees()[t].leaf_count() <= room.max(2)).collect();
                if small.is_empty() {
                    continue;
                }
                let l = small[rng.random_range(0..small.len())];
                proof = cut_at(rng, proof, l, p);
            }
            _ => {}
        }
    }
    proof
}

/// Cut free tree `l` of the conclusion against a random proof of its negation.
fn cut_at<R: Rng + ?Sized>(rng: &mut R, proof: Proof, l: usize, p: &Params) -> Proof {
    let g = proof.conclusion();
    let other = proof_with(rng, vec![g.trees()[l].negate()], p);
    let layout = random_layout(rng, g.trees().len(), other.conclusion().trees().len(), None);
    Proof::cut(proof, other, l, 0, layout).expect("cut against a proof of the negation")
}

/// A random proof with up to `cuts` further cuts on free conclusion formulas.
pub fn random_proof_with_cuts<R: Rng + ?Sized>(rng: &mut R, p: &Params, cuts: usize) -> Proof {
    let mut proof = random_proof(rng, p);
    for _ in 0..cuts {
        let free = free_trees(proof.conclusion());
        if free.is_empty() {
            break;
        }
        let l = free[rng.random_range(0..free.len())];
        proof = cut_at(rng, proof, l, p);
    }
    proof
}

/// A random proof whose conclusion starts with `ds`, in order, followed by extra formulas.
pub fn proof_with<R: Rng + ?Sized>(rng: &mut R, ds: Vec<Formula>, p: &Params) -> Proof {
    if ds.is_empty() {
        return random_proof(rng, &Params { leaves: (p.leaves / 4).max(1), ..*p });
    }
    if let Some(k) = ds.iter().position(|d| matches!(d, Formula::Par(..)) || *d == Formula::bot()) {
        let mut sub = ds.clone();
        if let Some((a, b)) = ds[k].children() {
            sub.splice(k..=k, [a.clone(), b.clone()]);
            return Proof::par(proof_with(rng, sub, p), k).expect("par of the two subformulas");
        }
        sub.remove(k);
        let premise = proof_with(rng, sub, p);
        let mark = random_mark(rng, premise.conclusion(), k);
        return Proof::bot(premise, k, Some(mark)).expect("bot on a positive mark");
    }
    if let Some(k) = ds.iter().position(|d| matches!(d, Formula::Tensor(..))) {
        let (a, b) = ds[k].children().expect("tensor");
        let mut left = vec![a.clone()];
        let mut right = vec![b.clone()];
        let mut layout = Vec::with_capacity(ds.len());
        for (q, d) in ds.iter().enumerate() {
            if q == k {
                layout.push(Origin::Principal);
            } else if rng.random_bool(0.5) {
                layout.push(Origin::Left(left.len()));
                left.push(d.clone());
            } else {
                layout.push(Origin::Right(right.len()));
                right.push(d.clone());
            }
        }
        let (nl, nr) = (left.len(), right.len());
        let lp = proof_with(rng, left, p);
        let rp = proof_with(rng, right, p);
        let mut extras: Vec<Origin> = (nl..lp.conclusion().trees().len())
            .map(Origin::Left)
            .chain((nr..rp.conclusion().trees().len()).map(Origin::Right))
            .collect();
        extras.shuffle(rng);
        layout.extend(extras);
        return Proof::tensor(lp, rp, 0, 0, layout).expect("tensor of the two subformulas");
    }
    // Only literals and 1 remain: one component per formula, joined through their extras.
    let mut acc: Option<Proof> = None;
    for (done, d) in ds.iter().enumerate() {
        let comp = match d.as_atom().expect("atomic") {
            Atom::Var(v) => Proof::axiom(v, false),
            Atom::DualVar(v) => Proof::axiom(v, true),
            _ => Proof::bot(Proof::one(), 1, None).expect("bot beside 1"),
        };
        acc = Some(match acc {
            None => comp,
            Some(prev) => {
                let m = prev.conclusion().trees().len();
                let extra: Vec<usize> = (done..m).filter(|&t| !prev.conclusion().in_cut(t)).collect();
                let l = extra[rng.random_range(0..extra.len())];
                let mut layout: Vec<Origin> = (0..done).map(Origin::Left).collect();
                layout.push(Origin::Right(0));
                let mut rest: Vec<Origin> =
                    (done..m).filter(|&t| t != l).map(Origin::Left).chain(std::iter::once(Origin::Principal)).collect();
                rest.shuffle(rng);
                layout.extend(rest);
                Proof::tensor(prev, comp, l, 1, layout).expect("tensor of two extras")
            }
        });
    }
    acc.expect("ds is nonempty")
}

/// The translation of a random proof.
pub fn random_net<R: Rng + ?Sized>(rng: &mut R, p: &Params) -> ProofNet {
    translate(&random_proof(rng, p)).expect("translations of proofs are proof nets")
}

fn into_morphism(net: ProofNet) -> NetMorphism {
    let net = turbo_normalize_net(&net);
    let (g, f) = net.into_parts();
    let mut trees = g.trees().to_vec();
    let first = trees.remove(0);
    let rest = trees.into_iter().rev().reduce(|acc, t| Formula::par(t, acc)).expect("at least two trees");
    let g = CutSequent::cut_free(vec![first, rest]).expect("two trees");
    let f = LeafFunction::from_targets(&g, f.targets().to_vec()).expect("leaf order is unchanged");
    NetMorphism::from_net(ProofNet::new(g, f).expect("adding pars preserves correctness")).expect("two trees")
}

/// A random morphism out of `source`.
pub fn random_morphism_from<R: Rng + ?Sized>(rng: &mut R, source: &Formula, p: &Params) -> NetMorphism {
    let proof = proof_with(rng, vec![source.negate()], p);
    into_morphism(translate(&proof).expect("translations of proofs are proof nets"))
}

/// A random morphism between random formulas.
pub fn random_morphism<R: Rng + ?Sized>(rng: &mut R, p: &Params) -> NetMorphism {
    let mut proof = random_proof(rng, p);
    if proof.conclusion().trees().len() - proof.conclusion().cuts().len() * 2 < 2 {
        let mark = random_mark(rng, proof.conclusion(), 0);
        proof = Proof::bot(proof, 0, Some(mark)).expect("bot on a positive mark");
    }
    let net = translate(&proof).expect("translations of proofs are proof nets");
    into_morphism(net)
}

/// Three composable random morphisms.
pub fn composable_triple<R: Rng + ?Sized>(rng: &mut R, p: &Params) -> (NetMorphism, NetMorphism, NetMorphism) {
    let f = random_morphism(rng, p);
    let g = random_morphism_from(rng, f.target(), p);
    let h = random_morphism_from(rng, g.target(), p);
    (f, g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::check_proof;
    use crate::checker::check_fast;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn extra_cuts_are_added() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let p = Params { leaves: 6, ..Params::default() };
        let most = (0..50)
            .map(|_| {
                let proof = random_proof_with_cuts(&mut rng, &p, 6);
                assert_eq!(check_proof(&proof), Ok(()));
                proof.conclusion().cuts().len()
            })
            .max();
        assert!(most >= Some(6));
    }

    #[test]
    fn random_proofs_check_and_translate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p = random_proof(&mut rng, &Params::default());
            assert_eq!(check_proof(&p), Ok(()));
            let n = translate(&p).unwrap();
            assert!(check_fast(n.function(), n.sequent()).is_ok());
        }
    }

    #[test]
    fn random_nets_sequentialize() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let n = random_net(&mut rng, &Params { leaves: 16, vars: 3, cuts: true });
            let p = crate::calculus::sequentialize(&n).unwrap();
            assert_eq!(translate(&p).unwrap(), n);
        }
    }

    #[test]
    fn proofs_with_a_prefix() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..200 {
            let a = random_formula(&mut rng, 5, 2, 0.3);
            let p = proof_with(&mut rng, vec![a.clone(), a.negate()], &Params::default());
            assert_eq!(check_proof(&p), Ok(()));
            assert_eq!(&p.conclusion().trees()[..2], &[a.clone(), a.negate()]);
        }
    }

    #[test]
    fn triples_compose() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..50 {
            let (f, g, h) = composable_triple(&mut rng, &Params::default());
            assert_eq!(f.target(), g.source());
            assert_eq!(g.target(), h.source());
        }
    }

    #[test]
    fn matching_functions_match() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let mut found = 0;
        for _ in 0..300 {
            let g = random_sequent(&mut rng, 6, 2, 2, 0.3);
            if let Some(f) = random_matching_function(&mut rng, &g) {
                assert!(crate::net::check_matching(&f, &g));
                found += 1;
            }
            if let Some(f) = random_leaf_function(&mut rng, &g) {
                assert_eq!(f.leaf_count(), g.leaf_count());
            }
        }
        assert!(found > 0);
    }
}
