//! Property tests for the invariants of each module.
//!
//! Syntax properties use structural strategies so failures shrink to small
//! formulas. Net properties draw a seed and build correct nets by translating
//! random proofs, since correct nets are too sparse to hit by rejection.

use std::collections::BTreeSet;

use mllnets::calculus::{check_proof, sequentialize, translate, Proof, Rule};
use mllnets::category::{compose_nets, identity_net, underlying_goi};
use mllnets::checker::{check_fast_with, is_correct, CopyOrder};
use mllnets::format::{net_to_json, parse_net, parse_proof, proof_to_json};
use mllnets::generate::{
    composable_triple, random_leaf_function, random_proof, random_proof_with_cuts, random_sequent, Params,
};
use mllnets::goi::{compose_goi, identity_goi, stable_domain_image, synchronises, Endpoint, GoiMorphism, SignedSet};
use mllnets::lamination::{compose_lam, embed, identity_lam, LaminatedMorphism};
use mllnets::net::switching_graph;
use mllnets::rewrite::{eliminate_cut, normalize_stepwise, track_cut, turbo_normalize_net};
use mllnets::{
    check_fast, is_proof_net, parse_formula, CutSequent, Formula, LeafFunction, Polarity, ProofNet,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn atom() -> impl Strategy<Value = Formula> {
    prop_oneof![
        prop::sample::select(vec!["P", "Q", "R"]).prop_map(Formula::var),
        prop::sample::select(vec!["P", "Q", "R"]).prop_map(Formula::dual_var),
        Just(Formula::one()),
        Just(Formula::bot()),
    ]
}

fn formula(leaves: u32) -> impl Strategy<Value = Formula> {
    atom().prop_recursive(8, leaves, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::tensor(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::par(a, b)),
        ]
    })
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn net_from(seed: u64, leaves: usize, cuts: usize) -> ProofNet {
    let mut r = rng(seed);
    let p = Params { leaves, vars: 3, cuts: true };
    translate(&random_proof_with_cuts(&mut r, &p, cuts)).expect("translations of proofs are proof nets")
}

/// Any sequent with any leaf function, correct or not.
fn arbitrary_instance(seed: u64) -> Option<(CutSequent, LeafFunction)> {
    let mut r = rng(seed);
    let leaves = r.random_range(2..=9);
    let trees = r.random_range(1..=3);
    let vars = r.random_range(1..=2);
    let g = random_sequent(&mut r, leaves, trees, vars, 0.4);
    let f = random_leaf_function(&mut r, &g)?;
    Some((g, f))
}

/// The net with its trees permuted by `order` (new position `k` holds old tree `order[k]`).
fn permute_trees(g: &CutSequent, f: &LeafFunction, order: &[usize]) -> (CutSequent, LeafFunction) {
    let mut position = vec![0; order.len()];
    for (k, &t) in order.iter().enumerate() {
        position[t] = k;
    }
    let trees: Vec<Formula> = order.iter().map(|&t| g.trees()[t].clone()).collect();
    let cuts = g.cuts().iter().map(|&(i, j)| (position[i], position[j])).collect();
    let h = CutSequent::new(trees, cuts).expect("a permutation of a sequent is a sequent");
    let mut leaf = vec![0; g.leaf_count()];
    let mut next = 0;
    for &t in order {
        for l in g.forest().tree_leaves(t) {
            leaf[l] = next;
            next += 1;
        }
    }
    let edges = f.edges().map(|(s, t)| (leaf[s], leaf[t]));
    (h.clone(), LeafFunction::new(&h, edges).expect("relabelled edges keep their polarities"))
}

/// The net with the children of binary vertex number `which` (pre-order among
/// binaries of tree `tree`) swapped, relabelling leaves to match.
fn swap_children(g: &CutSequent, f: &LeafFunction, tree: usize, which: usize) -> Option<(CutSequent, LeafFunction)> {
    fn go(a: &Formula, which: &mut usize, leaves: &mut Vec<usize>, offset: usize) -> Formula {
        match a.children() {
            None => {
                leaves.push(offset);
                a.clone()
            }
            Some((l, r)) => {
                let hit = *which == 0;
                *which = which.wrapping_sub(1);
                let c = a.connective().expect("binary");
                if hit {
                    let mut right = Vec::new();
                    let r2 = go(r, &mut usize::MAX.clone(), &mut right, offset + l.leaf_count());
                    let mut left = Vec::new();
                    let l2 = go(l, &mut usize::MAX.clone(), &mut left, offset);
                    leaves.extend(right);
                    leaves.extend(left);
                    Formula::binary(c, r2, l2)
                } else {
                    let l2 = go(l, which, leaves, offset);
                    let r2 = go(r, which, leaves, offset + l.leaf_count());
                    Formula::binary(c, l2, r2)
                }
            }
        }
    }
    if g.in_cut(tree) || which >= g.trees()[tree].size() / 2 {
        return None;
    }
    let start = g.forest().tree_leaves(tree).start;
    let mut old_at = Vec::new();
    let swapped = go(&g.trees()[tree], &mut { which }, &mut old_at, start);
    let mut trees = g.trees().to_vec();
    trees[tree] = swapped;
    let h = CutSequent::new(trees, g.cuts().to_vec()).ok()?;
    let mut leaf: Vec<usize> = (0..g.leaf_count()).collect();
    for (k, &old) in old_at.iter().enumerate() {
        leaf[old] = start + k;
    }
    let edges = f.edges().map(|(s, t)| (leaf[s], leaf[t]));
    Some((h.clone(), LeafFunction::new(&h, edges).expect("relabelled edges keep their polarities")))
}

fn cut_index(g: &CutSequent, pair: (usize, usize)) -> usize {
    g.cuts()
        .iter()
        .position(|&(a, b)| (a, b) == pair || (b, a) == pair)
        .expect("tracked cut is present")
}

fn signed_set(bits: u8, len: usize) -> SignedSet {
    SignedSet::new((0..len).map(|i| if bits >> i & 1 == 1 { Polarity::Negative } else { Polarity::Positive }).collect())
}

/// A random partial map `S⁺ + T⁻ → S⁻ + T⁺`.
fn random_goi(r: &mut ChaCha8Rng, s: &SignedSet, t: &SignedSet) -> GoiMorphism {
    let side = |set: &SignedSet, pol: Polarity, make: fn(usize) -> Endpoint| -> Vec<Endpoint> {
        (0..set.len()).filter(|&i| set.sign(i) == Some(pol)).map(make).collect()
    };
    let domain = [side(s, Polarity::Positive, Endpoint::Source), side(t, Polarity::Negative, Endpoint::Target)].concat();
    let codomain = [side(s, Polarity::Negative, Endpoint::Source), side(t, Polarity::Positive, Endpoint::Target)].concat();
    let mut pairs = Vec::new();
    for d in domain {
        if !codomain.is_empty() && r.random_bool(0.7) {
            pairs.push((d, codomain[r.random_range(0..codomain.len())]));
        }
    }
    GoiMorphism::new(s.clone(), t.clone(), pairs).expect("well-signed by construction")
}

/// Walk the proof in pre-order and replace node `target` with `edit` applied to it.
fn edit_node(p: &Proof, target: &mut usize, edit: &mut dyn FnMut(&Proof) -> Proof) -> Proof {
    if *target == 0 {
        *target = usize::MAX;
        return edit(p);
    }
    *target -= 1;
    let premises = p.premises().iter().map(|q| edit_node(q, target, edit)).collect();
    Proof::from_parts(p.rule().clone(), premises, p.conclusion().clone())
}

/// One field of one rule instance changed at random.
fn mutate(r: &mut ChaCha8Rng, p: &Proof) -> Proof {
    let node = r.random_range(0..p.size());
    let choice: u32 = r.random_range(0..4);
    let bump = |r: &mut ChaCha8Rng, x: usize| if r.random_bool(0.5) { x + 1 } else { x.saturating_sub(1) };
    edit_node(p, &mut { node }, &mut |q: &Proof| {
        let c = q.conclusion();
        if choice == 0 && c.trees().len() >= 2 {
            let mut trees = c.trees().to_vec();
            let (i, j) = (r.random_range(0..trees.len()), r.random_range(0..trees.len()));
            trees.swap(i, j);
            if let Ok(swapped) = CutSequent::new(trees, c.cuts().to_vec()) {
                return Proof::from_parts(q.rule().clone(), q.premises().to_vec(), swapped);
            }
        }
        let rule = match q.rule().clone() {
            Rule::Axiom { var, negative_first } => Rule::Axiom { var, negative_first: !negative_first },
            Rule::One => Rule::One,
            Rule::Bot { at, mark } => match choice % 2 {
                0 => Rule::Bot { at: bump(r, at), mark },
                _ => Rule::Bot { at, mark: Some(r.random_range(0..c.leaf_count().max(1))) },
            },
            Rule::Par { at } => Rule::Par { at: bump(r, at) },
            Rule::Tensor { left_at, right_at, mut layout } => match choice {
                1 => Rule::Tensor { left_at: bump(r, left_at), right_at, layout },
                2 => Rule::Tensor { left_at, right_at: bump(r, right_at), layout },
                _ => {
                    let (i, j) = (r.random_range(0..layout.len()), r.random_range(0..layout.len()));
                    layout.swap(i, j);
                    Rule::Tensor { left_at, right_at, layout }
                }
            },
            Rule::Cut { left_at, right_at, mut layout } => match choice {
                1 => Rule::Cut { left_at: bump(r, left_at), right_at, layout },
                2 => Rule::Cut { left_at, right_at: bump(r, right_at), layout },
                _ => {
                    let (i, j) = (r.random_range(0..layout.len()), r.random_range(0..layout.len()));
                    layout.swap(i, j);
                    Rule::Cut { left_at, right_at, layout }
                }
            },
        };
        Proof::from_parts(rule, q.premises().to_vec(), c.clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn negate_is_an_involution(a in formula(24)) {
        prop_assert_eq!(a.negate().negate(), a);
    }

    #[test]
    fn negate_flips_every_leaf_in_place(a in formula(24)) {
        let n = a.negate();
        let (xs, ys) = (a.atoms(), n.atoms());
        prop_assert_eq!(xs.len(), ys.len());
        for (x, y) in xs.iter().zip(&ys) {
            prop_assert_eq!(x.dual(), (*y).clone());
            prop_assert_eq!(x.polarity().flip(), y.polarity());
        }
    }

    #[test]
    fn formulas_print_and_parse_back(a in formula(24)) {
        prop_assert_eq!(parse_formula(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn switchings_number_two_to_the_pars(a in formula(10), b in formula(6)) {
        let g = CutSequent::cut_free(vec![a, b]).unwrap();
        prop_assert_eq!(g.enumerate_switchings().count(), 1usize << g.par_count());
    }

    #[test]
    fn cut_pairs_carry_dual_atoms(a in formula(16), c in formula(4)) {
        let g = CutSequent::new(vec![c, a.clone(), a.negate()], vec![(1, 2)]).unwrap();
        let (l, r) = (g.forest().tree_leaves(1), g.forest().tree_leaves(2));
        for (x, y) in l.zip(r) {
            prop_assert_eq!(g.forest().atom(x).dual(), g.forest().atom(y));
            prop_assert_eq!(g.dual_leaf(x), Some(y));
        }
        let wrong = CutSequent::new(vec![a.clone(), a], vec![(0, 1)]);
        prop_assert!(wrong.is_err());
    }

    #[test]
    fn proof_nets_are_invariant_under_tree_order(seed: u64, shuffle: u64) {
        let Some((g, f)) = arbitrary_instance(seed) else { return Ok(()) };
        let mut order: Vec<usize> = (0..g.trees().len()).collect();
        order.shuffle(&mut rng(shuffle));
        let (h, k) = permute_trees(&g, &f, &order);
        prop_assert_eq!(is_proof_net(&f, &g), is_proof_net(&k, &h));
        prop_assert_eq!(check_fast(&f, &g).is_ok(), check_fast(&k, &h).is_ok());
    }

    #[test]
    fn correct_nets_stay_correct_under_tree_order(seed: u64, shuffle: u64) {
        let net = net_from(seed, 10, 1);
        let mut order: Vec<usize> = (0..net.sequent().trees().len()).collect();
        order.shuffle(&mut rng(shuffle));
        let (h, k) = permute_trees(net.sequent(), net.function(), &order);
        prop_assert!(is_proof_net(&k, &h));
        prop_assert!(check_fast(&k, &h).is_ok());
    }

    #[test]
    fn verdicts_are_invariant_under_child_swaps(seed: u64, tree: usize, which: usize) {
        let Some((g, f)) = arbitrary_instance(seed) else { return Ok(()) };
        let tree = tree % g.trees().len();
        let Some((h, k)) = swap_children(&g, &f, tree, which % 8) else { return Ok(()) };
        prop_assert_eq!(is_proof_net(&f, &g), is_proof_net(&k, &h));
        prop_assert_eq!(check_fast(&f, &g).is_ok(), check_fast(&k, &h).is_ok());
    }

    #[test]
    fn switching_graphs_of_nets_are_trees(seed: u64) {
        let net = net_from(seed, 10, 1);
        let (g, f) = (net.sequent(), net.function());
        for s in g.enumerate_switchings() {
            let sg = switching_graph(f, g, &s);
            prop_assert_eq!(sg.edges.len() + 1, sg.vertices);
            prop_assert!(sg.defect().is_none());
        }
    }

    #[test]
    fn atomic_cuts_never_close_a_two_cycle(seed: u64) {
        let net = net_from(seed, 12, 2);
        let g = net.sequent();
        for &(i, j) in g.cuts() {
            if g.trees()[i].children().is_none() {
                let (a, b) = (g.forest().tree_leaves(i).start, g.forest().tree_leaves(j).start);
                prop_assert_ne!(net.function().target(a), Some(b));
                prop_assert_ne!(net.function().target(b), Some(a));
            }
        }
    }

    #[test]
    fn copy_order_does_not_change_the_verdict(seed: u64) {
        let Some((g, f)) = arbitrary_instance(seed) else { return Ok(()) };
        let up = check_fast_with(&f, &g, CopyOrder::Ascending).is_ok();
        prop_assert_eq!(up, check_fast_with(&f, &g, CopyOrder::Descending).is_ok());
        prop_assert_eq!(up, is_proof_net(&f, &g));
        prop_assert_eq!(up, is_correct(&f, &g));
    }

    #[test]
    fn elimination_preserves_nets_and_shrinks(seed: u64, pick: usize) {
        let net = net_from(seed, 10, 2);
        let cuts = net.sequent().cuts().len();
        prop_assume!(cuts > 0);
        let (next, _) = eliminate_cut(&net, pick % cuts).unwrap();
        prop_assert!(check_fast(next.function(), next.sequent()).is_ok());
        prop_assert!(is_proof_net(next.function(), next.sequent()));
        prop_assert!(next.sequent().vertex_count() < net.sequent().vertex_count());
    }

    #[test]
    fn elimination_is_locally_confluent(seed: u64, a: usize, b: usize) {
        let net = net_from(seed, 10, 2);
        let cuts = net.sequent().cuts().len();
        prop_assume!(cuts >= 2);
        let i = a % cuts;
        let j = (i + 1 + b % (cuts - 1)) % cuts;
        let (after_i, _) = eliminate_cut(&net, i).unwrap();
        let (after_j, _) = eliminate_cut(&net, j).unwrap();
        let then_j = cut_index(after_i.sequent(), track_cut(net.sequent(), i, j));
        let then_i = cut_index(after_j.sequent(), track_cut(net.sequent(), j, i));
        let (ij, _) = eliminate_cut(&after_i, then_j).unwrap();
        let (ji, _) = eliminate_cut(&after_j, then_i).unwrap();
        prop_assert_eq!(ij, ji);
    }

    #[test]
    fn turbo_agrees_with_stepwise(seed: u64) {
        let net = net_from(seed, 12, 3);
        let (stepwise, trace) = normalize_stepwise(&net);
        prop_assert_eq!(turbo_normalize_net(&net), stepwise.clone());
        prop_assert!(stepwise.sequent().cuts().is_empty());
        prop_assert!(trace.len() >= net.sequent().cuts().len());
    }

    #[test]
    fn composites_are_nets_and_laws_hold(seed: u64) {
        let mut r = rng(seed);
        let (f, g, h) = composable_triple(&mut r, &Params { leaves: 6, vars: 2, cuts: true });
        let fg = compose_nets(&f, &g).unwrap();
        prop_assert!(check_fast(fg.net().function(), fg.net().sequent()).is_ok());
        prop_assert_eq!(compose_nets(&identity_net(f.source()), &f).unwrap(), f.clone());
        prop_assert_eq!(compose_nets(&f, &identity_net(f.target())).unwrap(), f.clone());
        prop_assert_eq!(
            compose_nets(&fg, &h).unwrap(),
            compose_nets(&f, &compose_nets(&g, &h).unwrap()).unwrap()
        );
        prop_assert_eq!(underlying_goi(&fg), compose_goi(&underlying_goi(&f), &underlying_goi(&g)).unwrap());
    }

    #[test]
    fn goi_composition_is_associative_with_identities(seed: u64, sizes in (0usize..=3, 0usize..=3, 0usize..=3, 0usize..=3), signs: [u8; 4]) {
        let mut r = rng(seed);
        let (s, t) = (signed_set(signs[0], sizes.0), signed_set(signs[1], sizes.1));
        let (u, v) = (signed_set(signs[2], sizes.2), signed_set(signs[3], sizes.3));
        let (f, g, h) = (random_goi(&mut r, &s, &t), random_goi(&mut r, &t, &u), random_goi(&mut r, &u, &v));
        prop_assert_eq!(compose_goi(&identity_goi(&s), &f).unwrap(), f.clone());
        prop_assert_eq!(compose_goi(&f, &identity_goi(&t)).unwrap(), f.clone());
        let left = compose_goi(&compose_goi(&f, &g).unwrap(), &h).unwrap();
        let right = compose_goi(&f, &compose_goi(&g, &h).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn stable_domain_image_holds_for_synchronising_injections(seed: u64, signs: [u8; 3]) {
        let mut r = rng(seed);
        let (s, t, u) = (signed_set(signs[0], 2), signed_set(signs[1], 2), signed_set(signs[2], 2));
        let (f, g) = (random_goi(&mut r, &s, &t), random_goi(&mut r, &t, &u));
        let injective = |m: &GoiMorphism| m.image().len() == m.len();
        if injective(&f) && injective(&g) && synchronises(&f, &g).unwrap() {
            prop_assert!(stable_domain_image(&f, &g).unwrap());
        }
    }

    #[test]
    fn lamination_sizes_and_identity_laws(seed: u64, sizes in (0usize..=3, 0usize..=3), signs: [u8; 2]) {
        let mut r = rng(seed);
        let (s, t) = (signed_set(signs[0], sizes.0), signed_set(signs[1], sizes.1));
        prop_assert_eq!(identity_lam(&s).len(), 1usize << s.len());
        let f = random_goi(&mut r, &s, &t);
        let e = embed(&f).unwrap();
        prop_assert_eq!(e.len(), 1usize << f.len());
        let members: BTreeSet<GoiMorphism> = (0..3).map(|_| random_goi(&mut r, &s, &t)).collect();
        let l = LaminatedMorphism::new(s.clone(), t.clone(), members).unwrap();
        prop_assert_eq!(compose_lam(&identity_lam(&s), &l).unwrap(), l.clone());
        prop_assert_eq!(compose_lam(&l, &identity_lam(&t)).unwrap(), l);
    }

    #[test]
    fn sequentialization_round_trips(seed: u64, cuts in 0usize..3) {
        let net = net_from(seed, 14, cuts);
        let proof = sequentialize(&net).unwrap();
        prop_assert!(check_proof(&proof).is_ok());
        prop_assert_eq!(translate(&proof).unwrap(), net);
    }

    #[test]
    fn translations_pass_the_checker_and_target_leaves(seed: u64) {
        let mut r = rng(seed);
        let proof = random_proof(&mut r, &Params { leaves: 14, vars: 3, cuts: true });
        let net = translate(&proof).unwrap();
        prop_assert!(check_fast(net.function(), net.sequent()).is_ok());
        let g = net.sequent();
        for (s, t) in net.function().edges() {
            prop_assert_eq!(g.polarity(s), Polarity::Negative);
            prop_assert_eq!(g.polarity(t), Polarity::Positive);
        }
    }

    #[test]
    fn mutated_proofs_are_rejected_or_still_translate(seed: u64, m: u64) {
        let mut r = rng(seed);
        let proof = random_proof(&mut r, &Params { leaves: 10, vars: 2, cuts: true });
        let bad = mutate(&mut rng(m), &proof);
        if check_proof(&bad).is_ok() {
            let net = translate(&bad).unwrap();
            prop_assert!(check_fast(net.function(), net.sequent()).is_ok());
            prop_assert_eq!(translate(&sequentialize(&net).unwrap()).unwrap(), net);
        }
    }

    #[test]
    fn json_round_trips(seed: u64) {
        let mut r = rng(seed);
        let proof = random_proof(&mut r, &Params { leaves: 10, vars: 2, cuts: true });
        prop_assert_eq!(&parse_proof(&proof_to_json(&proof)).unwrap(), &proof);
        let net = translate(&proof).unwrap();
        let text = net_to_json(net.sequent(), net.function());
        let (g, f) = parse_net(&text).unwrap();
        prop_assert_eq!(net_to_json(&g, &f), text);
    }
}

#[test]
fn mutations_are_usually_caught() {
    let mut rejected = 0;
    for seed in 0..500 {
        let proof = random_proof(&mut rng(seed), &Params { leaves: 10, vars: 2, cuts: true });
        if check_proof(&mutate(&mut rng(seed + 10_000), &proof)).is_err() {
            rejected += 1;
        }
    }
    assert!(rejected > 250, "only {rejected} of 500 mutations rejected");
}
