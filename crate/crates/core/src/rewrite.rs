//! Cut elimination: single steps, stepwise normalisation, and turbo normalisation.
//!
//! A cut is identified by its position in the sorted cut list of the sequent.

use thiserror::Error;

use crate::net::{LeafFunction, ProofNet};
use crate::syntax::{CutSequent, Formula, Polarity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CutCase {
    /// Both trees are single leaves; they are deleted and edges are rerouted.
    Atom,
    /// The pair splits into two cut pairs on the immediate subformulas.
    Compound,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EliminationStep {
    pub cut: usize,
    /// Tree indices of the pair before the step.
    pub pair: (usize, usize),
    pub case: CutCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("cut {cut} does not exist; the sequent has {count} cuts")]
    NoSuchCut { cut: usize, count: usize },
    #[error("edge chain from leaf {leaf} runs in a cycle through cut pairs")]
    CyclicChain { leaf: usize },
}

pub fn eliminate_cut(net: &ProofNet, cut: usize) -> Result<(ProofNet, EliminationStep), RewriteError> {
    let g = net.sequent();
    let f = net.function();
    let &(i, j) = g.cuts().get(cut).ok_or(RewriteError::NoSuchCut { cut, count: g.cuts().len() })?;
    let forest = g.forest();
    match g.trees()[i].children() {
        None => {
            let (li, lj) = (forest.leaf_starts[i], forest.leaf_starts[j]);
            let (pos, neg) = if g.polarity(li) == Polarity::Positive { (li, lj) } else { (lj, li) };
            let through = f.target(neg).expect("negative leaf has an edge");
            debug_assert_ne!(through, pos, "atomic cut closes a cycle");
            let keep = |l: usize| l != pos && l != neg;
            let index = reindex(g.leaf_count(), keep);
            let mut targets = vec![None; g.leaf_count() - 2];
            for (s, t) in f.edges() {
                if s == neg {
                    continue;
                }
                let t = if t == pos { through } else { t };
                targets[index[s]] = Some(index[t]);
            }
            let trees: Vec<Formula> = g
                .trees()
                .iter()
                .enumerate()
                .filter(|&(t, _)| t != i && t != j)
                .map(|(_, t)| t.clone())
                .collect();
            let shift = |t: usize| t - usize::from(t > i) - usize::from(t > j);
            let cuts = g.cuts().iter().filter(|&&c| c != (i, j)).map(|&(a, b)| (shift(a), shift(b))).collect();
            let sequent = CutSequent::new(trees, cuts).expect("deleting a cut pair keeps a valid sequent");
            let function = LeafFunction::from_targets_unchecked(targets);
            Ok((ProofNet::new_unchecked(sequent, function), EliminationStep { cut, pair: (i, j), case: CutCase::Atom }))
        }
        Some(_) => {
            let mut trees = Vec::with_capacity(g.trees().len() + 2);
            for (t, tree) in g.trees().iter().enumerate() {
                match tree.children() {
                    Some((a, b)) if t == i || t == j => {
                        trees.push(a.clone());
                        trees.push(b.clone());
                    }
                    _ => trees.push(tree.clone()),
                }
            }
            let shift = |t: usize| t + usize::from(t > i) + usize::from(t > j);
            let mut cuts: Vec<(usize, usize)> =
                g.cuts().iter().filter(|&&c| c != (i, j)).map(|&(a, b)| (shift(a), shift(b))).collect();
            cuts.push((shift(i), shift(j)));
            cuts.push((shift(i) + 1, shift(j) + 1));
            let sequent = CutSequent::new(trees, cuts).expect("subformulas of a cut pair are complementary");
            let function = net.function().clone();
            Ok((
                ProofNet::new_unchecked(sequent, function),
                EliminationStep { cut, pair: (i, j), case: CutCase::Compound },
            ))
        }
    }
}

/// The tree pair of cut `other` after eliminating cut `eliminated` (which must differ).
pub fn track_cut(g: &CutSequent, eliminated: usize, other: usize) -> (usize, usize) {
    let (i, j) = g.cuts()[eliminated];
    let (a, b) = g.cuts()[other];
    let atom = g.trees()[i].children().is_none();
    let shift = |t: usize| {
        if atom {
            t - usize::from(t > i) - usize::from(t > j)
        } else {
            t + usize::from(t > i) + usize::from(t > j)
        }
    };
    (shift(a), shift(b))
}

fn reindex(n: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    let mut next = 0;
    (0..n)
        .map(|l| {
            let here = next;
            if keep(l) {
                next += 1;
            }
            here
        })
        .collect()
}

/// Eliminate the lowest cut until none remain.
pub fn normalize_stepwise(net: &ProofNet) -> (ProofNet, Vec<EliminationStep>) {
    let mut current = net.clone();
    let mut trace = Vec::new();
    while !current.sequent().cuts().is_empty() {
        let (next, step) = eliminate_cut(&current, 0).expect("cut 0 exists");
        trace.push(step);
        current = next;
    }
    (current, trace)
}

/// Replace each maximal chain through cut pairs by a single edge and drop the cut pairs.
pub fn turbo_normalize(f: &LeafFunction, g: &CutSequent) -> Result<(LeafFunction, CutSequent), RewriteError> {
    let n = g.leaf_count();
    let in_cut: Vec<bool> = (0..n).map(|l| g.leaf_in_cut(l)).collect();

    // Chains form a functional graph on negative leaves: follow f, then hop
    // across the cut when the target lies in a cut pair.
    const UNSEEN: usize = usize::MAX;
    const ON_PATH: usize = usize::MAX - 1;
    let mut exit = vec![UNSEEN; n];
    let mut path = Vec::new();
    for start in 0..n {
        if g.polarity(start) != Polarity::Negative || exit[start] != UNSEEN {
            continue;
        }
        let mut cur = start;
        let end = loop {
            match exit[cur] {
                ON_PATH => return Err(RewriteError::CyclicChain { leaf: cur }),
                UNSEEN => {}
                done => break done,
            }
            exit[cur] = ON_PATH;
            path.push(cur);
            let t = f.target(cur).expect("negative leaf has an edge");
            if !in_cut[t] {
                break t;
            }
            cur = g.dual_leaf(t).expect("leaf lies in a cut pair");
        };
        for l in path.drain(..) {
            exit[l] = end;
        }
    }

    let index = reindex(n, |l| !in_cut[l]);
    let survivors = in_cut.iter().filter(|c| !**c).count();
    let mut targets = vec![None; survivors];
    for l in (0..n).filter(|&l| !in_cut[l] && g.polarity(l) == Polarity::Negative) {
        targets[index[l]] = Some(index[exit[l]]);
    }
    Ok((LeafFunction::from_targets_unchecked(targets), g.without_cuts()))
}

/// Turbo normalisation of a proof net; the result is a proof net.
pub fn turbo_normalize_net(net: &ProofNet) -> ProofNet {
    let (f, g) = turbo_normalize(net.function(), net.sequent()).expect("proof nets have no cyclic chains");
    ProofNet::new_unchecked(g, f)
}
