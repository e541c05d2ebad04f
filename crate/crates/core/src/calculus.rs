//! Sequent calculus with marked `⊥`-rules, proof checking, translation to
//! proof nets, and sequentialisation back to proofs.
//!
//! Sequents are ordered, so every rule names the positions it acts on:
//!
//! * `ax`: conclusion `[P, P^]` or `[P^, P]`.
//! * `one`: conclusion `[1]`.
//! * `bot { at, mark }`: inserts `⊥` at tree position `at`. `mark` is a
//!   positive leaf of the conclusion; it may be omitted when the conclusion
//!   has exactly one positive leaf.
//! * `par { at }`: joins trees `at` and `at + 1` into `A ⅋ B` at position `at`.
//! * `tensor { left_at, right_at, layout }`: joins tree `left_at` of the left
//!   premise with tree `right_at` of the right premise. `layout[k]` says where
//!   conclusion tree `k` comes from: a left tree, a right tree, or the new
//!   principal formula.
//! * `cut { left_at, right_at, layout }`: like `tensor`, but the two trees
//!   stay separate, both listed in `layout`, and become a cut pair.
//!
//! Cut pairs of premises carry over to the conclusion.

use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::net::{LeafFunction, ProofNet, Rejection};
use crate::syntax::{Atom, CutSequent, Formula, Polarity};

/// Source of a conclusion tree in a binary rule.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    Left(usize),
    Right(usize),
    Principal,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rule {
    Axiom { var: String, negative_first: bool },
    One,
    Bot { at: usize, mark: Option<usize> },
    Par { at: usize },
    Tensor { left_at: usize, right_at: usize, layout: Vec<Origin> },
    Cut { left_at: usize, right_at: usize, layout: Vec<Origin> },
}

impl Rule {
    pub fn name(&self) -> &'static str {
        match self {
            Rule::Axiom { .. } => "ax",
            Rule::One => "one",
            Rule::Bot { .. } => "bot",
            Rule::Par { .. } => "par",
            Rule::Tensor { .. } => "tensor",
            Rule::Cut { .. } => "cut",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Rule::Axiom { .. } | Rule::One => 0,
            Rule::Bot { .. } | Rule::Par { .. } => 1,
            Rule::Tensor { .. } | Rule::Cut { .. } => 2,
        }
    }
}

/// A rule instance that does not match its schema.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub struct RuleViolation {
    /// Premise indices from the root to the offending node.
    pub path: Vec<usize>,
    pub rule: &'static str,
    pub reason: String,
}

impl fmt::Display for RuleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} rule at {:?}: {}", self.rule, self.path, self.reason)
    }
}

impl RuleViolation {
    fn at(rule: &Rule, reason: impl Into<String>) -> RuleViolation {
        RuleViolation { path: Vec::new(), rule: rule.name(), reason: reason.into() }
    }

    fn under(mut self, k: usize) -> RuleViolation {
        self.path.insert(0, k);
        self
    }
}

/// A derivation; every node stores its conclusion.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Proof {
    rule: Rule,
    premises: Vec<Proof>,
    conclusion: CutSequent,
}

impl Proof {
    /// Apply `rule` to `premises`, computing the conclusion.
    pub fn new(rule: Rule, premises: Vec<Proof>) -> Result<Proof, RuleViolation> {
        let conclusion = {
            let concl: Vec<&CutSequent> = premises.iter().map(|p| &p.conclusion).collect();
            conclude(&rule, &concl)?
        };
        Ok(Proof { rule, premises, conclusion })
    }

    /// Assemble a node with a claimed conclusion; [`check_proof`] validates it.
    pub fn from_parts(rule: Rule, premises: Vec<Proof>, conclusion: CutSequent) -> Proof {
        Proof { rule, premises, conclusion }
    }

    pub fn axiom(var: &str, negative_first: bool) -> Proof {
        Proof::new(Rule::Axiom { var: var.to_string(), negative_first }, Vec::new()).expect("axiom")
    }

    pub fn one() -> Proof {
        Proof::new(Rule::One, Vec::new()).expect("one")
    }

    pub fn bot(premise: Proof, at: usize, mark: Option<usize>) -> Result<Proof, RuleViolation> {
        Proof::new(Rule::Bot { at, mark }, vec![premise])
    }

    pub fn par(premise: Proof, at: usize) -> Result<Proof, RuleViolation> {
        Proof::new(Rule::Par { at }, vec![premise])
    }

    pub fn tensor(
        left: Proof,
        right: Proof,
        left_at: usize,
        right_at: usize,
        layout: Vec<Origin>,
    ) -> Result<Proof, RuleViolation> {
        Proof::new(Rule::Tensor { left_at, right_at, layout }, vec![left, right])
    }

    pub fn cut(
        left: Proof,
        right: Proof,
        left_at: usize,
        right_at: usize,
        layout: Vec<Origin>,
    ) -> Result<Proof, RuleViolation> {
        Proof::new(Rule::Cut { left_at, right_at, layout }, vec![left, right])
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn premises(&self) -> &[Proof] {
        &self.premises
    }

    pub fn conclusion(&self) -> &CutSequent {
        &self.conclusion
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Proof::size).sum::<usize>()
    }
}

/// `[Left(0..), Principal in place of left_at, Left(..), Right(all but right_at)]`.
pub fn tensor_layout(left_len: usize, left_at: usize, right_len: usize, right_at: usize) -> Vec<Origin> {
    let mut layout: Vec<Origin> =
        (0..left_len).map(|i| if i == left_at { Origin::Principal } else { Origin::Left(i) }).collect();
    layout.extend((0..right_len).filter(|&j| j != right_at).map(Origin::Right));
    layout
}

/// All left trees, then all right trees.
pub fn cut_layout(left_len: usize, right_len: usize) -> Vec<Origin> {
    (0..left_len).map(Origin::Left).chain((0..right_len).map(Origin::Right)).collect()
}

fn conclude(rule: &Rule, premises: &[&CutSequent]) -> Result<CutSequent, RuleViolation> {
    let fail = |reason: String| RuleViolation::at(rule, reason);
    if premises.len() != rule.arity() {
        return Err(fail(format!("expected {} premises, found {}", rule.arity(), premises.len())));
    }
    let build = |trees: Vec<Formula>, cuts: Vec<(usize, usize)>| {
        CutSequent::new(trees, cuts).map_err(|e| RuleViolation::at(rule, e.to_string()))
    };
    match rule {
        Rule::Axiom { var, negative_first } => {
            if var.is_empty() || !var.starts_with(|c: char| c.is_ascii_alphabetic()) || var == "bot" {
                return Err(fail(format!("'{var}' is not a variable name")));
            }
            let (p, q) = (Formula::var(var), Formula::dual_var(var));
            build(if *negative_first { vec![q, p] } else { vec![p, q] }, Vec::new())
        }
        Rule::One => build(vec![Formula::one()], Vec::new()),
        Rule::Bot { at, mark } => {
            let g = premises[0];
            if *at > g.trees().len() {
                return Err(fail(format!("position {at} is past the end of {} trees", g.trees().len())));
            }
            let mut trees = g.trees().to_vec();
            trees.insert(*at, Formula::bot());
            let shift = |t: usize| if t >= *at { t + 1 } else { t };
            let cuts = g.cuts().iter().map(|&(a, b)| (shift(a), shift(b))).collect();
            let c = build(trees, cuts)?;
            match mark {
                Some(m) if *m >= c.leaf_count() => Err(fail(format!("mark {m} is not a leaf"))),
                Some(m) if c.polarity(*m) != Polarity::Positive => {
                    Err(fail(format!("mark {m} is not a positive leaf")))
                }
                None if (0..c.leaf_count()).filter(|&l| c.polarity(l) == Polarity::Positive).count() != 1 => {
                    Err(fail("mark omitted but the conclusion does not have exactly one positive leaf".into()))
                }
                _ => Ok(c),
            }
        }
        Rule::Par { at } => {
            let g = premises[0];
            if at + 1 >= g.trees().len() {
                return Err(fail(format!("positions {at}, {} need two trees", at + 1)));
            }
            if g.in_cut(*at) || g.in_cut(at + 1) {
                return Err(fail("a par cannot take a formula of a cut pair".into()));
            }
            let mut trees = g.trees().to_vec();
            let b = trees.remove(at + 1);
            let a = std::mem::replace(&mut trees[*at], Formula::one());
            trees[*at] = Formula::par(a, b);
            let shift = |t: usize| if t > at + 1 { t - 1 } else { t };
            let cuts = g.cuts().iter().map(|&(a, b)| (shift(a), shift(b))).collect();
            build(trees, cuts)
        }
        Rule::Tensor { left_at, right_at, layout } | Rule::Cut { left_at, right_at, layout } => {
            let is_cut = matches!(rule, Rule::Cut { .. });
            let (l, r) = (premises[0], premises[1]);
            if *left_at >= l.trees().len() || *right_at >= r.trees().len() {
                return Err(fail("principal position out of range".into()));
            }
            if l.in_cut(*left_at) || r.in_cut(*right_at) {
                return Err(fail("principal formula belongs to a cut pair".into()));
            }
            let (a, b) = (&l.trees()[*left_at], &r.trees()[*right_at]);
            if is_cut && *b != a.negate() {
                return Err(fail(format!("cut formulas {a} and {b} are not complementary")));
            }
            let mut left_pos = vec![usize::MAX; l.trees().len()];
            let mut right_pos = vec![usize::MAX; r.trees().len()];
            let mut principal = None;
            for (k, o) in layout.iter().enumerate() {
                let slot = match *o {
                    Origin::Left(i) if i < left_pos.len() => &mut left_pos[i],
                    Origin::Right(j) if j < right_pos.len() => &mut right_pos[j],
                    Origin::Principal if !is_cut => {
                        if principal.replace(k).is_some() {
                            return Err(fail("layout names the principal formula twice".into()));
                        }
                        continue;
                    }
                    _ => return Err(fail(format!("layout entry {k} is invalid"))),
                };
                if *slot != usize::MAX {
                    return Err(fail(format!("layout entry {k} repeats a premise formula")));
                }
                *slot = k;
            }
            let expect_used = |pos: &[usize], skip: usize| {
                pos.iter().enumerate().all(|(i, &k)| (k == usize::MAX) == (!is_cut && i == skip))
            };
            if !expect_used(&left_pos, *left_at) || !expect_used(&right_pos, *right_at) {
                return Err(fail("layout does not place every side formula exactly once".into()));
            }
            if !is_cut && principal.is_none() {
                return Err(fail("layout omits the principal formula".into()));
            }
            let trees: Vec<Formula> = layout
                .iter()
                .map(|o| match *o {
                    Origin::Left(i) => l.trees()[i].clone(),
                    Origin::Right(j) => r.trees()[j].clone(),
                    Origin::Principal => Formula::tensor(a.clone(), b.clone()),
                })
                .collect();
            let mut cuts: Vec<(usize, usize)> = l
                .cuts()
                .iter()
                .map(|&(x, y)| (left_pos[x], left_pos[y]))
                .chain(r.cuts().iter().map(|&(x, y)| (right_pos[x], right_pos[y])))
                .collect();
            if is_cut {
                cuts.push((left_pos[*left_at], right_pos[*right_at]));
            }
            build(trees, cuts)
        }
    }
}

/// Validate every node against its rule schema and its stored conclusion.
pub fn check_proof(p: &Proof) -> Result<(), RuleViolation> {
    for (k, q) in p.premises.iter().enumerate() {
        check_proof(q).map_err(|v| v.under(k))?;
    }
    let premises: Vec<&CutSequent> = p.premises.iter().map(|q| &q.conclusion).collect();
    let c = conclude(&p.rule, &premises)?;
    if c != p.conclusion {
        return Err(RuleViolation::at(&p.rule, format!("stated conclusion {} differs from derived {c}", p.conclusion)));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("invalid proof: {0}")]
    Invalid(#[from] RuleViolation),
    #[error("translation is not a proof net: {0}")]
    NotANet(#[from] Rejection),
}

/// The proof net of a checked proof: one edge per axiom and per `⊥`-rule.
pub fn translate(p: &Proof) -> Result<ProofNet, TranslateError> {
    check_proof(p)?;
    let targets = leaf_targets(p);
    let f = LeafFunction::from_targets(&p.conclusion, targets).expect("translation yields a leaf function");
    Ok(ProofNet::new(p.conclusion.clone(), f)?)
}

/// Per conclusion leaf, the target of its edge.
fn leaf_targets(p: &Proof) -> Vec<Option<usize>> {
    let c = &p.conclusion;
    match &p.rule {
        Rule::Axiom { negative_first, .. } => {
            if *negative_first {
                vec![Some(1), None]
            } else {
                vec![None, Some(0)]
            }
        }
        Rule::One => vec![None],
        Rule::Bot { at, mark } => {
            let below = leaf_targets(&p.premises[0]);
            let new = c.forest().leaf_starts[*at];
            let lift = |l: usize| if l >= new { l + 1 } else { l };
            let mut out: Vec<Option<usize>> = below.into_iter().map(|t| t.map(lift)).collect();
            let target = mark.unwrap_or_else(|| {
                (0..c.leaf_count()).find(|&l| c.polarity(l) == Polarity::Positive).expect("one positive leaf")
            });
            out.insert(new, Some(target));
            out
        }
        Rule::Par { .. } => leaf_targets(&p.premises[0]),
        Rule::Tensor { left_at, right_at, layout } | Rule::Cut { left_at, right_at, layout } => {
            let (l, r) = (&p.premises[0].conclusion, &p.premises[1].conclusion);
            let mut lmap = vec![0; l.leaf_count()];
            let mut rmap = vec![0; r.leaf_count()];
            let starts = &c.forest().leaf_starts;
            for (k, o) in layout.iter().enumerate() {
                let base = starts[k];
                match *o {
                    Origin::Left(i) => {
                        for (n, x) in l.forest().tree_leaves(i).enumerate() {
                            lmap[x] = base + n;
                        }
                    }
                    Origin::Right(j) => {
                        for (n, x) in r.forest().tree_leaves(j).enumerate() {
                            rmap[x] = base + n;
                        }
                    }
                    Origin::Principal => {
                        let left = l.forest().tree_leaves(*left_at);
                        let width = left.len();
                        for (n, x) in left.enumerate() {
                            lmap[x] = base + n;
                        }
                        for (n, x) in r.forest().tree_leaves(*right_at).enumerate() {
                            rmap[x] = base + width + n;
                        }
                    }
                }
            }
            let mut out = vec![None; c.leaf_count()];
            for (x, t) in leaf_targets(&p.premises[0]).into_iter().enumerate() {
                out[lmap[x]] = t.map(|t| lmap[t]);
            }
            for (x, t) in leaf_targets(&p.premises[1]).into_iter().enumerate() {
                out[rmap[x]] = t.map(|t| rmap[t]);
            }
            out
        }
    }
}

/// Whether some leaf is positive; every provable sequent has one.
pub fn has_positive_atom(s: &CutSequent) -> bool {
    (0..s.leaf_count()).any(|l| s.polarity(l) == Polarity::Positive)
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SequentializeError {
    #[error("not a proof net: {0}")]
    NotANet(#[from] Rejection),
}

/// A proof translating to `net`, choosing the leftmost applicable root at every stage.
pub fn sequentialize(net: &ProofNet) -> Result<Proof, SequentializeError> {
    crate::checker::check_fast(net.function(), net.sequent())?;
    Ok(sequentialize_sub(net.sequent(), net.function().targets()))
}

fn sequentialize_sub(g: &CutSequent, f: &[Option<usize>]) -> Proof {
    let trees = g.trees();
    // Terminal par.
    if let Some(k) = (0..trees.len()).find(|&k| !g.in_cut(k) && matches!(trees[k], Formula::Par(..))) {
        let (a, b) = trees[k].children().expect("par");
        let mut ts = trees.to_vec();
        ts.splice(k..=k, [a.clone(), b.clone()]);
        let shift = |t: usize| if t > k { t + 1 } else { t };
        let premise = CutSequent::new(ts, g.cuts().iter().map(|&(x, y)| (shift(x), shift(y))).collect())
            .expect("splitting a par keeps the sequent valid");
        return Proof::par(sequentialize_sub(&premise, f), k).expect("par rule");
    }
    // Terminal ⊥.
    if let Some(k) = (0..trees.len()).find(|&k| !g.in_cut(k) && trees[k] == Formula::bot()) {
        let l = g.forest().leaf_starts[k];
        let mark = f[l].expect("⊥ has an edge");
        let mut ts = trees.to_vec();
        ts.remove(k);
        let shift = |t: usize| if t > k { t - 1 } else { t };
        let premise = CutSequent::new(ts, g.cuts().iter().map(|&(x, y)| (shift(x), shift(y))).collect())
            .expect("a proof net does not consist of a lone ⊥ and cut pairs");
        let down = |x: usize| if x > l { x - 1 } else { x };
        let sub: Vec<Option<usize>> =
            f.iter().enumerate().filter(|&(x, _)| x != l).map(|(_, t)| t.map(down)).collect();
        return Proof::bot(sequentialize_sub(&premise, &sub), k, Some(mark)).expect("bot rule");
    }
    if g.cuts().is_empty() {
        if trees.len() == 1 && trees[0] == Formula::one() {
            return Proof::one();
        }
        if trees.len() == 2 {
            if let (Some(Atom::Var(p)), Some(Atom::DualVar(_))) = (trees[0].as_atom(), trees[1].as_atom()) {
                return Proof::axiom(p, false);
            }
            if let (Some(Atom::DualVar(p)), Some(Atom::Var(_))) = (trees[0].as_atom(), trees[1].as_atom()) {
                return Proof::axiom(p, true);
            }
        }
    }
    split(g, f)
}

/// Split on the leftmost terminal tensor or cut whose removal disconnects the net.
fn split(g: &CutSequent, f: &[Option<usize>]) -> Proof {
    let forest = g.forest();
    let nv = forest.vertex_count();
    let base_edges = || {
        let mut edges = Vec::with_capacity(2 * nv);
        for (id, v) in forest.vertices.iter().enumerate() {
            if let Some((a, b)) = v.children {
                edges.push((id, a));
                edges.push((id, b));
            }
        }
        for (s, t) in f.iter().enumerate() {
            if let Some(t) = t {
                edges.push((forest.leaves[s].vertex, forest.leaves[*t].vertex));
            }
        }
        edges
    };
    let all_edges = base_edges();
    let cut_edges: Vec<(usize, usize)> =
        g.cuts().iter().map(|&(i, j)| (forest.roots[i], forest.roots[j])).collect();

    for k in 0..g.trees().len() {
        let root = forest.roots[k];
        let (left_root, right_root, skip_cut) = match g.cut_partner(k) {
            Some(j) if j > k => (root, forest.roots[j], Some((root, forest.roots[j]))),
            Some(_) => continue,
            None => match forest.vertices[root].children {
                Some((a, b)) => (a, b, None),
                None => continue,
            },
        };
        let mut uf: UnionFind<usize> = UnionFind::new(nv);
        for &(u, v) in all_edges.iter().chain(cut_edges.iter()) {
            if skip_cut.is_none() && (u == root || v == root) {
                continue;
            }
            if Some((u, v)) == skip_cut {
                continue;
            }
            uf.union(u, v);
        }
        if uf.equiv(left_root, right_root) {
            continue;
        }
        return build_split(g, f, k, skip_cut.is_some(), &mut uf, left_root);
    }
    unreachable!("a correct net without terminal pars or ⊥ has a splitting tensor or cut")
}

fn build_split(
    g: &CutSequent,
    f: &[Option<usize>],
    k: usize,
    is_cut: bool,
    uf: &mut UnionFind<usize>,
    left_root: usize,
) -> Proof {
    let forest = g.forest();
    let trees = g.trees();
    let left_side = uf.find_mut(left_root);
    // Side of every tree (the principal tensor's tree is split between both).
    let mut side = vec![false; trees.len()];
    for (t, s) in side.iter_mut().enumerate() {
        *s = uf.find_mut(forest.roots[t]) == left_side;
    }
    let partner = if is_cut { g.cut_partner(k) } else { None };

    let mut left_trees = Vec::new();
    let mut right_trees = Vec::new();
    let mut left_leaves = Vec::new();
    let mut right_leaves = Vec::new();
    let mut layout = Vec::with_capacity(trees.len());
    let (mut left_at, mut right_at) = (0, 0);
    for (t, tree) in trees.iter().enumerate() {
        if t == k && !is_cut {
            let (a, b) = tree.children().expect("tensor");
            let range = forest.tree_leaves(t);
            let mid = range.start + a.leaf_count();
            left_at = left_trees.len();
            left_trees.push((t, a.clone()));
            left_leaves.extend(range.start..mid);
            right_at = right_trees.len();
            right_trees.push((t, b.clone()));
            right_leaves.extend(mid..range.end);
            layout.push(Origin::Principal);
        } else if t == k || (side[t] && Some(t) != partner) {
            if t == k {
                left_at = left_trees.len();
            }
            layout.push(Origin::Left(left_trees.len()));
            left_trees.push((t, tree.clone()));
            left_leaves.extend(forest.tree_leaves(t));
        } else {
            if Some(t) == partner {
                right_at = right_trees.len();
            }
            layout.push(Origin::Right(right_trees.len()));
            right_trees.push((t, tree.clone()));
            right_leaves.extend(forest.tree_leaves(t));
        }
    }

    let premise = |chosen: &[(usize, Formula)], leaves: &[usize]| {
        let position = |t: usize| chosen.iter().position(|(u, _)| *u == t).expect("cut partner on the same side");
        let cuts: Vec<(usize, usize)> = g
            .cuts()
            .iter()
            .filter(|&&(i, _)| Some(i) != Some(k) || !is_cut)
            .filter(|&&(i, _)| chosen.iter().any(|(u, _)| *u == i))
            .map(|&(i, j)| (position(i), position(j)))
            .collect();
        let seq = CutSequent::new(chosen.iter().map(|(_, f)| f.clone()).collect(), cuts)
            .expect("each side of a split is a valid sequent");
        let mut index = vec![usize::MAX; f.len()];
        for (n, &x) in leaves.iter().enumerate() {
            index[x] = n;
        }
        let sub: Vec<Option<usize>> = leaves.iter().map(|&x| f[x].map(|t| index[t])).collect();
        debug_assert!(sub.iter().flatten().all(|&t| t != usize::MAX), "edge crosses a split");
        sequentialize_sub(&seq, &sub)
    };
    let left = premise(&left_trees, &left_leaves);
    let right = premise(&right_trees, &right_leaves);
    if is_cut {
        Proof::cut(left, right, left_at, right_at, layout).expect("cut rule")
    } else {
        Proof::tensor(left, right, left_at, right_at, layout).expect("tensor rule")
    }
}
