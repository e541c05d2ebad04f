//! Shared test support: exhaustive enumeration of small cut sequents and leaf
//! functions, and independent reference checks.
#![allow(dead_code)]

use std::collections::HashMap;

use mllnets::net::LeafFunction;
use mllnets::{Atom, CutSequent, Formula, Polarity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Lit {
    P,
    Dual,
    One,
    Bot,
}

impl Lit {
    pub const ALL: [Lit; 4] = [Lit::P, Lit::Dual, Lit::One, Lit::Bot];

    fn dual(self) -> Lit {
        match self {
            Lit::P => Lit::Dual,
            Lit::Dual => Lit::P,
            Lit::One => Lit::Bot,
            Lit::Bot => Lit::One,
        }
    }
}

/// A tree identified by size and index in the canonical table of that size.
pub type Key = (u8, u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Leaf(Lit),
    /// `tensor`, then children with `a <= b`.
    Bin(bool, Key, Key),
}

/// Leaf statistics of a tree.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub p: u8,
    pub dual: u8,
    pub one: u8,
    pub bot: u8,
    pub pars: u8,
}

impl Stats {
    fn add(self, o: Stats) -> Stats {
        Stats {
            p: self.p + o.p,
            dual: self.dual + o.dual,
            one: self.one + o.one,
            bot: self.bot + o.bot,
            pars: self.pars + o.pars,
        }
    }
}

/// Binary trees over {P, P^, 1, ⊥} up to swapping children, one canonical
/// representative per class.
pub struct Table {
    pub nodes: Vec<Vec<Node>>,
    pub stats: Vec<Vec<Stats>>,
}

impl Table {
    pub fn new(max: usize) -> Table {
        let mut nodes: Vec<Vec<Node>> = vec![Vec::new(); max + 1];
        let mut stats: Vec<Vec<Stats>> = vec![Vec::new(); max + 1];
        if max >= 1 {
            for l in Lit::ALL {
                nodes[1].push(Node::Leaf(l));
                stats[1].push(match l {
                    Lit::P => Stats { p: 1, ..Stats::default() },
                    Lit::Dual => Stats { dual: 1, ..Stats::default() },
                    Lit::One => Stats { one: 1, ..Stats::default() },
                    Lit::Bot => Stats { bot: 1, ..Stats::default() },
                });
            }
        }
        for k in 2..=max {
            let mut ns = Vec::new();
            let mut ss = Vec::new();
            for sa in 1..=k / 2 {
                let sb = k - sa;
                for ia in 0..nodes[sa].len() {
                    let start = if sa == sb { ia } else { 0 };
                    for ib in start..nodes[sb].len() {
                        let s = stats[sa][ia].add(stats[sb][ib]);
                        for tensor in [true, false] {
                            ns.push(Node::Bin(tensor, (sa as u8, ia as u32), (sb as u8, ib as u32)));
                            ss.push(Stats { pars: s.pars + u8::from(!tensor), ..s });
                        }
                    }
                }
            }
            nodes[k] = ns;
            stats[k] = ss;
        }
        Table { nodes, stats }
    }

    pub fn node(&self, k: Key) -> Node {
        self.nodes[k.0 as usize][k.1 as usize]
    }

    pub fn stats(&self, k: Key) -> Stats {
        self.stats[k.0 as usize][k.1 as usize]
    }

    pub fn formula(&self, k: Key) -> Formula {
        match self.node(k) {
            Node::Leaf(Lit::P) => Formula::var("P"),
            Node::Leaf(Lit::Dual) => Formula::dual_var("P"),
            Node::Leaf(Lit::One) => Formula::one(),
            Node::Leaf(Lit::Bot) => Formula::bot(),
            Node::Bin(t, a, b) => {
                let (a, b) = (self.formula(a), self.formula(b));
                if t { Formula::tensor(a, b) } else { Formula::par(a, b) }
            }
        }
    }

    /// Canonical key of the negation, for trees of at most `max` leaves.
    pub fn negations(&self, max: usize) -> HashMap<Key, Key> {
        let mut index: HashMap<Node, Key> = HashMap::new();
        for k in 1..=max {
            for (i, n) in self.nodes[k].iter().enumerate() {
                index.insert(*n, (k as u8, i as u32));
            }
        }
        let mut neg: HashMap<Key, Key> = HashMap::new();
        for k in 1..=max {
            for i in 0..self.nodes[k].len() {
                let key = (k as u8, i as u32);
                let n = match self.nodes[k][i] {
                    Node::Leaf(l) => Node::Leaf(l.dual()),
                    Node::Bin(t, a, b) => {
                        let (na, nb) = (neg[&a], neg[&b]);
                        Node::Bin(!t, na.min(nb), na.max(nb))
                    }
                };
                neg.insert(key, index[&n]);
            }
        }
        neg
    }
}

/// A canonical cut sequent: free trees and cut pairs, each a non-decreasing key sequence.
#[derive(Clone, Debug)]
pub struct Shape {
    pub free: Vec<Key>,
    /// A free tree too large for the table, streamed as `(tensor, a, b)`.
    pub big: Option<(bool, Key, Key)>,
    pub cuts: Vec<(Key, Key)>,
}

impl Shape {
    pub fn stats(&self, t: &Table) -> Stats {
        let s = self
            .free
            .iter()
            .chain(self.cuts.iter().flat_map(|(a, b)| [a, b]))
            .fold(Stats::default(), |s, &k| s.add(t.stats(k)));
        match self.big {
            Some((tensor, a, b)) => {
                let s = s.add(t.stats(a)).add(t.stats(b));
                Stats { pars: s.pars + u8::from(!tensor), ..s }
            }
            None => s,
        }
    }

    /// Free trees first, then each cut pair adjacently.
    pub fn sequent(&self, t: &Table) -> CutSequent {
        let mut trees: Vec<Formula> = self.free.iter().map(|&k| t.formula(k)).collect();
        if let Some((tensor, a, b)) = self.big {
            let (a, b) = (t.formula(a), t.formula(b));
            trees.push(if tensor { Formula::tensor(a, b) } else { Formula::par(a, b) });
        }
        let mut cuts = Vec::new();
        for &(a, _) in &self.cuts {
            // The partner's class is `b`, but its children must line up with `a`.
            let a = t.formula(a);
            cuts.push((trees.len(), trees.len() + 1));
            trees.push(a.negate());
            trees.insert(trees.len() - 1, a);
        }
        CutSequent::new(trees, cuts).expect("canonical shapes are valid cut sequents")
    }
}

/// Every canonical shape with exactly `n` leaves: a nonempty multiset of
/// free trees plus a multiset of cut pairs, up to tree order and child order.
/// Tree sizes above `t.nodes.len() - 1` are streamed from pairs of smaller trees.
pub fn for_each_shape(t: &Table, neg: &HashMap<Key, Key>, n: usize, visit: &mut dyn FnMut(&Shape)) {
    // Cut pairs, each listed once with the smaller key first.
    let mut pairs: Vec<(Key, Key)> = neg.iter().filter(|(a, b)| a < b).map(|(&a, &b)| (a, b)).collect();
    pairs.sort();
    let max_cut = n.saturating_sub(1) / 2;
    let mut shape = Shape { free: Vec::new(), big: None, cuts: Vec::new() };
    cut_multisets(&pairs, max_cut, 0, &mut shape, &mut |shape| {
        let used: usize = shape.cuts.iter().map(|(a, _)| 2 * a.0 as usize).sum();
        free_multisets(t, n - used, None, shape, visit);
    });
}

fn cut_multisets(pairs: &[(Key, Key)], room: usize, from: usize, shape: &mut Shape, k: &mut dyn FnMut(&mut Shape)) {
    k(shape);
    for i in from..pairs.len() {
        let size = pairs[i].0 .0 as usize;
        if size <= room {
            shape.cuts.push(pairs[i]);
            cut_multisets(pairs, room - size, i, shape, k);
            shape.cuts.pop();
        }
    }
}

fn free_multisets(t: &Table, room: usize, min: Option<Key>, shape: &mut Shape, visit: &mut dyn FnMut(&Shape)) {
    if room == 0 {
        if !shape.free.is_empty() {
            visit(shape);
        }
        return;
    }
    let stored = t.nodes.len() - 1;
    let lo = min.map_or(1, |k| k.0 as usize);
    for size in lo..=room {
        let start = match min {
            Some(k) if k.0 as usize == size => k.1 as usize,
            _ => 0,
        };
        if size <= stored {
            for i in start..t.nodes[size].len() {
                let key = (size as u8, i as u32);
                shape.free.push(key);
                free_multisets(t, room - size, Some(key), shape, visit);
                shape.free.pop();
            }
        } else if start == 0 && size == room {
            // A tree above the stored sizes can only be the last free tree.
            for sa in 1..=size / 2 {
                let sb = size - sa;
                for ia in 0..t.nodes[sa].len() {
                    let from = if sa == sb { ia } else { 0 };
                    for ib in from..t.nodes[sb].len() {
                        for tensor in [true, false] {
                            shape.big = Some((tensor, (sa as u8, ia as u32), (sb as u8, ib as u32)));
                            visit(shape);
                        }
                    }
                }
            }
            shape.big = None;
        }
    }
}

/// Leaf labels of a sequent in order.
pub fn labels(g: &CutSequent) -> Vec<Atom> {
    g.leaves().into_iter().map(|(_, a, _)| a).collect()
}

/// Every total leaf function, as target vectors.
pub fn all_functions(g: &CutSequent, visit: &mut dyn FnMut(&[Option<usize>])) {
    let n = g.leaf_count();
    let pos: Vec<usize> = (0..n).filter(|&l| g.polarity(l) == Polarity::Positive).collect();
    let neg: Vec<usize> = (0..n).filter(|&l| g.polarity(l) == Polarity::Negative).collect();
    if pos.is_empty() && !neg.is_empty() {
        return;
    }
    let mut targets = vec![None; n];
    let mut digits = vec![0usize; neg.len()];
    loop {
        for (d, &l) in digits.iter().zip(&neg) {
            targets[l] = Some(pos[*d]);
        }
        visit(&targets);
        let mut i = 0;
        loop {
            if i == digits.len() {
                return;
            }
            digits[i] += 1;
            if digits[i] < pos.len() {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

/// Every leaf function whose `P^` leaves map bijectively onto the `P` leaves.
pub fn matching_functions(g: &CutSequent, visit: &mut dyn FnMut(&[Option<usize>])) {
    let n = g.leaf_count();
    let atoms = labels(g);
    let ps: Vec<usize> = (0..n).filter(|&l| matches!(atoms[l], Atom::Var(_))).collect();
    let ds: Vec<usize> = (0..n).filter(|&l| matches!(atoms[l], Atom::DualVar(_))).collect();
    let bots: Vec<usize> = (0..n).filter(|&l| atoms[l] == Atom::Bot).collect();
    let pos: Vec<usize> = (0..n).filter(|&l| g.polarity(l) == Polarity::Positive).collect();
    if ps.len() != ds.len() || (pos.is_empty() && !bots.is_empty()) {
        return;
    }
    let mut targets = vec![None; n];
    let mut perm: Vec<usize> = (0..ps.len()).collect();
    permutations(&mut perm, 0, &mut |perm| {
        for (k, &d) in ds.iter().enumerate() {
            targets[d] = Some(ps[perm[k]]);
        }
        let mut digits = vec![0usize; bots.len()];
        loop {
            for (d, &l) in digits.iter().zip(&bots) {
                targets[l] = Some(pos[*d]);
            }
            visit(&targets);
            let mut i = 0;
            loop {
                if i == digits.len() {
                    return;
                }
                digits[i] += 1;
                if digits[i] < pos.len() {
                    break;
                }
                digits[i] = 0;
                i += 1;
            }
        }
    });
}

fn permutations(v: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k == v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permutations(v, k + 1, visit);
        v.swap(k, i);
    }
}

/// Reference Matching check, written directly from the definition.
pub fn matching_reference(f: &LeafFunction, g: &CutSequent) -> bool {
    let atoms = labels(g);
    let mut vars: Vec<String> = atoms.iter().filter_map(|a| a.var().map(str::to_string)).collect();
    vars.sort();
    vars.dedup();
    vars.iter().all(|v| {
        let ps: Vec<usize> = (0..atoms.len()).filter(|&l| atoms[l] == Atom::Var(v.clone())).collect();
        let ds: Vec<usize> = (0..atoms.len()).filter(|&l| atoms[l] == Atom::DualVar(v.clone())).collect();
        let mut image: Vec<usize> = ds.iter().filter_map(|&d| f.target(d)).collect();
        image.sort();
        image == ps
    })
}
