use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use super::formula::{Atom, Connective, Formula, Polarity};

/// Pre-order index of a parse-tree vertex across the whole forest.
pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequentError {
    #[error("a sequent needs at least one formula outside cut pairs")]
    Empty,
    #[error("cut refers to tree {0}, which does not exist")]
    CutOutOfRange(usize),
    #[error("cut joins tree {0} to itself")]
    SelfCut(usize),
    #[error("tree {0} occurs in more than one cut")]
    SharedCut(usize),
    #[error("cut {{{0}, {1}}} joins formulas that are not complementary")]
    NotComplementary(usize, usize),
}

/// Leaf symbol with variable names interned per sequent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    Var(u32),
    Dual(u32),
    One,
    Bot,
}

impl Symbol {
    pub fn polarity(self) -> Polarity {
        match self {
            Symbol::Var(_) | Symbol::One => Polarity::Positive,
            Symbol::Dual(_) | Symbol::Bot => Polarity::Negative,
        }
    }

    pub fn var(self) -> Option<u32> {
        match self {
            Symbol::Var(v) | Symbol::Dual(v) => Some(v),
            _ => None,
        }
    }

    pub fn dual(self) -> Symbol {
        match self {
            Symbol::Var(v) => Symbol::Dual(v),
            Symbol::Dual(v) => Symbol::Var(v),
            Symbol::One => Symbol::Bot,
            Symbol::Bot => Symbol::One,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VertexKind {
    Leaf(usize),
    Binary(Connective),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    pub parent: Option<VertexId>,
    pub children: Option<(VertexId, VertexId)>,
    pub tree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeafSlot {
    pub symbol: Symbol,
    pub vertex: VertexId,
    pub tree: usize,
    /// Position of the leaf within its own tree.
    pub offset: usize,
}

/// Flattened parse forest: vertices in pre-order, leaves left to right.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Forest {
    pub vertices: Vec<Vertex>,
    pub roots: Vec<VertexId>,
    pub leaves: Vec<LeafSlot>,
    /// Par vertices in pre-order; a switching is indexed by this order.
    pub pars: Vec<VertexId>,
    /// First leaf index of each tree, plus a final entry equal to the leaf count.
    pub leaf_starts: Vec<usize>,
    pub vars: Vec<String>,
}

impl Forest {
    pub fn build<'a>(trees: impl IntoIterator<Item = &'a Formula>) -> Forest {
        let mut forest = Forest::default();
        let mut var_ids: HashMap<String, u32> = HashMap::new();
        for (t, tree) in trees.into_iter().enumerate() {
            forest.leaf_starts.push(forest.leaves.len());
            let root = forest.vertices.len();
            forest.roots.push(root);
            // (formula, parent, is right child)
            let mut stack: Vec<(&Formula, Option<VertexId>, bool)> = vec![(tree, None, false)];
            let tree_start = forest.leaves.len();
            while let Some((f, parent, right)) = stack.pop() {
                let id = forest.vertices.len();
                if let Some(p) = parent {
                    let slot = forest.vertices[p].children.get_or_insert((usize::MAX, usize::MAX));
                    if right {
                        slot.1 = id;
                    } else {
                        slot.0 = id;
                    }
                }
                match f {
                    Formula::Atom(a) => {
                        let leaf = forest.leaves.len();
                        let symbol = match a {
                            Atom::One => Symbol::One,
                            Atom::Bot => Symbol::Bot,
                            Atom::Var(p) | Atom::DualVar(p) => {
                                let next = var_ids.len() as u32;
                                let v = *var_ids.entry(p.clone()).or_insert_with(|| {
                                    forest.vars.push(p.clone());
                                    next
                                });
                                if matches!(a, Atom::Var(_)) {
                                    Symbol::Var(v)
                                } else {
                                    Symbol::Dual(v)
                                }
                            }
                        };
                        forest.leaves.push(LeafSlot {
                            symbol,
                            vertex: id,
                            tree: t,
                            offset: leaf - tree_start,
                        });
                        forest.vertices.push(Vertex {
                            kind: VertexKind::Leaf(leaf),
                            parent,
                            children: None,
                            tree: t,
                        });
                    }
                    Formula::Tensor(a, b) | Formula::Par(a, b) => {
                        let c = f.connective().expect("binary");
                        if c == Connective::Par {
                            forest.pars.push(id);
                        }
                        forest.vertices.push(Vertex {
                            kind: VertexKind::Binary(c),
                            parent,
                            children: None,
                            tree: t,
                        });
                        stack.push((b, Some(id), true));
                        stack.push((a, Some(id), false));
                    }
                }
            }
        }
        forest.leaf_starts.push(forest.leaves.len());
        forest
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn polarity(&self, leaf: usize) -> Polarity {
        self.leaves[leaf].symbol.polarity()
    }

    pub fn atom(&self, leaf: usize) -> Atom {
        match self.leaves[leaf].symbol {
            Symbol::Var(v) => Atom::Var(self.vars[v as usize].clone()),
            Symbol::Dual(v) => Atom::DualVar(self.vars[v as usize].clone()),
            Symbol::One => Atom::One,
            Symbol::Bot => Atom::Bot,
        }
    }

    pub fn tree_leaves(&self, tree: usize) -> std::ops::Range<usize> {
        self.leaf_starts[tree]..self.leaf_starts[tree + 1]
    }

    /// Vertex ids of a whole tree (pre-order makes them contiguous).
    pub fn tree_vertices(&self, tree: usize) -> std::ops::Range<VertexId> {
        let start = self.roots[tree];
        let end = self.roots.get(tree + 1).copied().unwrap_or(self.vertices.len());
        start..end
    }
}

/// A list of formulas plus cut edges between complementary roots.
///
/// Leaves are numbered densely from 0, left to right across the trees in
/// list order; every other module refers to leaves by this index.
#[derive(Clone, Debug)]
pub struct CutSequent {
    trees: Vec<Formula>,
    cuts: Vec<(usize, usize)>,
    partner: Vec<Option<usize>>,
    forest: Forest,
}

impl PartialEq for CutSequent {
    fn eq(&self, other: &Self) -> bool {
        self.trees == other.trees && self.cuts == other.cuts
    }
}

impl Eq for CutSequent {}

impl std::hash::Hash for CutSequent {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.trees.hash(state);
        self.cuts.hash(state);
    }
}

impl CutSequent {
    pub fn new(trees: Vec<Formula>, cuts: Vec<(usize, usize)>) -> Result<CutSequent, SequentError> {
        let mut partner = vec![None; trees.len()];
        let mut norm = Vec::with_capacity(cuts.len());
        for &(a, b) in &cuts {
            for x in [a, b] {
                if x >= trees.len() {
                    return Err(SequentError::CutOutOfRange(x));
                }
            }
            if a == b {
                return Err(SequentError::SelfCut(a));
            }
            for x in [a, b] {
                if partner[x].is_some() {
                    return Err(SequentError::SharedCut(x));
                }
            }
            if trees[b] != trees[a].negate() {
                return Err(SequentError::NotComplementary(a, b));
            }
            partner[a] = Some(b);
            partner[b] = Some(a);
            norm.push((a.min(b), a.max(b)));
        }
        if partner.iter().all(Option::is_some) {
            return Err(SequentError::Empty);
        }
        norm.sort_unstable();
        let forest = Forest::build(&trees);
        Ok(CutSequent { trees, cuts: norm, partner, forest })
    }

    /// A sequent without cuts.
    pub fn cut_free(trees: Vec<Formula>) -> Result<CutSequent, SequentError> {
        CutSequent::new(trees, Vec::new())
    }

    pub fn trees(&self) -> &[Formula] {
        &self.trees
    }

    /// Cut pairs as `(i, j)` with `i < j`, sorted; a cut's id is its index here.
    pub fn cuts(&self) -> &[(usize, usize)] {
        &self.cuts
    }

    pub fn cut_partner(&self, tree: usize) -> Option<usize> {
        self.partner[tree]
    }

    pub fn in_cut(&self, tree: usize) -> bool {
        self.partner[tree].is_some()
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn leaf_count(&self) -> usize {
        self.forest.leaf_count()
    }

    pub fn vertex_count(&self) -> usize {
        self.forest.vertex_count()
    }

    pub fn polarity(&self, leaf: usize) -> Polarity {
        self.forest.polarity(leaf)
    }

    /// `(index, atom, polarity)` for every leaf, left to right.
    pub fn leaves(&self) -> Vec<(usize, Atom, Polarity)> {
        (0..self.leaf_count())
            .map(|l| {
                let atom = self.forest.atom(l);
                let pol = atom.polarity();
                (l, atom, pol)
            })
            .collect()
    }

    pub fn leaf_in_cut(&self, leaf: usize) -> bool {
        self.in_cut(self.forest.leaves[leaf].tree)
    }

    /// The mirror leaf of `leaf` across its cut: the i-th leaf of `A` maps
    /// to the i-th leaf of `A⊥`.
    pub fn dual_leaf(&self, leaf: usize) -> Option<usize> {
        let slot = self.forest.leaves.get(leaf)?;
        let other = self.partner[slot.tree]?;
        Some(self.forest.leaf_starts[other] + slot.offset)
    }

    pub fn par_count(&self) -> usize {
        self.forest.pars.len()
    }

    /// The sequent obtained by dropping every cut pair.
    pub fn without_cuts(&self) -> CutSequent {
        let trees = self
            .trees
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.in_cut(*i))
            .map(|(_, t)| t.clone())
            .collect();
        CutSequent::cut_free(trees).expect("non-cut part is non-empty by construction")
    }

    pub fn enumerate_switchings(&self) -> Switchings {
        Switchings::new(self.par_count())
    }
}

impl fmt::Display for CutSequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, t) in self.trees.iter().enumerate() {
            if !first {
                f.write_str(", ")?;
            }
            first = false;
            match self.partner[i] {
                Some(j) if j > i => write!(f, "<{t}|")?,
                Some(_) => write!(f, "{t}>")?,
                None => write!(f, "{t}")?,
            }
        }
        Ok(())
    }
}

/// Which argument edge of a par is kept.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// One choice per par vertex, in pre-order of the pars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Switching(pub Vec<Side>);

impl Switching {
    pub fn all(side: Side, pars: usize) -> Switching {
        Switching(vec![side; pars])
    }

    pub fn choices(&self) -> &[Side] {
        &self.0
    }
}

/// Iterator over all `2^p` switchings of a sequent with `p` pars.
pub struct Switchings {
    pars: usize,
    next: u64,
    end: u64,
}

impl Switchings {
    fn new(pars: usize) -> Switchings {
        assert!(pars < 64, "too many pars to enumerate switchings");
        Switchings { pars, next: 0, end: 1u64 << pars }
    }
}

impl Iterator for Switchings {
    type Item = Switching;

    fn next(&mut self) -> Option<Switching> {
        if self.next == self.end {
            return None;
        }
        let bits = self.next;
        self.next += 1;
        Some(Switching(
            (0..self.pars)
                .map(|i| if bits >> i & 1 == 0 { Side::Left } else { Side::Right })
                .collect(),
        ))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = (self.end - self.next) as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Switchings {}
