//! Leaf functions, the Matching condition, and the brute-force switching oracle.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::contract::PairedGraph;
use crate::syntax::{CutSequent, Polarity, Side, Switching, Symbol, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LeafFunctionError {
    #[error("leaf {0} does not exist")]
    OutOfRange(usize),
    #[error("edge source {0} is not a negative leaf")]
    SourceNotNegative(usize),
    #[error("edge target {0} is not a positive leaf")]
    TargetNotPositive(usize),
    #[error("negative leaf {0} has more than one outgoing edge")]
    Duplicate(usize),
    #[error("negative leaf {0} has no outgoing edge")]
    Missing(usize),
}

/// Total map from the negative leaves of a cut sequent to its positive leaves.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LeafFunction {
    targets: Vec<Option<usize>>,
}

impl LeafFunction {
    pub fn new(
        g: &CutSequent,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<LeafFunction, LeafFunctionError> {
        let n = g.leaf_count();
        let mut targets = vec![None; n];
        for (s, t) in edges {
            for x in [s, t] {
                if x >= n {
                    return Err(LeafFunctionError::OutOfRange(x));
                }
            }
            if g.polarity(s) != Polarity::Negative {
                return Err(LeafFunctionError::SourceNotNegative(s));
            }
            if g.polarity(t) != Polarity::Positive {
                return Err(LeafFunctionError::TargetNotPositive(t));
            }
            if targets[s].replace(t).is_some() {
                return Err(LeafFunctionError::Duplicate(s));
            }
        }
        if let Some(l) = (0..n).find(|&l| g.polarity(l) == Polarity::Negative && targets[l].is_none()) {
            return Err(LeafFunctionError::Missing(l));
        }
        Ok(LeafFunction { targets })
    }

    /// Build from a per-leaf target table; `None` exactly at positive leaves.
    pub fn from_targets(g: &CutSequent, targets: Vec<Option<usize>>) -> Result<LeafFunction, LeafFunctionError> {
        if targets.len() != g.leaf_count() {
            return Err(LeafFunctionError::OutOfRange(targets.len().min(g.leaf_count())));
        }
        LeafFunction::new(g, targets.iter().enumerate().filter_map(|(s, t)| t.map(|t| (s, t))))
    }

    pub(crate) fn from_targets_unchecked(targets: Vec<Option<usize>>) -> LeafFunction {
        LeafFunction { targets }
    }

    pub fn target(&self, leaf: usize) -> Option<usize> {
        self.targets.get(leaf).copied().flatten()
    }

    pub fn targets(&self) -> &[Option<usize>] {
        &self.targets
    }

    pub fn leaf_count(&self) -> usize {
        self.targets.len()
    }

    /// Edges `(negative, positive)` sorted by source.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets.iter().enumerate().filter_map(|(s, t)| t.map(|t| (s, t)))
    }

    pub fn edge_count(&self) -> usize {
        self.targets.iter().flatten().count()
    }

    /// Number of incoming edges at every leaf.
    pub fn in_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.targets.len()];
        for t in self.targets.iter().flatten() {
            deg[*t] += 1;
        }
        deg
    }
}

/// Why a switching graph is not a tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Defect {
    /// Vertices of a cycle in traversal order; consecutive ones (and last, first) are adjacent.
    Cycle(Vec<VertexId>),
    /// Two vertices with no path between them.
    Disconnected(VertexId, VertexId),
}

/// A failing switching together with the defect of its graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Counterexample {
    pub switching: Switching,
    pub defect: Defect,
}

/// Why a leaf function is not a proof net.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Error)]
pub enum Rejection {
    #[error("Matching fails for variable {variable}")]
    Matching { variable: String },
    #[error("Switching fails: {0}")]
    Switching(Counterexample),
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sides: String =
            self.switching.0.iter().map(|s| if *s == Side::Left { 'L' } else { 'R' }).collect();
        match &self.defect {
            Defect::Cycle(c) => write!(f, "switching [{sides}] has cycle {c:?}"),
            Defect::Disconnected(u, v) => write!(f, "switching [{sides}] disconnects {u} from {v}"),
        }
    }
}

/// A leaf function validated as a proof net on its cut sequent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProofNet {
    sequent: CutSequent,
    function: LeafFunction,
}

impl ProofNet {
    /// Validate with the near-linear checker.
    pub fn new(sequent: CutSequent, function: LeafFunction) -> Result<ProofNet, Rejection> {
        crate::checker::check_fast(&function, &sequent)?;
        Ok(ProofNet { sequent, function })
    }

    /// Validate with the exponential switching oracle.
    pub fn new_by_oracle(sequent: CutSequent, function: LeafFunction) -> Result<ProofNet, Rejection> {
        check_proof_net_oracle(&function, &sequent)?;
        Ok(ProofNet { sequent, function })
    }

    pub(crate) fn new_unchecked(sequent: CutSequent, function: LeafFunction) -> ProofNet {
        debug_assert_eq!(sequent.leaf_count(), function.leaf_count());
        ProofNet { sequent, function }
    }

    pub fn sequent(&self) -> &CutSequent {
        &self.sequent
    }

    pub fn function(&self) -> &LeafFunction {
        &self.function
    }

    pub fn into_parts(self) -> (CutSequent, LeafFunction) {
        (self.sequent, self.function)
    }
}

/// Per variable, `f` maps the dual-variable leaves bijectively onto the variable leaves.
pub fn check_matching(f: &LeafFunction, g: &CutSequent) -> bool {
    matching_failure(f, g).is_none()
}

/// The first variable (by interning order) on which Matching fails.
pub(crate) fn matching_failure(f: &LeafFunction, g: &CutSequent) -> Option<u32> {
    let forest = g.forest();
    let vars = forest.vars.len();
    let mut balance = vec![0i64; vars];
    let mut hit = vec![false; g.leaf_count()];
    let mut bad: Option<u32> = None;
    let mut note = |v: u32| bad = Some(bad.map_or(v, |b| b.min(v)));
    for (l, slot) in forest.leaves.iter().enumerate() {
        match slot.symbol {
            Symbol::Var(v) => balance[v as usize] += 1,
            Symbol::Dual(v) => {
                balance[v as usize] -= 1;
                let t = f.target(l).expect("total on negative leaves");
                if forest.leaves[t].symbol != Symbol::Var(v) || std::mem::replace(&mut hit[t], true) {
                    note(v);
                }
            }
            _ => {}
        }
    }
    for (v, b) in balance.iter().enumerate() {
        if *b != 0 {
            note(v as u32);
        }
    }
    bad
}

pub(crate) fn matching_rejection(f: &LeafFunction, g: &CutSequent) -> Option<Rejection> {
    matching_failure(f, g).map(|v| Rejection::Matching { variable: g.forest().vars[v as usize].clone() })
}

/// Undirected multigraph on the parse-tree vertices of a cut sequent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SwitchingGraph {
    pub vertices: usize,
    pub edges: Vec<(VertexId, VertexId)>,
}

impl SwitchingGraph {
    /// `None` iff the graph is a tree.
    pub fn defect(&self) -> Option<Defect> {
        graph_defect(self.vertices, &self.edges)
    }
}

/// The paired graph of a leaf function: tree edges, cut edges, and one edge per `f`-edge,
/// with each par's argument edges paired. Pairs follow the pre-order of the pars.
pub fn paired_graph(f: &LeafFunction, g: &CutSequent) -> PairedGraph {
    let forest = g.forest();
    let mut pg = PairedGraph::new(forest.vertex_count());
    for (id, v) in forest.vertices.iter().enumerate() {
        if let (VertexKind::Binary(c), Some((a, b))) = (v.kind, v.children) {
            if c == crate::syntax::Connective::Par {
                pg.pairs.push((id, a, b));
            } else {
                pg.edges.push((id, a));
                pg.edges.push((id, b));
            }
        }
    }
    for &(i, j) in g.cuts() {
        pg.edges.push((forest.roots[i], forest.roots[j]));
    }
    for (s, t) in f.edges() {
        pg.edges.push((forest.leaves[s].vertex, forest.leaves[t].vertex));
    }
    pg
}

pub fn switching_graph(f: &LeafFunction, g: &CutSequent, s: &Switching) -> SwitchingGraph {
    assert_eq!(s.0.len(), g.par_count(), "switching does not match the sequent");
    apply_switching(&paired_graph(f, g), s)
}

pub(crate) fn apply_switching(pg: &PairedGraph, s: &Switching) -> SwitchingGraph {
    let mut edges = pg.edges.clone();
    for (&(p, a, b), side) in pg.pairs.iter().zip(&s.0) {
        edges.push((p, if *side == Side::Left { a } else { b }));
    }
    SwitchingGraph { vertices: pg.vertices, edges }
}

/// Find a cycle or a disconnected pair; `None` for a tree.
pub fn graph_defect(vertices: usize, edges: &[(usize, usize)]) -> Option<Defect> {
    let mut uf: UnionFind<usize> = UnionFind::new(vertices);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices];
    for &(u, v) in edges {
        if !uf.union(u, v) {
            let mut path = bfs_path(&adj, v, u);
            if path.is_empty() {
                path.push(u);
            }
            return Some(Defect::Cycle(path));
        }
        adj[u].push(v);
        adj[v].push(u);
    }
    (1..vertices).find(|&x| !uf.equiv(0, x)).map(|x| Defect::Disconnected(0, x))
}

fn bfs_path(adj: &[Vec<usize>], from: usize, to: usize) -> Vec<usize> {
    let mut prev: HashMap<usize, usize> = HashMap::new();
    prev.insert(from, from);
    let mut queue = VecDeque::from([from]);
    while let Some(x) = queue.pop_front() {
        if x == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = prev[&cur];
                path.push(cur);
            }
            path.reverse();
            return path;
        }
        for &y in &adj[x] {
            prev.entry(y).or_insert_with(|| {
                queue.push_back(y);
                x
            });
        }
    }
    Vec::new()
}

/// Brute force over all `2^p` switchings; the first failing one (in enumeration order) is returned.
pub fn check_switching_oracle(f: &LeafFunction, g: &CutSequent) -> Result<(), Counterexample> {
    let pg = paired_graph(f, g);
    if pg.switching_edge_count() + 1 != pg.vertices {
        let s = Switching::all(Side::Left, g.par_count());
        let defect = apply_switching(&pg, &s).defect().expect("edge count rules out a tree");
        return Err(Counterexample { switching: s, defect });
    }
    for s in g.enumerate_switchings() {
        if let Some(defect) = apply_switching(&pg, &s).defect() {
            return Err(Counterexample { switching: s, defect });
        }
    }
    Ok(())
}

/// Verdict-only oracle: Matching and every switching a tree.
pub fn is_proof_net(f: &LeafFunction, g: &CutSequent) -> bool {
    if !check_matching(f, g) {
        return false;
    }
    // Every switching has one edge per tensor argument, par, cut and f-edge.
    let forest = g.forest();
    let binary = forest.vertex_count() - forest.leaf_count();
    let edges = 2 * binary - forest.pars.len() + g.cuts().len() + f.edge_count();
    if edges + 1 != forest.vertex_count() {
        return false;
    }
    let pg = paired_graph(f, g);
    let p = pg.pairs.len();
    assert!(p < 64, "too many pars for the oracle");
    let mut base: UnionFind<usize> = UnionFind::new(pg.vertices);
    if !pg.edges.iter().all(|&(u, v)| base.union(u, v)) {
        return false;
    }
    // With |E| = |V| - 1 fixed, a switching graph is a tree iff it is acyclic.
    (0u64..(1u64 << p)).all(|bits| {
        let mut uf = base.clone();
        pg.pairs.iter().enumerate().all(|(k, &(q, a, b))| uf.union(q, if bits >> k & 1 == 0 { a } else { b }))
    })
}

/// Oracle with witnesses: Matching, then every switching.
pub fn check_proof_net_oracle(f: &LeafFunction, g: &CutSequent) -> Result<(), Rejection> {
    if let Some(r) = matching_rejection(f, g) {
        return Err(r);
    }
    check_switching_oracle(f, g).map_err(Rejection::Switching)
}
