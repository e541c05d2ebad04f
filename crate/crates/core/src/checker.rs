//! Near-linear correctness checking.
//!
//! A leaf function with units is reduced to a unit-free structure whose
//! units are reinterpreted as complementary literals, and that structure is
//! checked by union-find contraction. Witnesses for rejected inputs are
//! recovered on the original net by fixing one par at a time while the
//! partially fixed graph stays incorrect.

use thiserror::Error;

use crate::contract::PairedGraph;
use crate::net::{
    graph_defect, matching_rejection, paired_graph, Counterexample, Defect, LeafFunction,
    Rejection,
};
use crate::syntax::{
    Connective, CutSequent, Forest, Formula, Polarity, SequentError, Side, Switching, VertexId,
    VertexKind,
};

/// Order in which the copies of an expanded `1` receive their incoming edges.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CopyOrder {
    /// Copy `k` (left to right) receives the `k`-th smallest source leaf.
    #[default]
    Ascending,
    Descending,
}

/// Definitive rejections found while removing unattached units.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SwitchingFailure {
    #[error("vertex {unit} has no incoming edges and sits under the par at vertex {par}")]
    UnitUnderPar { par: VertexId, unit: VertexId },
    #[error("tree rooted at vertex {root} has no incoming edges but is not alone")]
    IsolatedUnits { root: VertexId },
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("Matching fails for variable {0}; reduction requires it")]
    Unmatched(String),
    #[error(transparent)]
    Switching(#[from] SwitchingFailure),
}

/// A cut-free sequent over `1` and `⊥` only, with a perfect matching of axiom links.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitFreeStructure {
    trees: Vec<Formula>,
    axioms: Vec<(usize, usize)>,
    forest: Forest,
}

impl UnitFreeStructure {
    /// Axioms are `(⊥-leaf, 1-leaf)` pairs; every leaf must occur in exactly one.
    pub fn new(trees: Vec<Formula>, mut axioms: Vec<(usize, usize)>) -> Result<UnitFreeStructure, String> {
        let forest = Forest::build(&trees);
        let mut seen = vec![false; forest.leaf_count()];
        for &(n, p) in &axioms {
            if n >= seen.len() || p >= seen.len() {
                return Err(format!("axiom ({n}, {p}) is out of range"));
            }
            if forest.polarity(n) != Polarity::Negative || forest.polarity(p) != Polarity::Positive {
                return Err(format!("axiom ({n}, {p}) does not join a negative to a positive leaf"));
            }
            if forest.leaves[n].symbol.dual() != forest.leaves[p].symbol {
                return Err(format!("axiom ({n}, {p}) joins leaves with non-dual labels"));
            }
            for l in [n, p] {
                if std::mem::replace(&mut seen[l], true) {
                    return Err(format!("leaf {l} is in two axioms"));
                }
            }
        }
        if let Some(l) = seen.iter().position(|s| !s) {
            return Err(format!("leaf {l} is in no axiom"));
        }
        axioms.sort_unstable();
        Ok(UnitFreeStructure { trees, axioms, forest })
    }

    pub fn trees(&self) -> &[Formula] {
        &self.trees
    }

    /// `(⊥-leaf, 1-leaf)` pairs sorted by the negative leaf.
    pub fn axioms(&self) -> &[(usize, usize)] {
        &self.axioms
    }

    pub fn forest(&self) -> &Forest {
        &self.forest
    }

    pub fn is_empty(&self) -> bool {
        self.trees.is_empty()
    }

    pub fn paired_graph(&self) -> PairedGraph {
        let mut pg = PairedGraph::new(self.forest.vertex_count());
        push_tree_edges(&self.forest, &mut pg);
        for &(n, p) in &self.axioms {
            pg.edges.push((self.forest.leaves[n].vertex, self.forest.leaves[p].vertex));
        }
        pg
    }
}

fn push_tree_edges(forest: &Forest, pg: &mut PairedGraph) {
    for (id, v) in forest.vertices.iter().enumerate() {
        if let (VertexKind::Binary(c), Some((a, b))) = (v.kind, v.children) {
            match c {
                Connective::Par => pg.pairs.push((id, a, b)),
                Connective::Tensor => pg.edges.extend([(id, a), (id, b)]),
            }
        }
    }
}

pub fn reduce_to_unit_free(f: &LeafFunction, g: &CutSequent) -> Result<UnitFreeStructure, ReductionError> {
    reduce_to_unit_free_with(f, g, CopyOrder::Ascending)
}

pub fn reduce_to_unit_free_with(
    f: &LeafFunction,
    g: &CutSequent,
    order: CopyOrder,
) -> Result<UnitFreeStructure, ReductionError> {
    if let Some(Rejection::Matching { variable }) = matching_rejection(f, g) {
        return Err(ReductionError::Unmatched(variable));
    }
    let forest = g.forest();
    let indeg = f.in_degrees();

    // Bottom-up over the pre-order arena: `None` marks a removed subtree.
    let mut built: Vec<Option<Formula>> = vec![None; forest.vertex_count()];
    for v in (0..forest.vertex_count()).rev() {
        let vertex = &forest.vertices[v];
        built[v] = match vertex.kind {
            VertexKind::Leaf(l) => match forest.polarity(l) {
                Polarity::Negative => Some(Formula::bot()),
                Polarity::Positive if indeg[l] == 0 => None,
                Polarity::Positive => Some(unit_power(indeg[l])),
            },
            VertexKind::Binary(c) => {
                let (a, b) = vertex.children.expect("binary vertex");
                let (fa, fb) = (built[a].take(), built[b].take());
                match (c, fa, fb) {
                    (Connective::Tensor, Some(x), Some(y)) => Some(Formula::tensor(x, y)),
                    (Connective::Tensor, x, y) => x.or(y),
                    (Connective::Par, Some(x), Some(y)) => Some(Formula::par(x, y)),
                    (Connective::Par, fa, _) => {
                        let unit = if fa.is_none() { a } else { b };
                        return Err(SwitchingFailure::UnitUnderPar { par: v, unit }.into());
                    }
                }
            }
        };
    }

    // Cut pairs become tensors placed after the cut-free trees.
    let mut groups: Vec<Vec<usize>> = (0..g.trees().len()).filter(|&t| !g.in_cut(t)).map(|t| vec![t]).collect();
    groups.extend(g.cuts().iter().map(|&(i, j)| vec![i, j]));
    let mut trees = Vec::with_capacity(groups.len());
    for group in &groups {
        let parts: Vec<Formula> = group.iter().filter_map(|&t| built[forest.roots[t]].take()).collect();
        let mut parts = parts.into_iter();
        match (parts.next(), parts.next()) {
            (Some(x), Some(y)) => trees.push(Formula::tensor(x, y)),
            (Some(x), None) => trees.push(x),
            (None, _) if groups.len() == 1 => {}
            (None, _) => return Err(SwitchingFailure::IsolatedUnits { root: forest.roots[group[0]] }.into()),
        }
    }

    // New leaf indices follow the same group order; a positive leaf with n edges owns n copies.
    let mut first_copy = vec![usize::MAX; g.leaf_count()];
    let mut next = 0;
    for group in &groups {
        for &t in group {
            for l in forest.tree_leaves(t) {
                let width = if forest.polarity(l) == Polarity::Positive { indeg[l] } else { 1 };
                if width > 0 {
                    first_copy[l] = next;
                    next += width;
                }
            }
        }
    }
    let mut sources: Vec<Vec<usize>> = vec![Vec::new(); g.leaf_count()];
    for (s, t) in f.edges() {
        sources[t].push(s);
    }
    let mut axioms = Vec::with_capacity(f.edge_count());
    for (t, srcs) in sources.iter().enumerate() {
        let k = srcs.len();
        for (i, &s) in srcs.iter().enumerate() {
            let copy = match order {
                CopyOrder::Ascending => i,
                CopyOrder::Descending => k - 1 - i,
            };
            axioms.push((first_copy[s], first_copy[t] + copy));
        }
    }
    axioms.sort_unstable();
    let forest = Forest::build(&trees);
    debug_assert_eq!(forest.leaf_count(), next);
    Ok(UnitFreeStructure { trees, axioms, forest })
}

/// `|E| = |V| - 1` for the switching graphs of `g` under any total leaf function.
///
/// The unit-free reduction preserves `|V| - |E|`, so this decides the count
/// check of the contraction before anything is built.
fn euler_ok(g: &CutSequent) -> bool {
    let forest = g.forest();
    let binary = forest.vertex_count() - forest.leaf_count();
    let negative = forest.leaves.iter().filter(|l| l.symbol.polarity() == Polarity::Negative).count();
    2 * binary - forest.pars.len() + g.cuts().len() + negative + 1 == forest.vertex_count()
}

/// The paired graph of the unit-free structure, built directly on the input forest,
/// or `None` when the edge count already rules out a tree.
///
/// Same graph as `reduce_to_unit_free_with(f, g, order)?.paired_graph()` up to
/// vertex numbering.
pub(crate) fn unit_free_graph(
    f: &LeafFunction,
    g: &CutSequent,
    order: CopyOrder,
) -> Result<Option<PairedGraph>, ReductionError> {
    if let Some(Rejection::Matching { variable }) = matching_rejection(f, g) {
        return Err(ReductionError::Unmatched(variable));
    }
    if !euler_ok(g) {
        return Ok(None);
    }
    const GONE: usize = usize::MAX;
    let forest = g.forest();
    let mut indeg = f.in_degrees();
    let fan = f.edge_count();
    let mut pg = PairedGraph {
        vertices: 0,
        edges: Vec::with_capacity(3 * fan + 2 * forest.vertex_count()),
        pairs: Vec::with_capacity(forest.pars.len()),
    };
    let fresh = |pg: &mut PairedGraph| {
        pg.vertices += 1;
        pg.vertices - 1
    };
    // Vertex standing for each original vertex, and the first copy of each positive leaf.
    let mut rep = vec![GONE; forest.vertex_count()];
    let mut first_copy = vec![GONE; forest.leaf_count()];
    for v in (0..forest.vertex_count()).rev() {
        let vertex = &forest.vertices[v];
        rep[v] = match vertex.kind {
            VertexKind::Leaf(l) => match forest.polarity(l) {
                Polarity::Negative => fresh(&mut pg),
                Polarity::Positive if indeg[l] == 0 => GONE,
                Polarity::Positive => {
                    let first = fresh(&mut pg);
                    first_copy[l] = first;
                    let mut top = first;
                    for _ in 1..indeg[l] {
                        fresh(&mut pg);
                    }
                    for k in 1..indeg[l] {
                        let t = fresh(&mut pg);
                        pg.edges.push((t, top));
                        pg.edges.push((t, first + k));
                        top = t;
                    }
                    top
                }
            },
            VertexKind::Binary(c) => {
                let (a, b) = vertex.children.expect("binary vertex");
                match (c, rep[a], rep[b]) {
                    (Connective::Tensor, GONE, y) => y,
                    (Connective::Tensor, x, GONE) => x,
                    (Connective::Tensor, x, y) => {
                        let t = fresh(&mut pg);
                        pg.edges.push((t, x));
                        pg.edges.push((t, y));
                        t
                    }
                    (Connective::Par, GONE, _) => return Err(SwitchingFailure::UnitUnderPar { par: v, unit: a }.into()),
                    (Connective::Par, _, GONE) => return Err(SwitchingFailure::UnitUnderPar { par: v, unit: b }.into()),
                    (Connective::Par, x, y) => {
                        let t = fresh(&mut pg);
                        pg.pairs.push((t, x, y));
                        t
                    }
                }
            }
        };
    }
    let groups = g.trees().len() - g.cuts().len();
    let isolated = |root: usize| -> Result<(), ReductionError> {
        if groups == 1 {
            Ok(())
        } else {
            Err(SwitchingFailure::IsolatedUnits { root }.into())
        }
    };
    for t in (0..g.trees().len()).filter(|&t| !g.in_cut(t)) {
        if rep[forest.roots[t]] == GONE {
            isolated(forest.roots[t])?;
        }
    }
    for &(i, j) in g.cuts() {
        match (rep[forest.roots[i]], rep[forest.roots[j]]) {
            (GONE, GONE) => isolated(forest.roots[i])?,
            (x, y) if x != GONE && y != GONE => {
                let t = fresh(&mut pg);
                pg.edges.push((t, x));
                pg.edges.push((t, y));
            }
            _ => {}
        }
    }
    // `first_copy` advances past each copy as it is used.
    for (s, t) in f.edges() {
        let copy = match order {
            CopyOrder::Ascending => first_copy[t],
            CopyOrder::Descending => first_copy[t] + indeg[t] - 1,
        };
        match order {
            CopyOrder::Ascending => first_copy[t] += 1,
            CopyOrder::Descending => indeg[t] -= 1,
        }
        pg.edges.push((rep[forest.leaves[s].vertex], copy));
    }
    Ok(Some(pg))
}

/// Left-bracketed tensor of `n ≥ 1` copies of `1`.
fn unit_power(n: usize) -> Formula {
    let mut acc = Formula::one();
    for _ in 1..n {
        acc = Formula::tensor(acc, Formula::one());
    }
    acc
}

/// Contraction check; a witness refers to the structure's own vertices.
pub fn check_contractible(s: &UnitFreeStructure) -> Result<(), Counterexample> {
    let pg = s.paired_graph();
    if pg.is_contractible() {
        Ok(())
    } else {
        Err(extract_witness(&pg))
    }
}

/// Matching, unit-free reduction, then contraction; agrees with the oracle.
pub fn check_fast(f: &LeafFunction, g: &CutSequent) -> Result<(), Rejection> {
    check_fast_with(f, g, CopyOrder::Ascending)
}

pub fn check_fast_with(f: &LeafFunction, g: &CutSequent, order: CopyOrder) -> Result<(), Rejection> {
    let graph = match unit_free_graph(f, g, order) {
        Ok(Some(pg)) => pg,
        Ok(None) => return Err(Rejection::Switching(extract_witness(&paired_graph(f, g)))),
        Err(ReductionError::Unmatched(variable)) => return Err(Rejection::Matching { variable }),
        Err(ReductionError::Switching(fail)) => {
            return Err(Rejection::Switching(failure_witness(g, &fail)))
        }
    };
    if graph.is_contractible() {
        Ok(())
    } else {
        Err(Rejection::Switching(extract_witness(&paired_graph(f, g))))
    }
}

/// The verdict of [`check_fast`] without building a witness.
pub fn is_correct(f: &LeafFunction, g: &CutSequent) -> bool {
    matches!(unit_free_graph(f, g, CopyOrder::Ascending), Ok(Some(pg)) if pg.is_contractible())
}

fn failure_witness(g: &CutSequent, fail: &SwitchingFailure) -> Counterexample {
    let forest = g.forest();
    let mut sides = vec![Side::Left; g.par_count()];
    let defect = match *fail {
        SwitchingFailure::UnitUnderPar { par, unit } => {
            let k = forest.pars.binary_search(&par).expect("par vertex");
            let (a, _) = forest.vertices[par].children.expect("binary vertex");
            sides[k] = if unit == a { Side::Right } else { Side::Left };
            Defect::Disconnected(unit, par)
        }
        SwitchingFailure::IsolatedUnits { root } => {
            let tree = forest.vertices[root].tree;
            let inside = forest.tree_vertices(tree);
            let other = (0..forest.vertex_count()).find(|v| !inside.contains(v)).expect("another tree");
            Defect::Disconnected(root, other)
        }
    };
    Counterexample { switching: Switching(sides), defect }
}

/// A concrete failing switching of an incorrect paired graph.
pub(crate) fn extract_witness(pg: &PairedGraph) -> Counterexample {
    let p = pg.pairs.len();
    if pg.switching_edge_count() + 1 != pg.vertices {
        let all_left = Switching::all(Side::Left, p);
        let g = crate::net::apply_switching(pg, &all_left);
        let defect = graph_defect(g.vertices, &g.edges).expect("edge count rules out a tree");
        return Counterexample { switching: all_left, defect };
    }
    // Fix pars in order, keeping Left whenever some completion still fails.
    let mut current = pg.clone();
    let mut sides = Vec::with_capacity(p);
    for _ in 0..p {
        let mut trial = current.clone();
        trial.fix_pair(0, true);
        if trial.is_contractible() {
            current.fix_pair(0, false);
            sides.push(Side::Right);
        } else {
            current = trial;
            sides.push(Side::Left);
        }
    }
    let defect = graph_defect(current.vertices, &current.edges)
        .expect("an incorrect paired graph has a failing switching");
    Counterexample { switching: Switching(sides), defect }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OldNetError {
    #[error("leaf {0} does not exist")]
    NoSuchLeaf(usize),
    #[error("vertex {0} does not exist")]
    NoSuchVertex(VertexId),
    #[error("link source {0} is not a negative leaf")]
    SourceNotNegative(usize),
    #[error("negative leaf {0} has more than one link")]
    Duplicate(usize),
    #[error("negative leaf {0} has no link")]
    Missing(usize),
    #[error("axiom link ({0}, {1}) does not join dual leaves")]
    BadAxiom(usize, usize),
    #[error("literal leaf {0} must be linked to a leaf")]
    LiteralJump(usize),
    #[error("jump from leaf {0} targets vertex {1} inside a cut pair; only positive leaves may be targeted there")]
    JumpIntoCut(usize, VertexId),
    #[error(transparent)]
    Sequent(#[from] SequentError),
}

/// Where a negative leaf of an old net points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OldLink {
    /// Jump to any parse-tree vertex.
    Jump(VertexId),
    /// Axiom link to a dual leaf.
    Axiom(usize),
}

/// Proof structure whose `⊥`-jumps may target any vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OldNet {
    sequent: CutSequent,
    links: Vec<Option<OldLink>>,
}

impl OldNet {
    /// `jumps` are `(negative leaf, vertex)`; `axioms` are leaf pairs in either order.
    pub fn new(
        sequent: CutSequent,
        jumps: &[(usize, VertexId)],
        axioms: &[(usize, usize)],
    ) -> Result<OldNet, OldNetError> {
        let forest = sequent.forest();
        let n = forest.leaf_count();
        let mut links: Vec<Option<OldLink>> = vec![None; n];
        let mut set = |leaf: usize, link: OldLink| -> Result<(), OldNetError> {
            if leaf >= n {
                return Err(OldNetError::NoSuchLeaf(leaf));
            }
            if forest.polarity(leaf) != Polarity::Negative {
                return Err(OldNetError::SourceNotNegative(leaf));
            }
            if links[leaf].replace(link).is_some() {
                return Err(OldNetError::Duplicate(leaf));
            }
            Ok(())
        };
        for &(a, b) in axioms {
            if a >= n || b >= n {
                return Err(OldNetError::NoSuchLeaf(a.max(b)));
            }
            let (neg, pos) = if forest.polarity(a) == Polarity::Negative { (a, b) } else { (b, a) };
            if forest.leaves[neg].symbol.dual() != forest.leaves[pos].symbol {
                return Err(OldNetError::BadAxiom(a, b));
            }
            set(neg, OldLink::Axiom(pos))?;
        }
        for &(leaf, v) in jumps {
            if v >= forest.vertex_count() {
                return Err(OldNetError::NoSuchVertex(v));
            }
            set(leaf, OldLink::Jump(v))?;
        }
        for (l, link) in links.iter().enumerate() {
            let slot = &forest.leaves[l];
            if slot.symbol.polarity() != Polarity::Negative {
                continue;
            }
            let Some(link) = *link else { return Err(OldNetError::Missing(l)) };
            if let OldLink::Jump(v) = link {
                let target_leaf = match forest.vertices[v].kind {
                    VertexKind::Leaf(t) if forest.polarity(t) == Polarity::Positive => Some(t),
                    _ => None,
                };
                if slot.symbol.var().is_some() && target_leaf.is_none() {
                    return Err(OldNetError::LiteralJump(l));
                }
                if target_leaf.is_none() && sequent.in_cut(forest.vertices[v].tree) {
                    return Err(OldNetError::JumpIntoCut(l, v));
                }
            }
        }
        Ok(OldNet { sequent, links })
    }

    pub fn sequent(&self) -> &CutSequent {
        &self.sequent
    }

    pub fn link(&self, leaf: usize) -> Option<OldLink> {
        self.links.get(leaf).copied().flatten()
    }

    /// The undirected graph of links: every link becomes an edge to its target vertex.
    pub fn paired_graph(&self) -> PairedGraph {
        let forest = self.sequent.forest();
        let mut pg = PairedGraph::new(forest.vertex_count());
        push_tree_edges(forest, &mut pg);
        for &(i, j) in self.sequent.cuts() {
            pg.edges.push((forest.roots[i], forest.roots[j]));
        }
        for (l, link) in self.links.iter().enumerate() {
            let target = match link {
                Some(OldLink::Jump(v)) => *v,
                Some(OldLink::Axiom(p)) => forest.leaves[*p].vertex,
                None => continue,
            };
            pg.edges.push((forest.leaves[l].vertex, target));
        }
        pg
    }
}

/// Rewrite every jumped-to compound or negative leaf `A` to `A ⊗ 1` and retarget its jumps to the new `1`.
pub fn old_to_new(o: &OldNet) -> (LeafFunction, CutSequent) {
    let g = &o.sequent;
    let forest = g.forest();
    let nv = forest.vertex_count();
    let mut wrapped = vec![false; nv];
    for link in o.links.iter().flatten() {
        if let OldLink::Jump(v) = *link {
            let positive_leaf =
                matches!(forest.vertices[v].kind, VertexKind::Leaf(t) if forest.polarity(t) == Polarity::Positive);
            if !positive_leaf {
                wrapped[v] = true;
            }
        }
    }

    // Subtree extents; the last pre-order vertex of a subtree is its rightmost leaf.
    let mut size = vec![1usize; nv];
    for v in (0..nv).rev() {
        if let Some((a, b)) = forest.vertices[v].children {
            size[v] = 1 + size[a] + size[b];
        }
    }
    // Wrapped vertices whose new `1` follows each leaf, innermost first.
    let mut after_leaf: Vec<Vec<VertexId>> = vec![Vec::new(); forest.leaf_count()];
    for v in (0..nv).rev() {
        if wrapped[v] {
            let VertexKind::Leaf(l) = forest.vertices[v + size[v] - 1].kind else {
                unreachable!("pre-order subtree ends at a leaf")
            };
            after_leaf[l].push(v);
        }
    }
    let mut new_leaf = vec![0; forest.leaf_count()];
    let mut new_one = vec![usize::MAX; nv];
    let mut next = 0;
    for l in 0..forest.leaf_count() {
        new_leaf[l] = next;
        next += 1;
        for &v in &after_leaf[l] {
            new_one[v] = next;
            next += 1;
        }
    }

    let mut built: Vec<Option<Formula>> = vec![None; nv];
    for v in (0..nv).rev() {
        let vertex = &forest.vertices[v];
        let mut f = match vertex.kind {
            VertexKind::Leaf(l) => Formula::Atom(forest.atom(l)),
            VertexKind::Binary(c) => {
                let (a, b) = vertex.children.expect("binary vertex");
                Formula::binary(c, built[a].take().expect("built"), built[b].take().expect("built"))
            }
        };
        if wrapped[v] {
            f = Formula::tensor(f, Formula::one());
        }
        built[v] = Some(f);
    }
    let trees: Vec<Formula> = forest.roots.iter().map(|&r| built[r].take().expect("built")).collect();
    let sequent = CutSequent::new(trees, g.cuts().to_vec()).expect("jumps into cut pairs are rejected");

    let mut targets = vec![None; next];
    for (l, link) in o.links.iter().enumerate() {
        let t = match *link {
            None => continue,
            Some(OldLink::Axiom(p)) => new_leaf[p],
            Some(OldLink::Jump(v)) => match forest.vertices[v].kind {
                VertexKind::Leaf(t) if !wrapped[v] => new_leaf[t],
                _ => new_one[v],
            },
        };
        targets[new_leaf[l]] = Some(t);
    }
    (LeafFunction::from_targets_unchecked(targets), sequent)
}

pub fn check_old_net(o: &OldNet) -> Result<(), Rejection> {
    let (f, g) = old_to_new(o);
    check_fast(&f, &g)
}

/// Brute force on the old net's own graph, with jumps as undirected edges.
pub fn check_old_net_oracle(o: &OldNet) -> bool {
    let forest = o.sequent.forest();
    // Matching on literal axiom links.
    let mut hit = vec![false; forest.leaf_count()];
    let mut balance = vec![0i64; forest.vars.len()];
    for (l, slot) in forest.leaves.iter().enumerate() {
        if let Some(v) = slot.symbol.var() {
            balance[v as usize] += if slot.symbol.polarity().is_positive() { 1 } else { -1 };
            if !slot.symbol.polarity().is_positive() {
                let t = match o.links[l] {
                    Some(OldLink::Axiom(p)) => p,
                    Some(OldLink::Jump(v)) => match forest.vertices[v].kind {
                        VertexKind::Leaf(t) => t,
                        VertexKind::Binary(_) => return false,
                    },
                    None => return false,
                };
                if forest.leaves[t].symbol != slot.symbol.dual() || std::mem::replace(&mut hit[t], true) {
                    return false;
                }
            }
        }
    }
    if balance.iter().any(|b| *b != 0) {
        return false;
    }
    let pg = o.paired_graph();
    let p = pg.pairs.len();
    (0u64..1 << p).all(|bits| {
        let s = Switching(
            (0..p).map(|k| if bits >> k & 1 == 0 { Side::Left } else { Side::Right }).collect(),
        );
        let g = crate::net::apply_switching(&pg, &s);
        graph_defect(g.vertices, &g.edges).is_none()
    })
}
