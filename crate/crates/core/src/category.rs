//! Formulas and cut-free proof nets as a category.
//!
//! A morphism `A → B` is a proof net on `[A⊥, B]`. Composition cuts the
//! middle formula and normalises.

use thiserror::Error;

use crate::goi::{Endpoint, GoiMorphism, SignedSet};
use crate::net::{LeafFunction, LeafFunctionError, ProofNet, Rejection};
use crate::rewrite::turbo_normalize;
use crate::syntax::{CutSequent, Formula, Polarity};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum CategoryError {
    #[error("cannot compose: {left} is not {right}")]
    Mismatch { left: Formula, right: Formula },
    #[error(transparent)]
    Edges(#[from] LeafFunctionError),
    #[error("not a proof net: {0}")]
    NotANet(#[from] Rejection),
    #[error("net is not on a two-formula cut-free sequent")]
    Shape,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NetMorphism {
    source: Formula,
    target: Formula,
    net: ProofNet,
}

impl NetMorphism {
    /// Validate `edges`, indexed over the leaves of `[negate(source), target]`.
    pub fn new(
        source: Formula,
        target: Formula,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<NetMorphism, CategoryError> {
        let g = hom_sequent(&source, &target);
        let f = LeafFunction::new(&g, edges)?;
        let net = ProofNet::new(g, f)?;
        Ok(NetMorphism { source, target, net })
    }

    /// View a proof net on `[A⊥, B]` as a morphism `A → B`.
    pub fn from_net(net: ProofNet) -> Result<NetMorphism, CategoryError> {
        let g = net.sequent();
        if g.trees().len() != 2 || !g.cuts().is_empty() {
            return Err(CategoryError::Shape);
        }
        let source = g.trees()[0].negate();
        let target = g.trees()[1].clone();
        Ok(NetMorphism { source, target, net })
    }

    pub fn source(&self) -> &Formula {
        &self.source
    }

    pub fn target(&self) -> &Formula {
        &self.target
    }

    pub fn net(&self) -> &ProofNet {
        &self.net
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.net.function().edges().collect()
    }
}

fn hom_sequent(a: &Formula, b: &Formula) -> CutSequent {
    CutSequent::cut_free(vec![a.negate(), b.clone()]).expect("two formulas")
}

/// Edges between the `i`-th leaves of `A⊥` and `A`, oriented negative to positive.
pub fn identity_net(a: &Formula) -> NetMorphism {
    let g = hom_sequent(a, a);
    let n = a.leaf_count();
    let edges = (0..n).map(|i| if g.polarity(i) == Polarity::Negative { (i, n + i) } else { (n + i, i) });
    let f = LeafFunction::new(&g, edges).expect("identity edges are well-typed");
    NetMorphism { source: a.clone(), target: a.clone(), net: ProofNet::new_unchecked(g, f) }
}

/// Normal form of `f ∪ g` on `[A⊥, B, B⊥, C]` with `B` cut against `B⊥`.
pub fn compose_nets(f: &NetMorphism, g: &NetMorphism) -> Result<NetMorphism, CategoryError> {
    if f.target != g.source {
        return Err(CategoryError::Mismatch { left: f.target.clone(), right: g.source.clone() });
    }
    let seq = CutSequent::new(
        vec![f.source.negate(), f.target.clone(), g.source.negate(), g.target.clone()],
        vec![(1, 2)],
    )
    .expect("middle formulas are complementary");
    let shift = f.net.sequent().leaf_count();
    let edges = f.net.function().edges().chain(g.net.function().edges().map(|(s, t)| (s + shift, t + shift)));
    let union = LeafFunction::new(&seq, edges).expect("union of two leaf functions");
    let (h, normal) = turbo_normalize(&union, &seq).expect("composites of proof nets have no cyclic chains");
    Ok(NetMorphism { source: f.source.clone(), target: g.target.clone(), net: ProofNet::new_unchecked(normal, h) })
}

fn signed_leaves(a: &Formula) -> SignedSet {
    SignedSet::new(a.atoms().iter().map(|x| x.polarity()).collect())
}

/// The edge map over the signed leaves of `A` and `B`.
pub fn underlying_goi(m: &NetMorphism) -> GoiMorphism {
    let n = m.source.leaf_count();
    let at = |l: usize| if l < n { Endpoint::Source(l) } else { Endpoint::Target(l - n) };
    GoiMorphism::new(
        signed_leaves(&m.source),
        signed_leaves(&m.target),
        m.net.function().edges().map(|(s, t)| (at(s), at(t))),
    )
    .expect("negation flips source polarities into place")
}
