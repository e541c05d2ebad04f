//! Laminated leaf functions: sets of GoI morphisms composed pairwise over synchronising pairs.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::goi::{compose_goi, identity_goi, synchronises, Endpoint, GoiError, GoiMorphism, SignedSet};

/// Largest map accepted by [`embed`]; its image has `2^n` members.
pub const MAX_EMBED_EDGES: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum LamError {
    #[error("member {index} has endpoints {source_set} → {target_set}, not those of the laminated morphism")]
    Endpoints { index: usize, source_set: SignedSet, target_set: SignedSet },
    #[error("downward closure of a map with {0} edges is too large to enumerate")]
    TooLarge(usize),
    #[error(transparent)]
    Goi(#[from] GoiError),
}

/// A finite set of leaf functions `S → T`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaminatedMorphism {
    source: SignedSet,
    target: SignedSet,
    members: BTreeSet<GoiMorphism>,
}

impl LaminatedMorphism {
    pub fn new(
        source: SignedSet,
        target: SignedSet,
        members: impl IntoIterator<Item = GoiMorphism>,
    ) -> Result<LaminatedMorphism, LamError> {
        let mut set = BTreeSet::new();
        for (index, m) in members.into_iter().enumerate() {
            if *m.source() != source || *m.target() != target {
                return Err(LamError::Endpoints {
                    index,
                    source_set: m.source().clone(),
                    target_set: m.target().clone(),
                });
            }
            set.insert(m);
        }
        Ok(LaminatedMorphism { source, target, members: set })
    }

    pub fn source(&self) -> &SignedSet {
        &self.source
    }

    pub fn target(&self) -> &SignedSet {
        &self.target
    }

    pub fn members(&self) -> &BTreeSet<GoiMorphism> {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// `{ f;g | f ∈ l, g ∈ m, f ⋔ g }`.
pub fn compose_lam(l: &LaminatedMorphism, m: &LaminatedMorphism) -> Result<LaminatedMorphism, LamError> {
    if l.target != m.source {
        return Err(GoiError::Mismatch { left: l.target.clone(), right: m.source.clone() }.into());
    }
    let mut members = BTreeSet::new();
    for f in &l.members {
        for g in &m.members {
            if synchronises(f, g)? {
                members.insert(compose_goi(f, g)?);
            }
        }
    }
    Ok(LaminatedMorphism { source: l.source.clone(), target: m.target.clone(), members })
}

/// Every restriction of the identity leaf function.
pub fn identity_lam(s: &SignedSet) -> LaminatedMorphism {
    let id = identity_goi(s);
    LaminatedMorphism { source: s.clone(), target: s.clone(), members: id.submaps().collect() }
}

/// Downward closure of `f`.
pub fn embed(f: &GoiMorphism) -> Result<LaminatedMorphism, LamError> {
    if f.len() > MAX_EMBED_EDGES {
        return Err(LamError::TooLarge(f.len()));
    }
    Ok(LaminatedMorphism { source: f.source().clone(), target: f.target().clone(), members: f.submaps().collect() })
}

/// Depth-`k` truncation of the infinite chain on which synchronised composition fails to associate.
///
/// Returns `f : S → T`, `g : T → U`, `h : U → V` with `S`, `T`, `V` positive
/// singletons and `U = [+,−]^k`. `f` sends `s` to `t`; `g` sends `t` to `u₁`
/// and `uᵢ'` to `uᵢ₊₁`; `h` sends `uᵢ` to `uᵢ'`. The composite `g;h` is
/// empty, and `g`, `h` do not synchronise at the last `uₖ'`.
pub fn truncated_chain(k: usize) -> (GoiMorphism, GoiMorphism, GoiMorphism) {
    use crate::syntax::Polarity::{Negative, Positive};
    use Endpoint::{Source, Target};
    assert!(k >= 1, "truncation depth must be positive");
    let one = SignedSet::new(vec![Positive]);
    let u = SignedSet::new((0..k).flat_map(|_| [Positive, Negative]).collect());
    let f = GoiMorphism::new(one.clone(), one.clone(), [(Source(0), Target(0))]).expect("well-signed");
    let g = GoiMorphism::new(
        one.clone(),
        u.clone(),
        std::iter::once((Source(0), Target(0))).chain((0..k - 1).map(|i| (Target(2 * i + 1), Target(2 * i + 2)))),
    )
    .expect("well-signed");
    let h = GoiMorphism::new(u, one, (0..k).map(|i| (Source(2 * i), Source(2 * i + 1)))).expect("well-signed");
    (f, g, h)
}
