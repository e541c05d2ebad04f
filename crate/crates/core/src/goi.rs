//! Finite signed sets and partial leaf functions composed by path tracing.
//!
//! A morphism `S → T` maps `S⁺ + T⁻` to `S⁻ + T⁺`. [`Endpoint`] tags an
//! element with the object it belongs to; the polarity of the element then
//! decides whether it may occur in the domain or the codomain.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::syntax::Polarity;

/// A finite signed set; elements are the indices `0..len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct SignedSet {
    signs: Vec<Polarity>,
}

impl SignedSet {
    pub fn new(signs: Vec<Polarity>) -> SignedSet {
        SignedSet { signs }
    }

    pub fn signs(&self) -> &[Polarity] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn sign(&self, i: usize) -> Option<Polarity> {
        self.signs.get(i).copied()
    }
}

impl fmt::Display for SignedSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.signs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(s.symbol())?;
        }
        f.write_str("]")
    }
}

/// An element of the source or of the target.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Endpoint {
    Source(usize),
    Target(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GoiError {
    #[error("{0:?} does not exist")]
    OutOfRange(Endpoint),
    #[error("{0:?} cannot be in the domain: it must be a positive source or a negative target")]
    BadDomain(Endpoint),
    #[error("{0:?} cannot be in the codomain: it must be a negative source or a positive target")]
    BadCodomain(Endpoint),
    #[error("{0:?} is mapped twice")]
    Duplicate(Endpoint),
    #[error("cannot compose: target {left} differs from source {right}")]
    Mismatch { left: SignedSet, right: SignedSet },
}

/// Partial function from `S⁺ + T⁻` to `S⁻ + T⁺`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GoiMorphism {
    source: SignedSet,
    target: SignedSet,
    map: BTreeMap<Endpoint, Endpoint>,
}

impl GoiMorphism {
    pub fn new(
        source: SignedSet,
        target: SignedSet,
        pairs: impl IntoIterator<Item = (Endpoint, Endpoint)>,
    ) -> Result<GoiMorphism, GoiError> {
        let mut m = GoiMorphism { source, target, map: BTreeMap::new() };
        for (x, y) in pairs {
            if m.sign(x)?.is_positive() != matches!(x, Endpoint::Source(_)) {
                return Err(GoiError::BadDomain(x));
            }
            if m.sign(y)?.is_positive() != matches!(y, Endpoint::Target(_)) {
                return Err(GoiError::BadCodomain(y));
            }
            if m.map.insert(x, y).is_some() {
                return Err(GoiError::Duplicate(x));
            }
        }
        Ok(m)
    }

    pub fn empty(source: SignedSet, target: SignedSet) -> GoiMorphism {
        GoiMorphism { source, target, map: BTreeMap::new() }
    }

    fn sign(&self, e: Endpoint) -> Result<Polarity, GoiError> {
        match e {
            Endpoint::Source(i) => self.source.sign(i),
            Endpoint::Target(j) => self.target.sign(j),
        }
        .ok_or(GoiError::OutOfRange(e))
    }

    pub fn source(&self) -> &SignedSet {
        &self.source
    }

    pub fn target(&self) -> &SignedSet {
        &self.target
    }

    pub fn map(&self) -> &BTreeMap<Endpoint, Endpoint> {
        &self.map
    }

    pub fn get(&self, e: Endpoint) -> Option<Endpoint> {
        self.map.get(&e).copied()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> BTreeSet<Endpoint> {
        self.map.keys().copied().collect()
    }

    pub fn image(&self) -> BTreeSet<Endpoint> {
        self.map.values().copied().collect()
    }

    /// Whether every edge of `self` is an edge of `other`.
    pub fn is_contained_in(&self, other: &GoiMorphism) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.map.iter().all(|(x, y)| other.map.get(x) == Some(y))
    }

    /// All `2^len` restrictions, in lexicographic order of the kept edges.
    pub fn submaps(&self) -> impl Iterator<Item = GoiMorphism> + '_ {
        let edges: Vec<(Endpoint, Endpoint)> = self.map.iter().map(|(x, y)| (*x, *y)).collect();
        assert!(edges.len() < 64, "too many edges to enumerate submaps");
        (0u64..1 << edges.len()).map(move |bits| GoiMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            map: edges.iter().enumerate().filter(|(k, _)| bits >> k & 1 == 1).map(|(_, e)| *e).collect(),
        })
    }
}

fn targets_of(set: &BTreeSet<Endpoint>) -> BTreeSet<usize> {
    set.iter().filter_map(|e| if let Endpoint::Target(j) = e { Some(*j) } else { None }).collect()
}

fn sources_of(set: &BTreeSet<Endpoint>) -> BTreeSet<usize> {
    set.iter().filter_map(|e| if let Endpoint::Source(j) = e { Some(*j) } else { None }).collect()
}

fn check_composable(f: &GoiMorphism, g: &GoiMorphism) -> Result<(), GoiError> {
    if f.target != g.source {
        return Err(GoiError::Mismatch { left: f.target.clone(), right: g.source.clone() });
    }
    Ok(())
}

/// Path composition; a path that is undefined or revisits a middle element yields no edge.
pub fn compose_goi(f: &GoiMorphism, g: &GoiMorphism) -> Result<GoiMorphism, GoiError> {
    check_composable(f, g)?;
    let mut map = BTreeMap::new();
    let starts = f
        .map
        .keys()
        .filter(|e| matches!(e, Endpoint::Source(_)))
        .map(|e| (true, *e))
        .chain(g.map.keys().filter(|e| matches!(e, Endpoint::Target(_))).map(|e| (false, *e)));
    let mut seen = vec![false; f.target.len()];
    let mut touched = Vec::new();
    for (in_f, start) in starts {
        // `in_f`: the next edge is taken in f, else in g.
        let (mut in_f, mut at) = (in_f, start);
        let end = loop {
            let next = if in_f { f.get(at) } else { g.get(at) };
            match (in_f, next) {
                (_, None) => break None,
                (true, Some(Endpoint::Source(s))) => break Some(Endpoint::Source(s)),
                (false, Some(Endpoint::Target(u))) => break Some(Endpoint::Target(u)),
                (true, Some(Endpoint::Target(t))) | (false, Some(Endpoint::Source(t))) => {
                    if std::mem::replace(&mut seen[t], true) {
                        break None;
                    }
                    touched.push(t);
                    // Cross the middle object into the other morphism.
                    at = if in_f { Endpoint::Source(t) } else { Endpoint::Target(t) };
                    in_f = !in_f;
                }
            }
        };
        for t in touched.drain(..) {
            seen[t] = false;
        }
        if let Some(end) = end {
            map.insert(start, end);
        }
    }
    Ok(GoiMorphism { source: f.source.clone(), target: g.target.clone(), map })
}

/// Source copy of a positive element to its target copy; target copy of a negative one back.
pub fn identity_goi(s: &SignedSet) -> GoiMorphism {
    let map = s
        .signs
        .iter()
        .enumerate()
        .map(|(i, p)| match p {
            Polarity::Positive => (Endpoint::Source(i), Endpoint::Target(i)),
            Polarity::Negative => (Endpoint::Target(i), Endpoint::Source(i)),
        })
        .collect();
    GoiMorphism { source: s.clone(), target: s.clone(), map }
}

/// Every middle element has an edge in iff it has an edge out, across `f ∪ g`.
pub fn synchronises(f: &GoiMorphism, g: &GoiMorphism) -> Result<bool, GoiError> {
    check_composable(f, g)?;
    Ok(targets_of(&f.image()) == sources_of(&g.domain()) && targets_of(&f.domain()) == sources_of(&g.image()))
}

/// `(dom f;g) ∩ S = (dom f) ∩ S` and `(im f;g) ∩ U = (im g) ∩ U`.
pub fn stable_domain_image(f: &GoiMorphism, g: &GoiMorphism) -> Result<bool, GoiError> {
    let fg = compose_goi(f, g)?;
    Ok(sources_of(&fg.domain()) == sources_of(&f.domain())
        && targets_of(&fg.image()) == targets_of(&g.image()))
}
