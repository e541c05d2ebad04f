//! JSON interchange for nets, morphisms, GoI and laminated morphisms, proofs,
//! witnesses and normalisation traces.
//!
//! Formulas are written in the concrete syntax of [`parse_formula`]. Output is
//! compact JSON followed by a newline, with keys in a fixed order, so equal
//! values serialise to identical bytes.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::calculus::{Origin, Proof, Rule};
use crate::category::{CategoryError, NetMorphism};
use crate::checker::{OldNet, OldNetError};
use crate::goi::{Endpoint, GoiError, GoiMorphism, SignedSet};
use crate::lamination::{LamError, LaminatedMorphism};
use crate::net::{Counterexample, Defect, LeafFunction, LeafFunctionError, Rejection};
use crate::rewrite::{CutCase, EliminationStep};
use crate::syntax::{parse_formula, Atom, CutSequent, Formula, ParseError, Polarity, SequentError, Side, Switching};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("formula {index}: {source}")]
    Formula { index: usize, source: ParseError },
    #[error(transparent)]
    Sequent(#[from] SequentError),
    #[error(transparent)]
    Edges(#[from] LeafFunctionError),
    #[error(transparent)]
    OldNet(#[from] OldNetError),
    #[error(transparent)]
    Goi(#[from] GoiError),
    #[error(transparent)]
    Lam(#[from] LamError),
    #[error(transparent)]
    Category(#[from] CategoryError),
    #[error("{0}")]
    Invalid(String),
}

type Pair = [usize; 2];

fn is_empty<T>(v: &[T]) -> bool {
    v.is_empty()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NetJson {
    sequent: Vec<String>,
    #[serde(default)]
    cuts: Vec<Pair>,
    edges: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OldNetJson {
    sequent: Vec<String>,
    #[serde(default, skip_serializing_if = "is_empty")]
    cuts: Vec<Pair>,
    #[serde(default)]
    jumps: Vec<Pair>,
    #[serde(default)]
    axioms: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismJson {
    source: String,
    target: String,
    edges: Vec<Pair>,
}

/// `[tag, index, tag, index]` for one arrow of a GoI map.
type ArrowJson = (String, usize, String, usize);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GoiJson {
    source: Vec<String>,
    target: Vec<String>,
    map: Vec<ArrowJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LamJson {
    source: Vec<String>,
    target: Vec<String>,
    members: Vec<Vec<ArrowJson>>,
}

#[derive(Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct PosJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    at: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    left: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    right: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    layout: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProofJson {
    rule: String,
    #[serde(default, skip_serializing_if = "is_empty")]
    premises: Vec<ProofJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    mark: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pos: Option<PosJson>,
    conclusion: Vec<String>,
    #[serde(default, skip_serializing_if = "is_empty")]
    cuts: Vec<Pair>,
}

fn to_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("plain data serialises");
    s.push('\n');
    s
}

fn formulas(xs: &[String]) -> Result<Vec<Formula>, FormatError> {
    xs.iter()
        .enumerate()
        .map(|(index, s)| parse_formula(s).map_err(|source| FormatError::Formula { index, source }))
        .collect()
}

fn formula(s: &str) -> Result<Formula, FormatError> {
    parse_formula(s).map_err(|source| FormatError::Formula { index: 0, source })
}

fn shown(trees: &[Formula]) -> Vec<String> {
    trees.iter().map(Formula::to_string).collect()
}

fn pairs(v: &[Pair]) -> Vec<(usize, usize)> {
    v.iter().map(|&[a, b]| (a, b)).collect()
}

fn unpairs(v: impl IntoIterator<Item = (usize, usize)>) -> Vec<Pair> {
    v.into_iter().map(|(a, b)| [a, b]).collect()
}

/// A sequent and leaf function; correctness is not checked.
pub fn parse_net(json: &str) -> Result<(CutSequent, LeafFunction), FormatError> {
    let n: NetJson = serde_json::from_str(json)?;
    let g = CutSequent::new(formulas(&n.sequent)?, pairs(&n.cuts))?;
    let f = LeafFunction::new(&g, pairs(&n.edges))?;
    Ok((g, f))
}

pub fn net_to_json(g: &CutSequent, f: &LeafFunction) -> String {
    to_line(&NetJson { sequent: shown(g.trees()), cuts: unpairs(g.cuts().iter().copied()), edges: unpairs(f.edges()) })
}

/// Jumps are `[negative leaf, vertex]`; axioms are leaf pairs.
pub fn parse_old_net(json: &str) -> Result<OldNet, FormatError> {
    let n: OldNetJson = serde_json::from_str(json)?;
    let g = CutSequent::new(formulas(&n.sequent)?, pairs(&n.cuts))?;
    Ok(OldNet::new(g, &pairs(&n.jumps), &pairs(&n.axioms))?)
}

/// A morphism; it must be a proof net.
pub fn parse_morphism(json: &str) -> Result<NetMorphism, FormatError> {
    let m: MorphismJson = serde_json::from_str(json)?;
    Ok(NetMorphism::new(formula(&m.source)?, formula(&m.target)?, pairs(&m.edges))?)
}

pub fn morphism_to_json(m: &NetMorphism) -> String {
    to_line(&MorphismJson { source: m.source().to_string(), target: m.target().to_string(), edges: unpairs(m.edges()) })
}

fn signed_set(xs: &[String]) -> Result<SignedSet, FormatError> {
    xs.iter()
        .map(|x| match x.as_str() {
            "+" => Ok(Polarity::Positive),
            "-" => Ok(Polarity::Negative),
            _ => Err(FormatError::Invalid(format!("sign '{x}' must be \"+\" or \"-\""))),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(SignedSet::new)
}

fn signs_json(s: &SignedSet) -> Vec<String> {
    s.signs().iter().map(|p| p.symbol().to_string()).collect()
}

/// Tags are `s+`, `s-`, `t+`, `t-`: the side, then the sign of the element.
fn endpoint(tag: &str, i: usize, s: &SignedSet, t: &SignedSet) -> Result<Endpoint, FormatError> {
    let (point, set, sign) = match tag {
        "s+" => (Endpoint::Source(i), s, Polarity::Positive),
        "s-" => (Endpoint::Source(i), s, Polarity::Negative),
        "t+" => (Endpoint::Target(i), t, Polarity::Positive),
        "t-" => (Endpoint::Target(i), t, Polarity::Negative),
        _ => return Err(FormatError::Invalid(format!("endpoint tag '{tag}' is not one of s+, s-, t+, t-"))),
    };
    match set.sign(i) {
        Some(actual) if actual == sign => Ok(point),
        Some(_) => Err(FormatError::Invalid(format!("endpoint {tag} {i} has the wrong sign"))),
        None => Err(FormatError::Invalid(format!("endpoint {tag} {i} is out of range"))),
    }
}

fn endpoint_json(e: Endpoint, s: &SignedSet, t: &SignedSet) -> (String, usize) {
    let (side, set, i) = match e {
        Endpoint::Source(i) => ('s', s, i),
        Endpoint::Target(i) => ('t', t, i),
    };
    (format!("{side}{}", set.sign(i).expect("endpoint in range").symbol()), i)
}

fn goi_map(arrows: &[ArrowJson], s: &SignedSet, t: &SignedSet) -> Result<GoiMorphism, FormatError> {
    let map = arrows
        .iter()
        .map(|(a, i, b, j)| Ok((endpoint(a, *i, s, t)?, endpoint(b, *j, s, t)?)))
        .collect::<Result<Vec<_>, FormatError>>()?;
    Ok(GoiMorphism::new(s.clone(), t.clone(), map)?)
}

fn goi_map_json(m: &GoiMorphism) -> Vec<ArrowJson> {
    let (s, t) = (m.source(), m.target());
    m.map()
        .iter()
        .map(|(&a, &b)| {
            let ((ta, i), (tb, j)) = (endpoint_json(a, s, t), endpoint_json(b, s, t));
            (ta, i, tb, j)
        })
        .collect()
}

pub fn parse_goi(json: &str) -> Result<GoiMorphism, FormatError> {
    let m: GoiJson = serde_json::from_str(json)?;
    let (s, t) = (signed_set(&m.source)?, signed_set(&m.target)?);
    goi_map(&m.map, &s, &t)
}

pub fn goi_to_json(m: &GoiMorphism) -> String {
    to_line(&GoiJson { source: signs_json(m.source()), target: signs_json(m.target()), map: goi_map_json(m) })
}

pub fn parse_lam(json: &str) -> Result<LaminatedMorphism, FormatError> {
    let m: LamJson = serde_json::from_str(json)?;
    let (s, t) = (signed_set(&m.source)?, signed_set(&m.target)?);
    let members = m.members.iter().map(|e| goi_map(e, &s, &t)).collect::<Result<Vec<_>, _>>()?;
    Ok(LaminatedMorphism::new(s, t, members)?)
}

pub fn lam_to_json(m: &LaminatedMorphism) -> String {
    to_line(&LamJson {
        source: signs_json(m.source()),
        target: signs_json(m.target()),
        members: m.members().iter().map(goi_map_json).collect(),
    })
}

/// Layout entries are `l<i>`, `r<j>` and `*`.
fn origin(s: &str) -> Result<Origin, FormatError> {
    let bad = || FormatError::Invalid(format!("layout entry '{s}' must be l<i>, r<j> or *"));
    if s == "*" {
        return Ok(Origin::Principal);
    }
    let (side, num) = s.split_at_checked(1).ok_or_else(bad)?;
    let i: usize = num.parse().map_err(|_| bad())?;
    match side {
        "l" => Ok(Origin::Left(i)),
        "r" => Ok(Origin::Right(i)),
        _ => Err(bad()),
    }
}

fn origin_str(o: &Origin) -> String {
    match o {
        Origin::Left(i) => format!("l{i}"),
        Origin::Right(j) => format!("r{j}"),
        Origin::Principal => "*".to_string(),
    }
}

/// A proof as written; [`crate::calculus::check_proof`] validates it.
///
/// Nesting depth is unbounded; the parser grows its stack on the heap.
pub fn parse_proof(json: &str) -> Result<Proof, FormatError> {
    let mut de = serde_json::Deserializer::from_str(json);
    de.disable_recursion_limit();
    let p = ProofJson::deserialize(serde_stacker::Deserializer::new(&mut de))?;
    de.end()?;
    proof_from(p, &mut Vec::new())
}

fn proof_from(p: ProofJson, path: &mut Vec<usize>) -> Result<Proof, FormatError> {
    let at = |what: &str| FormatError::Invalid(format!("{} rule at {path:?} needs pos.{what}", p.rule));
    let conclusion = CutSequent::new(formulas(&p.conclusion)?, pairs(&p.cuts))?;
    let pos = p.pos.unwrap_or_default();
    let rule = match p.rule.as_str() {
        "ax" => {
            let (var, negative_first) = match conclusion.trees().first().and_then(Formula::as_atom) {
                Some(Atom::Var(v)) => (v.clone(), false),
                Some(Atom::DualVar(v)) => (v.clone(), true),
                _ => return Err(FormatError::Invalid(format!("axiom at {path:?} must conclude two literals"))),
            };
            Rule::Axiom { var, negative_first }
        }
        "one" => Rule::One,
        "bot" => Rule::Bot { at: pos.at.ok_or_else(|| at("at"))?, mark: p.mark },
        "par" => Rule::Par { at: pos.at.ok_or_else(|| at("at"))? },
        "tensor" | "cut" => {
            let left_at = pos.left.ok_or_else(|| at("left"))?;
            let right_at = pos.right.ok_or_else(|| at("right"))?;
            let layout =
                pos.layout.as_ref().ok_or_else(|| at("layout"))?.iter().map(|s| origin(s)).collect::<Result<_, _>>()?;
            if p.rule == "tensor" {
                Rule::Tensor { left_at, right_at, layout }
            } else {
                Rule::Cut { left_at, right_at, layout }
            }
        }
        other => return Err(FormatError::Invalid(format!("unknown rule '{other}' at {path:?}"))),
    };
    let mut premises = Vec::with_capacity(p.premises.len());
    for (k, q) in p.premises.into_iter().enumerate() {
        path.push(k);
        premises.push(proof_from(q, path)?);
        path.pop();
    }
    Ok(Proof::from_parts(rule, premises, conclusion))
}

fn proof_json(p: &Proof) -> ProofJson {
    let c = p.conclusion();
    let (mark, pos) = match p.rule() {
        Rule::Axiom { .. } | Rule::One => (None, None),
        Rule::Bot { at, mark } => (*mark, Some(PosJson { at: Some(*at), ..PosJson::default() })),
        Rule::Par { at } => (None, Some(PosJson { at: Some(*at), ..PosJson::default() })),
        Rule::Tensor { left_at, right_at, layout } | Rule::Cut { left_at, right_at, layout } => (
            None,
            Some(PosJson {
                at: None,
                left: Some(*left_at),
                right: Some(*right_at),
                layout: Some(layout.iter().map(origin_str).collect()),
            }),
        ),
    };
    ProofJson {
        rule: p.rule().name().to_string(),
        premises: p.premises().iter().map(proof_json).collect(),
        mark,
        pos,
        conclusion: shown(c.trees()),
        cuts: unpairs(c.cuts().iter().copied()),
    }
}

pub fn proof_to_json(p: &Proof) -> String {
    to_line(&proof_json(p))
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum DefectJson<'a> {
    Cycle(&'a [usize]),
    Disconnected(Pair),
}

#[derive(Serialize)]
struct WitnessJson<'a> {
    switching: String,
    #[serde(flatten)]
    defect: DefectJson<'a>,
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failed: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    variable: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessJson<'a>>,
}

fn switching_str(s: &Switching) -> String {
    s.0.iter().map(|side| if *side == Side::Left { 'L' } else { 'R' }).collect()
}

fn witness_json(c: &Counterexample) -> WitnessJson<'_> {
    WitnessJson {
        switching: switching_str(&c.switching),
        defect: match &c.defect {
            Defect::Cycle(vs) => DefectJson::Cycle(vs),
            Defect::Disconnected(u, v) => DefectJson::Disconnected([*u, *v]),
        },
    }
}

/// `{"valid":true}` or the failing condition with its witness.
pub fn verdict_to_json(result: &Result<(), Rejection>) -> String {
    let v = match result {
        Ok(()) => VerdictJson { valid: true, failed: None, variable: None, witness: None },
        Err(Rejection::Matching { variable }) => {
            VerdictJson { valid: false, failed: Some("matching"), variable: Some(variable), witness: None }
        }
        Err(Rejection::Switching(c)) => {
            VerdictJson { valid: false, failed: Some("switching"), variable: None, witness: Some(witness_json(c)) }
        }
    };
    to_line(&v)
}

#[derive(Serialize)]
struct StepJson {
    cut: usize,
    pair: Pair,
    case: &'static str,
}

fn step_json(s: &EliminationStep) -> StepJson {
    StepJson {
        cut: s.cut,
        pair: [s.pair.0, s.pair.1],
        case: match s.case {
            CutCase::Atom => "atom",
            CutCase::Compound => "compound",
        },
    }
}

pub fn trace_to_json(steps: &[EliminationStep]) -> String {
    to_line(&steps.iter().map(step_json).collect::<Vec<_>>())
}

/// One elimination step as a single JSON line.
pub fn step_to_json(step: &EliminationStep) -> String {
    to_line(&step_json(step))
}
