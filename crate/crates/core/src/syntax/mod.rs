//! Formulas, cut sequents, switchings, and the ASCII surface syntax.

mod formula;
mod parse;
mod sequent;

pub use formula::{Atom, Connective, Formula, Polarity};
pub use parse::{parse_formula, ParseError};
pub use sequent::{
    CutSequent, Forest, LeafSlot, SequentError, Side, Switching, Switchings, Symbol, Vertex,
    VertexId, VertexKind,
};
