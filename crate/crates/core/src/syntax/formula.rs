use std::fmt;

/// Sign of a leaf. Variables and `1` are positive, their duals and `⊥` negative.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flip(self) -> Polarity {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Polarity::Positive
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Polarity::Positive => "+",
            Polarity::Negative => "-",
        }
    }
}

/// A literal or a unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Var(String),
    DualVar(String),
    One,
    Bot,
}

impl Atom {
    pub fn polarity(&self) -> Polarity {
        match self {
            Atom::Var(_) | Atom::One => Polarity::Positive,
            Atom::DualVar(_) | Atom::Bot => Polarity::Negative,
        }
    }

    pub fn dual(&self) -> Atom {
        match self {
            Atom::Var(p) => Atom::DualVar(p.clone()),
            Atom::DualVar(p) => Atom::Var(p.clone()),
            Atom::One => Atom::Bot,
            Atom::Bot => Atom::One,
        }
    }

    /// Variable name for literals, `None` for units.
    pub fn var(&self) -> Option<&str> {
        match self {
            Atom::Var(p) | Atom::DualVar(p) => Some(p),
            Atom::One | Atom::Bot => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, Atom::One | Atom::Bot)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::Var(p) => write!(f, "{p}"),
            Atom::DualVar(p) => write!(f, "{p}^"),
            Atom::One => f.write_str("1"),
            Atom::Bot => f.write_str("bot"),
        }
    }
}

/// Binary multiplicative connective.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    Tensor,
    Par,
}

impl Connective {
    pub fn dual(self) -> Connective {
        match self {
            Connective::Tensor => Connective::Par,
            Connective::Par => Connective::Tensor,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::Tensor => "*",
            Connective::Par => "@",
        }
    }
}

/// An MLL formula, identified with its parse tree.
///
/// Printing uses the ASCII surface syntax accepted by [`parse_formula`]:
/// `*` for tensor, `@` for par, `^` for the dual of a variable, `1` and
/// `bot` for the units. Every binary node is parenthesised.
///
/// [`parse_formula`]: crate::syntax::parse_formula
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(Atom),
    Tensor(Box<Formula>, Box<Formula>),
    Par(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Atom(Atom::Var(name.to_string()))
    }

    pub fn dual_var(name: &str) -> Formula {
        Formula::Atom(Atom::DualVar(name.to_string()))
    }

    pub fn one() -> Formula {
        Formula::Atom(Atom::One)
    }

    pub fn bot() -> Formula {
        Formula::Atom(Atom::Bot)
    }

    pub fn tensor(a: Formula, b: Formula) -> Formula {
        Formula::Tensor(Box::new(a), Box::new(b))
    }

    pub fn par(a: Formula, b: Formula) -> Formula {
        Formula::Par(Box::new(a), Box::new(b))
    }

    pub fn binary(c: Connective, a: Formula, b: Formula) -> Formula {
        match c {
            Connective::Tensor => Formula::tensor(a, b),
            Connective::Par => Formula::par(a, b),
        }
    }

    /// Linear negation: de Morgan on connectives, duality on atoms.
    pub fn negate(&self) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(a.dual()),
            Formula::Tensor(a, b) => Formula::par(a.negate(), b.negate()),
            Formula::Par(a, b) => Formula::tensor(a.negate(), b.negate()),
        }
    }

    pub fn connective(&self) -> Option<Connective> {
        match self {
            Formula::Atom(_) => None,
            Formula::Tensor(..) => Some(Connective::Tensor),
            Formula::Par(..) => Some(Connective::Par),
        }
    }

    pub fn as_atom(&self) -> Option<&Atom> {
        match self {
            Formula::Atom(a) => Some(a),
            _ => None,
        }
    }

    pub fn children(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Atom(_) => None,
            Formula::Tensor(a, b) | Formula::Par(a, b) => Some((a, b)),
        }
    }

    /// Atoms at the leaves, left to right.
    pub fn atoms(&self) -> Vec<&Atom> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Atom(a) => out.push(a),
                Formula::Tensor(a, b) | Formula::Par(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
            }
        }
        out
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 1,
            Formula::Tensor(a, b) | Formula::Par(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// Number of parse-tree vertices.
    pub fn size(&self) -> usize {
        2 * self.leaf_count() - 1
    }

    pub fn par_count(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Tensor(a, b) => a.par_count() + b.par_count(),
            Formula::Par(a, b) => 1 + a.par_count() + b.par_count(),
        }
    }
}

impl From<Atom> for Formula {
    fn from(a: Atom) -> Formula {
        Formula::Atom(a)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Tensor(a, b) => write!(f, "({a} * {b})"),
            Formula::Par(a, b) => write!(f, "({a} @ {b})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    #[test]
    fn negate_bot_is_one() {
        assert_eq!(Formula::bot().negate(), Formula::one());
    }

    #[test]
    fn negate_example_sequent_formula() {
        let f = parse_formula("(P @ (P^ * 1))").unwrap();
        let expected = Formula::tensor(
            Formula::dual_var("P"),
            Formula::par(Formula::var("P"), Formula::bot()),
        );
        assert_eq!(f.negate(), expected);
    }

    #[test]
    fn atoms_left_to_right() {
        let f = parse_formula("((a * b^) @ bot)").unwrap();
        let atoms: Vec<String> = f.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(atoms, ["a", "b^", "bot"]);
        assert_eq!(f.size(), 5);
        assert_eq!(f.par_count(), 1);
    }
}
