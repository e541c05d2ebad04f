use thiserror::Error;

use super::formula::{Atom, Connective, Formula};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at offset {offset}: {message}")]
pub struct ParseError {
    pub offset: usize,
    pub message: String,
}

/// Parse a formula in the ASCII surface syntax.
///
/// ```text
/// formula := atom | "1" | "bot" | "(" formula "*" formula ")" | "(" formula "@" formula ")"
/// atom    := IDENT | IDENT "^"
/// ```
///
/// Whitespace is ignored between tokens. `^` only applies to variables;
/// duals of compound formulas are obtained with [`Formula::negate`].
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError { offset: self.pos, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        // Explicit stack: deeply nested input must not exhaust the call stack.
        enum Frame {
            Open,
            Op(Formula, Connective),
        }
        let mut stack: Vec<Frame> = Vec::new();
        loop {
            let mut done = match self.peek() {
                Some(b'(') => {
                    self.pos += 1;
                    stack.push(Frame::Open);
                    continue;
                }
                Some(_) => self.atom()?,
                None => return Err(self.error("unexpected end of input")),
            };
            loop {
                match stack.pop() {
                    None => return Ok(done),
                    Some(Frame::Open) => {
                        let op = match self.peek() {
                            Some(b'*') => Connective::Tensor,
                            Some(b'@') => Connective::Par,
                            _ => return Err(self.error("expected '*' or '@'")),
                        };
                        self.pos += 1;
                        stack.push(Frame::Op(done, op));
                        break;
                    }
                    Some(Frame::Op(left, op)) => {
                        if self.peek() != Some(b')') {
                            return Err(self.error("expected ')'"));
                        }
                        self.pos += 1;
                        done = self.no_dual(Formula::binary(op, left, done))?;
                    }
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let start = self.pos;
        let c = self.src[self.pos];
        if c == b'1' {
            self.pos += 1;
            return self.no_dual(Formula::one());
        }
        if !c.is_ascii_alphabetic() {
            return Err(self.error(format!("unexpected character '{}'", c as char)));
        }
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii identifier");
        if name == "bot" {
            return self.no_dual(Formula::bot());
        }
        if self.peek() == Some(b'^') {
            self.pos += 1;
            Ok(Formula::Atom(Atom::DualVar(name.to_string())))
        } else {
            Ok(Formula::Atom(Atom::Var(name.to_string())))
        }
    }

    fn no_dual(&mut self, f: Formula) -> Result<Formula, ParseError> {
        if self.peek() == Some(b'^') {
            Err(self.error("'^' applies only to variables"))
        } else {
            Ok(f)
        }
    }
}
