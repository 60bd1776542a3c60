use std::fmt;

use super::cursor::Cursor;
use crate::ealgebra::Generator;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IndexedOp {
    P,
    Q,
    H,
    L,
}

impl IndexedOp {
    pub const ALL: [IndexedOp; 4] = [IndexedOp::P, IndexedOp::Q, IndexedOp::H, IndexedOp::L];

    pub fn name(self) -> &'static str {
        match self {
            IndexedOp::P => "P",
            IndexedOp::Q => "Q",
            IndexedOp::H => "H",
            IndexedOp::L => "L",
        }
    }

    /// `H[k]` needs `k != 0`; `P`, `Q`, `L` need `k >= 1`.
    pub fn index_ok(self, k: i64) -> bool {
        match self {
            IndexedOp::H => k != 0,
            _ => k >= 1,
        }
    }
}

/// Operator expression tree. Subtraction `a - b` parses as `Sum(a, Neg(b))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    Scalar(Scalar),
    Gen(Generator),
    Indexed(IndexedOp, i64),
    Sum(Box<OpExpr>, Box<OpExpr>),
    Product(Box<OpExpr>, Box<OpExpr>),
    Power(Box<OpExpr>, u32),
    Neg(Box<OpExpr>),
}

impl OpExpr {
    pub fn sum(a: OpExpr, b: OpExpr) -> OpExpr {
        OpExpr::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(a: OpExpr, b: OpExpr) -> OpExpr {
        OpExpr::Product(Box::new(a), Box::new(b))
    }

    pub fn power(a: OpExpr, n: u32) -> OpExpr {
        OpExpr::Power(Box::new(a), n)
    }

    pub fn negated(a: OpExpr) -> OpExpr {
        OpExpr::Neg(Box::new(a))
    }

    /// Visits every `Gen` and `Indexed` leaf.
    pub fn for_each_operator(&self, f: &mut impl FnMut(&OpExpr)) {
        match self {
            OpExpr::Scalar(_) => {}
            OpExpr::Gen(_) | OpExpr::Indexed(..) => f(self),
            OpExpr::Sum(a, b) | OpExpr::Product(a, b) => {
                a.for_each_operator(f);
                b.for_each_operator(f);
            }
            OpExpr::Power(a, _) | OpExpr::Neg(a) => a.for_each_operator(f),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<OpExpr> {
    let mut c = Cursor::new(text);
    let e = expr(&mut c)?;
    c.finish()?;
    Ok(e)
}

fn expr(c: &mut Cursor) -> Result<OpExpr> {
    let mut acc = term(c)?;
    loop {
        if c.eat(b'+') {
            acc = OpExpr::sum(acc, term(c)?);
        } else if c.eat(b'-') {
            acc = OpExpr::sum(acc, OpExpr::negated(term(c)?));
        } else {
            return Ok(acc);
        }
    }
}

fn term(c: &mut Cursor) -> Result<OpExpr> {
    let mut acc = factor(c)?;
    while c.eat(b'*') {
        acc = OpExpr::product(acc, factor(c)?);
    }
    Ok(acc)
}

fn factor(c: &mut Cursor) -> Result<OpExpr> {
    let base = atom(c)?;
    if c.eat(b'^') {
        let col = c.column();
        let n = c.small_uint()?;
        let n = u32::try_from(n).map_err(|_| Error::Syntax { column: col, message: "exponent too large".into() })?;
        return Ok(OpExpr::power(base, n));
    }
    Ok(base)
}

fn atom(c: &mut Cursor) -> Result<OpExpr> {
    if c.starts_rational() {
        return Ok(OpExpr::Scalar(c.rational()?));
    }
    if c.eat(b'(') {
        let e = expr(c)?;
        c.expect(b')')?;
        return Ok(e);
    }
    // "Km1" before "K1" is irrelevant since keywords must end at a non-alphanumeric.
    for g in Generator::ALL {
        if c.eat_keyword(g.name()) {
            return Ok(OpExpr::Gen(g));
        }
    }
    for op in IndexedOp::ALL {
        if c.eat_keyword(op.name()) {
            c.expect(b'[')?;
            let k = c.int()?;
            c.expect(b']')?;
            if !op.index_ok(k) {
                return Err(Error::IndexDomain(format!("{}[{k}]", op.name())));
            }
            return Ok(OpExpr::Indexed(op, k));
        }
    }
    Err(c.error("expected an operator, a number or '('"))
}

// Binding strength: sum 0, product 1, power 2, atom 3. Signed and
// fractional literals are atoms of the grammar.
fn strength(e: &OpExpr) -> u8 {
    match e {
        OpExpr::Sum(..) | OpExpr::Neg(_) => 0,
        OpExpr::Product(..) => 1,
        OpExpr::Power(..) => 2,
        _ => 3,
    }
}

fn paren(f: &mut fmt::Formatter<'_>, e: &OpExpr, min: u8) -> fmt::Result {
    if strength(e) < min {
        write!(f, "({e})")
    } else {
        write!(f, "{e}")
    }
}

/// Prints in a form that parses back to the same tree. A `Neg` that is not
/// the right operand of a `Sum` has no surface syntax of its own and prints
/// as `(0 - x)`.
impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::Scalar(s) => write!(f, "{s}"),
            OpExpr::Gen(g) => write!(f, "{}", g.name()),
            OpExpr::Indexed(op, k) => write!(f, "{}[{k}]", op.name()),
            OpExpr::Sum(a, b) => {
                write!(f, "{a}")?;
                match &**b {
                    OpExpr::Neg(inner) => {
                        write!(f, " - ")?;
                        paren(f, inner, 1)
                    }
                    _ => {
                        write!(f, " + ")?;
                        paren(f, b, 1)
                    }
                }
            }
            OpExpr::Product(a, b) => {
                paren(f, a, 1)?;
                write!(f, "*")?;
                paren(f, b, 2)
            }
            OpExpr::Power(a, n) => {
                paren(f, a, 3)?;
                write!(f, "^{n}")
            }
            OpExpr::Neg(a) => {
                write!(f, "(0 - ")?;
                paren(f, a, 1)?;
                write!(f, ")")
            }
        }
    }
}
