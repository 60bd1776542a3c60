use std::fmt;
use std::str::FromStr;

use super::expr::{IndexedOp, OpExpr};
use super::state::StateLit;
use crate::boson;
use crate::correspondence::{bosonize, fermionize, GradedElement, LimitBasis, StableLimit};
use crate::ealgebra::{self, AlgElement};
use crate::error::{Error, Result};
use crate::fermion;
use crate::lincomb::{Basis, LinComb};
use crate::modules::{BosonSpace, EModule, FermionSpace, HModule};
use crate::states::{BosonMonomial, BosonState, FermionState, WedgeMonomial};

/// Where an expression is evaluated. `P`/`Q` act on the fermion space only,
/// `H`/`L` on the boson space and the stable limit of the fermion space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Fermion,
    Boson,
    Limit,
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fermion" => Ok(Space::Fermion),
            "boson" => Ok(Space::Boson),
            "limit" => Ok(Space::Limit),
            _ => Err(Error::Domain(format!("unknown space '{s}' (fermion, boson, limit)"))),
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Space::Fermion => "fermion",
            Space::Boson => "boson",
            Space::Limit => "limit",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpaceState {
    Fermion(FermionState),
    Boson(BosonState),
    Limit(LinComb<LimitBasis<WedgeMonomial>>),
    Graded(LinComb<GradedElement<BosonMonomial>>),
}

impl fmt::Display for SpaceState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceState::Fermion(s) => write!(f, "{s}"),
            SpaceState::Boson(s) => write!(f, "{s}"),
            SpaceState::Limit(s) => write!(f, "{s}"),
            SpaceState::Graded(s) => write!(f, "{s}"),
        }
    }
}

fn leaf_name(e: &OpExpr) -> String {
    match e {
        OpExpr::Gen(g) => g.name().to_string(),
        OpExpr::Indexed(op, k) => format!("{}[{k}]", op.name()),
        _ => e.to_string(),
    }
}

fn check_operators(e: &OpExpr, space: &str, allowed: impl Fn(&OpExpr) -> bool) -> Result<()> {
    let mut bad = None;
    e.for_each_operator(&mut |leaf| {
        if bad.is_none() && !allowed(leaf) {
            bad = Some(leaf_name(leaf));
        }
    });
    match bad {
        Some(op) => Err(Error::Domain(format!("operator {op} is not defined on the {space} space"))),
        None => Ok(()),
    }
}

type Leaf<'a, B> = dyn Fn(&OpExpr, &LinComb<B>) -> Result<LinComb<B>> + 'a;

/// Evaluates the tree with `leaf` giving the action of each operator symbol.
fn eval_tree<B: Basis>(e: &OpExpr, s: &LinComb<B>, leaf: &Leaf<B>) -> Result<LinComb<B>> {
    Ok(match e {
        OpExpr::Scalar(c) => s.scale(c),
        OpExpr::Gen(_) | OpExpr::Indexed(..) => leaf(e, s)?,
        OpExpr::Sum(a, b) => eval_tree(a, s, leaf)? + eval_tree(b, s, leaf)?,
        OpExpr::Product(a, b) => {
            let inner = eval_tree(b, s, leaf)?;
            eval_tree(a, &inner, leaf)?
        }
        OpExpr::Power(a, n) => {
            let mut cur = s.clone();
            for _ in 0..*n {
                cur = eval_tree(a, &cur, leaf)?;
            }
            cur
        }
        OpExpr::Neg(a) => -eval_tree(a, s, leaf)?,
    })
}

fn mismatch(space: Space, lit: &StateLit) -> Error {
    Error::Domain(format!("state {lit} does not belong to the {space} space"))
}

/// Evaluates `e` on `state` in `space`.
pub fn eval_on(space: Space, e: &OpExpr, state: &StateLit) -> Result<SpaceState> {
    match (space, state) {
        (Space::Fermion, StateLit::Fermion(s)) => {
            check_operators(e, "fermion", |x| !matches!(x, OpExpr::Indexed(IndexedOp::H | IndexedOp::L, _)))?;
            let out = eval_tree(e, s, &|x, s| match x {
                OpExpr::Gen(g) => Ok(fermion::act_generator(*g, s)),
                OpExpr::Indexed(IndexedOp::P, k) => fermion::act_p(*k, s),
                OpExpr::Indexed(IndexedOp::Q, k) => fermion::act_q(*k, s),
                _ => unreachable!("filtered above"),
            })?;
            Ok(SpaceState::Fermion(out))
        }
        (Space::Boson, StateLit::Boson(s)) => {
            check_operators(e, "boson", |x| matches!(x, OpExpr::Indexed(IndexedOp::H | IndexedOp::L, _)))?;
            let out = eval_tree(e, s, &|x, s| match x {
                OpExpr::Indexed(IndexedOp::H, k) => boson::act_h(*k, s),
                OpExpr::Indexed(IndexedOp::L, k) => boson::act_l(*k, s),
                _ => unreachable!("filtered above"),
            })?;
            Ok(SpaceState::Boson(out))
        }
        (Space::Limit, StateLit::Fermion(s)) => {
            check_operators(e, "limit", |x| matches!(x, OpExpr::Indexed(IndexedOp::H | IndexedOp::L, _)))?;
            let lim = bosonize(FermionSpace);
            let start = to_limit(&lim, s)?;
            let out = eval_tree(e, &start, &|x, s| match x {
                OpExpr::Indexed(IndexedOp::H, k) => lim.h_state(*k, s),
                OpExpr::Indexed(IndexedOp::L, k) => lim.l_state(*k, s),
                _ => unreachable!("filtered above"),
            })?;
            Ok(SpaceState::Limit(out))
        }
        (space, lit) => Err(mismatch(space, lit)),
    }
}

/// Each wedge monomial of length `n` taken as a class at level `n`.
pub fn to_limit(lim: &StableLimit<FermionSpace>, s: &FermionState) -> Result<LinComb<LimitBasis<WedgeMonomial>>> {
    lim.reduce_state(s)
}

/// Evaluates `K1, Km1, E, F` words on `state` placed at `level` of the
/// fermionized boson space.
pub fn eval_fermionized(e: &OpExpr, level: usize, state: &StateLit) -> Result<SpaceState> {
    let StateLit::Boson(s) = state else {
        return Err(Error::Domain(format!("fermionize expects a y(..) state, got {state}")));
    };
    check_operators(e, "fermionized boson", |x| matches!(x, OpExpr::Gen(_)))?;
    let fb = fermionize(BosonSpace);
    let start = fb.graded(level, s)?;
    let out = eval_tree(e, &start, &|x, s| match x {
        OpExpr::Gen(g) => fb.act_state(*g, s),
        _ => unreachable!("filtered above"),
    })?;
    Ok(SpaceState::Graded(out))
}

/// The element of the shift algebra denoted by `e`, with `P[i]`, `Q[i]`
/// expanded through their defining recursion. `H` and `L` have no image.
pub fn to_algebra(e: &OpExpr) -> Result<AlgElement> {
    Ok(match e {
        OpExpr::Scalar(c) => ealgebra::one().scale(c),
        OpExpr::Gen(g) => ealgebra::word(&[*g]),
        OpExpr::Indexed(IndexedOp::P, k) => ealgebra::build_p(*k)?.into_element(),
        OpExpr::Indexed(IndexedOp::Q, k) => ealgebra::build_q(*k)?.into_element(),
        OpExpr::Indexed(op, k) => {
            return Err(Error::Domain(format!("{}[{k}] is not an element of the shift algebra", op.name())))
        }
        OpExpr::Sum(a, b) => to_algebra(a)? + to_algebra(b)?,
        OpExpr::Product(a, b) => ealgebra::normalize(&ealgebra::mul(&to_algebra(a)?, &to_algebra(b)?)).into_element(),
        OpExpr::Power(a, n) => {
            let base = to_algebra(a)?;
            let mut acc = ealgebra::one();
            for _ in 0..*n {
                acc = ealgebra::normalize(&ealgebra::mul(&acc, &base)).into_element();
            }
            acc
        }
        OpExpr::Neg(a) => -to_algebra(a)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::{parse_expr, parse_state};

    fn run(space: Space, e: &str, s: &str) -> Result<String> {
        Ok(eval_on(space, &parse_expr(e)?, &parse_state(s)?)?.to_string())
    }

    #[test]
    fn examples() {
        assert_eq!(run(Space::Fermion, "F*E", "w(2,7)").unwrap(), "w(2,7)");
        assert_eq!(run(Space::Boson, "L[1]*H[1]", "y(2:3)").unwrap(), "y(2:3)");
        assert!(matches!(run(Space::Fermion, "H[1]", "w(1)"), Err(Error::Domain(_))));
        assert!(matches!(run(Space::Boson, "E", "y(1:1)"), Err(Error::Domain(_))));
        assert!(matches!(run(Space::Boson, "H[1]", "w(1)"), Err(Error::Domain(_))));
        assert_eq!(run(Space::Limit, "H[-1]", "w(3)").unwrap(), "-2*w(2)");
        assert_eq!(run(Space::Fermion, "P[2]", "w(1,3)").unwrap(), "-w(1,2,3)");
    }

    #[test]
    fn composition_order() {
        let a = run(Space::Fermion, "E*Km1", "w(2,5)").unwrap();
        let km = run(Space::Fermion, "Km1", "w(2,5)").unwrap();
        let b = run(Space::Fermion, "E", &km).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, "w(1,2,5)");
    }

    #[test]
    fn algebra_image() {
        let e = parse_expr("E*F").unwrap();
        assert_eq!(to_algebra(&e).unwrap().to_string(), "1 - K1*Km1");
        assert!(to_algebra(&parse_expr("H[1]").unwrap()).is_err());
    }

    #[test]
    fn fermionized() {
        let e = parse_expr("F").unwrap();
        let s = parse_state("y(1:2)").unwrap();
        assert_eq!(eval_fermionized(&e, 2, &s).unwrap().to_string(), "(1, y(1:2))");
        assert!(eval_fermionized(&e, 1, &parse_state("y(2:1)").unwrap()).is_err());
    }
}
