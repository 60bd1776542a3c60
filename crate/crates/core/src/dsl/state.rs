use std::fmt;

use super::cursor::Cursor;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::states::{BosonMonomial, BosonState, FermionState, WedgeMonomial};

/// A parsed state literal such as `"w(1,3) - 1/2*w(2)"` or `"3*y(1:2,3:1)"`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StateLit {
    Fermion(FermionState),
    Boson(BosonState),
}

impl fmt::Display for StateLit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StateLit::Fermion(s) => write!(f, "{s}"),
            StateLit::Boson(s) => write!(f, "{s}"),
        }
    }
}

enum Mono {
    W(WedgeMonomial),
    Y(BosonMonomial),
}

/// `state := term (("+"|"-") term)*`, `term := [rational "*"] monomial`.
pub fn parse_state(text: &str) -> Result<StateLit> {
    let mut c = Cursor::new(text);
    let mut out: Option<StateLit> = None;
    let mut sign = Scalar::one();
    loop {
        let col = c.column();
        let coeff = if c.starts_rational() {
            let r = c.rational()?;
            c.expect(b'*')?;
            r
        } else {
            Scalar::one()
        };
        let coeff = &sign * &coeff;
        let mono = monomial(&mut c)?;
        match (&mut out, mono) {
            (None, Mono::W(m)) => out = Some(StateLit::Fermion(FermionState::term(m, coeff))),
            (None, Mono::Y(m)) => out = Some(StateLit::Boson(BosonState::term(m, coeff))),
            (Some(StateLit::Fermion(s)), Mono::W(m)) => s.add_term(m, coeff),
            (Some(StateLit::Boson(s)), Mono::Y(m)) => s.add_term(m, coeff),
            _ => {
                return Err(Error::Syntax { column: col, message: "cannot mix w(..) and y(..) terms".into() });
            }
        }
        if c.eat(b'+') {
            sign = Scalar::one();
        } else if c.eat(b'-') {
            sign = -Scalar::one();
        } else {
            break;
        }
    }
    c.finish()?;
    Ok(out.expect("at least one term"))
}

fn monomial(c: &mut Cursor) -> Result<Mono> {
    if c.eat_keyword("w") {
        c.expect(b'(')?;
        let mut ix = Vec::new();
        if !c.eat(b')') {
            loop {
                let col = c.column();
                let i = c.small_uint()?;
                ix.push(
                    u32::try_from(i).map_err(|_| Error::Syntax { column: col, message: "index too large".into() })?,
                );
                if c.eat(b')') {
                    break;
                }
                c.expect(b',')?;
            }
        }
        return Ok(Mono::W(WedgeMonomial::new(ix)?));
    }
    if c.eat_keyword("y") {
        c.expect(b'(')?;
        let mut pairs = Vec::new();
        if !c.eat(b')') {
            loop {
                let col = c.column();
                let k = c.small_uint()?;
                c.expect(b':')?;
                let e = c.small_uint()?;
                let k =
                    u32::try_from(k).map_err(|_| Error::Syntax { column: col, message: "index too large".into() })?;
                let e = u32::try_from(e)
                    .map_err(|_| Error::Syntax { column: col, message: "exponent too large".into() })?;
                pairs.push((k, e));
                if c.eat(b')') {
                    break;
                }
                c.expect(b',')?;
            }
        }
        return Ok(Mono::Y(BosonMonomial::new(pairs)?));
    }
    Err(c.error("expected w(..) or y(..)"))
}
