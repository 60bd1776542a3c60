//! Finite formal linear combinations over an ordered basis.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use crate::error::Result;
use crate::scalar::Scalar;

/// A basis label that can appear in a [`LinComb`].
///
/// The `Ord` implementation fixes the canonical printing order.
pub trait Basis: Ord + Clone + fmt::Debug + fmt::Display {
    /// The multiplicative unit prints as its bare coefficient (`2`, not `2*1`).
    fn is_unit(&self) -> bool {
        false
    }
}

/// Sparse map from basis labels to nonzero rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<B: Basis> {
    terms: BTreeMap<B, Scalar>,
}

impl<B: Basis> Default for LinComb<B> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<B: Basis> LinComb<B> {
    pub fn zero() -> Self {
        LinComb { terms: BTreeMap::new() }
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, Scalar::one())
    }

    pub fn term(b: B, c: Scalar) -> Self {
        let mut out = Self::zero();
        out.add_term(b, c);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (B, Scalar)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, b: &B) -> Scalar {
        self.terms.get(b).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, Scalar> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, B, Scalar> {
        self.terms.keys()
    }

    /// The single `(basis, coefficient)` pair, if there is exactly one term.
    pub fn as_single(&self) -> Option<(&B, &Scalar)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn add_term(&mut self, b: B, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &LinComb<B>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb { terms: self.terms.iter().map(|(b, v)| (b.clone(), v * c)).collect() }
    }

    /// Linear extension of a map defined on basis elements.
    pub fn map_linear<C: Basis>(&self, mut f: impl FnMut(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    pub fn try_map_linear<C: Basis>(&self, mut f: impl FnMut(&B) -> Result<LinComb<C>>) -> Result<LinComb<C>> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b)?, c);
        }
        Ok(out)
    }

    /// Relabel basis elements one to one (or many to one); coefficients merge.
    pub fn map_basis<C: Basis>(&self, mut f: impl FnMut(&B) -> Option<(C, Scalar)>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in &self.terms {
            if let Some((nb, s)) = f(b) {
                out.add_term(nb, c * &s);
            }
        }
        out
    }
}

impl<B: Basis> IntoIterator for LinComb<B> {
    type Item = (B, Scalar);
    type IntoIter = btree_map::IntoIter<B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, B: Basis> IntoIterator for &'a LinComb<B> {
    type Item = (&'a B, &'a Scalar);
    type IntoIter = btree_map::Iter<'a, B, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Basis> From<B> for LinComb<B> {
    fn from(b: B) -> Self {
        LinComb::basis(b)
    }
}

impl<B: Basis> Add<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn add(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl<B: Basis> Add for LinComb<B> {
    type Output = LinComb<B>;
    fn add(mut self, rhs: LinComb<B>) -> LinComb<B> {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
        self
    }
}

impl<B: Basis> Sub<&LinComb<B>> for &LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl<B: Basis> Sub for LinComb<B> {
    type Output = LinComb<B>;
    fn sub(self, rhs: LinComb<B>) -> LinComb<B> {
        &self - &rhs
    }
}

impl<B: Basis> Neg for LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&Scalar::from_int(-1))
    }
}

impl<B: Basis> Neg for &LinComb<B> {
    type Output = LinComb<B>;
    fn neg(self) -> LinComb<B> {
        self.scale(&Scalar::from_int(-1))
    }
}

/// Writes `c*m` with the `1*` suppressed; `c` is assumed nonnegative.
fn write_term<B: Basis>(f: &mut fmt::Formatter<'_>, b: &B, c: &Scalar) -> fmt::Result {
    if b.is_unit() {
        write!(f, "{c}")
    } else if c.is_one() {
        write!(f, "{b}")
    } else {
        write!(f, "{c}*{b}")
    }
}

impl<B: Basis> fmt::Display for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (b, c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            write_term(f, b, &c.abs())?;
        }
        Ok(())
    }
}

impl<B: Basis> fmt::Debug for LinComb<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
