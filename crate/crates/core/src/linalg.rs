//! Exact rank of finite families of sparse vectors.

use crate::lincomb::{Basis, LinComb};

/// Incremental row echelon form over `Q`.
#[derive(Clone, Debug)]
pub struct Echelon<B: Basis> {
    // pivot key -> row whose smallest key is the pivot, with coefficient 1 there
    rows: std::collections::BTreeMap<B, LinComb<B>>,
}

impl<B: Basis> Default for Echelon<B> {
    fn default() -> Self {
        Echelon { rows: Default::default() }
    }
}

impl<B: Basis> Echelon<B> {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `v`; returns `true` if it was independent of the rows so far.
    pub fn insert(&mut self, v: &LinComb<B>) -> bool {
        let mut v = v.clone();
        loop {
            let Some((lead, c)) = v.iter().next().map(|(k, c)| (k.clone(), c.clone())) else {
                return false;
            };
            match self.rows.get(&lead) {
                Some(row) => v.add_scaled(row, &-&c),
                None => {
                    let inv = c.recip().expect("nonzero leading coefficient");
                    self.rows.insert(lead, v.scale(&inv));
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }
}

pub fn rank<'a, B: Basis + 'a>(vectors: impl IntoIterator<Item = &'a LinComb<B>>) -> usize {
    let mut e = Echelon::new();
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use crate::states::WedgeMonomial;

    fn v(terms: &[(&[u32], i64)]) -> LinComb<WedgeMonomial> {
        LinComb::from_terms(
            terms.iter().map(|(ix, c)| (WedgeMonomial::new(ix.to_vec()).unwrap(), Scalar::from_int(*c))),
        )
    }

    #[test]
    fn ranks() {
        let a = v(&[(&[1], 1), (&[2], 1)]);
        let b = v(&[(&[1], 1), (&[2], -1)]);
        let c = v(&[(&[1], 3), (&[2], 1)]);
        assert_eq!(rank([&a, &b]), 2);
        assert_eq!(rank([&a, &b, &c]), 2);
        assert_eq!(rank([&a, &a.scale(&Scalar::ratio(1, 2))]), 1);
        assert_eq!(rank([&LinComb::<WedgeMonomial>::zero()]), 0);
    }
}
