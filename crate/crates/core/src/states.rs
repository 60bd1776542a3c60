//! Basis monomials of the Fermionic and Bosonic Fock spaces, and partitions.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::lincomb::{Basis, LinComb};

/// `x_{i_1} ∧ ... ∧ x_{i_k}` with `0 < i_1 < ... < i_k`. The empty wedge is the vacuum.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct WedgeMonomial(Vec<u32>);

impl WedgeMonomial {
    pub fn new(indices: Vec<u32>) -> Result<Self> {
        if indices.first() == Some(&0) {
            return Err(Error::InvalidMonomial("wedge indices must be positive".into()));
        }
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidMonomial(format!("wedge indices must be strictly increasing, got {indices:?}")));
        }
        Ok(WedgeMonomial(indices))
    }

    pub fn vacuum() -> Self {
        WedgeMonomial(Vec::new())
    }

    /// Caller guarantees the invariant.
    pub(crate) fn from_raw(indices: Vec<u32>) -> Self {
        debug_assert!(indices.first() != Some(&0));
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        WedgeMonomial(indices)
    }

    pub fn indices(&self) -> &[u32] {
        &self.0
    }

    /// Number of wedge factors, the grading level.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(n, Σ i_j − n(n+1)/2)`.
    pub fn degrees(&self) -> (usize, u64) {
        let n = self.0.len() as u64;
        let sum: u64 = self.0.iter().map(|&i| i as u64).sum();
        (self.0.len(), sum - n * (n + 1) / 2)
    }

    pub fn t_degree(&self) -> u64 {
        self.degrees().1
    }

    /// All monomials of length `n` and t-degree `d`, in canonical order.
    pub fn enumerate(n: usize, d: u64) -> Vec<WedgeMonomial> {
        // Subtracting (1, 2, ..., n) gives a weakly increasing sequence of
        // nonnegative gaps with sum d, i.e. a partition of d into at most n parts.
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(n);
        fn rec(n: usize, remaining: u64, min: u64, cur: &mut Vec<u64>, out: &mut Vec<WedgeMonomial>) {
            if cur.len() == n {
                if remaining == 0 {
                    let idx = cur.iter().enumerate().map(|(j, &g)| (g + j as u64 + 1) as u32).collect();
                    out.push(WedgeMonomial::from_raw(idx));
                }
                return;
            }
            let slots = (n - cur.len()) as u64;
            let mut g = min;
            while g * slots <= remaining {
                cur.push(g);
                rec(n, remaining - g, g, cur, out);
                cur.pop();
                g += 1;
            }
        }
        rec(n, d, 0, &mut cur, &mut out);
        out.sort();
        out
    }

    /// All monomials whose indices are at most `max_index` (every subset of `{1..=max_index}`).
    pub fn all_up_to(max_index: u32) -> Vec<WedgeMonomial> {
        let mut out: Vec<WedgeMonomial> = (0u64..(1u64 << max_index))
            .map(|mask| WedgeMonomial::from_raw((1..=max_index).filter(|i| mask >> (i - 1) & 1 == 1).collect()))
            .collect();
        out.sort();
        out
    }
}

impl Ord for WedgeMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for WedgeMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for WedgeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Basis for WedgeMonomial {}

/// Monomial `Π y_k^{e_k}` of `Q[y_1, y_2, ...]`. Stored exponents are positive.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BosonMonomial(BTreeMap<u32, u32>);

impl BosonMonomial {
    pub fn one() -> Self {
        BosonMonomial(BTreeMap::new())
    }

    /// Accepts `(variable, exponent)` pairs; zero exponents are dropped and
    /// repeated variables are merged.
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, e) in pairs {
            if k == 0 {
                return Err(Error::InvalidMonomial("boson variable index must be positive".into()));
            }
            if e > 0 {
                *map.entry(k).or_insert(0) += e;
            }
        }
        Ok(BosonMonomial(map))
    }

    pub fn exponent(&self, k: u32) -> u32 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &BTreeMap<u32, u32> {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `Σ k·e_k`.
    pub fn degree(&self) -> u64 {
        self.0.iter().map(|(&k, &e)| k as u64 * e as u64).sum()
    }

    /// Largest variable index present, 0 for the constant monomial.
    pub fn max_variable(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// `self · y_k^delta` for signed `delta`; `None` if the exponent would go negative.
    pub fn shifted(&self, k: u32, delta: i64) -> Option<Self> {
        let e = self.exponent(k) as i64 + delta;
        if e < 0 {
            return None;
        }
        let mut map = self.0.clone();
        if e == 0 {
            map.remove(&k);
        } else {
            map.insert(k, e as u32);
        }
        Some(BosonMonomial(map))
    }

    /// All monomials of degree `d`, in canonical order.
    pub fn enumerate(d: u64) -> Vec<BosonMonomial> {
        Self::enumerate_bounded(d, u32::MAX)
    }

    /// Monomials of degree `d` in `y_1, ..., y_max_var`.
    pub fn enumerate_bounded(d: u64, max_var: u32) -> Vec<BosonMonomial> {
        let mut out: Vec<BosonMonomial> = Partition::all_of(d)
            .into_iter()
            .filter(|p| p.largest_part() <= max_var)
            .map(|p| BosonMonomial(p.multiplicities().clone()))
            .collect();
        out.sort();
        out
    }
}

impl Ord for BosonMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let top = self.max_variable().max(other.max_variable());
            (1..=top).map(|k| self.exponent(k).cmp(&other.exponent(k))).find(|o| o.is_ne()).unwrap_or(Ordering::Equal)
        })
    }
}

impl PartialOrd for BosonMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for BosonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y(")?;
        for (n, (k, e)) in self.0.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{k}:{e}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BosonMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Basis for BosonMonomial {}

pub type FermionState = LinComb<WedgeMonomial>;
pub type BosonState = LinComb<BosonMonomial>;

/// `t`-degree bookkeeping on a wedge monomial: `(length, Σ i_j − n(n+1)/2)`.
pub fn fermion_degrees(m: &WedgeMonomial) -> (usize, u64) {
    m.degrees()
}

pub fn boson_degree(m: &BosonMonomial) -> u64 {
    m.degree()
}

/// A partition in multiplicity form: part `i` occurs `n_i` times.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct Partition(BTreeMap<u32, u32>);

impl Partition {
    pub fn new<I: IntoIterator<Item = (u32, u32)>>(multiplicities: I) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (i, n) in multiplicities {
            if i == 0 {
                return Err(Error::InvalidMonomial("partition parts must be positive".into()));
            }
            if n > 0 {
                *map.entry(i).or_insert(0) += n;
            }
        }
        Ok(Partition(map))
    }

    pub fn from_parts(parts: &[u32]) -> Result<Self> {
        Self::new(parts.iter().map(|&p| (p, 1)))
    }

    pub fn multiplicities(&self) -> &BTreeMap<u32, u32> {
        &self.0
    }

    /// `|λ| = Σ i·n_i`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|(&i, &n)| i as u64 * n as u64).sum()
    }

    pub fn num_parts(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn largest_part(&self) -> u32 {
        self.0.keys().next_back().copied().unwrap_or(0)
    }

    /// Parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for (&i, &n) in self.0.iter().rev() {
            v.extend(std::iter::repeat_n(i, n as usize));
        }
        v
    }

    /// Every partition of `n`.
    pub fn all_of(n: u64) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur: Vec<u32> = Vec::new();
        fn rec(rem: u64, max: u64, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition::from_parts(cur).expect("positive parts"));
                return;
            }
            for p in (1..=rem.min(max)).rev() {
                cur.push(p as u32);
                rec(rem - p, p, cur, out);
                cur.pop();
            }
        }
        rec(n, n, &mut cur, &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(u32::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn w(ix: &[u32]) -> WedgeMonomial {
        WedgeMonomial::new(ix.to_vec()).unwrap()
    }

    fn y(p: &[(u32, u32)]) -> BosonMonomial {
        BosonMonomial::new(p.iter().copied()).unwrap()
    }

    #[test]
    fn wedge_validation() {
        assert!(WedgeMonomial::new(vec![2, 1]).is_err());
        assert!(WedgeMonomial::new(vec![0, 1]).is_err());
        assert!(WedgeMonomial::new(vec![1, 1]).is_err());
        assert!(WedgeMonomial::new(vec![]).is_ok());
        assert!(BosonMonomial::new([(0, 1)]).is_err());
    }

    #[test]
    fn add_states_examples() {
        let a = FermionState::basis(w(&[1, 3]));
        assert!((&a + &(-&a)).is_zero());
        assert_eq!((&a - &a).to_string(), "0");

        let s = FermionState::term(w(&[1]), Scalar::from_int(2)) + FermionState::term(w(&[2]), Scalar::from_int(3));
        assert_eq!(s.to_string(), "2*w(1) + 3*w(2)");

        let b = BosonState::basis(y(&[(1, 2)]));
        assert_eq!((&b + &b).to_string(), "2*y(1:2)");
    }

    #[test]
    fn degrees() {
        assert_eq!(fermion_degrees(&w(&[1, 2, 3])), (3, 0));
        assert_eq!(fermion_degrees(&w(&[])), (0, 0));
        assert_eq!(fermion_degrees(&w(&[1, 4, 6])), (3, 5));
        assert_eq!(boson_degree(&y(&[])), 0);
        assert_eq!(boson_degree(&y(&[(1, 1), (2, 2)])), 5);
        assert_eq!(boson_degree(&y(&[(3, 1)])), 3);
    }

    #[test]
    fn printing_order() {
        let s = FermionState::from_terms([
            (w(&[2]), Scalar::one()),
            (w(&[1, 2]), Scalar::from_int(-1)),
            (w(&[1]), Scalar::ratio(-3, 2)),
            (w(&[]), Scalar::one()),
        ]);
        assert_eq!(s.to_string(), "w() - 3/2*w(1) + w(2) - w(1,2)");
        let b = BosonState::from_terms([
            (y(&[(1, 2)]), Scalar::one()),
            (y(&[(2, 1)]), Scalar::one()),
            (y(&[]), Scalar::from_int(-1)),
        ]);
        assert_eq!(b.to_string(), "-y() + y(2:1) + y(1:2)");
    }

    #[test]
    fn enumeration_counts() {
        // partitions of 4 into at most 3 parts: 4, 31, 22, 211
        assert_eq!(WedgeMonomial::enumerate(3, 4).len(), 4);
        assert_eq!(WedgeMonomial::enumerate(0, 0), vec![WedgeMonomial::vacuum()]);
        assert!(WedgeMonomial::enumerate(0, 1).is_empty());
        for m in WedgeMonomial::enumerate(4, 6) {
            assert_eq!(m.degrees(), (4, 6));
        }
        assert_eq!(WedgeMonomial::all_up_to(10).len(), 1024);
        assert_eq!(BosonMonomial::enumerate(5).len(), 7);
        assert_eq!(Partition::all_of(0).len(), 1);
        assert_eq!(Partition::all_of(8).len(), 22);
    }

    #[test]
    fn partition_weight() {
        let p = Partition::new([(1, 2), (3, 1)]).unwrap();
        assert_eq!(p.weight(), 5);
        assert_eq!(p.parts(), vec![3, 1, 1]);
        assert_eq!(p.to_string(), "(3,1,1)");
    }
}
