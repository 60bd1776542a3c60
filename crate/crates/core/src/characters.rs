//! Truncated bivariate series in `q` and `t`, Göttsche's product for Hilbert
//! schemes of points on a surface, and the bigraded characters of the Fock spaces.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::states::{BosonMonomial, WedgeMonomial};

type TPoly = BTreeMap<u32, Scalar>;

fn poly_add_scaled(acc: &mut TPoly, p: &TPoly, c: &Scalar, t_shift: u32) {
    for (&t, v) in p {
        let e = acc.entry(t + t_shift).or_insert_with(Scalar::zero);
        *e += &(v * c);
        if e.is_zero() {
            acc.remove(&(t + t_shift));
        }
    }
}

fn poly_mul(a: &TPoly, b: &TPoly) -> TPoly {
    let mut out = TPoly::new();
    for (&t, c) in a {
        poly_add_scaled(&mut out, b, c, t);
    }
    out
}

/// Power series in `q` truncated after `q^max_q`, with polynomial-in-`t`
/// coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiSeries {
    max_q: u32,
    coeffs: Vec<TPoly>,
}

impl BiSeries {
    pub fn zero(max_q: u32) -> Self {
        BiSeries { max_q, coeffs: vec![TPoly::new(); max_q as usize + 1] }
    }

    pub fn one(max_q: u32) -> Self {
        Self::monomial(max_q, 0, 0, Scalar::one())
    }

    /// `c q^q t^t`, or zero if `q > max_q`.
    pub fn monomial(max_q: u32, q: u32, t: u32, c: Scalar) -> Self {
        let mut s = Self::zero(max_q);
        s.add_term(q, t, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (u32, u32, Scalar)>>(max_q: u32, terms: I) -> Self {
        let mut s = Self::zero(max_q);
        for (q, t, c) in terms {
            s.add_term(q, t, c);
        }
        s
    }

    pub fn add_term(&mut self, q: u32, t: u32, c: Scalar) {
        if q > self.max_q {
            return;
        }
        let mut single = TPoly::new();
        single.insert(0, c);
        poly_add_scaled(&mut self.coeffs[q as usize], &single, &Scalar::one(), t);
    }

    pub fn max_q(&self) -> u32 {
        self.max_q
    }

    pub fn coeff(&self, q: u32, t: u32) -> Scalar {
        self.coeffs.get(q as usize).and_then(|p| p.get(&t)).cloned().unwrap_or_default()
    }

    /// Coefficient of `q^q` as `t`-exponent → coefficient.
    pub fn q_coeff(&self, q: u32) -> &BTreeMap<u32, Scalar> {
        &self.coeffs[q as usize]
    }

    /// Nonzero terms `(q, t, c)` ordered by `q` then `t`.
    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, &Scalar)> + '_ {
        self.coeffs.iter().enumerate().flat_map(|(q, p)| p.iter().map(move |(&t, c)| (q as u32, t, c)))
    }

    /// Substitutes `t = 1`.
    pub fn at_t_one(&self) -> Vec<Scalar> {
        self.coeffs.iter().map(|p| p.values().fold(Scalar::zero(), |acc, c| &acc + c)).collect()
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let max_q = self.max_q.min(other.max_q);
        let mut out = Self::zero(max_q);
        for i in 0..=max_q as usize {
            if self.coeffs[i].is_empty() {
                continue;
            }
            for j in 0..=(max_q as usize - i) {
                let prod = poly_mul(&self.coeffs[i], &other.coeffs[j]);
                poly_add_scaled(&mut out.coeffs[i + j], &prod, &Scalar::one(), 0);
            }
        }
        out
    }

    /// Multiplicative inverse; the `q^0` coefficient must be a nonzero constant.
    pub fn inv(&self) -> Result<BiSeries> {
        let c0 = match self.coeffs[0].iter().collect::<Vec<_>>().as_slice() {
            [(0, c)] => (*c).clone(),
            _ => return Err(Error::NotInvertible),
        };
        let c0_inv = c0.recip().ok_or(Error::NotInvertible)?;
        let mut out = Self::zero(self.max_q);
        out.coeffs[0].insert(0, c0_inv.clone());
        for n in 1..=self.max_q as usize {
            let mut acc = TPoly::new();
            for k in 1..=n {
                let prod = poly_mul(&self.coeffs[k], &out.coeffs[n - k]);
                poly_add_scaled(&mut acc, &prod, &Scalar::one(), 0);
            }
            let mut bn = TPoly::new();
            poly_add_scaled(&mut bn, &acc, &(-&c0_inv), 0);
            out.coeffs[n] = bn;
        }
        Ok(out)
    }
}

/// Betti numbers `b_0 .. b_4` of a smooth projective surface.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct BettiVector(pub [u32; 5]);

impl BettiVector {
    pub fn new(b: [u32; 5]) -> Self {
        BettiVector(b)
    }

    pub fn projective_plane() -> Self {
        BettiVector([1, 0, 1, 0, 1])
    }
}

impl std::str::FromStr for BettiVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 5 {
            return Err(Error::Domain(format!("Betti vector needs 5 entries, got {}", parts.len())));
        }
        let mut b = [0u32; 5];
        for (slot, p) in b.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|_| Error::Domain(format!("Betti number {p:?} is not a nonnegative integer")))?;
        }
        Ok(BettiVector(b))
    }
}

/// `(1 + sign·t^a q^m)^{±power}` truncated; `inverse` selects the denominator form.
fn binomial_factor(max_q: u32, a: u32, m: u32, plus: bool, power: u32, inverse: bool) -> BiSeries {
    let c = if plus { Scalar::one() } else { Scalar::from_int(-1) };
    let base = BiSeries::one(max_q).add(&BiSeries::monomial(max_q, m, a, c));
    let base = if inverse { base.inv().expect("constant term is 1") } else { base };
    (0..power).fold(BiSeries::one(max_q), |acc, _| acc.mul(&base))
}

impl BiSeries {
    fn add(&self, other: &BiSeries) -> BiSeries {
        let max_q = self.max_q.min(other.max_q);
        let mut out = Self::zero(max_q);
        for q in 0..=max_q as usize {
            poly_add_scaled(&mut out.coeffs[q], &self.coeffs[q], &Scalar::one(), 0);
            poly_add_scaled(&mut out.coeffs[q], &other.coeffs[q], &Scalar::one(), 0);
        }
        out
    }
}

/// `Σ_n q^n P_t(S^[n])` via Göttsche's product, truncated at `q^max_q`.
pub fn goettsche_series(b: BettiVector, max_q: u32) -> BiSeries {
    let [b0, b1, b2, b3, b4] = b.0;
    let mut acc = BiSeries::one(max_q);
    for m in 1..=max_q {
        acc = acc
            .mul(&binomial_factor(max_q, 2 * m - 1, m, true, b1, false))
            .mul(&binomial_factor(max_q, 2 * m + 1, m, true, b3, false))
            .mul(&binomial_factor(max_q, 2 * m - 2, m, false, b0, true))
            .mul(&binomial_factor(max_q, 2 * m, m, false, b2, true))
            .mul(&binomial_factor(max_q, 2 * m + 2, m, false, b4, true));
    }
    acc
}

/// Blowing up a point adds one class in degree 2.
pub fn blowup_betti(b: BettiVector) -> BettiVector {
    let mut out = b.0;
    out[2] += 1;
    BettiVector(out)
}

/// `Π_{m=1}^{max_q} 1/(1 - t^{2m} q^m)`, computed by inverting the finite product.
pub fn blowup_ratio(max_q: u32) -> BiSeries {
    let mut prod = BiSeries::one(max_q);
    for m in 1..=max_q {
        let factor = BiSeries::from_terms(max_q, [(0, 0, Scalar::one()), (m, 2 * m, Scalar::from_int(-1))]);
        prod = prod.mul(&factor);
    }
    prod.inv().expect("constant term is 1")
}

pub fn blowup_ratio_check(b: BettiVector, max_q: u32) -> Report {
    let mut report = Report::new(format!("blow-up ratio for b = {:?} up to q^{max_q}", b.0));
    let lhs = goettsche_series(blowup_betti(b), max_q);
    let rhs = goettsche_series(b, max_q).mul(&blowup_ratio(max_q));
    for q in 0..=max_q {
        let ok = lhs.q_coeff(q) == rhs.q_coeff(q);
        let detail = if ok { String::new() } else { format!("{:?} vs {:?}", lhs.q_coeff(q), rhs.q_coeff(q)) };
        report.record(format!("q^{q} coefficient"), ok, detail);
    }
    report
}

/// Number of partitions of `d` into at most `n` parts.
pub fn partitions_at_most(d: u64, n: usize) -> u64 {
    // parts of size <= n, conjugate to at most n parts
    let d = d as usize;
    let mut ways = vec![0u64; d + 1];
    ways[0] = 1;
    for k in 1..=n.min(d) {
        for j in k..=d {
            ways[j] += ways[j - k];
        }
    }
    ways[d]
}

pub fn partition_count(d: u64) -> u64 {
    partitions_at_most(d, d as usize)
}

/// `table[n][d]` = number of length-`n` wedge monomials of t-degree `d`.
pub fn fermion_character(max_level: usize, max_t: u64) -> Vec<Vec<u64>> {
    (0..=max_level).map(|n| (0..=max_t).map(|d| partitions_at_most(d, n)).collect()).collect()
}

/// Dimension of the degree-`d` piece of `B` for `d <= max_degree`.
pub fn boson_character(max_degree: u64) -> Vec<u64> {
    (0..=max_degree).map(|d| BosonMonomial::enumerate(d).len() as u64).collect()
}

/// `Π_{m>=1} (1 - q^m)^{-1}` truncated, as plain coefficients.
pub fn euler_product_coefficients(max_q: u32) -> Vec<Scalar> {
    goettsche_series(BettiVector([1, 0, 0, 0, 0]), max_q).at_t_one()
}

/// Consistency of the combinatorial characters with Fock-space enumeration
/// and with the Euler product.
pub fn check_characters(max_level: usize, max_degree: u64) -> Report {
    let mut report = Report::new(format!("fock characters (level <= {max_level}, degree <= {max_degree})"));
    let fc = fermion_character(max_level, max_degree);
    let enumerated = (0..=max_level)
        .all(|n| (0..=max_degree).all(|d| fc[n][d as usize] == WedgeMonomial::enumerate(n, d).len() as u64));
    report.record("fermion character = enumerated dimension of F(n, d)", enumerated, "");
    let stable = (0..=max_degree).all(|d| {
        let n = (d as usize).min(max_level);
        n < d as usize || fc[n][d as usize] == partition_count(d)
    });
    report.record("fermion character stabilizes to p(d)", stable, "");
    let bc = boson_character(max_degree);
    let euler = euler_product_coefficients(max_degree as u32);
    let matches = bc.iter().zip(&euler).all(|(&a, b)| Scalar::from_int(a as i64) == *b);
    report.record("boson character = coefficients of prod (1-q^m)^-1", matches, format!("{bc:?}"));
    let partitions = bc.iter().enumerate().all(|(d, &a)| a == partition_count(d as u64));
    report.record("boson character = p(d)", partitions, "");
    report
}

/// Aligned table: rows are powers of `q`, columns the `t`-exponents occurring anywhere.
pub fn render_table(s: &BiSeries) -> String {
    let mut ts: Vec<u32> = s.terms().map(|(_, t, _)| t).collect();
    ts.sort_unstable();
    ts.dedup();
    let header: Vec<String> = std::iter::once("q\\t".to_string()).chain(ts.iter().map(|t| format!("t^{t}"))).collect();
    let rows: Vec<Vec<String>> = (0..=s.max_q())
        .map(|q| std::iter::once(format!("q^{q}")).chain(ts.iter().map(|&t| s.coeff(q, t).to_string())).collect())
        .collect();
    let ncol = header.len();
    let widths: Vec<usize> =
        (0..ncol).map(|c| std::iter::once(&header).chain(&rows).map(|r| r[c].len()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in std::iter::once(&header).chain(&rows) {
        let cells: Vec<String> = r
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(c, (cell, &w))| if c == 0 { format!("{cell:<w$}") } else { format!("{cell:>w$}") })
            .collect();
        let _ = writeln!(out, "{}", cells.join("  "));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn geometric_series() {
        let one_minus_q = BiSeries::from_terms(5, [(0, 0, int(1)), (1, 0, int(-1))]);
        let geom = BiSeries::from_terms(5, (0..=5).map(|k| (k, 0, int(1))));
        assert_eq!(one_minus_q.mul(&geom), BiSeries::one(5));
        assert_eq!(BiSeries::one(3).inv().unwrap(), BiSeries::one(3));
        let s = BiSeries::from_terms(2, [(0, 0, int(1)), (1, 2, int(-1))]);
        let want = BiSeries::from_terms(2, [(0, 0, int(1)), (1, 2, int(1)), (2, 4, int(1))]);
        assert_eq!(s.inv().unwrap(), want);
    }

    #[test]
    fn inversion_errors() {
        assert_eq!(BiSeries::zero(2).inv(), Err(Error::NotInvertible));
        let t_const = BiSeries::from_terms(2, [(0, 1, int(1))]);
        assert_eq!(t_const.inv(), Err(Error::NotInvertible));
    }

    #[test]
    fn projective_plane_low_orders() {
        let g = goettsche_series(BettiVector::projective_plane(), 2);
        let row = |q| g.q_coeff(q).iter().map(|(&t, c)| (t, c.to_i64().unwrap())).collect::<Vec<_>>();
        assert_eq!(row(0), vec![(0, 1)]);
        assert_eq!(row(1), vec![(0, 1), (2, 1), (4, 1)]);
        assert_eq!(row(2), vec![(0, 1), (2, 2), (4, 3), (6, 2), (8, 1)]);
    }

    #[test]
    fn q0_is_one() {
        for b in [[1, 0, 1, 0, 1], [1, 4, 22, 4, 1], [1, 2, 10, 2, 1]] {
            let g = goettsche_series(BettiVector(b), 3);
            assert_eq!(g.q_coeff(0).len(), 1);
            assert_eq!(g.coeff(0, 0), int(1));
        }
    }

    #[test]
    fn blowup() {
        assert_eq!(blowup_betti(BettiVector([1, 0, 1, 0, 1])), BettiVector([1, 0, 2, 0, 1]));
        assert_eq!(blowup_betti(BettiVector([1, 4, 22, 4, 1])), BettiVector([1, 4, 23, 4, 1]));
        assert_eq!(blowup_betti(blowup_betti(BettiVector([1, 0, 1, 0, 1]))).0[2], 3);
        assert!(blowup_ratio_check(BettiVector([1, 0, 1, 0, 1]), 6).passed());
        assert!(blowup_ratio_check(BettiVector([1, 0, 0, 0, 1]), 4).passed());
        assert!(blowup_ratio_check(BettiVector([1, 0, 1, 0, 1]), 0).passed());
    }

    #[test]
    fn characters() {
        let fc = fermion_character(3, 6);
        assert!(fc[1].iter().all(|&c| c == 1));
        assert_eq!(fc[3][4], 4);
        assert_eq!(fc[0][0], 1);
        assert_eq!(fc[0][3], 0);
        let bc = boson_character(5);
        assert_eq!(bc[0], 1);
        assert_eq!(bc[5], 7);
        assert!(check_characters(8, 10).passed());
    }

    #[test]
    fn betti_parse() {
        assert_eq!("1,0,1,0,1".parse::<BettiVector>().unwrap(), BettiVector::projective_plane());
        assert!("1,0,1".parse::<BettiVector>().is_err());
        assert!("1,0,-1,0,1".parse::<BettiVector>().is_err());
    }

    #[test]
    fn table_layout() {
        let g = goettsche_series(BettiVector::projective_plane(), 2);
        let t = render_table(&g);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines[0], "q\\t  t^0  t^2  t^4  t^6  t^8");
        assert_eq!(lines[3], "q^2    1    2    3    2    1");
    }
}
