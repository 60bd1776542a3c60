//! Results checked against independently computed references.

use std::collections::BTreeMap;

use fock_core::characters::{blowup_ratio_check, goettsche_series, partition_count, BettiVector};
use fock_core::correspondence::{bosonize, structure_iso_check};
use fock_core::ealgebra::Generator;
use fock_core::modules::{audit_e_module, audit_h_module, BosonSpace, EModule, FermionSpace, HModule, State};
use fock_core::{BosonMonomial, Result, Scalar, WedgeMonomial};

type Series = BTreeMap<(u32, u32), i128>;

fn binom(n: i128, k: i128) -> i128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// `(1 + sign x)^power` with `x = t^a q^m`, expanded by the (generalized)
/// binomial theorem; negative `power` gives the geometric-type series.
fn binomial_series(max_q: u32, a: u32, m: u32, sign: i128, power: i128) -> Series {
    let mut out = Series::new();
    let mut n = 0u32;
    while n * m <= max_q {
        let c = if power >= 0 {
            if n as i128 > power {
                break;
            }
            binom(power, n as i128)
        } else {
            // (1 + s x)^{-b} = Σ C(b+n-1, n) (-s x)^n
            let b = -power;
            binom(b + n as i128 - 1, n as i128) * if n % 2 == 1 { -1 } else { 1 }
        };
        let c = c * sign.pow(n);
        if c != 0 {
            out.insert((n * m, n * a), c);
        }
        n += 1;
    }
    out
}

fn mul(a: &Series, b: &Series, max_q: u32) -> Series {
    let mut out = Series::new();
    for (&(q1, t1), &x) in a {
        for (&(q2, t2), &y) in b {
            if q1 + q2 <= max_q {
                *out.entry((q1 + q2, t1 + t2)).or_insert(0) += x * y;
            }
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn goettsche_oracle(b: [u32; 5], max_q: u32) -> Series {
    let mut acc = Series::from([((0, 0), 1)]);
    for m in 1..=max_q {
        let factors = [
            binomial_series(max_q, 2 * m - 1, m, 1, b[1] as i128),
            binomial_series(max_q, 2 * m + 1, m, 1, b[3] as i128),
            binomial_series(max_q, 2 * m - 2, m, -1, -(b[0] as i128)),
            binomial_series(max_q, 2 * m, m, -1, -(b[2] as i128)),
            binomial_series(max_q, 2 * m + 2, m, -1, -(b[4] as i128)),
        ];
        for f in &factors {
            acc = mul(&acc, f, max_q);
        }
    }
    acc
}

fn as_map(b: BettiVector, max_q: u32) -> Series {
    goettsche_series(b, max_q)
        .terms()
        .map(|(q, t, c)| ((q, t), c.to_i64().expect("integer coefficient") as i128))
        .collect()
}

#[test]
fn goettsche_matches_binomial_expansion() {
    for b in [[1, 0, 1, 0, 1], [1, 2, 2, 2, 1], [1, 0, 2, 0, 1], [1, 4, 6, 4, 1], [1, 0, 22, 0, 1]] {
        assert_eq!(as_map(BettiVector(b), 6), goettsche_oracle(b, 6), "b = {b:?}");
    }
}

#[test]
fn projective_plane_q2() {
    let s = goettsche_series(BettiVector::projective_plane(), 2);
    let row: Vec<i64> = (0..=8).step_by(2).map(|t| s.coeff(2, t).to_i64().unwrap()).collect();
    assert_eq!(row, [1, 2, 3, 2, 1]);
    assert!(s.q_coeff(2).keys().all(|t| t % 2 == 0 && *t <= 8));
}

#[test]
fn blowup_ratio_three_surfaces() {
    for b in [[1, 0, 1, 0, 1], [1, 2, 2, 2, 1], [1, 0, 10, 0, 1]] {
        let r = blowup_ratio_check(BettiVector(b), 8);
        assert!(r.passed(), "{r}");
    }
}

fn partitions_brute(n: u64, max_part: u64) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=max_part.min(n)).map(|k| partitions_brute(n - k, k)).sum()
}

#[test]
fn partition_numbers() {
    for d in 0..=14 {
        assert_eq!(partition_count(d), partitions_brute(d, d), "p({d})");
        assert_eq!(BosonMonomial::enumerate(d).len() as u64, partitions_brute(d, d));
    }
}

#[test]
fn fermion_pieces_count_bounded_partitions() {
    // length-n monomials of t-degree d <-> partitions of d with at most n parts
    for n in 0..=5 {
        for d in 0..=8 {
            let brute = WedgeMonomial::all_up_to(n as u32 + d as u32)
                .into_iter()
                .filter(|m| m.len() == n && m.t_degree() == d)
                .count() as u64;
            assert_eq!(WedgeMonomial::enumerate(n, d).len() as u64, brute);
            let at_most_n = (0..=n as u64).map(|k| exactly_k_parts(d, k)).sum::<u64>();
            assert_eq!(brute, at_most_n, "n={n} d={d}");
        }
    }
}

fn exactly_k_parts(d: u64, k: u64) -> u64 {
    match (d, k) {
        (0, 0) => 1,
        (_, 0) => 0,
        _ if d < k => 0,
        _ => exactly_k_parts(d - 1, k - 1) + exactly_k_parts(d - k, k),
    }
}

#[test]
fn stable_limit_dimensions_are_partition_numbers() {
    let s = structure_iso_check(&bosonize(FermionSpace), 8).unwrap();
    assert!(s.report.passed(), "{}", s.report);
    let dims: Vec<u64> = s.rows.iter().map(|r| r.dimension as u64).collect();
    let brute: Vec<u64> = (0..=8).map(|d| partitions_brute(d, d)).collect();
    assert_eq!(dims, brute);
}

/// `F` with `K1` forced to zero on the vacuum.
struct BrokenVacuum;

impl EModule for BrokenVacuum {
    type Basis = WedgeMonomial;

    fn act(&self, g: Generator, b: &WedgeMonomial) -> Result<State<WedgeMonomial>> {
        if g == Generator::K1 && b.is_vacuum() {
            return Ok(State::zero());
        }
        FermionSpace.act(g, b)
    }
    fn level(&self, b: &WedgeMonomial) -> usize {
        b.len()
    }
    fn degree(&self, b: &WedgeMonomial) -> u64 {
        b.t_degree()
    }
    fn basis(&self, level: usize, degree: u64) -> Vec<WedgeMonomial> {
        FermionSpace.basis(level, degree)
    }
    fn vacuum_basis(&self) -> Vec<WedgeMonomial> {
        FermionSpace.vacuum_basis()
    }
}

/// `B` with `H_{-1}` off by a factor of two.
struct WrongScale;

impl HModule for WrongScale {
    type Basis = BosonMonomial;

    fn h(&self, k: i64, b: &BosonMonomial) -> Result<State<BosonMonomial>> {
        let out = BosonSpace.h(k, b)?;
        Ok(if k == -1 { out.scale(&Scalar::from_int(2)) } else { out })
    }
    fn degree(&self, b: &BosonMonomial) -> u64 {
        b.degree()
    }
    fn basis_of_degree(&self, d: u64) -> Vec<BosonMonomial> {
        BosonMonomial::enumerate(d)
    }
    fn vacuum_basis(&self) -> Vec<BosonMonomial> {
        vec![BosonMonomial::one()]
    }
}

#[test]
fn audits_reject_corrupted_handles() {
    assert!(audit_e_module(&FermionSpace, 4).passed());
    let r = audit_e_module(&BrokenVacuum, 4);
    assert!(!r.passed());
    assert!(r.failures().any(|c| c.name.contains("K1")), "{r}");
    assert!(audit_h_module(&BosonSpace, 4).passed());
    assert!(!audit_h_module(&WrongScale, 4).passed());
}
