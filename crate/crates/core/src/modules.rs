//! Abstract module handles for the three algebras, built-in models, and
//! sampled admissibility audits.
//!
//! A handle exposes generator actions on basis elements; states are
//! [`LinComb`]s over the handle's basis and actions extend linearly.

use std::fmt;

use crate::boson;
use crate::ealgebra::Generator;
use crate::error::{Error, Result};
use crate::fermion;
use crate::linalg::Echelon;
use crate::lincomb::{Basis, LinComb};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::states::{BosonMonomial, Partition, WedgeMonomial};

pub type State<B> = LinComb<B>;

/// A linear map on states, given by its (fallible) action.
pub type StateMap<'a, B> = dyn Fn(&State<B>) -> Result<State<B>> + 'a;

/// A graded module over the algebra generated by `K1, Km1, E, F`.
pub trait EModule {
    type Basis: Basis;

    fn act(&self, g: Generator, b: &Self::Basis) -> Result<State<Self::Basis>>;
    /// Grading level: `E` raises it by one, `F` lowers it, the shifts preserve it.
    fn level(&self, b: &Self::Basis) -> usize;
    /// Secondary (t-) degree, used for enumeration and iteration caps.
    fn degree(&self, b: &Self::Basis) -> u64;
    fn basis(&self, level: usize, degree: u64) -> Vec<Self::Basis>;
    fn vacuum_basis(&self) -> Vec<Self::Basis>;

    fn act_state(&self, g: Generator, s: &State<Self::Basis>) -> Result<State<Self::Basis>> {
        s.try_map_linear(|b| self.act(g, b))
    }

    /// Applies the letters right to left.
    fn act_word(&self, letters: &[Generator], s: &State<Self::Basis>) -> Result<State<Self::Basis>> {
        let mut cur = s.clone();
        for &g in letters.iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = self.act_state(g, &cur)?;
        }
        Ok(cur)
    }
}

/// A graded module over the Clifford algebra `{P_i, Q_j} = δ_ij`.
pub trait CModule {
    type Basis: Basis;

    fn p(&self, i: u32, b: &Self::Basis) -> Result<State<Self::Basis>>;
    fn q(&self, i: u32, b: &Self::Basis) -> Result<State<Self::Basis>>;
    fn level(&self, b: &Self::Basis) -> usize;
    fn degree(&self, b: &Self::Basis) -> u64;
    /// `Some(n)` when `Q_m b = 0` for every `m > n`.
    fn q_support(&self, b: &Self::Basis) -> Option<u32>;
    fn basis(&self, level: usize, degree: u64) -> Vec<Self::Basis>;
    fn vacuum_basis(&self) -> Vec<Self::Basis>;

    fn p_state(&self, i: u32, s: &State<Self::Basis>) -> Result<State<Self::Basis>> {
        s.try_map_linear(|b| self.p(i, b))
    }

    fn q_state(&self, i: u32, s: &State<Self::Basis>) -> Result<State<Self::Basis>> {
        s.try_map_linear(|b| self.q(i, b))
    }
}

/// A module over the Heisenberg algebra `[H_i, H_j] = i δ_{i,-j}`.
pub trait HModule {
    type Basis: Basis;

    /// `k != 0`; `H_k` raises the degree by `k`.
    fn h(&self, k: i64, b: &Self::Basis) -> Result<State<Self::Basis>>;
    fn degree(&self, b: &Self::Basis) -> u64;
    fn basis_of_degree(&self, d: u64) -> Vec<Self::Basis>;
    /// Basis of the vacuum space `∩_l ker H_{-l}`.
    fn vacuum_basis(&self) -> Vec<Self::Basis>;

    fn h_state(&self, k: i64, s: &State<Self::Basis>) -> Result<State<Self::Basis>> {
        if k == 0 {
            return Err(Error::IndexDomain("Heisenberg index must be nonzero".into()));
        }
        s.try_map_linear(|b| self.h(k, b))
    }

    fn state_degree(&self, s: &State<Self::Basis>) -> u64 {
        s.keys().map(|b| self.degree(b)).max().unwrap_or(0)
    }

    /// `L_k = Σ_{i>=1} -1/(k^i i!) H_k^{i-1} H_{-k}^i`, summed until `H_{-k}^i s = 0`.
    fn l_state(&self, k: i64, s: &State<Self::Basis>) -> Result<State<Self::Basis>> {
        if k < 1 {
            return Err(Error::IndexDomain(format!("L_k requires k >= 1, got {k}")));
        }
        let cap = iteration_cap(self.state_degree(s));
        let mut out = State::zero();
        let mut lowered = s.clone();
        let mut denom = Scalar::one();
        for i in 1.. {
            if i > cap {
                return Err(Error::Inadmissible(format!("H_-{k} powers did not vanish within {cap} steps")));
            }
            lowered = self.h_state(-k, &lowered)?;
            if lowered.is_zero() {
                break;
            }
            denom = &denom * &Scalar::from_int(k * i as i64);
            let mut term = lowered.clone();
            for _ in 0..i - 1 {
                term = self.h_state(k, &term)?;
            }
            out.add_scaled(&term, &-(Scalar::one() / denom.clone()));
        }
        Ok(out)
    }

    /// Membership in `W_i = ∩_{l > i} ker H_{-l}`.
    fn in_filtered_piece(&self, i: usize, s: &State<Self::Basis>) -> Result<bool> {
        let top = self.state_degree(s) as usize;
        for l in i + 1..=top {
            if !self.h_state(-(l as i64), s)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Hard bound on the terms of a locally finite sum over a state of the given degree.
pub fn iteration_cap(degree: u64) -> usize {
    10 * (degree as usize + 1)
}

/// The Fermionic Fock space with its concrete actions.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FermionSpace;

impl EModule for FermionSpace {
    type Basis = WedgeMonomial;

    fn act(&self, g: Generator, b: &WedgeMonomial) -> Result<State<WedgeMonomial>> {
        Ok(match g {
            Generator::K1 => fermion::k1_basis(b),
            Generator::Km1 => fermion::km1_basis(b),
            Generator::E => fermion::e_basis(b),
            Generator::F => fermion::f_basis(b),
        })
    }

    fn level(&self, b: &WedgeMonomial) -> usize {
        b.len()
    }

    fn degree(&self, b: &WedgeMonomial) -> u64 {
        b.t_degree()
    }

    fn basis(&self, level: usize, degree: u64) -> Vec<WedgeMonomial> {
        WedgeMonomial::enumerate(level, degree)
    }

    fn vacuum_basis(&self) -> Vec<WedgeMonomial> {
        vec![WedgeMonomial::vacuum()]
    }
}

impl CModule for FermionSpace {
    type Basis = WedgeMonomial;

    fn p(&self, i: u32, b: &WedgeMonomial) -> Result<State<WedgeMonomial>> {
        Ok(fermion::p_basis(i, b))
    }

    fn q(&self, i: u32, b: &WedgeMonomial) -> Result<State<WedgeMonomial>> {
        Ok(fermion::q_basis(i, b))
    }

    fn level(&self, b: &WedgeMonomial) -> usize {
        b.len()
    }

    fn degree(&self, b: &WedgeMonomial) -> u64 {
        b.t_degree()
    }

    fn q_support(&self, b: &WedgeMonomial) -> Option<u32> {
        Some(b.indices().last().copied().unwrap_or(0))
    }

    fn basis(&self, level: usize, degree: u64) -> Vec<WedgeMonomial> {
        WedgeMonomial::enumerate(level, degree)
    }

    fn vacuum_basis(&self) -> Vec<WedgeMonomial> {
        vec![WedgeMonomial::vacuum()]
    }
}

/// `Q[y_1, y_2, ...]` with `H_k = y_k·`, `H_{-k} = -k ∂/∂y_k`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BosonSpace;

impl HModule for BosonSpace {
    type Basis = BosonMonomial;

    fn h(&self, k: i64, b: &BosonMonomial) -> Result<State<BosonMonomial>> {
        if k == 0 {
            return Err(Error::IndexDomain("Heisenberg index must be nonzero".into()));
        }
        Ok(boson::h_basis(k, b))
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

    fn l_state(&self, k: i64, s: &State<BosonMonomial>) -> Result<State<BosonMonomial>> {
        boson::act_l(k, s)
    }
}

/// Basis element `m ⊗ e_label` of `B ⊗ Q^rank`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TensorBasis {
    pub monomial: BosonMonomial,
    pub label: usize,
}

impl fmt::Display for TensorBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}⊗e{}", self.monomial, self.label)
    }
}

impl Basis for TensorBasis {}

/// `B ⊗ Q^rank`, the Heisenberg module with a `rank`-dimensional vacuum space.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BosonTensor {
    pub rank: usize,
}

impl HModule for BosonTensor {
    type Basis = TensorBasis;

    fn h(&self, k: i64, b: &TensorBasis) -> Result<State<TensorBasis>> {
        let inner = BosonSpace.h(k, &b.monomial)?;
        Ok(inner.map_basis(|m| Some((TensorBasis { monomial: m.clone(), label: b.label }, Scalar::one()))))
    }

    fn degree(&self, b: &TensorBasis) -> u64 {
        b.monomial.degree()
    }

    fn basis_of_degree(&self, d: u64) -> Vec<TensorBasis> {
        let mut out: Vec<TensorBasis> = BosonMonomial::enumerate(d)
            .into_iter()
            .flat_map(|m| (1..=self.rank).map(move |label| TensorBasis { monomial: m.clone(), label }))
            .collect();
        out.sort();
        out
    }

    fn vacuum_basis(&self) -> Vec<TensorBasis> {
        (1..=self.rank).map(|label| TensorBasis { monomial: BosonMonomial::one(), label }).collect()
    }
}

fn witness(report: &mut Report, name: String, bad: Option<String>) {
    let ok = bad.is_none();
    report.record(name, ok, bad.unwrap_or_default());
}

fn sample_e<M: EModule>(m: &M, bound: usize) -> Vec<M::Basis> {
    (0..=bound).flat_map(|lvl| (0..=bound as u64).flat_map(move |d| m.basis(lvl, d))).collect()
}

/// Sampled audit of a graded module over the shift algebra: shifts are the
/// identity on `W_0`, `Km1` is eventually zero above level 0, and the
/// defining relations hold.
pub fn audit_e_module<M: EModule>(m: &M, bound: usize) -> Report {
    let mut report = Report::new(format!("admissibility audit (graded E-module, bound {bound})"));
    let sample = sample_e(m, bound);
    let try_run = |f: &dyn Fn(&M::Basis) -> Result<Option<String>>, pool: &[M::Basis]| -> Option<String> {
        pool.iter().find_map(|b| match f(b) {
            Ok(None) => None,
            Ok(Some(msg)) => Some(format!("at {b}: {msg}")),
            Err(e) => Some(format!("at {b}: {e}")),
        })
    };
    let vac = m.vacuum_basis();
    for g in [Generator::K1, Generator::Km1] {
        let bad = try_run(
            &|b| {
                let s = State::basis(b.clone());
                let out = m.act_state(g, &s)?;
                Ok((out != s).then(|| format!("{g} gives {out}")))
            },
            &vac,
        );
        witness(&mut report, format!("{g} = id on W_0"), bad);
    }
    let bad = try_run(
        &|b| {
            if m.level(b) == 0 {
                return Ok(None);
            }
            let mut s = State::basis(b.clone());
            for _ in 0..iteration_cap(m.degree(b)) {
                s = m.act_state(Generator::Km1, &s)?;
                if s.is_zero() {
                    return Ok(None);
                }
            }
            Ok(Some("Km1 powers do not vanish".into()))
        },
        &sample,
    );
    witness(&mut report, "Km1^N = 0 above level 0".into(), bad);

    use Generator::*;
    let relations: [(&str, &[&[Generator]], i64); 5] = [
        ("Km1*K1 = 1", &[&[Km1, K1]], 1),
        ("F*E = 1", &[&[F, E]], 1),
        ("Km1*E = 0", &[&[Km1, E]], 0),
        ("F*K1 = 0", &[&[F, K1]], 0),
        ("K1*Km1 + E*F = 1", &[&[K1, Km1], &[E, F]], 1),
    ];
    for (name, words, c) in relations {
        let bad = try_run(
            &|b| {
                let s = State::basis(b.clone());
                let mut lhs = State::zero();
                for w in words {
                    lhs = lhs + m.act_word(w, &s)?;
                }
                let rhs = s.scale(&Scalar::from_int(c));
                Ok((lhs != rhs).then(|| format!("{lhs} vs {rhs}")))
            },
            &sample,
        );
        witness(&mut report, name.to_string(), bad);
    }
    let bad = try_run(
        &|b| {
            let s = State::basis(b.clone());
            let lvl = m.level(b);
            for g in Generator::ALL {
                let want = match g {
                    E => Some(lvl + 1),
                    F => lvl.checked_sub(1),
                    _ => Some(lvl),
                };
                for k in m.act_state(g, &s)?.keys() {
                    if Some(m.level(k)) != want {
                        return Ok(Some(format!("{g} leaves level {lvl} for {}", m.level(k))));
                    }
                }
            }
            Ok(None)
        },
        &sample,
    );
    witness(&mut report, "generator degrees (E: +1, F: -1, K: 0)".into(), bad);
    report
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
struct Tagged<B>(u32, B);

impl<B: fmt::Display> fmt::Display for Tagged<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]{}", self.0, self.1)
    }
}

impl<B: Basis> Basis for Tagged<B> {}

/// Sampled audit of a graded Clifford module: local finiteness of `Q`, the
/// vacuum space is exactly the joint kernel of the `Q_i`, and the
/// anticommutation relations hold for indices `<= bound`.
pub fn audit_c_module<M: CModule>(m: &M, bound: usize) -> Report {
    let mut report = Report::new(format!("admissibility audit (graded C-module, bound {bound})"));
    let mut support_bad = None;
    let mut kernel_bad = None;
    for lvl in 0..=bound {
        for d in 0..=bound as u64 {
            let piece = m.basis(lvl, d);
            let mut images = Vec::new();
            for b in &piece {
                let Some(n) = m.q_support(b) else {
                    support_bad.get_or_insert(format!("{b} has no Q-support bound"));
                    continue;
                };
                let mut img = State::zero();
                for i in 1..=n {
                    match m.q(i, b) {
                        Ok(v) => img
                            .add_scaled(&v.map_basis(|k| Some((Tagged(i, k.clone()), Scalar::one()))), &Scalar::one()),
                        Err(e) => {
                            support_bad.get_or_insert(format!("Q{i} on {b}: {e}"));
                        }
                    }
                }
                for i in n + 1..=n + 3 {
                    if !matches!(m.q(i, b), Ok(v) if v.is_zero()) {
                        support_bad.get_or_insert(format!("Q{i} on {b} beyond its support"));
                    }
                }
                images.push(img);
            }
            let mut ech = Echelon::new();
            let independent = images.iter().filter(|v| ech.insert(v)).count();
            let expected = if lvl == 0 { 0 } else { piece.len() };
            if independent != expected && kernel_bad.is_none() {
                kernel_bad =
                    Some(format!("level {lvl}, degree {d}: joint Q-image has rank {independent}, expected {expected}"));
            }
        }
    }
    witness(&mut report, "Q_m x = 0 for m beyond a finite bound".into(), support_bad);
    witness(&mut report, "W_0 = joint kernel of the Q_i".into(), kernel_bad);

    let sample: Vec<M::Basis> = (0..=bound).flat_map(|l| (0..=bound as u64).flat_map(move |d| m.basis(l, d))).collect();
    let mut rel_bad = None;
    'outer: for i in 1..=bound as u32 {
        for j in 1..=bound as u32 {
            for b in &sample {
                let s = State::basis(b.clone());
                let run = || -> Result<[State<M::Basis>; 3]> {
                    Ok([
                        m.p_state(i, &m.p_state(j, &s)?)? + m.p_state(j, &m.p_state(i, &s)?)?,
                        m.q_state(i, &m.q_state(j, &s)?)? + m.q_state(j, &m.q_state(i, &s)?)?,
                        m.p_state(i, &m.q_state(j, &s)?)? + m.q_state(j, &m.p_state(i, &s)?)?,
                    ])
                };
                let delta = if i == j { s.clone() } else { State::zero() };
                match run() {
                    Ok([pp, qq, pq]) => {
                        if !pp.is_zero() || !qq.is_zero() || pq != delta {
                            rel_bad = Some(format!("i={i}, j={j} on {b}"));
                            break 'outer;
                        }
                    }
                    Err(e) => {
                        rel_bad = Some(format!("i={i}, j={j} on {b}: {e}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    witness(&mut report, "Clifford anticommutators".into(), rel_bad);
    report
}

/// Sampled audit of a Heisenberg module: bracket relations for `|i|,|j| <= bound`,
/// `H_{-λ} x = 0` for `|λ| > deg x`, and the vacuum basis is annihilated by lowering.
pub fn audit_h_module<M: HModule>(m: &M, bound: usize) -> Report {
    let mut report = Report::new(format!("admissibility audit (H-module, bound {bound})"));
    let sample: Vec<M::Basis> = (0..=bound as u64).flat_map(|d| m.basis_of_degree(d)).collect();
    let b = bound as i64;
    let mut bad = None;
    'outer: for i in (-b..=b).filter(|&k| k != 0) {
        for j in (-b..=b).filter(|&k| k != 0) {
            for x in &sample {
                let s = State::basis(x.clone());
                let got = (|| -> Result<State<M::Basis>> {
                    Ok(m.h_state(i, &m.h_state(j, &s)?)? - m.h_state(j, &m.h_state(i, &s)?)?)
                })();
                let want = if i == -j { s.scale(&Scalar::from_int(i)) } else { State::zero() };
                match got {
                    Ok(g) if g == want => {}
                    Ok(g) => {
                        bad = Some(format!("[H{i},H{j}] on {x}: {g} vs {want}"));
                        break 'outer;
                    }
                    Err(e) => {
                        bad = Some(format!("[H{i},H{j}] on {x}: {e}"));
                        break 'outer;
                    }
                }
            }
        }
    }
    witness(&mut report, "Heisenberg brackets".into(), bad);

    let mut bad = None;
    'adm: for x in &sample {
        let d = m.degree(x);
        for lam in Partition::all_of(d + 1).into_iter().chain(Partition::all_of(d + 2)) {
            let mut s = State::basis(x.clone());
            for (&i, &n) in lam.multiplicities() {
                for _ in 0..n {
                    s = match m.h_state(-(i as i64), &s) {
                        Ok(v) => v,
                        Err(e) => {
                            bad = Some(format!("H_-{lam} on {x}: {e}"));
                            break 'adm;
                        }
                    };
                }
            }
            if !s.is_zero() {
                bad = Some(format!("H_-{lam} on {x} = {s}"));
                break 'adm;
            }
        }
    }
    witness(&mut report, "H_{-λ} x = 0 for |λ| > deg x".into(), bad);

    let mut bad = None;
    'vac: for v in m.vacuum_basis() {
        for l in 1..=b {
            match m.h_state(-l, &State::basis(v.clone())) {
                Ok(s) if s.is_zero() => {}
                Ok(s) => {
                    bad = Some(format!("H-{l} on {v} = {s}"));
                    break 'vac;
                }
                Err(e) => {
                    bad = Some(format!("H-{l} on {v}: {e}"));
                    break 'vac;
                }
            }
        }
    }
    witness(&mut report, "vacuum killed by lowering operators".into(), bad);
    report
}
