//! The three functors relating Clifford, shift-algebra and Heisenberg modules,
//! the explicit isomorphism from the Fermionic Fock space to the Bosonic one,
//! and the structure map `B ⊗ W_0 → W_∞`.
//!
//! - [`reconstruct_shift_ops`]: graded Clifford module → graded `E`-module.
//! - [`fermionize`]: Heisenberg module → graded `E`-module on `⊕ W_i`.
//! - [`bosonize`]: graded `E`-module → Heisenberg module on its stable limit.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::characters::partition_count;
use crate::ealgebra::Generator;
use crate::error::{Error, Result};
use crate::linalg::rank;
use crate::lincomb::{Basis, LinComb};
use crate::modules::{iteration_cap, CModule, EModule, HModule, State, StateMap};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::states::{BosonMonomial, BosonState, FermionState, Partition, WedgeMonomial};

/// `Γ_i(T) = Σ_{m - n = i, m, n >= 1} P_m T Q_n` applied to `s`.
pub fn gamma<M: CModule>(m: &M, t: &StateMap<M::Basis>, i: i64, s: &State<M::Basis>) -> Result<State<M::Basis>> {
    let mut out = State::zero();
    for (b, c) in s {
        let bound = m.q_support(b).ok_or_else(|| Error::Inadmissible(format!("no Q-support bound for {b}")))?;
        for n in 1..=bound {
            let mi = n as i64 + i;
            if mi < 1 {
                continue;
            }
            let qn = m.q(n, b)?;
            if qn.is_zero() {
                continue;
            }
            let mid = t(&qn)?;
            out.add_scaled(&m.p_state(mi as u32, &mid)?, c);
        }
    }
    Ok(out)
}

type Memo<K, V> = Mutex<BTreeMap<K, V>>;

fn memo_get<K: Ord, V: Clone>(memo: &Memo<K, V>, k: &K) -> Option<V> {
    memo.lock().expect("memo lock").get(k).cloned()
}

fn memo_put<K: Ord, V>(memo: &Memo<K, V>, k: K, v: V) {
    memo.lock().expect("memo lock").entry(k).or_insert(v);
}

/// Shift-algebra action recovered from a graded Clifford module: the shifts
/// are the identity on `W_0` and solve `Λ K1 = Γ_1(K1)`, `Λ Km1 = Γ_{-1}(Km1)`
/// level by level; `E = P_1 K1` and `F = Km1 Q_1`.
pub struct Reconstructed<M: CModule> {
    inner: M,
    memo: Memo<(bool, M::Basis), State<M::Basis>>,
}

pub fn reconstruct_shift_ops<M: CModule>(m: M) -> Reconstructed<M> {
    Reconstructed { inner: m, memo: Mutex::new(BTreeMap::new()) }
}

impl<M: CModule> Reconstructed<M> {
    pub fn inner(&self) -> &M {
        &self.inner
    }

    fn shift(&self, raise: bool, b: &M::Basis) -> Result<State<M::Basis>> {
        let level = self.inner.level(b);
        if level == 0 {
            return Ok(State::basis(b.clone()));
        }
        let key = (raise, b.clone());
        if let Some(hit) = memo_get(&self.memo, &key) {
            return Ok(hit);
        }
        let bound =
            self.inner.q_support(b).ok_or_else(|| Error::Inadmissible(format!("no Q-support bound for {b}")))?;
        let mut acc = State::zero();
        // K1:  Σ_{n>=1} P_{n+1} K1 Q_n      Km1: Σ_{m>=1} P_m Km1 Q_{m+1}
        for n in 1..=bound {
            let (p_idx, q_idx) = if raise { (n + 1, n) } else { (n, n + 1) };
            if q_idx > bound {
                break;
            }
            let q = self.inner.q(q_idx, b)?;
            if q.is_zero() {
                continue;
            }
            let shifted = q.try_map_linear(|x| self.shift(raise, x))?;
            acc = acc + self.inner.p_state(p_idx, &shifted)?;
        }
        let out = acc.scale(&Scalar::ratio(1, level as i64));
        memo_put(&self.memo, key, out.clone());
        Ok(out)
    }
}

impl<M: CModule> EModule for Reconstructed<M> {
    type Basis = M::Basis;

    fn act(&self, g: Generator, b: &M::Basis) -> Result<State<M::Basis>> {
        match g {
            Generator::K1 => self.shift(true, b),
            Generator::Km1 => self.shift(false, b),
            Generator::E => {
                let k = self.shift(true, b)?;
                self.inner.p_state(1, &k)
            }
            Generator::F => {
                let q = self.inner.q(1, b)?;
                q.try_map_linear(|x| self.shift(false, x))
            }
        }
    }

    fn level(&self, b: &M::Basis) -> usize {
        self.inner.level(b)
    }

    fn degree(&self, b: &M::Basis) -> u64 {
        self.inner.degree(b)
    }

    fn basis(&self, level: usize, degree: u64) -> Vec<M::Basis> {
        self.inner.basis(level, degree)
    }

    fn vacuum_basis(&self) -> Vec<M::Basis> {
        self.inner.vacuum_basis()
    }
}

/// Element of the level-`level` piece `W_level` of a filtered Heisenberg module.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GradedElement<B> {
    pub level: usize,
    pub payload: B,
}

impl<B: fmt::Display> fmt::Display for GradedElement<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.payload)
    }
}

impl<B: Basis> Basis for GradedElement<B> {}

/// The graded shift-algebra module `⊕_i W_i` built from a Heisenberg module,
/// with `W_i = ∩_{l > i} ker H_{-l}`.
///
/// On `W_k`: `E` is the inclusion into `W_{k+1}`, `F = id - H_k L_k` into
/// `W_{k-1}`, `K1 = H_k`, `Km1 = L_k`, with `H_0 = L_0 = id`.
pub struct Fermionized<M: HModule> {
    inner: M,
}

pub fn fermionize<M: HModule>(m: M) -> Fermionized<M> {
    Fermionized { inner: m }
}

impl<M: HModule> Fermionized<M> {
    pub fn inner(&self) -> &M {
        &self.inner
    }

    /// Places `payload` at `level`, checking that it lies in `W_level`.
    pub fn graded(&self, level: usize, payload: &State<M::Basis>) -> Result<State<GradedElement<M::Basis>>> {
        if !self.inner.in_filtered_piece(level, payload)? {
            return Err(Error::Domain(format!("{payload} does not lie in the level-{level} piece")));
        }
        Ok(lift_level(level, payload))
    }
}

fn lift_level<B: Basis>(level: usize, s: &State<B>) -> State<GradedElement<B>> {
    s.map_basis(|b| Some((GradedElement { level, payload: b.clone() }, Scalar::one())))
}

impl<M: HModule> EModule for Fermionized<M> {
    type Basis = GradedElement<M::Basis>;

    fn act(&self, g: Generator, b: &Self::Basis) -> Result<State<Self::Basis>> {
        let k = b.level;
        let w = State::basis(b.payload.clone());
        match g {
            Generator::E => Ok(lift_level(k + 1, &w)),
            Generator::F => {
                if k == 0 {
                    return Ok(State::zero());
                }
                let hl = self.inner.h_state(k as i64, &self.inner.l_state(k as i64, &w)?)?;
                let out = &w - &hl;
                if !self.inner.in_filtered_piece(k - 1, &out)? {
                    return Err(Error::Inadmissible(format!("(1 - H{k} L{k}) {w} = {out} is not in level {}", k - 1)));
                }
                Ok(lift_level(k - 1, &out))
            }
            Generator::K1 if k == 0 => Ok(lift_level(0, &w)),
            Generator::Km1 if k == 0 => Ok(lift_level(0, &w)),
            Generator::K1 => Ok(lift_level(k, &self.inner.h_state(k as i64, &w)?)),
            Generator::Km1 => Ok(lift_level(k, &self.inner.l_state(k as i64, &w)?)),
        }
    }

    fn level(&self, b: &Self::Basis) -> usize {
        b.level
    }

    fn degree(&self, b: &Self::Basis) -> u64 {
        self.inner.degree(&b.payload)
    }

    fn basis(&self, level: usize, degree: u64) -> Vec<Self::Basis> {
        self.inner
            .basis_of_degree(degree)
            .into_iter()
            .filter(|b| matches!(self.inner.in_filtered_piece(level, &State::basis(b.clone())), Ok(true)))
            .map(|payload| GradedElement { level, payload })
            .collect()
    }

    fn vacuum_basis(&self) -> Vec<Self::Basis> {
        self.inner.vacuum_basis().into_iter().map(|payload| GradedElement { level: 0, payload }).collect()
    }
}

/// A basis vector of the stable limit: a basis element at the lowest level
/// from which it is reachable by the connecting map `E`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct LimitBasis<B> {
    pub level: usize,
    pub rep: B,
}

impl<B: fmt::Display> fmt::Display for LimitBasis<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.rep, f)
    }
}

impl<B: Basis> Basis for LimitBasis<B> {}

/// An element of the stable limit given by a representative at some level.
/// `(i, w)` and `(i', w')` with `i <= i'` agree iff `E^{i'-i} w = w'`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LimitClass<B: Basis> {
    pub level: usize,
    pub representative: State<B>,
}

/// The Heisenberg module on the stable limit `lim W_i` of a graded `E`-module,
/// with `H_j` the limit of the level-wise operators
///
/// ```text
/// H_{i,i}  = K1|W_i
/// H_{i,-i} = -i Σ_{l>=0} K1^l Km1^{l+1}|W_i
/// H_{i,j}  = Σ_{l>=0} E_l H_{i-1,j} F_l      (|j| < i)
/// ```
pub struct StableLimit<M: EModule> {
    inner: M,
    memo: Memo<(usize, i64, M::Basis), State<M::Basis>>,
}

pub fn bosonize<M: EModule>(m: M) -> StableLimit<M> {
    StableLimit { inner: m, memo: Mutex::new(BTreeMap::new()) }
}

impl<M: EModule> StableLimit<M> {
    pub fn inner(&self) -> &M {
        &self.inner
    }

    /// Pulls a basis element down through `E` as far as possible.
    pub fn reduce(&self, b: &M::Basis) -> Result<LimitBasis<M::Basis>> {
        let mut level = self.inner.level(b);
        let mut cur = b.clone();
        while level > 0 {
            let down = self.inner.act(Generator::F, &cur)?;
            let Some((prev, c)) = down.as_single() else { break };
            if !c.is_one() || self.inner.act(Generator::E, prev)? != State::basis(cur.clone()) {
                break;
            }
            cur = prev.clone();
            level -= 1;
        }
        Ok(LimitBasis { level, rep: cur })
    }

    pub fn reduce_state(&self, s: &State<M::Basis>) -> Result<State<LimitBasis<M::Basis>>> {
        let mut out = State::zero();
        for (b, c) in s {
            out.add_term(self.reduce(b)?, c.clone());
        }
        Ok(out)
    }

    /// Applies the connecting map `to - from` times.
    pub fn lift(&self, s: &State<M::Basis>, from: usize, to: usize) -> Result<State<M::Basis>> {
        let mut cur = s.clone();
        for _ in from..to {
            cur = self.inner.act_state(Generator::E, &cur)?;
        }
        Ok(cur)
    }

    pub fn class_of(&self, c: &LimitClass<M::Basis>) -> Result<State<LimitBasis<M::Basis>>> {
        self.reduce_state(&c.representative)
    }

    /// `H_{i,j}` on a basis element of `W_i`, `0 < |j| <= i`.
    pub fn h_level(&self, i: usize, j: i64, b: &M::Basis) -> Result<State<M::Basis>> {
        let aj = j.unsigned_abs() as usize;
        if j == 0 || aj > i {
            return Err(Error::IndexDomain(format!("H_{{{i},{j}}} needs 0 < |j| <= i")));
        }
        let key = (i, j, b.clone());
        if let Some(hit) = memo_get(&self.memo, &key) {
            return Ok(hit);
        }
        let cap = iteration_cap(self.inner.degree(b));
        let too_long = || Error::Inadmissible(format!("Km1 powers on {b} did not vanish within {cap} steps"));
        let s = State::basis(b.clone());
        let out = if j as i128 == i as i128 {
            self.inner.act_state(Generator::K1, &s)?
        } else if j as i128 == -(i as i128) {
            let mut acc = State::zero();
            let mut lowered = self.inner.act_state(Generator::Km1, &s)?;
            let mut l = 0;
            while !lowered.is_zero() {
                if l >= cap {
                    return Err(too_long());
                }
                let mut term = lowered.clone();
                for _ in 0..l {
                    term = self.inner.act_state(Generator::K1, &term)?;
                }
                acc = acc + term;
                lowered = self.inner.act_state(Generator::Km1, &lowered)?;
                l += 1;
            }
            acc.scale(&Scalar::from_int(-(i as i64)))
        } else {
            let mut acc = State::zero();
            let mut shifted = s;
            let mut l = 0;
            while !shifted.is_zero() {
                if l >= cap {
                    return Err(too_long());
                }
                let down = self.inner.act_state(Generator::F, &shifted)?;
                if !down.is_zero() {
                    let mid = down.try_map_linear(|x| self.h_level(i - 1, j, x))?;
                    let mut up = self.inner.act_state(Generator::E, &mid)?;
                    for _ in 0..l {
                        up = self.inner.act_state(Generator::K1, &up)?;
                    }
                    acc = acc + up;
                }
                shifted = self.inner.act_state(Generator::Km1, &shifted)?;
                l += 1;
            }
            acc
        };
        memo_put(&self.memo, key, out.clone());
        Ok(out)
    }

    pub fn h_level_state(&self, i: usize, j: i64, s: &State<M::Basis>) -> Result<State<M::Basis>> {
        s.try_map_linear(|b| self.h_level(i, j, b))
    }

    /// `H_j` on the class of `c`: lift to a level `>= |j|`, apply `H_{i,j}`, reduce.
    pub fn bosonize_h(&self, j: i64, c: &LimitClass<M::Basis>) -> Result<LimitClass<M::Basis>> {
        if j == 0 {
            return Err(Error::IndexDomain("Heisenberg index must be nonzero".into()));
        }
        let target = c.level.max(j.unsigned_abs() as usize);
        let lifted = self.lift(&c.representative, c.level, target)?;
        Ok(LimitClass { level: target, representative: self.h_level_state(target, j, &lifted)? })
    }

    pub fn limit_equal(&self, a: &LimitClass<M::Basis>, b: &LimitClass<M::Basis>) -> Result<bool> {
        let top = a.level.max(b.level);
        Ok(self.lift(&a.representative, a.level, top)? == self.lift(&b.representative, b.level, top)?)
    }
}

impl<M: EModule> HModule for StableLimit<M> {
    type Basis = LimitBasis<M::Basis>;

    fn h(&self, k: i64, b: &Self::Basis) -> Result<State<Self::Basis>> {
        let class = LimitClass { level: b.level, representative: State::basis(b.rep.clone()) };
        let out = self.bosonize_h(k, &class)?;
        self.class_of(&out)
    }

    fn degree(&self, b: &Self::Basis) -> u64 {
        self.inner.degree(&b.rep)
    }

    fn basis_of_degree(&self, d: u64) -> Vec<Self::Basis> {
        let mut out: Vec<Self::Basis> =
            (0..=d as usize).flat_map(|lvl| self.inner.basis(lvl, d)).filter_map(|b| self.reduce(&b).ok()).collect();
        out.sort();
        out.dedup();
        out
    }

    fn vacuum_basis(&self) -> Vec<Self::Basis> {
        let mut out: Vec<Self::Basis> = self.inner.vacuum_basis().iter().filter_map(|b| self.reduce(b).ok()).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// `x_{i_1} ∧ ... ∧ x_{i_n} ↦ Π_r y_r^{e_r}` with `e_r = i_{n+1-r} - i_{n-r} - 1`
/// (`i_0 = 0`), so the gap before the top index feeds `y_1` and the gap below
/// the bottom index feeds `y_n`.
pub fn rho(m: &WedgeMonomial) -> BosonMonomial {
    let idx = m.indices();
    let n = idx.len();
    let pairs = (1..=n).map(|r| {
        let hi = idx[n - r];
        let lo = if n - r == 0 { 0 } else { idx[n - r - 1] };
        (r as u32, hi - lo - 1)
    });
    BosonMonomial::new(pairs).expect("variable indices start at 1")
}

pub fn rho_state(s: &FermionState) -> BosonState {
    s.map_basis(|m| Some((rho(m), Scalar::one())))
}

/// One row of [`structure_iso_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: u64,
    /// Dimension of the degree-`d` piece, from the module's basis enumerator.
    pub dimension: usize,
    /// Number of vectors `H_λ w_0` with `|λ| + deg w_0 = d`.
    pub vectors: usize,
    pub rank: usize,
    /// `Σ_{w_0} p(d - deg w_0)`.
    pub expected: u64,
}

#[derive(Clone, Debug)]
pub struct StructureCheck {
    pub rows: Vec<DegreeRow>,
    pub report: Report,
}

/// Checks that `y^λ ⊗ w_0 ↦ H_λ w_0` is an isomorphism `B ⊗ W_0 → M` in each
/// degree up to `max_degree`.
pub fn structure_iso_check<M: HModule>(m: &M, max_degree: u64) -> Result<StructureCheck> {
    let vac = m.vacuum_basis();
    let mut report = Report::new(format!("B ⊗ W_0 structure (dim W_0 = {}, degree <= {max_degree})", vac.len()));
    let mut rows = Vec::new();
    for d in 0..=max_degree {
        let mut vectors = Vec::new();
        let mut expected = 0;
        for w0 in &vac {
            let e = m.degree(w0);
            if e > d {
                continue;
            }
            expected += partition_count(d - e);
            for lam in Partition::all_of(d - e) {
                let mut s = State::basis(w0.clone());
                for (&i, &n) in lam.multiplicities() {
                    for _ in 0..n {
                        s = m.h_state(i as i64, &s)?;
                    }
                }
                vectors.push(s);
            }
        }
        let dimension = m.basis_of_degree(d).len();
        let r = rank(&vectors);
        let row = DegreeRow { degree: d, dimension, vectors: vectors.len(), rank: r, expected };
        let ok = r == vectors.len() && r == dimension && dimension as u64 == expected;
        report.record(format!("degree {d}: dim {dimension} = rank {r} = {expected}"), ok, format!("{row:?}"));
        rows.push(row);
    }
    Ok(StructureCheck { rows, report })
}

fn record(report: &mut Report, name: String, bad: Option<String>) {
    let ok = bad.is_none();
    report.record(name, ok, bad.unwrap_or_default());
}

/// `Λ = Γ_0(id)` is `n` times the identity on the length-`n` piece.
pub fn check_lambda(max_length: usize, max_index: u32) -> Report {
    let mut report = Report::new(format!("Γ_0(id) = n on length n (n <= {max_length}, indices <= {max_index})"));
    let id = |s: &FermionState| Ok(s.clone());
    let basis = WedgeMonomial::all_up_to(max_index);
    for n in 0..=max_length {
        let bad = basis.iter().filter(|m| m.len() == n).find_map(|m| {
            let s = FermionState::basis(m.clone());
            let want = s.scale(&Scalar::from_int(n as i64));
            match gamma(&crate::modules::FermionSpace, &id, 0, &s) {
                Ok(got) if got == want => None,
                Ok(got) => Some(format!("on {m}: {got}")),
                Err(e) => Some(format!("on {m}: {e}")),
            }
        });
        record(&mut report, format!("Γ_0(id) = {n} on length {n}"), bad);
    }
    report
}

/// `[H_{i,j}, H_{i,k}] = j δ_{j,-k}` on `W_i` for `i <= max_level`.
pub fn check_levelwise_bracket<M: EModule>(lim: &StableLimit<M>, max_level: usize, max_degree: u64) -> Report {
    let mut report = Report::new(format!("level-wise brackets (i <= {max_level}, degree <= {max_degree})"));
    for i in 1..=max_level {
        let basis: Vec<M::Basis> = (0..=max_degree).flat_map(|d| lim.inner.basis(i, d)).collect();
        let ii = i as i64;
        let mut bad = None;
        'outer: for j in (-ii..=ii).filter(|&x| x != 0) {
            for k in (-ii..=ii).filter(|&x| x != 0) {
                for b in &basis {
                    let s = State::basis(b.clone());
                    let got = (|| -> Result<State<M::Basis>> {
                        Ok(lim.h_level_state(i, j, &lim.h_level_state(i, k, &s)?)?
                            - lim.h_level_state(i, k, &lim.h_level_state(i, j, &s)?)?)
                    })();
                    let want = if j == -k { s.scale(&Scalar::from_int(j)) } else { State::zero() };
                    match got {
                        Ok(g) if g == want => {}
                        Ok(g) => {
                            bad = Some(format!("[H{i},{j}, H{i},{k}] on {b}: {g} vs {want}"));
                            break 'outer;
                        }
                        Err(e) => {
                            bad = Some(format!("[H{i},{j}, H{i},{k}] on {b}: {e}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
        record(&mut report, format!("[H_{{{i},j}}, H_{{{i},k}}] = j δ_{{j,-k}} on W_{i}"), bad);
    }
    report
}

/// `H_{i+1,j} E = E H_{i,j}` on `W_i`, which makes the limit operators well defined.
pub fn check_connecting_compatibility<M: EModule>(lim: &StableLimit<M>, max_level: usize, max_degree: u64) -> Report {
    let mut report = Report::new("compatibility with the connecting map");
    for i in 1..=max_level {
        let ii = i as i64;
        let basis: Vec<M::Basis> = (0..=max_degree).flat_map(|d| lim.inner.basis(i, d)).collect();
        let mut bad = None;
        'outer: for j in (-ii..=ii).filter(|&x| x != 0) {
            for b in &basis {
                let s = State::basis(b.clone());
                type Pair<B> = (State<B>, State<B>);
                let got = (|| -> Result<Pair<M::Basis>> {
                    let lhs = lim.h_level_state(i + 1, j, &lim.inner.act_state(Generator::E, &s)?)?;
                    let rhs = lim.inner.act_state(Generator::E, &lim.h_level_state(i, j, &s)?)?;
                    Ok((lhs, rhs))
                })();
                match got {
                    Ok((l, r)) if l == r => {}
                    Ok((l, r)) => {
                        bad = Some(format!("j={j} on {b}: {l} vs {r}"));
                        break 'outer;
                    }
                    Err(e) => {
                        bad = Some(format!("j={j} on {b}: {e}"));
                        break 'outer;
                    }
                }
            }
        }
        record(&mut report, format!("H_{{{},j}} E = E H_{{{i},j}}", i + 1), bad);
    }
    report
}

/// `[H_i, H_j] = i δ_{i,-j}` on the stable-limit classes of the given basis elements.
pub fn check_limit_bracket<M: EModule>(lim: &StableLimit<M>, max_abs: i64, generators: &[M::Basis]) -> Result<Report> {
    let mut report = Report::new(format!("bosonized brackets (|i|,|j| <= {max_abs}, {} classes)", generators.len()));
    let mut classes: Vec<LimitBasis<M::Basis>> = generators.iter().map(|b| lim.reduce(b)).collect::<Result<_>>()?;
    classes.sort();
    classes.dedup();
    let idx: Vec<i64> = (-max_abs..=max_abs).filter(|&k| k != 0).collect();
    for &i in &idx {
        for &j in &idx {
            let mut bad = None;
            for c in &classes {
                let s = LinComb::basis(c.clone());
                let got = lim.h_state(i, &lim.h_state(j, &s)?)? - lim.h_state(j, &lim.h_state(i, &s)?)?;
                let want = if i == -j { s.scale(&Scalar::from_int(i)) } else { State::zero() };
                if got != want {
                    bad = Some(format!("on {c}: {got} vs {want}"));
                    break;
                }
            }
            let c = if i == -j { i } else { 0 };
            record(&mut report, format!("[H{i},H{j}] = {c}"), bad);
        }
    }
    Ok(report)
}

/// Reconstruction from the Clifford action agrees with the native shift-algebra action.
pub fn check_reconstruction<R, N>(rec: &R, native: &N, basis: &[R::Basis]) -> Report
where
    R: EModule,
    N: EModule<Basis = R::Basis>,
{
    let mut report = Report::new(format!("reconstructed vs native action ({} basis states)", basis.len()));
    for g in Generator::ALL {
        let bad = basis.iter().find_map(|b| match (rec.act(g, b), native.act(g, b)) {
            (Ok(x), Ok(y)) if x == y => None,
            (Ok(x), Ok(y)) => Some(format!("on {b}: {x} vs {y}")),
            (Err(e), _) | (_, Err(e)) => Some(format!("on {b}: {e}")),
        });
        record(&mut report, format!("reconstructed {g} = native {g}"), bad);
    }
    report
}

/// `ρ` restricted to length `n` is a degree-preserving bijection onto the
/// monomials of `Q[y_1, ..., y_n]`, and `ρ ∘ E = ρ`.
pub fn check_rho(max_level: usize, max_degree: u64) -> Report {
    let mut report = Report::new(format!("rho isomorphism (level <= {max_level}, degree <= {max_degree})"));
    let mut bij_bad = None;
    let mut deg_bad = None;
    let mut inv_bad = None;
    for n in 0..=max_level {
        for d in 0..=max_degree {
            let src = WedgeMonomial::enumerate(n, d);
            let mut image: Vec<BosonMonomial> = src.iter().map(rho).collect();
            image.sort();
            let before = image.len();
            image.dedup();
            let target = BosonMonomial::enumerate_bounded(d, n as u32);
            if (image.len() != before || image != target) && bij_bad.is_none() {
                bij_bad = Some(format!("level {n}, degree {d}"));
            }
            for m in &src {
                let r = rho(m);
                if r.degree() != m.t_degree() && deg_bad.is_none() {
                    deg_bad = Some(format!("{m} -> {r}"));
                }
                let e = crate::fermion::e_basis(m);
                let (em, _) = e.as_single().expect("E maps monomials to monomials");
                if rho(em) != r && inv_bad.is_none() {
                    inv_bad = Some(format!("{m}: {r} vs {}", rho(em)));
                }
            }
        }
    }
    record(&mut report, "rho: F_n(d) -> Q[y_1..y_n]_d bijective".into(), bij_bad);
    record(&mut report, "rho preserves the degree".into(), deg_bad);
    record(&mut report, "rho(E m) = rho(m)".into(), inv_bad);
    report
}

/// Compares `ρ(H_k c)` with `y_k ρ(c)` (and `-k ∂/∂y_k` for `k < 0`) on the
/// stable-limit classes of degree `<= max_degree`. Not assumed to hold.
pub fn check_rho_intertwining(max_k: i64, max_degree: u64) -> Result<Report> {
    let lim = bosonize(crate::modules::FermionSpace);
    let mut report = Report::new(format!("rho intertwines H_k (|k| <= {max_k}, degree <= {max_degree})"));
    let classes: Vec<_> = (0..=max_degree).flat_map(|d| lim.basis_of_degree(d)).collect();
    for k in (-max_k..=max_k).filter(|&k| k != 0) {
        let mut bad = None;
        for c in &classes {
            let got = rho_state(&lim.h(k, c)?.map_basis(|b| Some((b.rep.clone(), Scalar::one()))));
            let want = crate::boson::act_h(k, &BosonState::basis(rho(&c.rep)))?;
            if got != want {
                bad = Some(format!("on {c}: {got} vs {want}"));
                break;
            }
        }
        record(&mut report, format!("rho H{k} = H{k} rho"), bad);
    }
    Ok(report)
}

/// Dimensions of the `(level, degree)` pieces of two graded modules agree.
pub fn check_graded_dimensions<A: EModule, B: EModule>(a: &A, b: &B, max_level: usize, max_degree: u64) -> Report {
    let mut report = Report::new(format!("graded dimensions (level <= {max_level}, degree <= {max_degree})"));
    let mut bad = None;
    for n in 0..=max_level {
        for d in 0..=max_degree {
            let (x, y) = (a.basis(n, d).len(), b.basis(n, d).len());
            if x != y && bad.is_none() {
                bad = Some(format!("level {n}, degree {d}: {x} vs {y}"));
            }
        }
    }
    record(&mut report, "dim W(n, d) agree".into(), bad);
    report
}
