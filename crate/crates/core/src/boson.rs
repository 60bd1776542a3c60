//! The Bosonic Fock space `Q[y_1, y_2, ...]` with Heisenberg operators
//! `H_k = y_k·` and `H_{-k} = -k ∂/∂y_k` for `k > 0`, so that
//! `[H_i, H_j] = i δ_{i,-j}`.

use crate::error::{Error, Result};
use crate::report::Report;
use crate::scalar::Scalar;
use crate::states::{BosonMonomial, BosonState, Partition};

fn heisenberg_index(k: i64) -> Result<u32> {
    if k == 0 {
        return Err(Error::IndexDomain("Heisenberg index must be nonzero".into()));
    }
    u32::try_from(k.unsigned_abs()).map_err(|_| Error::IndexDomain(format!("Heisenberg index {k} too large")))
}

/// `H_k` on a single monomial; `k != 0` is the caller's responsibility.
pub fn h_basis(k: i64, m: &BosonMonomial) -> BosonState {
    let v = k.unsigned_abs() as u32;
    if k > 0 {
        BosonState::basis(m.shifted(v, 1).expect("raising never underflows"))
    } else {
        let e = m.exponent(v);
        match m.shifted(v, -1) {
            Some(lower) => BosonState::term(lower, Scalar::from_int(-(v as i64) * e as i64)),
            None => BosonState::zero(),
        }
    }
}

pub fn act_h(k: i64, s: &BosonState) -> Result<BosonState> {
    heisenberg_index(k)?;
    Ok(s.map_linear(|m| h_basis(k, m)))
}

/// Closed form of `L_k`: divide once by `y_k`, killing monomials without `y_k`.
pub fn l_basis(k: u32, m: &BosonMonomial) -> BosonState {
    match m.shifted(k, -1) {
        Some(lower) => BosonState::basis(lower),
        None => BosonState::zero(),
    }
}

fn l_index(k: i64) -> Result<u32> {
    if k < 1 {
        return Err(Error::IndexDomain(format!("L_k requires k >= 1, got {k}")));
    }
    heisenberg_index(k)
}

pub fn act_l(k: i64, s: &BosonState) -> Result<BosonState> {
    let k = l_index(k)?;
    Ok(s.map_linear(|m| l_basis(k, m)))
}

/// `L_k = Σ_{i>=1} -1/(k^i i!) H_k^{i-1} H_{-k}^i`, summed until `H_{-k}^i` vanishes.
pub fn act_l_series(k: i64, s: &BosonState) -> Result<BosonState> {
    let kk = l_index(k)? as i64;
    let mut out = BosonState::zero();
    let mut lowered = s.clone();
    let mut denom = Scalar::one();
    let mut i: i64 = 0;
    loop {
        i += 1;
        lowered = act_h(-kk, &lowered)?;
        if lowered.is_zero() {
            break;
        }
        denom = &denom * &Scalar::from_int(kk * i);
        let mut term = lowered.clone();
        for _ in 0..i - 1 {
            term = act_h(kk, &term)?;
        }
        let coeff = -(Scalar::one() / denom.clone());
        out.add_scaled(&term, &coeff);
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `H_λ = Π H_i^{n_i}` or `H_{-λ} = Π H_{-i}^{n_i}`.
pub fn act_h_partition(lambda: &Partition, sign: Sign, s: &BosonState) -> BosonState {
    let mut cur = s.clone();
    for (&i, &n) in lambda.multiplicities() {
        let k = match sign {
            Sign::Plus => i as i64,
            Sign::Minus => -(i as i64),
        };
        for _ in 0..n {
            cur = cur.map_linear(|m| h_basis(k, m));
        }
    }
    cur
}

/// Smallest `i` with `s ∈ Q[y_1, ..., y_i]`.
pub fn filtration_level(s: &BosonState) -> Result<u32> {
    if s.is_zero() {
        return Err(Error::Domain("filtration level of the zero state is undefined".into()));
    }
    Ok(s.keys().map(BosonMonomial::max_variable).max().unwrap_or(0))
}

fn monomials_up_to(max_degree: u64) -> Vec<BosonMonomial> {
    (0..=max_degree).flat_map(BosonMonomial::enumerate).collect()
}

fn find_bad(
    basis: &[BosonMonomial],
    mut lhs: impl FnMut(&BosonState) -> BosonState,
    mut rhs: impl FnMut(&BosonState) -> BosonState,
) -> Option<String> {
    basis.iter().find_map(|m| {
        let s = BosonState::basis(m.clone());
        let (a, b) = (lhs(&s), rhs(&s));
        (a != b).then(|| format!("on {m}: {a} vs {b}"))
    })
}

fn rec(report: &mut Report, name: String, bad: Option<String>) {
    let ok = bad.is_none();
    report.record(name, ok, bad.unwrap_or_default());
}

fn h(k: i64, s: &BosonState) -> BosonState {
    s.map_linear(|m| h_basis(k, m))
}

/// `[H_i, H_j] = i δ_{i,-j}` for `0 < |i|, |j| <= max_abs` on monomials of degree `<= max_degree`.
pub fn check_heisenberg_relations(max_abs: i64, max_degree: u64) -> Report {
    let basis = monomials_up_to(max_degree);
    let mut report = Report::new(format!("heisenberg relations on B (|i|,|j| <= {max_abs}, degree <= {max_degree})"));
    let idx: Vec<i64> = (-max_abs..=max_abs).filter(|&k| k != 0).collect();
    for &i in &idx {
        for &j in &idx {
            let c = if i == -j { Scalar::from_int(i) } else { Scalar::zero() };
            rec(
                &mut report,
                format!("[H{i},H{j}] = {c}"),
                find_bad(&basis, |s| h(i, &h(j, s)) - h(j, &h(i, s)), |s| s.scale(&c)),
            );
        }
    }
    report
}

/// `H_{-k} H_k^i = H_k^i H_{-k} - i k H_k^{i-1}` and its mirror. The lower
/// power on the correction term is needed for `i >= 2`.
pub fn check_power_commutation(max_k: i64, max_i: u32, max_degree: u64) -> Report {
    let basis = monomials_up_to(max_degree);
    let mut report = Report::new("commutation of H_{-k} with powers of H_k");
    let pow = |k: i64, n: u32, s: &BosonState| (0..n).fold(s.clone(), |acc, _| h(k, &acc));
    for k in 1..=max_k {
        for i in 1..=max_i {
            let c = Scalar::from_int(i as i64 * k);
            rec(
                &mut report,
                format!("H-{k} H{k}^{i} = H{k}^{i} H-{k} - {c} H{k}^{}", i - 1),
                find_bad(&basis, |s| h(-k, &pow(k, i, s)), |s| &pow(k, i, &h(-k, s)) - &pow(k, i - 1, s).scale(&c)),
            );
            rec(
                &mut report,
                format!("H-{k}^{i} H{k} = H{k} H-{k}^{i} - {c} H-{k}^{}", i - 1),
                find_bad(&basis, |s| pow(-k, i, &h(k, s)), |s| &h(k, &pow(-k, i, s)) - &pow(-k, i - 1, s).scale(&c)),
            );
        }
    }
    report
}

/// `L_k H_k = id`, `H_{-k}(1 - H_k L_k) = 0`, and series/closed-form agreement of `L_k`.
pub fn check_inverse_operators(max_k: i64, max_degree: u64) -> Report {
    let basis = monomials_up_to(max_degree);
    let mut report = Report::new(format!("inverse operators L_k (k <= {max_k}, degree <= {max_degree})"));
    for k in 1..=max_k {
        let l = |s: &BosonState| act_l(k, s).expect("k >= 1");
        rec(&mut report, format!("L{k} H{k} = id"), find_bad(&basis, |s| l(&h(k, s)), |s| s.clone()));
        rec(
            &mut report,
            format!("H-{k} (1 - H{k} L{k}) = 0"),
            find_bad(&basis, |s| h(-k, &(s - &h(k, &l(s)))), |_| BosonState::zero()),
        );
        rec(
            &mut report,
            format!("L{k} series = divide by y{k}"),
            find_bad(&basis, |s| act_l_series(k, s).expect("k >= 1"), l),
        );
    }
    report
}

/// `H_{-λ} s = 0` whenever `|λ| > deg s`.
pub fn check_admissibility(max_degree: u64) -> Report {
    let mut report = Report::new(format!("admissibility of B (degree <= {max_degree})"));
    let mut bad = None;
    'outer: for d in 0..=max_degree {
        for m in BosonMonomial::enumerate(d) {
            let s = BosonState::basis(m.clone());
            for lam in Partition::all_of(d + 1).into_iter().chain(Partition::all_of(d + 2)) {
                if !act_h_partition(&lam, Sign::Minus, &s).is_zero() {
                    bad = Some(format!("H_-{lam} on {m}"));
                    break 'outer;
                }
            }
        }
    }
    rec(&mut report, "H_{-λ} s = 0 for |λ| > deg s".into(), bad);
    report
}
