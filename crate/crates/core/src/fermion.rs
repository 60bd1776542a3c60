//! The Fermionic Fock space: the concrete action of `K1, Km1, E, F` on wedge
//! monomials, and the Clifford operators `P_i` (wedge on the left) and `Q_i`
//! (contract from the left).

use std::fmt;

use crate::ealgebra::{AlgElement, Generator, NormalForm};
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::report::Report;
use crate::scalar::Scalar;
use crate::states::{FermionState, WedgeMonomial};

fn shift_up(m: &WedgeMonomial) -> Vec<u32> {
    m.indices().iter().map(|i| i + 1).collect()
}

pub fn k1_basis(m: &WedgeMonomial) -> FermionState {
    FermionState::basis(WedgeMonomial::from_raw(shift_up(m)))
}

pub fn km1_basis(m: &WedgeMonomial) -> FermionState {
    // x_0 := 0
    if m.indices().first() == Some(&1) {
        return FermionState::zero();
    }
    FermionState::basis(WedgeMonomial::from_raw(m.indices().iter().map(|i| i - 1).collect()))
}

pub fn e_basis(m: &WedgeMonomial) -> FermionState {
    let mut v = Vec::with_capacity(m.len() + 1);
    v.push(1);
    v.extend(shift_up(m));
    FermionState::basis(WedgeMonomial::from_raw(v))
}

/// Contract `∂/∂x_1` first, then shift down.
pub fn f_basis(m: &WedgeMonomial) -> FermionState {
    match m.indices().split_first() {
        Some((1, rest)) => FermionState::basis(WedgeMonomial::from_raw(rest.iter().map(|i| i - 1).collect())),
        _ => FermionState::zero(),
    }
}

pub fn act_k1(s: &FermionState) -> FermionState {
    s.map_linear(k1_basis)
}

pub fn act_km1(s: &FermionState) -> FermionState {
    s.map_linear(km1_basis)
}

pub fn act_e(s: &FermionState) -> FermionState {
    s.map_linear(e_basis)
}

pub fn act_f(s: &FermionState) -> FermionState {
    s.map_linear(f_basis)
}

pub fn act_generator(g: Generator, s: &FermionState) -> FermionState {
    match g {
        Generator::K1 => act_k1(s),
        Generator::Km1 => act_km1(s),
        Generator::E => act_e(s),
        Generator::F => act_f(s),
    }
}

fn clifford_index(i: i64, what: &str) -> Result<u32> {
    if i < 1 {
        return Err(Error::IndexDomain(format!("{what} requires index >= 1, got {i}")));
    }
    u32::try_from(i).map_err(|_| Error::IndexDomain(format!("{what} index {i} too large")))
}

/// `x_i ∧ m` reordered into increasing position, with the Koszul sign.
pub fn p_basis(i: u32, m: &WedgeMonomial) -> FermionState {
    let idx = m.indices();
    match idx.binary_search(&i) {
        Ok(_) => FermionState::zero(),
        Err(pos) => {
            let mut v = idx.to_vec();
            v.insert(pos, i);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            FermionState::term(WedgeMonomial::from_raw(v), Scalar::from_int(sign))
        }
    }
}

/// Left interior derivative `∂/∂x_i`: sign `(-1)^(a-1)` for `x_i` at 1-based position `a`.
pub fn q_basis(i: u32, m: &WedgeMonomial) -> FermionState {
    let idx = m.indices();
    match idx.binary_search(&i) {
        Err(_) => FermionState::zero(),
        Ok(pos) => {
            let mut v = idx.to_vec();
            v.remove(pos);
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            FermionState::term(WedgeMonomial::from_raw(v), Scalar::from_int(sign))
        }
    }
}

pub fn act_p(i: i64, s: &FermionState) -> Result<FermionState> {
    let i = clifford_index(i, "P_i")?;
    Ok(s.map_linear(|m| p_basis(i, m)))
}

pub fn act_q(i: i64, s: &FermionState) -> Result<FermionState> {
    let i = clifford_index(i, "Q_i")?;
    Ok(s.map_linear(|m| q_basis(i, m)))
}

/// Evaluates an element on a state; the rightmost letter of each word acts first.
pub fn eval_element(x: &AlgElement, s: &FermionState) -> FermionState {
    let mut out = FermionState::zero();
    for (w, c) in x {
        let mut cur = s.clone();
        for &g in w.letters().iter().rev() {
            if cur.is_zero() {
                break;
            }
            cur = act_generator(g, &cur);
        }
        out.add_scaled(&cur, c);
    }
    out
}

pub fn eval_normal_form(x: &NormalForm, s: &FermionState) -> FermionState {
    eval_element(x.as_element(), s)
}

/// `E_{a_1} E_{a_2} ... E_{a_n} |0>`, computed with the concrete action.
pub fn verma_vector(a: &[i64]) -> Result<FermionState> {
    if let Some(bad) = a.iter().find(|&&x| x < 0) {
        return Err(Error::IndexDomain(format!("Verma exponents must be >= 0, got {bad}")));
    }
    let mut cur = FermionState::basis(WedgeMonomial::vacuum());
    for &ai in a.iter().rev() {
        cur = act_e(&cur);
        for _ in 0..ai {
            cur = act_k1(&cur);
        }
    }
    Ok(cur)
}

/// All four generators scaled by a common nonzero `λ`.
///
/// This is a rescaled action on the same space, not a representation of the
/// algebra: `(λF)(λE) = λ²`, so the unit relations pick up `λ²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightTwist {
    lambda: Scalar,
}

impl WeightTwist {
    pub fn new(lambda: Scalar) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::Domain("twist parameter must be nonzero".into()));
        }
        Ok(WeightTwist { lambda })
    }

    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    pub fn act(&self, g: Generator, s: &FermionState) -> FermionState {
        act_generator(g, s).scale(&self.lambda)
    }

    pub fn eval(&self, x: &AlgElement, s: &FermionState) -> FermionState {
        let mut out = FermionState::zero();
        for (w, c) in x {
            let mut cur = s.clone();
            for &g in w.letters().iter().rev() {
                cur = self.act(g, &cur);
            }
            out.add_scaled(&cur, c);
        }
        out
    }
}

/// One operator application with its level bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FermionOpReport {
    pub operator: String,
    pub input: FermionState,
    pub output: FermionState,
    pub input_levels: Vec<usize>,
    pub output_levels: Vec<usize>,
}

impl FermionOpReport {
    pub fn new(operator: impl Into<String>, input: FermionState, output: FermionState) -> Self {
        let levels = |s: &FermionState| {
            let mut v: Vec<usize> = s.keys().map(WedgeMonomial::len).collect();
            v.dedup();
            v
        };
        FermionOpReport {
            operator: operator.into(),
            input_levels: levels(&input),
            output_levels: levels(&output),
            input,
            output,
        }
    }
}

impl fmt::Display for FermionOpReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} : {} (levels {:?}) -> {} (levels {:?})",
            self.operator, self.input, self.input_levels, self.output, self.output_levels
        )
    }
}

fn first_mismatch(
    basis: &[WedgeMonomial],
    mut lhs: impl FnMut(&FermionState) -> FermionState,
    mut rhs: impl FnMut(&FermionState) -> FermionState,
) -> Option<(&WedgeMonomial, FermionState, FermionState)> {
    basis.iter().find_map(|m| {
        let s = FermionState::basis(m.clone());
        let (a, b) = (lhs(&s), rhs(&s));
        (a != b).then_some((m, a, b))
    })
}

fn record_mismatch(report: &mut Report, name: String, found: Option<(&WedgeMonomial, FermionState, FermionState)>) {
    match found {
        None => report.record(name, true, ""),
        Some((m, a, b)) => report.record(name, false, format!("on {m}: {a} vs {b}")),
    }
}

/// The five defining relations on every monomial with indices `<= max_index`.
pub fn check_relations_on_states(max_index: u32) -> Report {
    let basis = WedgeMonomial::all_up_to(max_index);
    let mut report = Report::new(format!("defining relations on F (indices <= {max_index}, {} states)", basis.len()));
    let id = |s: &FermionState| s.clone();
    let zero = |_: &FermionState| FermionState::zero();
    record_mismatch(&mut report, "Km1*K1 = 1".into(), first_mismatch(&basis, |s| act_km1(&act_k1(s)), id));
    record_mismatch(&mut report, "F*E = 1".into(), first_mismatch(&basis, |s| act_f(&act_e(s)), id));
    record_mismatch(&mut report, "Km1*E = 0".into(), first_mismatch(&basis, |s| act_km1(&act_e(s)), zero));
    record_mismatch(&mut report, "F*K1 = 0".into(), first_mismatch(&basis, |s| act_f(&act_k1(s)), zero));
    record_mismatch(
        &mut report,
        "K1*Km1 + E*F = 1".into(),
        first_mismatch(&basis, |s| act_k1(&act_km1(s)) + act_e(&act_f(s)), id),
    );
    report
}

/// Anticommutators of the concrete `P_i`, `Q_j` for `i, j <= max_op` on
/// monomials with indices `<= max_index`.
pub fn check_clifford_on_states(max_op: u32, max_index: u32) -> Report {
    let basis = WedgeMonomial::all_up_to(max_index);
    let mut report = Report::new(format!("clifford relations on F (i, j <= {max_op}, indices <= {max_index})"));
    let p = |i: u32, s: &FermionState| s.map_linear(|m| p_basis(i, m));
    let q = |i: u32, s: &FermionState| s.map_linear(|m| q_basis(i, m));
    for i in 1..=max_op {
        for j in 1..=max_op {
            record_mismatch(
                &mut report,
                format!("{{P{i},P{j}}} = 0"),
                first_mismatch(&basis, |s| p(i, &p(j, s)) + p(j, &p(i, s)), |_| FermionState::zero()),
            );
            record_mismatch(
                &mut report,
                format!("{{Q{i},Q{j}}} = 0"),
                first_mismatch(&basis, |s| q(i, &q(j, s)) + q(j, &q(i, s)), |_| FermionState::zero()),
            );
            let delta = if i == j { Scalar::one() } else { Scalar::zero() };
            record_mismatch(
                &mut report,
                format!("{{P{i},Q{j}}} = {delta}"),
                first_mismatch(&basis, |s| p(i, &q(j, s)) + q(j, &p(i, s)), |s| s.scale(&delta)),
            );
        }
    }
    report
}

/// The recursively built `P_i`, `Q_i` act as wedging and contraction.
pub fn check_recursion_agreement(max_op: u32, max_index: u32) -> Report {
    let basis = WedgeMonomial::all_up_to(max_index);
    let mut report = Report::new(format!("recursion vs direct action (i <= {max_op}, indices <= {max_index})"));
    for i in 1..=max_op {
        let pi = crate::ealgebra::build_p(i as i64).expect("i >= 1");
        let qi = crate::ealgebra::build_q(i as i64).expect("i >= 1");
        record_mismatch(
            &mut report,
            format!("P{i} (recursion) = wedge x{i}"),
            first_mismatch(&basis, |s| eval_normal_form(&pi, s), |s| s.map_linear(|m| p_basis(i, m))),
        );
        record_mismatch(
            &mut report,
            format!("Q{i} (recursion) = d/dx{i}"),
            first_mismatch(&basis, |s| eval_normal_form(&qi, s), |s| s.map_linear(|m| q_basis(i, m))),
        );
    }
    report
}

/// Admissibility of `F` as a graded module: the shifts fix the vacuum line and
/// `Km1` eventually kills every monomial of positive length.
pub fn check_admissibility(max_index: u32) -> Report {
    let mut report = Report::new(format!("admissibility of F (indices <= {max_index})"));
    let vac = FermionState::basis(WedgeMonomial::vacuum());
    report.expect_eq("K1 = id on W_0", &act_k1(&vac), &vac);
    report.expect_eq("Km1 = id on W_0", &act_km1(&vac), &vac);
    let bad = WedgeMonomial::all_up_to(max_index).into_iter().filter(|m| !m.is_vacuum()).find(|m| {
        let mut s = FermionState::basis(m.clone());
        for _ in 0..m.indices()[0] {
            s = act_km1(&s);
        }
        !s.is_zero()
    });
    report.record(
        "Km1^{j_1} kills every monomial with smallest index j_1",
        bad.is_none(),
        bad.map(|m| m.to_string()).unwrap_or_default(),
    );
    report
}

pub fn state(indices: &[u32]) -> Result<FermionState> {
    Ok(LinComb::basis(WedgeMonomial::new(indices.to_vec())?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ealgebra::{build_p, normalize, one, word, Generator::*};

    fn w(ix: &[u32]) -> FermionState {
        state(ix).unwrap()
    }

    #[test]
    fn shift_actions() {
        assert_eq!(act_k1(&w(&[1, 3])), w(&[2, 4]));
        assert_eq!(act_k1(&w(&[])), w(&[]));
        assert_eq!(act_k1(&(w(&[2]) - w(&[5]))).to_string(), "w(3) - w(6)");
        assert_eq!(act_km1(&w(&[2, 5])), w(&[1, 4]));
        assert!(act_km1(&w(&[1, 3])).is_zero());
        assert_eq!(act_km1(&w(&[])), w(&[]));
    }

    #[test]
    fn e_and_f() {
        assert_eq!(act_e(&w(&[])), w(&[1]));
        assert_eq!(act_e(&w(&[1, 3])), w(&[1, 2, 4]));
        assert_eq!(act_e(&w(&[2])), w(&[1, 3]));
        assert_eq!(act_f(&w(&[1])), w(&[]));
        assert!(act_f(&w(&[2])).is_zero());
        assert_eq!(act_f(&w(&[1, 4])), w(&[3]));
    }

    #[test]
    fn f_values_forced_by_relations() {
        // FE = 1 on the vacuum and on w(3), FK1 = 0 on w(1)
        assert_eq!(act_f(&act_e(&w(&[]))), w(&[]));
        assert_eq!(act_f(&act_e(&w(&[3]))), w(&[3]));
        assert!(act_f(&act_k1(&w(&[1]))).is_zero());
    }

    #[test]
    fn clifford_actions() {
        assert_eq!(act_p(2, &w(&[1])).unwrap(), -w(&[1, 2]));
        assert_eq!(act_q(2, &w(&[1, 2])).unwrap(), -w(&[1]));
        assert!(act_p(1, &w(&[1, 5])).unwrap().is_zero());
        assert!(matches!(act_p(0, &w(&[1])), Err(Error::IndexDomain(_))));
        assert!(matches!(act_q(-2, &w(&[1])), Err(Error::IndexDomain(_))));
        // P2 from the recursion on w(1)
        assert_eq!(eval_normal_form(&build_p(2).unwrap(), &w(&[1])), -w(&[1, 2]));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_element(&word(&[F, E]), &w(&[2, 7])), w(&[2, 7]));
        assert!(eval_element(&word(&[Km1, E]), &w(&[3])).is_zero());
        let x = one() - word(&[K1, Km1]);
        assert_eq!(eval_element(&x, &w(&[1, 3])), w(&[1, 3]));
        assert_eq!(eval_element(&word(&[E, F]), &w(&[1, 3])), w(&[1, 3]));
        assert_eq!(eval_normal_form(&normalize(&word(&[E, F])), &w(&[1, 3])), w(&[1, 3]));
    }

    #[test]
    fn verma_examples() {
        assert_eq!(verma_vector(&[]).unwrap(), w(&[]));
        assert_eq!(verma_vector(&[2]).unwrap(), w(&[3]));
        assert_eq!(verma_vector(&[0, 1]).unwrap(), w(&[1, 3]));
        assert!(verma_vector(&[1, -1]).is_err());
    }

    #[test]
    fn weight_twist() {
        assert!(WeightTwist::new(Scalar::zero()).is_err());
        let id = WeightTwist::new(Scalar::one()).unwrap();
        for g in Generator::ALL {
            assert_eq!(id.act(g, &w(&[2, 3])), act_generator(g, &w(&[2, 3])));
        }
        let two = WeightTwist::new(Scalar::from_int(2)).unwrap();
        assert_eq!(two.act(K1, &w(&[1])), w(&[2]).scale(&Scalar::from_int(2)));
        let four = Scalar::from_int(4);
        for m in WedgeMonomial::all_up_to(5) {
            let s = FermionState::basis(m);
            assert_eq!(two.eval(&word(&[F, E]), &s), s.scale(&four));
            assert_eq!(two.eval(&word(&[Km1, K1]), &s), s.scale(&four));
            assert!(two.eval(&word(&[Km1, E]), &s).is_zero());
            assert!(two.eval(&word(&[F, K1]), &s).is_zero());
            assert_eq!(two.eval(&(word(&[K1, Km1]) + word(&[E, F])), &s), s.scale(&four));
        }
    }

    #[test]
    fn relation_reports() {
        assert!(check_relations_on_states(6).passed());
        assert!(check_clifford_on_states(4, 6).passed());
        assert!(check_recursion_agreement(4, 6).passed());
        assert!(check_admissibility(6).passed());
    }

    #[test]
    fn kernel_decomposition() {
        for m in WedgeMonomial::all_up_to(6) {
            let s = FermionState::basis(m);
            let a = act_k1(&act_km1(&s));
            let b = act_e(&act_f(&s));
            assert_eq!(&a + &b, s);
            assert!(act_f(&a).is_zero());
            assert!(act_km1(&b).is_zero());
        }
    }

    #[test]
    fn op_report_levels() {
        let r = FermionOpReport::new("E", w(&[2]), act_e(&w(&[2])));
        assert_eq!(r.input_levels, vec![1]);
        assert_eq!(r.output_levels, vec![2]);
    }
}
