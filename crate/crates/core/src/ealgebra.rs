//! The algebra generated by `K1, Km1, E, F` subject to
//!
//! ```text
//! Km1*K1 = F*E = 1,   Km1*E = F*K1 = 0,   K1*Km1 + E*F = 1
//! ```
//!
//! Elements are linear combinations of words in the generators. [`normalize`]
//! rewrites with the oriented rules
//!
//! ```text
//! Km1 K1 -> 1    F E -> 1    Km1 E -> 0    F K1 -> 0    E F -> 1 - K1 Km1
//! ```
//!
//! which terminate (each step lowers `(#E + #F, length)` lexicographically) and
//! are confluent. A normal word is `u·v` with `u` over `{K1, E}`, `v` over
//! `{Km1, F}`, and no `E` immediately followed by `F`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lincomb::{Basis, LinComb};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub enum Generator {
    K1,
    Km1,
    E,
    F,
}

impl Generator {
    pub const ALL: [Generator; 4] = [Generator::K1, Generator::Km1, Generator::E, Generator::F];

    pub fn name(self) -> &'static str {
        match self {
            Generator::K1 => "K1",
            Generator::Km1 => "Km1",
            Generator::E => "E",
            Generator::F => "F",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A word in the generators; the empty word is the unit.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Generator>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn new(letters: Vec<Generator>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Termination measure `(#E + #F, length)`.
    pub fn measure(&self) -> (usize, usize) {
        let ef = self.0.iter().filter(|g| matches!(g, Generator::E | Generator::F)).count();
        (ef, self.0.len())
    }

    /// Positions `p` such that `letters[p..p+2]` is a redex.
    pub fn redexes(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.windows(2).enumerate().filter(|(_, w)| rule_for(w[0], w[1]).is_some()).map(|(p, _)| p)
    }

    pub fn is_normal(&self) -> bool {
        self.redexes().next().is_none()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Basis for Word {
    fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
}

pub type AlgElement = LinComb<Word>;

pub fn word(letters: &[Generator]) -> AlgElement {
    AlgElement::basis(Word::new(letters.to_vec()))
}

pub fn one() -> AlgElement {
    AlgElement::basis(Word::unit())
}

/// Bilinear concatenation product (not normalized).
pub fn mul(a: &AlgElement, b: &AlgElement) -> AlgElement {
    let mut out = AlgElement::zero();
    for (wa, ca) in a {
        for (wb, cb) in b {
            out.add_term(wa.concat(wb), ca * cb);
        }
    }
    out
}

/// Right-hand side of the rewrite rule for the pair `(a, b)`, if any.
fn rule_for(a: Generator, b: Generator) -> Option<&'static [(&'static [Generator], i64)]> {
    use Generator::*;
    const UNIT: &[(&[Generator], i64)] = &[(&[], 1)];
    const ZERO: &[(&[Generator], i64)] = &[];
    const EF: &[(&[Generator], i64)] = &[(&[], 1), (&[K1, Km1], -1)];
    match (a, b) {
        (Km1, K1) | (F, E) => Some(UNIT),
        (Km1, E) | (F, K1) => Some(ZERO),
        (E, F) => Some(EF),
        _ => None,
    }
}

/// Which redex to contract first. Both produce the same normal form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// One rewrite step at position `p`, returning the resulting words.
pub fn rewrite_at(w: &Word, p: usize) -> Option<Vec<(Word, Scalar)>> {
    let l = w.letters();
    let rhs = rule_for(*l.get(p)?, *l.get(p + 1)?)?;
    let before = w.measure();
    Some(
        rhs.iter()
            .map(|(rep, c)| {
                let mut v = Vec::with_capacity(l.len());
                v.extend_from_slice(&l[..p]);
                v.extend_from_slice(rep);
                v.extend_from_slice(&l[p + 2..]);
                let out = Word(v);
                assert!(out.measure() < before, "rewrite did not decrease the termination measure");
                (out, Scalar::from_int(*c))
            })
            .collect(),
    )
}

struct Normalizer {
    strategy: Strategy,
    memo: HashMap<Word, AlgElement>,
}

impl Normalizer {
    fn word(&mut self, w: &Word) -> AlgElement {
        if let Some(hit) = self.memo.get(w) {
            return hit.clone();
        }
        let pos = match self.strategy {
            Strategy::Leftmost => w.redexes().next(),
            Strategy::Rightmost => w.redexes().last(),
        };
        let out = match pos {
            None => AlgElement::basis(w.clone()),
            Some(p) => {
                let mut acc = AlgElement::zero();
                for (nw, c) in rewrite_at(w, p).expect("redex position") {
                    let nf = self.word(&nw);
                    acc.add_scaled(&nf, &c);
                }
                acc
            }
        };
        self.memo.insert(w.clone(), out.clone());
        out
    }
}

/// An element all of whose words are normal.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalForm(AlgElement);

impl NormalForm {
    pub fn as_element(&self) -> &AlgElement {
        &self.0
    }

    pub fn into_element(self) -> AlgElement {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl PartialEq<AlgElement> for NormalForm {
    fn eq(&self, other: &AlgElement) -> bool {
        &self.0 == other
    }
}

pub fn normalize(x: &AlgElement) -> NormalForm {
    normalize_with(x, Strategy::Leftmost)
}

pub fn normalize_with(x: &AlgElement, strategy: Strategy) -> NormalForm {
    let mut n = Normalizer { strategy, memo: HashMap::new() };
    let out = x.map_linear(|w| n.word(w));
    debug_assert!(out.keys().all(Word::is_normal));
    NormalForm(out)
}

fn check_index(i: i64, min: i64, what: &str) -> Result<u32> {
    if i < min {
        return Err(Error::IndexDomain(format!("{what} requires index >= {min}, got {i}")));
    }
    u32::try_from(i).map_err(|_| Error::IndexDomain(format!("{what} index {i} too large")))
}

/// `E_i = K1^i E`.
pub fn build_e_lower(i: i64) -> Result<AlgElement> {
    let i = check_index(i, 0, "E_i")?;
    let mut v = vec![Generator::K1; i as usize];
    v.push(Generator::E);
    Ok(AlgElement::basis(Word(v)))
}

/// `F_i = F Km1^i`.
pub fn build_f_lower(i: i64) -> Result<AlgElement> {
    let i = check_index(i, 0, "F_i")?;
    let mut v = vec![Generator::F];
    v.extend(std::iter::repeat_n(Generator::Km1, i as usize));
    Ok(AlgElement::basis(Word(v)))
}

fn build_clifford(i: u32, first: AlgElement) -> NormalForm {
    use Generator::*;
    let mut cur = first;
    for _ in 1..i {
        let a = mul(&mul(&word(&[K1]), &cur), &word(&[Km1]));
        let b = mul(&mul(&word(&[E]), &cur), &word(&[F]));
        cur = normalize(&(a - b)).into_element();
    }
    normalize(&cur)
}

/// `P_1 = E Km1`, `P_i = K1 P_{i-1} Km1 - E P_{i-1} F`.
pub fn build_p(i: i64) -> Result<NormalForm> {
    let i = check_index(i, 1, "P_i")?;
    Ok(build_clifford(i, word(&[Generator::E, Generator::Km1])))
}

/// `Q_1 = K1 F`, `Q_i = K1 Q_{i-1} Km1 - E Q_{i-1} F`.
pub fn build_q(i: i64) -> Result<NormalForm> {
    let i = check_index(i, 1, "Q_i")?;
    Ok(build_clifford(i, word(&[Generator::K1, Generator::F])))
}

/// `K1^a Km1^b` as a single word.
pub fn shift_word(a: usize, b: usize) -> AlgElement {
    let mut v = vec![Generator::K1; a];
    v.extend(std::iter::repeat_n(Generator::Km1, b));
    AlgElement::basis(Word(v))
}

fn anticommutator(a: &AlgElement, b: &AlgElement) -> NormalForm {
    normalize(&(mul(a, b) + mul(b, a)))
}

/// Anticommutators of `P_i, Q_j` for `1 <= i, j <= max_index`, in normal form.
pub fn check_clifford_relations(max_index: u32) -> Report {
    let mut report = Report::new(format!("clifford relations (symbolic, max index {max_index})"));
    let ps: Vec<AlgElement> = (1..=max_index).map(|i| build_p(i as i64).expect("i >= 1").into_element()).collect();
    let qs: Vec<AlgElement> = (1..=max_index).map(|i| build_q(i as i64).expect("i >= 1").into_element()).collect();
    let zero = AlgElement::zero();
    for i in 0..ps.len() {
        for j in 0..ps.len() {
            let (a, b) = (i + 1, j + 1);
            report.expect_eq(format!("{{P{a},P{b}}} = 0"), anticommutator(&ps[i], &ps[j]).as_element(), &zero);
            report.expect_eq(format!("{{Q{a},Q{b}}} = 0"), anticommutator(&qs[i], &qs[j]).as_element(), &zero);
            let want = if a == b { one() } else { AlgElement::zero() };
            report.expect_eq(format!("{{P{a},Q{b}}} = {want}"), anticommutator(&ps[i], &qs[j]).as_element(), &want);
        }
    }
    report
}

/// The identities relating `E_i`, `F_i` and the shift operators, for indices up to `l`.
pub fn check_lowered_generators(l: u32) -> Report {
    use Generator::*;
    let mut report = Report::new(format!("E_i/F_i identities (l = {l})"));
    let e = |i: u32| build_e_lower(i as i64).expect("i >= 0");
    let f = |i: u32| build_f_lower(i as i64).expect("i >= 0");
    let nf = |x: &AlgElement| normalize(x).into_element();

    let mut sum = AlgElement::zero();
    for i in 0..=l {
        sum = sum + mul(&e(i), &f(i));
    }
    let rhs = one() - shift_word(l as usize + 1, l as usize + 1);
    report.expect_eq(format!("sum_{{i<={l}}} E_i F_i = 1 - K1^{0}Km1^{0}", l + 1), &nf(&sum), &nf(&rhs));

    for i in 0..=l {
        let want = shift_word(i as usize, i as usize) - shift_word(i as usize + 1, i as usize + 1);
        report.expect_eq(
            format!("E{i} F{i} = K1^{i}Km1^{i} - K1^{0}Km1^{0}", i + 1),
            &nf(&mul(&e(i), &f(i))),
            &nf(&want),
        );
        for j in 0..=l {
            let want = if i == j { one() } else { AlgElement::zero() };
            report.expect_eq(format!("F{i} E{j} = {want}"), &nf(&mul(&f(i), &e(j))), &want);
        }
        report.expect_eq(format!("K1 E{i} = E{}", i + 1), &nf(&mul(&word(&[K1]), &e(i))), &nf(&e(i + 1)));
        report.expect_eq(format!("Km1 E{} = E{i}", i + 1), &nf(&mul(&word(&[Km1]), &e(i + 1))), &nf(&e(i)));
        report.expect_eq(format!("F{i} Km1 = F{}", i + 1), &nf(&mul(&f(i), &word(&[Km1]))), &nf(&f(i + 1)));
        report.expect_eq(format!("F{} K1 = F{i}", i + 1), &nf(&mul(&f(i + 1), &word(&[K1]))), &nf(&f(i)));
    }
    report
}

/// The critical pairs of the rewrite system: both one-step reducts of each
/// overlap must share a normal form.
pub fn check_critical_pairs() -> Report {
    use Generator::*;
    let mut report = Report::new("critical pairs");
    let overlaps: [&[Generator]; 8] = [
        &[Km1, E, F],
        &[F, E, F],
        &[E, F, E],
        &[E, F, K1],
        &[Km1, K1, Km1],
        &[F, K1, Km1],
        &[Km1, E, Km1],
        &[F, E, Km1],
    ];
    for o in overlaps {
        let w = Word::new(o.to_vec());
        let mut reducts = Vec::new();
        for p in w.redexes().collect::<Vec<_>>() {
            let step = AlgElement::from_terms(rewrite_at(&w, p).expect("redex"));
            reducts.push(normalize(&step).into_element());
        }
        let joined = reducts.windows(2).all(|r| r[0] == r[1]);
        report.record(format!("overlap {w} joins"), joined, format!("{reducts:?}"));
    }
    report
}

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word((0..len).map(|_| Generator::ALL[rng.gen_range(0..4)]).collect())
}

/// Leftmost and rightmost rewriting agree on `samples` random words.
pub fn check_confluence<R: Rng>(rng: &mut R, samples: usize, max_len: usize) -> Report {
    let mut report = Report::new(format!("confluence on {samples} random words"));
    let mut bad = Vec::new();
    for _ in 0..samples {
        let w = AlgElement::basis(random_word(rng, max_len));
        let l = normalize_with(&w, Strategy::Leftmost);
        let r = normalize_with(&w, Strategy::Rightmost);
        if l != r {
            bad.push(format!("{w}: {l} vs {r}"));
        }
    }
    report.record(
        format!("leftmost and rightmost strategies agree ({samples} words, length <= {max_len})"),
        bad.is_empty(),
        bad.into_iter().take(3).collect::<Vec<_>>().join("; "),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::Generator::*;
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&word(&[E, F])).to_string(), "1 - K1*Km1");
        assert_eq!(normalize(&word(&[F, E, Km1, K1])).to_string(), "1");
        assert!(normalize(&word(&[Km1, E, F])).is_zero());
        assert!(normalize_with(&word(&[Km1, E, F]), Strategy::Rightmost).is_zero());
    }

    #[test]
    fn mul_examples() {
        assert_eq!(mul(&word(&[K1]), &word(&[Km1])), word(&[K1, Km1]));
        let x = word(&[E, K1]) + word(&[F]).scale(&Scalar::ratio(1, 2));
        assert_eq!(mul(&one(), &x), x);
        let a = word(&[E]).scale(&Scalar::from_int(2));
        let b = word(&[F]).scale(&Scalar::from_int(3));
        assert_eq!(mul(&a, &b).to_string(), "6*E*F");
    }

    #[test]
    fn lower_builders() {
        assert_eq!(build_e_lower(0).unwrap(), word(&[E]));
        assert_eq!(build_e_lower(2).unwrap(), word(&[K1, K1, E]));
        assert_eq!(build_f_lower(1).unwrap(), word(&[F, Km1]));
        assert!(matches!(build_e_lower(-1), Err(Error::IndexDomain(_))));
        assert!(matches!(build_f_lower(-3), Err(Error::IndexDomain(_))));
    }

    #[test]
    fn clifford_builders() {
        assert_eq!(build_p(1).unwrap().to_string(), "E*Km1");
        assert_eq!(build_q(1).unwrap().to_string(), "K1*F");
        assert_eq!(build_p(2).unwrap().to_string(), "K1*E*Km1*Km1 - E*E*Km1*F");
        assert!(build_p(0).is_err());
        assert!(build_q(-1).is_err());
    }

    #[test]
    fn small_anticommutators() {
        let p1 = build_p(1).unwrap().into_element();
        let q1 = build_q(1).unwrap().into_element();
        let raw = mul(&p1, &q1) + mul(&q1, &p1);
        // E Km1 K1 F + K1 F E Km1 before rewriting
        assert_eq!(normalize(&raw).as_element(), &one());
        assert!(anticommutator(&p1, &p1).is_zero());
        assert!(normalize(&word(&[E, Km1, E, Km1])).is_zero());
    }

    #[test]
    fn clifford_report_max3() {
        let r = check_clifford_relations(3);
        assert_eq!(r.checks.len(), 27);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn lowered_generator_reports() {
        let r0 = check_lowered_generators(0);
        assert!(r0.passed(), "{r0}");
        let r2 = check_lowered_generators(2);
        assert!(r2.passed(), "{r2}");
        assert!(normalize(&mul(&build_f_lower(1).unwrap(), &build_e_lower(0).unwrap())).is_zero());
    }

    #[test]
    fn critical_pairs_join() {
        let r = check_critical_pairs();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn confluence_sample() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let r = check_confluence(&mut rng, 300, 10);
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn normal_words_have_shape() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let w = AlgElement::basis(random_word(&mut rng, 8));
            for nw in normalize(&w).as_element().keys() {
                let l = nw.letters();
                let split = l.iter().position(|g| matches!(g, Km1 | F)).unwrap_or(l.len());
                assert!(l[..split].iter().all(|g| matches!(g, K1 | E)));
                assert!(l[split..].iter().all(|g| matches!(g, Km1 | F)));
                assert!(!(split > 0 && split < l.len() && l[split - 1] == E && l[split] == F));
            }
        }
    }
}
