//! Words over the fundamental generators and the ordered rewriting system
//! on them, with explicit chains of elementary relations between
//! factorizations.

use std::cell::RefCell;
use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;

use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use thiserror::Error;

use crate::canonical::AffineMap;
use crate::decomp::{factorization_with_sequence, is_indecomposable, normal_decomposition, FactorChain};
use crate::families::{chebyshev, is_prime, RittKind, RittSpec};
use crate::poly::Polynomial;
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("P∘Q1 and P∘Q2 differ")]
    NotRelated,
    #[error("bidecomposition cannot be aligned: {0}")]
    NotAligned(String),
    #[error("the words realize different polynomials")]
    NotSamePolynomial,
    #[error("normal forms differ: {left} vs {right}")]
    NotConnectable { left: String, right: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Generator {
    M(usize),
    T(usize),
    RLambda { p: usize, s: usize, g: Polynomial },
    RRho { p: usize, s: usize, g: Polynomial },
    Opaque { poly: Polynomial, certified: bool },
}

impl Generator {
    pub fn m(p: usize) -> Result<Self, RewriteError> {
        if !is_prime(p) {
            return Err(RewriteError::InvalidGenerator(format!("M{p}: {p} is not prime")));
        }
        Ok(Generator::M(p))
    }

    pub fn t(p: usize) -> Result<Self, RewriteError> {
        if !is_prime(p) || p < 3 {
            return Err(RewriteError::InvalidGenerator(format!(
                "T{p}: needs a prime at least 3 (use M2 for degree 2)"
            )));
        }
        Ok(Generator::T(p))
    }

    fn ritt(kind: RittKind, p: usize, s: usize, g: Polynomial) -> Result<Self, RewriteError> {
        let spec = RittSpec::new(kind, p, s, g);
        spec.check()
            .map_err(|e| RewriteError::InvalidGenerator(e.to_string()))?;
        if !is_indecomposable(&spec.realize()) {
            return Err(RewriteError::InvalidGenerator(format!(
                "X^{s}·G^{p} is decomposable"
            )));
        }
        let RittSpec { p, s, g, .. } = spec;
        Ok(match kind {
            RittKind::Lambda => Generator::RLambda { p, s, g },
            RittKind::Rho => Generator::RRho { p, s, g },
        })
    }

    pub fn r_lambda(p: usize, s: usize, g: Polynomial) -> Result<Self, RewriteError> {
        Generator::ritt(RittKind::Lambda, p, s, g)
    }

    pub fn r_rho(p: usize, s: usize, g: Polynomial) -> Result<Self, RewriteError> {
        Generator::ritt(RittKind::Rho, p, s, g)
    }

    /// An indecomposable outside the named families.
    pub fn opaque(poly: Polynomial) -> Result<Self, RewriteError> {
        if poly.degree() < 2 {
            return Err(RewriteError::InvalidGenerator("degree below 2".into()));
        }
        if !is_indecomposable(&poly) {
            return Err(RewriteError::InvalidGenerator(format!("{poly} is decomposable")));
        }
        Ok(Generator::Opaque {
            poly,
            certified: true,
        })
    }

    /// The standard representative.
    pub fn realize(&self) -> Polynomial {
        match self {
            Generator::M(p) => Polynomial::x_pow(*p),
            Generator::T(p) => chebyshev(*p).poly,
            Generator::RLambda { p, s, g } => g.pow(*p as u32).mul_x_pow(*s),
            Generator::RRho { p, s, g } => g.compose(&Polynomial::x_pow(*p)).mul_x_pow(*s),
            Generator::Opaque { poly, .. } => poly.clone(),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Generator::M(p) | Generator::T(p) => *p,
            Generator::RLambda { p, s, g } | Generator::RRho { p, s, g } => s + p * g.degree(),
            Generator::Opaque { poly, .. } => poly.degree(),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::M(p) => write!(f, "M{p}"),
            Generator::T(p) => write!(f, "T{p}"),
            Generator::RLambda { p, s, g } => write!(f, "RL({p},{s};{g})"),
            Generator::RRho { p, s, g } => write!(f, "RR({p},{s};{g})"),
            Generator::Opaque { poly, .. } => write!(f, "OP({poly})"),
        }
    }
}

/// A composition of generators, outermost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    gens: Vec<Generator>,
}

impl Word {
    pub fn new(gens: Vec<Generator>) -> Self {
        Word { gens }
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.gens.iter().map(Generator::degree).product()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.gens.iter().map(Generator::degree).collect()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "id");
        }
        for (i, g) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, ".")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

fn eval_slice(gens: &[Generator]) -> Polynomial {
    let mut acc = Polynomial::x();
    for g in gens.iter().rev() {
        acc = match g {
            Generator::M(p) => acc.pow(*p as u32),
            other => other.realize().compose(&acc),
        };
    }
    acc
}

/// The realized polynomial; the empty word gives `X`.
pub fn word_eval(w: &Word) -> Polynomial {
    eval_slice(&w.gens)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rule {
    /// `M_p∘M_q → M_q∘M_p` for `p > q`.
    MonomialSwap,
    /// `T_p∘T_q → T_q∘T_p` for `p > q ≥ 3`.
    ChebyshevSwap,
    /// `R_λ∘M_p → M_p∘R_ρ`.
    RittShift,
    /// `R_λ∘M_{q₁}…M_{q_k}∘M_p → M_p∘R_ρ∘M_{q₁}…M_{q_k}`.
    RittShiftThrough,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self {
            Rule::MonomialSwap => "i",
            Rule::ChebyshevSwap => "ii",
            Rule::RittShift => "iii",
            Rule::RittShiftThrough => "iv",
        };
        write!(f, "{tag}")
    }
}

/// A place in a word where a rule applies: `len` generators starting at
/// `position`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Redex {
    pub rule: Rule,
    pub position: usize,
    pub len: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteStep {
    pub rule: Rule,
    pub position: usize,
    pub result: Word,
}

fn redex_at(gens: &[Generator], i: usize) -> Option<Redex> {
    let at = |rule, len| Some(Redex { rule, position: i, len });
    match (&gens[i], gens.get(i + 1)?) {
        (Generator::M(p), Generator::M(q)) if p > q => at(Rule::MonomialSwap, 2),
        (Generator::T(p), Generator::T(q)) if p > q => at(Rule::ChebyshevSwap, 2),
        (Generator::RLambda { p, .. }, _) => {
            let mut j = i + 1;
            let mut last = 0;
            while let Some(Generator::M(q)) = gens.get(j) {
                if q >= p {
                    break;
                }
                if *q < last {
                    return None;
                }
                last = *q;
                j += 1;
            }
            match gens.get(j) {
                Some(Generator::M(q)) if q == p => {
                    if j == i + 1 {
                        at(Rule::RittShift, 2)
                    } else {
                        at(Rule::RittShiftThrough, j - i + 1)
                    }
                }
                _ => None,
            }
        }
        _ => None,
    }
}

/// Every place a rule applies, left to right.
pub fn redexes(w: &Word) -> Vec<Redex> {
    (0..w.gens.len()).filter_map(|i| redex_at(&w.gens, i)).collect()
}

fn rewrite_segment(seg: &[Generator]) -> Vec<Generator> {
    match &seg[0] {
        Generator::M(_) | Generator::T(_) => vec![seg[1].clone(), seg[0].clone()],
        Generator::RLambda { p, s, g } => {
            let mut out = vec![
                seg[seg.len() - 1].clone(),
                Generator::RRho {
                    p: *p,
                    s: *s,
                    g: g.clone(),
                },
            ];
            out.extend(seg[1..seg.len() - 1].iter().cloned());
            out
        }
        _ => unreachable!("no rule starts with {}", seg[0]),
    }
}

thread_local! {
    static VERIFIED: RefCell<HashSet<Vec<Generator>>> = RefCell::new(HashSet::new());
}

/// Checks that a rule instance is an exact identity on the standard
/// representatives. Verified instances are remembered per thread.
fn verify_instance(lhs: &[Generator], rhs: &[Generator]) {
    let known = VERIFIED.with(|v| v.borrow().contains(lhs));
    if known {
        return;
    }
    assert_eq!(
        eval_slice(lhs),
        eval_slice(rhs),
        "rule instance is not an identity"
    );
    VERIFIED.with(|v| v.borrow_mut().insert(lhs.to_vec()));
}

/// Applies one redex, checking the local identity.
pub fn apply_redex(w: &Word, r: Redex) -> Word {
    let lhs = &w.gens[r.position..r.position + r.len];
    let rhs = rewrite_segment(lhs);
    verify_instance(lhs, &rhs);
    let mut gens = w.gens[..r.position].to_vec();
    gens.extend(rhs);
    gens.extend_from_slice(&w.gens[r.position + r.len..]);
    let out = Word { gens };
    debug_assert!(out.degree_sequence() < w.degree_sequence());
    out
}

fn normalize_by<F>(w: &Word, mut choose: F) -> (Word, Vec<RewriteStep>)
where
    F: FnMut(&[Redex]) -> Redex,
{
    let mut current = w.clone();
    let mut trace = Vec::new();
    loop {
        let rs = redexes(&current);
        if rs.is_empty() {
            return (current, trace);
        }
        let r = choose(&rs);
        current = apply_redex(&current, r);
        trace.push(RewriteStep {
            rule: r.rule,
            position: r.position,
            result: current.clone(),
        });
    }
}

/// Rewrites leftmost-first until no rule applies.
pub fn normalize_word(w: &Word) -> (Word, Vec<RewriteStep>) {
    normalize_by(w, |rs| rs[0])
}

/// Rewrites with a uniformly random choice among the applicable redexes.
pub fn normalize_word_random<R: Rng + ?Sized>(w: &Word, rng: &mut R) -> (Word, Vec<RewriteStep>) {
    normalize_by(w, |rs| *rs.choose(rng).expect("nonempty"))
}

/// An overlap word together with its two one-step reducts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub overlap: Word,
    pub left: Word,
    pub right: Word,
}

fn primes_up_to(n: usize) -> Vec<usize> {
    (2..=n).filter(|&k| is_prime(k)).collect()
}

/// Nondecreasing sequences of length `k` drawn from `pool`.
fn sorted_sequences(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in pool.iter().enumerate() {
        for mut rest in sorted_sequences(&pool[i..], k - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

fn pair_from(overlap: Word) -> Option<CriticalPair> {
    let rs = redexes(&overlap);
    if rs.len() < 2 {
        return None;
    }
    Some(CriticalPair {
        left: apply_redex(&overlap, rs[0]),
        right: apply_redex(&overlap, rs[1]),
        overlap,
    })
}

/// Maximum number of intermediate monomials in derived overlaps.
pub const MAX_INTERMEDIATE: usize = 3;

/// All overlaps over primes up to `prime_bound`, with Ritt payloads drawn
/// from `g_samples`. Payloads that give decomposable Ritt polynomials are
/// skipped.
pub fn critical_pairs(prime_bound: usize, g_samples: &[Polynomial]) -> Vec<CriticalPair> {
    let primes = primes_up_to(prime_bound);
    let mut overlaps = Vec::new();
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q < p) {
            for &r in primes.iter().filter(|&&r| r < q) {
                overlaps.push(Word::new(vec![Generator::M(p), Generator::M(q), Generator::M(r)]));
                if r >= 3 {
                    overlaps.push(Word::new(vec![
                        Generator::T(p),
                        Generator::T(q),
                        Generator::T(r),
                    ]));
                }
            }
        }
    }
    for &p in &primes {
        let below: Vec<usize> = primes.iter().copied().filter(|&q| q < p).collect();
        for s in 1..p {
            for g in g_samples {
                let Ok(rl) = Generator::r_lambda(p, s, g.clone()) else {
                    continue;
                };
                for k in 0..=MAX_INTERMEDIATE {
                    for qs in sorted_sequences(&below, k) {
                        for &r in &below {
                            let mut gens = vec![rl.clone()];
                            gens.extend(qs.iter().map(|&q| Generator::M(q)));
                            gens.push(Generator::M(p));
                            gens.push(Generator::M(r));
                            overlaps.push(Word::new(gens));
                        }
                    }
                }
            }
        }
    }
    overlaps.into_iter().filter_map(pair_from).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Joinability {
    pub joinable: bool,
    pub left_normal: Word,
    pub right_normal: Word,
}

/// Normalizes the reducts of the first two redexes of `overlap` and
/// compares them as words and as polynomials.
pub fn check_joinable(overlap: &Word) -> Joinability {
    let rs = redexes(overlap);
    let (left, right) = match rs.as_slice() {
        [] => (overlap.clone(), overlap.clone()),
        [r] => {
            let w = apply_redex(overlap, *r);
            (w.clone(), w)
        }
        [a, b, ..] => (apply_redex(overlap, *a), apply_redex(overlap, *b)),
    };
    let (left_normal, _) = normalize_word(&left);
    let (right_normal, _) = normalize_word(&right);
    let joinable = left_normal == right_normal && {
        let target = word_eval(overlap);
        word_eval(&left_normal) == target && word_eval(&right_normal) == target
    };
    Joinability {
        joinable,
        left_normal,
        right_normal,
    }
}

/// `ω` and `c` with `Q₂ = ω·Q₁ + c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationWitness {
    pub omega: Rational,
    pub c: Rational,
}

/// Given `P∘Q₁ = P∘Q₂`, finds the translation relating `Q₁` and `Q₂`.
pub fn solve_translation(
    p: &Polynomial,
    q1: &Polynomial,
    q2: &Polynomial,
) -> Result<TranslationWitness, RewriteError> {
    if p.degree() < 1 || q1.degree() < 1 || p.compose(q1) != p.compose(q2) {
        return Err(RewriteError::NotRelated);
    }
    let omega = q2.leading() / q1.leading();
    let c = q2.coeff(0) - &omega * q1.coeff(0);
    let rebuilt = &q1.scale(&omega) + &Polynomial::constant(c.clone());
    let root_of_unity = num_traits::pow(omega.clone(), p.degree()).is_one();
    if rebuilt != *q2 || !root_of_unity {
        return Err(RewriteError::NotRelated);
    }
    Ok(TranslationWitness { omega, c })
}

/// Given `P∘Q = R∘S` with `R = P∘α`, returns `β` with `S = β∘Q`.
pub fn align_bidecomposition(
    p: &Polynomial,
    q: &Polynomial,
    r: &Polynomial,
    s: &Polynomial,
    alpha: &AffineMap,
) -> Result<AffineMap, RewriteError> {
    if [p, q, r, s].iter().any(|x| x.degree() < 2) {
        return Err(RewriteError::NotAligned("all degrees must be at least 2".into()));
    }
    if p.compose(q) != r.compose(s) {
        return Err(RewriteError::NotAligned("P∘Q differs from R∘S".into()));
    }
    if alpha.apply_inner(p) != *r {
        return Err(RewriteError::NotAligned("R is not P∘α".into()));
    }
    let alpha_s = alpha.apply_outer(s);
    let t = solve_translation(p, q, &alpha_s)
        .map_err(|_| RewriteError::NotAligned("α∘S and Q are not related".into()))?;
    let shift = AffineMap::new(t.omega, t.c).expect("ω ≠ 0");
    let beta = alpha.inverse().then_inner(&shift);
    if beta.apply_outer(q) != *s {
        return Err(RewriteError::NotAligned("β∘Q differs from S".into()));
    }
    Ok(beta)
}

/// One link of a connecting chain: a word, and the rule relating it to the
/// previous link (`None` for the first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainLink {
    pub word: Word,
    pub rule: Option<Rule>,
}

/// Joins two words for the same polynomial through their common normal
/// form. Consecutive links differ by one rule application.
pub fn connect_factorizations(w1: &Word, w2: &Word) -> Result<Vec<ChainLink>, RewriteError> {
    if word_eval(w1) != word_eval(w2) {
        return Err(RewriteError::NotSamePolynomial);
    }
    let (n1, t1) = normalize_word(w1);
    let (n2, t2) = normalize_word(w2);
    if n1 != n2 {
        return Err(RewriteError::NotConnectable {
            left: n1.to_string(),
            right: n2.to_string(),
        });
    }
    let mut chain = vec![ChainLink {
        word: w1.clone(),
        rule: None,
    }];
    chain.extend(t1.into_iter().map(|s| ChainLink {
        word: s.result,
        rule: Some(s.rule),
    }));
    let mut back: Vec<Word> = vec![w2.clone()];
    back.extend(t2.iter().map(|s| s.result.clone()));
    back.pop();
    for (word, step) in back.into_iter().rev().zip(t2.iter().rev()) {
        chain.push(ChainLink {
            word,
            rule: Some(step.rule),
        });
    }
    Ok(chain)
}

/// A step in a chain of normalized factorizations: the factors at
/// `position` and `position + 1` are replaced by another pair with the
/// same composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMove {
    pub position: usize,
    pub result: FactorChain,
}

/// Connects two complete factorizations of `p`, given by their degree
/// sequences, by swapping adjacent factors one pair at a time. Every
/// intermediate chain is complete and has the same length.
pub fn connect_chains(
    p: &Polynomial,
    from: &[usize],
    to: &[usize],
) -> Result<(FactorChain, Vec<FactorMove>), RewriteError> {
    let start = factorization_with_sequence(p, from).ok_or(RewriteError::NotSamePolynomial)?;
    let target = factorization_with_sequence(p, to).ok_or(RewriteError::NotSamePolynomial)?;
    let mut parent: BTreeMap<Vec<usize>, Option<(Vec<usize>, usize)>> = BTreeMap::new();
    let mut chains: BTreeMap<Vec<usize>, FactorChain> = BTreeMap::new();
    parent.insert(from.to_vec(), None);
    chains.insert(from.to_vec(), start.clone());
    let mut queue = VecDeque::from([from.to_vec()]);
    while let Some(seq) = queue.pop_front() {
        if seq == to {
            break;
        }
        let chain = chains[&seq].clone();
        for i in 0..seq.len().saturating_sub(1) {
            if seq[i] == seq[i + 1] {
                continue;
            }
            let mut next = seq.clone();
            next.swap(i, i + 1);
            if parent.contains_key(&next) {
                continue;
            }
            let Some(swapped) = swap_pair(&chain, i) else {
                continue;
            };
            parent.insert(next.clone(), Some((seq.clone(), i)));
            chains.insert(next.clone(), swapped);
            queue.push_back(next);
        }
    }
    let reached = chains.get(to).ok_or_else(|| RewriteError::NotConnectable {
        left: format!("{from:?}"),
        right: format!("{to:?}"),
    })?;
    if *reached != target {
        return Err(RewriteError::NotConnectable {
            left: reached.to_string(),
            right: target.to_string(),
        });
    }
    let mut moves = Vec::new();
    let mut cur = to.to_vec();
    while let Some(Some((prev, i))) = parent.get(&cur) {
        moves.push(FactorMove {
            position: *i,
            result: chains[&cur].clone(),
        });
        cur = prev.clone();
    }
    moves.reverse();
    Ok((start, moves))
}

fn swap_pair(chain: &FactorChain, i: usize) -> Option<FactorChain> {
    let f = chain.factors();
    let a = f[i].compose(&f[i + 1]);
    let (q, r) = (f[i + 1].degree(), f[i].degree());
    let nd = normal_decomposition(&a, q, r).ok()?;
    if !is_indecomposable(&nd.outer) || !is_indecomposable(&nd.inner) {
        return None;
    }
    let mut out = f.to_vec();
    out[i] = nd.outer;
    out[i + 1] = nd.inner;
    Some(FactorChain::new(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomp::all_factorizations;
    use crate::scalar::{frac, int};

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    fn w(gens: Vec<Generator>) -> Word {
        Word::new(gens)
    }

    fn rl(pr: usize, s: usize, g: Polynomial) -> Generator {
        Generator::r_lambda(pr, s, g).unwrap()
    }

    fn rr(pr: usize, s: usize, g: Polynomial) -> Generator {
        Generator::RRho { p: pr, s, g }
    }

    use Generator::M;

    #[test]
    fn eval_examples() {
        assert_eq!(word_eval(&w(vec![M(2), M(3)])), Polynomial::x_pow(6));
        assert_eq!(
            word_eval(&w(vec![Generator::T(3), Generator::t(3).unwrap()])),
            chebyshev(9).poly
        );
        let g = p(&[1, 0, 1]);
        let lhs = word_eval(&w(vec![rl(2, 1, g.clone()), M(2)]));
        assert_eq!(lhs, g.compose(&Polynomial::x_pow(2)).pow(2).mul_x_pow(2));
        assert_eq!(lhs, word_eval(&w(vec![M(2), rr(2, 1, g)])));
        assert_eq!(word_eval(&Word::default()), Polynomial::x());
    }

    #[test]
    fn invalid_generators() {
        assert!(Generator::t(2).is_err());
        assert!(Generator::m(4).is_err());
        assert!(Generator::opaque(p(&[0, 0, 0, 0, 1])).is_err());
        assert!(Generator::opaque(p(&[0, 0, 1, 0, 1])).is_err());
        assert!(Generator::opaque(p(&[0, 1, 0, 1])).is_ok());
    }

    #[test]
    fn normalization_examples() {
        let (n, trace) = normalize_word(&w(vec![M(5), M(3), M(2)]));
        assert_eq!(n, w(vec![M(2), M(3), M(5)]));
        assert_eq!(trace.len(), 3);

        let g = p(&[1, 0, 1]);
        let (n, _) = normalize_word(&w(vec![rl(3, 1, g.clone()), M(3)]));
        assert_eq!(n, w(vec![M(3), rr(3, 1, g.clone())]));

        let (n, trace) = normalize_word(&w(vec![rl(3, 1, g.clone()), M(2), M(3)]));
        assert_eq!(n, w(vec![M(3), rr(3, 1, g), M(2)]));
        assert_eq!(trace[0].rule, Rule::RittShiftThrough);
    }

    #[test]
    fn overlaps_listed() {
        let cps = critical_pairs(5, &[]);
        assert!(cps.iter().any(|c| c.overlap == w(vec![M(5), M(3), M(2)])));
        let cps = critical_pairs(7, &[]);
        let t = |k| Generator::T(k);
        assert!(cps.iter().any(|c| c.overlap == w(vec![t(7), t(5), t(3)])));
        let g = p(&[1, 0, 1]);
        let cps = critical_pairs(3, &[g.clone()]);
        assert!(cps
            .iter()
            .any(|c| c.overlap == w(vec![rl(3, 1, g.clone()), M(3), M(2)])));
    }

    #[test]
    fn joinability_examples() {
        let j = check_joinable(&w(vec![M(5), M(3), M(2)]));
        assert!(j.joinable);
        assert_eq!(j.left_normal, w(vec![M(2), M(3), M(5)]));
        let g = p(&[1, 0, 1]);
        assert!(check_joinable(&w(vec![rl(3, 1, g), M(3), M(2)])).joinable);
        let t = |k| Generator::T(k);
        assert!(check_joinable(&w(vec![t(7), t(5), t(3)])).joinable);
    }

    #[test]
    fn translation_examples() {
        let pp = p(&[0, 2, 1]);
        let q1 = p(&[0, 1, 1]);
        let q2 = p(&[-2, -1, -1]);
        assert_eq!(
            solve_translation(&pp, &q1, &q2).unwrap(),
            TranslationWitness {
                omega: int(-1),
                c: int(-2)
            }
        );
        let t = solve_translation(&pp, &q1, &q1).unwrap();
        assert_eq!((t.omega, t.c), (int(1), int(0)));
        assert_eq!(
            solve_translation(&Polynomial::x_pow(3), &p(&[1, 1]), &Polynomial::x()),
            Err(RewriteError::NotRelated)
        );
    }

    #[test]
    fn alignment_examples() {
        let pp = Polynomial::x_pow(2);
        let alpha = AffineMap::new(int(2), int(0)).unwrap();
        let r = p(&[0, 0, 4]);
        let q = p(&[0, 1, 1]);
        let s = q.scale(&frac(1, 2));
        let beta = align_bidecomposition(&pp, &q, &r, &s, &alpha).unwrap();
        assert_eq!(beta, AffineMap::new(frac(1, 2), int(0)).unwrap());
        let id = AffineMap::identity();
        assert!(align_bidecomposition(&pp, &q, &pp, &q, &id)
            .unwrap()
            .is_identity());
        assert!(align_bidecomposition(&pp, &q, &p(&[0, 0, 3]), &s, &alpha).is_err());
    }

    #[test]
    fn connection_examples() {
        let c = connect_factorizations(&w(vec![M(2), M(3)]), &w(vec![M(3), M(2)])).unwrap();
        assert_eq!(c.len(), 2);
        let t = |k| Generator::T(k);
        let c = connect_factorizations(&w(vec![t(3), t(5)]), &w(vec![t(5), t(3)])).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].rule, Some(Rule::ChebyshevSwap));
        let g = p(&[1, 0, 1]);
        let c = connect_factorizations(
            &w(vec![rl(2, 1, g.clone()), M(2)]),
            &w(vec![M(2), rr(2, 1, g)]),
        )
        .unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(
            connect_factorizations(&w(vec![M(2)]), &w(vec![M(3)])),
            Err(RewriteError::NotSamePolynomial)
        );
    }

    #[test]
    fn chains_between_factorizations() {
        let target = word_eval(&w(vec![Generator::T(3), M(2), Generator::T(5)]));
        let all = all_factorizations(&target);
        assert!(all.len() >= 2);
        for a in &all {
            for b in &all {
                let (_, moves) =
                    connect_chains(&target, &a.degree_sequence(), &b.degree_sequence()).unwrap();
                for m in &moves {
                    assert_eq!(m.result.len(), a.len());
                    assert_eq!(m.result.compose(), target);
                }
                let end = moves.last().map_or(a, |m| &m.result);
                assert_eq!(end, b);
            }
        }
    }
}
