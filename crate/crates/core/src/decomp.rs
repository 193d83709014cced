//! Functional decomposition: normal `(q, r)` splits, complete factorizations
//! into indecomposables, and the dimension of decomposable δ-families.

use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::poly::{compose_chain, series_root, Polynomial};
use crate::scalar::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("degree {degree} is not {q}·{r}")]
    DegreeMismatch { q: usize, r: usize, degree: usize },
    #[error("split sizes must be at least 2 (got q = {q}, r = {r})")]
    TrivialSplit { q: usize, r: usize },
    #[error("polynomial has no normal ({q},{r}) decomposition")]
    NotDecomposableAt { q: usize, r: usize },
}

/// `P = Q ∘ R` with `R` monic and `R(0) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalDecomposition {
    pub outer: Polynomial,
    pub inner: Polynomial,
    pub q: usize,
    pub r: usize,
}

/// Solves for the unique normal `(q, r)` decomposition.
///
/// The inner factor comes from the top `r` coefficients of `P` through a
/// power-series `q`-th root; the outer factor is peeled off by leading-term
/// elimination against powers of `R`, and the result is checked by
/// recomposition.
pub fn normal_decomposition(
    p: &Polynomial,
    q: usize,
    r: usize,
) -> Result<NormalDecomposition, DecompError> {
    let n = p.degree();
    if q < 2 || r < 2 {
        return Err(DecompError::TrivialSplit { q, r });
    }
    if q * r != n {
        return Err(DecompError::DegreeMismatch { q, r, degree: n });
    }
    let not_here = DecompError::NotDecomposableAt { q, r };
    let lead = p.leading();
    let reversed: Vec<Rational> = (0..r).map(|k| p.coeff(n - k) / &lead).collect();
    let g = series_root(&reversed, q as u32, r);
    let mut rc = vec![Rational::zero(); r + 1];
    for (k, c) in g.into_iter().enumerate() {
        rc[r - k] = c;
    }
    rc[0] = Rational::zero();
    let inner = Polynomial::new(rc);

    let mut powers = Vec::with_capacity(q + 1);
    powers.push(Polynomial::one());
    for j in 1..=q {
        let next = &powers[j - 1] * &inner;
        powers.push(next);
    }
    let mut residual = p.clone();
    let mut outer = vec![Rational::zero(); q + 1];
    for j in (0..=q).rev() {
        let b = residual.coeff(j * r);
        if !b.is_zero() {
            residual = &residual - &powers[j].scale(&b);
        }
        outer[j] = b;
        // Anything left strictly between (j−1)·r and j·r is off the grid.
        if !residual.is_zero() && (j == 0 || residual.degree() > (j - 1) * r) {
            return Err(not_here);
        }
    }
    let outer = Polynomial::new(outer);
    if outer.compose(&inner) != *p {
        return Err(not_here);
    }
    Ok(NormalDecomposition { outer, inner, q, r })
}

/// Inner degrees `r` of candidate splits, increasing.
pub fn split_sizes(n: usize) -> Vec<usize> {
    (2..n).filter(|r| n % r == 0 && n / r >= 2).collect()
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

/// First normal decomposition in order of increasing inner degree, or
/// `None` when `p` is indecomposable.
pub fn decompose_any(p: &Polynomial) -> Option<NormalDecomposition> {
    let n = p.degree();
    if n < 4 || is_prime(n) {
        return None;
    }
    split_sizes(n)
        .into_iter()
        .find_map(|r| normal_decomposition(p, n / r, r).ok())
}

pub fn is_indecomposable(p: &Polynomial) -> bool {
    decompose_any(p).is_none()
}

/// Factors of a complete decomposition, outermost first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorChain {
    factors: Vec<Polynomial>,
}

impl FactorChain {
    pub fn new(factors: Vec<Polynomial>) -> Self {
        FactorChain { factors }
    }

    pub fn factors(&self) -> &[Polynomial] {
        &self.factors
    }

    pub fn into_factors(self) -> Vec<Polynomial> {
        self.factors
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        self.factors.iter().map(Polynomial::degree).collect()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn compose(&self) -> Polynomial {
        compose_chain(&self.factors)
    }
}

impl fmt::Display for FactorChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " o ")?;
            }
            if p.nonzero_terms().count() > 1 {
                write!(f, "({p})")?;
            } else {
                write!(f, "{p}")?;
            }
        }
        Ok(())
    }
}

/// Complete factorization with the smallest inner degree split off first.
///
/// Every factor except the outermost is monic and vanishes at 0. For a
/// δ-polynomial the innermost factor is itself δ and the outermost is monic
/// and vanishes at 0 as well; otherwise the outermost absorbs the units.
pub fn complete_factorization(p: &Polynomial) -> FactorChain {
    let mut inner_first = Vec::new();
    let mut current = p.clone();
    while let Some(nd) = decompose_any(&current) {
        inner_first.push(nd.inner);
        current = nd.outer;
    }
    inner_first.push(current);
    inner_first.reverse();
    FactorChain::new(inner_first)
}

/// The normalized factorization realizing a given degree sequence
/// (outermost first), if it exists and every factor is indecomposable.
pub fn factorization_with_sequence(p: &Polynomial, seq: &[usize]) -> Option<FactorChain> {
    if seq.is_empty() || seq.iter().product::<usize>() != p.degree() {
        return None;
    }
    let mut factors = Vec::with_capacity(seq.len());
    let mut current = p.clone();
    for (i, &r) in seq.iter().enumerate().skip(1).rev() {
        let q: usize = seq[..i].iter().product();
        let nd = normal_decomposition(&current, q, r).ok()?;
        if !is_indecomposable(&nd.inner) {
            return None;
        }
        factors.push(nd.inner);
        current = nd.outer;
    }
    if !is_indecomposable(&current) {
        return None;
    }
    factors.push(current);
    factors.reverse();
    Some(FactorChain::new(factors))
}

/// One normalized complete factorization per achievable degree sequence,
/// sorted by sequence.
pub fn all_factorizations(p: &Polynomial) -> Vec<FactorChain> {
    let mut out = Vec::new();
    let mut suffix = Vec::new();
    collect_factorizations(p, &mut suffix, &mut out);
    out.sort_by(|a, b| a.degree_sequence().cmp(&b.degree_sequence()));
    out
}

fn collect_factorizations(
    p: &Polynomial,
    suffix: &mut Vec<Polynomial>,
    out: &mut Vec<FactorChain>,
) {
    let n = p.degree();
    let mut found = false;
    if n >= 4 && !is_prime(n) {
        for r in split_sizes(n) {
            let Ok(nd) = normal_decomposition(p, n / r, r) else {
                continue;
            };
            found = true;
            if !is_indecomposable(&nd.inner) {
                continue;
            }
            suffix.push(nd.inner);
            collect_factorizations(&nd.outer, suffix, out);
            suffix.pop();
        }
    }
    if !found {
        let mut factors = vec![p.clone()];
        factors.extend(suffix.iter().rev().cloned());
        out.push(FactorChain::new(factors));
    }
}

/// The family of decomposable δ-polynomials with a given degree sequence
/// and descent, with its dimension (`None` when the family is empty).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub degree_seq: Vec<usize>,
    pub descent: usize,
    pub dimension: Option<usize>,
    pub case: Option<FamilyCase>,
}

/// Which shape the generic member of a family takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyCase {
    /// The innermost factor already has descent Δ.
    InnerDescent,
    /// Factors after position `r` (1-based) are monomials and factor `r`
    /// has descent `delta1`.
    MonomialTail { r: usize, delta1: usize },
    /// Every factor is a monomial.
    AllMonomial,
}

pub fn family_dimension(degree_seq: &[usize], descent: usize) -> FamilyDescriptor {
    let s = degree_seq.len();
    let (case, dimension) = family_case(degree_seq, descent)
        .map(|case| {
            let dim = match case {
                FamilyCase::InnerDescent => degree_seq.iter().sum::<usize>() - descent - s,
                FamilyCase::MonomialTail { r, delta1 } => {
                    degree_seq[..r].iter().sum::<usize>() - delta1 - r
                }
                FamilyCase::AllMonomial => 0,
            };
            (Some(case), Some(dim))
        })
        .unwrap_or((None, None));
    FamilyDescriptor {
        degree_seq: degree_seq.to_vec(),
        descent,
        dimension,
        case,
    }
}

fn family_case(seq: &[usize], descent: usize) -> Option<FamilyCase> {
    let s = seq.len();
    if s == 0 || seq.iter().any(|&q| q < 2) || descent < 2 {
        return None;
    }
    let d: usize = seq.iter().product();
    if descent == d {
        return Some(FamilyCase::AllMonomial);
    }
    if seq[s - 1] > descent {
        return Some(FamilyCase::InnerDescent);
    }
    for r in (1..s).rev() {
        let tail: usize = seq[r..].iter().product();
        if descent % tail == 0 {
            let delta1 = descent / tail;
            if seq[r - 1] > delta1 {
                return Some(FamilyCase::MonomialTail { r, delta1 });
            }
        }
    }
    None
}
