//! Chebyshev and cyclotomic polynomials, plus the Ritt polynomials
//! `X^s·G(X)^p` and `X^s·G(X^p)`.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::canonical::delta_normalize;
use crate::decomp::{decompose_any, normal_decomposition, NormalDecomposition};
use crate::poly::{nth_root, PolyError, Polynomial};
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("invalid generator: {0}")]
    InvalidGenerator(String),
    #[error("gcd({s}, {n}) is below 2; the nested construction applies instead")]
    GcdTooSmall { s: usize, n: usize },
    #[error("k·h = {kh} but n·j + s = {rhs}")]
    ArithmeticMismatch { kh: usize, rhs: usize },
    #[error("polynomial is indecomposable")]
    NotDecomposable,
    #[error(transparent)]
    Root(#[from] PolyError),
    #[error("input does not have the shape X^s·G^p: {0}")]
    Shape(String),
    #[error("reconstruction of G from (j, k, h, B, C) failed")]
    ReconstructionFailed,
}

pub(crate) fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|k| k * k <= n).all(|k| n % k != 0)
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChebyshevRecord {
    pub n: usize,
    pub poly: Polynomial,
    /// For odd `n`, the `U` with `T_n(X) = X·U(X²)`.
    pub odd_split: Option<Polynomial>,
}

/// All of `T_0, …, T_n`.
pub fn chebyshev_table(n: usize) -> Vec<Polynomial> {
    let two_x = Polynomial::from_ints(&[0, 2]);
    let mut t = vec![Polynomial::one(), Polynomial::x()];
    while t.len() <= n {
        let k = t.len();
        let next = &(&two_x * &t[k - 1]) - &t[k - 2];
        t.push(next);
    }
    t.truncate(n + 1);
    t
}

/// `T_n` from `T_{n+1} = 2X·T_n − T_{n−1}`.
pub fn chebyshev(n: usize) -> ChebyshevRecord {
    let poly = chebyshev_table(n).pop().expect("nonempty");
    let odd_split = (n % 2 == 1).then(|| {
        Polynomial::new(
            poly.coeffs()
                .iter()
                .skip(1)
                .step_by(2)
                .cloned()
                .collect(),
        )
    });
    ChebyshevRecord { n, poly, odd_split }
}

/// The δ-form of `T_n`, which is always rational. Any constant term is
/// dropped by the normalization.
pub fn chebyshev_delta_form(n: usize) -> Polynomial {
    delta_normalize(&chebyshev(n).poly)
        .as_rational()
        .expect("Chebyshev δ-forms only involve even powers of v, v² = −4")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclotomicRecord {
    pub n: usize,
    pub poly: Polynomial,
    pub euler_phi: usize,
    pub squarefree_kernel: usize,
}

fn cyclotomic_poly(n: usize) -> Polynomial {
    let mut known: BTreeMap<usize, Polynomial> = BTreeMap::new();
    for d in (1..=n).filter(|d| n % d == 0) {
        let mut p = &Polynomial::x_pow(d) - &Polynomial::one();
        for (e, phi) in known.iter() {
            if d % e == 0 {
                p = p.exact_div(phi).expect("Φ_e divides X^d − 1 for e | d");
            }
        }
        known.insert(d, p);
    }
    known.remove(&n).expect("n divides itself")
}

/// `Φ_n` by exact division of `X^n − 1` by `Φ_d` for the proper divisors.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic(n: usize) -> CyclotomicRecord {
    assert!(n >= 1, "cyclotomic index must be positive");
    let poly = cyclotomic_poly(n);
    let primes = prime_factors(n);
    CyclotomicRecord {
        n,
        euler_phi: poly.degree(),
        squarefree_kernel: primes.iter().product(),
        poly,
    }
}

pub fn is_squarefree(n: usize) -> bool {
    prime_factors(n).iter().all(|p| n % (p * p) != 0)
}

/// `Φ_n = Φ_{mk} ∘ X^k` for the smallest prime `k` with `k² | n`, or `None`
/// when `n` is squarefree or `n = 4`.
pub fn cyclo_decomposition(n: usize) -> Option<(Polynomial, Polynomial)> {
    if n < 3 || n == 4 || is_squarefree(n) {
        return None;
    }
    let k = prime_factors(n)
        .into_iter()
        .find(|p| n % (p * p) == 0)
        .expect("not squarefree");
    let m = n / (k * k);
    let outer = cyclotomic(m * k).poly;
    let inner = Polynomial::x_pow(k);
    assert_eq!(
        outer.compose(&inner),
        cyclotomic(n).poly,
        "cyclotomic identity failed"
    );
    Some((outer, inner))
}

/// The low and high coefficients of `Φ_n` and whether they follow the
/// expected pattern: `c₀ = 1`, `c₁ = c_{φ(n)−1}`, and that common value is
/// `(−1)^{s+1}` for squarefree `n` with `s` prime factors, else 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientFacts {
    pub c0: Rational,
    pub c1: Rational,
    pub c_top: Rational,
    pub expected: Rational,
    pub verdict: bool,
}

/// # Panics
///
/// Panics if `n < 2`.
pub fn cyclo_coefficient_facts(n: usize) -> CoefficientFacts {
    assert!(n >= 2, "coefficient facts need n ≥ 2");
    let rec = cyclotomic(n);
    let phi = rec.euler_phi;
    let c0 = rec.poly.coeff(0);
    let c1 = rec.poly.coeff(1);
    let c_top = rec.poly.coeff(phi - 1);
    let s = prime_factors(n).len();
    let expected = if is_squarefree(n) {
        if s % 2 == 1 {
            int(1)
        } else {
            int(-1)
        }
    } else {
        Rational::zero()
    };
    let verdict = c0.is_one() && c1 == c_top && c1 == expected;
    CoefficientFacts {
        c0,
        c1,
        c_top,
        expected,
        verdict,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RittKind {
    /// `X^s·G(X)^p`.
    Lambda,
    /// `X^s·G(X^p)`.
    Rho,
}

impl fmt::Display for RittKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RittKind::Lambda => write!(f, "lambda"),
            RittKind::Rho => write!(f, "rho"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RittSpec {
    pub kind: RittKind,
    pub p: usize,
    pub s: usize,
    pub g: Polynomial,
}

impl RittSpec {
    pub fn new(kind: RittKind, p: usize, s: usize, g: Polynomial) -> Self {
        RittSpec { kind, p, s, g }
    }

    pub fn check(&self) -> Result<(), FamilyError> {
        if !is_prime(self.p) {
            return Err(FamilyError::InvalidGenerator(format!(
                "{} is not prime",
                self.p
            )));
        }
        if self.s < 1 || self.s >= self.p {
            return Err(FamilyError::InvalidGenerator(format!(
                "s = {} outside 1..{}",
                self.s,
                self.p - 1
            )));
        }
        if !self.g.is_monic() || self.g.degree() < 2 {
            return Err(FamilyError::InvalidGenerator(
                "G must be monic of degree at least 2".into(),
            ));
        }
        if self.g.is_monomial() {
            return Err(FamilyError::InvalidGenerator("G must not be a power of X".into()));
        }
        Ok(())
    }

    /// The polynomial this spec describes, without any validity check.
    pub fn realize(&self) -> Polynomial {
        ritt_polynomial(self.kind, self.p, self.s, &self.g)
    }
}

pub(crate) fn ritt_polynomial(kind: RittKind, p: usize, s: usize, g: &Polynomial) -> Polynomial {
    let body = match kind {
        RittKind::Lambda => g.pow(p as u32),
        RittKind::Rho => g.compose(&Polynomial::x_pow(p)),
    };
    body.mul_x_pow(s)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RittPolynomial {
    pub poly: Polynomial,
    /// The polynomial is indecomposable.
    pub valid: bool,
}

pub fn ritt_construct(spec: &RittSpec) -> Result<RittPolynomial, FamilyError> {
    spec.check()?;
    let poly = spec.realize();
    let valid = decompose_any(&poly).is_none();
    Ok(RittPolynomial { poly, valid })
}

/// Two-factor splittings of both Ritt polynomials, outer factor first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RittSplit {
    pub lambda: (Polynomial, Polynomial),
    pub rho: (Polynomial, Polynomial),
}

/// With `d = gcd(s, n) ≥ 2`, `s = du`, `n = dv`:
/// `X^s·G^n = X^d ∘ (X^u·G^v)` and `X^s·G(X^n) = (X^u·G(X^v)) ∘ X^d`.
pub fn ritt_gcd_decompose(s: usize, n: usize, g: &Polynomial) -> Result<RittSplit, FamilyError> {
    let d = s.gcd(&n);
    if d < 2 {
        return Err(FamilyError::GcdTooSmall { s, n });
    }
    let (u, v) = (s / d, n / d);
    let lambda = (Polynomial::x_pow(d), g.pow(v as u32).mul_x_pow(u));
    let rho = (
        g.compose(&Polynomial::x_pow(v)).mul_x_pow(u),
        Polynomial::x_pow(d),
    );
    let target_l = g.pow(n as u32).mul_x_pow(s);
    let target_r = g.compose(&Polynomial::x_pow(n)).mul_x_pow(s);
    assert_eq!(lambda.0.compose(&lambda.1), target_l);
    assert_eq!(rho.0.compose(&rho.1), target_r);
    Ok(RittSplit { lambda, rho })
}

/// The data `G = X^j·B^k·C(X^h·B^n)` of a nested Ritt decomposition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RittData {
    pub j: usize,
    pub k: usize,
    pub h: usize,
    pub b: Polynomial,
    pub c: Polynomial,
}

impl RittData {
    pub fn g(&self, n: usize) -> Polynomial {
        let inner = self.b.pow(n as u32).mul_x_pow(self.h);
        (&self.b.pow(self.k as u32) * &self.c.compose(&inner)).mul_x_pow(self.j)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NestedDecomposition {
    pub g: Polynomial,
    pub split: RittSplit,
}

/// With `k·h = n·j + s`:
/// `X^s·G^n = [X^k·C^n] ∘ [X^h·B^n]` and
/// `X^s·G(X^n) = [X^k·C(X^n)] ∘ [X^h·B(X^n)]`.
pub fn ritt_nested_decompose(
    data: &RittData,
    n: usize,
    s: usize,
) -> Result<NestedDecomposition, FamilyError> {
    let kh = data.k * data.h;
    let rhs = n * data.j + s;
    if kh != rhs {
        return Err(FamilyError::ArithmeticMismatch { kh, rhs });
    }
    let g = data.g(n);
    let xn = Polynomial::x_pow(n);
    let lambda = (
        data.c.pow(n as u32).mul_x_pow(data.k),
        data.b.pow(n as u32).mul_x_pow(data.h),
    );
    let rho = (
        data.c.compose(&xn).mul_x_pow(data.k),
        data.b.compose(&xn).mul_x_pow(data.h),
    );
    assert_eq!(
        lambda.0.compose(&lambda.1),
        ritt_polynomial(RittKind::Lambda, n, s, &g)
    );
    assert_eq!(
        rho.0.compose(&rho.1),
        ritt_polynomial(RittKind::Rho, n, s, &g)
    );
    Ok(NestedDecomposition {
        g,
        split: RittSplit { lambda, rho },
    })
}

/// Recovers `(j, k, h, B, C)` from a decomposable `P = X^s·G^p`, using the
/// first normal decomposition found.
pub fn ritt_extract(p: &Polynomial, prime: usize, s: usize) -> Result<RittData, FamilyError> {
    let nd = decompose_any(p).ok_or(FamilyError::NotDecomposable)?;
    extract_from(p, prime, s, nd)
}

/// As [`ritt_extract`], but from the normal decomposition with inner
/// degree `r`.
pub fn ritt_extract_at(
    p: &Polynomial,
    prime: usize,
    s: usize,
    r: usize,
) -> Result<RittData, FamilyError> {
    let n = p.degree();
    if r < 2 || n % r != 0 {
        return Err(FamilyError::NotDecomposable);
    }
    let nd = normal_decomposition(p, n / r, r).map_err(|_| FamilyError::NotDecomposable)?;
    extract_from(p, prime, s, nd)
}

fn extract_from(
    p: &Polynomial,
    prime: usize,
    s: usize,
    nd: NormalDecomposition,
) -> Result<RittData, FamilyError> {
    if s.gcd(&prime) != 1 {
        return Err(FamilyError::GcdTooSmall { s, n: prime });
    }
    let body = p
        .div_x_pow(s)
        .ok_or_else(|| FamilyError::Shape(format!("not divisible by X^{s}")))?;
    let g = nth_root(&body, prime as u32)?;
    let j = g.ord0();
    let (q, r) = (nd.outer, nd.inner);
    let h = r.ord0();
    let k = q.ord0();
    let b = nth_root(&r.div_x_pow(h).expect("ord0"), prime as u32)?;
    let c = nth_root(&q.div_x_pow(k).expect("ord0"), prime as u32)?;
    let data = RittData { j, k, h, b, c };
    if data.g(prime) != g {
        return Err(FamilyError::ReconstructionFailed);
    }
    Ok(data)
}
