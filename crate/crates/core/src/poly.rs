//! Dense univariate polynomials over ℚ.
//!
//! `coeffs[i]` holds the coefficient of `X^i`; the zero polynomial has no
//! coefficients at all.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomial is not an exact {n}-th power over the rationals")]
    NotAPower { n: u32 },
    #[error("expected a monic polynomial")]
    NotMonic,
    #[error("degree {degree} is not divisible by {n}")]
    DegreeNotDivisible { degree: usize, n: u32 },
    #[error("root index must be positive")]
    ZeroIndex,
}

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    /// Builds a polynomial from coefficients in increasing exponent order,
    /// dropping trailing zeros.
    pub fn new(coeffs: Vec<Rational>) -> Self {
        let mut p = Polynomial { coeffs };
        p.trim();
        p
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| int(c)).collect())
    }

    /// Builds a polynomial from `(exponent, coefficient)` pairs; repeated
    /// exponents add up.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (usize, Rational)>,
    {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (k, c) in terms {
            if coeffs.len() <= k {
                coeffs.resize(k + 1, Rational::zero());
            }
            coeffs[k] += c;
        }
        Polynomial::new(coeffs)
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    /// The identity polynomial `X`.
    pub fn x() -> Self {
        Polynomial::monomial(Rational::one(), 1)
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::new(vec![c])
    }

    /// `c·X^k`.
    pub fn monomial(c: Rational, k: usize) -> Self {
        if c.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Polynomial { coeffs }
    }

    /// `X^k`.
    pub fn x_pow(k: usize) -> Self {
        Polynomial::monomial(Rational::one(), k)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `X^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_ref(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k).filter(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with the convention that constants (including zero) have
    /// degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// True for `c·X^k` with `c ≠ 0`.
    pub fn is_monomial(&self) -> bool {
        self.nonzero_terms().count() == 1
    }

    /// Exponents with nonzero coefficients, in increasing order.
    pub fn nonzero_terms(&self) -> impl DoubleEndedIterator<Item = (usize, &Rational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
    }

    /// Multiplicity of 0 as a root; 0 for the zero polynomial.
    pub fn ord0(&self) -> usize {
        self.nonzero_terms().next().map_or(0, |(k, _)| k)
    }

    /// Divides by `X^k`, if every coefficient below `X^k` vanishes.
    pub fn div_x_pow(&self, k: usize) -> Option<Polynomial> {
        if self.coeffs.iter().take(k).any(|c| !c.is_zero()) {
            return None;
        }
        Some(Polynomial::new(self.coeffs.iter().skip(k).cloned().collect()))
    }

    pub fn mul_x_pow(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Divides through by the leading coefficient.
    pub fn monic(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        self.scale(&self.leading().recip())
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `P(−X)`.
    pub fn reflect(&self) -> Polynomial {
        Polynomial {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `self ∘ inner`, i.e. `self(inner(X))`.
    pub fn compose(&self, inner: &Polynomial) -> Polynomial {
        if self.is_constant() {
            return self.clone();
        }
        if inner.is_monomial() {
            let (k, c) = inner.nonzero_terms().next().expect("monomial");
            let mut coeffs = vec![Rational::zero(); self.degree() * k + 1];
            let mut cpow = Rational::one();
            for (i, a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    coeffs[i * k] += a * &cpow;
                }
                cpow *= c;
            }
            return Polynomial::new(coeffs);
        }
        if self.is_monomial() {
            let (k, c) = self.nonzero_terms().next().expect("monomial");
            return inner.pow(k as u32).scale(c);
        }
        let mut acc = Polynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * inner;
            if !c.is_zero() {
                acc.add_constant(c);
            }
        }
        acc
    }

    fn add_constant(&mut self, c: &Rational) {
        if self.coeffs.is_empty() {
            self.coeffs.push(c.clone());
        } else {
            self.coeffs[0] += c;
        }
        self.trim();
    }

    /// Euclidean division. Returns `(quotient, remainder)`.
    ///
    /// # Panics
    ///
    /// Panics when dividing by zero.
    pub fn div_rem(&self, divisor: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        let dd = divisor.degree();
        if self.is_zero() || self.degree() < dd {
            return (Polynomial::zero(), self.clone());
        }
        let lead_inv = divisor.leading().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); self.degree() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + i] -= &c * b;
                }
            }
            quot[k] = c;
        }
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Quotient when `divisor` divides `self` exactly.
    pub fn exact_div(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let (q, r) = self.div_rem(divisor);
        r.is_zero().then_some(q)
    }

    /// Coefficients scaled to integers: `self = ints / den`.
    fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let den = self
            .coeffs
            .iter()
            .filter(|c| !c.is_zero())
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_zero() {
                    BigInt::zero()
                } else {
                    c.numer() * (&den / c.denom())
                }
            })
            .collect();
        (ints, den)
    }

    pub fn profile(&self) -> Profile {
        profile(self)
    }

    pub fn classify(&self) -> ClassFlags {
        classify(self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", -c) } else { ("+", c.clone()) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            write_term(f, &mag, k)?;
        }
        Ok(())
    }
}

fn write_term(f: &mut fmt::Formatter<'_>, mag: &Rational, k: usize) -> fmt::Result {
    let var = match k {
        0 => return write!(f, "{mag}"),
        1 => "X".to_string(),
        _ => format!("X^{k}"),
    };
    if mag.is_one() {
        write!(f, "{var}")
    } else {
        write!(f, "{mag}*{var}")
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|k| match (self.coeffs.get(k), rhs.coeffs.get(k)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Polynomial::new(coeffs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self + &(-rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let (a, da) = self.integer_form();
        let (b, db) = rhs.integer_form();
        let nz_b: Vec<(usize, &BigInt)> =
            b.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for &(j, y) in &nz_b {
                out[i + j] += x * y;
            }
        }
        let den = da * db;
        Polynomial::new(
            out.into_iter()
                .map(|c| {
                    if c.is_zero() {
                        Rational::zero()
                    } else {
                        Rational::new(c, den.clone())
                    }
                })
                .collect(),
        )
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Polynomial> for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: &Polynomial) -> Polynomial {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// `P ∘ Q`.
pub fn compose(p: &Polynomial, q: &Polynomial) -> Polynomial {
    p.compose(q)
}

/// Composes a chain given outermost first. The empty chain is `X`.
pub fn compose_chain<'a, I>(factors: I) -> Polynomial
where
    I: IntoIterator<Item = &'a Polynomial>,
    I::IntoIter: DoubleEndedIterator,
{
    factors
        .into_iter()
        .rev()
        .fold(Polynomial::x(), |acc, f| f.compose(&acc))
}

/// Structural data of a polynomial: degree, support, second degree and
/// descent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Profile {
    pub degree: usize,
    /// Exponents with nonzero coefficient, strictly decreasing. Constants
    /// have support `[0]`.
    pub support: Vec<usize>,
    /// Largest exponent below the degree with a nonzero coefficient.
    pub second_degree: Option<usize>,
    /// `d − e`, or `d` when there is no second degree.
    pub descent: usize,
}

pub fn profile(p: &Polynomial) -> Profile {
    if p.is_constant() {
        return Profile {
            degree: 0,
            support: vec![0],
            second_degree: None,
            descent: 0,
        };
    }
    let support: Vec<usize> = p.nonzero_terms().map(|(k, _)| k).rev().collect();
    let d = support[0];
    let second_degree = support.get(1).copied();
    Profile {
        degree: d,
        descent: second_degree.map_or(d, |e| d - e),
        support,
        second_degree,
    }
}

/// Membership in the classes μ (monic), ν (vanishing at 0), ϱ (reduced) and
/// δ (canonical orbit representative).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassFlags {
    pub is_mu: bool,
    pub is_nu: bool,
    pub is_rho: bool,
    pub is_delta: bool,
}

pub fn classify(p: &Polynomial) -> ClassFlags {
    let d = p.degree();
    let is_mu = p.is_monic();
    let is_nu = p.coeff(0).is_zero();
    let is_rho = is_nu && (d <= 1 || p.coeff(d - 1).is_zero());
    let shape = d >= 1
        && match profile(p).second_degree {
            None => true,
            Some(e) => p.coeff(e) == int(d as i64),
        };
    ClassFlags {
        is_mu,
        is_nu,
        is_rho,
        is_delta: is_mu && is_rho && shape,
    }
}

/// First `terms` coefficients of `f^(1/q)` for a power series with
/// `f[0] == 1`.
pub(crate) fn series_root(f: &[Rational], q: u32, terms: usize) -> Vec<Rational> {
    let fc = |j: usize| f.get(j).cloned().unwrap_or_else(Rational::zero);
    let alpha = Rational::new(BigInt::one(), BigInt::from(q));
    let mut g = vec![Rational::one()];
    for k in 1..terms {
        let mut acc = Rational::zero();
        for j in 1..=k {
            let fj = fc(j);
            if !fj.is_zero() {
                acc += &alpha * int(j as i64) * &fj * &g[k - j];
            }
        }
        for i in 1..k {
            let fi = fc(i);
            if !fi.is_zero() {
                acc -= &fi * int((k - i) as i64) * &g[k - i];
            }
        }
        g.push(acc / int(k as i64));
    }
    g
}

/// The monic `B₁` with `B₁ⁿ = B`, if it exists over ℚ.
pub fn nth_root(b: &Polynomial, n: u32) -> Result<Polynomial, PolyError> {
    if n == 0 {
        return Err(PolyError::ZeroIndex);
    }
    if !b.is_monic() {
        return Err(PolyError::NotMonic);
    }
    let d = b.degree();
    if d % n as usize != 0 {
        return Err(PolyError::DegreeNotDivisible { degree: d, n });
    }
    let m = d / n as usize;
    let reversed: Vec<Rational> = b.coeffs.iter().rev().cloned().collect();
    let g = series_root(&reversed, n, m + 1);
    let root = Polynomial::new(g.into_iter().rev().collect());
    if root.pow(n) == *b {
        Ok(root)
    } else {
        Err(PolyError::NotAPower { n })
    }
}
