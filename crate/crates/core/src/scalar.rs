//! Exact scalars: arbitrary-precision rationals, and monomials `c·v^k` in a
//! single radical extension `ℚ[v]/(v^n − a)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision rational number, always kept in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// The integer `n` as a rational.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// The fraction `n/d`, reduced.
///
/// # Panics
///
/// Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// `q^e` for any integer exponent. Negative exponents invert `q`.
///
/// # Panics
///
/// Panics on a negative exponent with `q == 0`.
pub fn rational_pow(q: &Rational, e: i64) -> Rational {
    let base = if e < 0 { q.recip() } else { q.clone() };
    num_traits::pow(base, e.unsigned_abs() as usize)
}

/// Exact `n`-th root of a rational, when one exists in ℚ.
///
/// For even `n` and positive `q` the positive root is returned.
pub fn rational_root(q: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if q.is_zero() || n == 1 {
        return Some(q.clone());
    }
    if q.is_negative() && n % 2 == 0 {
        return None;
    }
    let num = integer_root(&q.numer().abs(), n)?;
    let den = integer_root(q.denom(), n)?;
    let root = Rational::new(num, den);
    Some(if q.is_negative() { -root } else { root })
}

fn integer_root(x: &BigInt, n: u32) -> Option<BigInt> {
    let r = x.nth_root(n);
    (num_traits::pow(r.clone(), n as usize) == *x).then_some(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("radical monomials belong to different extensions ({left} and {right})")]
    ModulusMismatch { left: Modulus, right: Modulus },
}

/// The defining relation `v^degree = constant` of a radical extension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    degree: u32,
    constant: Rational,
}

impl Modulus {
    /// # Panics
    ///
    /// Panics if `degree == 0`.
    pub fn new(degree: u32, constant: Rational) -> Self {
        assert!(degree > 0, "radical degree must be positive");
        Modulus { degree, constant }
    }

    /// `v^1 = 1`: the extension that adds nothing.
    pub fn trivial() -> Self {
        Modulus::new(1, Rational::one())
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn constant(&self) -> &Rational {
        &self.constant
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v^{} = {}", self.degree, self.constant)
    }
}

/// An element `coeff·v^power` of `ℚ[v]/(v^Δ − a)`, stored in normal form:
/// `power < Δ`, and `power == 0` whenever `coeff == 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalMonomial {
    coeff: Rational,
    power: u32,
    modulus: Modulus,
}

impl RadicalMonomial {
    /// Builds `coeff·v^power`, folding `v^Δ` into the coefficient.
    pub fn new(coeff: Rational, power: u32, modulus: Modulus) -> Self {
        let n = modulus.degree;
        let folds = power / n;
        let mut coeff = coeff;
        if folds > 0 {
            coeff *= num_traits::pow(modulus.constant.clone(), folds as usize);
        }
        let power = if coeff.is_zero() { 0 } else { power % n };
        RadicalMonomial {
            coeff,
            power,
            modulus,
        }
    }

    pub fn rational(coeff: Rational, modulus: Modulus) -> Self {
        RadicalMonomial::new(coeff, 0, modulus)
    }

    pub fn one(modulus: Modulus) -> Self {
        RadicalMonomial::rational(Rational::one(), modulus)
    }

    /// The generator `v` itself.
    pub fn generator(modulus: Modulus) -> Self {
        RadicalMonomial::new(Rational::one(), 1, modulus)
    }

    pub fn coeff(&self) -> &Rational {
        &self.coeff
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.power == 0
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational().then(|| self.coeff.clone())
    }

    pub fn pow(&self, e: u32) -> Self {
        let coeff = num_traits::pow(self.coeff.clone(), e as usize);
        let power = (u64::from(self.power) * u64::from(e)) % u64::from(self.modulus.degree);
        let folds = (u64::from(self.power) * u64::from(e)) / u64::from(self.modulus.degree);
        let coeff = coeff * num_traits::pow(self.modulus.constant.clone(), folds as usize);
        RadicalMonomial::new(coeff, power as u32, self.modulus.clone())
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &Rational) -> Self {
        RadicalMonomial::new(&self.coeff * c, self.power, self.modulus.clone())
    }
}

impl fmt::Display for RadicalMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.power {
            0 => write!(f, "{}", self.coeff),
            1 if self.coeff.is_one() => write!(f, "v"),
            1 => write!(f, "{}*v", self.coeff),
            k if self.coeff.is_one() => write!(f, "v^{k}"),
            k => write!(f, "{}*v^{k}", self.coeff),
        }
    }
}

fn check_modulus(x: &RadicalMonomial, y: &RadicalMonomial) -> Result<(), ScalarError> {
    if x.modulus == y.modulus {
        Ok(())
    } else {
        Err(ScalarError::ModulusMismatch {
            left: x.modulus.clone(),
            right: y.modulus.clone(),
        })
    }
}

/// Product of two radical monomials over the same extension.
pub fn radical_mul(
    x: &RadicalMonomial,
    y: &RadicalMonomial,
) -> Result<RadicalMonomial, ScalarError> {
    check_modulus(x, y)?;
    Ok(RadicalMonomial::new(
        &x.coeff * &y.coeff,
        x.power + y.power,
        x.modulus.clone(),
    ))
}

/// Equality of normal forms over the same extension.
pub fn radical_eq(x: &RadicalMonomial, y: &RadicalMonomial) -> Result<bool, ScalarError> {
    check_modulus(x, y)?;
    Ok(x.coeff == y.coeff && x.power == y.power)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(degree: u32, a: i64) -> Modulus {
        Modulus::new(degree, int(a))
    }

    #[test]
    fn square_of_generator_folds() {
        let v = RadicalMonomial::generator(m(2, 3));
        let p = radical_mul(&v, &v).unwrap();
        assert_eq!(p, RadicalMonomial::rational(int(3), m(2, 3)));
    }

    #[test]
    fn rational_product() {
        let md = m(2, 3);
        let x = RadicalMonomial::rational(int(2), md.clone());
        let y = RadicalMonomial::rational(frac(1, 2), md.clone());
        assert_eq!(radical_mul(&x, &y).unwrap(), RadicalMonomial::one(md));
    }

    #[test]
    fn chebyshev_cubic_step() {
        let md = m(2, -4);
        let v = RadicalMonomial::generator(md.clone());
        let w = RadicalMonomial::new(frac(-3, 4), 1, md.clone());
        assert_eq!(
            radical_mul(&v, &w).unwrap(),
            RadicalMonomial::rational(int(3), md)
        );
    }

    #[test]
    fn equality_after_reduction() {
        let md = m(2, 3);
        let a = RadicalMonomial::rational(int(3), md.clone());
        let b = RadicalMonomial::new(int(1), 2, md.clone());
        assert!(radical_eq(&a, &b).unwrap());
        let v = RadicalMonomial::generator(md.clone());
        assert!(!radical_eq(&v, &RadicalMonomial::one(md)).unwrap());
    }

    #[test]
    fn mismatched_moduli_are_rejected() {
        let a = RadicalMonomial::generator(m(2, 3));
        let b = RadicalMonomial::generator(m(2, 5));
        assert!(matches!(
            radical_mul(&a, &b),
            Err(ScalarError::ModulusMismatch { .. })
        ));
        assert!(radical_eq(&a, &b).is_err());
    }

    #[test]
    fn zero_has_power_zero() {
        let z = RadicalMonomial::new(int(0), 1, m(3, 2));
        assert_eq!(z.power(), 0);
    }

    #[test]
    fn pow_matches_repeated_product() {
        let md = m(3, 2);
        let x = RadicalMonomial::new(frac(1, 3), 2, md);
        let mut acc = RadicalMonomial::one(x.modulus().clone());
        for _ in 0..5 {
            acc = radical_mul(&acc, &x).unwrap();
        }
        assert_eq!(x.pow(5), acc);
    }

    #[test]
    fn roots() {
        assert_eq!(rational_root(&frac(-8, 27), 3), Some(frac(-2, 3)));
        assert_eq!(rational_root(&int(-4), 2), None);
        assert_eq!(rational_root(&int(16), 4), Some(int(2)));
        assert_eq!(rational_root(&int(12), 2), None);
        assert_eq!(rational_pow(&frac(2, 3), -2), frac(9, 4));
    }
}
