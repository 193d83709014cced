//! Canonical forms under the action of `G = Aff × Aff` on polynomials,
//! `(α, β)·P = α ∘ P ∘ β⁻¹`.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::scalar::{int, rational_pow, rational_root, Modulus, RadicalMonomial, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonicalError {
    #[error("an affine map needs a nonzero leading coefficient")]
    DegenerateAffine,
    #[error("operation needs a polynomial of degree at least {min}, got degree {degree}")]
    DegreeTooSmall { min: usize, degree: usize },
}

/// The unit `aX + b` of the composition monoid.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AffineMap {
    a: Rational,
    b: Rational,
}

impl AffineMap {
    pub fn new(a: Rational, b: Rational) -> Result<Self, CanonicalError> {
        if a.is_zero() {
            return Err(CanonicalError::DegenerateAffine);
        }
        Ok(AffineMap { a, b })
    }

    pub fn identity() -> Self {
        AffineMap {
            a: Rational::one(),
            b: Rational::zero(),
        }
    }

    /// `X + b`.
    pub fn shift(b: Rational) -> Self {
        AffineMap {
            a: Rational::one(),
            b,
        }
    }

    pub fn a(&self) -> &Rational {
        &self.a
    }

    pub fn b(&self) -> &Rational {
        &self.b
    }

    /// `self ∘ other`.
    pub fn then_inner(&self, other: &AffineMap) -> AffineMap {
        AffineMap {
            a: &self.a * &other.a,
            b: &self.a * &other.b + &self.b,
        }
    }

    pub fn inverse(&self) -> AffineMap {
        let inv = self.a.recip();
        AffineMap {
            b: -(&self.b * &inv),
            a: inv,
        }
    }

    pub fn to_poly(&self) -> Polynomial {
        Polynomial::new(vec![self.b.clone(), self.a.clone()])
    }

    /// `self ∘ P`.
    pub fn apply_outer(&self, p: &Polynomial) -> Polynomial {
        let mut out = p.scale(&self.a);
        out = &out + &Polynomial::constant(self.b.clone());
        out
    }

    /// `P ∘ self`.
    pub fn apply_inner(&self, p: &Polynomial) -> Polynomial {
        p.compose(&self.to_poly())
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }
}

impl fmt::Display for AffineMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}

/// An element `(α, β)` of `G`, acting by `P ↦ α ∘ P ∘ β⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GPair {
    pub alpha: AffineMap,
    pub beta: AffineMap,
}

impl GPair {
    pub fn new(alpha: AffineMap, beta: AffineMap) -> Self {
        GPair { alpha, beta }
    }

    pub fn identity() -> Self {
        GPair::new(AffineMap::identity(), AffineMap::identity())
    }

    pub fn act(&self, p: &Polynomial) -> Polynomial {
        self.alpha
            .apply_outer(&self.beta.inverse().apply_inner(p))
    }

    /// The group product, so that `g.product(h).act(P) == g.act(&h.act(P))`.
    pub fn product(&self, other: &GPair) -> GPair {
        GPair {
            alpha: self.alpha.then_inner(&other.alpha),
            beta: self.beta.then_inner(&other.beta),
        }
    }

    pub fn inverse(&self) -> GPair {
        GPair::new(self.alpha.inverse(), self.beta.inverse())
    }
}

impl fmt::Display for GPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(alpha = {}, beta = {})", self.alpha, self.beta)
    }
}

/// Monic reduced representative `S = α ∘ P ∘ β⁻¹` obtained by a
/// Tschirnhaus shift followed by an outer affine normalization.
pub fn mu_rho_reduce(p: &Polynomial) -> Result<(Polynomial, GPair), CanonicalError> {
    let d = p.degree();
    if d < 1 {
        return Err(CanonicalError::DegreeTooSmall { min: 1, degree: d });
    }
    let cd = p.leading();
    let shift = p.coeff(d - 1) / (int(d as i64) * &cd);
    let beta = AffineMap::shift(shift);
    let r = beta.inverse().apply_inner(p);
    let alpha = AffineMap::new(cd.recip(), -(r.coeff(0) / &cd))?;
    let s = alpha.apply_outer(&r);
    Ok((s, GPair::new(alpha, beta)))
}

/// A δ-polynomial in the orbit of some input, possibly over a radical
/// extension `ℚ[v]/(v^n − a)`.
///
/// With `S = witness·P` rational and monic reduced, the form is
/// `scale^d · S(X/scale)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaForm {
    coeffs: Vec<RadicalMonomial>,
    modulus: Modulus,
    witness: GPair,
    scale: RadicalMonomial,
}

impl DeltaForm {
    /// Coefficients indexed by exponent.
    pub fn coeffs(&self) -> &[RadicalMonomial] {
        &self.coeffs
    }

    pub fn modulus(&self) -> &Modulus {
        &self.modulus
    }

    /// Rational part of the normalizing group element.
    pub fn witness(&self) -> &GPair {
        &self.witness
    }

    /// The scaling root `v` (times a rational).
    pub fn scale(&self) -> &RadicalMonomial {
        &self.scale
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// The form as a rational polynomial, if no coefficient involves `v`.
    pub fn as_rational(&self) -> Option<Polynomial> {
        self.coeffs
            .iter()
            .map(RadicalMonomial::to_rational)
            .collect::<Option<Vec<_>>>()
            .map(Polynomial::new)
    }

    /// Checks that the witness and scale carry `p` exactly onto this form.
    pub fn reproduces(&self, p: &Polynomial) -> bool {
        let s = self.witness.act(p);
        let d = s.degree();
        if d != self.degree() {
            return false;
        }
        if d == 0 {
            return self.coeffs.len() == 1 && self.coeffs[0].to_rational() == Some(s.coeff(0));
        }
        (0..=d).all(|k| {
            let expected = self.scale.pow((d - k) as u32).scale(&s.coeff(k));
            expected == self.coeffs[k]
        })
    }
}

impl fmt::Display for DeltaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(p) = self.as_rational() {
            return write!(f, "{p}");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*X")?,
                _ => write!(f, "({c})*X^{k}")?,
            }
        }
        write!(f, "  [{}]", self.modulus)
    }
}

fn rational_form(p: Polynomial, witness: GPair) -> DeltaForm {
    let modulus = Modulus::trivial();
    DeltaForm {
        coeffs: p
            .coeffs()
            .iter()
            .map(|c| RadicalMonomial::rational(c.clone(), modulus.clone()))
            .collect(),
        scale: RadicalMonomial::one(modulus.clone()),
        modulus,
        witness,
    }
}

/// The gaps `d − e_j` between the degree and every lower support exponent.
fn support_gaps(s: &Polynomial) -> Vec<usize> {
    let d = s.degree();
    s.nonzero_terms()
        .map(|(k, _)| k)
        .filter(|&k| k < d)
        .map(|k| d - k)
        .collect()
}

fn gcd_all(xs: &[usize]) -> usize {
    xs.iter().fold(0, |g, &x| g.gcd(&x))
}

/// δ-normalization. Degrees 0 and 1 normalize to `1` and `X`.
pub fn delta_normalize(p: &Polynomial) -> DeltaForm {
    let d = p.degree();
    if d == 0 {
        let alpha = AffineMap::shift(Rational::one() - p.coeff(0));
        return rational_form(Polynomial::one(), GPair::new(alpha, AffineMap::identity()));
    }
    let (s, witness) = mu_rho_reduce(p).expect("degree checked");
    let pr = s.profile();
    let Some(e) = pr.second_degree else {
        return rational_form(s, witness);
    };
    let delta = d - e;
    let a = int(d as i64) / s.coeff(e);
    // Smallest D | Δ with a = A^(Δ/D) for rational A; then v^D = A.
    let (modulus_degree, constant) = divisors(delta)
        .into_iter()
        .find_map(|dd| rational_root(&a, (delta / dd) as u32).map(|root| (dd, root)))
        .expect("D = Δ always works");
    let modulus = Modulus::new(modulus_degree as u32, constant);
    let scale = RadicalMonomial::generator(modulus.clone());
    let coeffs = (0..=d)
        .map(|k| scale.pow((d - k) as u32).scale(&s.coeff(k)))
        .collect();
    DeltaForm {
        coeffs,
        modulus,
        witness,
        scale,
    }
}

pub(crate) fn divisors(n: usize) -> Vec<usize> {
    (1..=n).filter(|k| n % k == 0).collect()
}

/// Number of δ-polynomials in the orbit of `p`.
pub fn delta_count(p: &Polynomial) -> usize {
    if p.degree() < 2 {
        return 1;
    }
    let (s, _) = mu_rho_reduce(p).expect("degree checked");
    let gaps = support_gaps(&s);
    if gaps.is_empty() {
        return 1;
    }
    let delta = *gaps.iter().min().expect("nonempty");
    delta / gcd_all(&gaps)
}

/// Evidence for associateness: any `g`-th root `r` of `z` satisfies
/// `S_Q(X) = r^(−d) · S_P(rX)` on the monic reduced forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssociateWitness {
    pub g: usize,
    pub z: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Associate {
    pub associate: bool,
    pub witness: Option<AssociateWitness>,
}

impl Associate {
    fn no() -> Self {
        Associate {
            associate: false,
            witness: None,
        }
    }
}

/// Decides whether `q` lies in the `G`-orbit of `p` (over an algebraic
/// closure), using only rational arithmetic.
pub fn associate(p: &Polynomial, q: &Polynomial) -> Associate {
    let d = p.degree();
    if d != q.degree() {
        return Associate::no();
    }
    if d <= 1 {
        return Associate {
            associate: true,
            witness: None,
        };
    }
    let (sp, _) = mu_rho_reduce(p).expect("degree checked");
    let (sq, _) = mu_rho_reduce(q).expect("degree checked");
    if sp.profile().support != sq.profile().support {
        return Associate::no();
    }
    let exps: Vec<usize> = sp
        .nonzero_terms()
        .map(|(k, _)| k)
        .filter(|&k| k < d)
        .collect();
    if exps.is_empty() {
        return Associate {
            associate: true,
            witness: Some(AssociateWitness {
                g: 1,
                z: Rational::one(),
            }),
        };
    }
    let m: Vec<i64> = exps.iter().map(|&k| (d - k) as i64).collect();
    let rho: Vec<Rational> = exps.iter().map(|&k| sp.coeff(k) / sq.coeff(k)).collect();
    let g = m.iter().fold(0i64, |g, &x| g.gcd(&x));
    let n: Vec<i64> = m.iter().map(|x| x / g).collect();
    let lambda = bezout(&n);
    let z = rho
        .iter()
        .zip(&lambda)
        .fold(Rational::one(), |acc, (r, &l)| acc * rational_pow(r, l));
    let ok = rho
        .iter()
        .zip(&n)
        .all(|(r, &nj)| rational_pow(&z, nj) == *r);
    if ok {
        Associate {
            associate: true,
            witness: Some(AssociateWitness { g: g as usize, z }),
        }
    } else {
        Associate::no()
    }
}

/// Coefficients `λ` with `Σ λ_j n_j = gcd(n)`.
fn bezout(n: &[i64]) -> Vec<i64> {
    let mut lambda = vec![0i64; n.len()];
    let mut g = 0i64;
    for (j, &x) in n.iter().enumerate() {
        if g == 0 {
            g = x;
            lambda[j] = 1;
            continue;
        }
        let e = g.extended_gcd(&x);
        for l in lambda.iter_mut().take(j) {
            *l *= e.x;
        }
        lambda[j] = e.y;
        g = e.gcd;
    }
    lambda
}

/// Stabilizer type of an orbit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IsotropyDescriptor {
    /// Constants: `K* × Aff(K)`.
    ConstantOrbit,
    /// Degree one: `Aff(K)`.
    DegreeOne,
    /// The orbit of `X^d`, `d ≥ 2`: `K*`.
    Monomial,
    /// Every other orbit: the cyclic group `ℤ_n`.
    CyclicOfOrder(usize),
}

impl fmt::Display for IsotropyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsotropyDescriptor::ConstantOrbit => write!(f, "K* x Aff(K)"),
            IsotropyDescriptor::DegreeOne => write!(f, "Aff(K)"),
            IsotropyDescriptor::Monomial => write!(f, "K*"),
            IsotropyDescriptor::CyclicOfOrder(n) => write!(f, "Z_{n}"),
        }
    }
}

pub fn isotropy(p: &Polynomial) -> IsotropyDescriptor {
    match p.degree() {
        0 => IsotropyDescriptor::ConstantOrbit,
        1 => IsotropyDescriptor::DegreeOne,
        _ => {
            let (s, _) = mu_rho_reduce(p).expect("degree checked");
            let gaps = support_gaps(&s);
            if gaps.is_empty() {
                IsotropyDescriptor::Monomial
            } else {
                IsotropyDescriptor::CyclicOfOrder(gcd_all(&gaps))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::frac;

    fn p(c: &[i64]) -> Polynomial {
        Polynomial::from_ints(c)
    }

    #[test]
    fn mu_rho_examples() {
        for input in [p(&[-1, 0, 2]), p(&[6, 4, 2])] {
            let (s, g) = mu_rho_reduce(&input).unwrap();
            assert_eq!(s, Polynomial::x_pow(2));
            assert_eq!(g.act(&input), s);
        }
        let (s, g) = mu_rho_reduce(&p(&[0, 3, 0, 1])).unwrap();
        assert_eq!(s, p(&[0, 3, 0, 1]));
        assert_eq!(g, GPair::identity());
    }

    #[test]
    fn delta_examples() {
        let f = delta_normalize(&p(&[0, -3, 0, 4]));
        assert_eq!(f.as_rational(), Some(p(&[0, 3, 0, 1])));
        assert_eq!(f.modulus(), &Modulus::new(2, int(-4)));
        assert!(f.reproduces(&p(&[0, -3, 0, 4])));
        let f = delta_normalize(&p(&[0, 1, 0, 1]));
        assert_eq!(f.as_rational(), Some(p(&[0, 3, 0, 1])));
        let q = p(&[0, 0, 8, 0, 6, 0, 1]);
        assert_eq!(delta_normalize(&q).as_rational(), Some(q));
    }

    #[test]
    fn irrational_form_keeps_radicals() {
        // X^5 + X^2 + X: Δ = 3, a = 5, and X^1 picks up v^4 = 5v.
        let input = p(&[0, 1, 1, 0, 0, 1]);
        let f = delta_normalize(&input);
        assert!(f.as_rational().is_none());
        assert!(f.reproduces(&input));
        assert_eq!(f.coeffs()[2].to_rational(), Some(int(5)));
        assert_eq!(f.coeffs()[1].power(), 1);
        assert_eq!(f.coeffs()[1].coeff(), &int(5));
    }

    #[test]
    fn counts() {
        assert_eq!(delta_count(&p(&[0, 0, 0, 0, 1, 9, 0, 0, 0, 1])), 4);
        assert_eq!(delta_count(&p(&[0, 0, 0, 1, 0, 9, 0, 0, 0, 1])), 2);
        assert_eq!(delta_count(&p(&[0, 1, 0, 0, 0, 9, 0, 0, 0, 1])), 1);
    }

    #[test]
    fn associate_examples() {
        let a = p(&[0, 0, 0, 0, 1, 9, 0, 0, 0, 1]);
        let b = p(&[0, 0, 0, 0, -1, 9, 0, 0, 0, 1]);
        assert!(associate(&a, &b).associate);
        let a = p(&[0, 0, 0, 1, 0, 9, 0, 0, 0, 1]);
        let b = p(&[0, 0, 0, 2, 0, 9, 0, 0, 0, 1]);
        assert!(!associate(&a, &b).associate);
        assert!(!associate(&Polynomial::x_pow(3), &p(&[0, 3, 0, 1])).associate);
        assert!(associate(&a, &a).associate);
        assert!(associate(&p(&[3]), &p(&[-7])).associate);
        assert!(associate(&p(&[3, 2]), &p(&[0, -7])).associate);
    }

    #[test]
    fn associate_witness_realizes_scaling() {
        // S_Q = r^-d S_P(rX) with r = 2.
        let sp = p(&[0, 5, 0, 3, 0, 0, 1]);
        let r = int(2);
        let sq = Polynomial::new(
            (0..=6)
                .map(|k| sp.coeff(k) * rational_pow(&r, k as i64 - 6))
                .collect(),
        );
        let res = associate(&sp, &sq);
        assert!(res.associate);
        let w = res.witness.unwrap();
        assert_eq!(rational_pow(&r, w.g as i64), w.z);
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(isotropy(&Polynomial::x_pow(5)), IsotropyDescriptor::Monomial);
        assert_eq!(
            isotropy(&p(&[0, 0, 0, 0, 0, 9, 0, 0, 0, 1])),
            IsotropyDescriptor::CyclicOfOrder(4)
        );
        assert_eq!(isotropy(&p(&[0, 3, 0, 1])), IsotropyDescriptor::CyclicOfOrder(2));
        assert_eq!(isotropy(&p(&[4])), IsotropyDescriptor::ConstantOrbit);
        assert_eq!(isotropy(&p(&[4, 1])), IsotropyDescriptor::DegreeOne);
    }

    #[test]
    fn affine_algebra() {
        let a = AffineMap::new(frac(2, 3), int(5)).unwrap();
        let b = AffineMap::new(int(-1), frac(1, 2)).unwrap();
        assert!(a.then_inner(&a.inverse()).is_identity());
        let x = p(&[1, 1, 1]);
        assert_eq!(
            a.then_inner(&b).apply_outer(&x),
            a.apply_outer(&b.apply_outer(&x))
        );
        assert!(AffineMap::new(int(0), int(1)).is_err());
    }

    #[test]
    fn bezout_identity() {
        let n = [6i64, 10, 15];
        let l = bezout(&n);
        assert_eq!(n.iter().zip(&l).map(|(a, b)| a * b).sum::<i64>(), 1);
    }
}
