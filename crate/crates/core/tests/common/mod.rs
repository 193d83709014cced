//! Random generators shared by the property suites and the acceptance run.
#![allow(dead_code)]

use num_bigint::BigInt;
use polycomp::canonical::{AffineMap, GPair};
use polycomp::families::RittData;
use polycomp::rewrite::{Generator, Word};
use polycomp::{Polynomial, Rational};
use rand::seq::SliceRandom;
use num_traits::Zero;
use rand::Rng;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn z(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// A rational in [-9, 9] with denominator at most 4.
pub fn small_rational<R: Rng>(rng: &mut R) -> Rational {
    let den = rng.gen_range(1..=4);
    q(rng.gen_range(-9 * den..=9 * den), den)
}

pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Rational {
    loop {
        let c = small_rational(rng);
        if c != z(0) {
            return c;
        }
    }
}

/// Degree exactly `d`, coefficients from [`small_rational`].
pub fn poly_of_degree<R: Rng>(rng: &mut R, d: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..d).map(|_| small_rational(rng)).collect();
    c.push(nonzero_rational(rng));
    Polynomial::new(c)
}

/// Monic with zero constant term.
pub fn mu_nu<R: Rng>(rng: &mut R, d: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..d).map(|_| small_rational(rng)).collect();
    c[0] = z(0);
    c.push(z(1));
    Polynomial::new(c)
}

pub fn monic<R: Rng>(rng: &mut R, d: usize) -> Polynomial {
    let mut c: Vec<Rational> = (0..d).map(|_| small_rational(rng)).collect();
    c.push(z(1));
    Polynomial::new(c)
}

pub fn affine<R: Rng>(rng: &mut R) -> AffineMap {
    AffineMap::new(nonzero_rational(rng), small_rational(rng)).expect("nonzero slope")
}

pub fn gpair<R: Rng>(rng: &mut R) -> GPair {
    GPair::new(affine(rng), affine(rng))
}

pub const PRIMES: [usize; 4] = [2, 3, 5, 7];

/// M and T generators over primes up to 7.
pub fn monomial_chebyshev_alphabet() -> Vec<Generator> {
    let mut gens: Vec<Generator> = PRIMES.iter().map(|&p| Generator::m(p).unwrap()).collect();
    gens.extend([3, 5, 7].iter().map(|&p| Generator::t(p).unwrap()));
    gens
}

/// Every word of length at most `max_len` over `alphabet`.
pub fn all_words(alphabet: &[Generator], max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::new(vec![])];
    let mut layer = vec![Vec::<Generator>::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &layer {
            for g in alphabet {
                let mut v = w.clone();
                v.push(g.clone());
                next.push(v);
            }
        }
        out.extend(next.iter().cloned().map(Word::new));
        layer = next;
    }
    out
}

/// Valid Ritt generators with small `G`, tried until `count` are found.
pub fn ritt_generators<R: Rng>(rng: &mut R, count: usize) -> Vec<Generator> {
    let mut out = Vec::new();
    while out.len() < count {
        let p = *[2usize, 3].choose(rng).unwrap();
        let s = rng.gen_range(1..p);
        let mut g = monic(rng, 2);
        if g.coeff(0) == z(0) {
            g = &g + &Polynomial::one();
        }
        let gen = if rng.gen_bool(0.5) {
            Generator::r_lambda(p, s, g)
        } else {
            Generator::r_rho(p, s, g)
        };
        if let Ok(gen) = gen {
            out.push(gen);
        }
    }
    out
}

/// A random word of `len` generators from the M/T alphabet, with an
/// occasional Ritt generator.
pub fn random_word<R: Rng>(rng: &mut R, len: usize, ritt: &[Generator]) -> Word {
    let alphabet = monomial_chebyshev_alphabet();
    let gens = (0..len)
        .map(|_| {
            if !ritt.is_empty() && rng.gen_bool(0.15) {
                ritt.choose(rng).unwrap().clone()
            } else {
                alphabet.choose(rng).unwrap().clone()
            }
        })
        .collect();
    Word::new(gens)
}

/// Random `(j, k, h, B, C)` with `kh = nj + s`, `h ≥ 1` and
/// `B(0)·C(0) ≠ 0`, so that the data survives normalization.
pub fn lemma_instance<R: Rng>(rng: &mut R) -> (RittData, usize, usize) {
    loop {
        let n = [2usize, 3][rng.gen_range(0..2)];
        let s = rng.gen_range(1..n);
        let j = rng.gen_range(0..=2);
        let target = n * j + s;
        let divisors: Vec<usize> = (1..=target).filter(|d| target % d == 0).collect();
        let k = divisors[rng.gen_range(0..divisors.len())];
        let h = target / k;
        let (db, dc) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let b = monic(rng, db);
        let c = monic(rng, dc);
        if b.coeff(0).is_zero() || c.coeff(0).is_zero() {
            continue;
        }
        return (RittData { j, k, h, b, c }, n, s);
    }
}
