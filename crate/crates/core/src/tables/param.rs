//! Polynomials over ℚ in named parameters, and polynomials in `X` with
//! such coefficients.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::poly::Polynomial;
use crate::scalar::Rational;
use crate::syntax::{format_rational, parse_expr, ExprRing, ParseError};

const GREEK: [&str; 9] = [
    "rho", "epsilon", "eta", "theta", "tau", "nu", "sigma", "mu", "lambda",
];

/// Offset of auxiliary variables, which never name a coefficient.
const AUX: u32 = 1000;

/// A parameter. `Var(k)` for `k < 1000` stands for the coefficient of `X^k`
/// of a family's generic member; larger indices are auxiliaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(pub u32);

impl Var {
    pub fn coefficient(k: u32) -> Self {
        assert!(k < AUX, "coefficient index out of range");
        Var(k)
    }

    pub fn aux(n: u32) -> Self {
        Var(AUX + n)
    }

    pub fn is_aux(self) -> bool {
        self.0 >= AUX
    }

    /// The exponent of `X` this parameter stands for.
    pub fn exponent(self) -> Option<u32> {
        (!self.is_aux()).then_some(self.0)
    }

    pub fn name(self) -> String {
        match self.0 {
            k @ 1..=9 => GREEK[k as usize - 1].to_string(),
            k if k < AUX => format!("c{k}"),
            k => format!("t{}", k - AUX),
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        if let Some(i) = GREEK.iter().position(|g| *g == name) {
            return Some(Var(i as u32 + 1));
        }
        let num = |s: &str| s.parse::<u32>().ok();
        if let Some(k) = name.strip_prefix('c').and_then(num) {
            return (k >= 10 && k < AUX).then_some(Var(k));
        }
        name.strip_prefix('t').and_then(num).map(Var::aux)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// A product of parameter powers, sorted by variable.
pub type Monomial = Vec<(Var, u32)>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out: BTreeMap<Var, u32> = a.iter().copied().collect();
    for &(v, e) in b {
        *out.entry(v).or_insert(0) += e;
    }
    out.into_iter().collect()
}

fn mono_degree(m: &Monomial) -> u32 {
    m.iter().map(|(_, e)| e).sum()
}

/// A polynomial over ℚ in the parameters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamScalar {
    terms: BTreeMap<Monomial, Rational>,
}

impl ParamScalar {
    pub fn zero() -> Self {
        ParamScalar::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        ParamScalar { terms }
    }

    pub fn one() -> Self {
        ParamScalar::constant(Rational::one())
    }

    pub fn var(v: Var) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![(v, 1)], Rational::one());
        ParamScalar { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_empty())
    }

    /// The value when no parameter occurs.
    pub fn as_constant(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&Vec::new()).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms.keys().flatten().map(|(v, _)| *v).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(mono_degree).max().unwrap_or(0)
    }

    pub fn degree_in(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .flat_map(|m| m.iter().filter(|(w, _)| *w == v).map(|(_, e)| *e))
            .max()
            .unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        ParamScalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = ParamScalar::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return ParamScalar::zero();
        }
        ParamScalar {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ParamScalar::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Splits `self = a·v + b` when `v` occurs at most linearly, with `a`
    /// and `b` free of `v`.
    pub fn linear_in(&self, v: Var) -> Option<(ParamScalar, ParamScalar)> {
        if self.degree_in(v) != 1 {
            return None;
        }
        let mut a = ParamScalar::zero();
        let mut b = ParamScalar::zero();
        for (m, c) in &self.terms {
            if m.iter().any(|(w, _)| *w == v) {
                let rest: Monomial = m.iter().copied().filter(|(w, _)| *w != v).collect();
                a.add_term(rest, c.clone());
            } else {
                b.add_term(m.clone(), c.clone());
            }
        }
        Some((a, b))
    }

    /// Replaces `v` by `value`.
    pub fn substitute(&self, v: Var, value: &ParamScalar) -> Self {
        if !self.vars().contains(&v) {
            return self.clone();
        }
        let mut powers = vec![ParamScalar::one()];
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let e = m.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e) as usize;
            while powers.len() <= e {
                let next = powers.last().expect("nonempty").mul(value);
                powers.push(next);
            }
            let rest: Monomial = m.iter().copied().filter(|(w, _)| *w != v).collect();
            let mut term = ParamScalar::zero();
            term.add_term(rest, c.clone());
            out = out.add(&term.mul(&powers[e]));
        }
        out
    }

    /// Applies a whole substitution; the values must not mention its keys.
    pub fn substitute_all(&self, subst: &BTreeMap<Var, ParamScalar>) -> Self {
        subst
            .iter()
            .fold(self.clone(), |acc, (v, val)| acc.substitute(*v, val))
    }

    /// Evaluates at a point. Missing parameters are an error.
    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Option<Rational> {
        let mut total = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, e) in m {
                t *= num_traits::pow(point.get(v)?.clone(), *e as usize);
            }
            total += t;
        }
        Some(total)
    }

    /// The largest `k` with `v^k` dividing every term.
    pub fn var_multiplicity(&self, v: Var) -> u32 {
        self.terms
            .keys()
            .map(|m| m.iter().find(|(w, _)| *w == v).map_or(0, |(_, e)| *e))
            .min()
            .unwrap_or(0)
    }

    /// Divides by `v^k`; every term must contain it.
    pub fn div_var_pow(&self, v: Var, k: u32) -> Self {
        let mut out = ParamScalar::zero();
        for (m, c) in &self.terms {
            let reduced: Monomial = m
                .iter()
                .filter_map(|&(w, e)| {
                    if w != v {
                        Some((w, e))
                    } else {
                        assert!(e >= k, "v^k does not divide the term");
                        (e > k).then_some((w, e - k))
                    }
                })
                .collect();
            out.add_term(reduced, c.clone());
        }
        out
    }

    /// Coefficients of `self` as a polynomial in its only variable `v`.
    pub fn univariate(&self, v: Var) -> Option<Polynomial> {
        let mut coeffs = vec![Rational::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            match m.as_slice() {
                [] => coeffs[0] += c,
                [(w, e)] if *w == v => coeffs[*e as usize] += c,
                _ => return None,
            }
        }
        Some(Polynomial::new(coeffs))
    }

    fn display_order(&self) -> Vec<(&Monomial, &Rational)> {
        let mut t: Vec<_> = self.terms.iter().collect();
        t.sort_by(|(a, _), (b, _)| {
            mono_degree(b).cmp(&mono_degree(a)).then_with(|| {
                let names = |m: &Monomial| -> Vec<(String, u32)> {
                    m.iter().map(|(v, e)| (v.name(), *e)).collect()
                };
                names(a).cmp(&names(b))
            })
        });
        t
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: &Monomial) -> fmt::Result {
    for (i, (v, e)) in m.iter().enumerate() {
        if i > 0 {
            write!(f, "*")?;
        }
        if *e == 1 {
            write!(f, "{v}")?;
        } else {
            write!(f, "{v}^{e}")?;
        }
    }
    Ok(())
}

impl fmt::Display for ParamScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.display_order().into_iter().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else {
                if !mag.is_one() {
                    write!(f, "{}*", format_rational(&mag))?;
                }
                write_monomial(f, m)?;
            }
        }
        Ok(())
    }
}

/// A polynomial in `X` with [`ParamScalar`] coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ParamPolynomial {
    coeffs: Vec<ParamScalar>,
}

impl ParamPolynomial {
    pub fn new(mut coeffs: Vec<ParamScalar>) -> Self {
        while coeffs.last().is_some_and(ParamScalar::is_zero) {
            coeffs.pop();
        }
        ParamPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        ParamPolynomial::default()
    }

    pub fn constant(c: ParamScalar) -> Self {
        ParamPolynomial::new(vec![c])
    }

    pub fn x() -> Self {
        ParamPolynomial::new(vec![ParamScalar::zero(), ParamScalar::one()])
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        ParamPolynomial::new(p.coeffs().iter().cloned().map(ParamScalar::constant).collect())
    }

    pub fn monomial(c: ParamScalar, k: usize) -> Self {
        let mut coeffs = vec![ParamScalar::zero(); k + 1];
        coeffs[k] = c;
        ParamPolynomial::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ParamScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> ParamScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.coeffs.iter().flat_map(ParamScalar::vars).collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        ParamPolynomial::new((0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect())
    }

    pub fn neg(&self) -> Self {
        ParamPolynomial::new(self.coeffs.iter().map(ParamScalar::neg).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return ParamPolynomial::zero();
        }
        let mut out = vec![ParamScalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        ParamPolynomial::new(out)
    }

    pub fn scale(&self, c: &ParamScalar) -> Self {
        ParamPolynomial::new(self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = ParamPolynomial::constant(ParamScalar::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &ParamPolynomial) -> Self {
        let mut acc = ParamPolynomial::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(inner).add(&ParamPolynomial::constant(c.clone()));
        }
        acc
    }

    pub fn substitute(&self, v: Var, value: &ParamScalar) -> Self {
        ParamPolynomial::new(self.coeffs.iter().map(|c| c.substitute(v, value)).collect())
    }

    pub fn substitute_all(&self, subst: &BTreeMap<Var, ParamScalar>) -> Self {
        ParamPolynomial::new(self.coeffs.iter().map(|c| c.substitute_all(subst)).collect())
    }

    pub fn eval(&self, point: &BTreeMap<Var, Rational>) -> Option<Polynomial> {
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.eval(point))
            .collect::<Option<Vec<_>>>()?;
        Some(Polynomial::new(coeffs))
    }

    /// The polynomial itself when no parameter occurs.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.eval(&BTreeMap::new())
    }
}

/// Composes a chain given outermost first.
pub fn compose_param_chain(chain: &[ParamPolynomial]) -> ParamPolynomial {
    chain
        .iter()
        .rev()
        .fold(ParamPolynomial::x(), |acc, f| f.compose(&acc))
}

impl fmt::Display for ParamPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nonzero: Vec<(usize, &ParamScalar)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        if nonzero.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in nonzero.into_iter().enumerate() {
            let single = c.terms.len() == 1;
            let (neg, body) = if single {
                let (m, x) = c.terms.iter().next().expect("one term");
                let flipped = ParamScalar {
                    terms: [(m.clone(), x.abs())].into_iter().collect(),
                };
                (x.is_negative(), flipped.to_string())
            } else {
                (false, format!("({c})"))
            };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let xpart = match k {
                0 => String::new(),
                1 => "X".to_string(),
                k => format!("X^{k}"),
            };
            if k == 0 {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{xpart}")?;
            } else {
                write!(f, "{body}*{xpart}")?;
            }
        }
        Ok(())
    }
}

impl ExprRing for ParamPolynomial {
    fn from_rational(c: Rational) -> Self {
        ParamPolynomial::constant(ParamScalar::constant(c))
    }
    fn x() -> Self {
        ParamPolynomial::x()
    }
    fn param(name: &str) -> Option<Self> {
        Var::from_name(name).map(|v| ParamPolynomial::constant(ParamScalar::var(v)))
    }
    fn add(&self, other: &Self) -> Self {
        ParamPolynomial::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        ParamPolynomial::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        ParamPolynomial::mul(self, other)
    }
    fn neg(&self) -> Self {
        ParamPolynomial::neg(self)
    }
    fn div(&self, other: &Self) -> Option<Self> {
        if other.degree() > 0 {
            return None;
        }
        let c = other.coeff(0).as_constant()?;
        if c.is_zero() {
            return None;
        }
        Some(self.scale(&ParamScalar::constant(c.recip())))
    }
    fn pow(&self, e: u32) -> Self {
        ParamPolynomial::pow(self, e)
    }
}

/// Parses an expression in `X` and the parameter names.
pub fn parse_param_poly(text: &str) -> Result<ParamPolynomial, ParseError> {
    parse_expr(text)?.eval()
}
