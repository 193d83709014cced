//! Rational solutions of small polynomial systems in the parameters.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::param::{ParamScalar, Var};
use crate::poly::Polynomial;
use crate::scalar::Rational;

/// A solved form: each key is expressed through parameters that are not
/// keys.
pub type Substitution = BTreeMap<Var, ParamScalar>;

/// Why a system could not be brought to solved form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Unsolved {
    pub residual: Vec<ParamScalar>,
}

/// Solves `eqs = 0` over ℚ. Every component is returned as a substitution
/// of some variables in terms of the rest. Variables with a smaller
/// `priority` are eliminated first.
///
/// Variables occurring linearly with a constant coefficient are eliminated
/// first. Otherwise the system branches, either on a variable dividing an
/// equation or on the rational roots of a univariate equation. Irrational
/// components are dropped.
pub fn solve<F>(eqs: &[ParamScalar], priority: F) -> Result<Vec<Substitution>, Unsolved>
where
    F: Fn(Var) -> (u32, u32) + Copy,
{
    let mut out = Vec::new();
    solve_into(eqs.to_vec(), Substitution::new(), priority, &mut out)?;
    let mut unique: Vec<Substitution> = Vec::new();
    for s in out {
        if !unique.contains(&s) {
            unique.push(s);
        }
    }
    Ok(unique)
}

fn bind(subst: &Substitution, v: Var, value: ParamScalar) -> Substitution {
    let mut next: Substitution = subst
        .iter()
        .map(|(k, e)| (*k, e.substitute(v, &value)))
        .collect();
    next.insert(v, value);
    next
}

fn solve_into<F>(
    eqs: Vec<ParamScalar>,
    subst: Substitution,
    priority: F,
    out: &mut Vec<Substitution>,
) -> Result<(), Unsolved>
where
    F: Fn(Var) -> (u32, u32) + Copy,
{
    let eqs: Vec<ParamScalar> = eqs
        .into_iter()
        .map(|e| e.substitute_all(&subst))
        .filter(|e| !e.is_zero())
        .collect();
    if eqs.iter().any(ParamScalar::is_constant) {
        return Ok(());
    }
    if eqs.is_empty() {
        out.push(subst);
        return Ok(());
    }

    let linear = eqs
        .iter()
        .flat_map(|e| {
            e.vars().into_iter().filter_map(move |v| {
                let (a, b) = e.linear_in(v)?;
                let a = a.as_constant()?;
                Some((priority(v), v, a, b))
            })
        })
        .min_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    if let Some((_, v, a, b)) = linear {
        let value = b.scale(&(-a.recip()));
        let next = bind(&subst, v, value);
        return solve_into(eqs, next, priority, out);
    }

    for (i, e) in eqs.iter().enumerate() {
        for v in e.vars() {
            let k = e.var_multiplicity(v);
            if k == 0 {
                continue;
            }
            let mut with_zero = eqs.clone();
            with_zero[i] = ParamScalar::var(v);
            solve_into(with_zero, subst.clone(), priority, out)?;
            let mut reduced = eqs.clone();
            reduced[i] = e.div_var_pow(v, k);
            return solve_into(reduced, subst, priority, out);
        }
    }

    for e in &eqs {
        let vars = e.vars();
        if vars.len() != 1 {
            continue;
        }
        let v = *vars.iter().next().expect("one var");
        let poly = e.univariate(v).expect("univariate");
        for root in rational_roots(&poly) {
            let next = bind(&subst, v, ParamScalar::constant(root));
            solve_into(eqs.clone(), next, priority, out)?;
        }
        return Ok(());
    }

    Err(Unsolved { residual: eqs })
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let other = &n / &d;
            if other != d {
                out.push(other);
            }
        }
        d += 1;
    }
    out
}

/// All rational roots, by the rational root test.
pub fn rational_roots(p: &Polynomial) -> Vec<Rational> {
    if p.is_zero() || p.degree() == 0 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    let k = p.ord0();
    if k > 0 {
        roots.push(Rational::zero());
    }
    let q = p.div_x_pow(k).expect("ord0");
    if q.degree() == 0 {
        return roots;
    }
    let lcm = q
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = q
        .coeffs()
        .iter()
        .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let (a0, an) = (&ints[0], &ints[ints.len() - 1]);
    for num in divisors(a0) {
        for den in divisors(an) {
            for sign in [1, -1] {
                let r = Rational::new(num.clone() * sign, den.clone());
                if q.eval(&r).is_zero() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
        }
    }
    roots.sort();
    roots
}
