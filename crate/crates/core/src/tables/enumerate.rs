//! Enumeration of the families of decomposable δ-polynomials of a given
//! degree, including the loci with several complete factorizations.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::param::{compose_param_chain, ParamPolynomial, ParamScalar, Var};
use super::solve::{solve, Unsolved};
use crate::decomp::{all_factorizations, family_dimension, FamilyCase};
use crate::families::is_prime;
use crate::scalar::{int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableError {
    #[error("degree {0} is not composite")]
    UnsupportedDegree(usize),
    #[error("family {seq:?} with descent {descent} cannot be parametrized by its coefficients")]
    Reparametrize { seq: Vec<usize>, descent: usize },
    #[error("could not solve the intersection system: {0}")]
    Unsolved(String),
    #[error("no chain template for {seq:?} with descent {descent}")]
    MissingTemplate { seq: Vec<usize>, descent: usize },
}

impl From<Unsolved> for TableError {
    fn from(u: Unsolved) -> Self {
        let eqs: Vec<String> = u.residual.iter().map(|e| e.to_string()).collect();
        TableError::Unsolved(eqs.join("; "))
    }
}

/// A family: its generic member `lhs` in the parameters `params`, and one
/// normalized composition chain per degree sequence of its complete
/// factorizations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableEntry {
    pub degree: usize,
    pub descent: usize,
    pub sequences: Vec<Vec<usize>>,
    /// Sorted by decreasing exponent.
    pub params: Vec<Var>,
    pub lhs: ParamPolynomial,
    pub chains: Vec<Vec<ParamPolynomial>>,
}

impl TableEntry {
    pub fn e(&self) -> usize {
        if self.descent == self.degree {
            0
        } else {
            self.degree - self.descent
        }
    }

    /// Key shared with fixtures: `D^{2,3|3,2;2}`.
    pub fn key(&self) -> String {
        family_key(&self.sequences, self.descent)
    }
}

pub fn family_key(sequences: &[Vec<usize>], descent: usize) -> String {
    let seqs: Vec<String> = sequences
        .iter()
        .map(|s| s.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
        .collect();
    format!("D^{{{};{}}}", seqs.join("|"), descent)
}

impl fmt::Display for TableEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())?;
        if !self.params.is_empty() {
            let names: Vec<String> = self.params.iter().map(|v| v.name()).collect();
            write!(f, "_{{{}}}", names.join(","))?;
        }
        write!(f, ": {}", self.lhs)?;
        for chain in &self.chains {
            let parts: Vec<String> = chain.iter().map(|p| format!("[{p}]")).collect();
            write!(f, " = {}", parts.join(" o "))?;
        }
        Ok(())
    }
}

/// The table number of a degree: 1..6 for 4, 6, 8, 9, 10, 12.
pub fn table_number(degree: usize) -> Option<u32> {
    [4, 6, 8, 9, 10, 12]
        .iter()
        .position(|&d| d == degree)
        .map(|i| i as u32 + 1)
}

/// Ordered factorizations of `d` into at least two factors, each ≥ 2.
pub fn ordered_factorizations(d: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            if prefix.len() >= 2 {
                out.push(prefix.clone());
            }
            return;
        }
        for f in 2..=n {
            if n % f == 0 {
                prefix.push(f);
                go(n / f, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut out);
    out
}

/// The generic family of a sequence and descent, parametrized by
/// coefficients of its members.
#[derive(Debug, Clone)]
struct Template {
    lhs: ParamPolynomial,
    chain: Vec<ParamPolynomial>,
    params: Vec<Var>,
}

struct AuxSupply(u32);

impl AuxSupply {
    fn next(&mut self) -> ParamScalar {
        self.0 += 1;
        ParamScalar::var(Var::aux(self.0))
    }

    /// `X^q + lead·X^top + t·X^{top−1} + … + t·X` with fresh `t`s.
    fn factor(&mut self, q: usize, lead: Option<(Rational, usize)>) -> ParamPolynomial {
        let mut coeffs = vec![ParamScalar::zero(); q + 1];
        coeffs[q] = ParamScalar::one();
        let top = match lead {
            Some((c, e)) => {
                coeffs[e] = ParamScalar::constant(c);
                e
            }
            None => q,
        };
        for c in coeffs.iter_mut().take(top).skip(1) {
            *c = self.next();
        }
        ParamPolynomial::new(coeffs)
    }
}

fn monomial(q: usize) -> ParamPolynomial {
    ParamPolynomial::monomial(ParamScalar::one(), q)
}

fn build_template(seq: &[usize], descent: usize) -> Result<Option<Template>, TableError> {
    let Some(case) = family_dimension(seq, descent).case else {
        return Ok(None);
    };
    let s = seq.len();
    let mut aux = AuxSupply(0);
    let chain: Vec<ParamPolynomial> = match case {
        FamilyCase::AllMonomial => seq.iter().map(|&q| monomial(q)).collect(),
        FamilyCase::InnerDescent => seq
            .iter()
            .enumerate()
            .map(|(j, &q)| {
                if j + 1 < s {
                    aux.factor(q, None)
                } else {
                    aux.factor(q, Some((int(q as i64), q - descent)))
                }
            })
            .collect(),
        FamilyCase::MonomialTail { r, delta1 } => seq
            .iter()
            .enumerate()
            .map(|(j, &q)| match (j + 1).cmp(&r) {
                std::cmp::Ordering::Less => aux.factor(q, None),
                std::cmp::Ordering::Equal => {
                    let lead: usize = seq[j..].iter().product();
                    aux.factor(q, Some((int(lead as i64), q - delta1)))
                }
                std::cmp::Ordering::Greater => monomial(q),
            })
            .collect(),
    };
    let mut lhs = compose_param_chain(&chain);
    let mut chain = chain;
    let mut params = Vec::new();
    let d = lhs.degree();
    for k in (1..d).rev() {
        let c = lhs.coeff(k);
        let pick = c
            .vars()
            .into_iter()
            .filter(|v| v.is_aux())
            .rev()
            .find_map(|v| {
                let (a, b) = c.linear_in(v)?;
                Some((v, a.as_constant()?, b))
            });
        match pick {
            Some((v, a, b)) => {
                let param = Var::coefficient(k as u32);
                let value = ParamScalar::var(param).sub(&b).scale(&a.recip());
                lhs = lhs.substitute(v, &value);
                chain = chain.iter().map(|f| f.substitute(v, &value)).collect();
                params.push(param);
            }
            None if c.vars().iter().any(|v| v.is_aux()) => {
                return Err(TableError::Reparametrize {
                    seq: seq.to_vec(),
                    descent,
                })
            }
            None => {}
        }
    }
    if lhs.vars().iter().any(|v| v.is_aux()) {
        return Err(TableError::Reparametrize {
            seq: seq.to_vec(),
            descent,
        });
    }
    Ok(Some(Template { lhs, chain, params }))
}

const K_SAMPLES: usize = 3;

/// Degree sequences of the complete factorizations of a generic member:
/// those present at every one of a few random points.
fn generic_sequences(lhs: &ParamPolynomial, params: &[Var], rng: &mut ChaCha8Rng) -> Vec<Vec<usize>> {
    let samples = if params.is_empty() { 1 } else { K_SAMPLES };
    let mut common: Option<BTreeSet<Vec<usize>>> = None;
    for _ in 0..samples {
        let point: BTreeMap<Var, Rational> = params
            .iter()
            .map(|&v| (v, Rational::new(rng.gen_range(-50..=50).into(), rng.gen_range(1..=7).into())))
            .collect();
        let p = lhs.eval(&point).expect("all parameters bound");
        let seqs: BTreeSet<Vec<usize>> = all_factorizations(&p)
            .iter()
            .map(|c| c.degree_sequence())
            .filter(|s| s.len() >= 2)
            .collect();
        common = Some(match common {
            None => seqs,
            Some(c) => c.intersection(&seqs).cloned().collect(),
        });
    }
    common.unwrap_or_default().into_iter().collect()
}

#[derive(Debug, Clone)]
struct Family {
    lhs: ParamPolynomial,
    params: Vec<Var>,
}

type Key = (usize, Vec<Vec<usize>>);

/// Files `fam` under the sequences of its generic member, keeping the
/// larger of two families with the same key.
fn offer(
    fam: Family,
    descent: usize,
    rng: &mut ChaCha8Rng,
    families: &mut BTreeMap<Key, Family>,
    work: &mut Vec<Key>,
) {
    let k = generic_sequences(&fam.lhs, &fam.params, rng);
    if k.is_empty() {
        return;
    }
    let key = (descent, k);
    let better = families
        .get(&key)
        .map_or(true, |old| old.params.len() < fam.params.len());
    if better {
        families.insert(key.clone(), fam);
        work.push(key);
    }
}

/// Every family of decomposable δ-polynomials of degree `d`, keyed by the
/// set of degree sequences of the complete factorizations of its generic
/// member. Intersections of families appear as entries of their own.
pub fn enumerate_families(d: usize) -> Result<Vec<TableEntry>, TableError> {
    if d < 4 || is_prime(d) {
        return Err(TableError::UnsupportedDegree(d));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + d as u64);
    let mut templates: BTreeMap<(usize, Vec<usize>), Template> = BTreeMap::new();
    for seq in ordered_factorizations(d) {
        for descent in 2..=d {
            if let Some(t) = build_template(&seq, descent)? {
                templates.insert((descent, seq.clone()), t);
            }
        }
    }

    let mut families: BTreeMap<Key, Family> = BTreeMap::new();
    let mut work: Vec<Key> = Vec::new();
    for ((descent, _), t) in &templates {
        let fam = Family {
            lhs: t.lhs.clone(),
            params: t.params.clone(),
        };
        offer(fam, *descent, &mut rng, &mut families, &mut work);
    }

    while let Some(key) = work.pop() {
        let Some(fam) = families.get(&key).cloned() else {
            continue;
        };
        let (descent, ref seqs) = key;
        for ((td, tseq), t) in templates.range((descent, Vec::new())..) {
            if *td != descent {
                break;
            }
            if seqs.contains(tseq) {
                continue;
            }
            let eqs: Vec<ParamScalar> = (0..=d)
                .map(|k| fam.lhs.coeff(k).sub(&t.lhs.coeff(k)))
                .filter(|e| !e.is_zero())
                .collect();
            let own: BTreeSet<Var> = fam.params.iter().copied().collect();
            let priority = |v: Var| (u32::from(own.contains(&v)), v.0);
            for sol in solve(&eqs, priority)? {
                let lhs = fam.lhs.substitute_all(&sol);
                let mut params: Vec<Var> = fam
                    .params
                    .iter()
                    .copied()
                    .filter(|v| !sol.contains_key(v))
                    .collect();
                params.retain(|v| lhs.vars().contains(v));
                offer(Family { lhs, params }, descent, &mut rng, &mut families, &mut work);
            }
        }
    }

    let mut entries = Vec::new();
    for ((descent, sequences), fam) in families {
        let mut chains = Vec::new();
        for seq in &sequences {
            let t = templates
                .get(&(descent, seq.clone()))
                .ok_or_else(|| TableError::MissingTemplate {
                    seq: seq.clone(),
                    descent,
                })?;
            let subst: BTreeMap<Var, ParamScalar> = t
                .params
                .iter()
                .map(|&v| (v, fam.lhs.coeff(v.0 as usize)))
                .collect();
            let chain: Vec<ParamPolynomial> = t
                .chain
                .iter()
                .map(|f| f.substitute_all(&subst))
                .collect();
            assert_eq!(compose_param_chain(&chain), fam.lhs, "chain does not recompose");
            chains.push(chain);
        }
        let mut params = fam.params;
        params.sort_by(|a, b| b.cmp(a));
        entries.push(TableEntry {
            degree: d,
            descent,
            sequences,
            params,
            lhs: fam.lhs,
            chains,
        });
    }
    entries.sort_by(|a, b| {
        b.descent
            .cmp(&a.descent)
            .then(a.sequences.len().cmp(&b.sequences.len()))
            .then(a.sequences.cmp(&b.sequences))
    });
    Ok(entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tables::param::parse_param_poly;

    #[test]
    fn factorizations_of_twelve() {
        let f = ordered_factorizations(12);
        assert_eq!(f.len(), 7);
        assert!(f.contains(&vec![2, 2, 3]));
    }

    #[test]
    fn degree_four() {
        let e = enumerate_families(4).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].lhs, parse_param_poly("X^4").unwrap());
        assert_eq!(e[1].lhs, parse_param_poly("X^4 + 4*X^2").unwrap());
        assert_eq!(e[1].chains[0][0], parse_param_poly("X^2 + 4*X").unwrap());
    }

    #[test]
    fn unsupported() {
        assert_eq!(enumerate_families(7), Err(TableError::UnsupportedDegree(7)));
        assert_eq!(enumerate_families(2), Err(TableError::UnsupportedDegree(2)));
    }
}
