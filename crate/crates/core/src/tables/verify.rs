//! Cross-checks of fixtures against the enumeration and against plain
//! polynomial arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::enumerate::{enumerate_families, family_key, TableEntry, TableError};
use super::fixtures::Fixture;
use super::param::{compose_param_chain, ParamPolynomial, Var};
use crate::decomp::family_dimension;
use crate::poly::compose_chain;
use crate::scalar::Rational;

/// Random parameter tuples tried per fixture.
pub const NUMERIC_SAMPLES: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Check {
            name,
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntryReport {
    pub key: String,
    pub params: Vec<String>,
    pub checks: Vec<Check>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableReport {
    pub degree: usize,
    pub entries: Vec<EntryReport>,
    /// Enumerated families with no fixture.
    pub unmatched: Vec<String>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.unmatched.is_empty() && self.entries.iter().all(EntryReport::passed)
    }

    pub fn check_count(&self) -> (usize, usize) {
        let all = self.entries.iter().flat_map(|e| &e.checks);
        let total = all.clone().count();
        (all.filter(|c| c.passed).count(), total)
    }
}

impl fmt::Display for TableReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ok, total) = self.check_count();
        writeln!(
            f,
            "degree {}: {} families, {ok}/{total} checks passed",
            self.degree,
            self.entries.len()
        )?;
        for e in &self.entries {
            let status = if e.passed() { "ok  " } else { "FAIL" };
            write!(f, "  {status} {}", e.key)?;
            if !e.params.is_empty() {
                write!(f, "_{{{}}}", e.params.join(","))?;
            }
            writeln!(f)?;
            for c in e.checks.iter().filter(|c| !c.passed) {
                writeln!(f, "         {}: {}", c.name, c.detail)?;
            }
        }
        for u in &self.unmatched {
            writeln!(f, "  FAIL {u}: enumerated but absent from the fixtures")?;
        }
        Ok(())
    }
}

fn random_point(params: &[Var], rng: &mut ChaCha8Rng) -> BTreeMap<Var, Rational> {
    params
        .iter()
        .map(|&v| {
            let num: i64 = rng.gen_range(-40..=40);
            let den: i64 = rng.gen_range(1..=9);
            (v, Rational::new(num.into(), den.into()))
        })
        .collect()
}

fn is_delta_shaped(f: &Fixture) -> bool {
    let d = f.degree;
    let top = f.lhs.coeff(d).as_constant() == Some(Rational::from_integer(1.into()));
    let zero_constant = f.lhs.coeff(0).is_zero();
    if f.descent == d {
        return top && (1..d).all(|k| f.lhs.coeff(k).is_zero()) && zero_constant;
    }
    let e = d - f.descent;
    let lead = f.lhs.coeff(e).as_constant() == Some(Rational::from_integer(d.into()));
    top && lead && zero_constant && (e + 1..d).all(|k| f.lhs.coeff(k).is_zero())
}

fn chains_equal(a: &[Vec<ParamPolynomial>], b: &[Vec<ParamPolynomial>]) -> bool {
    a == b
}

fn check_fixture(f: &Fixture, entries: &[TableEntry], rng: &mut ChaCha8Rng) -> (EntryReport, Option<usize>) {
    let mut checks = Vec::new();

    checks.push(Check::new(
        "delta-shape",
        is_delta_shaped(f),
        "lhs is not X^d + d·X^e + lower terms without constant",
    ));

    let bad_vars: Vec<String> = f
        .lhs
        .vars()
        .into_iter()
        .filter(|v| !f.params.contains(v))
        .map(|v| v.name())
        .collect();
    checks.push(Check::new(
        "parameters",
        bad_vars.is_empty(),
        format!("undeclared parameters {bad_vars:?}"),
    ));

    let mut failures = Vec::new();
    for (seq, chain) in f.sequences.iter().zip(&f.chains) {
        let degs: Vec<usize> = chain.iter().map(ParamPolynomial::degree).collect();
        if &degs != seq {
            failures.push(format!("chain degrees {degs:?} differ from {seq:?}"));
        } else if compose_param_chain(chain) != f.lhs {
            failures.push(format!("chain {seq:?} composes to {}", compose_param_chain(chain)));
        }
    }
    checks.push(Check::new("symbolic", failures.is_empty(), failures.join("; ")));

    let mut numeric_fail = Vec::new();
    let samples = if f.params.is_empty() { 1 } else { NUMERIC_SAMPLES };
    for _ in 0..samples {
        let point = random_point(&f.params, rng);
        let Some(lhs) = f.lhs.eval(&point) else {
            numeric_fail.push("lhs has unbound parameters".to_string());
            break;
        };
        for (seq, chain) in f.sequences.iter().zip(&f.chains) {
            let factors: Option<Vec<_>> = chain.iter().map(|c| c.eval(&point)).collect();
            match factors {
                Some(fs) if compose_chain(fs.iter()) == lhs => {}
                _ => numeric_fail.push(format!("chain {seq:?} at {point:?}")),
            }
        }
    }
    checks.push(Check::new(
        "numeric",
        numeric_fail.is_empty(),
        numeric_fail.join("; "),
    ));

    let dims: Vec<Option<usize>> = f
        .sequences
        .iter()
        .map(|s| family_dimension(s, f.descent).dimension)
        .collect();
    let count = f.params.len();
    let dim_ok = match dims.as_slice() {
        [Some(d)] => *d == count,
        many if many.iter().all(Option::is_some) => {
            count <= many.iter().flatten().copied().min().unwrap_or(0)
        }
        _ => false,
    };
    checks.push(Check::new(
        "dimension",
        dim_ok,
        format!("{count} parameters, family dimensions {dims:?}"),
    ));

    let found = entries
        .iter()
        .position(|e| e.descent == f.descent && e.sequences == f.sequences);
    let (enum_ok, detail) = match found {
        None => (false, "no enumerated family with this key".to_string()),
        Some(i) => {
            let e = &entries[i];
            let mut fp = f.params.clone();
            fp.sort_by(|a, b| b.cmp(a));
            if e.params != fp {
                let names: Vec<String> = e.params.iter().map(|v| v.name()).collect();
                (false, format!("enumerated parameters {names:?}"))
            } else if e.lhs != f.lhs {
                (false, format!("enumerated lhs {}", e.lhs))
            } else if !chains_equal(&e.chains, &f.chains) {
                let shown: Vec<String> = e
                    .chains
                    .iter()
                    .map(|c| c.iter().map(|p| format!("[{p}]")).collect::<Vec<_>>().join(" o "))
                    .collect();
                (false, format!("enumerated chains {}", shown.join(" | ")))
            } else {
                (true, String::new())
            }
        }
    };
    checks.push(Check::new("enumerated", enum_ok, detail));

    let report = EntryReport {
        key: family_key(&f.sequences, f.descent),
        params: f.params.iter().map(|v| v.name()).collect(),
        checks,
    };
    (report, found)
}

/// Checks every fixture of degree `d` and reports enumerated families the
/// fixtures miss.
pub fn verify_against(d: usize, fixtures: &[Fixture]) -> Result<TableReport, TableError> {
    let entries = enumerate_families(d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0ffee + d as u64);
    let mut used = vec![false; entries.len()];
    let mut reports = Vec::new();
    for f in fixtures.iter().filter(|f| f.degree == d) {
        let (report, found) = check_fixture(f, &entries, &mut rng);
        if let Some(i) = found {
            used[i] = true;
        }
        reports.push(report);
    }
    let unmatched = entries
        .iter()
        .zip(&used)
        .filter(|(_, u)| !**u)
        .map(|(e, _)| e.to_string())
        .collect();
    Ok(TableReport {
        degree: d,
        entries: reports,
        unmatched,
    })
}

/// [`verify_against`] the bundled fixtures.
pub fn verify_table(d: usize) -> Result<TableReport, TableError> {
    verify_against(d, &super::fixtures::bundled_fixtures())
}
