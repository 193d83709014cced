use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polycomp::canonical::{associate, delta_count, delta_normalize, isotropy};
use polycomp::decomp::{
    all_factorizations, complete_factorization, decompose_any, family_dimension,
    normal_decomposition, FamilyCase,
};
use polycomp::families::{
    chebyshev, chebyshev_delta_form, cyclo_coefficient_facts, cyclo_decomposition, cyclotomic,
    ritt_construct, RittKind, RittSpec,
};
use polycomp::rewrite::{
    check_joinable, connect_factorizations, critical_pairs, normalize_word, word_eval,
    RewriteError,
};
use polycomp::syntax::{format_word, parse_poly, parse_word};
use polycomp::tables::{bundled_fixtures, family_key, load_fixtures, table_number, verify_against};
use polycomp::Polynomial;

use crate::output::{self, chain, gpair, poly, rat, Outcome, NEGATIVE, USAGE};

const TABLE_DEGREES: [usize; 6] = [4, 6, 8, 9, 10, 12];

#[derive(Debug, Parser)]
#[command(name = "polycomp", version, about = "Exact polynomial composition toolkit")]
pub struct Cli {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Kind {
    Lambda,
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// δ-normal form, orbit count and isotropy of a polynomial.
    Normalize { poly: String },
    /// Decide whether two polynomials lie in the same orbit.
    Associate { p: String, q: String },
    /// Split a polynomial into two factors.
    Decompose {
        poly: String,
        /// Outer and inner degrees, e.g. `2,3`.
        #[arg(long, value_parser = parse_pair)]
        split: Option<(usize, usize)>,
    },
    /// Complete factorization into indecomposables.
    Factor {
        poly: String,
        /// One chain for every attainable degree sequence.
        #[arg(long)]
        all_sequences: bool,
    },
    /// Dimension of a family of decomposable δ-polynomials.
    Dim {
        /// Comma-separated degrees, outermost first.
        degrees: String,
        descent: usize,
    },
    /// Chebyshev polynomial T_n.
    Cheb { n: usize },
    /// Cyclotomic polynomial Φ_n.
    Cyclo {
        n: usize,
        #[arg(long)]
        decompose: bool,
        #[arg(long)]
        facts: bool,
    },
    /// Build a Ritt polynomial X^s·G^p or X^s·G(X^p).
    Ritt {
        #[arg(value_enum)]
        kind: Kind,
        p: usize,
        s: usize,
        g: String,
    },
    /// Normalize a composition word.
    Rewrite {
        word: String,
        #[arg(long)]
        trace: bool,
    },
    /// Check that every critical pair is joinable.
    Confluence {
        #[arg(long, default_value_t = 7)]
        max_prime: usize,
        /// File with one polynomial G per line for the Ritt generators.
        #[arg(long)]
        samples: Option<PathBuf>,
    },
    /// Connect two words for the same polynomial by elementary relations.
    Connect { w1: String, w2: String },
    /// List or verify the tables of decomposable δ-polynomials.
    Tables {
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long)]
        fixtures: Option<PathBuf>,
    },
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|e| format!("'{t}': {e}")))
        .collect()
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    match parse_list(s)?.as_slice() {
        [q, r] => Ok((*q, *r)),
        _ => Err("expected two degrees 'q,r'".into()),
    }
}

/// Runs a subcommand. `json` only affects commands whose text output
/// depends on it.
pub fn run(command: Command, json: bool) -> Outcome {
    match command {
        Command::Normalize { poly } => normalize(&poly),
        Command::Associate { p, q } => associate_cmd(&p, &q),
        Command::Decompose { poly, split } => decompose(&poly, split),
        Command::Factor {
            poly,
            all_sequences,
        } => factor(&poly, all_sequences),
        Command::Dim { degrees, descent } => dim(&degrees, descent),
        Command::Cheb { n } => cheb(n),
        Command::Cyclo {
            n,
            decompose,
            facts,
        } => cyclo(n, decompose, facts),
        Command::Ritt { kind, p, s, g } => ritt(kind, p, s, &g),
        Command::Rewrite { word, trace } => rewrite(&word, trace),
        Command::Confluence { max_prime, samples } => confluence(max_prime, samples),
        Command::Connect { w1, w2 } => connect(&w1, &w2),
        Command::Tables {
            degree,
            verify,
            format,
            fixtures,
        } => tables(degree, verify, json || format == Format::Json, fixtures),
    }
}

macro_rules! poly_arg {
    ($out:ident, $text:expr) => {
        match parse_poly($text) {
            Ok(p) => p,
            Err(e) => return $out.fail(USAGE, format!("'{}': {e}", $text)),
        }
    };
}

fn normalize(text: &str) -> Outcome {
    let mut out = Outcome::new("normalize", json!({ "poly": text }));
    let p = poly_arg!(out, text);
    let form = delta_normalize(&p);
    let count = delta_count(&p);
    let iso = isotropy(&p);
    out.result = match form.as_rational() {
        Some(r) => json!({ "delta_form": poly(&r), "modulus": Value::Null }),
        None => {
            let mut terms = serde_json::Map::new();
            for (k, c) in form.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    terms.insert(
                        k.to_string(),
                        json!({ "coeff": rat(c.coeff()), "power": c.power() }),
                    );
                }
            }
            json!({
                "delta_form": terms,
                "modulus": { "degree": form.modulus().degree(), "constant": rat(form.modulus().constant()) },
            })
        }
    };
    if let Value::Object(m) = &mut out.result {
        m.insert("delta_count".into(), json!(count));
        m.insert("isotropy".into(), json!(iso.to_string()));
    }
    out.witness = gpair(form.witness());
    out.line(format!("delta form: {form}"));
    out.line(format!("delta count: {count}"));
    out.line(format!("isotropy: {iso}"));
    out.line(format!("witness: {}", form.witness()));
    out
}

fn associate_cmd(pt: &str, qt: &str) -> Outcome {
    let mut out = Outcome::new("associate", json!({ "p": pt, "q": qt }));
    let p = poly_arg!(out, pt);
    let q = poly_arg!(out, qt);
    let a = associate(&p, &q);
    out.result = json!(a.associate);
    if let Some(w) = &a.witness {
        out.witness = json!({ "g": w.g, "z": rat(&w.z) });
        out.line(format!("associate: yes (any {}-th root of {})", w.g, w.z));
    } else {
        out.line("associate: no");
        out.code = NEGATIVE;
    }
    out
}

fn decompose(text: &str, split: Option<(usize, usize)>) -> Outcome {
    let mut out = Outcome::new("decompose", json!({ "poly": text, "split": split }));
    let p = poly_arg!(out, text);
    let found = match split {
        Some((q, r)) => match normal_decomposition(&p, q, r) {
            Ok(nd) => Some(nd),
            Err(e) => {
                out.line(format!("not decomposable as {q},{r}: {e}"));
                None
            }
        },
        None => decompose_any(&p),
    };
    match found {
        Some(nd) => {
            out.result = json!({ "outer": poly(&nd.outer), "inner": poly(&nd.inner) });
            out.witness = json!({ "q": nd.q, "r": nd.r });
            out.line(format!("outer: {}", nd.outer));
            out.line(format!("inner: {}", nd.inner));
        }
        None => {
            if split.is_none() {
                out.line("indecomposable");
            }
            out.result = Value::Null;
            out.code = NEGATIVE;
        }
    }
    out
}

fn factor(text: &str, all: bool) -> Outcome {
    let mut out = Outcome::new("factor", json!({ "poly": text, "all_sequences": all }));
    let p = poly_arg!(out, text);
    if all {
        let chains = all_factorizations(&p);
        out.result = Value::Array(chains.iter().map(chain).collect());
        for c in &chains {
            out.line(format!("{:?}: {c}", c.degree_sequence()));
        }
    } else {
        let c = complete_factorization(&p);
        out.result = chain(&c);
        out.line(c.to_string());
    }
    out
}

fn dim(text: &str, descent: usize) -> Outcome {
    let mut out = Outcome::new("dim", json!({ "degrees": text, "descent": descent }));
    let degrees = match parse_list(text) {
        Ok(d) => d,
        Err(e) => return out.fail(USAGE, e),
    };
    if degrees.iter().any(|&q| q < 2) || descent == 0 {
        return out.fail(USAGE, "degrees must be at least 2 and the descent positive");
    }
    let fd = family_dimension(&degrees, descent);
    let case = fd.case.map(|c| match c {
        FamilyCase::InnerDescent => json!({ "case": "inner-descent" }),
        FamilyCase::MonomialTail { r, delta1 } => {
            json!({ "case": "monomial-tail", "r": r, "delta1": delta1 })
        }
        FamilyCase::AllMonomial => json!({ "case": "all-monomial" }),
    });
    out.result = json!(fd.dimension);
    out.witness = case.unwrap_or(Value::Null);
    match fd.dimension {
        Some(d) => out.line(format!("{}: dimension {d}", family_key(&[degrees], descent))),
        None => {
            out.line(format!("{}: empty family", family_key(&[degrees], descent)));
            out.code = NEGATIVE;
        }
    }
    out
}

fn cheb(n: usize) -> Outcome {
    let mut out = Outcome::new("cheb", json!({ "n": n }));
    if n == 0 {
        return out.fail(USAGE, "n must be positive");
    }
    let rec = chebyshev(n);
    let delta = chebyshev_delta_form(n);
    out.result = json!({
        "poly": poly(&rec.poly),
        "delta_form": poly(&delta),
        "odd_split": rec.odd_split.as_ref().map(poly),
    });
    out.line(format!("T_{n} = {}", rec.poly));
    out.line(format!("delta form: {delta}"));
    if let Some(u) = &rec.odd_split {
        out.line(format!("T_{n} = X*U(X^2), U = {u}"));
    }
    out
}

fn cyclo(n: usize, decompose: bool, facts: bool) -> Outcome {
    let mut out = Outcome::new(
        "cyclo",
        json!({ "n": n, "decompose": decompose, "facts": facts }),
    );
    if n == 0 {
        return out.fail(USAGE, "n must be positive");
    }
    let rec = cyclotomic(n);
    let mut result = json!({
        "poly": poly(&rec.poly),
        "euler_phi": rec.euler_phi,
        "squarefree_kernel": rec.squarefree_kernel,
    });
    out.line(format!("Phi_{n} = {}", rec.poly));
    out.line(format!("phi({n}) = {}, squarefree kernel {}", rec.euler_phi, rec.squarefree_kernel));
    if decompose {
        match cyclo_decomposition(n) {
            Some((outer, inner)) => {
                out.line(format!("Phi_{n} = ({outer}) o ({inner})"));
                out.witness = json!({ "outer": poly(&outer), "inner": poly(&inner) });
            }
            None => {
                out.line("no cyclotomic decomposition");
                out.code = NEGATIVE;
            }
        }
    }
    if facts {
        if n < 2 {
            return out.fail(USAGE, "coefficient facts need n >= 2");
        }
        let f = cyclo_coefficient_facts(n);
        result["facts"] = json!({
            "c0": rat(&f.c0),
            "c1": rat(&f.c1),
            "c_top": rat(&f.c_top),
            "expected": rat(&f.expected),
            "verdict": f.verdict,
        });
        out.line(format!(
            "c0 = {}, c1 = {}, c_top = {}, expected {}: {}",
            f.c0,
            f.c1,
            f.c_top,
            f.expected,
            if f.verdict { "holds" } else { "fails" }
        ));
        if !f.verdict {
            out.code = NEGATIVE;
        }
    }
    out.result = result;
    out
}

fn ritt(kind: Kind, p: usize, s: usize, gt: &str) -> Outcome {
    let mut out = Outcome::new(
        "ritt",
        json!({ "kind": format!("{kind:?}").to_lowercase(), "p": p, "s": s, "g": gt }),
    );
    let g = poly_arg!(out, gt);
    let kind = match kind {
        Kind::Lambda => RittKind::Lambda,
        Kind::Rho => RittKind::Rho,
    };
    match ritt_construct(&RittSpec::new(kind, p, s, g)) {
        Ok(r) => {
            out.result = json!({ "poly": poly(&r.poly), "indecomposable": r.valid });
            out.line(format!("{kind}: {}", r.poly));
            out.line(format!("indecomposable: {}", r.valid));
            if !r.valid {
                out.code = NEGATIVE;
            }
            out
        }
        Err(e) => out.fail(USAGE, e.to_string()),
    }
}

macro_rules! word_arg {
    ($out:ident, $text:expr) => {
        match parse_word($text) {
            Ok(w) => w,
            Err(e) => return $out.fail(USAGE, format!("'{}': {e}", $text)),
        }
    };
}

fn rewrite(text: &str, trace: bool) -> Outcome {
    let mut out = Outcome::new("rewrite", json!({ "word": text }));
    let w = word_arg!(out, text);
    let (normal, steps) = normalize_word(&w);
    out.result = json!(format_word(&normal));
    out.witness = poly(&word_eval(&normal));
    if trace {
        out.trace = steps
            .iter()
            .map(|s| {
                json!({ "rule": s.rule.to_string(), "position": s.position, "word": format_word(&s.result) })
            })
            .collect();
        for s in &steps {
            out.line(format!("  ({}) at {}: {}", s.rule, s.position, format_word(&s.result)));
        }
    }
    out.line(format_word(&normal));
    out
}

fn confluence(max_prime: usize, samples: Option<PathBuf>) -> Outcome {
    let mut out = Outcome::new(
        "confluence",
        json!({ "max_prime": max_prime, "samples": samples.as_ref().map(|p| p.display().to_string()) }),
    );
    let gs = match &samples {
        None => vec![
            Polynomial::from_ints(&[1, 1]),
            Polynomial::from_ints(&[2, 0, 1]),
            Polynomial::from_ints(&[1, 1, 1]),
        ],
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => return out.fail(USAGE, format!("{}: {e}", path.display())),
            };
            let mut gs = Vec::new();
            for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
                gs.push(poly_arg!(out, line));
            }
            gs
        }
    };
    let pairs = critical_pairs(max_prime, &gs);
    let mut failures = Vec::new();
    for cp in &pairs {
        let j = check_joinable(&cp.overlap);
        out.trace.push(json!({
            "overlap": format_word(&cp.overlap),
            "joinable": j.joinable,
            "normal": format_word(&j.left_normal),
        }));
        if !j.joinable {
            failures.push(format_word(&cp.overlap));
        }
    }
    out.result = json!({ "pairs": pairs.len(), "joinable": pairs.len() - failures.len() });
    out.witness = json!(failures);
    out.line(format!(
        "{} critical pairs, {} joinable",
        pairs.len(),
        pairs.len() - failures.len()
    ));
    for f in &failures {
        out.line(format!("  not joinable: {f}"));
    }
    if !failures.is_empty() {
        out.code = NEGATIVE;
    }
    out
}

fn connect(t1: &str, t2: &str) -> Outcome {
    let mut out = Outcome::new("connect", json!({ "w1": t1, "w2": t2 }));
    let w1 = word_arg!(out, t1);
    let w2 = word_arg!(out, t2);
    match connect_factorizations(&w1, &w2) {
        Ok(links) => {
            out.result = json!(links.len().saturating_sub(1));
            out.trace = links
                .iter()
                .map(|l| json!({ "word": format_word(&l.word), "rule": l.rule.map(|r| r.to_string()) }))
                .collect();
            for l in &links {
                match l.rule {
                    None => out.line(format_word(&l.word)),
                    Some(r) => out.line(format!("  ({r}) {}", format_word(&l.word))),
                }
            }
            out
        }
        Err(e @ (RewriteError::NotSamePolynomial | RewriteError::NotConnectable { .. })) => {
            out.line(e.to_string());
            out.code = NEGATIVE;
            out
        }
        Err(e) => out.fail(USAGE, e.to_string()),
    }
}

fn tables(degree: Option<usize>, verify: bool, json_out: bool, path: Option<PathBuf>) -> Outcome {
    let mut out = Outcome::new(
        "tables",
        json!({
            "degree": degree,
            "verify": verify,
            "fixtures": path.as_ref().map(|p| p.display().to_string()),
        }),
    );
    let fixtures = match &path {
        None => bundled_fixtures(),
        Some(p) => match load_fixtures(p) {
            Ok(f) => f,
            Err(e) => return out.fail(USAGE, e.to_string()),
        },
    };
    let degrees: Vec<usize> = match degree {
        Some(d) if TABLE_DEGREES.contains(&d) => vec![d],
        Some(d) => return out.fail(USAGE, format!("no table for degree {d}")),
        None => TABLE_DEGREES.to_vec(),
    };
    let mut result = Vec::new();
    for d in degrees {
        if verify {
            let report = match verify_against(d, &fixtures) {
                Ok(r) => r,
                Err(e) => return out.fail(USAGE, e.to_string()),
            };
            let (ok, total) = report.check_count();
            result.push(json!({
                "degree": d,
                "table": table_number(d),
                "passed": report.passed(),
                "checks_passed": ok,
                "checks": total,
                "unmatched": report.unmatched,
                "entries": report.entries.iter().map(|e| json!({
                    "key": e.key,
                    "params": e.params,
                    "passed": e.passed(),
                    "failures": e.checks.iter().filter(|c| !c.passed)
                        .map(|c| json!({ "check": c.name, "detail": c.detail }))
                        .collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            }));
            out.text.push_str(&report.to_string());
            if !report.passed() {
                out.code = NEGATIVE;
            }
        } else {
            let rows: Vec<_> = fixtures.iter().filter(|f| f.degree == d).collect();
            out.line(format!("degree {d} ({} families)", rows.len()));
            let mut entries = Vec::new();
            for f in rows {
                let key = family_key(&f.sequences, f.descent);
                let names: Vec<String> = f.params.iter().map(|v| v.name()).collect();
                let suffix = if names.is_empty() {
                    String::new()
                } else {
                    format!("_{{{}}}", names.join(","))
                };
                out.line(format!("  {key}{suffix}: {}", f.lhs));
                entries.push(json!({
                    "key": key,
                    "e": f.e,
                    "descent": f.descent,
                    "sequences": f.sequences,
                    "params": names,
                    "lhs": output::param_poly(&f.lhs),
                    "chains": f.chains.iter()
                        .map(|c| c.iter().map(output::param_poly).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }));
            }
            result.push(json!({ "degree": d, "table": table_number(d), "entries": entries }));
        }
    }
    out.result = Value::Array(result);
    if json_out {
        out.text = format!(
            "{}\n",
            serde_json::to_string_pretty(&out.to_json()).expect("json values serialize")
        );
    }
    out
}
