//! One line per acceptance criterion. Exits non-zero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::Zero;
use polycomp::canonical::{associate, delta_count, isotropy, mu_rho_reduce, IsotropyDescriptor};
use polycomp::decomp::{all_factorizations, decompose_any, family_dimension, normal_decomposition};
use polycomp::families::{
    chebyshev, chebyshev_delta_form, cyclo_coefficient_facts, cyclo_decomposition, cyclotomic,
    ritt_construct, ritt_extract, ritt_nested_decompose, RittKind, RittSpec,
};
use polycomp::poly::profile;
use polycomp::rewrite::{
    check_joinable, connect_chains, critical_pairs, normalize_word, normalize_word_random,
    word_eval, Word,
};
use polycomp::tables::{bundled_fixtures, verify_table};
use polycomp::{Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    affine, all_words, gpair, lemma_instance, monic, monomial_chebyshev_alphabet, mu_nu,
    nonzero_rational, poly_of_degree, random_word, ritt_generators, z,
};

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn failing(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing {bad:?}")
    }
}

fn timed(limit: Option<Duration>, f: impl FnOnce() -> Verdict) -> (Verdict, Duration) {
    let start = Instant::now();
    let mut v = f();
    let elapsed = start.elapsed();
    if let Some(limit) = limit {
        if elapsed >= limit {
            v.passed = false;
            v.detail = format!("{}; over the {:.0?} budget", v.detail, limit);
        }
    }
    (v, elapsed)
}

fn reference_tables() -> Verdict {
    let mut checks = (0, 0);
    let mut failures = Vec::new();
    for d in [4, 6, 8, 9, 10, 12] {
        match verify_table(d) {
            Ok(report) => {
                let (ok, total) = report.check_count();
                checks.0 += ok;
                checks.1 += total;
                if !report.passed() {
                    failures.push(format!("degree {d}"));
                }
            }
            Err(e) => failures.push(format!("degree {d}: {e}")),
        }
    }
    verdict(
        failures.is_empty(),
        format!("{}/{} checks{}", checks.0, checks.1, failing(&failures)),
    )
}

fn dimension_law() -> Verdict {
    let fixtures = bundled_fixtures();
    let mut mismatches = Vec::new();
    let mut intersections = 0;
    for f in &fixtures {
        let dims: Vec<Option<usize>> = f
            .sequences
            .iter()
            .map(|s| family_dimension(s, f.descent).dimension)
            .collect();
        let ok = if f.sequences.len() == 1 {
            dims[0] == Some(f.params.len())
        } else {
            intersections += 1;
            dims.iter().all(|d| d.is_some_and(|d| f.params.len() <= d))
        };
        if !ok {
            mismatches.push(format!("{:?};{}", f.sequences, f.descent));
        }
    }
    let examples = family_dimension(&[2, 6], 2).dimension == Some(4)
        && family_dimension(&[2, 2], 4).dimension == Some(0);
    verdict(
        mismatches.is_empty() && examples,
        format!(
            "{} fixtures ({intersections} intersections bounded by the smallest family), {} mismatches",
            fixtures.len(),
            mismatches.len()
        ),
    )
}

fn orbit_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut bad = Vec::new();
    for i in 0..1000 {
        let d = rng.gen_range(2..=9);
        let p = poly_of_degree(&mut rng, d);
        let g = gpair(&mut rng);
        if !associate(&p, &g.act(&p)).associate {
            bad.push(format!("#{i}: orbit"));
        }
        let (reduced, _) = mu_rho_reduce(&p).unwrap();
        if d >= 3 {
            let e = rng.gen_range(1..=d - 2);
            let mut c = reduced.coeffs().to_vec();
            c[e] = z(0);
            let base = Polynomial::new(c);
            let perturbed = &base + &Polynomial::monomial(nonzero_rational(&mut rng), e);
            if associate(&g.act(&base), &perturbed).associate {
                bad.push(format!("#{i}: separation"));
            }
        }
        let n = delta_count(&p);
        let descent = profile(&reduced).descent;
        let ok = match isotropy(&p) {
            IsotropyDescriptor::CyclicOfOrder(order) => n >= 1 && n <= descent && n * order == descent,
            IsotropyDescriptor::Monomial => n == 1,
            _ => false,
        };
        if !ok {
            bad.push(format!("#{i}: delta count"));
        }
    }
    verdict(bad.is_empty(), format!("1000 polynomials{}", failing(&bad)))
}

fn decomposition_round_trip() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut bad = 0;
    for _ in 0..500 {
        let (dq, dr) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let q = poly_of_degree(&mut rng, dq);
        let r = mu_nu(&mut rng, dr);
        let a = affine(&mut rng);
        let p = a.inverse().apply_inner(&q).compose(&a.apply_outer(&r));
        match normal_decomposition(&p, dq, dr) {
            Ok(nd) if nd.outer == q && nd.inner == r => {}
            _ => bad += 1,
        }
    }
    let mut incompatible = 0;
    for i in 0..200 {
        let p = if i % 2 == 0 {
            poly_of_degree(&mut rng, 2).compose(&poly_of_degree(&mut rng, 3))
        } else {
            poly_of_degree(&mut rng, 6)
        };
        let g = gpair(&mut rng);
        for (q, r) in [(2, 3), (3, 2)] {
            if normal_decomposition(&p, q, r).is_ok() != normal_decomposition(&g.act(&p), q, r).is_ok() {
                incompatible += 1;
            }
        }
    }
    verdict(
        bad == 0 && incompatible == 0,
        format!("500 pairs, {bad} not recovered; 200 orbit checks, {incompatible} incompatible"),
    )
}

fn chebyshev_suite() -> Verdict {
    let mut bad = Vec::new();
    for m in 1..=60usize {
        for k in 1..=60 / m {
            if chebyshev(m).poly.compose(&chebyshev(k).poly) != chebyshev(m * k).poly {
                bad.push(format!("T{m}∘T{k}"));
            }
        }
    }
    for n in 4..=12usize {
        let d = chebyshev_delta_form(n);
        let ni = n as i64;
        let third = if n == 4 {
            Rational::zero()
        } else {
            Rational::new(BigInt::from(ni * (ni - 3)), BigInt::from(2))
        };
        if d.coeff(n) != z(1) || d.coeff(n - 2) != z(ni) || d.coeff(n - 4) != third {
            bad.push(format!("delta form {n}"));
        }
    }
    verdict(bad.is_empty(), format!("compositions up to 60, delta forms 4..12{}", failing(&bad)))
}

fn cyclotomic_suite() -> Verdict {
    let mut bad = Vec::new();
    for k in 2..=10usize {
        for m in 1..=100 / (k * k) {
            if cyclotomic(m * k * k).poly != cyclotomic(m * k).poly.compose(&Polynomial::x_pow(k)) {
                bad.push(format!("m={m},k={k}"));
            }
        }
    }
    for n in 2..=200 {
        if !cyclo_coefficient_facts(n).verdict {
            bad.push(format!("facts {n}"));
        }
    }
    for n in 3..=36 {
        if cyclo_decomposition(n).is_some() != decompose_any(&cyclotomic(n).poly).is_some() {
            bad.push(format!("verdict {n}"));
        }
    }
    verdict(bad.is_empty(), format!("Phi identities to 100, facts to 200, verdicts to 36{}", failing(&bad)))
}

fn ritt_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for i in 0..50 {
        let (data, n, s) = lemma_instance(&mut rng);
        let Ok(nested) = ritt_nested_decompose(&data, n, s) else {
            bad.push(format!("#{i} construct"));
            continue;
        };
        let p = nested.g.pow(n as u32).mul_x_pow(s);
        let (o, inner) = &nested.split.lambda;
        if o.compose(inner) != p {
            bad.push(format!("#{i} compose"));
        }
        match ritt_extract(&p, n, s) {
            Ok(back) if back == data => {}
            other => bad.push(format!("#{i} extract {:?}", other.map(|d| (d.j, d.k, d.h)))),
        }
    }
    let mut valid = 0;
    while valid < 50 {
        let p = [2usize, 3, 5][rng.gen_range(0..3)];
        let s = rng.gen_range(1..p);
        let deg = rng.gen_range(2..=3);
        let g = monic(&mut rng, deg);
        let kind = if rng.gen_bool(0.5) { RittKind::Lambda } else { RittKind::Rho };
        let Ok(r) = ritt_construct(&RittSpec::new(kind, p, s, g)) else {
            continue;
        };
        if r.valid {
            valid += 1;
            if decompose_any(&r.poly).is_some() {
                bad.push(format!("generator {}", r.poly));
            }
        }
    }
    verdict(bad.is_empty(), format!("50 nested instances, 50 generators{}", failing(&bad)))
}

fn rewriting_suite() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let alphabet = monomial_chebyshev_alphabet();
    let mut words = all_words(&alphabet, 4);
    let ritt = ritt_generators(&mut rng, 20);
    for r in &ritt {
        words.push(Word::new(vec![r.clone()]));
        for a in &alphabet {
            words.push(Word::new(vec![r.clone(), a.clone()]));
            let b = &alphabet[rng.gen_range(0..alphabet.len())];
            words.push(Word::new(vec![r.clone(), a.clone(), b.clone()]));
        }
    }
    let mut eval_bad = 0;
    let mut strategy_bad = 0;
    for w in &words {
        let (normal, _) = normalize_word(w);
        if word_eval(&normal) != word_eval(w) {
            eval_bad += 1;
        }
        for _ in 0..20 {
            if normalize_word_random(w, &mut rng).0 != normal {
                strategy_bad += 1;
                break;
            }
        }
    }
    let samples: Vec<Polynomial> = vec![
        Polynomial::from_ints(&[1, 1]),
        Polynomial::from_ints(&[1, 0, 1]),
        Polynomial::from_ints(&[2, 1, 1]),
    ];
    let pairs = critical_pairs(7, &samples);
    let unjoinable = pairs.iter().filter(|cp| !check_joinable(&cp.overlap).joinable).count();
    verdict(
        eval_bad == 0 && strategy_bad == 0 && unjoinable == 0,
        format!(
            "{} words: {eval_bad} value changes, {strategy_bad} strategy splits; {} critical pairs, {unjoinable} unjoinable",
            words.len(),
            pairs.len()
        ),
    )
}

fn ritt_connectivity() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let ritt = ritt_generators(&mut rng, 10);
    let mut bad = Vec::new();
    let mut connected = 0;
    let mut longest = 0;
    let mut tried = 0;
    while tried < 100 {
        let len = rng.gen_range(2..=4);
        let w = random_word(&mut rng, len, &ritt);
        if w.degree() > 200 {
            continue;
        }
        tried += 1;
        let p = word_eval(&w);
        let chains = all_factorizations(&p);
        for (i, a) in chains.iter().enumerate() {
            if a.len() != w.len() {
                bad.push(format!("{w}: length {}", a.len()));
            }
            for b in &chains[i + 1..] {
                match connect_chains(&p, &a.degree_sequence(), &b.degree_sequence()) {
                    Ok((_, moves)) => {
                        let same_length = moves.iter().all(|m| m.result.len() == a.len() && m.result.compose() == p);
                        let reached = moves.last().is_some_and(|m| m.result.degree_sequence() == b.degree_sequence());
                        if !(same_length && reached) {
                            bad.push(format!("{w}: broken chain"));
                        }
                        longest = longest.max(moves.len());
                        connected += 1;
                    }
                    Err(e) => bad.push(format!("{w}: {e}")),
                }
            }
        }
    }
    verdict(
        bad.is_empty(),
        format!("100 words, {connected} pairs connected, longest chain {longest}{}", failing(&bad)),
    )
}

fn main() -> ExitCode {
    type Criterion = (&'static str, Option<u64>, fn() -> Verdict);
    let criteria: [Criterion; 9] = [
        ("reference tables reproduce", Some(10), reference_tables),
        ("dimension law matches fixtures", None, dimension_law),
        ("orbit suite", Some(5), orbit_suite),
        ("decomposition round trip and orbit compatibility", None, decomposition_round_trip),
        ("chebyshev identities", None, chebyshev_suite),
        ("cyclotomic identities", Some(30), cyclotomic_suite),
        ("ritt constructions", None, ritt_suite),
        ("rewriting normal forms and confluence", None, rewriting_suite),
        ("factorizations connected by elementary relations", None, ritt_connectivity),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let (v, elapsed) = timed(limit.map(Duration::from_secs), run);
        let tag = if v.passed { "PASS" } else { "FAIL" };
        if !v.passed {
            failed += 1;
        }
        println!("{tag} {}. {name} [{:.2?}] {}", i + 1, elapsed, v.detail);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
