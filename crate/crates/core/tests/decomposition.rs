mod common;

use common::{gpair, monic, mu_nu, poly_of_degree, z};
use polycomp::canonical::mu_rho_reduce;
use polycomp::decomp::{
    all_factorizations, complete_factorization, decompose_any, is_indecomposable,
    normal_decomposition, split_sizes,
};
use polycomp::poly::profile;
use polycomp::rewrite::word_eval;
use polycomp::Polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Every complete factorization reachable by splitting in every possible
/// order, as degree sequences.
fn split_tree(p: &Polynomial) -> Vec<Vec<usize>> {
    let n = p.degree();
    let mut out = Vec::new();
    for r in split_sizes(n) {
        if let Ok(nd) = normal_decomposition(p, n / r, r) {
            for a in split_tree(&nd.outer) {
                for b in split_tree(&nd.inner) {
                    out.push([a.clone(), b].concat());
                }
            }
        }
    }
    if out.is_empty() {
        out.push(vec![n]);
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn normal_decomposition_recovers_factors() {
    let mut rng = rng(1);
    for _ in 0..200 {
        let (dq, dr) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let q = poly_of_degree(&mut rng, dq);
        let r = mu_nu(&mut rng, dr);
        let nd = normal_decomposition(&q.compose(&r), dq, dr).expect("decomposable");
        assert_eq!((nd.outer, nd.inner), (q, r));
    }
}

#[test]
fn normalization_absorbs_inner_affine_maps() {
    let mut rng = rng(2);
    for _ in 0..100 {
        let q = monic(&mut rng, 3);
        let r = mu_nu(&mut rng, 2);
        let a = common::affine(&mut rng);
        // Q∘R = (Q∘A⁻¹)∘(A∘R); the normal pair must not depend on A.
        let p = a.inverse().apply_inner(&q).compose(&a.apply_outer(&r));
        let nd = normal_decomposition(&p, 3, 2).unwrap();
        assert_eq!(nd.inner, r);
        assert_eq!(nd.outer.compose(&nd.inner), p);
    }
}

#[test]
fn decomposability_is_orbit_invariant() {
    let mut rng = rng(3);
    for i in 0..200 {
        let p = if i % 2 == 0 {
            poly_of_degree(&mut rng, 3).compose(&mu_nu(&mut rng, 2))
        } else {
            poly_of_degree(&mut rng, 6)
        };
        let g = gpair(&mut rng);
        for (q, r) in [(2, 3), (3, 2)] {
            assert_eq!(
                normal_decomposition(&p, q, r).is_ok(),
                normal_decomposition(&g.act(&p), q, r).is_ok()
            );
        }
    }
}

#[test]
fn descent_passes_to_the_inner_factor() {
    let mut rng = rng(4);
    let mut checked = 0;
    while checked < 100 {
        let (dq, dr) = (rng.gen_range(2..=4), rng.gen_range(2..=4));
        let p = poly_of_degree(&mut rng, dq).compose(&poly_of_degree(&mut rng, dr));
        let (reduced, _) = mu_rho_reduce(&p).unwrap();
        let nd = normal_decomposition(&reduced, dq, dr).unwrap();
        if nd.inner.is_monomial() {
            continue;
        }
        assert_eq!(profile(&reduced).descent, profile(&nd.inner).descent);
        checked += 1;
    }
}

#[test]
fn monomial_inner_multiplies_descent() {
    let mut rng = rng(5);
    for _ in 0..100 {
        let dq = rng.gen_range(2..=5);
        let mut c = mu_nu(&mut rng, dq).into_coeffs();
        c[dq - 1] = z(0);
        let q = Polynomial::new(c);
        let r = rng.gen_range(2..=4);
        let p = q.compose(&Polynomial::x_pow(r));
        assert_eq!(profile(&p).descent, r * profile(&q).descent);
    }
}

#[test]
fn complete_factorizations_have_equal_length() {
    let mut rng = rng(6);
    let ritt = common::ritt_generators(&mut rng, 6);
    let mut tested = 0;
    while tested < 60 {
        let len = rng.gen_range(2..=3);
        let w = common::random_word(&mut rng, len, &ritt);
        if w.degree() > 24 {
            continue;
        }
        let p = gpair(&mut rng).act(&word_eval(&w));
        let tree = split_tree(&p);
        let lengths: Vec<usize> = tree.iter().map(Vec::len).collect();
        assert!(lengths.iter().all(|&l| l == w.len()), "{w}: {tree:?}");
        let found: Vec<Vec<usize>> = all_factorizations(&p).iter().map(|c| c.degree_sequence()).collect();
        assert_eq!(found, tree);
        let c = complete_factorization(&p);
        assert_eq!(c.compose(), p);
        assert!(c.factors().iter().all(is_indecomposable));
        tested += 1;
    }
}

#[test]
fn rational_inputs_give_rational_factors() {
    // Factors come back as `Polynomial`, i.e. over ℚ, whenever they exist.
    let p = Polynomial::from_ints(&[0, 0, 9, 0, 6, 0, 1]);
    let nd = decompose_any(&p).unwrap();
    assert_eq!(nd.outer.compose(&nd.inner), p);
}

#[test]
fn prime_degree_is_indecomposable() {
    let mut rng = rng(7);
    for d in [2, 3, 5, 7, 11] {
        assert!(decompose_any(&poly_of_degree(&mut rng, d)).is_none());
    }
}
