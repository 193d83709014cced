mod common;

use common::{poly_of_degree, random_word, ritt_generators};
use polycomp::rewrite::Generator;
use polycomp::syntax::{format_poly, format_word, parse_poly, parse_rational, parse_word};
use polycomp::Polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn polynomials_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for _ in 0..1000 {
        let d = rng.gen_range(0..=12);
        let p = poly_of_degree(&mut rng, d);
        let text = format_poly(&p);
        assert_eq!(parse_poly(&text).unwrap(), p, "{text}");
        assert_eq!(format_poly(&parse_poly(&text).unwrap()), text);
    }
}

#[test]
fn words_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut ritt = ritt_generators(&mut rng, 10);
    ritt.push(Generator::opaque(Polynomial::from_ints(&[0, 1, 0, 0, 0, 1])).unwrap());
    for _ in 0..1000 {
        let len = rng.gen_range(0..=5);
        let w = random_word(&mut rng, len, &ritt);
        let text = format_word(&w);
        assert_eq!(parse_word(&text).unwrap(), w, "{text}");
    }
}

#[test]
fn grammar_examples() {
    assert_eq!(
        parse_poly("X^6+6*X^4+8*X^2").unwrap(),
        Polynomial::from_ints(&[0, 0, 8, 0, 6, 0, 1])
    );
    assert_eq!(
        parse_poly("2X^5-3X^2+X").unwrap(),
        Polynomial::from_ints(&[0, 1, -3, 0, 0, 2])
    );
    assert_eq!(parse_poly("X^^2").unwrap_err().position, 2);
    assert_eq!(parse_poly(" 1/2 * X - 3/4 ").unwrap().coeff(0), parse_rational("-3/4").unwrap());

    let w = parse_word("M2.M3").unwrap();
    assert_eq!(w.gens(), &[Generator::M(2), Generator::M(3)]);
    let w = parse_word("RL(2,1;X^2+1).M2").unwrap();
    assert_eq!(w.len(), 2);
    assert!(matches!(w.gens()[0], Generator::RLambda { p: 2, s: 1, .. }));
    assert!(parse_word("T2").is_err());
}
