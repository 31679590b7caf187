mod common;

use common::{poly, ring_order, ring_with, terms};
use frobsplit::parser::{parse_poly, parse_ring_spec};
use frobsplit::Error;
use proptest::prelude::*;

fn positioned(err: &Error, text: &str) -> bool {
    let lines = text.split('\n').count().max(1);
    match err {
        Error::ParseError { line, column, .. }
        | Error::UnknownVar { line, column, .. }
        | Error::BadExponent { line, column, .. } => *line >= 1 && *line <= lines && *column >= 1,
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printing_then_parsing_is_the_identity(
        p in prop_oneof![Just(2u64), Just(3), Just(7), Just(65521)],
        n in 1usize..=4,
        ord in ring_order(),
        f in terms(12, 8),
    ) {
        let r = ring_with(p, n, ord);
        let f = poly(&r, &f);
        let text = f.to_string();
        prop_assert_eq!(parse_poly(&text, &r).unwrap(), f, "{}", text);
    }

    #[test]
    fn arbitrary_token_soup_never_panics(tokens in prop::collection::vec(
        prop_oneof![
            Just("x"), Just("y"), Just("q"), Just("+"), Just("-"), Just("*"), Just("^"),
            Just("("), Just(")"), Just("2"), Just("17"), Just("0"), Just(" "), Just("\n"),
            Just("99999999999999999999"), Just("xy"), Just("^-"),
        ],
        0..24,
    )) {
        let text = tokens.concat();
        let r = ring_with(5, 2, frobsplit::algebra::MonomialOrder::Grevlex);
        if let Err(err) = parse_poly(&text, &r) {
            prop_assert!(positioned(&err, &text) || matches!(err, Error::Overflow(_)), "{:?} for {:?}", err, text);
        }
    }
}

#[test]
fn random_bytes_never_panic_and_errors_are_positioned() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
    let r = ring_with(3, 2, frobsplit::algebra::MonomialOrder::Lex);
    let alphabet = b"xyz0123456789+-*^() \n\t=pvarsodegl";
    let mut errors = 0;
    for i in 0..100_000 {
        let len = rng.gen_range(0..16);
        let bytes: Vec<u8> = (0..len)
            .map(|_| if i % 2 == 0 { rng.gen() } else { alphabet[rng.gen_range(0..alphabet.len())] })
            .collect();
        let text = String::from_utf8_lossy(&bytes);
        if let Err(err) = parse_poly(&text, &r) {
            errors += 1;
            assert!(positioned(&err, &text) || matches!(err, Error::Overflow(_)), "{err:?} for {text:?}");
        }
        if let Err(err) = parse_ring_spec(&text) {
            assert!(
                positioned(&err, &text)
                    || matches!(err, Error::NotPrime(_) | Error::DuplicateVar(_) | Error::BadOrder(_) | Error::TooManyVars(_)),
                "{err:?} for {text:?}"
            );
        }
    }
    assert!(errors > 50_000);
}
