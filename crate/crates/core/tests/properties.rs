use std::sync::OnceLock;

use proptest::prelude::*;

use hurwitz3::graph::neighbors_h12;
use hurwitz3::quotient::{standard_images, MatrixImage};
use hurwitz3::{
    apply_moves, bracket, f, factorization_to_vertex, parse_factorization, sigma_move, validate, values_equal, Atom,
    BraidElement, Factor, Factorization, HattedLetter, HattedSignedWord, HattedWord, Move, MoveSequence, PlainWord,
    SignedAtom, SignedHattedLetter, SignedWord,
};

fn atom() -> impl Strategy<Value = Atom> {
    (0u8..3).prop_map(|i| Atom::new(i).unwrap())
}

fn signed_word(max: usize) -> impl Strategy<Value = SignedWord> {
    prop::collection::vec((atom(), any::<bool>()), 0..=max).prop_map(|v| {
        SignedWord::new(
            v.into_iter().map(|(a, neg)| if neg { SignedAtom::neg(a) } else { SignedAtom::pos(a) }).collect(),
        )
    })
}

fn element(max: usize) -> impl Strategy<Value = BraidElement> {
    signed_word(max).prop_map(|w| w.evaluate())
}

fn hatted_word(max: usize) -> impl Strategy<Value = HattedWord> {
    prop::collection::vec((atom(), any::<bool>()), 0..=max).prop_map(|v| {
        HattedWord::new(
            v.into_iter().map(|(a, h)| if h { HattedLetter::hatted(a) } else { HattedLetter::plain(a) }).collect(),
        )
    })
}

fn factorization(max_k: usize, max_conj: usize) -> impl Strategy<Value = Factorization> {
    prop::collection::vec((signed_word(max_conj), atom()), 1..=max_k).prop_map(|v| {
        let factors: Vec<Factor> = v.into_iter().map(|(c, a)| Factor::new(c, a)).collect();
        let target = factors.iter().fold(BraidElement::identity(), |acc, f| acc.mul(&f.value()));
        Factorization::new(factors, target)
    })
}

fn small_images() -> &'static [MatrixImage] {
    static IMAGES: OnceLock<Vec<MatrixImage>> = OnceLock::new();
    IMAGES.get_or_init(|| standard_images().into_iter().take(6).collect())
}

proptest! {
    #[test]
    fn multiplication_is_associative(a in element(8), b in element(8), c in element(8)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
    }

    #[test]
    fn inverses_cancel(a in element(10)) {
        prop_assert!(a.mul(&a.inv()).is_identity());
        prop_assert!(a.inv().mul(&a).is_identity());
        prop_assert_eq!(a.mul(&BraidElement::identity()), a.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(u in signed_word(8), v in signed_word(8)) {
        prop_assert_eq!(u.concat(&v).evaluate(), u.evaluate().mul(&v.evaluate()));
        prop_assert_eq!(u.inverse().evaluate(), u.evaluate().inv());
        prop_assert_eq!(u.free_reduce().evaluate(), u.evaluate());
    }

    #[test]
    fn tau_is_an_automorphism_of_order_three(a in element(8), b in element(8)) {
        prop_assert_eq!(a.mul(&b).tau(1), a.tau(1).mul(&b.tau(1)));
        prop_assert_eq!(a.tau(3), a.clone());
        // conjugating by delta shifts indices down
        prop_assert_eq!(BraidElement::delta().mul(&a), a.tau(-1).mul(&BraidElement::delta()));
    }

    #[test]
    fn band_length_is_additive(a in element(8), b in element(8)) {
        prop_assert_eq!(a.mul(&b).band_length(), a.band_length() + b.band_length());
    }

    #[test]
    fn normal_form_is_canonical(a in element(10)) {
        prop_assert!(a.u().is_delta_free());
        prop_assert_eq!(a.to_signed_word().evaluate(), a.clone());
        let reparsed: SignedWord = a.to_signed_word().to_string().parse().unwrap();
        prop_assert_eq!(reparsed.evaluate(), a);
    }

    #[test]
    fn words_print_and_parse(w in signed_word(12), h in hatted_word(12)) {
        prop_assert_eq!(w.to_string().parse::<SignedWord>().unwrap(), w);
        prop_assert_eq!(h.to_string().parse::<HattedWord>().unwrap(), h.clone());
        let plain = h.bar();
        prop_assert_eq!(plain.to_string().parse::<PlainWord>().unwrap(), plain);
    }

    #[test]
    fn factorization_files_round_trip(fact in factorization(5, 4)) {
        let file = parse_factorization(&fact.to_string()).unwrap();
        let back = file.into_factorization(&BraidElement::identity());
        prop_assert!(values_equal(&back, &fact));
        prop_assert_eq!(back.target, fact.target);
    }

    #[test]
    fn moves_preserve_the_product(fact in factorization(5, 3), moves in prop::collection::vec((1usize..5, any::<bool>()), 0..8)) {
        let moves = MoveSequence(
            moves.into_iter().filter(|(i, _)| *i < fact.len()).map(|(index, inverse)| Move { index, inverse }).collect(),
        );
        let moved = apply_moves(&fact, &moves).unwrap();
        prop_assert_eq!(validate(&moved), Ok(()));
        let back = apply_moves(&moved, &moves.inverse()).unwrap();
        prop_assert!(values_equal(&back, &fact));
        for &mv in &moves.0 {
            let there = sigma_move(&fact, mv).unwrap();
            prop_assert!(values_equal(&sigma_move(&there, mv.inverted()).unwrap(), &fact));
        }
    }

    #[test]
    fn brackets_of_vertices_round_trip(fact in factorization(4, 3)) {
        let v = factorization_to_vertex(&fact).unwrap();
        prop_assert_eq!(v.word.hatted_count(), fact.len());
        prop_assert!(values_equal(&bracket(&v.word).unwrap(), &fact));
    }

    #[test]
    fn swap_edges_are_symmetric(h in hatted_word(9)) {
        for (w2, kind, _) in neighbors_h12(&h) {
            prop_assert_eq!(w2.bar(), h.bar());
            prop_assert!(neighbors_h12(&w2).iter().any(|(back, k, _)| back == &h && *k == kind));
        }
    }

    #[test]
    fn f_differs_from_its_input_by_a_delta_power(letters in prop::collection::vec((atom(), 0u8..3), 0..8)) {
        let w = HattedSignedWord::new(
            letters
                .into_iter()
                .map(|(a, kind)| match kind {
                    0 => SignedHattedLetter::Inverse(a),
                    1 => SignedHattedLetter::Letter(HattedLetter::hatted(a)),
                    _ => SignedHattedLetter::Letter(HattedLetter::plain(a)),
                })
                .collect(),
        );
        let inverses = w.letters().iter().filter(|l| matches!(l, SignedHattedLetter::Inverse(_))).count();
        let image = f(&w);
        let quotient = w.bar_value().inv().mul(&image.bar().value());
        prop_assert_eq!(quotient, BraidElement::delta_power(inverses as i64));
    }

    #[test]
    fn moves_stay_in_one_image_orbit(fact in factorization(4, 3), moves in prop::collection::vec((1usize..4, any::<bool>()), 0..6)) {
        let moves = MoveSequence(
            moves.into_iter().filter(|(i, _)| *i < fact.len()).map(|(index, inverse)| Move { index, inverse }).collect(),
        );
        let moved = apply_moves(&fact, &moves).unwrap();
        let tuples = [fact.values(), moved.values()];
        for img in small_images() {
            let labels = img.orbit_labels(&tuples, 1_000_000).unwrap();
            prop_assert_eq!(labels[0], labels[1], "{}", img.name());
        }
    }
}
