use hurwitz3::quotient::{orbit_labels, standard_images};
use hurwitz3::{
    apply_moves, bracket, components_g0, decide_equivalence, orbit_reaches, parse_factorization, BraidElement,
    Factorization, Invalid, Move, MoveSequence, SignedWord, Verdict, DEFAULT_BUDGET,
};

fn braid(text: &str) -> BraidElement {
    text.parse::<SignedWord>().unwrap().evaluate()
}

/// Pseudo-random scramble, deterministic per `salt`.
fn scramble(fact: &Factorization, salt: usize) -> Factorization {
    let k = fact.len();
    let moves =
        (0..6).map(|i| Move { index: 1 + (salt * 7 + i * 3) % (k - 1), inverse: (salt + i) % 3 == 0 }).collect();
    apply_moves(fact, &MoveSequence(moves)).unwrap()
}

const FOUR_COMPONENTS: &str = "s0 s0 s1 s1 s2 s0 s0 s2- s1-";

#[test]
fn four_components_match_the_oracle() {
    let x = braid(FOUR_COMPONENTS);
    assert_eq!(x.to_string(), "s0 s0 s1 s1 s2 s0 s0 s1 s1 | 2");
    let g = components_g0(&x).unwrap();
    assert_eq!((g.vertices.len(), g.len()), (12, 4));

    let brackets: Vec<Factorization> = g.vertices.iter().map(|v| bracket(&v.word).unwrap()).collect();
    let tuples: Vec<_> = brackets.iter().map(Factorization::values).collect();
    let images = standard_images();
    let mut labels: Vec<Vec<usize>> = images.iter().filter_map(|img| img.orbit_labels(&tuples, 1_000_000)).collect();
    // two components are told apart only by a product of two images
    let named = |name: &str| images.iter().find(|img| img.name() == name).unwrap();
    let product = [named("SL2(Z/2)"), named("Burau(t=2, Z/7)")];
    labels.extend(orbit_labels(&product, &tuples, 1_000_000));
    for i in 0..tuples.len() {
        let (found, _) = orbit_reaches(&brackets[i], &tuples, DEFAULT_BUDGET);
        for j in 0..tuples.len() {
            let separated = labels.iter().any(|l| l[i] != l[j]);
            if g.component_index(i) == g.component_index(j) {
                assert!(found[j], "{} does not reach {}", g.vertices[i], g.vertices[j]);
                assert!(!separated);
            } else {
                assert!(separated, "{} / {} not told apart", g.vertices[i], g.vertices[j]);
            }
        }
    }
}

#[test]
fn scrambled_brackets_keep_their_component() {
    let x = braid(FOUR_COMPONENTS);
    let g = components_g0(&x).unwrap();
    let brackets: Vec<Factorization> = g.vertices.iter().map(|v| bracket(&v.word).unwrap()).collect();
    for (i, a) in brackets.iter().enumerate() {
        for (j, b) in brackets.iter().enumerate() {
            let d = decide_equivalence(&scramble(a, i), &scramble(b, j + 5), &x).unwrap();
            let expect =
                if g.component_index(i) == g.component_index(j) { Verdict::Equivalent } else { Verdict::Inequivalent };
            assert_eq!(d.verdict, expect, "{} / {}", g.vertices[i], g.vertices[j]);
            assert_eq!(d.report().component_count, Some(4));
        }
    }
}

#[test]
fn negative_exponent_is_a_single_orbit() {
    let x = braid("s2 s1");
    assert_eq!(x.to_string(), "| -1");
    let f1 = parse_factorization(": s1\n: s0\n").unwrap().into_factorization(&x);
    let f2 = parse_factorization("target: s1 s0\n: s0\n: s2\n").unwrap().into_factorization(&x);
    let d = decide_equivalence(&f1, &f2, &x).unwrap();
    assert_eq!(d.verdict, Verdict::Equivalent);
    assert!(d.single_orbit);
    assert_eq!(d.report().v0_size, None);
}

#[test]
fn invalid_inputs_are_reported() {
    let x = braid("s2 s0 s1 s1 s1- s2-");
    let good = parse_factorization("s2 : s0\ns2 : s1\n").unwrap().into_factorization(&x);
    let short = parse_factorization("s2 : s0\n").unwrap().into_factorization(&x);
    let wrong = parse_factorization("s2 : s0\ns2 : s0\n").unwrap().into_factorization(&x);
    let other = parse_factorization("target: s1 s1\n: s1\n: s1\n").unwrap().into_factorization(&x);

    let verdict = |f: &Factorization| decide_equivalence(&good, f, &x).unwrap().verdict;
    assert!(matches!(verdict(&short), Verdict::Invalid { which: 2, reason: Invalid::LengthMismatch { .. } }));
    assert!(matches!(verdict(&wrong), Verdict::Invalid { which: 2, reason: Invalid::ProductMismatch { .. } }));
    assert!(matches!(verdict(&other), Verdict::Invalid { which: 2, reason: Invalid::TargetMismatch { .. } }));
    assert_eq!(verdict(&good), Verdict::Equivalent);
}
