#![no_main]

use hurwitz3::{parse_factorization, values_equal, BraidElement};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(file) = parse_factorization(text) else { return };
    if file.factors.len() > 16 || file.factors.iter().any(|f| f.conjugator.len() > 32) {
        return;
    }
    let fact = file.into_factorization(&BraidElement::identity());
    let printed = fact.to_string();
    let again = parse_factorization(&printed).unwrap().into_factorization(&BraidElement::identity());
    assert!(values_equal(&fact, &again));
    assert_eq!(fact.target, again.target);
    let _ = hurwitz3::validate(&fact);
});
