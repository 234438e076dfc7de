#![no_main]

use hurwitz3::{f, BraidElement, HattedSignedWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = text.parse::<HattedSignedWord>() else { return };
    assert_eq!(w.to_string().parse::<HattedSignedWord>().unwrap(), w);
    if w.len() <= 32 {
        let image = f(&w);
        let inverses = w.iter().filter(|l| matches!(l, hurwitz3::SignedHattedLetter::Inverse(_))).count();
        let quotient = w.bar_value().inv().mul(&image.bar().value());
        assert_eq!(quotient, BraidElement::delta_power(inverses as i64));
    }
});
