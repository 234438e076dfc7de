#![no_main]

use hurwitz3::{PlainWord, SignedWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(w) = text.parse::<SignedWord>() {
        assert_eq!(w.to_string().parse::<SignedWord>().unwrap(), w);
        // keep normalization cheap on huge inputs
        if w.len() <= 64 {
            let x = w.evaluate();
            assert_eq!(x.to_signed_word().evaluate(), x);
        }
    }
    if let Ok(w) = text.parse::<PlainWord>() {
        assert_eq!(w.to_string().parse::<PlainWord>().unwrap(), w);
    }
});
