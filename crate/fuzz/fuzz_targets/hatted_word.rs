#![no_main]

use hurwitz3::{parenthesize, HattedWord};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(w) = text.parse::<HattedWord>() else { return };
    assert_eq!(w.to_string().parse::<HattedWord>().unwrap(), w);
    if w.len() <= 32 {
        // only defined when the primed part is a power of delta
        let _ = parenthesize(&w);
        let _ = hurwitz3::bracket(&w);
    }
});
