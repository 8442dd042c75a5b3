#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_cube::io::{label_to_string, parse_label};
use twisted_cube::Dimension;

// First byte picks the dimension, the rest is the label text.
fuzz_target!(|data: &[u8]| {
    let Some((&first, rest)) = data.split_first() else {
        return;
    };
    let Ok(n) = Dimension::new(2 * u32::from(first % 31) + 1) else {
        return;
    };
    let Ok(text) = std::str::from_utf8(rest) else {
        return;
    };
    if let Ok(label) = parse_label(text, n) {
        assert!(n.contains(label));
        assert_eq!(label_to_string(label, n), text);
    }
});
