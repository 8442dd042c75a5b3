#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_cube::io::{export_cycles, import_cycles};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(doc) = import_cycles(text) {
        for cycle in &doc.cycles {
            assert!(cycle.iter().all(|&v| doc.n.contains(v)));
        }
        let again = export_cycles(&doc);
        assert_eq!(import_cycles(&again).unwrap(), doc);
    }
});
