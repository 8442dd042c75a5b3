#![no_main]

use libfuzzer_sys::fuzz_target;
use twisted_cube::io::import_cycles;
use twisted_cube::verification::{verify_edh_pair, verify_equal_node_disjoint_with_cap};
use twisted_cube::{ConstructionKind, NodeCap};

// Keeps each run cheap; larger documents are rejected by the cap.
const CAP: NodeCap = NodeCap::new(11);

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(doc) = import_cycles(text) else {
        return;
    };
    let [a, b] = &doc.cycles;
    let report = match doc.kind {
        ConstructionKind::Edh => verify_edh_pair(a, b, doc.n, CAP),
        ConstructionKind::Ndc => verify_equal_node_disjoint_with_cap(a, b, doc.n, CAP),
    };
    if let Ok(report) = report {
        if report.passed() {
            let expected = match doc.kind {
                ConstructionKind::Edh => doc.n.node_count(),
                ConstructionKind::Ndc => doc.n.node_count() / 2,
            };
            assert_eq!(a.len() as u64, expected);
            assert_eq!(b.len() as u64, expected);
        }
    }
});
