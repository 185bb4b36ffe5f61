#![no_main]

use commgraph::format::{parse_chain_json, parse_rational_chain_json};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(chain) = parse_chain_json(s) {
        if let Some(first) = chain.first() {
            assert!(chain.iter().all(|m| m.descriptor() == first.descriptor() && m.n() == first.n()));
        }
    }
    let _ = parse_rational_chain_json(s);
});
