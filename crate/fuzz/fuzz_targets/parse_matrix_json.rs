#![no_main]

use commgraph::format::parse_matrix_json;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = parse_matrix_json(s) {
        let again = serde_json::to_string(&m.to_json()).unwrap();
        assert_eq!(parse_matrix_json(&again).unwrap(), m);
    }
});
