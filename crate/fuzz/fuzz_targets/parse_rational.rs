#![no_main]

use commgraph::Rational;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(r) = s.parse::<Rational>() {
        assert_eq!(r.to_string().parse::<Rational>().unwrap(), r);
    }
});
