//! Replays the checked-in fuzz seeds through the same checks the fuzz
//! targets make, so the corpus is exercised on stable toolchains.

use std::fs;
use std::path::PathBuf;

use commgraph::format::{parse_chain_json, parse_matrix_json, parse_rational_chain_json};
use commgraph::Rational;

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus").join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let name = path.file_name().unwrap().to_string_lossy().into_owned();
            (name, fs::read_to_string(&path).unwrap())
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds in {}", dir.display());
    out
}

#[test]
fn rational_seeds() {
    let mut accepted = 0;
    for (name, s) in seeds("parse_rational") {
        if let Ok(r) = s.parse::<Rational>() {
            assert_eq!(r.to_string().parse::<Rational>().unwrap(), r, "{name}");
            accepted += 1;
        }
    }
    assert!(accepted >= 3);
}

#[test]
fn matrix_seeds() {
    let mut accepted = 0;
    for (name, s) in seeds("parse_matrix_json") {
        if let Ok(m) = parse_matrix_json(&s) {
            let again = serde_json::to_string(&m.to_json()).unwrap();
            assert_eq!(parse_matrix_json(&again).unwrap(), m, "{name}");
            accepted += 1;
        }
    }
    assert_eq!(accepted, 2);
}

#[test]
fn chain_seeds() {
    let mut accepted = 0;
    for (name, s) in seeds("parse_chain_json") {
        if let Ok(chain) = parse_chain_json(&s) {
            if let Some(first) = chain.first() {
                assert!(chain.iter().all(|m| m.descriptor() == first.descriptor() && m.n() == first.n()), "{name}");
            }
            accepted += 1;
        }
        let _ = parse_rational_chain_json(&s);
    }
    assert_eq!(accepted, 3);
}
