use commgraph::arith::is_prime;
use commgraph::classify::{
    classify, classify_with, known_ff_diameters, render_table, Glyph, Provenance, RuleId, RuleSet, TableFormat,
    TableJson, TABLE_NS, TABLE_PS,
};
use commgraph::graph::{ff_graph_summary, Budget};

/// The published grid, rows n = 4, 6, 8, 9, 10, 12, 14, 15, 16, 18 and
/// columns p = 2, 3, 5, 7, 11, 13, 17, 19, 23.
const TABLE: [&str; 10] = [
    "X 4 4 4 4 4 4 4 4",
    "? ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "X ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "≥5 X ≥5 ≥5 ≥5 ≥5 ≥5 ≥5 ≥5",
    "? ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "6 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "5 ? ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "X ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
    "≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5 ≤5",
];

fn primes_up_to(m: u64) -> Vec<u64> {
    (2..=m).filter(|&p| is_prime(p)).collect()
}

#[test]
fn every_table_cell_matches() {
    for (i, &n) in TABLE_NS.iter().enumerate() {
        let expected: Vec<&str> = TABLE[i].split(' ').collect();
        assert_eq!(expected.len(), TABLE_PS.len());
        for (j, &p) in TABLE_PS.iter().enumerate() {
            let got = classify(p, n).unwrap().glyph().to_string();
            assert_eq!(got, expected[j], "cell n = {n}, p = {p}");
        }
    }
}

#[test]
fn json_table_round_trips_and_matches() {
    let json = render_table(&TABLE_NS, &TABLE_PS, TableFormat::Json).unwrap();
    let table: TableJson = serde_json::from_str(&json).unwrap();
    assert_eq!(table.ns, TABLE_NS);
    assert_eq!(table.ps, TABLE_PS);
    for (row, expected) in table.glyphs.iter().zip(TABLE) {
        assert_eq!(row.join(" "), expected);
        for g in row {
            assert_eq!(g.parse::<Glyph>().unwrap().to_string(), *g);
        }
    }
}

#[test]
fn markdown_and_tex_have_one_line_per_row() {
    let md = render_table(&TABLE_NS, &TABLE_PS, TableFormat::Markdown).unwrap();
    assert_eq!(md.lines().count(), 2 + TABLE_NS.len());
    assert!(md.contains("| n=14 | 6 |"));
    let tex = render_table(&TABLE_NS, &TABLE_PS, TableFormat::Tex).unwrap();
    assert!(tex.contains(r"\multicolumn{1}{|c|}{$n=9$} & $\geq 5$ & X"));
    assert!(tex.contains(r"{$n=15$} & $5$ & ?"));
}

#[test]
fn rule_contributions_never_conflict() {
    for p in primes_up_to(23) {
        for n in 2..=18 {
            let v = classify(p, n).unwrap_or_else(|e| panic!("p = {p}, n = {n}: {e}"));
            if v.connected {
                assert_eq!(v.interval_from_trace(), Some((v.lo.unwrap(), v.hi.unwrap())));
                assert!(v.lo.unwrap() >= 4 && v.hi.unwrap() <= 6);
                assert_eq!(v.exact, v.lo == v.hi);
            } else {
                assert_eq!(v.lo, None);
                assert_eq!(v.trace.len(), 1);
            }
        }
    }
}

#[test]
fn soundness_holds_further_out() {
    for p in primes_up_to(101) {
        for n in 2..=120 {
            classify(p, n).unwrap_or_else(|e| panic!("p = {p}, n = {n}: {e}"));
        }
    }
}

#[test]
fn removing_a_rule_only_widens() {
    for p in primes_up_to(23) {
        for n in 2..=30 {
            let full = classify(p, n).unwrap();
            for rule in RuleId::BOUNDING {
                let ablated = classify_with(p, n, RuleSet::all().without(rule).unwrap()).unwrap();
                assert_eq!(ablated.connected, full.connected);
                if full.connected {
                    assert!(ablated.lo.unwrap() <= full.lo.unwrap(), "{rule} at p = {p}, n = {n}");
                    assert!(ablated.hi.unwrap() >= full.hi.unwrap(), "{rule} at p = {p}, n = {n}");
                    assert!(ablated.trace.iter().all(|t| t.rule != rule));
                }
            }
        }
    }
}

#[test]
fn classify_is_deterministic() {
    for p in [2u64, 3, 5] {
        for n in TABLE_NS {
            let a = serde_json::to_string(&classify(p, n).unwrap()).unwrap();
            let b = serde_json::to_string(&classify(p, n).unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn verdict_json_round_trips() {
    let v = classify(2, 15).unwrap();
    let json = serde_json::to_value(&v).unwrap();
    assert_eq!(json["connected"], true);
    assert_eq!(json["lo"], 5);
    assert_eq!(json["hi"], 5);
    assert_eq!(json["trace"][2]["rule"], "R4");
    let back: commgraph::classify::DiameterVerdict = serde_json::from_value(json).unwrap();
    assert_eq!(back, v);
}

#[test]
fn computed_finite_field_diameters_match_the_engine() {
    let table = known_ff_diameters();
    assert_eq!(table.iter().filter(|k| matches!(k.provenance, Provenance::Literature(_))).count(), 1);
    for known in table {
        if known.provenance == Provenance::Computed {
            let summary = ff_graph_summary(known.p, known.n as usize, Budget::default()).unwrap();
            assert_eq!(summary.diameter, known.diameter, "Γ(F_{},{})", known.p, known.n);
        } else {
            assert_eq!((known.p, known.n), (2, 15));
        }
    }
}
