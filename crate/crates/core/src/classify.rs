//! Connectivity and diameter bounds for `Γ(Q_p, n)` by mechanical rule application.
//!
//! A connected `Γ(Q_p, n)` has diameter 4, 5 or 6. Each rule that applies to
//! `(p, n)` contributes an interval; the verdict is their intersection, and the
//! full list of contributions is kept as a trace.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{is_prime, is_prime_power_of};
use crate::error::{Error, Result};
use crate::graph::Distance;
use crate::local::{congruence_search, is_connected, small_prime_factor_criterion};

pub const TABLE_NS: [u64; 10] = [4, 6, 8, 9, 10, 12, 14, 15, 16, 18];
pub const TABLE_PS: [u64; 9] = [2, 3, 5, 7, 11, 13, 17, 19, 23];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    /// The universal bounds `4 ≤ diam ≤ 6` for connected graphs.
    R0,
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl RuleId {
    pub const ALL: [RuleId; 8] =
        [RuleId::R0, RuleId::R1, RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5, RuleId::R6, RuleId::R7];

    /// Rules that only narrow the interval and may be switched off for ablation.
    pub const BOUNDING: [RuleId; 6] = [RuleId::R2, RuleId::R3, RuleId::R4, RuleId::R5, RuleId::R6, RuleId::R7];

    pub fn citation(self) -> &'static str {
        match self {
            RuleId::R0 => "universal bounds: a connected Γ(Q_p,n) has diameter 4, 5 or 6",
            RuleId::R1 => {
                "connectivity criterion: Γ(Q_p,n) is connected iff n is neither prime nor a power of p; \
                 Γ(Q_p,2) is a disjoint union of cliques"
            }
            RuleId::R2 => "diameter four: Γ(Q_p,4) has diameter 4 for p ≠ 2",
            RuleId::R3 => "square of a prime: Γ(Q_p,q²) has diameter at least 5 for primes q ≥ 3, q ≠ p",
            RuleId::R4 => "mod-p lower bound: diam Γ(Q_p,n) ≥ diam Γ(F_p,n)",
            RuleId::R5 => {
                "small prime factor: diameter at most 5 when the largest prime factor of n is below √n \
                 and n is not a power of p"
            }
            RuleId::R6 => {
                "congruence criterion: diameter at most 5 when some prime q | n, q ≠ p, q² < n satisfies \
                 condition (a), (b) or (c)"
            }
            RuleId::R7 => "wreath-product construction: Γ(Q_2,2q) has diameter 6 for primes q ≥ 7",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Contribution {
    Disconnected,
    Connected,
    Bounds { lo: u8, hi: u8 },
}

impl fmt::Display for Contribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Contribution::Disconnected => f.write_str("disconnected"),
            Contribution::Connected => f.write_str("connected"),
            Contribution::Bounds { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub rule: RuleId,
    pub citation: String,
    pub detail: String,
    pub contribution: Contribution,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterVerdict {
    pub p: u64,
    pub n: u64,
    pub connected: bool,
    pub lo: Option<u8>,
    pub hi: Option<u8>,
    pub exact: bool,
    pub nonclique_note: Option<String>,
    pub trace: Vec<TraceEntry>,
}

impl DiameterVerdict {
    /// Table glyph: `X`, an exact value, `≤5`, `≥5` or `?`.
    pub fn glyph(&self) -> Glyph {
        match (self.connected, self.lo, self.hi) {
            (false, _, _) => Glyph::Disconnected,
            (true, Some(lo), Some(hi)) if lo == hi => Glyph::Exact(lo),
            (true, Some(4), Some(5)) => Glyph::AtMost5,
            (true, Some(5), Some(6)) => Glyph::AtLeast5,
            _ => Glyph::Unknown,
        }
    }

    /// Rebuild the interval from the trace alone.
    pub fn interval_from_trace(&self) -> Option<(u8, u8)> {
        let mut bounds = None;
        for entry in &self.trace {
            if let Contribution::Bounds { lo, hi } = entry.contribution {
                let (a, b) = bounds.unwrap_or((lo, hi));
                bounds = Some((a.max(lo), b.min(hi)));
            }
        }
        bounds
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Glyph {
    Disconnected,
    Exact(u8),
    AtMost5,
    AtLeast5,
    Unknown,
}

impl Glyph {
    pub fn tex(self) -> String {
        match self {
            Glyph::Disconnected => "X".into(),
            Glyph::Exact(d) => format!("${d}$"),
            Glyph::AtMost5 => r"$\leq 5$".into(),
            Glyph::AtLeast5 => r"$\geq 5$".into(),
            Glyph::Unknown => "?".into(),
        }
    }
}

impl fmt::Display for Glyph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Glyph::Disconnected => f.write_str("X"),
            Glyph::Exact(d) => write!(f, "{d}"),
            Glyph::AtMost5 => f.write_str("≤5"),
            Glyph::AtLeast5 => f.write_str("≥5"),
            Glyph::Unknown => f.write_str("?"),
        }
    }
}

impl std::str::FromStr for Glyph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "X" => Glyph::Disconnected,
            "≤5" => Glyph::AtMost5,
            "≥5" => Glyph::AtLeast5,
            "?" => Glyph::Unknown,
            d => Glyph::Exact(d.parse().map_err(|_| Error::Parse(format!("unknown glyph {d:?}")))?),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "source", rename_all = "snake_case")]
pub enum Provenance {
    Literature(String),
    Computed,
}

/// A known diameter of `Γ(F_p, n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownFFDiameter {
    pub p: u64,
    pub n: u64,
    pub diameter: Distance,
    pub provenance: Provenance,
}

/// The finite-field diameters the classifier may use. `Computed` entries are
/// checked against the exhaustive engine in the test suite; the single
/// literature entry is far beyond exhaustive reach.
pub fn known_ff_diameters() -> Vec<KnownFFDiameter> {
    let computed = |p, n, diameter| KnownFFDiameter { p, n, diameter, provenance: Provenance::Computed };
    vec![
        computed(2, 2, Distance::Infinite),
        computed(3, 2, Distance::Infinite),
        computed(2, 3, Distance::Infinite),
        computed(3, 3, Distance::Infinite),
        computed(2, 4, Distance::Finite(4)),
        KnownFFDiameter {
            p: 2,
            n: 15,
            diameter: Distance::Finite(5),
            provenance: Provenance::Literature("published computation of the diameter of Γ(F_2,15)".into()),
        },
    ]
}

pub fn known_ff_diameter(p: u64, n: u64) -> Option<KnownFFDiameter> {
    known_ff_diameters().into_iter().find(|k| k.p == p && k.n == n)
}

/// Which bounding rules are active; used for ablation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RuleSet {
    disabled: [bool; 8],
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::all()
    }
}

impl RuleSet {
    pub fn all() -> Self {
        RuleSet { disabled: [false; 8] }
    }

    /// Switch off one of [`RuleId::BOUNDING`]; R0 and R1 always apply.
    pub fn without(mut self, rule: RuleId) -> Result<Self> {
        if !RuleId::BOUNDING.contains(&rule) {
            return Err(Error::InvalidArgument(format!("{rule} cannot be disabled")));
        }
        self.disabled[rule as usize] = true;
        Ok(self)
    }

    pub fn enabled(&self, rule: RuleId) -> bool {
        !self.disabled[rule as usize]
    }
}

pub fn classify(p: u64, n: u64) -> Result<DiameterVerdict> {
    classify_with(p, n, RuleSet::all())
}

pub fn classify_with(p: u64, n: u64, rules: RuleSet) -> Result<DiameterVerdict> {
    let connected = is_connected(p, n)?;
    let mut trace = Vec::new();
    let mut push = |rule: RuleId, detail: String, contribution| {
        trace.push(TraceEntry { rule, citation: rule.citation().to_string(), detail, contribution });
    };

    if !connected {
        let why = if n == 2 {
            "n = 2".to_string()
        } else if is_prime(n) {
            format!("n = {n} is prime")
        } else {
            format!("n = {n} is a power of p = {p}")
        };
        push(RuleId::R1, why, Contribution::Disconnected);
        return Ok(DiameterVerdict {
            p,
            n,
            connected,
            lo: None,
            hi: None,
            exact: false,
            nonclique_note: nonclique_annotation(p, n)?,
            trace,
        });
    }

    push(RuleId::R1, format!("n = {n} is neither prime nor a power of {p}"), Contribution::Connected);
    push(RuleId::R0, "connected".into(), Contribution::Bounds { lo: 4, hi: 6 });

    if rules.enabled(RuleId::R2) && n == 4 && p != 2 {
        push(RuleId::R2, format!("n = 4, p = {p} ≠ 2"), Contribution::Bounds { lo: 4, hi: 4 });
    }
    if rules.enabled(RuleId::R3) {
        if let Some(q) = exact_square_root(n) {
            if q >= 3 && q != p && is_prime(q) {
                push(RuleId::R3, format!("n = {q}², q = {q} ≠ p"), Contribution::Bounds { lo: 5, hi: 6 });
            }
        }
    }
    if rules.enabled(RuleId::R4) {
        if let Some(known) = known_ff_diameter(p, n) {
            if let Distance::Finite(d) = known.diameter {
                let provenance = match &known.provenance {
                    Provenance::Literature(s) => s.clone(),
                    Provenance::Computed => "computed by graph-engine".to_string(),
                };
                push(
                    RuleId::R4,
                    format!("diam Γ(F_{p},{n}) = {d} ({provenance})"),
                    Contribution::Bounds { lo: d as u8, hi: 6 },
                );
            }
        }
    }
    if rules.enabled(RuleId::R5) && small_prime_factor_criterion(p, n)? {
        push(
            RuleId::R5,
            format!("largest prime factor of {n} is below √{n}, and {n} is not a power of {p}"),
            Contribution::Bounds { lo: 4, hi: 5 },
        );
    }
    if rules.enabled(RuleId::R6) {
        if let Some((q, cond)) = congruence_search(p, n)?.success {
            let evidence: Vec<String> = cond.evidence.iter().map(|c| c.to_string()).collect();
            push(
                RuleId::R6,
                format!("q = {q}, condition ({}): {}; {}", cond.tag, cond.describe(), evidence.join(", ")),
                Contribution::Bounds { lo: 4, hi: 5 },
            );
        }
    }
    if rules.enabled(RuleId::R7) && p == 2 && n.is_multiple_of(2) && n / 2 >= 7 && is_prime(n / 2) {
        push(RuleId::R7, format!("p = 2, n = 2·{}", n / 2), Contribution::Bounds { lo: 6, hi: 6 });
    }

    let mut verdict =
        DiameterVerdict { p, n, connected, lo: None, hi: None, exact: false, nonclique_note: None, trace };
    let (lo, hi) = verdict.interval_from_trace().expect("R0 always contributes");
    if lo > hi {
        let lines: Vec<String> =
            verdict.trace.iter().map(|t| format!("{} {} ({})", t.rule, t.contribution, t.detail)).collect();
        return Err(Error::Soundness(format!(
            "empty interval [{lo}, {hi}] for p = {p}, n = {n}: {}",
            lines.join("; ")
        )));
    }
    verdict.lo = Some(lo);
    verdict.hi = Some(hi);
    verdict.exact = lo == hi;
    Ok(verdict)
}

fn exact_square_root(n: u64) -> Option<u64> {
    let r = (n as f64).sqrt().round() as u64;
    (r.checked_mul(r) == Some(n)).then_some(r)
}

/// What is known about the one non-clique component of a disconnected `Γ(Q_p, n)`, `n ≥ 3`.
pub fn nonclique_annotation(p: u64, n: u64) -> Result<Option<String>> {
    if is_connected(p, n)? {
        return Err(Error::InvalidArgument(format!("Γ(Q_{p},{n}) is connected")));
    }
    Ok(if n == 2 {
        None
    } else if is_prime(n) {
        Some("non-clique diameter 4".into())
    } else if n == p * p {
        Some("non-clique diameter ≥ 5".into())
    } else {
        debug_assert!(is_prime_power_of(n, p));
        Some("unknown".into())
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TableFormat {
    Markdown,
    Tex,
    Json,
}

impl std::str::FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "markdown" | "md" => Ok(TableFormat::Markdown),
            "tex" | "latex" => Ok(TableFormat::Tex),
            "json" => Ok(TableFormat::Json),
            other => Err(Error::Parse(format!("unknown table format {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableJson {
    pub ns: Vec<u64>,
    pub ps: Vec<u64>,
    /// `glyphs[i][j]` is the cell for `ns[i]`, `ps[j]`.
    pub glyphs: Vec<Vec<String>>,
}

/// Glyph grid with one row per `n` and one column per `p`.
pub fn glyph_grid(ns: &[u64], ps: &[u64]) -> Result<Vec<Vec<Glyph>>> {
    ns.iter().map(|&n| ps.iter().map(|&p| classify(p, n).map(|v| v.glyph())).collect()).collect()
}

pub fn render_table(ns: &[u64], ps: &[u64], format: TableFormat) -> Result<String> {
    let grid = glyph_grid(ns, ps)?;
    let mut out = String::new();
    match format {
        TableFormat::Markdown => {
            out.push_str("|   |");
            for p in ps {
                out.push_str(&format!(" Q_{p} |"));
            }
            out.push_str("\n|---|");
            out.push_str(&"---|".repeat(ps.len()));
            out.push('\n');
            for (n, row) in ns.iter().zip(&grid) {
                out.push_str(&format!("| n={n} |"));
                for g in row {
                    out.push_str(&format!(" {g} |"));
                }
                out.push('\n');
            }
        }
        TableFormat::Tex => {
            out.push_str(&format!("\\begin{{tabular}}{{c|{}}}\n", "c|".repeat(ps.len())));
            out.push_str(&format!("\\cline{{2-{}}}\n", ps.len() + 1));
            for p in ps {
                out.push_str(&format!(" & $\\mathbb{{Q}}_{{{p}}}$"));
            }
            out.push_str(" \\\\ \\hline\n");
            for (n, row) in ns.iter().zip(&grid) {
                out.push_str(&format!("\\multicolumn{{1}}{{|c|}}{{$n={n}$}}"));
                for g in row {
                    out.push_str(&format!(" & {}", g.tex()));
                }
                out.push_str(" \\\\ \\hline\n");
            }
            out.push_str("\\end{tabular}\n");
        }
        TableFormat::Json => {
            let table = TableJson {
                ns: ns.to_vec(),
                ps: ps.to_vec(),
                glyphs: grid.iter().map(|row| row.iter().map(|g| g.to_string()).collect()).collect(),
            };
            out = serde_json::to_string_pretty(&table)?;
            out.push('\n');
        }
    }
    Ok(out)
}
