use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use commgraph::classify::{self, DiameterVerdict, TableFormat, TABLE_NS, TABLE_PS};
use commgraph::format::{self, AnyMatrix, MatrixJson};
use commgraph::graph::{self, Budget, ChainCheck, CommutingGraphSummary};
use commgraph::local::{self, CongruenceSearch};
use commgraph::witness::{self, WitnessSuiteReport};
use commgraph::{Error, Field, Matrix};

macro_rules! legend {
    () => {
        "\
table glyphs for the diameter of Γ(Q_p, n):
  X    disconnected
  4    diameter exactly 4 (likewise 5, 6)
  ≤5   diameter 4 or 5
  ≥5   diameter 5 or 6
  ?    only the universal bounds 4 ≤ diameter ≤ 6"
    };
}

const LONG_VERSION: &str = concat!(env!("CARGO_PKG_VERSION"), "\n\n", legend!());

#[derive(Parser, Debug)]
#[command(name = "commgraph", version, long_version = LONG_VERSION, about = "Commuting graphs of matrix rings over Q_p and F_p")]
struct Cli {
    /// Worker threads for parallel stages (0 = one per core).
    #[arg(long, global = true, env = "COMMGRAPH_THREADS", default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct PrimeDegree {
    /// Residue characteristic p (a prime).
    #[arg(short = 'p', long)]
    p: u64,
    /// Matrix size n ≥ 2.
    #[arg(short = 'n', long)]
    n: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Connectivity and diameter bounds for Γ(Q_p, n).
    Classify {
        #[command(flatten)]
        args: PrimeDegree,
        #[arg(long, conflicts_with = "explain")]
        json: bool,
        /// Print the rule trace.
        #[arg(long)]
        explain: bool,
    },
    /// Every predicate about extensions of Q_p of degree n, with evidence.
    Explain {
        #[command(flatten)]
        args: PrimeDegree,
        #[arg(long)]
        json: bool,
    },
    /// Grid of classification glyphs (rows n, columns p).
    Table {
        #[arg(long = "n", value_delimiter = ',', default_values_t = TABLE_NS)]
        ns: Vec<u64>,
        #[arg(long = "p", value_delimiter = ',', default_values_t = TABLE_PS)]
        ps: Vec<u64>,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Exhaustive connectivity and diameter of Γ(F_p, n).
    FfDiameter {
        #[command(flatten)]
        args: PrimeDegree,
        /// Refuse when p^(n²) exceeds this many matrices.
        #[arg(long, default_value_t = Budget::default().max_matrices)]
        max_matrices: u64,
        #[arg(long)]
        json: bool,
    },
    /// Build and check U and S over F_p (p odd) or over Q (--char 0).
    Witness {
        #[arg(long = "char", default_value_t = 3)]
        characteristic: u64,
        #[arg(long, default_value_t = 7)]
        q: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a commuting chain over Q (JSON array of matrices) modulo p.
    ReduceChain {
        file: PathBuf,
        #[arg(short = 'p', long)]
        p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether d(A, B) ≤ 2 for two matrices in JSON files.
    Dist2 {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Markdown,
    Tex,
    Json,
}

impl From<Format> for TableFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Markdown => TableFormat::Markdown,
            Format::Tex => TableFormat::Tex,
            Format::Json => TableFormat::Json,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
        eprintln!("error: cannot start thread pool: {e}");
        return ExitCode::from(1);
    }
    match run(cli.command) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded(_) => 2,
                _ => 1,
            })
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> commgraph::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(command: Command) -> commgraph::Result<String> {
    match command {
        Command::Classify { args, json, explain } => {
            let verdict = classify::classify(args.p, args.n)?;
            if json {
                to_json(&verdict)
            } else {
                Ok(describe_verdict(&verdict, explain))
            }
        }
        Command::Explain { args, json } => {
            let report = ExplainReport::new(args.p, args.n)?;
            if json {
                to_json(&report)
            } else {
                Ok(report.render())
            }
        }
        Command::Table { ns, ps, format } => classify::render_table(&ns, &ps, format.into()),
        Command::FfDiameter { args, max_matrices, json } => {
            let n = usize::try_from(args.n).map_err(|_| Error::InvalidArgument("n too large".into()))?;
            let summary = graph::ff_graph_summary(args.p, n, Budget { max_matrices })?;
            eprintln!("wall time: {:.3} s", summary.wall_time);
            if json {
                to_json(&summary)
            } else {
                Ok(describe_summary(&summary))
            }
        }
        Command::Witness { characteristic, q, trials, seed, json } => {
            let report = witness::witness_suite(characteristic, q, trials, seed)?;
            if json {
                to_json(&report)
            } else {
                Ok(describe_witness(&report))
            }
        }
        Command::ReduceChain { file, p, json } => {
            let chain = format::parse_rational_chain_json(&read(&file)?)?;
            let reduced = witness::reduce_chain(&chain, p)?;
            let check = graph::verify_chain(&reduced);
            let report = ReduceReport {
                p,
                length: reduced.len(),
                check,
                chain: reduced.entries().iter().map(MatrixJson::from).collect(),
            };
            if json {
                to_json(&report)
            } else {
                Ok(describe_reduction(&report, &reduced))
            }
        }
        Command::Dist2 { a, b, json } => {
            let a = format::parse_matrix_json(&read(&a)?)?;
            let b = format::parse_matrix_json(&read(&b)?)?;
            let report = Dist2Report::new(&a, &b)?;
            if json {
                to_json(&report)
            } else {
                Ok(format!(
                    "d(A, B) ≤ 2: {} (joint commutant dimension {})\n",
                    report.distance_at_most_2, report.joint_commutant_dim
                ))
            }
        }
    }
}

fn read(path: &Path) -> commgraph::Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))
}

fn describe_verdict(v: &DiameterVerdict, explain: bool) -> String {
    let mut out = format!("Γ(Q_{},{}): ", v.p, v.n);
    match (v.connected, v.lo, v.hi) {
        (false, _, _) => {
            out.push_str("disconnected");
            if let Some(note) = &v.nonclique_note {
                out.push_str(&format!("; {note}"));
            }
        }
        (true, Some(lo), Some(hi)) if lo == hi => out.push_str(&format!("connected, diameter {lo}")),
        (true, Some(lo), Some(hi)) => out.push_str(&format!("connected, diameter in [{lo}, {hi}]")),
        _ => out.push_str("connected"),
    }
    out.push_str(&format!("  [{}]\n", v.glyph()));
    if explain {
        for t in &v.trace {
            out.push_str(&format!(
                "  {} {:<14} {}\n      {}\n",
                t.rule,
                t.contribution.to_string(),
                t.detail,
                t.citation
            ));
        }
    }
    out
}

#[derive(Serialize)]
struct ExplainReport {
    p: u64,
    n: u64,
    primitive_extension_exists: bool,
    connected: bool,
    small_prime_factor: bool,
    congruence: CongruenceSearch,
    known_ff_diameter: Option<classify::KnownFFDiameter>,
    verdict: DiameterVerdict,
}

impl ExplainReport {
    fn new(p: u64, n: u64) -> commgraph::Result<Self> {
        Ok(ExplainReport {
            p,
            n,
            primitive_extension_exists: local::primitive_extension_exists(p, n)?,
            connected: local::is_connected(p, n)?,
            small_prime_factor: local::small_prime_factor_criterion(p, n)?,
            congruence: local::congruence_search(p, n)?,
            known_ff_diameter: classify::known_ff_diameter(p, n),
            verdict: classify::classify(p, n)?,
        })
    }

    fn render(&self) -> String {
        let (p, n) = (self.p, self.n);
        let mut out = format!("p = {p}, n = {n}\n");
        out.push_str(&format!("primitive extension of Q_{p} of degree {n}: {}\n", self.primitive_extension_exists));
        out.push_str(&format!("Γ(Q_{p},{n}) connected: {}\n", self.connected));
        out.push_str(&format!("largest prime factor below √n and n not a power of p: {}\n", self.small_prime_factor));
        if self.congruence.candidates.is_empty() {
            out.push_str("congruence conditions: no prime q | n with q ≠ p and q² < n\n");
        } else {
            let qs: Vec<String> = self.congruence.candidates.iter().map(u64::to_string).collect();
            out.push_str(&format!("congruence conditions, candidates q ∈ {{{}}}:\n", qs.join(", ")));
            for c in &self.congruence.checked {
                let evidence: Vec<String> = c.evidence.iter().map(|e| e.to_string()).collect();
                out.push_str(&format!(
                    "  ({}) q = {}: {} [{}]\n      {}\n",
                    c.tag,
                    c.q.map_or("-".into(), |q| q.to_string()),
                    if c.holds { "holds" } else { "fails" },
                    c.describe(),
                    evidence.join(", ")
                ));
            }
        }
        match &self.known_ff_diameter {
            Some(k) => out.push_str(&format!("known diam Γ(F_{p},{n}) = {}\n", k.diameter)),
            None => out.push_str(&format!("no known diameter for Γ(F_{p},{n})\n")),
        }
        out.push_str(&describe_verdict(&self.verdict, true));
        out
    }
}

fn describe_summary(s: &CommutingGraphSummary) -> String {
    let mut out = format!(
        "Γ(F_{},{}): {} vertices, {} commutant classes, {} component(s)\n",
        s.p, s.n, s.vertex_count, s.class_count, s.component_count
    );
    out.push_str(&format!("all components cliques: {}\n", s.all_components_cliques));
    out.push_str(&format!("diameter: {}\n", s.diameter));
    let non_cliques: Vec<_> = s.components.iter().filter(|c| !c.clique).collect();
    for c in non_cliques {
        out.push_str(&format!("non-clique component: {} vertices, diameter {}\n", c.vertex_count, c.diameter));
    }
    out
}

fn describe_witness(r: &WitnessSuiteReport) -> String {
    let check = |b: bool| if b { "ok" } else { "FAILED" };
    let u = &r.u_checks;
    let mut out = format!("field {}, q = {}, seed {}\n", r.field, r.q, r.seed);
    out.push_str(&format!("m = {}  ({})\n", r.m, r.source));
    out.push_str(&format!("σ(C) = g(C), g = {}\n", r.g));
    out.push_str(&format!("twist space dimension {}, U found after {} attempt(s)\n", r.twist_space_dim, r.u_attempts));
    out.push_str(&format!("  U C^i = σ(C^i) U         {}\n", check(u.twist_relation)));
    out.push_str(&format!("  U invertible             {}\n", check(u.invertible)));
    out.push_str(&format!(
        "  U^q scalar               {}\n",
        u.power_scalar.as_ref().map_or("FAILED".to_string(), |a| format!("ok ({a}·I)"))
    ));
    out.push_str(&format!("  U(I+U) invertible        {}\n", check(u.one_plus_u_invertible)));
    out.push_str(&format!(
        "  direct sum rank          {} ({}/{})\n",
        check(u.direct_sum_rank == u.direct_sum_expected),
        u.direct_sum_rank,
        u.direct_sum_expected
    ));
    out.push_str(&format!("S invertible               {}\n", check(r.s_invertible && r.s_inverse_checked)));
    out.push_str(&format!(
        "F vs S⁻¹GS: {} commuting pair(s) in {} trials; F vs S⁻¹FS: {}\n",
        r.lemma33.commuting_pairs, r.lemma33.trials, r.lemma33.self_conjugate_commuting
    ));
    out.push_str(&format!(
        "A₁ nonderogatory (commutant dim {}), joint commutant of A₁ and S⁻¹A₁S: dim {}, d ≤ 2: {}\n",
        r.distance.a1_commutant_dim, r.distance.joint_commutant_dim, r.distance.distance_at_most_2
    ));
    out.push_str(&format!("all checks: {}\n", check(r.all_pass())));
    out
}

#[derive(Serialize)]
struct ReduceReport {
    p: u64,
    length: usize,
    check: ChainCheck,
    chain: Vec<MatrixJson>,
}

fn describe_reduction(r: &ReduceReport, chain: &graph::CommutingChain<commgraph::PrimeField>) -> String {
    let mut out = String::new();
    for (i, m) in chain.entries().iter().enumerate() {
        out.push_str(&format!("X_{i} mod {}:\n{m}\n", r.p));
    }
    out.push_str(&format!("length {}, valid commuting chain: {}\n", r.length, r.check.valid));
    out
}

#[derive(Serialize)]
struct Dist2Report {
    field: commgraph::FieldDescriptor,
    n: usize,
    joint_commutant_dim: usize,
    distance_at_most_2: bool,
}

impl Dist2Report {
    fn new(a: &AnyMatrix, b: &AnyMatrix) -> commgraph::Result<Self> {
        fn go<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> commgraph::Result<Dist2Report> {
            let at_most_2 = graph::distance_at_most_2(a, b)?;
            Ok(Dist2Report {
                field: a.field().descriptor(),
                n: a.n(),
                joint_commutant_dim: a.joint_commutant_dim(b)?,
                distance_at_most_2: at_most_2,
            })
        }
        match (a, b) {
            (AnyMatrix::Rational(a), AnyMatrix::Rational(b)) => go(a, b),
            (AnyMatrix::Prime(a), AnyMatrix::Prime(b)) if a.field() == b.field() => go(a, b),
            _ => Err(Error::ShapeMismatch("A and B must be over the same field".into())),
        }
    }
}
