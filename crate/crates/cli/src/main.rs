use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qfock::affinization::Generator;
use qfock::boson::{commutator_vac, gamma_closed_form};
use qfock::characters::{hw_span_check, verify_character};
use qfock::checks::{run_criterion, CheckConfig};
use qfock::crystal::{export_dot, GraphKind};
use qfock::fock::{annihilation_check, uq_apply_fock, wedge_front, FockConfig, FockVector, GroundSeq};
use qfock::qfield::{Coefficient, Rat};
use qfock::wedge::{parse_factors, straighten, uq_apply_wedge, StraightenConfig, WedgeVector};

#[derive(Parser, Debug)]
#[command(name = "qfock", version, about = "Level-2 q-deformed Fock space of quantum affine sl2")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Work modulo q^N.
    #[arg(long, global = true, env = "QFOCK_PRECISION", default_value_t = 16, value_parser = clap::value_parser!(u64).range(1..))]
    precision: u64,
    /// δ-depth cutoff for characters.
    #[arg(long, global = true, env = "QFOCK_DEPTH", default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    depth: u64,
    /// Rewrite budget per straightening.
    #[arg(long, global = true, env = "QFOCK_FUEL", default_value_t = 1_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// Window widenings for slice elimination.
    #[arg(long, global = true, env = "QFOCK_MAX_WIDEN", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    max_widen: u64,
    /// Frontier cap, in ground-state periods.
    #[arg(long, global = true, env = "QFOCK_FRONTIER", default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    frontier: u64,
    #[arg(long, global = true, env = "QFOCK_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Table,
    Json,
}

impl Config {
    fn straighten(&self) -> StraightenConfig {
        StraightenConfig { fuel: self.fuel, max_widen: self.max_widen as usize }
    }

    fn fock(&self) -> FockConfig {
        FockConfig { frontier_periods: self.frontier as usize, fuel: self.fuel }
    }

    fn n(&self) -> usize {
        self.precision as usize
    }

    fn json(&self) -> bool {
        self.format == Format::Json
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rewrite a wedge into normally ordered wedges.
    Straighten(WedgeInput),
    /// Apply generators (rightmost first) to a wedge or a Fock vector.
    Act {
        /// Comma-separated generators, e.g. `e1,f1` means e1(f1(x)).
        #[arg(long)]
        r#gen: String,
        #[command(flatten)]
        target: ActTarget,
    },
    /// Check that b ^ vac_{m+1} vanishes whenever H(b ⊗ b°_{m+1}) ≤ 0.
    VacuumTest {
        #[arg(long, default_value = "B")]
        seq: GroundSeq,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        sector: i64,
        #[arg(long, default_value_t = -4, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 4, allow_hyphen_values = true)]
        hi: i64,
    },
    /// The scalar [B_a, B_b] vac_m.
    Commutator {
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        #[arg(long, default_value = "B")]
        seq: GroundSeq,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        sector: i64,
    },
    /// Fock character against the irreducible character times partitions.
    Character {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        sector: i64,
        #[arg(long, default_value = "B")]
        seq: GroundSeq,
        /// Also run the highest-weight span check up to this depth (at most 3).
        #[arg(long)]
        span: Option<usize>,
    },
    /// DOT rendering of a crystal graph.
    CrystalDot {
        #[arg(long, value_enum, default_value_t = Graph::B)]
        graph: Graph,
        /// z-exponent window for `Baff`.
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Run the acceptance criteria.
    Selftest {
        #[arg(long, env = "QFOCK_SEED", default_value_t = CheckConfig::default().seed)]
        seed: u64,
        /// Run only this criterion.
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=9))]
        only: Option<u8>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Graph {
    B,
    #[value(name = "BtensorB", alias = "btensorb")]
    BTensorB,
    #[value(name = "Baff", alias = "baff")]
    BAff,
}

#[derive(Args, Debug)]
struct WedgeInput {
    /// Wedge monomial such as `v0^zv1` (coefficient 1).
    #[arg(long, conflicts_with = "input")]
    wedge: Option<String>,
    /// JSON file with a list of `{factors, coeff}` terms.
    #[arg(long)]
    input: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ActTarget {
    #[command(flatten)]
    wedge: WedgeInput,
    /// Act on `prefix ^ vac` in the Fock space of this sequence.
    #[arg(long, conflicts_with_all = ["wedge", "input"])]
    seq: Option<GroundSeq>,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    sector: i64,
    /// Prefix wedged onto the vacuum, e.g. `v2`.
    #[arg(long, requires = "seq")]
    prefix: Option<String>,
    /// JSON file with a Fock vector.
    #[arg(long, conflicts_with_all = ["wedge", "input", "seq"])]
    fock: Option<PathBuf>,
}

/// A failure with its exit code: 1 for failed verification or computation,
/// 2 for bad input.
struct Failure(u8, String);

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure(2, e.to_string())
}

fn compute(e: impl std::fmt::Display) -> Failure {
    Failure(1, e.to_string())
}

struct Output {
    text: String,
    json: Value,
    passed: bool,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Failure> {
    let s = std::fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&s).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_wedge(w: &WedgeInput) -> Result<WedgeVector, Failure> {
    match (&w.wedge, &w.input) {
        (Some(s), _) => Ok(WedgeVector::pure(parse_factors(s).map_err(usage)?, Coefficient::one())),
        (None, Some(p)) => read_json(p),
        (None, None) => Err(usage("give --wedge or --input")),
    }
}

fn parse_gens(s: &str) -> Result<Vec<Generator>, Failure> {
    s.split(',').map(|g| g.trim().parse::<Generator>().map_err(usage)).collect()
}

fn run_straighten(cfg: &Config, w: &WedgeInput) -> Result<Output, Failure> {
    let v = load_wedge(w)?;
    let r = straighten(&v, &cfg.straighten()).map_err(compute)?;
    Ok(Output {
        text: format!("{}\n  = {}\n", v.render(), r.render()),
        json: json!({"input": v, "result": r, "render": r.render()}),
        passed: true,
    })
}

fn run_act(cfg: &Config, gens: &str, t: &ActTarget) -> Result<Output, Failure> {
    let gens = parse_gens(gens)?;
    if t.seq.is_some() || t.fock.is_some() {
        let mut f = match (&t.fock, t.seq) {
            (Some(p), _) => read_json::<FockVector>(p)?,
            (None, Some(seq)) => {
                let prefix = t.prefix.as_deref().map(parse_factors).transpose().map_err(usage)?.unwrap_or_default();
                let vac = FockVector::vacuum(t.sector + prefix.len() as i64, seq, cfg.n());
                if prefix.is_empty() {
                    vac
                } else {
                    wedge_front(&WedgeVector::pure(prefix, Coefficient::one()), &vac, &cfg.fock()).map_err(compute)?
                }
            }
            (None, None) => unreachable!(),
        };
        let input = f.clone();
        for g in gens.iter().rev() {
            f = uq_apply_fock(*g, &f, &cfg.fock()).map_err(compute)?;
        }
        return Ok(Output {
            text: format!("{}\n  -> {}\n", input.render(), f.render()),
            json: json!({"input": input, "result": f, "render": f.render()}),
            passed: true,
        });
    }
    let mut v = load_wedge(&t.wedge)?;
    let input = v.clone();
    for g in gens.iter().rev() {
        v = uq_apply_wedge(*g, &v).map_err(compute)?;
    }
    Ok(Output {
        text: format!("{}\n  -> {}\n", input.render(), v.render()),
        json: json!({"input": input, "result": v, "render": v.render()}),
        passed: true,
    })
}

fn run_vacuum_test(cfg: &Config, seq: GroundSeq, m: i64, lo: i64, hi: i64) -> Result<Output, Failure> {
    if lo > hi {
        return Err(usage("--lo must not exceed --hi"));
    }
    let rows = annihilation_check(seq, m, (lo, hi), cfg.n(), &cfg.fock()).map_err(compute)?;
    let passed = rows.iter().all(|(_, z)| *z);
    let mut text = format!("{seq} sector {}: b ^ vac mod q^{}\n", m + 1, cfg.n());
    for (b, z) in &rows {
        let _ = writeln!(text, "  {b:>8} ^ vac = {}", if *z { "0" } else { "NONZERO" });
    }
    text.push_str(if passed { "PASS\n" } else { "FAIL\n" });
    let json = json!({
        "seq": seq, "sector": m + 1, "precision": cfg.n(),
        "rows": rows.iter().map(|(b, z)| json!({"label": b.to_string(), "vanishes": z})).collect::<Vec<_>>(),
        "passed": passed,
    });
    Ok(Output { text, json, passed })
}

fn run_commutator(cfg: &Config, a: i64, b: i64, seq: GroundSeq, m: i64) -> Result<Output, Failure> {
    if a == 0 || b == 0 {
        return Err(usage("boson indices must be nonzero"));
    }
    let s = commutator_vac(a, b, m, seq, cfg.n(), &cfg.fock()).map_err(compute)?;
    let (passed, against) = if a + b != 0 {
        (s.is_zero(), "0".to_string())
    } else {
        let sign = a.signum();
        match seq {
            GroundSeq::B => {
                let e = gamma_closed_form(a.abs(), cfg.n());
                let e = if sign > 0 { e } else { qfock::qfield::TruncSeries::zero(cfg.n()).sub(&e) };
                (s == e, e.to_string())
            }
            GroundSeq::A => {
                let c = Rat::from_integer(a.into());
                (s.coeff(0) == c, format!("{c} + O(q)"))
            }
        }
    };
    let verdict = if passed { "PASS" } else { "FAIL" };
    Ok(Output {
        text: format!("[B_{a}, B_{b}] vac_{m} ({seq}) = {s}\nexpected {against}\n{verdict}\n"),
        json: json!({"a": a, "b": b, "seq": seq, "sector": m, "precision": cfg.n(), "scalar": s, "expected": against, "passed": passed}),
        passed,
    })
}

fn run_character(cfg: &Config, m: i64, seq: GroundSeq, span: Option<usize>) -> Result<Output, Failure> {
    let r = verify_character(m, seq, cfg.depth as usize).map_err(compute)?;
    let mut text = r.render();
    let mut passed = r.passed;
    let mut json = json!({"character": r});
    if let Some(d) = span {
        let s = hw_span_check(m, seq, d, cfg.n(), &cfg.fock()).map_err(|e| match e {
            qfock::characters::CharacterError::DepthTooLarge(_) => usage(e),
            e => compute(e),
        })?;
        let _ = writeln!(text, "\nspan check, depth <= {d}, mod q^{} and q^{}:", s.precision, s.precision + 4);
        let _ = writeln!(text, "  highest-weight conditions: {}", s.highest_weight);
        for c in &s.cells {
            let _ = writeln!(
                text,
                "  d={} s={:>3}: rank={} (refined {}) dim={}",
                c.depth, c.offset, c.rank, c.rank_refined, c.fock_dim
            );
        }
        let _ = writeln!(text, "{}", if s.passed { "PASS" } else { "FAIL" });
        passed &= s.passed;
        json["span"] = serde_json::to_value(&s).map_err(compute)?;
    }
    Ok(Output { text, json, passed })
}

fn run_crystal_dot(graph: Graph, lo: i64, hi: i64) -> Result<Output, Failure> {
    let kind = match graph {
        Graph::B => GraphKind::B,
        Graph::BTensorB => GraphKind::BTensorB,
        Graph::BAff if lo <= hi => GraphKind::BAff { lo, hi },
        Graph::BAff => return Err(usage("--lo must not exceed --hi")),
    };
    let dot = export_dot(kind);
    Ok(Output { json: json!({"dot": dot}), text: dot, passed: true })
}

fn run_selftest(cfg: &Config, seed: u64, only: Option<u8>) -> Result<Output, Failure> {
    let checks = CheckConfig {
        vacuum_precision: cfg.n() + 4,
        boson_precision: cfg.n(),
        span_precision: cfg.n(),
        character_depth: cfg.depth as usize,
        seed,
        fock: cfg.fock(),
        straighten: cfg.straighten(),
        ..CheckConfig::default()
    };
    let ids: Vec<u8> = only.map_or((1..=9).collect(), |k| vec![k]);
    let results: Vec<_> = ids.iter().map(|&k| run_criterion(k, &checks)).collect();
    let passed = results.iter().all(|r| r.passed);
    let mut text = format!("seed {seed}\n");
    for r in &results {
        let _ = writeln!(text, "{}", r.line());
    }
    let _ = writeln!(text, "{} of {} criteria passed", results.iter().filter(|r| r.passed).count(), results.len());
    Ok(Output { text, json: json!({"seed": seed, "config": checks, "results": results, "passed": passed}), passed })
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Straighten(w) => run_straighten(cfg, w),
        Command::Act { r#gen, target } => run_act(cfg, r#gen, target),
        Command::VacuumTest { seq, sector, lo, hi } => run_vacuum_test(cfg, *seq, *sector, *lo, *hi),
        Command::Commutator { a, b, seq, sector } => run_commutator(cfg, *a, *b, *seq, *sector),
        Command::Character { sector, seq, span } => run_character(cfg, *sector, *seq, *span),
        Command::CrystalDot { graph, lo, hi } => run_crystal_dot(*graph, *lo, *hi),
        Command::Selftest { seed, only } => run_selftest(cfg, *seed, *only),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(&cli) {
        Ok(out) => {
            let body = if cli.config.json() {
                serde_json::to_string_pretty(&out.json).expect("serializable") + "\n"
            } else {
                out.text
            };
            // A closed pipe downstream is not an error of ours.
            let _ = std::io::stdout().lock().write_all(body.as_bytes());
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
