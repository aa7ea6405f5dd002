//! `ordram`: ordinal arithmetic, pigeonhole numbers, Ramsey bounds, witness
//! colorings and finite oracles from the command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ordram::oracle::{self, SearchBudget};
use ordram::ordinal::{milner_rado_sum, Ordinal};
use ordram::pigeonhole::{classical_p_registry, pcl_number, ptop_registry};
use ordram::witness::{all_witnesses, witness_by_name};
use ordram::{format_ordinal, parse_ordinal, Bound, BoundInterval, BoundQuery, Engine, EngineConfig, Relation};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;
use std::io::Write as _;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "ordram", version, about = "Ordinal Ramsey numbers: bounds, pigeonhole numbers and witnesses")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for searches and sampling (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Ordinal arithmetic in Cantor normal form.
    #[command(subcommand)]
    Ord(OrdCommand),
    /// Pigeonhole numbers for one color per target.
    Pigeonhole {
        #[arg(value_enum)]
        relation: RelArg,
        /// Targets, one per color.
        #[arg(required = true, value_parser = parse_arg)]
        targets: Vec<Ordinal>,
    },
    /// Ramsey number bounds.
    #[command(subcommand)]
    Ramsey(RamseyCommand),
    /// Explicit lower-bound colorings.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Finite Ramsey oracles.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand)]
enum OrdCommand {
    /// Normalize an expression.
    Eval {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
    },
    /// Compare two ordinals.
    Cmp {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
        #[arg(value_parser = parse_arg)]
        b: Ordinal,
    },
    /// Ordinal sum `a + b`.
    Add {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
        #[arg(value_parser = parse_arg)]
        b: Ordinal,
    },
    /// Ordinal product `a * b`.
    Mul {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
        #[arg(value_parser = parse_arg)]
        b: Ordinal,
    },
    /// Natural (Hessenberg) sum.
    Nsum {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
        #[arg(value_parser = parse_arg)]
        b: Ordinal,
    },
    /// Milner-Rado sum.
    Mrsum {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
        #[arg(value_parser = parse_arg)]
        b: Ordinal,
    },
    /// Cantor-Bendixson rank.
    Cb {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
    },
    /// The `n`-th element of the fundamental sequence of a limit.
    Fund {
        #[arg(value_parser = parse_arg)]
        a: Ordinal,
        n: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RelArg {
    Cl,
    Top,
    Classical,
}

impl From<RelArg> for Relation {
    fn from(r: RelArg) -> Self {
        match r {
            RelArg::Cl => Relation::Closed,
            RelArg::Top => Relation::Topological,
            RelArg::Classical => Relation::Classical,
        }
    }
}

#[derive(Subcommand)]
enum RamseyCommand {
    /// Best lower and upper bounds with their derivations.
    Bounds {
        #[arg(long, value_enum)]
        rel: RelArg,
        #[arg(long, value_parser = parse_arg)]
        alpha: Ordinal,
        /// Size of the blue clique.
        #[arg(long)]
        k: u64,
        /// Use `R(K*_n, L_3) <= n^2` where the digraph search has no value.
        #[arg(long)]
        allow_lm_bound: bool,
        /// Leave out the unpublished improvement for `R^cl(w*2, 3)`.
        #[arg(long)]
        exclude_draft: bool,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// Available witnesses.
    List,
    /// Exact graph checks plus a seeded sampling report.
    Check {
        name: String,
        #[command(flatten)]
        sampling: Sampling,
    },
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 20)]
    sample_size: usize,
    #[arg(long, env = "ORDRAM_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum OracleCommand {
    /// Classical `R(m, k)`.
    Ramsey {
        m: u64,
        k: u64,
        /// Largest graph order searched; registry values beyond it are reported as such.
        #[arg(long, default_value_t = 9)]
        max_vertices: usize,
        /// Re-derive registry values by search when they fit.
        #[arg(long)]
        verify: bool,
    },
    /// Digraph `R(K*_m, L_k)`.
    Digraph {
        m: u64,
        k: u64,
        #[arg(long, default_value_t = 10)]
        max_vertices: usize,
    },
}

fn parse_arg(s: &str) -> Result<Ordinal, String> {
    parse_ordinal(s).map_err(|e| e.to_string())
}

/// Text and JSON renderings of a result.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: serde_json::Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn to_json(v: &impl Serialize) -> serde_json::Value {
    serde_json::to_value(v).expect("serializable output")
}

fn run_ord(cmd: OrdCommand) -> Result<Output, String> {
    let bin = |op: &str, a: &Ordinal, b: &Ordinal, v: Ordinal| {
        Output::new(
            format_ordinal(&v),
            json!({"op": op, "a": a, "b": b, "value": v}),
        )
    };
    Ok(match cmd {
        OrdCommand::Eval { a } => Output::new(
            format_ordinal(&a),
            json!({
                "value": a,
                "finite": a.is_finite(),
                "successor": a.is_successor(),
                "limit": a.is_limit(),
                "cb_rank": a.cb_rank(),
            }),
        ),
        OrdCommand::Cmp { a, b } => {
            let sign = match a.cmp(&b) {
                std::cmp::Ordering::Less => "<",
                std::cmp::Ordering::Equal => "=",
                std::cmp::Ordering::Greater => ">",
            };
            Output::new(format!("{a} {sign} {b}"), json!({"a": a, "b": b, "cmp": sign}))
        }
        OrdCommand::Add { a, b } => {
            let v = a.add(&b);
            bin("add", &a, &b, v)
        }
        OrdCommand::Mul { a, b } => {
            let v = a.mul(&b);
            bin("mul", &a, &b, v)
        }
        OrdCommand::Nsum { a, b } => {
            let v = a.natural_sum(&b);
            bin("nsum", &a, &b, v)
        }
        OrdCommand::Mrsum { a, b } => {
            let v = milner_rado_sum(&a, &b).map_err(|e| e.to_string())?;
            bin("mrsum", &a, &b, v)
        }
        OrdCommand::Cb { a } => {
            if a.is_zero() {
                return Err("the Cantor-Bendixson rank is defined for x > 0".into());
            }
            let r = a.cb_rank();
            Output::new(format_ordinal(&r), json!({"value": a, "cb_rank": r}))
        }
        OrdCommand::Fund { a, n } => {
            let v = a.fundamental_sequence(n).map_err(|e| e.to_string())?;
            Output::new(format_ordinal(&v), json!({"value": a, "n": n, "element": v}))
        }
    })
}

fn run_pigeonhole(rel: Relation, targets: Vec<Ordinal>) -> Result<Output, String> {
    let value = match rel {
        Relation::Closed => pcl_number(&targets).map_err(|e| e.to_string())?,
        Relation::Topological => {
            ptop_registry(&targets).ok_or("unsupported case: no topological pigeonhole value is known for these targets")?
        }
        Relation::Classical => {
            classical_p_registry(&targets).ok_or("unsupported case: no classical pigeonhole value is known for these targets")?
        }
    };
    let list = targets.iter().map(format_ordinal).collect::<Vec<_>>().join(", ");
    let symbol = match rel {
        Relation::Closed => "P^cl",
        Relation::Topological => "P^top",
        Relation::Classical => "P",
    };
    Ok(Output::new(
        format!("{symbol}({list}) = {value}"),
        json!({"relation": rel, "targets": targets, "value": value}),
    ))
}

#[derive(Serialize)]
struct StepJson<'a> {
    rule: String,
    cite: &'a str,
    claim: &'a str,
    inputs: &'a [Ordinal],
    value: &'a Ordinal,
}

fn bound_json(b: &Bound) -> serde_json::Value {
    let steps: Vec<StepJson> = b
        .derivation
        .iter()
        .map(|s| StepJson {
            rule: s.rule.id(),
            cite: &s.cite,
            claim: &s.claim,
            inputs: &s.inputs,
            value: &s.value,
        })
        .collect();
    json!({"kind": b.kind, "value": b.value, "derivation": steps})
}

fn interval_json(i: &BoundInterval) -> serde_json::Value {
    json!({
        "relation": i.relation,
        "alpha": i.alpha,
        "k": i.k,
        "lower": bound_json(&i.lower),
        "upper": i.upper.as_ref().map(bound_json),
        "exact": i.exact,
    })
}

fn bound_text(out: &mut String, label: &str, b: &Bound) {
    let _ = writeln!(out, "{label}: {}", b.value);
    for s in &b.derivation {
        let _ = writeln!(out, "  [{}] {}  ({})", s.rule.id(), s.claim, s.cite);
    }
}

fn run_ramsey(cmd: RamseyCommand) -> Result<Output, String> {
    let RamseyCommand::Bounds {
        rel,
        alpha,
        k,
        allow_lm_bound,
        exclude_draft,
    } = cmd;
    let engine = Engine::new(EngineConfig {
        allow_lm_bound,
        include_draft: !exclude_draft,
        ..EngineConfig::default()
    });
    let q = BoundQuery::new(rel.into(), alpha, k);
    let i = engine.best_bounds(&q).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let upper = i.upper.as_ref().map(|u| u.value.to_string()).unwrap_or_else(|| "unknown".into());
    if i.exact {
        let _ = writeln!(text, "{q} = {}", i.lower.value);
    } else {
        let _ = writeln!(text, "{} <= {q} <= {upper}", i.lower.value);
    }
    bound_text(&mut text, "lower", &i.lower);
    match &i.upper {
        Some(u) => bound_text(&mut text, "upper", u),
        None => text.push_str("upper: no rule applies\n"),
    }
    Ok(Output::new(text.trim_end().to_string(), interval_json(&i)))
}

fn run_witness(cmd: WitnessCommand) -> Result<Output, String> {
    match cmd {
        WitnessCommand::List => {
            let ws = all_witnesses();
            let mut text = String::new();
            for w in &ws {
                let _ = writeln!(
                    text,
                    "{}: {} ({} classes, {} edges, space below {})",
                    w.name,
                    w.claim,
                    w.classes.len(),
                    w.edges.len(),
                    w.space
                );
            }
            let json = json!(ws
                .iter()
                .map(|w| json!({
                    "name": w.name,
                    "claim": w.claim,
                    "space": w.space,
                    "classes": w.classes.iter().map(|c| c.name).collect::<Vec<_>>(),
                    "edges": w.edges.iter().map(|&(a, b)| [w.classes[a].name, w.classes[b].name]).collect::<Vec<_>>(),
                }))
                .collect::<Vec<_>>());
            Ok(Output::new(text.trim_end().to_string(), json))
        }
        WitnessCommand::Check { name, sampling } => {
            let w = witness_by_name(&name).map_err(|e| e.to_string())?;
            let triangle_free = w.is_triangle_free();
            let loops = w.has_loops();
            let report = w.sampled_report(sampling.sample_size, sampling.trials, sampling.seed);
            let ok = triangle_free && !loops && report.verdict == "pass";
            let text = format!(
                "{}: class graph triangle-free: {triangle_free}, loops: {loops}\n\
                 sampling: {} trials of {} points (seed {}), {} triples, {} violations: {}",
                w.name,
                report.trials,
                report.sample_size,
                report.seed,
                report.triples_checked,
                report.violation_count,
                report.verdict
            );
            let mut json = to_json(&report);
            json["triangle_free"] = json!(triangle_free);
            Ok(Output {
                text,
                json,
                ok,
            })
        }
    }
}

fn run_oracle(cmd: OracleCommand) -> Result<Output, String> {
    match cmd {
        OracleCommand::Ramsey {
            m,
            k,
            max_vertices,
            verify,
        } => {
            let budget = SearchBudget {
                max_vertices,
                verify_registry: verify,
                ..SearchBudget::default()
            };
            let v = oracle::finite_ramsey(m, k, budget).map_err(|e| e.to_string())?;
            let text = format!("R({m},{k}) = {} ({})", v.value, to_json(&v.provenance).as_str().unwrap_or(""));
            Ok(Output::new(text, json!({"m": m, "k": k, "value": v.value, "provenance": v.provenance})))
        }
        OracleCommand::Digraph { m, k, max_vertices } => {
            let budget = SearchBudget {
                max_vertices,
                ..SearchBudget::default()
            };
            let d = oracle::digraph_ramsey(m, k, budget).map_err(|e| e.to_string())?;
            let g = &d.lower_witness;
            let arcs: Vec<[usize; 2]> = (0..g.order())
                .flat_map(|u| (0..g.order()).filter(move |&v| u != v && g.has_arc(u, v)).map(move |v| [u, v]))
                .collect();
            let text = format!(
                "R(K*_{m}, L_{k}) = {} (search); extremal digraph on {} vertices, arcs {:?}",
                d.value,
                g.order(),
                arcs
            );
            Ok(Output::new(
                text,
                json!({"m": m, "k": k, "value": d.value, "provenance": "search", "lower_witness": {"vertices": g.order(), "arcs": arcs}}),
            ))
        }
    }
}

/// Writes a line to stdout; a closed pipe is not an error.
fn emit(s: &str) {
    let _ = writeln!(std::io::stdout().lock(), "{s}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match cli.command {
        Command::Ord(c) => run_ord(c),
        Command::Pigeonhole { relation, targets } => run_pigeonhole(relation.into(), targets),
        Command::Ramsey(c) => run_ramsey(c),
        Command::Witness(c) => run_witness(c),
        Command::Oracle(c) => run_oracle(c),
    };
    match result {
        Ok(out) => {
            if cli.json {
                emit(&serde_json::to_string_pretty(&out.json).expect("json"));
            } else {
                emit(&out.text);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if cli.json {
                emit(&json!({"error": e}).to_string());
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
