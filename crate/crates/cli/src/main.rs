use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use ringlab_core::error::RingError;
use ringlab_core::expr::{eval_str, ExprError};
use ringlab_core::invariants::InvariantBundle;
use ringlab_core::predicates::{evaluate, lookup, PREDICATES};
use ringlab_core::ring::{FiniteRing, Subset};
use ringlab_core::theorems::{
    lookup_check, parse_formula, run_suite, search_counterexamples, status_name, Corpus,
    CorpusError, CorpusSpec, Status, SuiteOptions, REGISTRY, SCHEMA_VERSION, TOOL_VERSION,
};

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Exact computations in finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distinguished subsets of a ring.
    Invariants {
        expr: String,
        #[arg(long, value_enum, default_value_t = SetName::All)]
        set: SetName,
        /// Also write the result as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Evaluates one ring-class predicate.
    Check {
        expr: String,
        #[arg(long)]
        pred: String,
        #[arg(long)]
        n: Option<u64>,
    },
    /// Runs the statement registry over a corpus.
    Theorems {
        /// Corpus TOML; the bundled default when omitted.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Comma-separated check ids.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<String>>,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
        /// Lists the registered checks and exits.
        #[arg(long)]
        list: bool,
    },
    /// Lists corpus rings satisfying a predicate formula.
    Search {
        #[arg(long)]
        corpus: Option<PathBuf>,
        #[arg(long)]
        formula: String,
        #[arg(long)]
        limit: Option<usize>,
        /// Exit with status 1 when some ring matches.
        #[arg(long)]
        assert_none: bool,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SetName {
    Units,
    Jacobson,
    Delta,
    Nil,
    Id,
    Center,
    PrimeRadical,
    All,
}

/// A failure with its exit status.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit { code: 2, message: message.into() }
    }
}

impl From<ExprError> for Exit {
    fn from(e: ExprError) -> Self {
        let code = if e.is_resource_cap() { 3 } else { 2 };
        Exit { code, message: format!("error[{}] at {e}", e.code) }
    }
}

impl From<RingError> for Exit {
    fn from(e: RingError) -> Self {
        let code = if e.is_resource_cap() { 3 } else { 2 };
        Exit { code, message: format!("error[{}]: {e}", e.code()) }
    }
}

impl From<CorpusError> for Exit {
    fn from(e: CorpusError) -> Self {
        let code = if e.is_resource_cap() { 3 } else { 2 };
        Exit { code, message: format!("error: {e}") }
    }
}

impl From<anyhow::Error> for Exit {
    fn from(e: anyhow::Error) -> Self {
        Exit::usage(format!("error: {e:#}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invariants { expr, set, json } => cmd_invariants(&expr, set, json),
        Command::Check { expr, pred, n } => cmd_check(&expr, &pred, n),
        Command::Theorems { corpus, only, jobs, json, list } => {
            if list {
                cmd_list()
            } else {
                cmd_theorems(corpus, only, jobs, json)
            }
        }
        Command::Search { corpus, formula, limit, assert_none } => {
            cmd_search(corpus, &formula, limit, assert_none)
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("{}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn write_json(path: &PathBuf, v: &Value) -> Result<(), Exit> {
    let mut text = serde_json::to_string_pretty(v).expect("json value serializes");
    text.push('\n');
    fs::write(path, text)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(Exit::from)
}

fn render(ring: &FiniteRing, s: &Subset) -> String {
    let items: Vec<String> = s.iter().map(|a| format!("#{a} {}", ring.label(a))).collect();
    items.join(", ")
}

fn cmd_invariants(text: &str, set: SetName, json_out: Option<PathBuf>) -> Result<u8, Exit> {
    let (expr, ring) = eval_str(text)?;
    let inv = InvariantBundle::compute(&ring)?;
    let sets: [(SetName, &str, &Subset); 7] = [
        (SetName::Units, "units", &inv.units),
        (SetName::Jacobson, "jacobson", &inv.jacobson),
        (SetName::Delta, "delta", &inv.delta),
        (SetName::Nil, "nilpotents", &inv.nilpotents),
        (SetName::Id, "idempotents", &inv.idempotents),
        (SetName::Center, "center", &inv.center),
        (SetName::PrimeRadical, "prime_radical", &inv.prime_radical),
    ];
    println!(
        "{expr}: {} elements, characteristic {}, {}",
        ring.size(),
        ring.characteristic(),
        if ring.is_commutative() { "commutative" } else { "noncommutative" }
    );
    let mut record = serde_json::Map::new();
    for (name, key, subset) in sets {
        if set == name || set == SetName::All {
            println!("{key} ({}): {}", subset.len(), render(&ring, subset));
            record.insert(key.to_string(), json!(subset.to_vec()));
        }
    }
    if set == SetName::All {
        let e = &inv.delta_u_exponent;
        println!("delta-u exponent: least {}, unit exponent lcm {}, valid up to lcm {:?}", e.n_min, e.lcm, e.valid);
        println!("elements:");
        for a in ring.elements() {
            println!("  #{a}\t{}", ring.label(a));
        }
        record.insert("delta_u_exponent".into(), json!(e));
        let labels: serde_json::Map<String, Value> =
            ring.elements().map(|a| (a.to_string(), json!(ring.label(a)))).collect();
        record.insert("labels".into(), Value::Object(labels));
    }
    if let Some(path) = json_out {
        let v = json!({
            "schema_version": SCHEMA_VERSION,
            "tool_version": TOOL_VERSION,
            "expression": expr.to_string(),
            "ring": {
                "size": ring.size(),
                "characteristic": ring.characteristic(),
                "commutative": ring.is_commutative(),
            },
            "invariants": record,
        });
        write_json(&path, &v)?;
    }
    Ok(0)
}

fn cmd_check(text: &str, pred: &str, n: Option<u64>) -> Result<u8, Exit> {
    let Some(info) = lookup(pred) else {
        let names: Vec<&str> = PREDICATES.iter().map(|p| p.name).collect();
        return Err(Exit::usage(format!("error: unknown predicate `{pred}`; known: {}", names.join(", "))));
    };
    match (info.param_min, n) {
        (Some(_), None) => return Err(Exit::usage(format!("error: {} needs --n", info.name))),
        (None, Some(_)) => return Err(Exit::usage(format!("error: {} takes no --n", info.name))),
        (Some(min), Some(k)) if k < min => {
            return Err(Exit::usage(format!("error: {} needs --n of at least {min}", info.name)))
        }
        _ => {}
    }
    let (expr, ring) = eval_str(text)?;
    let res = evaluate(&ring, info.name, n)?;
    println!("{}", res.value);
    if let Some(w) = &res.witness {
        let labels: Vec<String> = w.iter().map(|&a| format!("#{a} {}", ring.label(a))).collect();
        println!("witness: {}", labels.join(", "));
    }
    let what = match n {
        Some(k) => format!("{}({k})", info.name),
        None => info.name.to_string(),
    };
    eprintln!("{expr} is {}{what}", if res.value { "" } else { "not " });
    Ok(0)
}

fn load_corpus(path: Option<PathBuf>) -> Result<Corpus, Exit> {
    let spec = match path {
        None => CorpusSpec::default_spec(),
        Some(p) => {
            let text = fs::read_to_string(&p)
                .with_context(|| format!("reading {}", p.display()))
                .map_err(Exit::from)?;
            CorpusSpec::from_toml(&text)?
        }
    };
    Ok(spec.expand()?)
}

fn cmd_list() -> Result<u8, Exit> {
    for c in REGISTRY {
        let tier = serde_json::to_value(c.tier).expect("tier serializes");
        println!("{:<9} {:<15} {}", c.id, tier.as_str().unwrap_or(""), c.summary);
    }
    Ok(0)
}

fn cmd_theorems(
    corpus: Option<PathBuf>,
    only: Option<Vec<String>>,
    jobs: usize,
    json_out: Option<PathBuf>,
) -> Result<u8, Exit> {
    if let Some(ids) = &only {
        if let Some(bad) = ids.iter().find(|id| lookup_check(id).is_none()) {
            return Err(Exit::usage(format!("error: unknown check id `{bad}`")));
        }
    }
    let corpus = load_corpus(corpus)?;
    let report = run_suite(&corpus, &SuiteOptions { only, jobs })
        .map_err(|e| Exit::usage(format!("error: {e}")))?;
    let summary = report.summary();
    for (id, entry) in summary["checks"].as_object().into_iter().flatten() {
        let counts: Vec<String> = entry["statuses"]
            .as_object()
            .into_iter()
            .flatten()
            .map(|(k, v)| format!("{k} {v}"))
            .collect();
        let tier = entry["tier"].as_str().unwrap_or("");
        println!("{id:<9} {tier:<15} {}", counts.join(", "));
    }
    for r in &report.results {
        if matches!(r.status, Status::Fail | Status::Flagged | Status::Error) {
            let w = r.witness.as_ref().map(Value::to_string).unwrap_or_default();
            println!("{} {} on {}: {w}", status_name(r.status), r.check_id, r.ring);
        }
    }
    let fails = report.failures().count();
    println!(
        "{} results over {} rings: {fails} counterexamples, {} errors, {} flagged",
        report.results.len(),
        corpus.rings.len(),
        report.errors().count(),
        report.flagged().count()
    );
    if let Some(path) = json_out {
        fs::write(&path, report.to_json())
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Exit::from)?;
    }
    let capped = report
        .errors()
        .any(|r| r.witness.as_ref().is_some_and(|w| w["resource_cap"] == true));
    Ok(if fails > 0 {
        1
    } else if capped {
        3
    } else if report.errors().next().is_some() {
        1
    } else {
        0
    })
}

fn cmd_search(corpus: Option<PathBuf>, formula: &str, limit: Option<usize>, assert_none: bool) -> Result<u8, Exit> {
    let f = parse_formula(formula).map_err(|e| Exit::usage(format!("error[syntax]: {e}")))?;
    let corpus = load_corpus(corpus)?;
    let hits = search_counterexamples(&corpus, &f)?;
    for h in hits.iter().take(limit.unwrap_or(usize::MAX)) {
        println!("{h}");
    }
    if hits.is_empty() {
        println!("no corpus ring satisfies {f} ({} rings searched)", corpus.rings.len());
    } else {
        println!("{} of {} rings satisfy {f}", hits.len(), corpus.rings.len());
    }
    Ok(if assert_none && !hits.is_empty() { 1 } else { 0 })
}
