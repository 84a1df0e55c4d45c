//! Command-line front end.
//!
//! Every subcommand writes one report `{config, results, pass, timings}`.
//! Exit status: 0 when every check passed, 1 when a mathematical check
//! failed, 2 on usage or parse errors, 3 when a budget was exhausted.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::budget::Budgets;
use crate::census::{self, CensusMode, VerifyOptions};
use crate::error::{Error, Result};
use crate::familycheck::{self, FamilyInstance};
use crate::freeword::{derived_word_with_arity, Word};
use crate::group::{Elem, GroupSpec, GroupTable};
use crate::homset::{self, Hom};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "wordmap-lab",
    version,
    about = "Word maps, derived word equations and explicit bounds over small finite groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Group, e.g. S3, D4, Q8, C2xC4, perm:(1 2 3),(1 2)
    #[arg(long, global = true)]
    pub group: Option<String>,
    /// Word, e.g. "x1*x2*x1^-1*x2^-1"
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub word: Option<String>,
    /// Number of variables (default: the word's arity)
    #[arg(long, global = true)]
    pub d: Option<usize>,
    /// Force an exact census
    #[arg(long, global = true, conflicts_with = "samples")]
    pub exact: bool,
    /// Force a sampled census with this many samples
    #[arg(long, global = true)]
    pub samples: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true)]
    pub budget_iter: Option<u128>,
    #[arg(long, global = true)]
    pub budget_hom: Option<u128>,
    #[arg(long, global = true)]
    pub budget_order: Option<usize>,
    #[arg(long, global = true)]
    pub budget_mem: Option<u128>,
    /// Worker threads (default: machine parallelism)
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Random instances for verify-lemma
    #[arg(long, global = true)]
    pub fuzz: Option<u64>,
    /// Exponent for verify-mann
    #[arg(short = 'e', global = true, allow_negative_numbers = true)]
    pub e: Option<i64>,
    /// Homomorphism G^d -> G as generator images per component, e.g. "0,1;2,3"
    #[arg(long, global = true)]
    pub hom: Option<String>,
    /// Set-family instance file for verify-lemma
    #[arg(long, global = true)]
    pub instance: Option<PathBuf>,
    /// Binary word-map table dump for fiber-stats
    #[arg(long, global = true)]
    pub dump: Option<PathBuf>,
    /// Record wall-clock timings (makes reports run-dependent)
    #[arg(long, global = true)]
    pub timings: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Agreement, derived-equation census and bound checks for a word on a group
    VerifyTheorem,
    /// Compare (xyz)^e = x^e y^e z^e with the derived equation of x1^e
    VerifyMann,
    /// Commuting probability against its lower bound
    VerifyCommuting,
    /// Fuzz and adversarial checks of the set-family pair bound
    VerifyLemma,
    /// Print the derived word
    DeriveWord,
    /// Fiber sizes of a word map
    FiberStats,
    /// Endomorphisms, automorphisms and homomorphisms G^d -> G
    HomSearch,
    /// Exact commuting probability
    CommutingProbability,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Text,
}

/// The resolved configuration, embedded in every report.
#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub subcommand: Command,
    pub group: Option<String>,
    pub word: Option<String>,
    pub d: Option<usize>,
    pub census: CensusMode,
    #[serde(serialize_with = "crate::report::opt_as_string")]
    pub samples: Option<u64>,
    #[serde(serialize_with = "crate::report::as_string")]
    pub seed: u64,
    pub budgets: BudgetConfig,
    pub workers: Option<usize>,
    pub format: Format,
    pub out: Option<String>,
    #[serde(serialize_with = "crate::report::opt_as_string")]
    pub fuzz: Option<u64>,
    pub e: Option<i64>,
    pub hom: Option<String>,
    pub instance: Option<String>,
    pub dump: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BudgetConfig {
    #[serde(serialize_with = "crate::report::as_string")]
    pub order: usize,
    #[serde(serialize_with = "crate::report::as_string")]
    pub hom_search: u128,
    #[serde(serialize_with = "crate::report::as_string")]
    pub table_entries: u128,
    #[serde(serialize_with = "crate::report::as_string")]
    pub census_iter: u128,
}

impl From<Budgets> for BudgetConfig {
    fn from(b: Budgets) -> Self {
        BudgetConfig {
            order: b.order,
            hom_search: b.hom_search,
            table_entries: b.table_entries,
            census_iter: b.census_iter,
        }
    }
}

impl Cli {
    fn budgets(&self) -> Result<Budgets> {
        let mut b = Budgets::default();
        if let Some(v) = self.budget_iter {
            b.census_iter = v;
        }
        if let Some(v) = self.budget_hom {
            b.hom_search = v;
        }
        if let Some(v) = self.budget_order {
            b.order = v;
        }
        if let Some(v) = self.budget_mem {
            b.table_entries = v;
        }
        if b.census_iter == 0 || b.hom_search == 0 || b.order == 0 || b.table_entries == 0 {
            return Err(Error::invalid("budgets must be positive"));
        }
        Ok(b)
    }

    fn config(&self) -> Result<RunConfig> {
        let budgets = self.budgets()?;
        if let Some(s) = self.samples {
            if s < census::MIN_SAMPLES {
                return Err(Error::invalid(format!("--samples must be at least {}", census::MIN_SAMPLES)));
            }
        }
        if self.workers == Some(0) {
            return Err(Error::invalid("--workers must be positive"));
        }
        let path = |p: &Option<PathBuf>| p.as_ref().map(|p| p.display().to_string());
        Ok(RunConfig {
            subcommand: self.command,
            group: self.group.clone(),
            word: self.word.clone(),
            d: self.d,
            census: match (self.exact, self.samples) {
                (true, _) => CensusMode::Exact,
                (false, Some(_)) => CensusMode::Estimate,
                (false, None) => CensusMode::Auto,
            },
            samples: self.samples,
            seed: self.seed,
            budgets: budgets.into(),
            workers: self.workers,
            format: self.format,
            out: path(&self.out),
            fuzz: self.fuzz,
            e: self.e,
            hom: self.hom.clone(),
            instance: path(&self.instance),
            dump: path(&self.dump),
        })
    }
}

struct Outcome {
    results: Value,
    pass: bool,
}

fn require<'a>(v: &'a Option<String>, flag: &str) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::invalid(format!("{flag} is required for this subcommand")))
}

fn load_group(cli: &Cli, budgets: &Budgets) -> Result<(String, GroupTable)> {
    let text = require(&cli.group, "--group")?;
    let spec: GroupSpec = text.parse()?;
    Ok((spec.to_string(), spec.build(budgets.order)?))
}

fn load_word(cli: &Cli) -> Result<(Word, usize)> {
    let w: Word = require(&cli.word, "--word")?.parse()?;
    let d = cli.d.unwrap_or(w.arity());
    if d < w.arity() {
        return Err(Error::invalid(format!("--d {d} is below the word arity {}", w.arity())));
    }
    Ok((w, d))
}

/// `"0,1;2,3"`: components separated by `;`, generator images by `,`.
fn parse_hom(text: &str, g: &GroupTable) -> Result<Hom> {
    let mut comps = Vec::new();
    for (i, part) in text.split(';').enumerate() {
        let imgs = part
            .split(',')
            .map(|t| t.trim().parse::<Elem>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::parse(i, format!("bad generator image list {part:?}")))?;
        comps.push(imgs);
    }
    Hom::from_generator_images(g, &comps)
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn execute(cli: &Cli, cfg: &RunConfig) -> Result<Outcome> {
    let budgets = cli.budgets()?;
    match cli.command {
        Command::VerifyTheorem => {
            let (name, g) = load_group(cli, &budgets)?;
            let (w, d) = load_word(cli)?;
            let hom = cli.hom.as_deref().map(|h| parse_hom(h, &g)).transpose()?;
            let opts = VerifyOptions {
                budgets,
                mode: cfg.census,
                samples: cli.samples.unwrap_or(VerifyOptions::default().samples),
                seed: cli.seed,
                hom,
            };
            let r = census::verify_theorem(&w, &g, &name, d, &opts)?;
            Ok(Outcome { pass: r.pass, results: to_value(&r) })
        }
        Command::VerifyMann => {
            let (_, g) = load_group(cli, &budgets)?;
            let e = cli.e.ok_or_else(|| Error::invalid("-e is required for verify-mann"))?;
            let r = census::verify_mann_equivalence(e, &g, &budgets)?;
            Ok(Outcome { pass: r.equal, results: to_value(&r) })
        }
        Command::VerifyCommuting => {
            let (name, g) = load_group(cli, &budgets)?;
            let r = census::verify_commuting_corollary(&g, &name, &budgets, cli.seed)?;
            Ok(Outcome { pass: r.pass, results: to_value(&r) })
        }
        Command::VerifyLemma => verify_lemma(cli),
        Command::DeriveWord => {
            let (w, d) = load_word(cli)?;
            let v = derived_word_with_arity(&w, d)?;
            Ok(Outcome {
                pass: true,
                results: json!({
                    "word": w,
                    "d": d,
                    "derived_word": v,
                    "derived_length": v.len().to_string(),
                    "nontrivial": !v.is_empty(),
                }),
            })
        }
        Command::FiberStats => {
            let (_, g) = load_group(cli, &budgets)?;
            let (w, d) = load_word(cli)?;
            let table = census::word_map_table(&w, &g, d, &budgets)?;
            if let Some(path) = &cli.dump {
                let file = std::fs::File::create(path)?;
                table.write_dump(std::io::BufWriter::new(file))?;
            }
            let stats = table.fiber_stats();
            let histogram: serde_json::Map<String, Value> =
                stats.histogram.iter().map(|(k, v)| (k.to_string(), Value::String(v.to_string()))).collect();
            Ok(Outcome {
                pass: true,
                results: json!({
                    "word": w,
                    "d": d,
                    "tuples": table.values().len().to_string(),
                    "fibers": stats.fibers.iter().enumerate().map(|(i, f)| json!({
                        "element": g.label(i as Elem),
                        "size": f.to_string(),
                    })).collect::<Vec<_>>(),
                    "histogram": histogram,
                    "max_fiber": stats.max_fiber.to_string(),
                    "max_proportion": stats.max_proportion,
                }),
            })
        }
        Command::HomSearch => {
            let (_, g) = load_group(cli, &budgets)?;
            let seq = homset::generating_sequence(&g);
            let endos = homset::endomorphisms(&g, budgets.hom_search)?;
            let autos = endos.iter().filter(|e| e.is_bijective()).count();
            let mut results = json!({
                "generators": seq.generators.iter().map(|&s| json!({
                    "id": s,
                    "label": g.label(s),
                })).collect::<Vec<_>>(),
                "endomorphisms": endos.len().to_string(),
                "automorphisms": autos.to_string(),
            });
            let word = cli.word.as_ref().map(|_| load_word(cli)).transpose()?;
            let d = cli.d.or(word.as_ref().map(|(_, d)| *d));
            if let Some(d) = d {
                let homs = homset::homs_power(&g, d, budgets.hom_search)?;
                results["d"] = json!(d);
                results["homomorphisms"] = json!(homs.len().to_string());
            }
            if let Some((w, d)) = word {
                let a = homset::best_agreement(&w, &g, d, &budgets)?;
                results["best_agreement"] = to_value(&a);
            }
            Ok(Outcome { pass: true, results })
        }
        Command::CommutingProbability => {
            let (name, g) = load_group(cli, &budgets)?;
            Ok(Outcome {
                pass: true,
                results: json!({
                    "group": name,
                    "order": g.order().to_string(),
                    "commuting_pairs": g.commuting_pairs().to_string(),
                    "conjugacy_classes": g.conjugacy_class_count().to_string(),
                    "commuting_probability": g.commuting_probability(),
                    "abelian": g.is_abelian(),
                }),
            })
        }
    }
}

/// Failures listed in full up to this many.
const MAX_LISTED_FAILURES: usize = 20;

fn verify_lemma(cli: &Cli) -> Result<Outcome> {
    let fuzz = cli.fuzz.unwrap_or(1000);
    let mut fuzz_failures = Vec::new();
    let mut fuzz_passed = 0u64;
    for k in 0..fuzz {
        let inst = familycheck::fuzz_instance(cli.seed, k)?;
        let r = familycheck::verify_lemma(&inst)?;
        if r.pass {
            fuzz_passed += 1;
        } else if fuzz_failures.len() < MAX_LISTED_FAILURES {
            fuzz_failures.push(json!({ "index": k.to_string(), "report": to_value(&r) }));
        }
    }
    let adversarial = familycheck::adversarial_families()
        .iter()
        .map(familycheck::verify_lemma)
        .collect::<Result<Vec<_>>>()?;
    let adv_passed = adversarial.iter().filter(|r| r.pass).count();
    let mut pass = fuzz_passed == fuzz && adv_passed == adversarial.len();
    let mut results = json!({
        "fuzz": {
            "instances": fuzz.to_string(),
            "passed": fuzz_passed.to_string(),
            "failures": fuzz_failures,
        },
        "adversarial": {
            "instances": adversarial.len().to_string(),
            "passed": adv_passed.to_string(),
            "reports": to_value(&adversarial),
        },
    });
    if let Some(path) = &cli.instance {
        let text = std::fs::read_to_string(path)?;
        let r = familycheck::verify_lemma(&FamilyInstance::from_text(&text)?)?;
        pass &= r.pass;
        results["instance"] = to_value(&r);
    }
    Ok(Outcome { results, pass })
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(map) => {
            for (k, v) in map {
                match v {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        render_text(item, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}- {}\n", scalar(item))),
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) if s.is_empty() => "(empty)".to_string(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Budget { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

/// Parse `args`, run one subcommand and write its report.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let cfg = match cli.config() {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return exit_code(&e);
        }
    };
    let start = Instant::now();
    let outcome = match cli.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .map_err(|e| Error::invalid(e.to_string()))
            .and_then(|pool| pool.install(|| execute(&cli, &cfg))),
        None => execute(&cli, &cfg),
    };
    let outcome = match outcome {
        Ok(o) => o,
        Err(e) => {
            let kind = if e.is_budget() { "budget exhausted" } else { "error" };
            let _ = writeln!(stderr, "{kind}: {e}");
            return exit_code(&e);
        }
    };
    let timings =
        if cli.timings { json!({ "wall_seconds": start.elapsed().as_secs_f64() }) } else { Value::Null };
    let report = json!({
        "config": to_value(&cfg),
        "results": outcome.results,
        "pass": outcome.pass,
        "timings": timings,
    });
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&report).expect("json") + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(&report, 0, &mut s);
            s
        }
    };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes()),
        None => stdout.write_all(body.as_bytes()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: cannot write report: {e}");
        return EXIT_USAGE;
    }
    if outcome.pass {
        EXIT_PASS
    } else {
        let _ = writeln!(stderr, "check failed: see \"pass\" flags in the report");
        EXIT_CHECK_FAILED
    }
}
