use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use serre_bound::config::{field_json, resolve_s, split_prime_specs, FieldSpec};
use serre_bound::dataset;
use serre_bound::diag::{irreducibility_json, irreducibility_text, DEFAULT_TRIALS};
use serre_bound::fetch::{fetch_remote, BASE_URL_ENV};
use serre_bound::pipeline::{self, FormsSource, RunConfig, DEFAULT_SEED};
use serre_bound::report::render_json;
use serre_bound::{Error, Result};
use serre_core::irreducibility::irreducibility_threshold;
use serre_core::levels::level_data;

#[derive(Parser)]
#[command(name = "serre-bound", version, about = "Effective surjectivity constants for mod-p Galois images")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct FieldArgs {
    /// Real quadratic field Q(sqrt m).
    #[arg(long, allow_hyphen_values = true)]
    quadratic: Option<i64>,
    /// Field description document (JSON).
    #[arg(long)]
    field: Option<PathBuf>,
}

impl FieldArgs {
    fn spec(&self) -> FieldSpec {
        match (&self.quadratic, &self.field) {
            (Some(m), _) => FieldSpec::Quadratic(*m),
            (None, Some(p)) => FieldSpec::Config(p.clone()),
            (None, None) => unreachable!("clap enforces the field group"),
        }
    }
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Primes of S: q, q.i, q.N.i or an HNF like [[2,0],[0,2]], comma separated.
    #[arg(long = "S", value_name = "SPEC,...", default_value = "")]
    s: String,
    /// Dataset path, base URL, `remote` or `none`.
    #[arg(long)]
    forms: Option<String>,
    #[arg(long, default_value = ".serre-cache")]
    cache: PathBuf,
    /// Directory for report.json and report.txt.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Primes for the gl2 checks included in the report.
    #[arg(long, value_delimiter = ',')]
    gl2_primes: Vec<u32>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    gl2_trials: u64,
    /// Print the JSON report instead of the text report.
    #[arg(long)]
    json: bool,
    #[arg(long, env = BASE_URL_ENV, hide_env_values = true)]
    base_url: Option<String>,
}

#[derive(Args)]
struct DiagGl2Args {
    #[arg(long, value_delimiter = ',', default_value = "7,11,13")]
    primes: Vec<u32>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u64,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DiagBoundArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long = "S", value_name = "SPEC,...", default_value = "")]
    s: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FetchArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Level norm bound; defaults to the norm of the additive level of S.
    #[arg(long)]
    level_norm_le: Option<BigUint>,
    #[arg(long = "S", value_name = "SPEC,...", default_value = "")]
    s: String,
    #[arg(long, default_value = ".serre-cache")]
    cache: PathBuf,
    #[arg(long, env = BASE_URL_ENV, hide_env_values = true)]
    base_url: Option<String>,
}

#[derive(Args)]
struct ValidateArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Dataset file to validate against the field.
    #[arg(long)]
    forms: Option<PathBuf>,
    /// Print the canonical field description, or the canonical dataset.
    #[arg(long)]
    canonical: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute C_{K,S} and the surviving CM forms.
    Run(RunArgs),
    /// Exhaustive and randomized checks of the GL2(F_p) group theory.
    DiagGl2(DiagGl2Args),
    /// B, the pattern table and the irreducibility threshold.
    DiagBound(DiagBoundArgs),
    /// Download an eigenform table into the cache.
    FetchForms(FetchArgs),
    /// Check a field description and optionally a dataset.
    ValidateConfig(ValidateArgs),
}

fn run(a: RunArgs) -> Result<u8> {
    let forms = FormsSource::parse(a.forms.as_deref(), a.base_url.as_deref())?;
    let cfg = RunConfig {
        field: a.field.spec(),
        s: split_prime_specs(&a.s),
        forms,
        cache_dir: a.cache,
        jobs: a.jobs.max(1),
        seed: a.seed,
        gl2_primes: a.gl2_primes,
        gl2_trials: a.gl2_trials,
    };
    let out = pipeline::run(&cfg)?;
    if let Some(dir) = &a.out {
        out.write(dir)?;
    }
    print!("{}", if a.json { &out.json } else { &out.text });
    Ok(out.exit_code())
}

fn diag_gl2(a: DiagGl2Args) -> Result<u8> {
    let reports = pipeline::run_gl2(&a.primes, a.seed, a.trials, a.jobs.max(1))?;
    if a.json {
        let v = serde_json::Value::Array(reports.iter().map(|r| r.to_json()).collect());
        print!("{}", render_json(&v));
    } else {
        for r in reports.iter() {
            print!("{}", r.to_text());
        }
    }
    Ok(if reports.iter().all(|r| r.passed()) { 0 } else { 1 })
}

fn diag_bound(a: DiagBoundArgs) -> Result<u8> {
    let k = a.field.spec().build()?;
    let s = resolve_s(&k, &split_prime_specs(&a.s))?;
    let irr = irreducibility_threshold(&k, &s)?;
    if a.json {
        let mut v = irreducibility_json(&irr);
        v["field"] = serde_json::json!(k.label());
        print!("{}", render_json(&v));
    } else {
        println!("field {}", k.label());
        print!("{}", irreducibility_text(&irr));
    }
    Ok(0)
}

fn fetch_forms(a: FetchArgs) -> Result<u8> {
    let base = a.base_url.ok_or_else(|| Error::Usage(format!("set {BASE_URL_ENV} or pass --base-url")))?;
    let k = a.field.spec().build()?;
    let bound = match a.level_norm_le {
        Some(n) => n,
        None => level_data(&k, &resolve_s(&k, &split_prime_specs(&a.s))?)?.m_norm,
    };
    let f = fetch_remote(&k, &base, &bound, &a.cache)?;
    println!(
        "{} form(s) for {} with level norm <= {bound}: {} ({} network request(s), sha256 {})",
        f.dataset.records.len(),
        k.label(),
        f.cache_path.display(),
        f.network_requests,
        f.sha256
    );
    Ok(0)
}

fn validate_config(a: ValidateArgs) -> Result<u8> {
    let k = a.field.spec().build()?;
    match &a.forms {
        Some(path) => {
            let loaded = dataset::load_dataset(&k, path)?;
            if a.canonical {
                print!("{}", dataset::serialize(&k, &loaded.dataset));
            } else {
                println!(
                    "dataset {}: {} form(s) over {}, coverage {} prime(s), sha256 {}",
                    path.display(),
                    loaded.dataset.records.len(),
                    k.label(),
                    loaded.dataset.coverage().len(),
                    loaded.sha256
                );
            }
        }
        None if a.canonical => print!("{}", field_json(&k)),
        None => println!(
            "field {}: degree {}, discriminant {}, class number {}, {} unit(s), {} configured prime(s)",
            k.label(),
            k.degree(),
            k.disc(),
            k.class_number(),
            k.units().len(),
            k.configured_primes().len()
        ),
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.cmd {
        Cmd::Run(a) => run(a),
        Cmd::DiagGl2(a) => diag_gl2(a),
        Cmd::DiagBound(a) => diag_bound(a),
        Cmd::FetchForms(a) => fetch_forms(a),
        Cmd::ValidateConfig(a) => validate_config(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
