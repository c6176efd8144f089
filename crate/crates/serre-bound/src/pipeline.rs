use std::path::{Path, PathBuf};

use serre_core::elimination::{BoundReport, ElimError, FormVerdict, Sieve};
use serre_core::forms::FormDataset;
use serre_core::levels::level_data;
use serre_core::numfield::NumberField;

use crate::config::{resolve_s, FieldSpec};
use crate::dataset;
use crate::diag::{diag_gl2, Gl2Diag, DEFAULT_TRIALS};
use crate::error::{Error, Result};
use crate::fetch::{fetch_remote, BASE_URL_ENV};
use crate::report::{render_json, render_text, report_json, RunMeta};

pub const DEFAULT_SEED: u64 = 2024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormsSource {
    None,
    Path(PathBuf),
    Remote { base_url: String },
}

impl FormsSource {
    /// `none`, `remote` (base URL from `env_base`), an `http(s)://` base URL,
    /// or a file path. An absent flag means `remote`.
    pub fn parse(flag: Option<&str>, env_base: Option<&str>) -> Result<Self> {
        let remote = || match env_base {
            Some(b) if !b.is_empty() => Ok(FormsSource::Remote { base_url: b.to_string() }),
            _ => Err(Error::Usage(format!("no forms source: pass --forms <path|url|none> or set {BASE_URL_ENV}"))),
        };
        match flag {
            None | Some("remote") => remote(),
            Some("none") => Ok(FormsSource::None),
            Some(u) if u.starts_with("http://") || u.starts_with("https://") => {
                Ok(FormsSource::Remote { base_url: u.to_string() })
            }
            Some(p) => Ok(FormsSource::Path(PathBuf::from(p))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub field: FieldSpec,
    pub s: Vec<String>,
    pub forms: FormsSource,
    pub cache_dir: PathBuf,
    pub jobs: usize,
    pub seed: u64,
    pub gl2_primes: Vec<u32>,
    pub gl2_trials: u64,
}

impl RunConfig {
    pub fn new(field: FieldSpec, forms: FormsSource) -> Self {
        RunConfig {
            field,
            s: Vec::new(),
            forms,
            cache_dir: PathBuf::from(".serre-cache"),
            jobs: 1,
            seed: DEFAULT_SEED,
            gl2_primes: Vec::new(),
            gl2_trials: DEFAULT_TRIALS,
        }
    }
}

pub struct RunOutput {
    pub report: BoundReport,
    pub meta: RunMeta,
    pub json: String,
    pub text: String,
}

impl RunOutput {
    /// 0 unconditional, 2 conditional.
    pub fn exit_code(&self) -> u8 {
        if self.report.conditional {
            2
        } else {
            0
        }
    }

    pub fn write(&self, out_dir: &Path) -> Result<()> {
        std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
        for (name, body) in [("report.json", &self.json), ("report.txt", &self.text)] {
            let p = out_dir.join(name);
            std::fs::write(&p, body).map_err(|e| Error::io(&p, e))?;
        }
        Ok(())
    }
}

/// Per-form analysis over `jobs` threads, returned in form order.
pub fn analyze_parallel(sieve: &Sieve<'_>, jobs: usize) -> std::result::Result<Vec<FormVerdict>, ElimError> {
    let forms: Vec<_> = sieve.forms().collect();
    if jobs <= 1 || forms.len() < 2 {
        return sieve.analyze_all();
    }
    let chunk = forms.len().div_ceil(jobs);
    std::thread::scope(|sc| {
        let handles: Vec<_> = forms
            .chunks(chunk)
            .map(|c| sc.spawn(move || c.iter().map(|f| sieve.analyze(f)).collect::<std::result::Result<Vec<_>, _>>()))
            .collect();
        let mut out = Vec::with_capacity(forms.len());
        for h in handles {
            out.extend(h.join().expect("sieve worker panicked")?);
        }
        Ok(out)
    })
}

fn acquire_forms(
    k: &NumberField,
    source: &FormsSource,
    level_norm: &num_bigint::BigUint,
    cache: &Path,
    meta: &mut RunMeta,
) -> Result<FormDataset> {
    match source {
        FormsSource::None => {
            meta.forms_source = "none".into();
            Ok(FormDataset::empty(k.label()))
        }
        FormsSource::Path(p) => {
            let loaded = dataset::load_dataset(k, p)?;
            meta.forms_source = "file".into();
            meta.forms_sha256 = Some(loaded.sha256);
            Ok(loaded.dataset)
        }
        FormsSource::Remote { base_url } => {
            let f = fetch_remote(k, base_url, level_norm, cache)?;
            meta.forms_source = "remote".into();
            meta.forms_url = Some(f.url);
            meta.forms_sha256 = Some(f.sha256);
            Ok(f.dataset)
        }
    }
}

pub fn run(cfg: &RunConfig) -> Result<RunOutput> {
    let k = cfg.field.build()?;
    let s = resolve_s(&k, &cfg.s)?;
    let levels = level_data(&k, &s)?;
    let mut meta = RunMeta { seed: cfg.seed, ..Default::default() };
    let ds = acquire_forms(&k, &cfg.forms, &levels.m_norm, &cfg.cache_dir, &mut meta)?;
    let sieve = Sieve::new(&k, &s, &ds)?;
    let verdicts = analyze_parallel(&sieve, cfg.jobs)?;
    let report = sieve.assemble(verdicts);
    for &p in cfg.gl2_primes.iter() {
        meta.gl2.push(diag_gl2(p, cfg.seed, cfg.gl2_trials, cfg.jobs)?);
    }
    let json = render_json(&report_json(&report, &meta));
    let text = render_text(&report, &meta);
    Ok(RunOutput { report, meta, json, text })
}

/// `diag-gl2` over several primes.
pub fn run_gl2(primes: &[u32], seed: u64, trials: u64, jobs: usize) -> Result<Vec<Gl2Diag>> {
    primes.iter().map(|&p| Ok(diag_gl2(p, seed, trials, jobs)?)).collect()
}
