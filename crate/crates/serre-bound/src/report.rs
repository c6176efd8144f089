//! JSON and text renderings of a [`BoundReport`]. Big integers are decimal
//! strings in JSON.

use serde_json::{json, Value};
use serre_core::elimination::{BoundReport, CharacterCheck, ConstantSource, FormVerdict, Outcome};
use serre_core::numfield::AlgebraicInteger;

use crate::config::coords_string;
use crate::diag::{irreducibility_json, irreducibility_text, Gl2Diag};

/// Run inputs that are not part of the sieve result.
#[derive(Clone, Debug, Default)]
pub struct RunMeta {
    pub seed: u64,
    /// `none`, `file` or `remote`.
    pub forms_source: String,
    pub forms_url: Option<String>,
    pub forms_sha256: Option<String>,
    pub gl2: Vec<Gl2Diag>,
}

fn coords(a: &AlgebraicInteger) -> Value {
    Value::Array(a.0.iter().map(|c| Value::String(c.to_string())).collect())
}

fn matrix(m: &[Vec<num_bigint::BigInt>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|c| Value::String(c.to_string())).collect())).collect())
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn source_str(c: &ConstantSource) -> String {
    match c {
        ConstantSource::IrreducibilityThreshold => "irreducibility_threshold".into(),
        ConstantSource::Form(l) => format!("form:{l}"),
    }
}

fn verdict_json(v: &FormVerdict) -> Value {
    let mut o = json!({
        "label": v.label,
        "outcome": v.outcome.as_str(),
        "contribution": v.contribution.to_string(),
        "warnings": v.warnings,
    });
    if let Outcome::SurvivesCm { character } = &v.outcome {
        o["character"] = json!(character);
    }
    if let Some(w) = &v.nonrational {
        o["nonrational_witness"] = json!({
            "prime": w.prime.to_string(),
            "norm": w.norm.to_string(),
            "box_bound": w.box_bound.to_string(),
            "good_factors": strings(&w.good_factors),
            "good_product": w.good_product.to_string(),
            "mult_factors": strings(&w.mult_factors),
            "mult_product": w.mult_product.to_string(),
        });
    }
    if !v.twists.is_empty() {
        let twists: Vec<Value> = v
            .twists
            .iter()
            .map(|(label, c)| match c {
                CharacterCheck::Mismatch(w) => json!({
                    "character": label,
                    "check": "mismatch",
                    "prime": w.prime.to_string(),
                    "norm": w.norm.to_string(),
                    "a": w.a.to_string(),
                    "good": w.good.to_string(),
                    "mult": w.mult.to_string(),
                    "contribution": w.contribution.to_string(),
                }),
                CharacterCheck::CmConsistent { checked, max_norm } => json!({
                    "character": label,
                    "check": "cm_consistent",
                    "checked_primes": checked.to_string(),
                    "max_norm": max_norm.to_string(),
                }),
                CharacterCheck::Exhausted => json!({ "character": label, "check": "exhausted" }),
            })
            .collect();
        o["twists"] = Value::Array(twists);
    }
    o
}

pub fn report_json(r: &BoundReport, meta: &RunMeta) -> Value {
    let ch = &r.characters;
    let mut out = json!({
        "field": {
            "label": r.field_label,
            "degree": r.degree.to_string(),
            "class_number": r.class_number.to_string(),
        },
        "S": strings(&r.s),
        "seed": meta.seed.to_string(),
        "irreducibility": irreducibility_json(&r.irreducibility),
        "levels": {
            "M_hnf": matrix(r.levels.m.hnf()),
            "M_norm": r.levels.m_norm.to_string(),
            "character_bound_hnf": matrix(r.levels.character_bound.hnf()),
            "character_bound_norm": r.levels.character_bound_norm.to_string(),
        },
        "characters": {
            "generators": ch.generators.iter().map(|(l, d)| json!({"label": l, "delta": coords(d)})).collect::<Vec<_>>(),
            "characters": ch.characters.iter().map(|c| json!({"label": c.label, "delta": coords(&c.delta)})).collect::<Vec<_>>(),
            "pruned": ch.pruned.iter().map(|c| json!({
                "label": c.label,
                "delta": coords(&c.delta),
                "witness": c.witness.to_string(),
                "valuation": c.valuation.to_string(),
            })).collect::<Vec<_>>(),
            "duplicates": ch.duplicates.iter().map(|(a, b)| json!({"label": a, "equals": b})).collect::<Vec<_>>(),
        },
        "forms": {
            "source": meta.forms_source,
            "url": meta.forms_url,
            "sha256": meta.forms_sha256,
            "analyzed": r.verdicts.len().to_string(),
            "coverage": strings(&r.coverage),
            "filtered": r.filtered.iter().map(|f| json!({"label": f.label, "level_norm": f.level_norm.to_string()})).collect::<Vec<_>>(),
        },
        "verdicts": r.verdicts.iter().map(verdict_json).collect::<Vec<_>>(),
        "C": r.constant.to_string(),
        "C_source": source_str(&r.constant_source),
        "status": if r.conditional { "CONDITIONAL" } else { "UNCONDITIONAL" },
        "missing_data": r.missing_data,
        "survivors": r.survivors.iter().map(|s| json!({"label": s.label, "character": s.character})).collect::<Vec<_>>(),
        "notices": r.notices,
    });
    if !meta.gl2.is_empty() {
        out["gl2_checks"] = Value::Array(meta.gl2.iter().map(|g| g.to_json()).collect());
    }
    out
}

pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

pub fn render_text(r: &BoundReport, meta: &RunMeta) -> String {
    let mut s = String::new();
    s.push_str(&format!("field      {} (degree {}, class number {})\n", r.field_label, r.degree, r.class_number));
    let sk = strings(&r.s);
    s.push_str(&format!("S          {}\n", if sk.is_empty() { "(empty)".to_string() } else { sk.join(", ") }));
    s.push_str(&format!("seed       {}\n", meta.seed));
    s.push_str(&format!("status     {}\n", if r.conditional { "CONDITIONAL" } else { "UNCONDITIONAL" }));
    s.push_str(&format!("C_{{K,S}}    {} (from {})\n", r.constant, source_str(&r.constant_source)));

    s.push_str("\nirreducibility\n");
    s.push_str(&irreducibility_text(&r.irreducibility));

    s.push_str("\nlevels\n");
    s.push_str(&format!("  M norm              {}\n", r.levels.m_norm));
    s.push_str(&format!("  character bound     {}\n", r.levels.character_bound_norm));

    let ch = &r.characters;
    s.push_str(&format!("\ncharacters ({})\n", ch.characters.len()));
    let w = ch.characters.iter().map(|c| c.label.len()).max().unwrap_or(0);
    for c in ch.characters.iter() {
        s.push_str(&format!("  {:<w$}  delta = {}\n", c.label, coords_string(&c.delta.0)));
    }
    for c in ch.pruned.iter() {
        s.push_str(&format!("  pruned {} (valuation {} at {})\n", c.label, c.valuation, c.witness));
    }
    for (a, b) in ch.duplicates.iter() {
        s.push_str(&format!("  duplicate {a} = {b}\n"));
    }

    s.push_str("\nforms\n");
    s.push_str(&format!("  source              {}\n", meta.forms_source));
    if let Some(u) = &meta.forms_url {
        s.push_str(&format!("  url                 {u}\n"));
    }
    if let Some(h) = &meta.forms_sha256 {
        s.push_str(&format!("  sha256              {h}\n"));
    }
    s.push_str(&format!("  analyzed            {}\n", r.verdicts.len()));
    let cov = strings(&r.coverage);
    s.push_str(&format!("  coverage            {}\n", if cov.is_empty() { "-".to_string() } else { cov.join(", ") }));
    for f in r.filtered.iter() {
        s.push_str(&format!("  filtered {} (level norm {})\n", f.label, f.level_norm));
    }

    if !r.verdicts.is_empty() {
        s.push_str("\nverdicts\n");
        for v in r.verdicts.iter() {
            s.push_str(&format!("  {:<20} {:<28} {}\n", v.label, v.outcome.as_str(), v.contribution));
            if let Some(w) = &v.nonrational {
                s.push_str(&format!(
                    "    at {} (norm {}, |t| <= {}): good {}, mult {}\n",
                    w.prime, w.norm, w.box_bound, w.good_product, w.mult_product
                ));
            }
            for (label, c) in v.twists.iter() {
                match c {
                    CharacterCheck::Mismatch(w) => s.push_str(&format!(
                        "    {label}: mismatch at {} (norm {}, a = {}): {}\n",
                        w.prime, w.norm, w.a, w.contribution
                    )),
                    CharacterCheck::CmConsistent { checked, max_norm } => s.push_str(&format!(
                        "    {label}: CM-consistent over {checked} primes up to norm {max_norm}\n"
                    )),
                    CharacterCheck::Exhausted => s.push_str(&format!("    {label}: no usable prime\n")),
                }
            }
            for w in v.warnings.iter() {
                s.push_str(&format!("    warning: {w}\n"));
            }
        }
    }

    if !r.survivors.is_empty() {
        s.push_str("\nsurvivors\n");
        for sv in r.survivors.iter() {
            s.push_str(&format!("  {} (character {})\n", sv.label, sv.character));
        }
    }
    if !r.missing_data.is_empty() {
        s.push_str("\nmissing data\n");
        for m in r.missing_data.iter() {
            s.push_str(&format!("  {m}\n"));
        }
    }
    if !meta.gl2.is_empty() {
        s.push_str("\ngl2 checks\n");
        for g in meta.gl2.iter() {
            s.push_str(&g.to_text());
        }
    }
    s.push_str("\nnotices\n");
    for n in r.notices.iter() {
        s.push_str(&format!("  {n}\n"));
    }
    s
}
