use serde_json::{json, Value};
use serre_core::gl2::{
    cartan_normalizer, inertia_shape_subgroup, nonsplit_cartan, run_dichotomy_trials, split_cartan,
    verify_ordinary_plus_part_claim, verify_supersingular_plus_part_claim, DichotomyReport, Gl2Error, InertiaKind,
    PlusPartReport,
};
use serre_core::irreducibility::IrreducibilityBound;

pub const DEFAULT_TRIALS: u64 = 10_000;

/// Run trials `0..trials` split over `jobs` threads; the merged report does
/// not depend on `jobs`.
pub fn dichotomy_parallel(p: u32, seed: u64, trials: u64, jobs: usize) -> Result<DichotomyReport, Gl2Error> {
    let jobs = (jobs.max(1) as u64).min(trials.max(1));
    if jobs == 1 {
        return run_dichotomy_trials(p, seed, 0..trials);
    }
    let step = trials.div_ceil(jobs);
    let ranges: Vec<_> = (0..jobs).map(|j| (j * step).min(trials)..((j + 1) * step).min(trials)).collect();
    let parts: Vec<Result<DichotomyReport, Gl2Error>> = std::thread::scope(|sc| {
        let handles: Vec<_> =
            ranges.into_iter().map(|r| sc.spawn(move || run_dichotomy_trials(p, seed, r))).collect();
        handles.into_iter().map(|h| h.join().expect("gl2 worker panicked")).collect()
    });
    let mut merged = DichotomyReport { p, ..Default::default() };
    for part in parts {
        merged = merged.merge(part?);
    }
    Ok(merged)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gl2Diag {
    pub p: u32,
    pub split_order: usize,
    pub nonsplit_order: usize,
    pub split_normalizer_index: usize,
    pub nonsplit_normalizer_index: usize,
    pub ordinary_inertia_order: usize,
    pub supersingular_inertia_order: usize,
    pub supersingular_inertia_projective_order: usize,
    pub ordinary_plus: PlusPartReport,
    pub supersingular_plus: PlusPartReport,
    pub dichotomy: DichotomyReport,
}

impl Gl2Diag {
    pub fn orders_ok(&self) -> bool {
        let p = self.p as usize;
        self.split_order == (p - 1) * (p - 1)
            && self.nonsplit_order == p * p - 1
            && self.split_normalizer_index == 2
            && self.nonsplit_normalizer_index == 2
            && self.ordinary_inertia_order == p - 1
            && self.supersingular_inertia_projective_order == p + 1
    }

    pub fn passed(&self) -> bool {
        self.orders_ok() && self.ordinary_plus.holds() && self.supersingular_plus.holds() && self.dichotomy.holds()
    }

    pub fn to_json(&self) -> Value {
        let plus = |r: &PlusPartReport| {
            json!({
                "holds": r.holds(),
                "exhaustive": r.exhaustive,
                "checked": r.checked,
                "counterexamples": r.counterexamples.len(),
            })
        };
        let d = &self.dichotomy;
        let examples: Vec<Value> = d
            .counterexamples
            .iter()
            .take(5)
            .map(|c| {
                json!({
                    "trial": c.trial,
                    "image": c.tag.as_str(),
                    "projective_order": c.projective_order,
                    "generators": c.generators.iter().map(|m| format!("{m}")).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "p": self.p,
            "passed": self.passed(),
            "split_cartan_order": self.split_order,
            "nonsplit_cartan_order": self.nonsplit_order,
            "split_normalizer_index": self.split_normalizer_index,
            "nonsplit_normalizer_index": self.nonsplit_normalizer_index,
            "ordinary_inertia_order": self.ordinary_inertia_order,
            "supersingular_inertia_order": self.supersingular_inertia_order,
            "supersingular_inertia_projective_order": self.supersingular_inertia_projective_order,
            "ordinary_plus_part": plus(&self.ordinary_plus),
            "supersingular_plus_part": plus(&self.supersingular_plus),
            "dichotomy": {
                "holds": d.holds(),
                "trials": d.trials,
                "has_order_p": d.has_order_p,
                "not_irreducible": d.not_irreducible,
                "no_long_projective_element": d.no_long_projective_element,
                "hypotheses_met": d.hypotheses_met,
                "in_cartan_normalizer": d.in_cartan_normalizer,
                "counterexamples": d.counterexamples.len(),
                "first_counterexamples": examples,
            },
        })
    }

    pub fn to_text(&self) -> String {
        let yes = |b: bool| if b { "holds" } else { "FAILS" };
        let d = &self.dichotomy;
        let mut s = format!(
            "p = {}: {}\n  |C_s| = {}, |C_ns| = {}, normalizer indices {} and {}\n  inertia: ordinary order {}, supersingular order {} (projective order {})\n  ordinary plus-part claim {} ({} checked, {} counterexamples)\n  supersingular plus-part claim {} ({} checked, {} counterexamples)\n  dichotomy {} over {} trials: {} met the hypotheses, {} inside a Cartan normalizer, {} counterexamples\n",
            self.p,
            if self.passed() { "PASS" } else { "FAIL" },
            self.split_order,
            self.nonsplit_order,
            self.split_normalizer_index,
            self.nonsplit_normalizer_index,
            self.ordinary_inertia_order,
            self.supersingular_inertia_order,
            self.supersingular_inertia_projective_order,
            yes(self.ordinary_plus.holds()),
            self.ordinary_plus.checked,
            self.ordinary_plus.counterexamples.len(),
            yes(self.supersingular_plus.holds()),
            self.supersingular_plus.checked,
            self.supersingular_plus.counterexamples.len(),
            yes(d.holds()),
            d.trials,
            d.hypotheses_met,
            d.in_cartan_normalizer,
            d.counterexamples.len(),
        );
        if let Some(c) = d.counterexamples.first() {
            s.push_str(&format!(
                "  first counterexample: trial {}, image {}, |PG| = {}\n",
                c.trial,
                c.tag.as_str(),
                c.projective_order
            ));
        }
        s
    }
}

pub fn diag_gl2(p: u32, seed: u64, trials: u64, jobs: usize) -> Result<Gl2Diag, Gl2Error> {
    let cs = split_cartan(p)?;
    let cns = nonsplit_cartan(p)?;
    let ns = cartan_normalizer(&cs);
    let nns = cartan_normalizer(&cns);
    let ord = inertia_shape_subgroup(p, InertiaKind::Ordinary)?;
    let ss = inertia_shape_subgroup(p, InertiaKind::Supersingular)?;
    Ok(Gl2Diag {
        p,
        split_order: cs.order(),
        nonsplit_order: cns.order(),
        split_normalizer_index: ns.order() / cs.order(),
        nonsplit_normalizer_index: nns.order() / cns.order(),
        ordinary_inertia_order: ord.order(),
        supersingular_inertia_order: ss.order(),
        supersingular_inertia_projective_order: ss.projective_order(),
        ordinary_plus: verify_ordinary_plus_part_claim(p, seed)?,
        supersingular_plus: verify_supersingular_plus_part_claim(p, seed)?,
        dichotomy: dichotomy_parallel(p, seed, trials, jobs)?,
    })
}

pub fn irreducibility_json(irr: &IrreducibilityBound) -> Value {
    json!({
        "B": irr.b.to_string(),
        "patterns": irr.patterns.iter().map(|p| json!({
            "pattern": p.pattern.to_string(),
            "A_s": p.a_s.to_string(),
        })).collect::<Vec<_>>(),
        "merel_momose": irr.merel_momose.to_string(),
        "B_largest_prime": irr.b_largest_prime.as_ref().map(|x| x.to_string()),
        "B_factorization_complete": irr.b_factorization_complete,
        "excluded_primes": irr.excluded_primes.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "threshold": irr.threshold.to_string(),
    })
}

pub fn irreducibility_text(irr: &IrreducibilityBound) -> String {
    let mut s = format!("  B                   {}\n", irr.b);
    for p in irr.patterns.iter() {
        s.push_str(&format!("  A_{:<17} {}\n", p.pattern.to_string(), p.a_s));
    }
    s.push_str(&format!("  merel_momose        {}\n", irr.merel_momose));
    match &irr.b_largest_prime {
        Some(q) => s.push_str(&format!(
            "  largest prime of B  {q}{}\n",
            if irr.b_factorization_complete { "" } else { " (cofactor left unfactored)" }
        )),
        None => s.push_str("  largest prime of B  none\n"),
    }
    let ex: Vec<String> = irr.excluded_primes.iter().map(|x| x.to_string()).collect();
    s.push_str(&format!("  excluded primes     {}\n", ex.join(", ")));
    s.push_str(&format!("  threshold           {}\n", irr.threshold));
    s
}
