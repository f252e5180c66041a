//! `verify`: run both lattice counters over a corpus, evaluate every matching
//! formula family, and line all values up against the printed tables. Nothing
//! is suppressed: agreements and mismatches are both recorded, and a mismatch
//! is a finding, not a failure.

use std::collections::BTreeSet;
use std::path::PathBuf;

use serde::Serialize;

use crate::cache::Cache;
use crate::count::validity_label;
use crate::CliError;
use fuzzcount_core::formulas::{cross_check, match_families, EvalOptions, Validity};
use fuzzcount_core::{
    canonicalize, fuzzy_subgroup_count, parse_spec, realize, CountMethod, Limits, ENGINE_VERSION,
};

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub corpus: Vec<String>,
    pub max_order: usize,
    pub cache_path: Option<PathBuf>,
    pub opts: EvalOptions,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            corpus: Vec::new(),
            max_order: 256,
            cache_path: None,
            opts: EvalOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOut {
    pub label: String,
    pub value: String,
    pub matches_formula: Option<bool>,
    pub matches_oracle: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOut {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub n: i64,
    pub formula_value: Option<String>,
    pub validity: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub formula_vs_oracle: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub fixtures: Vec<FixtureOut>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyEntry {
    pub spec: String,
    pub order: u128,
    /// Present when the lattice count was not attempted or not completed;
    /// formula checks still run for skipped entries.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skipped: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dp_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ie_ms: Option<u128>,
    pub checks: Vec<CheckOut>,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct Summary {
    pub groups: usize,
    pub counted: usize,
    pub skipped: usize,
    pub checks: usize,
    /// Value comparisons (formula/printed/oracle pairs) that agreed.
    pub agreements: usize,
    /// Value comparisons that disagreed. Findings, not failures.
    pub mismatches: usize,
    /// Checks whose source expression is garbled.
    pub garbled: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub engine_version: String,
    pub max_order: usize,
    pub entries: Vec<VerifyEntry>,
    pub summary: Summary,
}

pub fn run_verify(vopts: &VerifyOptions) -> Result<VerifyReport, CliError> {
    let limits = Limits {
        max_order: vopts.max_order,
        ..Limits::default()
    };
    let mut cache = match &vopts.cache_path {
        Some(p) => Cache::load(p)?,
        None => Cache::in_memory(),
    };

    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    let mut summary = Summary::default();

    for raw in &vopts.corpus {
        let expr = parse_spec(raw)?;
        let spec = canonicalize(&expr);
        if !seen.insert(spec.clone()) {
            continue; // duplicate after canonicalization
        }

        let mut entry = VerifyEntry {
            spec: spec.clone(),
            order: expr.total_order(),
            skipped: None,
            subgroup_count: None,
            h: None,
            method: None,
            lattice_ms: None,
            dp_ms: None,
            ie_ms: None,
            checks: Vec::new(),
        };

        // oracle value: cache, else both counters cross-checked
        let mut oracle = None;
        if let Some((h, subgroups)) = cache.get(&spec) {
            entry.subgroup_count = Some(subgroups);
            entry.h = Some(h.to_string());
            entry.method = Some("BOTH (cached)".to_string());
            oracle = Some(h);
        } else {
            match realize(&expr, &limits)
                .and_then(|g| fuzzy_subgroup_count(&g, CountMethod::Both, &limits))
            {
                Ok(out) => {
                    cache.put(&spec, &out.h, out.subgroup_count);
                    entry.subgroup_count = Some(out.subgroup_count);
                    entry.h = Some(out.h.to_string());
                    entry.method = Some("BOTH".to_string());
                    entry.lattice_ms = Some(out.lattice_ms);
                    entry.dp_ms = out.dp_ms;
                    entry.ie_ms = out.ie_ms;
                    oracle = Some(out.h);
                }
                Err(e) if e.is_internal() => return Err(e.into()),
                Err(e) => entry.skipped = Some(e.to_string()),
            }
        }

        for m in match_families(&expr) {
            let rec = cross_check(&m, oracle.as_ref(), &vopts.opts)?;
            summary.checks += 1;
            if rec.formula.validity == Validity::GarbledSource {
                summary.garbled += 1;
            }
            let mut tally = |flag: Option<bool>| match flag {
                Some(true) => summary.agreements += 1,
                Some(false) => summary.mismatches += 1,
                None => {}
            };
            tally(rec.formula_vs_oracle);
            for fx in &rec.fixtures {
                tally(fx.matches_formula);
                tally(fx.matches_oracle);
            }
            entry.checks.push(CheckOut {
                family: m.family.name().to_string(),
                p: m.p,
                n: m.n,
                formula_value: rec.formula.value.as_ref().map(|v| v.to_string()),
                validity: validity_label(rec.formula.validity).to_string(),
                notes: rec.formula.notes.clone(),
                formula_vs_oracle: rec.formula_vs_oracle,
                fixtures: rec
                    .fixtures
                    .iter()
                    .map(|fx| FixtureOut {
                        label: fx.label.to_string(),
                        value: fx.value.to_string(),
                        matches_formula: fx.matches_formula,
                        matches_oracle: fx.matches_oracle,
                    })
                    .collect(),
            });
        }

        summary.groups += 1;
        if entry.skipped.is_some() {
            summary.skipped += 1;
        } else {
            summary.counted += 1;
        }
        entries.push(entry);
    }

    cache.save()?;
    entries.sort_by(|a, b| a.spec.cmp(&b.spec));
    Ok(VerifyReport {
        engine_version: ENGINE_VERSION.to_string(),
        max_order: vopts.max_order,
        entries,
        summary,
    })
}

fn flag(word: &str, value: Option<bool>) -> String {
    match value {
        Some(true) => format!(" = {word}"),
        Some(false) => format!(" != {word}"),
        None => String::new(),
    }
}

pub fn render_verify_text(r: &VerifyReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "verify: {} groups, max order {}, engine {}\n\n",
        r.summary.groups, r.max_order, r.engine_version
    ));
    for e in &r.entries {
        match (&e.h, &e.skipped) {
            (Some(h), _) => {
                let timing = match (e.lattice_ms, e.dp_ms, e.ie_ms) {
                    (Some(l), Some(d), Some(i)) => {
                        format!(" ({l} ms lattice, {d} ms dp, {i} ms ie)")
                    }
                    _ => String::new(),
                };
                out.push_str(&format!(
                    "{}  order={} subgroups={} h={} [{}]{}\n",
                    e.spec,
                    e.order,
                    e.subgroup_count.unwrap_or(0),
                    h,
                    e.method.as_deref().unwrap_or("?"),
                    timing
                ));
            }
            (None, Some(reason)) => {
                out.push_str(&format!(
                    "{}  order={} SKIPPED: {}\n",
                    e.spec, e.order, reason
                ));
            }
            (None, None) => out.push_str(&format!("{}  order={} (no count)\n", e.spec, e.order)),
        }
        for c in &e.checks {
            let params = match c.p {
                Some(p) => format!("p={p}, n={}", c.n),
                None => format!("n={}", c.n),
            };
            let value = c.formula_value.as_deref().unwrap_or("(no value)");
            out.push_str(&format!(
                "    {}({params}): {} [{}]{}\n",
                c.family,
                value,
                c.validity,
                flag("oracle", c.formula_vs_oracle)
            ));
            for fx in &c.fixtures {
                out.push_str(&format!(
                    "        {} = {}{}{}\n",
                    fx.label,
                    fx.value,
                    flag("formula", fx.matches_formula),
                    flag("oracle", fx.matches_oracle)
                ));
            }
            for note in &c.notes {
                out.push_str(&format!("        note: {note}\n"));
            }
        }
    }
    let s = &r.summary;
    out.push_str(&format!(
        "\nsummary: {} groups ({} counted, {} skipped), {} family checks, \
         {} agreements, {} mismatches, {} garbled\n",
        s.groups, s.counted, s.skipped, s.checks, s.agreements, s.mismatches, s.garbled
    ));
    if s.mismatches > 0 {
        out.push_str("mismatches are findings about the printed values, not engine failures\n");
    }
    out
}

/// Convenience used by tests: verify a corpus with default options.
pub fn verify_specs(specs: &[&str], max_order: usize) -> Result<VerifyReport, CliError> {
    run_verify(&VerifyOptions {
        corpus: specs.iter().map(|s| s.to_string()).collect(),
        max_order,
        ..VerifyOptions::default()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_is_an_empty_report() {
        let r = run_verify(&VerifyOptions::default()).unwrap();
        assert!(r.entries.is_empty());
        assert_eq!(r.summary.groups, 0);
    }

    #[test]
    fn entries_come_back_sorted_and_deduplicated() {
        let r = verify_specs(&["C8 x C2", "C2 x C2", "c2xc8", "C2 x C2"], 64).unwrap();
        let specs: Vec<&str> = r.entries.iter().map(|e| e.spec.as_str()).collect();
        assert_eq!(specs, vec!["C2 x C2", "C8 x C2"]);
        assert_eq!(r.summary.groups, 2);
    }

    #[test]
    fn oversized_groups_are_skipped_but_still_checked() {
        let r = verify_specs(&["C4 x C32"], 64).unwrap();
        let e = &r.entries[0];
        assert!(e.skipped.is_some());
        assert!(e.h.is_none());
        // the Z4 chain formula still evaluates, against printed values only
        assert_eq!(e.checks.len(), 1);
        assert_eq!(e.checks[0].family, "Z4_CHAIN");
        assert_eq!(e.checks[0].formula_value.as_deref(), Some("1536"));
        assert_eq!(e.checks[0].formula_vs_oracle, None);
        assert_eq!(e.checks[0].fixtures[0].value, "1536");
        assert_eq!(e.checks[0].fixtures[0].matches_formula, Some(true));
        assert_eq!(r.summary.skipped, 1);
    }

    #[test]
    fn mismatches_are_counted_not_fatal() {
        let r = verify_specs(&["C4 x C4"], 64).unwrap();
        let c = &r.entries[0].checks[0];
        assert_eq!(c.family, "Z4_CHAIN");
        assert_eq!(c.formula_value.as_deref(), Some("48"));
        assert_eq!(c.formula_vs_oracle, Some(false));
        assert_eq!(r.summary.mismatches, 1);
    }
}
