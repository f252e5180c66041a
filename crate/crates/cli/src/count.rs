//! `count`: h(G) for a single spec, by lattice counting or by formula lookup.

use serde::Serialize;

use crate::CliError;
use fuzzcount_core::formulas::{cross_check, match_families, EvalOptions, Validity};
use fuzzcount_core::{
    canonicalize, fuzzy_subgroup_count, parse_spec, realize, CountMethod, Error, Limits,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodChoice {
    Dp,
    Ie,
    Both,
    Formula,
}

impl MethodChoice {
    fn label(self) -> &'static str {
        match self {
            MethodChoice::Dp => "DP",
            MethodChoice::Ie => "IE",
            MethodChoice::Both => "BOTH",
            MethodChoice::Formula => "FORMULA",
        }
    }
}

/// One formula family evaluated at the spec's parameters.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyLine {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub n: i64,
    pub value: Option<String>,
    pub validity: String,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub spec: String,
    pub order: u128,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subgroup_count: Option<usize>,
    /// Decimal digits, or None when no evaluated formula yields a value.
    pub h: Option<String>,
    pub method: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lattice_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dp_ms: Option<u128>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ie_ms: Option<u128>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilyLine>,
}

pub fn validity_label(v: Validity) -> &'static str {
    match v {
        Validity::Ok => "OK",
        Validity::OutOfRange => "OUT_OF_RANGE",
        Validity::GarbledSource => "GARBLED_SOURCE",
    }
}

pub fn run_count(
    spec: &str,
    method: MethodChoice,
    max_order: usize,
    opts: &EvalOptions,
) -> Result<CountReport, CliError> {
    let expr = parse_spec(spec)?;
    let canonical = canonicalize(&expr);
    let limits = Limits {
        max_order,
        ..Limits::default()
    };

    if method == MethodChoice::Formula {
        let matches = match_families(&expr);
        if matches.is_empty() {
            return Err(Error::NoMatchingFamily {
                spec: canonical,
                known: fuzzcount_core::formulas::list_families()
                    .iter()
                    .map(|f| f.name)
                    .collect::<Vec<_>>()
                    .join(", "),
            }
            .into());
        }
        let mut families = Vec::new();
        let mut h: Option<String> = None;
        let mut h_ok = false;
        for m in &matches {
            let rec = cross_check(m, None, opts)?;
            let value = rec.formula.value.as_ref().map(|v| v.to_string());
            let ok = rec.formula.validity == Validity::Ok;
            // prefer the first in-range value; fall back to any value
            if value.is_some() && (h.is_none() || (ok && !h_ok)) {
                h = value.clone();
                h_ok = ok;
            }
            families.push(FamilyLine {
                family: m.family.name().to_string(),
                p: m.p,
                n: m.n,
                value,
                validity: validity_label(rec.formula.validity).to_string(),
                notes: rec.formula.notes,
            });
        }
        return Ok(CountReport {
            spec: canonical,
            order: expr.total_order(),
            subgroup_count: None,
            h,
            method: method.label().to_string(),
            lattice_ms: None,
            dp_ms: None,
            ie_ms: None,
            families,
        });
    }

    let core_method = match method {
        MethodChoice::Dp => CountMethod::Dp,
        MethodChoice::Ie => CountMethod::Ie,
        _ => CountMethod::Both,
    };
    let g = realize(&expr, &limits)?;
    let out = fuzzy_subgroup_count(&g, core_method, &limits)?;
    Ok(CountReport {
        spec: out.spec,
        order: out.order as u128,
        subgroup_count: Some(out.subgroup_count),
        h: Some(out.h.to_string()),
        method: method.label().to_string(),
        lattice_ms: Some(out.lattice_ms),
        dp_ms: out.dp_ms,
        ie_ms: out.ie_ms,
        families: Vec::new(),
    })
}

pub fn render_count_text(r: &CountReport) -> String {
    let mut out = String::new();
    out.push_str(&format!("spec:      {}\n", r.spec));
    out.push_str(&format!("order:     {}\n", r.order));
    if let Some(n) = r.subgroup_count {
        out.push_str(&format!("subgroups: {n}\n"));
    }
    match &r.h {
        Some(h) => out.push_str(&format!("h:         {h}\n")),
        None => out.push_str("h:         (no value; see family notes)\n"),
    }
    let mut timing = String::new();
    if let Some(ms) = r.lattice_ms {
        timing.push_str(&format!(" lattice {ms} ms"));
    }
    if let Some(ms) = r.dp_ms {
        timing.push_str(&format!(", dp {ms} ms"));
    }
    if let Some(ms) = r.ie_ms {
        timing.push_str(&format!(", ie {ms} ms"));
    }
    out.push_str(&format!("method:    {}{}\n", r.method, timing));
    if !r.families.is_empty() {
        out.push_str("families:\n");
        for f in &r.families {
            let params = match f.p {
                Some(p) => format!("p={p}, n={}", f.n),
                None => format!("n={}", f.n),
            };
            let value = f.value.as_deref().unwrap_or("(no value)");
            out.push_str(&format!(
                "  {}({params}): {} [{}]\n",
                f.family, value, f.validity
            ));
            for note in &f.notes {
                out.push_str(&format!("      note: {note}\n"));
            }
        }
    }
    out
}
