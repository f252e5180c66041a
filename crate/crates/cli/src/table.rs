//! `table`: one formula family evaluated over a parameter range, lined up
//! against the printed values and (optionally) the lattice oracle.

use serde::Serialize;

use crate::count::validity_label;
use crate::CliError;
use fuzzcount_core::formulas::{
    cross_check, instance_spec, EvalOptions, FamilyId, FamilyMatch, Validity,
};
use fuzzcount_core::{fuzzy_subgroup_count, realize_spec, CountMethod, Limits};

#[derive(Debug, Clone)]
pub struct TableOptions {
    pub family: FamilyId,
    pub p: Option<u64>,
    pub lo: i64,
    pub hi: i64,
    pub with_oracle: bool,
    pub max_order: usize,
    pub opts: EvalOptions,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableRow {
    pub param: i64,
    /// Spec of the group this row describes, when the parameters name one.
    pub spec: Option<String>,
    pub formula_value: Option<String>,
    pub validity: String,
    pub notes: Vec<String>,
    /// label -> printed value, in fixture order.
    pub fixtures: Vec<(String, String)>,
    pub oracle_value: Option<String>,
    /// Why the oracle column is empty despite --with-oracle.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_skipped: Option<String>,
    pub verdict: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TableOut {
    pub family: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub rows: Vec<TableRow>,
}

pub fn run_table(topts: &TableOptions) -> Result<TableOut, CliError> {
    let limits = Limits {
        max_order: topts.max_order,
        ..Limits::default()
    };
    let mut rows = Vec::new();
    for n in topts.lo..=topts.hi {
        let m = FamilyMatch {
            family: topts.family,
            p: topts.p,
            n,
        };
        let spec = instance_spec(&m);

        let mut oracle = None;
        let mut oracle_skipped = None;
        if topts.with_oracle {
            match &spec {
                Some(s) => match realize_spec(s, &limits)
                    .and_then(|g| fuzzy_subgroup_count(&g, CountMethod::Both, &limits))
                {
                    Ok(out) => oracle = Some(out.h),
                    Err(e) if e.is_internal() => return Err(e.into()),
                    Err(e) => oracle_skipped = Some(e.to_string()),
                },
                None => oracle_skipped = Some("parameters name no group".to_string()),
            }
        }

        let rec = cross_check(&m, oracle.as_ref(), &topts.opts)?;

        let mut verdict: Vec<String> = Vec::new();
        match rec.formula.validity {
            Validity::Ok => {}
            Validity::OutOfRange => verdict.push("out_of_range".into()),
            Validity::GarbledSource => verdict.push("garbled_source".into()),
        }
        for fx in &rec.fixtures {
            match fx.matches_formula {
                Some(true) => verdict.push("formula=printed".into()),
                Some(false) => verdict.push("FORMULA!=PRINTED".into()),
                None => {}
            }
            match fx.matches_oracle {
                Some(true) => verdict.push("printed=oracle".into()),
                Some(false) => verdict.push("PRINTED!=ORACLE".into()),
                None => {}
            }
        }
        match rec.formula_vs_oracle {
            Some(true) => verdict.push("formula=oracle".into()),
            Some(false) => verdict.push("FORMULA!=ORACLE".into()),
            None => {}
        }
        let verdict = if verdict.is_empty() {
            "-".to_string()
        } else {
            verdict.join(";")
        };

        rows.push(TableRow {
            param: n,
            spec,
            formula_value: rec.formula.value.as_ref().map(|v| v.to_string()),
            validity: validity_label(rec.formula.validity).to_string(),
            notes: rec.formula.notes.clone(),
            fixtures: rec
                .fixtures
                .iter()
                .map(|fx| (fx.label.to_string(), fx.value.to_string()))
                .collect(),
            oracle_value: oracle.map(|v| v.to_string()),
            oracle_skipped,
            verdict,
        });
    }
    Ok(TableOut {
        family: topts.family.name().to_string(),
        p: topts.p,
        rows,
    })
}

/// CSV with one row per parameter value. Cells never contain commas; multiple
/// printed values for one row are joined with ';'.
pub fn render_table_csv(t: &TableOut) -> String {
    let mut out = String::from("param,formula_value,fixture_value,oracle_value,verdict\n");
    for r in &t.rows {
        let formula = match (&r.formula_value, r.validity.as_str()) {
            (Some(v), "OK") => v.clone(),
            (Some(v), flag) => format!("{v} [{flag}]"),
            (None, flag) => format!("[{flag}]"),
        };
        let fixture = if r.fixtures.is_empty() {
            "-".to_string()
        } else {
            r.fixtures
                .iter()
                .map(|(_, v)| v.as_str())
                .collect::<Vec<_>>()
                .join(";")
        };
        let oracle = r.oracle_value.clone().unwrap_or_else(|| "-".to_string());
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.param, formula, fixture, oracle, r.verdict
        ));
    }
    out
}
