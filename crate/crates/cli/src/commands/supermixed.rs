//! `reduce-supermixed` and `verify` on files with a supermixed block.

use qtl_core::quiver::SpecFile;
use qtl_core::supermixed::{build_reduction, push_invariant, verify_supermixed, ReductionResult, SupermixedSpec};
use rayon::prelude::*;
use serde_json::{json, Value};

use super::generate::{build_all, jobs};
use super::job_rng;
use crate::error::CliError;
use crate::report::{Output, RunConfig, Table};

fn reduction(file: &SpecFile, config: &RunConfig) -> Result<ReductionResult, CliError> {
    let raw = file.supermixed.as_ref().ok_or_else(|| CliError::Usage("the file has no supermixed block".into()))?;
    let spec = SupermixedSpec::from_raw(file.rep.clone(), raw)?;
    Ok(build_reduction(&spec, config.field)?)
}

/// Restricted generators of `Q'` with their trial reports.
fn check(
    result: &ReductionResult,
    config: &RunConfig,
    trials: usize,
    max_len: usize,
) -> Result<(Value, String, Table, usize), CliError> {
    let jobs = jobs(&result.qprime, max_len, None)?;
    let gens = build_all(&result.qprime, &jobs, config.field, config.budgets.max_terms as usize)?;
    let checked = gens
        .par_iter()
        .enumerate()
        .map(|(k, g)| {
            let pushed = push_invariant(g, result)?;
            let report = verify_supermixed(&pushed, result, trials, config.field, &mut job_rng(config.seed, k))?;
            Ok((pushed, report))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let mut text = String::new();
    let mut table =
        Table::new(&["word", "j", "restricted", "invariance_failures", "relation_failures", "shape_failures"]);
    let mut list = Vec::new();
    let mut failed = 0;
    for ((w, j), (p, r)) in jobs.iter().zip(&checked) {
        if !r.passed {
            failed += 1;
        }
        text.push_str(&format!("sigma_{j}({w}) -> {}: {}\n", p.poly, if r.passed { "ok" } else { "FAIL" }));
        table.push(vec![
            w.to_string(),
            j.to_string(),
            p.poly.to_string(),
            r.invariance_failures.to_string(),
            r.relation_failures.to_string(),
            r.shape_failures.to_string(),
        ]);
        list.push(json!({"word": w, "j": j, "restricted": p.poly.to_string(), "report": r}));
    }
    text.push_str(&format!("{} restricted generators, {failed} failing\n", checked.len()));
    let summary = json!({"generators": checked.len(), "trials": trials, "failing": failed, "passed": failed == 0, "checks": list});
    Ok((summary, text, table, failed))
}

pub fn reduce(file: &SpecFile, config: &RunConfig, trials: Option<usize>, max_len: usize) -> Result<Output, CliError> {
    let result = reduction(file, config)?;
    let mut text = String::new();
    for note in &result.notes {
        text.push_str(&format!("{note}\n"));
    }
    for f in &result.forms {
        text.push_str(&format!("{:?} form at vertex {}: arrows {}, {}\n", f.group, f.vertex, f.b, f.c));
    }
    for s in &result.substitutions {
        let entries: Vec<String> = s.entries.iter().map(ToString::to_string).collect();
        text.push_str(&format!("X({}) = [{}] ({}x{}, {:?})\n", s.arrow, entries.join(", "), s.rows, s.cols, s.kind));
    }
    let mut value = serde_json::to_value(&result).map_err(|e| CliError::Output(e.to_string()))?;
    let mut failed = false;
    if let Some(t) = trials {
        let (summary, check_text, _, failing) = check(&result, config, t, max_len)?;
        text.push_str(&check_text);
        value["verification"] = summary;
        failed = failing > 0;
    }
    let mut out = Output::new(value, text);
    out.failed = failed;
    Ok(out)
}

pub fn verify(file: &SpecFile, config: &RunConfig, trials: usize, max_len: usize) -> Result<Output, CliError> {
    let result = reduction(file, config)?;
    let (summary, text, table, failing) = check(&result, config, trials, max_len)?;
    let mut out = Output::new(summary, text);
    out.table = Some(table);
    out.failed = failing > 0;
    Ok(out)
}
