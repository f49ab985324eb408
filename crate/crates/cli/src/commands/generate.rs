//! `generate` and `verify` for mixed representations.

use qtl_core::algebra::Field;
use qtl_core::invariant::{generator_bounded, verify_invariance, Invariant};
use qtl_core::quiver::{DoubledQuiver, MixedRep, SpecFile};
use qtl_core::words::{base_vertex, enumerate_closed_words, Dedupe, Word};
use rayon::prelude::*;
use serde_json::json;

use super::job_rng;
use crate::error::CliError;
use crate::report::{Output, RunConfig, Table};

/// Every `(w, j)` with `|w| <= max_len` and `j` at most the size of `Z(w)`.
pub(crate) fn jobs(rep: &MixedRep, max_len: usize, max_j: Option<usize>) -> Result<Vec<(Word, usize)>, CliError> {
    let (normal, _) = rep.eliminate_fourth_case();
    let dq = DoubledQuiver::new(&normal)?;
    let cap = max_j.unwrap_or(rep.max_dim());
    let mut out = Vec::new();
    for w in enumerate_closed_words(&dq, max_len, Dedupe::RotationTranspose) {
        let size = dq.dim(base_vertex(&dq, &w)?);
        for j in 1..=size.min(cap) {
            out.push((w.clone(), j));
        }
    }
    Ok(out)
}

pub(crate) fn build_all(
    rep: &MixedRep,
    jobs: &[(Word, usize)],
    field: Field,
    max_terms: usize,
) -> Result<Vec<Invariant>, CliError> {
    jobs.par_iter().map(|(w, j)| generator_bounded(rep, w, *j, field, max_terms).map_err(CliError::from)).collect()
}

pub fn generate(file: &SpecFile, config: &RunConfig, max_len: usize, max_j: Option<usize>) -> Result<Output, CliError> {
    let jobs = jobs(&file.rep, max_len, max_j)?;
    let gens = build_all(&file.rep, &jobs, config.field, config.budgets.max_terms as usize)?;
    let mut text = String::new();
    let mut table = Table::new(&["word", "j", "terms", "polynomial"]);
    let mut list = Vec::new();
    for ((w, j), g) in jobs.iter().zip(&gens) {
        text.push_str(&format!("{g}\n"));
        table.push(vec![w.to_string(), j.to_string(), g.poly.len().to_string(), g.poly.to_string()]);
        list.push(json!({"word": w, "j": j, "terms": g.poly.len(), "polynomial": g.poly.to_string()}));
    }
    let mut out = Output::new(json!({"count": gens.len(), "generators": list}), text);
    out.table = Some(table);
    Ok(out)
}

pub fn verify(
    file: &SpecFile,
    config: &RunConfig,
    trials: usize,
    max_len: usize,
    max_j: Option<usize>,
) -> Result<Output, CliError> {
    let rep = &file.rep;
    let jobs = jobs(rep, max_len, max_j)?;
    let gens = build_all(rep, &jobs, config.field, config.budgets.max_terms as usize)?;
    let reports = gens
        .par_iter()
        .enumerate()
        .map(|(k, g)| {
            verify_invariance(g, rep, trials, config.field, &mut job_rng(config.seed, k)).map_err(CliError::from)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let mut text = String::new();
    let mut table = Table::new(&["word", "j", "trials", "failures"]);
    let mut list = Vec::new();
    let mut failures = 0;
    for ((w, j), r) in jobs.iter().zip(&reports) {
        failures += r.failures;
        let status = if r.passed() { "ok" } else { "FAIL" };
        text.push_str(&format!("sigma_{j}({w}): {status} ({} of {} trials failed)\n", r.failures, r.trials));
        table.push(vec![w.to_string(), j.to_string(), r.trials.to_string(), r.failures.to_string()]);
        list.push(json!({"word": w, "j": j, "report": r}));
    }
    text.push_str(&format!("{} generators, {failures} failures\n", reports.len()));
    let result = json!({
        "generators": reports.len(),
        "trials": trials,
        "failures": failures,
        "passed": failures == 0,
        "checks": list,
    });
    let mut out = Output::new(result, text);
    out.table = Some(table);
    out.failed = failures > 0;
    Ok(out)
}
