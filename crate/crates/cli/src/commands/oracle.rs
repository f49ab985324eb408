//! `span-check`.

use qtl_core::algebra::Field;
use qtl_core::oracle::{span_check, OracleError};
use qtl_core::quiver::SpecFile;
use serde_json::json;

use super::oracle_budgets;
use crate::error::CliError;
use crate::report::{Output, RunConfig};

pub fn span(
    file: &SpecFile,
    config: &RunConfig,
    multidegree: &str,
    word_bound: Option<usize>,
) -> Result<Output, CliError> {
    if config.field != Field::Rational {
        return Err(OracleError::UnsupportedCharacteristic(config.field.characteristic()).into());
    }
    let md = file.rep.parse_multidegree(multidegree)?;
    let bound = word_bound.unwrap_or(md.iter().sum::<u32>() as usize).max(1);
    let r = span_check(&file.rep, &md, bound, oracle_budgets(config))?;
    let mut text = format!(
        "multidegree {multidegree}: oracle_dim {}, span_dim {}, {}\n",
        r.oracle_dim,
        r.span_dim,
        if r.pass { "PASS" } else { "FAIL" }
    );
    text.push_str(&format!(
        "{} generators, {} products, word bound {}{}\n",
        r.generators,
        r.products,
        r.word_bound,
        if r.bound_is_exhaustive { " (exhaustive)" } else { "" }
    ));
    for w in &r.witness {
        text.push_str(&format!("missing: {w}\n"));
    }
    let mut result = serde_json::to_value(&r).map_err(|e| CliError::Output(e.to_string()))?;
    result["total_degree"] = json!(md.iter().sum::<u32>());
    let mut out = Output::new(result, text);
    out.failed = !r.pass;
    Ok(out)
}
