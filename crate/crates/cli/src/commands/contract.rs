//! `contract`.

use qtl_core::algebra::AlgebraError;
use qtl_core::invariant::{contract_permutation, hat_quiver, tr_star, HatLayout, InvariantError, PermDatum};
use qtl_core::perm::Permutation;
use qtl_core::quiver::SpecFile;
use serde_json::json;

use crate::error::CliError;
use crate::report::{Output, RunConfig};

fn parse_layout(s: &str) -> Result<(usize, usize), CliError> {
    let bad = || CliError::Usage(format!("layout `{s}` is not of the form t,s"));
    let (t, rest) = s.split_once(',').ok_or_else(bad)?;
    Ok((t.trim().parse().map_err(|_| bad())?, rest.trim().parse().map_err(|_| bad())?))
}

pub fn contract(
    config: &RunConfig,
    sigma: &str,
    layout: Option<&str>,
    file: Option<&SpecFile>,
    multidegree: Option<&str>,
    dim: Option<usize>,
) -> Result<Output, CliError> {
    let requested = layout.map(parse_layout).transpose()?;
    let (hat, expand) = match (file, multidegree) {
        (Some(f), Some(md)) => {
            if dim.is_some() {
                return Err(CliError::Usage("--dim applies to the universal layout only".into()));
            }
            let (normal, _) = f.rep.eliminate_fourth_case();
            let md = normal.parse_multidegree(md)?;
            let hat = hat_quiver(&normal, &md)?;
            if let Some((t, s)) = requested.filter(|&ts| ts != (hat.t, hat.s)) {
                return Err(InvariantError::LayoutMismatch(format!(
                    "requested t={t}, s={s} but the multidegree gives t={}, s={}",
                    hat.t, hat.s
                ))
                .into());
            }
            (hat, true)
        }
        _ => {
            let (t, s) =
                requested.ok_or_else(|| CliError::Usage("give --layout t,s or --spec with --multidegree".into()))?;
            (HatLayout::universal(t, s, dim.unwrap_or(1))?, dim.is_some())
        }
    };
    let perm = Permutation::parse_cycles(sigma, hat.r)?;
    let datum = PermDatum::new(perm, hat.clone())?;
    let c = contract_permutation(&datum)?;
    let mut text = format!("{}\nright record: {}\n", c.raw, c.right);
    let mut result = json!({
        "sigma": datum.sigma.to_string(),
        "t": hat.t,
        "s": hat.s,
        "r": hat.r,
        "raw": c.raw,
        "right": c.right,
        "layout": hat,
    });
    if expand {
        let inv = tr_star(&datum, config.field)?;
        let limit = config.budgets.max_terms as usize;
        if inv.poly.len() > limit {
            return Err(AlgebraError::BudgetExceeded { what: "polynomial terms", size: inv.poly.len(), limit }.into());
        }
        text.push_str(&format!("{}\n", inv.poly));
        result["polynomial"] = json!(inv.poly.to_string());
        result["terms"] = json!(inv.poly.len());
    }
    Ok(Output::new(result, text))
}
