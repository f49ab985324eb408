//! `describe`, `double` and `paths`.

use qtl_core::quiver::{DoubledQuiver, Factor, SpecFile};
use qtl_core::supermixed::SupermixedSpec;
use qtl_core::words::{base_vertex, enumerate_closed_words, Dedupe};
use serde_json::json;

use crate::args::DedupeArg;
use crate::error::CliError;
use crate::report::{Output, Table};

pub fn describe(file: &SpecFile) -> Result<Output, CliError> {
    let rep = &file.rep;
    let q = rep.quiver();
    let mut text = String::new();
    let vertices: Vec<_> = (1..=q.vertex_count())
        .map(|v| {
            let role = match rep.factors()[rep.factor_of(v)] {
                Factor::Ordinary(_) => "ordinary".to_string(),
                Factor::Pair(k) => format!("pair {}", k + 1),
            };
            let star = if rep.is_starred(v) { "*" } else { "" };
            text.push_str(&format!("vertex {v}{star}: size {}, {role}\n", rep.dim(v)));
            json!({"vertex": v, "size": rep.dim(v), "starred": rep.is_starred(v), "role": role})
        })
        .collect();
    let arrows: Vec<_> = rep
        .arrows()
        .iter()
        .map(|a| {
            let case = rep.classify_arrow(a);
            let (r, c) = rep.arrow_shape(a);
            text.push_str(&format!("arrow {}: {} -> {}, {case}, {r}x{c}\n", a.id, a.from, a.to));
            json!({"id": a.id, "from": a.from, "to": a.to, "case": case.number(), "rows": r, "cols": c})
        })
        .collect();
    let factors: Vec<_> = rep
        .factors()
        .iter()
        .enumerate()
        .map(|(u, f)| json!({"factor": format!("{f:?}"), "dim": rep.factor_dim(u)}))
        .collect();
    let (normal, relabel) = rep.eliminate_fourth_case();
    let transposed: Vec<&str> = relabel.transposed_arrows().collect();
    if transposed.is_empty() {
        text.push_str("no fourth-case arrows\n");
    } else {
        for a in normal.arrows().iter().filter(|a| transposed.contains(&a.id.as_str())) {
            text.push_str(&format!("normalized {}: {} -> {} (transposed)\n", a.id, a.from, a.to));
        }
    }
    let normalized: Vec<_> = normal
        .arrows()
        .iter()
        .map(|a| json!({"id": a.id, "from": a.from, "to": a.to, "case": normal.classify_arrow(a).number()}))
        .collect();
    let supermixed = match &file.supermixed {
        None => serde_json::Value::Null,
        Some(raw) => {
            let spec = SupermixedSpec::from_raw(rep.clone(), raw)?;
            text.push_str(&format!("supermixed groups: {:?}\n", spec.groups));
            for (a, s) in &spec.shapes {
                text.push_str(&format!("shape {a}: {s:?}\n"));
            }
            json!({"groups": spec.groups, "shapes": spec.shapes})
        }
    };
    let result = json!({
        "vertices": vertices,
        "factors": factors,
        "arrows": arrows,
        "normalized_arrows": normalized,
        "transposed": transposed,
        "supermixed": supermixed,
    });
    Ok(Output::new(result, text))
}

pub fn double(file: &SpecFile) -> Result<Output, CliError> {
    let (normal, _) = file.rep.eliminate_fourth_case();
    let dq = DoubledQuiver::new(&normal)?;
    let mut text = String::new();
    let mut table = Table::new(&["id", "from", "to"]);
    for a in dq.arrows() {
        text.push_str(&format!("{}: {} -> {}\n", a.id, a.from, a.to));
        table.push(vec![a.id.clone(), a.from.to_string(), a.to.to_string()]);
    }
    let result = json!({
        "vertices": dq.vertices().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "arrows": dq.arrows(),
    });
    let mut out = Output::new(result, text);
    out.table = Some(table);
    Ok(out)
}

pub fn paths(file: &SpecFile, max_len: usize, dedupe: DedupeArg) -> Result<Output, CliError> {
    let (normal, _) = file.rep.eliminate_fourth_case();
    let dq = DoubledQuiver::new(&normal)?;
    let dedupe = match dedupe {
        DedupeArg::Rotation => Dedupe::Rotation,
        DedupeArg::RotationTranspose => Dedupe::RotationTranspose,
    };
    let words = enumerate_closed_words(&dq, max_len, dedupe);
    let mut text = String::new();
    let mut table = Table::new(&["word", "length", "base"]);
    let mut list = Vec::with_capacity(words.len());
    for w in &words {
        let base = base_vertex(&dq, w)?;
        text.push_str(&format!("{w}\n"));
        table.push(vec![w.to_string(), w.len().to_string(), base.to_string()]);
        list.push(json!({"word": w, "length": w.len(), "base": base}));
    }
    text.push_str(&format!("{} words\n", words.len()));
    let mut out = Output::new(json!({"count": words.len(), "dedupe": dedupe, "words": list}), text);
    out.table = Some(table);
    Ok(out)
}
