//! Dimension specialization `p_{t(1),t(2)}` and arrow specialization `f`.

use super::{HatLayout, Invariant, InvariantError, Provenance};
use crate::algebra::{Polynomial, Var};
use crate::quiver::MixedRep;

/// Restricts to a smaller dimension vector on the same quiver: a coordinate
/// `y[a][s][r]` is sent to zero when `s` or `r` leaves the smaller range.
pub fn specialize_dim(inv: &Invariant, from: &MixedRep, to: &MixedRep) -> Result<Invariant, InvariantError> {
    if from.quiver() != to.quiver() {
        return Err(InvariantError::NotDominating("the two dimension vectors live on different quivers".into()));
    }
    let (a, b) = (from.dims().entries(), to.dims().entries());
    if let Some(v) = (0..a.len()).find(|&v| a[v].size < b[v].size || a[v].starred != b[v].starred) {
        return Err(InvariantError::NotDominating(format!(
            "vertex {}: {} does not dominate {}",
            v + 1,
            a[v].size,
            b[v].size
        )));
    }
    let field = inv.poly.field();
    let poly = inv.poly.substitute(|v: Var| {
        let k = v.key();
        let arrow = to.arrow(&k.arrow).ok()?;
        let (rows, cols) = to.arrow_shape(arrow);
        if k.row as usize > rows || k.col as usize > cols {
            Some(Polynomial::zero(field))
        } else {
            None
        }
    });
    Ok(Invariant {
        poly,
        provenance: Provenance::Specialized { map: "p".into(), from: Box::new(inv.provenance.clone()) },
    })
}

/// Identifies each hat variable `y[k][i][j]` with `y[f(k)][i][j]`.
pub fn specialize_f(inv: &Invariant, layout: &HatLayout) -> Invariant {
    let poly = inv.poly.rename(|v| {
        let k = v.key();
        match k.arrow.parse::<usize>() {
            Ok(n) if (1..=layout.r).contains(&n) => Var::new(&layout.f[n - 1], k.row, k.col),
            _ => v,
        }
    });
    Invariant { poly, provenance: Provenance::Specialized { map: "f".into(), from: Box::new(inv.provenance.clone()) } }
}
