//! Sparse multivariate polynomials in the matrix coordinates `y[a][i][j]`.
//!
//! Variables are interned process-wide: a [`Var`] is a small copyable
//! handle, and its [`VarKey`] (arrow id, row, column) is looked up only for
//! printing and canonical ordering. Internally terms live in a hash map, so
//! nothing that depends on term order may iterate `terms` directly; use
//! [`Polynomial::sorted_terms`] for any order-sensitive output.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use rustc_hash::FxHashMap;
use smallvec::SmallVec;

use super::field::{Field, Scalar};
use super::AlgebraError;

/// Interned coordinate variable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

/// The human-facing identity of a variable: `y[arrow][row][col]`, 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct VarKey {
    pub arrow: Arc<str>,
    pub row: u32,
    pub col: u32,
}

impl Ord for VarKey {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.arrow, &other.arrow).then(self.row.cmp(&other.row)).then(self.col.cmp(&other.col))
    }
}

impl PartialOrd for VarKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// String order that compares embedded digit runs numerically, so arrow
/// `2` sorts before arrow `10`.
pub fn natural_cmp(a: &str, b: &str) -> Ordering {
    let (mut x, mut y) = (a.as_bytes(), b.as_bytes());
    loop {
        match (x.first(), y.first()) {
            (None, None) => return a.cmp(b),
            (None, Some(_)) => return Ordering::Less,
            (Some(_), None) => return Ordering::Greater,
            (Some(c), Some(d)) if c.is_ascii_digit() && d.is_ascii_digit() => {
                let lx = x.iter().take_while(|c| c.is_ascii_digit()).count();
                let ly = y.iter().take_while(|c| c.is_ascii_digit()).count();
                let nx = trim_zeros(&x[..lx]);
                let ny = trim_zeros(&y[..ly]);
                let ord = nx.len().cmp(&ny.len()).then_with(|| nx.cmp(ny));
                if ord != Ordering::Equal {
                    return ord;
                }
                x = &x[lx..];
                y = &y[ly..];
            }
            (Some(c), Some(d)) => {
                if c != d {
                    return c.cmp(d);
                }
                x = &x[1..];
                y = &y[1..];
            }
        }
    }
}

fn trim_zeros(s: &[u8]) -> &[u8] {
    let k = s.iter().take_while(|&&c| c == b'0').count();
    &s[k..]
}

#[derive(Default)]
struct Interner {
    keys: Vec<VarKey>,
    index: FxHashMap<VarKey, u32>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(Default::default)
}

impl Var {
    pub fn new(arrow: &str, row: u32, col: u32) -> Var {
        let key = VarKey { arrow: Arc::from(arrow), row, col };
        if let Some(&id) = interner().read().unwrap().index.get(&key) {
            return Var(id);
        }
        let mut table = interner().write().unwrap();
        if let Some(&id) = table.index.get(&key) {
            return Var(id);
        }
        let id = table.keys.len() as u32;
        table.keys.push(key.clone());
        table.index.insert(key, id);
        Var(id)
    }

    pub fn key(self) -> VarKey {
        interner().read().unwrap().keys[self.0 as usize].clone()
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.key();
        write!(f, "y[{}][{}][{}]", k.arrow, k.row, k.col)
    }
}

/// Product of variable powers, sorted by interned id, no zero exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(Var, u32); 6]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: Var) -> Self {
        let mut s = SmallVec::new();
        s.push((v, 1));
        Monomial(s)
    }

    pub fn from_powers(powers: impl IntoIterator<Item = (Var, u32)>) -> Self {
        let mut acc: BTreeMap<Var, u32> = BTreeMap::new();
        for (v, e) in powers {
            *acc.entry(v).or_default() += e;
        }
        Monomial(acc.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn powers(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0.iter().find(|&&(w, _)| w == v).map_or(0, |&(_, e)| e)
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial(out)
    }

    /// Divides out one factor of `v`; `None` if `v` does not occur.
    pub fn without_one(&self, v: Var) -> Option<Monomial> {
        let pos = self.0.iter().position(|&(w, _)| w == v)?;
        let mut out = self.0.clone();
        if out[pos].1 == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some(Monomial(out))
    }

    /// Canonical comparison: total degree, then lexicographic in [`VarKey`]
    /// order (a higher exponent on an earlier variable is larger).
    pub fn cmp_grlex(&self, other: &Monomial) -> Ordering {
        self.grlex_key().cmp(&other.grlex_key())
    }

    pub fn grlex_key(&self) -> GrlexKey {
        let mut entries: Vec<(VarKey, u32)> = self.0.iter().map(|&(v, e)| (v.key(), e)).collect();
        entries.sort();
        GrlexKey { degree: self.degree(), entries }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let key = self.grlex_key();
        for (i, (k, e)) in key.entries.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "y[{}][{}][{}]", k.arrow, k.row, k.col)?;
            if *e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Sort key realising the graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrlexKey {
    degree: u32,
    entries: Vec<(VarKey, u32)>,
}

impl Ord for GrlexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (x, y) in self.entries.iter().zip(&other.entries) {
                match x.0.cmp(&y.0) {
                    // the earlier variable is missing from the other side
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match x.1.cmp(&y.1) {
                        Ordering::Equal => {}
                        o => return o,
                    },
                }
            }
            self.entries.len().cmp(&other.entries.len())
        })
    }
}

impl PartialOrd for GrlexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial over an exact field. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    field: Field,
    terms: FxHashMap<Monomial, Scalar>,
}

impl Polynomial {
    pub fn zero(field: Field) -> Self {
        Polynomial { field, terms: FxHashMap::default() }
    }

    pub fn constant(c: Scalar) -> Self {
        let mut p = Polynomial::zero(c.field());
        p.add_term(Monomial::one(), c);
        p
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        Polynomial::constant(Scalar::from_i64(field, n))
    }

    pub fn var(field: Field, v: Var) -> Self {
        let mut p = Polynomial::zero(field);
        p.add_term(Monomial::var(v), field.one());
        p
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Polynomial::zero(field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Unordered term iterator.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    /// Terms in descending graded lexicographic order.
    pub fn sorted_terms(&self) -> Vec<(&Monomial, &Scalar)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_cached_key(|(m, _)| std::cmp::Reverse(m.grlex_key()));
        v
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().max_by_key(|m| m.grlex_key())
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(c.field(), self.field, "mixed coefficient fields");
        if c.is_zero() {
            return;
        }
        use std::collections::hash_map::Entry;
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    fn check_field(&self, rhs: &Polynomial) {
        assert_eq!(self.field, rhs.field, "mixed coefficient fields");
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        self.check_field(rhs);
        let (big, small) = if self.len() >= rhs.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn add_assign(&mut self, rhs: &Polynomial) {
        self.check_field(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { field: self.field, terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, rhs: &Polynomial) -> Polynomial {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.field);
        }
        Polynomial { field: self.field, terms: self.terms.iter().map(|(m, x)| (m.clone(), x.mul(c))).collect() }
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        self.check_field(rhs);
        let mut out = Polynomial::zero(self.field);
        if self.is_zero() || rhs.is_zero() {
            return out;
        }
        out.terms.reserve(self.len().max(rhs.len()));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut acc = Polynomial::constant(self.field.one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// Per-arrow degree of every term, when they all agree.
    pub fn multidegree(&self) -> Option<BTreeMap<Arc<str>, u32>> {
        let mut seen: Option<BTreeMap<Arc<str>, u32>> = None;
        for m in self.terms.keys() {
            let mut md: BTreeMap<Arc<str>, u32> = BTreeMap::new();
            for &(v, e) in m.powers() {
                *md.entry(v.key().arrow).or_default() += e;
            }
            match &seen {
                None => seen = Some(md),
                Some(s) if *s == md => {}
                Some(_) => return None,
            }
        }
        Some(seen.unwrap_or_default())
    }

    /// Evaluates at a point; `value(v)` must be defined for every variable.
    pub fn eval(&self, mut value: impl FnMut(Var) -> Scalar) -> Scalar {
        let mut cache: FxHashMap<Var, Scalar> = FxHashMap::default();
        let mut acc = self.field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.powers() {
                let x = cache.entry(v).or_insert_with(|| value(v));
                t = t.mul(&x.pow(e));
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Replaces variables by polynomials; variables mapped to `None` stay.
    pub fn substitute(&self, mut image: impl FnMut(Var) -> Option<Polynomial>) -> Polynomial {
        let mut cache: FxHashMap<Var, Option<Polynomial>> = FxHashMap::default();
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let mut kept: Vec<(Var, u32)> = Vec::new();
            let mut t = Polynomial::constant(c.clone());
            for &(v, e) in m.powers() {
                match cache.entry(v).or_insert_with(|| image(v)) {
                    Some(p) => {
                        t = t.mul(&p.pow(e));
                        if t.is_zero() {
                            break;
                        }
                    }
                    None => kept.push((v, e)),
                }
            }
            if t.is_zero() {
                continue;
            }
            let rest = Monomial::from_powers(kept);
            for (m2, c2) in t.terms {
                out.add_term(m2.mul(&rest), c2);
            }
        }
        out
    }

    /// Renames variables; distinct variables may collapse onto one.
    pub fn rename(&self, mut f: impl FnMut(Var) -> Var) -> Polynomial {
        let mut out = Polynomial::zero(self.field);
        for (m, c) in &self.terms {
            let nm = Monomial::from_powers(m.powers().iter().map(|&(v, e)| (f(v), e)));
            out.add_term(nm, c.clone());
        }
        out
    }

    /// Maps coefficients into another field (e.g. reduction mod `p` of a
    /// rational polynomial).
    pub fn map_coefficients(&self, field: Field, mut f: impl FnMut(&Scalar) -> Option<Scalar>) -> Option<Polynomial> {
        let mut out = Polynomial::zero(field);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c)?);
        }
        Some(out)
    }

    pub fn variables(&self) -> Vec<Var> {
        let mut vs: Vec<Var> = self.terms.keys().flat_map(|m| m.powers().iter().map(|&(v, _)| v)).collect();
        vs.sort();
        vs.dedup();
        vs
    }
}

/// Exact equality after normalisation; both sides must share a field.
pub fn poly_equal(p: &Polynomial, q: &Polynomial) -> Result<bool, AlgebraError> {
    if p.field != q.field {
        return Err(AlgebraError::FieldMismatch(p.field, q.field));
    }
    Ok(p == q)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.sorted_terms().into_iter().enumerate() {
            let (neg, mag) = match c {
                Scalar::Q(r) if r.is_negative() => (true, Scalar::Q(r.neg())),
                _ => (false, c.clone()),
            };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.degree() == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
