//! Closed words in the doubled quiver and multilinear trace products.
//!
//! A word `(l_1, ..., l_L)` stands for the product `Z(l_1) Z(l_2) ... Z(l_L)`
//! with `Z(a) = Y(a)` and `Z(ā) = Y(a)ᵗ`. Consecutive letters `(l_k, l_{k+1})`
//! must be linked, i.e. `t(l_{k+1}) = i(l_k)`, and so must the wrap-around
//! pair `(l_L, l_1)`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::quiver::{DVertex, DoubledQuiver, Letter, QuiverError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty word")]
    EmptyWord,
    #[error("malformed letter `{0}`")]
    BadLetter(String),
    #[error("symbol {0} occurs more than once")]
    DuplicateSymbol(u32),
    #[error("malformed trace product `{0}`")]
    BadTraceProduct(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

/// Nonempty cyclic sequence of doubled-quiver letters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

/// Which symmetries identify words during enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dedupe {
    /// cyclic rotations only
    Rotation,
    /// rotations and transposition
    RotationTranspose,
}

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self, WordError> {
        if letters.is_empty() {
            return Err(WordError::EmptyWord);
        }
        Ok(Word { letters })
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Moves the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        let mut letters = self.letters.clone();
        letters.rotate_left(k % self.len());
        Word { letters }
    }

    /// Reverses the order and toggles every bar: the word of `Zᵗ`.
    pub fn transpose(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(Letter::toggled).collect() }
    }

    /// Least rotation, optionally also over the transpose's rotations.
    pub fn canonical(&self, dedupe: Dedupe) -> Word {
        let best = least_rotation(self);
        match dedupe {
            Dedupe::Rotation => best,
            Dedupe::RotationTranspose => best.min(least_rotation(&self.transpose())),
        }
    }

    /// Arrow multiplicities, keyed by arrow id.
    pub fn arrow_counts(&self) -> BTreeMap<&str, u32> {
        let mut out = BTreeMap::new();
        for l in &self.letters {
            *out.entry(&*l.arrow).or_default() += 1;
        }
        out
    }
}

fn least_rotation(w: &Word) -> Word {
    (0..w.len()).map(|k| w.rotate(k)).min().expect("nonempty word")
}

pub fn transpose_word(w: &Word) -> Word {
    w.transpose()
}

/// Comma-separated letters, barred letters with a trailing apostrophe.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `c,b'`, `c b'` and the doubled ids `c,b_bar`.
impl FromStr for Word {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let letters = s
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(parse_letter)
            .collect::<Result<Vec<_>, _>>()?;
        Word::new(letters)
    }
}

fn parse_letter(t: &str) -> Result<Letter, WordError> {
    let (id, barred) = if let Some(id) = t.strip_suffix('\'') {
        (id, true)
    } else if let Some(id) = t.strip_suffix("_bar") {
        (id, true)
    } else {
        (t, false)
    };
    if id.is_empty() || id.contains('\'') {
        return Err(WordError::BadLetter(t.to_string()));
    }
    Ok(if barred { Letter::bar(id) } else { Letter::plain(id) })
}

/// `t(second) = i(first)`: `Z(first) Z(second)` composes.
pub fn is_linked(dq: &DoubledQuiver, first: &Letter, second: &Letter) -> Result<bool, WordError> {
    let (origin_first, _) = dq.endpoints(first)?;
    let (_, end_second) = dq.endpoints(second)?;
    Ok(end_second == origin_first)
}

/// Every cyclically consecutive pair is linked.
pub fn is_admissible(dq: &DoubledQuiver, w: &Word) -> Result<bool, WordError> {
    if w.is_empty() {
        return Err(WordError::EmptyWord);
    }
    let n = w.len();
    for k in 0..n {
        if !is_linked(dq, &w.letters[k], &w.letters[(k + 1) % n])? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Vertex whose space `Z(w)` acts on: the end of the first letter.
pub fn base_vertex(dq: &DoubledQuiver, w: &Word) -> Result<DVertex, WordError> {
    let first = w.letters.first().ok_or(WordError::EmptyWord)?;
    Ok(dq.endpoints(first)?.1)
}

/// One canonical representative of each class of admissible words of
/// length `1..=max_len`, ordered by length then letters.
pub fn enumerate_closed_words(dq: &DoubledQuiver, max_len: usize, dedupe: Dedupe) -> Vec<Word> {
    let letters = dq.letters();
    let ends: Vec<(DVertex, DVertex)> =
        letters.iter().map(|l| dq.endpoints(l).expect("letter of this quiver")).collect();
    // successors[k]: letters l with t(l) = i(letters[k])
    let successors: Vec<Vec<usize>> =
        ends.iter().map(|&(origin, _)| (0..letters.len()).filter(|&m| ends[m].1 == origin).collect()).collect();
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(max_len);
    for len in 1..=max_len {
        for start in 0..letters.len() {
            path.clear();
            path.push(start);
            extend(&letters, &ends, &successors, len, dedupe, &mut path, &mut out);
        }
    }
    out
}

fn extend(
    letters: &[Letter],
    ends: &[(DVertex, DVertex)],
    successors: &[Vec<usize>],
    len: usize,
    dedupe: Dedupe,
    path: &mut Vec<usize>,
    out: &mut Vec<Word>,
) {
    let last = *path.last().expect("nonempty path");
    if path.len() == len {
        // wrap-around: t(l_1) = i(l_L)
        if ends[path[0]].1 != ends[last].0 {
            return;
        }
        let w = Word { letters: path.iter().map(|&k| letters[k].clone()).collect() };
        if w.canonical(dedupe) == w {
            out.push(w);
        }
        return;
    }
    for &next in &successors[last] {
        // a least rotation starts with its smallest letter
        if next < path[0] {
            continue;
        }
        path.push(next);
        extend(letters, ends, successors, len, dedupe, path, out);
        path.pop();
    }
}

/// One factor entry of a trace product: matrix number, possibly transposed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sym {
    pub n: u32,
    pub barred: bool,
}

impl Sym {
    pub fn plain(n: u32) -> Self {
        Sym { n, barred: false }
    }

    pub fn bar(n: u32) -> Self {
        Sym { n, barred: true }
    }

    pub fn toggled(self) -> Self {
        Sym { n: self.n, barred: !self.barred }
    }

    /// As a letter of a hat quiver, whose arrows are named `1..r`.
    pub fn letter(self) -> Letter {
        let id = self.n.to_string();
        if self.barred {
            Letter::bar(&id)
        } else {
            Letter::plain(&id)
        }
    }
}

impl fmt::Display for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.n, if self.barred { "'" } else { "" })
    }
}

/// Product of traces `tr(Z_1 ... )·tr(...)` over numbered matrices, each
/// number used at most once.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TraceProduct {
    factors: Vec<Vec<Sym>>,
}

impl TraceProduct {
    pub fn new(factors: Vec<Vec<Sym>>) -> Result<Self, WordError> {
        let mut seen = std::collections::BTreeSet::new();
        for f in &factors {
            if f.is_empty() {
                return Err(WordError::EmptyWord);
            }
            for s in f {
                if !seen.insert(s.n) {
                    return Err(WordError::DuplicateSymbol(s.n));
                }
            }
        }
        Ok(TraceProduct { factors })
    }

    pub fn factors(&self) -> &[Vec<Sym>] {
        &self.factors
    }

    /// Sum of factor lengths.
    pub fn degree(&self) -> usize {
        self.factors.iter().map(Vec::len).sum()
    }

    /// Canonical form: each factor transposed when its largest number is
    /// barred and rotated to start there; factors sorted by that number.
    pub fn right_record(&self) -> TraceProduct {
        let mut factors: Vec<Vec<Sym>> = self
            .factors
            .iter()
            .map(|f| {
                let top = f.iter().max_by_key(|s| s.n).expect("nonempty factor");
                let f: Vec<Sym> = if top.barred { f.iter().rev().map(|s| s.toggled()).collect() } else { f.clone() };
                let k = f.iter().enumerate().max_by_key(|(_, s)| s.n).expect("nonempty").0;
                let mut f = f;
                f.rotate_left(k);
                f
            })
            .collect();
        factors.sort_by_key(|f| f[0].n);
        TraceProduct { factors }
    }

    pub fn is_right(&self) -> bool {
        *self == self.right_record()
    }

    /// Each factor as a word in the hat quiver.
    pub fn factor_words(&self) -> Vec<Word> {
        self.factors.iter().map(|f| Word { letters: f.iter().map(|s| s.letter()).collect() }).collect()
    }
}

impl fmt::Display for TraceProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            write!(f, "(")?;
            for (k, s) in factor.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl Serialize for TraceProduct {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses `(1 6' 3' 5)(2 7' 4)`.
impl FromStr for TraceProduct {
    type Err = WordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || WordError::BadTraceProduct(s.to_string());
        let mut factors = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let syms = body[..close]
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let (num, barred) = match t.strip_suffix('\'') {
                        Some(n) => (n, true),
                        None => (t, false),
                    };
                    num.parse::<u32>().ok().filter(|&n| n > 0).map(|n| Sym { n, barred }).ok_or_else(bad)
                })
                .collect::<Result<Vec<_>, _>>()?;
            factors.push(syms);
            rest = body[close + 1..].trim_start();
        }
        TraceProduct::new(factors)
    }
}

pub fn right_record(p: &TraceProduct) -> TraceProduct {
    p.right_record()
}
