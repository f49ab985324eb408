//! Permutations of `1..=r` in one-line form, with cycle notation I/O.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("malformed cycle notation `{0}`")]
    Syntax(String),
    #[error("point {point} repeated or outside 1..={degree}")]
    BadPoint { point: usize, degree: usize },
}

/// A bijection of `1..=r`; `images[k - 1] = σ(k)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(r: usize) -> Self {
        Permutation { images: (1..=r).collect() }
    }

    /// From one-line images; `None` unless it is a bijection of `1..=r`.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let r = images.len();
        let mut seen = vec![false; r];
        for &x in &images {
            if x == 0 || x > r || std::mem::replace(&mut seen[x - 1], true) {
                return None;
            }
        }
        Some(Permutation { images })
    }

    /// Parses cycle notation such as `(1726)(354)`, `(1 7 2 6)(3,5,4)` or
    /// `()`. Single-digit points may be run together only when `r < 10`.
    pub fn parse_cycles(s: &str, r: usize) -> Result<Self, PermError> {
        let syntax = || PermError::Syntax(s.to_string());
        let mut images: Vec<usize> = (1..=r).collect();
        let mut used = vec![false; r];
        let mut rest = s.trim();
        while !rest.is_empty() {
            let body = rest.strip_prefix('(').ok_or_else(syntax)?;
            let close = body.find(')').ok_or_else(syntax)?;
            let inner = body[..close].trim();
            let points: Vec<usize> = if inner.contains(|c: char| c == ',' || c.is_whitespace()) {
                inner
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse().map_err(|_| syntax()))
                    .collect::<Result<_, _>>()?
            } else {
                if r >= 10 && inner.len() > 1 {
                    return Err(syntax());
                }
                inner
                    .chars()
                    .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(syntax))
                    .collect::<Result<_, _>>()?
            };
            for &p in &points {
                if p == 0 || p > r || std::mem::replace(&mut used[p - 1], true) {
                    return Err(PermError::BadPoint { point: p, degree: r });
                }
            }
            for (k, &p) in points.iter().enumerate() {
                images[p - 1] = points[(k + 1) % points.len()];
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// `σ(k)`, 1-based.
    pub fn apply(&self, k: usize) -> usize {
        self.images[k - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &x) in self.images.iter().enumerate() {
            inv[x - 1] = k + 1;
        }
        Permutation { images: inv }
    }

    /// `(self ∘ other)(k) = self(other(k))`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.degree(), other.degree(), "degrees differ");
        Permutation { images: other.images.iter().map(|&k| self.apply(k)).collect() }
    }

    /// Cycles including fixed points, each starting at its least element,
    /// ordered by that element.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 1..=self.degree() {
            if seen[start - 1] {
                continue;
            }
            let mut cyc = vec![start];
            seen[start - 1] = true;
            let mut k = self.apply(start);
            while k != start {
                seen[k - 1] = true;
                cyc.push(k);
                k = self.apply(k);
            }
            out.push(cyc);
        }
        out
    }

    /// `+1` or `-1`.
    pub fn sign(&self) -> i64 {
        let even = self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0;
        if even {
            1
        } else {
            -1
        }
    }

    /// `self ∘ (a b)`.
    pub fn times_transposition(&self, a: usize, b: usize) -> Self {
        let mut images = self.images.clone();
        images.swap(a - 1, b - 1);
        Permutation { images }
    }

    /// All permutations of `1..=r` in lexicographic order of images.
    pub fn all(r: usize) -> Vec<Permutation> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=r).collect();
        loop {
            out.push(Permutation { images: cur.clone() });
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot");
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }
}

/// Cycle notation without fixed points; the identity prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        let sep = if self.degree() >= 10 { " " } else { "" };
        for c in cycles {
            let parts: Vec<String> = c.iter().map(ToString::to_string).collect();
            write!(f, "({})", parts.join(sep))?;
        }
        Ok(())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Parses cycle notation, taking the degree to be the largest point named.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let max = s
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| !t.is_empty())
            .flat_map(|t| {
                if s.contains(|c: char| c == ',' || c == ' ') {
                    vec![t.parse::<usize>().unwrap_or(0)]
                } else {
                    t.chars().map(|c| c.to_digit(10).unwrap_or(0) as usize).collect()
                }
            })
            .max()
            .unwrap_or(0);
        Permutation::parse_cycles(s, max)
    }
}
