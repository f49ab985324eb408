//! Exact rank, nullspace and span membership for dense vectors of scalars.
//!
//! Rank over the rationals uses fraction-free (Bareiss) elimination on
//! integer rows so intermediate entries stay polynomially bounded. Nullspaces
//! and incremental span tests use reduced row echelon form over the field.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{Field, Scalar};

/// Incrementally maintained reduced row echelon basis of a subspace of
/// `field^n`.
#[derive(Clone, Debug)]
pub struct RowEchelon {
    field: Field,
    ncols: usize,
    /// rows with pivot entry one, zero in every other row's pivot column
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowEchelon {
    pub fn new(field: Field, ncols: usize) -> Self {
        RowEchelon { field, ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its projection along pivot columns; zero iff `v` is in the span.
    pub fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.ncols, "vector length does not match");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&r.mul(&f));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Adds `v`; returns `true` iff it was independent of the current rows.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let w = self.reduce(v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = w[p].inv().expect("nonzero pivot");
        let w: Vec<Scalar> = w.iter().map(|x| x.mul(&inv)).collect();
        for row in &mut self.rows {
            let f = row[p].clone();
            if f.is_zero() {
                continue;
            }
            for (x, r) in row.iter_mut().zip(&w) {
                if !r.is_zero() {
                    *x = x.sub(&r.mul(&f));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        true
    }

    /// Basis of `{x : r·x = 0 for every row r}`, one vector per free column,
    /// with a one in that column; ordered by free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let mut out = Vec::new();
        let mut pivot_iter = self.pivots.iter().peekable();
        for free in 0..self.ncols {
            if pivot_iter.peek() == Some(&&free) {
                pivot_iter.next();
                continue;
            }
            let mut x = vec![self.field.zero(); self.ncols];
            x[free] = self.field.one();
            for (row, &p) in self.rows.iter().zip(&self.pivots) {
                x[p] = row[free].neg();
            }
            out.push(x);
        }
        out
    }
}

/// Basis of the right nullspace `{x : A x = 0}`.
pub fn nullspace(field: Field, ncols: usize, rows: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let mut e = RowEchelon::new(field, ncols);
    for r in rows {
        e.insert(r);
    }
    e.kernel()
}

/// Reduces `v` modulo the span of `basis`.
pub fn reduce_mod_span(field: Field, basis: &[Vec<Scalar>], v: &[Scalar]) -> Vec<Scalar> {
    let mut e = RowEchelon::new(field, v.len());
    for b in basis {
        e.insert(b);
    }
    e.reduce(v)
}

/// Exact rank of the matrix with the given rows.
pub fn rank(field: Field, rows: &[Vec<Scalar>]) -> usize {
    match field {
        Field::Rational => bareiss_rank(rows.iter().map(|r| integer_row(r)).collect()),
        Field::Prime(_) => {
            let n = rows.first().map_or(0, Vec::len);
            let mut e = RowEchelon::new(field, n);
            rows.iter().filter(|r| e.insert(r)).count()
        }
    }
}

/// Scales a rational row by the lcm of its denominators.
fn integer_row(row: &[Scalar]) -> Vec<BigInt> {
    let rats: Vec<_> = row.iter().map(|x| x.as_rational().expect("rational row").to_big()).collect();
    let l = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    rats.iter().map(|r| r.numer() * (&l / r.denom())).collect()
}

fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..n {
        if rank == m {
            break;
        }
        let Some(piv) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..m {
            for c in col + 1..n {
                let v = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                a[r][c] = v / &prev;
            }
            a[r][col] = BigInt::zero();
        }
        prev = a[rank][col].clone();
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn row(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_i64(Q, x)).collect()
    }

    #[test]
    fn rank_and_kernel() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[0, 1, 1])];
        assert_eq!(rank(Q, &rows), 2);
        let k = nullspace(Q, 3, &rows);
        assert_eq!(k, vec![row(&[-1, -1, 1])]);
    }

    #[test]
    fn rank_over_prime_field() {
        let f = Field::Prime(3);
        let rows: Vec<Vec<Scalar>> =
            [[1, 2], [2, 1]].iter().map(|r| r.iter().map(|&x| Scalar::from_i64(f, x)).collect()).collect();
        // rows are proportional mod 3
        assert_eq!(rank(f, &rows), 1);
    }

    #[test]
    fn span_membership() {
        let basis = vec![row(&[1, 0, 1]), row(&[0, 1, 1])];
        assert!(reduce_mod_span(Q, &basis, &row(&[2, 3, 5])).iter().all(Scalar::is_zero));
        assert!(!reduce_mod_span(Q, &basis, &row(&[0, 0, 1])).iter().all(Scalar::is_zero));
    }

    proptest! {
        #[test]
        fn bareiss_agrees_with_echelon(m in prop::collection::vec(prop::collection::vec((-4i64..5, 1i64..4), 5), 1..6)) {
            let rows: Vec<Vec<Scalar>> = m.iter()
                .map(|r| r.iter().map(|&(n, d)| Scalar::from_ratio(Q, n, d).unwrap()).collect())
                .collect();
            let mut e = RowEchelon::new(Q, 5);
            let r2 = rows.iter().filter(|r| e.insert(r)).count();
            prop_assert_eq!(rank(Q, &rows), r2);
            let kernel = e.kernel();
            prop_assert_eq!(kernel.len() + r2, 5);
            for x in &kernel {
                for r in &rows {
                    let dot = r.iter().zip(x).fold(Q.zero(), |acc, (a, b)| acc.add(&a.mul(b)));
                    prop_assert!(dot.is_zero());
                }
            }
        }
    }
}
