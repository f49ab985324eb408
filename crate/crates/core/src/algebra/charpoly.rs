//! Coefficients of the characteristic polynomial by Berkowitz's
//! division-free algorithm, valid over any commutative ring.
//!
//! Convention: `det(t I - M) = t^d - σ_1 t^(d-1) + σ_2 t^(d-2) - ...`, so
//! `σ_1` is the trace and `σ_d` the determinant.

use super::{AlgebraError, Matrix, Ring};

/// `[σ_1, ..., σ_d]` of a square matrix.
pub fn char_poly_coeffs<T: Ring>(m: &Matrix<T>) -> Result<Vec<T>, AlgebraError> {
    m.require_square()?;
    let c = berkowitz(m);
    Ok(c.into_iter().enumerate().skip(1).map(|(j, cj)| if j % 2 == 1 { cj.neg_ref() } else { cj }).collect())
}

/// `σ_j(M)`; zero for `j > d`. `j = 0` gives one.
pub fn sigma<T: Ring>(m: &Matrix<T>, j: usize) -> Result<T, AlgebraError> {
    m.require_square()?;
    if j == 0 {
        return Ok(T::one_of(m.field()));
    }
    if j > m.rows() {
        return Ok(T::zero_of(m.field()));
    }
    Ok(char_poly_coeffs(m)?.swap_remove(j - 1))
}

/// Coefficient vector `[1, c_1, ..., c_n]` of `det(t I - M) = Σ c_k t^(n-k)`.
///
/// Peels off the leading row and column repeatedly: with
/// `M = [[a, R], [C, A]]`, the vector of `M` is a lower-triangular Toeplitz
/// matrix built from `1, -a, -RC, -RAC, ...` times the vector of `A`.
fn berkowitz<T: Ring>(m: &Matrix<T>) -> Vec<T> {
    let n = m.rows();
    let field = m.field();
    let one = T::one_of(field);
    if n == 0 {
        return vec![one];
    }
    // vector of the trailing 1x1 block
    let last = n - 1;
    let mut vec = vec![one.clone(), m.get(last, last).neg_ref()];
    for start in (0..last).rev() {
        let size = n - start;
        let a = m.get(start, start);
        // c = C, the column below (start, start)
        let mut col: Vec<T> = (start + 1..n).map(|i| m.get(i, start).clone()).collect();
        let mut diag = Vec::with_capacity(size + 1);
        diag.push(one.clone());
        diag.push(a.neg_ref());
        for step in 0..size - 1 {
            // -R * A^step * C
            let mut rc = T::zero_of(field);
            for (k, ck) in col.iter().enumerate() {
                let r = m.get(start, start + 1 + k);
                if !r.is_zero() && !ck.is_zero() {
                    rc = rc.add_ref(&r.mul_ref(ck));
                }
            }
            diag.push(rc.neg_ref());
            if step + 1 < size - 1 {
                col = (0..col.len())
                    .map(|i| {
                        let mut acc = T::zero_of(field);
                        for (k, ck) in col.iter().enumerate() {
                            let e = m.get(start + 1 + i, start + 1 + k);
                            if !e.is_zero() && !ck.is_zero() {
                                acc = acc.add_ref(&e.mul_ref(ck));
                            }
                        }
                        acc
                    })
                    .collect();
            }
        }
        // Toeplitz (size+1) x size times vec (length size)
        let next: Vec<T> = (0..=size)
            .map(|i| {
                let mut acc = T::zero_of(field);
                for (j, vj) in vec.iter().enumerate().take(i + 1) {
                    let t = &diag[i - j];
                    if !t.is_zero() && !vj.is_zero() {
                        acc = acc.add_ref(&t.mul_ref(vj));
                    }
                }
                acc
            })
            .collect();
        vec = next;
    }
    vec
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{generic_matrix, Field, Scalar};
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn ints(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| Scalar::from_i64(Q, x)).collect()
    }

    #[test]
    fn identity_and_diagonal() {
        let i2 = Matrix::<Scalar>::identity(Q, 2);
        assert_eq!(char_poly_coeffs(&i2).unwrap(), ints(&[2, 1]));
        let d = Matrix::from_i64(Q, 2, 2, &[1, 0, 0, 2]);
        assert_eq!(char_poly_coeffs(&d).unwrap(), ints(&[3, 2]));
    }

    #[test]
    fn generic_two_by_two() {
        let y = generic_matrix(Q, "a", 2, 2);
        let c = char_poly_coeffs(&y).unwrap();
        assert_eq!(c[0].to_string(), "y[a][1][1] + y[a][2][2]");
        assert_eq!(c[1].to_string(), "y[a][1][1]*y[a][2][2] - y[a][1][2]*y[a][2][1]");
    }

    #[test]
    fn sigma_truncates() {
        let y = generic_matrix(Q, "a", 2, 2);
        assert!(sigma(&y, 3).unwrap().is_zero());
        assert!(matches!(sigma(&generic_matrix(Q, "b", 2, 3), 1), Err(AlgebraError::NotSquare { .. })));
    }

    #[test]
    fn one_by_one_and_empty() {
        let m = Matrix::from_i64(Q, 1, 1, &[5]);
        assert_eq!(char_poly_coeffs(&m).unwrap(), ints(&[5]));
        let e = Matrix::<Scalar>::zeros(Q, 0, 0);
        assert!(char_poly_coeffs(&e).unwrap().is_empty());
    }

    /// Cofactor expansion, independent of elimination and of Berkowitz.
    fn cofactor_det(m: &Matrix<Scalar>) -> Scalar {
        let n = m.rows();
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = m.field().zero();
        for j in 0..n {
            let minor =
                Matrix::from_fn(m.field(), n - 1, n - 1, |r, c| m.get(r + 1, if c < j { c } else { c + 1 }).clone());
            let term = m.get(0, j).mul(&cofactor_det(&minor));
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    proptest! {
        #[test]
        fn trace_and_determinant(entries in prop::collection::vec((-9i64..10, 1i64..5), 9)) {
            let data = entries.iter().map(|&(n, d)| Scalar::from_ratio(Q, n, d).unwrap()).collect();
            let m = Matrix::from_rows(Q, 3, 3, data);
            let c = char_poly_coeffs(&m).unwrap();
            prop_assert_eq!(&c[0], &m.trace().unwrap());
            prop_assert_eq!(&c[2], &cofactor_det(&m));
            prop_assert_eq!(c[2].clone(), m.det().unwrap());
        }

        #[test]
        fn reduction_mod_p_commutes(entries in prop::collection::vec(-50i64..50, 9), pi in 0usize..3) {
            let p = [2u64, 3, 101][pi];
            let fp = Field::Prime(p);
            let mq = Matrix::from_i64(Q, 3, 3, &entries);
            let mp = Matrix::from_i64(fp, 3, 3, &entries);
            let cq = char_poly_coeffs(&mq).unwrap();
            let cp = char_poly_coeffs(&mp).unwrap();
            for (a, b) in cq.iter().zip(&cp) {
                let r = Scalar::from_rational(fp, a.as_rational().unwrap()).unwrap();
                prop_assert_eq!(&r, b);
            }
        }
    }
}
