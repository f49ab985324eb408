//! Random scalars and matrices for randomized identity checks.

use rand::Rng;

use super::{Field, Matrix, Scalar};

/// Uniform element of `F_p`, or over the rationals a small fraction `n/d`
/// with `|n| <= 9` and `1 <= d <= 4` so denominators are exercised.
pub fn random_scalar<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Scalar {
    match field {
        Field::Rational => small_rational(rng, 9, 4),
        Field::Prime(p) => Scalar::from_i64(field, rng.gen_range(0..p) as i64),
    }
}

pub fn small_rational<R: Rng + ?Sized>(rng: &mut R, max_num: i64, max_den: i64) -> Scalar {
    let n = rng.gen_range(-max_num..=max_num);
    let d = rng.gen_range(1..=max_den);
    Scalar::from_ratio(Field::Rational, n, d).expect("nonzero denominator")
}

pub fn random_matrix<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix<Scalar> {
    Matrix::from_fn(field, rows, cols, |_, _| random_scalar(field, rng))
}

/// Rejection-samples an invertible matrix.
pub fn random_invertible<R: Rng + ?Sized>(field: Field, n: usize, rng: &mut R) -> Matrix<Scalar> {
    loop {
        let m = random_matrix(field, n, n, rng);
        if !m.det().expect("square").is_zero() {
            return m;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn invertible_samples_have_inverses() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for field in [Field::Rational, Field::Prime(2), Field::Prime(101)] {
            for _ in 0..20 {
                let g = random_invertible(field, 3, &mut rng);
                let gi = g.inverse().unwrap();
                assert_eq!(g.mul(&gi).unwrap(), Matrix::identity(field, 3));
            }
        }
    }

    #[test]
    fn seeded_sampling_is_reproducible() {
        let a = random_matrix(Field::Rational, 2, 2, &mut ChaCha8Rng::seed_from_u64(1));
        let b = random_matrix(Field::Rational, 2, 2, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(a, b);
    }
}
