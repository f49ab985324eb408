//! Exact coefficient fields: the rationals and prime fields `F_p`.
//!
//! A [`Scalar`] carries its field with it. Arithmetic between scalars of
//! different fields is a programming error and panics; code that accepts
//! values from outside (for instance [`crate::algebra::poly_equal`]) checks
//! [`Scalar::field`] first and reports a `FieldMismatch` instead.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::AlgebraError;

/// Which exact field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, rejecting composite or too large moduli.
    pub fn prime(p: u64) -> Result<Self, AlgebraError> {
        if p >= 1 << 62 || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// `0` for the rationals, `p` for `F_p`.
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        Scalar::from_i64(self, 0)
    }

    pub fn one(self) -> Scalar {
        Scalar::from_i64(self, 1)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    /// Accepts `Q`, `rational`, `101`, `F101`, `F_101`, `p101`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let digits = t.trim_start_matches(['F', 'f', 'p', 'P']).trim_start_matches('_');
        let p: u64 = digits.parse().map_err(|_| AlgebraError::BadField(s.to_string()))?;
        Field::prime(p)
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = AlgebraError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Exact rational with an `i64` fast path.
///
/// Invariant: `Small` is reduced with a positive denominator, and `Big` only
/// holds values that do not fit `Small`. Equality and hashing rely on this.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Rational {
    Small { num: i64, den: i64 },
    Big(BigRational),
}

impl Rational {
    pub fn from_i64(n: i64) -> Self {
        Rational::Small { num: n, den: 1 }
    }

    /// `num/den`; panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(num), Ok(den)) => Rational::Small { num, den },
            _ => Rational::Big(BigRational::new(BigInt::from(n), BigInt::from(d))),
        }
    }

    fn from_big(r: BigRational) -> Self {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(num), Some(den)) => Rational::Small { num, den },
            _ => Rational::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rational::Small { num, den } => BigRational::new_raw(BigInt::from(*num), BigInt::from(*den)),
            Rational::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rational::Small { num: 0, .. })
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rational::Small { den, .. } => *den == 1,
            Rational::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Rational::Small { num, .. } => BigInt::from(*num),
            Rational::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Rational::Small { den, .. } => BigInt::from(*den),
            Rational::Big(r) => r.denom().clone(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if let (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) = (self, rhs) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            if b == 1 && d == 1 {
                return Self::from_i128(a + c, 1);
            }
            if let (Some(x), Some(y)) = (a.checked_mul(d), c.checked_mul(b)) {
                if let Some(n) = x.checked_add(y) {
                    return Self::from_i128(n, b * d);
                }
            }
        }
        Self::from_big(self.to_big() + rhs.to_big())
    }

    pub fn neg(&self) -> Self {
        match self {
            Rational::Small { num, den } if *num != i64::MIN => Rational::Small { num: -num, den: *den },
            _ => Self::from_big(-self.to_big()),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if let (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) = (self, rhs) {
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            return Self::from_i128(a * c, b * d);
        }
        Self::from_big(self.to_big() * rhs.to_big())
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Rational::Small { num, den } => Self::from_i128(*den as i128, *num as i128),
            Rational::Big(r) => Self::from_big(r.recip()),
        })
    }

    fn cmp_value(&self, rhs: &Self) -> Ordering {
        match (self, rhs) {
            (Rational::Small { num: a, den: b }, Rational::Small { num: c, den: d }) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&rhs.to_big()),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Rational::Small { num, .. } => *num < 0,
            Rational::Big(r) => r.is_negative(),
        }
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rational::Small { num, den: 1 } => write!(f, "{num}"),
            Rational::Small { num, den } => write!(f, "{num}/{den}"),
            Rational::Big(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Rational::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Element of `F_p`, stored reduced in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let m = modulus as i128;
        let v = (value as i128).rem_euclid(m) as u64;
        Fp { value: v, modulus }
    }

    pub fn value(self) -> u64 {
        self.value
    }

    pub fn modulus(self) -> u64 {
        self.modulus
    }

    fn check(self, rhs: Fp) {
        assert_eq!(self.modulus, rhs.modulus, "mixed prime moduli");
    }

    pub fn add(self, rhs: Fp) -> Fp {
        self.check(rhs);
        let s = self.value as u128 + rhs.value as u128;
        Fp { value: (s % self.modulus as u128) as u64, modulus: self.modulus }
    }

    pub fn neg(self) -> Fp {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }

    pub fn mul(self, rhs: Fp) -> Fp {
        self.check(rhs);
        Fp { value: mul_mod(self.value, rhs.value, self.modulus), modulus: self.modulus }
    }

    pub fn inv(self) -> Option<Fp> {
        if self.value == 0 {
            return None;
        }
        Some(Fp { value: pow_mod(self.value, self.modulus - 2, self.modulus), modulus: self.modulus })
    }
}

/// A field element of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Q(Rational),
    Fp(Fp),
}

impl Hash for Scalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Scalar::Q(r) => r.hash(state),
            Scalar::Fp(x) => x.hash(state),
        }
    }
}

impl Scalar {
    pub fn from_i64(field: Field, n: i64) -> Self {
        match field {
            Field::Rational => Scalar::Q(Rational::from_i64(n)),
            Field::Prime(p) => Scalar::Fp(Fp::new(n, p)),
        }
    }

    /// `num/den` in `field`; `None` when `den` vanishes there.
    pub fn from_ratio(field: Field, num: i64, den: i64) -> Option<Self> {
        match field {
            Field::Rational => (den != 0).then(|| Scalar::Q(Rational::new(num, den))),
            Field::Prime(p) => {
                let d = Fp::new(den, p).inv()?;
                Some(Scalar::Fp(Fp::new(num, p).mul(d)))
            }
        }
    }

    /// Reduces an exact rational into `field`; `None` if the denominator
    /// vanishes mod `p`.
    pub fn from_rational(field: Field, r: &Rational) -> Option<Self> {
        match field {
            Field::Rational => Some(Scalar::Q(r.clone())),
            Field::Prime(p) => {
                let m = BigInt::from(p);
                let n = r.numer().mod_floor(&m).to_i64()?;
                let d = r.denom().mod_floor(&m).to_i64()?;
                let dinv = Fp::new(d, p).inv()?;
                Some(Scalar::Fp(Fp::new(n, p).mul(dinv)))
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::Fp(x) => Field::Prime(x.modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp(x) => x.value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => matches!(r, Rational::Small { num: 1, den: 1 }),
            Scalar::Fp(x) => x.value == 1,
        }
    }

    pub fn zero_like(&self) -> Self {
        Scalar::from_i64(self.field(), 0)
    }

    pub fn one_like(&self) -> Self {
        Scalar::from_i64(self.field(), 1)
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.add(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.add(*b)),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn sub(&self, rhs: &Scalar) -> Scalar {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a.mul(b)),
            (Scalar::Fp(a), Scalar::Fp(b)) => Scalar::Fp(a.mul(*b)),
            _ => panic!("mixed coefficient fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(a.neg()),
            Scalar::Fp(a) => Scalar::Fp(a.neg()),
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        match self {
            Scalar::Q(a) => a.inv().map(Scalar::Q),
            Scalar::Fp(a) => a.inv().map(Scalar::Fp),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut acc = self.one_like();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Scalar::Q(r) => Some(r),
            Scalar::Fp(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => write!(f, "{r}"),
            Scalar::Fp(x) => write!(f, "{}", x.value),
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_i64(n)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational::from_i64(0)
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
}

impl std::ops::Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Self) -> Self {
        Rational::add(&self, &rhs)
    }
}

impl std::ops::Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Self) -> Self {
        Rational::mul(&self, &rhs)
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational::from_i64(1)
    }
}
