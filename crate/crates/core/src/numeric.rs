//! Exact arithmetic: rationals, harmonic numbers, binomials, Gaussian
//! binomials and the two q-analogue inversion transforms.
//!
//! Everything here is integer or rational exact. Floating point only shows up
//! in [`ExactRational::to_f64`] and the JSON `approx` field.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An unbounded rational number kept in lowest terms with a positive
/// denominator.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Self> {
        let den = den.into();
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(Self(BigRational::new(num.into(), den)))
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Self(BigRational::zero())
    }

    pub fn one() -> Self {
        Self(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn recip(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::Invalid("reciprocal of zero".into()));
        }
        Ok(Self(self.0.recip()))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    pub fn as_big_rational(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        Self(r)
    }
}

impl From<BigInt> for ExactRational {
    fn from(n: BigInt) -> Self {
        Self::from_integer(n)
    }
}

impl From<i64> for ExactRational {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ExactRational {
    type Err = Error;

    /// Accepts `a/b` or a bare integer `a`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("not a rational: {s:?}"));
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim(), b.trim()),
            None => (s.trim(), "1"),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let den: BigInt = den.parse().map_err(|_| bad())?;
        Self::new(num, den)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: ExactRational) -> ExactRational {
                ExactRational(self.0.$method(rhs.0))
            }
        }
        impl<'a> $trait<&'a ExactRational> for &'a ExactRational {
            type Output = ExactRational;
            fn $method(self, rhs: &'a ExactRational) -> ExactRational {
                ExactRational((&self.0).$method(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);
forward_binop!(Div, div);

impl AddAssign<&ExactRational> for ExactRational {
    fn add_assign(&mut self, rhs: &ExactRational) {
        self.0 += &rhs.0;
    }
}

impl SubAssign<&ExactRational> for ExactRational {
    fn sub_assign(&mut self, rhs: &ExactRational) {
        self.0 -= &rhs.0;
    }
}

impl Neg for ExactRational {
    type Output = ExactRational;
    fn neg(self) -> ExactRational {
        ExactRational(-self.0)
    }
}

/// Rounds to `digits` significant decimal digits. Used for every decimal we
/// put on the wire so identical inputs give byte-identical output.
pub fn round_significant(x: f64, digits: usize) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{:.*e}", digits.saturating_sub(1), x)
        .parse()
        .unwrap_or(x)
}

#[derive(Serialize, Deserialize)]
struct RationalRepr {
    num: String,
    den: String,
    approx: f64,
}

impl Serialize for ExactRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        RationalRepr {
            num: self.numer().to_string(),
            den: self.denom().to_string(),
            approx: round_significant(self.to_f64(), 12),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExactRational {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = RationalRepr::deserialize(deserializer)?;
        let num: BigInt = repr
            .num
            .parse()
            .map_err(|_| D::Error::custom("num is not a decimal integer"))?;
        let den: BigInt = repr
            .den
            .parse()
            .map_err(|_| D::Error::custom("den is not a decimal integer"))?;
        if !den.is_positive() {
            return Err(D::Error::custom("den must be positive"));
        }
        Ok(ExactRational(BigRational::new(num, den)))
    }
}

/// A finite integer sequence indexed from 0. Never empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerSequence(Vec<BigInt>);

impl IntegerSequence {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Invalid("integer sequence must be non-empty".into()));
        }
        Ok(Self(values))
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    pub fn values(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_inner(self) -> Vec<BigInt> {
        self.0
    }
}

/// `H_m = 1 + 1/2 + ... + 1/m`, with `H_0 = 0`.
pub fn harmonic(m: u64) -> ExactRational {
    let mut acc = BigRational::zero();
    for i in 1..=m {
        acc += BigRational::new(BigInt::one(), BigInt::from(i));
    }
    ExactRational(acc)
}

/// Ordinary binomial coefficient; zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

pub fn pow_big(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `C(x, 2)` for non-negative `x`.
fn choose2(x: u64) -> u64 {
    x * x.saturating_sub(1) / 2
}

/// Gaussian binomials `[m choose i]_q` for all `0 <= i <= m <= max_m`,
/// filled by the q-Pascal rule `[m, i] = [m-1, i-1] + q^i [m-1, i]`.
#[derive(Clone, Debug)]
pub struct QBinomialTable {
    q: u64,
    rows: Vec<Vec<BigInt>>,
    q_pows: Vec<BigInt>,
}

impl QBinomialTable {
    pub fn new(q: u64, max_m: usize) -> Self {
        assert!(q >= 2, "q-binomials need q >= 2");
        let mut q_pows = Vec::with_capacity(max_m + 1);
        let mut p = BigInt::one();
        for _ in 0..=max_m {
            q_pows.push(p.clone());
            p *= q;
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_m + 1);
        rows.push(vec![BigInt::one()]);
        for m in 1..=max_m {
            let prev = &rows[m - 1];
            let mut row = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let left = if i > 0 {
                    prev[i - 1].clone()
                } else {
                    BigInt::zero()
                };
                let right = if i < m {
                    &q_pows[i] * &prev[i]
                } else {
                    BigInt::zero()
                };
                row.push(left + right);
            }
            rows.push(row);
        }
        Self { q, rows, q_pows }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn max_m(&self) -> usize {
        self.rows.len() - 1
    }

    /// `[m choose i]_q`, zero when `i` is out of range.
    pub fn get(&self, m: usize, i: i64) -> BigInt {
        if i < 0 || i as usize > m {
            return BigInt::zero();
        }
        self.rows[m][i as usize].clone()
    }

    fn get_ref(&self, m: usize, i: usize) -> &BigInt {
        &self.rows[m][i]
    }

    /// `q^e` for `e <= max_m`.
    pub fn q_pow(&self, e: usize) -> &BigInt {
        &self.q_pows[e]
    }
}

pub fn q_binomial(m: u64, i: i64, q: u64) -> BigInt {
    if i < 0 || i as u64 > m {
        return BigInt::zero();
    }
    QBinomialTable::new(q, m as usize).get(m as usize, i)
}

/// `prod_{s=0}^{i-1} (q^i - q^s)`: the order of GL_i(F_q).
pub fn gl_order(q: u64, i: u64) -> BigInt {
    let qi = pow_big(q, i);
    (0..i).fold(BigInt::one(), |acc, s| acc * (&qi - pow_big(q, s)))
}

/// The coefficient
/// `sum_{j=m}^{n} (prod_{v<j} 1/(q^j - q^v)) q^{C(j,2)+C(j-m,2)} [j choose m]_q`.
pub fn gamma_coeff(q: u64, m: u64, n: u64) -> ExactRational {
    assert!(m <= n, "gamma_coeff needs m <= n");
    let table = QBinomialTable::new(q, n as usize);
    gamma_with_table(&table, m, n)
}

/// `gamma(q, m, n)` for every `0 <= m <= n`, sharing one q-binomial table.
pub fn gamma_row(q: u64, n: u64) -> Vec<ExactRational> {
    let table = QBinomialTable::new(q, n as usize);
    (0..=n).map(|m| gamma_with_table(&table, m, n)).collect()
}

fn gamma_with_table(table: &QBinomialTable, m: u64, n: u64) -> ExactRational {
    let q = table.q();
    let mut acc = BigRational::zero();
    for j in m..=n {
        let den = gl_order(q, j);
        let num = pow_big(q, choose2(j) + choose2(j - m)) * table.get_ref(j as usize, m as usize);
        acc += BigRational::new(num, den);
    }
    ExactRational(acc)
}

/// Checks `q^{jr} = sum_{i=0}^{r} [j,i]_q [r,i]_q prod_{s<i} (q^i - q^s)`,
/// the count of `j x r` matrices over F_q split by rank.
pub fn verify_qjr_identity(j: u64, r: u64, q: u64) -> bool {
    let table = QBinomialTable::new(q, j.max(r) as usize);
    let rhs = (0..=r).fold(BigInt::zero(), |acc, i| {
        acc + table.get(j as usize, i as i64) * table.get(r as usize, i as i64) * gl_order(q, i)
    });
    pow_big(q, j * r) == rhs
}

/// Signed q-weight `(-1)^d q^{C(d,2)}`.
fn signed_q_weight(q: u64, d: u64) -> BigInt {
    let w = pow_big(q, choose2(d));
    if d % 2 == 1 {
        -w
    } else {
        w
    }
}

/// `y_m = sum_{i=0}^{m} [m choose i]_q x_i`.
pub fn forward_lower_q(x: &IntegerSequence, q: u64) -> IntegerSequence {
    let n = x.len();
    let table = QBinomialTable::new(q, n - 1);
    let out = (0..n)
        .map(|m| {
            (0..=m).fold(BigInt::zero(), |acc, i| {
                acc + table.get_ref(m, i) * &x.values()[i]
            })
        })
        .collect();
    IntegerSequence(out)
}

/// Inverse of [`forward_lower_q`]:
/// `x_i = sum_{m=0}^{i} (-1)^{i-m} q^{C(i-m,2)} [i choose m]_q y_m`.
pub fn invert_lower_q(y: &IntegerSequence, q: u64) -> IntegerSequence {
    let n = y.len();
    let table = QBinomialTable::new(q, n - 1);
    let out = (0..n)
        .map(|i| {
            (0..=i).fold(BigInt::zero(), |acc, m| {
                acc + signed_q_weight(q, (i - m) as u64) * table.get_ref(i, m) * &y.values()[m]
            })
        })
        .collect();
    IntegerSequence(out)
}

/// `y_i = sum_{j=i}^{n} [j choose i]_q x_j`.
pub fn forward_upper_q(x: &IntegerSequence, q: u64) -> IntegerSequence {
    let n = x.len();
    let table = QBinomialTable::new(q, n - 1);
    let out = (0..n)
        .map(|i| {
            (i..n).fold(BigInt::zero(), |acc, j| {
                acc + table.get_ref(j, i) * &x.values()[j]
            })
        })
        .collect();
    IntegerSequence(out)
}

/// Inverse of [`forward_upper_q`]:
/// `x_j = sum_{i=j}^{n} (-1)^{i-j} q^{C(i-j,2)} [i choose j]_q y_i`.
pub fn invert_upper_q(y: &IntegerSequence, q: u64) -> IntegerSequence {
    let n = y.len();
    let table = QBinomialTable::new(q, n - 1);
    let out = (0..n)
        .map(|j| {
            (j..n).fold(BigInt::zero(), |acc, i| {
                acc + signed_q_weight(q, (i - j) as u64) * table.get_ref(i, j) * &y.values()[i]
            })
        })
        .collect();
    IntegerSequence(out)
}

/// Exact division helper for callers that know the quotient is integral.
pub fn exact_div(a: &BigInt, b: &BigInt) -> Option<BigInt> {
    let (quot, rem) = a.div_rem(b);
    rem.is_zero().then_some(quot)
}
