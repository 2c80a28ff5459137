//! Weight distributions, the MacWilliams transform, the support census and
//! the extended weight enumerator.
//!
//! The census is the one expensive pass: for every coordinate subset `S` it
//! records `(|S|, dim C(S))`. The counts `alpha`, `beta`, `beta_hat` and the
//! polynomials `B_t(U)` are all read off it afterwards.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::gf::{embed, FiniteField};
use crate::linalg::{MatrixGF, SpanState};
use crate::numeric::{binomial, exact_div, pow_big};

/// Largest length for which all `2^n` subsets are visited.
pub const CENSUS_MAX_N: usize = 28;

/// Number of high mask bits used to split census work into chunks.
const CHUNK_BITS: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    counts: Vec<BigInt>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigInt>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::InvalidDistribution("needs at least W_0".into()));
        }
        if counts.iter().any(|c| c.is_negative()) {
            return Err(Error::InvalidDistribution("negative count".into()));
        }
        Ok(Self {
            n: counts.len() - 1,
            counts,
        })
    }

    pub fn from_u64s(counts: &[u64]) -> Result<Self> {
        Self::new(counts.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `W_0 = 1`, everything else zero: the zero code.
    pub fn delta(n: usize) -> Self {
        let mut counts = vec![BigInt::zero(); n + 1];
        counts[0] = BigInt::one();
        Self { n, counts }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigInt] {
        &self.counts
    }

    pub fn get(&self, i: usize) -> BigInt {
        self.counts.get(i).cloned().unwrap_or_default()
    }

    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight present.
    pub fn minimum_distance(&self) -> Option<usize> {
        (1..=self.n).find(|&i| !self.counts[i].is_zero())
    }
}

#[derive(Serialize, Deserialize)]
struct WeightDistributionRepr {
    n: usize,
    counts: Vec<String>,
}

impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        WeightDistributionRepr {
            n: self.n,
            counts: self.counts.iter().map(ToString::to_string).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for WeightDistribution {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = WeightDistributionRepr::deserialize(deserializer)?;
        if repr.counts.len() != repr.n + 1 {
            return Err(D::Error::custom("counts must have n + 1 entries"));
        }
        let counts = repr
            .counts
            .iter()
            .map(|c| c.parse::<BigInt>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| D::Error::custom("counts must be decimal integers"))?;
        WeightDistribution::new(counts).map_err(D::Error::custom)
    }
}

/// Counts codewords by Hamming weight.
pub fn weight_distribution(code: &LinearCode) -> Result<WeightDistribution> {
    let mut counts = vec![0u64; code.n() + 1];
    code.for_each_codeword(|w| counts[w.iter().filter(|&&c| c != 0).count()] += 1)?;
    WeightDistribution::from_u64s(&counts)
}

/// Krawtchouk polynomial `K_j(i) = sum_a (-1)^a (q-1)^(j-a) C(i,a) C(n-i,j-a)`.
fn krawtchouk(n: usize, q: u64, j: usize, i: usize) -> BigInt {
    (0..=j).fold(BigInt::zero(), |acc, a| {
        let term = pow_big(q - 1, (j - a) as u64)
            * binomial(i as u64, a as i64)
            * binomial((n - i) as u64, (j - a) as i64);
        if a % 2 == 1 {
            acc - term
        } else {
            acc + term
        }
    })
}

/// Weight distribution of the dual of an `[n, k]_q` code with distribution
/// `w`, via `W_dual(X, Y) = W(X + (q-1)Y, X - Y) / q^k`.
pub fn macwilliams_dual(w: &WeightDistribution, q: u64, k: usize) -> Result<WeightDistribution> {
    if q < 2 {
        return Err(Error::InvalidDistribution(format!("q = {q}")));
    }
    let size = pow_big(q, k as u64);
    if w.total() != size {
        return Err(Error::InvalidDistribution(format!(
            "counts sum to {}, expected {q}^{k}",
            w.total()
        )));
    }
    let n = w.n();
    let counts = (0..=n)
        .map(|j| {
            let s = (0..=n).fold(BigInt::zero(), |acc, i| {
                acc + &w.counts[i] * krawtchouk(n, q, j, i)
            });
            match exact_div(&s, &size) {
                Some(v) if !v.is_negative() => Ok(v),
                _ => Err(Error::InvalidDistribution(format!(
                    "transform of weight {j} is not a nonnegative integer"
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(counts)
}

/// `table[r][j]` = number of subsets `S` with `|S| = r` and `dim C(S) = j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportCensus {
    n: usize,
    k: usize,
    table: Vec<Vec<u64>>,
}

impl SupportCensus {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn table(&self) -> &[Vec<u64>] {
        &self.table
    }

    /// `beta_hat_j(C, r)`; zero outside the table.
    pub fn count(&self, r: usize, j: i64) -> u64 {
        if r > self.n || j < 0 || j as usize > self.k {
            return 0;
        }
        self.table[r][j as usize]
    }

    pub fn beta_hat(&self, j: i64, r: usize) -> BigInt {
        BigInt::from(self.count(r, j))
    }
}

/// Number of information sets of size `s`: `table[n - s][0]`.
pub fn alpha(census: &SupportCensus, s: usize) -> BigInt {
    if s > census.n {
        return BigInt::zero();
    }
    census.beta_hat(0, census.n - s)
}

/// `beta_ell(C, s)`: size-`s` subsets whose complement supports a subcode of
/// dimension `ell`. Out-of-range `ell` gives zero.
pub fn beta(census: &SupportCensus, ell: i64, s: usize) -> BigInt {
    if s > census.n {
        return BigInt::zero();
    }
    census.beta_hat(ell, census.n - s)
}

/// Runs the census over all `2^n` coordinate subsets.
pub fn support_census(code: &LinearCode) -> Result<SupportCensus> {
    let n = code.n();
    let k = code.k();
    if n > CENSUS_MAX_N {
        return Err(Error::Guard {
            what: "support census",
            detail: format!("n = {n} > {CENSUS_MAX_N}"),
        });
    }
    let columns = code.generator().columns();
    let field = code.field().clone();

    let chunk_bits = n.min(CHUNK_BITS);
    let low = n - chunk_bits;
    let tables: Vec<Vec<Vec<u64>>> = (0..1u64 << chunk_bits)
        .into_par_iter()
        .map(|chunk| census_chunk(&field, &columns, k, low, chunk))
        .collect();

    let mut table = vec![vec![0u64; k + 1]; n + 1];
    for t in tables {
        for (row, chunk_row) in table.iter_mut().zip(t) {
            for (a, b) in row.iter_mut().zip(chunk_row) {
                *a += b;
            }
        }
    }
    Ok(SupportCensus { n, k, table })
}

/// Handles all masks whose bits `low..n` equal `chunk`. For a subset `T` of
/// columns with rank `rho`, its complement `S` has `|S| = n - |T|` and
/// `dim C(S) = k - rho`.
fn census_chunk(
    field: &Arc<FiniteField>,
    columns: &[Vec<u32>],
    k: usize,
    low: usize,
    chunk: u64,
) -> Vec<Vec<u64>> {
    let n = columns.len();
    let mut table = vec![vec![0u64; k + 1]; n + 1];
    let mut base = SpanState::new(field.clone(), k);
    let mut base_size = 0;
    for bit in 0..n - low {
        if chunk >> bit & 1 == 1 {
            base.insert(&columns[low + bit]);
            base_size += 1;
        }
    }
    let mut states: Vec<SpanState> = (0..=low)
        .map(|_| SpanState::new(field.clone(), k))
        .collect();
    states[0].copy_from(&base);
    let binoms: Vec<Vec<u64>> = (0..=low)
        .map(|m| (0..=m).map(|t| binom_u64(m, t)).collect())
        .collect();
    let mut walker = CensusWalk {
        columns: &columns[..low],
        k,
        n,
        states,
        table: &mut table,
        binoms: &binoms,
    };
    walker.visit(0, 0, base_size);
    table
}

fn binom_u64(n: usize, k: usize) -> u64 {
    binomial(n as u64, k as i64)
        .try_into()
        .expect("fits in u64 for n <= 64")
}

struct CensusWalk<'a> {
    columns: &'a [Vec<u32>],
    k: usize,
    n: usize,
    states: Vec<SpanState>,
    table: &'a mut Vec<Vec<u64>>,
    binoms: &'a [Vec<u64>],
}

impl CensusWalk<'_> {
    /// `states[depth]` spans the current subset; subsets extend only with
    /// columns `>= start`.
    fn visit(&mut self, start: usize, depth: usize, size: usize) {
        let rank = self.states[depth].rank();
        let remaining = self.columns.len() - start;
        if rank == self.k {
            // every superset is spanning too
            for t in 0..=remaining {
                self.table[self.n - size - t][0] += self.binoms[remaining][t];
            }
            return;
        }
        self.table[self.n - size][self.k - rank] += 1;
        for j in start..self.columns.len() {
            let (head, tail) = self.states.split_at_mut(depth + 1);
            let next = &mut tail[0];
            next.copy_from(&head[depth]);
            next.insert(&self.columns[j]);
            self.visit(j + 1, depth + 1, size + 1);
        }
    }
}

/// The polynomials `B_t(U) = sum_{|J| = t} (U^{dim C(J^c)} - 1)`, each
/// stored as coefficients of `1, U, ..., U^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedEnumerator {
    n: usize,
    k: usize,
    b_polys: Vec<Vec<i64>>,
}

impl ExtendedEnumerator {
    pub fn from_census(census: &SupportCensus) -> Self {
        let (n, k) = (census.n, census.k);
        let b_polys = (0..=n)
            .map(|t| {
                let mut coeffs = vec![0i64; k + 1];
                for j in 1..=k {
                    let c = census.table[n - t][j] as i64;
                    coeffs[j] += c;
                    coeffs[0] -= c;
                }
                coeffs
            })
            .collect();
        Self { n, k, b_polys }
    }

    /// Validates `B_t(1) = 0` for every `t`.
    pub fn new(b_polys: Vec<Vec<i64>>) -> Result<Self> {
        if b_polys.is_empty() {
            return Err(Error::Invalid("extended enumerator needs B_0".into()));
        }
        let k = b_polys
            .iter()
            .map(|p| p.len().saturating_sub(1))
            .max()
            .unwrap_or(0);
        for (t, p) in b_polys.iter().enumerate() {
            let at_one = p.iter().try_fold(0i64, |acc, &c| acc.checked_add(c));
            if at_one != Some(0) {
                return Err(Error::Invalid(format!("B_{t}(1) != 0")));
            }
        }
        let b_polys = b_polys
            .into_iter()
            .map(|mut p| {
                p.resize(k + 1, 0);
                p
            })
            .collect();
        Ok(Self { n: 0, k, b_polys }.with_n())
    }

    fn with_n(mut self) -> Self {
        self.n = self.b_polys.len() - 1;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn b_polys(&self) -> &[Vec<i64>] {
        &self.b_polys
    }

    pub fn eval_b(&self, t: usize, u: &BigInt) -> BigInt {
        self.b_polys[t]
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, &c| acc * u + c)
    }

    /// Coefficient of `X^(n-i) Y^i` in `W(X, Y, U)`, as a polynomial in `U`.
    pub fn weight_polynomials(&self) -> Vec<Vec<BigInt>> {
        let n = self.n;
        let mut out = vec![vec![BigInt::zero(); self.k + 1]; n + 1];
        out[0][0] += 1;
        for (t, b) in self.b_polys.iter().enumerate() {
            // B_t(U) (X - Y)^t Y^(n-t)
            for a in 0..=t {
                let sign_binom = if a % 2 == 1 {
                    -binomial(t as u64, a as i64)
                } else {
                    binomial(t as u64, a as i64)
                };
                let i = n - t + a;
                for (deg, &c) in b.iter().enumerate() {
                    if c != 0 {
                        out[i][deg] += &sign_binom * c;
                    }
                }
            }
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
struct ExtendedEnumeratorRepr {
    b: Vec<Vec<i64>>,
}

impl Serialize for ExtendedEnumerator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        ExtendedEnumeratorRepr {
            b: self.b_polys.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ExtendedEnumerator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = ExtendedEnumeratorRepr::deserialize(deserializer)?;
        ExtendedEnumerator::new(repr.b).map_err(D::Error::custom)
    }
}

pub fn extended_enumerator(code: &LinearCode) -> Result<ExtendedEnumerator> {
    Ok(ExtendedEnumerator::from_census(&support_census(code)?))
}

/// Weight distribution of `C (x) F_{q^m}`, read off `W(X, Y, q^m)`.
/// `m = 0` stands for the zero code.
pub fn extension_weight_distribution(
    e: &ExtendedEnumerator,
    q: u64,
    m: u32,
) -> Result<WeightDistribution> {
    if m == 0 {
        return Ok(WeightDistribution::delta(e.n));
    }
    let u = pow_big(q, m as u64);
    let counts = e
        .weight_polynomials()
        .into_iter()
        .enumerate()
        .map(|(i, poly)| {
            let v = poly
                .iter()
                .rev()
                .fold(BigInt::zero(), |acc, c| acc * &u + c);
            if v.is_negative() {
                Err(Error::Inconsistent(format!(
                    "negative count at weight {i} for m = {m}"
                )))
            } else {
                Ok(v)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WeightDistribution::new(counts)
}

/// The code over GF(q^m) generated by the same matrix. Only prime base
/// fields are supported.
pub fn direct_extension_code(code: &LinearCode, m: u32) -> Result<LinearCode> {
    let base = code.field();
    if !base.is_prime_field() {
        return Err(Error::CodeParameters(
            "direct extension needs a prime base field".into(),
        ));
    }
    if m == 0 {
        return Err(Error::CodeParameters(
            "extension degree must be at least 1".into(),
        ));
    }
    let ext = FiniteField::new(base.p(), m)?;
    let words = ext
        .order()
        .checked_pow(code.k() as u32)
        .filter(|&c| c <= crate::codes::ENUMERATION_LIMIT);
    if words.is_none() {
        return Err(Error::Guard {
            what: "extension code enumeration",
            detail: format!("({})^{} codewords", ext.order(), code.k()),
        });
    }
    let g = code.generator();
    let entries = g
        .entries()
        .iter()
        .map(|&c| embed(base, &ext, &base.element(c)?).map(|e| e.code()))
        .collect::<Result<Vec<_>>>()?;
    LinearCode::from_generator(MatrixGF::new(ext, g.rows(), g.cols(), entries)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{
        extended_ternary_golay, full_space, hamming, reed_muller_1, reed_solomon, simplex,
        ternary_golay,
    };
    use crate::numeric::QBinomialTable;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn big(v: &[u64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    fn example_61(which: u8) -> LinearCode {
        let rows: Vec<Vec<u32>> = if which == 1 {
            vec![
                vec![1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 0],
                vec![0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1],
            ]
        } else {
            vec![
                vec![1, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
                vec![0, 1, 1, 0, 0, 0, 1, 1, 1, 1, 1, 1],
                vec![0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1, 1],
            ]
        };
        LinearCode::from_generator(
            MatrixGF::from_rows(FiniteField::new(2, 1).unwrap(), &rows).unwrap(),
        )
        .unwrap()
    }

    fn random_code(rng: &mut ChaCha8Rng, q: u64, k: usize, n: usize) -> LinearCode {
        let f = FiniteField::with_order(q).unwrap();
        loop {
            let entries = (0..k * n).map(|_| rng.random_range(0..q as u32)).collect();
            if let Ok(c) =
                LinearCode::from_generator(MatrixGF::new(f.clone(), k, n, entries).unwrap())
            {
                return c;
            }
        }
    }

    /// Census by brute force: for every mask, enumerate codewords supported
    /// inside it and take log_q of the count.
    fn brute_census(code: &LinearCode) -> Vec<Vec<u64>> {
        let (n, k, q) = (code.n(), code.k(), code.q());
        let words: Vec<u64> = code
            .codewords()
            .unwrap()
            .map(|w| {
                w.iter()
                    .enumerate()
                    .fold(0u64, |m, (i, &c)| m | ((c != 0) as u64) << i)
            })
            .collect();
        let mut table = vec![vec![0u64; k + 1]; n + 1];
        for s in 0..1u64 << n {
            let inside = words.iter().filter(|&&supp| supp & !s == 0).count() as u64;
            let dim = (0..=k).find(|&d| q.pow(d as u32) == inside).unwrap();
            table[s.count_ones() as usize][dim] += 1;
        }
        table
    }

    fn suite() -> Vec<LinearCode> {
        vec![
            example_61(1),
            example_61(2),
            simplex(2, 2).unwrap(),
            simplex(2, 3).unwrap(),
            simplex(3, 2).unwrap(),
            simplex(3, 3).unwrap(),
            hamming(2, 3).unwrap(),
            hamming(3, 2).unwrap(),
            ternary_golay().unwrap(),
            extended_ternary_golay().unwrap(),
            reed_muller_1(2, 3).unwrap(),
            reed_muller_1(3, 2).unwrap(),
            reed_solomon(7, 7, 3).unwrap(),
            reed_solomon(4, 4, 2).unwrap(),
            full_space(3, 3).unwrap(),
        ]
    }

    #[test]
    fn golay_distribution_and_dual() {
        let g = ternary_golay().unwrap();
        let w = weight_distribution(&g).unwrap();
        assert_eq!(
            w.counts(),
            big(&[1, 0, 0, 0, 0, 132, 132, 0, 330, 110, 0, 24])
        );
        let d = macwilliams_dual(&w, 3, 6).unwrap();
        assert_eq!(d.counts(), big(&[1, 0, 0, 0, 0, 0, 132, 0, 0, 110, 0, 0]));
        assert_eq!(macwilliams_dual(&d, 3, 5).unwrap(), w);
    }

    #[test]
    fn small_distributions() {
        let w = weight_distribution(&simplex(2, 2).unwrap()).unwrap();
        assert_eq!(w.counts(), big(&[1, 0, 3, 0]));
        let expected = big(&[1, 0, 0, 1, 1, 1, 0, 1, 1, 1, 0, 0, 1]);
        assert_eq!(
            weight_distribution(&example_61(1)).unwrap().counts(),
            expected
        );
        assert_eq!(
            weight_distribution(&example_61(2)).unwrap().counts(),
            expected
        );

        let full = weight_distribution(&full_space(2, 4).unwrap()).unwrap();
        assert_eq!(
            macwilliams_dual(&full, 2, 4).unwrap(),
            WeightDistribution::delta(4)
        );
    }

    #[test]
    fn macwilliams_rejects_invalid() {
        // total is right but no code has this enumerator
        let bogus = WeightDistribution::from_u64s(&[0, 2]).unwrap();
        assert!(macwilliams_dual(&bogus, 2, 1).is_err());
        let bad_total = WeightDistribution::from_u64s(&[1, 2]).unwrap();
        assert!(macwilliams_dual(&bad_total, 2, 1).is_err());
    }

    #[test]
    fn macwilliams_matches_dual_enumeration() {
        let mut codes = suite();
        codes.push(hamming(2, 4).unwrap());
        codes.push(simplex(2, 4).unwrap());
        for c in &codes {
            let w = weight_distribution(c).unwrap();
            let via_transform = macwilliams_dual(&w, c.q(), c.k()).unwrap();
            assert_eq!(
                via_transform,
                weight_distribution(&c.dual()).unwrap(),
                "{c:?}"
            );
        }
    }

    #[test]
    fn census_examples() {
        let c = support_census(&simplex(2, 2).unwrap()).unwrap();
        assert_eq!(c.count(1, 0), 3);
        assert_eq!(c.count(2, 1), 3);
        assert_eq!(c.count(3, 2), 1);
        assert_eq!(c.count(0, 0), 1);

        let rs = reed_solomon(7, 7, 3).unwrap();
        let c = support_census(&rs).unwrap();
        for r in 0..=4 {
            assert_eq!(BigInt::from(c.count(r, 0)), binomial(7, r as i64));
        }
        for s in 3..=7 {
            assert_eq!(alpha(&c, s), binomial(7, s as i64));
        }
        for s in 0..3 {
            assert_eq!(alpha(&c, s), BigInt::zero());
        }
    }

    #[test]
    fn census_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let mut codes = suite();
        for _ in 0..10 {
            let q = [2, 3, 4][rng.random_range(0..3)];
            let n = rng.random_range(3..=9);
            let k = rng.random_range(1..=n.min(4));
            codes.push(random_code(&mut rng, q, k, n));
        }
        for c in &codes {
            let census = support_census(c).unwrap();
            assert_eq!(census.table(), brute_census(c).as_slice(), "{c:?}");
            for r in 0..=c.n() {
                let row: u64 = census.table()[r].iter().sum();
                assert_eq!(BigInt::from(row), binomial(c.n() as u64, r as i64));
            }
            assert_eq!(census.count(c.n(), c.k() as i64), 1);
            assert_eq!(census.count(0, 0), 1);
        }
    }

    #[test]
    fn golay_alpha() {
        let census = support_census(&ternary_golay().unwrap()).unwrap();
        assert_eq!(alpha(&census, 6), BigInt::from(396));
        // 462 - 132/2 from the dual's weight-6 words
        assert_eq!(alpha(&census, 6), binomial(11, 6) - 66);
    }

    #[test]
    fn duality_of_beta() {
        for c in suite() {
            let primal = support_census(&c).unwrap();
            let dual = support_census(&c.dual()).unwrap();
            let (n, k) = (c.n() as i64, c.k() as i64);
            for s in 0..=n {
                for ell in 0..=k {
                    assert_eq!(
                        beta(&primal, ell, s as usize),
                        beta(&dual, ell + s - k, (n - s) as usize),
                        "{c:?} ell={ell} s={s}"
                    );
                }
                assert_eq!(alpha(&primal, s as usize), beta(&primal, 0, s as usize));
            }
            assert_eq!(beta(&primal, k, 0), BigInt::one());
        }
    }

    #[test]
    fn extended_enumerator_basics() {
        for c in suite() {
            let e = extended_enumerator(&c).unwrap();
            let k = c.k();
            let mut uk = vec![0i64; k + 1];
            uk[0] = -1;
            uk[k] += 1;
            assert_eq!(e.b_polys()[0], uk, "B_0 = U^k - 1 for {c:?}");
            assert!(e.b_polys()[c.n()].iter().all(|&x| x == 0));
            for b in e.b_polys() {
                assert_eq!(b.iter().sum::<i64>(), 0);
                // nonnegative in the basis U^j - 1: coefficients j >= 1
                assert!(b[1..].iter().all(|&x| x >= 0));
            }
            let at_q = extension_weight_distribution(&e, c.q(), 1).unwrap();
            assert_eq!(at_q, weight_distribution(&c).unwrap(), "{c:?}");
            assert_eq!(
                extension_weight_distribution(&e, c.q(), 0).unwrap(),
                WeightDistribution::delta(c.n())
            );
            for m in 1..=3u32 {
                let w = extension_weight_distribution(&e, c.q(), m).unwrap();
                assert_eq!(w.total(), pow_big(c.q(), m as u64 * c.k() as u64));
            }
        }
    }

    /// Closed-form extended enumerator of RM_q(1, s-1), weight by weight,
    /// as polynomials in U.
    fn rm_closed_form(q: u64, s: usize) -> Vec<Vec<BigInt>> {
        let n = q.pow(s as u32 - 1) as usize;
        let table = QBinomialTable::new(q, s);
        // falling products prod_{j<t} (U - q^j)
        let falling = |t: usize| {
            let mut p = vec![BigInt::one()];
            for j in 0..t {
                let root = pow_big(q, j as u64);
                let mut next = vec![BigInt::zero(); p.len() + 1];
                for (d, c) in p.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * &root;
                }
                p = next;
            }
            p.resize(s + 1, BigInt::zero());
            p
        };
        let mut out = vec![vec![BigInt::zero(); s + 1]; n + 1];
        for t in 1..=s {
            let f = falling(t);
            let g = table.get(s - 1, t as i64 - 1);
            for d in 0..=s {
                out[n][d] += &f[d] * &g;
            }
        }
        for t in 0..s {
            let f = falling(t);
            let g = pow_big(q, t as u64) * table.get(s - 1, t as i64);
            let weight = n - q.pow((s - 1 - t) as u32) as usize;
            for d in 0..=s {
                out[weight][d] += &f[d] * &g;
            }
        }
        out
    }

    #[test]
    fn reed_muller_extended_enumerator_closed_form() {
        for (q, s) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let c = reed_muller_1(q, s).unwrap();
            let e = extended_enumerator(&c).unwrap();
            assert_eq!(e.weight_polynomials(), rm_closed_form(q, s), "rm1({q},{s})");
        }
    }

    #[test]
    fn extension_matches_direct_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let mut codes = vec![simplex(2, 2).unwrap(), example_61(1)];
        for _ in 0..6 {
            let n = rng.random_range(3..=8);
            codes.push(random_code(&mut rng, 2, 2, n));
        }
        for c in &codes {
            let e = extended_enumerator(c).unwrap();
            let direct = direct_extension_code(c, 2).unwrap();
            assert_eq!((direct.n(), direct.k(), direct.q()), (c.n(), c.k(), 4));
            assert_eq!(
                extension_weight_distribution(&e, 2, 2).unwrap(),
                weight_distribution(&direct).unwrap()
            );
        }
        let t = simplex(3, 2).unwrap();
        let e = extended_enumerator(&t).unwrap();
        assert_eq!(
            extension_weight_distribution(&e, 3, 2).unwrap(),
            weight_distribution(&direct_extension_code(&t, 2).unwrap()).unwrap()
        );
        let same = direct_extension_code(&t, 1).unwrap();
        assert_eq!(
            weight_distribution(&same).unwrap(),
            weight_distribution(&t).unwrap()
        );
        assert!(direct_extension_code(&simplex(4, 2).unwrap(), 2).is_err());
        assert!(direct_extension_code(&ternary_golay().unwrap(), 3).is_err());
    }

    #[test]
    fn double_count_identity() {
        for c in suite() {
            let census = support_census(&c).unwrap();
            let e = ExtendedEnumerator::from_census(&census);
            let n = c.n();
            for m in 0..=3u32 {
                let w = extension_weight_distribution(&e, c.q(), m).unwrap();
                for r in 0..=n {
                    let lhs = (0..=c.k()).fold(BigInt::zero(), |acc, j| {
                        acc + pow_big(c.q(), j as u64 * m as u64) * census.beta_hat(j as i64, r)
                    });
                    let rhs = (0..=n).fold(BigInt::zero(), |acc, l| {
                        acc + binomial((n - l) as u64, r as i64 - l as i64) * w.get(l)
                    });
                    assert_eq!(lhs, rhs, "{c:?} m={m} r={r}");
                }
            }
        }
    }

    #[test]
    fn serde_shapes() {
        let w = weight_distribution(&simplex(2, 2).unwrap()).unwrap();
        let json = serde_json::to_string(&w).unwrap();
        assert_eq!(json, r#"{"n":3,"counts":["1","0","3","0"]}"#);
        assert_eq!(
            serde_json::from_str::<WeightDistribution>(&json).unwrap(),
            w
        );
        assert!(serde_json::from_str::<WeightDistribution>(r#"{"n":2,"counts":["1"]}"#).is_err());
        assert!(serde_json::from_str::<WeightDistribution>(r#"{"n":0,"counts":["-1"]}"#).is_err());

        let e = extended_enumerator(&simplex(2, 2).unwrap()).unwrap();
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(json, r#"{"b":[[-1,0,1],[-3,3,0],[0,0,0],[0,0,0]]}"#);
        assert_eq!(
            serde_json::from_str::<ExtendedEnumerator>(&json).unwrap(),
            e
        );
        assert!(serde_json::from_str::<ExtendedEnumerator>(r#"{"b":[[1]]}"#).is_err());
        assert!(serde_json::from_str::<ExtendedEnumerator>(r#"{"b":[]}"#).is_err());
    }

    #[test]
    fn census_guard() {
        let c = simplex(2, 5).unwrap(); // n = 31
        assert!(matches!(support_census(&c), Err(Error::Guard { .. })));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn census_row_sums(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = [2, 3, 5][rng.random_range(0..3)];
            let n = rng.random_range(2..=12);
            let k = rng.random_range(1..=n.min(5));
            let c = random_code(&mut rng, q, k, n);
            let census = support_census(&c).unwrap();
            for r in 0..=n {
                let row: u64 = census.table()[r].iter().sum();
                prop_assert_eq!(BigInt::from(row), binomial(n as u64, r as i64));
            }
        }
    }
}
