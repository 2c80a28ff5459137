//! Expected number of uniform column draws (with replacement) until the
//! drawn columns of a generator matrix span `F_q^k`.
//!
//! Several independent routes are provided: census formulas, a dual-code
//! route, the weight-enumerator pipeline, closed forms for the standard
//! families, an exact absorbing-chain solver and Monte Carlo.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::codes::{extended_ternary_golay, ternary_golay, LinearCode};
use crate::enumeration::{
    alpha, extension_weight_distribution, support_census, weight_distribution, ExtendedEnumerator,
    SupportCensus,
};
use crate::error::{Error, Result};
use crate::gf::prime_power;
use crate::linalg::{full_mask, ColumnMask, SpanState, MAX_MASK_COLUMNS};
use crate::numeric::{
    binomial, gamma_row, harmonic, pow_big, round_significant, ExactRational, QBinomialTable,
};

pub const CHAIN_STATE_LIMIT: usize = 1_000_000;

/// Largest code length the closed forms evaluate (harmonic numbers of this
/// size are already large rationals).
pub const CLOSED_FORM_MAX_LENGTH: u64 = 1 << 16;

fn closed_form_guard(what: &'static str, n: Option<u64>) -> Result<u64> {
    n.filter(|&n| n <= CLOSED_FORM_MAX_LENGTH)
        .ok_or_else(|| Error::Guard {
            what,
            detail: format!("length exceeds {CLOSED_FORM_MAX_LENGTH}"),
        })
}

fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
    ExactRational::new(num, den).expect("nonzero denominator")
}

fn check_prime_power(q: u64) -> Result<()> {
    prime_power(q)
        .map(|_| ())
        .ok_or_else(|| Error::CodeParameters(format!("q = {q} is not a prime power")))
}

/// `n (H_n - H_{n-k})`, attained exactly by MDS codes.
pub fn mds_lower_bound(n: usize, k: usize) -> Result<ExactRational> {
    if k == 0 || k > n {
        return Err(Error::CodeParameters(format!(
            "need 1 <= k <= n, got n = {n}, k = {k}"
        )));
    }
    Ok(ExactRational::from_integer(n) * (harmonic(n as u64) - harmonic((n - k) as u64)))
}

/// `sum_{s=k}^{upper} alpha(s) / C(n-1, s)`.
fn alpha_correction(census: &SupportCensus, upper: usize) -> ExactRational {
    let (n, k) = (census.n(), census.k());
    let mut acc = ExactRational::zero();
    for s in k..=upper.min(n - 1) {
        let a = alpha(census, s);
        if !a.is_zero() {
            acc += &ratio(a, binomial((n - 1) as u64, s as i64));
        }
    }
    acc
}

pub fn expectation_from_census(census: &SupportCensus) -> ExactRational {
    let n = census.n();
    ExactRational::from_integer(n) * harmonic(n as u64) - alpha_correction(census, n)
}

pub fn expectation_exact(code: &LinearCode) -> Result<ExactRational> {
    Ok(expectation_from_census(&support_census(code)?))
}

fn require_distance(code: &LinearCode) -> Result<usize> {
    code.minimum_distance()?
        .ok_or_else(|| Error::CodeParameters("the zero code has no minimum distance".into()))
}

/// Same value as [`expectation_exact`], with the sum cut at `n - d`.
pub fn expectation_refined(code: &LinearCode) -> Result<ExactRational> {
    let d = require_distance(code)?;
    let census = support_census(code)?;
    Ok(refined_from_census(&census, d))
}

fn refined_from_census(census: &SupportCensus, d: usize) -> ExactRational {
    let n = census.n();
    let head = ExactRational::from_integer(n) * (harmonic(n as u64) - harmonic(d as u64 - 1));
    if n < d + census.k() {
        return head;
    }
    head - alpha_correction(census, n - d)
}

/// Uses only the census of the dual code.
pub fn expectation_via_dual(code: &LinearCode) -> Result<ExactRational> {
    let (n, k) = (code.n(), code.k());
    let dual = support_census(&code.dual())?;
    let mut acc = ExactRational::from_integer(n) * harmonic(n as u64);
    for s in k..n {
        let b = dual.beta_hat((s - k) as i64, s);
        if !b.is_zero() {
            acc -= &ratio(b, binomial((n - 1) as u64, s as i64));
        }
    }
    Ok(acc)
}

pub fn expectation_simplex(q: u64, k: usize) -> Result<ExactRational> {
    check_prime_power(q)?;
    if k < 2 {
        return Err(Error::CodeParameters(format!(
            "simplex needs k >= 2, got {k}"
        )));
    }
    closed_form_guard(
        "simplex closed form",
        u32::try_from(k).ok().and_then(|k| q.checked_pow(k)),
    )?;
    let qk = pow_big(q, k as u64);
    let mut acc = ExactRational::from_integer(k);
    for i in 1..=k {
        let qi = pow_big(q, i as u64 - 1);
        acc += &ratio(&qi - 1, &qk - &qi);
    }
    Ok(acc)
}

pub fn expectation_hamming(q: u64, r: usize) -> Result<ExactRational> {
    check_prime_power(q)?;
    if r < 2 {
        return Err(Error::CodeParameters(format!(
            "Hamming needs r >= 2, got {r}"
        )));
    }
    let n = closed_form_guard(
        "Hamming closed form",
        u32::try_from(r)
            .ok()
            .and_then(|r| q.checked_pow(r))
            .map(|qr| (qr - 1) / (q - 1)),
    )?;
    let qr = pow_big(q, r as u64);
    let mut acc = ExactRational::from_integer(n) * harmonic(n);
    let mut prod = ExactRational::one();
    let mut factorial = BigInt::one();
    for l in 1..=r {
        prod = prod * ratio(&qr - pow_big(q, l as u64 - 1), q - 1);
        factorial *= l;
        let den = binomial(n - 1, (n - l as u64) as i64) * &factorial;
        acc -= &(prod.clone() / ExactRational::from_integer(den));
    }
    Ok(acc)
}

/// `n (H_n - H_{d-1}) - (C(n,k) - W/2) / C(n-1,k)` where `W` is the number of
/// weight-6 words of the dual (plain code) or of the code itself (extended),
/// taken from enumeration.
pub fn expectation_golay(extended: bool) -> Result<ExactRational> {
    let (code, words) = if extended {
        let c = extended_ternary_golay()?;
        let w = weight_distribution(&c)?;
        (c, w)
    } else {
        let c = ternary_golay()?;
        let w = weight_distribution(&c.dual())?;
        (c, w)
    };
    let (n, k) = (code.n() as u64, code.k() as u64);
    let d = if extended { 6 } else { 5 };
    let w6 = words.get(6);
    let head = ExactRational::from_integer(n) * (harmonic(n) - harmonic(d - 1));
    let correction = ratio(
        binomial(n, k as i64) * 2 - w6,
        binomial(n - 1, k as i64) * 2,
    );
    Ok(head - correction)
}

/// The weight-enumerator route: every `alpha(r)` is rebuilt from the weight
/// distributions of the extension codes `C (x) F_{q^m}`, `m = 0..n`.
pub fn expectation_from_weights(code: &LinearCode) -> Result<ExactRational> {
    let census = support_census(code)?;
    let e = ExtendedEnumerator::from_census(&census);
    expectation_from_enumerator(&e, code.q())
}

pub fn expectation_from_enumerator(e: &ExtendedEnumerator, q: u64) -> Result<ExactRational> {
    let (n, k) = (e.n(), e.k());
    let dists = (0..=n as u32)
        .map(|m| extension_weight_distribution(e, q, m))
        .collect::<Result<Vec<_>>>()?;
    let d = dists
        .get(1)
        .and_then(|w| w.minimum_distance())
        .ok_or_else(|| Error::CodeParameters("the zero code has no minimum distance".into()))?;
    let gamma = gamma_row(q, n as u64);
    let t: Vec<ExactRational> = (0..=n)
        .map(|l| {
            let mut acc = ExactRational::zero();
            for (m, (w, g)) in dists.iter().zip(&gamma).enumerate() {
                let c = w.get(l);
                if c.is_zero() {
                    continue;
                }
                let term = ExactRational::from_integer(c) * g.clone();
                if m % 2 == 1 {
                    acc -= &term;
                } else {
                    acc += &term;
                }
            }
            acc
        })
        .collect();
    let mut value = ExactRational::from_integer(n) * (harmonic(n as u64) - harmonic(d as u64 - 1));
    if n >= d + k {
        for r in k..=n - d {
            let mut a = ExactRational::zero();
            for (l, tl) in t.iter().enumerate().take(n - r + 1) {
                a +=
                    &(ExactRational::from_integer(binomial((n - l) as u64, r as i64)) * tl.clone());
            }
            value -= &(a / ExactRational::from_integer(binomial((n - 1) as u64, r as i64)));
        }
    }
    Ok(value)
}

/// First-order Reed-Muller code of dimension `s`, length `q^{s-1}`.
pub fn expectation_reed_muller(q: u64, s: usize) -> Result<ExactRational> {
    check_prime_power(q)?;
    if s < 2 {
        return Err(Error::CodeParameters(format!(
            "Reed-Muller needs s >= 2, got {s}"
        )));
    }
    let n = closed_form_guard(
        "Reed-Muller closed form",
        u32::try_from(s - 1).ok().and_then(|e| q.checked_pow(e)),
    )?;
    let d = n - n / q;
    let mut value = ExactRational::from_integer(n) * (harmonic(n) - harmonic(d - 1));
    let r_max = n / q;
    if (s as u64) > r_max {
        return Ok(value);
    }

    let table = QBinomialTable::new(q, s);
    let gamma = gamma_row(q, n);
    // inner[t] = sum_i (-1)^i prod_{j<t}(q^i - q^j) q^t [s-1, t] gamma(q, i, n)
    let inner: Vec<ExactRational> = (0..s)
        .map(|t| {
            let scale = pow_big(q, t as u64) * table.get(s - 1, t as i64);
            let mut acc = ExactRational::zero();
            for (i, g) in gamma.iter().enumerate() {
                let qi = pow_big(q, i as u64);
                let prod = (0..t).fold(BigInt::one(), |p, j| p * (&qi - pow_big(q, j as u64)));
                if prod.is_zero() {
                    continue;
                }
                let term = ExactRational::from_integer(prod * &scale) * g.clone();
                if i % 2 == 1 {
                    acc -= &term;
                } else {
                    acc += &term;
                }
            }
            acc
        })
        .collect();

    for r in s as u64..=r_max {
        let mut a = ExactRational::zero();
        // largest t with q^{s-1-t} >= r
        for (t, term) in inner.iter().enumerate() {
            let block = q.pow((s - 1 - t) as u32);
            if block < r {
                break;
            }
            a += &(ExactRational::from_integer(binomial(block, r as i64)) * term.clone());
        }
        value -= &(a / ExactRational::from_integer(binomial(n - 1, r as i64)));
    }
    Ok(value)
}

/// Solves the absorbing chain on spans of drawn columns exactly. A state is
/// the set of columns lying in the current span; from a state containing `a`
/// columns, `E = (n + sum_{j outside} E[next_j]) / (n - a)`.
pub fn expectation_chain_oracle(code: &LinearCode) -> Result<ExactRational> {
    let n = code.n();
    if n > MAX_MASK_COLUMNS {
        return Err(Error::Guard {
            what: "chain oracle",
            detail: format!("n = {n} > {MAX_MASK_COLUMNS}"),
        });
    }
    let mut chain = Chain {
        columns: code.generator().columns(),
        field: code.field().clone(),
        k: code.k(),
        memo: HashMap::new(),
    };
    let mut start = SpanState::new(chain.field.clone(), chain.k);
    let mask = chain.closure(&mut start);
    chain.solve(mask, &start)
}

struct Chain {
    columns: Vec<Vec<u32>>,
    field: std::sync::Arc<crate::gf::FiniteField>,
    k: usize,
    memo: HashMap<ColumnMask, ExactRational>,
}

impl Chain {
    fn closure(&self, span: &mut SpanState) -> ColumnMask {
        self.columns
            .iter()
            .enumerate()
            .filter(|(_, c)| span.contains(c))
            .fold(0, |m, (j, _)| m | 1 << j)
    }

    fn solve(&mut self, mask: ColumnMask, span: &SpanState) -> Result<ExactRational> {
        if span.rank() == self.k {
            return Ok(ExactRational::zero());
        }
        if let Some(v) = self.memo.get(&mask) {
            return Ok(v.clone());
        }
        if self.memo.len() >= CHAIN_STATE_LIMIT {
            return Err(Error::Guard {
                what: "chain oracle",
                detail: format!("more than {CHAIN_STATE_LIMIT} states"),
            });
        }
        let n = self.columns.len();
        let inside = mask.count_ones() as usize;
        let mut acc = ExactRational::from_integer(n);
        let mut next = SpanState::new(self.field.clone(), self.k);
        // every column landing in the same new span leads to the same state,
        // so each successor is solved once and weighted by its column count
        let mut pending = !mask & full_mask(n);
        while pending != 0 {
            let j = pending.trailing_zeros() as usize;
            next.copy_from(span);
            next.insert(&self.columns[j]);
            let next_mask = self.closure(&mut next);
            let entering = next_mask & !mask;
            pending &= !next_mask;
            let value = self.solve(next_mask, &next)?;
            acc += &(value * ExactRational::from_integer(entering.count_ones() as usize));
        }
        let value = acc / ExactRational::from_integer(n - inside);
        self.memo.insert(mask, value.clone());
        Ok(value)
    }
}

/// Named generator used by [`simulate`]: ChaCha8, one stream per trial.
pub const SIMULATION_RNG: &str = "chacha8";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SimulationConfig {
    pub trials: u64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloSummary {
    #[serde(serialize_with = "twelve_digits")]
    pub mean: f64,
    #[serde(serialize_with = "twelve_digits")]
    pub stderr: f64,
    pub trials: u64,
    pub seed: u64,
}

fn twelve_digits<S: Serializer>(x: &f64, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_f64(round_significant(*x, 12))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Exact,
    Refined,
    Dual,
    Weights,
    ClosedForm,
    Chain,
    MonteCarlo,
}

impl Method {
    pub const ALL: [Method; 7] = [
        Method::Exact,
        Method::Refined,
        Method::Dual,
        Method::Weights,
        Method::ClosedForm,
        Method::Chain,
        Method::MonteCarlo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Refined => "refined",
            Method::Dual => "dual",
            Method::Weights => "weights",
            Method::ClosedForm => "closed-form",
            Method::Chain => "chain",
            Method::MonteCarlo => "mc",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Method::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown method {s:?}")))
    }
}

/// Exactly one of `exact` and `mc` is set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpectationResult {
    pub method: String,
    pub exact: Option<ExactRational>,
    pub mc: Option<MonteCarloSummary>,
}

impl ExpectationResult {
    pub fn exact(method: Method, value: ExactRational) -> Self {
        Self {
            method: method.name().to_string(),
            exact: Some(value),
            mc: None,
        }
    }

    pub fn monte_carlo(summary: MonteCarloSummary) -> Self {
        Self {
            method: Method::MonteCarlo.name().to_string(),
            exact: None,
            mc: Some(summary),
        }
    }

    pub fn approx(&self) -> f64 {
        match (&self.exact, &self.mc) {
            (Some(v), _) => v.to_f64(),
            (None, Some(mc)) => mc.mean,
            (None, None) => f64::NAN,
        }
    }
}

fn draws_until_spanning(code: &LinearCode, columns: &[Vec<u32>], rng: &mut ChaCha8Rng) -> u64 {
    let n = columns.len();
    let mut span = SpanState::new(code.field().clone(), code.k());
    let mut draws = 0;
    while !span.is_full() {
        span.insert(&columns[rng.random_range(0..n)]);
        draws += 1;
    }
    draws
}

/// Runs `cfg.trials` independent trials in parallel. Trial `i` uses stream
/// `i` of a ChaCha8 generator keyed by `cfg.seed`, so the result does not
/// depend on scheduling.
pub fn simulate(code: &LinearCode, cfg: SimulationConfig) -> Result<MonteCarloSummary> {
    if cfg.trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let columns = code.generator().columns();
    let (sum, sum_sq) = (0..cfg.trials)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            rng.set_stream(trial);
            let d = draws_until_spanning(code, &columns, &mut rng) as u128;
            (d, d * d)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    let t = cfg.trials as u128;
    let mean = sum as f64 / cfg.trials as f64;
    let stderr = if cfg.trials > 1 {
        let spread = (t * sum_sq - sum * sum) as f64;
        (spread / (t * (t - 1)) as f64 / cfg.trials as f64).sqrt()
    } else {
        0.0
    };
    Ok(MonteCarloSummary {
        mean,
        stderr,
        trials: cfg.trials,
        seed: cfg.seed,
    })
}

/// Runs one method. `closed_form` supplies the family closed form, when the
/// caller knows one.
pub fn run_method(
    code: &LinearCode,
    method: Method,
    closed_form: Option<&dyn Fn() -> Result<ExactRational>>,
    sim: SimulationConfig,
) -> Result<ExpectationResult> {
    let value = match method {
        Method::Exact => expectation_exact(code)?,
        Method::Refined => expectation_refined(code)?,
        Method::Dual => expectation_via_dual(code)?,
        Method::Weights => expectation_from_weights(code)?,
        Method::Chain => expectation_chain_oracle(code)?,
        Method::ClosedForm => match closed_form {
            Some(f) => f()?,
            None => return Err(Error::Invalid("no closed form for this code".into())),
        },
        Method::MonteCarlo => return Ok(ExpectationResult::monte_carlo(simulate(code, sim)?)),
    };
    Ok(ExpectationResult::exact(method, value))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub values: Vec<ExpectationResult>,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn record(&mut self, check: String, passed: bool, detail: String) {
        self.checks.push(CheckOutcome {
            check,
            passed,
            detail,
        });
    }
}

/// Runs every exact method that applies, compares them pairwise, checks the
/// MDS lower bound and, if `sim` is given, the Monte Carlo mean to within four
/// standard errors.
pub fn verify_all_methods(
    code: &LinearCode,
    closed_form: Option<ExactRational>,
    sim: Option<SimulationConfig>,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    let mut exact_values: Vec<(Method, ExactRational)> = Vec::new();
    let methods = [
        Method::Exact,
        Method::Refined,
        Method::Dual,
        Method::Weights,
        Method::Chain,
    ];
    for m in methods {
        match run_method(code, m, None, SimulationConfig { trials: 1, seed: 0 }) {
            Ok(r) => {
                exact_values.push((m, r.exact.clone().expect("exact method")));
                report.values.push(r);
            }
            Err(e) => report.record(format!("{m} runs"), false, e.to_string()),
        }
    }
    if let Some(v) = closed_form {
        report
            .values
            .push(ExpectationResult::exact(Method::ClosedForm, v.clone()));
        exact_values.push((Method::ClosedForm, v));
    }
    for (i, (ma, va)) in exact_values.iter().enumerate() {
        for (mb, vb) in &exact_values[i + 1..] {
            report.record(format!("{ma} = {mb}"), va == vb, format!("{va} vs {vb}"));
        }
    }
    let reference = exact_values.first().map(|(_, v)| v.clone());
    if let (Some(v), Ok(bound)) = (&reference, mds_lower_bound(code.n(), code.k())) {
        report.record(
            "at least MDS bound".into(),
            *v >= bound,
            format!("{v} vs {bound}"),
        );
    }
    if let Some(cfg) = sim {
        match simulate(code, cfg) {
            Ok(mc) => {
                if let Some(v) = &reference {
                    let gap = (mc.mean - v.to_f64()).abs();
                    let ok = gap <= 4.0 * mc.stderr || (mc.stderr == 0.0 && gap < 1e-12);
                    report.record(
                        "mc within 4 stderr".into(),
                        ok,
                        format!(
                            "mean {:.6} stderr {:.6} exact {:.6}",
                            mc.mean,
                            mc.stderr,
                            v.to_f64()
                        ),
                    );
                }
                report.values.push(ExpectationResult::monte_carlo(mc));
            }
            Err(e) => report.record("mc runs".into(), false, e.to_string()),
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{full_space, hamming, reed_muller_1, reed_solomon, simplex};
    use crate::gf::FiniteField;
    use crate::linalg::MatrixGF;
    use proptest::prelude::*;
    use rand::Rng;

    fn r(s: &str) -> ExactRational {
        s.parse().unwrap()
    }

    fn binary(rows: &[&str]) -> LinearCode {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.bytes().map(|b| (b - b'0') as u32).collect())
            .collect();
        LinearCode::from_generator(
            MatrixGF::from_rows(FiniteField::new(2, 1).unwrap(), &rows).unwrap(),
        )
        .unwrap()
    }

    fn c1() -> LinearCode {
        binary(&["111000000000", "000111100000", "000000011111"])
    }

    fn c2() -> LinearCode {
        binary(&["100000111111", "011000111111", "000111111111"])
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

    /// Hand evaluation of the coupon-style chain for tiny codes, independent
    /// of every helper here: direct sum over draw sequences would be
    /// infinite, so instead solve by value iteration in floating point.
    fn value_iteration(code: &LinearCode) -> f64 {
        let n = code.n();
        let cols = code.generator().columns();
        let mut values: HashMap<ColumnMask, f64> = HashMap::new();
        let mut masks = vec![];
        for m in 0..1u64 << n {
            masks.push(m);
        }
        let span_mask = |m: u64| {
            let mut s = SpanState::new(code.field().clone(), code.k());
            for (j, col) in cols.iter().enumerate() {
                if m >> j & 1 == 1 {
                    s.insert(col);
                }
            }
            (
                s.is_full(),
                (0..n)
                    .filter(|&j| s.contains(&cols[j]))
                    .fold(0u64, |a, j| a | 1 << j),
            )
        };
        for _ in 0..2000 {
            let mut next = HashMap::new();
            for &m in &masks {
                let (full, closed) = span_mask(m);
                if closed != m {
                    continue;
                }
                let v = if full {
                    0.0
                } else {
                    1.0 + (0..n)
                        .map(|j| values.get(&span_mask(m | 1 << j).1).copied().unwrap_or(0.0))
                        .sum::<f64>()
                        / n as f64
                };
                next.insert(m, v);
            }
            values = next;
        }
        values[&span_mask(0).1]
    }

    #[test]
    fn mds_bound_examples() {
        assert_eq!(mds_lower_bound(3, 2).unwrap(), r("5/2"));
        assert_eq!(
            mds_lower_bound(5, 5).unwrap(),
            ExactRational::from_integer(5) * harmonic(5)
        );
        for n in 1..10 {
            assert_eq!(mds_lower_bound(n, 1).unwrap(), ExactRational::one());
        }
        assert!(mds_lower_bound(3, 0).is_err());
        assert!(mds_lower_bound(3, 4).is_err());
    }

    #[test]
    fn example_codes() {
        for (code, expected) in [(c1(), "1229/210"), (c2(), "2633/462")] {
            let want = r(expected);
            assert_eq!(expectation_exact(&code).unwrap(), want);
            assert_eq!(expectation_refined(&code).unwrap(), want);
            assert_eq!(expectation_via_dual(&code).unwrap(), want);
            assert_eq!(expectation_from_weights(&code).unwrap(), want);
            assert_eq!(expectation_chain_oracle(&code).unwrap(), want);
        }
    }

    #[test]
    fn chain_matches_value_iteration() {
        for code in [
            simplex(2, 2).unwrap(),
            hamming(2, 2).unwrap(),
            binary(&["1100", "0111"]),
        ] {
            let exact = expectation_chain_oracle(&code).unwrap().to_f64();
            assert!((exact - value_iteration(&code)).abs() < 1e-9, "{code:?}");
        }
    }

    #[test]
    fn chain_small_cases() {
        assert_eq!(
            expectation_chain_oracle(&simplex(2, 2).unwrap()).unwrap(),
            r("5/2")
        );
        assert_eq!(
            expectation_chain_oracle(&binary(&["1111"])).unwrap(),
            ExactRational::one()
        );
        // a zero column only wastes draws
        assert_eq!(expectation_chain_oracle(&binary(&["10"])).unwrap(), r("2"));
        assert_eq!(expectation_exact(&binary(&["10"])).unwrap(), r("2"));
    }

    #[test]
    fn simplex_closed_form() {
        assert_eq!(expectation_simplex(2, 2).unwrap(), r("5/2"));
        assert_eq!(expectation_simplex(2, 3).unwrap(), r("47/12"));
        for (q, k) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            assert_eq!(
                expectation_simplex(q, k).unwrap(),
                expectation_exact(&simplex(q, k).unwrap()).unwrap()
            );
        }
        assert!(expectation_simplex(6, 2).is_err());
        assert!(expectation_simplex(2, 1).is_err());
    }

    #[test]
    fn hamming_closed_form() {
        assert_eq!(expectation_hamming(2, 2).unwrap(), ExactRational::one());
        for (q, rr) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
            assert_eq!(
                expectation_hamming(q, rr).unwrap(),
                expectation_exact(&hamming(q, rr).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn closed_forms_guard_huge_parameters() {
        assert!(matches!(
            expectation_simplex(2, 1 << 30),
            Err(Error::Guard { .. })
        ));
        assert!(matches!(
            expectation_hamming(3, 1 << 30),
            Err(Error::Guard { .. })
        ));
        assert!(matches!(
            expectation_reed_muller(2, 1 << 30),
            Err(Error::Guard { .. })
        ));
        assert!(expectation_simplex(2, 16).is_ok());
    }

    #[test]
    fn golay_values() {
        let plain = expectation_golay(false).unwrap();
        assert_eq!(plain, r("21209/2520"));
        assert!((plain.to_f64() - 8.416).abs() < 5e-4);
        let g = ternary_golay().unwrap();
        assert_eq!(expectation_refined(&g).unwrap(), plain);
        assert_eq!(expectation_via_dual(&g).unwrap(), plain);
        assert_eq!(expectation_from_weights(&g).unwrap(), plain);

        let ext = expectation_golay(true).unwrap();
        assert!((ext.to_f64() - 8.124).abs() < 5e-4, "{}", ext.to_f64());
        assert_eq!(
            expectation_exact(&extended_ternary_golay().unwrap()).unwrap(),
            ext
        );
    }

    #[test]
    fn reed_muller_closed_form() {
        assert_eq!(expectation_reed_muller(2, 2).unwrap(), r("3"));
        assert_eq!(expectation_reed_muller(3, 2).unwrap(), r("5/2"));
        for (q, s) in [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (4, 2)] {
            let code = reed_muller_1(q, s).unwrap();
            assert_eq!(
                expectation_reed_muller(q, s).unwrap(),
                expectation_exact(&code).unwrap(),
                "({q},{s})"
            );
        }
        // lengths past the census limit
        for (q, s) in [(2, 2), (2, 6), (5, 3)] {
            assert_eq!(
                expectation_reed_muller(q, s).unwrap(),
                expectation_chain_oracle(&reed_muller_1(q, s).unwrap()).unwrap(),
                "({q},{s})"
            );
        }
    }

    #[test]
    fn mds_codes_meet_the_bound() {
        for (q, n, k) in [(7, 7, 3), (4, 4, 2), (5, 5, 2), (8, 6, 3)] {
            let c = reed_solomon(q, n, k).unwrap();
            let bound = mds_lower_bound(n, k).unwrap();
            assert_eq!(expectation_exact(&c).unwrap(), bound);
            assert_eq!(expectation_refined(&c).unwrap(), bound);
            assert_eq!(expectation_from_weights(&c).unwrap(), bound);
        }
        let full = full_space(3, 3).unwrap();
        assert_eq!(
            expectation_via_dual(&full).unwrap(),
            mds_lower_bound(3, 3).unwrap()
        );
        assert_eq!(
            expectation_chain_oracle(&full).unwrap(),
            mds_lower_bound(3, 3).unwrap()
        );
    }

    #[test]
    fn random_codes_agree_and_respect_bound() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..15 {
            let q = [2, 3][rng.random_range(0..2)];
            let n = rng.random_range(3..=9);
            let k = rng.random_range(1..n);
            let c = random_code(&mut rng, q, k, n);
            let e = expectation_exact(&c).unwrap();
            assert_eq!(expectation_chain_oracle(&c).unwrap(), e, "{c:?}");
            assert_eq!(expectation_via_dual(&c).unwrap(), e, "{c:?}");
            if c.minimum_distance().unwrap().is_some() {
                assert_eq!(expectation_refined(&c).unwrap(), e, "{c:?}");
                assert_eq!(expectation_from_weights(&c).unwrap(), e, "{c:?}");
            }
            assert!(e >= mds_lower_bound(n, k).unwrap());
        }
    }

    #[test]
    fn simulation_is_deterministic() {
        let c = simplex(2, 2).unwrap();
        let cfg = SimulationConfig {
            trials: 2000,
            seed: 17,
        };
        assert_eq!(simulate(&c, cfg).unwrap(), simulate(&c, cfg).unwrap());
        assert_ne!(
            simulate(&c, cfg).unwrap(),
            simulate(&c, SimulationConfig { seed: 18, ..cfg }).unwrap()
        );
        assert!(simulate(&c, SimulationConfig { trials: 0, seed: 1 }).is_err());
    }

    #[test]
    fn simulation_k1_is_exactly_one() {
        let mc = simulate(
            &binary(&["11111"]),
            SimulationConfig {
                trials: 500,
                seed: 3,
            },
        )
        .unwrap();
        assert_eq!(mc.mean, 1.0);
        assert_eq!(mc.stderr, 0.0);
    }

    #[test]
    fn simulation_close_to_exact() {
        let c = simplex(2, 2).unwrap();
        let mc = simulate(
            &c,
            SimulationConfig {
                trials: 100_000,
                seed: 1,
            },
        )
        .unwrap();
        assert!((mc.mean - 2.5).abs() < 3.0 * mc.stderr + 1e-12, "{mc:?}");
    }

    #[test]
    fn simulation_calibration_99() {
        let c = simplex(3, 3).unwrap();
        let exact = expectation_exact(&c).unwrap().to_f64();
        let covered = (0..20)
            .filter(|&seed| {
                let mc = simulate(
                    &c,
                    SimulationConfig {
                        trials: 10_000,
                        seed,
                    },
                )
                .unwrap();
                (mc.mean - exact).abs() <= 2.576 * mc.stderr
            })
            .count();
        assert!(covered >= 18, "{covered}/20");
    }

    /// Evidence only: counts random [7,3]_2 codes beating the simplex code.
    #[test]
    fn simplex_minimality_probe() {
        let target = expectation_simplex(2, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let below = (0..100)
            .filter(|_| expectation_exact(&random_code(&mut rng, 2, 3, 7)).unwrap() < target)
            .count();
        eprintln!("random [7,3]_2 codes below the simplex value: {below}/100");
    }

    #[test]
    fn result_json_shape() {
        let r = ExpectationResult::exact(Method::Exact, r("1229/210"));
        assert_eq!(
            serde_json::to_string(&r).unwrap(),
            r#"{"method":"exact","exact":{"num":"1229","den":"210","approx":5.85238095238},"mc":null}"#
        );
        let mc = ExpectationResult::monte_carlo(MonteCarloSummary {
            mean: 2.5,
            stderr: 0.01,
            trials: 10,
            seed: 4,
        });
        assert_eq!(
            serde_json::to_string(&mc).unwrap(),
            r#"{"method":"mc","exact":null,"mc":{"mean":2.5,"stderr":0.01,"trials":10,"seed":4}}"#
        );
    }

    #[test]
    fn verification_reports() {
        let h = hamming(2, 3).unwrap();
        let report = verify_all_methods(
            &h,
            Some(expectation_hamming(2, 3).unwrap()),
            Some(SimulationConfig {
                trials: 20_000,
                seed: 9,
            }),
        );
        assert!(report.passed(), "{report:?}");
        assert_eq!(report.values.len(), 7);

        let bad = verify_all_methods(&h, Some(r("1")), None);
        assert!(!bad.passed());
        assert!(bad
            .checks
            .iter()
            .any(|c| !c.passed && c.check.contains("closed-form")));
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("bogus".parse::<Method>().is_err());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]
        #[test]
        fn invariant_under_row_operations(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let q = [2, 3, 4][rng.random_range(0..3)];
            let n = rng.random_range(3..=8);
            let k = rng.random_range(1..=n.min(3));
            let c = random_code(&mut rng, q, k, n);
            let a = random_code(&mut rng, q, k, k).generator().clone();
            let t = c.transformed(&a).unwrap();
            prop_assert_eq!(expectation_exact(&t).unwrap(), expectation_exact(&c).unwrap());
        }
    }
}
