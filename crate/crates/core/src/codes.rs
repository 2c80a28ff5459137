//! Linear codes given by a full-rank generator matrix, and constructors for
//! the families we study.
//!
//! Vectors of F_q^k are ordered by their integer encoding
//! `sum v_i q^(k-1-i)` (first coordinate most significant, coordinates
//! compared by element code). Every constructor that lays out columns uses
//! that order.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::gf::FiniteField;
use crate::linalg::{full_mask, MatrixGF, MAX_MASK_COLUMNS};

/// Largest `q^k` for which codewords are enumerated one by one.
pub const ENUMERATION_LIMIT: u64 = 1 << 24;

pub struct LinearCode {
    generator: MatrixGF,
    basis: OnceLock<MatrixGF>,
    dual_generator: OnceLock<MatrixGF>,
    minimum_distance: OnceLock<Option<usize>>,
    label: Option<String>,
}

impl Clone for LinearCode {
    fn clone(&self) -> Self {
        Self {
            generator: self.generator.clone(),
            basis: self.basis.clone(),
            dual_generator: self.dual_generator.clone(),
            minimum_distance: self.minimum_distance.clone(),
            label: self.label.clone(),
        }
    }
}

impl fmt::Debug for LinearCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]_{} code{}",
            self.n(),
            self.k(),
            self.q(),
            self.label
                .as_deref()
                .map(|l| format!(" ({l})"))
                .unwrap_or_default()
        )
    }
}

impl LinearCode {
    /// Wraps a generator matrix, rejecting it unless its rows are independent.
    pub fn from_generator(generator: MatrixGF) -> Result<Self> {
        if generator.cols() == 0 {
            return Err(Error::CodeParameters("length must be at least 1".into()));
        }
        let rank = generator.rank();
        if rank < generator.rows() {
            return Err(Error::RankDeficient {
                rank,
                rows: generator.rows(),
            });
        }
        Ok(Self {
            generator,
            basis: OnceLock::new(),
            dual_generator: OnceLock::new(),
            minimum_distance: OnceLock::new(),
            label: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        self.generator.field()
    }

    pub fn q(&self) -> u64 {
        self.field().order()
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn k(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.generator
    }

    /// Canonical RREF of the generator.
    pub fn canonical_basis(&self) -> &MatrixGF {
        self.basis.get_or_init(|| self.generator.row_space_basis())
    }

    pub fn dual_generator(&self) -> &MatrixGF {
        self.dual_generator
            .get_or_init(|| self.generator.null_space())
    }

    /// The dual code. For `k = n` this is the zero code with `k = 0`.
    pub fn dual(&self) -> LinearCode {
        let code = LinearCode::from_generator(self.dual_generator().clone())
            .expect("null space basis is independent");
        code.dual_generator.set(self.canonical_basis().clone()).ok();
        code
    }

    pub fn same_code(&self, other: &LinearCode) -> bool {
        *self.field() == *other.field()
            && self.n() == other.n()
            && self.canonical_basis() == other.canonical_basis()
    }

    /// Same code, different generator: `A * G`.
    pub fn transformed(&self, a: &MatrixGF) -> Result<LinearCode> {
        LinearCode::from_generator(a.mul(&self.generator)?)
    }

    pub fn codeword_count(&self) -> Option<u64> {
        self.q().checked_pow(self.k() as u32)
    }

    fn check_enumeration(&self) -> Result<()> {
        match self.codeword_count() {
            Some(c) if c <= ENUMERATION_LIMIT => Ok(()),
            _ => Err(Error::Guard {
                what: "codeword enumeration",
                detail: format!(
                    "{}^{} codewords exceeds 2^24; use the census or extended enumerator routes",
                    self.q(),
                    self.k()
                ),
            }),
        }
    }

    /// All codewords, messages taken in integer order.
    pub fn codewords(&self) -> Result<Codewords<'_>> {
        self.check_enumeration()?;
        Ok(Codewords::new(self))
    }

    /// Calls `visit` on every codeword without allocating per word.
    pub fn for_each_codeword(&self, mut visit: impl FnMut(&[u32])) -> Result<()> {
        let mut words = self.codewords()?;
        while let Some(w) = words.next_ref() {
            visit(w);
        }
        Ok(())
    }

    /// Least weight of a nonzero codeword; `None` for the zero code.
    pub fn minimum_distance(&self) -> Result<Option<usize>> {
        if let Some(d) = self.minimum_distance.get() {
            return Ok(*d);
        }
        let mut best: Option<usize> = None;
        self.for_each_codeword(|w| {
            let wt = w.iter().filter(|&&c| c != 0).count();
            if wt > 0 && best.is_none_or(|b| wt < b) {
                best = Some(wt);
            }
        })?;
        self.minimum_distance.set(best).ok();
        Ok(best)
    }

    /// Records a distance known from construction.
    fn assume_minimum_distance(&self, d: usize) {
        self.minimum_distance.set(Some(d)).ok();
    }

    /// True iff every `k` columns of the generator are independent.
    pub fn is_mds_by_columns(&self) -> bool {
        let (n, k) = (self.n(), self.k());
        if n > MAX_MASK_COLUMNS {
            return false;
        }
        let mut ok = true;
        for_each_subset_of_size(n, k, |mask| {
            if ok && self.generator.rank_of_columns(mask).unwrap() != k {
                ok = false;
            }
        });
        ok
    }
}

/// Calls `f` with every `size`-subset of `0..n` as a bitmask.
pub fn for_each_subset_of_size(n: usize, size: usize, mut f: impl FnMut(u64)) {
    if size > n {
        return;
    }
    if size == 0 {
        f(0);
        return;
    }
    // Gosper's hack
    let mut mask = full_mask(size);
    let limit = full_mask(n);
    loop {
        f(mask);
        let c = mask & mask.wrapping_neg();
        let (r, overflow) = mask.overflowing_add(c);
        if overflow || r > limit {
            break;
        }
        mask = (((r ^ mask) >> 2) / c) | r;
    }
}

/// Iterator over the codewords of a code.
pub struct Codewords<'a> {
    code: &'a LinearCode,
    /// scaled[c][i] = c * row_i
    scaled: Vec<Vec<Vec<u32>>>,
    message: Vec<u32>,
    word: Vec<u32>,
    started: bool,
    done: bool,
}

impl<'a> Codewords<'a> {
    fn new(code: &'a LinearCode) -> Self {
        let f = code.field();
        let g = code.generator();
        let scaled = f
            .codes()
            .map(|c| {
                (0..g.rows())
                    .map(|i| g.row(i).iter().map(|&x| f.mul(c, x)).collect())
                    .collect()
            })
            .collect();
        Self {
            code,
            scaled,
            message: vec![0; code.k()],
            word: vec![0; code.n()],
            started: false,
            done: false,
        }
    }

    pub fn message(&self) -> &[u32] {
        &self.message
    }

    /// Advances and borrows the next codeword.
    pub fn next_ref(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(&self.word);
        }
        let f = self.code.field();
        let q = f.order() as u32;
        // increment the message, last coordinate least significant
        let mut i = self.message.len();
        loop {
            if i == 0 {
                self.done = true;
                return None;
            }
            i -= 1;
            let old = self.message[i];
            let new = if old + 1 == q { 0 } else { old + 1 };
            self.message[i] = new;
            let delta = f.sub(new, old);
            for (w, &s) in self.word.iter_mut().zip(&self.scaled[delta as usize][i]) {
                *w = f.add(*w, s);
            }
            if new != 0 {
                return Some(&self.word);
            }
        }
    }
}

impl Iterator for Codewords<'_> {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        self.next_ref().map(<[u32]>::to_vec)
    }
}

fn check_prime_power(q: u64) -> Result<Arc<FiniteField>> {
    FiniteField::with_order(q)
}

/// Decodes the integer encoding of a vector of length `len` over F_q.
pub fn decode_vector(mut code: u64, q: u64, len: usize) -> Vec<u32> {
    let mut v = vec![0u32; len];
    for slot in v.iter_mut().rev() {
        *slot = (code % q) as u32;
        code /= q;
    }
    v
}

fn projective_count(q: u64, k: usize) -> Option<u64> {
    Some((q.checked_pow(u32::try_from(k).ok()?)? - 1) / (q - 1))
}

/// The simplex code: one column per projective point of F_q^k, normalized
/// so the first nonzero coordinate is 1, in integer-encoding order.
pub fn simplex(q: u64, k: usize) -> Result<LinearCode> {
    let field = check_prime_power(q)?;
    if k < 2 {
        return Err(Error::CodeParameters("simplex codes need k >= 2".into()));
    }
    let Some(n) = projective_count(q, k).filter(|&n| n <= MAX_MASK_COLUMNS as u64) else {
        return Err(Error::Guard {
            what: "code length",
            detail: format!("simplex({q}, {k}) has more than {MAX_MASK_COLUMNS} columns"),
        });
    };
    let columns: Vec<Vec<u32>> = (1..q.pow(k as u32))
        .map(|enc| decode_vector(enc, q, k))
        .filter(|v| v.iter().find(|&&c| c != 0) == Some(&1))
        .collect();
    debug_assert_eq!(columns.len() as u64, n);
    let g = MatrixGF::from_columns(field, k, &columns)?;
    Ok(LinearCode::from_generator(g)?.with_label(format!("simplex({q},{k})")))
}

/// The q-ary Hamming code of redundancy `r`: the dual of `simplex(q, r)`.
pub fn hamming(q: u64, r: usize) -> Result<LinearCode> {
    let s = simplex(q, r)?;
    let h = s.dual().with_label(format!("hamming({q},{r})"));
    h.assume_minimum_distance(if s.n() >= 3 { 3 } else { s.n() });
    Ok(h)
}

/// `[I_6 | S]` with `S` the bordered Paley matrix of the quadratic-residue
/// character mod 5 (`chi = 0, 1, 2, 2, 1` for residues 0..4, with -1 written
/// as 2). This is the standard generator of the extended ternary Golay code;
/// the construction checks the full weight distribution before returning.
const EXTENDED_GOLAY_PARITY: [[u32; 6]; 6] = [
    [0, 1, 1, 1, 1, 1],
    [1, 0, 1, 2, 2, 1],
    [1, 1, 0, 1, 2, 2],
    [1, 2, 1, 0, 1, 2],
    [1, 2, 2, 1, 0, 1],
    [1, 1, 2, 2, 1, 0],
];

const GOLAY_WEIGHTS: [u64; 12] = [1, 0, 0, 0, 0, 132, 132, 0, 330, 110, 0, 24];
const EXTENDED_GOLAY_WEIGHTS: [u64; 13] = [1, 0, 0, 0, 0, 0, 264, 0, 0, 440, 0, 0, 24];

fn extended_golay_rows() -> Vec<Vec<u32>> {
    (0..6)
        .map(|i| {
            let mut row = vec![0u32; 12];
            row[i] = 1;
            row[6..].copy_from_slice(&EXTENDED_GOLAY_PARITY[i]);
            row
        })
        .collect()
}

fn weight_counts(code: &LinearCode) -> Result<Vec<u64>> {
    let mut counts = vec![0u64; code.n() + 1];
    code.for_each_codeword(|w| counts[w.iter().filter(|&&c| c != 0).count()] += 1)?;
    Ok(counts)
}

fn verified(code: LinearCode, expected: &[u64], d: usize) -> Result<LinearCode> {
    let counts = weight_counts(&code)?;
    if counts != expected {
        return Err(Error::Inconsistent(format!(
            "embedded generator gives weight distribution {counts:?}"
        )));
    }
    code.assume_minimum_distance(d);
    Ok(code)
}

/// The [12, 6, 6] extended ternary Golay code.
pub fn extended_ternary_golay() -> Result<LinearCode> {
    let g = MatrixGF::from_rows(FiniteField::new(3, 1)?, &extended_golay_rows())?;
    let code = LinearCode::from_generator(g)?.with_label("golay3x");
    verified(code, &EXTENDED_GOLAY_WEIGHTS, 6)
}

/// The [11, 6, 5] ternary Golay code: the extended code punctured at its
/// last coordinate.
pub fn ternary_golay() -> Result<LinearCode> {
    let rows: Vec<Vec<u32>> = extended_golay_rows()
        .into_iter()
        .map(|mut r| {
            r.pop();
            r
        })
        .collect();
    let g = MatrixGF::from_rows(FiniteField::new(3, 1)?, &rows)?;
    let code = LinearCode::from_generator(g)?.with_label("golay3");
    verified(code, &GOLAY_WEIGHTS, 5)
}

/// First-order Reed-Muller code RM_q(1, s-1): evaluations of affine
/// functions on all `q^(s-1)` points, length `q^(s-1)`, dimension `s`.
pub fn reed_muller_1(q: u64, s: usize) -> Result<LinearCode> {
    let field = check_prime_power(q)?;
    if s < 2 {
        return Err(Error::CodeParameters(
            "Reed-Muller codes need s >= 2".into(),
        ));
    }
    let Some(n) = u32::try_from(s - 1)
        .ok()
        .and_then(|e| q.checked_pow(e))
        .filter(|&n| n <= MAX_MASK_COLUMNS as u64)
    else {
        return Err(Error::Guard {
            what: "code length",
            detail: format!("rm1({q}, {s}) is longer than {MAX_MASK_COLUMNS}"),
        });
    };
    let columns: Vec<Vec<u32>> = (0..n)
        .map(|enc| {
            let mut col = vec![1u32];
            col.extend(decode_vector(enc, q, s - 1));
            col
        })
        .collect();
    let g = MatrixGF::from_columns(field, s, &columns)?;
    let code = LinearCode::from_generator(g)?.with_label(format!("rm1({q},{s})"));
    let d = ((q - 1) * q.pow(s as u32 - 2)) as usize;
    if code
        .codeword_count()
        .is_some_and(|c| c <= ENUMERATION_LIMIT)
    {
        let found = code.minimum_distance()?;
        if found != Some(d) {
            return Err(Error::Inconsistent(format!(
                "rm1({q},{s}) has minimum distance {found:?}, expected {d}"
            )));
        }
    } else {
        code.assume_minimum_distance(d);
    }
    Ok(code)
}

/// Reed-Solomon code: the Vandermonde matrix `x_j^i` over the first `n`
/// field elements (by code), `0 <= i < k`.
pub fn reed_solomon(q: u64, n: usize, k: usize) -> Result<LinearCode> {
    let field = check_prime_power(q)?;
    if n as u64 > q {
        return Err(Error::CodeParameters(format!(
            "Reed-Solomon length {n} exceeds q = {q}"
        )));
    }
    if k == 0 || k > n {
        return Err(Error::CodeParameters(format!(
            "need 1 <= k <= n, got k = {k}, n = {n}"
        )));
    }
    if n > MAX_MASK_COLUMNS {
        return Err(Error::Guard {
            what: "code length",
            detail: format!("{n} > 64"),
        });
    }
    let columns: Vec<Vec<u32>> = (0..n as u32)
        .map(|x| (0..k as u64).map(|i| field.pow(x, i)).collect())
        .collect();
    let g = MatrixGF::from_columns(field, k, &columns)?;
    let code = LinearCode::from_generator(g)?.with_label(format!("rs({q},{n},{k})"));
    if n <= 12 && !code.is_mds_by_columns() {
        return Err(Error::Inconsistent(format!(
            "rs({q},{n},{k}) failed the MDS check"
        )));
    }
    code.assume_minimum_distance(n - k + 1);
    Ok(code)
}

/// F_q^n itself, generated by the identity.
pub fn full_space(q: u64, n: usize) -> Result<LinearCode> {
    let field = check_prime_power(q)?;
    if n == 0 || n > MAX_MASK_COLUMNS {
        return Err(Error::CodeParameters(format!("length {n} not in 1..=64")));
    }
    let code = LinearCode::from_generator(MatrixGF::identity(field, n))?
        .with_label(format!("full({q},{n})"));
    code.assume_minimum_distance(1);
    Ok(code)
}
