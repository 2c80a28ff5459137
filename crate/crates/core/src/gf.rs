//! Finite fields GF(p^e).
//!
//! An element is stored as its integer code `sum c_i p^i`, where
//! `sum c_i x^i` is its polynomial representative modulo the field modulus.
//! For `e = 1` the code is the residue itself.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Fields up to this order get log/antilog tables.
const LOG_TABLE_LIMIT: u64 = 1 << 16;
/// Fields up to this order get full addition and multiplication tables.
const FULL_TABLE_LIMIT: u64 = 256;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Writes `q = p^e` for a prime `p`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..)
        .take_while(|d| d * d <= q)
        .find(|d| q.is_multiple_of(*d))
        .unwrap_or(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Dense polynomials over GF(p), lowest coefficient first, no trailing zeros.
mod poly {
    pub type Poly = Vec<u64>;

    pub fn trim(mut a: Poly) -> Poly {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    pub fn inv_mod(a: u64, p: u64) -> u64 {
        // p is prime: a^(p-2)
        let mut base = a % p;
        let mut exp = p - 2;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base, p);
            }
            base = mulmod(base, base, p);
            exp >>= 1;
        }
        acc
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Poly {
        let len = a.len().max(b.len());
        let out = (0..len)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Poly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
            }
        }
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Poly {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let shift = r.len() - 1 - dm;
            let factor = mulmod(*r.last().unwrap(), lead_inv, p);
            for (i, &c) in m.iter().enumerate() {
                let idx = i + shift;
                r[idx] = (r[idx] + p - mulmod(factor, c, p)) % p;
            }
            r = trim(r);
        }
        r
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Poly {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        x
    }

    /// `base^exp mod m`.
    pub fn pow_mod(base: &[u64], mut exp: u64, m: &[u64], p: u64) -> Poly {
        let mut acc: Poly = vec![1];
        let mut b = rem(base, m, p);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            exp >>= 1;
        }
        acc
    }

    /// A monic `f` of degree `e` is irreducible iff it shares no factor with
    /// `x^(p^i) - x` for every `i <= e/2`.
    pub fn is_irreducible(f: &[u64], p: u64) -> bool {
        let e = f.len() - 1;
        let x: Poly = vec![0, 1];
        let mut xp = x.clone();
        for _ in 1..=e / 2 {
            xp = pow_mod(&xp, p, f, p);
            if gcd(f, &sub(&xp, &x, p), p).len() > 1 {
                return false;
            }
        }
        true
    }
}

/// A finite field GF(p^e) with a fixed monic irreducible modulus.
pub struct FiniteField {
    p: u64,
    e: u32,
    q: u64,
    modulus: Vec<u64>,
    tables: Option<Tables>,
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
    neg: Vec<u32>,
}

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteField")
            .field("p", &self.p)
            .field("e", &self.e)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.modulus == other.modulus
    }
}

impl Eq for FiniteField {}

/// Serialized form `{"p": .., "e": .., "modulus": [c_0, .., c_e]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u64>,
}

impl FiniteField {
    /// GF(p^e) with the smallest monic irreducible modulus, ordering
    /// candidates by `(c_0, c_1, ..., c_{e-1})`.
    pub fn new(p: u64, e: u32) -> Result<Arc<Self>> {
        Self::check_params(p, e)?;
        let modulus = if e == 1 {
            vec![0, 1]
        } else {
            Self::smallest_irreducible(p, e)
        };
        Ok(Arc::new(Self::build(p, e, modulus)))
    }

    /// GF(q) for a prime power `q`.
    pub fn with_order(q: u64) -> Result<Arc<Self>> {
        if q > u32::MAX as u64 {
            return Err(Error::FieldParameters(format!(
                "q = {q} does not fit in 32 bits"
            )));
        }
        let (p, e) = prime_power(q)
            .ok_or_else(|| Error::FieldParameters(format!("{q} is not a prime power")))?;
        Self::new(p, e)
    }

    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Arc<Self>> {
        Self::check_params(d.p, d.e)?;
        if d.modulus.len() != d.e as usize + 1 {
            return Err(Error::FieldParameters(format!(
                "modulus must have {} coefficients",
                d.e + 1
            )));
        }
        if d.modulus.iter().any(|&c| c >= d.p) || d.modulus[d.e as usize] != 1 {
            return Err(Error::FieldParameters(
                "modulus must be monic over GF(p)".into(),
            ));
        }
        if d.e == 1 {
            if d.modulus != [0, 1] {
                return Err(Error::FieldParameters(
                    "prime field modulus must be [0, 1]".into(),
                ));
            }
        } else if !poly::is_irreducible(&d.modulus, d.p) {
            return Err(Error::FieldParameters("modulus is reducible".into()));
        }
        Ok(Arc::new(Self::build(d.p, d.e, d.modulus.clone())))
    }

    fn check_params(p: u64, e: u32) -> Result<()> {
        if p > u32::MAX as u64 {
            return Err(Error::FieldParameters(format!(
                "characteristic {p} is too large"
            )));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=16).contains(&e) {
            return Err(Error::FieldParameters(format!(
                "extension degree {e} not in 1..=16"
            )));
        }
        match p.checked_pow(e) {
            Some(q) if q <= u32::MAX as u64 => Ok(()),
            _ => Err(Error::FieldParameters(format!("{p}^{e} is too large"))),
        }
    }

    fn smallest_irreducible(p: u64, e: u32) -> Vec<u64> {
        let e = e as usize;
        let count = p.pow(e as u32);
        for idx in 0..count {
            // c_0 is the most significant digit of idx
            let mut f = vec![0u64; e + 1];
            let mut rest = idx;
            for i in (0..e).rev() {
                f[i] = rest % p;
                rest /= p;
            }
            f[e] = 1;
            if f[0] != 0 && poly::is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    fn build(p: u64, e: u32, modulus: Vec<u64>) -> Self {
        let q = p.pow(e);
        let mut field = Self {
            p,
            e,
            q,
            modulus,
            tables: None,
        };
        if q <= LOG_TABLE_LIMIT {
            field.tables = Some(field.make_tables());
        }
        field
    }

    fn make_tables(&self) -> Tables {
        let q = self.q as usize;
        let order = self.q - 1;
        let factors = prime_factors(order);
        let g = (1..self.q as u32)
            .find(|&g| factors.iter().all(|&r| self.slow_pow(g, order / r) != 1))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * q];
        let mut log = vec![0u32; q];
        let mut x = 1u32;
        for (i, slot) in exp.iter_mut().take(order as usize).enumerate() {
            *slot = x;
            log[x as usize] = i as u32;
            x = self.slow_mul(x, g);
        }
        for i in order as usize..2 * q {
            exp[i] = exp[i - order as usize];
        }
        let neg: Vec<u32> = (0..q as u32).map(|a| self.slow_neg(a)).collect();
        let (add, mul) = if self.q <= FULL_TABLE_LIMIT {
            let mut add = vec![0u32; q * q];
            let mut mul = vec![0u32; q * q];
            for a in 0..q {
                for b in 0..q {
                    add[a * q + b] = self.slow_add(a as u32, b as u32);
                    mul[a * q + b] = if a == 0 || b == 0 {
                        0
                    } else {
                        exp[log[a] as usize + log[b] as usize]
                    };
                }
            }
            (Some(add), Some(mul))
        } else {
            (None, None)
        };
        Tables {
            exp,
            log,
            add,
            mul,
            neg,
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    pub fn order(&self) -> u64 {
        self.q
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.e == 1
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor {
            p: self.p,
            e: self.e,
            modulus: self.modulus.clone(),
        }
    }

    pub fn contains(&self, code: u32) -> bool {
        (code as u64) < self.q
    }

    pub fn element(self: &Arc<Self>, code: u32) -> Result<FieldElement> {
        if !self.contains(code) {
            return Err(Error::Invalid(format!(
                "{code} is not an element of GF({})",
                self.q
            )));
        }
        Ok(FieldElement {
            field: Arc::clone(self),
            code,
        })
    }

    /// All element codes `0..q`.
    pub fn codes(&self) -> impl Iterator<Item = u32> {
        0..self.q as u32
    }

    fn digits(&self, mut code: u32) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.e as usize);
        for _ in 0..self.e {
            out.push(code as u64 % self.p);
            code = (code as u64 / self.p) as u32;
        }
        poly::trim(out)
    }

    fn encode_digits(&self, digits: &[u64]) -> u32 {
        digits.iter().rev().fold(0u64, |acc, &d| acc * self.p + d) as u32
    }

    fn slow_add(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 + b as u64) % self.p) as u32;
        }
        if self.p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            out += ((a % self.p + b % self.p) % self.p) * place;
            a /= self.p;
            b /= self.p;
            place *= self.p;
        }
        out as u32
    }

    fn slow_neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.e {
            out += ((self.p - a % self.p) % self.p) * place;
            a /= self.p;
            place *= self.p;
        }
        out as u32
    }

    fn slow_mul(&self, a: u32, b: u32) -> u32 {
        if self.e == 1 {
            return ((a as u64 * b as u64) % self.p) as u32;
        }
        let prod = poly::mul(&self.digits(a), &self.digits(b), self.p);
        self.encode_digits(&poly::rem(&prod, &self.modulus, self.p))
    }

    fn slow_pow(&self, a: u32, mut exp: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            exp >>= 1;
        }
        acc
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if let Some(t) = &self.tables {
            if let Some(add) = &t.add {
                return add[a as usize * self.q as usize + b as usize];
            }
        }
        self.slow_add(a, b)
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        match &self.tables {
            Some(t) => t.neg[a as usize],
            None => self.slow_neg(a),
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.tables {
            Some(t) => {
                if let Some(mul) = &t.mul {
                    return mul[a as usize * self.q as usize + b as usize];
                }
                if a == 0 || b == 0 {
                    0
                } else {
                    t.exp[t.log[a as usize] as usize + t.log[b as usize] as usize]
                }
            }
            None => self.slow_mul(a, b),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        Some(match &self.tables {
            Some(t) => {
                let order = self.q as usize - 1;
                t.exp[(order - t.log[a as usize] as usize) % order]
            }
            None => self.slow_pow(a, self.q - 2),
        })
    }

    pub fn pow(&self, a: u32, exp: u64) -> u32 {
        let mut acc = 1u32;
        let mut base = a;
        let mut exp = exp;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: u32) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let mut order = self.q - 1;
        for r in prime_factors(self.q - 1) {
            while order.is_multiple_of(r) && self.pow(a, order / r) == 1 {
                order /= r;
            }
        }
        Some(order)
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// A field element bound to its field.
#[derive(Clone)]
pub struct FieldElement {
    field: Arc<FiniteField>,
    code: u32,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.code, self.field.q)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code && same_field(&self.field, &other.field)
    }
}

impl Eq for FieldElement {}

fn same_field(a: &Arc<FiniteField>, b: &Arc<FiniteField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FieldElement {
    pub fn code(&self) -> u32 {
        self.code
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if same_field(&self.field, &other.field) {
            Ok(())
        } else {
            Err(Error::MixedFields)
        }
    }

    fn with_code(&self, code: u32) -> Self {
        Self {
            field: Arc::clone(&self.field),
            code,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_code(self.field.add(self.code, other.code)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_code(self.field.sub(self.code, other.code)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with_code(self.field.mul(self.code, other.code)))
    }

    pub fn inv(&self) -> Result<Self> {
        self.field
            .inv(self.code)
            .map(|c| self.with_code(c))
            .ok_or(Error::ZeroInverse)
    }
}

/// Maps `a` from `base` into `ext`. Only the prime subfield (and the
/// identity map) is supported: the element keeps its code.
pub fn embed(
    base: &Arc<FiniteField>,
    ext: &Arc<FiniteField>,
    a: &FieldElement,
) -> Result<FieldElement> {
    if !same_field(base, &a.field) {
        return Err(Error::MixedFields);
    }
    let err = |reason: &str| Error::Embedding {
        from: base.q,
        into: ext.q,
        reason: reason.to_string(),
    };
    if base.p != ext.p {
        return Err(err("different characteristic"));
    }
    if !ext.e.is_multiple_of(base.e) {
        return Err(err("degree does not divide"));
    }
    if base.e != 1 && !same_field(base, ext) {
        return Err(err("only prime-subfield embeddings are supported"));
    }
    Ok(FieldElement {
        field: Arc::clone(ext),
        code: a.code,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_fields() {
        let f2 = FiniteField::new(2, 1).unwrap();
        assert_eq!(f2.order(), 2);
        assert_eq!(f2.add(1, 1), 0);
        let f3 = FiniteField::new(3, 1).unwrap();
        assert_eq!(f3.add(2, 2), 1);
        assert_eq!(f3.modulus(), &[0, 1]);
        assert!(matches!(FiniteField::new(4, 1), Err(Error::NotPrime(4))));
        assert!(FiniteField::new(2, 0).is_err());
        assert!(FiniteField::new(2, 17).is_err());
    }

    #[test]
    fn gf4_modulus_and_product() {
        // oracle: of the four monic quadratics over GF(2), only x^2 + x + 1
        // has no root
        let roots = |c0: u64, c1: u64| (0..2).any(|x| (x * x + c1 * x + c0).is_multiple_of(2));
        let irreducible: Vec<_> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .into_iter()
            .filter(|&(c0, c1)| !roots(c0, c1))
            .collect();
        assert_eq!(irreducible, vec![(1, 1)]);
        let f4 = FiniteField::new(2, 2).unwrap();
        assert_eq!(f4.modulus(), &[1, 1, 1]);
        // alpha = x has code 2; alpha^2 = alpha + 1 has code 3
        assert_eq!(f4.mul(2, 2), 3);
    }

    #[test]
    fn deterministic_modulus() {
        for (p, e) in [(2, 3), (2, 4), (3, 2), (5, 2), (2, 8), (3, 5), (7, 3)] {
            let a = FiniteField::new(p, e).unwrap();
            let b = FiniteField::new(p, e).unwrap();
            assert_eq!(a.modulus(), b.modulus());
        }
        assert_eq!(FiniteField::new(2, 3).unwrap().modulus(), &[1, 0, 1, 1]);
        assert_eq!(FiniteField::new(3, 2).unwrap().modulus(), &[1, 0, 1]);
    }

    fn all_prime_powers_to(limit: u64) -> Vec<u64> {
        (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
    }

    #[test]
    fn field_axioms_exhaustive() {
        for q in all_prime_powers_to(64) {
            let f = FiniteField::with_order(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "q={q} a={a}");
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
            // associativity and distributivity on a sample when q is large
            let step = if q > 16 { 3 } else { 1 };
            for a in (0..q).step_by(step) {
                for b in (0..q).step_by(step) {
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in all_prime_powers_to(64) {
            let f = FiniteField::with_order(q).unwrap();
            let has_generator = (1..q as u32).any(|g| f.multiplicative_order(g) == Some(q - 1));
            assert!(has_generator, "q={q}");
        }
    }

    #[test]
    fn large_field_without_tables() {
        // 3^11 = 177147 > 2^16 uses the polynomial path
        let f = FiniteField::new(3, 11).unwrap();
        for a in [1u32, 2, 5, 1000, 177146] {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.pow(7, f.order() - 1), 1);
    }

    #[test]
    fn element_ops_and_errors() {
        let f3 = FiniteField::new(3, 1).unwrap();
        let f5 = FiniteField::new(5, 1).unwrap();
        let a = f3.element(2).unwrap();
        let b = f3.element(2).unwrap();
        assert_eq!(a.add(&b).unwrap().code(), 1);
        assert_eq!(a.mul(&a.inv().unwrap()).unwrap().code(), 1);
        assert_eq!(f3.element(0).unwrap().inv(), Err(Error::ZeroInverse));
        assert_eq!(a.add(&f5.element(1).unwrap()), Err(Error::MixedFields));
        assert!(f3.element(3).is_err());
        // a freshly built copy of the same field mixes fine
        let f3b = FiniteField::new(3, 1).unwrap();
        assert_eq!(a.add(&f3b.element(1).unwrap()).unwrap().code(), 0);
    }

    #[test]
    fn embedding() {
        let f2 = FiniteField::new(2, 1).unwrap();
        let f4 = FiniteField::new(2, 2).unwrap();
        let f8 = FiniteField::new(2, 3).unwrap();
        let f3 = FiniteField::new(3, 1).unwrap();
        let f9 = FiniteField::new(3, 2).unwrap();
        assert_eq!(embed(&f2, &f4, &f2.element(1).unwrap()).unwrap().code(), 1);
        assert_eq!(embed(&f3, &f9, &f3.element(2).unwrap()).unwrap().code(), 2);
        assert_eq!(embed(&f2, &f8, &f2.element(0).unwrap()).unwrap().code(), 0);
        assert!(embed(&f2, &f9, &f2.element(1).unwrap()).is_err());
        assert!(embed(&f4, &f8, &f4.element(1).unwrap()).is_err());
        assert!(embed(&f2, &f4, &f3.element(1).unwrap()).is_err());

        // prime subfield is closed under the big field's operations
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(f9.add(a, b), f3.add(a, b));
                assert_eq!(f9.mul(a, b), f3.mul(a, b));
            }
        }
    }

    #[test]
    fn oversized_orders_fail_fast() {
        let start = std::time::Instant::now();
        assert!(FiniteField::with_order(u64::MAX - 58).is_err());
        assert!(FiniteField::with_order(1 << 40).is_err());
        assert!(start.elapsed() < std::time::Duration::from_millis(100));
    }

    #[test]
    fn descriptor_validation() {
        let f = FiniteField::new(2, 4).unwrap();
        let d = f.descriptor();
        assert_eq!(*FiniteField::from_descriptor(&d).unwrap(), *f);
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, r#"{"p":2,"e":4,"modulus":[1,0,0,1,1]}"#);
        let reducible = FieldDescriptor {
            p: 2,
            e: 2,
            modulus: vec![1, 0, 1],
        };
        assert!(FiniteField::from_descriptor(&reducible).is_err());
        let not_monic = FieldDescriptor {
            p: 3,
            e: 2,
            modulus: vec![1, 0, 2],
        };
        assert!(FiniteField::from_descriptor(&not_monic).is_err());
        let short = FieldDescriptor {
            p: 3,
            e: 2,
            modulus: vec![1, 1],
        };
        assert!(FiniteField::from_descriptor(&short).is_err());
        // another irreducible quadratic over GF(3) is accepted
        let alt = FieldDescriptor {
            p: 3,
            e: 2,
            modulus: vec![2, 1, 1],
        };
        let g = FiniteField::from_descriptor(&alt).unwrap();
        assert_ne!(*g, *FiniteField::new(3, 2).unwrap());
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(prime_power(4), Some((2, 2)));
        assert_eq!(prime_power(27), Some((3, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(0), None);
    }
}
