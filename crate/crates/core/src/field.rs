//! Exact arithmetic in GF(p^h) backed by full lookup tables.
//!
//! Elements are encoded canonically as integers in `[0, q)`: the base-p
//! digits of the integer, least significant first, are the coefficients of
//! the polynomial representative modulo the field's irreducible modulus.
//! Every field carries its modulus, and [`Field::header`] renders the
//! `gf(p^h;modulus=c0,...,ch)` string used by all file formats.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order for which tables are built.
pub const MAX_ORDER: usize = 512;

/// Largest order for which irreducibility testing is attempted.
const MAX_IRREDUCIBILITY_ORDER: u64 = 1 << 20;

/// Default moduli for non-prime orders up to [`MAX_ORDER`], table version 1.
///
/// Each entry is the primitive monic polynomial of degree h whose lower
/// coefficients, read as a base-p integer, are smallest. Coefficients are
/// listed from the constant term up to the leading 1.
pub const DEFAULT_MODULI: &[(u32, u32, &[u32])] = &[
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
    (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, 2, &[2, 1, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (3, 4, &[2, 1, 0, 0, 1]),
    (3, 5, &[1, 2, 0, 0, 0, 1]),
    (5, 2, &[2, 1, 1]),
    (5, 3, &[2, 3, 0, 1]),
    (7, 2, &[3, 1, 1]),
    (7, 3, &[2, 3, 0, 1]),
    (11, 2, &[7, 1, 1]),
    (13, 2, &[2, 1, 1]),
    (17, 2, &[3, 1, 1]),
    (19, 2, &[2, 1, 1]),
];

/// Version tag of [`DEFAULT_MODULI`], echoed in reports.
pub const DEFAULT_MODULI_VERSION: u32 = 1;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("{0} is not a prime")]
    NotPrime(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{h} exceeds the supported maximum {MAX_ORDER}")]
    TooLarge { p: u32, h: u32 },
    #[error("no default modulus for GF({p}^{h}); supply one explicitly")]
    NoDefaultModulus { p: u32, h: u32 },
    #[error("modulus must be monic of degree {expected} with coefficients below p")]
    BadModulus { expected: u32 },
    #[error("modulus {0:?} is reducible")]
    Reducible(Vec<u32>),
    #[error("{e} does not divide the extension degree {h}")]
    NotADivisor { e: u32, h: u32 },
    #[error("element {value} is out of range for a field of order {q}")]
    OutOfRange { value: usize, q: usize },
    #[error("zero has no multiplicative inverse")]
    ZeroInverse,
    #[error("malformed field header {0:?}")]
    BadHeader(String),
}

/// An element of a finite field in canonical integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// Canonical integer encoding.
    #[inline]
    pub fn value(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// GF(p^h) with precomputed addition, multiplication, negation and inverse tables.
#[derive(Clone)]
pub struct Field {
    p: u32,
    h: u32,
    q: usize,
    modulus: Vec<u32>,
    default_modulus: bool,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("header", &self.header()).finish()
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.h == other.h && self.modulus == other.modulus
    }
}

impl Eq for Field {}

impl Field {
    /// Builds GF(p^h). Without an explicit modulus the shipped default is used.
    pub fn new(p: u32, h: u32, modulus: Option<&[u32]>) -> Result<Field, FieldError> {
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        if h == 0 {
            return Err(FieldError::ZeroDegree);
        }
        let q = (p as u64).checked_pow(h).unwrap_or(u64::MAX);
        if q > MAX_ORDER as u64 {
            return Err(FieldError::TooLarge { p, h });
        }
        let (modulus, default_modulus) = match modulus {
            Some(m) => (m.to_vec(), default_modulus(p, h).map_or(false, |d| d == m)),
            None => (
                default_modulus(p, h).ok_or(FieldError::NoDefaultModulus { p, h })?,
                true,
            ),
        };
        if modulus.len() != h as usize + 1
            || modulus[h as usize] != 1
            || modulus.iter().any(|&c| c >= p)
        {
            return Err(FieldError::BadModulus { expected: h });
        }
        if !is_irreducible(&modulus, p) {
            return Err(FieldError::Reducible(modulus));
        }
        Ok(Self::build_tables(p, h, q as usize, modulus, default_modulus))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Field, FieldError> {
        Field::new(p, 1, None)
    }

    /// GF(q) for a prime power q with the default modulus.
    pub fn with_order(q: usize) -> Result<Field, FieldError> {
        let (p, h) = prime_power(q).ok_or(FieldError::NotPrime(q as u32))?;
        Field::new(p, h, None)
    }

    fn build_tables(p: u32, h: u32, q: usize, modulus: Vec<u32>, default_modulus: bool) -> Field {
        let hu = h as usize;
        let digits: Vec<Vec<u32>> = (0..q).map(|v| to_digits(v, p, hu)).collect();
        let encode = |d: &[u32]| -> usize { d.iter().rev().fold(0usize, |acc, &c| acc * p as usize + c as usize) };

        let mut add = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        for a in 0..q {
            for b in 0..q {
                let s: Vec<u32> = (0..hu).map(|i| (digits[a][i] + digits[b][i]) % p).collect();
                add[a * q + b] = encode(&s) as u16;
            }
            let n: Vec<u32> = (0..hu).map(|i| (p - digits[a][i]) % p).collect();
            neg[a] = encode(&n) as u16;
        }

        // a * x^i for every a and i < h, then a * b = sum_i b_i (a x^i).
        let times_x = |d: &[u32]| -> Vec<u32> {
            let top = d[hu - 1];
            let mut out = vec![0u32; hu];
            for i in (1..hu).rev() {
                out[i] = d[i - 1];
            }
            for (i, o) in out.iter_mut().enumerate() {
                *o = (*o + (p - top) * modulus[i] % p) % p;
            }
            out
        };
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let mut shifts = Vec::with_capacity(hu);
            let mut cur = digits[a].clone();
            for _ in 0..hu {
                shifts.push(cur.clone());
                cur = if hu == 1 { cur } else { times_x(&cur) };
            }
            if hu == 1 {
                for b in 0..q {
                    mul[a * q + b] = ((a * b) % p as usize) as u16;
                }
                continue;
            }
            for b in 0..q {
                let mut acc = vec![0u32; hu];
                for (i, shifted) in shifts.iter().enumerate() {
                    let c = digits[b][i];
                    if c != 0 {
                        for j in 0..hu {
                            acc[j] = (acc[j] + c * shifted[j]) % p;
                        }
                    }
                }
                mul[a * q + b] = encode(&acc) as u16;
            }
        }
        let mut inv = vec![0u16; q];
        for a in 1..q {
            for b in 1..q {
                if mul[a * q + b] == 1 {
                    inv[a] = b as u16;
                    break;
                }
            }
        }
        Field { p, h, q, modulus, default_modulus, add, mul, neg, inv }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.h
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// True when the modulus is the shipped default for this (p, h).
    pub fn uses_default_modulus(&self) -> bool {
        self.default_modulus
    }

    /// `gf(p^h;modulus=c0,c1,...,ch)`.
    pub fn header(&self) -> String {
        let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
        format!("gf({}^{};modulus={})", self.p, self.h, coeffs.join(","))
    }

    /// Parses a header produced by [`Field::header`] and builds the field.
    pub fn from_header(header: &str) -> Result<Field, FieldError> {
        let bad = || FieldError::BadHeader(header.to_string());
        let inner = header
            .trim()
            .strip_prefix("gf(")
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (order, modulus) = inner.split_once(";modulus=").ok_or_else(bad)?;
        let (p, h) = order.split_once('^').ok_or_else(bad)?;
        let p: u32 = p.parse().map_err(|_| bad())?;
        let h: u32 = h.parse().map_err(|_| bad())?;
        let coeffs = modulus
            .split(',')
            .map(|c| c.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>, _>>()?;
        Field::new(p, h, Some(&coeffs))
    }

    /// Checked element constructor.
    pub fn try_elem(&self, value: usize) -> Result<FieldElement, FieldError> {
        if value < self.q {
            Ok(FieldElement(value as u16))
        } else {
            Err(FieldError::OutOfRange { value, q: self.q })
        }
    }

    /// Element constructor; panics when `value >= q`.
    #[inline]
    pub fn elem(&self, value: usize) -> FieldElement {
        assert!(value < self.q, "element {value} out of range for GF({})", self.q);
        FieldElement(value as u16)
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(|v| FieldElement(v as u16))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.add[a.value() * self.q + b.value()])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.mul[a.value() * self.q + b.value()])
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.value()])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement, FieldError> {
        if a.is_zero() {
            Err(FieldError::ZeroInverse)
        } else {
            Ok(FieldElement(self.inv[a.value()]))
        }
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElement, mut exp: u64) -> FieldElement {
        let mut base = a;
        let mut acc = FieldElement::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// a ↦ a^p.
    pub fn frobenius(&self, a: FieldElement) -> FieldElement {
        self.pow(a, self.p as u64)
    }

    /// True iff a = b² for some b; zero is a square.
    pub fn is_square(&self, a: FieldElement) -> bool {
        if a.is_zero() || self.p == 2 {
            return true;
        }
        self.pow(a, ((self.q - 1) / 2) as u64) == FieldElement::ONE
    }

    /// The non-zero non-squares, in encoding order.
    pub fn non_squares(&self) -> Vec<FieldElement> {
        self.elements().filter(|&a| !self.is_square(a)).collect()
    }

    /// The subfield GF(p^e), as the elements fixed by a ↦ a^(p^e).
    pub fn subfield_elements(&self, e: u32) -> Result<Vec<FieldElement>, FieldError> {
        if e == 0 || self.h % e != 0 {
            return Err(FieldError::NotADivisor { e, h: self.h });
        }
        let exp = (self.p as u64).pow(e);
        Ok(self.elements().filter(|&a| self.pow(a, exp) == a).collect())
    }

    /// For even h, the least-encoded element outside GF(√q); together with 1
    /// it is a basis of GF(q) over GF(√q).
    pub fn quadratic_generator(&self) -> Option<FieldElement> {
        if self.h % 2 != 0 {
            return None;
        }
        let sub = self.subfield_elements(self.h / 2).ok()?;
        self.elements().find(|a| !sub.contains(a))
    }

    /// A generator of the multiplicative group (least encoding).
    pub fn primitive_element(&self) -> FieldElement {
        let n = (self.q - 1) as u64;
        let factors = prime_factors(n);
        self.elements()
            .skip(1)
            .find(|&g| factors.iter().all(|&f| self.pow(g, n / f) != FieldElement::ONE))
            .expect("finite field has a primitive element")
    }

    /// All subgroups of (GF(q), +), i.e. the GF(p)-subspaces, each sorted.
    ///
    /// Ordered by size, then lexicographically by element list.
    pub fn additive_subgroups(&self) -> Vec<Vec<FieldElement>> {
        let h = self.h as usize;
        let p = self.p as usize;
        let mut out = Vec::new();
        for k in 0..=h {
            for pivots in combinations(h, k) {
                // free coordinates for row i: positions > pivots[i] that are not pivots
                let free: Vec<Vec<usize>> = pivots
                    .iter()
                    .map(|&c| ((c + 1)..h).filter(|j| !pivots.contains(j)).collect())
                    .collect();
                let total_free: usize = free.iter().map(|f| f.len()).sum();
                let combos = p.pow(total_free as u32);
                for code in 0..combos {
                    let mut rest = code;
                    let mut basis = Vec::with_capacity(k);
                    for (i, &c) in pivots.iter().enumerate() {
                        let mut v = vec![0usize; h];
                        v[c] = 1;
                        for &j in &free[i] {
                            v[j] = rest % p;
                            rest /= p;
                        }
                        basis.push(self.elem(from_digits(&v, p)));
                    }
                    out.push(self.span(&basis));
                }
            }
        }
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// All subgroups of (GF(q)^×, ·): one cyclic subgroup per divisor of q − 1.
    pub fn multiplicative_subgroups(&self) -> Vec<Vec<FieldElement>> {
        let n = self.q - 1;
        let mut out: Vec<Vec<FieldElement>> = (1..=n)
            .filter(|d| n % d == 0)
            .map(|d| {
                let mut g: Vec<FieldElement> = self
                    .elements()
                    .skip(1)
                    .filter(|&a| self.pow(a, d as u64) == FieldElement::ONE)
                    .collect();
                g.sort();
                g
            })
            .collect();
        out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        out
    }

    /// Unordered pairs {A, B} of proper non-trivial additive subgroups with
    /// GF(q)^+ = A ⊕ B, returned with A before B in [`Field::additive_subgroups`] order.
    pub fn additive_direct_sums(&self) -> Vec<(Vec<FieldElement>, Vec<FieldElement>)> {
        let subs: Vec<_> = self
            .additive_subgroups()
            .into_iter()
            .filter(|s| s.len() > 1 && s.len() < self.q)
            .collect();
        let mut out = Vec::new();
        for i in 0..subs.len() {
            for j in (i + 1)..subs.len() {
                let (a, b) = (&subs[i], &subs[j]);
                if a.len() * b.len() == self.q && a.iter().filter(|x| b.contains(x)).count() == 1 {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    /// Unordered pairs {A, B} of proper non-trivial multiplicative subgroups
    /// with GF(q)^× = A ⊕ B.
    pub fn multiplicative_direct_sums(&self) -> Vec<(Vec<FieldElement>, Vec<FieldElement>)> {
        let subs: Vec<_> = self
            .multiplicative_subgroups()
            .into_iter()
            .filter(|s| s.len() > 1 && s.len() < self.q - 1)
            .collect();
        let mut out = Vec::new();
        for i in 0..subs.len() {
            for j in (i + 1)..subs.len() {
                let (a, b) = (&subs[i], &subs[j]);
                if a.len() * b.len() == self.q - 1 && gcd(a.len(), b.len()) == 1 {
                    out.push((a.clone(), b.clone()));
                }
            }
        }
        out
    }

    fn span(&self, basis: &[FieldElement]) -> Vec<FieldElement> {
        let mut elems = vec![FieldElement::ZERO];
        for &b in basis {
            let mut next = Vec::with_capacity(elems.len() * self.p as usize);
            for &e in &elems {
                let mut cur = e;
                for _ in 0..self.p {
                    next.push(cur);
                    cur = self.add(cur, b);
                }
            }
            elems = next;
        }
        elems.sort();
        elems.dedup();
        elems
    }
}

fn default_modulus(p: u32, h: u32) -> Option<Vec<u32>> {
    if h == 1 {
        return Some(vec![0, 1]);
    }
    DEFAULT_MODULI
        .iter()
        .find(|(dp, dh, _)| *dp == p && *dh == h)
        .map(|(_, _, m)| m.to_vec())
}

/// Splits q = p^h, or `None` if q is not a prime power.
pub fn prime_power(q: usize) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut rest = q;
    let mut h = 0;
    while rest % p == 0 {
        rest /= p;
        h += 1;
    }
    (rest == 1).then_some((p as u32, h))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
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

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn to_digits(mut v: usize, p: u32, h: usize) -> Vec<u32> {
    let mut d = vec![0u32; h];
    for slot in d.iter_mut() {
        *slot = (v % p as usize) as u32;
        v /= p as usize;
    }
    d
}

fn from_digits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Trial-division irreducibility test over GF(p) (coefficients low to high).
pub fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let deg = poly.len().saturating_sub(1);
    if deg == 0 {
        return false;
    }
    if (p as u64).saturating_pow(deg as u32) > MAX_IRREDUCIBILITY_ORDER {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for code in 0..count {
            let mut divisor: Vec<u32> = (0..d).map(|i| ((code / (p as u64).pow(i as u32)) % p as u64) as u32).collect();
            divisor.push(1);
            if poly_rem_is_zero(poly, &divisor, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(num: &[u32], monic_div: &[u32], p: u32) -> bool {
    let mut r: Vec<u32> = num.to_vec();
    let dd = monic_div.len() - 1;
    while r.len() > dd {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dd;
        if lead != 0 {
            for (i, &c) in monic_div.iter().enumerate() {
                r[shift + i] = (r[shift + i] + (p - lead) * c % p) % p;
            }
        }
        r.pop();
    }
    r.iter().all(|&c| c == 0)
}
