//! Exact arithmetic in the tower GF(p) ⊂ GF(q) ⊂ GF(q^m), q = p^s,
//! including the relative trace map GF(q^m) → GF(q).
//!
//! Elements are integer encodings: an element of GF(q^m) with coordinates
//! (c_0, …, c_{m-1}) over GF(q) in the power basis {1, α, …, α^{m-1}}
//! encodes as Σ enc(c_i)·q^i, where enc on GF(q) recurses the same way
//! over GF(p) and enc on GF(p) is the residue in [0, p).

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Hard cap on the top field size q^m.
pub const SIZE_CAP: u64 = 1 << 32;

/// Fields of this size or smaller get a precomputed trace table.
const TRACE_TABLE_CAP: u64 = 1 << 16;

/// Which field of the tower an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Level {
    /// The prime field GF(p).
    Prime,
    /// The field of definition GF(q), q = p^s.
    Base,
    /// The extension field GF(q^m).
    Ext,
}

/// An element of one field of a tower, as its integer encoding.
///
/// Elements are plain values; the owning [`FieldTower`] performs all
/// arithmetic. Mixing elements from different towers is not detected
/// beyond range checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Element {
    level: Level,
    code: u64,
}

impl Element {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn code(&self) -> u64 {
        self.code
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.code)
    }
}

/// The chain GF(p) ⊂ GF(q) ⊂ GF(q^m) with canonical irreducible polynomials.
///
/// Both defining polynomials are the first irreducible monic polynomial in
/// the scan order of increasing integer encoding of the non-leading
/// coefficients, so two towers with equal (p, s, m) are identical.
/// Immutable after construction; all operations are pure.
pub struct FieldTower {
    p: u64,
    s: u32,
    m: u32,
    q: u64,
    qm: u64,
    /// Monic irreducible of degree s over GF(p); coefficients low-to-high.
    poly_q: Vec<u64>,
    /// Monic irreducible of degree m over GF(q); coefficients low-to-high.
    poly_qm: Vec<u64>,
    /// Trace to GF(q) for every element, when qm is small enough.
    trace_tab: Option<Vec<u64>>,
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        (self.p, self.s, self.m) == (other.p, other.s, other.m)
    }
}

impl Eq for FieldTower {}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldTower(p={} s={} m={})", self.p, self.s, self.m)
    }
}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} s={} m={}", self.p, self.s, self.m)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Extended Euclid inverse of a mod p, a != 0.
fn inv_mod_prime(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let quot = r0 / r1;
        (r0, r1) = (r1, r0 - quot * r1);
        (t0, t1) = (t1, t0 - quot * t1);
    }
    debug_assert_eq!(r0, 1, "inverse of zero or non-prime modulus");
    t0.rem_euclid(p as i128) as u64
}

impl FieldTower {
    /// Builds the canonical tower for (p, s, m).
    pub fn new(p: u64, s: u32, m: u32) -> Result<Arc<FieldTower>> {
        if s == 0 || m == 0 {
            return Err(Error::InvalidParameter(
                "extension degrees s and m must be positive".into(),
            ));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let exp = s
            .checked_mul(m)
            .ok_or(Error::SizeCapExceeded { p, exp: u32::MAX })?;
        let mut qm: u64 = 1;
        for _ in 0..exp {
            qm = qm
                .checked_mul(p)
                .filter(|&v| v <= SIZE_CAP)
                .ok_or(Error::SizeCapExceeded { p, exp })?;
        }
        let q = p.pow(s);

        let poly_q = scan_irreducible(&PrimeOps { p }, s as usize);
        let mut tower = FieldTower {
            p,
            s,
            m,
            q,
            qm,
            poly_q,
            poly_qm: Vec::new(),
            trace_tab: None,
        };
        tower.poly_qm = scan_irreducible(&BaseOps { tower: &tower }, m as usize);
        if tower.qm <= TRACE_TABLE_CAP {
            tower.trace_tab = Some(tower.build_trace_table());
        }
        Ok(Arc::new(tower))
    }

    /// Parses the field spec text form "p=<p> s=<s> m=<m>".
    pub fn from_spec(spec: &str) -> Result<Arc<FieldTower>> {
        let mut p = None;
        let mut s = None;
        let mut m = None;
        for token in spec.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("bad field spec token {token:?}")))?;
            let parsed: u64 = value
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad field spec value {token:?}")))?;
            match key {
                "p" => p = Some(parsed),
                "s" => s = Some(parsed as u32),
                "m" => m = Some(parsed as u32),
                _ => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown field spec key {key:?}"
                    )))
                }
            }
        }
        match (p, s, m) {
            (Some(p), Some(s), Some(m)) => FieldTower::new(p, s, m),
            _ => Err(Error::InvalidParameter(
                "field spec must provide p, s and m".into(),
            )),
        }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Size q = p^s of the field of definition.
    pub fn q(&self) -> u64 {
        self.q
    }

    /// Size q^m of the extension field.
    pub fn qm(&self) -> u64 {
        self.qm
    }

    /// Defining polynomial of GF(q) over GF(p), coefficients low-to-high, monic.
    pub fn poly_q(&self) -> &[u64] {
        &self.poly_q
    }

    /// Defining polynomial of GF(q^m) over GF(q), coefficients low-to-high, monic.
    pub fn poly_qm(&self) -> &[u64] {
        &self.poly_qm
    }

    pub fn size(&self, level: Level) -> u64 {
        match level {
            Level::Prime => self.p,
            Level::Base => self.q,
            Level::Ext => self.qm,
        }
    }

    pub fn element(&self, level: Level, code: u64) -> Result<Element> {
        let size = self.size(level);
        if code >= size {
            return Err(Error::CodeOutOfRange { code, size });
        }
        Ok(Element { level, code })
    }

    pub fn zero(&self, level: Level) -> Element {
        Element { level, code: 0 }
    }

    pub fn one(&self, level: Level) -> Element {
        Element { level, code: 1 }
    }

    /// The class α of X in GF(q^m) = GF(q)[X]/(poly_qm); a constant when m = 1.
    pub fn alpha(&self) -> Element {
        if self.m == 1 {
            Element {
                level: Level::Ext,
                code: self.base_neg(self.poly_qm[0]),
            }
        } else {
            Element {
                level: Level::Ext,
                code: self.q,
            }
        }
    }

    fn check_pair(&self, x: Element, y: Element) -> Result<Level> {
        if x.level != y.level {
            return Err(Error::LevelMismatch {
                left: x.level,
                right: y.level,
            });
        }
        self.check(x)?;
        self.check(y)?;
        Ok(x.level)
    }

    fn check(&self, x: Element) -> Result<()> {
        let size = self.size(x.level);
        if x.code >= size {
            return Err(Error::CodeOutOfRange { code: x.code, size });
        }
        Ok(())
    }

    pub fn add(&self, x: Element, y: Element) -> Result<Element> {
        let level = self.check_pair(x, y)?;
        Ok(Element {
            level,
            code: self.raw_add(level, x.code, y.code),
        })
    }

    pub fn sub(&self, x: Element, y: Element) -> Result<Element> {
        let level = self.check_pair(x, y)?;
        Ok(Element {
            level,
            code: self.raw_sub(level, x.code, y.code),
        })
    }

    pub fn mul(&self, x: Element, y: Element) -> Result<Element> {
        let level = self.check_pair(x, y)?;
        Ok(Element {
            level,
            code: self.raw_mul(level, x.code, y.code),
        })
    }

    pub fn neg(&self, x: Element) -> Result<Element> {
        self.check(x)?;
        Ok(Element {
            level: x.level,
            code: self.raw_neg(x.level, x.code),
        })
    }

    pub fn inv(&self, x: Element) -> Result<Element> {
        self.check(x)?;
        if x.code == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Element {
            level: x.level,
            code: self.raw_inv(x.level, x.code),
        })
    }

    /// x^e by square-and-multiply; x^0 = 1.
    pub fn pow(&self, x: Element, e: u64) -> Result<Element> {
        self.check(x)?;
        Ok(Element {
            level: x.level,
            code: self.raw_pow(x.level, x.code, e),
        })
    }

    /// Embeds an element into a higher level of the tower.
    ///
    /// The integer encoding is positional, so embeddings preserve the code.
    pub fn embed(&self, x: Element, target: Level) -> Result<Element> {
        self.check(x)?;
        let ok = matches!(
            (x.level, target),
            (Level::Prime, _)
                | (Level::Base, Level::Base)
                | (Level::Base, Level::Ext)
                | (Level::Ext, Level::Ext)
        );
        if !ok {
            return Err(Error::LevelMismatch {
                left: x.level,
                right: target,
            });
        }
        Ok(Element {
            level: target,
            code: x.code,
        })
    }

    /// Relative trace tr(x) = Σ_{i=0}^{m-1} x^{q^i} of a top-level element,
    /// landing in GF(q).
    pub fn trace_to_subfield(&self, x: Element) -> Result<Element> {
        if x.level != Level::Ext {
            return Err(Error::LevelMismatch {
                left: x.level,
                right: Level::Ext,
            });
        }
        self.check(x)?;
        Ok(Element {
            level: Level::Base,
            code: self.ext_trace(x.code),
        })
    }

    // ---- raw arithmetic on integer encodings ----

    pub(crate) fn raw_add(&self, level: Level, a: u64, b: u64) -> u64 {
        match level {
            Level::Prime => {
                let t = a + b;
                if t >= self.p {
                    t - self.p
                } else {
                    t
                }
            }
            Level::Base => self.base_add(a, b),
            Level::Ext => self.ext_add(a, b),
        }
    }

    pub(crate) fn raw_sub(&self, level: Level, a: u64, b: u64) -> u64 {
        self.raw_add(level, a, self.raw_neg(level, b))
    }

    pub(crate) fn raw_neg(&self, level: Level, a: u64) -> u64 {
        match level {
            Level::Prime => {
                if a == 0 {
                    0
                } else {
                    self.p - a
                }
            }
            Level::Base => self.base_neg(a),
            Level::Ext => self.ext_neg(a),
        }
    }

    pub(crate) fn raw_mul(&self, level: Level, a: u64, b: u64) -> u64 {
        match level {
            Level::Prime => a * b % self.p,
            Level::Base => self.base_mul(a, b),
            Level::Ext => self.ext_mul(a, b),
        }
    }

    /// Inverse of a nonzero encoding, by extended Euclid on polynomial
    /// representatives (integer Euclid at the prime level).
    pub(crate) fn raw_inv(&self, level: Level, a: u64) -> u64 {
        debug_assert_ne!(a, 0);
        match level {
            Level::Prime => inv_mod_prime(a, self.p),
            Level::Base => self.base_inv(a),
            Level::Ext => self.ext_inv(a),
        }
    }

    pub(crate) fn raw_pow(&self, level: Level, a: u64, mut e: u64) -> u64 {
        let mut result = 1u64;
        let mut acc = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.raw_mul(level, result, acc);
            }
            acc = self.raw_mul(level, acc, acc);
            e >>= 1;
        }
        result
    }

    // GF(q): digits base p reduced by poly_q; direct residue arithmetic when s = 1.

    pub(crate) fn base_add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.s == 1 {
            let t = a + b;
            return if t >= self.p { t - self.p } else { t };
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.s {
            let t = a % self.p + b % self.p;
            out += (if t >= self.p { t - self.p } else { t }) * pw;
            a /= self.p;
            b /= self.p;
            pw *= self.p;
        }
        out
    }

    pub(crate) fn base_neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.s == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut a = a;
        for _ in 0..self.s {
            let r = a % self.p;
            out += (if r == 0 { 0 } else { self.p - r }) * pw;
            a /= self.p;
            pw *= self.p;
        }
        out
    }

    pub(crate) fn base_sub(&self, a: u64, b: u64) -> u64 {
        self.base_add(a, self.base_neg(b))
    }

    pub(crate) fn base_mul(&self, a: u64, b: u64) -> u64 {
        if self.s == 1 {
            return a * b % self.p;
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let s = self.s as usize;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        digits(a, self.p, &mut da[..s]);
        digits(b, self.p, &mut db[..s]);
        let mut prod = [0u64; 63];
        for i in 0..s {
            if da[i] == 0 {
                continue;
            }
            for j in 0..s {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % self.p;
            }
        }
        // Reduce X^{s+j} via the monic defining polynomial.
        for idx in (s..2 * s - 1).rev() {
            let c = prod[idx];
            if c == 0 {
                continue;
            }
            prod[idx] = 0;
            for t in 0..s {
                let f = self.poly_q[t];
                if f != 0 {
                    let sub = c * f % self.p;
                    let cur = prod[idx - s + t];
                    prod[idx - s + t] = if cur >= sub { cur - sub } else { cur + self.p - sub };
                }
            }
        }
        undigits(&prod[..s], self.p)
    }

    pub(crate) fn base_inv(&self, a: u64) -> u64 {
        debug_assert_ne!(a, 0);
        if self.s == 1 {
            return inv_mod_prime(a, self.p);
        }
        let ops = PrimeOps { p: self.p };
        let av = poly_from_code(a, self.p, self.s as usize);
        let inv = poly_inv_mod(&ops, &av, &self.poly_q);
        undigits(&inv, self.p)
    }

    // GF(q^m): digits base q reduced by poly_qm.

    pub(crate) fn ext_add(&self, a: u64, b: u64) -> u64 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.m == 1 {
            return self.base_add(a, b);
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..self.m {
            out += self.base_add(a % self.q, b % self.q) * pw;
            a /= self.q;
            b /= self.q;
            pw *= self.q;
        }
        out
    }

    pub(crate) fn ext_neg(&self, a: u64) -> u64 {
        if self.p == 2 {
            return a;
        }
        if self.m == 1 {
            return self.base_neg(a);
        }
        let mut out = 0u64;
        let mut pw = 1u64;
        let mut a = a;
        for _ in 0..self.m {
            out += self.base_neg(a % self.q) * pw;
            a /= self.q;
            pw *= self.q;
        }
        out
    }

    pub(crate) fn ext_mul(&self, a: u64, b: u64) -> u64 {
        if self.m == 1 {
            return self.base_mul(a, b);
        }
        if a == 0 || b == 0 {
            return 0;
        }
        let m = self.m as usize;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        digits(a, self.q, &mut da[..m]);
        digits(b, self.q, &mut db[..m]);
        let mut prod = [0u64; 63];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                if db[j] != 0 {
                    prod[i + j] = self.base_add(prod[i + j], self.base_mul(da[i], db[j]));
                }
            }
        }
        for idx in (m..2 * m - 1).rev() {
            let c = prod[idx];
            if c == 0 {
                continue;
            }
            prod[idx] = 0;
            for t in 0..m {
                let f = self.poly_qm[t];
                if f != 0 {
                    prod[idx - m + t] = self.base_sub(prod[idx - m + t], self.base_mul(c, f));
                }
            }
        }
        undigits(&prod[..m], self.q)
    }

    /// Multiplies a top-level encoding by α (one digit shift plus reduction).
    pub(crate) fn ext_mul_alpha(&self, a: u64) -> u64 {
        if self.m == 1 {
            return self.base_mul(a, self.base_neg(self.poly_qm[0]));
        }
        let m = self.m as usize;
        let mut d = [0u64; 33];
        digits(a, self.q, &mut d[..m]);
        d.copy_within(0..m, 1);
        d[0] = 0;
        let c = d[m];
        if c != 0 {
            d[m] = 0;
            for (slot, &f) in d[..m].iter_mut().zip(&self.poly_qm) {
                if f != 0 {
                    *slot = self.base_sub(*slot, self.base_mul(c, f));
                }
            }
        }
        undigits(&d[..m], self.q)
    }

    pub(crate) fn ext_inv(&self, a: u64) -> u64 {
        debug_assert_ne!(a, 0);
        if self.m == 1 {
            return self.base_inv(a);
        }
        let ops = BaseOps { tower: self };
        let av = poly_from_code(a, self.q, self.m as usize);
        let inv = poly_inv_mod(&ops, &av, &self.poly_qm);
        undigits(&inv, self.q)
    }

    /// Trace of a top-level encoding, returned as a GF(q) encoding.
    pub(crate) fn ext_trace(&self, a: u64) -> u64 {
        if let Some(tab) = &self.trace_tab {
            return tab[a as usize];
        }
        self.ext_trace_slow(a)
    }

    fn ext_trace_slow(&self, a: u64) -> u64 {
        let mut acc = a;
        let mut y = a;
        for _ in 1..self.m {
            y = self.raw_pow(Level::Ext, y, self.q);
            acc = self.ext_add(acc, y);
        }
        debug_assert!(acc < self.q, "trace landed outside GF(q)");
        acc
    }

    fn build_trace_table(&self) -> Vec<u64> {
        let n = self.qm as usize;
        // Frobenius x -> x^q first, then traces by m-1 lookups each.
        let frob: Vec<u64> = (0..n)
            .map(|x| self.raw_pow(Level::Ext, x as u64, self.q))
            .collect();
        (0..n)
            .map(|x| {
                let mut acc = x as u64;
                let mut y = x;
                for _ in 1..self.m {
                    y = frob[y] as usize;
                    acc = self.ext_add(acc, y as u64);
                }
                debug_assert!(acc < self.q);
                acc
            })
            .collect()
    }

    /// Coordinates of a top-level encoding over GF(q), low power first.
    pub(crate) fn ext_coords(&self, a: u64, out: &mut [u64]) {
        digits(a, self.q, out);
    }
}

fn digits(mut code: u64, radix: u64, out: &mut [u64]) {
    for slot in out.iter_mut() {
        *slot = code % radix;
        code /= radix;
    }
}

fn undigits(digits: &[u64], radix: u64) -> u64 {
    digits.iter().rev().fold(0, |acc, &d| acc * radix + d)
}

// ---- polynomial machinery over an abstract coefficient field ----

/// Arithmetic on integer-encoded coefficients, enough for Euclid and
/// irreducibility scans.
trait CoeffOps {
    fn size(&self) -> u64;
    fn sub(&self, a: u64, b: u64) -> u64;
    fn mul(&self, a: u64, b: u64) -> u64;
    fn inv(&self, a: u64) -> u64;
}

struct PrimeOps {
    p: u64,
}

impl CoeffOps for PrimeOps {
    fn size(&self) -> u64 {
        self.p
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: u64) -> u64 {
        inv_mod_prime(a, self.p)
    }
}

struct BaseOps<'a> {
    tower: &'a FieldTower,
}

impl CoeffOps for BaseOps<'_> {
    fn size(&self) -> u64 {
        self.tower.q
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        self.tower.base_sub(a, b)
    }
    fn mul(&self, a: u64, b: u64) -> u64 {
        self.tower.base_mul(a, b)
    }
    fn inv(&self, a: u64) -> u64 {
        self.tower.base_inv(a)
    }
}

/// Coefficient vector (low-to-high) of the encoding, padded to `len`.
fn poly_from_code(code: u64, radix: u64, len: usize) -> Vec<u64> {
    let mut c = code;
    (0..len)
        .map(|_| {
            let d = c % radix;
            c /= radix;
            d
        })
        .collect()
}

fn poly_trim(poly: &mut Vec<u64>) {
    while poly.last() == Some(&0) {
        poly.pop();
    }
}

/// Remainder of a mod b; b nonzero.
fn poly_rem(ops: &impl CoeffOps, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    debug_assert!(!b.is_empty());
    let lead_inv = ops.inv(*b.last().unwrap());
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let factor = ops.mul(*r.last().unwrap(), lead_inv);
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] = ops.sub(r[shift + i], ops.mul(factor, bc));
        }
        poly_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Inverse of a mod f, for f irreducible and a nonzero of degree < deg f.
fn poly_inv_mod(ops: &impl CoeffOps, a: &[u64], f: &[u64]) -> Vec<u64> {
    let mut r0 = f.to_vec();
    let mut r1 = a.to_vec();
    poly_trim(&mut r0);
    poly_trim(&mut r1);
    let mut t0: Vec<u64> = vec![];
    let mut t1: Vec<u64> = vec![1];
    while r1.len() > 1 {
        // One Euclid division step: r0 = quot*r1 + rem, mirrored on t.
        let lead_inv = ops.inv(*r1.last().unwrap());
        let mut rem = r0.clone();
        let mut quot = vec![0u64; rem.len() - r1.len() + 1];
        while rem.len() >= r1.len() {
            let shift = rem.len() - r1.len();
            let factor = ops.mul(*rem.last().unwrap(), lead_inv);
            quot[shift] = factor;
            for (i, &bc) in r1.iter().enumerate() {
                rem[shift + i] = ops.sub(rem[shift + i], ops.mul(factor, bc));
            }
            poly_trim(&mut rem);
            if rem.is_empty() {
                break;
            }
        }
        let mut t_next = t0.clone();
        let prod_len = quot.len() + t1.len();
        if t_next.len() < prod_len {
            t_next.resize(prod_len, 0);
        }
        for (i, &qc) in quot.iter().enumerate() {
            if qc == 0 {
                continue;
            }
            for (j, &tc) in t1.iter().enumerate() {
                t_next[i + j] = ops.sub(t_next[i + j], ops.mul(qc, tc));
            }
        }
        poly_trim(&mut t_next);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t_next;
    }
    debug_assert_eq!(r1.len(), 1, "gcd is not a nonzero constant");
    let scale = ops.inv(r1[0]);
    for c in t1.iter_mut() {
        *c = ops.mul(*c, scale);
    }
    poly_trim(&mut t1);
    t1
}

/// No roots and no monic factor of degree ≤ d/2, by exhaustive trial division.
fn is_irreducible(ops: &impl CoeffOps, f: &[u64]) -> bool {
    let d = f.len() - 1;
    let size = ops.size();
    for deg in 1..=d / 2 {
        let mut count = 1u64;
        for _ in 0..deg {
            count *= size;
        }
        for t in 0..count {
            let mut g = poly_from_code(t, size, deg);
            g.push(1); // monic
            if poly_rem(ops, f, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

/// First irreducible monic polynomial of the given degree in the scan order
/// of increasing integer encoding of the low coefficients.
fn scan_irreducible(ops: &impl CoeffOps, degree: usize) -> Vec<u64> {
    let size = ops.size();
    let mut count = 1u64;
    for _ in 0..degree {
        count *= size;
    }
    for t in 0..count {
        let mut f = poly_from_code(t, size, degree);
        f.push(1);
        if is_irreducible(ops, &f) {
            return f;
        }
    }
    unreachable!("an irreducible polynomial exists in every degree");
}
