//! Linear codes over GF(q^m): constructors, duals, weight distributions,
//! supports and generalized support weights.

use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gf::{Element, FieldTower, Level};
use crate::linalg::Matrix;
use crate::util::{binomial, checked_pow_u128};

/// Default cap on full codeword/multiplier enumerations.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 24;

/// A support vector: pairwise-distinct elements of GF(q^m).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Support {
    codes: Vec<u64>,
}

impl Support {
    pub fn new(tower: &FieldTower, elements: Vec<Element>) -> Result<Self> {
        for e in &elements {
            if e.level() != Level::Ext {
                return Err(Error::LevelMismatch {
                    left: e.level(),
                    right: Level::Ext,
                });
            }
        }
        Self::from_codes(tower, elements.iter().map(|e| e.code()).collect())
    }

    pub fn from_codes(tower: &FieldTower, codes: Vec<u64>) -> Result<Self> {
        for &c in &codes {
            if c >= tower.qm() {
                return Err(Error::CodeOutOfRange {
                    code: c,
                    size: tower.qm(),
                });
            }
        }
        let mut sorted = codes.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateSupport);
        }
        Ok(Support { codes })
    }

    /// The support 0, 1, …, n-1 in encoding order.
    pub fn canonical(tower: &FieldTower, n: usize) -> Result<Self> {
        if n as u128 > tower.qm() as u128 {
            return Err(Error::InvalidParameter(format!(
                "support length {n} exceeds field size {}",
                tower.qm()
            )));
        }
        Ok(Support {
            codes: (0..n as u64).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }
}

/// A multiplier vector: all-nonzero elements of GF(q^m), acting diagonally.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multiplier {
    codes: Vec<u64>,
}

impl Multiplier {
    pub fn new(tower: &FieldTower, elements: Vec<Element>) -> Result<Self> {
        for e in &elements {
            if e.level() != Level::Ext {
                return Err(Error::LevelMismatch {
                    left: e.level(),
                    right: Level::Ext,
                });
            }
        }
        Self::from_codes(tower, elements.iter().map(|e| e.code()).collect())
    }

    pub fn from_codes(tower: &FieldTower, codes: Vec<u64>) -> Result<Self> {
        for &c in &codes {
            if c == 0 {
                return Err(Error::ZeroMultiplier);
            }
            if c >= tower.qm() {
                return Err(Error::CodeOutOfRange {
                    code: c,
                    size: tower.qm(),
                });
            }
        }
        Ok(Multiplier { codes })
    }

    pub fn all_ones(n: usize) -> Self {
        Multiplier { codes: vec![1; n] }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u64] {
        &self.codes
    }
}

/// Codeword counts by Hamming weight, B_0 … B_n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution {
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn new(counts: Vec<BigUint>) -> Self {
        WeightDistribution { counts }
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// Code length n (counts has n+1 slots).
    pub fn length(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// Smallest nonzero weight with a nonzero count, if any.
    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..self.counts.len()).find(|&w| !self.counts[w].is_zero())
    }
}

/// A linear [n, k] code over GF(q^m), held by a full-row-rank generator.
///
/// The minimum distance d and the Singleton defect h = n + 1 - k - d are
/// cached when a constructor knows them; otherwise they can be computed by
/// brute-force enumeration.
#[derive(Debug, Clone)]
pub struct LinearCode {
    tower: Arc<FieldTower>,
    n: usize,
    k: usize,
    gen: Matrix,
    d: Option<usize>,
    h: Option<usize>,
}

impl PartialEq for LinearCode {
    /// Codes compare equal iff their row spaces are equal.
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.k == other.k && self.gen.row_space_eq(&other.gen)
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// Wraps a generator matrix, which must have full row rank.
    pub fn from_generator(gen: Matrix) -> Result<Self> {
        Self::from_parts(gen, None)
    }

    fn from_parts(gen: Matrix, d: Option<usize>) -> Result<Self> {
        if gen.level() != Level::Ext {
            return Err(Error::LevelMismatch {
                left: gen.level(),
                right: Level::Ext,
            });
        }
        let (rows, cols) = (gen.rows(), gen.cols());
        if rows > cols {
            return Err(Error::RankDeficient);
        }
        if gen.rank() != rows {
            return Err(Error::RankDeficient);
        }
        let h = d.map(|d| cols + 1 - rows - d);
        Ok(LinearCode {
            tower: gen.tower().clone(),
            n: cols,
            k: rows,
            gen,
            d,
            h,
        })
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Cached minimum distance, if known.
    pub fn d(&self) -> Option<usize> {
        self.d
    }

    /// Cached Singleton defect h = n + 1 - k - d, if known.
    pub fn h(&self) -> Option<usize> {
        self.h
    }

    /// Returns a copy with d (and hence h) cached, computing it by brute
    /// force if no constructor provided it.
    pub fn with_min_distance(&self, cap: u64) -> Result<Self> {
        let mut code = self.clone();
        let d = code.min_distance(cap)?;
        code.d = Some(d);
        code.h = Some(self.n + 1 - self.k - d);
        Ok(code)
    }

    /// Minimum distance by full codeword enumeration (cached value wins).
    /// Zero-dimensional codes get d = n + 1 by convention.
    pub fn min_distance(&self, cap: u64) -> Result<usize> {
        if let Some(d) = self.d {
            return Ok(d);
        }
        if self.k == 0 {
            return Ok(self.n + 1);
        }
        check_cap("codeword enumeration", self.tower.qm(), self.k, cap)?;
        let mut best = self.n + 1;
        for_each_codeword(&self.tower, &self.gen, &mut |cw| {
            let w = cw.iter().filter(|&&c| c != 0).count();
            if w > 0 && w < best {
                best = w;
            }
            !(best == 1)
        });
        Ok(best)
    }

    // ---- constructors from the classical families ----

    /// The code with the k×n power-row generator over the given support:
    /// row i is (x_1^i, …, x_n^i). MDS with d = n - k + 1.
    pub fn reed_solomon(tower: Arc<FieldTower>, k: usize, support: &Support) -> Result<Self> {
        let n = support.len();
        if k == 0 || k > n {
            return Err(Error::InvalidParameter(format!(
                "need 1 <= k <= n, got k={k}, n={n}"
            )));
        }
        for &c in support.codes() {
            if c >= tower.qm() {
                return Err(Error::CodeOutOfRange {
                    code: c,
                    size: tower.qm(),
                });
            }
        }
        let mut entries = Vec::with_capacity(k * n);
        let mut row: Vec<u64> = vec![1; n];
        entries.extend_from_slice(&row);
        for _ in 1..k {
            for (l, &x) in support.codes().iter().enumerate() {
                row[l] = tower.ext_mul(row[l], x);
            }
            entries.extend_from_slice(&row);
        }
        let gen = Matrix::from_codes(tower, Level::Ext, k, n, entries)?;
        Self::from_parts(gen, Some(n - k + 1))
    }

    /// Same as [`LinearCode::reed_solomon`] with column j scaled by a_j.
    pub fn generalized_reed_solomon(
        tower: Arc<FieldTower>,
        k: usize,
        support: &Support,
        multiplier: &Multiplier,
    ) -> Result<Self> {
        let rs = Self::reed_solomon(tower, k, support)?;
        rs.scale(multiplier)
    }

    /// The [n, 1, n] all-ones repetition code.
    pub fn repetition(tower: Arc<FieldTower>, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "repetition code needs positive length".into(),
            ));
        }
        let gen = Matrix::from_codes(tower, Level::Ext, 1, n, vec![1; n])?;
        Self::from_parts(gen, Some(n))
    }

    /// Block-diagonal sum: codewords (x1, x2) with xi in Ci;
    /// d = min(d1, d2) when both are cached.
    pub fn sum_code(&self, other: &LinearCode) -> Result<Self> {
        if *self.tower != *other.tower {
            return Err(Error::TowerMismatch);
        }
        let n = self.n + other.n;
        let k = self.k + other.k;
        let mut entries = vec![0u64; k * n];
        for r in 0..self.k {
            entries[r * n..r * n + self.n].copy_from_slice(self.gen.row_codes(r));
        }
        for r in 0..other.k {
            let dst = (self.k + r) * n + self.n;
            entries[dst..dst + other.n].copy_from_slice(other.gen.row_codes(r));
        }
        let gen = Matrix::from_codes(self.tower.clone(), Level::Ext, k, n, entries)?;
        let d = match (self.d, other.d) {
            (Some(a), Some(b)) => Some(a.min(b)),
            _ => None,
        };
        Self::from_parts(gen, d)
    }

    /// The multiplier action C ↦ C_a: column j of the generator scaled by
    /// a_j. Weight distribution, d and h are unchanged.
    pub fn scale(&self, multiplier: &Multiplier) -> Result<Self> {
        if multiplier.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: multiplier.len(),
            });
        }
        for &c in multiplier.codes() {
            if c >= self.tower.qm() {
                return Err(Error::CodeOutOfRange {
                    code: c,
                    size: self.tower.qm(),
                });
            }
        }
        let mut entries = Vec::with_capacity(self.k * self.n);
        for r in 0..self.k {
            for (l, &g) in self.gen.row_codes(r).iter().enumerate() {
                entries.push(self.tower.ext_mul(g, multiplier.codes()[l]));
            }
        }
        let gen = Matrix::from_codes(self.tower.clone(), Level::Ext, self.k, self.n, entries)?;
        Self::from_parts(gen, self.d)
    }

    /// The [mk, k] family with d = (m-1)(k-1) and Singleton defect h = m:
    /// power rows 0…k-2 confined to the first m(k-1)-1 columns plus a full
    /// (k-1)-power row. Every multiplier leaves its trace dimension short.
    pub fn counterexample(tower: Arc<FieldTower>, k: usize, support: &Support) -> Result<Self> {
        let m = tower.m() as usize;
        if m <= 2 {
            return Err(Error::InvalidParameter(format!(
                "counterexample family needs m > 2, got m={m}"
            )));
        }
        if k < 2 || (k as u128) * (m as u128) > tower.qm() as u128 {
            return Err(Error::InvalidParameter(format!(
                "counterexample family needs 2 <= k <= q^m/m, got k={k}"
            )));
        }
        let n = m * k;
        let n_prime = m * (k - 1) - 1;
        if support.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: support.len(),
            });
        }
        for &c in support.codes() {
            if c >= tower.qm() {
                return Err(Error::CodeOutOfRange {
                    code: c,
                    size: tower.qm(),
                });
            }
        }
        if support.codes()[n_prime..].contains(&0) {
            return Err(Error::InvalidParameter(
                "support entries past position m(k-1)-1 must be nonzero".into(),
            ));
        }
        let mut entries = vec![0u64; k * n];
        let mut row: Vec<u64> = vec![1; n];
        for i in 0..k {
            if i > 0 {
                for (l, &x) in support.codes().iter().enumerate() {
                    row[l] = tower.ext_mul(row[l], x);
                }
            }
            if i < k - 1 {
                entries[i * n..i * n + n_prime].copy_from_slice(&row[..n_prime]);
            } else {
                entries[i * n..(i + 1) * n].copy_from_slice(&row);
            }
        }
        let gen = Matrix::from_codes(tower, Level::Ext, k, n, entries)?;
        Self::from_parts(gen, Some((m - 1) * (k - 1)))
    }

    /// A code with uniform random generator entries, redrawn until the
    /// matrix has full row rank.
    pub fn random(
        tower: Arc<FieldTower>,
        n: usize,
        k: usize,
        rng: &mut impl rand_core::RngCore,
    ) -> Result<Self> {
        if k > n {
            return Err(Error::InvalidParameter(format!(
                "need k <= n, got k={k}, n={n}"
            )));
        }
        let qm = tower.qm();
        loop {
            let codes: Vec<u64> = (0..k * n)
                .map(|_| crate::util::uniform_u64(rng, qm))
                .collect();
            let gen = Matrix::from_codes(tower.clone(), Level::Ext, k, n, codes)?;
            if gen.rank() == k {
                return Self::from_parts(gen, None);
            }
        }
    }

    /// The dual code: generator = kernel basis of G. May be zero-dimensional.
    pub fn dual(&self) -> LinearCode {
        let kernel = self.gen.kernel();
        LinearCode {
            tower: self.tower.clone(),
            n: self.n,
            k: kernel.rows(),
            gen: kernel,
            d: None,
            h: None,
        }
    }

    /// Exact weight distribution by full codeword enumeration.
    pub fn weight_distribution(&self, cap: u64) -> Result<WeightDistribution> {
        check_cap("codeword enumeration", self.tower.qm(), self.k, cap)?;
        let mut counts = vec![0u64; self.n + 1];
        for_each_codeword(&self.tower, &self.gen, &mut |cw| {
            counts[cw.iter().filter(|&&c| c != 0).count()] += 1;
            true
        });
        Ok(WeightDistribution {
            counts: counts.into_iter().map(BigUint::from).collect(),
        })
    }

    /// Coordinates where some codeword is nonzero (sorted).
    pub fn support_of(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&l| (0..self.k).any(|r| self.gen.code_at(r, l) != 0))
            .collect()
    }

    /// The i-th generalized support weight: the minimum support size over
    /// i-dimensional subcodes, by canonical enumeration of the i-dimensional
    /// subspaces of the message space (each subspace visited once, as its
    /// reduced-row-echelon basis).
    pub fn d_i(&self, i: usize, cap: u64) -> Result<usize> {
        if i == 0 || i > self.k {
            return Err(Error::InvalidParameter(format!(
                "d_i needs 1 <= i <= k, got i={i}, k={}",
                self.k
            )));
        }
        let q_ext = self.tower.qm();
        let total = gaussian_binomial_count(q_ext, self.k, i)
            .ok_or(Error::CapExceeded {
                what: "subspace enumeration",
                required: u128::MAX,
                cap: cap as u128,
            })?;
        if total > cap as u128 {
            return Err(Error::CapExceeded {
                what: "subspace enumeration",
                required: total,
                cap: cap as u128,
            });
        }
        let mut best = self.n + 1;
        let mut pivots: Vec<usize> = (0..i).collect();
        loop {
            self.scan_pivot_profile(&pivots, i, &mut best);
            if !next_combination(&mut pivots, self.k) {
                break;
            }
        }
        Ok(best)
    }

    /// Minimizes support size over all subspaces with the given RREF pivot
    /// profile of the i×k message basis matrix.
    fn scan_pivot_profile(&self, pivots: &[usize], i: usize, best: &mut usize) {
        let k = self.k;
        let n = self.n;
        let q_ext = self.tower.qm();
        let is_pivot = {
            let mut v = vec![false; k];
            for &p in pivots {
                v[p] = true;
            }
            v
        };
        // Free slots of the RREF basis: row r, column c with c > pivots[r]
        // and c not itself a pivot column.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (r, &p) in pivots.iter().enumerate() {
            for (c, &piv) in is_pivot.iter().enumerate().skip(p + 1) {
                if !piv {
                    free.push((r, c));
                }
            }
        }
        let mut digitvals = vec![0u64; free.len()];
        loop {
            // Assemble the message basis and its codewords.
            let mut basis = vec![0u64; i * k];
            for (r, &p) in pivots.iter().enumerate() {
                basis[r * k + p] = 1;
            }
            for (slot, &(r, c)) in free.iter().enumerate() {
                basis[r * k + c] = digitvals[slot];
            }
            let mut support_size = 0usize;
            for l in 0..n {
                let hit = (0..i).any(|r| {
                    let mut acc = 0u64;
                    for c in 0..k {
                        let b = basis[r * k + c];
                        if b != 0 {
                            let g = self.gen.code_at(c, l);
                            if g != 0 {
                                acc = self.tower.ext_add(acc, self.tower.ext_mul(b, g));
                            }
                        }
                    }
                    acc != 0
                });
                if hit {
                    support_size += 1;
                }
            }
            if support_size < *best {
                *best = support_size;
            }
            // Odometer over the free slots.
            let mut carry = true;
            for v in digitvals.iter_mut() {
                *v += 1;
                if *v < q_ext {
                    carry = false;
                    break;
                }
                *v = 0;
            }
            if carry {
                break;
            }
        }
    }

    // ---- text form ----

    /// Serializes to the code file text format.
    pub fn to_text(&self) -> String {
        write_code_text(&self.tower, false, &self.gen)
    }

    /// Parses the code file text format (extension-level codes only).
    pub fn from_text(text: &str) -> Result<LinearCode> {
        let (_, subfield, gen) = parse_code_text(text)?;
        if subfield {
            return Err(Error::MalformedCodeFile(
                "expected an extension-field code, found subfield=true".into(),
            ));
        }
        Self::from_generator(gen)
    }
}

/// Checks base^exp <= cap, reporting the offender otherwise.
pub(crate) fn check_cap(what: &'static str, base: u64, exp: usize, cap: u64) -> Result<()> {
    match checked_pow_u128(base, exp) {
        Some(v) if v <= cap as u128 => Ok(()),
        Some(v) => Err(Error::CapExceeded {
            what,
            required: v,
            cap: cap as u128,
        }),
        None => Err(Error::CapExceeded {
            what,
            required: u128::MAX,
            cap: cap as u128,
        }),
    }
}

/// Number of i-dimensional subspaces of GF(q)^k (Gaussian binomial), as u128.
fn gaussian_binomial_count(q: u64, k: usize, i: usize) -> Option<u128> {
    // Product formula with exact division at each step.
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let qb = BigUint::from(q);
    for j in 0..i {
        num *= qb.pow(k as u32) - qb.pow(j as u32);
        den *= qb.pow(i as u32) - qb.pow(j as u32);
    }
    let count = num / den;
    u128::try_from(&count).ok()
}

/// Advances a sorted combination of {0..limit}; false when exhausted.
fn next_combination(combo: &mut [usize], limit: usize) -> bool {
    let r = combo.len();
    let mut i = r;
    while i > 0 {
        i -= 1;
        if combo[i] < limit - (r - i) {
            combo[i] += 1;
            for j in i + 1..r {
                combo[j] = combo[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits every codeword (including zero) of the row space of `gen`.
/// The visitor returns false to stop early; the function reports whether
/// the enumeration ran to completion.
pub(crate) fn for_each_codeword(
    tower: &FieldTower,
    gen: &Matrix,
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    let k = gen.rows();
    let n = gen.cols();
    let mut bufs = vec![vec![0u64; n]; k + 1];
    descend(tower, gen, 0, k, n, &mut bufs, visit)
}

fn descend(
    tower: &FieldTower,
    gen: &Matrix,
    depth: usize,
    k: usize,
    n: usize,
    bufs: &mut [Vec<u64>],
    visit: &mut impl FnMut(&[u64]) -> bool,
) -> bool {
    if depth == k {
        return visit(&bufs[k]);
    }
    for c in 0..tower.qm() {
        let (lower, upper) = bufs.split_at_mut(depth + 1);
        let parent = &lower[depth];
        let child = &mut upper[0];
        if c == 0 {
            child.copy_from_slice(parent);
        } else {
            let row = gen.row_codes(depth);
            for l in 0..n {
                let g = row[l];
                child[l] = if g == 0 {
                    parent[l]
                } else {
                    tower.ext_add(parent[l], tower.ext_mul(c, g))
                };
            }
        }
        if !descend(tower, gen, depth + 1, k, n, bufs, visit) {
            return false;
        }
    }
    true
}

/// Dual weight distribution via the MacWilliams identity over a field of
/// size Q: B'_j = Q^{-k} Σ_w B_w K_j(w), with K_j the Krawtchouk polynomial.
pub fn macwilliams_transform(
    dist: &WeightDistribution,
    n: usize,
    k: usize,
    field_size: u64,
) -> Result<WeightDistribution> {
    if dist.counts.len() != n + 1 {
        return Err(Error::InconsistentDistribution(format!(
            "distribution has {} entries, expected n+1 = {}",
            dist.counts.len(),
            n + 1
        )));
    }
    let qk = BigUint::from(field_size).pow(k as u32);
    if dist.total() != qk {
        return Err(Error::InconsistentDistribution(format!(
            "counts sum to {}, expected Q^k = {}",
            dist.total(),
            qk
        )));
    }
    let q_minus_1 = BigInt::from(field_size - 1);
    let qk_signed = BigInt::from(qk);
    let mut out = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::ZERO;
        for (w, bw) in dist.counts.iter().enumerate() {
            if bw.is_zero() {
                continue;
            }
            // Krawtchouk K_j(w) = Σ_i (-1)^i (Q-1)^{j-i} C(w,i) C(n-w,j-i)
            let mut kraw = BigInt::ZERO;
            for i in 0..=j {
                let term = BigInt::from(binomial(w, i))
                    * BigInt::from(binomial(n - w, j - i))
                    * q_minus_1.pow((j - i) as u32);
                if i % 2 == 0 {
                    kraw += term;
                } else {
                    kraw -= term;
                }
            }
            acc += BigInt::from(bw.clone()) * kraw;
        }
        let (quot, rem) = acc.div_rem(&qk_signed);
        if !rem.is_zero() || quot.is_negative() {
            return Err(Error::InconsistentDistribution(
                "transform did not produce nonnegative integers; \
                 the input is not a weight distribution over this field"
                    .into(),
            ));
        }
        out.push(quot.to_biguint().expect("checked nonnegative"));
    }
    Ok(WeightDistribution { counts: out })
}

// ---- code file text format ----

pub(crate) fn write_code_text(tower: &FieldTower, subfield: bool, gen: &Matrix) -> String {
    let mut out = format!(
        "p={} s={} m={} n={} k={}",
        tower.p(),
        tower.s(),
        tower.m(),
        gen.cols(),
        gen.rows()
    );
    if subfield {
        out.push_str(" subfield=true");
    }
    out.push('\n');
    for r in 0..gen.rows() {
        let row: Vec<String> = gen.row_codes(r).iter().map(|c| c.to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub(crate) fn parse_code_text(text: &str) -> Result<(Arc<FieldTower>, bool, Matrix)> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::MalformedCodeFile("empty file".into()))?;
    let mut p = None;
    let mut s = None;
    let mut m = None;
    let mut n = None;
    let mut k = None;
    let mut subfield = false;
    for token in header.split_whitespace() {
        let (key, value) = token.split_once('=').ok_or_else(|| {
            Error::MalformedCodeFile(format!("header token {token:?} is not key=value"))
        })?;
        match key {
            "subfield" => match value {
                "true" => subfield = true,
                "false" => subfield = false,
                _ => {
                    return Err(Error::MalformedCodeFile(format!(
                        "bad subfield value {value:?}"
                    )))
                }
            },
            _ => {
                let parsed: u64 = value.parse().map_err(|_| {
                    Error::MalformedCodeFile(format!("bad header value {token:?}"))
                })?;
                match key {
                    "p" => p = Some(parsed),
                    "s" => s = Some(parsed as u32),
                    "m" => m = Some(parsed as u32),
                    "n" => n = Some(parsed as usize),
                    "k" => k = Some(parsed as usize),
                    _ => {
                        return Err(Error::MalformedCodeFile(format!(
                            "unknown header key {key:?}"
                        )))
                    }
                }
            }
        }
    }
    let (Some(p), Some(s), Some(m), Some(n), Some(k)) = (p, s, m, n, k) else {
        return Err(Error::MalformedCodeFile(
            "header must provide p, s, m, n and k".into(),
        ));
    };
    let tower = FieldTower::new(p, s, m).map_err(|e| match e {
        Error::NotPrime(_) | Error::SizeCapExceeded { .. } | Error::InvalidParameter(_) => {
            Error::MalformedCodeFile(format!("bad field parameters: {e}"))
        }
        other => other,
    })?;
    let level = if subfield { Level::Base } else { Level::Ext };
    let size = tower.size(level);
    let mut codes = Vec::with_capacity(k * n);
    for row_idx in 0..k {
        let line = lines.next().ok_or_else(|| {
            Error::MalformedCodeFile(format!("expected {k} generator rows, found {row_idx}"))
        })?;
        let row: Vec<u64> = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<u64>()
                    .map_err(|_| Error::MalformedCodeFile(format!("bad element {tok:?}")))
            })
            .collect::<Result<_>>()?;
        if row.len() != n {
            return Err(Error::MalformedCodeFile(format!(
                "row {row_idx} has {} entries, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&c| c >= size) {
            return Err(Error::MalformedCodeFile(format!(
                "element {bad} out of range for field of size {size}"
            )));
        }
        codes.extend_from_slice(&row);
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(Error::MalformedCodeFile("trailing content".into()));
    }
    let gen = Matrix::from_codes(tower.clone(), level, k, n, codes)?;
    Ok((tower, subfield, gen))
}
