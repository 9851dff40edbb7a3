//! Exact and Monte Carlo measurement of the proportion P_C of multiplier
//! vectors producing maximum trace dimension, the full-rank probabilities
//! S₁(n,q) / S₂(n,q) / S(q) of random matrices and random nonzero vectors,
//! and the random alternant dimension experiment.

use std::sync::Arc;

use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use crate::codes::{check_cap, LinearCode, Multiplier, Support};
use crate::error::{Error, Result};
use crate::gf::FieldTower;
use crate::lambda::{bound_from_defect, render_significant_digits, Rational};
use crate::tracedim::trace_rank_scaled;
use crate::util::uniform_u64;

/// The one PRNG this crate speaks: ChaCha12, seeded from a 64-bit integer,
/// with per-trial substreams so results never depend on how trials are
/// partitioned across workers.
pub const RNG_ALGORITHM_CHACHA12: &str = "chacha12";

/// A reproducible randomness source: identical spec means identical sample
/// streams across runs and platforms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RngSpec {
    pub seed: u64,
    pub algorithm: String,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        RngSpec {
            seed,
            algorithm: RNG_ALGORITHM_CHACHA12.to_string(),
        }
    }

    /// The independent substream for one trial (or worker).
    pub fn stream(&self, index: u64) -> Result<ChaCha12Rng> {
        if self.algorithm != RNG_ALGORITHM_CHACHA12 {
            return Err(Error::UnsupportedRngAlgorithm(self.algorithm.clone()));
        }
        let mut rng = ChaCha12Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        Ok(rng)
    }
}

/// Uniform nonzero field element encoding: integer in [1, q^m - 1].
fn uniform_nonzero(rng: &mut impl RngCore, qm: u64) -> u64 {
    1 + uniform_u64(rng, qm - 1)
}

/// A support drawn uniformly from the injective n-tuples, by partial
/// Fisher-Yates over all q^m element encodings.
pub fn sample_support(tower: &FieldTower, n: usize, rng: &mut impl RngCore) -> Result<Support> {
    let qm = tower.qm();
    if n as u128 > qm as u128 {
        return Err(Error::InvalidParameter(format!(
            "support length {n} exceeds field size {qm}"
        )));
    }
    let mut pool: Vec<u64> = (0..qm).collect();
    for i in 0..n {
        let j = i + uniform_u64(rng, qm - i as u64) as usize;
        pool.swap(i, j);
    }
    pool.truncate(n);
    Support::from_codes(tower, pool)
}

/// A multiplier with n independent uniform nonzero entries.
pub fn sample_multiplier(
    tower: &FieldTower,
    n: usize,
    rng: &mut impl RngCore,
) -> Result<Multiplier> {
    let codes = (0..n).map(|_| uniform_nonzero(rng, tower.qm())).collect();
    Multiplier::from_codes(tower, codes)
}

/// Searches the multiplier space in encoding order for the first a with
/// C_a of maximum trace dimension; None means P_C = 0. The cap bounds the
/// worst case (q^m - 1)^n.
pub fn first_max_trace_multiplier(code: &LinearCode, cap: u64) -> Result<Option<Multiplier>> {
    let t = code.tower();
    let n = code.n();
    check_cap("multiplier enumeration", t.qm() - 1, n, cap)?;
    let target = t.m() as usize * code.k();
    let mut mult = vec![1u64; n];
    let mut rows_buf = Vec::new();
    let mut scaled_buf = Vec::new();
    loop {
        if trace_rank_scaled(code, Some(&mult), &mut rows_buf, &mut scaled_buf) == target {
            return Ok(Some(Multiplier::from_codes(t, mult)?));
        }
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            mult[pos] += 1;
            if mult[pos] < t.qm() {
                break;
            }
            mult[pos] = 1;
            pos += 1;
        }
        if pos == n {
            return Ok(None);
        }
    }
}

/// P_C as measured exactly or sampled.
#[derive(Debug, Clone, PartialEq)]
pub enum ProbabilityResult {
    Exact {
        successes: u64,
        total: u64,
        value: Rational,
    },
    MonteCarlo {
        successes: u64,
        trials: u64,
        estimate: f64,
        seed: u64,
    },
}

impl ProbabilityResult {
    pub fn estimate(&self) -> f64 {
        match self {
            ProbabilityResult::Exact {
                successes, total, ..
            } => *successes as f64 / *total as f64,
            ProbabilityResult::MonteCarlo { estimate, .. } => *estimate,
        }
    }

    pub fn successes(&self) -> u64 {
        match self {
            ProbabilityResult::Exact { successes, .. } => *successes,
            ProbabilityResult::MonteCarlo { successes, .. } => *successes,
        }
    }
}

/// Exact P_C: the proportion of multiplier vectors a in (GF(q^m)*)^n for
/// which C_a has maximum trace dimension, by exhaustive enumeration of all
/// (q^m - 1)^n multipliers.
pub fn exact_pc(code: &LinearCode, cap: u64) -> Result<ProbabilityResult> {
    let t = code.tower();
    let n = code.n();
    check_cap("multiplier enumeration", t.qm() - 1, n, cap)?;
    let target = t.m() as usize * code.k();
    let mut successes = 0u64;
    let mut total = 0u64;
    let mut mult = vec![1u64; n];
    let mut rows_buf = Vec::new();
    let mut scaled_buf = Vec::new();
    loop {
        total += 1;
        if trace_rank_scaled(code, Some(&mult), &mut rows_buf, &mut scaled_buf) == target {
            successes += 1;
        }
        let mut pos = 0;
        loop {
            if pos == n {
                break;
            }
            mult[pos] += 1;
            if mult[pos] < t.qm() {
                break;
            }
            mult[pos] = 1;
            pos += 1;
        }
        if pos == n {
            break;
        }
    }
    Ok(ProbabilityResult::Exact {
        successes,
        total,
        value: Rational::new(successes.into(), total.into()),
    })
}

/// Monte Carlo estimate of P_C over uniformly sampled multiplier vectors;
/// deterministic for a fixed [`RngSpec`].
pub fn monte_carlo_pc(code: &LinearCode, trials: u64, rng: &RngSpec) -> Result<ProbabilityResult> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let t = code.tower();
    let n = code.n();
    let target = t.m() as usize * code.k();
    let mut successes = 0u64;
    let mut mult = vec![0u64; n];
    let mut rows_buf = Vec::new();
    let mut scaled_buf = Vec::new();
    for trial in 0..trials {
        let mut stream = rng.stream(trial)?;
        for slot in mult.iter_mut() {
            *slot = uniform_nonzero(&mut stream, t.qm());
        }
        if trace_rank_scaled(code, Some(&mult), &mut rows_buf, &mut scaled_buf) == target {
            successes += 1;
        }
    }
    Ok(ProbabilityResult::MonteCarlo {
        successes,
        trials,
        estimate: successes as f64 / trials as f64,
        seed: rng.seed,
    })
}

/// S₁(n, q) = Π_{i=1}^n (1 - q^{-i}): the probability that a uniform n×n
/// matrix over GF(q) is invertible.
pub fn s1(n: u32, q: u64) -> f64 {
    assert!(n >= 1 && q >= 2);
    let mut prod = 1.0f64;
    for i in 1..=n {
        prod *= 1.0 - (q as f64).powi(-(i as i32));
    }
    prod
}

/// S₂(n, q) = Π_{j=0}^{n-1} (q^n - q^j)/(q^n - 1): the probability that n
/// uniform nonzero vectors in GF(q)^n are linearly independent.
pub fn s2(n: u32, q: u64) -> f64 {
    assert!(n >= 1 && q >= 2);
    let qn = (q as f64).powi(n as i32);
    let mut prod = 1.0f64;
    let mut qj = 1.0f64;
    for _ in 0..n {
        prod *= (qn - qj) / (qn - 1.0);
        qj *= q as f64;
    }
    prod
}

/// S₂(n, q) as an exact rational.
pub fn s2_exact(n: u32, q: u64) -> Rational {
    use num_bigint::BigUint;
    let qn = BigUint::from(q).pow(n);
    let denom_factor = &qn - 1u32;
    let mut num = BigUint::from(1u32);
    let mut den = BigUint::from(1u32);
    let mut qj = BigUint::from(1u32);
    for _ in 0..n {
        num *= &qn - &qj;
        den *= &denom_factor;
        qj *= q;
    }
    Rational::new(num.into(), den.into())
}

/// S(q) = Π_{i>=1} (1 - q^{-i}), the n → ∞ limit of both S₁ and S₂,
/// multiplied out to the f64 fixpoint.
pub fn s_limit(q: u64) -> f64 {
    assert!(q >= 2);
    let mut prod = 1.0f64;
    for i in 1..1100 {
        let next = prod * (1.0 - (q as f64).powi(-i));
        if next == prod {
            break;
        }
        prod = next;
    }
    prod
}

/// Regression oracle for the product rule P_{C+C'} = P_C · P_{C'}:
/// compares exact rationals. False signals a bug.
pub fn sum_lemma_check(c1: &LinearCode, c2: &LinearCode, cap: u64) -> Result<bool> {
    let sum = c1.sum_code(c2)?;
    let (p1, p2, ps) = (exact_pc(c1, cap)?, exact_pc(c2, cap)?, exact_pc(&sum, cap)?);
    let value = |r: &ProbabilityResult| match r {
        ProbabilityResult::Exact { value, .. } => value.clone(),
        _ => unreachable!("exact_pc returns exact results"),
    };
    Ok(value(&ps) == value(&p1) * value(&p2))
}

/// Outcome of the random alternant dimension experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct AlternantReport {
    pub p: u64,
    pub s: u32,
    pub m: u32,
    pub k: usize,
    pub n: usize,
    pub trials: u64,
    /// Trials whose alternant code had dimension exactly n - mk.
    pub successes: u64,
    /// Smallest dimension observed (never below n - mk).
    pub min_dimension: usize,
    /// The closed-form lower bound on the success probability.
    pub bound: Rational,
    pub seed: u64,
}

impl AlternantReport {
    pub fn frequency(&self) -> f64 {
        self.successes as f64 / self.trials as f64
    }
}

/// Samples random alternant codes — support uniform over injective tuples
/// by partial Fisher-Yates over all field encodings, multiplier uniform
/// over nonzero entries, the two independent — and reports how often the
/// dimension equals the floor n - mk.
pub fn random_alternant_experiment(
    tower: Arc<FieldTower>,
    k: usize,
    n: usize,
    trials: u64,
    rng: &RngSpec,
) -> Result<AlternantReport> {
    let m = tower.m() as usize;
    let qm = tower.qm();
    if k == 0 || (m * k) as u128 > n as u128 || n as u128 > qm as u128 {
        return Err(Error::InvalidParameter(format!(
            "need 1 <= k and mk <= n <= q^m, got k={k}, n={n}, m={m}, q^m={qm}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let floor = n - m * k;
    let mut successes = 0u64;
    let mut min_dimension = usize::MAX;
    let mut rows_buf = Vec::new();
    let mut scaled_buf = Vec::new();
    for trial in 0..trials {
        let mut stream = rng.stream(trial)?;
        let support = sample_support(&tower, n, &mut stream)?;
        let multiplier = sample_multiplier(&tower, n, &mut stream)?;
        let grs = LinearCode::generalized_reed_solomon(tower.clone(), k, &support, &multiplier)?;
        let trace_dim = trace_rank_scaled(&grs, None, &mut rows_buf, &mut scaled_buf);
        let dim = n - trace_dim;
        debug_assert!(dim >= floor, "alternant dimension fell below n - mk");
        min_dimension = min_dimension.min(dim);
        if dim == floor {
            successes += 1;
        }
    }
    Ok(AlternantReport {
        p: tower.p(),
        s: tower.s(),
        m: tower.m(),
        k,
        n,
        trials,
        successes,
        min_dimension,
        bound: bound_from_defect(tower.q(), tower.m(), k as u64, 0, n as u64),
        seed: rng.seed,
    })
}

/// Renders a float to 15 significant digits, plain notation for moderate
/// magnitudes and scientific outside, trailing zeros trimmed.
pub fn format_significant(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let formatted = format!("{:.14e}", x);
    let (mantissa, exp) = formatted
        .split_once('e')
        .expect("exponential format always contains e");
    let e: i64 = exp.parse().expect("valid exponent");
    let negative = mantissa.starts_with('-');
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    debug_assert_eq!(digits.len(), 15);
    render_significant_digits(negative, &digits, e)
}
