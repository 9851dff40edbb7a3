//! Small internal numeric helpers.

use num_bigint::BigUint;
use num_traits::One;
use rand_core::RngCore;

/// Unbiased uniform draw from [0, bound) by rejection on the top of u64.
pub(crate) fn uniform_u64(rng: &mut impl RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let accept_max = u64::MAX - (u64::MAX % bound + 1) % bound;
    loop {
        let v = rng.next_u64();
        if v <= accept_max {
            return v % bound;
        }
    }
}

/// Binomial coefficient C(n, k) as an arbitrary-precision integer.
pub(crate) fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// base^exp without overflow; None means the value exceeds u128.
pub(crate) fn checked_pow_u128(base: u64, exp: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}
