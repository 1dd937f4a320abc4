//! Arithmetic modulo the Mersenne prime 2^61 - 1.
//!
//! Used only to *refute* divisibility cheaply: a polynomial whose value at a
//! point of a hyperplane is nonzero modulo this prime is certainly not
//! divisible by that hyperplane's form. A zero value proves nothing and the
//! caller falls back to exact division.

use num_bigint::{BigInt, Sign};

use super::rational::Rational;

pub(crate) const PRIME: u64 = (1 << 61) - 1;

#[inline]
pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= PRIME {
        s - PRIME
    } else {
        s
    }
}

#[inline]
pub(crate) fn neg(a: u64) -> u64 {
    if a == 0 {
        0
    } else {
        PRIME - a
    }
}

#[inline]
pub(crate) fn mul(a: u64, b: u64) -> u64 {
    let p = (a as u128) * (b as u128);
    let lo = (p as u64) & PRIME;
    let hi = (p >> 61) as u64;
    add(lo, hi)
}

pub(crate) fn pow(mut base: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    acc
}

pub(crate) fn inv(a: u64) -> Option<u64> {
    if a == 0 {
        None
    } else {
        Some(pow(a, PRIME - 2))
    }
}

pub(crate) fn reduce_int(n: &BigInt) -> u64 {
    let mut r: u64 = 0;
    let (sign, digits) = n.to_u64_digits();
    for &d in digits.iter().rev() {
        // r * 2^64 + d, with 2^64 = 8 (mod 2^61 - 1)
        r = add(mul(r, 8), d % PRIME);
    }
    if sign == Sign::Minus {
        neg(r)
    } else {
        r
    }
}

/// `None` when the denominator vanishes modulo the prime.
pub(crate) fn reduce(r: &Rational) -> Option<u64> {
    let n = reduce_int(r.numer());
    if r.denom() == &BigInt::from(1) {
        return Some(n);
    }
    inv(reduce_int(r.denom())).map(|d| mul(n, d))
}

/// Deterministic pseudo-random residues (splitmix64).
pub(crate) fn sample(seed: u64) -> u64 {
    let mut z = seed.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    (z ^ (z >> 31)) % PRIME
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_matches_bigint_mod() {
        for v in [
            BigInt::from(0),
            BigInt::from(-5),
            BigInt::from(u64::MAX),
            BigInt::from(u64::MAX) * BigInt::from(u64::MAX) + BigInt::from(12345),
            -(BigInt::from(3).pow(200)),
        ] {
            let expect = ((&v % BigInt::from(PRIME)) + BigInt::from(PRIME)) % BigInt::from(PRIME);
            assert_eq!(BigInt::from(reduce_int(&v)), expect, "{v}");
        }
    }

    #[test]
    fn field_ops() {
        let a = sample(1);
        assert_eq!(mul(a, inv(a).unwrap()), 1);
        assert_eq!(add(a, neg(a)), 0);
        assert_eq!(pow(2, 61), 1);
    }
}
