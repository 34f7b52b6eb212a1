//! Exact products over machine integers.
//!
//! Products are accumulated in `u64` words until a word would overflow, and the
//! words are then combined pairwise so that the big multiplications stay
//! balanced in size.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

/// Arbitrary-precision non-negative count.
pub type BigCount = BigUint;

/// Product of all factors, combined as a balanced binary tree.
pub fn product<I>(factors: I) -> BigUint
where
    I: IntoIterator<Item = u64>,
{
    let mut words: Vec<BigUint> = Vec::new();
    let mut acc: u64 = 1;
    for f in factors {
        if f == 0 {
            return BigUint::zero();
        }
        match acc.checked_mul(f) {
            Some(p) => acc = p,
            None => {
                words.push(BigUint::from(acc));
                acc = f;
            }
        }
    }
    words.push(BigUint::from(acc));
    balanced(words)
}

fn balanced(mut layer: Vec<BigUint>) -> BigUint {
    while layer.len() > 1 {
        let mut next = Vec::with_capacity(layer.len().div_ceil(2));
        let mut it = layer.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        layer = next;
    }
    layer.pop().unwrap_or_else(BigUint::one)
}

/// `lo * (lo+1) * ... * hi`; the empty product (`lo > hi`) is one.
pub fn range_product(lo: u64, hi: u64) -> BigUint {
    if lo > hi {
        return BigUint::one();
    }
    product(lo..=hi)
}

/// `n!`
pub fn factorial(n: u64) -> BigUint {
    range_product(2, n)
}

/// `n!!`, the product of every second integer down from `n`.
pub fn double_factorial(n: u64) -> BigUint {
    product((1..=n).rev().step_by(2))
}

/// Natural logarithm of a positive big integer, accurate to a few ulps.
pub fn ln_big(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "ln of zero");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_u64().map(|v| (v as f64).ln()).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("64 leading bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_factorials() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(1), BigUint::one());
        assert_eq!(factorial(5), BigUint::from(120u32));
        assert_eq!(factorial(20), BigUint::from(2432902008176640000u64));
    }

    #[test]
    fn factorial_matches_sequential_product() {
        let mut seq = BigUint::one();
        for i in 1..=300u32 {
            seq *= i;
            assert_eq!(factorial(i as u64), seq);
        }
    }

    #[test]
    fn double_factorials() {
        assert_eq!(double_factorial(0), BigUint::one());
        assert_eq!(double_factorial(1), BigUint::one());
        assert_eq!(double_factorial(7), BigUint::from(105u32));
        assert_eq!(double_factorial(8), BigUint::from(384u32));
    }

    #[test]
    fn overflowing_words_split() {
        let big = u64::MAX / 3;
        let p = product([big, big, big]);
        assert_eq!(p, BigUint::from(big).pow(3));
    }

    #[test]
    fn ln_of_large_values() {
        let x = BigUint::one() << 1000u32;
        let want = 1000.0 * std::f64::consts::LN_2;
        assert!((ln_big(&x) - want).abs() / want < 1e-15);
        assert!((ln_big(&BigUint::from(10u32)) - 10f64.ln()).abs() < 1e-15);
    }
}
