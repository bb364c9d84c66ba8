//! Small integer helpers: primality, prime powers, square-free parts.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, e)` with `q = p^e`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

/// Writes a non-negative `x` as `s² · d` with `d` square-free.
///
/// Panics on negative input.
pub fn square_free_decompose(x: &BigInt) -> (BigInt, BigInt) {
    assert!(!x.is_negative(), "square_free_decompose of a negative number");
    if x.is_zero() {
        return (BigInt::zero(), BigInt::zero());
    }
    let mut rest = x.clone();
    let mut square = BigInt::one();
    let mut free = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let mut e = 0u32;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        for _ in 0..e / 2 {
            square *= &p;
        }
        if e % 2 == 1 {
            free *= &p;
        }
        p += 1;
    }
    // what remains is 1 or a prime
    free *= rest;
    (square, free)
}

/// Exact integer square root if `x` is a perfect square.
pub fn exact_sqrt(x: &BigInt) -> Option<BigInt> {
    if x.is_negative() {
        return None;
    }
    let r = x.sqrt();
    (&r * &r == *x).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(8), Some((2, 3)));
        assert_eq!(prime_power(7), Some((7, 1)));
        assert_eq!(prime_power(6), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn square_free_parts() {
        let (s, d) = square_free_decompose(&BigInt::from(324));
        assert_eq!((s, d), (BigInt::from(18), BigInt::from(1)));
        let (s, d) = square_free_decompose(&BigInt::from(125));
        assert_eq!((s, d), (BigInt::from(5), BigInt::from(5)));
        let (s, d) = square_free_decompose(&BigInt::from(12));
        assert_eq!((s, d), (BigInt::from(2), BigInt::from(3)));
    }

    #[test]
    fn perfect_squares() {
        assert_eq!(exact_sqrt(&BigInt::from(144)), Some(BigInt::from(12)));
        assert_eq!(exact_sqrt(&BigInt::from(145)), None);
    }
}
