//! Exact integer arithmetic: floor square roots, perfect-square tests and
//! triangular-number helpers over arbitrary-precision integers.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision signed integer; every exact quantity in the crate
/// (sequence values, Pell pairs, triangular indices) is one of these.
pub type ExactInteger = BigInt;

/// Floor square root: returns `r` with `r^2 <= x < (r+1)^2`.
///
/// Integer Newton iteration started above the root; the first non-decreasing
/// step proves `r` is the floor, so no floating-point seed is involved.
pub fn isqrt(x: &ExactInteger) -> Result<ExactInteger> {
    match x.sign() {
        Sign::Minus => Err(Error::NegativeInput {
            op: "isqrt",
            value: x.clone(),
        }),
        Sign::NoSign => Ok(BigInt::zero()),
        Sign::Plus => {
            // 2^ceil(bits/2) >= sqrt(x), so the iteration is decreasing.
            let mut r: BigInt = BigInt::one() << x.bits().div_ceil(2);
            loop {
                let next: BigInt = (&r + x / &r) >> 1;
                if next >= r {
                    return Ok(r);
                }
                r = next;
            }
        }
    }
}

/// Returns the square root when `x` is a perfect square, `None` otherwise
/// (negative inputs are never squares).
pub fn perfect_square_root(x: &ExactInteger) -> Option<ExactInteger> {
    if x.is_negative() {
        return None;
    }
    let r = isqrt(x).expect("non-negative by check above");
    if &r * &r == *x {
        Some(r)
    } else {
        None
    }
}

/// The m-th triangular number m(m+1)/2.
pub fn triangular(m: &ExactInteger) -> Result<ExactInteger> {
    if m.is_negative() {
        return Err(Error::NegativeInput {
            op: "triangular",
            value: m.clone(),
        });
    }
    Ok(m * (m + 1) / 2)
}

/// Inverse of [`triangular`]: the `m` with m(m+1)/2 = c, if any.
///
/// Solves m^2 + m - 2c = 0 exactly: m = (isqrt(8c+1) - 1) / 2 when 8c+1 is a
/// perfect square with an odd root.
pub fn triangular_index(c: &ExactInteger) -> Option<ExactInteger> {
    if c.is_negative() {
        return None;
    }
    let disc = 8 * c + 1;
    let root = perfect_square_root(&disc)?;
    // root is odd iff root^2 = 8c+1 is odd, which it always is; the division
    // below is exact.
    let m = (root - 1) / 2;
    debug_assert_eq!(&m * (&m + 1) / 2, *c);
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::str::FromStr;

    fn big(s: &str) -> BigInt {
        BigInt::from_str(s).unwrap()
    }

    #[test]
    fn isqrt_examples() {
        assert_eq!(isqrt(&BigInt::from(0)).unwrap(), BigInt::from(0));
        assert_eq!(isqrt(&BigInt::from(2)).unwrap(), BigInt::from(1));
        assert_eq!(isqrt(&BigInt::from(48024900)).unwrap(), BigInt::from(6930));
        assert!(isqrt(&BigInt::from(-1)).is_err());
    }

    #[test]
    fn isqrt_floor_small_range() {
        for n in 0u64..=100_000 {
            let x = BigInt::from(n);
            let r = isqrt(&x).unwrap();
            assert!(&r * &r <= x);
            assert!((&r + 1) * (&r + 1) > x);
        }
    }

    #[test]
    fn perfect_square_examples() {
        assert_eq!(
            perfect_square_root(&big("1631432881")),
            Some(BigInt::from(40391))
        );
        assert_eq!(perfect_square_root(&big("48024901")), None);
        assert_eq!(perfect_square_root(&BigInt::from(0)), Some(BigInt::from(0)));
        assert_eq!(perfect_square_root(&BigInt::from(-4)), None);
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(triangular(&BigInt::from(8)).unwrap(), BigInt::from(36));
        assert_eq!(triangular(&BigInt::from(0)).unwrap(), BigInt::from(0));
        assert_eq!(
            triangular(&BigInt::from(332928)).unwrap(),
            big("55420693056")
        );
        assert!(triangular(&BigInt::from(-3)).is_err());
    }

    #[test]
    fn triangular_index_examples() {
        assert_eq!(
            triangular_index(&big("55420693056")),
            Some(BigInt::from(332928))
        );
        assert_eq!(triangular_index(&BigInt::from(2)), None);
        assert_eq!(triangular_index(&BigInt::from(1)), Some(BigInt::from(1)));
        assert_eq!(triangular_index(&BigInt::from(0)), Some(BigInt::from(0)));
    }

    proptest! {
        #[test]
        fn isqrt_floor_random_big(bytes in proptest::collection::vec(any::<u8>(), 1..48)) {
            let x = BigInt::from_bytes_be(num_bigint::Sign::Plus, &bytes);
            let r = isqrt(&x).unwrap();
            prop_assert!(&r * &r <= x);
            prop_assert!((&r + 1) * (&r + 1) > x);
        }

        #[test]
        fn triangular_roundtrip(m in 0u64..=1_000_000_000) {
            let m = BigInt::from(m);
            let t = triangular(&m).unwrap();
            prop_assert_eq!(triangular_index(&t), Some(m));
        }

        #[test]
        fn decimal_string_roundtrip(bytes in proptest::collection::vec(any::<u8>(), 1..40), neg in any::<bool>()) {
            let sign = if neg { num_bigint::Sign::Minus } else { num_bigint::Sign::Plus };
            let x = BigInt::from_bytes_be(sign, &bytes);
            let s = x.to_string();
            prop_assert_eq!(BigInt::from_str(&s).unwrap(), x);
        }
    }
}
