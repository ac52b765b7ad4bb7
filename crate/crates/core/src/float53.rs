//! Emulated binary floating point with a 53-bit significand.
//!
//! [`Float53`] mirrors IEEE binary64 arithmetic — every operation computes the
//! exact result and rounds it to 53 significand bits, round-to-nearest-even —
//! but carries an unbounded exponent, so there are no overflows or subnormals.
//! Within the normal f64 range the results are bit-for-bit identical to
//! native doubles (property-tested below); that is the whole point: the type
//! reproduces spreadsheet `double` behaviour deterministically.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::decimal::{format_fixed_scaled, format_plain, pow10, round_half_even_drop};
use crate::error::{Error, Result};
use crate::exact::{isqrt, ExactInteger};

const MANT_BITS: u64 = 53;

/// Binary float: `mantissa * 2^exponent`, |mantissa| in [2^52, 2^53) or zero.
#[derive(Clone, Copy, Debug)]
pub struct Float53 {
    mantissa: i64,
    exponent: i64,
}

impl Float53 {
    pub const ZERO: Float53 = Float53 {
        mantissa: 0,
        exponent: 0,
    };

    /// Round the exact value `m * 2^e` (plus an infinitesimal positive tail
    /// when `sticky`) to 53 significand bits, nearest-even.
    fn normalize(m: BigInt, e: i64, sticky: bool) -> Self {
        if m.is_zero() {
            return Self::ZERO;
        }
        let negative = m.is_negative();
        let mut mag = m.magnitude().clone();
        let mut exp = e;
        let bits = mag.bits();
        if bits > MANT_BITS {
            let shift = bits - MANT_BITS;
            let round_bit = mag.bit(shift - 1);
            let lower_mask = (num_bigint::BigUint::one() << (shift - 1)) - 1u32;
            let lower_sticky = sticky || !(&mag & &lower_mask).is_zero();
            let mut q = &mag >> shift;
            if round_bit && (lower_sticky || q.bit(0)) {
                q += 1u32;
                if q.bits() > MANT_BITS {
                    q >>= 1;
                    exp += 1;
                }
            }
            mag = q;
            exp += shift as i64;
        } else {
            debug_assert!(!sticky, "sticky rounding needs > 53 input bits");
            let shift = MANT_BITS - bits;
            mag <<= shift;
            exp -= shift as i64;
        }
        let m_i64 = i64::try_from(&mag).expect("53-bit mantissa fits i64");
        Float53 {
            mantissa: if negative { -m_i64 } else { m_i64 },
            exponent: exp,
        }
    }

    /// Correctly rounded `num / den` for exact integers, `den > 0`.
    fn from_ratio(num: &BigInt, den: &BigInt) -> Self {
        debug_assert!(den.is_positive());
        if num.is_zero() {
            return Self::ZERO;
        }
        let sh = 60 + den.bits();
        let scaled: BigInt = (num.abs()) << sh;
        let (q, r) = scaled.div_rem(den);
        let out = Self::normalize(q, -(sh as i64), !r.is_zero());
        if num.is_negative() {
            -out
        } else {
            out
        }
    }

    /// Nearest float to an exact integer.
    pub fn from_exact(n: &ExactInteger) -> Self {
        Self::normalize(n.clone(), 0, false)
    }

    /// Whether an exact integer converts without rounding.
    pub fn represents_exactly(n: &ExactInteger) -> bool {
        Self::from_exact(n).to_exact_integer().as_ref() == Some(n)
    }

    /// The exact integer value, if this float holds one.
    pub fn to_exact_integer(&self) -> Option<ExactInteger> {
        if self.mantissa == 0 {
            return Some(BigInt::zero());
        }
        if self.exponent >= 0 {
            return Some(BigInt::from(self.mantissa) << self.exponent as u64);
        }
        let sh = (-self.exponent) as u64;
        let mag = BigInt::from(self.mantissa.unsigned_abs());
        let low: BigInt = &mag & &((BigInt::one() << sh) - 1);
        if !low.is_zero() {
            return None;
        }
        let q = mag >> sh;
        Some(if self.mantissa < 0 { -q } else { q })
    }

    pub fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "Float53 models finite values only");
        if x == 0.0 {
            return Self::ZERO;
        }
        let bits = x.to_bits();
        let negative = bits >> 63 == 1;
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), biased - 1075)
        };
        let m = BigInt::from(m);
        Self::normalize(if negative { -m } else { m }, e, false)
    }

    pub fn to_f64(&self) -> f64 {
        if self.mantissa == 0 {
            return 0.0;
        }
        debug_assert!(self.exponent <= 980, "Float53 value overflows f64");
        let m = self.mantissa as f64; // exact, |mantissa| < 2^53
        if self.exponent >= -1000 {
            // scaling by a normal power of two is exact
            m * 2f64.powi(self.exponent as i32)
        } else {
            // split the scale: first factor exact, second rounds at most once
            let rest = (self.exponent + 1000).max(-1080);
            (m * 2f64.powi(-1000)) * 2f64.powi(rest as i32)
        }
    }

    /// Square root of a non-negative exact integer, correctly rounded.
    pub fn sqrt_integer(n: &ExactInteger) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::NegativeInput {
                op: "sqrt",
                value: n.clone(),
            });
        }
        if n.is_zero() {
            return Ok(Self::ZERO);
        }
        let scaled: BigInt = n << 120u64;
        let root = isqrt(&scaled)?;
        let rem = &scaled - &root * &root;
        Ok(Self::normalize(root, -60, !rem.is_zero()))
    }

    pub fn is_zero_value(&self) -> bool {
        self.mantissa == 0
    }

    pub fn abs_value(&self) -> Self {
        Float53 {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
        }
    }

    /// Relative rounding error bound of one operation: 2^-53.
    pub fn unit_roundoff_value(&self) -> Self {
        Self::normalize(BigInt::one(), -(MANT_BITS as i64), false)
    }

    /// The exact decimal form of this binary value: `(mantissa, exp10)` with
    /// value = mantissa * 10^exp10.
    fn exact_decimal(&self) -> (BigInt, i64) {
        if self.exponent >= 0 {
            (BigInt::from(self.mantissa) << self.exponent as u64, 0)
        } else {
            let k = (-self.exponent) as u32;
            let five = BigInt::from(5u32).pow(k);
            (BigInt::from(self.mantissa) * five, self.exponent)
        }
    }

    /// Round at `decimals` decimal places (half-even), then store the nearest
    /// binary float — the "re-enter the displayed number into a cell" step.
    pub fn quantize(&self, decimals: u32) -> Self {
        if self.mantissa == 0 {
            return *self;
        }
        let (md, e10) = self.exact_decimal();
        let shift = e10 + decimals as i64;
        let scaled = if shift >= 0 {
            md * pow10(shift as u64)
        } else {
            round_half_even_drop(&md, (-shift) as u64)
        };
        Self::from_ratio(&scaled, &pow10(decimals as u64))
    }

    /// Nearest integer, ties away from zero.
    pub fn round_half_away(&self) -> ExactInteger {
        if self.exponent >= 0 {
            return BigInt::from(self.mantissa) << self.exponent as u64;
        }
        let sh = (-self.exponent) as u64;
        let mag = BigInt::from(self.mantissa.unsigned_abs());
        let q: BigInt = &mag >> sh;
        let round_bit = mag.bit(sh - 1);
        let out = if round_bit { q + 1 } else { q };
        if self.mantissa < 0 {
            -out
        } else {
            out
        }
    }

    /// Fixed-point rendering with exactly `decimals` digits after the point,
    /// computed from the exact binary value (half-even at the display digit).
    pub fn to_display(&self, decimals: u32) -> String {
        let (md, e10) = self.exact_decimal();
        let shift = e10 + decimals as i64;
        let scaled = if shift >= 0 {
            md * pow10(shift as u64)
        } else {
            round_half_even_drop(&md, (-shift) as u64)
        };
        format_fixed_scaled(&scaled, decimals)
    }

    /// Rendering rounded to `sig` significant digits, plain notation.
    pub fn to_sig_display(&self, sig: u32) -> String {
        if self.mantissa == 0 {
            return "0".to_string();
        }
        let (md, mut e10) = self.exact_decimal();
        let digits = md.magnitude().to_str_radix(10).len() as u64;
        let mut md = md;
        if digits > sig as u64 {
            let drop = digits - sig as u64;
            md = round_half_even_drop(&md, drop);
            e10 += drop as i64;
        }
        let ten = BigInt::from(10u32);
        while !md.is_zero() {
            let (q, r) = md.div_rem(&ten);
            if r.is_zero() {
                md = q;
                e10 += 1;
            } else {
                break;
            }
        }
        format_plain(&md, e10)
    }

    fn cmp_impl(&self, other: &Self) -> Ordering {
        let class = |m: i64| match m.cmp(&0) {
            Ordering::Less => 0,
            Ordering::Equal => 1,
            Ordering::Greater => 2,
        };
        match class(self.mantissa).cmp(&class(other.mantissa)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.mantissa == 0 {
            return Ordering::Equal;
        }
        // Same sign, both normalized: magnitude order is (exponent, |mantissa|).
        let mag = (self.exponent, self.mantissa.unsigned_abs())
            .cmp(&(other.exponent, other.mantissa.unsigned_abs()));
        if self.mantissa < 0 {
            mag.reverse()
        } else {
            mag
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        if self.mantissa == 0 {
            return *other;
        }
        if other.mantissa == 0 {
            return *self;
        }
        let e = self.exponent.min(other.exponent);
        let ma = BigInt::from(self.mantissa) << (self.exponent - e) as u64;
        let mb = BigInt::from(other.mantissa) << (other.exponent - e) as u64;
        Self::normalize(ma + mb, e, false)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        let prod = self.mantissa as i128 * other.mantissa as i128;
        Self::normalize(BigInt::from(prod), self.exponent + other.exponent, false)
    }

    fn div_impl(&self, other: &Self) -> Self {
        assert!(other.mantissa != 0, "Float53 division by zero");
        if self.mantissa == 0 {
            return Self::ZERO;
        }
        let sh = 60u64;
        let na = BigInt::from(self.mantissa.unsigned_abs()) << sh;
        let nb = BigInt::from(other.mantissa.unsigned_abs());
        let (q, r) = na.div_rem(&nb);
        let out = Self::normalize(q, self.exponent - other.exponent - sh as i64, !r.is_zero());
        if (self.mantissa < 0) != (other.mantissa < 0) {
            -out
        } else {
            out
        }
    }
}

impl PartialEq for Float53 {
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && self.exponent == other.exponent
    }
}

impl PartialOrd for Float53 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_impl(other))
    }
}

impl fmt::Display for Float53 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_f64())
    }
}

impl Add for Float53 {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs)
    }
}

impl Sub for Float53 {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs.neg())
    }
}

impl Mul for Float53 {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl Div for Float53 {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.div_impl(&rhs)
    }
}

impl Neg for Float53 {
    type Output = Self;
    fn neg(self) -> Self {
        Float53 {
            mantissa: -self.mantissa,
            exponent: self.exponent,
        }
    }
}

impl Zero for Float53 {
    fn zero() -> Self {
        Self::ZERO
    }
    fn is_zero(&self) -> bool {
        self.mantissa == 0
    }
}

impl One for Float53 {
    fn one() -> Self {
        Self::normalize(BigInt::one(), 0, false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn moderate_f64() -> impl Strategy<Value = f64> {
        // finite doubles well inside the normal range, where the unbounded
        // exponent cannot diverge from IEEE behaviour
        any::<f64>().prop_filter("normal-range", |x| {
            x.is_finite() && (*x == 0.0 || (x.abs() > 1e-200 && x.abs() < 1e200))
        })
    }

    #[test]
    fn construction_roundtrip() {
        for v in [0.0, 1.0, -1.0, 0.5, 33.97056, 1e100, -3.25e-7] {
            assert_eq!(Float53::from_f64(v).to_f64(), v);
        }
    }

    #[test]
    fn integer_conversion() {
        let n = BigInt::from(63955431761796u64);
        assert_eq!(Float53::from_exact(&n).to_f64(), 63955431761796.0);
        assert!(Float53::represents_exactly(&n));
        // 2^53 + 1 is the first non-representable integer
        let big = (BigInt::one() << 53u32) + 1;
        assert!(!Float53::represents_exactly(&big));
    }

    #[test]
    fn quantize_matches_reentering_display() {
        let x = Float53::from_f64(33.970562749744902);
        let q = x.quantize(11);
        assert_eq!(q.to_f64(), "33.97056274974".parse::<f64>().unwrap());
        let paper = q * Float53::from_f64(1631432881.0);
        assert_eq!(paper.to_display(5), "55420693055.99960");
    }

    #[test]
    fn round_half_away_ties() {
        assert_eq!(Float53::from_f64(2.5).round_half_away(), BigInt::from(3));
        assert_eq!(Float53::from_f64(-2.5).round_half_away(), BigInt::from(-3));
        assert_eq!(Float53::from_f64(2.25).round_half_away(), BigInt::from(2));
    }

    proptest! {
        // zero results are filtered: Float53 has no signed zero, which is the
        // only divergence from IEEE semantics in range
        #[test]
        fn add_matches_native(a in moderate_f64(), b in moderate_f64()) {
            let native = a + b;
            prop_assume!(native != 0.0 && native.abs() > 1e-290);
            let emu = (Float53::from_f64(a) + Float53::from_f64(b)).to_f64();
            prop_assert_eq!(emu.to_bits(), native.to_bits(), "a={:?} b={:?}", a, b);
        }

        #[test]
        fn sub_matches_native(a in moderate_f64(), b in moderate_f64()) {
            let native = a - b;
            prop_assume!(native != 0.0 && native.abs() > 1e-290);
            let emu = (Float53::from_f64(a) - Float53::from_f64(b)).to_f64();
            prop_assert_eq!(emu.to_bits(), native.to_bits(), "a={:?} b={:?}", a, b);
        }

        #[test]
        fn mul_matches_native(a in moderate_f64(), b in moderate_f64()) {
            let native = a * b;
            prop_assume!(native != 0.0 && native.abs() > 1e-290 && native.abs() < 1e290);
            let emu = (Float53::from_f64(a) * Float53::from_f64(b)).to_f64();
            prop_assert_eq!(emu.to_bits(), native.to_bits(), "a={:?} b={:?}", a, b);
        }

        #[test]
        fn div_matches_native(a in moderate_f64(), b in moderate_f64()) {
            prop_assume!(b != 0.0);
            let native = a / b;
            prop_assume!(native != 0.0 && native.abs() > 1e-290 && native.abs() < 1e290);
            let emu = (Float53::from_f64(a) / Float53::from_f64(b)).to_f64();
            prop_assert_eq!(emu.to_bits(), native.to_bits(), "a={:?} b={:?}", a, b);
        }

        #[test]
        fn sqrt_matches_native(n in 1u64..=(1u64 << 53)) {
            let native = (n as f64).sqrt();
            let emu = Float53::sqrt_integer(&BigInt::from(n)).unwrap().to_f64();
            prop_assert_eq!(emu.to_bits(), native.to_bits(), "n={}", n);
        }

        #[test]
        fn quantize_matches_formatted_reparse(x in moderate_f64(), d in 0u32..=15) {
            prop_assume!(x != 0.0 && x.abs() > 1e-12 && x.abs() < 1e15);
            let shown = format!("{:.*}", d as usize, x);
            let reparsed: f64 = shown.parse().unwrap();
            prop_assume!(reparsed != 0.0);
            let emu = Float53::from_f64(x).quantize(d).to_f64();
            prop_assert_eq!(emu.to_bits(), reparsed.to_bits(), "x={:?} d={} shown={}", x, d, shown);
        }
    }
}
