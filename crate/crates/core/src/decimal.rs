//! Fixed-precision decimal arithmetic.
//!
//! [`PrecisionDecimal`] is a base-10 floating significand: `mantissa * 10^exponent`
//! with a per-value budget of significant digits. Every operation rounds its
//! exact result to the smaller budget of its operands using round-half-even,
//! so each individual result is correct to at least that many significant
//! digits. Values built from integer literals carry an "exact" budget and
//! never round on their own.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exact::{isqrt, ExactInteger};

/// Marker budget for exact integer literals: they never round and defer to
/// the other operand's budget.
const EXACT_PREC: u32 = u32::MAX;

/// Selects the arithmetic backend: budgeted decimal digits or the emulated
/// 53-bit binary float. Exactly one backend is active per configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrecisionConfig {
    /// Decimal arithmetic correct to at least `digits` significant digits.
    Decimal { digits: u32 },
    /// Emulated IEEE-style binary float: 53-bit significand, round to nearest even.
    Float53,
}

impl PrecisionConfig {
    /// Smallest accepted decimal budget.
    pub const MIN_DIGITS: u32 = 10;

    pub fn decimal(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::DigitsBelowMinimum {
                digits,
                min: Self::MIN_DIGITS,
            });
        }
        Ok(PrecisionConfig::Decimal { digits })
    }

    pub fn float53() -> Self {
        PrecisionConfig::Float53
    }

    pub fn digits(&self) -> Option<u32> {
        match self {
            PrecisionConfig::Decimal { digits } => Some(*digits),
            PrecisionConfig::Float53 => None,
        }
    }

    pub fn is_float(&self) -> bool {
        matches!(self, PrecisionConfig::Float53)
    }
}

pub(crate) fn pow10(k: u64) -> BigInt {
    BigInt::from(10u32).pow(u32::try_from(k).expect("decimal exponent out of range"))
}

fn digit_count(m: &BigInt) -> u64 {
    m.magnitude().to_str_radix(10).len() as u64
}

/// Round |m| / 10^drop to the nearest integer, ties to even; sign preserved.
pub(crate) fn round_half_even_drop(m: &BigInt, drop: u64) -> BigInt {
    if drop == 0 {
        return m.clone();
    }
    let d = pow10(drop);
    let mag = m.abs();
    let (q, r) = mag.div_rem(&d);
    let two_r: BigInt = &r * 2;
    let rounded = match two_r.cmp(&d) {
        Ordering::Less => q,
        Ordering::Greater => q + 1,
        Ordering::Equal => {
            if q.is_odd() {
                q + 1
            } else {
                q
            }
        }
    };
    if m.is_negative() {
        -rounded
    } else {
        rounded
    }
}

/// Format the exact value `mantissa * 10^exp10` as a plain decimal string
/// (no exponent notation). Shared with the float backend's display paths.
pub(crate) fn format_plain(mantissa: &BigInt, exp10: i64) -> String {
    if mantissa.is_zero() {
        return "0".to_string();
    }
    let sign = if mantissa.is_negative() { "-" } else { "" };
    let digits = mantissa.magnitude().to_str_radix(10);
    if exp10 >= 0 {
        let zeros = "0".repeat(exp10 as usize);
        return format!("{sign}{digits}{zeros}");
    }
    let point = digits.len() as i64 + exp10;
    if point > 0 {
        let (int, frac) = digits.split_at(point as usize);
        format!("{sign}{int}.{frac}")
    } else {
        let zeros = "0".repeat((-point) as usize);
        format!("{sign}0.{zeros}{digits}")
    }
}

/// Format `scaled / 10^decimals` (with `scaled` exact) in fixed-point with
/// exactly `decimals` digits after the point.
pub(crate) fn format_fixed_scaled(scaled: &BigInt, decimals: u32) -> String {
    let d = decimals as usize;
    let sign = if scaled.is_negative() { "-" } else { "" };
    let mag = scaled.magnitude().to_str_radix(10);
    if d == 0 {
        return format!("{sign}{mag}");
    }
    let mag = if mag.len() <= d {
        format!("{}{}", "0".repeat(d + 1 - mag.len()), mag)
    } else {
        mag
    };
    let (int, frac) = mag.split_at(mag.len() - d);
    format!("{sign}{int}.{frac}")
}

/// Base-10 floating significand with a per-value significant-digit budget.
#[derive(Clone, Debug)]
pub struct PrecisionDecimal {
    mantissa: BigInt,
    exponent: i64,
    prec: u32,
}

impl PrecisionDecimal {
    fn normalize(mut mantissa: BigInt, mut exponent: i64, prec: u32) -> Self {
        if mantissa.is_zero() {
            return Self {
                mantissa,
                exponent: 0,
                prec,
            };
        }
        if prec != EXACT_PREC {
            let digits = digit_count(&mantissa);
            if digits > prec as u64 {
                let drop = digits - prec as u64;
                mantissa = round_half_even_drop(&mantissa, drop);
                exponent += drop as i64;
            }
        }
        let ten = BigInt::from(10u32);
        while !mantissa.is_zero() {
            let (q, r) = mantissa.div_rem(&ten);
            if r.is_zero() {
                mantissa = q;
                exponent += 1;
            } else {
                break;
            }
        }
        if mantissa.is_zero() {
            exponent = 0;
        }
        Self {
            mantissa,
            exponent,
            prec,
        }
    }

    /// Exact integer literal; participates in arithmetic without imposing a budget.
    pub fn from_int(v: i64) -> Self {
        Self::normalize(BigInt::from(v), 0, EXACT_PREC)
    }

    /// Convert an exact integer at the given significant-digit budget.
    pub fn from_exact_at(n: &ExactInteger, digits: u32) -> Self {
        Self::normalize(n.clone(), 0, digits)
    }

    /// Parse a decimal literal (`[+-]ddd[.ddd][e[+-]ddd]`) at the given budget.
    pub fn from_str_at(s: &str, digits: u32) -> Result<Self> {
        let err = || Error::ParseDecimal(s.to_string());
        let (body, exp) = match s.find(['e', 'E']) {
            Some(i) => {
                let exp: i64 = s[i + 1..].parse().map_err(|_| err())?;
                (&s[..i], exp)
            }
            None => (s, 0),
        };
        let (body, neg) = match body.strip_prefix('-') {
            Some(b) => (b, true),
            None => (body.strip_prefix('+').unwrap_or(body), false),
        };
        let (int_part, frac_part) = match body.find('.') {
            Some(i) => (&body[..i], &body[i + 1..]),
            None => (body, ""),
        };
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let joined = format!("{int_part}{frac_part}");
        if joined.is_empty() || !joined.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let mut mantissa: BigInt = joined.parse().map_err(|_| err())?;
        if neg {
            mantissa = -mantissa;
        }
        Ok(Self::normalize(
            mantissa,
            exp - frac_part.len() as i64,
            digits,
        ))
    }

    /// Square root of a non-negative integer, correct to `digits` significant
    /// digits (round to nearest; exact when the root terminates).
    pub fn sqrt_integer(n: &ExactInteger, digits: u32) -> Result<Self> {
        if n.is_negative() {
            return Err(Error::NegativeInput {
                op: "sqrt",
                value: n.clone(),
            });
        }
        if n.is_zero() {
            return Ok(Self::normalize(BigInt::zero(), 0, digits));
        }
        let dc = digit_count(n);
        let p = digits as u64;
        let root_digits = dc.div_ceil(2);
        let u = (p + 2).saturating_sub(root_digits);
        let scaled = n * pow10(2 * u);
        let root = isqrt(&scaled)?;
        let rem = &scaled - &root * &root;
        if rem.is_zero() {
            return Ok(Self::normalize(root, -(u as i64), digits));
        }
        // Irrational at this scale: true root lies in [root, root+1), so the
        // round-to-nearest decision at p digits is determined by the digits
        // being dropped (an exact tie cannot occur).
        let dr = digit_count(&root) as i64;
        let excess = dr - digits as i64;
        debug_assert!(excess >= 1);
        let d = pow10(excess as u64);
        let (q, r2) = root.div_rem(&d);
        let half = &d / 2;
        let m = if r2 >= half { q + 1 } else { q };
        Ok(Self::normalize(m, -(u as i64) + excess, digits))
    }

    pub fn is_zero_value(&self) -> bool {
        self.mantissa.is_zero()
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn abs_value(&self) -> Self {
        Self {
            mantissa: self.mantissa.abs(),
            exponent: self.exponent,
            prec: self.prec,
        }
    }

    /// Half of one unit in the last guaranteed significant digit, relative to 1.
    pub fn unit_roundoff_value(&self) -> Self {
        if self.prec == EXACT_PREC {
            return Self::from_int(0);
        }
        Self::normalize(BigInt::from(5), -(self.prec as i64), EXACT_PREC)
    }

    /// Round at `decimals` decimal places (half-even), keeping the budget.
    pub fn quantize(&self, decimals: u32) -> Self {
        let target = -(decimals as i64);
        if self.exponent >= target {
            return self.clone();
        }
        let drop = (target - self.exponent) as u64;
        let m = round_half_even_drop(&self.mantissa, drop);
        Self::normalize(m, target, self.prec)
    }

    /// Nearest integer, ties away from zero.
    pub fn round_half_away(&self) -> ExactInteger {
        if self.exponent >= 0 {
            return &self.mantissa * pow10(self.exponent as u64);
        }
        let d = pow10((-self.exponent) as u64);
        let (q, r) = self.mantissa.abs().div_rem(&d);
        let up = &r * 2 >= d;
        let mag = if up { q + 1 } else { q };
        if self.mantissa.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// Fixed-point rendering with exactly `decimals` digits after the point.
    pub fn to_display(&self, decimals: u32) -> String {
        let q = self.quantize(decimals);
        let scaled = &q.mantissa * pow10((q.exponent + decimals as i64) as u64);
        format_fixed_scaled(&scaled, decimals)
    }

    /// Rendering rounded to `sig` significant digits, plain notation,
    /// trailing zeros trimmed.
    pub fn to_sig_display(&self, sig: u32) -> String {
        let rounded = Self::normalize(self.mantissa.clone(), self.exponent, sig);
        format_plain(&rounded.mantissa, rounded.exponent)
    }

    fn cmp_impl(&self, other: &Self) -> Ordering {
        let sa = self.mantissa.sign();
        let sb = other.mantissa.sign();
        let class = |s: num_bigint::Sign| match s {
            num_bigint::Sign::Minus => 0,
            num_bigint::Sign::NoSign => 1,
            num_bigint::Sign::Plus => 2,
        };
        match class(sa).cmp(&class(sb)) {
            Ordering::Equal => {}
            ord => return ord,
        }
        if self.mantissa.is_zero() {
            return Ordering::Equal;
        }
        // Same nonzero sign: compare leading-digit positions, then align.
        let pa = self.exponent + digit_count(&self.mantissa) as i64;
        let pb = other.exponent + digit_count(&other.mantissa) as i64;
        let mag_ord = if pa != pb {
            pa.cmp(&pb)
        } else {
            let e = self.exponent.min(other.exponent);
            let ma = &self.mantissa * pow10((self.exponent - e) as u64);
            let mb = &other.mantissa * pow10((other.exponent - e) as u64);
            return ma.cmp(&mb);
        };
        if self.mantissa.is_negative() {
            mag_ord.reverse()
        } else {
            mag_ord
        }
    }

    fn add_impl(&self, other: &Self) -> Self {
        let prec = self.prec.min(other.prec);
        if self.mantissa.is_zero() {
            return Self::normalize(other.mantissa.clone(), other.exponent, prec);
        }
        if other.mantissa.is_zero() {
            return Self::normalize(self.mantissa.clone(), self.exponent, prec);
        }
        let e = self.exponent.min(other.exponent);
        let ma = &self.mantissa * pow10((self.exponent - e) as u64);
        let mb = &other.mantissa * pow10((other.exponent - e) as u64);
        Self::normalize(ma + mb, e, prec)
    }

    fn mul_impl(&self, other: &Self) -> Self {
        Self::normalize(
            &self.mantissa * &other.mantissa,
            self.exponent + other.exponent,
            self.prec.min(other.prec),
        )
    }

    fn div_impl(&self, other: &Self) -> Self {
        assert!(
            !other.mantissa.is_zero(),
            "PrecisionDecimal division by zero"
        );
        let prec = self.prec.min(other.prec);
        assert!(
            prec != EXACT_PREC,
            "PrecisionDecimal division needs a budgeted operand"
        );
        if self.mantissa.is_zero() {
            return Self::normalize(BigInt::zero(), 0, prec);
        }
        let da = digit_count(&self.mantissa) as i64;
        let db = digit_count(&other.mantissa) as i64;
        let shift = (prec as i64 + 1 + db - da).max(0) as u64;
        let na = self.mantissa.abs() * pow10(shift);
        let nb = other.mantissa.abs();
        let (q, r) = na.div_rem(&nb);
        let dq = digit_count(&q) as i64;
        let excess = dq - prec as i64;
        let negative = self.mantissa.is_negative() != other.mantissa.is_negative();
        let (m, e) = if excess > 0 {
            let d = pow10(excess as u64);
            let (q2, r2) = q.div_rem(&d);
            let two_r2: BigInt = &r2 * 2;
            let m = match two_r2.cmp(&d) {
                Ordering::Less => q2,
                Ordering::Greater => q2 + 1,
                // Dropped part is exactly half only when the division left no
                // remainder; otherwise it exceeds half.
                Ordering::Equal => {
                    if r.is_zero() {
                        if q2.is_odd() {
                            q2 + 1
                        } else {
                            q2
                        }
                    } else {
                        q2 + 1
                    }
                }
            };
            (m, self.exponent - other.exponent - shift as i64 + excess)
        } else {
            let two_r: BigInt = &r * 2;
            let m = match two_r.cmp(&nb) {
                Ordering::Less => q,
                Ordering::Greater => q + 1,
                Ordering::Equal => {
                    if q.is_odd() {
                        q + 1
                    } else {
                        q
                    }
                }
            };
            (m, self.exponent - other.exponent - shift as i64)
        };
        Self::normalize(if negative { -m } else { m }, e, prec)
    }
}

impl PartialEq for PrecisionDecimal {
    fn eq(&self, other: &Self) -> bool {
        self.mantissa == other.mantissa && self.exponent == other.exponent
    }
}

impl PartialOrd for PrecisionDecimal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_impl(other))
    }
}

impl fmt::Display for PrecisionDecimal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_plain(&self.mantissa, self.exponent))
    }
}

impl Add for PrecisionDecimal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs)
    }
}

impl Sub for PrecisionDecimal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs.neg())
    }
}

impl Mul for PrecisionDecimal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.mul_impl(&rhs)
    }
}

impl Div for PrecisionDecimal {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        self.div_impl(&rhs)
    }
}

impl Neg for PrecisionDecimal {
    type Output = Self;
    fn neg(self) -> Self {
        Self {
            mantissa: -self.mantissa,
            exponent: self.exponent,
            prec: self.prec,
        }
    }
}

impl Zero for PrecisionDecimal {
    fn zero() -> Self {
        Self::from_int(0)
    }
    fn is_zero(&self) -> bool {
        self.mantissa.is_zero()
    }
}

impl One for PrecisionDecimal {
    fn one() -> Self {
        Self::from_int(1)
    }
}

/// Square root of a non-negative exact integer at the configured decimal
/// budget. Rejects the float backend: binary rounding cannot honour a
/// decimal-digit guarantee.
pub fn sqrt_decimal(x: &ExactInteger, cfg: &PrecisionConfig) -> Result<PrecisionDecimal> {
    match cfg {
        PrecisionConfig::Decimal { digits } => PrecisionDecimal::sqrt_integer(x, *digits),
        PrecisionConfig::Float53 => Err(Error::BackendMismatch {
            expected: "decimal",
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn dec(s: &str, digits: u32) -> PrecisionDecimal {
        PrecisionDecimal::from_str_at(s, digits).unwrap()
    }

    #[test]
    fn config_rejects_small_budgets() {
        assert!(PrecisionConfig::decimal(9).is_err());
        assert!(PrecisionConfig::decimal(10).is_ok());
    }

    #[test]
    fn rounding_is_half_even() {
        // 12345 -> 4 digits: tie on the dropped 5, keeps even 1234
        let x = PrecisionDecimal::from_exact_at(&BigInt::from(12345), 4);
        assert_eq!(x.to_string(), "12340");
        let y = PrecisionDecimal::from_exact_at(&BigInt::from(12355), 4);
        assert_eq!(y.to_string(), "12360");
        let z = PrecisionDecimal::from_exact_at(&BigInt::from(12345001), 4);
        assert_eq!(z.to_string(), "12350000");
    }

    #[test]
    fn division_rounds_correctly() {
        let a = dec("1", 10);
        let b = dec("3", 10);
        assert_eq!((a / b).to_string(), "0.3333333333");
        let a = dec("2", 10);
        let b = dec("3", 10);
        assert_eq!((a / b).to_string(), "0.6666666667");
        // exact tie: 1/512 = 0.001953125 has 7 sig digits; at 10 it is exact
        let a = dec("1", 10);
        let b = dec("512", 10);
        assert_eq!((a / b).to_string(), "0.001953125");
    }

    #[test]
    fn sqrt_examples() {
        let r = PrecisionDecimal::sqrt_integer(&BigInt::from(2), 11).unwrap();
        assert_eq!(r.to_sig_display(11), "1.4142135624");
        let r = PrecisionDecimal::sqrt_integer(&BigInt::from(3), 10).unwrap();
        assert_eq!(r.to_display(4), "1.7321");
        let r = PrecisionDecimal::sqrt_integer(&BigInt::from(1), 10).unwrap();
        assert_eq!(r.to_string(), "1");
        let r = PrecisionDecimal::sqrt_integer(&BigInt::from(48024900), 12).unwrap();
        assert_eq!(r.to_string(), "6930");
        assert!(PrecisionDecimal::sqrt_integer(&BigInt::from(-2), 10).is_err());
    }

    #[test]
    fn sqrt_decimal_respects_backend() {
        let cfg = PrecisionConfig::float53();
        assert!(sqrt_decimal(&BigInt::from(2), &cfg).is_err());
    }

    #[test]
    fn quantize_and_display() {
        let x = dec("33.970564206091", 30);
        assert_eq!(x.to_display(11), "33.97056420609");
        assert_eq!(x.to_display(5), "33.97056");
        let b = dec("0.0000000416451", 30);
        assert_eq!(b.to_display(13), "0.0000000416451");
        let t = dec("36", 30);
        assert_eq!(t.to_display(5), "36.00000");
        let n = dec("-1.97222", 30);
        assert_eq!(n.to_display(5), "-1.97222");
        assert_eq!(n.abs_value().to_display(5), "1.97222");
    }

    #[test]
    fn round_half_away_examples() {
        assert_eq!(dec("2.5", 20).round_half_away(), BigInt::from(3));
        assert_eq!(dec("-2.5", 20).round_half_away(), BigInt::from(-3));
        assert_eq!(dec("2.4999", 20).round_half_away(), BigInt::from(2));
        assert_eq!(
            dec("1631432881.00263", 30).round_half_away(),
            BigInt::from(1631432881u64)
        );
    }

    #[test]
    fn comparisons() {
        assert!(dec("33.97185", 20) > dec("33.97060", 20));
        assert!(dec("-2", 20) < dec("0.001", 20));
        assert_eq!(dec("1.50", 20), dec("1.5", 20));
        assert!(dec("0.0001", 20) > PrecisionDecimal::zero());
    }

    proptest! {
        // sqrt(x)^2 agrees with x within the budgeted relative error
        #[test]
        fn sqrt_square_close(x in 1u64..=u64::MAX, digits in 10u32..=40) {
            let n = BigInt::from(x);
            let r = PrecisionDecimal::sqrt_integer(&n, digits).unwrap();
            let sq = r.clone() * r;
            let xd = PrecisionDecimal::from_exact_at(&n, digits + 10);
            let diff = (sq - xd.clone()).abs_value();
            // |r^2 - x| / x <= 10^(2 - digits)
            let bound = PrecisionDecimal::normalize(BigInt::from(1), 2 - digits as i64, EXACT_PREC);
            prop_assert!(diff <= bound * xd, "digits={} x={}", digits, x);
        }

        #[test]
        fn add_sub_roundtrip_exactish(a in -1_000_000_000i64..=1_000_000_000, b in -1_000_000_000i64..=1_000_000_000) {
            // integers well inside the budget stay exact through + and -
            let da = PrecisionDecimal::from_exact_at(&BigInt::from(a), 25);
            let db = PrecisionDecimal::from_exact_at(&BigInt::from(b), 25);
            let sum = da.clone() + db.clone();
            let back = sum - db;
            prop_assert_eq!(back, da);
        }

        #[test]
        fn display_roundtrip(m in -1_000_000_000_000i64..=1_000_000_000_000, e in -12i64..=3) {
            let x = PrecisionDecimal::normalize(BigInt::from(m), e, 30);
            let s = x.to_string();
            let y = PrecisionDecimal::from_str_at(&s, 30).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}
