//! Square-triangular numbers from three independent routes (Pell recurrence,
//! closed form, brute-force scan), general polygonal numbers, and brute-force
//! intersections of two polygonal families.

use std::io::{self, Write};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::decimal::{PrecisionConfig, PrecisionDecimal};
use crate::error::{Error, Result};
use crate::exact::{isqrt, perfect_square_root, triangular, triangular_index, ExactInteger};
use crate::pell::{solution, PellSolution};

/// Which route produced a [`SquareTriangular`] value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorSource {
    Recurrence,
    ClosedForm,
    Scan,
}

/// A number that is simultaneously a square (n^2) and triangular (m(m+1)/2),
/// tied to the Pell solution of the same index via t = 2m+1, s = 2n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareTriangular {
    index: u32,
    a: ExactInteger,
    m: ExactInteger,
    n: ExactInteger,
    source: GeneratorSource,
}

impl SquareTriangular {
    pub fn new(
        index: u32,
        a: ExactInteger,
        m: ExactInteger,
        n: ExactInteger,
        source: GeneratorSource,
    ) -> Result<Self> {
        if &n * &n != a || 2 * &a != &m * (&m + 1) {
            return Err(Error::NotSquareTriangular { value: a });
        }
        Ok(SquareTriangular {
            index,
            a,
            m,
            n,
            source,
        })
    }

    /// Derive the record from a Pell solution: m = (t-1)/2, n = s/2.
    pub fn from_pell(sol: &PellSolution) -> Self {
        let m = (sol.t() - 1) / 2;
        let n = sol.s() / 2;
        let a = &n * &n;
        SquareTriangular::new(sol.index(), a, m, n, GeneratorSource::Recurrence)
            .expect("Pell substitutions satisfy both identities")
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn a(&self) -> &ExactInteger {
        &self.a
    }

    pub fn m(&self) -> &ExactInteger {
        &self.m
    }

    pub fn n(&self) -> &ExactInteger {
        &self.n
    }

    pub fn source(&self) -> GeneratorSource {
        self.source
    }
}

/// The j-th square-triangular number (j >= 1) through the Pell recurrence.
pub fn square_triangular(j: u32) -> SquareTriangular {
    SquareTriangular::from_pell(&solution(j))
}

const LOG10_ALPHA: f64 = 1.531_224_742_755_943; // log10(17 + 12*sqrt(2))

/// Decimal budget that guarantees the closed form rounds to the right
/// integer: ceil(j * log10(alpha)) + 10 guard digits.
pub fn closed_form_digits_needed(j: u32) -> u32 {
    (j as f64 * LOG10_ALPHA).ceil() as u32 + 10
}

fn pow_decimal(base: &PrecisionDecimal, mut n: u32) -> PrecisionDecimal {
    let mut acc = PrecisionDecimal::from_int(1);
    let mut base = base.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc * base.clone();
        }
        n >>= 1;
        if n > 0 {
            base = base.clone() * base;
        }
    }
    acc
}

/// The j-th square-triangular number by the closed form
/// (alpha^j + alpha^-j - 2) / 32 with alpha = (1 + sqrt(2))^4, evaluated at
/// the configured digits and rounded to the nearest integer.
///
/// Errors instead of returning a silently wrong integer: the budget must
/// cover [`closed_form_digits_needed`], the rounding gap must be below 1/2,
/// and the rounded value is re-verified against both exact identities.
pub fn square_triangular_closed(j: u32, cfg: &PrecisionConfig) -> Result<ExactInteger> {
    assert!(j >= 1, "square-triangular numbers are indexed from 1");
    let digits = match cfg {
        PrecisionConfig::Decimal { digits } => *digits,
        PrecisionConfig::Float53 => {
            return Err(Error::BackendMismatch {
                expected: "decimal",
            })
        }
    };
    let needed = closed_form_digits_needed(j);
    if digits < needed {
        return Err(Error::InsufficientPrecision {
            what: format!("closed form at index {j}"),
            needed,
            have: digits,
        });
    }
    let sqrt2 = PrecisionDecimal::sqrt_integer(&BigInt::from(2), digits)?;
    let alpha = PrecisionDecimal::from_int(17) + PrecisionDecimal::from_int(12) * sqrt2;
    let alpha_j = pow_decimal(&alpha, j);
    let alpha_neg_j = PrecisionDecimal::from_int(1) / alpha_j.clone();
    let value =
        (alpha_j + alpha_neg_j - PrecisionDecimal::from_int(2)) / PrecisionDecimal::from_int(32);
    let rounded = value.round_half_away();
    let gap = (value - PrecisionDecimal::from_exact_at(&rounded, digits + 10)).abs_value();
    let half_ok = gap.clone() + gap < PrecisionDecimal::from_int(1);
    let verified =
        perfect_square_root(&rounded).is_some() && triangular_index(&rounded).is_some();
    if !half_ok || !verified {
        return Err(Error::InsufficientPrecision {
            what: format!("closed form at index {j} did not verify"),
            needed: needed + 10,
            have: digits,
        });
    }
    Ok(rounded)
}

/// A polygonal family: m-gonal numbers P_{m,n} = n((m-2)n - (m-4)) / 2.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PolygonalSpec {
    sides: u32,
}

impl PolygonalSpec {
    pub fn new(sides: u32) -> Result<Self> {
        if sides < 3 {
            return Err(Error::SidesTooSmall(sides));
        }
        Ok(PolygonalSpec { sides })
    }

    pub fn triangular() -> Self {
        PolygonalSpec { sides: 3 }
    }

    pub fn square() -> Self {
        PolygonalSpec { sides: 4 }
    }

    pub fn sides(&self) -> u32 {
        self.sides
    }
}

/// The n-th m-gonal number, exactly.
pub fn polygonal(spec: &PolygonalSpec, n: &ExactInteger) -> Result<ExactInteger> {
    if n.is_negative() {
        return Err(Error::NegativeInput {
            op: "polygonal",
            value: n.clone(),
        });
    }
    let m = BigInt::from(spec.sides);
    Ok(n * ((&m - 2) * n - (&m - 4)) / 2)
}

/// Brute-force scan: every k in [1, limit] whose triangular number T_k is a
/// perfect square, with exact m = k, n and a. This is the oracle the other
/// two generators are checked against.
///
/// Output is ordered by k and deterministic.
pub fn scan_square_triangulars(limit: u64) -> Vec<SquareTriangular> {
    assert!(limit >= 1, "scan limit must be positive");
    let mut out = Vec::new();
    let mut t: u128 = 0;
    for k in 1..=limit {
        t += k as u128;
        let root = t.isqrt();
        if root * root == t {
            let index = out.len() as u32 + 1;
            out.push(
                SquareTriangular::new(
                    index,
                    BigInt::from(t),
                    BigInt::from(k),
                    BigInt::from(root),
                    GeneratorSource::Scan,
                )
                .expect("scan hit satisfies both identities"),
            );
        }
    }
    out
}

/// One row of the decimal-part table: k, T_k, its root at the configured
/// digits, the exact integer part and the fractional remainder.
#[derive(Clone, Debug)]
pub struct ScanRow {
    pub k: u64,
    pub triangular: ExactInteger,
    pub root: PrecisionDecimal,
    pub integer_part: ExactInteger,
    pub decimal_part: PrecisionDecimal,
}

/// Reproduces the five-column presentation: integers / triangulars / roots /
/// integer parts / decimal parts. Perfect squares get an exactly zero
/// decimal part (the membership test itself is exact, not a float check).
pub fn decimal_part_table(from: u64, to: u64, cfg: &PrecisionConfig) -> Result<Vec<ScanRow>> {
    if from < 1 || from > to {
        return Err(Error::InvalidRange { from, to });
    }
    let digits = match cfg {
        PrecisionConfig::Decimal { digits } => *digits,
        PrecisionConfig::Float53 => {
            return Err(Error::BackendMismatch {
                expected: "decimal",
            })
        }
    };
    let mut rows = Vec::with_capacity((to - from + 1) as usize);
    for k in from..=to {
        let t = triangular(&BigInt::from(k))?;
        let ip = isqrt(&t)?;
        let (root, dec) = if &ip * &ip == t {
            (
                PrecisionDecimal::from_exact_at(&ip, digits),
                PrecisionDecimal::from_int(0),
            )
        } else {
            // The rounded root can graze the next integer; boost digits until
            // the fractional part is strictly below 1 (the true value is).
            let mut d = digits;
            loop {
                let root = PrecisionDecimal::sqrt_integer(&t, d)?;
                let dec = root.clone() - PrecisionDecimal::from_exact_at(&ip, d);
                if dec < PrecisionDecimal::from_int(1) {
                    break (root, dec);
                }
                d += 10;
            }
        };
        debug_assert!(dec >= PrecisionDecimal::from_int(0));
        rows.push(ScanRow {
            k,
            triangular: t,
            root,
            integer_part: ip,
            decimal_part: dec,
        });
    }
    Ok(rows)
}

/// Ascending values not exceeding `limit` that belong to both polygonal
/// families: a two-pointer merge over the two monotone sequences, O(1) memory.
/// Enumeration starts at n = 1, so results start at 1.
pub fn intersect_polygonal(
    s1: &PolygonalSpec,
    s2: &PolygonalSpec,
    limit: &ExactInteger,
) -> Vec<ExactInteger> {
    struct Gen {
        value: BigInt,
        delta: BigInt,
        step: BigInt,
    }
    impl Gen {
        fn new(spec: &PolygonalSpec) -> Self {
            // P(1) = 1; P(n+1) - P(n) = (m-2)n + 1
            Gen {
                value: BigInt::one(),
                delta: BigInt::from(spec.sides - 1),
                step: BigInt::from(spec.sides - 2),
            }
        }
        fn advance(&mut self) {
            self.value += &self.delta;
            self.delta += &self.step;
        }
    }

    let mut out = Vec::new();
    if limit < &BigInt::one() {
        return out;
    }
    let mut a = Gen::new(s1);
    let mut b = Gen::new(s2);
    while a.value <= *limit && b.value <= *limit {
        match a.value.cmp(&b.value) {
            std::cmp::Ordering::Less => a.advance(),
            std::cmp::Ordering::Greater => b.advance(),
            std::cmp::Ordering::Equal => {
                out.push(a.value.clone());
                a.advance();
                b.advance();
            }
        }
    }
    out
}

/// OEIS b-file export: one "index value" ASCII line per term, 1-based unless
/// another start index is given, newline-terminated.
pub fn write_bfile<W: Write>(
    w: &mut W,
    values: &[ExactInteger],
    start_index: u64,
) -> io::Result<()> {
    for (offset, v) in values.iter().enumerate() {
        writeln!(w, "{} {}", start_index + offset as u64, v)?;
    }
    Ok(())
}
