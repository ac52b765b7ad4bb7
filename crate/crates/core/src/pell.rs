//! Solutions of the Pell equation t^2 - 2s^2 = 1.
//!
//! The fundamental solution (3, 2) comes from the first convergent of the
//! continued fraction of sqrt(2) = [1; 2, 2, 2, ...]; every further solution
//! is a power of (3 + 2*sqrt(2)) and obeys the recurrence
//! t' = 3t + 4s, s' = 2t + 3s.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::ExactInteger;

/// An indexed solution of t^2 - 2s^2 = 1 with t odd and s even.
///
/// Construction always re-checks the invariants exactly, so a value of this
/// type is proof that (t, s) solves the equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PellSolution {
    index: u32,
    t: ExactInteger,
    s: ExactInteger,
}

impl PellSolution {
    pub fn new(index: u32, t: ExactInteger, s: ExactInteger) -> Result<Self> {
        assert!(index >= 1, "Pell solutions are indexed from 1");
        if &t * &t - 2 * &s * &s != BigInt::one() {
            return Err(Error::PellInvariant { t, s });
        }
        if t.is_even() || s.is_odd() {
            return Err(Error::PellParity { t, s });
        }
        Ok(PellSolution { index, t, s })
    }

    /// The smallest positive solution (3, 2), index 1.
    pub fn fundamental() -> Self {
        PellSolution {
            index: 1,
            t: BigInt::from(3),
            s: BigInt::from(2),
        }
    }

    /// The next solution: t' = 3t + 4s, s' = 2t + 3s.
    pub fn next(&self) -> Result<Self> {
        let t = 3 * &self.t + 4 * &self.s;
        let s = 2 * &self.t + 3 * &self.s;
        PellSolution::new(self.index + 1, t, s)
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn t(&self) -> &ExactInteger {
        &self.t
    }

    pub fn s(&self) -> &ExactInteger {
        &self.s
    }
}

/// Element of Z[sqrt(2)]: x + y*sqrt(2).
#[derive(Clone)]
struct RingPair {
    x: BigInt,
    y: BigInt,
}

impl RingPair {
    fn one() -> Self {
        RingPair {
            x: BigInt::one(),
            y: BigInt::zero(),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        RingPair {
            x: &self.x * &other.x + 2 * &self.y * &other.y,
            y: &self.x * &other.y + &self.y * &other.x,
        }
    }

    fn pow(mut self, mut n: u32) -> Self {
        let mut acc = RingPair::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&self);
            }
            n >>= 1;
            if n > 0 {
                self = self.mul(&self);
            }
        }
        acc
    }
}

/// The i-th solution (i >= 1) via exact exponentiation of (3 + 2*sqrt(2))^i.
///
/// Equal to i-1 applications of [`PellSolution::next`] to the fundamental
/// solution; the equivalence is oracle-tested.
pub fn solution(i: u32) -> PellSolution {
    assert!(i >= 1, "Pell solutions are indexed from 1");
    let base = RingPair {
        x: BigInt::from(3),
        y: BigInt::from(2),
    };
    let p = base.pow(i);
    PellSolution::new(i, p.x, p.y).expect("powers of the fundamental solution are solutions")
}

/// A convergent of the continued fraction of sqrt(2).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    numerator: ExactInteger,
    denominator: ExactInteger,
    depth: u32,
}

impl Convergent {
    pub fn numerator(&self) -> &ExactInteger {
        &self.numerator
    }

    pub fn denominator(&self) -> &ExactInteger {
        &self.denominator
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }
}

/// Convergents of sqrt(2) = [1; 2, 2, 2, ...] for depths 0..=depth, in order.
///
/// p_k = 2 p_{k-1} + p_{k-2}, q_k likewise; depth 0 is the integer part 1/1.
pub fn sqrt2_convergents(depth: u32) -> Vec<Convergent> {
    let mut out = Vec::with_capacity(depth as usize + 1);
    // virtual k = -1 convergent is 1/0; k = 0 is the integer part 1/1
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    let (mut p, mut q) = (BigInt::one(), BigInt::one());
    out.push(Convergent {
        numerator: p.clone(),
        denominator: q.clone(),
        depth: 0,
    });
    for k in 1..=depth {
        let p_next = 2 * &p + &p_prev;
        let q_next = 2 * &q + &q_prev;
        p_prev = std::mem::replace(&mut p, p_next);
        q_prev = std::mem::replace(&mut q, q_next);
        debug_assert!(p.gcd(&q).is_one());
        out.push(Convergent {
            numerator: p.clone(),
            denominator: q.clone(),
            depth: k,
        });
    }
    out
}
