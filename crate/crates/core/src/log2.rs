//! Exact comparisons against base-2 logarithms of integers.
//!
//! Every size bound and threshold in this crate has the shape "integer
//! expression vs. `c * log2(s)`". For `s` a power of two the logarithm is an
//! integer; otherwise it is irrational, so a comparison with any rational is
//! never an equality and can be decided by narrowing a rational bracket
//! around `log2(s)` until the answer is forced.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};

/// `log2(s)` for a positive integer `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Log2 {
    s: u64,
}

const MAX_DIGITS: u32 = 1 << 15;

impl Log2 {
    pub fn of(s: u64) -> Self {
        assert!(s >= 1, "log2 of zero");
        Log2 { s }
    }

    pub fn argument(&self) -> u64 {
        self.s
    }

    /// The integer value when `s` is a power of two.
    pub fn exact(&self) -> Option<u32> {
        self.s.is_power_of_two().then(|| self.s.trailing_zeros())
    }

    pub fn approx(&self) -> f64 {
        (self.s as f64).log2()
    }

    /// Rational bounds `lo < log2(s) < hi` with `hi - lo = 2^-r`, `r <= digits`.
    ///
    /// The fractional binary digits are produced by repeated squaring of
    /// `s / 2^floor(log2 s)` in fixed point, tracking a floor-rounded lower
    /// and a ceil-rounded upper bound. Extraction stops early when the two
    /// bounds disagree on a digit.
    pub fn bracket(&self, digits: u32) -> (BigRational, BigRational) {
        let int_part = 63 - self.s.leading_zeros();
        if self.s.is_power_of_two() {
            let v = BigRational::from_integer(BigInt::from(int_part));
            return (v.clone(), v);
        }
        let precision = (digits + 64) as usize;
        let one = BigUint::one() << precision;
        let two = BigUint::one() << (precision + 1);
        let round_up = &one - BigUint::one();
        let mut lo = BigUint::from(self.s) << (precision - int_part as usize);
        let mut hi = lo.clone();
        let mut frac = BigUint::zero();
        let mut taken = 0u32;
        for _ in 0..digits {
            lo = (&lo * &lo) >> precision;
            hi = (&hi * &hi + &round_up) >> precision;
            let bit = if lo >= two {
                lo >>= 1;
                hi = (hi + 1u32) >> 1;
                1u32
            } else if hi < two {
                0
            } else {
                break;
            };
            frac = (frac << 1) + bit;
            taken += 1;
        }
        let denom = BigInt::one() << taken as usize;
        let base = (BigInt::from(int_part) << taken as usize) + BigInt::from(frac);
        (
            BigRational::new(base.clone(), denom.clone()),
            BigRational::new(base + 1, denom),
        )
    }

    /// Compares `log2(s)^power` with `rhs`.
    pub fn pow_cmp(&self, power: u32, rhs: &BigRational) -> Ordering {
        if let Some(e) = self.exact() {
            let lhs = BigRational::from_integer(BigInt::from(e).pow(power));
            return lhs.cmp(rhs);
        }
        if power == 0 {
            return BigRational::one().cmp(rhs);
        }
        let mut digits = 64;
        while digits <= MAX_DIGITS {
            let (lo, hi) = self.bracket(digits);
            if Pow::pow(&lo, power) >= *rhs {
                return Ordering::Greater;
            }
            if Pow::pow(&hi, power) <= *rhs {
                return Ordering::Less;
            }
            digits *= 2;
        }
        unreachable!("log2({})^{} not separated from {} at {} digits", self.s, power, rhs, MAX_DIGITS)
    }

    pub fn cmp_ratio(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> Ordering {
        self.pow_cmp(1, &BigRational::new(num.into(), den.into()))
    }

    /// `log2(s) >= num / den`.
    pub fn at_least(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> bool {
        self.cmp_ratio(num, den) != Ordering::Less
    }

    /// `log2(s) <= num / den`.
    pub fn at_most(&self, num: impl Into<BigInt>, den: impl Into<BigInt>) -> bool {
        self.cmp_ratio(num, den) != Ordering::Greater
    }

    /// `value <= factor * log2(s)`.
    pub fn bounds(&self, value: u64, factor: u64) -> bool {
        value == 0 || (factor > 0 && self.at_least(value, factor))
    }

    /// Smallest integer `x >= 1` with `x * factor * log2(s) >= value`,
    /// i.e. `max(1, ceil(value / (factor * log2 s)))`.
    ///
    /// Panics when `s == 1` and `value > 0`: no such `x` exists.
    pub fn ceil_quotient(&self, value: u64, factor: u64) -> u64 {
        assert!(factor > 0);
        if value == 0 {
            return 1;
        }
        assert!(self.s > 1, "log2(1) = 0 divides nothing");
        let estimate = (value as f64 / (factor as f64 * self.approx())).ceil();
        let mut x = (estimate as u64).max(1);
        let fits = |x: u64| self.at_least(value, BigInt::from(x) * factor);
        while x > 1 && fits(x - 1) {
            x -= 1;
        }
        while !fits(x) {
            x += 1;
        }
        x
    }

    /// Largest integer `x >= 0` with `x * factor * log2(s) <= value`.
    pub fn floor_quotient(&self, value: u64, factor: u64) -> u64 {
        assert!(factor > 0);
        if self.s == 1 {
            return u64::MAX;
        }
        let estimate = (value as f64 / (factor as f64 * self.approx())).floor();
        let mut x = estimate.max(0.0) as u64;
        let fits = |x: u64| x == 0 || self.at_most(value, BigInt::from(x) * factor);
        while !fits(x) {
            x -= 1;
        }
        while fits(x + 1) {
            x += 1;
        }
        x
    }
}

impl fmt::Display for Log2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "log2({})", self.s)
    }
}

/// Lossy conversion used only for human-readable traces.
pub fn ratio_to_f64(r: &BigRational) -> f64 {
    let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000) as usize;
    let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
    let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
    n / d
}
