//! Interval arithmetic with exact rational endpoints.
//!
//! Rational operations (`+`, `-`, `*`, `/`, integer powers) are exact, so
//! intervals built from rational data stay degenerate. Width only appears
//! where a value is genuinely irrational (roots, `e`, logs, real powers);
//! those constructors take a precision in bits and return an enclosure of
//! width at most `2^-prec`.

use crate::error::{Error, Result};
use crate::ratio::pow2;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;

/// Default starting precision (bits) for certified comparisons.
pub const DEFAULT_PRECISION: u32 = 128;
/// Ceiling of the precision escalation ladder.
pub const MAX_PRECISION: u32 = 2048;

/// Doubling ladder for retrying indeterminate comparisons.
#[derive(Debug, Clone, Copy)]
pub struct PrecisionLadder {
    pub start: u32,
    pub max: u32,
}

impl Default for PrecisionLadder {
    fn default() -> Self {
        PrecisionLadder {
            start: DEFAULT_PRECISION,
            max: MAX_PRECISION,
        }
    }
}

impl PrecisionLadder {
    pub fn new(start: u32, max: u32) -> Self {
        PrecisionLadder { start, max }
    }

    pub fn steps(&self) -> impl Iterator<Item = u32> {
        let start = self.start;
        let max = self.max;
        std::iter::successors(Some(start), move |&p| {
            let next = p.saturating_mul(2);
            (p < max).then_some(next.min(max))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi, "inverted interval");
        Interval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        Interval {
            lo: q.clone(),
            hi: q,
        }
    }

    pub fn zero() -> Self {
        Interval::point(BigRational::zero())
    }

    pub fn one() -> Self {
        Interval::point(BigRational::one())
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo + &other.lo, &self.hi + &other.hi)
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval::new(&self.lo - &other.hi, &self.hi - &other.lo)
    }

    pub fn neg(&self) -> Interval {
        Interval::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let cands = [
            &self.lo * &other.lo,
            &self.lo * &other.hi,
            &self.hi * &other.lo,
            &self.hi * &other.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    pub fn mul_rational(&self, q: &BigRational) -> Interval {
        if q.is_negative() {
            Interval::new(&self.hi * q, &self.lo * q)
        } else {
            Interval::new(&self.lo * q, &self.hi * q)
        }
    }

    /// Reciprocal; the interval must not contain zero.
    pub fn recip(&self) -> Result<Interval> {
        if !(self.lo.is_positive() || self.hi.is_negative()) {
            return Err(Error::InvalidInput(
                "reciprocal of interval containing zero".into(),
            ));
        }
        Ok(Interval::new(self.hi.recip(), self.lo.recip()))
    }

    pub fn div(&self, other: &Interval) -> Result<Interval> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power with sign handling.
    pub fn powi(&self, n: u64) -> Interval {
        if n == 0 {
            return Interval::one();
        }
        let lo_p = pow_rat(&self.lo, n);
        let hi_p = pow_rat(&self.hi, n);
        if n % 2 == 1 {
            Interval::new(lo_p, hi_p)
        } else if !self.lo.is_negative() {
            Interval::new(lo_p, hi_p)
        } else if !self.hi.is_positive() {
            Interval::new(hi_p, lo_p)
        } else {
            Interval::new(BigRational::zero(), lo_p.max(hi_p))
        }
    }

    /// Outward rounding of the endpoints to dyadic rationals with `prec`
    /// fractional bits; keeps long exact computations from ballooning.
    pub fn compress(&self, prec: u32) -> Interval {
        Interval::new(
            round_dyadic(&self.lo, prec, false),
            round_dyadic(&self.hi, prec, true),
        )
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// Certified three-way comparison against a rational.
    /// Returns `None` when `q` lies strictly inside the interval.
    pub fn cmp_rational(&self, q: &BigRational) -> Option<Ordering> {
        if &self.hi < q {
            Some(Ordering::Less)
        } else if &self.lo > q {
            Some(Ordering::Greater)
        } else if self.is_point() && &self.lo == q {
            Some(Ordering::Equal)
        } else {
            None
        }
    }

    /// True iff the whole interval is `<= q`.
    pub fn le_rational(&self, q: &BigRational) -> bool {
        self.hi <= *q
    }

    /// True iff the whole interval is `>= q`.
    pub fn ge_rational(&self, q: &BigRational) -> bool {
        self.lo >= *q
    }

    /// Certified `self <= other`: `Some(true)` when every pair of values
    /// satisfies it, `Some(false)` when none does, else `None`.
    pub fn certified_le(&self, other: &Interval) -> Option<bool> {
        if self.hi <= other.lo {
            Some(true)
        } else if self.lo > other.hi {
            Some(false)
        } else {
            None
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        mid.to_f64().unwrap_or(f64::NAN)
    }
}

pub fn pow_rat(q: &BigRational, n: u64) -> BigRational {
    if n == 0 {
        return BigRational::one();
    }
    let mut base = q.clone();
    let mut acc = BigRational::one();
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = &base * &base;
        }
    }
    acc
}

fn round_dyadic(q: &BigRational, prec: u32, up: bool) -> BigRational {
    let scale = pow2(prec as i64);
    let scaled = q * &scale;
    let floor = scaled.floor();
    let n = if up && scaled != floor {
        floor.to_integer() + 1
    } else {
        floor.to_integer()
    };
    BigRational::from_integer(n) / scale
}

/// Enclosure of Euler's number to width `<= 2^-prec`.
pub fn euler(prec: u32) -> Interval {
    // e = sum 1/i!; tail after N is below 2/(N+1)!.
    let target = pow2(-(prec as i64 + 1));
    let mut sum = BigRational::zero();
    let mut term = BigRational::one(); // 1/0!
    let mut i: u64 = 0;
    loop {
        sum += &term;
        i += 1;
        term /= BigRational::from_integer(BigInt::from(i));
        let tail = &term * BigRational::from_integer(BigInt::from(2));
        if tail < target {
            return Interval::new(sum.clone(), sum + tail);
        }
    }
}

/// Enclosure of `e^n` for integer `n`.
pub fn euler_pow(n: i64, prec: u32) -> Interval {
    if n == 0 {
        return Interval::one();
    }
    // Guard bits so the powered width stays near 2^-prec at small |n|.
    let guard = prec + 8 + 4 * n.unsigned_abs() as u32;
    let e = euler(guard);
    let p = e.powi(n.unsigned_abs());
    if n > 0 {
        p
    } else {
        p.recip().expect("e^n positive")
    }
}

/// Enclosure of the nonnegative k-th root of a nonnegative rational, exact
/// when the operand is a perfect k-th power.
pub fn kth_root(x: &BigRational, k: u32, prec: u32) -> Result<Interval> {
    if k == 0 {
        return Err(Error::InvalidInput("0th root".into()));
    }
    if x.is_negative() {
        return Err(Error::InvalidInput("root of negative value".into()));
    }
    if x.is_zero() {
        return Ok(Interval::zero());
    }
    if k == 1 {
        return Ok(Interval::point(x.clone()));
    }
    // Exact case: numerator and denominator both perfect k-th powers.
    let nr = x.numer().nth_root(k);
    let dr = x.denom().nth_root(k);
    if &nr.pow(k) == x.numer() && &dr.pow(k) == x.denom() {
        return Ok(Interval::point(BigRational::new(nr, dr)));
    }
    // Scale so one integer root yields prec bits: with y = floor(x * 2^{k*m}),
    // root(y) = u gives x^{1/k} in [u, u+1] / 2^m.
    let m = prec as i64 + 1;
    let scaled = x * pow2(k as i64 * m);
    let y = scaled.floor().to_integer();
    let u = y.nth_root(k);
    let denom = pow2(m);
    let lo = BigRational::from_integer(u.clone()) / &denom;
    let hi = BigRational::from_integer(u + BigInt::one()) / &denom;
    Ok(Interval::new(lo, hi))
}

/// Enclosure of `ln x` for positive rational `x`.
pub fn ln_rational(x: &BigRational, prec: u32) -> Result<Interval> {
    if !x.is_positive() {
        return Err(Error::InvalidInput("log of nonpositive value".into()));
    }
    let guard = prec + 16;
    // Normalize x = 2^s * y with y in [1, 2).
    let mut y = x.clone();
    let mut s: i64 = 0;
    let two = BigRational::from_integer(BigInt::from(2));
    let one = BigRational::one();
    while y >= two {
        y /= &two;
        s += 1;
    }
    while y < one {
        y *= &two;
        s -= 1;
    }
    let ln_y = atanh_series(&((&y - &one) / (&y + &one)), guard);
    if s == 0 {
        return Ok(ln_y);
    }
    let ln2 = atanh_series(&BigRational::new(BigInt::one(), BigInt::from(3)), guard);
    Ok(ln_y.add(&ln2.mul_rational(&BigRational::from_integer(BigInt::from(s)))))
}

/// Enclosure of `2 * atanh(u) = ln((1+u)/(1-u))` for `0 <= u <= 1/3`.
fn atanh_series(u: &BigRational, prec: u32) -> Interval {
    debug_assert!(!u.is_negative() && u <= &BigRational::new(BigInt::one(), BigInt::from(3)));
    if u.is_zero() {
        return Interval::zero();
    }
    let target = pow2(-(prec as i64));
    let u2 = u * u;
    let mut sum = BigRational::zero();
    let mut pow = u.clone(); // u^{2t+1}
    let mut t: u64 = 0;
    loop {
        sum += &pow * BigRational::new(BigInt::from(2), BigInt::from(2 * t + 1));
        pow *= &u2;
        t += 1;
        // tail: 2 * sum_{s>=t} u^{2s+1}/(2s+1) <= 2*u^{2t+1} / ((2t+1)(1-u^2))
        let tail = &pow * BigRational::new(BigInt::from(2), BigInt::from(2 * t + 1))
            / (BigRational::one() - &u2);
        if tail < target {
            return Interval::new(sum.clone(), sum + tail);
        }
    }
}

/// Enclosure of `e^z` for rational `z`.
pub fn exp_rational(z: &BigRational, prec: u32) -> Interval {
    let guard = prec + 16;
    // Split z = w + f with integer w and |f| <= 1/2.
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let w_rat = (z + &half).floor();
    let w = w_rat.to_integer();
    let f = z - BigRational::from_integer(w.clone());
    debug_assert!(f.abs() <= half);
    // Taylor for e^f with rigorous alternating-safe tail.
    let target = pow2(-(guard as i64));
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    let mut i: u64 = 0;
    loop {
        i += 1;
        term = term * &f / BigRational::from_integer(BigInt::from(i));
        sum += &term;
        let tail = term.abs() * BigRational::from_integer(BigInt::from(2));
        if tail < target && i >= 2 {
            let lo = &sum - &tail;
            let hi = &sum + &tail;
            let ef = Interval::new(lo, hi);
            let w_i64 = w.to_i64().expect("exponent fits i64");
            return ef.mul(&euler_pow(w_i64, guard));
        }
    }
}

/// Enclosure of `e^z` for an interval exponent.
pub fn exp_interval(z: &Interval, prec: u32) -> Interval {
    let lo = exp_rational(z.lo(), prec);
    let hi = exp_rational(z.hi(), prec);
    Interval::new(lo.lo().clone(), hi.hi().clone())
}

/// Enclosure of `x^y` for positive rational base and interval exponent.
pub fn pow_interval_exp(x: &BigRational, y: &Interval, prec: u32) -> Result<Interval> {
    let lnx = ln_rational(x, prec + 16)?;
    let t = y.mul(&lnx);
    Ok(exp_interval(&t, prec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{parse_rational, rat, rat_int};

    #[test]
    fn euler_known_digits() {
        let e = euler(80);
        // 2.71828182845904523536...
        let lo = parse_rational("2.718281828459045235").unwrap();
        let hi = parse_rational("2.718281828459045236").unwrap();
        assert!(e.lo() >= &lo && e.hi() <= &hi, "e enclosure too wide");
    }

    #[test]
    fn root_exact_and_enclosed() {
        let r = kth_root(&rat(4, 9), 2, 128).unwrap();
        assert!(r.is_point());
        assert_eq!(r.lo(), &rat(2, 3));

        let s = kth_root(&rat_int(2), 2, 100).unwrap();
        // 1.41421356237309504880...
        let lo = parse_rational("1.414213562373095048").unwrap();
        let hi = parse_rational("1.414213562373095049").unwrap();
        assert!(s.lo() <= &hi && s.hi() >= &lo);
        assert!(s.powi(2).contains(&rat_int(2)));
        assert!(s.width() <= pow2(-100));
    }

    #[test]
    fn ln_and_exp_consistency() {
        let l2 = ln_rational(&rat_int(2), 80).unwrap();
        // ln 2 = 0.69314718055994530941...
        let lo = parse_rational("0.693147180559945309").unwrap();
        let hi = parse_rational("0.693147180559945310").unwrap();
        assert!(l2.lo() <= &hi && l2.hi() >= &lo);

        // exp(ln 10) should enclose 10.
        let l10 = ln_rational(&rat_int(10), 100).unwrap();
        let back = exp_interval(&l10, 100);
        assert!(back.contains(&rat_int(10)));
    }

    #[test]
    fn exp_negative_argument() {
        let v = exp_rational(&rat_int(-1), 80);
        // 1/e = 0.36787944117144232159...
        let lo = parse_rational("0.367879441171442321").unwrap();
        let hi = parse_rational("0.367879441171442322").unwrap();
        assert!(v.lo() <= &hi && v.hi() >= &lo);
    }

    #[test]
    fn pow_interval_exponent() {
        // 2^(1/2) via exp/ln path must agree with direct root.
        let half = Interval::point(rat(1, 2));
        let a = pow_interval_exp(&rat_int(2), &half, 90).unwrap();
        let b = kth_root(&rat_int(2), 2, 90).unwrap();
        assert!(a.lo() <= b.hi() && b.lo() <= a.hi(), "enclosures disjoint");
    }

    #[test]
    fn interval_mul_signs() {
        let a = Interval::new(rat(-2, 1), rat(3, 1));
        let b = Interval::new(rat(-1, 1), rat(4, 1));
        let c = a.mul(&b);
        assert_eq!(c.lo(), &rat(-8, 1));
        assert_eq!(c.hi(), &rat(12, 1));
    }

    #[test]
    fn powi_even_straddling() {
        let a = Interval::new(rat(-3, 1), rat(2, 1));
        let sq = a.powi(2);
        assert_eq!(sq.lo(), &rat_int(0));
        assert_eq!(sq.hi(), &rat_int(9));
    }

    #[test]
    fn compress_is_outward() {
        let x = Interval::point(rat(1, 3));
        let c = x.compress(8);
        assert!(c.lo() <= x.lo() && c.hi() >= x.hi());
        assert!(c.width() <= pow2(-7));
    }

    #[test]
    fn ladder_steps() {
        let l = PrecisionLadder::new(128, 2048);
        let steps: Vec<u32> = l.steps().collect();
        assert_eq!(steps, vec![128, 256, 512, 1024, 2048]);
    }
}
