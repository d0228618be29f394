//! Positive real scalars carried symbolically where possible.
//!
//! Loss factors and probabilities in this domain are products of a rational,
//! an integer power of `e`, and a k-th root of a rational (for example `4e`,
//! `2^10 * e^2`, or `(sum g)^(-1/k)`). [`ExactForm`] keeps that shape exactly,
//! so integer powers stay exact and comparisons can escalate precision by
//! re-evaluating the form instead of failing.

use crate::error::{Error, Result};
use crate::interval::{euler_pow, kth_root, pow_rat, Interval, PrecisionLadder};
use crate::ratio::{format_rational, parse_rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// `q * e^e_pow * radicand^(1/root_k)` with `q >= 0`, `radicand > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactForm {
    q: BigRational,
    e_pow: i64,
    radicand: BigRational,
    root_k: u32,
}

impl ExactForm {
    pub fn zero() -> Self {
        ExactForm {
            q: BigRational::zero(),
            e_pow: 0,
            radicand: BigRational::one(),
            root_k: 1,
        }
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_rational(q: BigRational) -> Self {
        assert!(!q.is_negative(), "ExactForm holds nonnegative values");
        ExactForm {
            q,
            e_pow: 0,
            radicand: BigRational::one(),
            root_k: 1,
        }
    }

    pub fn e_scaled(q: BigRational, e_pow: i64) -> Self {
        let mut f = Self::from_rational(q);
        f.e_pow = e_pow;
        f.normalize();
        f
    }

    /// `q * radicand^(1/k)`.
    pub fn rooted(q: BigRational, radicand: BigRational, root_k: u32) -> Result<Self> {
        if root_k == 0 {
            return Err(Error::InvalidInput("0th root".into()));
        }
        if !radicand.is_positive() {
            return Err(Error::InvalidInput("radicand must be positive".into()));
        }
        let mut f = ExactForm {
            q,
            e_pow: 0,
            radicand,
            root_k,
        };
        if f.q.is_negative() {
            return Err(Error::InvalidInput("negative scale".into()));
        }
        f.normalize();
        Ok(f)
    }

    pub fn is_zero(&self) -> bool {
        self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.e_pow == 0 && self.root_k == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.is_rational().then_some(&self.q)
    }

    fn normalize(&mut self) {
        if self.q.is_zero() {
            *self = ExactForm::zero();
            return;
        }
        if self.radicand.is_one() {
            self.root_k = 1;
        }
        if self.root_k == 1 {
            self.q *= std::mem::replace(&mut self.radicand, BigRational::one());
            return;
        }
        // Fold perfect k-th powers into the rational part.
        let nr = self.radicand.numer().nth_root(self.root_k);
        let dr = self.radicand.denom().nth_root(self.root_k);
        if &nr.pow(self.root_k) == self.radicand.numer()
            && &dr.pow(self.root_k) == self.radicand.denom()
        {
            self.q *= BigRational::new(nr, dr);
            self.radicand = BigRational::one();
            self.root_k = 1;
        }
    }

    pub fn mul(&self, other: &ExactForm) -> ExactForm {
        if self.is_zero() || other.is_zero() {
            return ExactForm::zero();
        }
        let k = (self.root_k as u64).lcm(&(other.root_k as u64)) as u32;
        let r1 = pow_rat(&self.radicand, (k / self.root_k) as u64);
        let r2 = pow_rat(&other.radicand, (k / other.root_k) as u64);
        let mut f = ExactForm {
            q: &self.q * &other.q,
            e_pow: self.e_pow + other.e_pow,
            radicand: r1 * r2,
            root_k: k,
        };
        f.normalize();
        f
    }

    pub fn mul_rational(&self, q: &BigRational) -> ExactForm {
        self.mul(&ExactForm::from_rational(q.clone()))
    }

    pub fn recip(&self) -> Result<ExactForm> {
        if self.is_zero() {
            return Err(Error::InvalidInput("reciprocal of zero".into()));
        }
        let mut f = ExactForm {
            q: self.q.recip(),
            e_pow: -self.e_pow,
            radicand: self.radicand.recip(),
            root_k: self.root_k,
        };
        f.normalize();
        Ok(f)
    }

    pub fn div(&self, other: &ExactForm) -> Result<ExactForm> {
        Ok(self.mul(&other.recip()?))
    }

    /// Integer power; always exact.
    pub fn powi(&self, n: u64) -> ExactForm {
        if n == 0 {
            return ExactForm::one();
        }
        if self.is_zero() {
            return ExactForm::zero();
        }
        let k = self.root_k as u64;
        let whole = n / k;
        let rem = n % k;
        let mut f = ExactForm {
            q: pow_rat(&self.q, n) * pow_rat(&self.radicand, whole),
            e_pow: self.e_pow * n as i64,
            radicand: pow_rat(&self.radicand, rem),
            root_k: self.root_k,
        };
        f.normalize();
        f
    }

    /// k-th root; exact in form.
    pub fn root(&self, k: u32) -> Result<ExactForm> {
        if k == 0 {
            return Err(Error::InvalidInput("0th root".into()));
        }
        if self.is_zero() {
            return Ok(ExactForm::zero());
        }
        if self.e_pow % k as i64 != 0 {
            return Err(Error::InvalidInput(
                "root of e-power not representable".into(),
            ));
        }
        // (q * r^(1/rk))^(1/k) = (q^rk * r)^(1/(rk*k))
        let mut f = ExactForm {
            q: BigRational::one(),
            e_pow: self.e_pow / k as i64,
            radicand: pow_rat(&self.q, self.root_k as u64) * self.radicand.clone(),
            root_k: self.root_k * k,
        };
        f.normalize();
        Ok(f)
    }

    pub fn to_interval(&self, prec: u32) -> Interval {
        if self.is_zero() {
            return Interval::zero();
        }
        let mut iv = Interval::point(self.q.clone());
        if self.e_pow != 0 {
            iv = iv.mul(&euler_pow(self.e_pow, prec + 8));
        }
        if self.root_k > 1 {
            let r = kth_root(&self.radicand, self.root_k, prec + 8)
                .expect("radicand positive by invariant");
            iv = iv.mul(&r);
        }
        iv
    }

    /// Certified three-way comparison. Rational-versus-rational (after
    /// clearing matching `e` powers and roots) is decided exactly; genuinely
    /// transcendental gaps are resolved through the precision ladder.
    pub fn cmp(&self, other: &ExactForm, ladder: &PrecisionLadder) -> Result<Ordering> {
        if self.is_zero() && other.is_zero() {
            return Ok(Ordering::Equal);
        }
        if self.is_zero() {
            return Ok(Ordering::Less);
        }
        if other.is_zero() {
            return Ok(Ordering::Greater);
        }
        let ratio = self.div(other)?;
        if ratio.e_pow == 0 {
            // Compare rad^(1/k) against (1/q)^1 by raising to the k-th power.
            let lhs = ratio.radicand.clone();
            let rhs = pow_rat(&ratio.q.recip(), ratio.root_k as u64);
            return Ok(lhs.cmp(&rhs));
        }
        let one = BigRational::one();
        for prec in ladder.steps() {
            let iv = ratio.to_interval(prec);
            if let Some(ord) = iv.cmp_rational(&one) {
                return Ok(ord);
            }
        }
        Err(Error::IndeterminateAtPrecision(ladder.max))
    }

    pub fn certified_le(&self, other: &ExactForm, ladder: &PrecisionLadder) -> Result<bool> {
        Ok(self.cmp(other, ladder)? != Ordering::Greater)
    }

    /// Smallest integer `>= value`, certified.
    pub fn ceil(&self, ladder: &PrecisionLadder) -> Result<BigInt> {
        if let Some(q) = self.as_rational() {
            return Ok(q.ceil().to_integer());
        }
        for prec in ladder.steps() {
            let iv = self.to_interval(prec);
            let lo_ceil = iv.lo().ceil().to_integer();
            let hi_ceil = iv.hi().ceil().to_integer();
            if lo_ceil == hi_ceil {
                return Ok(lo_ceil);
            }
        }
        Err(Error::IndeterminateAtPrecision(ladder.max))
    }
}

impl fmt::Display for ExactForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = Vec::new();
        let q_is_one = self.q.is_one();
        let has_tail = self.e_pow != 0 || self.root_k > 1;
        if !q_is_one || !has_tail {
            parts.push(format_rational(&self.q));
        }
        match self.e_pow {
            0 => {}
            1 => parts.push("e".into()),
            p => parts.push(format!("e^{}", p)),
        }
        if self.root_k > 1 {
            parts.push(format!(
                "root({},{})",
                format_rational(&self.radicand),
                self.root_k
            ));
        }
        // "4e" reads better than "4*e" for the ubiquitous loss constants.
        if parts.len() == 2 && parts[1] == "e" {
            return write!(f, "{}e", parts[0]);
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Parse the `Display` format back: `rat`, `rat e`, `e^k`, `root(r,k)` joined
/// by `*`, plus the compact `4e` form.
pub fn parse_exact_form(s: &str) -> Result<ExactForm> {
    let s = s.trim();
    if s == "0" {
        return Ok(ExactForm::zero());
    }
    let mut q = BigRational::one();
    let mut e_pow: i64 = 0;
    let mut radicand = BigRational::one();
    let mut root_k: u32 = 1;
    for raw in s.split('*') {
        let tok = raw.trim();
        if tok == "e" {
            e_pow += 1;
        } else if let Some(p) = tok.strip_prefix("e^") {
            e_pow += p
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad e power in {:?}", s)))?;
        } else if let Some(body) = tok.strip_prefix("root(") {
            let body = body
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed root in {:?}", s)))?;
            let (r, k) = body
                .rsplit_once(',')
                .ok_or_else(|| Error::Parse(format!("bad root in {:?}", s)))?;
            let k: u32 = k
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad root index in {:?}", s)))?;
            let r = parse_rational(r)?;
            // accumulate under a common root
            let lcm = (root_k as u64).lcm(&(k as u64)) as u32;
            radicand = pow_rat(&radicand, (lcm / root_k) as u64) * pow_rat(&r, (lcm / k) as u64);
            root_k = lcm;
        } else if let Some(num) = tok.strip_suffix('e') {
            // compact "4e"
            if num.is_empty() {
                e_pow += 1;
            } else {
                q *= parse_rational(num)?;
                e_pow += 1;
            }
        } else {
            q *= parse_rational(tok)?;
        }
    }
    if q.is_negative() {
        return Err(Error::Parse("negative constant".into()));
    }
    let mut f = ExactForm {
        q,
        e_pow,
        radicand,
        root_k,
    };
    f.normalize();
    Ok(f)
}

/// A positive real: an interval enclosure plus, when available, the exact
/// symbolic form it was computed from (enabling refinement).
#[derive(Debug, Clone)]
pub struct RealNum {
    iv: Interval,
    form: Option<ExactForm>,
}

impl RealNum {
    pub fn from_rational(q: BigRational) -> Self {
        RealNum {
            iv: Interval::point(q.clone()),
            form: Some(ExactForm::from_rational(q)),
        }
    }

    pub fn from_form(form: ExactForm, prec: u32) -> Self {
        RealNum {
            iv: form.to_interval(prec),
            form: Some(form),
        }
    }

    pub fn from_interval(iv: Interval) -> Self {
        RealNum { iv, form: None }
    }

    pub fn interval(&self) -> &Interval {
        &self.iv
    }

    pub fn form(&self) -> Option<&ExactForm> {
        self.form.as_ref()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.form.as_ref().and_then(|f| f.as_rational())
    }

    /// Interval at the requested precision (refined from the form when known).
    pub fn iv_at(&self, prec: u32) -> Interval {
        match &self.form {
            Some(f) => f.to_interval(prec),
            None => self.iv.clone(),
        }
    }

    pub fn mul(&self, other: &RealNum, prec: u32) -> RealNum {
        let form = match (&self.form, &other.form) {
            (Some(a), Some(b)) => Some(a.mul(b)),
            _ => None,
        };
        match form {
            Some(f) => RealNum::from_form(f, prec),
            None => RealNum::from_interval(self.iv_at(prec).mul(&other.iv_at(prec))),
        }
    }

    pub fn div(&self, other: &RealNum, prec: u32) -> Result<RealNum> {
        if let (Some(a), Some(b)) = (&self.form, &other.form) {
            return Ok(RealNum::from_form(a.div(b)?, prec));
        }
        Ok(RealNum::from_interval(
            self.iv_at(prec).div(&other.iv_at(prec))?,
        ))
    }

    pub fn div_form(&self, d: &ExactForm, prec: u32) -> Result<RealNum> {
        if let Some(a) = &self.form {
            return Ok(RealNum::from_form(a.div(d)?, prec));
        }
        Ok(RealNum::from_interval(
            self.iv_at(prec).div(&d.to_interval(prec))?,
        ))
    }

    pub fn powi(&self, n: u64, prec: u32) -> RealNum {
        match &self.form {
            Some(f) => RealNum::from_form(f.powi(n), prec),
            None => RealNum::from_interval(self.iv_at(prec).powi(n)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    fn ladder() -> PrecisionLadder {
        PrecisionLadder::default()
    }

    #[test]
    fn form_display_and_parse() {
        let four_e = ExactForm::e_scaled(rat_int(4), 1);
        assert_eq!(four_e.to_string(), "4e");
        assert_eq!(parse_exact_form("4e").unwrap(), four_e);

        let l = ExactForm::e_scaled(rat_int(1024), 2);
        assert_eq!(l.to_string(), "1024*e^2");
        assert_eq!(parse_exact_form("1024*e^2").unwrap(), l);

        let r = ExactForm::rooted(rat_int(4), rat(1, 10), 2).unwrap();
        assert_eq!(r.to_string(), "4*root(1/10,2)");
        assert_eq!(parse_exact_form(&r.to_string()).unwrap(), r);

        assert_eq!(parse_exact_form("1/2").unwrap().to_string(), "1/2");
        assert_eq!(parse_exact_form("0").unwrap(), ExactForm::zero());
        assert_eq!(parse_exact_form("e").unwrap().to_string(), "e");
    }

    #[test]
    fn perfect_roots_fold() {
        let f = ExactForm::rooted(rat_int(1), rat(8, 27), 3).unwrap();
        assert_eq!(f.as_rational(), Some(&rat(2, 3)));
    }

    #[test]
    fn powers_are_exact() {
        // (4 * n^(1/2))^2 = 16 n, with n = 10.
        let l = ExactForm::rooted(rat_int(4), rat_int(10), 2).unwrap();
        let sq = l.powi(2);
        assert_eq!(sq.as_rational(), Some(&rat_int(160)));
    }

    #[test]
    fn e_powers_cancel_in_division() {
        let a = ExactForm::e_scaled(rat_int(8), 1); // 8e
        let b = ExactForm::e_scaled(rat_int(2), 1); // 2e
        let r = a.div(&b).unwrap();
        assert_eq!(r.as_rational(), Some(&rat_int(4)));
    }

    #[test]
    fn cmp_exact_root_vs_rational() {
        // root(2,2) vs 3/2: 2 vs 9/4 -> less
        let s = ExactForm::rooted(rat_int(1), rat_int(2), 2).unwrap();
        let t = ExactForm::from_rational(rat(3, 2));
        assert_eq!(s.cmp(&t, &ladder()).unwrap(), Ordering::Less);
        let u = ExactForm::from_rational(rat(7, 5));
        assert_eq!(s.cmp(&u, &ladder()).unwrap(), Ordering::Greater);
    }

    #[test]
    fn cmp_with_euler_escalates() {
        // e vs 2.718281828 (just below e)
        let e = ExactForm::e_scaled(rat_int(1), 1);
        let below = ExactForm::from_rational(rat(2718281828, 1000000000));
        assert_eq!(e.cmp(&below, &ladder()).unwrap(), Ordering::Greater);
        let above = ExactForm::from_rational(rat(2718281829, 1000000000));
        assert_eq!(e.cmp(&above, &ladder()).unwrap(), Ordering::Less);
    }

    #[test]
    fn ceil_of_forms() {
        let f = ExactForm::e_scaled(rat_int(1), 1); // e
        assert_eq!(f.ceil(&ladder()).unwrap(), BigInt::from(3));
        let g = ExactForm::from_rational(rat_int(3));
        assert_eq!(g.ceil(&ladder()).unwrap(), BigInt::from(3));
        let h = ExactForm::from_rational(rat(7, 2));
        assert_eq!(h.ceil(&ladder()).unwrap(), BigInt::from(4));
    }

    #[test]
    fn root_of_form() {
        // (1/45)^(-1) = 45; p = 45^(-1/2): p^2 = 1/45 exactly.
        let sum = ExactForm::from_rational(rat_int(45));
        let p = sum.recip().unwrap().root(2).unwrap();
        assert_eq!(p.powi(2).as_rational(), Some(&rat(1, 45)));
    }

    #[test]
    fn realnum_exactness_propagates() {
        let p = RealNum::from_rational(rat(1, 2));
        let l = ExactForm::rooted(rat_int(4), rat_int(10), 2).unwrap();
        let scaled = p.div_form(&l, 64).unwrap();
        let w = scaled.powi(2, 64);
        assert_eq!(
            w.form().and_then(|f| f.as_rational()),
            Some(&rat(1, 640)) // (1/2)^2 / (16*10)
        );
    }
}
