//! Sparse weight functions on nonempty subsets of a ground set.

use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::interval::Interval;
use crate::ratio::{format_rational, parse_rational};
use crate::real::{ExactForm, RealNum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

/// Sparse mapping from nonempty subsets to positive rational weights.
///
/// Zero-weight entries are dropped at construction; a weight on the empty set
/// is rejected. `uniform_k` is present exactly when every support set has the
/// same cardinality.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightFunction {
    ground: GroundSet,
    entries: Vec<(SubsetMask, BigRational)>,
    uniform_k: Option<usize>,
    sum: BigRational,
    // Numerators over a shared denominator when they fit machine words;
    // membership sums then run on i128 instead of BigRational.
    fast: Option<FastEntries>,
}

#[derive(Debug, Clone, PartialEq)]
struct FastEntries {
    nums: Vec<i128>,
    den: i128,
}

impl WeightFunction {
    pub fn new(ground: GroundSet, mut raw: Vec<(SubsetMask, BigRational)>) -> Result<Self> {
        raw.retain(|(_, w)| !w.is_zero());
        for (mask, w) in &raw {
            if mask.width() != ground.size() {
                return Err(Error::InvalidInput(format!(
                    "mask width {} does not match ground size {}",
                    mask.width(),
                    ground.size()
                )));
            }
            if mask.is_empty() {
                return Err(Error::InvalidInput(
                    "weight on the empty set is not allowed".into(),
                ));
            }
            if w.is_negative() {
                return Err(Error::InvalidInput("negative weight".into()));
            }
        }
        raw.sort_by(|a, b| a.0.cmp(&b.0));
        for pair in raw.windows(2) {
            if pair[0].0 == pair[1].0 {
                return Err(Error::InvalidInput(format!(
                    "duplicate entry for {:?}",
                    pair[0].0
                )));
            }
        }
        let uniform_k = match raw.first() {
            None => None,
            Some((first, _)) => {
                let k = first.cardinality();
                raw.iter().all(|(m, _)| m.cardinality() == k).then_some(k)
            }
        };
        let sum = raw
            .iter()
            .fold(BigRational::zero(), |acc, (_, w)| acc + w);
        let fast = Self::build_fast(&raw);
        Ok(WeightFunction {
            ground,
            entries: raw,
            uniform_k,
            sum,
            fast,
        })
    }

    fn build_fast(entries: &[(SubsetMask, BigRational)]) -> Option<FastEntries> {
        let mut den = BigInt::one();
        for (_, w) in entries {
            den = den.lcm(w.denom());
        }
        let den_i = den.to_i128()?;
        let mut nums = Vec::with_capacity(entries.len());
        let mut total: i128 = 0;
        for (_, w) in entries {
            let scaled = w.numer() * (&den / w.denom());
            let n = scaled.to_i128()?;
            nums.push(n);
            total = total.checked_add(n)?;
        }
        // headroom so threshold comparisons cannot overflow
        if total > i128::MAX / 4 || den_i > i128::MAX / 4 {
            return None;
        }
        Some(FastEntries { nums, den: den_i })
    }

    pub fn empty(ground: GroundSet) -> Self {
        WeightFunction {
            ground,
            entries: Vec::new(),
            uniform_k: None,
            sum: BigRational::zero(),
            fast: Some(FastEntries {
                nums: Vec::new(),
                den: 1,
            }),
        }
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn entries(&self) -> &[(SubsetMask, BigRational)] {
        &self.entries
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn uniform_k(&self) -> Option<usize> {
        self.uniform_k
    }

    /// Total weight `sum_T g(T)`.
    pub fn total(&self) -> &BigRational {
        &self.sum
    }

    /// Union of all support sets; membership sums only see these elements.
    pub fn support_union(&self) -> SubsetMask {
        let mut u = SubsetMask::empty(self.ground.size());
        for (m, _) in &self.entries {
            u = u.union(m);
        }
        u
    }

    /// `sum_{T subseteq S} g(T)`, exact.
    pub fn sum_on_subsets_of(&self, s: &SubsetMask) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, w) in &self.entries {
            if m.is_subset_of(s) {
                acc += w;
            }
        }
        acc
    }

    /// `sum_{T subseteq S} g(T) >= threshold`, using the integer fast path
    /// when available.
    pub fn subset_sum_reaches(&self, s: &SubsetMask, threshold: &BigRational) -> bool {
        if let Some(fast) = &self.fast {
            if let (Some(tn), Some(td)) = (threshold.numer().to_i128(), threshold.denom().to_i128())
            {
                if td < i128::MAX / 4 && tn.checked_mul(fast.den).is_some() {
                    let mut acc: i128 = 0;
                    for ((m, _), n) in self.entries.iter().zip(&fast.nums) {
                        if m.is_subset_of(s) {
                            acc += n;
                        }
                    }
                    // acc/den >= tn/td  <=>  acc*td >= tn*den (both dens > 0)
                    if let (Some(l), Some(r)) = (acc.checked_mul(td), tn.checked_mul(fast.den)) {
                        return l >= r;
                    }
                }
            }
        }
        self.sum_on_subsets_of(s) >= *threshold
    }

    /// Membership of `S` in the covered up-set: `sum_{T subseteq S} g(T) >= 1`.
    pub fn member_upset(&self, s: &SubsetMask) -> bool {
        self.subset_sum_reaches(s, &BigRational::one())
    }

    /// `sum_{T : x in T} g(T)`.
    pub fn degree(&self, x: usize) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, w) in &self.entries {
            if m.contains(x) {
                acc += w;
            }
        }
        acc
    }

    /// `sum_{x in S} sum_{T : x in T} g(T)`.
    pub fn degree_sum_over(&self, s: &SubsetMask) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, w) in &self.entries {
            let c = m.intersection_size(s);
            if c > 0 {
                acc += w * BigRational::from_integer(BigInt::from(c));
            }
        }
        acc
    }

    /// Per-cardinality totals: index `j` holds `sum_{|T| = j} g(T)`.
    pub fn size_totals(&self) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.ground.size() + 1];
        for (m, w) in &self.entries {
            v[m.cardinality()] += w;
        }
        v
    }

    /// `w(g, p) = sum_T g(T) p^{|T|}` as an interval enclosure.
    pub fn weight_at(&self, p: &RealNum, prec: u32) -> Interval {
        let mut acc = Interval::zero();
        for (j, coeff) in self.size_totals().iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let term = p.powi(j as u64, prec).iv_at(prec).mul_rational(coeff);
            acc = acc.add(&term);
        }
        acc
    }

    /// Solve `w(g, p) = 1` for `p` in `[0, 1]`.
    ///
    /// Uniform weight functions use the closed form `(sum g)^(-1/k)`; general
    /// ones bisect (the weight is continuous and strictly increasing).
    pub fn unit_weight_p(&self, prec: u32) -> Result<RealNum> {
        if self.sum < BigRational::one() {
            return Err(Error::NoRoot);
        }
        if let Some(k) = self.uniform_k {
            let form = ExactForm::from_rational(self.sum.clone())
                .recip()?
                .root(k as u32)?;
            return Ok(RealNum::from_form(form, prec));
        }
        let totals = self.size_totals();
        let eval = |p: &BigRational| -> BigRational {
            let mut acc = BigRational::zero();
            let mut pw = BigRational::one();
            for coeff in totals.iter() {
                if !coeff.is_zero() {
                    acc += coeff * &pw;
                }
                pw *= p;
            }
            // totals[0] is always zero (no empty set), constant term vanishes
            acc
        };
        let one = BigRational::one();
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one();
        let two = BigRational::from_integer(BigInt::from(2));
        for _ in 0..prec + 1 {
            let mid = (&lo + &hi) / &two;
            let v = eval(&mid);
            match v.cmp(&one) {
                std::cmp::Ordering::Equal => return Ok(RealNum::from_rational(mid)),
                std::cmp::Ordering::Less => lo = mid,
                std::cmp::Ordering::Greater => hi = mid,
            }
        }
        Ok(RealNum::from_interval(Interval::new(lo, hi)))
    }

    /// Multiply every weight by a positive rational.
    pub fn scaled(&self, factor: &BigRational) -> Result<WeightFunction> {
        if !factor.is_positive() {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        WeightFunction::new(
            self.ground.clone(),
            self.entries
                .iter()
                .map(|(m, w)| (m.clone(), w * factor))
                .collect(),
        )
    }

    /// Entrywise `min(1, g)`.
    pub fn clamped_at_one(&self) -> WeightFunction {
        let one = BigRational::one();
        WeightFunction::new(
            self.ground.clone(),
            self.entries
                .iter()
                .map(|(m, w)| (m.clone(), w.clone().min(one.clone())))
                .collect(),
        )
        .expect("clamping preserves validity")
    }

    /// Restriction to support sets of cardinality `k`.
    pub fn cardinality_class(&self, k: usize) -> WeightFunction {
        WeightFunction::new(
            self.ground.clone(),
            self.entries
                .iter()
                .filter(|(m, _)| m.cardinality() == k)
                .cloned()
                .collect(),
        )
        .expect("restriction preserves validity")
    }

    /// Keep entries selected by a predicate on the support set.
    pub fn filtered(&self, mut keep: impl FnMut(&SubsetMask, &BigRational) -> bool) -> WeightFunction {
        WeightFunction::new(
            self.ground.clone(),
            self.entries
                .iter()
                .filter(|(m, w)| keep(m, w))
                .cloned()
                .collect(),
        )
        .expect("filtering preserves validity")
    }
}

/// JSON schema: `{"n": int, "entries": [{"set": [int,...], "weight": "num/den"}]}`.
#[derive(Serialize, Deserialize)]
pub struct WeightFunctionJson {
    pub n: usize,
    pub entries: Vec<WeightEntryJson>,
}

#[derive(Serialize, Deserialize)]
pub struct WeightEntryJson {
    pub set: Vec<usize>,
    pub weight: String,
}

impl WeightFunction {
    pub fn to_json(&self) -> WeightFunctionJson {
        WeightFunctionJson {
            n: self.ground.size(),
            entries: self
                .entries
                .iter()
                .map(|(m, w)| WeightEntryJson {
                    set: m.elems(),
                    weight: format_rational(w),
                })
                .collect(),
        }
    }

    pub fn from_json(json: &WeightFunctionJson) -> Result<Self> {
        let ground = GroundSet::new(json.n)?;
        let mut entries = Vec::with_capacity(json.entries.len());
        for e in &json.entries {
            let mask = SubsetMask::from_elems(json.n, &e.set)?;
            let w = parse_rational(&e.weight)?;
            entries.push((mask, w));
        }
        WeightFunction::new(ground, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{rat, rat_int};

    fn wf(n: usize, entries: &[(&[usize], BigRational)]) -> WeightFunction {
        let ground = GroundSet::new(n).unwrap();
        WeightFunction::new(
            ground,
            entries
                .iter()
                .map(|(els, w)| (SubsetMask::from_elems(n, els).unwrap(), w.clone()))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rejects_empty_set_and_negative_weights() {
        let ground = GroundSet::new(3).unwrap();
        let empty = SubsetMask::empty(3);
        assert!(WeightFunction::new(ground.clone(), vec![(empty, rat_int(1))]).is_err());
        let s = SubsetMask::from_elems(3, &[0]).unwrap();
        assert!(WeightFunction::new(ground, vec![(s, rat_int(-1))]).is_err());
    }

    #[test]
    fn zero_weights_dropped_and_uniformity_detected() {
        let g = wf(
            4,
            &[
                (&[0, 1], rat(1, 2)),
                (&[2, 3], rat(1, 3)),
                (&[1, 2], rat_int(0)),
            ],
        );
        assert_eq!(g.support_len(), 2);
        assert_eq!(g.uniform_k(), Some(2));
        let mixed = wf(4, &[(&[0], rat(1, 2)), (&[1, 2], rat(1, 2))]);
        assert_eq!(mixed.uniform_k(), None);
    }

    #[test]
    fn weight_single_pair_at_half() {
        let g = wf(2, &[(&[0, 1], rat_int(1))]);
        let p = RealNum::from_rational(rat(1, 2));
        let w = g.weight_at(&p, 64);
        assert!(w.is_point());
        assert_eq!(w.lo(), &rat(1, 4));
    }

    #[test]
    fn weight_empty_support_is_zero() {
        let g = WeightFunction::empty(GroundSet::new(3).unwrap());
        let p = RealNum::from_rational(rat(1, 2));
        assert_eq!(g.weight_at(&p, 64), Interval::zero());
    }

    #[test]
    fn weight_two_term_hand_sum() {
        // independent oracle: naive per-entry summation
        let g = wf(2, &[(&[0], rat(3, 5)), (&[0, 1], rat(2, 5))]);
        let p = rat(1, 2);
        let mut oracle = BigRational::zero();
        for (m, w) in g.entries() {
            let mut term = w.clone();
            for _ in 0..m.cardinality() {
                term *= &p;
            }
            oracle += term;
        }
        assert_eq!(oracle, rat(2, 5));
        let w = g.weight_at(&RealNum::from_rational(p), 64);
        assert!(w.is_point());
        assert_eq!(w.lo(), &rat(2, 5));
    }

    #[test]
    fn member_upset_examples() {
        let g = wf(3, &[(&[0, 1], rat(3, 5)), (&[1, 2], rat(1, 2))]);
        let full = SubsetMask::from_elems(3, &[0, 1, 2]).unwrap();
        assert!(g.member_upset(&full)); // 11/10 >= 1
        let pair = SubsetMask::from_elems(3, &[0, 1]).unwrap();
        assert!(!g.member_upset(&pair)); // 3/5 < 1
    }

    #[test]
    fn unit_weight_uniform_closed_form() {
        // sum g = 4 over pairs -> p = 1/2
        let g = wf(
            4,
            &[
                (&[0, 1], rat_int(1)),
                (&[1, 2], rat_int(1)),
                (&[2, 3], rat_int(1)),
                (&[0, 3], rat_int(1)),
            ],
        );
        let p = g.unit_weight_p(64).unwrap();
        assert_eq!(p.as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn unit_weight_singleton() {
        let g = wf(1, &[(&[0], rat_int(2))]);
        let p = g.unit_weight_p(64).unwrap();
        assert_eq!(p.as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn unit_weight_golden_ratio_bisection() {
        // p + p^2 = 1 -> p = (sqrt 5 - 1)/2
        let g = wf(2, &[(&[0], rat_int(1)), (&[0, 1], rat_int(1))]);
        let p = g.unit_weight_p(80).unwrap();
        let iv = p.interval();
        // closed form via the quadratic: p = (sqrt5 - 1)/2
        let sqrt5 = crate::interval::kth_root(&rat_int(5), 2, 100).unwrap();
        let closed = sqrt5
            .sub(&Interval::one())
            .mul_rational(&rat(1, 2));
        assert!(iv.lo() <= closed.hi() && closed.lo() <= iv.hi());
        // and w(g, p) must contain 1
        let w = g.weight_at(&p, 100);
        assert!(w.contains(&BigRational::one()));
    }

    #[test]
    fn unit_weight_requires_enough_mass() {
        let g = wf(2, &[(&[0], rat(1, 3))]);
        assert!(matches!(g.unit_weight_p(64), Err(Error::NoRoot)));
    }

    #[test]
    fn json_roundtrip() {
        let g = wf(4, &[(&[0, 2], rat(2, 3)), (&[1], rat_int(1))]);
        let js = g.to_json();
        let s = serde_json::to_string(&js).unwrap();
        let parsed: WeightFunctionJson = serde_json::from_str(&s).unwrap();
        let back = WeightFunction::from_json(&parsed).unwrap();
        assert_eq!(g, back);
    }

    #[test]
    fn fast_path_matches_exact_sum() {
        let g = wf(
            5,
            &[
                (&[0, 1], rat(1, 3)),
                (&[2], rat(2, 7)),
                (&[3, 4], rat(5, 11)),
            ],
        );
        let s = SubsetMask::from_elems(5, &[0, 1, 2]).unwrap();
        let exact = g.sum_on_subsets_of(&s);
        assert_eq!(exact, rat(1, 3) + rat(2, 7));
        assert_eq!(g.subset_sum_reaches(&s, &exact), true);
        let above = &exact + rat(1, 1000000);
        assert_eq!(g.subset_sum_reaches(&s, &above), false);
    }
}
