//! Increasing families given by their antichain of minimal elements.

use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::interval::Interval;
use crate::real::RealNum;
use crate::upset::DEFAULT_ENUM_BUDGET;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneFamily {
    ground: GroundSet,
    minimal: Vec<SubsetMask>,
}

impl MonotoneFamily {
    /// Build from minimal elements. The list must be a nonempty antichain of
    /// nonempty sets (an empty minimal element would make the family all of
    /// `2^X`, which is trivial and rejected).
    pub fn new(ground: GroundSet, mut minimal: Vec<SubsetMask>) -> Result<Self> {
        if minimal.is_empty() {
            return Err(Error::InvalidInput(
                "family needs at least one minimal element".into(),
            ));
        }
        for m in &minimal {
            if m.width() != ground.size() {
                return Err(Error::InvalidInput("mask width mismatch".into()));
            }
            if m.is_empty() {
                return Err(Error::InvalidInput(
                    "empty minimal element makes the family trivial".into(),
                ));
            }
        }
        minimal.sort();
        minimal.dedup();
        for i in 0..minimal.len() {
            for j in 0..minimal.len() {
                if i != j && minimal[i].is_subset_of(&minimal[j]) {
                    return Err(Error::InvalidInput(format!(
                        "not an antichain: {:?} contained in {:?}",
                        minimal[i], minimal[j]
                    )));
                }
            }
        }
        Ok(MonotoneFamily { ground, minimal })
    }

    /// Build from an arbitrary generating list by pruning dominated sets.
    pub fn from_generators(ground: GroundSet, gens: Vec<SubsetMask>) -> Result<Self> {
        let mut antichain: Vec<SubsetMask> = Vec::new();
        for g in gens {
            if g.is_empty() {
                return Err(Error::InvalidInput("empty generator".into()));
            }
            if antichain.iter().any(|a| a.is_subset_of(&g)) {
                continue;
            }
            antichain.retain(|a| !g.is_subset_of(a));
            antichain.push(g);
        }
        Self::new(ground, antichain)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn minimal(&self) -> &[SubsetMask] {
        &self.minimal
    }

    pub fn member(&self, s: &SubsetMask) -> bool {
        self.minimal.iter().any(|m| m.is_subset_of(s))
    }

    /// Exact coefficients of `P[X_p in F]` as a polynomial in `p`, via
    /// inclusion-exclusion over the minimal elements:
    /// `P = sum_{I nonempty} (-1)^(|I|+1) p^(|union I|)`.
    fn inclusion_exclusion_poly(&self) -> Result<Vec<BigInt>> {
        let m = self.minimal.len();
        if m > DEFAULT_ENUM_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "inclusion-exclusion over {} minimal elements",
                m
            )));
        }
        let n = self.ground.size();
        let mut coeffs = vec![BigInt::zero(); n + 1];
        // union cardinalities built incrementally over the subset lattice
        let mut card = vec![0usize; 1 << m];
        let mut union_masks: Vec<SubsetMask> = Vec::with_capacity(1 << m);
        union_masks.push(SubsetMask::empty(n));
        for bits in 1usize..(1 << m) {
            let low = bits.trailing_zeros() as usize;
            let rest = bits & (bits - 1);
            let u = union_masks[rest].union(&self.minimal[low]);
            card[bits] = u.cardinality();
            union_masks.push(u);
            let sign_plus = bits.count_ones() % 2 == 1;
            if sign_plus {
                coeffs[card[bits]] += 1;
            } else {
                coeffs[card[bits]] -= 1;
            }
        }
        Ok(coeffs)
    }

    /// Counts of members by cardinality, via an exhaustive subset scan.
    fn member_counts_by_size(&self) -> Result<Vec<BigInt>> {
        let n = self.ground.size();
        if n > DEFAULT_ENUM_BUDGET || n > 62 {
            return Err(Error::BudgetExceeded(format!(
                "exhaustive scan over 2^{}",
                n
            )));
        }
        let mut counts = vec![BigInt::zero(); n + 1];
        for bits in 0u64..(1u64 << n) {
            let s = SubsetMask::from_bits64(n, bits);
            if self.member(&s) {
                counts[s.cardinality()] += 1;
            }
        }
        Ok(counts)
    }

    /// Exact containment probability `P[X_p in F]`.
    ///
    /// Uses inclusion-exclusion over minimal elements or the exhaustive
    /// subset scan, whichever is cheaper at this size.
    pub fn containment_probability(&self, p: &BigRational) -> Result<BigRational> {
        self.containment_evaluator()?.eval(p)
    }

    /// Precomputed evaluator; bisection loops reuse it across many `p`.
    pub fn containment_evaluator(&self) -> Result<ContainmentEvaluator> {
        let m = self.minimal.len();
        let n = self.ground.size();
        let ie_cost = if m < 60 { 1u128 << m } else { u128::MAX };
        let scan_cost = if n < 60 {
            (1u128 << n).saturating_mul(m as u128)
        } else {
            u128::MAX
        };
        if ie_cost == u128::MAX && scan_cost == u128::MAX {
            return Err(Error::BudgetExceeded(
                "family too large for exact containment probability".into(),
            ));
        }
        if ie_cost <= scan_cost {
            Ok(ContainmentEvaluator::Poly(self.inclusion_exclusion_poly()?))
        } else {
            Ok(ContainmentEvaluator::SizeCounts {
                n,
                counts: self.member_counts_by_size()?,
            })
        }
    }

    /// The probability `p_c` where `P[X_{p_c} in F] = 1/2`, enclosed to width
    /// `2^-prec` by bisection (the probability is strictly increasing).
    pub fn threshold_pc(&self, prec: u32) -> Result<RealNum> {
        let eval = self.containment_evaluator()?;
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        let two = BigRational::from_integer(BigInt::from(2));
        let mut lo = BigRational::zero();
        let mut hi = BigRational::one();
        for _ in 0..prec + 1 {
            let mid = (&lo + &hi) / &two;
            let v = eval.eval(&mid)?;
            match v.cmp(&half) {
                std::cmp::Ordering::Equal => return Ok(RealNum::from_rational(mid)),
                std::cmp::Ordering::Less => lo = mid,
                std::cmp::Ordering::Greater => hi = mid,
            }
        }
        Ok(RealNum::from_interval(Interval::new(lo, hi)))
    }
}

pub enum ContainmentEvaluator {
    /// Coefficients of `sum_d c_d p^d`.
    Poly(Vec<BigInt>),
    /// Member counts by cardinality; `P = sum_j N_j p^j (1-p)^(n-j)`.
    SizeCounts { n: usize, counts: Vec<BigInt> },
}

impl ContainmentEvaluator {
    pub fn eval(&self, p: &BigRational) -> Result<BigRational> {
        match self {
            ContainmentEvaluator::Poly(coeffs) => {
                let mut acc = BigRational::zero();
                let mut pw = BigRational::one();
                for c in coeffs {
                    if !c.is_zero() {
                        acc += BigRational::from_integer(c.clone()) * &pw;
                    }
                    pw *= p;
                }
                Ok(acc)
            }
            ContainmentEvaluator::SizeCounts { n, counts } => {
                let q = BigRational::one() - p;
                let mut acc = BigRational::zero();
                for (j, c) in counts.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let term = BigRational::from_integer(c.clone())
                        * crate::interval::pow_rat(p, j as u64)
                        * crate::interval::pow_rat(&q, (*n - j) as u64);
                    acc += term;
                }
                Ok(acc)
            }
        }
    }
}

/// JSON schema: `{"n": int, "minimal": [[int,...],...]}`.
#[derive(Serialize, Deserialize)]
pub struct MonotoneFamilyJson {
    pub n: usize,
    pub minimal: Vec<Vec<usize>>,
}

impl MonotoneFamily {
    pub fn to_json(&self) -> MonotoneFamilyJson {
        MonotoneFamilyJson {
            n: self.ground.size(),
            minimal: self.minimal.iter().map(|m| m.elems()).collect(),
        }
    }

    pub fn from_json(json: &MonotoneFamilyJson) -> Result<Self> {
        let ground = GroundSet::new(json.n)?;
        let minimal = json
            .minimal
            .iter()
            .map(|els| SubsetMask::from_elems(json.n, els))
            .collect::<Result<Vec<_>>>()?;
        MonotoneFamily::new(ground, minimal)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratio::{parse_rational, rat, rat_int};

    fn fam(n: usize, minimal: &[&[usize]]) -> MonotoneFamily {
        MonotoneFamily::new(
            GroundSet::new(n).unwrap(),
            minimal
                .iter()
                .map(|els| SubsetMask::from_elems(n, els).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn antichain_validation() {
        let g = GroundSet::new(3).unwrap();
        let a = SubsetMask::from_elems(3, &[0]).unwrap();
        let b = SubsetMask::from_elems(3, &[0, 1]).unwrap();
        assert!(MonotoneFamily::new(g.clone(), vec![a.clone(), b.clone()]).is_err());
        assert!(MonotoneFamily::new(g.clone(), vec![]).is_err());
        assert!(MonotoneFamily::new(g.clone(), vec![SubsetMask::empty(3)]).is_err());
        let pruned = MonotoneFamily::from_generators(g, vec![b, a.clone()]).unwrap();
        assert_eq!(pruned.minimal(), &[a]);
    }

    #[test]
    fn containment_single_singleton() {
        let f = fam(1, &[&[0]]);
        assert_eq!(
            f.containment_probability(&rat(1, 3)).unwrap(),
            rat(1, 3)
        );
    }

    #[test]
    fn containment_two_singletons() {
        let f = fam(2, &[&[0], &[1]]);
        // 1 - (1/2)^2 = 3/4
        assert_eq!(
            f.containment_probability(&rat(1, 2)).unwrap(),
            rat(3, 4)
        );
    }

    #[test]
    fn containment_all_pairs_of_four() {
        // exhaustive oracle over 2^4 subsets
        let pairs: Vec<&[usize]> = vec![&[0, 1], &[0, 2], &[0, 3], &[1, 2], &[1, 3], &[2, 3]];
        let f = fam(4, &pairs);
        let p = rat(1, 2);
        let mut oracle = BigRational::zero();
        for bits in 0u64..16 {
            let s = SubsetMask::from_bits64(4, bits);
            if f.member(&s) {
                let j = s.cardinality() as u64;
                oracle += crate::interval::pow_rat(&p, j)
                    * crate::interval::pow_rat(&(BigRational::one() - &p), 4 - j);
            }
        }
        assert_eq!(oracle, rat(11, 16));
        assert_eq!(f.containment_probability(&p).unwrap(), rat(11, 16));
    }

    #[test]
    fn both_evaluators_agree() {
        let f = fam(5, &[&[0, 1], &[2, 3, 4], &[1, 3]]);
        let poly = ContainmentEvaluator::Poly(f.inclusion_exclusion_poly().unwrap());
        let counts = ContainmentEvaluator::SizeCounts {
            n: 5,
            counts: f.member_counts_by_size().unwrap(),
        };
        for p in [rat(1, 7), rat(2, 5), rat(9, 10)] {
            assert_eq!(poly.eval(&p).unwrap(), counts.eval(&p).unwrap());
        }
    }

    #[test]
    fn pc_single_singleton_is_half() {
        let f = fam(1, &[&[0]]);
        let pc = f.threshold_pc(64).unwrap();
        assert_eq!(pc.as_rational(), Some(&rat(1, 2)));
    }

    #[test]
    fn pc_single_pair_is_inverse_sqrt2() {
        let f = fam(2, &[&[0, 1]]);
        let pc = f.threshold_pc(80).unwrap();
        // p^2 = 1/2 -> p = 0.70710678118654752440...
        let lo = parse_rational("0.707106781186547524").unwrap();
        let hi = parse_rational("0.707106781186547525").unwrap();
        assert!(pc.interval().lo() <= &hi && pc.interval().hi() >= &lo);
    }

    #[test]
    fn pc_two_singletons() {
        let f = fam(2, &[&[0], &[1]]);
        let pc = f.threshold_pc(80).unwrap();
        // (1-p)^2 = 1/2 -> p = 1 - 1/sqrt2 = 0.29289321881345247559...
        let lo = parse_rational("0.292893218813452475").unwrap();
        let hi = parse_rational("0.292893218813452476").unwrap();
        assert!(pc.interval().lo() <= &hi && pc.interval().hi() >= &lo);
    }

    #[test]
    fn monte_carlo_containment_sanity() {
        use rand::Rng;
        use rand::SeedableRng;
        let f = fam(6, &[&[0, 1], &[2, 3], &[4, 5], &[0, 5]]);
        let p = rat(2, 5);
        let exact = f.containment_probability(&p).unwrap();
        let mut rng = rand_chacha::ChaCha20Rng::seed_from_u64(42);
        let trials = 100_000u64;
        let mut hits = 0u64;
        for _ in 0..trials {
            let mut s = SubsetMask::empty(6);
            for x in 0..6 {
                if rng.gen_range(0u32..5) < 2 {
                    s.insert(x);
                }
            }
            if f.member(&s) {
                hits += 1;
            }
        }
        let est = hits as f64 / trials as f64;
        let pf = exact.numer().to_string().parse::<f64>().unwrap()
            / exact.denom().to_string().parse::<f64>().unwrap();
        let se = (pf * (1.0 - pf) / trials as f64).sqrt();
        assert!(
            (est - pf).abs() <= 4.0 * se,
            "estimate {} too far from exact {}",
            est,
            pf
        );
    }

    #[test]
    fn json_roundtrip() {
        let f = fam(4, &[&[0, 1], &[2, 3]]);
        let s = serde_json::to_string(&f.to_json()).unwrap();
        let parsed: MonotoneFamilyJson = serde_json::from_str(&s).unwrap();
        assert_eq!(MonotoneFamily::from_json(&parsed).unwrap(), f);
    }

    #[test]
    fn rejects_oversized_exact_computation() {
        let big = GroundSet::new(70).unwrap();
        let mins: Vec<SubsetMask> = (0..30)
            .map(|i| SubsetMask::from_elems(70, &[2 * i, 2 * i + 1]).unwrap())
            .collect();
        let f = MonotoneFamily::new(big, mins).unwrap();
        assert!(matches!(
            f.containment_probability(&rat_int(1)),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
