//! Up-set membership, antichain extraction and sampling.

use crate::error::{Error, Result};
use crate::ground::{GroundSet, SubsetMask};
use crate::interval::{pow_rat, PrecisionLadder};
use crate::real::ExactForm;
use crate::weights::WeightFunction;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::cmp::Ordering;

/// Default exhaustive-enumeration budget: scans of `2^n` subsets are allowed
/// for `n` up to this.
pub const DEFAULT_ENUM_BUDGET: usize = 22;

/// Inclusion-minimal members of a monotone predicate, by exhaustive scan over
/// the subsets of `universe`. The predicate is evaluated once per subset; a
/// member is minimal when every single-element deletion is a non-member.
pub fn minimal_elements_over<F>(
    universe: &SubsetMask,
    ground: &GroundSet,
    budget: usize,
    mut member: F,
) -> Result<Vec<SubsetMask>>
where
    F: FnMut(&SubsetMask) -> Result<bool>,
{
    let elems = universe.elems();
    let u = elems.len();
    if u > budget {
        return Err(Error::BudgetExceeded(format!(
            "minimal-element scan needs 2^{} evaluations (budget 2^{})",
            u, budget
        )));
    }
    if u > 62 {
        return Err(Error::BudgetExceeded("universe exceeds 62 elements".into()));
    }
    let n = ground.size();
    let total: u64 = 1u64 << u;
    let mut members = vec![false; total as usize];
    let mask_of = |bits: u64| -> SubsetMask {
        let mut m = SubsetMask::empty(n);
        for (i, &e) in elems.iter().enumerate() {
            if (bits >> i) & 1 == 1 {
                m.insert(e);
            }
        }
        m
    };
    for bits in 0..total {
        members[bits as usize] = member(&mask_of(bits))?;
    }
    let mut out = Vec::new();
    'outer: for bits in 0..total {
        if !members[bits as usize] {
            continue;
        }
        let mut b = bits;
        while b != 0 {
            let low = b & b.wrapping_neg();
            if members[(bits & !low) as usize] {
                continue 'outer;
            }
            b &= b - 1;
        }
        out.push(mask_of(bits));
    }
    out.sort();
    Ok(out)
}

/// Minimal elements of the covered up-set of a weight function. Elements
/// outside the support union are irrelevant and never appear.
pub fn minimal_upset_elements(g: &WeightFunction, budget: usize) -> Result<Vec<SubsetMask>> {
    if g.is_empty() {
        return Ok(Vec::new());
    }
    let universe = g.support_union();
    minimal_elements_over(&universe, g.ground(), budget, |s| Ok(g.member_upset(s)))
}

/// Draw `count` (not necessarily distinct) minimal members of the covered
/// up-set, deterministically from `seed`: start from the support union and
/// greedily delete elements in a random order while membership persists.
/// Returns an empty list when the up-set is empty.
pub fn sample_minimal_members(
    g: &WeightFunction,
    count: usize,
    seed: u64,
) -> Vec<SubsetMask> {
    let universe = g.support_union();
    if !g.member_upset(&universe) {
        return Vec::new();
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let elems = universe.elems();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut order = elems.clone();
        order.shuffle(&mut rng);
        let mut s = universe.clone();
        for &x in &order {
            let mut t = s.clone();
            t.remove(x);
            if g.member_upset(&t) {
                s = t;
            }
        }
        out.push(s);
    }
    out
}

/// Parameters of the degree-weighted sub-up-set membership test.
#[derive(Debug, Clone)]
pub struct JlParams {
    pub j: BigRational,
    pub l: ExactForm,
}

/// Membership in the sub-up-set that additionally requires the contained
/// weight to dominate a degree-proportional term:
///
/// `sum_{T subseteq S} g(T) >= max{ J, (L/4ek) * (sum g)^(-1+1/k) * sum_{x in S} sum_{T: x in T} g(T) }`
///
/// The left side is exact rational; the right involves a k-th root and is
/// compared through exact forms with precision escalation.
pub fn member_upset_jl(
    g: &WeightFunction,
    params: &JlParams,
    s: &SubsetMask,
    ladder: &PrecisionLadder,
) -> Result<bool> {
    g.uniform_k()
        .ok_or_else(|| Error::PreconditionViolated("weight function must be uniform".into()))?;
    if g.is_empty() {
        return Err(Error::PreconditionViolated("empty weight function".into()));
    }
    let left = ExactForm::from_rational(g.sum_on_subsets_of(s));
    let j_form = ExactForm::from_rational(params.j.clone());
    if left.cmp(&j_form, ladder)? == Ordering::Less {
        return Ok(false);
    }
    let right = jl_degree_term(g, &params.l, s)?;
    Ok(left.cmp(&right, ladder)? != Ordering::Less)
}

/// The degree-proportional term `(L/4ek) * (sum g)^(-1+1/k) * sum_{x in S} deg(x)`.
pub fn jl_degree_term(g: &WeightFunction, l: &ExactForm, s: &SubsetMask) -> Result<ExactForm> {
    let k = g
        .uniform_k()
        .ok_or_else(|| Error::PreconditionViolated("weight function must be uniform".into()))?;
    let deg_sum = g.degree_sum_over(s);
    if deg_sum == BigRational::from_integer(BigInt::from(0)) {
        return Ok(ExactForm::zero());
    }
    // (sum g)^(-1+1/k) = ((1/sum g)^(k-1))^(1/k)
    let root_part = ExactForm::rooted(
        BigRational::one(),
        pow_rat(&g.total().recip(), (k as u64) - 1),
        k as u32,
    )?;
    let scale = l
        .div(&ExactForm::e_scaled(
            BigRational::from_integer(BigInt::from(4 * k as i64)),
            1,
        ))?
        .mul_rational(&deg_sum);
    Ok(scale.mul(&root_part))
}

/// Membership in the high-degree region: the degree term alone reaches 1.
pub fn member_high_degree_region(
    g: &WeightFunction,
    l: &ExactForm,
    s: &SubsetMask,
    ladder: &PrecisionLadder,
) -> Result<bool> {
    let term = jl_degree_term(g, l, s)?;
    Ok(term.cmp(&ExactForm::one(), ladder)? != Ordering::Less)
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
    fn minimal_elements_cardinality_predicate() {
        let ground = GroundSet::new(3).unwrap();
        let universe = ground.full_mask();
        let mins =
            minimal_elements_over(&universe, &ground, 22, |s| Ok(s.cardinality() >= 2)).unwrap();
        assert_eq!(mins.len(), 3);
        assert!(mins.iter().all(|m| m.cardinality() == 2));
    }

    #[test]
    fn minimal_elements_single_singleton() {
        let g = wf(3, &[(&[0], rat_int(1))]);
        let mins = minimal_upset_elements(&g, 22).unwrap();
        assert_eq!(mins, vec![SubsetMask::from_elems(3, &[0]).unwrap()]);
    }

    #[test]
    fn minimal_elements_three_half_pairs() {
        // pairwise 1/2 weights: no pair reaches 1, the triangle does
        let g = wf(
            3,
            &[
                (&[0, 1], rat(1, 2)),
                (&[1, 2], rat(1, 2)),
                (&[0, 2], rat(1, 2)),
            ],
        );
        let mins = minimal_upset_elements(&g, 22).unwrap();
        assert_eq!(mins, vec![SubsetMask::from_elems(3, &[0, 1, 2]).unwrap()]);
    }

    #[test]
    fn minimal_elements_match_double_loop_oracle() {
        // independent oracle: all members, pruned by pairwise containment
        let g = wf(
            5,
            &[
                (&[0, 1], rat(1, 2)),
                (&[2, 3], rat(1, 2)),
                (&[0, 4], rat(3, 4)),
                (&[1], rat(1, 4)),
            ],
        );
        let fast = minimal_upset_elements(&g, 22).unwrap();
        let mut members = Vec::new();
        for bits in 0u64..32 {
            let s = SubsetMask::from_bits64(5, bits);
            if g.member_upset(&s) {
                members.push(s);
            }
        }
        let mut oracle: Vec<SubsetMask> = Vec::new();
        for s in &members {
            if !members.iter().any(|t| t != s && t.is_subset_of(s)) {
                oracle.push(s.clone());
            }
        }
        oracle.sort();
        assert_eq!(fast, oracle);
    }

    #[test]
    fn budget_enforced() {
        let ground = GroundSet::new(30).unwrap();
        let universe = ground.full_mask();
        let r = minimal_elements_over(&universe, &ground, 22, |_| Ok(true));
        assert!(matches!(r, Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn sampled_members_are_minimal_members() {
        let g = wf(
            4,
            &[
                (&[0], rat(1, 2)),
                (&[1], rat(1, 2)),
                (&[2], rat(1, 2)),
                (&[3], rat(1, 2)),
            ],
        );
        let mins = minimal_upset_elements(&g, 22).unwrap();
        let samples = sample_minimal_members(&g, 20, 7);
        assert_eq!(samples.len(), 20);
        for s in &samples {
            assert!(mins.contains(s));
        }
        // determinism
        assert_eq!(samples, sample_minimal_members(&g, 20, 7));
    }

    #[test]
    fn jl_membership_first_branch() {
        // any S whose contained weight is below J fails fast
        let g = wf(2, &[(&[0, 1], rat_int(1))]);
        let params = JlParams {
            j: rat_int(2),
            l: ExactForm::one(),
        };
        let full = SubsetMask::from_elems(2, &[0, 1]).unwrap();
        assert!(!member_upset_jl(&g, &params, &full, &PrecisionLadder::default()).unwrap());
    }

    #[test]
    fn jl_membership_equality_at_threshold() {
        // k=2, single pair of weight 1: sum g = 1, degree sum over S = 2.
        // With L = 2e the degree term is (2e/(8e)) * 1 * 2 = 1/2; with
        // L = 4e it is exactly 1, hitting equality.
        let g = wf(2, &[(&[0, 1], rat_int(1))]);
        let full = SubsetMask::from_elems(2, &[0, 1]).unwrap();
        let ladder = PrecisionLadder::default();
        let at_half = JlParams {
            j: rat_int(1),
            l: ExactForm::e_scaled(rat_int(2), 1),
        };
        assert!(member_upset_jl(&g, &at_half, &full, &ladder).unwrap());
        let at_one = JlParams {
            j: rat_int(1),
            l: ExactForm::e_scaled(rat_int(4), 1),
        };
        // equality: left = 1 = max{1, 1}
        assert!(member_upset_jl(&g, &at_one, &full, &ladder).unwrap());
        let above = JlParams {
            j: rat_int(1),
            l: ExactForm::e_scaled(rat_int(5), 1),
        };
        assert!(!member_upset_jl(&g, &above, &full, &ladder).unwrap());
    }

    #[test]
    fn jl_membership_seven_point_plane() {
        // brute-force oracle: both sides summed exhaustively
        let lines: [&[usize]; 7] = [
            &[0, 1, 2],
            &[0, 3, 4],
            &[0, 5, 6],
            &[1, 3, 5],
            &[1, 4, 6],
            &[2, 3, 6],
            &[2, 4, 5],
        ];
        let entries: Vec<(&[usize], BigRational)> =
            lines.iter().map(|l| (*l, rat(1, 2))).collect();
        let g = wf(7, &entries);
        let full = SubsetMask::full(7);
        // left = 7/2; right = max{1, (1/(12e)) * (7/2)^(-2/3) * 21/2} < 7/2
        let params = JlParams {
            j: rat_int(1),
            l: ExactForm::one(),
        };
        assert!(member_upset_jl(&g, &params, &full, &PrecisionLadder::default()).unwrap());
    }
}
