//! Cover families: explicit or structured families of nonempty subsets,
//! supporting membership-in-up-set tests and weight evaluation without
//! materialization.

use crate::error::{Error, Result};
use crate::ground::{k_subsets_of, SubsetMask};
use crate::interval::{Interval, PrecisionLadder};
use crate::ratio::binomial;
use crate::real::{ExactForm, RealNum};
use crate::stars::{star_greedy_witness, StarWitness};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeSet;

/// Weight of a family at a point, as an enclosure. `upper_only` marks values
/// where only the upper end is meaningful (the lower end is then 0).
#[derive(Debug, Clone)]
pub struct WeightBound {
    pub iv: Interval,
    pub upper_only: bool,
}

impl WeightBound {
    fn exact(iv: Interval) -> Self {
        WeightBound {
            iv,
            upper_only: false,
        }
    }

    fn upper(hi: BigRational) -> Self {
        WeightBound {
            iv: Interval::new(BigRational::zero(), hi),
            upper_only: true,
        }
    }
}

/// Budgets for membership search and materialization.
#[derive(Debug, Clone, Copy)]
pub struct SearchBudget {
    /// Maximum number of family members to materialize or enumerate.
    pub max_members: u64,
    /// Maximum tuples visited during star enumeration.
    pub max_steps: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_members: 200_000,
            max_steps: 2_000_000,
        }
    }
}

/// One level of a star family: every member consists of `stars_required`
/// vertex-disjoint stars with exactly `edges_per_star` edges each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarLevel {
    pub edges_per_star: u64,
    pub stars_required: BigUint,
}

/// Family of unions of vertex-disjoint stars in a linear uniform hypergraph,
/// with a per-center degree condition.
#[derive(Debug, Clone, PartialEq)]
pub struct StarSystem {
    pub width: usize,
    pub k: usize,
    /// Every support edge carries weight `1/r`.
    pub r: BigRational,
    /// The loss constant appearing in the degree condition.
    pub loss_l: ExactForm,
    pub support: Vec<SubsetMask>,
    pub levels: Vec<StarLevel>,
}

impl StarSystem {
    pub fn new(
        width: usize,
        k: usize,
        r: BigRational,
        loss_l: ExactForm,
        mut support: Vec<SubsetMask>,
        levels: Vec<StarLevel>,
    ) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidInput("star systems need k >= 2".into()));
        }
        support.sort();
        support.dedup();
        for e in &support {
            if e.cardinality() != k {
                return Err(Error::InvalidInput("support must be k-uniform".into()));
            }
            if e.width() != width {
                return Err(Error::InvalidInput("support width mismatch".into()));
            }
        }
        let sys = StarSystem {
            width,
            k,
            r,
            loss_l,
            support,
            levels,
        };
        if !sys.is_linear() {
            return Err(Error::PreconditionViolated(
                "support is not a linear hypergraph".into(),
            ));
        }
        Ok(sys)
    }

    pub fn is_linear(&self) -> bool {
        for i in 0..self.support.len() {
            for j in i + 1..self.support.len() {
                if self.support[i].intersection_size(&self.support[j]) >= 2 {
                    return false;
                }
            }
        }
        true
    }

    /// `sum_T g(T) = |support| / r`.
    pub fn sum_g(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.support.len())) / &self.r
    }

    /// Edge count at `x`, optionally restricted to edges inside `filter`.
    pub fn degree(&self, x: usize, filter: Option<&SubsetMask>) -> usize {
        self.support
            .iter()
            .filter(|e| e.contains(x) && filter.is_none_or(|f| e.is_subset_of(f)))
            .count()
    }

    /// The degree condition bound for a center of full-hypergraph degree
    /// `deg`: `(L/8ek) * deg * (sum g)^(-1+1/k)`.
    pub fn center_threshold(&self, deg: usize) -> Result<ExactForm> {
        if deg == 0 {
            return Ok(ExactForm::zero());
        }
        let k = self.k as u64;
        let root_part = ExactForm::rooted(
            BigRational::one(),
            crate::interval::pow_rat(&self.sum_g().recip(), k - 1),
            self.k as u32,
        )?;
        let scale = self.loss_l.div(&ExactForm::e_scaled(
            BigRational::from_integer(BigInt::from(8 * k)),
            1,
        ))?;
        Ok(scale
            .mul_rational(&BigRational::from_integer(BigInt::from(deg)))
            .mul(&root_part))
    }

    /// Does a star of `edges_per_star` edges at a center of degree `deg`
    /// satisfy the degree condition? Indeterminate comparisons count as
    /// qualifying only when `generous` (sound for upper bounds).
    pub fn star_size_qualifies(
        &self,
        edges_per_star: u64,
        deg: usize,
        ladder: &PrecisionLadder,
        generous: bool,
    ) -> Result<bool> {
        let thresh = self.center_threshold(deg)?;
        let lhs = ExactForm::from_rational(BigRational::from_integer(BigInt::from(edges_per_star)));
        match lhs.cmp(&thresh, ladder) {
            Ok(ord) => Ok(ord != std::cmp::Ordering::Less),
            Err(Error::IndeterminateAtPrecision(_)) if generous => Ok(true),
            Err(e) => Err(e),
        }
    }
}

/// A family of nonempty subsets with lazily evaluable membership and weight.
#[derive(Debug, Clone, PartialEq)]
pub enum CoverFamily {
    /// Finite list of members.
    Explicit { width: usize, members: Vec<SubsetMask> },
    /// For each level `j >= 1`, all `j`-subsets of the first
    /// `min(j * level_bound, order.len())` elements of `order`.
    SingletonLevels {
        width: usize,
        order: Vec<usize>,
        level_bound: BigUint,
    },
    /// All `t`-subsets of a fixed vertex set.
    Volume { v: SubsetMask, t: usize },
    /// Unions of vertex-disjoint stars.
    StarSystem(StarSystem),
    /// Union of member sets of the parts.
    Union { width: usize, parts: Vec<CoverFamily> },
    /// Members of `inner` lying inside one copy block, relabeled to the copy.
    CopyProjection {
        inner: Box<CoverFamily>,
        copy: usize,
        copy_size: usize,
    },
}

impl CoverFamily {
    pub fn explicit(width: usize, mut members: Vec<SubsetMask>) -> Result<Self> {
        for m in &members {
            if m.is_empty() {
                return Err(Error::InvalidInput(
                    "the empty set cannot be a cover member".into(),
                ));
            }
            if m.width() != width {
                return Err(Error::InvalidInput("member width mismatch".into()));
            }
        }
        members.sort();
        members.dedup();
        Ok(CoverFamily::Explicit { width, members })
    }

    pub fn width(&self) -> usize {
        match self {
            CoverFamily::Explicit { width, .. } => *width,
            CoverFamily::SingletonLevels { width, .. } => *width,
            CoverFamily::Volume { v, .. } => v.width(),
            CoverFamily::StarSystem(s) => s.width,
            CoverFamily::Union { width, .. } => *width,
            CoverFamily::CopyProjection { copy_size, .. } => *copy_size,
        }
    }

    /// Membership of `S` in the covered up-set: does some member lie inside
    /// `S`? Star systems use witness search; a failed search on a family too
    /// large to enumerate reports `WitnessSearchInconclusive`.
    pub fn member_of_upset(
        &self,
        s: &SubsetMask,
        budget: &SearchBudget,
        ladder: &PrecisionLadder,
    ) -> Result<bool> {
        match self {
            CoverFamily::Explicit { members, .. } => {
                Ok(members.iter().any(|m| m.is_subset_of(s)))
            }
            CoverFamily::SingletonLevels {
                order, level_bound, ..
            } => Ok(singleton_levels_member(order, level_bound, s)),
            CoverFamily::Volume { v, t } => Ok(s.intersection_size(v) >= *t),
            CoverFamily::StarSystem(sys) => {
                if star_greedy_witness(sys, s, ladder)?.is_some() {
                    return Ok(true);
                }
                // Greedy found nothing; certify the negative by enumeration
                // when the family is small enough.
                match enumerate_star_members(sys, None, budget, ladder) {
                    Ok(members) => Ok(members.iter().any(|m| m.is_subset_of(s))),
                    Err(Error::MaterializationTooLarge(_)) => Err(
                        Error::WitnessSearchInconclusive(format!(
                            "greedy star search failed on {:?} and the family is too large to enumerate",
                            s
                        )),
                    ),
                    Err(e) => Err(e),
                }
            }
            CoverFamily::Union { parts, .. } => {
                let mut saw_inconclusive = None;
                for part in parts {
                    match part.member_of_upset(s, budget, ladder) {
                        Ok(true) => return Ok(true),
                        Ok(false) => {}
                        Err(e @ Error::WitnessSearchInconclusive(_)) => {
                            saw_inconclusive = Some(e);
                        }
                        Err(e) => return Err(e),
                    }
                }
                match saw_inconclusive {
                    Some(e) => Err(e),
                    None => Ok(false),
                }
            }
            CoverFamily::CopyProjection {
                inner,
                copy,
                copy_size,
            } => {
                debug_assert_eq!(s.width(), *copy_size);
                let copies = inner.width() / copy_size;
                let embedded = s.embed_in_copy(*copy, copies);
                inner.member_of_upset(&embedded, budget, ladder)
            }
        }
    }

    /// Weight `w(G, p) = sum_{T in G} p^{|T|}` at the evaluation point
    /// `p_eval` (already divided by any loss factor).
    pub fn weight(
        &self,
        p_eval: &RealNum,
        prec: u32,
        budget: &SearchBudget,
        ladder: &PrecisionLadder,
    ) -> Result<WeightBound> {
        self.weight_filtered(p_eval, prec, budget, ladder, None)
    }

    /// Weight restricted to members contained in `filter`.
    pub fn weight_filtered(
        &self,
        p_eval: &RealNum,
        prec: u32,
        budget: &SearchBudget,
        ladder: &PrecisionLadder,
        filter: Option<&SubsetMask>,
    ) -> Result<WeightBound> {
        match self {
            CoverFamily::Explicit { members, .. } => {
                let mut acc = Interval::zero();
                for m in members {
                    if filter.is_none_or(|f| m.is_subset_of(f)) {
                        acc = acc.add(&p_eval.powi(m.cardinality() as u64, prec).iv_at(prec));
                    }
                }
                Ok(WeightBound::exact(acc))
            }
            CoverFamily::SingletonLevels {
                order, level_bound, ..
            } => {
                let prefix_counts = filtered_prefix_counts(order, filter);
                Ok(WeightBound::exact(singleton_levels_weight(
                    &prefix_counts,
                    level_bound,
                    p_eval,
                    prec,
                )))
            }
            CoverFamily::Volume { v, t } => {
                let vc = match filter {
                    Some(f) => v.intersection_size(f),
                    None => v.cardinality(),
                };
                let count = binomial(vc, *t);
                let term = p_eval
                    .powi(*t as u64, prec)
                    .iv_at(prec)
                    .mul_rational(&BigRational::from_integer(count));
                Ok(WeightBound::exact(term))
            }
            CoverFamily::StarSystem(sys) => {
                match enumerate_star_members(sys, filter, budget, ladder) {
                    Ok(members) => {
                        let mut acc = Interval::zero();
                        for m in &members {
                            acc = acc.add(&p_eval.powi(m.cardinality() as u64, prec).iv_at(prec));
                        }
                        Ok(WeightBound::exact(acc))
                    }
                    Err(Error::MaterializationTooLarge(_)) => Ok(WeightBound::upper(
                        star_weight_upper(sys, filter, p_eval, prec, ladder)?,
                    )),
                    Err(e) => Err(e),
                }
            }
            CoverFamily::Union { parts, .. } => {
                // Exact when the union can be materialized and deduplicated.
                if let Ok(members) = self.materialize_filtered(budget, ladder, filter) {
                    let mut acc = Interval::zero();
                    for m in &members {
                        acc = acc.add(&p_eval.powi(m.cardinality() as u64, prec).iv_at(prec));
                    }
                    return Ok(WeightBound::exact(acc));
                }
                let mut hi = BigRational::zero();
                let mut lo = BigRational::zero();
                for part in parts {
                    let w = part.weight_filtered(p_eval, prec, budget, ladder, filter)?;
                    hi += w.iv.hi();
                    if !w.upper_only {
                        lo = lo.max(w.iv.lo().clone());
                    }
                }
                Ok(WeightBound {
                    iv: Interval::new(lo, hi),
                    upper_only: true,
                })
            }
            CoverFamily::CopyProjection {
                inner,
                copy,
                copy_size,
            } => {
                let copies = inner.width() / copy_size;
                let block = match filter {
                    Some(f) => f.embed_in_copy(*copy, copies),
                    None => SubsetMask::copy_block(inner.width(), *copy, *copy_size),
                };
                inner.weight_filtered(p_eval, prec, budget, ladder, Some(&block))
            }
        }
    }

    /// All members as explicit masks, within budget.
    pub fn materialize(
        &self,
        budget: &SearchBudget,
        ladder: &PrecisionLadder,
    ) -> Result<Vec<SubsetMask>> {
        self.materialize_filtered(budget, ladder, None)
    }

    pub fn materialize_filtered(
        &self,
        budget: &SearchBudget,
        ladder: &PrecisionLadder,
        filter: Option<&SubsetMask>,
    ) -> Result<Vec<SubsetMask>> {
        let out = match self {
            CoverFamily::Explicit { members, .. } => members
                .iter()
                .filter(|m| filter.is_none_or(|f| m.is_subset_of(f)))
                .cloned()
                .collect::<Vec<_>>(),
            CoverFamily::SingletonLevels {
                width,
                order,
                level_bound,
            } => {
                let kept: Vec<usize> = order
                    .iter()
                    .copied()
                    .filter(|e| filter.is_none_or(|f| f.contains(*e)))
                    .collect();
                // count first
                let mut count = BigInt::zero();
                let prefix_counts = filtered_prefix_counts(order, filter);
                for j in 1..=order.len() {
                    let avail = prefix_len(&prefix_counts, level_bound, j);
                    count += binomial(avail, j);
                    if count > BigInt::from(budget.max_members) {
                        return Err(Error::MaterializationTooLarge(format!(
                            "singleton-level family exceeds {} members",
                            budget.max_members
                        )));
                    }
                }
                let mut members = Vec::new();
                for j in 1..=order.len() {
                    let avail = prefix_len(&prefix_counts, level_bound, j);
                    let prefix = &kept[..avail];
                    let mask = SubsetMask::from_elems(*width, prefix)?;
                    members.extend(k_subsets_of(&mask, j));
                }
                members
            }
            CoverFamily::Volume { v, t } => {
                let base = match filter {
                    Some(f) => v.intersection(f),
                    None => v.clone(),
                };
                let count = binomial(base.cardinality(), *t);
                if count > BigInt::from(budget.max_members) {
                    return Err(Error::MaterializationTooLarge(format!(
                        "volume family has {} members",
                        count
                    )));
                }
                k_subsets_of(&base, *t)
            }
            CoverFamily::StarSystem(sys) => enumerate_star_members(sys, filter, budget, ladder)?,
            CoverFamily::Union { parts, .. } => {
                let mut set: BTreeSet<SubsetMask> = BTreeSet::new();
                for part in parts {
                    for m in part.materialize_filtered(budget, ladder, filter)? {
                        set.insert(m);
                    }
                    if set.len() as u64 > budget.max_members {
                        return Err(Error::MaterializationTooLarge(
                            "union exceeds member budget".into(),
                        ));
                    }
                }
                set.into_iter().collect()
            }
            CoverFamily::CopyProjection {
                inner,
                copy,
                copy_size,
            } => {
                let copies = inner.width() / copy_size;
                let block = match filter {
                    Some(f) => f.embed_in_copy(*copy, copies),
                    None => SubsetMask::copy_block(inner.width(), *copy, *copy_size),
                };
                inner
                    .materialize_filtered(budget, ladder, Some(&block))?
                    .into_iter()
                    .map(|m| m.restrict_to_copy(*copy, *copy_size))
                    .collect()
            }
        };
        let mut out = out;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn singleton_levels_member(order: &[usize], level_bound: &BigUint, s: &SubsetMask) -> bool {
    let n = order.len();
    let mut count_in_prefix = 0usize;
    let mut idx = 0usize;
    for j in 1..=n {
        let target = prefix_len_raw(level_bound, j, n);
        while idx < target {
            if s.contains(order[idx]) {
                count_in_prefix += 1;
            }
            idx += 1;
        }
        if count_in_prefix >= j {
            return true;
        }
        if target == n && count_in_prefix < j {
            // later levels only require more elements from the same prefix
            return false;
        }
    }
    false
}

fn prefix_len_raw(level_bound: &BigUint, j: usize, n: usize) -> usize {
    let ja = level_bound * BigUint::from(j);
    if ja >= BigUint::from(n) {
        n
    } else {
        ja.to_usize().expect("fits because < n")
    }
}

/// Prefix counts after filtering: `counts[i]` = number of the first `i`
/// order elements that survive the filter.
fn filtered_prefix_counts(order: &[usize], filter: Option<&SubsetMask>) -> Vec<usize> {
    let mut counts = Vec::with_capacity(order.len() + 1);
    counts.push(0usize);
    let mut acc = 0usize;
    for &e in order {
        if filter.is_none_or(|f| f.contains(e)) {
            acc += 1;
        }
        counts.push(acc);
    }
    counts
}

fn prefix_len(prefix_counts: &[usize], level_bound: &BigUint, j: usize) -> usize {
    let n = prefix_counts.len() - 1;
    prefix_counts[prefix_len_raw(level_bound, j, n)]
}

/// `sum_j binom(avail_j, j) p^j` where `avail_j` counts the filtered prefix.
fn singleton_levels_weight(
    prefix_counts: &[usize],
    level_bound: &BigUint,
    p_eval: &RealNum,
    prec: u32,
) -> Interval {
    let n = prefix_counts.len() - 1;
    let mut acc = Interval::zero();
    let mut coeffs: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for j in 1..=n {
        let avail = prefix_len(prefix_counts, level_bound, j);
        coeffs[j] = binomial(avail, j);
    }
    // Horner-style power accumulation on the interval
    let p_iv = p_eval.iv_at(prec);
    let mut pw = Interval::one();
    for j in 0..=n {
        if j > 0 {
            pw = pw.mul(&p_iv);
        }
        if !coeffs[j].is_zero() {
            acc = acc.add(&pw.mul_rational(&BigRational::from_integer(coeffs[j].clone())));
        }
    }
    acc
}

/// Exhaustively enumerate the member sets of a star system (distinct unions
/// of qualifying vertex-disjoint stars), within budget.
pub fn enumerate_star_members(
    sys: &StarSystem,
    filter: Option<&SubsetMask>,
    budget: &SearchBudget,
    ladder: &PrecisionLadder,
) -> Result<Vec<SubsetMask>> {
    let mut out: BTreeSet<SubsetMask> = BTreeSet::new();
    let mut steps: u64 = 0;
    for level in &sys.levels {
        let b = match level.stars_required.to_usize() {
            Some(b) if b <= sys.width => b,
            // more stars than vertices: level contributes nothing
            _ => continue,
        };
        let edges_per_star = level.edges_per_star;
        // candidate centers with enough qualifying degree
        let mut centers: Vec<(usize, Vec<usize>)> = Vec::new();
        for x in 0..sys.width {
            if let Some(f) = filter {
                if !f.contains(x) {
                    continue;
                }
            }
            let full_deg = sys.degree(x, None);
            let nbhd: Vec<usize> = (0..sys.support.len())
                .filter(|&ei| {
                    sys.support[ei].contains(x)
                        && filter.is_none_or(|f| sys.support[ei].is_subset_of(f))
                })
                .collect();
            if (nbhd.len() as u64) < edges_per_star {
                continue;
            }
            if !sys.star_size_qualifies(edges_per_star, full_deg, ladder, false)? {
                continue;
            }
            centers.push((x, nbhd));
        }
        // DFS over center combinations and edge subsets
        fn rec(
            sys: &StarSystem,
            centers: &[(usize, Vec<usize>)],
            start: usize,
            remaining_stars: usize,
            edges_per_star: u64,
            used: &SubsetMask,
            acc: &SubsetMask,
            out: &mut BTreeSet<SubsetMask>,
            steps: &mut u64,
            budget: &SearchBudget,
        ) -> Result<()> {
            if remaining_stars == 0 {
                out.insert(acc.clone());
                if out.len() as u64 > budget.max_members {
                    return Err(Error::MaterializationTooLarge(
                        "star family exceeds member budget".into(),
                    ));
                }
                return Ok(());
            }
            for ci in start..centers.len() {
                let (x, nbhd) = &centers[ci];
                if used.contains(*x) {
                    continue;
                }
                // choose edges_per_star edges from the disjoint-feasible part
                let free: Vec<usize> = nbhd
                    .iter()
                    .copied()
                    .filter(|&ei| {
                        let e = &sys.support[ei];
                        // edges may only touch `used` vertices not at all
                        !e.intersects(used)
                    })
                    .collect();
                if (free.len() as u64) < edges_per_star {
                    continue;
                }
                let m = edges_per_star as usize;
                let mut idx: Vec<usize> = (0..m).collect();
                loop {
                    *steps += 1;
                    if *steps > budget.max_steps {
                        return Err(Error::MaterializationTooLarge(
                            "star enumeration step budget exhausted".into(),
                        ));
                    }
                    let mut star_mask = SubsetMask::empty(sys.width);
                    for &i in &idx {
                        star_mask = star_mask.union(&sys.support[free[i]]);
                    }
                    rec(
                        sys,
                        centers,
                        ci + 1,
                        remaining_stars - 1,
                        edges_per_star,
                        &used.union(&star_mask),
                        &acc.union(&star_mask),
                        out,
                        steps,
                        budget,
                    )?;
                    // next combination
                    let mut i = m;
                    let mut advanced = false;
                    while i > 0 {
                        i -= 1;
                        if idx[i] != i + free.len() - m {
                            idx[i] += 1;
                            for j in i + 1..m {
                                idx[j] = idx[j - 1] + 1;
                            }
                            advanced = true;
                            break;
                        }
                    }
                    if !advanced {
                        break;
                    }
                }
            }
            Ok(())
        }
        rec(
            sys,
            &centers,
            0,
            b,
            edges_per_star,
            &SubsetMask::empty(sys.width),
            &SubsetMask::empty(sys.width),
            &mut out,
            &mut steps,
            budget,
        )?;
    }
    Ok(out.into_iter().collect())
}

/// Certified upper bound on the star-family weight: per level,
/// `e_b(t) * p^{b((k-1)L+1)}` where `t_x = binom(deg x, L) [L >= threshold(x)]`
/// and `e_b` is the elementary symmetric polynomial of degree `b`. Distinct
/// (centers, edge-sets) tuples dominate distinct members, so this bounds the
/// true weight from above.
fn star_weight_upper(
    sys: &StarSystem,
    filter: Option<&SubsetMask>,
    p_eval: &RealNum,
    prec: u32,
    ladder: &PrecisionLadder,
) -> Result<BigRational> {
    let mut total = BigRational::zero();
    for level in &sys.levels {
        let b = match level.stars_required.to_usize() {
            Some(b) if b <= sys.width => b,
            _ => continue,
        };
        let edges = level.edges_per_star;
        let mut terms: Vec<BigInt> = Vec::new();
        for x in 0..sys.width {
            if let Some(f) = filter {
                if !f.contains(x) {
                    continue;
                }
            }
            let full_deg = sys.degree(x, None);
            let avail = sys.degree(x, filter);
            if (avail as u64) < edges {
                continue;
            }
            // indeterminate comparisons count as qualifying: upper bound
            if !sys.star_size_qualifies(edges, full_deg, ladder, true)? {
                continue;
            }
            terms.push(binomial(avail, edges as usize));
        }
        if terms.len() < b {
            continue;
        }
        // elementary symmetric polynomial e_b over the terms
        let mut e = vec![BigInt::zero(); b + 1];
        e[0] = BigInt::one();
        for t in &terms {
            for j in (1..=b).rev() {
                let add = &e[j - 1] * t;
                e[j] += add;
            }
        }
        let member_size = (b as u64) * ((sys.k as u64 - 1) * edges + 1);
        let pw = p_eval.powi(member_size, prec).iv_at(prec);
        total += pw
            .mul_rational(&BigRational::from_integer(e[b].clone()))
            .hi()
            .clone();
    }
    Ok(total)
}

/// Witness search for star-system membership, re-exported for direct use.
pub fn star_witness_for(
    sys: &StarSystem,
    s: &SubsetMask,
    ladder: &PrecisionLadder,
) -> Result<Option<StarWitness>> {
    star_greedy_witness(sys, s, ladder)
}
