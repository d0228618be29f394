//! Certificates pairing a weight function with a cover family, and their
//! independent verification.
//!
//! A certificate claims that the covered up-set of `g` (or its
//! degree-weighted sub-up-set) is contained in the up-set of `cover`, and
//! that `w(cover, p/loss) <= bound`. Verification re-establishes both claims
//! from scratch; every inequality must hold at the conservative end of its
//! interval, and indeterminate comparisons fail.

use crate::cover::{CoverFamily, SearchBudget};
use crate::error::{Error, Result};
use crate::ground::SubsetMask;
use crate::interval::{Interval, PrecisionLadder};
use crate::ratio::{format_rational, parse_rational, to_decimal};
use crate::real::{parse_exact_form, ExactForm, RealNum};
use crate::upset::{member_upset_jl, minimal_upset_elements, JlParams};
use crate::weights::{WeightFunction, WeightFunctionJson};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverageMode {
    /// Check every target member over the support universe.
    Exhaustive,
    /// Check the minimal elements of the covered up-set (equivalent for the
    /// full target by monotonicity).
    MinimalElements,
    /// Check pseudorandomly sampled target members.
    Sampled { count: usize, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CoverageTarget {
    /// The covered up-set of `g`.
    Full,
    /// The degree-weighted sub-up-set with parameters `J`, `L`.
    DegreeWeighted { j: BigRational, l: ExactForm },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub algorithm: String,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
}

#[derive(Debug, Clone)]
pub struct Certificate {
    pub g: WeightFunction,
    pub p: RealNum,
    pub cover: CoverFamily,
    pub loss: ExactForm,
    pub bound: BigRational,
    pub coverage_mode: CoverageMode,
    pub target: CoverageTarget,
    pub provenance: Provenance,
}

#[derive(Debug, Clone)]
pub struct CoverageReport {
    pub checked: usize,
    /// First few failing sets, for diagnostics.
    pub failures: Vec<SubsetMask>,
    pub failure_count: usize,
    pub indeterminate: usize,
    /// No target member exists; coverage holds vacuously.
    pub vacuous: bool,
}

#[derive(Debug, Clone)]
pub struct WeightReport {
    pub value: Interval,
    pub upper_only: bool,
    pub bound: BigRational,
    pub ok: bool,
}

#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub coverage: CoverageReport,
    pub weight: WeightReport,
    pub valid: bool,
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Exhaustive scans cover `2^u` subsets only while `u` is at most this.
    pub enum_budget: usize,
    pub search: SearchBudget,
    pub ladder: PrecisionLadder,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            enum_budget: crate::upset::DEFAULT_ENUM_BUDGET,
            search: SearchBudget::default(),
            ladder: PrecisionLadder::default(),
        }
    }
}

impl Certificate {
    /// Membership of `S` in the coverage target.
    fn in_target(&self, s: &SubsetMask, ladder: &PrecisionLadder) -> Result<bool> {
        match &self.target {
            CoverageTarget::Full => Ok(self.g.member_upset(s)),
            CoverageTarget::DegreeWeighted { j, l } => {
                let params = JlParams {
                    j: j.clone(),
                    l: l.clone(),
                };
                member_upset_jl(&self.g, &params, s, ladder)
            }
        }
    }

    /// The sets whose coverage the chosen mode checks.
    ///
    /// Target membership only depends on `S` intersected with the support
    /// union `U` (elements outside the support contribute nothing to either
    /// side), and covered-up-set membership is monotone, so checking all
    /// target members inside `U` certifies every target member of `2^X`.
    fn coverage_set(&self, opts: &VerifyOptions) -> Result<Vec<SubsetMask>> {
        let universe = self.g.support_union();
        let u = universe.elems();
        match &self.coverage_mode {
            CoverageMode::Exhaustive => {
                if u.len() > opts.enum_budget || u.len() > 62 {
                    return Err(Error::BudgetExceeded(format!(
                        "exhaustive coverage over 2^{} support elements",
                        u.len()
                    )));
                }
                let mut out = Vec::new();
                for bits in 0u64..(1u64 << u.len()) {
                    let mut s = SubsetMask::empty(self.g.ground().size());
                    for (i, &e) in u.iter().enumerate() {
                        if (bits >> i) & 1 == 1 {
                            s.insert(e);
                        }
                    }
                    if self.in_target(&s, &opts.ladder)? {
                        out.push(s);
                    }
                }
                Ok(out)
            }
            CoverageMode::MinimalElements => match &self.target {
                CoverageTarget::Full => minimal_upset_elements(&self.g, opts.enum_budget),
                // The sub-up-set is not upward closed, so there is no
                // antichain shortcut; check all of its members instead.
                CoverageTarget::DegreeWeighted { .. } => {
                    let mut all = Certificate {
                        coverage_mode: CoverageMode::Exhaustive,
                        ..self.clone()
                    };
                    all.coverage_mode = CoverageMode::Exhaustive;
                    all.coverage_set(opts)
                }
            },
            CoverageMode::Sampled { count, seed } => {
                let mut rng = ChaCha20Rng::seed_from_u64(*seed);
                let mut out = Vec::new();
                let attempts = count.saturating_mul(20).max(64);
                // the full support universe is the most likely member
                if self.in_target(&universe, &opts.ladder)? {
                    out.push(self.shrink_in_target(universe.clone(), &mut rng, &opts.ladder)?);
                }
                for _ in 0..attempts {
                    if out.len() >= *count {
                        break;
                    }
                    let mut s = SubsetMask::empty(self.g.ground().size());
                    for &e in &u {
                        if rng.gen::<bool>() {
                            s.insert(e);
                        }
                    }
                    if self.in_target(&s, &opts.ladder)? {
                        out.push(self.shrink_in_target(s, &mut rng, &opts.ladder)?);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Randomly remove elements while the set stays in the target.
    fn shrink_in_target(
        &self,
        mut s: SubsetMask,
        rng: &mut ChaCha20Rng,
        ladder: &PrecisionLadder,
    ) -> Result<SubsetMask> {
        let mut order = s.elems();
        order.shuffle(rng);
        for x in order {
            let mut t = s.clone();
            t.remove(x);
            if self.in_target(&t, ladder)? {
                s = t;
            }
        }
        Ok(s)
    }
}

/// Re-establish both certificate claims from scratch.
pub fn verify_certificate(cert: &Certificate, opts: &VerifyOptions) -> Result<VerificationReport> {
    let targets = cert.coverage_set(opts)?;
    let mut failures = Vec::new();
    let mut failure_count = 0usize;
    let mut indeterminate = 0usize;
    for s in &targets {
        match cert.cover.member_of_upset(s, &opts.search, &opts.ladder) {
            Ok(true) => {}
            Ok(false) => {
                failure_count += 1;
                if failures.len() < 16 {
                    failures.push(s.clone());
                }
            }
            Err(Error::WitnessSearchInconclusive(_)) => {
                indeterminate += 1;
                if failures.len() < 16 {
                    failures.push(s.clone());
                }
            }
            Err(e) => return Err(e),
        }
    }
    let coverage = CoverageReport {
        checked: targets.len(),
        failures,
        failure_count,
        indeterminate,
        vacuous: targets.is_empty(),
    };

    let p_refinable = cert.p.form().is_some();
    let mut weight_ok = false;
    let mut last_value = Interval::zero();
    let mut last_upper_only = false;
    for prec in opts.ladder.steps() {
        let p_eval = cert.p.div_form(&cert.loss, prec)?;
        let w = cert
            .cover
            .weight(&p_eval, prec, &opts.search, &opts.ladder)?;
        last_value = w.iv.clone();
        last_upper_only = w.upper_only;
        if w.iv.hi() <= &cert.bound {
            weight_ok = true;
            break;
        }
        if !w.upper_only && w.iv.lo() > &cert.bound {
            weight_ok = false;
            break;
        }
        if !p_refinable {
            break;
        }
    }
    let weight = WeightReport {
        value: last_value,
        upper_only: last_upper_only,
        bound: cert.bound.clone(),
        ok: weight_ok,
    };
    let valid = coverage.failure_count == 0 && coverage.indeterminate == 0 && weight.ok;
    Ok(VerificationReport {
        coverage,
        weight,
        valid,
    })
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
pub struct CertificateJson {
    pub g: WeightFunctionJson,
    pub p: RealNumJson,
    pub loss: String,
    pub bound: String,
    pub coverage_mode: CoverageModeJson,
    pub target: CoverageTargetJson,
    pub cover: CoverFamilyJson,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub status: Option<StatusJson>,
}

#[derive(Serialize, Deserialize)]
pub struct RealNumJson {
    pub lo: String,
    pub hi: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum CoverageModeJson {
    Exhaustive,
    MinimalElements,
    Sampled { count: usize, seed: u64 },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum CoverageTargetJson {
    Full,
    DegreeWeighted { j: String, l: String },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum CoverFamilyJson {
    Explicit {
        width: usize,
        members: Vec<Vec<usize>>,
    },
    SingletonLevels {
        width: usize,
        order: Vec<usize>,
        level_bound: String,
    },
    Volume {
        width: usize,
        v: Vec<usize>,
        t: usize,
    },
    StarSystem {
        width: usize,
        k: usize,
        r: String,
        loss_l: String,
        support: Vec<Vec<usize>>,
        levels: Vec<StarLevelJson>,
    },
    Union {
        width: usize,
        parts: Vec<CoverFamilyJson>,
    },
    CopyProjection {
        copy: usize,
        copy_size: usize,
        inner: Box<CoverFamilyJson>,
    },
}

#[derive(Serialize, Deserialize)]
pub struct StarLevelJson {
    pub edges_per_star: u64,
    pub stars_required: String,
}

#[derive(Serialize, Deserialize)]
pub struct StatusJson {
    pub valid: bool,
    pub coverage: CoverageStatusJson,
    pub weight: WeightStatusJson,
}

#[derive(Serialize, Deserialize)]
pub struct CoverageStatusJson {
    pub checked: usize,
    pub failures: Vec<Vec<usize>>,
    pub failure_count: usize,
    pub indeterminate: usize,
    pub vacuous: bool,
}

#[derive(Serialize, Deserialize)]
pub struct WeightStatusJson {
    pub lo: String,
    pub hi: String,
    pub upper_only: bool,
    pub bound: String,
    pub ok: bool,
}

const DECIMAL_DIGITS: u32 = 40;

pub fn real_to_json(p: &RealNum) -> RealNumJson {
    RealNumJson {
        lo: to_decimal(p.interval().lo(), DECIMAL_DIGITS, false),
        hi: to_decimal(p.interval().hi(), DECIMAL_DIGITS, true),
        form: p.form().map(|f| f.to_string()),
    }
}

pub fn real_from_json(j: &RealNumJson, prec: u32) -> Result<RealNum> {
    if let Some(form) = &j.form {
        return Ok(RealNum::from_form(parse_exact_form(form)?, prec));
    }
    let lo = parse_rational(&j.lo)?;
    let hi = parse_rational(&j.hi)?;
    Ok(RealNum::from_interval(Interval::new(lo, hi)))
}

pub fn cover_to_json(c: &CoverFamily) -> CoverFamilyJson {
    match c {
        CoverFamily::Explicit { width, members } => CoverFamilyJson::Explicit {
            width: *width,
            members: members.iter().map(|m| m.elems()).collect(),
        },
        CoverFamily::SingletonLevels {
            width,
            order,
            level_bound,
        } => CoverFamilyJson::SingletonLevels {
            width: *width,
            order: order.clone(),
            level_bound: level_bound.to_string(),
        },
        CoverFamily::Volume { v, t } => CoverFamilyJson::Volume {
            width: v.width(),
            v: v.elems(),
            t: *t,
        },
        CoverFamily::StarSystem(s) => CoverFamilyJson::StarSystem {
            width: s.width,
            k: s.k,
            r: format_rational(&s.r),
            loss_l: s.loss_l.to_string(),
            support: s.support.iter().map(|e| e.elems()).collect(),
            levels: s
                .levels
                .iter()
                .map(|l| StarLevelJson {
                    edges_per_star: l.edges_per_star,
                    stars_required: l.stars_required.to_string(),
                })
                .collect(),
        },
        CoverFamily::Union { width, parts } => CoverFamilyJson::Union {
            width: *width,
            parts: parts.iter().map(cover_to_json).collect(),
        },
        CoverFamily::CopyProjection {
            inner,
            copy,
            copy_size,
        } => CoverFamilyJson::CopyProjection {
            copy: *copy,
            copy_size: *copy_size,
            inner: Box::new(cover_to_json(inner)),
        },
    }
}

pub fn cover_from_json(j: &CoverFamilyJson) -> Result<CoverFamily> {
    Ok(match j {
        CoverFamilyJson::Explicit { width, members } => CoverFamily::explicit(
            *width,
            members
                .iter()
                .map(|els| SubsetMask::from_elems(*width, els))
                .collect::<Result<Vec<_>>>()?,
        )?,
        CoverFamilyJson::SingletonLevels {
            width,
            order,
            level_bound,
        } => CoverFamily::SingletonLevels {
            width: *width,
            order: order.clone(),
            level_bound: level_bound
                .parse::<BigUint>()
                .map_err(|_| Error::Parse("bad level bound".into()))?,
        },
        CoverFamilyJson::Volume { width, v, t } => CoverFamily::Volume {
            v: SubsetMask::from_elems(*width, v)?,
            t: *t,
        },
        CoverFamilyJson::StarSystem {
            width,
            k,
            r,
            loss_l,
            support,
            levels,
        } => CoverFamily::StarSystem(crate::cover::StarSystem::new(
            *width,
            *k,
            parse_rational(r)?,
            parse_exact_form(loss_l)?,
            support
                .iter()
                .map(|e| SubsetMask::from_elems(*width, e))
                .collect::<Result<Vec<_>>>()?,
            levels
                .iter()
                .map(|l| {
                    Ok(crate::cover::StarLevel {
                        edges_per_star: l.edges_per_star,
                        stars_required: l
                            .stars_required
                            .parse::<BigUint>()
                            .map_err(|_| Error::Parse("bad star count".into()))?,
                    })
                })
                .collect::<Result<Vec<_>>>()?,
        )?),
        CoverFamilyJson::Union { width, parts } => CoverFamily::Union {
            width: *width,
            parts: parts.iter().map(cover_from_json).collect::<Result<Vec<_>>>()?,
        },
        CoverFamilyJson::CopyProjection {
            copy,
            copy_size,
            inner,
        } => CoverFamily::CopyProjection {
            inner: Box::new(cover_from_json(inner)?),
            copy: *copy,
            copy_size: *copy_size,
        },
    })
}

impl Certificate {
    pub fn to_json(&self, status: Option<&VerificationReport>) -> CertificateJson {
        CertificateJson {
            g: self.g.to_json(),
            p: real_to_json(&self.p),
            loss: self.loss.to_string(),
            bound: format_rational(&self.bound),
            coverage_mode: match &self.coverage_mode {
                CoverageMode::Exhaustive => CoverageModeJson::Exhaustive,
                CoverageMode::MinimalElements => CoverageModeJson::MinimalElements,
                CoverageMode::Sampled { count, seed } => CoverageModeJson::Sampled {
                    count: *count,
                    seed: *seed,
                },
            },
            target: match &self.target {
                CoverageTarget::Full => CoverageTargetJson::Full,
                CoverageTarget::DegreeWeighted { j, l } => CoverageTargetJson::DegreeWeighted {
                    j: format_rational(j),
                    l: l.to_string(),
                },
            },
            cover: cover_to_json(&self.cover),
            provenance: self.provenance.clone(),
            status: status.map(|r| StatusJson {
                valid: r.valid,
                coverage: CoverageStatusJson {
                    checked: r.coverage.checked,
                    failures: r.coverage.failures.iter().map(|m| m.elems()).collect(),
                    failure_count: r.coverage.failure_count,
                    indeterminate: r.coverage.indeterminate,
                    vacuous: r.coverage.vacuous,
                },
                weight: WeightStatusJson {
                    lo: to_decimal(r.weight.value.lo(), DECIMAL_DIGITS, false),
                    hi: to_decimal(r.weight.value.hi(), DECIMAL_DIGITS, true),
                    upper_only: r.weight.upper_only,
                    bound: format_rational(&r.weight.bound),
                    ok: r.weight.ok,
                },
            }),
        }
    }

    pub fn from_json(j: &CertificateJson, prec: u32) -> Result<Self> {
        Ok(Certificate {
            g: WeightFunction::from_json(&j.g)?,
            p: real_from_json(&j.p, prec)?,
            loss: parse_exact_form(&j.loss)?,
            bound: parse_rational(&j.bound)?,
            coverage_mode: match &j.coverage_mode {
                CoverageModeJson::Exhaustive => CoverageMode::Exhaustive,
                CoverageModeJson::MinimalElements => CoverageMode::MinimalElements,
                CoverageModeJson::Sampled { count, seed } => CoverageMode::Sampled {
                    count: *count,
                    seed: *seed,
                },
            },
            target: match &j.target {
                CoverageTargetJson::Full => CoverageTarget::Full,
                CoverageTargetJson::DegreeWeighted { j: jj, l } => {
                    CoverageTarget::DegreeWeighted {
                        j: parse_rational(jj)?,
                        l: parse_exact_form(l)?,
                    }
                }
            },
            cover: cover_from_json(&j.cover)?,
            provenance: j.provenance.clone(),
        })
    }
}
