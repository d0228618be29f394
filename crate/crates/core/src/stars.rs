//! Greedy witness search for star-system membership.

use crate::cover::StarSystem;
use crate::error::{Error, Result};
use crate::ground::SubsetMask;
use crate::interval::PrecisionLadder;
use crate::real::ExactForm;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

#[derive(Debug, Clone)]
pub struct WitnessStar {
    pub center: usize,
    pub edges: Vec<SubsetMask>,
}

impl WitnessStar {
    pub fn vertex_set(&self) -> SubsetMask {
        let mut m = SubsetMask::empty(self.edges[0].width());
        for e in &self.edges {
            m = m.union(e);
        }
        m
    }
}

/// A collection of vertex-disjoint stars certifying membership at one level.
#[derive(Debug, Clone)]
pub struct StarWitness {
    pub level_index: usize,
    pub edges_per_star: u64,
    pub stars: Vec<WitnessStar>,
}

impl StarWitness {
    pub fn member_set(&self) -> SubsetMask {
        let mut m = self.stars[0].vertex_set();
        for s in &self.stars[1..] {
            m = m.union(&s.vertex_set());
        }
        m
    }
}

/// Greedily extract vertex-disjoint stars inside `s` and assemble a witness
/// for some level of the system, if possible.
///
/// Star collection: repeatedly pick the center in the remaining vertex set
/// whose current neighborhood (edges fully inside the remaining set) is
/// largest, subject to that neighborhood reaching the center's degree
/// condition; remove the star's vertices; stop when no center qualifies.
/// Ties break to the smallest vertex index. A level is then served by the
/// collected stars that are large enough and whose centers still satisfy the
/// degree condition at the trimmed size.
pub fn star_greedy_witness(
    sys: &StarSystem,
    s: &SubsetMask,
    ladder: &PrecisionLadder,
) -> Result<Option<StarWitness>> {
    let mut remaining = s.clone();
    // (center, current edges, current degree, full degree)
    let mut collected: Vec<(usize, Vec<usize>, usize)> = Vec::new();
    loop {
        let mut best: Option<(usize, Vec<usize>)> = None;
        for x in remaining.elems() {
            let nbhd: Vec<usize> = (0..sys.support.len())
                .filter(|&ei| {
                    sys.support[ei].contains(x) && sys.support[ei].is_subset_of(&remaining)
                })
                .collect();
            if nbhd.is_empty() {
                continue;
            }
            let full_deg = sys.degree(x, None);
            let qualifies = {
                let lhs =
                    ExactForm::from_rational(BigRational::from_integer(BigInt::from(nbhd.len())));
                let thresh = sys.center_threshold(full_deg)?;
                lhs.cmp(&thresh, ladder)? != std::cmp::Ordering::Less
            };
            if !qualifies {
                continue;
            }
            let better = match &best {
                None => true,
                Some((bx, bn)) => {
                    nbhd.len() > bn.len() || (nbhd.len() == bn.len() && x < *bx)
                }
            };
            if better {
                best = Some((x, nbhd));
            }
        }
        let Some((x, nbhd)) = best else { break };
        let mut star_vertices = SubsetMask::empty(sys.width);
        for &ei in &nbhd {
            star_vertices = star_vertices.union(&sys.support[ei]);
        }
        remaining = remaining.difference(&star_vertices);
        let full_deg = sys.degree(x, None);
        collected.push((x, nbhd, full_deg));
    }
    if collected.is_empty() {
        return Ok(None);
    }
    for (level_index, level) in sys.levels.iter().enumerate() {
        let Some(b) = level.stars_required.to_usize() else {
            continue;
        };
        if b == 0 || b > collected.len() {
            continue;
        }
        let edges_per_star = level.edges_per_star;
        let mut eligible: Vec<&(usize, Vec<usize>, usize)> = Vec::new();
        for star in &collected {
            if (star.1.len() as u64) < edges_per_star {
                continue;
            }
            if !sys.star_size_qualifies(edges_per_star, star.2, ladder, false)? {
                continue;
            }
            eligible.push(star);
            if eligible.len() == b {
                break;
            }
        }
        if eligible.len() < b {
            continue;
        }
        let stars = eligible
            .into_iter()
            .map(|(x, nbhd, _)| {
                // trim deterministically: lexicographically smallest edges
                let mut edges: Vec<SubsetMask> =
                    nbhd.iter().map(|&ei| sys.support[ei].clone()).collect();
                edges.sort();
                edges.truncate(edges_per_star as usize);
                WitnessStar { center: *x, edges }
            })
            .collect();
        return Ok(Some(StarWitness {
            level_index,
            edges_per_star,
            stars,
        }));
    }
    Ok(None)
}

/// Check every invariant a witness must satisfy; returns a description of the
/// first violation.
pub fn validate_witness(
    sys: &StarSystem,
    witness: &StarWitness,
    s: &SubsetMask,
    ladder: &PrecisionLadder,
) -> Result<()> {
    let level = sys
        .levels
        .get(witness.level_index)
        .ok_or_else(|| Error::InvalidInput("witness level out of range".into()))?;
    let b = level
        .stars_required
        .to_usize()
        .ok_or_else(|| Error::InvalidInput("level star count overflows".into()))?;
    if witness.stars.len() != b {
        return Err(Error::InvalidInput(format!(
            "witness has {} stars, level needs {}",
            witness.stars.len(),
            b
        )));
    }
    for (i, star) in witness.stars.iter().enumerate() {
        if star.edges.len() as u64 != level.edges_per_star {
            return Err(Error::InvalidInput(format!(
                "star {} has {} edges, level needs {}",
                i,
                star.edges.len(),
                level.edges_per_star
            )));
        }
        for e in &star.edges {
            if !sys.support.contains(e) {
                return Err(Error::InvalidInput("witness edge not in support".into()));
            }
            if !e.is_subset_of(s) {
                return Err(Error::InvalidInput("witness edge leaves the set".into()));
            }
            if !e.contains(star.center) {
                return Err(Error::InvalidInput("edge misses its center".into()));
            }
        }
        // edges pairwise intersect exactly in the center
        for a in 0..star.edges.len() {
            for c in a + 1..star.edges.len() {
                let inter = star.edges[a].intersection(&star.edges[c]);
                if inter.cardinality() != 1 || !inter.contains(star.center) {
                    return Err(Error::InvalidInput(
                        "edges do not meet exactly at the center".into(),
                    ));
                }
            }
        }
        // degree condition at the trimmed size, against full-hypergraph degree
        let full_deg = sys.degree(star.center, None);
        if !sys.star_size_qualifies(level.edges_per_star, full_deg, ladder, false)? {
            return Err(Error::InvalidInput(
                "degree condition fails at witness size".into(),
            ));
        }
    }
    // vertex-disjointness across stars
    for i in 0..witness.stars.len() {
        for j in i + 1..witness.stars.len() {
            if witness.stars[i]
                .vertex_set()
                .intersects(&witness.stars[j].vertex_set())
            {
                return Err(Error::InvalidInput("stars share vertices".into()));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::StarLevel;
    use crate::ratio::rat_int;
    use num_bigint::BigUint;

    fn mask(width: usize, elems: &[usize]) -> SubsetMask {
        SubsetMask::from_elems(width, elems).unwrap()
    }

    fn plane_system(levels: Vec<StarLevel>) -> StarSystem {
        let lines: [&[usize]; 7] = [
            &[0, 1, 2],
            &[0, 3, 4],
            &[0, 5, 6],
            &[1, 3, 5],
            &[1, 4, 6],
            &[2, 3, 6],
            &[2, 4, 5],
        ];
        StarSystem::new(
            7,
            3,
            rat_int(2),
            ExactForm::one(),
            lines.iter().map(|l| mask(7, l)).collect(),
            levels,
        )
        .unwrap()
    }

    #[test]
    fn single_edge_star_witness() {
        let sys = plane_system(vec![StarLevel {
            edges_per_star: 1,
            stars_required: BigUint::from(1u32),
        }]);
        let ladder = PrecisionLadder::default();
        let s = mask(7, &[0, 1, 2]);
        let w = star_greedy_witness(&sys, &s, &ladder).unwrap().unwrap();
        validate_witness(&sys, &w, &s, &ladder).unwrap();
        assert_eq!(w.stars.len(), 1);
        assert_eq!(w.stars[0].edges.len(), 1);
    }

    #[test]
    fn no_witness_outside_upset() {
        let sys = plane_system(vec![StarLevel {
            edges_per_star: 1,
            stars_required: BigUint::from(1u32),
        }]);
        let ladder = PrecisionLadder::default();
        // {0,1,3} contains no line
        let s = mask(7, &[0, 1, 3]);
        assert!(star_greedy_witness(&sys, &s, &ladder).unwrap().is_none());
    }

    #[test]
    fn greedy_extracts_disjoint_stars_on_plane() {
        // three edges per star is the full pencil through a point; after one
        // star the rest of the plane has no disjoint pencil, so ask for
        // 1 star with 3 edges.
        let sys = plane_system(vec![StarLevel {
            edges_per_star: 3,
            stars_required: BigUint::from(1u32),
        }]);
        let ladder = PrecisionLadder::default();
        let s = SubsetMask::full(7);
        let w = star_greedy_witness(&sys, &s, &ladder).unwrap().unwrap();
        validate_witness(&sys, &w, &s, &ladder).unwrap();
        assert_eq!(w.member_set().cardinality(), 7); // 3 edges * 2 + center
    }

    #[test]
    fn witness_respects_level_order_and_disjointness() {
        let support = vec![
            mask(14, &[0, 1, 2]),
            mask(14, &[0, 3, 4]),
            mask(14, &[7, 8, 9]),
            mask(14, &[7, 10, 11]),
        ];
        let sys = StarSystem::new(
            14,
            3,
            rat_int(1),
            ExactForm::one(),
            support,
            vec![StarLevel {
                edges_per_star: 2,
                stars_required: BigUint::from(2u32),
            }],
        )
        .unwrap();
        let ladder = PrecisionLadder::default();
        let s = SubsetMask::full(14);
        let w = star_greedy_witness(&sys, &s, &ladder).unwrap().unwrap();
        validate_witness(&sys, &w, &s, &ladder).unwrap();
        assert_eq!(w.stars.len(), 2);
        let centers: Vec<usize> = w.stars.iter().map(|st| st.center).collect();
        assert!(centers.contains(&0) && centers.contains(&7));
    }
}
