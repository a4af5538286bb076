//! Equiprojectivity deciders.
//!
//! Two independent criteria are implemented. The edge-facet matching
//! criterion partitions all edge-facet incidences into compensating pairs;
//! the aggregated-cone criterion classifies every edge direction as
//! full-plane or partition. A sampling oracle counts actual shadow vertices
//! from facet-normal sign crossings, with no projection ever materialized.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::sign_rat;
use crate::cones::{
    aggregated_cone, cone_is_partition_with_opposite, direction_of_edge, edge_directions,
    EdgeDirection,
};
use crate::geom::Polytope3;
use crate::vec3::Vec3;
use crate::{Error, Result};

/// Largest per-direction incidence class the matcher accepts.
pub const DEFAULT_MATCH_GROUP_BUDGET: usize = 64;

/// Random directions are drawn from this integer cube.
pub const DIRECTION_SAMPLE_BOUND: i64 = 1_000_000;

/// A pair (edge, facet) with the edge lying in the facet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EdgeFacetIncidence {
    pub edge: usize,
    pub facet: usize,
}

/// A partition of all edge-facet incidences into compensating pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompensationPairing {
    pub pairs: Vec<(EdgeFacetIncidence, EdgeFacetIncidence)>,
}

impl CompensationPairing {
    /// Verifies that the pairs partition the full incidence set and that
    /// every pair compensates.
    pub fn is_valid(&self, p: &Polytope3) -> bool {
        let mut seen: BTreeSet<EdgeFacetIncidence> = BTreeSet::new();
        for (a, b) in &self.pairs {
            if !seen.insert(*a) || !seen.insert(*b) {
                return false;
            }
            if !matches!(compensates(p, a, b), Ok(true)) {
                return false;
            }
        }
        seen.len() == all_incidences(p).len()
    }
}

/// All edge-facet incidences of a 3-polytope, in canonical order.
pub fn all_incidences(p: &Polytope3) -> Vec<EdgeFacetIncidence> {
    let mut out = Vec::with_capacity(2 * p.edge_count());
    for e in 0..p.edge_count() {
        for &f in p.edge_facets(e) {
            out.push(EdgeFacetIncidence { edge: e, facet: f });
        }
    }
    out.sort_unstable();
    out
}

/// Compensation test for two incidences: the edges must be parallel and
/// either lie in the same facet, or in distinct parallel facets whose
/// relative interiors are on the same side of the plane through both edges.
pub fn compensates(
    p: &Polytope3,
    i1: &EdgeFacetIncidence,
    i2: &EdgeFacetIncidence,
) -> Result<bool> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    if i1 == i2 {
        return Err(Error::InvalidIncidencePair);
    }
    for i in [i1, i2] {
        if !p.edge_facets(i.edge).contains(&i.facet) {
            return Err(Error::InvalidParameter(format!(
                "edge {} does not lie in facet {}",
                i.edge, i.facet
            )));
        }
    }
    if direction_of_edge(p, i1.edge) != direction_of_edge(p, i2.edge) {
        return Ok(false);
    }
    if i1.facet == i2.facet {
        return Ok(i1.edge != i2.edge);
    }
    let n1 = p.facet_normal(i1.facet);
    let n2 = p.facet_normal(i2.facet);
    if *n2 != -n1 {
        return Ok(false); // distinct parallel facets have opposite primitive normals
    }
    let (a1, _) = p.edge_endpoints(i1.edge);
    let (a2, _) = p.edge_endpoints(i2.edge);
    let offset = a2 - a1;
    let u = direction_of_edge(p, i1.edge).vector().to_vec3();
    let m = u.cross(&offset);
    if m.is_zero() {
        return Ok(false); // edges on a single line cannot lie in parallel distinct facets
    }
    let s1 = sign_rat(&m.dot(&(&p.facet_centroid(i1.facet) - a1)));
    let s2 = sign_rat(&m.dot(&(&p.facet_centroid(i2.facet) - a1)));
    debug_assert!(s1 != 0 && s2 != 0, "facet interiors cannot lie in the edge plane");
    Ok(s1 == s2)
}

/// Hasan-Lubiw criterion: a pairing exists iff the polytope is
/// equiprojective. Search decomposes by edge direction since compensating
/// incidences share one, then runs exact backtracking matching per class.
pub fn check_hasan_lubiw(p: &Polytope3) -> Result<Option<CompensationPairing>> {
    check_hasan_lubiw_with_budget(p, DEFAULT_MATCH_GROUP_BUDGET)
}

pub fn check_hasan_lubiw_with_budget(
    p: &Polytope3,
    max_group: usize,
) -> Result<Option<CompensationPairing>> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    let incidences = all_incidences(p);
    let mut groups: BTreeMap<EdgeDirection, Vec<EdgeFacetIncidence>> = BTreeMap::new();
    for inc in incidences {
        groups.entry(direction_of_edge(p, inc.edge)).or_default().push(inc);
    }

    let mut pairs: Vec<(EdgeFacetIncidence, EdgeFacetIncidence)> = Vec::new();
    for (dir, group) in groups {
        if group.len() % 2 != 0 {
            return Ok(None);
        }
        if group.len() > max_group {
            return Err(Error::ResourceBudget(format!(
                "direction {dir} has {} incidences (budget {max_group})",
                group.len()
            )));
        }
        let n = group.len();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for j in (i + 1)..n {
                if compensates(p, &group[i], &group[j])? {
                    adj[i].push(j);
                    adj[j].push(i);
                }
            }
        }
        match perfect_matching(&adj) {
            Some(matching) => {
                for (i, j) in matching {
                    pairs.push((group[i], group[j]));
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(CompensationPairing { pairs }))
}

/// Exact backtracking perfect matching. Always pairs the unmatched vertex
/// with the fewest remaining partners first, which makes the search complete
/// and prunes early.
fn perfect_matching(adj: &[Vec<usize>]) -> Option<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut mate: Vec<usize> = vec![usize::MAX; n];

    fn rec(adj: &[Vec<usize>], mate: &mut Vec<usize>) -> bool {
        let free: Vec<usize> =
            (0..adj.len()).filter(|&i| mate[i] == usize::MAX).collect();
        let Some(&pick) = free
            .iter()
            .min_by_key(|&&i| adj[i].iter().filter(|&&j| mate[j] == usize::MAX).count())
        else {
            return true;
        };
        let candidates: Vec<usize> =
            adj[pick].iter().copied().filter(|&j| mate[j] == usize::MAX).collect();
        for c in candidates {
            mate[pick] = c;
            mate[c] = pick;
            if rec(adj, mate) {
                return true;
            }
            mate[pick] = usize::MAX;
            mate[c] = usize::MAX;
        }
        false
    }

    if !rec(adj, &mut mate) {
        return None;
    }
    let mut out = Vec::with_capacity(n / 2);
    for i in 0..n {
        if mate[i] > i {
            out.push((i, mate[i]));
        }
    }
    Some(out)
}

/// Classification of one edge direction by the aggregated-cone criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DirectionCase {
    FullPlane,
    Partition,
    Fail,
}

#[derive(Clone, Debug)]
pub struct EquiprojectivityReport {
    pub is_equiprojective: bool,
    /// Present exactly when the polytope is equiprojective.
    pub kappa: Option<u64>,
    pub per_direction: BTreeMap<EdgeDirection, DirectionCase>,
    pub pairing: Option<CompensationPairing>,
}

/// Aggregated-cone criterion: equiprojective iff every edge direction is
/// FullPlane or Partition. When it passes, κ is the multiplicity sum and an
/// explicit compensating pairing is attached.
pub fn check_aggregated(p: &Polytope3) -> Result<EquiprojectivityReport> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    let mut per_direction = BTreeMap::new();
    let mut kappa: u64 = 0;
    let mut ok = true;
    for u in edge_directions(p) {
        let cone = aggregated_cone(p, &u)?;
        let case = if cone.full_plane {
            kappa += 2;
            DirectionCase::FullPlane
        } else if cone_is_partition_with_opposite(&cone) {
            kappa += 1;
            DirectionCase::Partition
        } else {
            ok = false;
            DirectionCase::Fail
        };
        per_direction.insert(u, case);
    }
    let pairing = if ok { Some(lemma_pairing(p)?) } else { None };
    Ok(EquiprojectivityReport {
        is_equiprojective: ok,
        kappa: ok.then_some(kappa),
        per_direction,
        pairing,
    })
}

/// The explicit pairing from the constructive direction of the cone
/// criterion: same-facet pairs first, then parallel-facet pairs across
/// opposite bounding normals. Valid whenever the cone criterion passes.
pub fn lemma_pairing(p: &Polytope3) -> Result<CompensationPairing> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    let mut edge_id: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for (e, &(a, b)) in p.edges().iter().enumerate() {
        edge_id.insert((a, b), e);
    }
    let facet_edges = |f: usize| -> Vec<usize> {
        let cycle = &p.facets()[f].cycle;
        (0..cycle.len())
            .map(|k| {
                let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                edge_id[&(a.min(b), a.max(b))]
            })
            .collect()
    };

    let mut used: BTreeSet<EdgeFacetIncidence> = BTreeSet::new();
    let mut pairs = Vec::new();
    for inc in all_incidences(p) {
        if used.contains(&inc) {
            continue;
        }
        let u = direction_of_edge(p, inc.edge);
        let partner = match facet_edges(inc.facet)
            .into_iter()
            .find(|&e| e != inc.edge && direction_of_edge(p, e) == u)
        {
            Some(e2) => EdgeFacetIncidence { edge: e2, facet: inc.facet },
            None => {
                // unique parallel edge in this facet: pair across the
                // opposite parallel facet, which must also have a unique one
                let n = p.facet_normal(inc.facet);
                let opposite = (0..p.facet_count())
                    .find(|&f| *p.facet_normal(f) == -n)
                    .ok_or_else(|| {
                        Error::InvalidParameter(
                            "no parallel facet; polytope is not equiprojective".into(),
                        )
                    })?;
                let e2 = facet_edges(opposite)
                    .into_iter()
                    .find(|&e| direction_of_edge(p, e) == u)
                    .ok_or_else(|| {
                        Error::InvalidParameter(
                            "parallel facet has no parallel edge; polytope is not equiprojective"
                                .into(),
                        )
                    })?;
                EdgeFacetIncidence { edge: e2, facet: opposite }
            }
        };
        if used.contains(&partner) || !compensates(p, &inc, &partner)? {
            return Err(Error::InvalidParameter(
                "explicit pairing construction failed; polytope is not equiprojective".into(),
            ));
        }
        used.insert(inc);
        used.insert(partner);
        pairs.push((inc, partner));
    }
    Ok(CompensationPairing { pairs })
}

/// Number of vertices of the shadow polygon in direction d, computed as the
/// number of edges whose two facet normals take opposite signs against d.
pub fn shadow_vertex_count(p: &Polytope3, d: &Vec3) -> Result<u64> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    if d.is_zero() {
        return Err(Error::InvalidParameter("zero projection direction".into()));
    }
    let signs: Vec<i8> = (0..p.facet_count())
        .map(|f| sign_rat(&p.facet_normal(f).dot_vec3(d)))
        .collect();
    if let Some(f) = signs.iter().position(|&s| s == 0) {
        return Err(Error::InadmissibleDirection { direction: d.to_string(), facet: f });
    }
    let mut count = 0;
    for e in 0..p.edge_count() {
        let fs = p.edge_facets(e);
        if signs[fs[0]] != signs[fs[1]] {
            count += 1;
        }
    }
    Ok(count)
}

fn sample_admissible(p: &Polytope3, rng: &mut ChaCha8Rng) -> Result<Vec3> {
    for _ in 0..100_000 {
        let x = rng.gen_range(-DIRECTION_SAMPLE_BOUND..=DIRECTION_SAMPLE_BOUND);
        let y = rng.gen_range(-DIRECTION_SAMPLE_BOUND..=DIRECTION_SAMPLE_BOUND);
        let z = rng.gen_range(-DIRECTION_SAMPLE_BOUND..=DIRECTION_SAMPLE_BOUND);
        if (x, y, z) == (0, 0, 0) {
            continue;
        }
        let d = Vec3::from_ints(x, y, z);
        let admissible = (0..p.facet_count())
            .all(|f| sign_rat(&p.facet_normal(f).dot_vec3(&d)) != 0);
        if admissible {
            return Ok(d);
        }
    }
    Err(Error::ResourceBudget("could not sample an admissible direction".into()))
}

/// Draws `samples` admissible directions (rejection sampling, deterministic
/// per seed) and returns Some(k) when every shadow has k vertices.
pub fn oracle_equiprojective(p: &Polytope3, samples: u64, seed: u64) -> Result<Option<u64>> {
    if samples == 0 {
        return Err(Error::InvalidParameter("oracle needs at least one sample".into()));
    }
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut common: Option<u64> = None;
    for _ in 0..samples {
        let d = sample_admissible(p, &mut rng)?;
        let count = shadow_vertex_count(p, &d)?;
        match common {
            None => common = Some(count),
            Some(k) if k != count => return Ok(None),
            _ => {}
        }
    }
    Ok(common)
}

/// Histogram of shadow vertex counts over sampled admissible directions.
pub fn shadow_histogram(p: &Polytope3, samples: u64, seed: u64) -> Result<BTreeMap<u64, u64>> {
    if p.dim() != 3 {
        return Err(Error::NotThreeDimensional(p.dim()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hist = BTreeMap::new();
    for _ in 0..samples {
        let d = sample_admissible(p, &mut rng)?;
        *hist.entry(shadow_vertex_count(p, &d)?).or_insert(0) += 1;
    }
    Ok(hist)
}
