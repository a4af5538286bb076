//! Edge directions, aggregated cones, multiplicities and κ.
//!
//! The aggregated cone of a polytope P at an edge direction u is the union
//! of the 2-dimensional normal cones of P inside the plane u⊥. It is stored
//! as a circularly sorted list of closed arcs whose boundary rays are
//! primitive integer vectors; all angular comparisons are exact sign
//! predicates, never floating angles.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::arith::sign;
use crate::geom::Polytope3;
use crate::vec3::IVec3;
use crate::{Error, Result};

/// Canonical projective direction: primitive integer vector whose first
/// nonzero coordinate is positive.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeDirection(IVec3);

impl EdgeDirection {
    /// Canonicalizes an arbitrary nonzero integer vector.
    pub fn new(v: &IVec3) -> Result<EdgeDirection> {
        if v.is_zero() {
            return Err(Error::InvalidParameter("zero vector has no direction".into()));
        }
        let p = v.primitive();
        Ok(EdgeDirection(if p.leading_sign() < 0 { -&p } else { p }))
    }

    pub fn vector(&self) -> &IVec3 {
        &self.0
    }
}

impl fmt::Debug for EdgeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for EdgeDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for EdgeDirection {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.x.to_string(), self.0.y.to_string(), self.0.z.to_string()].serialize(s)
    }
}

/// Oriented basis of the plane u⊥ used for circular comparisons.
///
/// b1 = u × a and b2 = u × b1, where a is the standard basis vector with the
/// smallest |u·a| (ties broken in x, y, z order). The triple (b1, b2, u) is
/// right-handed, so "counterclockwise in u⊥" means counterclockwise as seen
/// from the tip of u.
pub struct PlaneBasis {
    pub u: IVec3,
    pub b1: IVec3,
    pub b2: IVec3,
}

impl PlaneBasis {
    pub fn for_direction(u: &EdgeDirection) -> PlaneBasis {
        let u = u.vector().clone();
        let axes = [
            IVec3::from_i64s(1, 0, 0),
            IVec3::from_i64s(0, 1, 0),
            IVec3::from_i64s(0, 0, 1),
        ];
        let a = axes
            .iter()
            .min_by_key(|a| num_traits::Signed::abs(&u.dot(a)))
            .unwrap()
            .clone();
        let b1 = u.cross(&a).primitive();
        let b2 = u.cross(&b1).primitive();
        debug_assert!(!b1.is_zero() && !b2.is_zero());
        PlaneBasis { u, b1, b2 }
    }

    /// Sign of the counterclockwise angle from r to s (both in u⊥), positive
    /// when s lies counterclockwise of r by less than π.
    pub fn cross_sign(&self, r: &IVec3, s: &IVec3) -> i8 {
        sign(&self.u.dot(&r.cross(s)))
    }

    /// Total circular order on rays of u⊥, anchored at the b1 axis.
    pub fn ray_cmp(&self, r: &IVec3, s: &IVec3) -> std::cmp::Ordering {
        let half = |v: &IVec3| -> u8 {
            let sy = sign(&self.b2.dot(v));
            let sx = sign(&self.b1.dot(v));
            debug_assert!(sx != 0 || sy != 0, "ray must be nonzero in u⊥");
            if sy > 0 || (sy == 0 && sx > 0) {
                0
            } else {
                1
            }
        };
        half(r).cmp(&half(s)).then_with(|| match self.cross_sign(r, s) {
            1 => std::cmp::Ordering::Less,
            -1 => std::cmp::Ordering::Greater,
            _ => std::cmp::Ordering::Equal,
        })
    }
}

/// Closed arc of u⊥ from `start` to `end` counterclockwise; both rays are
/// primitive and distinct, so the angular measure lies in (0, 2π).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: RaySer,
    pub end: RaySer,
}

/// Primitive integer ray serialized as exact coordinate strings.
#[derive(Clone, PartialEq, Eq)]
pub struct RaySer(pub IVec3);

impl fmt::Debug for RaySer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for RaySer {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.0.x.to_string(), self.0.y.to_string(), self.0.z.to_string()].serialize(s)
    }
}

impl Arc {
    pub fn new(start: IVec3, end: IVec3) -> Arc {
        Arc { start: RaySer(start), end: RaySer(end) }
    }

    pub fn start_ray(&self) -> &IVec3 {
        &self.start.0
    }

    pub fn end_ray(&self) -> &IVec3 {
        &self.end.0
    }

    pub fn negate(&self) -> Arc {
        Arc::new((-self.start_ray()).primitive(), (-self.end_ray()).primitive())
    }
}

/// The union C_P(u) of the 2-dimensional normal cones of P inside u⊥, as
/// maximal disjoint closed arcs in circular order (empty when `full_plane`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AggregatedCone {
    pub direction: EdgeDirection,
    pub full_plane: bool,
    pub arcs: Vec<Arc>,
}

impl AggregatedCone {
    /// Arcs of the closure of the complement of the cone in u⊥.
    pub fn complement_arcs(&self) -> Vec<Arc> {
        if self.full_plane {
            return Vec::new();
        }
        let n = self.arcs.len();
        (0..n)
            .map(|k| {
                Arc::new(
                    self.arcs[k].end_ray().clone(),
                    self.arcs[(k + 1) % n].start_ray().clone(),
                )
            })
            .collect()
    }

    /// The opposite cone -C, canonically re-sorted.
    pub fn negate(&self) -> AggregatedCone {
        let basis = PlaneBasis::for_direction(&self.direction);
        let mut arcs: Vec<Arc> = self.arcs.iter().map(Arc::negate).collect();
        arcs.sort_by(|a, b| basis.ray_cmp(a.start_ray(), b.start_ray()));
        AggregatedCone { direction: self.direction.clone(), full_plane: self.full_plane, arcs }
    }

    /// Union of two cones at the same direction.
    pub fn union(&self, other: &AggregatedCone) -> Result<AggregatedCone> {
        if self.direction != other.direction {
            return Err(Error::InvalidParameter(
                "cannot union aggregated cones at different directions".into(),
            ));
        }
        if self.full_plane || other.full_plane {
            return Ok(AggregatedCone {
                direction: self.direction.clone(),
                full_plane: true,
                arcs: Vec::new(),
            });
        }
        let raw: Vec<RawCone> = self
            .arcs
            .iter()
            .chain(other.arcs.iter())
            .map(|a| RawCone::Arc(a.start_ray().clone(), a.end_ray().clone()))
            .collect();
        Ok(merge_raw_cones(self.direction.clone(), raw))
    }

    /// True when the other cone is contained in this one (as point sets).
    pub fn contains(&self, other: &AggregatedCone) -> Result<bool> {
        Ok(self.union(other)? == *self)
    }
}

/// Normal cone of a single edge before merging.
enum RawCone {
    /// Closed convex cone from the first ray counterclockwise to the second.
    Arc(IVec3, IVec3),
    Full,
}

/// One canonical direction per parallel class of edges.
pub fn edge_directions(p: &Polytope3) -> BTreeSet<EdgeDirection> {
    let mut out = BTreeSet::new();
    for e in 0..p.edge_count() {
        out.insert(direction_of_edge(p, e));
    }
    out
}

pub fn direction_of_edge(p: &Polytope3, e: usize) -> EdgeDirection {
    let (a, b) = p.edge_endpoints(e);
    let d = IVec3::from_rational_ray(&(b - a));
    EdgeDirection::new(&d).expect("edge endpoints are distinct")
}

/// Indices of the edges of P parallel to u.
pub fn edges_with_direction(p: &Polytope3, u: &EdgeDirection) -> Vec<usize> {
    (0..p.edge_count()).filter(|&e| direction_of_edge(p, e) == *u).collect()
}

fn edge_raw_cone(p: &Polytope3, e: usize, basis: &PlaneBasis) -> Result<RawCone> {
    match p.dim() {
        3 => {
            let fs = p.edge_facets(e);
            let n1 = p.facet_normal(fs[0]).clone();
            let n2 = p.facet_normal(fs[1]).clone();
            debug_assert!(basis.cross_sign(&n1, &n2) != 0, "adjacent facet normals are independent");
            if basis.cross_sign(&n1, &n2) > 0 {
                Ok(RawCone::Arc(n1, n2))
            } else {
                Ok(RawCone::Arc(n2, n1))
            }
        }
        2 => {
            // Half-plane bounded by the ±plane-normal line, containing the
            // edge's outward normal.
            let w = p.polygon_plane_normal()?.clone();
            let m = p.polygon_edge_outward_normal(e)?;
            if basis.cross_sign(&w, &m) > 0 {
                Ok(RawCone::Arc(w.clone(), (-&w).primitive()))
            } else {
                Ok(RawCone::Arc((-&w).primitive(), w))
            }
        }
        1 => Ok(RawCone::Full),
        _ => Err(Error::InvalidParameter("point has no edges".into())),
    }
}

/// The aggregated cone C_P(u); errors when u is not an edge direction of P.
pub fn aggregated_cone(p: &Polytope3, u: &EdgeDirection) -> Result<AggregatedCone> {
    let parallel = edges_with_direction(p, u);
    if parallel.is_empty() {
        return Err(Error::NotAnEdgeDirection(u.to_string()));
    }
    let basis = PlaneBasis::for_direction(u);
    let mut raw = Vec::with_capacity(parallel.len());
    for e in parallel {
        raw.push(edge_raw_cone(p, e, &basis)?);
    }
    Ok(merge_raw_cones(u.clone(), raw))
}

/// Merges raw edge cones into maximal disjoint arcs (or the full plane).
///
/// All distinct boundary rays are sorted circularly; an elementary gap
/// between consecutive rays is covered when some cone spans it. Maximal runs
/// of covered gaps become arcs, so cones overlapping in their interiors or
/// merely sharing a boundary ray merge transitively.
fn merge_raw_cones(direction: EdgeDirection, raw: Vec<RawCone>) -> AggregatedCone {
    let basis = PlaneBasis::for_direction(&direction);
    if raw.iter().any(|c| matches!(c, RawCone::Full)) {
        return AggregatedCone { direction, full_plane: true, arcs: Vec::new() };
    }

    let mut rays: Vec<IVec3> = Vec::new();
    for c in &raw {
        let RawCone::Arc(s, e) = c else { unreachable!() };
        rays.push(s.clone());
        rays.push(e.clone());
    }
    rays.sort_by(|a, b| basis.ray_cmp(a, b));
    rays.dedup();
    let m = rays.len();
    debug_assert!(m >= 2);
    let index_of = |r: &IVec3| -> usize {
        rays.binary_search_by(|probe| basis.ray_cmp(probe, r)).expect("ray is an endpoint")
    };

    // covered[i] = gap from rays[i] to rays[i + 1 mod m] is inside some cone
    let mut covered = vec![false; m];
    for c in &raw {
        let RawCone::Arc(s, e) = c else { unreachable!() };
        let mut i = index_of(s);
        let stop = index_of(e);
        debug_assert_ne!(i, stop, "edge cones have positive angular measure");
        while i != stop {
            covered[i] = true;
            i = (i + 1) % m;
        }
    }

    if covered.iter().all(|&c| c) {
        return AggregatedCone { direction, full_plane: true, arcs: Vec::new() };
    }

    // maximal runs of covered gaps, scanned once around from an uncovered
    // anchor so no run wraps past the scan boundary
    let anchor = covered.iter().position(|&c| !c).unwrap();
    let mut arcs: Vec<Arc> = Vec::new();
    let mut k = anchor;
    let end = anchor + m;
    while k < end {
        if !covered[k % m] {
            k += 1;
            continue;
        }
        let run_start = k % m;
        while covered[k % m] {
            k += 1;
        }
        let run_end = k % m;
        arcs.push(Arc::new(rays[run_start].clone(), rays[run_end].clone()));
    }
    arcs.sort_by(|a, b| basis.ray_cmp(a.start_ray(), b.start_ray()));
    AggregatedCone { direction, full_plane: false, arcs }
}

/// Theorem-2 case (ii): the closure of the complement of C equals -C.
/// Full-plane cones return false here; they satisfy case (i) instead.
pub fn cone_is_partition_with_opposite(c: &AggregatedCone) -> bool {
    if c.full_plane {
        return false;
    }
    let basis = PlaneBasis::for_direction(&c.direction);
    let mut negated: Vec<Arc> = c.complement_arcs().iter().map(Arc::negate).collect();
    negated.sort_by(|a, b| basis.ray_cmp(a.start_ray(), b.start_ray()));
    negated == c.arcs
}

/// Number of shadow edges contributed by an edge direction: 2 when the
/// aggregated cone fills u⊥, 1 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Multiplicity {
    One,
    Two,
}

impl Multiplicity {
    pub fn value(self) -> u64 {
        match self {
            Multiplicity::One => 1,
            Multiplicity::Two => 2,
        }
    }
}

pub fn multiplicity(p: &Polytope3, u: &EdgeDirection) -> Result<Multiplicity> {
    let cone = aggregated_cone(p, u)?;
    Ok(if cone.full_plane { Multiplicity::Two } else { Multiplicity::One })
}

/// κ(P) = Σ μ_P(u) over the edge directions of P. For an equiprojective
/// polytope this is the shadow vertex count; for a polygon it equals the
/// number of edges and for a segment it equals 2.
pub fn kappa(p: &Polytope3) -> u64 {
    edge_directions(p)
        .iter()
        .map(|u| multiplicity(p, u).expect("u is an edge direction").value())
        .sum()
}

/// Per-direction multiplicities, useful for reports.
pub fn multiplicities(p: &Polytope3) -> BTreeMap<EdgeDirection, Multiplicity> {
    edge_directions(p)
        .into_iter()
        .map(|u| {
            let m = multiplicity(p, &u).expect("u is an edge direction");
            (u, m)
        })
        .collect()
}

/// Checks that the arcs and their complement arcs tile the circle: reading
/// start_0, end_0, start_1, end_1, ... must walk strictly counterclockwise
/// once around. This is the exact stand-in for "measures sum to 2π".
pub fn arcs_tile_circle(c: &AggregatedCone) -> bool {
    if c.full_plane {
        return c.arcs.is_empty();
    }
    if c.arcs.is_empty() {
        return false;
    }
    let basis = PlaneBasis::for_direction(&c.direction);
    let mut pts: Vec<&IVec3> = Vec::with_capacity(2 * c.arcs.len());
    for a in &c.arcs {
        pts.push(a.start_ray());
        pts.push(a.end_ray());
    }
    // Strictly increasing in the anchored circular order, with exactly one
    // wrap-around descent over the whole cycle.
    let mut descents = 0;
    for k in 0..pts.len() {
        match basis.ray_cmp(pts[k], pts[(k + 1) % pts.len()]) {
            std::cmp::Ordering::Less => {}
            std::cmp::Ordering::Greater => descents += 1,
            std::cmp::Ordering::Equal => return false,
        }
    }
    descents == 1
}
