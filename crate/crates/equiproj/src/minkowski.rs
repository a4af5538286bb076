//! Minkowski sums, zonotopes, the sum-equiprojectivity predicate with its
//! λ certificate, and the odd-k construction from a zonotope plus a generic
//! triangle.
//!
//! Sums are computed as hulls of pairwise vertex sums; the face
//! decomposition F = F_P + F_Q is then recovered exactly: a relative-interior
//! witness of each normal cone of the sum selects the unique summand faces
//! whose normal-cone interiors meet it.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::Rat;
use crate::cones::{aggregated_cone, edge_directions, kappa, EdgeDirection, PlaneBasis};
use crate::geom::{hull3, Face, Polytope3};
use crate::vec3::{det3, IVec3, Vec3};
use crate::{Error, Result};

/// Coordinate bound for sampled generic triangles.
pub const TRIANGLE_COORD_BOUND: i64 = 1000;
/// Rejection budget for the generic-triangle sampler.
pub const TRIANGLE_RETRY_BUDGET: u64 = 10_000;
/// Coordinate bound for random zonotope generators.
pub const GENERATOR_COORD_BOUND: i64 = 50;

/// A finite set of pairwise non-collinear nonzero integer vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorSet {
    generators: Vec<IVec3>,
}

impl GeneratorSet {
    pub fn new(generators: Vec<IVec3>) -> Result<GeneratorSet> {
        if generators.is_empty() {
            return Err(Error::InvalidParameter("generator set must be nonempty".into()));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.is_zero() {
                return Err(Error::InvalidParameter(format!("generator {i} is zero")));
            }
            for h in &generators[..i] {
                if g.is_collinear_with(h) {
                    return Err(Error::InvalidParameter(format!(
                        "generators {h} and {g} are collinear"
                    )));
                }
            }
        }
        Ok(GeneratorSet { generators })
    }

    pub fn generators(&self) -> &[IVec3] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn spans_space(&self) -> bool {
        let gs = &self.generators;
        for i in 0..gs.len() {
            for j in (i + 1)..gs.len() {
                for k in (j + 1)..gs.len() {
                    if !det3(&gs[i], &gs[j], &gs[k]).eq(&0.into()) {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Seeded random set of n pairwise non-collinear integer generators
    /// spanning R^3, with coordinates in [-bound, bound].
    pub fn random_spanning(n: usize, rng: &mut ChaCha8Rng, bound: i64) -> Result<GeneratorSet> {
        if n < 3 {
            return Err(Error::InvalidParameter(
                "a spanning generator set needs at least 3 vectors".into(),
            ));
        }
        for _ in 0..10_000 {
            let mut gens: Vec<IVec3> = Vec::with_capacity(n);
            let mut tries = 0;
            while gens.len() < n && tries < 10_000 {
                tries += 1;
                let g = IVec3::from_i64s(
                    rng.gen_range(-bound..=bound),
                    rng.gen_range(-bound..=bound),
                    rng.gen_range(-bound..=bound),
                );
                if g.is_zero() || gens.iter().any(|h| g.is_collinear_with(h)) {
                    continue;
                }
                gens.push(g);
            }
            if gens.len() == n {
                let set = GeneratorSet { generators: gens };
                if set.spans_space() {
                    return Ok(set);
                }
            }
        }
        Err(Error::ResourceBudget("could not sample a spanning generator set".into()))
    }
}

/// Z = sum of the segments conv{0, g}; 3-dimensional iff the generators
/// span R^3.
pub fn zonotope(g: &GeneratorSet) -> Polytope3 {
    zonotope_of_vectors(g.generators())
}

/// Same construction without the non-collinearity requirement (parallel
/// segments merge into longer ones). Used for covector enumeration.
pub(crate) fn zonotope_of_vectors(vs: &[IVec3]) -> Polytope3 {
    assert!(!vs.is_empty());
    let origin = Vec3::zero();
    let mut acc = hull3(&[origin.clone(), vs[0].to_vec3()]).expect("two points");
    for v in &vs[1..] {
        let seg = hull3(&[origin.clone(), v.to_vec3()]).expect("two points");
        acc = minkowski_sum(&acc, &seg).sum;
    }
    acc
}

/// The decomposition of every face of a sum S = P + Q into its unique
/// summand faces, in the canonical order of `S.faces()`.
#[derive(Clone, Debug)]
pub struct FaceDecomposition {
    entries: Vec<(Face, Face, Face)>,
}

impl FaceDecomposition {
    pub fn entries(&self) -> &[(Face, Face, Face)] {
        &self.entries
    }

    /// Summand faces (from P, from Q) of a face of the sum.
    pub fn parts_of(&self, f: &Face) -> Option<(&Face, &Face)> {
        self.entries
            .binary_search_by(|(s, _, _)| s.cmp(f))
            .ok()
            .map(|i| (&self.entries[i].1, &self.entries[i].2))
    }

    /// Both projection maps preserve face inclusion.
    pub fn preserves_inclusion(&self) -> bool {
        for (f, fp, fq) in &self.entries {
            for (g, gp, gq) in &self.entries {
                if g.contains(f) && !(gp.contains(fp) && gq.contains(fq)) {
                    return false;
                }
            }
        }
        true
    }
}

pub struct MinkowskiSum {
    pub sum: Polytope3,
    pub decomposition: FaceDecomposition,
}

/// Exact Minkowski sum with validated face decomposition.
pub fn minkowski_sum(p: &Polytope3, q: &Polytope3) -> MinkowskiSum {
    let mut pts = Vec::with_capacity(p.vertex_count() * q.vertex_count());
    for a in p.vertices() {
        for b in q.vertices() {
            pts.push(a + b);
        }
    }
    let sum = hull3(&pts).expect("sum of nonempty polytopes is nonempty");
    let decomposition = decompose(&sum, p, q);
    MinkowskiSum { sum, decomposition }
}

struct FaceIndex {
    by_verts: BTreeMap<Vec<usize>, Face>,
}

impl FaceIndex {
    fn build(p: &Polytope3) -> FaceIndex {
        let by_verts = p.faces().into_iter().map(|f| (f.verts.clone(), f)).collect();
        FaceIndex { by_verts }
    }

    /// The face of p at which the linear functional y attains its maximum.
    fn argmax_face(&self, p: &Polytope3, y: &IVec3) -> Face {
        let vals: Vec<Rat> = p.vertices().iter().map(|v| y.dot_vec3(v)).collect();
        let max = vals.iter().max().expect("polytope has vertices").clone();
        let verts: Vec<usize> =
            (0..vals.len()).filter(|&i| vals[i] == max).collect();
        self.by_verts
            .get(&verts)
            .cloned()
            .expect("argmax vertex set of a linear functional is a face")
    }

    fn top(&self, p: &Polytope3) -> Face {
        Face { dim: p.dim(), verts: (0..p.vertex_count()).collect() }
    }
}

/// A nonzero integer point in the relative interior of the normal cone of
/// `face`, or zero exactly when that cone is {0} (the top face of a
/// full-dimensional polytope). For a cone spanned by facet normals the sum
/// of its primitive generators is interior.
pub fn normal_cone_interior_point(p: &Polytope3, face: &Face) -> IVec3 {
    if face.dim == p.dim() {
        return match p.dim() {
            2 => p.polygon_plane_normal().expect("polygon").clone(),
            1 => {
                let d = crate::cones::direction_of_edge(p, 0);
                PlaneBasis::for_direction(&d).b1
            }
            _ => IVec3::zero(),
        };
    }
    match (p.dim(), face.dim) {
        (3, 2) => {
            let f = (0..p.facet_count())
                .find(|&f| {
                    let mut cy = p.facets()[f].cycle.clone();
                    cy.sort_unstable();
                    cy == face.verts
                })
                .expect("facet exists");
            p.facet_normal(f).clone()
        }
        (3, 1) => {
            let e = edge_index(p, &face.verts);
            let fs = p.edge_facets(e);
            (p.facet_normal(fs[0]) + p.facet_normal(fs[1])).primitive()
        }
        (3, 0) => {
            let mut sum = IVec3::zero();
            for f in p.vertex_facets(face.verts[0]) {
                sum = &sum + p.facet_normal(f);
            }
            sum.primitive()
        }
        (2, 1) => {
            let e = edge_index(p, &face.verts);
            p.polygon_edge_outward_normal(e).expect("polygon edge")
        }
        (2, 0) => {
            let v = face.verts[0];
            let mut sum = IVec3::zero();
            for e in p.vertex_edges(v) {
                sum = &sum + &p.polygon_edge_outward_normal(e).expect("polygon edge");
            }
            sum.primitive()
        }
        (1, 0) => {
            let v = face.verts[0];
            let other = 1 - v;
            IVec3::from_rational_ray(&(p.vertex(v) - p.vertex(other)))
        }
        _ => unreachable!("no proper faces below dimension 0"),
    }
}

fn edge_index(p: &Polytope3, verts: &[usize]) -> usize {
    let key = (verts[0], verts[1]);
    p.edges().iter().position(|&e| e == key).expect("edge exists")
}

fn decompose(s: &Polytope3, p: &Polytope3, q: &Polytope3) -> FaceDecomposition {
    let idx_p = FaceIndex::build(p);
    let idx_q = FaceIndex::build(q);
    let mut entries = Vec::new();
    for face in s.faces() {
        let y = normal_cone_interior_point(s, &face);
        let (fp, fq) = if y.is_zero() {
            (idx_p.top(p), idx_q.top(q))
        } else {
            (idx_p.argmax_face(p, &y), idx_q.argmax_face(q, &y))
        };
        debug_assert!(decomposition_entry_consistent(s, p, q, &face, &fp, &fq));
        entries.push((face, fp, fq));
    }
    entries.sort_by(|a, b| a.0.cmp(&b.0));
    FaceDecomposition { entries }
}

/// Every vertex of the sum face must split as a vertex of F_P plus a vertex
/// of F_Q.
fn decomposition_entry_consistent(
    s: &Polytope3,
    p: &Polytope3,
    q: &Polytope3,
    face: &Face,
    fp: &Face,
    fq: &Face,
) -> bool {
    face.verts.iter().all(|&v| {
        let target = s.vertex(v);
        fp.verts.iter().any(|&a| {
            fq.verts.iter().any(|&b| &(p.vertex(a) + q.vertex(b)) == target)
        })
    })
}

/// An inclusion-preserving map from the faces of a sum to the faces of one
/// summand.
#[derive(Clone, Debug)]
pub struct FaceMap {
    entries: Vec<(Face, Face)>,
}

impl FaceMap {
    pub fn entries(&self) -> &[(Face, Face)] {
        &self.entries
    }

    pub fn image_of(&self, f: &Face) -> Option<&Face> {
        self.entries.binary_search_by(|(s, _)| s.cmp(f)).ok().map(|i| &self.entries[i].1)
    }

    pub fn preimage_of(&self, target: &Face) -> Vec<&Face> {
        self.entries.iter().filter(|(_, t)| t == target).map(|(s, _)| s).collect()
    }

    pub fn preserves_inclusion(&self) -> bool {
        for (f, tf) in &self.entries {
            for (g, tg) in &self.entries {
                if g.contains(f) && !tg.contains(tf) {
                    return false;
                }
            }
        }
        true
    }
}

/// The summand-face maps of a sum S = P + Q: the first map sends each face
/// to its Q-summand, the second to its P-summand. For S = Z + t these are
/// the triangle map τ and the zonotope map ζ.
pub fn face_summand_maps(ms: &MinkowskiSum) -> (FaceMap, FaceMap) {
    let to_q = ms
        .decomposition
        .entries()
        .iter()
        .map(|(s, _, fq)| (s.clone(), fq.clone()))
        .collect();
    let to_p = ms
        .decomposition
        .entries()
        .iter()
        .map(|(s, fp, _)| (s.clone(), fp.clone()))
        .collect();
    (FaceMap { entries: to_q }, FaceMap { entries: to_p })
}

/// Classification of a shared edge direction in a Minkowski sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SharedDirectionCase {
    /// Both aggregated cones fill u⊥ (counts toward k').
    OneFullPlane,
    /// Exactly one cone fills u⊥, so the other is properly contained in it
    /// (counts toward k).
    ContainedProper,
    /// Neither cone is full and they coincide (counts toward k).
    ConesEqual,
    /// Neither cone is full and they are opposite (no λ contribution).
    ConesOpposite,
    /// None of the compatible cases: the sum is not equiprojective.
    Incompatible,
}

/// Shared-direction classification driving the sum predicate and
/// λ = k + 2k'.
#[derive(Clone, Debug, Serialize)]
pub struct SumCertificate {
    pub shared_directions: Vec<(EdgeDirection, SharedDirectionCase)>,
    pub lambda: u64,
    pub k_shared: u64,
    pub kprime_shared: u64,
}

/// Decides whether P + Q is equiprojective, for P and Q each an
/// equiprojective 3-polytope, a polygon, or a segment. A 3-dimensional
/// summand failing its own check is an error; the verdict is the boolean.
pub fn sum_equiprojective(p: &Polytope3, q: &Polytope3) -> Result<(bool, SumCertificate)> {
    for summand in [p, q] {
        if summand.dim() == 3 && !crate::check::check_aggregated(summand)?.is_equiprojective {
            return Err(Error::SummandNotEquiprojective);
        }
    }
    let dirs_p = edge_directions(p);
    let dirs_q = edge_directions(q);
    let mut shared_directions = Vec::new();
    let (mut k, mut kprime) = (0u64, 0u64);
    let mut ok = true;
    for u in dirs_p.intersection(&dirs_q) {
        let cp = aggregated_cone(p, u)?;
        let cq = aggregated_cone(q, u)?;
        let case = match (cp.full_plane, cq.full_plane) {
            (true, true) => {
                kprime += 1;
                SharedDirectionCase::OneFullPlane
            }
            (true, false) | (false, true) => {
                k += 1;
                SharedDirectionCase::ContainedProper
            }
            (false, false) => {
                if cp == cq {
                    k += 1;
                    SharedDirectionCase::ConesEqual
                } else if cp == cq.negate() {
                    SharedDirectionCase::ConesOpposite
                } else {
                    ok = false;
                    SharedDirectionCase::Incompatible
                }
            }
        };
        shared_directions.push((u.clone(), case));
    }
    let cert = SumCertificate { shared_directions, lambda: k + 2 * kprime, k_shared: k, kprime_shared: kprime };
    Ok((ok, cert))
}

/// κ(P + Q) predicted by κ(P) + κ(Q) - λ(P, Q); errors when the sum
/// predicate fails.
pub fn kappa_of_sum(p: &Polytope3, q: &Polytope3) -> Result<u64> {
    let (ok, cert) = sum_equiprojective(p, q)?;
    if !ok {
        return Err(Error::SumIncompatible);
    }
    let total = kappa(p) + kappa(q);
    debug_assert!(total >= cert.lambda);
    Ok(total - cert.lambda)
}

/// A triangle generic with respect to Z: no triangle edge direction lies in
/// a plane spanned by two edge directions of Z, and no plane spanned by two
/// triangle edge directions contains an edge direction of Z. Both conditions
/// are checked as exact nonzero determinants.
pub fn generic_triangle(z: &Polytope3, seed: u64) -> Result<Polytope3> {
    if z.dim() != 3 {
        return Err(Error::NotThreeDimensional(z.dim()));
    }
    let dirs_z: Vec<IVec3> =
        edge_directions(z).iter().map(|u| u.vector().clone()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..TRIANGLE_RETRY_BUDGET {
        let mut pts = Vec::with_capacity(3);
        for _ in 0..3 {
            pts.push(Vec3::from_ints(
                rng.gen_range(-TRIANGLE_COORD_BOUND..=TRIANGLE_COORD_BOUND),
                rng.gen_range(-TRIANGLE_COORD_BOUND..=TRIANGLE_COORD_BOUND),
                rng.gen_range(-TRIANGLE_COORD_BOUND..=TRIANGLE_COORD_BOUND),
            ));
        }
        let e1 = &pts[1] - &pts[0];
        let e2 = &pts[2] - &pts[0];
        if e1.cross(&e2).is_zero() {
            continue;
        }
        let triangle = hull3(&pts).expect("three points");
        debug_assert_eq!(triangle.dim(), 2);
        if triangle_is_generic_for(&dirs_z, &triangle) {
            return Ok(triangle);
        }
    }
    Err(Error::ResourceBudget(format!(
        "no generic triangle found in {TRIANGLE_RETRY_BUDGET} attempts"
    )))
}

fn triangle_is_generic_for(dirs_z: &[IVec3], triangle: &Polytope3) -> bool {
    let dirs_t: Vec<IVec3> =
        edge_directions(triangle).iter().map(|u| u.vector().clone()).collect();
    let zero = num_bigint::BigInt::from(0);
    for i in 0..dirs_z.len() {
        for j in (i + 1)..dirs_z.len() {
            for v in &dirs_t {
                if det3(&dirs_z[i], &dirs_z[j], v) == zero {
                    return false;
                }
            }
        }
    }
    for i in 0..dirs_t.len() {
        for j in (i + 1)..dirs_t.len() {
            for u in dirs_z {
                if det3(&dirs_t[i], &dirs_t[j], u) == zero {
                    return false;
                }
            }
        }
    }
    true
}

/// A k-equiprojective polytope for odd k ≥ 9: the sum of a random spanning
/// zonotope with (k-3)/2 generators and a generic triangle.
pub fn odd_equiprojective(k: u64, seed: u64) -> Result<Polytope3> {
    if k % 2 == 0 || k < 9 {
        return Err(Error::InvalidParameter(format!(
            "odd construction needs an odd k ≥ 9, got {k}"
        )));
    }
    let n = ((k - 3) / 2) as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = GeneratorSet::random_spanning(n, &mut rng, GENERATOR_COORD_BOUND)?;
    let z = zonotope(&gens);
    let t = generic_triangle(&z, seed)?;
    Ok(minkowski_sum(&z, &t).sum)
}
