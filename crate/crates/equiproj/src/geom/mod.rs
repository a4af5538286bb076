//! Exact geometric kernel: convex hulls in R^3 with full face lattices.
//!
//! `Polytope3` is the universal carrier for every object in the crate:
//! 3-polytopes, polygons, segments and points, all embedded in R^3 with
//! rational vertices. Facet normals are primitive integer vectors, which
//! makes parallelism and coincidence tests exact equality tests.

mod hull;
mod lattice;

pub use crate::vec3::orientation;
pub use lattice::{face_lattice_isomorphic, face_lattice_isomorphic_with_budget, Face};

use crate::arith::{sign_rat, Rat};
use crate::vec3::{IVec3, Vec3};
use crate::{Error, Result};

/// Default node budget for the face-lattice isomorphism search.
pub const DEFAULT_ISO_NODE_BUDGET: u64 = 4_000_000;

/// A 2-face of a 3-polytope, or the polygon itself for a 2-dimensional one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// Vertex cycle, counterclockwise as seen from outside (along `normal`).
    pub cycle: Vec<usize>,
    /// Primitive integer normal; outward for 3-polytopes, canonical sign
    /// (positive leading coordinate) for the plane of a polygon.
    pub normal: IVec3,
}

/// Convex polytope of dimension 0 to 3 with exact rational vertices and an
/// explicit face lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polytope3 {
    vertices: Vec<Vec3>,
    dim: usize,
    edges: Vec<(usize, usize)>,
    facets: Vec<Facet>,
    edge_facets: Vec<Vec<usize>>,
}

/// Convex hull with full face lattice; accepts degenerate inputs, which
/// produce lower-dimensional polytopes. Output is deterministic: vertices are
/// sorted lexicographically and all faces are canonically ordered.
pub fn hull3(points: &[Vec3]) -> Result<Polytope3> {
    hull::build(points)
}

impl Polytope3 {
    pub(crate) fn from_parts(
        vertices: Vec<Vec3>,
        dim: usize,
        edges: Vec<(usize, usize)>,
        facets: Vec<Facet>,
        edge_facets: Vec<Vec<usize>>,
    ) -> Self {
        Polytope3 { vertices, dim, edges, facets, edge_facets }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vec3 {
        &self.vertices[i]
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn facet_normal(&self, f: usize) -> &IVec3 {
        &self.facets[f].normal
    }

    /// Indices of the facets containing edge `e`: two for a 3-polytope, one
    /// (the polygon itself) for a polygon.
    pub fn edge_facets(&self, e: usize) -> &[usize] {
        &self.edge_facets[e]
    }

    pub fn edge_endpoints(&self, e: usize) -> (&Vec3, &Vec3) {
        let (a, b) = self.edges[e];
        (&self.vertices[a], &self.vertices[b])
    }

    /// Average of the vertices; lies in the relative interior.
    pub fn centroid(&self) -> Vec3 {
        let mut sum = Vec3::zero();
        for v in &self.vertices {
            sum = &sum + v;
        }
        sum.scale(&Rat::new(1.into(), (self.vertices.len() as i64).into()))
    }

    pub fn facet_centroid(&self, f: usize) -> Vec3 {
        let cycle = &self.facets[f].cycle;
        let mut sum = Vec3::zero();
        for &v in cycle {
            sum = &sum + &self.vertices[v];
        }
        sum.scale(&Rat::new(1.into(), (cycle.len() as i64).into()))
    }

    /// Right-hand side of the facet's supporting plane `normal . x = offset`.
    pub fn facet_offset(&self, f: usize) -> Rat {
        self.facets[f].normal.dot_vec3(&self.vertices[self.facets[f].cycle[0]])
    }

    /// Plane normal of a 2-dimensional polytope.
    pub fn polygon_plane_normal(&self) -> Result<&IVec3> {
        if self.dim != 2 {
            return Err(Error::InvalidParameter(format!(
                "polygon plane normal requested on a {}-dimensional polytope",
                self.dim
            )));
        }
        Ok(&self.facets[0].normal)
    }

    /// Outward normal of a polygon edge inside the polygon's plane.
    pub fn polygon_edge_outward_normal(&self, e: usize) -> Result<IVec3> {
        let w = self.polygon_plane_normal()?.clone();
        let (a, b) = self.edges[e];
        let d = IVec3::from_rational_ray(&(&self.vertices[b] - &self.vertices[a]));
        let m = d.cross(&w).primitive();
        // orient away from the polygon's interior
        let towards_centroid = &self.centroid() - &self.vertices[a];
        if sign_rat(&m.dot_vec3(&towards_centroid)) > 0 {
            Ok((-&m).primitive())
        } else {
            Ok(m)
        }
    }

    /// Facets whose cycle contains vertex `v`.
    pub fn vertex_facets(&self, v: usize) -> Vec<usize> {
        (0..self.facet_count()).filter(|&f| self.facets[f].cycle.contains(&v)).collect()
    }

    /// Edges incident to vertex `v`.
    pub fn vertex_edges(&self, v: usize) -> Vec<usize> {
        (0..self.edge_count())
            .filter(|&e| {
                let (a, b) = self.edges[e];
                a == v || b == v
            })
            .collect()
    }

    /// Translate by `t`; the combinatorics are unchanged.
    pub fn translate(&self, t: &Vec3) -> Polytope3 {
        let mut out = self.clone();
        for v in &mut out.vertices {
            *v = &*v + t;
        }
        out
    }

    /// Point reflection through the origin (rebuilds the hull).
    pub fn negate(&self) -> Polytope3 {
        let pts: Vec<Vec3> = self.vertices.iter().map(|v| -v).collect();
        hull3(&pts).expect("negating a valid polytope cannot fail")
    }

    /// Structural invariant check; returns a description of the first
    /// violation found. Used heavily by the test suites.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for w in self.vertices.windows(2) {
            if w[0] >= w[1] {
                return Err("vertices not sorted and distinct".into());
            }
        }
        match self.dim {
            0 => {
                if self.vertices.len() != 1 || !self.edges.is_empty() || !self.facets.is_empty() {
                    return Err("point must have exactly one vertex and no faces".into());
                }
            }
            1 => {
                if self.vertices.len() != 2 || self.edges != vec![(0, 1)] {
                    return Err("segment must have two vertices and one edge".into());
                }
            }
            2 => {
                if self.facets.len() != 1 {
                    return Err("polygon must have exactly one 2-face".into());
                }
                if self.vertex_count() != self.edge_count() {
                    return Err("polygon must satisfy V = E".into());
                }
                if self.edge_facets.iter().any(|f| f != &[0]) {
                    return Err("every polygon edge must lie in the polygon".into());
                }
                let w = &self.facets[0].normal;
                let c = self.facet_offset(0);
                if self.vertices.iter().any(|v| w.dot_vec3(v) != c) {
                    return Err("polygon vertices not coplanar with stated plane".into());
                }
            }
            3 => {
                let (v, e, f) = (self.vertex_count(), self.edge_count(), self.facet_count());
                if v + f != e + 2 {
                    return Err(format!("Euler relation fails: V={v} E={e} F={f}"));
                }
                if self.edge_facets.iter().any(|fs| fs.len() != 2) {
                    return Err("every edge of a 3-polytope must lie in two facets".into());
                }
                for (fi, facet) in self.facets.iter().enumerate() {
                    if facet.cycle.len() < 3 {
                        return Err(format!("facet {fi} has fewer than 3 vertices"));
                    }
                    let n = &facet.normal;
                    let c = self.facet_offset(fi);
                    for (vi, p) in self.vertices.iter().enumerate() {
                        let s = sign_rat(&(n.dot_vec3(p) - &c));
                        if s > 0 {
                            return Err(format!("vertex {vi} is beyond facet {fi}"));
                        }
                        if facet.cycle.contains(&vi) != (s == 0) {
                            return Err(format!(
                                "facet {fi} cycle disagrees with its supporting plane at vertex {vi}"
                            ));
                        }
                    }
                }
            }
            d => return Err(format!("invalid dimension {d}")),
        }
        Ok(())
    }
}
