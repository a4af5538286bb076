//! Canonical rational test shapes.
//!
//! Regular polygons with three or more sides rarely have rational
//! coordinates, so polygons here are built from rational points on the unit
//! circle via the tangent half-angle parametrization: t ↦ ((1-t²)/(1+t²),
//! 2t/(1+t²)). Any finite subset of a circle is in convex position.

use crate::arith::{rat, Rat};
use crate::geom::{hull3, Polytope3};
use crate::minkowski::minkowski_sum;
use crate::vec3::Vec3;
use crate::{Error, Result};

/// Convex polygon with m vertices on the unit circle in the z = 0 plane.
pub fn rational_polygon(m: usize) -> Result<Polytope3> {
    if m < 3 {
        return Err(Error::InvalidParameter(format!("polygon needs at least 3 sides, got {m}")));
    }
    let mut pts = Vec::with_capacity(m);
    let shift = (m as i64 - 1) / 2;
    for i in 0..m {
        let t = rat(i as i64 - shift);
        let denom = &t * &t + rat(1);
        let x = (rat(1) - &t * &t) / denom.clone();
        let y = rat(2) * &t / denom;
        pts.push(Vec3::new(x, y, rat(0)));
    }
    let p = hull3(&pts)?;
    debug_assert_eq!(p.dim(), 2);
    debug_assert_eq!(p.vertex_count(), m);
    Ok(p)
}

/// Prism over a rational m-gon with unit height; (m+2)-equiprojective.
pub fn prism(m: usize) -> Result<Polytope3> {
    let base = rational_polygon(m)?;
    let axis = hull3(&[Vec3::zero(), Vec3::from_ints(0, 0, 1)])?;
    Ok(minkowski_sum(&base, &axis).sum)
}

/// Regular tetrahedron with rational coordinates.
pub fn regular_tetrahedron() -> Polytope3 {
    hull3(&[
        Vec3::from_ints(1, 1, 1),
        Vec3::from_ints(1, -1, -1),
        Vec3::from_ints(-1, 1, -1),
        Vec3::from_ints(-1, -1, 1),
    ])
    .expect("four points")
}

pub fn unit_cube() -> Polytope3 {
    let mut pts = Vec::new();
    for x in 0..2 {
        for y in 0..2 {
            for z in 0..2 {
                pts.push(Vec3::from_ints(x, y, z));
            }
        }
    }
    hull3(&pts).expect("eight points")
}

pub fn square_pyramid() -> Polytope3 {
    hull3(&[
        Vec3::from_ints(1, 1, 0),
        Vec3::from_ints(1, -1, 0),
        Vec3::from_ints(-1, 1, 0),
        Vec3::from_ints(-1, -1, 0),
        Vec3::from_ints(0, 0, 1),
    ])
    .expect("five points")
}

/// Pyritohedron (h = 1/2): a rational dodecahedron-like solid with 12
/// pentagonal facets. Centrally symmetric but not equiprojective.
pub fn pyritohedron() -> Polytope3 {
    let mut pts = Vec::new();
    for x in [-2i64, 2] {
        for y in [-2i64, 2] {
            for z in [-2i64, 2] {
                pts.push(Vec3::from_ints(x, y, z));
            }
        }
    }
    // h = 1/2 scaled by 2: (0, ±(1+h), ±(1-h²)) → (0, ±3, ±3/2) cyclically
    let h = |a: i64, b: i64| (rat(3) * rat(a), Rat::new(3.into(), 2.into()) * rat(b));
    for s in [-1i64, 1] {
        for t in [-1i64, 1] {
            let (big, small) = h(s, t);
            pts.push(Vec3::new(rat(0), big.clone(), small.clone()));
            pts.push(Vec3::new(big.clone(), small.clone(), rat(0)));
            pts.push(Vec3::new(small, rat(0), big));
        }
    }
    hull3(&pts).expect("twenty points")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polygons_have_requested_size() {
        for m in 3..=10 {
            let p = rational_polygon(m).unwrap();
            assert_eq!(p.dim(), 2);
            assert_eq!(p.vertex_count(), m);
            assert_eq!(p.edge_count(), m);
            p.validate().unwrap();
        }
        assert!(rational_polygon(2).is_err());
    }

    #[test]
    fn prism_combinatorics() {
        let p = prism(5).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.vertex_count(), 10);
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.facet_count(), 7);
        p.validate().unwrap();
    }

    #[test]
    fn pyritohedron_is_a_rational_dodecahedron() {
        let p = pyritohedron();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.vertex_count(), 20);
        assert_eq!(p.edge_count(), 30);
        assert_eq!(p.facet_count(), 12);
        assert!(p.facets().iter().all(|f| f.cycle.len() == 5));
        p.validate().unwrap();
    }
}
