//! Incremental exact convex hull with coplanar-facet merging.
//!
//! Strict visibility with exact signs keeps the surface correct in every
//! degenerate case: a point outside the current hull always violates some
//! facet half-space strictly, and points on the boundary are never extreme.
//! Coplanar triangles are merged into polygon facets at the end.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::arith::{sign_rat, Rat};
use crate::vec3::{orientation, IVec3, Vec3};
use crate::{Error, Result};

use super::{Facet, Polytope3};

pub(super) fn build(points: &[Vec3]) -> Result<Polytope3> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut pts: Vec<Vec3> = points.to_vec();
    pts.sort();
    pts.dedup();

    if pts.len() == 1 {
        return Ok(Polytope3::from_parts(pts, 0, vec![], vec![], vec![]));
    }

    // Affine basis scan: pts[0], pts[1] always span a line (points are
    // distinct); look for a third point off that line and a fourth off the
    // resulting plane.
    let d1 = &pts[1] - &pts[0];
    let noncollinear = pts
        .iter()
        .position(|p| !(p - &pts[0]).cross(&d1).is_zero());
    let Some(i2) = noncollinear else {
        // All points on a line; lex order is monotone along it.
        let vertices = vec![pts[0].clone(), pts.last().unwrap().clone()];
        return Ok(Polytope3::from_parts(vertices, 1, vec![(0, 1)], vec![], vec![vec![]]));
    };
    let noncoplanar = pts
        .iter()
        .position(|p| orientation(&pts[0], &pts[1], &pts[i2], p) != 0);
    match noncoplanar {
        None => build_polygon(&pts, i2),
        Some(i3) => build_solid(&pts, i2, i3),
    }
}

/// 2D hull of coplanar points by monotone chain, with exact in-plane turns.
fn build_polygon(pts: &[Vec3], i2: usize) -> Result<Polytope3> {
    let mut w = IVec3::from_rational_ray(&(&pts[1] - &pts[0]).cross(&(&pts[i2] - &pts[0])));
    if w.leading_sign() < 0 {
        w = (-&w).primitive();
    }
    let turn = |a: &Vec3, b: &Vec3, c: &Vec3| -> i8 {
        sign_rat(&w.dot_vec3(&(b - a).cross(&(c - a))))
    };

    let mut lower: Vec<usize> = Vec::new();
    for i in 0..pts.len() {
        while lower.len() >= 2
            && turn(&pts[lower[lower.len() - 2]], &pts[lower[lower.len() - 1]], &pts[i]) <= 0
        {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for i in (0..pts.len()).rev() {
        while upper.len() >= 2
            && turn(&pts[upper[upper.len() - 2]], &pts[upper[upper.len() - 1]], &pts[i]) <= 0
        {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    let mut cycle: Vec<usize> = lower;
    cycle.extend(upper);

    // The chains give a consistent orientation; normalize to counterclockwise
    // around w via the signed area.
    let origin = &pts[cycle[0]];
    let mut area = Rat::from_integer(0.into());
    for k in 0..cycle.len() {
        let a = &pts[cycle[k]] - origin;
        let b = &pts[cycle[(k + 1) % cycle.len()]] - origin;
        area += w.dot_vec3(&a.cross(&b));
    }
    if sign_rat(&area) < 0 {
        cycle.reverse();
    }

    finish_polygon(pts, cycle, w)
}

fn finish_polygon(pts: &[Vec3], cycle: Vec<usize>, w: IVec3) -> Result<Polytope3> {
    let mut used: Vec<usize> = cycle.clone();
    used.sort_unstable();
    let rank = |i: usize| used.binary_search(&i).unwrap();
    let mut cycle: Vec<usize> = cycle.into_iter().map(rank).collect();
    let vertices: Vec<Vec3> = used.iter().map(|&i| pts[i].clone()).collect();

    let zero_at = cycle.iter().position(|&v| v == 0).unwrap();
    cycle.rotate_left(zero_at);

    let n = cycle.len();
    let mut edges: Vec<(usize, usize)> = (0..n)
        .map(|k| {
            let (a, b) = (cycle[k], cycle[(k + 1) % n]);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    let edge_facets = vec![vec![0]; edges.len()];
    let facets = vec![Facet { cycle, normal: w }];
    Ok(Polytope3::from_parts(vertices, 2, edges, facets, edge_facets))
}

/// Full-dimensional incremental hull.
fn build_solid(pts: &[Vec3], i2: usize, i3: usize) -> Result<Polytope3> {
    let seed = [0, 1, i2, i3];
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for omit in 0..4 {
        let f: Vec<usize> = (0..4).filter(|&k| k != omit).map(|k| seed[k]).collect();
        let opp = seed[omit];
        if orientation(&pts[f[0]], &pts[f[1]], &pts[f[2]], &pts[opp]) > 0 {
            tris.push([f[0], f[2], f[1]]);
        } else {
            tris.push([f[0], f[1], f[2]]);
        }
    }

    let in_seed = |i: usize| seed.contains(&i);
    for p in 0..pts.len() {
        if in_seed(p) {
            continue;
        }
        let visible: Vec<usize> = (0..tris.len())
            .filter(|&t| {
                let [a, b, c] = tris[t];
                orientation(&pts[a], &pts[b], &pts[c], &pts[p]) > 0
            })
            .collect();
        if visible.is_empty() {
            continue; // inside or on the current hull, hence not extreme
        }
        let mut vis_edges: HashSet<(usize, usize)> = HashSet::new();
        for &t in &visible {
            let [a, b, c] = tris[t];
            vis_edges.insert((a, b));
            vis_edges.insert((b, c));
            vis_edges.insert((c, a));
        }
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        for &t in &visible {
            let [a, b, c] = tris[t];
            for (x, y) in [(a, b), (b, c), (c, a)] {
                if !vis_edges.contains(&(y, x)) {
                    horizon.push((x, y));
                }
            }
        }
        let keep: Vec<[usize; 3]> = (0..tris.len())
            .filter(|t| !visible.contains(t))
            .map(|t| tris[t])
            .collect();
        tris = keep;
        for (x, y) in horizon {
            tris.push([x, y, p]);
        }
    }

    merge_coplanar(pts, &tris)
}

/// Groups the triangle soup by supporting plane, chains each group's boundary
/// into a polygon cycle, and assembles the face data.
fn merge_coplanar(pts: &[Vec3], tris: &[[usize; 3]]) -> Result<Polytope3> {
    let mut groups: BTreeMap<(IVec3, Rat), Vec<[usize; 3]>> = BTreeMap::new();
    for t in tris {
        let n_raw = (&pts[t[1]] - &pts[t[0]]).cross(&(&pts[t[2]] - &pts[t[0]]));
        let n = IVec3::from_rational_ray(&n_raw);
        let c = n.dot_vec3(&pts[t[0]]);
        groups.entry((n, c)).or_default().push(*t);
    }

    let mut raw_facets: Vec<(Vec<usize>, IVec3)> = Vec::new();
    for ((n, _), group) in groups {
        let mut directed: HashSet<(usize, usize)> = HashSet::new();
        for t in &group {
            for (x, y) in [(t[0], t[1]), (t[1], t[2]), (t[2], t[0])] {
                directed.insert((x, y));
            }
        }
        let mut next: BTreeMap<usize, usize> = BTreeMap::new();
        for &(x, y) in &directed {
            if !directed.contains(&(y, x)) {
                let prev = next.insert(x, y);
                debug_assert!(prev.is_none(), "facet boundary is not a simple cycle");
            }
        }
        let start = *next.keys().next().expect("facet group with empty boundary");
        let mut cycle = vec![start];
        let mut cur = next[&start];
        while cur != start {
            cycle.push(cur);
            cur = next[&cur];
        }
        debug_assert_eq!(cycle.len(), next.len(), "facet boundary is disconnected");

        // Drop boundary vertices that are collinear with their neighbors:
        // they are not extreme points of the polytope.
        loop {
            let m = cycle.len();
            let mut removed = false;
            let mut kept: Vec<usize> = Vec::with_capacity(m);
            for k in 0..m {
                let a = &pts[cycle[(k + m - 1) % m]];
                let b = &pts[cycle[k]];
                let c = &pts[cycle[(k + 1) % m]];
                if (b - a).cross(&(c - b)).is_zero() {
                    removed = true;
                } else {
                    kept.push(cycle[k]);
                }
            }
            cycle = kept;
            if !removed {
                break;
            }
        }
        debug_assert!(cycle.len() >= 3);
        raw_facets.push((cycle, n));
    }

    // Relabel vertices lexicographically (pts is sorted, so ascending old
    // indices give ascending coordinates).
    let mut used: Vec<usize> = raw_facets
        .iter()
        .flat_map(|(cycle, _)| cycle.iter().copied())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    used.sort_unstable();
    let rank = |i: usize| used.binary_search(&i).unwrap();
    let vertices: Vec<Vec3> = used.iter().map(|&i| pts[i].clone()).collect();

    let mut facets: Vec<Facet> = raw_facets
        .into_iter()
        .map(|(cycle, normal)| {
            let mut cycle: Vec<usize> = cycle.into_iter().map(rank).collect();
            let min_at = cycle
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| v)
                .map(|(k, _)| k)
                .unwrap();
            cycle.rotate_left(min_at);
            Facet { cycle, normal }
        })
        .collect();
    facets.sort_by(|a, b| a.cycle.cmp(&b.cycle));

    let mut edge_map: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (fi, facet) in facets.iter().enumerate() {
        let m = facet.cycle.len();
        for k in 0..m {
            let (a, b) = (facet.cycle[k], facet.cycle[(k + 1) % m]);
            edge_map.entry((a.min(b), a.max(b))).or_default().push(fi);
        }
    }
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(edge_map.len());
    let mut edge_facets: Vec<Vec<usize>> = Vec::with_capacity(edge_map.len());
    for (e, fs) in edge_map {
        debug_assert_eq!(fs.len(), 2, "hull edge must have exactly two facets");
        edges.push(e);
        edge_facets.push(fs);
    }

    Ok(Polytope3::from_parts(vertices, 3, edges, facets, edge_facets))
}
