//! Face enumeration and combinatorial-type comparison.
//!
//! Two polytopes have the same combinatorial type when their face lattices
//! are isomorphic. For 3-polytopes the lattice is determined by the
//! vertex-facet incidences, so isomorphism is decided on the bipartite
//! incidence structure: iterated color refinement followed by backtracking.

use std::collections::BTreeMap;

use crate::{Error, Result};

use super::{Polytope3, DEFAULT_ISO_NODE_BUDGET};

/// A face given by its sorted vertex-index set and dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    pub dim: usize,
    pub verts: Vec<usize>,
}

impl Face {
    pub fn vertex(dim0: usize) -> Face {
        Face { dim: 0, verts: vec![dim0] }
    }

    /// Face inclusion coincides with vertex-set inclusion.
    pub fn contains(&self, other: &Face) -> bool {
        other.verts.iter().all(|v| self.verts.binary_search(v).is_ok())
    }
}

impl Polytope3 {
    /// All nonempty faces, including the polytope itself, sorted by
    /// (dimension, vertex set).
    pub fn faces(&self) -> Vec<Face> {
        let mut out: Vec<Face> = Vec::new();
        let all: Vec<usize> = (0..self.vertex_count()).collect();
        match self.dim() {
            0 => out.push(Face { dim: 0, verts: all }),
            1 | 2 | 3 => {
                for v in 0..self.vertex_count() {
                    out.push(Face::vertex(v));
                }
                for &(a, b) in self.edges() {
                    out.push(Face { dim: 1, verts: vec![a, b] });
                }
                if self.dim() == 3 {
                    for facet in self.facets() {
                        let mut verts = facet.cycle.clone();
                        verts.sort_unstable();
                        out.push(Face { dim: 2, verts });
                    }
                }
                out.push(Face { dim: self.dim(), verts: all });
            }
            _ => unreachable!(),
        }
        out.sort();
        out
    }

    /// Number of nonempty proper faces.
    pub fn proper_face_count(&self) -> usize {
        self.faces().len() - 1
    }

    /// f-vector (V, E, F).
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.vertex_count(), self.edge_count(), self.facet_count())
    }
}

/// Decides whether two polytopes have isomorphic face lattices, with the
/// default search budget.
pub fn face_lattice_isomorphic(p: &Polytope3, q: &Polytope3) -> Result<bool> {
    face_lattice_isomorphic_with_budget(p, q, DEFAULT_ISO_NODE_BUDGET)
}

pub fn face_lattice_isomorphic_with_budget(
    p: &Polytope3,
    q: &Polytope3,
    budget: u64,
) -> Result<bool> {
    if p.dim() != q.dim() {
        return Ok(false);
    }
    match p.dim() {
        0 | 1 => Ok(true),
        2 => Ok(p.vertex_count() == q.vertex_count()),
        _ => {
            if p.f_vector() != q.f_vector() {
                return Ok(false);
            }
            incidence_isomorphic(p, q, budget)
        }
    }
}

struct IncidenceGraph {
    adj: Vec<Vec<usize>>,
    colors: Vec<u64>,
}

fn incidence_graph(p: &Polytope3) -> IncidenceGraph {
    let nv = p.vertex_count();
    let n = nv + p.facet_count();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (fi, facet) in p.facets().iter().enumerate() {
        for &v in &facet.cycle {
            adj[v].push(nv + fi);
            adj[nv + fi].push(v);
        }
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    // initial colors: side tag and degree
    let colors = (0..n)
        .map(|i| if i < nv { 2 * adj[i].len() as u64 } else { 2 * adj[i].len() as u64 + 1 })
        .collect();
    IncidenceGraph { adj, colors }
}

/// One refinement round over both graphs with a shared interner, so colors
/// remain comparable across the two.
fn refine(g1: &mut IncidenceGraph, g2: &mut IncidenceGraph) {
    loop {
        let mut interner: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        let mut next = |g: &IncidenceGraph, i: usize, interner: &mut BTreeMap<(u64, Vec<u64>), u64>| {
            let mut sig: Vec<u64> = g.adj[i].iter().map(|&j| g.colors[j]).collect();
            sig.sort_unstable();
            let len = interner.len() as u64;
            *interner.entry((g.colors[i], sig)).or_insert(len)
        };
        let c1: Vec<u64> = (0..g1.adj.len()).map(|i| next(g1, i, &mut interner)).collect();
        let c2: Vec<u64> = (0..g2.adj.len()).map(|i| next(g2, i, &mut interner)).collect();
        let classes_before = class_count(&g1.colors) + class_count(&g2.colors);
        let classes_after = class_count(&c1) + class_count(&c2);
        g1.colors = c1;
        g2.colors = c2;
        if classes_after <= classes_before {
            break;
        }
    }
}

fn class_count(colors: &[u64]) -> usize {
    let mut sorted = colors.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len()
}

fn color_histogram(colors: &[u64]) -> BTreeMap<u64, usize> {
    let mut h = BTreeMap::new();
    for &c in colors {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

fn incidence_isomorphic(p: &Polytope3, q: &Polytope3, budget: u64) -> Result<bool> {
    let mut gp = incidence_graph(p);
    let mut gq = incidence_graph(q);
    refine(&mut gp, &mut gq);
    let hist_p = color_histogram(&gp.colors);
    if hist_p != color_histogram(&gq.colors) {
        return Ok(false);
    }

    // Search order: breadth-first from a node in the rarest color class, so
    // every node after the first is adjacent to an already-mapped one.
    let n = gp.adj.len();
    let root = (0..n).min_by_key(|&i| (hist_p[&gp.colors[i]], i)).unwrap();
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut seen = vec![false; n];
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(root);
    seen[root] = true;
    while let Some(i) = queue.pop_front() {
        order.push(i);
        let mut nbrs: Vec<usize> = gp.adj[i].iter().copied().filter(|&j| !seen[j]).collect();
        nbrs.sort_by_key(|&j| (hist_p[&gp.colors[j]], j));
        for j in nbrs {
            seen[j] = true;
            queue.push_back(j);
        }
    }
    debug_assert_eq!(order.len(), n, "incidence graph must be connected");

    let mut by_color: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        by_color.entry(gq.colors[i]).or_default().push(i);
    }

    let mut map_pq: Vec<usize> = vec![usize::MAX; n];
    let mut map_qp: Vec<usize> = vec![usize::MAX; n];
    let mut nodes_left = budget;
    let found = match_nodes(
        0, &order, &gp, &gq, &by_color, &mut map_pq, &mut map_qp, &mut nodes_left,
    )?;
    Ok(found)
}

#[allow(clippy::too_many_arguments)]
fn match_nodes(
    k: usize,
    order: &[usize],
    gp: &IncidenceGraph,
    gq: &IncidenceGraph,
    by_color: &BTreeMap<u64, Vec<usize>>,
    map_pq: &mut Vec<usize>,
    map_qp: &mut Vec<usize>,
    nodes_left: &mut u64,
) -> Result<bool> {
    if k == order.len() {
        return Ok(true);
    }
    if *nodes_left == 0 {
        return Err(Error::ResourceBudget(
            "face-lattice isomorphism search exceeded its node budget".into(),
        ));
    }
    *nodes_left -= 1;

    let a = order[k];
    for &b in &by_color[&gp.colors[a]] {
        if map_qp[b] != usize::MAX {
            continue;
        }
        let ok = gp.adj[a].iter().all(|&m| {
            map_pq[m] == usize::MAX || gq.adj[b].binary_search(&map_pq[m]).is_ok()
        }) && gq.adj[b].iter().all(|&m| {
            map_qp[m] == usize::MAX || gp.adj[a].binary_search(&map_qp[m]).is_ok()
        });
        if !ok {
            continue;
        }
        map_pq[a] = b;
        map_qp[b] = a;
        if match_nodes(k + 1, order, gp, gq, by_color, map_pq, map_qp, nodes_left)? {
            return Ok(true);
        }
        map_pq[a] = usize::MAX;
        map_qp[b] = usize::MAX;
    }
    Ok(false)
}
