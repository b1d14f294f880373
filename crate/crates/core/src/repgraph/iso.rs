use petgraph::algo::is_isomorphic_matching;
use petgraph::graph::DiGraph;

use super::{GraphError, RepGraph};
use crate::matkernel::C64;

/// Vertex limit for the general search when labels repeat.
pub const MAX_ISO_VERTICES: usize = 10;

/// Label-preserving digraph isomorphism, labels equal within `label_tol`.
///
/// Pairwise distinct labels force the vertex map, which is then checked
/// directly at any size. Repeated labels fall back to a VF2 search limited
/// to [`MAX_ISO_VERTICES`] vertices.
pub fn is_isomorphic(g: &RepGraph, h: &RepGraph, label_tol: f64) -> Result<bool, GraphError> {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    if !g.has_repeated_labels(2.0 * label_tol) {
        return Ok(forced_map(g, h, label_tol).is_some_and(|map| g.edges.iter().all(|&(a, b)| h.edges.contains(&(map[a], map[b])))));
    }
    if n > MAX_ISO_VERTICES {
        return Err(GraphError::TooLarge { n, max: MAX_ISO_VERTICES });
    }
    let (pg, ph) = (to_petgraph(g), to_petgraph(h));
    Ok(is_isomorphic_matching(&pg, &ph, |a: &C64, b: &C64| (a - b).norm() <= label_tol, |_: &(), _: &()| true))
}

fn forced_map(g: &RepGraph, h: &RepGraph, label_tol: f64) -> Option<Vec<usize>> {
    let mut used = vec![false; h.n()];
    let mut map = Vec::with_capacity(g.n());
    for a in &g.labels {
        let mut hits = (0..h.n()).filter(|&j| (a - h.labels[j]).norm() <= label_tol);
        let j = hits.next()?;
        if hits.next().is_some() || used[j] {
            return None;
        }
        used[j] = true;
        map.push(j);
    }
    Some(map)
}

fn to_petgraph(g: &RepGraph) -> DiGraph<C64, ()> {
    let mut pg = DiGraph::with_capacity(g.n(), g.edge_count());
    let idx: Vec<_> = g.labels.iter().map(|&z| pg.add_node(z)).collect();
    for &(a, b) in &g.edges {
        pg.add_edge(idx[a], idx[b], ());
    }
    pg
}

/// Exhaustive search over all permutations; an oracle for small graphs.
pub fn is_isomorphic_brute(g: &RepGraph, h: &RepGraph, label_tol: f64) -> bool {
    let n = g.n();
    if n != h.n() || g.edge_count() != h.edge_count() {
        return false;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let ok = |p: &[usize]| {
        (0..n).all(|v| (g.labels[v] - h.labels[p[v]]).norm() <= label_tol)
            && g.edges.iter().all(|&(a, b)| h.edges.contains(&(p[a], p[b])))
    };
    // Heap's algorithm.
    let mut c = vec![0usize; n];
    if ok(&perm) {
        return true;
    }
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            if ok(&perm) {
                return true;
            }
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    false
}
