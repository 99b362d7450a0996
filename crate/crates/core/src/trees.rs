//! Tree procedures: the splitting-vertex walk, the cut-vertex spectral
//! bound, the balance predicate and the composed tree bound.

use alloc::vec;
use alloc::vec::Vec;

use crate::bounds::lamtilde_test_vector;
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::spectral::{modified_lambda, modified_rayleigh_quotient};

/// Vertex whose deletion leaves at least two large subtrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitResult {
    pub vertex: usize,
    /// Subtree sizes after deleting `vertex`, descending.
    pub component_sizes: Vec<usize>,
    /// Vertices visited by the walk, starting at 0.
    pub walk: Vec<usize>,
}

/// `(neighbour, size of its branch)` for every neighbour of `v` in tree `t`.
pub fn branches(t: &Graph, v: usize) -> Vec<(usize, usize)> {
    let n = t.n();
    let mut parent = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    parent[v] = v;
    order.push(v);
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for w in t.neighbors(u) {
            if parent[w] == usize::MAX {
                parent[w] = u;
                order.push(w);
            }
        }
    }
    let mut size = vec![1usize; n];
    for &u in order.iter().skip(1).rev() {
        let p = parent[u];
        if p != v {
            size[p] += size[u];
        }
    }
    t.neighbors(v).map(|w| (w, size[w])).collect()
}

fn require_tree(t: &Graph) -> Result<()> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    Ok(())
}

/// Walks from vertex 0 towards the largest branch (smallest index on ties)
/// until the walk alternates between two vertices `v, w`; returns the one
/// whose side of the edge `vw` holds at least half the vertices.
pub fn find_splitting_vertex(t: &Graph) -> Result<SplitResult> {
    require_tree(t)?;
    let n = t.n();
    if n < 3 {
        return Err(Error::SizeOutOfRange { n, min: 3, max: crate::graph::MAX_VERTICES });
    }
    let step = |c: usize| {
        branches(t, c)
            .into_iter()
            .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
            .map(|(w, _)| w)
            .expect("tree on at least 3 vertices has no isolated vertex")
    };
    let mut walk = vec![0, step(0)];
    loop {
        let next = step(walk[walk.len() - 1]);
        if next == walk[walk.len() - 2] {
            break;
        }
        walk.push(next);
        debug_assert!(walk.len() <= n + 1);
    }
    let (a, b) = (walk[walk.len() - 2], walk[walk.len() - 1]);
    // side of a after deleting edge ab is n minus the branch of b seen from a
    let b_side = branches(t, a).into_iter().find(|&(w, _)| w == b).map_or(0, |(_, s)| s);
    let a_side = n - b_side;
    let vertex = match a_side.cmp(&b_side) {
        core::cmp::Ordering::Greater => a,
        core::cmp::Ordering::Less => b,
        core::cmp::Ordering::Equal => a.min(b),
    };
    let mut component_sizes: Vec<usize> = branches(t, vertex).into_iter().map(|(_, s)| s).collect();
    component_sizes.sort_unstable_by(|x, y| y.cmp(x));
    Ok(SplitResult { vertex, component_sizes, walk })
}

/// `max(λ̃(G₁, u), λ̃(G₂, w))`, where `G₁`, `G₂` are the components of
/// `g − v` holding the neighbours `u` and `w` of `v`.
pub fn split_spectral_bound(g: &Graph, v: usize, u: usize, w: usize) -> Result<f64> {
    let n = g.n();
    for x in [v, u, w] {
        if x >= n {
            return Err(Error::VertexOutOfRange { vertex: x, n });
        }
    }
    if !g.has_edge(v, u) || !g.has_edge(v, w) {
        return Err(invalid("u and w must be neighbours of v"));
    }
    let comps = g.components_without(Some(v));
    if comps.len() < 2 {
        return Err(invalid("v is not a cut vertex"));
    }
    let find = |x: usize| comps.iter().position(|c| c.binary_search(&x).is_ok()).expect("vertex in some component");
    let (cu, cw) = (find(u), find(w));
    if cu == cw {
        return Err(invalid("u and w lie in the same component"));
    }
    let mut best = f64::NEG_INFINITY;
    for (c, root) in [(cu, u), (cw, w)] {
        let members = &comps[c];
        let sub = g.induced(members)?;
        let r = members.binary_search(&root).expect("root in its component");
        best = best.max(modified_lambda(&sub, r)?.value);
    }
    Ok(best)
}

/// First vertex (by index) whose removal leaves at least two components of
/// size `≥ (n−1)/d`, `d` the maximum degree; `None` if there is none.
/// The comparison is done in integers as `size · d ≥ n − 1`.
pub fn is_well_balanced(t: &Graph) -> Result<(bool, Option<usize>)> {
    require_tree(t)?;
    let d = t.max_degree();
    if d < 3 {
        return Err(invalid("balance check needs maximum degree at least 3"));
    }
    let n = t.n();
    for v in 0..n {
        let big = branches(t, v).iter().filter(|&&(_, s)| s * d >= n - 1).count();
        if big >= 2 {
            return Ok((true, Some(v)));
        }
    }
    Ok((false, None))
}

/// The tree bound assembled from its pieces: split at
/// [`find_splitting_vertex`], take the two largest branches `G₁`, `G₂`
/// rooted at the neighbours of the split vertex, and return the larger of
/// the two test-vector quotients for λ̃. The degree parameter is
/// `max(3, Δ(t))`.
pub fn composed_tree_bound(t: &Graph) -> Result<f64> {
    let split = find_splitting_vertex(t)?;
    let d = t.max_degree().max(3);
    let v = split.vertex;
    let mut br = branches(t, v);
    br.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
    let comps = t.components_without(Some(v));
    let mut best = f64::NEG_INFINITY;
    for &(root, _) in br.iter().take(2) {
        let members = comps.iter().find(|c| c.binary_search(&root).is_ok()).expect("branch component");
        let sub = t.induced(members)?;
        let r = members.binary_search(&root).expect("root in its component");
        let x = lamtilde_test_vector(&sub, r, d)?;
        best = best.max(modified_rayleigh_quotient(&sub, r, &x)?);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{bethe_tree, path, star};
    use crate::spectral::algebraic_connectivity;

    #[test]
    fn splitting() {
        let s = find_splitting_vertex(&path(5).unwrap()).unwrap();
        assert_eq!((s.vertex, s.component_sizes), (2, vec![2, 2]));
        let s = find_splitting_vertex(&star(6).unwrap()).unwrap();
        assert_eq!((s.vertex, s.component_sizes), (0, vec![1; 5]));
        let s = find_splitting_vertex(&bethe_tree(3, 3).unwrap()).unwrap();
        assert_eq!((s.vertex, s.component_sizes), (0, vec![7, 7, 7]));
        assert!(find_splitting_vertex(&path(2).unwrap()).is_err());
    }

    #[test]
    fn split_bound_cases() {
        let p = path(3).unwrap();
        let b = split_spectral_bound(&p, 1, 0, 2).unwrap();
        assert!((b - 1.0).abs() < 1e-12);
        assert!((algebraic_connectivity(&p).unwrap() - 1.0).abs() < 1e-12);
        let t = bethe_tree(3, 2).unwrap();
        assert!(split_spectral_bound(&t, 0, 1, 2).unwrap() >= algebraic_connectivity(&t).unwrap() - 1e-9);
        assert!(split_spectral_bound(&t, 0, 1, 4).is_err());
        assert!(split_spectral_bound(&crate::constructions::cycle(5).unwrap(), 0, 1, 4).is_err());
    }

    #[test]
    fn balance() {
        assert_eq!(is_well_balanced(&bethe_tree(3, 3).unwrap()).unwrap(), (true, Some(0)));
        assert!(is_well_balanced(&path(4).unwrap()).is_err());
    }

    #[test]
    fn composed_bound_on_bethe_tree() {
        let t = bethe_tree(3, 3).unwrap();
        assert!(composed_tree_bound(&t).unwrap() >= algebraic_connectivity(&t).unwrap());
    }
}
