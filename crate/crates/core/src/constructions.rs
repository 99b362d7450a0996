//! Standard graph families, the named-graph registry and random regular
//! graphs.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{invalid, Error, Result};
use crate::graph::{Graph, MAX_VERTICES};
use crate::graph6;

fn size_check(n: usize, min: usize) -> Result<()> {
    if n < min || n > MAX_VERTICES {
        return Err(Error::SizeOutOfRange { n, min, max: MAX_VERTICES });
    }
    Ok(())
}

/// `K_{1,n−1}` centred at vertex 0.
pub fn star(n: usize) -> Result<Graph> {
    size_check(n, 2)?;
    Graph::from_fn(n, |i, j| i == 0 || j == 0)
}

/// `0 − 1 − … − (n−1)`.
pub fn path(n: usize) -> Result<Graph> {
    size_check(n, 2)?;
    Graph::from_fn(n, |i, j| i.abs_diff(j) == 1)
}

pub fn cycle(n: usize) -> Result<Graph> {
    size_check(n, 3)?;
    Graph::from_fn(n, |i, j| i.abs_diff(j) == 1 || i.abs_diff(j) == n - 1)
}

pub fn complete(n: usize) -> Result<Graph> {
    size_check(n, 1)?;
    Graph::from_fn(n, |_, _| true)
}

/// `K_{a,b}` with parts `{0..a}` and `{a..a+b}`.
pub fn complete_bipartite(a: usize, b: usize) -> Result<Graph> {
    if a == 0 || b == 0 {
        return Err(invalid("both parts of a complete bipartite graph must be nonempty"));
    }
    size_check(a + b, 2)?;
    Graph::from_fn(a + b, |i, j| (i < a) != (j < a))
}

/// Vertex count `(d(d−1)^K − 2)/(d−2)` of the Bethe tree, if representable.
pub fn bethe_tree_order(d: usize, k: usize) -> Option<usize> {
    let mut n = 1usize;
    let mut layer = d;
    for _ in 0..k {
        n = n.checked_add(layer)?;
        layer = layer.checked_mul(d - 1)?;
    }
    Some(n)
}

/// Tree with root 0 of degree `d`, every other internal vertex of degree
/// `d`, all leaves at depth `k`. Vertices are numbered breadth-first.
pub fn bethe_tree(d: usize, k: usize) -> Result<Graph> {
    if d < 3 {
        return Err(invalid("Bethe trees need d >= 3"));
    }
    if k == 0 {
        return Err(invalid("Bethe trees need K >= 1"));
    }
    let n = bethe_tree_order(d, k).unwrap_or(usize::MAX);
    size_check(n, 2)?;
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    let mut frontier = 0..1;
    for level in 0..k {
        let start = next;
        for parent in frontier {
            let children = if level == 0 { d } else { d - 1 };
            for _ in 0..children {
                edges.push((parent, next));
                next += 1;
            }
        }
        frontier = start..next;
    }
    Graph::from_edges(n, &edges)
}

/// Two perfect binary trees with `k` levels each (heap numbered, the second
/// offset by `2^k − 1`), roots joined by an edge.
pub fn double_binary_tree(k: usize) -> Result<Graph> {
    if k == 0 || k > 11 {
        return Err(invalid("double binary trees need 1 <= K <= 11"));
    }
    let half = (1usize << k) - 1;
    let mut edges = Vec::with_capacity(2 * half - 1);
    for offset in [0, half] {
        for i in 1..half {
            edges.push(((i - 1) / 2 + offset, i + offset));
        }
    }
    edges.push((0, half));
    Graph::from_edges(2 * half, &edges)
}

/// Metadata every registry entry must reproduce.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expected {
    pub n: usize,
    pub m: usize,
    pub girth: usize,
    pub cubic: bool,
}

#[derive(Clone, Copy, Debug)]
pub struct NamedGraphEntry {
    pub name: &'static str,
    /// Embedded graph6, or `None` for graphs built from a construction.
    pub graph6: Option<&'static str>,
    pub expected: Expected,
}

pub const REGISTRY: &[NamedGraphEntry] = &[
    NamedGraphEntry {
        name: "petersen",
        graph6: None,
        expected: Expected { n: 10, m: 15, girth: 5, cubic: true },
    },
    NamedGraphEntry {
        name: "heawood",
        graph6: Some("MhEGHC@AI?_PC@_G_"),
        expected: Expected { n: 14, m: 21, girth: 6, cubic: true },
    },
    NamedGraphEntry {
        name: "tutte_coxeter",
        graph6: Some("]hCGGC@GG?_@?@A?_?G@@??E??GG?G?OC??@??GI???_O?@?@?@??A?a???G??@@?O??E?A??G"),
        expected: Expected { n: 30, m: 45, girth: 8, cubic: true },
    },
];

/// Kneser graph `K(5, 2)`: 2-subsets of `{0..5}` in lexicographic order,
/// adjacent when disjoint.
fn petersen() -> Result<Graph> {
    let pairs: Vec<(usize, usize)> = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).collect();
    Graph::from_fn(10, |i, j| {
        let (p, q) = (pairs[i], pairs[j]);
        p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
    })
}

impl NamedGraphEntry {
    /// Builds the graph and checks it against the entry's metadata.
    pub fn load(&self) -> Result<Graph> {
        let g = match self.graph6 {
            Some(s) => graph6::decode(s),
            None => petersen(),
        }
        .map_err(|e| self.fail(e.to_string()))?;
        let e = self.expected;
        let found = Expected { n: g.n(), m: g.m(), girth: g.girth().unwrap_or(0), cubic: g.is_regular(3) };
        if found != e {
            return Err(self.fail(format!("expected {e:?}, found {found:?}")));
        }
        if !g.is_connected() {
            return Err(self.fail("disconnected".into()));
        }
        Ok(g)
    }

    fn fail(&self, reason: String) -> Error {
        Error::Registry { name: self.name.into(), reason }
    }
}

/// Looks up `name` in [`REGISTRY`].
pub fn named(name: &str) -> Result<Graph> {
    REGISTRY
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.into()))?
        .load()
}

/// Random `d`-regular simple graph on `n` vertices from the pairing model,
/// seeded with ChaCha8.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph> {
    random_regular_with(n, d, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Pairing model with rejection of colliding pairs: each round shuffles the
/// open stubs and pairs them off, keeping every pair that is neither a loop
/// nor a repeat. When the leftover stubs can no longer be completed the
/// attempt is discarded and restarted.
pub fn random_regular_with<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Result<Graph> {
    size_check(n, 1)?;
    if d >= n && !(d == 0 && n == 1) {
        return Err(invalid("degree must be smaller than n"));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(invalid("n * d must be even"));
    }
    loop {
        if let Some(edges) = try_pairing(n, d, rng) {
            return Graph::from_edges(n, &edges.into_iter().collect::<Vec<_>>());
        }
    }
}

fn try_pairing<R: Rng + ?Sized>(n: usize, d: usize, rng: &mut R) -> Option<BTreeSet<(usize, usize)>> {
    let mut edges = BTreeSet::new();
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| core::iter::repeat_n(v, d)).collect();
    while !stubs.is_empty() {
        let mut leftover: BTreeMap<usize, usize> = BTreeMap::new();
        stubs.shuffle(rng);
        for pair in stubs.chunks_exact(2) {
            let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
            if a != b && !edges.contains(&(a, b)) {
                edges.insert((a, b));
            } else {
                *leftover.entry(a).or_default() += 1;
                *leftover.entry(b).or_default() += 1;
            }
        }
        let open: Vec<usize> = leftover.keys().copied().collect();
        let completable = open.is_empty()
            || open.iter().enumerate().any(|(i, &a)| open[i + 1..].iter().any(|&b| !edges.contains(&(a, b))));
        if !completable {
            return None;
        }
        stubs = leftover.into_iter().flat_map(|(v, c)| core::iter::repeat_n(v, c)).collect();
    }
    Some(edges)
}

/// Random tree with maximum degree at most `d_max`: vertex `v` attaches to
/// a uniformly chosen earlier vertex with spare degree, then the labels are
/// shuffled.
pub fn random_tree(n: usize, d_max: usize, seed: u64) -> Result<Graph> {
    random_tree_with(n, d_max, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn random_tree_with<R: Rng + ?Sized>(n: usize, d_max: usize, rng: &mut R) -> Result<Graph> {
    size_check(n, 1)?;
    if d_max < 2 && n > 2 {
        return Err(invalid("d_max must be at least 2"));
    }
    let mut deg = vec![0usize; n];
    let mut open: Vec<usize> = vec![0];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let k = rng.gen_range(0..open.len());
        let p = open[k];
        edges.push((p, v));
        deg[p] += 1;
        deg[v] = 1;
        if deg[p] >= d_max {
            open.swap_remove(k);
        }
        if d_max > 1 {
            open.push(v);
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    Graph::from_edges(n, &edges)?.permute(&perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_form;

    #[test]
    fn small_families() {
        assert_eq!(canonical_form(&star(3).unwrap()), canonical_form(&path(3).unwrap()));
        assert_eq!(complete_bipartite(2, 8).unwrap().m(), 16);
        assert_eq!(cycle(3).unwrap().girth(), Some(3));
        assert!(path(1).is_err() && cycle(2).is_err() && complete_bipartite(0, 3).is_err());
    }

    #[test]
    fn bethe_trees() {
        let g = bethe_tree(3, 3).unwrap();
        assert_eq!(g.n(), 22);
        assert!(g.is_tree());
        assert_eq!(g.degree(0), 3);
        assert_eq!(canonical_form(&bethe_tree(3, 1).unwrap()), canonical_form(&star(4).unwrap()));
        for d in 3..=5 {
            for k in 1..=5 {
                let g = bethe_tree(d, k).unwrap();
                let p = (d - 1).pow(k as u32);
                assert_eq!(g.n(), (d * p - 2) / (d - 2));
                let depth = g.bfs_distances(0);
                for v in 1..g.n() {
                    let leaf = g.degree(v) == 1;
                    assert_eq!(leaf, depth[v] == Some(k));
                    assert!(leaf || g.degree(v) == d);
                }
                // breadth-first numbering
                assert!(depth.windows(2).all(|w| w[0] <= w[1]));
            }
        }
        assert!(bethe_tree(2, 3).is_err());
    }

    #[test]
    fn double_binary_trees() {
        assert_eq!(double_binary_tree(1).unwrap(), path(2).unwrap());
        for k in 1..=8 {
            let g = double_binary_tree(k).unwrap();
            assert_eq!(g.n(), (1 << (k + 1)) - 2);
            assert_eq!(g.m(), (1 << (k + 1)) - 3);
            assert!(g.is_tree());
            assert!(g.max_degree() <= 3);
        }
        assert_eq!(double_binary_tree(3).unwrap().n(), 14);
        assert_eq!(double_binary_tree(4).unwrap().n(), 30);
    }

    #[test]
    fn registry_loads() {
        for e in REGISTRY {
            let g = e.load().unwrap();
            assert_eq!(g.n(), e.expected.n);
        }
        assert_eq!(named("heawood").unwrap().girth(), Some(6));
        assert_eq!(named("tutte_coxeter").unwrap().girth(), Some(8));
        assert_eq!(named("petersen").unwrap().girth(), Some(5));
        assert!(matches!(named("dodecahedron"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn random_regular_graphs() {
        assert_eq!(random_regular(4, 3, 7).unwrap(), complete(4).unwrap());
        let g = random_regular(100, 3, 1).unwrap();
        assert!(g.is_regular(3));
        assert_eq!(g, random_regular(100, 3, 1).unwrap());
        assert!(random_regular(200, 12, 5).unwrap().is_regular(12));
        assert!(random_regular(5, 3, 0).is_err());
        assert!(random_regular(4, 4, 0).is_err());
    }

    #[test]
    fn random_trees() {
        for seed in 0..50 {
            let t = random_tree(30, 3, seed).unwrap();
            assert!(t.is_tree() && t.max_degree() <= 3);
        }
        assert_eq!(random_tree(1, 3, 0).unwrap().n(), 1);
        assert_eq!(random_tree(2, 1, 0).unwrap(), path(2).unwrap());
    }
}
