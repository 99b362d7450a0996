//! Simple undirected graphs stored as fixed-width adjacency bit rows.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 4096;

/// An immutable simple undirected graph on `n` vertices labelled `0..n`.
///
/// Row `i` is a bitset of the neighbours of `i`. The adjacency is symmetric
/// and loop-free, and `m` caches the edge count.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_VERTICES });
        }
        let words = n.div_ceil(64);
        Ok(Graph { n, words, bits: vec![0; n * words], m: 0 })
    }

    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse into one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.insert_edge(i, j)?;
        }
        g.debug_check();
        Ok(g)
    }

    /// Builds a graph from a symmetric predicate evaluated on pairs `i < j`.
    pub(crate) fn from_fn(n: usize, mut adjacent: impl FnMut(usize, usize) -> bool) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                if adjacent(i, j) {
                    g.set(i, j);
                }
            }
        }
        Ok(g)
    }

    fn insert_edge(&mut self, i: usize, j: usize) -> Result<()> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        self.set(i, j);
        Ok(())
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize) {
        if !self.has_edge(i, j) {
            self.bits[i * self.words + j / 64] |= 1 << (j % 64);
            self.bits[j * self.words + i / 64] |= 1 << (i % 64);
            self.m += 1;
        }
    }

    /// Copy of `self` with the edge `{i, j}` added.
    pub fn with_edge(&self, i: usize, j: usize) -> Result<Self> {
        let mut g = self.clone();
        g.insert_edge(i, j)?;
        Ok(g)
    }

    /// Copy of `self` with the edge `{i, j}` removed (no-op if absent).
    pub fn without_edge(&self, i: usize, j: usize) -> Result<Self> {
        for v in [i, j] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut g = self.clone();
        if g.has_edge(i, j) {
            g.bits[i * g.words + j / 64] &= !(1 << (j % 64));
            g.bits[j * g.words + i / 64] &= !(1 << (i % 64));
            g.m -= 1;
        }
        Ok(g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges.
    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.bits[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency row of `v` as `ceil(n / 64)` little-endian words.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Adjacency row as a single word. Only valid for `n <= 64`.
    #[inline]
    pub(crate) fn row64(&self, v: usize) -> u64 {
        debug_assert!(self.n <= 64);
        self.bits[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Neighbours of `v` in ascending order.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.row(v).iter().enumerate().flat_map(|(k, &word)| BitIter(word).map(move |b| k * 64 + b))
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| self.neighbors(i).filter(move |&j| j > i).map(move |j| (i, j)))
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degrees sorted ascending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn is_regular(&self, d: usize) -> bool {
        (0..self.n).all(|v| self.degree(v) == d)
    }

    /// Relabels vertices: vertex `v` becomes `perm[v]`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(crate::error::invalid("permutation length differs from n"));
        }
        let mut seen = vec![false; self.n];
        for &p in perm {
            if p >= self.n || core::mem::replace(&mut seen[p], true) {
                return Err(crate::error::invalid("not a permutation"));
            }
        }
        let mut g = Graph::empty(self.n)?;
        for (i, j) in self.edges() {
            g.set(perm[i], perm[j]);
        }
        Ok(g)
    }

    /// Subgraph induced on `vertices`; vertex `vertices[k]` becomes `k`.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut g = Graph::empty(vertices.len())?;
        for (a, &u) in vertices.iter().enumerate() {
            if u >= self.n {
                return Err(Error::VertexOutOfRange { vertex: u, n: self.n });
            }
            for (b, &w) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, w) {
                    g.set(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Breadth-first distances from `src`; `None` for unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for w in self.neighbors(u) {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected components, each sorted ascending, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        self.components_without(None)
    }

    /// Components of the graph with vertex `removed` (if any) deleted.
    pub fn components_without(&self, removed: Option<usize>) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX || Some(s) == removed {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut head = 0;
            while head < members.len() {
                let u = members[head];
                head += 1;
                for w in self.neighbors(u) {
                    if comp[w] == usize::MAX && Some(w) != removed {
                        comp[w] = id;
                        members.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.m + 1 == self.n && self.is_connected()
    }

    /// Length of the shortest cycle, or `None` for a forest.
    ///
    /// One BFS per vertex: a non-tree edge `(u, w)` met from root `s` closes a
    /// closed walk of length `dist(u) + dist(w) + 1`, which contains a cycle at
    /// most that long, and the root on a shortest cycle attains it exactly.
    pub fn girth(&self) -> Option<usize> {
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut queue = VecDeque::new();
        for s in 0..self.n {
            dist.fill(usize::MAX);
            dist[s] = 0;
            parent[s] = usize::MAX;
            queue.clear();
            queue.push_back(s);
            'bfs: while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    if 2 * dist[u] >= b {
                        break 'bfs;
                    }
                }
                for w in self.neighbors(u) {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    } else if parent[u] != w {
                        let len = dist[u] + dist[w] + 1;
                        if best.is_none_or(|b| len < b) {
                            best = Some(len);
                        }
                    }
                }
            }
        }
        best
    }

    /// Eccentricity of `v`, or `Err(Disconnected)`.
    pub fn eccentricity(&self, v: usize) -> Result<usize> {
        let mut ecc = 0;
        for d in self.bfs_distances(v) {
            ecc = ecc.max(d.ok_or(Error::Disconnected)?);
        }
        Ok(ecc)
    }

    /// Largest shortest-path distance over all vertex pairs.
    pub fn diameter(&self) -> Result<usize> {
        let mut diam = 0;
        for v in 0..self.n {
            diam = diam.max(self.eccentricity(v)?);
        }
        Ok(diam)
    }

    #[inline]
    pub(crate) fn debug_check(&self) {
        #[cfg(debug_assertions)]
        {
            let mut ones = 0usize;
            for i in 0..self.n {
                debug_assert!(!self.has_edge(i, i), "self-loop at {i}");
                for j in self.neighbors(i) {
                    debug_assert!(j < self.n && self.has_edge(j, i), "asymmetric at ({i},{j})");
                    ones += 1;
                }
            }
            debug_assert_eq!(ones, 2 * self.m);
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Iterator over set bit positions of a word, lowest first.
#[derive(Clone, Copy)]
pub(crate) struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}
