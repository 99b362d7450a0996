//! Canonical labelling by partition refinement and individualisation.
//!
//! The search tree is the usual one: refine the ordered vertex partition to
//! an equitable one, individualise each vertex of the first non-singleton
//! cell in turn, recurse. Every leaf is a discrete partition, i.e. a
//! relabelling of the graph; the canonical form is the largest relabelled
//! adjacency matrix among the leaves. Two leaves with equal matrices yield an
//! automorphism, and children of a node that lie in one orbit of the
//! automorphisms found so far (restricted to those fixing the node's
//! individualised vertices) are explored only once.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use crate::error::{Error, Result};
use crate::graph::{BitIter, Graph};

/// Largest graph accepted by the canonical labeller.
pub const MAX_CANON_VERTICES: usize = 64;

/// Isomorphism-invariant encoding of a (possibly vertex-coloured) graph.
///
/// Equal `bytes` if and only if the graphs are isomorphic.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    bytes: Vec<u8>,
    orbit_count: usize,
}

impl CanonicalForm {
    pub fn bytes(&self) -> &[u8] {
        &self.bytes
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.bytes
    }

    /// Number of vertex orbits of the automorphism group generated by the
    /// automorphisms met during the search.
    pub fn orbit_count(&self) -> usize {
        self.orbit_count
    }
}

impl PartialEq for CanonicalForm {
    fn eq(&self, other: &Self) -> bool {
        self.bytes == other.bytes
    }
}

impl Eq for CanonicalForm {}

impl PartialOrd for CanonicalForm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalForm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bytes.cmp(&other.bytes)
    }
}

impl core::hash::Hash for CanonicalForm {
    fn hash<H: core::hash::Hasher>(&self, state: &mut H) {
        self.bytes.hash(state);
    }
}

pub fn canonical_form(g: &Graph) -> Result<CanonicalForm> {
    canonical_labeling(g, None).map(|(form, _)| form)
}

/// The canonical relabelling of `g` (isomorphic graphs map to equal graphs).
pub fn canonical_graph(g: &Graph) -> Result<Graph> {
    let (_, labeling) = canonical_labeling(g, None)?;
    g.permute(&labeling)
}

/// Canonical form plus the labelling that produces it: vertex `v` goes to
/// position `labeling[v]`. With `colors`, only colour-preserving
/// isomorphisms are considered and colour classes are ordered by value.
pub fn canonical_labeling(g: &Graph, colors: Option<&[u32]>) -> Result<(CanonicalForm, Vec<usize>)> {
    let n = g.n();
    if n > MAX_CANON_VERTICES {
        return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_CANON_VERTICES });
    }
    if let Some(c) = colors {
        if c.len() != n {
            return Err(crate::error::invalid("colour vector length differs from n"));
        }
    }
    let adj: Vec<u64> = (0..n).map(|v| g.row64(v)).collect();
    let mut cells = initial_cells(n, colors);
    let sizes: Vec<u8> = cells.iter().map(|c| c.count_ones() as u8).collect();

    let mut search = Search { n, adj, autos: Vec::new(), first: None, best: None };
    let queue = cells.clone();
    search.refine(&mut cells, queue);
    let mut prefix = Vec::new();
    search.descend(cells, &mut prefix);

    let best = search.best.take().expect("search visits at least one leaf");
    let mut bytes = Vec::with_capacity(2 + sizes.len() + n * n / 16);
    bytes.push(n as u8);
    if colors.is_some() {
        bytes.push(sizes.len() as u8);
        bytes.extend_from_slice(&sizes);
    }
    pack_upper_triangle(&best.code, n, &mut bytes);

    let mut labeling = vec![0; n];
    for (pos, &v) in best.lab.iter().enumerate() {
        labeling[v as usize] = pos;
    }
    let orbit_count = {
        let mut uf = UnionFind::new(n);
        for a in &search.autos {
            uf.absorb(a);
        }
        uf.count()
    };
    Ok((CanonicalForm { bytes, orbit_count }, labeling))
}

fn initial_cells(n: usize, colors: Option<&[u32]>) -> Vec<u64> {
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    match colors {
        None => vec![all],
        Some(c) => {
            let mut values: Vec<u32> = c.to_vec();
            values.sort_unstable();
            values.dedup();
            values
                .iter()
                .map(|&value| (0..n).filter(|&v| c[v] == value).fold(0u64, |m, v| m | 1 << v))
                .collect()
        }
    }
}

fn pack_upper_triangle(code: &[u64], n: usize, out: &mut Vec<u8>) {
    let mut acc = 0u8;
    let mut k = 0;
    for p in 0..n {
        for q in p + 1..n {
            acc = acc << 1 | (code[p] >> q & 1) as u8;
            k += 1;
            if k == 8 {
                out.push(acc);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push(acc << (8 - k));
    }
}

struct Leaf {
    lab: Vec<u8>,
    code: Vec<u64>,
}

struct Search {
    n: usize,
    adj: Vec<u64>,
    autos: Vec<Vec<u8>>,
    first: Option<Leaf>,
    best: Option<Leaf>,
}

impl Search {
    /// Refines `cells` to the coarsest equitable refinement reachable by
    /// splitting against the queued splitter sets. Fragments are ordered by
    /// neighbour count, so the outcome depends only on the labelled
    /// structure, never on vertex numbering.
    fn refine(&self, cells: &mut Vec<u64>, initial: Vec<u64>) {
        let mut queue: VecDeque<u64> = initial.into();
        let mut buckets = [0u64; 65];
        while let Some(w) = queue.pop_front() {
            if cells.len() == self.n {
                return;
            }
            let mut k = 0;
            while k < cells.len() {
                let x = cells[k];
                if x & (x - 1) == 0 {
                    k += 1;
                    continue;
                }
                let (mut lo, mut hi) = (usize::MAX, 0);
                for v in BitIter(x) {
                    let c = (self.adj[v] & w).count_ones() as usize;
                    buckets[c] |= 1 << v;
                    lo = lo.min(c);
                    hi = hi.max(c);
                }
                if lo == hi {
                    buckets[lo] = 0;
                    k += 1;
                    continue;
                }
                let mut frags = Vec::new();
                for b in &mut buckets[lo..=hi] {
                    if *b != 0 {
                        frags.push(*b);
                        *b = 0;
                    }
                }
                let len = frags.len();
                queue.extend(frags.iter().copied());
                cells.splice(k..k + 1, frags);
                k += len;
            }
        }
    }

    fn descend(&mut self, cells: Vec<u64>, prefix: &mut Vec<usize>) {
        let Some(t) = cells.iter().position(|&c| c & (c - 1) != 0) else {
            self.leaf(&cells);
            return;
        };
        let target = cells[t];
        let mut explored: Vec<usize> = Vec::new();
        let mut orbits: Option<(usize, UnionFind)> = None;
        for v in BitIter(target) {
            if !explored.is_empty() && !self.autos.is_empty() {
                let stale = orbits.as_ref().is_none_or(|(seen, _)| *seen != self.autos.len());
                if stale {
                    orbits = Some((self.autos.len(), self.stabiliser_orbits(prefix)));
                }
                let uf = &mut orbits.as_mut().expect("computed above").1;
                let root = uf.find(v);
                if explored.iter().any(|&u| uf.find(u) == root) {
                    continue;
                }
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..t]);
            child.push(1u64 << v);
            child.push(target & !(1u64 << v));
            child.extend_from_slice(&cells[t + 1..]);
            self.refine(&mut child, vec![1u64 << v]);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
            explored.push(v);
        }
    }

    /// Orbits of the found automorphisms that fix every vertex in `prefix`.
    fn stabiliser_orbits(&self, prefix: &[usize]) -> UnionFind {
        let mut uf = UnionFind::new(self.n);
        for a in &self.autos {
            if prefix.iter().all(|&p| a[p] as usize == p) {
                uf.absorb(a);
            }
        }
        uf
    }

    fn leaf(&mut self, cells: &[u64]) {
        let lab: Vec<u8> = cells.iter().map(|c| c.trailing_zeros() as u8).collect();
        let mut pos = [0u8; 64];
        for (p, &v) in lab.iter().enumerate() {
            pos[v as usize] = p as u8;
        }
        let code: Vec<u64> = lab
            .iter()
            .map(|&v| BitIter(self.adj[v as usize]).fold(0u64, |row, w| row | 1 << pos[w]))
            .collect();

        let Some(first) = &self.first else {
            self.best = Some(Leaf { lab: lab.clone(), code: code.clone() });
            self.first = Some(Leaf { lab, code });
            return;
        };
        if code == first.code {
            let auto = automorphism(&first.lab, &lab);
            self.autos.push(auto);
            return;
        }
        let best = self.best.as_ref().expect("set with first");
        match code.cmp(&best.code) {
            Ordering::Equal => {
                let auto = automorphism(&best.lab, &lab);
                self.autos.push(auto);
            }
            Ordering::Greater => self.best = Some(Leaf { lab, code }),
            Ordering::Less => {}
        }
    }
}

/// Automorphism sending `from[p]` to `to[p]` for every position `p`.
fn automorphism(from: &[u8], to: &[u8]) -> Vec<u8> {
    let mut a = vec![0u8; from.len()];
    for (&f, &t) in from.iter().zip(to) {
        a[f as usize] = t;
    }
    a
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    fn absorb(&mut self, perm: &[u8]) {
        for (i, &j) in perm.iter().enumerate() {
            self.union(i, j as usize);
        }
    }

    fn count(&mut self) -> usize {
        (0..self.parent.len()).filter(|&i| self.find(i) == i).count()
    }
}
