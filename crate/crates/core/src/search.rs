//! Exhaustive enumeration up to isomorphism, λ₂ maximisation and the
//! conjecture checks built on top of them.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bounds::tk_bound;
use crate::canon::{canonical_labeling, CanonicalForm, MAX_CANON_VERTICES};
use crate::constructions::{bethe_tree, bethe_tree_order, complete_bipartite, random_tree_with};
use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::graph6;
use crate::spectral::algebraic_connectivity;

/// Absolute tolerance for λ₂ ties.
pub const TIE_TOL: f64 = 1e-9;
pub const MAX_TREE_ORDER: usize = 24;
pub const MAX_CUBIC_ORDER: usize = 14;
pub const MAX_GRAPH_ORDER: usize = 10;
/// Graphs per work unit handed to a [`Driver`].
pub const CHUNK: usize = 512;

fn canonical_pair(g: &Graph) -> Result<(CanonicalForm, Graph)> {
    let (form, labeling) = canonical_labeling(g, None)?;
    Ok((form, g.permute(&labeling)?))
}

/// graph6 of the canonical relabelling for `n ≤ 64`, plain graph6 above.
pub fn canonical_key(g: &Graph) -> Result<String> {
    if g.n() <= MAX_CANON_VERTICES {
        Ok(graph6::encode(&canonical_pair(g)?.1))
    } else {
        Ok(graph6::encode(g))
    }
}

// ---- free trees ------------------------------------------------------------

/// Free trees on `n` vertices with maximum degree at most `d_max`, one per
/// isomorphism class, from the successor rule on canonical level sequences.
pub struct TreeIter {
    d_max: usize,
    layout: Option<Vec<usize>>,
    single: bool,
}

pub fn enumerate_trees(n: usize, d_max: usize) -> Result<TreeIter> {
    if !(1..=MAX_TREE_ORDER).contains(&n) {
        return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_TREE_ORDER });
    }
    if d_max < 2 && n > 2 {
        return Err(invalid("d_max must be at least 2"));
    }
    let layout = (n >= 2).then(|| (0..=n / 2).chain(1..n.div_ceil(2)).collect());
    Ok(TreeIter { d_max, layout, single: n == 1 })
}

impl Iterator for TreeIter {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if core::mem::take(&mut self.single) {
            return Graph::empty(1).ok();
        }
        loop {
            let cand = next_tree(self.layout.take()?);
            self.layout = next_rooted_tree(&cand, None);
            let parents = layout_parents(&cand);
            let mut deg = vec![0usize; cand.len()];
            for (i, &p) in parents.iter().enumerate().skip(1) {
                deg[i] += 1;
                deg[p] += 1;
            }
            if deg.iter().all(|&x| x <= self.d_max) {
                let edges: Vec<(usize, usize)> = parents.iter().enumerate().skip(1).map(|(i, &p)| (p, i)).collect();
                return Graph::from_edges(cand.len(), &edges).ok();
            }
        }
    }
}

fn next_rooted_tree(pred: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = match p {
        Some(p) => p,
        None => {
            let mut p = pred.len() - 1;
            while pred[p] == 1 {
                p -= 1;
            }
            p
        }
    };
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while pred[q] != pred[p] - 1 {
        q -= 1;
    }
    let mut out = pred.to_vec();
    for i in p..out.len() {
        out[i] = out[i - p + q];
    }
    Some(out)
}

fn split_tree(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout.iter().enumerate().skip(1).filter(|&(_, &x)| x == 1).nth(1).map_or(layout.len(), |(i, _)| i);
    let left = layout[1..m].iter().map(|x| x - 1).collect();
    let rest = core::iter::once(0).chain(layout[m..].iter().copied()).collect();
    (left, rest)
}

fn next_tree(cand: Vec<usize>) -> Vec<usize> {
    let (left, rest) = split_tree(&cand);
    let lh = left.iter().copied().max().unwrap_or(0);
    let rh = rest.iter().copied().max().unwrap_or(0);
    let valid = rh > lh || (rh == lh && (left.len() < rest.len() || (left.len() == rest.len() && left <= rest)));
    if valid {
        return cand;
    }
    let p = left.len();
    let mut next = next_rooted_tree(&cand, Some(p)).expect("p is positive");
    if cand[p] > 2 {
        let (new_left, _) = split_tree(&next);
        let h = new_left.iter().copied().max().unwrap_or(0);
        let len = next.len();
        for (k, slot) in next[len - (h + 1)..].iter_mut().enumerate() {
            *slot = k + 1;
        }
    }
    next
}

fn layout_parents(layout: &[usize]) -> Vec<usize> {
    let mut parents = vec![0; layout.len()];
    let mut stack: Vec<usize> = Vec::with_capacity(layout.len());
    for (i, &level) in layout.iter().enumerate() {
        while let Some(&j) = stack.last() {
            if layout[j] >= level {
                stack.pop();
            } else {
                parents[i] = j;
                break;
            }
        }
        stack.push(i);
    }
    parents
}

// ---- cubic graphs ----------------------------------------------------------

/// Connected cubic graphs on `n` vertices, one per isomorphism class, in
/// canonical order.
///
/// Generation starts from `K_{1,3}` plus isolated vertices and repeatedly
/// completes the lowest-numbered touched vertex of degree below 3, joining
/// it to touched vertices of degree below 3 or to the first untouched ones.
/// Every intermediate graph is reduced to canonical form and deduplicated.
pub fn enumerate_cubic(n: usize) -> Result<Vec<Graph>> {
    if !n.is_multiple_of(2) || !(4..=MAX_CUBIC_ORDER).contains(&n) {
        return Err(invalid(format!("cubic enumeration needs even n in 4..={MAX_CUBIC_ORDER}")));
    }
    let start = Graph::from_edges(n, &[(0, 1), (0, 2), (0, 3)])?;
    let (form, g) = canonical_pair(&start)?;
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut queue: BTreeMap<(usize, CanonicalForm), Graph> = BTreeMap::new();
    seen.insert(form.clone());
    queue.insert((g.m(), form), g);
    let mut out = Vec::new();
    while let Some((_, g)) = queue.pop_first() {
        let deg = g.degrees();
        let open: Vec<usize> = (0..n).filter(|&v| (1..3).contains(&deg[v])).collect();
        let Some(&v) = open.first() else {
            out.push(g);
            continue;
        };
        let need = 3 - deg[v];
        let fresh: Vec<usize> = (0..n).filter(|&u| deg[u] == 0).take(need).collect();
        let cands: Vec<usize> = open[1..].iter().copied().filter(|&u| !g.has_edge(v, u)).collect();
        for mask in 0u32..1 << cands.len() {
            let j = mask.count_ones() as usize;
            if j > need || need - j > fresh.len() {
                continue;
            }
            let mut h = g.clone();
            let picked = (0..cands.len()).filter(|b| mask >> b & 1 == 1).map(|b| cands[b]);
            for u in picked.chain(fresh[..need - j].iter().copied()) {
                h = h.with_edge(v, u)?;
            }
            let hd = h.degrees();
            let any_open = hd.iter().any(|&x| (1..3).contains(&x));
            let any_fresh = hd.contains(&0);
            if any_fresh && !any_open {
                continue;
            }
            let (form, c) = canonical_pair(&h)?;
            if seen.insert(form.clone()) {
                queue.insert((c.m(), form), c);
            }
        }
    }
    Ok(out)
}

// ---- general graphs --------------------------------------------------------

/// Connected graphs with `n` vertices, `m` edges and minimum degree at least
/// `min_degree`, one per isomorphism class, in canonical order.
///
/// Built by adding one edge at a time with canonical deduplication per
/// level; partial graphs that cannot reach the degree or connectivity
/// target with the remaining edges are dropped.
pub fn enumerate_graphs(n: usize, m: usize, min_degree: usize) -> Result<Vec<Graph>> {
    if !(1..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(Error::SizeOutOfRange { n, min: 1, max: MAX_GRAPH_ORDER });
    }
    if m > n * (n - 1) / 2 {
        return Err(invalid("more edges than the complete graph"));
    }
    let feasible = |g: &Graph| {
        let left = m - g.m();
        let deficit: usize = g.degrees().iter().map(|&d| min_degree.saturating_sub(d)).sum();
        deficit <= 2 * left && g.components().len() - 1 <= left
    };
    let mut level: BTreeMap<CanonicalForm, Graph> = BTreeMap::new();
    let empty = Graph::empty(n)?;
    if feasible(&empty) {
        let (form, g) = canonical_pair(&empty)?;
        level.insert(form, g);
    }
    for _ in 0..m {
        let mut next = BTreeMap::new();
        for g in level.values() {
            for j in 1..n {
                for i in 0..j {
                    if g.has_edge(i, j) {
                        continue;
                    }
                    let h = g.with_edge(i, j)?;
                    if !feasible(&h) {
                        continue;
                    }
                    let (form, c) = canonical_pair(&h)?;
                    next.entry(form).or_insert(c);
                }
            }
        }
        level = next;
    }
    Ok(level.into_values().filter(|g| g.is_connected() && g.min_degree() >= min_degree).collect())
}

// ---- maximisation ----------------------------------------------------------

/// λ₂ with the single-vertex graph mapped to 0.
pub fn lambda2(g: &Graph) -> Result<f64> {
    if g.n() < 2 {
        Ok(0.0)
    } else {
        algebraic_connectivity(g)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Maximizer {
    /// Canonical graph6.
    pub graph6: String,
    pub lambda2: f64,
}

/// Partial result of a maximisation: the running maximum and every graph
/// within [`TIE_TOL`] of it. Merging is associative and commutative, so
/// the final result does not depend on how the family was split.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Accumulator {
    pub enumerated: u64,
    best: Option<f64>,
    candidates: Vec<Maximizer>,
}

impl Accumulator {
    pub fn push(&mut self, g: &Graph) -> Result<()> {
        let l = lambda2(g)?;
        self.enumerated += 1;
        if self.best.is_some_and(|b| l < b - TIE_TOL) {
            return Ok(());
        }
        self.candidates.push(Maximizer { graph6: canonical_key(g)?, lambda2: l });
        self.best = Some(self.best.map_or(l, |b| b.max(l)));
        self.prune();
        Ok(())
    }

    fn prune(&mut self) {
        if let Some(b) = self.best {
            self.candidates.retain(|c| c.lambda2 >= b - TIE_TOL);
        }
        self.candidates.sort_by(|a, b| a.graph6.cmp(&b.graph6).then(b.lambda2.total_cmp(&a.lambda2)));
        self.candidates.dedup_by(|a, b| a.graph6 == b.graph6);
    }

    pub fn merge(mut self, other: Accumulator) -> Accumulator {
        self.enumerated += other.enumerated;
        self.best = match (self.best, other.best) {
            (Some(a), Some(b)) => Some(a.max(b)),
            (a, b) => a.or(b),
        };
        self.candidates.extend(other.candidates);
        self.prune();
        self
    }

    pub fn eval(chunk: &[Graph]) -> Result<Accumulator> {
        let mut acc = Accumulator::default();
        for g in chunk {
            acc.push(g)?;
        }
        Ok(acc)
    }

    pub fn finish(self, family: impl Into<String>) -> Result<SearchOutcome> {
        let best = self.best.ok_or(Error::EmptyFamily)?;
        Ok(SearchOutcome { best_lambda2: best, maximizers: self.candidates, enumerated: self.enumerated, family: family.into() })
    }
}

/// Evaluates chunks of a family and folds the partial results.
pub trait Driver {
    fn run(&self, chunks: &mut (dyn Iterator<Item = Vec<Graph>> + Send)) -> Result<Accumulator>;
}

/// Evaluates every chunk on the calling thread.
#[derive(Clone, Copy, Debug, Default)]
pub struct Sequential;

impl Driver for Sequential {
    fn run(&self, chunks: &mut (dyn Iterator<Item = Vec<Graph>> + Send)) -> Result<Accumulator> {
        let mut acc = Accumulator::default();
        for c in chunks {
            acc = acc.merge(Accumulator::eval(&c)?);
        }
        Ok(acc)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOutcome {
    pub best_lambda2: f64,
    /// Every graph within [`TIE_TOL`] of the best, sorted by graph6.
    pub maximizers: Vec<Maximizer>,
    pub enumerated: u64,
    pub family: String,
}

impl SearchOutcome {
    pub fn is_maximizer(&self, g: &Graph) -> Result<bool> {
        let key = canonical_key(g)?;
        Ok(self.maximizers.iter().any(|m| m.graph6 == key))
    }
}

/// Exact maximum of λ₂ over `family` with all maximizers.
pub fn maximize_lambda2<I>(family: I, description: &str, driver: &dyn Driver) -> Result<SearchOutcome>
where
    I: Iterator<Item = Graph> + Send,
{
    let mut it = family;
    let mut chunks = core::iter::from_fn(move || {
        let v: Vec<Graph> = it.by_ref().take(CHUNK).collect();
        (!v.is_empty()).then_some(v)
    });
    driver.run(&mut chunks)?.finish(description)
}

// ---- conjecture checks -----------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    /// No counterexample in a random sample; not a proof.
    Sampled,
}

impl Verdict {
    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Sampled => "SAMPLED (not exhaustive)",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub conjecture: &'static str,
    pub verdict: Verdict,
    pub exhaustive: bool,
    /// Value the family is compared against.
    pub reference: f64,
    pub outcome: SearchOutcome,
    /// graph6 of an offending graph on failure.
    pub witness: Option<String>,
    pub note: String,
}

/// Among connected graphs with `n` vertices, `2(n−2)` edges and minimum
/// degree 2, λ₂ is at most 2 and `K_{2,n−2}` attains it.
pub fn verify_conjecture_k2(n: usize, driver: &dyn Driver) -> Result<VerificationReport> {
    if !(4..=MAX_GRAPH_ORDER).contains(&n) {
        return Err(Error::SizeOutOfRange { n, min: 4, max: MAX_GRAPH_ORDER });
    }
    let m = 2 * (n - 2);
    let family = enumerate_graphs(n, m, 2)?;
    let outcome = maximize_lambda2(family.into_iter(), &format!("connected graphs n={n} m={m} min_degree>=2"), driver)?;
    let k2 = canonical_key(&complete_bipartite(2, n - 2)?)?;
    let over = outcome.maximizers.iter().find(|x| x.lambda2 > 2.0 + TIE_TOL);
    let has_k2 = outcome.maximizers.iter().any(|x| x.graph6 == k2);
    let (verdict, witness, note) = match (over, has_k2) {
        (Some(w), _) => (Verdict::Fail, Some(w.graph6.clone()), "graph with lambda2 above 2".into()),
        (None, false) => (Verdict::Fail, Some(k2), "K_{2,n-2} is not a maximizer".into()),
        (None, true) => (Verdict::Pass, None, format!("{} maximizer(s) at lambda2 = 2", outcome.maximizers.len())),
    };
    Ok(VerificationReport { conjecture: "k2", verdict, exhaustive: true, reference: 2.0, outcome, witness, note })
}

/// Sampling parameters for checks that are too large to run exhaustively.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampling {
    pub samples: usize,
    pub seed: u64,
}

/// Every tree with the Bethe-tree order and maximum degree `d` has smaller
/// λ₂ than the Bethe tree. Exhaustive up to 24 vertices, sampled above.
pub fn verify_conjecture_tree2(d: usize, k: usize, sampling: Sampling, driver: &dyn Driver) -> Result<VerificationReport> {
    let bethe = bethe_tree(d, k)?;
    let n = bethe_tree_order(d, k).unwrap_or(usize::MAX);
    let reference = algebraic_connectivity(&bethe)?;
    let bethe_key = canonical_key(&bethe)?;
    let exhaustive = n <= MAX_TREE_ORDER;
    let outcome = if exhaustive {
        maximize_lambda2(enumerate_trees(n, d)?, &format!("trees n={n} max_degree<={d}"), driver)?
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(sampling.seed);
        let family: Vec<Graph> = (0..sampling.samples).map(|_| random_tree_with(n, d, &mut rng)).collect::<Result<_>>()?;
        let desc = format!("{} random trees n={n} max_degree<={d} seed={}", sampling.samples, sampling.seed);
        maximize_lambda2(family.into_iter(), &desc, driver)?
    };
    let rival = outcome.maximizers.iter().find(|x| x.graph6 != bethe_key && x.lambda2 >= reference - TIE_TOL);
    let (verdict, witness, note) = match rival {
        Some(w) => (Verdict::Fail, Some(w.graph6.clone()), "tree matching or beating the Bethe tree".into()),
        None if exhaustive => {
            let unique = outcome.maximizers.len() == 1 && outcome.maximizers[0].graph6 == bethe_key;
            if unique {
                (Verdict::Pass, None, "Bethe tree is the unique maximizer".into())
            } else {
                (Verdict::Fail, Some(bethe_key), "Bethe tree is not the maximizer".into())
            }
        }
        None => (Verdict::Sampled, None, "sampled, not exhaustive".into()),
    };
    Ok(VerificationReport { conjecture: "tree2", verdict, exhaustive, reference, outcome, witness, note })
}

/// Every cubic graph of order `2^{K+1} − 2` has λ₂ at most
/// `3 − 2√2 cos(π/K)`, and every cubic graph of diameter `D` at most
/// `3 − 2√2 cos(π/D)`.
pub fn verify_conjecture_cubic(k: usize, driver: &dyn Driver) -> Result<VerificationReport> {
    if !(2..=3).contains(&k) {
        return Err(invalid("cubic check supports K in 2..=3"));
    }
    let n = (1 << (k + 1)) - 2;
    let reference = tk_bound(k)?;
    let family = enumerate_cubic(n)?;
    let mut witness = None;
    for g in &family {
        let l = algebraic_connectivity(g)?;
        if l > tk_bound(g.diameter()?)? + TIE_TOL {
            witness = Some(canonical_key(g)?);
            break;
        }
    }
    let outcome = maximize_lambda2(family.into_iter(), &format!("connected cubic graphs n={n}"), driver)?;
    let (verdict, note) = if let Some(w) = outcome.maximizers.iter().find(|x| x.lambda2 > reference + TIE_TOL) {
        witness = Some(w.graph6.clone());
        (Verdict::Fail, "graph above the order bound".into())
    } else if witness.is_some() {
        (Verdict::Fail, "graph above the diameter bound".into())
    } else {
        let attained = outcome.best_lambda2 >= reference - TIE_TOL;
        (Verdict::Pass, format!("{} attainer(s); bound attained: {attained}", outcome.maximizers.len()))
    };
    Ok(VerificationReport { conjecture: "cubic", verdict, exhaustive: true, reference, outcome, witness, note })
}
