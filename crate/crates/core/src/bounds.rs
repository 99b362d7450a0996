//! Closed-form upper bounds on λ₂ for degree-bounded trees and cubic graphs,
//! the layered test vector behind the tree bound, and the tridiagonal matrix
//! behind the girth bound.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::linalg::SymMatrix;
use crate::spectral::algebraic_connectivity;

fn require_degree(d: usize) -> Result<()> {
    if d < 3 {
        return Err(invalid("degree bound d must be at least 3"));
    }
    Ok(())
}

/// `n = ((d−1)^K − 1)/(d−2) + m` with `0 ≤ m < (d−1)^K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LayerDecomposition {
    pub d: usize,
    pub n: usize,
    pub k: usize,
    pub m: usize,
}

impl LayerDecomposition {
    /// Size of layer `k` (1-based), `(d−1)^{k−1}` for `k ≤ K`.
    pub fn layer_size(&self, k: usize) -> usize {
        if k <= self.k {
            (self.d - 1).pow(k as u32 - 1)
        } else if k == self.k + 1 {
            self.m
        } else {
            0
        }
    }
}

pub fn layer_decomposition(n: usize, d: usize) -> Result<LayerDecomposition> {
    require_degree(d)?;
    if n == 0 {
        return Err(invalid("n must be positive"));
    }
    let (mut k, mut full, mut layer) = (0usize, 0usize, 1usize);
    while full + layer <= n {
        full += layer;
        k += 1;
        layer *= d - 1;
    }
    Ok(LayerDecomposition { d, n, k, m: n - full })
}

/// Weights `x_j = 1 − (d−1)^{−k}` on the vertices of bucket `k`, where the
/// vertices sorted by distance from `r` (ties by index) fill buckets of
/// sizes `1, d−1, (d−1)², …` and the remainder goes to bucket `K+1`.
pub fn lamtilde_test_vector(t: &Graph, r: usize, d: usize) -> Result<Vec<f64>> {
    require_degree(d)?;
    let n = t.n();
    if r >= n {
        return Err(Error::VertexOutOfRange { vertex: r, n });
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    if t.max_degree() > d {
        return Err(invalid("tree has a vertex of degree above d"));
    }
    if t.degree(r) >= d {
        return Err(invalid("root degree must be at most d - 1"));
    }
    let dist = t.bfs_distances(r);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (dist[v], v));
    let layers = layer_decomposition(n, d)?;
    let mut x = vec![0.0; n];
    let mut it = order.into_iter();
    for k in 1..=layers.k + 1 {
        let w = 1.0 - libm::pow((d - 1) as f64, -(k as f64));
        for v in it.by_ref().take(layers.layer_size(k)) {
            x[v] = w;
        }
    }
    Ok(x)
}

/// Exact value of the test-vector bound on λ̃ for `K` full layers:
///
/// `(d−2)²/q^{K+1} · (1 − q^{1−K}) / (1 − 2(K−1)(d−2)/q^K − (q − q^{−2})/q^K − q^{−2K−1})`
/// with `q = d − 1`.
pub fn precise_lamtilde_ratio(d: usize, k: usize) -> Result<BigRational> {
    require_degree(d)?;
    if !(2..=10_000).contains(&k) {
        return Err(invalid("K must lie in 2..=10000"));
    }
    let int = |v: usize| BigRational::from_integer(BigInt::from(v));
    let one = BigRational::one();
    let q = int(d - 1);
    let qpow = |e: i32| q.pow(e);
    let ki = k as i32;
    let numerator = &one - qpow(1 - ki);
    let denominator = &one
        - int(2 * (k - 1) * (d - 2)) / qpow(ki)
        - (&q - qpow(-2)) / qpow(ki)
        - qpow(-2 * ki - 1);
    if denominator <= BigRational::zero() {
        return Err(Error::Inapplicable("denominator is not positive".into()));
    }
    Ok(int((d - 2) * (d - 2)) / qpow(ki + 1) * numerator / denominator)
}

pub fn precise_lamtilde_bound(d: usize, k: usize) -> Result<f64> {
    let r = precise_lamtilde_ratio(d, k)?;
    r.to_f64().ok_or_else(|| invalid("bound not representable as f64"))
}

/// `⌊log_{d−1}(1 + (d−2)(n−2)/(2(d−1)))⌋`, computed in integers.
pub fn tree_bound_layers(n: usize, d: usize) -> Result<usize> {
    require_degree(d)?;
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    let q = (d - 1) as u128;
    let rhs = 2 * q + (d as u128 - 2) * (n as u128 - 2);
    let (mut k, mut p) = (0usize, 1u128);
    while 2 * q * p * q <= rhs {
        p *= q;
        k += 1;
    }
    Ok(k)
}

/// Tree bound at the layer count from [`tree_bound_layers`]; inapplicable
/// when that count is below 2.
pub fn tree_bound_precise(n: usize, d: usize) -> Result<f64> {
    let k = tree_bound_layers(n, d)?;
    if k < 2 {
        return Err(Error::Inapplicable("n too small for the precise tree bound".into()));
    }
    precise_lamtilde_bound(d, k)
}

/// Leading term `2(d−2)/n`.
pub fn tree_bound_asymptotic(n: usize, d: usize) -> Result<f64> {
    require_degree(d)?;
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    Ok(2.0 * (d - 2) as f64 / n as f64)
}

/// Conjectured leading term `d(d−2)/((d−1)n)`.
pub fn conjectured_tree_bound(n: usize, d: usize) -> Result<f64> {
    require_degree(d)?;
    if n < 2 {
        return Err(invalid("n must be at least 2"));
    }
    Ok((d * (d - 2)) as f64 / ((d - 1) * n) as f64)
}

/// `2 − 2cos(π/(D+1))` for a tree of diameter `D`.
pub fn basic_diameter_bound(g: &Graph) -> Result<f64> {
    if !g.is_tree() {
        return Err(Error::NotATree);
    }
    let diam = g.diameter()?;
    Ok(2.0 - 2.0 * libm::cos(PI / (diam + 1) as f64))
}

/// `3 − 2√2 cos(2π/D)`.
pub fn nilli_bound(diameter: usize) -> Result<f64> {
    if diameter == 0 {
        return Err(invalid("diameter must be positive"));
    }
    Ok(3.0 - 2.0 * SQRT_2 * libm::cos(2.0 * PI / diameter as f64))
}

/// `3 − 2√2 cos(π/K)`.
pub fn tk_bound(k: usize) -> Result<f64> {
    if k == 0 {
        return Err(invalid("K must be positive"));
    }
    Ok(3.0 - 2.0 * SQRT_2 * libm::cos(PI / k as f64))
}

/// `tk_bound(⌊g/2⌋)` for a cubic graph of girth `g`.
pub fn girth_bound(girth: usize) -> Result<f64> {
    if girth < 3 {
        return Err(invalid("girth must be at least 3"));
    }
    tk_bound(girth / 2)
}

/// Symmetric form of the `K × K` tridiagonal matrix with diagonal
/// `(4, 3, …, 3, 5)`, subdiagonal `−1` and superdiagonal `−2`: the
/// similarity `diag(2^{j/2})` turns both off-diagonals into `−√2`.
pub fn tk_matrix(k: usize) -> Result<SymMatrix> {
    if k < 2 {
        return Err(invalid("K must be at least 2"));
    }
    let mut a = SymMatrix::zeros(k);
    for j in 0..k {
        a.add_diag(j, 3.0);
        if j + 1 < k {
            a.set(j, j + 1, -SQRT_2);
        }
    }
    a.add_diag(0, 1.0);
    a.add_diag(k - 1, 2.0);
    Ok(a)
}

/// `n/(n−1) · δ`.
pub fn min_degree_bound(g: &Graph) -> Result<f64> {
    let n = g.n();
    if n < 2 {
        return Err(Error::SizeOutOfRange { n, min: 2, max: crate::graph::MAX_VERTICES });
    }
    Ok(n as f64 / (n - 1) as f64 * g.min_degree() as f64)
}

/// Whether a report entry is a proven bound or a leading-order reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoundKind {
    Certified,
    Reference,
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundEntry {
    pub name: &'static str,
    pub kind: BoundKind,
    /// `None` when the premises do not hold for this graph.
    pub value: Option<f64>,
}

impl BoundEntry {
    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub m: usize,
    pub lambda2: f64,
    pub entries: Vec<BoundEntry>,
}

impl BoundReport {
    pub fn get(&self, name: &str) -> Option<&BoundEntry> {
        self.entries.iter().find(|e| e.name == name)
    }

    /// Applicable certified entry with the smallest value.
    pub fn tightest(&self) -> Option<&BoundEntry> {
        self.entries
            .iter()
            .filter(|e| e.kind == BoundKind::Certified && e.applicable())
            .min_by(|a, b| a.value.partial_cmp(&b.value).unwrap_or(core::cmp::Ordering::Equal))
    }
}

/// Every bound whose premises `g` satisfies, next to λ₂(g).
pub fn bound_report(g: &Graph) -> Result<BoundReport> {
    if g.n() < 2 {
        return Err(Error::SizeOutOfRange { n: g.n(), min: 2, max: crate::graph::MAX_VERTICES });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lambda2 = algebraic_connectivity(g)?;
    let tree = g.is_tree();
    let d = g.max_degree();
    let tree_d = tree && d >= 3;
    let cubic = g.is_regular(3);
    let girth = g.girth();
    let diameter = g.diameter()?;
    let n = g.n();
    let certified = |name, value: Option<f64>| BoundEntry { name, kind: BoundKind::Certified, value };
    let reference = |name, value: Option<f64>| BoundEntry { name, kind: BoundKind::Reference, value };
    let entries = vec![
        certified("min_degree", Some(min_degree_bound(g)?)),
        certified("basic_diameter", if tree { Some(basic_diameter_bound(g)?) } else { None }),
        certified("tree_precise", if tree_d { tree_bound_precise(n, d).ok() } else { None }),
        reference("tree_asymptotic", if tree_d { Some(tree_bound_asymptotic(n, d)?) } else { None }),
        reference("tree_conjectured", if tree_d { Some(conjectured_tree_bound(n, d)?) } else { None }),
        certified("girth", match girth {
            Some(gv) if cubic => Some(girth_bound(gv)?),
            _ => None,
        }),
        certified("nilli", if cubic && diameter >= 2 { Some(nilli_bound(diameter)?) } else { None }),
    ];
    Ok(BoundReport { n, m: g.m(), lambda2, entries })
}
