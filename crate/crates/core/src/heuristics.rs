//! Greedy edge augmentation and its comparison with complete bipartite and
//! random regular graphs.

use alloc::vec::Vec;

use crate::constructions::{complete_bipartite, random_regular};
use crate::error::{invalid, Result};
use crate::graph::Graph;
use crate::linalg::eigen_smallest;
use crate::spectral::{algebraic_connectivity, fiedler_vector, laplacian};

/// Differences within this of the maximum count as ties.
pub const PAIR_TIE_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentationStep {
    pub edge: (usize, usize),
    /// λ₂ after adding `edge`.
    pub lambda2: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct AugmentationTrace {
    pub steps: Vec<AugmentationStep>,
    pub graph: Graph,
}

/// Starting from the empty graph, repeatedly adds the non-edge `(i, j)`
/// maximising `|v_i − v_j|` for the Fiedler vector `v`, until `m` edges are
/// present. Near-ties go to the lexicographically smallest pair.
///
/// While the graph is disconnected, `v` is the solver's second eigenvector
/// of the full Laplacian, one element of the degenerate null space.
pub fn edge_augmentation(n: usize, m: usize) -> Result<AugmentationTrace> {
    if m > n * n.saturating_sub(1) / 2 {
        return Err(invalid("more edges than the complete graph"));
    }
    let mut g = Graph::empty(n)?;
    let mut steps = Vec::with_capacity(m);
    if m == 0 {
        return Ok(AugmentationTrace { steps, graph: g });
    }
    let mut v = steering_vector(&g)?.1;
    for _ in 0..m {
        let edge = widest_pair(&g, &v);
        g = g.with_edge(edge.0, edge.1)?;
        let (lambda2, next) = steering_vector(&g)?;
        steps.push(AugmentationStep { edge, lambda2 });
        v = next;
    }
    Ok(AugmentationTrace { steps, graph: g })
}

fn steering_vector(g: &Graph) -> Result<(f64, Vec<f64>)> {
    if g.is_connected() {
        let f = fiedler_vector(g)?;
        return Ok((f.value, f.vector));
    }
    let second = eigen_smallest(&laplacian(g), 2)?.swap_remove(1);
    Ok((algebraic_connectivity(g)?, second.vector))
}

fn widest_pair(g: &Graph, v: &[f64]) -> (usize, usize) {
    let n = g.n();
    let mut best = f64::NEG_INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            if !g.has_edge(i, j) {
                best = best.max((v[i] - v[j]).abs());
            }
        }
    }
    (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .find(|&(i, j)| !g.has_edge(i, j) && (v[i] - v[j]).abs() >= best - PAIR_TIE_TOL)
        .expect("graph is not complete")
}

/// Spread of λ₂ over the random regular samples.
#[derive(Clone, Debug, PartialEq)]
pub struct RegularStats {
    pub d: usize,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub m: usize,
    pub augmented: f64,
    /// Largest `b ≤ n/2` with `b(n−b) ≤ m`.
    pub b: usize,
    pub bipartite: Option<f64>,
    /// `None` when `2m/n` is not an integer below `n`.
    pub regular: Option<RegularStats>,
    pub flags: Vec<&'static str>,
}

pub const REGULAR_SEEDS: u64 = 10;

/// One row per `m`: λ₂ of the augmented graph with `m` edges, of
/// `K_{b,n−b}`, and of random `2m/n`-regular graphs with seeds `0..10`.
pub fn compare_families(n: usize, m_values: &[usize]) -> Result<Vec<ComparisonRow>> {
    let top = m_values.iter().copied().max().unwrap_or(0);
    let trace = edge_augmentation(n, top)?;
    let mut rows = Vec::with_capacity(m_values.len());
    for &m in m_values {
        let mut flags = Vec::new();
        if m + 1 < n {
            flags.push("m<n-1");
        }
        let augmented = if m == 0 { 0.0 } else { trace.steps[m - 1].lambda2 };
        let b = (1..=n / 2).rev().find(|&b| b * (n - b) <= m).unwrap_or(0);
        let bipartite = if b == 0 {
            flags.push("no_bipartite");
            None
        } else {
            Some(algebraic_connectivity(&complete_bipartite(b, n - b)?)?)
        };
        let regular = if (2 * m) % n != 0 || 2 * m / n >= n {
            flags.push("d_not_integer");
            None
        } else {
            let d = 2 * m / n;
            let mut values = Vec::with_capacity(REGULAR_SEEDS as usize);
            for seed in 0..REGULAR_SEEDS {
                values.push(algebraic_connectivity(&random_regular(n, d, seed)?)?);
            }
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let min = values.iter().copied().fold(f64::INFINITY, f64::min);
            let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            Some(RegularStats { d, mean, min, max })
        };
        rows.push(ComparisonRow { m, augmented, b, bipartite, regular, flags });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let t = edge_augmentation(2, 1).unwrap();
        assert_eq!(t.steps.len(), 1);
        assert_eq!(t.steps[0].edge, (0, 1));
        assert!((t.steps[0].lambda2 - 2.0).abs() < 1e-12);
        assert!(edge_augmentation(3, 4).is_err());
    }

    #[test]
    fn trace_is_simple_and_monotone_once_connected() {
        let t = edge_augmentation(12, 30).unwrap();
        assert_eq!(t.graph.m(), 30);
        let mut prev = 0.0;
        for s in &t.steps {
            assert!(s.edge.0 < s.edge.1);
            if prev > 1e-9 {
                assert!(s.lambda2 >= prev - 1e-9);
            }
            prev = s.lambda2;
        }
        assert_eq!(t, edge_augmentation(12, 30).unwrap());
    }

    #[test]
    fn comparison_rows() {
        let rows = compare_families(20, &[19, 36, 40]).unwrap();
        assert_eq!(rows[1].b, 2);
        assert!((rows[1].bipartite.unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(rows[2].regular.as_ref().unwrap().d, 4);
        assert!(rows[0].regular.is_none());
    }
}
