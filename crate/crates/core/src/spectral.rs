//! Laplacian spectra: λ₂, the Fiedler vector, the root-modified eigenvalue
//! λ̃(G, r), Rayleigh quotients and the consensus decay rate.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;
use crate::linalg::{self, dot, eigen_smallest, EigenResult, SymMatrix};

/// `L = D − A`.
pub fn laplacian(g: &Graph) -> SymMatrix {
    let n = g.n();
    let mut l = SymMatrix::zeros(n);
    for (i, j) in g.edges() {
        l.set(i, j, -1.0);
        l.add_diag(i, 1.0);
        l.add_diag(j, 1.0);
    }
    l
}

/// All Laplacian eigenvalues, ascending.
pub fn laplacian_spectrum(g: &Graph) -> Result<Vec<f64>> {
    linalg::eigenvalues(&laplacian(g))
}

/// Householder reflector `P = I − β w wᵀ` exchanging `e₀` and `1/√n`.
struct OnesReflector {
    w: Vec<f64>,
    beta: f64,
}

impl OnesReflector {
    fn new(n: usize) -> Self {
        let u = 1.0 / libm::sqrt(n as f64);
        let mut w = vec![u; n];
        w[0] -= 1.0;
        let beta = 2.0 / dot(&w, &w);
        OnesReflector { w, beta }
    }

    /// The trailing `(n−1) × (n−1)` block of `P L P`. Its spectrum is the
    /// Laplacian spectrum with one zero (the constant mode) removed.
    fn deflate(&self, l: &SymMatrix) -> SymMatrix {
        let n = l.n();
        let z = l.mul_vec(&self.w);
        let gamma = dot(&self.w, &z);
        let (w, b) = (&self.w, self.beta);
        let mut out = SymMatrix::zeros(n - 1);
        for i in 1..n {
            for j in i..n {
                let v = l.get(i, j) - b * (w[i] * z[j] + z[i] * w[j]) + b * b * gamma * w[i] * w[j];
                out.set(i - 1, j - 1, v);
            }
        }
        out
    }

    /// Maps a vector of the deflated block back to `ℝⁿ` (orthogonal to 1).
    fn lift(&self, y: &[f64]) -> Vec<f64> {
        let mut x = Vec::with_capacity(y.len() + 1);
        x.push(0.0);
        x.extend_from_slice(y);
        let s = self.beta * dot(&self.w, &x);
        x.iter_mut().zip(&self.w).for_each(|(xi, wi)| *xi -= s * wi);
        x
    }
}

fn require_two(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::SizeOutOfRange { n: g.n(), min: 2, max: crate::graph::MAX_VERTICES });
    }
    Ok(())
}

/// Second-smallest Laplacian eigenvalue λ₂ (zero iff `g` is disconnected).
pub fn algebraic_connectivity(g: &Graph) -> Result<f64> {
    require_two(g)?;
    let refl = OnesReflector::new(g.n());
    let values = linalg::eigenvalues(&refl.deflate(&laplacian(g)))?;
    Ok(values[0])
}

/// Eigenpair for λ₂ with the eigenvector constrained to be orthogonal to the
/// all-ones vector. Under multiplicity the solver's first vector of the
/// eigenspace is returned.
pub fn fiedler_vector(g: &Graph) -> Result<EigenResult> {
    require_two(g)?;
    let l = laplacian(g);
    let refl = OnesReflector::new(g.n());
    let deflated = refl.deflate(&l);
    let (values, vecs) = linalg::symmetric_eigen(&deflated, true)?;
    let m = g.n() - 1;
    let y: Vec<f64> = (0..m).map(|i| vecs[i * m]).collect();
    Ok(EigenResult::new(&l, values[0], refl.lift(&y)))
}

/// Smallest eigenpair of `L + e_r e_rᵀ`, i.e. λ̃(G, r).
pub fn modified_lambda(g: &Graph, r: usize) -> Result<EigenResult> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let mut l = laplacian(g);
    l.add_diag(r, 1.0);
    let mut v = eigen_smallest(&l, 1)?;
    Ok(v.swap_remove(0))
}

fn edge_energy(g: &Graph, x: &[f64]) -> f64 {
    g.edges().map(|(i, j)| (x[i] - x[j]) * (x[i] - x[j])).sum()
}

fn check_vector(g: &Graph, x: &[f64]) -> Result<f64> {
    if x.len() != g.n() {
        return Err(invalid("vector length differs from n"));
    }
    let den = dot(x, x);
    if den == 0.0 {
        return Err(Error::ZeroVector);
    }
    Ok(den)
}

/// `Σ_{(i,j)∈E} (x_i − x_j)² / Σ x_i²`.
pub fn rayleigh_quotient(g: &Graph, x: &[f64]) -> Result<f64> {
    let den = check_vector(g, x)?;
    Ok(edge_energy(g, x) / den)
}

/// `(x_r² + Σ_{(i,j)∈E} (x_i − x_j)²) / Σ x_i²`.
pub fn modified_rayleigh_quotient(g: &Graph, r: usize, x: &[f64]) -> Result<f64> {
    if r >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: r, n: g.n() });
    }
    let den = check_vector(g, x)?;
    Ok((x[r] * x[r] + edge_energy(g, x)) / den)
}

/// Exponential decay rate fitted to a consensus trajectory.
#[derive(Clone, Debug, PartialEq)]
pub struct DecayFit {
    /// Fitted rate of `‖u(t) − ū‖ ∼ C e^{−rate·t}`.
    pub rate: f64,
    /// RMS residual of the least-squares line through `log ‖u(t) − ū‖`.
    pub rel_err: f64,
    /// Number of samples entering the fit.
    pub samples: usize,
}

/// Integrates `du/dt = −L u` from `u0` with classical RK4 at fixed step
/// `dt` and fits the slope of `log ‖u(t) − ū‖₂` over the last half of the
/// trajectory.
///
/// Integration stops early once the disagreement falls below `1e-11` of its
/// initial size, where rounding in `u − ū` would start to dominate. The
/// step must satisfy `dt ≤ 0.1 / (2 Δ)`, with `2Δ` the Gershgorin bound on
/// the largest Laplacian eigenvalue.
pub fn consensus_decay_rate(g: &Graph, u0: &[f64], t_end: f64, dt: f64) -> Result<DecayFit> {
    let n = g.n();
    require_two(g)?;
    if u0.len() != n {
        return Err(invalid("initial loads must have one entry per vertex"));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let lo = u0.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = u0.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(hi - lo > 1e-14 * hi.abs().max(lo.abs()).max(1.0)) {
        return Err(invalid("initial loads are constant"));
    }
    let lambda_max = 2.0 * g.max_degree() as f64;
    if !(dt > 0.0 && dt <= 0.1 / lambda_max) {
        return Err(invalid("time step must satisfy 0 < dt <= 0.1 / (2 * max degree)"));
    }
    let steps = libm::floor(t_end / dt) as usize;
    if !(t_end > 0.0) || steps < 8 {
        return Err(invalid("t_end must cover at least 8 steps"));
    }

    let adj: Vec<Vec<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let apply = |u: &[f64], out: &mut [f64]| {
        for (i, nb) in adj.iter().enumerate() {
            out[i] = nb.iter().map(|&j| u[j] - u[i]).sum();
        }
    };
    let mean = u0.iter().sum::<f64>() / n as f64;
    let disagreement = |u: &[f64]| libm::sqrt(u.iter().map(|x| (x - mean) * (x - mean)).sum());

    let mut u = u0.to_vec();
    let (mut k1, mut k2, mut k3, mut k4) = (vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]);
    let mut tmp = vec![0.0; n];
    let floor = 1e-11 * disagreement(&u);
    let mut series: Vec<(f64, f64)> = vec![(0.0, libm::log(disagreement(&u)))];
    for step in 1..=steps {
        apply(&u, &mut k1);
        tmp.iter_mut().zip(&u).zip(&k1).for_each(|((t, x), k)| *t = x + 0.5 * dt * k);
        apply(&tmp, &mut k2);
        tmp.iter_mut().zip(&u).zip(&k2).for_each(|((t, x), k)| *t = x + 0.5 * dt * k);
        apply(&tmp, &mut k3);
        tmp.iter_mut().zip(&u).zip(&k3).for_each(|((t, x), k)| *t = x + dt * k);
        apply(&tmp, &mut k4);
        for i in 0..n {
            u[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        let r = disagreement(&u);
        if r <= floor {
            break;
        }
        series.push((step as f64 * dt, libm::log(r)));
    }
    let tail = &series[series.len() / 2..];
    if tail.len() < 2 {
        return Err(invalid("trajectory too short to fit"));
    }
    let (slope, intercept) = least_squares(tail);
    let rss: f64 = tail.iter().map(|&(t, y)| {
        let e = y - slope * t - intercept;
        e * e
    }).sum();
    Ok(DecayFit {
        rate: (-slope).max(0.0),
        rel_err: libm::sqrt(rss / tail.len() as f64),
        samples: tail.len(),
    })
}

fn least_squares(points: &[(f64, f64)]) -> (f64, f64) {
    let k = points.len() as f64;
    let tm = points.iter().map(|p| p.0).sum::<f64>() / k;
    let ym = points.iter().map(|p| p.1).sum::<f64>() / k;
    let sxy: f64 = points.iter().map(|&(t, y)| (t - tm) * (y - ym)).sum();
    let sxx: f64 = points.iter().map(|&(t, _)| (t - tm) * (t - tm)).sum();
    let slope = sxy / sxx;
    (slope, ym - slope * tm)
}
