//! Dense symmetric eigensolver.
//!
//! Householder reduction to tridiagonal form followed by the implicit-shift
//! QL iteration (the EISPACK `tred2`/`tql2` pair). The procedure is fully
//! deterministic, so repeated calls on the same matrix return bit-identical
//! eigenvectors.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};

/// Symmetry tolerance for input matrices, relative to `max(1, max |a_ij|)`.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Largest matrix dimension accepted by the eigensolver.
pub const MAX_DIM: usize = 4096;

/// Dense symmetric matrix in row-major order.
#[derive(Clone, Debug, PartialEq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(n: usize) -> Self {
        SymMatrix { n, data: vec![0.0; n * n] }
    }

    /// Builds from rows. Fails if the rows are ragged or not symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = SymMatrix::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(invalid("matrix rows must all have length n"));
            }
            m.data[i * n..(i + 1) * n].copy_from_slice(row);
        }
        m.check_symmetric()?;
        Ok(m)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    #[inline]
    pub fn add_diag(&mut self, i: usize, v: f64) {
        self.data[i * self.n + i] += v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn check_symmetric(&self) -> Result<()> {
        let scale = self.data.iter().fold(1.0f64, |a, v| a.max(v.abs()));
        for i in 0..self.n {
            for j in i + 1..self.n {
                if (self.get(i, j) - self.get(j, i)).abs() > SYMMETRY_TOL * scale {
                    return Err(Error::Asymmetric { i, j });
                }
            }
        }
        Ok(())
    }

    /// `y = A x`.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    /// `x^T A x`.
    pub fn quadratic_form(&self, x: &[f64]) -> f64 {
        dot(&self.mul_vec(x), x)
    }
}

/// An eigenpair with its residual `‖A x − λ x‖₂`.
///
/// The vector has unit norm and its entry of largest magnitude is positive
/// (the lowest such index when several entries tie).
#[derive(Clone, Debug, PartialEq)]
pub struct EigenResult {
    pub value: f64,
    pub vector: Vec<f64>,
    pub residual: f64,
}

impl EigenResult {
    pub(crate) fn new(a: &SymMatrix, value: f64, mut vector: Vec<f64>) -> Self {
        normalize(&mut vector);
        fix_sign(&mut vector);
        let residual = residual(a, value, &vector);
        EigenResult { value, vector, residual }
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    libm::sqrt(dot(a, a))
}

fn normalize(v: &mut [f64]) {
    let s = norm(v);
    if s > 0.0 {
        v.iter_mut().for_each(|x| *x /= s);
    }
}

/// Flips `v` so that its largest-magnitude entry is positive.
pub(crate) fn fix_sign(v: &mut [f64]) {
    let mut k = 0;
    for i in 1..v.len() {
        if v[i].abs() > v[k].abs() {
            k = i;
        }
    }
    if v.get(k).is_some_and(|&x| x < 0.0) {
        v.iter_mut().for_each(|x| *x = -*x);
    }
}

pub(crate) fn residual(a: &SymMatrix, value: f64, x: &[f64]) -> f64 {
    let ax = a.mul_vec(x);
    libm::sqrt(ax.iter().zip(x).map(|(p, q)| (p - value * q) * (p - value * q)).sum())
}

/// All eigenvalues ascending, with eigenvectors as columns of the returned
/// row-major `n × n` array when `vectors` is set.
pub(crate) fn symmetric_eigen(a: &SymMatrix, vectors: bool) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = a.n;
    if n > MAX_DIM {
        return Err(invalid("matrix dimension exceeds the dense solver limit"));
    }
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut v = a.data.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    tred2(n, &mut v, &mut d, &mut e);
    tql2(n, &mut v, &mut d, &mut e, vectors)?;
    Ok((d, v))
}

/// The `k` smallest eigenpairs of `a`, ascending.
pub fn eigen_smallest(a: &SymMatrix, k: usize) -> Result<Vec<EigenResult>> {
    a.check_symmetric()?;
    if k > a.n {
        return Err(invalid("requested more eigenpairs than the matrix dimension"));
    }
    let (values, vecs) = symmetric_eigen(a, true)?;
    let n = a.n;
    Ok((0..k)
        .map(|j| {
            let col: Vec<f64> = (0..n).map(|i| vecs[i * n + j]).collect();
            EigenResult::new(a, values[j], col)
        })
        .collect())
}

/// All eigenvalues ascending, without eigenvectors.
pub fn eigenvalues(a: &SymMatrix) -> Result<Vec<f64>> {
    a.check_symmetric()?;
    symmetric_eigen(a, false).map(|(d, _)| d)
}

/// Householder tridiagonalisation. On return `d` holds the diagonal, `e[1..]`
/// the subdiagonal, and `v` the accumulated orthogonal transform.
fn tred2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64]) {
    let at = |i: usize, j: usize| i * n + j;
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
    }
    for i in (1..n).rev() {
        let mut scale = 0.0;
        let mut h = 0.0;
        for dk in &d[..i] {
            scale += dk.abs();
        }
        if scale == 0.0 {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
                v[at(j, i)] = 0.0;
            }
        } else {
            for dk in &mut d[..i] {
                *dk /= scale;
                h += *dk * *dk;
            }
            let mut f = d[i - 1];
            let mut g = libm::sqrt(h);
            if f > 0.0 {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            e[..i].fill(0.0);
            for j in 0..i {
                f = d[j];
                v[at(j, i)] = f;
                g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            f = 0.0;
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                f = d[j];
                g = e[j];
                for k in j..i {
                    v[at(k, j)] -= f * e[k] + g * d[k];
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = 0.0;
            }
        }
        d[i] = h;
    }
    for i in 0..n - 1 {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = 1.0;
        let h = d[i + 1];
        if h != 0.0 {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = 0.0;
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] -= g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = 0.0;
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = 0.0;
    }
    v[at(n - 1, n - 1)] = 1.0;
    e[0] = 0.0;
}

/// Implicit QL on the tridiagonal `(d, e)`, then an ascending sort.
fn tql2(n: usize, v: &mut [f64], d: &mut [f64], e: &mut [f64], vectors: bool) -> Result<()> {
    let at = |i: usize, j: usize| i * n + j;
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    let eps = f64::EPSILON;
    let mut f = 0.0;
    let mut tst1 = 0.0f64;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > eps * tst1 {
            m += 1;
        }
        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > 60 {
                    return Err(Error::NoConvergence);
                }
                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = libm::hypot(p, 1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in &mut d[l + 2..n] {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = libm::hypot(p, e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if vectors {
                        for k in 0..n {
                            h = v[at(k, i + 1)];
                            v[at(k, i + 1)] = s * v[at(k, i)] + c * h;
                            v[at(k, i)] = c * v[at(k, i)] - s * h;
                        }
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;
                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    // Selection sort keeps the permutation deterministic for equal values.
    for i in 0..n.saturating_sub(1) {
        let mut k = i;
        let mut p = d[i];
        for (j, &dj) in d.iter().enumerate().skip(i + 1) {
            if dj < p {
                k = j;
                p = dj;
            }
        }
        if k != i {
            d[k] = d[i];
            d[i] = p;
            if vectors {
                for row in 0..n {
                    v.swap(at(row, i), at(row, k));
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let a = SymMatrix::from_rows(&[vec![1.0, -1.0], vec![-1.0, 1.0]]).unwrap();
        let r = eigen_smallest(&a, 2).unwrap();
        assert!(r[0].value.abs() < 1e-14);
        assert!((r[1].value - 2.0).abs() < 1e-14);
        for p in &r {
            assert!(p.residual < 1e-12);
            assert!((norm(&p.vector) - 1.0).abs() < 1e-12);
        }
        assert!(r[1].vector[0] > 0.0);
    }

    #[test]
    fn zero_matrix() {
        let r = eigen_smallest(&SymMatrix::zeros(3), 1).unwrap();
        assert_eq!(r[0].value, 0.0);
        assert_eq!(r[0].vector, [1.0, 0.0, 0.0]);
    }

    #[test]
    fn one_by_one_and_errors() {
        let a = SymMatrix::from_rows(&[vec![7.5]]).unwrap();
        assert_eq!(eigen_smallest(&a, 1).unwrap()[0].value, 7.5);
        assert!(eigen_smallest(&a, 2).is_err());
        assert!(matches!(
            SymMatrix::from_rows(&[vec![1.0, 2.0], vec![0.0, 1.0]]),
            Err(Error::Asymmetric { i: 0, j: 1 })
        ));
    }

    #[test]
    fn diagonal_sorted_with_vectors() {
        let mut a = SymMatrix::zeros(4);
        for (i, v) in [3.0, -1.0, 2.0, 0.5].into_iter().enumerate() {
            a.set(i, i, v);
        }
        let r = eigen_smallest(&a, 4).unwrap();
        let vals: Vec<f64> = r.iter().map(|p| p.value).collect();
        assert_eq!(vals, [-1.0, 0.5, 2.0, 3.0]);
        assert_eq!(r[0].vector, [0.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn eigenvalues_only_agrees() {
        let rows: Vec<Vec<f64>> = (0..7)
            .map(|i| (0..7).map(|j| 1.0 / (1.0 + i as f64 + j as f64)).collect())
            .collect();
        let a = SymMatrix::from_rows(&rows).unwrap();
        let full = eigen_smallest(&a, 7).unwrap();
        let vals = eigenvalues(&a).unwrap();
        for (p, v) in full.iter().zip(&vals) {
            assert!((p.value - v).abs() < 1e-13);
            assert!(p.residual < 1e-12);
        }
    }
}
