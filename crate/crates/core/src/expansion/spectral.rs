//! Spectral lower bound on vertex expansion.
//!
//! Let `lambda_2` be the second-smallest eigenvalue of the normalized
//! Laplacian `L = I - D^-1/2 A D^-1/2` (a loop adds 2 to both `A_vv` and the
//! degree). The easy half of Cheeger's inequality gives, for every `S` with
//! `vol(S) <= vol(V \ S)`,
//!
//! ```text
//! e(S, V \ S) >= (lambda_2 / 2) * vol(S).
//! ```
//!
//! For `|S| <= n/2` both `vol(S)` and `vol(V \ S)` are at least
//! `d_min |S|`, so `e(S, V \ S) >= (lambda_2 / 2) d_min |S|`. Each vertex
//! outside `S` absorbs at most `d_max` of those edges, hence
//!
//! ```text
//! |N(S) \ S| >= (lambda_2 / 2) (d_min / d_max) |S|.
//! ```
//!
//! `lambda_2` is found with a Lanczos iteration on `D^-1/2 A D^-1/2`
//! restricted to the complement of its known top eigenvector
//! `D^1/2 1`, with full reorthogonalization and explicit restarts.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::decomposition::classify_components;
use crate::graph::Multigraph;
use crate::rng::{stream, stream_rng};

/// Residual norm at which a Ritz pair is accepted.
pub const EIGEN_TOLERANCE: f64 = 1e-8;
/// Cap on matrix-vector products.
pub const MAX_ITERATIONS: usize = 10_000;
/// Krylov basis size before a restart.
const MAX_BASIS: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectralBound {
    /// Second-smallest normalized Laplacian eigenvalue; 0 when disconnected.
    pub lambda2: f64,
    /// `(lambda2 / 2) (d_min / d_max)`.
    pub beta_lower: f64,
    pub connected: bool,
    pub converged: bool,
    pub residual: f64,
    pub iterations: usize,
}

/// Computes `lambda_2` and the derived expansion lower bound. The Lanczos
/// start vector is drawn from `seed`.
pub fn spectral_lower_bound(g: &Multigraph, seed: u64) -> SpectralBound {
    let n = g.vertex_count();
    let disconnected = SpectralBound {
        lambda2: 0.0,
        beta_lower: 0.0,
        connected: false,
        converged: true,
        residual: 0.0,
        iterations: 0,
    };
    if n == 0 || !classify_components(g, 0).is_connected() {
        return disconnected;
    }
    if n == 1 {
        return SpectralBound { connected: true, ..disconnected };
    }
    let op = NormalizedAdjacency::new(g);
    let eig = second_largest(&op, seed);
    let lambda2 = (1.0 - eig.value).clamp(0.0, 2.0);
    let ratio = g.min_degree() as f64 / g.max_degree() as f64;
    SpectralBound {
        lambda2,
        beta_lower: lambda2 / 2.0 * ratio,
        connected: true,
        converged: eig.converged,
        residual: eig.residual,
        iterations: eig.iterations,
    }
}

struct NormalizedAdjacency<'a> {
    g: &'a Multigraph,
    inv_sqrt_deg: Vec<f64>,
    /// Unit top eigenvector, proportional to `sqrt(deg)`.
    top: Vec<f64>,
}

impl<'a> NormalizedAdjacency<'a> {
    fn new(g: &'a Multigraph) -> Self {
        let deg: Vec<f64> = g.degrees().map(|d| d as f64).collect();
        let vol: f64 = deg.iter().sum();
        NormalizedAdjacency {
            g,
            inv_sqrt_deg: deg.iter().map(|d| 1.0 / d.sqrt()).collect(),
            top: deg.iter().map(|d| (d / vol).sqrt()).collect(),
        }
    }

    fn apply(&self, x: &[f64], y: &mut [f64]) {
        for (v, yv) in y.iter_mut().enumerate() {
            let s: f64 = self.g.neighbors(v).map(|u| self.inv_sqrt_deg[u] * x[u]).sum();
            *yv = self.inv_sqrt_deg[v] * s;
        }
    }

    fn deflate(&self, x: &mut [f64]) {
        let c = dot(&self.top, x);
        axpy(-c, &self.top, x);
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn axpy(a: f64, x: &[f64], y: &mut [f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

fn normalize(x: &mut [f64]) -> f64 {
    let norm = dot(x, x).sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|v| *v /= norm);
    }
    norm
}

struct Eigen {
    value: f64,
    residual: f64,
    converged: bool,
    iterations: usize,
}

fn second_largest(op: &NormalizedAdjacency<'_>, seed: u64) -> Eigen {
    let n = op.top.len();
    let dim = n - 1;
    let mut rng = stream_rng(seed, stream::SPECTRAL);
    let mut start: Vec<f64> = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
    let mut iterations = 0;
    let mut last = Eigen { value: 1.0, residual: f64::INFINITY, converged: false, iterations: 0 };
    loop {
        op.deflate(&mut start);
        if normalize(&mut start) == 0.0 {
            // start vector collapsed onto the top eigenvector; perturb
            start = (0..n).map(|_| rng.random_range(-1.0..1.0)).collect();
            continue;
        }
        let basis_cap = dim.min(MAX_BASIS);
        let mut basis: Vec<Vec<f64>> = vec![start.clone()];
        let mut alpha = Vec::new();
        let mut beta: Vec<f64> = Vec::new();
        let mut w = vec![0.0; n];
        loop {
            let j = basis.len() - 1;
            op.apply(&basis[j], &mut w);
            iterations += 1;
            let a = dot(&basis[j], &w);
            alpha.push(a);
            axpy(-a, &basis[j], &mut w);
            if j > 0 {
                axpy(-beta[j - 1], &basis[j - 1], &mut w);
            }
            for _ in 0..2 {
                op.deflate(&mut w);
                for q in &basis {
                    let c = dot(q, &w);
                    axpy(-c, q, &mut w);
                }
            }
            let b = dot(&w, &w).sqrt();
            let exhausted = b <= 1e-12 || basis.len() == dim;
            let check = exhausted || basis.len() == basis_cap || basis.len() % 5 == 0;
            if check {
                let (vals, vecs) = tridiagonal_eigen(&alpha, &beta);
                let k = alpha.len();
                let top = (0..k).max_by(|&x, &y| vals[x].total_cmp(&vals[y])).unwrap();
                let residual = if exhausted { 0.0 } else { (b * vecs[(k - 1) * k + top]).abs() };
                last = Eigen { value: vals[top], residual, converged: residual < EIGEN_TOLERANCE, iterations };
                if last.converged || iterations >= MAX_ITERATIONS {
                    return last;
                }
                if basis.len() == basis_cap {
                    // restart from the current Ritz vector
                    start = vec![0.0; n];
                    for (i, q) in basis.iter().enumerate() {
                        axpy(vecs[i * k + top], q, &mut start);
                    }
                    break;
                }
            }
            if iterations >= MAX_ITERATIONS {
                return last;
            }
            beta.push(b);
            let next: Vec<f64> = w.iter().map(|x| x / b).collect();
            basis.push(next);
        }
    }
}

/// Eigen-decomposition of the symmetric tridiagonal matrix with diagonal
/// `diag` and off-diagonal `off` by implicit QL iteration. Returns the
/// eigenvalues and a row-major `k x k` matrix whose column `i` is the
/// eigenvector of eigenvalue `i`.
fn tridiagonal_eigen(diag: &[f64], off: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let k = diag.len();
    let mut d = diag.to_vec();
    let mut e = vec![0.0; k];
    e[..k - 1].copy_from_slice(&off[..k - 1]);
    let mut z = vec![0.0; k * k];
    for i in 0..k {
        z[i * k + i] = 1.0;
    }
    for l in 0..k {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < k {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                break;
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut underflow = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                for row in 0..k {
                    let t = z[row * k + i + 1];
                    z[row * k + i + 1] = s * z[row * k + i] + c * t;
                    z[row * k + i] = c * z[row * k + i] - s * t;
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    (d, z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::fixtures::*;

    #[test]
    fn tridiagonal_small() {
        // [[2,1],[1,2]] has eigenvalues 1 and 3
        let (mut vals, _) = tridiagonal_eigen(&[2.0, 2.0], &[1.0]);
        vals.sort_by(f64::total_cmp);
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn k4_spectrum() {
        let b = spectral_lower_bound(&complete(4), 1);
        assert!(b.converged);
        assert!((b.lambda2 - 4.0 / 3.0).abs() < 1e-8);
        assert!((b.beta_lower - 2.0 / 3.0).abs() < 1e-8);
    }

    #[test]
    fn c6_spectrum() {
        let b = spectral_lower_bound(&cycle(6), 2);
        assert!((b.lambda2 - 0.5).abs() < 1e-8);
        assert!((b.beta_lower - 0.25).abs() < 1e-8);
    }

    #[test]
    fn long_cycle_converges() {
        let n = 400;
        let b = spectral_lower_bound(&cycle(n), 3);
        let want = 1.0 - (2.0 * std::f64::consts::PI / n as f64).cos();
        assert!(b.converged, "{b:?}");
        assert!((b.lambda2 - want).abs() < 1e-7, "{} vs {want}", b.lambda2);
    }

    #[test]
    fn disconnected_is_flagged() {
        let g = Multigraph::from_edges(4, vec![(0, 1), (2, 3)]).unwrap();
        let b = spectral_lower_bound(&g, 0);
        assert!(!b.connected);
        assert_eq!(b.beta_lower, 0.0);
    }

    #[test]
    fn single_edge() {
        let g = Multigraph::from_edges(2, vec![(0, 1)]).unwrap();
        let b = spectral_lower_bound(&g, 0);
        assert!((b.lambda2 - 2.0).abs() < 1e-12);
    }
}
