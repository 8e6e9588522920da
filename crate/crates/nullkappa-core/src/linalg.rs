//! Minimal dense linear algebra: column orthonormalization and symmetric
//! eigenvalues, sized for the collocation solver (hundreds of rows, a few
//! dozen columns).

use alloc::vec;
use alloc::vec::Vec;
#[allow(unused_imports)]
use num_traits::Float;

/// Row-major dense matrix.
#[derive(Debug, Clone)]
pub(crate) struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<f64>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0.0; rows * cols] }
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: f64) {
        self.data[r * self.cols + c] = v;
    }

}

/// Orthonormalizes the columns in place by modified Gram-Schmidt with one
/// reorthogonalization pass. Columns that become numerically dependent are
/// zeroed rather than normalized, which keeps downstream singular values
/// honest about rank deficiency.
pub(crate) fn orthonormalize_columns(a: &mut Mat) {
    let (m, n) = (a.rows, a.cols);
    let mut col = vec![0.0; m];
    for j in 0..n {
        for r in 0..m {
            col[r] = a.at(r, j);
        }
        let initial_norm = norm(&col);
        for _pass in 0..2 {
            for k in 0..j {
                let mut dot = 0.0;
                for r in 0..m {
                    dot += a.at(r, k) * col[r];
                }
                for r in 0..m {
                    col[r] -= dot * a.at(r, k);
                }
            }
        }
        let nrm = norm(&col);
        if nrm <= 1e-13 * initial_norm.max(1e-300) {
            for r in 0..m {
                a.set(r, j, 0.0);
            }
        } else {
            for r in 0..m {
                a.set(r, j, col[r] / nrm);
            }
        }
    }
}

fn norm(v: &[f64]) -> f64 {
    let mut s = 0.0;
    for &x in v {
        s += x * x;
    }
    s.sqrt()
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub(crate) fn symmetric_eigenvalues(a: &Mat) -> Vec<f64> {
    symmetric_eigen(a).0
}

/// Eigenvalues (ascending) and matching eigenvector columns of a symmetric
/// matrix, by cyclic Jacobi rotations with rotation accumulation.
pub(crate) fn symmetric_eigen(a: &Mat) -> (Vec<f64>, Mat) {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut m = a.data.clone();
    let mut v = Mat::zeros(n, n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }
    let idx = |r: usize, c: usize| r * n + c;
    let fro = {
        let mut s = 0.0;
        for &x in &m {
            s += x * x;
        }
        s.sqrt().max(1e-300)
    };
    for _sweep in 0..60 {
        let mut off = 0.0;
        for r in 0..n {
            for c in (r + 1)..n {
                off += m[idx(r, c)] * m[idx(r, c)];
            }
        }
        if off.sqrt() < 1e-15 * fro {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[idx(p, q)];
                if apq.abs() < 1e-300 {
                    continue;
                }
                let app = m[idx(p, p)];
                let aqq = m[idx(q, q)];
                let theta = 0.5 * (aqq - app) / apq;
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[idx(k, p)];
                    let mkq = m[idx(k, q)];
                    m[idx(k, p)] = c * mkp - s * mkq;
                    m[idx(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[idx(p, k)];
                    let mqk = m[idx(q, k)];
                    m[idx(p, k)] = c * mpk - s * mqk;
                    m[idx(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v.at(k, p);
                    let vkq = v.at(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[idx(i, i)].partial_cmp(&m[idx(j, j)]).unwrap());
    let eig: Vec<f64> = order.iter().map(|&i| m[idx(i, i)]).collect();
    let mut vecs = Mat::zeros(n, n);
    for (c, &i) in order.iter().enumerate() {
        for r in 0..n {
            vecs.set(r, c, v.at(r, i));
        }
    }
    (eig, vecs)
}

/// The two smallest singular values of a tall matrix, via the Gram matrix.
pub(crate) fn smallest_two_singular_values(a: &Mat) -> (f64, f64) {
    let n = a.cols;
    let mut g = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut dot = 0.0;
            for r in 0..a.rows {
                dot += a.at(r, i) * a.at(r, j);
            }
            g.set(i, j, dot);
            g.set(j, i, dot);
        }
    }
    let eig = symmetric_eigenvalues(&g);
    let s1 = eig[0].max(0.0).sqrt();
    let s2 = if n > 1 { eig[1].max(0.0).sqrt() } else { s1 };
    (s1, s2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mgs_produces_orthonormal_columns() {
        let mut a = Mat::zeros(5, 3);
        let vals = [
            [1.0, 2.0, 0.5],
            [0.0, 1.0, -1.0],
            [3.0, 0.1, 0.2],
            [-1.0, 4.0, 0.0],
            [0.5, 0.5, 2.0],
        ];
        for (r, row) in vals.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                a.set(r, c, v);
            }
        }
        orthonormalize_columns(&mut a);
        for i in 0..3 {
            for j in 0..3 {
                let mut dot = 0.0;
                for r in 0..5 {
                    dot += a.at(r, i) * a.at(r, j);
                }
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((dot - want).abs() < 1e-13, "({i},{j}) dot = {dot}");
            }
        }
    }

    #[test]
    fn jacobi_matches_known_spectrum() {
        // Symmetric tridiagonal [2,-1] has eigenvalues 2 - 2 cos(k pi / (n+1)).
        let n = 6;
        let mut a = Mat::zeros(n, n);
        for i in 0..n {
            a.set(i, i, 2.0);
            if i + 1 < n {
                a.set(i, i + 1, -1.0);
                a.set(i + 1, i, -1.0);
            }
        }
        let eig = symmetric_eigenvalues(&a);
        for (k, &lam) in eig.iter().enumerate() {
            let exact =
                2.0 - 2.0 * (core::f64::consts::PI * (k as f64 + 1.0) / (n as f64 + 1.0)).cos();
            assert!((lam - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn singular_values_of_scaled_orthogonal_block() {
        // [[3,0],[0,1],[0,0]] has singular values 3 and 1.
        let mut a = Mat::zeros(3, 2);
        a.set(0, 0, 3.0);
        a.set(1, 1, 1.0);
        let (s1, s2) = smallest_two_singular_values(&a);
        assert!((s1 - 1.0).abs() < 1e-13);
        assert!((s2 - 3.0).abs() < 1e-13);
    }
}
