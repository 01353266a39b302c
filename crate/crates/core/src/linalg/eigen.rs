//! Hermitian eigen-decomposition.
//!
//! The matrix is reduced to Hermitian tridiagonal form with Householder
//! reflectors, the complex off-diagonal is turned real by a diagonal phase
//! similarity, and the real symmetric tridiagonal problem is solved with
//! implicitly shifted QL iterations. The procedure is fully deterministic.

use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::ComplexMatrix;
use crate::error::invalid;
use crate::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

/// Eigenvalues in ascending order and, optionally, the matching orthonormal
/// eigenvectors as the columns of `vectors`.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Option<ComplexMatrix>,
}

/// Eigenvalues of a Hermitian matrix, ascending.
///
/// Only the lower triangle is read; the caller is responsible for passing a
/// Hermitian matrix.
pub fn hermitian_eigenvalues(a: &ComplexMatrix) -> Result<Vec<f64>> {
    Ok(decompose(a, false)?.values)
}

/// Full eigen-decomposition `a = V diag(values) V*`.
pub fn hermitian_eigen(a: &ComplexMatrix) -> Result<HermitianEigen> {
    decompose(a, true)
}

fn decompose(a: &ComplexMatrix, want_vectors: bool) -> Result<HermitianEigen> {
    if !a.is_finite() {
        return Err(invalid!("matrix has non-finite entries"));
    }
    let n = a.dim();
    let zero = Complex64::new(0.0, 0.0);
    let mut m: Vec<Complex64> = a.as_slice().to_vec();
    // Mirror the lower triangle so that the reduction sees an exactly Hermitian input.
    for i in 0..n {
        m[i * n + i] = Complex64::new(m[i * n + i].re, 0.0);
        for j in 0..i {
            m[j * n + i] = m[i * n + j].conj();
        }
    }

    let mut q = if want_vectors { Some(ComplexMatrix::identity(n)) } else { None };
    let mut off = vec![zero; n.saturating_sub(1)];

    for k in 0..n.saturating_sub(1) {
        let len = n - k - 1;
        let x0 = m[(k + 1) * n + k];
        let tail: f64 = (1..len).map(|i| m[(k + 1 + i) * n + k].norm_sqr()).sum();
        if tail == 0.0 {
            off[k] = x0;
            continue;
        }
        let alpha = libm::sqrt(tail + x0.norm_sqr());
        let x0_abs = x0.norm();
        let phase = if x0_abs > 0.0 { x0 / x0_abs } else { Complex64::new(1.0, 0.0) };

        let mut v: Vec<Complex64> = (0..len).map(|i| m[(k + 1 + i) * n + k]).collect();
        v[0] = x0 + phase * alpha;
        let tau = 1.0 / (alpha * (alpha + x0_abs));

        // w = tau * B v on the trailing block B.
        let mut w = vec![zero; len];
        for (i, wi) in w.iter_mut().enumerate() {
            let row = &m[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            *wi = row.iter().zip(&v).map(|(b, vj)| b * vj).sum::<Complex64>() * tau;
        }
        let vw: Complex64 = v.iter().zip(&w).map(|(vi, wi)| vi.conj() * wi).sum();
        let kappa = 0.5 * tau * vw.re;
        let qv: Vec<Complex64> = w.iter().zip(&v).map(|(wi, vi)| wi - vi * kappa).collect();
        for i in 0..len {
            let row = &mut m[(k + 1 + i) * n + k + 1..(k + 1 + i) * n + n];
            for (j, b) in row.iter_mut().enumerate() {
                *b -= v[i] * qv[j].conj() + qv[i] * v[j].conj();
            }
        }
        off[k] = -phase * alpha;
        for i in 0..len {
            m[(k + 1 + i) * n + k] = zero;
            m[k * n + k + 1 + i] = zero;
        }

        if let Some(q) = q.as_mut() {
            // Q <- Q (I - tau v v*) on columns k+1..n.
            let data = q.data_mut();
            for r in 0..n {
                let row = &mut data[r * n + k + 1..r * n + n];
                let s: Complex64 = row.iter().zip(&v).map(|(a, vi)| a * vi).sum::<Complex64>() * tau;
                for (a, vi) in row.iter_mut().zip(&v) {
                    *a -= s * vi.conj();
                }
            }
        }
    }

    let mut diag: Vec<f64> = (0..n).map(|i| m[i * n + i].re).collect();
    let mut sub: Vec<f64> = off.iter().map(|z| z.norm()).collect();
    sub.push(0.0);

    let mut z = if want_vectors {
        let mut z = vec![0.0; n * n];
        for i in 0..n {
            z[i * n + i] = 1.0;
        }
        Some(z)
    } else {
        None
    };
    tridiagonal_ql(&mut diag, &mut sub, z.as_deref_mut())?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| diag[i].total_cmp(&diag[j]));
    let values: Vec<f64> = order.iter().map(|&i| diag[i]).collect();

    let vectors = match (q, z) {
        (Some(q), Some(z)) => {
            // Phases that make the tridiagonal off-diagonal real.
            let mut delta = vec![Complex64::new(1.0, 0.0); n];
            for k in 0..n.saturating_sub(1) {
                let e = off[k];
                let r = e.norm();
                delta[k + 1] = if r > 0.0 { delta[k] * (e / r) } else { delta[k] };
            }
            let qd = q.as_slice();
            let mut out = vec![zero; n * n];
            for r in 0..n {
                for (col, &src) in order.iter().enumerate() {
                    let mut acc = zero;
                    for k in 0..n {
                        let zk = z[k * n + src];
                        if zk != 0.0 {
                            acc += qd[r * n + k] * delta[k] * zk;
                        }
                    }
                    out[r * n + col] = acc;
                }
            }
            Some(ComplexMatrix::from_vec(n, out)?)
        }
        _ => None,
    };

    Ok(HermitianEigen { values, vectors })
}

/// Implicit QL on a real symmetric tridiagonal matrix with diagonal `d` and
/// sub-diagonal `e` (`e[i]` couples `i` and `i + 1`; `e[n-1]` is scratch).
/// Eigenvalues overwrite `d`; rotations accumulate into the row-major `z`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>) -> Result<()> {
    let n = d.len();
    // Absolute splitting floor: dropping an off-diagonal of size eps·‖T‖ is a
    // backward-stable perturbation, and without it clusters of near-zero
    // diagonal entries never pass the relative test.
    let tnorm = (0..n).map(|i| d[i].abs() + e[i].abs()).fold(0.0, f64::max);
    let floor = f64::EPSILON * tnorm;
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = libm::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + if g >= 0.0 { r.abs() } else { -r.abs() });
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = libm::hypot(f, g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * z[k * n + i] + c * f;
                        z[k * n + i] = c * z[k * n + i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// `exp(iH)` for Hermitian `h`.
pub fn exp_i_hermitian(h: &ComplexMatrix) -> Result<ComplexMatrix> {
    let eig = hermitian_eigen(h)?;
    let v = eig.vectors.expect("vectors requested");
    let phases: Vec<Complex64> = eig.values.iter().map(|&l| Complex64::new(0.0, l).exp()).collect();
    let n = h.dim();
    ComplexMatrix::from_fn(n, |i, j| (0..n).map(|k| v[(i, k)] * phases[k] * v[(j, k)].conj()).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn reconstruct(e: &HermitianEigen) -> ComplexMatrix {
        let v = e.vectors.as_ref().unwrap();
        let d: Vec<Complex64> = e.values.iter().map(|&x| c(x, 0.0)).collect();
        &(v * &ComplexMatrix::diagonal(&d).unwrap()) * &v.adjoint()
    }

    #[test]
    fn diagonal_input() {
        let a = ComplexMatrix::diagonal(&[c(3.0, 0.0), c(-1.0, 0.0), c(2.0, 0.0)]).unwrap();
        assert_eq!(hermitian_eigenvalues(&a).unwrap(), vec![-1.0, 2.0, 3.0]);
    }

    #[test]
    fn two_by_two_closed_form() {
        // [[1, i], [-i, 1]] has eigenvalues 0 and 2.
        let a = ComplexMatrix::from_vec(2, vec![c(1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(1.0, 0.0)]).unwrap();
        let e = hermitian_eigen(&a).unwrap();
        assert!((e.values[0]).abs() < 1e-15);
        assert!((e.values[1] - 2.0).abs() < 1e-15);
        assert!(reconstruct(&e).max_abs_diff(&a) < 1e-14);
    }

    #[test]
    fn dense_complex_reconstruction() {
        let n = 7;
        let b = ComplexMatrix::from_fn(n, |i, j| c(libm::sin((i * 3 + j) as f64), libm::cos((i + 5 * j) as f64)))
            .unwrap();
        let a = &b + &b.adjoint();
        let e = hermitian_eigen(&a).unwrap();
        assert!(reconstruct(&e).max_abs_diff(&a) < 1e-12);
        let v = e.vectors.as_ref().unwrap();
        assert!((&v.adjoint() * v).max_abs_diff(&ComplexMatrix::identity(n)) < 1e-13);
        let trace: f64 = e.values.iter().sum();
        assert!((trace - a.trace().re).abs() < 1e-12);
        assert!(e.values.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn degenerate_spectrum() {
        let n = 6;
        let mut a = ComplexMatrix::identity(n);
        a[(0, 5)] = c(0.0, 0.0);
        let e = hermitian_eigen(&a).unwrap();
        assert!(e.values.iter().all(|&x| (x - 1.0).abs() < 1e-15));
    }

    #[test]
    fn exponential_of_pauli_y() {
        // exp(i t σ_y) = [[cos t, sin t], [-sin t, cos t]].
        let t = 0.7;
        let h = ComplexMatrix::from_vec(2, vec![c(0.0, 0.0), c(0.0, -t), c(0.0, t), c(0.0, 0.0)]).unwrap();
        let u = exp_i_hermitian(&h).unwrap();
        let expected = ComplexMatrix::from_real(2, &[libm::cos(t), libm::sin(t), -libm::sin(t), libm::cos(t)]).unwrap();
        assert!(u.max_abs_diff(&expected) < 1e-14);
    }

    #[test]
    fn rejects_non_finite() {
        let a = ComplexMatrix::from_vec(1, vec![c(f64::NAN, 0.0)]).unwrap();
        assert!(hermitian_eigenvalues(&a).is_err());
    }
}
