//! Symmetric eigensolver: Householder reduction to tridiagonal form
//! followed by the implicit-shift QL iteration (EISPACK tred/tql
//! lineage), self-contained and single-threaded.
//!
//! Only the lower triangle of the input is read. Transform accumulation
//! and the QL rotations act on eigenvectors stored as matrix *rows*, so
//! every inner loop runs over contiguous memory.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::fmath;
use crate::matrix::Mat;

#[derive(Debug, Clone, PartialEq)]
pub enum EigenError {
    /// Input asymmetry `max|a_ij − a_ji|` exceeded the tolerance.
    NotSymmetric { asymmetry: f64 },
    /// QL iteration failed to converge for one eigenvalue.
    NoConvergence { index: usize },
}

impl fmt::Display for EigenError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EigenError::NotSymmetric { asymmetry } => {
                write!(f, "input matrix asymmetry {asymmetry:e} exceeds tolerance")
            }
            EigenError::NoConvergence { index } => {
                write!(f, "QL iteration did not converge at eigenvalue {index}")
            }
        }
    }
}

impl core::error::Error for EigenError {}

/// Householder reduction of the symmetric matrix in `data` (row-major,
/// lower triangle read) to tridiagonal form.
///
/// On return `d` holds the diagonal and `e[1..]` the subdiagonal of `T`.
/// Row `k` of `data` (entries `0..k`) holds the scaled Householder vector
/// of step `k` and `hs[k]` the corresponding `h = |u|²/2` (zero when the
/// step was skipped); both feed the transform accumulation.
fn tridiagonalize(data: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], hs: &mut [f64]) {
    let mut p = vec![0.0f64; n];
    let mut q = vec![0.0f64; n];
    for k in (1..n).rev() {
        let l = k - 1;
        let (head, tail) = data.split_at_mut(k * n);
        let urow = &mut tail[..k]; // row k, entries 0..=l
        hs[k] = 0.0;
        if l == 0 {
            e[k] = urow[0];
            continue;
        }
        let scale: f64 = urow.iter().map(|v| v.abs()).sum();
        if scale == 0.0 {
            e[k] = 0.0;
            continue;
        }
        let mut h = 0.0;
        for v in urow.iter_mut() {
            *v /= scale;
            h += *v * *v;
        }
        let f = urow[l];
        let g = if f >= 0.0 { -fmath::sqrt(h) } else { fmath::sqrt(h) };
        e[k] = scale * g;
        h -= f * g;
        urow[l] = f - g;

        // p = A·u (leading k×k block, lower triangle), then p /= h
        for v in p[..k].iter_mut() {
            *v = 0.0;
        }
        for j in 0..k {
            let row_j = &head[j * n..j * n + j + 1];
            let uj = urow[j];
            let mut s = 0.0;
            for (a, b) in row_j.iter().zip(urow.iter()) {
                s += a * b;
            }
            p[j] += s;
            for (pm, rm) in p[..j].iter_mut().zip(row_j[..j].iter()) {
                *pm += uj * rm;
            }
        }
        let mut upk = 0.0;
        for (pv, uv) in p[..k].iter_mut().zip(urow.iter()) {
            *pv /= h;
            upk += *pv * uv;
        }
        let kappa = upk / (2.0 * h);
        for ((qv, pv), uv) in q[..k].iter_mut().zip(p[..k].iter()).zip(urow.iter()) {
            *qv = pv - kappa * uv;
        }
        // A ← A − q uᵀ − u qᵀ on the lower triangle of the leading block
        for j in 0..k {
            let row_j = &mut head[j * n..j * n + j + 1];
            let uj = urow[j];
            let qj = q[j];
            for ((rm, um), qm) in row_j.iter_mut().zip(urow.iter()).zip(q[..=j].iter()) {
                *rm -= qj * um + uj * qm;
            }
        }
        hs[k] = h;
    }
    e[0] = 0.0;
    for i in 0..n {
        d[i] = data[i * n + i];
    }
}

/// Accumulate `W = Qᵀ` (row `j` of `W` is column `j` of `Q`, where
/// `T = Qᵀ A Q`) from the stored Householder vectors, ascending so the
/// active block stays small.
fn accumulate_transposed(data: &[f64], n: usize, hs: &[f64], w: &mut Mat) {
    for k in 1..n {
        let h = hs[k];
        if h == 0.0 {
            continue;
        }
        let u = &data[k * n..k * n + k];
        for j in 0..k {
            let wrow = &mut w.row_mut(j)[..k];
            let mut g = 0.0;
            for (wv, uv) in wrow.iter().zip(u.iter()) {
                g += wv * uv;
            }
            g /= h;
            for (wv, uv) in wrow.iter_mut().zip(u.iter()) {
                *wv -= g * uv;
            }
        }
    }
}

/// Implicit-shift QL on the tridiagonal `(d, e)`; `e[i]` couples `(i−1, i)`
/// on input. Optional `w` receives the accumulated rotations applied to
/// its row pairs (rows = eigenvectors).
fn tql(d: &mut [f64], e: &mut [f64], mut w: Option<&mut Mat>) -> Result<(), EigenError> {
    let n = d.len();
    if n <= 1 {
        return Ok(());
    }
    // renumber so e[i] couples (i, i+1)
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
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
            if iter > 50 {
                return Err(EigenError::NoConvergence { index: l });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = fmath::hypot(g, 1.0);
            g = d[m] - d[l] + e[l] / (g + fmath::copysign(r, g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = fmath::hypot(f, g);
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
                if let Some(mat) = w.as_deref_mut() {
                    rotate_row_pair(mat, i, c, s);
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
    Ok(())
}

/// Apply the Givens rotation to rows `i` and `i+1` of `w`.
#[inline]
fn rotate_row_pair(w: &mut Mat, i: usize, c: f64, s: f64) {
    let n = w.n();
    let data = w.data_mut();
    let (a, b) = data.split_at_mut((i + 1) * n);
    let row_i = &mut a[i * n..];
    let row_j = &mut b[..n];
    for (x, y) in row_i.iter_mut().zip(row_j.iter_mut()) {
        let f = *y;
        *y = s * *x + c * f;
        *x = c * *x - s * f;
    }
}

/// Eigendecomposition result; `vectors` rows are the eigenvectors in the
/// same (ascending) order as `values`.
pub struct EighResult {
    pub values: Vec<f64>,
    pub vectors: Option<Mat>,
}

/// Asymmetry gate used by [`eigh`]: `1e−12 · max(1, max|a_ij|)`.
pub fn symmetry_tolerance(max_abs: f64) -> f64 {
    1e-12 * max_abs.max(1.0)
}

/// Full symmetric eigendecomposition, eigenvalues ascending.
pub fn eigh(a: &Mat, want_vectors: bool) -> Result<EighResult, EigenError> {
    let asym = a.max_asymmetry();
    if asym > symmetry_tolerance(a.max_abs()) {
        return Err(EigenError::NotSymmetric { asymmetry: asym });
    }
    let n = a.n();
    if n == 0 {
        return Ok(EighResult { values: Vec::new(), vectors: want_vectors.then(|| Mat::zeros(0)) });
    }
    let mut work = a.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let mut hs = vec![0.0; n];
    tridiagonalize(work.data_mut(), n, &mut d, &mut e, &mut hs);

    let mut w = if want_vectors {
        let mut w = Mat::identity(n);
        accumulate_transposed(work.data(), n, &hs, &mut w);
        Some(w)
    } else {
        None
    };
    tql(&mut d, &mut e, w.as_mut())?;

    // sort ascending, carrying eigenvector rows along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = w.map(|src| {
        let mut dst = Mat::zeros(n);
        for (row, &from) in order.iter().enumerate() {
            dst.row_mut(row).copy_from_slice(src.row(from));
        }
        dst
    });
    Ok(EighResult { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::KeyedStream;

    fn random_symmetric(n: usize, seed: u64) -> Mat {
        let mut s = KeyedStream::new(seed);
        let mut m = Mat::zeros(n);
        for i in 0..n {
            for j in i..n {
                m.set_sym(i, j, s.next_normal());
            }
        }
        m
    }

    #[test]
    fn diagonal_matrix() {
        let mut a = Mat::zeros(2);
        a.set(0, 0, 1.0);
        a.set(1, 1, 2.0);
        let r = eigh(&a, false).unwrap();
        assert_eq!(r.values, vec![1.0, 2.0]);
    }

    #[test]
    fn two_by_two_exchange() {
        let mut a = Mat::zeros(2);
        a.set_sym(0, 1, 1.0);
        let r = eigh(&a, true).unwrap();
        assert!((r.values[0] + 1.0).abs() < 1e-14);
        assert!((r.values[1] - 1.0).abs() < 1e-14);
        let v = r.vectors.unwrap();
        // rows orthonormal
        let d00: f64 = v.row(0).iter().map(|x| x * x).sum();
        let d01: f64 = v.row(0).iter().zip(v.row(1)).map(|(a, b)| a * b).sum();
        assert!((d00 - 1.0).abs() < 1e-14 && d01.abs() < 1e-14);
    }

    #[test]
    fn reconstruction_50x50() {
        let n = 50;
        let a = random_symmetric(n, 42);
        let r = eigh(&a, true).unwrap();
        let v = r.vectors.as_ref().unwrap();
        let scale = a.max_abs();
        // H = Σ_k λ_k v_k v_kᵀ
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let mut s = 0.0;
                for k in 0..n {
                    s += r.values[k] * v.get(k, i) * v.get(k, j);
                }
                worst = worst.max((s - a.get(i, j)).abs());
            }
        }
        assert!(worst <= 1e-10 * scale, "reconstruction error {worst:e}");

        // orthonormal rows
        let mut worst_orth = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let dot: f64 = v.row(i).iter().zip(v.row(j)).map(|(a, b)| a * b).sum();
                let target = if i == j { 1.0 } else { 0.0 };
                worst_orth = worst_orth.max((dot - target).abs());
            }
        }
        assert!(worst_orth <= 1e-9, "orthonormality error {worst_orth:e}");

        // H v = λ v residual
        let mut hv = vec![0.0; n];
        let mut worst_res = 0.0f64;
        for k in 0..n {
            a.matvec(v.row(k), &mut hv);
            for i in 0..n {
                worst_res = worst_res.max((hv[i] - r.values[k] * v.get(k, i)).abs());
            }
        }
        assert!(worst_res <= 1e-8 * scale, "eigenpair residual {worst_res:e}");
    }

    #[test]
    fn trace_identities() {
        let n = 40;
        let a = random_symmetric(n, 7);
        let r = eigh(&a, false).unwrap();
        let sum: f64 = r.values.iter().sum();
        assert!((sum - a.trace()).abs() <= 1e-8 * n as f64 * a.max_abs());
        let sum_sq: f64 = r.values.iter().map(|v| v * v).sum();
        assert!((sum_sq - a.frobenius_sq()).abs() <= 1e-8 * n as f64 * a.max_abs().powi(2));
        // ascending
        for w in r.values.windows(2) {
            assert!(w[0] <= w[1]);
        }
    }

    #[test]
    fn rejects_asymmetric_input() {
        let mut a = Mat::zeros(3);
        a.set(0, 1, 1.0);
        a.set(1, 0, 1.0 + 1e-6);
        assert!(matches!(eigh(&a, false), Err(EigenError::NotSymmetric { .. })));
    }

    #[test]
    fn repeated_eigenvalues() {
        let a = Mat::identity(5);
        let r = eigh(&a, true).unwrap();
        for v in &r.values {
            assert!((v - 1.0).abs() < 1e-14);
        }
    }
}
