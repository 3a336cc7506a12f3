//! Dense real matrices and the general (non-symmetric) eigenvalue problem.
//!
//! The eigensolver reduces the matrix to upper Hessenberg form with
//! Householder reflections, runs the Francis double-shift QR iteration down to
//! real Schur form and back-substitutes for the right eigenvectors. The
//! procedure follows the Algol `orthes`/`hqr2` routines of Martin and
//! Wilkinson as carried by EISPACK and JAMA.

use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::math;

/// Row-major dense matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    /// Builds a matrix from row slices. Panics on ragged input.
    pub fn from_rows(rows: &[&[f64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().copied()).collect(),
        }
    }

    /// Builds a matrix from column vectors. Panics on ragged input.
    pub fn from_columns(columns: &[Vec<f64>]) -> Self {
        let rows = columns.first().map_or(0, |c| c.len());
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Self::from_fn(rows, columns.len(), |i, j| columns[j][i])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = f64> + '_ {
        (0..self.rows).map(move |i| self.data[i * self.cols + j])
    }

    pub fn column_sum(&self, j: usize) -> f64 {
        self.column(j).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// `self · v`. Panics on a length mismatch.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_complex_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Complex64::new(0.0, 0.0), |acc, (a, b)| acc + b * *a)
            })
            .collect()
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Square matrix restricted to the given row/column indices.
    pub fn submatrix(&self, indices: &[usize]) -> Matrix {
        Matrix::from_fn(indices.len(), indices.len(), |i, j| {
            self[(indices[i], indices[j])]
        })
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

/// Eigenvalues and right eigenvectors of a real square matrix.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<Complex64>,
    /// `vectors[k]` is the right eigenvector for `values[k]`.
    pub vectors: Vec<Vec<Complex64>>,
}

/// Square scratch storage indexed with signed integers, which keeps the
/// descending loops of the QR sweep readable.
struct Work {
    n: usize,
    a: Vec<f64>,
}

impl Work {
    fn new(n: usize) -> Self {
        Self {
            n,
            a: vec![0.0; n * n],
        }
    }
}

impl Index<(isize, isize)> for Work {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (isize, isize)) -> &f64 {
        &self.a[i as usize * self.n + j as usize]
    }
}

impl IndexMut<(isize, isize)> for Work {
    #[inline]
    fn index_mut(&mut self, (i, j): (isize, isize)) -> &mut f64 {
        &mut self.a[i as usize * self.n + j as usize]
    }
}

/// Number of QR sweeps allowed per eigenvalue before giving up.
const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Full spectrum and right eigenvectors of a general real square matrix.
pub fn eigen(matrix: &Matrix) -> Result<Eigen> {
    if !matrix.is_square() {
        return Err(Error::DimensionMismatch {
            expected: matrix.rows(),
            found: matrix.cols(),
        });
    }
    let n = matrix.rows();
    if n == 0 {
        return Ok(Eigen {
            values: Vec::new(),
            vectors: Vec::new(),
        });
    }
    let mut h = Work::new(n);
    h.a.copy_from_slice(matrix.as_slice());
    let mut v = Work::new(n);
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    orthes(&mut h, &mut v);
    hqr2(&mut h, &mut v, &mut d, &mut e)?;

    let mut values = Vec::with_capacity(n);
    let mut vectors = Vec::with_capacity(n);
    let mut j = 0;
    while j < n {
        let ji = j as isize;
        if e[j] == 0.0 {
            values.push(Complex64::new(d[j], 0.0));
            vectors.push(
                (0..n as isize)
                    .map(|i| Complex64::new(v[(i, ji)], 0.0))
                    .collect(),
            );
            j += 1;
        } else {
            // columns j, j+1 hold the real and imaginary parts for e[j] > 0
            let (re, im) = (d[j], e[j].abs());
            let plus: Vec<Complex64> = (0..n as isize)
                .map(|i| Complex64::new(v[(i, ji)], v[(i, ji + 1)]))
                .collect();
            let minus = plus.iter().map(|z| z.conj()).collect();
            values.push(Complex64::new(re, im));
            vectors.push(plus);
            values.push(Complex64::new(re, -im));
            vectors.push(minus);
            j += 2;
        }
    }
    Ok(Eigen { values, vectors })
}

/// Householder reduction to upper Hessenberg form, accumulating the
/// orthogonal similarity in `v`.
fn orthes(h: &mut Work, v: &mut Work) {
    let n = h.n as isize;
    let low = 0isize;
    let high = n - 1;
    let mut ort = vec![0.0; h.n];

    let mut m = low + 1;
    while m < high {
        let mut scale = 0.0;
        for i in m..=high {
            scale += h[(i, m - 1)].abs();
        }
        if scale != 0.0 {
            let mut hh = 0.0;
            let mut i = high;
            while i >= m {
                ort[i as usize] = h[(i, m - 1)] / scale;
                hh += ort[i as usize] * ort[i as usize];
                i -= 1;
            }
            let mut g = math::sqrt(hh);
            if ort[m as usize] > 0.0 {
                g = -g;
            }
            hh -= ort[m as usize] * g;
            ort[m as usize] -= g;

            for j in m..n {
                let mut f = 0.0;
                let mut i = high;
                while i >= m {
                    f += ort[i as usize] * h[(i, j)];
                    i -= 1;
                }
                f /= hh;
                for i in m..=high {
                    h[(i, j)] -= f * ort[i as usize];
                }
            }
            for i in 0..=high {
                let mut f = 0.0;
                let mut j = high;
                while j >= m {
                    f += ort[j as usize] * h[(i, j)];
                    j -= 1;
                }
                f /= hh;
                for j in m..=high {
                    h[(i, j)] -= f * ort[j as usize];
                }
            }
            ort[m as usize] *= scale;
            h[(m, m - 1)] = scale * g;
        }
        m += 1;
    }

    for i in 0..n {
        for j in 0..n {
            v[(i, j)] = if i == j { 1.0 } else { 0.0 };
        }
    }

    let mut m = high - 1;
    while m > low {
        if h[(m, m - 1)] != 0.0 {
            for i in m + 1..=high {
                ort[i as usize] = h[(i, m - 1)];
            }
            for j in m..=high {
                let mut g = 0.0;
                for i in m..=high {
                    g += ort[i as usize] * v[(i, j)];
                }
                // double division avoids underflow
                g = (g / ort[m as usize]) / h[(m, m - 1)];
                for i in m..=high {
                    v[(i, j)] += g * ort[i as usize];
                }
            }
        }
        m -= 1;
    }
}

fn cdiv(xr: f64, xi: f64, yr: f64, yi: f64) -> (f64, f64) {
    if yr.abs() > yi.abs() {
        let r = yi / yr;
        let d = yr + r * yi;
        ((xr + r * xi) / d, (xi - r * xr) / d)
    } else {
        let r = yr / yi;
        let d = yi + r * yr;
        ((r * xr + xi) / d, (r * xi - xr) / d)
    }
}

/// Francis double-shift QR from Hessenberg to real Schur form, followed by
/// back-substitution for the eigenvectors.
#[allow(clippy::many_single_char_names)]
fn hqr2(h: &mut Work, v: &mut Work, d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let nn = h.n as isize;
    let mut n = nn - 1;
    let low = 0isize;
    let high = nn - 1;
    let eps = f64::EPSILON;
    let mut exshift = 0.0;
    let (mut p, mut q, mut r, mut s, mut z) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let (mut t, mut w, mut x, mut y);

    let mut norm = 0.0;
    for i in 0..nn {
        for j in (i - 1).max(0)..nn {
            norm += h[(i, j)].abs();
        }
    }

    if norm == 0.0 {
        // zero matrix: all eigenvalues vanish and v stays the identity
        return Ok(());
    }

    let max_sweeps = MAX_SWEEPS_PER_EIGENVALUE * h.n;
    let mut total_sweeps = 0usize;
    let mut iter = 0;
    while n >= low {
        // look for a single small sub-diagonal element
        let mut l = n;
        while l > low {
            s = h[(l - 1, l - 1)].abs() + h[(l, l)].abs();
            if s == 0.0 {
                s = norm;
            }
            if h[(l, l - 1)].abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            // one root
            h[(n, n)] += exshift;
            d[n as usize] = h[(n, n)];
            e[n as usize] = 0.0;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            // two roots
            w = h[(n, n - 1)] * h[(n - 1, n)];
            p = (h[(n - 1, n - 1)] - h[(n, n)]) / 2.0;
            q = p * p + w;
            z = math::sqrt(q.abs());
            h[(n, n)] += exshift;
            h[(n - 1, n - 1)] += exshift;
            x = h[(n, n)];

            if q >= 0.0 {
                // real pair
                z = if p >= 0.0 { p + z } else { p - z };
                d[(n - 1) as usize] = x + z;
                d[n as usize] = d[(n - 1) as usize];
                if z != 0.0 {
                    d[n as usize] = x - w / z;
                }
                e[(n - 1) as usize] = 0.0;
                e[n as usize] = 0.0;
                x = h[(n, n - 1)];
                s = x.abs() + z.abs();
                p = x / s;
                q = z / s;
                r = math::sqrt(p * p + q * q);
                p /= r;
                q /= r;

                for j in n - 1..nn {
                    z = h[(n - 1, j)];
                    h[(n - 1, j)] = q * z + p * h[(n, j)];
                    h[(n, j)] = q * h[(n, j)] - p * z;
                }
                for i in 0..=n {
                    z = h[(i, n - 1)];
                    h[(i, n - 1)] = q * z + p * h[(i, n)];
                    h[(i, n)] = q * h[(i, n)] - p * z;
                }
                for i in low..=high {
                    z = v[(i, n - 1)];
                    v[(i, n - 1)] = q * z + p * v[(i, n)];
                    v[(i, n)] = q * v[(i, n)] - p * z;
                }
            } else {
                // complex pair
                d[(n - 1) as usize] = x + p;
                d[n as usize] = x + p;
                e[(n - 1) as usize] = z;
                e[n as usize] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            total_sweeps += 1;
            if total_sweeps > max_sweeps {
                return Err(Error::NoConvergence(total_sweeps - 1));
            }

            // form shift
            x = h[(n, n)];
            y = 0.0;
            w = 0.0;
            if l < n {
                y = h[(n - 1, n - 1)];
                w = h[(n, n - 1)] * h[(n - 1, n)];
            }

            // Wilkinson's exceptional shift
            if iter == 10 {
                exshift += x;
                for i in low..=n {
                    h[(i, i)] -= x;
                }
                s = h[(n, n - 1)].abs() + h[(n - 1, n - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }

            // MATLAB's exceptional shift
            if iter == 30 {
                s = (y - x) / 2.0;
                s = s * s + w;
                if s > 0.0 {
                    s = math::sqrt(s);
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / 2.0 + s);
                    for i in low..=n {
                        h[(i, i)] -= s;
                    }
                    exshift += s;
                    x = 0.964;
                    y = x;
                    w = x;
                }
            }

            iter += 1;

            // look for two consecutive small sub-diagonal elements
            let mut m = n - 2;
            while m >= l {
                z = h[(m, m)];
                r = x - z;
                s = y - z;
                p = (r * s - w) / h[(m + 1, m)] + h[(m, m + 1)];
                q = h[(m + 1, m + 1)] - z - r - s;
                r = h[(m + 2, m + 1)];
                s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                if h[(m, m - 1)].abs() * (q.abs() + r.abs())
                    < eps
                        * (p.abs() * (h[(m - 1, m - 1)].abs() + z.abs() + h[(m + 1, m + 1)].abs()))
                {
                    break;
                }
                m -= 1;
            }

            for i in m + 2..=n {
                h[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    h[(i, i - 3)] = 0.0;
                }
            }

            // double QR step on rows l..=n and columns m..=n
            let mut k = m;
            while k < n {
                let notlast = k != n - 1;
                if k != m {
                    p = h[(k, k - 1)];
                    q = h[(k + 1, k - 1)];
                    r = if notlast { h[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x == 0.0 {
                        k += 1;
                        continue;
                    }
                    p /= x;
                    q /= x;
                    r /= x;
                }
                s = math::sqrt(p * p + q * q + r * r);
                if p < 0.0 {
                    s = -s;
                }
                if s != 0.0 {
                    if k != m {
                        h[(k, k - 1)] = -s * x;
                    } else if l != m {
                        h[(k, k - 1)] = -h[(k, k - 1)];
                    }
                    p += s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q /= p;
                    r /= p;

                    for j in k..nn {
                        p = h[(k, j)] + q * h[(k + 1, j)];
                        if notlast {
                            p += r * h[(k + 2, j)];
                            h[(k + 2, j)] -= p * z;
                        }
                        h[(k, j)] -= p * x;
                        h[(k + 1, j)] -= p * y;
                    }
                    for i in 0..=n.min(k + 3) {
                        p = x * h[(i, k)] + y * h[(i, k + 1)];
                        if notlast {
                            p += z * h[(i, k + 2)];
                            h[(i, k + 2)] -= p * r;
                        }
                        h[(i, k)] -= p;
                        h[(i, k + 1)] -= p * q;
                    }
                    for i in low..=high {
                        p = x * v[(i, k)] + y * v[(i, k + 1)];
                        if notlast {
                            p += z * v[(i, k + 2)];
                            v[(i, k + 2)] -= p * r;
                        }
                        v[(i, k)] -= p;
                        v[(i, k + 1)] -= p * q;
                    }
                }
                k += 1;
            }
        }
    }

    // back-substitute to find vectors of the upper triangular form
    let mut n = nn - 1;
    while n >= 0 {
        p = d[n as usize];
        q = e[n as usize];

        if q == 0.0 {
            // real vector
            let mut l = n;
            h[(n, n)] = 1.0;
            let mut i = n - 1;
            while i >= 0 {
                w = h[(i, i)] - p;
                r = 0.0;
                for j in l..=n {
                    r += h[(i, j)] * h[(j, n)];
                }
                if e[i as usize] < 0.0 {
                    z = w;
                    s = r;
                } else {
                    l = i;
                    if e[i as usize] == 0.0 {
                        h[(i, n)] = if w != 0.0 { -r / w } else { -r / (eps * norm) };
                    } else {
                        x = h[(i, i + 1)];
                        y = h[(i + 1, i)];
                        let di = d[i as usize] - p;
                        q = di * di + e[i as usize] * e[i as usize];
                        t = (x * s - z * r) / q;
                        h[(i, n)] = t;
                        h[(i + 1, n)] = if x.abs() > z.abs() {
                            (-r - w * t) / x
                        } else {
                            (-s - y * t) / z
                        };
                    }
                    // overflow control
                    t = h[(i, n)].abs();
                    if (eps * t) * t > 1.0 {
                        for j in i..=n {
                            h[(j, n)] /= t;
                        }
                    }
                }
                i -= 1;
            }
        } else if q < 0.0 {
            // complex vector, stored in columns n-1 and n
            let mut l = n - 1;
            if h[(n, n - 1)].abs() > h[(n - 1, n)].abs() {
                h[(n - 1, n - 1)] = q / h[(n, n - 1)];
                h[(n - 1, n)] = -(h[(n, n)] - p) / h[(n, n - 1)];
            } else {
                let (cr, ci) = cdiv(0.0, -h[(n - 1, n)], h[(n - 1, n - 1)] - p, q);
                h[(n - 1, n - 1)] = cr;
                h[(n - 1, n)] = ci;
            }
            h[(n, n - 1)] = 0.0;
            h[(n, n)] = 1.0;
            let mut i = n - 2;
            while i >= 0 {
                let mut ra = 0.0;
                let mut sa = 0.0;
                for j in l..=n {
                    ra += h[(i, j)] * h[(j, n - 1)];
                    sa += h[(i, j)] * h[(j, n)];
                }
                w = h[(i, i)] - p;

                if e[i as usize] < 0.0 {
                    z = w;
                    r = ra;
                    s = sa;
                } else {
                    l = i;
                    if e[i as usize] == 0.0 {
                        let (cr, ci) = cdiv(-ra, -sa, w, q);
                        h[(i, n - 1)] = cr;
                        h[(i, n)] = ci;
                    } else {
                        x = h[(i, i + 1)];
                        y = h[(i + 1, i)];
                        let di = d[i as usize] - p;
                        let mut vr = di * di + e[i as usize] * e[i as usize] - q * q;
                        let vi = di * 2.0 * q;
                        if vr == 0.0 && vi == 0.0 {
                            vr = eps * norm * (w.abs() + q.abs() + x.abs() + y.abs() + z.abs());
                        }
                        let (cr, ci) =
                            cdiv(x * r - z * ra + q * sa, x * s - z * sa - q * ra, vr, vi);
                        h[(i, n - 1)] = cr;
                        h[(i, n)] = ci;
                        if x.abs() > z.abs() + q.abs() {
                            h[(i + 1, n - 1)] = (-ra - w * h[(i, n - 1)] + q * h[(i, n)]) / x;
                            h[(i + 1, n)] = (-sa - w * h[(i, n)] - q * h[(i, n - 1)]) / x;
                        } else {
                            let (cr, ci) = cdiv(-r - y * h[(i, n - 1)], -s - y * h[(i, n)], z, q);
                            h[(i + 1, n - 1)] = cr;
                            h[(i + 1, n)] = ci;
                        }
                    }
                    // overflow control
                    t = h[(i, n - 1)].abs().max(h[(i, n)].abs());
                    if (eps * t) * t > 1.0 {
                        for j in i..=n {
                            h[(j, n - 1)] /= t;
                            h[(j, n)] /= t;
                        }
                    }
                }
                i -= 1;
            }
        }
        n -= 1;
    }

    // back transformation to eigenvectors of the original matrix
    let mut j = nn - 1;
    while j >= low {
        for i in low..=high {
            z = 0.0;
            for k in low..=j.min(high) {
                z += v[(i, k)] * h[(k, j)];
            }
            v[(i, j)] = z;
        }
        j -= 1;
    }
    Ok(())
}

/// LU factorization of a complex square matrix with partial pivoting.
#[derive(Debug, Clone)]
pub struct ComplexLu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
}

impl ComplexLu {
    /// Factorizes the matrix whose columns are `columns`.
    pub fn from_columns(columns: &[Vec<Complex64>]) -> Result<Self> {
        let n = columns.len();
        let mut lu = vec![Complex64::new(0.0, 0.0); n * n];
        for (j, col) in columns.iter().enumerate() {
            if col.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: col.len(),
                });
            }
            for (i, z) in col.iter().enumerate() {
                lu[i * n + j] = *z;
            }
        }
        let mut perm: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let (pivot, magnitude) =
                (k..n)
                    .map(|i| (i, lu[i * n + k].norm()))
                    .fold(
                        (k, -1.0),
                        |best, cur| if cur.1 > best.1 { cur } else { best },
                    );
            if magnitude == 0.0 || !magnitude.is_finite() {
                return Err(Error::Singular);
            }
            if pivot != k {
                for j in 0..n {
                    lu.swap(k * n + j, pivot * n + j);
                }
                perm.swap(k, pivot);
            }
            let diag = lu[k * n + k];
            for i in k + 1..n {
                let factor = lu[i * n + k] / diag;
                lu[i * n + k] = factor;
                for j in k + 1..n {
                    let sub = factor * lu[k * n + j];
                    lu[i * n + j] -= sub;
                }
            }
        }
        Ok(Self { n, lu, perm })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            for k in 0..i {
                let sub = self.lu[i * n + k] * x[k];
                x[i] -= sub;
            }
        }
        for i in (0..n).rev() {
            for k in i + 1..n {
                let sub = self.lu[i * n + k] * x[k];
                x[i] -= sub;
            }
            x[i] /= self.lu[i * n + i];
        }
        x
    }

    /// Columns of the inverse matrix.
    pub fn inverse_columns(&self) -> Vec<Vec<Complex64>> {
        (0..self.n)
            .map(|j| {
                let mut e = vec![Complex64::new(0.0, 0.0); self.n];
                e[j] = Complex64::new(1.0, 0.0);
                self.solve(&e)
            })
            .collect()
    }
}

/// Maximum absolute row sum of a complex matrix given by columns.
pub fn complex_norm_inf(columns: &[Vec<Complex64>]) -> f64 {
    let n = columns.first().map_or(0, |c| c.len());
    (0..n)
        .map(|i| columns.iter().map(|c| c[i].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}
