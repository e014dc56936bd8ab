//! Real symmetric eigen-solvers.
//!
//! Householder reduction to tridiagonal form followed by implicit QL with
//! Wilkinson-style shifts (the EISPACK `tred2`/`tql2` pair), and a shifted
//! inverse iteration on banded matrices for the leading eigenpair.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quantum::Operator;
use crate::scalar::Real;

const MAX_QL_ITERATIONS: usize = 64;

/// Dense symmetric matrix stored row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> SymmetricMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![T::zero(); n * n],
        }
    }

    /// Builds from a row-major buffer; the upper triangle is mirrored.
    pub fn from_row_major(n: usize, data: Vec<T>) -> Self {
        assert_eq!(data.len(), n * n);
        let mut m = Self { n, data };
        for r in 0..n {
            for c in 0..r {
                let v = m.get(c, r);
                m.data[r * n + c] = v;
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.data[r * self.n + c]
    }

    /// Sets both `(r, c)` and `(c, r)`.
    pub fn set(&mut self, r: usize, c: usize, v: T) {
        self.data[r * self.n + c] = v;
        self.data[c * self.n + r] = v;
    }

    /// Largest `|r − c|` with a nonzero entry.
    pub fn bandwidth(&self) -> usize {
        let mut b = 0;
        for r in 0..self.n {
            for c in (r + b + 1)..self.n {
                if self.get(r, c) != T::zero() {
                    b = c - r;
                }
            }
        }
        b
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        (0..self.n)
            .map(|r| {
                self.data[r * self.n..(r + 1) * self.n]
                    .iter()
                    .zip(x)
                    .map(|(a, b)| *a * *b)
                    .sum()
            })
            .collect()
    }

    /// Gershgorin bound on the spectral radius.
    pub fn gershgorin_radius(&self) -> T {
        (0..self.n)
            .map(|r| {
                self.data[r * self.n..(r + 1) * self.n]
                    .iter()
                    .map(|v| v.abs())
                    .sum::<T>()
            })
            .fold(T::zero(), T::max)
    }
}

/// Full eigen-decomposition; eigenvalues ascending, eigenvectors as columns.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    pub values: Vec<T>,
    /// Row-major `n × n`; column `j` is the eigenvector of `values[j]`.
    pub vectors: Vec<T>,
}

impl<T: Real> SymmetricEigen<T> {
    pub fn new(m: &SymmetricMatrix<T>) -> Result<Self> {
        let n = m.dim();
        let mut v = m.data.clone();
        let (mut d, mut e) = tridiagonalize(n, &mut v, true);
        ql_implicit(n, &mut d, &mut e, Some(&mut v))?;
        // selection sort keeps columns paired with values
        for i in 0..n.saturating_sub(1) {
            let mut k = i;
            for j in i + 1..n {
                if d[j] < d[k] {
                    k = j;
                }
            }
            if k != i {
                d.swap(i, k);
                for r in 0..n {
                    v.swap(r * n + i, r * n + k);
                }
            }
        }
        Ok(Self {
            values: d,
            vectors: v,
        })
    }

    pub fn vector(&self, j: usize) -> Vec<T> {
        let n = self.values.len();
        (0..n).map(|r| self.vectors[r * n + j]).collect()
    }
}

/// Eigenvalues only, ascending.
pub fn symmetric_eigenvalues<T: Real>(m: &SymmetricMatrix<T>) -> Result<Vec<T>> {
    let n = m.dim();
    if n == 0 {
        return Ok(Vec::new());
    }
    let (mut d, mut e) = if m.bandwidth() <= 1 {
        let d: Vec<T> = (0..n).map(|i| m.get(i, i)).collect();
        let e: Vec<T> = (0..n)
            .map(|i| if i == 0 { T::zero() } else { m.get(i, i - 1) })
            .collect();
        (d, e)
    } else {
        let mut v = m.data.clone();
        tridiagonalize(n, &mut v, false)
    };
    ql_implicit(n, &mut d, &mut e, None)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Eigenvalues of a symmetric tridiagonal matrix, ascending.
pub fn tridiagonal_eigenvalues<T: Real>(diag: &[T], off: &[T]) -> Result<Vec<T>> {
    let n = diag.len();
    assert_eq!(
        off.len() + 1,
        n.max(1),
        "off-diagonal must have n − 1 entries"
    );
    let mut d = diag.to_vec();
    let mut e = vec![T::zero(); n];
    e[1..n].copy_from_slice(off);
    ql_implicit(n, &mut d, &mut e, None)?;
    d.sort_by(|a, b| a.partial_cmp(b).expect("finite eigenvalues"));
    Ok(d)
}

/// Householder reduction. On return `(d, e)` hold the diagonal and the
/// subdiagonal (`e[i]` couples `i − 1` and `i`, `e[0] = 0`); with
/// `accumulate`, `v` holds the orthogonal transform.
fn tridiagonalize<T: Real>(n: usize, v: &mut [T], accumulate: bool) -> (Vec<T>, Vec<T>) {
    let at = |r: usize, c: usize| r * n + c;
    let mut d: Vec<T> = (0..n).map(|j| v[at(n - 1, j)]).collect();
    let mut e = vec![T::zero(); n];

    for i in (1..n).rev() {
        let mut scale = T::zero();
        let mut h = T::zero();
        for dk in d.iter().take(i) {
            scale += dk.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
                v[at(j, i)] = T::zero();
            }
        } else {
            for dk in d.iter_mut().take(i) {
                *dk /= scale;
                h += *dk * *dk;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for ej in e.iter_mut().take(i) {
                *ej = T::zero();
            }
            for j in 0..i {
                let f = d[j];
                v[at(j, i)] = f;
                let mut g = e[j] + v[at(j, j)] * f;
                for k in j + 1..i {
                    g += v[at(k, j)] * d[k];
                    e[k] += v[at(k, j)] * f;
                }
                e[j] = g;
            }
            let mut f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                for k in j..i {
                    v[at(k, j)] = v[at(k, j)] - (f * e[k] + g * d[k]);
                }
                d[j] = v[at(i - 1, j)];
                v[at(i, j)] = T::zero();
            }
        }
        d[i] = h;
    }

    if !accumulate {
        for (i, di) in d.iter_mut().enumerate() {
            *di = v[at(i, i)];
        }
        e[0] = T::zero();
        return (d, e);
    }

    for i in 0..n.saturating_sub(1) {
        v[at(n - 1, i)] = v[at(i, i)];
        v[at(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for k in 0..=i {
                d[k] = v[at(k, i + 1)] / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                for k in 0..=i {
                    g += v[at(k, i + 1)] * v[at(k, j)];
                }
                for k in 0..=i {
                    v[at(k, j)] = v[at(k, j)] - g * d[k];
                }
            }
        }
        for k in 0..=i {
            v[at(k, i + 1)] = T::zero();
        }
    }
    for j in 0..n {
        d[j] = v[at(n - 1, j)];
        v[at(n - 1, j)] = T::zero();
    }
    if n > 0 {
        v[at(n - 1, n - 1)] = T::one();
    }
    e[0] = T::zero();
    (d, e)
}

/// Implicit QL on a tridiagonal matrix (`e[i]` couples `i − 1`, `i`).
fn ql_implicit<T: Real>(n: usize, d: &mut [T], e: &mut [T], mut v: Option<&mut [T]>) -> Result<()> {
    if n == 0 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let two = T::lit(2.0);
    let mut f = T::zero();
    let mut tst1 = T::zero();
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
                if iter > MAX_QL_ITERATIONS {
                    return Err(Error::Numerical("QL iteration did not converge".into()));
                }
                let g = d[l];
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().take(n).skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);
                    if let Some(v) = v.as_deref_mut() {
                        for k in 0..n {
                            let h = v[k * n + i + 1];
                            v[k * n + i + 1] = s * v[k * n + i] + c * h;
                            v[k * n + i] = c * v[k * n + i] - s * h;
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
        e[l] = T::zero();
    }
    Ok(())
}

/// Leading (largest) eigenpair of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct LeadingEigen<T> {
    pub value: T,
    pub vector: Vec<T>,
    /// `‖Mv − λv‖₂`.
    pub residual: T,
}

/// Cholesky factor of a symmetric positive definite banded matrix.
struct BandCholesky<T> {
    n: usize,
    band: usize,
    l: Vec<T>,
}

impl<T: Real> BandCholesky<T> {
    /// Factors `shift·I − m`; `None` when it is not positive definite.
    fn shifted(m: &SymmetricMatrix<T>, band: usize, shift: T) -> Option<Self> {
        let n = m.dim();
        let mut l = vec![T::zero(); n * n];
        for i in 0..n {
            let lo = i.saturating_sub(band);
            for j in lo..=i {
                let mut s = -m.get(i, j);
                if i == j {
                    s += shift;
                }
                for k in lo.max(j.saturating_sub(band))..j {
                    s -= l[i * n + k] * l[j * n + k];
                }
                if i == j {
                    if s <= T::zero() || !s.is_finite() {
                        return None;
                    }
                    l[i * n + i] = s.sqrt();
                } else {
                    l[i * n + j] = s / l[j * n + j];
                }
            }
        }
        Some(Self { n, band, l })
    }

    fn solve(&self, b: &[T]) -> Vec<T> {
        let n = self.n;
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            let lo = i.saturating_sub(self.band);
            for (k, yk) in y.iter().enumerate().take(i).skip(lo) {
                s -= self.l[i * n + k] * *yk;
            }
            y[i] = s / self.l[i * n + i];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            let hi = (i + 1 + self.band).min(n);
            for (k, yk) in y.iter().enumerate().take(hi).skip(i + 1) {
                s -= self.l[k * n + i] * *yk;
            }
            y[i] = s / self.l[i * n + i];
        }
        y
    }
}

fn normalize<T: Real>(x: &mut [T]) {
    let norm = x.iter().map(|v| *v * *v).sum::<T>().sqrt();
    if norm > T::zero() {
        for v in x.iter_mut() {
            *v /= norm;
        }
    }
}

/// Leading eigenpair via the QL eigenvalue and shifted inverse iteration.
///
/// Fails when the residual does not reach `T::TOL`.
pub fn leading_eigenpair<T: Real>(m: &SymmetricMatrix<T>) -> Result<LeadingEigen<T>> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let band = m.bandwidth();
    let top = *symmetric_eigenvalues(m)?.last().expect("nonempty spectrum");
    let scale = m.gershgorin_radius().max(T::one());

    let mut delta = scale * T::lit(1e-9);
    let factor = loop {
        if let Some(f) = BandCholesky::shifted(m, band, top + delta) {
            break f;
        }
        delta *= T::lit(10.0);
        if delta > scale {
            return Err(Error::Numerical(
                "shifted matrix never became definite".into(),
            ));
        }
    };

    let mut x = vec![T::one(); n];
    normalize(&mut x);
    let mut best: Option<LeadingEigen<T>> = None;
    for _ in 0..40 {
        let mut y = factor.solve(&x);
        normalize(&mut y);
        let my = m.mul_vec(&y);
        let value: T = y.iter().zip(&my).map(|(a, b)| *a * *b).sum();
        let residual = my
            .iter()
            .zip(&y)
            .map(|(a, b)| (*a - value * *b).powi(2))
            .sum::<T>()
            .sqrt();
        x = y;
        let improved = best.as_ref().is_none_or(|b| residual < b.residual);
        if improved {
            best = Some(LeadingEigen {
                value,
                vector: x.clone(),
                residual,
            });
        }
        if residual <= T::epsilon() * scale * T::lit(64.0) || !improved {
            break;
        }
    }
    let best = best.expect("at least one iteration");
    if best.residual >= T::tol() {
        return Err(Error::Numerical(format!(
            "leading eigenvector residual {} above gate",
            best.residual
        )));
    }
    Ok(best)
}

/// Eigenvalues of a Hermitian operator, ascending, via the real embedding
/// `[[Re, −Im], [Im, Re]]` whose spectrum is the Hermitian one doubled.
pub fn hermitian_eigenvalues<T: Real>(op: &Operator<T>) -> Vec<T> {
    let n = op.dim();
    let mut m = SymmetricMatrix::zeros(2 * n);
    for r in 0..n {
        for c in 0..n {
            // symmetrize the numerical noise away
            let z: Complex<T> = (op.get(r, c) + op.get(c, r).conj()) / T::lit(2.0);
            m.data[r * 2 * n + c] = z.re;
            m.data[(r + n) * 2 * n + (c + n)] = z.re;
            m.data[r * 2 * n + (c + n)] = -z.im;
            m.data[(r + n) * 2 * n + c] = z.im;
        }
    }
    let all = symmetric_eigenvalues(&m).expect("Hermitian spectrum converges");
    all.into_iter().step_by(2).collect()
}

/// Singular values of a row-major complex `rows × cols` matrix, descending.
pub fn singular_values<T: Real>(rows: usize, cols: usize, a: &[Complex<T>]) -> Vec<T> {
    assert_eq!(a.len(), rows * cols);
    let k = rows.min(cols);
    if k == 0 {
        return Vec::new();
    }
    // Gram matrix on the smaller side
    let gram = if rows <= cols {
        Operator::from_fn(rows, |i, j| {
            (0..cols)
                .map(|c| a[i * cols + c] * a[j * cols + c].conj())
                .sum()
        })
    } else {
        Operator::from_fn(cols, |i, j| {
            (0..rows)
                .map(|r| a[r * cols + i].conj() * a[r * cols + j])
                .sum()
        })
    };
    let mut s: Vec<T> = hermitian_eigenvalues(&gram)
        .into_iter()
        .map(|x| x.max(T::zero()).sqrt())
        .collect();
    s.reverse();
    s
}
