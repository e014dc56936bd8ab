//! Dense complex state vectors and operators, integer-spectrum generators,
//! phase-shift unitaries and projective / rank-one measurements.

use std::ops::{Add, Index, Mul, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rng::RandomSource;
use crate::scalar::{cis, Real};

/// Pure state over a labeled orthonormal basis.
#[derive(Clone, Debug, PartialEq)]
pub struct Ket<T> {
    amps: Vec<Complex<T>>,
}

impl<T: Real> Ket<T> {
    pub fn new(amps: Vec<Complex<T>>) -> Self {
        Self { amps }
    }

    pub fn from_real(amps: &[T]) -> Self {
        Self::new(amps.iter().map(|&a| Complex::new(a, T::zero())).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        Self::new(vec![Complex::new(T::zero(), T::zero()); dim])
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut k = Self::zeros(dim);
        k.amps[index] = Complex::new(T::one(), T::zero());
        k
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex<T>> {
        self.amps
    }

    pub fn norm_sqr(&self) -> T {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self, tol: T) -> bool {
        (self.norm_sqr() - T::one()).abs() <= tol
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if n <= T::epsilon() {
            return Err(Error::InvalidState(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(self.scale(Complex::new(T::one() / n, T::zero())))
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        debug_assert_eq!(self.dim(), other.dim());
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self::new(self.amps.iter().map(|a| a * s).collect())
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                out.push(a * b);
            }
        }
        Self::new(out)
    }

    /// Euclidean distance after removing the optimal global phase.
    pub fn phase_aligned_distance(&self, other: &Self) -> T {
        let overlap = other.inner(self);
        let phase = if overlap.norm() > T::zero() {
            overlap.conj() / Complex::new(overlap.norm(), T::zero())
        } else {
            Complex::new(T::one(), T::zero())
        };
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a * phase - b).norm_sqr())
            .sum::<T>()
            .sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

impl<T> Index<usize> for Ket<T> {
    type Output = Complex<T>;

    fn index(&self, i: usize) -> &Complex<T> {
        &self.amps[i]
    }
}

impl<T: Real> Add for &Ket<T> {
    type Output = Ket<T>;

    fn add(self, rhs: &Ket<T>) -> Ket<T> {
        Ket::new(
            self.amps
                .iter()
                .zip(&rhs.amps)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl<T: Real> Sub for &Ket<T> {
    type Output = Ket<T>;

    fn sub(self, rhs: &Ket<T>) -> Ket<T> {
        Ket::new(
            self.amps
                .iter()
                .zip(&rhs.amps)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Dense square operator, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Operator<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::new(T::zero(), T::zero()); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_diagonal(&vec![Complex::new(T::one(), T::zero()); dim])
    }

    pub fn from_diagonal(diag: &[Complex<T>]) -> Self {
        let mut op = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            op.data[i * op.dim + i] = *d;
        }
        op
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            for c in 0..dim {
                data.push(f(r, c));
            }
        }
        Self { dim, data }
    }

    /// `|a⟩⟨b|`.
    pub fn outer(a: &Ket<T>, b: &Ket<T>) -> Self {
        assert_eq!(a.dim(), b.dim());
        Self::from_fn(a.dim(), |r, c| a[r] * b[c].conj())
    }

    pub fn projector(k: &Ket<T>) -> Self {
        Self::outer(k, k)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex<T>) {
        self.data[r * self.dim + c] = v;
    }

    pub fn diagonal(&self) -> Vec<Complex<T>> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn trace(&self) -> Complex<T> {
        self.diagonal().into_iter().sum()
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |r, c| self.get(c, r).conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    pub fn apply(&self, k: &Ket<T>) -> Ket<T> {
        assert_eq!(self.dim, k.dim(), "operator/ket dimension mismatch");
        let amps = (0..self.dim)
            .map(|r| {
                self.data[r * self.dim..(r + 1) * self.dim]
                    .iter()
                    .zip(k.amplitudes())
                    .map(|(a, b)| a * b)
                    .sum()
            })
            .collect();
        Ket::new(amps)
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "operator dimension mismatch");
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }

    /// `U A U†`.
    pub fn conjugate_by(&self, u: &Self) -> Self {
        u.matmul(self).matmul(&u.adjoint())
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &self.matmul(other) - &other.matmul(self)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let n = self.dim * other.dim;
        Self::from_fn(n, |r, c| {
            let (r1, r2) = (r / other.dim, r % other.dim);
            let (c1, c2) = (c / other.dim, c % other.dim);
            self.get(r1, c1) * other.get(r2, c2)
        })
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    pub fn is_hermitian(&self, tol: T) -> bool {
        self.max_abs_diff(&self.adjoint()) <= tol
    }

    pub fn is_unitary(&self, tol: T) -> bool {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
            <= tol
    }

    /// Spectral (largest singular value) norm.
    pub fn operator_norm(&self) -> T {
        let gram = self.adjoint().matmul(self);
        let top = linalg::hermitian_eigenvalues(&gram)
            .last()
            .copied()
            .unwrap_or_else(T::zero);
        top.max(T::zero()).sqrt()
    }

    /// `⟨k|A|k⟩`.
    pub fn expectation(&self, k: &Ket<T>) -> Complex<T> {
        k.inner(&self.apply(k))
    }
}

impl<T: Real> Add for &Operator<T> {
    type Output = Operator<T>;

    fn add(self, rhs: &Operator<T>) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim);
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<T: Real> Sub for &Operator<T> {
    type Output = Operator<T>;

    fn sub(self, rhs: &Operator<T>) -> Operator<T> {
        assert_eq!(self.dim, rhs.dim);
        Operator {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<T: Real> Mul for &Operator<T> {
    type Output = Operator<T>;

    fn mul(self, rhs: &Operator<T>) -> Operator<T> {
        self.matmul(rhs)
    }
}

/// Kronecker composition of kets or operators.
pub trait Tensor {
    fn tensor(&self, other: &Self) -> Self;
}

impl<T: Real> Tensor for Ket<T> {
    fn tensor(&self, other: &Self) -> Self {
        Ket::tensor(self, other)
    }
}

impl<T: Real> Tensor for Operator<T> {
    fn tensor(&self, other: &Self) -> Self {
        Operator::tensor(self, other)
    }
}

pub fn tensor<X: Tensor>(a: &X, b: &X) -> X {
    a.tensor(b)
}

/// Unit-trace positive semidefinite Hermitian operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    op: Operator<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates Hermiticity, unit trace and positivity at `T::TOL`.
    pub fn new(op: Operator<T>) -> Result<Self> {
        let tol = T::tol();
        if !op.is_hermitian(tol) {
            return Err(Error::InvalidState(
                "density matrix is not Hermitian".into(),
            ));
        }
        let tr = op.trace();
        if (tr.re - T::one()).abs() > tol || tr.im.abs() > tol {
            return Err(Error::InvalidState(format!(
                "density matrix trace {tr} != 1"
            )));
        }
        if let Some(&lowest) = linalg::hermitian_eigenvalues(&op).first() {
            if lowest < -tol {
                return Err(Error::InvalidState(format!(
                    "density matrix has negative eigenvalue {lowest}"
                )));
            }
        }
        Ok(Self { op })
    }

    pub fn from_pure(k: &Ket<T>) -> Self {
        Self {
            op: Operator::projector(k),
        }
    }

    /// `Σ_i p_i |k_i⟩⟨k_i|` for normalized kets and probabilities summing to one.
    pub fn mixture(branches: &[(T, Ket<T>)]) -> Self {
        let dim = branches.first().map_or(0, |b| b.1.dim());
        let mut acc = Operator::zeros(dim);
        for (p, k) in branches {
            acc = &acc + &Operator::projector(k).scale(Complex::new(*p, T::zero()));
        }
        Self { op: acc }
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        let w = T::one() / T::from_usize_lossy(dim);
        Self {
            op: Operator::identity(dim).scale(Complex::new(w, T::zero())),
        }
    }

    pub fn as_operator(&self) -> &Operator<T> {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.dim()
    }

    pub fn purity(&self) -> T {
        self.op.matmul(&self.op).trace().re
    }

    pub fn fidelity(&self, psi: &Ket<T>) -> T {
        fidelity(self, psi)
    }
}

/// `⟨ψ|ρ|ψ⟩`, clamped into `[0, 1]`.
pub fn fidelity<T: Real>(rho: &DensityMatrix<T>, psi: &Ket<T>) -> T {
    rho.op.expectation(psi).re.max(T::zero()).min(T::one())
}

/// Basis label `(level eigenvalue, degeneracy index)`; the index starts at 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BasisLabel {
    pub level: i64,
    pub index: usize,
}

/// Integer-spectrum observable with per-level degeneracies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    levels: Vec<(i64, usize)>,
    offsets: Vec<usize>,
}

impl Generator {
    /// `levels` are `(eigenvalue, degeneracy)` with strictly increasing eigenvalues.
    pub fn new(levels: Vec<(i64, usize)>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidGenerator("no levels".into()));
        }
        for w in levels.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidGenerator(format!(
                    "eigenvalues must be strictly increasing ({} then {})",
                    w[0].0, w[1].0
                )));
            }
        }
        if let Some(&(ev, _)) = levels.iter().find(|l| l.1 == 0) {
            return Err(Error::InvalidGenerator(format!(
                "level {ev} has zero degeneracy"
            )));
        }
        let mut offsets = Vec::with_capacity(levels.len());
        let mut acc = 0;
        for &(_, d) in &levels {
            offsets.push(acc);
            acc += d;
        }
        Ok(Self { levels, offsets })
    }

    /// Nondegenerate levels `0, 1, …, dim − 1`.
    pub fn uniform(dim: usize) -> Self {
        Self::new((0..dim as i64).map(|n| (n, 1)).collect()).expect("valid uniform generator")
    }

    pub fn qubit() -> Self {
        Self::uniform(2)
    }

    /// Single eigenvalue 0 with degeneracy `dim`: a phase-invariant system.
    pub fn invariant(dim: usize) -> Self {
        Self::new(vec![(0, dim)]).expect("valid invariant generator")
    }

    pub fn nondegenerate(eigenvalues: &[i64]) -> Result<Self> {
        Self::new(eigenvalues.iter().map(|&n| (n, 1)).collect())
    }

    pub fn levels(&self) -> &[(i64, usize)] {
        &self.levels
    }

    pub fn dim(&self) -> usize {
        self.levels.iter().map(|l| l.1).sum()
    }

    pub fn min_eigenvalue(&self) -> i64 {
        self.levels[0].0
    }

    pub fn max_eigenvalue(&self) -> i64 {
        self.levels[self.levels.len() - 1].0
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.levels.iter().all(|l| l.1 == 1)
    }

    /// `(first basis index, degeneracy)` of the block with this eigenvalue.
    pub fn block(&self, eigenvalue: i64) -> Option<(usize, usize)> {
        self.levels
            .binary_search_by_key(&eigenvalue, |l| l.0)
            .ok()
            .map(|i| (self.offsets[i], self.levels[i].1))
    }

    pub fn degeneracy(&self, eigenvalue: i64) -> usize {
        self.block(eigenvalue).map_or(0, |b| b.1)
    }

    pub fn labels(&self) -> Vec<BasisLabel> {
        self.levels
            .iter()
            .flat_map(|&(level, d)| (1..=d).map(move |index| BasisLabel { level, index }))
            .collect()
    }

    pub fn index_of(&self, label: BasisLabel) -> Option<usize> {
        let (start, d) = self.block(label.level)?;
        (label.index >= 1 && label.index <= d).then(|| start + label.index - 1)
    }

    /// Eigenvalue of every basis vector, in basis order.
    pub fn diagonal(&self) -> Vec<i64> {
        self.levels
            .iter()
            .flat_map(|&(n, d)| std::iter::repeat_n(n, d))
            .collect()
    }

    pub fn operator<T: Real>(&self) -> Operator<T> {
        let diag: Vec<_> = self
            .diagonal()
            .into_iter()
            .map(|n| Complex::new(T::from_i64_lossy(n), T::zero()))
            .collect();
        Operator::from_diagonal(&diag)
    }
}

/// `e^{−iφG}`.
pub fn phase_shift<T: Real>(g: &Generator, phi: T) -> Operator<T> {
    let diag: Vec<_> = phase_shift_diagonal(g, phi);
    Operator::from_diagonal(&diag)
}

/// Diagonal of `e^{−iφG}`.
pub fn phase_shift_diagonal<T: Real>(g: &Generator, phi: T) -> Vec<Complex<T>> {
    g.diagonal()
        .into_iter()
        .map(|n| cis(-phi * T::from_i64_lossy(n)))
        .collect()
}

/// Applies `e^{−iφG}` to a ket without forming the matrix.
pub fn shift_ket<T: Real>(g: &Generator, phi: T, k: &Ket<T>) -> Ket<T> {
    Ket::new(
        phase_shift_diagonal(g, phi)
            .into_iter()
            .zip(k.amplitudes())
            .map(|(u, a)| u * a)
            .collect(),
    )
}

/// Projector onto the eigenspace of `g` with the given eigenvalue (zero if absent).
pub fn spectral_projector<T: Real>(g: &Generator, eigenvalue: i64) -> Operator<T> {
    let one = Complex::new(T::one(), T::zero());
    let zero = Complex::new(T::zero(), T::zero());
    let diag: Vec<_> = g
        .diagonal()
        .into_iter()
        .map(|n| if n == eigenvalue { one } else { zero })
        .collect();
    Operator::from_diagonal(&diag)
}

/// One outcome of a measurement on the leading tensor factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Branch<T> {
    pub outcome: usize,
    pub probability: T,
    /// Normalized conditional state of the remaining factors; for a
    /// measurement of the whole space, the collapsed basis vector.
    pub posterior: Ket<T>,
}

fn check_orthonormal<T: Real>(basis: &[Ket<T>]) -> Result<()> {
    let tol = T::tol();
    let d = basis.first().map_or(0, Ket::dim);
    if basis.len() != d {
        return Err(Error::ContractViolation(format!(
            "basis has {} vectors for dimension {d}",
            basis.len()
        )));
    }
    for (i, a) in basis.iter().enumerate() {
        if a.dim() != d {
            return Err(Error::ContractViolation(
                "basis vectors differ in dimension".into(),
            ));
        }
        for (j, b) in basis.iter().enumerate().skip(i) {
            let g = a.inner(b);
            let target = if i == j { T::one() } else { T::zero() };
            if (g - Complex::new(target, T::zero())).norm() > tol {
                return Err(Error::ContractViolation(format!(
                    "⟨b{i}|b{j}⟩ = {g}, not orthonormal"
                )));
            }
        }
    }
    Ok(())
}

fn check_complete<T: Real>(elements: &[Ket<T>]) -> Result<()> {
    let d = elements.first().map_or(0, Ket::dim);
    let mut sum = Operator::zeros(d);
    for e in elements {
        if e.dim() != d {
            return Err(Error::ContractViolation(
                "POVM vectors differ in dimension".into(),
            ));
        }
        sum = &sum + &Operator::projector(e);
    }
    let err = sum.max_abs_diff(&Operator::identity(d));
    if err > T::tol() {
        return Err(Error::ContractViolation(format!(
            "POVM elements do not sum to identity (max deviation {err})"
        )));
    }
    Ok(())
}

fn branches_unchecked<T: Real>(state: &Ket<T>, vectors: &[Ket<T>]) -> Result<Vec<Branch<T>>> {
    let d = vectors.first().map_or(0, Ket::dim);
    if d == 0 || !state.dim().is_multiple_of(d) {
        return Err(Error::DimensionMismatch {
            expected: d,
            found: state.dim(),
        });
    }
    let rest = state.dim() / d;
    let amps = state.amplitudes();
    let mut out = Vec::with_capacity(vectors.len());
    for (k, b) in vectors.iter().enumerate() {
        let mut cond = vec![Complex::new(T::zero(), T::zero()); rest];
        for (i, bi) in b.amplitudes().iter().enumerate() {
            let w = bi.conj();
            if w.re == T::zero() && w.im == T::zero() {
                continue;
            }
            for (r, c) in cond.iter_mut().enumerate() {
                *c += w * amps[i * rest + r];
            }
        }
        let cond = Ket::new(cond);
        let probability = cond.norm_sqr();
        let posterior = if rest == 1 {
            b.normalized().unwrap_or_else(|_| b.clone())
        } else if probability > T::zero() {
            cond.scale(Complex::new(T::one() / probability.sqrt(), T::zero()))
        } else {
            cond
        };
        out.push(Branch {
            outcome: k,
            probability,
            posterior,
        });
    }
    Ok(out)
}

/// All outcomes of an orthonormal-basis measurement on the leading factor.
pub fn outcome_distribution<T: Real>(state: &Ket<T>, basis: &[Ket<T>]) -> Result<Vec<Branch<T>>> {
    check_orthonormal(basis)?;
    branches_unchecked(state, basis)
}

/// All outcomes of a rank-one POVM `{|v_k⟩⟨v_k|}` on the leading factor.
pub fn povm_distribution<T: Real>(state: &Ket<T>, elements: &[Ket<T>]) -> Result<Vec<Branch<T>>> {
    check_complete(elements)?;
    branches_unchecked(state, elements)
}

fn sample_branch<T: Real>(branches: Vec<Branch<T>>, rng: &mut RandomSource) -> Branch<T> {
    let weights: Vec<T> = branches.iter().map(|b| b.probability).collect();
    let k = rng.categorical(&weights);
    branches.into_iter().nth(k).expect("sampled index in range")
}

/// Samples a measurement of the leading factor in an orthonormal basis.
pub fn measure<T: Real>(
    state: &Ket<T>,
    basis: &[Ket<T>],
    rng: &mut RandomSource,
) -> Result<Branch<T>> {
    Ok(sample_branch(outcome_distribution(state, basis)?, rng))
}

/// Samples a rank-one POVM on the leading factor.
pub fn measure_povm<T: Real>(
    state: &Ket<T>,
    elements: &[Ket<T>],
    rng: &mut RandomSource,
) -> Result<Branch<T>> {
    Ok(sample_branch(povm_distribution(state, elements)?, rng))
}

/// Measurement on the leading factor whose vectors were validated once.
#[derive(Clone, Debug)]
pub struct Measurement<T> {
    vectors: Vec<Ket<T>>,
}

impl<T: Real> Measurement<T> {
    pub fn orthonormal(basis: Vec<Ket<T>>) -> Result<Self> {
        check_orthonormal(&basis)?;
        Ok(Self { vectors: basis })
    }

    pub fn povm(elements: Vec<Ket<T>>) -> Result<Self> {
        check_complete(&elements)?;
        Ok(Self { vectors: elements })
    }

    pub fn vectors(&self) -> &[Ket<T>] {
        &self.vectors
    }

    pub fn branches(&self, state: &Ket<T>) -> Result<Vec<Branch<T>>> {
        branches_unchecked(state, &self.vectors)
    }

    pub fn sample(&self, state: &Ket<T>, rng: &mut RandomSource) -> Result<Branch<T>> {
        Ok(sample_branch(self.branches(state)?, rng))
    }
}

pub fn random_ket<T: Real>(dim: usize, rng: &mut RandomSource) -> Ket<T> {
    let amps = (0..dim)
        .map(|_| Complex::new(T::lit(rng.normal()), T::lit(rng.normal())))
        .collect();
    Ket::new(amps)
        .normalized()
        .expect("gaussian vector is nonzero")
}

/// Haar-random unitary via Gram–Schmidt on Gaussian columns.
pub fn random_unitary<T: Real>(dim: usize, rng: &mut RandomSource) -> Operator<T> {
    let mut cols: Vec<Ket<T>> = Vec::with_capacity(dim);
    while cols.len() < dim {
        let mut v = random_ket::<T>(dim, rng);
        for _ in 0..2 {
            for c in &cols {
                let p = c.inner(&v);
                v = &v - &c.scale(p);
            }
        }
        if let Ok(v) = v.normalized() {
            cols.push(v);
        }
    }
    Operator::from_fn(dim, |r, c| cols[c][r])
}

/// Random unitary commuting with `g`: an independent Haar block per level.
pub fn random_block_unitary<T: Real>(g: &Generator, rng: &mut RandomSource) -> Operator<T> {
    let mut u = Operator::zeros(g.dim());
    for &(n, d) in g.levels() {
        let (start, _) = g.block(n).expect("level present");
        let block = random_unitary::<T>(d, rng);
        for r in 0..d {
            for c in 0..d {
                u.set(start + r, start + c, block.get(r, c));
            }
        }
    }
    u
}
