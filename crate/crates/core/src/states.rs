//! Bipartite frame-resource states in sector form.
//!
//! A resource `|E⟩ ∈ H_A ⊗ H_B` that is an eigenstate of `G_A ⊗ 1 + 1 ⊗ G_B`
//! with eigenvalue `N` splits into sectors `e_n |E_n⟩`, where `|E_n⟩` lives on
//! Alice's level `N − n` and Bob's level `n`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::estimation::CostFunction;
use crate::linalg::{self, SymmetricMatrix};
use crate::quantum::{Generator, Ket};
use crate::scalar::Real;

/// Schmidt data of one sector: `|E_n⟩ = Σ_l λ_{n,l} |N−n, l⟩_A |n, l⟩_B`.
#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtSector<T> {
    pub level: i64,
    pub lambdas: Vec<T>,
}

impl<T: Real> SchmidtSector<T> {
    pub fn new(level: i64, lambdas: Vec<T>) -> Self {
        Self { level, lambdas }
    }

    /// Rank-one sector `|N−n, 1⟩|n, 1⟩`.
    pub fn product(level: i64) -> Self {
        Self::new(level, vec![T::one()])
    }
}

/// Normalized sector block: rows index Alice's degeneracy within level
/// `N − n`, columns Bob's within level `n`.
#[derive(Clone, Debug, PartialEq)]
struct Block<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> Block<T> {
    fn get(&self, r: usize, c: usize) -> Complex<T> {
        self.data[r * self.cols + c]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BipartiteFrameState<T> {
    total: i64,
    g_a: Generator,
    g_b: Generator,
    amplitudes: Vec<Complex<T>>,
    blocks: Vec<Option<Block<T>>>,
}

fn sector_dims(g_a: &Generator, g_b: &Generator, total: i64, n: i64) -> Option<(usize, usize)> {
    let da = g_a.degeneracy(total - n);
    let db = g_b.degeneracy(n);
    (da > 0 && db > 0).then_some((da, db))
}

impl<T: Real> BipartiteFrameState<T> {
    /// Builds a state from sector amplitudes `e_0..e_N` and explicit Schmidt
    /// sectors. Sectors with `e_n = 0` may be omitted; every other sector
    /// must be given and fit inside both generator blocks.
    pub fn new(
        total: i64,
        g_a: Generator,
        g_b: Generator,
        amplitudes: Vec<Complex<T>>,
        sectors: Vec<SchmidtSector<T>>,
    ) -> Result<Self> {
        if total < 0 {
            return Err(Error::InvalidState(format!(
                "total eigenvalue {total} is negative"
            )));
        }
        if amplitudes.len() as i64 != total + 1 {
            return Err(Error::InvalidState(format!(
                "expected {} sector amplitudes, found {}",
                total + 1,
                amplitudes.len()
            )));
        }
        let norm: T = amplitudes.iter().map(|e| e.norm_sqr()).sum();
        if (norm - T::one()).abs() > T::lit(1e-12).max(T::epsilon() * T::lit(16.0)) {
            return Err(Error::InvalidState(format!("Σ|e_n|² = {norm}, expected 1")));
        }
        let mut blocks: Vec<Option<Block<T>>> = vec![None; amplitudes.len()];
        for s in sectors {
            if s.level < 0 || s.level > total {
                return Err(Error::InvalidState(format!(
                    "sector level {} outside 0..={total}",
                    s.level
                )));
            }
            let (rows, cols) = sector_dims(&g_a, &g_b, total, s.level).ok_or_else(|| {
                Error::InvalidState(format!(
                    "sector {} needs Alice level {} and Bob level {} in the generator spectra",
                    s.level,
                    total - s.level,
                    s.level
                ))
            })?;
            if s.lambdas.len() > rows.min(cols) {
                return Err(Error::InvalidState(format!(
                    "sector {} has Schmidt rank {} > min({rows}, {cols})",
                    s.level,
                    s.lambdas.len()
                )));
            }
            if s.lambdas.iter().any(|l| *l < T::zero()) {
                return Err(Error::InvalidState(format!(
                    "sector {} has a negative Schmidt coefficient",
                    s.level
                )));
            }
            let lnorm: T = s.lambdas.iter().map(|l| *l * *l).sum();
            if (lnorm - T::one()).abs() > T::lit(1e-12).max(T::epsilon() * T::lit(16.0)) {
                return Err(Error::InvalidState(format!(
                    "sector {} has Σλ² = {lnorm}, expected 1",
                    s.level
                )));
            }
            let mut data = vec![Complex::new(T::zero(), T::zero()); rows * cols];
            for (l, lam) in s.lambdas.iter().enumerate() {
                data[l * cols + l] = Complex::new(*lam, T::zero());
            }
            let slot = &mut blocks[s.level as usize];
            if slot.is_some() {
                return Err(Error::InvalidState(format!(
                    "sector {} given twice",
                    s.level
                )));
            }
            *slot = Some(Block { rows, cols, data });
        }
        for (n, (e, b)) in amplitudes.iter().zip(&blocks).enumerate() {
            if b.is_none() && e.norm() > T::zero() {
                return Err(Error::InvalidState(format!(
                    "sector {n} has amplitude {e} but no Schmidt data"
                )));
            }
        }
        Ok(Self {
            total,
            g_a,
            g_b,
            amplitudes,
            blocks,
        })
    }

    /// Nondegenerate two-mode state `Σ_n e_n |N−n⟩|n⟩` with both parties
    /// holding levels `0..=N`.
    pub fn two_mode(amplitudes: Vec<Complex<T>>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("no sector amplitudes".into()));
        }
        let total = amplitudes.len() as i64 - 1;
        let g = Generator::uniform(amplitudes.len());
        let sectors = (0..=total)
            .filter(|&n| amplitudes[n as usize].norm() > T::zero())
            .map(SchmidtSector::product)
            .collect();
        Self::new(total, g.clone(), g, amplitudes, sectors)
    }

    pub fn two_mode_real(amplitudes: &[T]) -> Result<Self> {
        Self::two_mode(
            amplitudes
                .iter()
                .map(|&a| Complex::new(a, T::zero()))
                .collect(),
        )
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn generator_a(&self) -> &Generator {
        &self.g_a
    }

    pub fn generator_b(&self) -> &Generator {
        &self.g_b
    }

    pub fn amplitudes(&self) -> &[Complex<T>] {
        &self.amplitudes
    }

    pub fn magnitudes(&self) -> Vec<T> {
        self.amplitudes.iter().map(|e| e.norm()).collect()
    }

    /// Whether sector `n` is in Schmidt form on the standard degeneracy bases
    /// (up to rounding).
    pub fn is_schmidt_aligned(&self, n: usize) -> bool {
        match &self.blocks[n] {
            None => true,
            Some(b) => {
                let tol = T::epsilon() * T::lit(64.0);
                (0..b.rows).all(|r| {
                    (0..b.cols).all(|c| {
                        let v = b.get(r, c);
                        if r == c {
                            v.im.abs() <= tol && v.re >= -tol
                        } else {
                            v.norm() <= tol
                        }
                    })
                })
            }
        }
    }

    /// Schmidt coefficients of sector `n`, descending, trailing zeros dropped.
    pub fn schmidt_coefficients(&self, n: usize) -> Vec<T> {
        match &self.blocks[n] {
            None => Vec::new(),
            Some(b) if self.is_schmidt_aligned(n) => {
                let mut l: Vec<T> = (0..b.rows.min(b.cols))
                    .map(|i| b.get(i, i).re)
                    .filter(|x| *x > T::epsilon() * T::lit(64.0))
                    .collect();
                l.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
                l
            }
            Some(b) => linalg::singular_values(b.rows, b.cols, &b.data)
                .into_iter()
                .filter(|x| *x > T::epsilon().sqrt() * T::lit(1e-4))
                .collect(),
        }
    }

    /// Sector block entry `⟨N−n, r+1|⟨n, c+1|E_n⟩` (zero-based indices).
    pub fn sector_entry(&self, n: usize, r: usize, c: usize) -> Complex<T> {
        self.blocks[n]
            .as_ref()
            .map_or(Complex::new(T::zero(), T::zero()), |b| b.get(r, c))
    }

    /// Flat amplitude vector on `H_A ⊗ H_B` (index `a·dim_B + b`).
    pub fn expand(&self) -> Ket<T> {
        expand(self)
    }
}

/// `Σ_n e_n Σ_l λ_{n,l} |N−n, l⟩_A |n, l⟩_B`.
pub fn expand<T: Real>(state: &BipartiteFrameState<T>) -> Ket<T> {
    let db = state.g_b.dim();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); state.g_a.dim() * db];
    for (n, (e, block)) in state.amplitudes.iter().zip(&state.blocks).enumerate() {
        let Some(block) = block else { continue };
        let n = n as i64;
        let (a0, _) = state.g_a.block(state.total - n).expect("validated sector");
        let (b0, _) = state.g_b.block(n).expect("validated sector");
        for r in 0..block.rows {
            for c in 0..block.cols {
                amps[(a0 + r) * db + (b0 + c)] = *e * block.get(r, c);
            }
        }
    }
    Ket::new(amps)
}

/// Recovers the sector form of an eigenstate of `G_A ⊗ 1 + 1 ⊗ G_B`.
///
/// Each block is normalized and its largest-magnitude entry made real
/// positive; the removed phase goes into `e_n`.
pub fn sector_decompose<T: Real>(
    e_ket: &Ket<T>,
    g_a: &Generator,
    g_b: &Generator,
) -> Result<BipartiteFrameState<T>> {
    let (da, db) = (g_a.dim(), g_b.dim());
    if e_ket.dim() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: e_ket.dim(),
        });
    }
    let norm = e_ket.norm_sqr();
    if norm <= T::zero() {
        return Err(Error::InvalidState("zero vector".into()));
    }
    let diag_a = g_a.diagonal();
    let diag_b = g_b.diagonal();
    let amps = e_ket.amplitudes();

    // weight per total eigenvalue
    let mut weights: std::collections::BTreeMap<i64, T> = Default::default();
    for (ia, &na) in diag_a.iter().enumerate() {
        for (ib, &nb) in diag_b.iter().enumerate() {
            let w = amps[ia * db + ib].norm_sqr();
            if w > T::zero() {
                *weights.entry(na + nb).or_insert_with(T::zero) += w;
            }
        }
    }
    let (&total, _) = weights
        .iter()
        .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite"))
        .expect("nonzero vector has support");
    let mean: T = weights
        .iter()
        .map(|(k, w)| T::from_i64_lossy(*k) * *w)
        .sum::<T>()
        / norm;
    let spread: T = (weights
        .iter()
        .map(|(k, w)| (T::from_i64_lossy(*k) - mean).powi(2) * *w)
        .sum::<T>()
        / norm)
        .sqrt();
    if spread > T::tol() {
        return Err(Error::NotInvariantState {
            spread: spread.to_f64().unwrap_or(f64::NAN),
        });
    }
    if total < 0 {
        return Err(Error::InvalidState(format!(
            "total eigenvalue {total} is negative"
        )));
    }

    let inv_norm = T::one() / norm.sqrt();
    let zero = Complex::new(T::zero(), T::zero());
    let mut amplitudes = vec![zero; total as usize + 1];
    let mut blocks: Vec<Option<Block<T>>> = vec![None; total as usize + 1];
    for &(nb, cols) in g_b.levels() {
        let Some((a0, rows)) = g_a.block(total - nb) else {
            continue;
        };
        let (b0, _) = g_b.block(nb).expect("own level");
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(amps[(a0 + r) * db + (b0 + c)] * inv_norm);
            }
        }
        let bnorm = data.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt();
        if bnorm <= T::zero() {
            continue;
        }
        if nb < 0 || nb > total {
            return Err(Error::InvalidState(format!(
                "support on Bob level {nb} outside 0..={total}"
            )));
        }
        let mut pivot = data[0];
        for z in &data {
            if z.norm() > pivot.norm() {
                pivot = *z;
            }
        }
        let phase = pivot / Complex::new(pivot.norm(), T::zero());
        let unphase = phase.conj() / Complex::new(bnorm, T::zero());
        for z in data.iter_mut() {
            *z *= unphase;
        }
        amplitudes[nb as usize] = phase * Complex::new(bnorm, T::zero());
        blocks[nb as usize] = Some(Block { rows, cols, data });
    }
    Ok(BipartiteFrameState {
        total,
        g_a: g_a.clone(),
        g_b: g_b.clone(),
        amplitudes,
        blocks,
    })
}

/// `e_n = sin(π(n + 1/2)/(N + 1)) · √(2/(N + 1))`, the two-mode extension
/// of the sine clock state in the closed form usually quoted for it.
pub fn sine_state_paper<T: Real>(total: usize) -> Result<BipartiteFrameState<T>> {
    if total == 0 {
        return Err(Error::InvalidParameter("sine state needs N ≥ 1".into()));
    }
    let np1 = T::from_usize_lossy(total + 1);
    let half = T::lit(0.5);
    let amps: Vec<T> = (0..=total)
        .map(|n| {
            (T::PI() * (T::from_usize_lossy(n) + half) / np1).sin() * (T::lit(2.0) / np1).sqrt()
        })
        .collect();
    BipartiteFrameState::two_mode_real(&amps)
}

/// `e_n = 1/√(N + 1)`: the two-mode maximum-likelihood state.
pub fn flat_state<T: Real>(total: usize) -> Result<BipartiteFrameState<T>> {
    if total == 0 {
        return Err(Error::InvalidParameter("flat state needs N ≥ 1".into()));
    }
    let a = T::one() / T::from_usize_lossy(total + 1).sqrt();
    BipartiteFrameState::two_mode_real(&vec![a; total + 1])
}

/// All weight in one sector: `|N − n⟩|n⟩`. No phase information.
pub fn single_sector_state<T: Real>(total: usize, n: usize) -> Result<BipartiteFrameState<T>> {
    if n > total {
        return Err(Error::InvalidParameter(format!("sector {n} > N = {total}")));
    }
    let mut amps = vec![T::zero(); total + 1];
    amps[n] = T::one();
    BipartiteFrameState::two_mode_real(&amps)
}

/// `M_{n,n+q} = M_{n+q,n} = −c_q/2`: the quadratic form whose leading
/// eigenvector maximizes `Σ_q (−c_q) Σ_n e_n e_{n+q}`.
pub fn coherence_matrix<T: Real>(total: usize, cost: &CostFunction<T>) -> SymmetricMatrix<T> {
    let n = total + 1;
    let mut m = SymmetricMatrix::zeros(n);
    for q in 1..=cost.max_harmonic().min(total) {
        let w = -cost.coefficient(q) / T::lit(2.0);
        for i in 0..n - q {
            m.set(i, i + q, w);
        }
    }
    m
}

/// Two-mode state of minimum joint cost (maximum frameness) for `cost`.
pub fn optimal_frameness_state<T: Real>(
    total: usize,
    cost: &CostFunction<T>,
) -> Result<BipartiteFrameState<T>> {
    cost.ensure_admissible()?;
    if total == 0 {
        return Err(Error::InvalidParameter("optimal state needs N ≥ 1".into()));
    }
    let lead = linalg::leading_eigenpair(&coherence_matrix(total, cost))?;
    let sign = if lead.vector.iter().copied().sum::<T>() < T::zero() {
        -T::one()
    } else {
        T::one()
    };
    // Perron vector is nonnegative; clip rounding noise
    let mut amps: Vec<T> = lead
        .vector
        .iter()
        .map(|v| (*v * sign).max(T::zero()))
        .collect();
    let norm = amps.iter().map(|v| *v * *v).sum::<T>().sqrt();
    for a in amps.iter_mut() {
        *a /= norm;
    }
    BipartiteFrameState::two_mode_real(&amps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{random_block_unitary, Operator};
    use crate::rng::RandomSource;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < tol)
    }

    #[test]
    fn expand_examples() {
        let flat = flat_state::<f64>(1).unwrap();
        let k = flat.expand();
        // |1⟩_A|0⟩_B at index 2, |0⟩_A|1⟩_B at index 1
        let expected = Ket::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]);
        assert!(k.max_abs_diff(&expected) < 1e-15);

        let single = single_sector_state::<f64>(3, 0).unwrap().expand();
        assert!(single.max_abs_diff(&Ket::basis(16, 3 * 4)) < 1e-15);

        let sine = sine_state_paper::<f64>(2).unwrap();
        assert!(close(
            &sine.magnitudes(),
            &[0.40825, 0.81650, 0.40825],
            1e-5
        ));
    }

    #[test]
    fn sine_and_flat_examples() {
        assert!(close(
            &sine_state_paper::<f64>(1).unwrap().magnitudes(),
            &[FRAC_1_SQRT_2; 2],
            1e-12
        ));
        assert!(close(
            &flat_state::<f64>(3).unwrap().magnitudes(),
            &[0.5; 4],
            1e-15
        ));
        let k = flat_state::<f64>(2).unwrap().expand();
        let s = 1.0 / 3f64.sqrt();
        // |20⟩, |11⟩, |02⟩ in a 3×3 space
        let mut expected = vec![0.0; 9];
        expected[2 * 3] = s;
        expected[3 + 1] = s;
        expected[2] = s;
        assert!(k.max_abs_diff(&Ket::from_real(&expected)) < 1e-15);
        for n in 1..40 {
            let st = sine_state_paper::<f64>(n).unwrap();
            let norm: f64 = st.magnitudes().iter().map(|x| x * x).sum();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        assert!(sine_state_paper::<f64>(0).is_err());
    }

    #[test]
    fn decompose_examples() {
        let bell = Ket::from_real(&[0.0, FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0]);
        let q = Generator::qubit();
        let st = sector_decompose(&bell, &q, &q).unwrap();
        assert_eq!(st.total(), 1);
        assert!(close(&st.magnitudes(), &[FRAC_1_SQRT_2; 2], 1e-15));

        let zz = Ket::<f64>::basis(4, 0);
        let st = sector_decompose(&zz, &q, &q).unwrap();
        assert_eq!(st.total(), 0);
        assert!(close(&st.magnitudes(), &[1.0], 1e-15));

        let not_inv = Ket::from_real(&[FRAC_1_SQRT_2, 0.0, 0.0, FRAC_1_SQRT_2]);
        assert!(matches!(
            sector_decompose(&not_inv, &q, &q),
            Err(Error::NotInvariantState { spread }) if (spread - 1.0).abs() < 1e-12
        ));
    }

    fn degenerate_state(rng: &mut RandomSource) -> BipartiteFrameState<f64> {
        let g_a = Generator::new(vec![(0, 2), (1, 3), (2, 1)]).unwrap();
        let g_b = Generator::new(vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        let mut e: Vec<Complex<f64>> = (0..3)
            .map(|_| Complex::new(rng.normal(), rng.normal()))
            .collect();
        let norm = e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        e.iter_mut().for_each(|z| *z /= norm);
        let lam = |k: usize, rng: &mut RandomSource| {
            let mut v: Vec<f64> = (0..k).map(|_| rng.uniform() + 0.1).collect();
            let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            v.iter_mut().for_each(|x| *x /= n);
            v
        };
        let sectors = vec![
            SchmidtSector::new(0, lam(1, rng)),
            SchmidtSector::new(1, lam(2, rng)),
            SchmidtSector::new(2, lam(2, rng)),
        ];
        BipartiteFrameState::new(2, g_a, g_b, e, sectors).unwrap()
    }

    #[test]
    fn round_trip_with_complex_phases() {
        let mut rng = RandomSource::new(17);
        for _ in 0..10 {
            let st = degenerate_state(&mut rng);
            let back = sector_decompose(&st.expand(), st.generator_a(), st.generator_b()).unwrap();
            for (a, b) in st.amplitudes().iter().zip(back.amplitudes()) {
                assert!((a - b).norm() < 1e-12);
            }
            assert!(back.expand().max_abs_diff(&st.expand()) < 1e-12);
            for n in 0..3 {
                assert!(back.is_schmidt_aligned(n));
                assert!(close(
                    &st.schmidt_coefficients(n),
                    &back.schmidt_coefficients(n),
                    1e-12
                ));
            }
        }
    }

    #[test]
    fn global_phase_invariance() {
        let mut rng = RandomSource::new(5);
        let st = degenerate_state(&mut rng);
        let k = st.expand();
        let g_tot_a = st.generator_a();
        let g_tot_b = st.generator_b();
        let phi = 0.731;
        // (U_A ⊗ U_B) as a phase on each product basis index
        let ua = crate::quantum::phase_shift_diagonal::<f64>(g_tot_a, phi);
        let ub = crate::quantum::phase_shift_diagonal::<f64>(g_tot_b, phi);
        let shifted = Ket::new(
            k.amplitudes()
                .iter()
                .enumerate()
                .map(|(i, a)| a * ua[i / ub.len()] * ub[i % ub.len()])
                .collect(),
        );
        let expected = k.scale(crate::scalar::cis(-phi * st.total() as f64));
        assert!(shifted.max_abs_diff(&expected) < 1e-12);
    }

    #[test]
    fn magnitudes_invariant_under_block_unitaries() {
        let mut rng = RandomSource::new(8);
        let st = degenerate_state(&mut rng);
        for _ in 0..20 {
            let ua: Operator<f64> = random_block_unitary(st.generator_a(), &mut rng);
            let ub: Operator<f64> = random_block_unitary(st.generator_b(), &mut rng);
            let u = ua.tensor(&ub);
            let moved = u.apply(&st.expand());
            let back = sector_decompose(&moved, st.generator_a(), st.generator_b()).unwrap();
            assert!(close(&back.magnitudes(), &st.magnitudes(), 1e-10));
            for n in 0..3 {
                assert!(close(
                    &back.schmidt_coefficients(n),
                    &st.schmidt_coefficients(n),
                    1e-8
                ));
            }
            assert!(back.expand().max_abs_diff(&moved) < 1e-12);
        }
    }

    #[test]
    fn optimal_variance_examples() {
        let var = CostFunction::<f64>::variance();
        let s1 = optimal_frameness_state(1, &var).unwrap();
        assert!(close(&s1.magnitudes(), &[FRAC_1_SQRT_2; 2], 1e-12));
        let s2 = optimal_frameness_state(2, &var).unwrap();
        assert!(close(&s2.magnitudes(), &[0.5, FRAC_1_SQRT_2, 0.5], 1e-12));
        let c = crate::estimation::min_joint_cost(&s2.magnitudes(), &var).unwrap();
        assert!((c - (2.0 - 2.0 * (PI / 4.0).cos())).abs() < 1e-12);
    }

    #[test]
    fn construction_errors() {
        let q = Generator::qubit();
        let one = Complex::new(1.0, 0.0);
        let zero = Complex::new(0.0, 0.0);
        // Alice level 2 missing for N = 2, n = 0
        let err = BipartiteFrameState::<f64>::new(
            2,
            q.clone(),
            Generator::uniform(3),
            vec![one, zero, zero],
            vec![SchmidtSector::product(0)],
        );
        assert!(err.is_err());
        // rank exceeds block size
        let err = BipartiteFrameState::<f64>::new(
            0,
            q.clone(),
            q.clone(),
            vec![one],
            vec![SchmidtSector::new(0, vec![FRAC_1_SQRT_2, FRAC_1_SQRT_2])],
        );
        assert!(err.is_err());
        // unnormalized amplitudes
        assert!(BipartiteFrameState::<f64>::two_mode_real(&[1.0, 1.0]).is_err());
        // missing Schmidt data for a populated sector
        let err = BipartiteFrameState::<f64>::new(0, q.clone(), q, vec![one], vec![]);
        assert!(err.is_err());
        let bad = CostFunction::from_coefficients_unchecked(vec![0.0, 1.0]);
        assert!(optimal_frameness_state(2, &bad).is_err());
    }
}
