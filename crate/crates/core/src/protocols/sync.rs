//! One-way LOCC synchronization: Alice measures a Fourier POVM on her half
//! of the resource, announces the outcome, and Bob runs the canonical
//! phase estimator on his conditional state.

use std::collections::BTreeMap;

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::estimation::{min_joint_cost, CostFunction, EstimateDensity, DEFAULT_BINS};
use crate::quantum::{povm_distribution, Generator, Ket};
use crate::rng::RandomSource;
use crate::scalar::{cis, Real};
use crate::states::BipartiteFrameState;

/// Upper bound on the number of Fourier outcomes enumerated.
pub const MAX_FOURIER_OUTCOMES: usize = 1 << 20;

/// Trials per random stream in Monte Carlo runs.
pub const TRIALS_PER_STREAM: usize = 1024;

/// Outcome label `(k, {j_m})`. `j` holds `j_m ∈ 1..=d_{m,A}` for every
/// degenerate Alice level `m`; it is empty for nondegenerate spectra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourierOutcome {
    pub k: usize,
    pub j: BTreeMap<i64, usize>,
}

impl FourierOutcome {
    /// `j_m`, 1 for nondegenerate levels.
    pub fn j_of(&self, level: i64) -> usize {
        self.j.get(&level).copied().unwrap_or(1)
    }
}

/// Alice's Fourier measurement as a rank-one POVM `{|a⟩⟨a|}`.
///
/// `|a_{k,{j}}⟩ = (N_A Π_m d_m)^{-1/2} Σ_m ω^{k m} Σ_l υ_m^{j_m l} |m, l⟩` with
/// `ω = e^{2πi/N_A}`, `υ_m = e^{2πi/d_m}` and `N_A` the span of Alice's
/// eigenvalues. Nondegenerate consecutive spectra give an orthonormal basis.
#[derive(Clone, Debug)]
pub struct FourierPovm<T> {
    pub span: usize,
    pub outcomes: Vec<FourierOutcome>,
    pub vectors: Vec<Ket<T>>,
}

impl<T: Real> FourierPovm<T> {
    pub fn len(&self) -> usize {
        self.outcomes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outcomes.is_empty()
    }
}

fn root_of_unity<T: Real>(power: i64, order: usize) -> Complex<T> {
    let p = power.rem_euclid(order as i64);
    cis(T::TAU() * T::from_i64_lossy(p) / T::from_usize_lossy(order))
}

pub fn alice_fourier_basis<T: Real>(g_a: &Generator) -> Result<FourierPovm<T>> {
    let span = (g_a.max_eigenvalue() - g_a.min_eigenvalue() + 1) as usize;
    let degenerate: Vec<(i64, usize)> = g_a.levels().iter().copied().filter(|l| l.1 > 1).collect();
    let mut combos: usize = 1;
    for &(_, d) in &degenerate {
        combos = combos
            .checked_mul(d)
            .filter(|c| c.saturating_mul(span) <= MAX_FOURIER_OUTCOMES)
            .ok_or_else(|| Error::InvalidParameter("too many Fourier outcomes".into()))?;
    }
    let weight = T::one() / T::from_usize_lossy(span * combos).sqrt();
    let labels = g_a.labels();

    let mut outcomes = Vec::with_capacity(span * combos);
    let mut vectors = Vec::with_capacity(span * combos);
    for k in 0..span {
        for mut c in 0..combos {
            let mut j = BTreeMap::new();
            for &(level, d) in &degenerate {
                j.insert(level, c % d + 1);
                c /= d;
            }
            let outcome = FourierOutcome { k, j };
            let amps = labels
                .iter()
                .map(|lab| {
                    let d = g_a.degeneracy(lab.level);
                    let omega = root_of_unity::<T>(k as i64 * lab.level, span);
                    let upsilon =
                        root_of_unity::<T>((outcome.j_of(lab.level) * lab.index) as i64, d);
                    omega * upsilon * weight
                })
                .collect();
            outcomes.push(outcome);
            vectors.push(Ket::new(amps));
        }
    }
    Ok(FourierPovm {
        span,
        outcomes,
        vectors,
    })
}

/// Alice's outcome with Bob's collapsed state.
#[derive(Clone, Debug)]
pub struct ConditionalOutcome<T> {
    pub outcome: FourierOutcome,
    pub probability: T,
    pub bob_state: Ket<T>,
}

/// Every outcome of Alice's Fourier POVM on the resource.
pub fn alice_measure<T: Real>(
    state: &BipartiteFrameState<T>,
) -> Result<Vec<ConditionalOutcome<T>>> {
    let povm = alice_fourier_basis::<T>(state.generator_a())?;
    let branches = povm_distribution(&state.expand(), &povm.vectors)?;
    Ok(branches
        .into_iter()
        .zip(povm.outcomes)
        .map(|(b, outcome)| ConditionalOutcome {
            outcome,
            probability: b.probability,
            bob_state: b.posterior,
        })
        .collect())
}

/// Bob's conditional state in closed form,
/// `Σ_n e_n ω^{kn} Σ_l λ_{n,l} υ^{−j l} |n, l⟩`, with `j`, `υ` taken from
/// Alice's partner level `N − n`. Requires Schmidt-aligned sectors.
pub fn predicted_conditional_state<T: Real>(
    state: &BipartiteFrameState<T>,
    outcome: &FourierOutcome,
) -> Result<Ket<T>> {
    let g_a = state.generator_a();
    let g_b = state.generator_b();
    let span = (g_a.max_eigenvalue() - g_a.min_eigenvalue() + 1) as usize;
    let total = state.total();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); g_b.dim()];
    for (n, e) in state.amplitudes().iter().enumerate() {
        if !state.is_schmidt_aligned(n) {
            return Err(Error::InvalidState(format!(
                "sector {n} is not in Schmidt form on the standard bases"
            )));
        }
        if e.norm() == T::zero() {
            continue;
        }
        let level_a = total - n as i64;
        let d_a = g_a.degeneracy(level_a);
        let (b0, d_b) = g_b.block(n as i64).expect("validated sector");
        let omega = root_of_unity::<T>(outcome.k as i64 * n as i64, span);
        let j = outcome.j_of(level_a);
        for l in 1..=d_a.min(d_b) {
            let lambda = state.sector_entry(n, l - 1, l - 1).re;
            let upsilon = root_of_unity::<T>(-((j * l) as i64), d_a);
            amps[b0 + l - 1] = *e * omega * upsilon * lambda;
        }
    }
    Ket::new(amps).normalized()
}

/// Norm of each Bob level block `n = 0..=N` of a Bob-side state.
pub fn level_magnitudes<T: Real>(g_b: &Generator, bob: &Ket<T>, total: i64) -> Vec<T> {
    (0..=total)
        .map(|n| match g_b.block(n) {
            Some((start, d)) => bob.amplitudes()[start..start + d]
                .iter()
                .map(|z| z.norm_sqr())
                .sum::<T>()
                .sqrt(),
            None => T::zero(),
        })
        .collect()
}

/// Bob's optimal cost given one Alice outcome.
pub fn conditional_cost<T: Real>(
    state: &BipartiteFrameState<T>,
    outcome: &ConditionalOutcome<T>,
    cost: &CostFunction<T>,
) -> Result<T> {
    let mags = level_magnitudes(state.generator_b(), &outcome.bob_state, state.total());
    min_joint_cost(&mags, cost)
}

/// `F_c = −⟨c⟩_min`.
pub fn frameness<T: Real>(state: &BipartiteFrameState<T>, cost: &CostFunction<T>) -> Result<T> {
    Ok(-min_joint_cost(state.amplitudes(), cost)?)
}

/// Result of one synchronization run.
#[derive(Clone, Debug, PartialEq)]
pub struct SyncTrial<T> {
    pub estimate: T,
    /// Index into the protocol's outcome list.
    pub outcome: usize,
    pub probability: T,
}

/// Precomputed protocol: Alice's outcome distribution and one estimator
/// density per distinct conditional magnitude profile.
#[derive(Clone, Debug)]
pub struct SyncProtocol<T> {
    outcomes: Vec<ConditionalOutcome<T>>,
    weights: Vec<T>,
    density_of: Vec<usize>,
    densities: Vec<EstimateDensity<T>>,
}

impl<T: Real> SyncProtocol<T> {
    pub fn new(state: &BipartiteFrameState<T>) -> Result<Self> {
        Self::with_bins(state, DEFAULT_BINS)
    }

    pub fn with_bins(state: &BipartiteFrameState<T>, bins: usize) -> Result<Self> {
        let outcomes = alice_measure(state)?;
        let weights: Vec<T> = outcomes.iter().map(|o| o.probability).collect();
        let mut profiles: Vec<Vec<T>> = Vec::new();
        let mut densities = Vec::new();
        let mut density_of = Vec::with_capacity(outcomes.len());
        let same = T::lit(1e-12).max(T::epsilon() * T::lit(64.0));
        for o in &outcomes {
            if o.probability <= T::zero() {
                density_of.push(usize::MAX);
                continue;
            }
            let mags = level_magnitudes(state.generator_b(), &o.bob_state, state.total());
            let found = profiles
                .iter()
                .position(|p| p.iter().zip(&mags).all(|(a, b)| (*a - *b).abs() <= same));
            let idx = match found {
                Some(i) => i,
                None => {
                    densities.push(EstimateDensity::with_bins(&mags, bins)?);
                    profiles.push(mags);
                    profiles.len() - 1
                }
            };
            density_of.push(idx);
        }
        Ok(Self {
            outcomes,
            weights,
            density_of,
            densities,
        })
    }

    pub fn outcomes(&self) -> &[ConditionalOutcome<T>] {
        &self.outcomes
    }

    /// Number of distinct estimator densities across outcomes.
    pub fn distinct_profiles(&self) -> usize {
        self.densities.len()
    }

    /// Bob's frame is shifted by `phi_true`; returns his estimate of it.
    pub fn trial(&self, phi_true: T, rng: &mut RandomSource) -> SyncTrial<T> {
        let k = rng.categorical(&self.weights);
        let density = &self.densities[self.density_of[k]];
        SyncTrial {
            estimate: density.sample(phi_true, rng),
            outcome: k,
            probability: self.outcomes[k].probability,
        }
    }
}

/// Single trial; builds the protocol on every call, so loops should hold a
/// [`SyncProtocol`] instead.
pub fn run_sync_trial<T: Real>(
    state: &BipartiteFrameState<T>,
    phi_true: T,
    rng: &mut RandomSource,
) -> Result<SyncTrial<T>> {
    Ok(SyncProtocol::new(state)?.trial(phi_true, rng))
}

/// Sample mean and standard error of a Monte Carlo cost run.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate<T> {
    pub mean: T,
    pub std_error: T,
    pub trials: usize,
}

impl<T: Real> McEstimate<T> {
    pub fn z_score(&self, reference: T) -> T {
        if self.std_error > T::zero() {
            (self.mean - reference) / self.std_error
        } else if self.mean == reference {
            T::zero()
        } else {
            T::infinity()
        }
    }
}

/// Mean cost over `trials` runs with a fresh uniform mismatch each time.
///
/// Trials are batched `TRIALS_PER_STREAM` per random stream `rng.split(b)`
/// and batch sums are reduced in batch order, so the result is independent
/// of the thread count.
pub fn monte_carlo_cost<T: Real>(
    protocol: &SyncProtocol<T>,
    cost: &CostFunction<T>,
    trials: usize,
    rng: &RandomSource,
) -> Result<McEstimate<T>> {
    if trials < 100 {
        return Err(Error::InvalidParameter(format!(
            "need at least 100 trials, got {trials}"
        )));
    }
    let batches = trials.div_ceil(TRIALS_PER_STREAM);
    let sums: Vec<(T, T)> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut stream = rng.split(b as u64);
            let count = TRIALS_PER_STREAM.min(trials - b * TRIALS_PER_STREAM);
            let mut s = T::zero();
            let mut s2 = T::zero();
            for _ in 0..count {
                let phi: T = stream.angle();
                let t = protocol.trial(phi, &mut stream);
                let c = cost.value(t.estimate - phi);
                s += c;
                s2 += c * c;
            }
            (s, s2)
        })
        .collect();
    let (s, s2) = sums
        .into_iter()
        .fold((T::zero(), T::zero()), |a, b| (a.0 + b.0, a.1 + b.1));
    let n = T::from_usize_lossy(trials);
    let mean = s / n;
    let var = ((s2 - n * mean * mean) / (n - T::one())).max(T::zero());
    Ok(McEstimate {
        mean,
        std_error: (var / n).sqrt(),
        trials,
    })
}

/// Convenience wrapper building the protocol for `state`.
pub fn monte_carlo_state_cost<T: Real>(
    state: &BipartiteFrameState<T>,
    cost: &CostFunction<T>,
    trials: usize,
    rng: &RandomSource,
) -> Result<McEstimate<T>> {
    monte_carlo_cost(&SyncProtocol::new(state)?, cost, trials, rng)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{outcome_distribution, Operator};
    use crate::states::{flat_state, single_sector_state, SchmidtSector};
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn qubit_fourier_basis() {
        let povm = alice_fourier_basis::<f64>(&Generator::qubit()).unwrap();
        assert_eq!(povm.len(), 2);
        let plus = Ket::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let minus = Ket::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        assert!(povm.vectors[0].max_abs_diff(&plus) < 1e-15);
        assert!(povm.vectors[1].max_abs_diff(&minus) < 1e-15);
        assert!(povm.outcomes[0].j.is_empty());
    }

    #[test]
    fn three_level_fourier_is_dft() {
        let povm = alice_fourier_basis::<f64>(&Generator::uniform(3)).unwrap();
        let s = 1.0 / 3f64.sqrt();
        for (k, v) in povm.vectors.iter().enumerate() {
            for n in 0..3 {
                let expected = Complex::from_polar(s, std::f64::consts::TAU * (k * n) as f64 / 3.0);
                assert!((v[n] - expected).norm() < 1e-15);
            }
        }
        // orthonormal and complete
        assert!(outcome_distribution(&Ket::<f64>::basis(3, 0), &povm.vectors).is_ok());
    }

    #[test]
    fn degenerate_family_is_complete() {
        let g = Generator::new(vec![(0, 2), (1, 1), (2, 3)]).unwrap();
        let povm = alice_fourier_basis::<f64>(&g).unwrap();
        assert_eq!(povm.len(), 3 * 2 * 3);
        let mut sum = Operator::zeros(g.dim());
        for v in &povm.vectors {
            sum = &sum + &Operator::projector(v);
        }
        assert!(sum.max_abs_diff(&Operator::identity(g.dim())) < 1e-12);
    }

    #[test]
    fn flat_n1_outcomes() {
        let st = flat_state::<f64>(1).unwrap();
        let outs = alice_measure(&st).unwrap();
        assert_eq!(outs.len(), 2);
        let plus = Ket::from_real(&[FRAC_1_SQRT_2, FRAC_1_SQRT_2]);
        let minus = Ket::from_real(&[FRAC_1_SQRT_2, -FRAC_1_SQRT_2]);
        assert!((outs[0].probability - 0.5).abs() < 1e-15);
        assert!(outs[0].bob_state.phase_aligned_distance(&plus) < 1e-12);
        assert!(outs[1].bob_state.phase_aligned_distance(&minus) < 1e-12);
    }

    #[test]
    fn single_sector_has_no_phase_information() {
        let st = single_sector_state::<f64>(3, 2).unwrap();
        let outs = alice_measure(&st).unwrap();
        let expected = Ket::basis(4, 2);
        for o in &outs {
            assert!(o.bob_state.phase_aligned_distance(&expected) < 1e-12);
        }
        let v = CostFunction::variance();
        assert!((conditional_cost(&st, &outs[0], &v).unwrap() - 2.0).abs() < 1e-15);
        assert!((frameness(&st, &v).unwrap() + 2.0).abs() < 1e-15);
    }

    #[test]
    fn degenerate_example_preserves_magnitudes() {
        let g = Generator::new(vec![(0, 1), (1, 2), (2, 1)]).unwrap();
        let s = 1.0 / 3f64.sqrt();
        let st = BipartiteFrameState::new(
            2,
            g.clone(),
            g.clone(),
            vec![Complex::new(s, 0.0); 3],
            vec![
                SchmidtSector::product(0),
                SchmidtSector::new(1, vec![0.8f64.sqrt(), 0.2f64.sqrt()]),
                SchmidtSector::product(2),
            ],
        )
        .unwrap();
        let outs = alice_measure(&st).unwrap();
        let total: f64 = outs.iter().map(|o| o.probability).sum();
        assert!((total - 1.0).abs() < 1e-12);
        for o in &outs {
            let predicted = predicted_conditional_state(&st, &o.outcome).unwrap();
            assert!(o.bob_state.phase_aligned_distance(&predicted) < 1e-12);
            // Bob level 1 occupies indices 1, 2
            let b = &o.bob_state;
            let block = (b[1].norm_sqr() + b[2].norm_sqr()).sqrt();
            assert!((b[1].norm() / block - 0.8f64.sqrt()).abs() < 1e-12);
            assert!((b[2].norm() / block - 0.2f64.sqrt()).abs() < 1e-12);
            assert!((block - s).abs() < 1e-12);
        }
    }

    #[test]
    fn protocol_dedupes_profiles() {
        let st = flat_state::<f64>(4).unwrap();
        let p = SyncProtocol::with_bins(&st, 1024).unwrap();
        assert_eq!(p.outcomes().len(), 5);
        assert_eq!(p.distinct_profiles(), 1);
    }

    #[test]
    fn too_few_trials_rejected() {
        let st = flat_state::<f64>(1).unwrap();
        let p = SyncProtocol::with_bins(&st, 64).unwrap();
        let v = CostFunction::variance();
        assert!(monte_carlo_cost(&p, &v, 99, &RandomSource::new(0)).is_err());
        let small = monte_carlo_cost(&p, &v, 100, &RandomSource::new(0)).unwrap();
        assert!(small.std_error > 0.0 && small.std_error.is_finite());
    }

    #[test]
    fn run_sync_trial_deterministic() {
        let st = flat_state::<f64>(2).unwrap();
        let a = run_sync_trial(&st, 0.4, &mut RandomSource::new(12)).unwrap();
        let b = run_sync_trial(&st, 0.4, &mut RandomSource::new(12)).unwrap();
        assert_eq!(a, b);
        assert!((0.0..std::f64::consts::TAU).contains(&a.estimate));
    }
}
