//! Phase-estimation costs and the optimal covariant estimator.
//!
//! Costs are cosine series `c(φ) = Σ_q c_q cos(qφ)`; they are admissible when
//! `c_q ≤ 0` for every `q ≥ 1`. For admissible costs the best covariant
//! measurement on amplitudes `e_n` costs `c_0 + Σ_{q≥1} c_q Σ_n |e_n e_{n+q}|`.

use num_complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::rng::RandomSource;
use crate::scalar::{cis, wrap_angle, Real};

/// Default number of bins of the inverse-CDF sampler.
pub const DEFAULT_BINS: usize = 1 << 16;

/// Fourier-cosine coefficients `c_0, c_1, …` of a cost function.
#[derive(Clone, Debug, PartialEq)]
pub struct CostFunction<T> {
    coefficients: Vec<T>,
}

impl<T: Real> CostFunction<T> {
    /// Admissible cost; fails when some `c_q > 0` for `q ≥ 1`.
    pub fn new(coefficients: Vec<T>) -> Result<Self> {
        let c = Self::from_coefficients_unchecked(coefficients);
        c.ensure_admissible()?;
        Ok(c)
    }

    /// Any cosine series, admissible or not.
    pub fn from_coefficients_unchecked(mut coefficients: Vec<T>) -> Self {
        if coefficients.is_empty() {
            coefficients.push(T::zero());
        }
        Self { coefficients }
    }

    /// `4 sin²(φ/2) = 2 − 2 cos φ`.
    pub fn variance() -> Self {
        Self {
            coefficients: vec![T::lit(2.0), T::lit(-2.0)],
        }
    }

    /// `−δ(φ)` truncated after harmonic `q_max`.
    pub fn likelihood(q_max: usize) -> Result<Self> {
        if q_max == 0 {
            return Err(Error::InvalidParameter(
                "likelihood cost needs q_max ≥ 1".into(),
            ));
        }
        let mut c = vec![-T::one() / T::TAU()];
        c.extend(std::iter::repeat_n(-T::one() / T::PI(), q_max));
        Ok(Self { coefficients: c })
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coefficients
    }

    /// `c_q`, zero past the last stored harmonic.
    pub fn coefficient(&self, q: usize) -> T {
        self.coefficients.get(q).copied().unwrap_or_else(T::zero)
    }

    pub fn max_harmonic(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn is_admissible(&self) -> bool {
        self.coefficients.iter().skip(1).all(|c| *c <= T::zero())
    }

    pub fn ensure_admissible(&self) -> Result<()> {
        match self
            .coefficients
            .iter()
            .enumerate()
            .skip(1)
            .find(|(_, c)| **c > T::zero())
        {
            Some((q, c)) => Err(Error::NonAdmissibleCost {
                q,
                value: c.to_f64().unwrap_or(f64::NAN),
            }),
            None => Ok(()),
        }
    }

    pub fn value(&self, phi: T) -> T {
        cost_value(self, phi)
    }
}

/// `Σ_q c_q cos(qφ)`.
pub fn cost_value<T: Real>(cost: &CostFunction<T>, phi: T) -> T {
    cost.coefficients
        .iter()
        .enumerate()
        .map(|(q, c)| *c * (T::from_usize_lossy(q) * phi).cos())
        .sum()
}

/// Sector amplitudes may be given as magnitudes or as complex numbers.
pub trait Amplitude<T> {
    fn magnitude(&self) -> T;
}

impl<T: Real> Amplitude<T> for T {
    fn magnitude(&self) -> T {
        self.abs()
    }
}

impl<T: Real> Amplitude<T> for Complex<T> {
    fn magnitude(&self) -> T {
        self.norm()
    }
}

fn check_normalized<T: Real>(mags: &[T]) -> Result<()> {
    let s: T = mags.iter().map(|m| *m * *m).sum();
    if (s - T::one()).abs() > T::tol() {
        return Err(Error::InvalidState(format!("Σ|e_n|² = {s}, expected 1")));
    }
    Ok(())
}

/// `Σ_n |e_n| |e_{n+q}|` for `q = 0..=max_q`.
pub fn autocorrelation<T: Real>(mags: &[T], max_q: usize) -> Vec<T> {
    (0..=max_q)
        .map(|q| {
            if q >= mags.len() {
                T::zero()
            } else {
                mags.iter().zip(&mags[q..]).map(|(a, b)| *a * *b).sum()
            }
        })
        .collect()
}

/// Minimum average cost over all joint measurements:
/// `c_0 + Σ_{q≥1} c_q Σ_n |e_n||e_{n+q}|`.
pub fn min_joint_cost<T: Real, A: Amplitude<T>>(e: &[A], cost: &CostFunction<T>) -> Result<T> {
    cost.ensure_admissible()?;
    let mags: Vec<T> = e.iter().map(Amplitude::magnitude).collect();
    check_normalized(&mags)?;
    let r = autocorrelation(&mags, cost.max_harmonic());
    Ok(cost.coefficients.iter().zip(&r).map(|(c, r)| *c * *r).sum())
}

/// Outcome density of the canonical covariant estimator on a state with
/// amplitude magnitudes `|ψ_n|`: `p(δ) = |Σ_n |ψ_n| e^{inδ}|² / 2π`,
/// `δ = φ − φ̂`. Carries a midpoint-rule CDF table for sampling.
#[derive(Clone, Debug)]
pub struct EstimateDensity<T> {
    magnitudes: Vec<T>,
    autocorr: Vec<T>,
    cdf: Vec<T>,
}

impl<T: Real> EstimateDensity<T> {
    pub fn new(magnitudes: &[T]) -> Result<Self> {
        Self::with_bins(magnitudes, DEFAULT_BINS)
    }

    pub fn with_bins(magnitudes: &[T], bins: usize) -> Result<Self> {
        if magnitudes.is_empty() {
            return Err(Error::InvalidState("no amplitudes".into()));
        }
        if bins < 2 {
            return Err(Error::InvalidParameter(
                "sampler needs at least 2 bins".into(),
            ));
        }
        let mags: Vec<T> = magnitudes.iter().map(|m| m.abs()).collect();
        check_normalized(&mags)?;
        let autocorr = autocorrelation(&mags, mags.len() - 1);
        let mut density = Self {
            magnitudes: mags,
            autocorr,
            cdf: Vec::new(),
        };
        let h = T::TAU() / T::from_usize_lossy(bins);
        let mut cdf = Vec::with_capacity(bins + 1);
        let mut acc = T::zero();
        cdf.push(acc);
        for i in 0..bins {
            let mid = (T::from_usize_lossy(i) + T::lit(0.5)) * h;
            acc += density.pdf(mid) * h;
            cdf.push(acc);
        }
        density.cdf = cdf;
        Ok(density)
    }

    pub fn magnitudes(&self) -> &[T] {
        &self.magnitudes
    }

    pub fn bins(&self) -> usize {
        self.cdf.len() - 1
    }

    /// `p(δ)` by Horner evaluation of `Σ_n |ψ_n| z^n`, `z = e^{iδ}`.
    pub fn pdf(&self, delta: T) -> T {
        let z = cis(delta);
        let mut acc = Complex::new(T::zero(), T::zero());
        for m in self.magnitudes.iter().rev() {
            acc = acc * z + Complex::new(*m, T::zero());
        }
        acc.norm_sqr() / T::TAU()
    }

    /// Same density through its cosine series; used to cross-check `pdf`.
    pub fn pdf_series(&self, delta: T) -> T {
        let two = T::lit(2.0);
        let s: T = self
            .autocorr
            .iter()
            .enumerate()
            .skip(1)
            .map(|(q, r)| two * *r * (T::from_usize_lossy(q) * delta).cos())
            .sum();
        (self.autocorr[0] + s) / T::TAU()
    }

    /// `∫ c(δ) p(δ) dδ` by the periodic trapezoid rule on `points` nodes.
    pub fn average_cost(&self, cost: &CostFunction<T>, points: usize) -> T {
        let h = T::TAU() / T::from_usize_lossy(points);
        (0..points)
            .map(|i| {
                let d = T::from_usize_lossy(i) * h;
                cost.value(d) * self.pdf(d)
            })
            .sum::<T>()
            * h
    }

    /// `∫ p(δ) dδ` by the periodic trapezoid rule.
    pub fn total_mass(&self, points: usize) -> T {
        let h = T::TAU() / T::from_usize_lossy(points);
        (0..points)
            .map(|i| self.pdf(T::from_usize_lossy(i) * h))
            .sum::<T>()
            * h
    }

    /// Inverts the tabulated CDF at `u ∈ [0, 1)`, giving `δ ∈ [0, 2π)`.
    pub fn inverse_cdf(&self, u: T) -> T {
        let bins = self.bins();
        let total = self.cdf[bins];
        let target = u * total;
        // first index with cdf > target, minus one
        let i = self.cdf.partition_point(|c| *c <= target).clamp(1, bins) - 1;
        let width = self.cdf[i + 1] - self.cdf[i];
        let frac = if width > T::zero() {
            ((target - self.cdf[i]) / width).min(T::one())
        } else {
            T::lit(0.5)
        };
        let h = T::TAU() / T::from_usize_lossy(bins);
        wrap_angle((T::from_usize_lossy(i) + frac) * h)
    }

    pub fn sample(&self, phi_true: T, rng: &mut RandomSource) -> T {
        sample_estimate(self, phi_true, rng)
    }
}

pub fn estimate_density<T: Real>(psi_magnitudes: &[T]) -> Result<EstimateDensity<T>> {
    EstimateDensity::new(psi_magnitudes)
}

/// Draws `φ̂ = φ_true − δ (mod 2π)` with `δ ~ p`.
pub fn sample_estimate<T: Real>(
    density: &EstimateDensity<T>,
    phi_true: T,
    rng: &mut RandomSource,
) -> T {
    let u: T = rng.uniform_real();
    wrap_angle(phi_true - density.inverse_cdf(u))
}

/// Exact average cost of the rank-one covariant seed `η_n = e^{iθ_n}` on
/// amplitudes `e`, by trapezoid quadrature of the seed's outcome density.
///
/// The integrand is a trigonometric polynomial of degree at most
/// `N + q_max`, so `2(N + q_max) + 1` nodes integrate it exactly.
pub fn seed_cost<T: Real>(e: &[Complex<T>], cost: &CostFunction<T>, phases: &[T]) -> T {
    debug_assert_eq!(e.len(), phases.len());
    let weighted: Vec<Complex<T>> = e.iter().zip(phases).map(|(a, t)| *a * cis(-*t)).collect();
    let nodes = 2 * (e.len() - 1 + cost.max_harmonic()) + 1;
    let h = T::TAU() / T::from_usize_lossy(nodes);
    let mut acc = T::zero();
    for i in 0..nodes {
        let d = T::from_usize_lossy(i) * h;
        let z = cis(d);
        let mut amp = Complex::new(T::zero(), T::zero());
        for w in weighted.iter().rev() {
            amp = amp * z + *w;
        }
        acc += cost.value(d) * amp.norm_sqr();
    }
    acc / T::from_usize_lossy(nodes)
}

/// Result of a search over rank-one covariant seeds.
#[derive(Clone, Debug, PartialEq)]
pub struct SeedSearch<T> {
    pub cost: T,
    /// `θ_0 = 0`, then the best grid phases.
    pub phases: Vec<T>,
}

/// Exhaustive grid up to this many free phases, coordinate descent beyond.
pub const EXHAUSTIVE_MAX_FREE_PHASES: usize = 2;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub grid_points: usize,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            grid_points: 360,
            restarts: 8,
            seed: 0x5eed,
        }
    }
}

/// Independent oracle for the minimum joint cost: minimizes [`seed_cost`]
/// over seed phases on a uniform grid (`θ_0` fixed to 0).
pub fn brute_force_search<T: Real>(
    e: &[Complex<T>],
    cost: &CostFunction<T>,
    opts: &SearchOptions,
) -> SeedSearch<T> {
    let free = e.len().saturating_sub(1);
    let g = opts.grid_points.max(1);
    let step = T::TAU() / T::from_usize_lossy(g);
    let angle = |k: usize| T::from_usize_lossy(k) * step;
    let to_phases = |idx: &[usize]| -> Vec<T> {
        std::iter::once(T::zero())
            .chain(idx.iter().map(|&k| angle(k)))
            .collect()
    };

    if free == 0 {
        return SeedSearch {
            cost: seed_cost(e, cost, &[T::zero()]),
            phases: vec![T::zero()],
        };
    }

    if free <= EXHAUSTIVE_MAX_FREE_PHASES {
        let total = g.pow(free as u32);
        // parallel over the first free phase; rows reduced in index order
        let rows: Vec<(T, Vec<usize>)> = (0..g)
            .into_par_iter()
            .map(|first| {
                let mut best = (T::infinity(), Vec::new());
                let inner = total / g;
                let mut idx = vec![first; free];
                for rest in 0..inner {
                    let mut r = rest;
                    for slot in idx.iter_mut().skip(1) {
                        *slot = r % g;
                        r /= g;
                    }
                    let c = seed_cost(e, cost, &to_phases(&idx));
                    if c < best.0 {
                        best = (c, idx.clone());
                    }
                }
                best
            })
            .collect();
        let (c, idx) = rows
            .into_iter()
            .fold((T::infinity(), Vec::new()), |acc, r| {
                if r.0 < acc.0 {
                    r
                } else {
                    acc
                }
            });
        return SeedSearch {
            cost: c,
            phases: to_phases(&idx),
        };
    }

    let runs: Vec<(T, Vec<usize>)> = (0..opts.restarts.max(1))
        .into_par_iter()
        .map(|r| {
            let mut rng = RandomSource::stream(opts.seed, r as u64);
            let mut idx: Vec<usize> = (0..free).map(|_| rng.index_below(g)).collect();
            let mut current = seed_cost(e, cost, &to_phases(&idx));
            for _sweep in 0..200 {
                let mut moved = false;
                for slot in 0..free {
                    let keep = idx[slot];
                    let mut best = (current, keep);
                    for k in 0..g {
                        if k == keep {
                            continue;
                        }
                        idx[slot] = k;
                        let c = seed_cost(e, cost, &to_phases(&idx));
                        if c < best.0 {
                            best = (c, k);
                        }
                    }
                    idx[slot] = best.1;
                    if best.1 != keep {
                        moved = true;
                        current = best.0;
                    }
                }
                if !moved {
                    break;
                }
            }
            (current, idx)
        })
        .collect();
    let (c, idx) = runs
        .into_iter()
        .fold((T::infinity(), Vec::new()), |acc, r| {
            if r.0 < acc.0 {
                r
            } else {
                acc
            }
        });
    SeedSearch {
        cost: c,
        phases: to_phases(&idx),
    }
}

pub fn brute_force_min_cost<T: Real>(
    e: &[Complex<T>],
    cost: &CostFunction<T>,
    grid_points: usize,
) -> T {
    let opts = SearchOptions {
        grid_points,
        ..SearchOptions::default()
    };
    brute_force_search(e, cost, &opts).cost
}
