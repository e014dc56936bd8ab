//! Qudit teleportation when Bob's frame is rotated by an unknown phase.
//!
//! Everything is written in Alice's description. Bob's correction
//! `C = Z^b X^{-a}` is built in his own frame, so in Alice's description it
//! acts as `U_φ C W_φ†`, where `U` is generated by the output system and
//! `W` by the carrier Bob holds.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quantum::{
    fidelity, outcome_distribution, phase_shift, DensityMatrix, Generator, Ket, Operator,
};
use crate::scalar::{cis, Real};

/// Teleportation configuration: dimension, output-system generator and
/// carrier generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Teleporter {
    dim: usize,
    output: Generator,
    carrier: Generator,
}

/// One Bell outcome `(a, b)` with Bob's corrected output.
#[derive(Clone, Debug)]
pub struct TeleportBranch<T> {
    pub shift: usize,
    pub boost: usize,
    pub probability: T,
    pub output: Ket<T>,
}

fn omega<T: Real>(power: usize, d: usize) -> Complex<T> {
    cis(T::TAU() * T::from_usize_lossy(power % d) / T::from_usize_lossy(d))
}

/// `X^a Z^{-b}` inverse, i.e. `Z^b X^{-a}`.
fn correction<T: Real>(d: usize, a: usize, b: usize) -> Operator<T> {
    // X^{-a}|j⟩ = |j−a⟩, then Z^b multiplies by ω^{b(j−a)}
    Operator::from_fn(d, |r, c| {
        if r == (c + d - a % d) % d {
            omega(b * r, d)
        } else {
            Complex::new(T::zero(), T::zero())
        }
    })
}

/// `|Φ_ab⟩ = d^{-1/2} Σ_j ω^{bj} |j⟩|j+a⟩`.
pub fn bell_vector<T: Real>(d: usize, a: usize, b: usize) -> Ket<T> {
    let s = T::one() / T::from_usize_lossy(d).sqrt();
    let mut amps = vec![Complex::new(T::zero(), T::zero()); d * d];
    for j in 0..d {
        amps[j * d + (j + a) % d] = omega::<T>(b * j, d) * s;
    }
    Ket::new(amps)
}

impl Teleporter {
    /// Output system and carrier both carry `G = diag(0, …, d−1)`.
    pub fn unspeakable(dim: usize) -> Self {
        Self {
            dim,
            output: Generator::uniform(dim),
            carrier: Generator::uniform(dim),
        }
    }

    /// Carrier with zero generator; output system with `G = diag(0, …, d−1)`.
    pub fn speakable(dim: usize) -> Self {
        Self {
            dim,
            output: Generator::uniform(dim),
            carrier: Generator::invariant(dim),
        }
    }

    pub fn with_generators(output: Generator, carrier: Generator) -> Result<Self> {
        if output.dim() != carrier.dim() {
            return Err(Error::DimensionMismatch {
                expected: output.dim(),
                found: carrier.dim(),
            });
        }
        Ok(Self {
            dim: output.dim(),
            output,
            carrier,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Bell measurement outcomes before Bob's correction; independent of
    /// the mismatch.
    pub fn prepare<T: Real>(&self, input: &Ket<T>) -> Result<PreparedTeleport<T>> {
        let d = self.dim;
        if input.dim() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: input.dim(),
            });
        }
        let input = input.normalized()?;
        let joint = input.tensor(&bell_vector::<T>(d, 0, 0));
        let basis: Vec<Ket<T>> = (0..d * d).map(|i| bell_vector(d, i / d, i % d)).collect();
        let carried = outcome_distribution(&joint, &basis)?
            .into_iter()
            .map(|br| (br.outcome / d, br.outcome % d, br.probability, br.posterior))
            .collect();
        Ok(PreparedTeleport {
            setup: self.clone(),
            input,
            carried,
        })
    }

    /// Every Bell outcome of the protocol at mismatch `phi`.
    pub fn branches<T: Real>(&self, input: &Ket<T>, phi: T) -> Result<Vec<TeleportBranch<T>>> {
        Ok(self.prepare(input)?.branches(phi))
    }

    /// Bob's output averaged over Bell outcomes.
    pub fn run<T: Real>(&self, input: &Ket<T>, phi: T) -> Result<DensityMatrix<T>> {
        Ok(self.prepare(input)?.output(phi))
    }
}

/// Teleportation with the Bell measurement already resolved.
#[derive(Clone, Debug)]
pub struct PreparedTeleport<T> {
    setup: Teleporter,
    input: Ket<T>,
    carried: Vec<(usize, usize, T, Ket<T>)>,
}

impl<T: Real> PreparedTeleport<T> {
    pub fn input(&self) -> &Ket<T> {
        &self.input
    }

    pub fn branches(&self, phi: T) -> Vec<TeleportBranch<T>> {
        let d = self.setup.dim;
        let u = phase_shift(&self.setup.output, phi);
        let w_dag = phase_shift(&self.setup.carrier, phi).adjoint();
        self.carried
            .iter()
            .map(|(a, b, p, bob)| {
                let op = u.matmul(&correction(d, *a, *b)).matmul(&w_dag);
                TeleportBranch {
                    shift: *a,
                    boost: *b,
                    probability: *p,
                    output: op.apply(bob),
                }
            })
            .collect()
    }

    pub fn output(&self, phi: T) -> DensityMatrix<T> {
        let mix: Vec<(T, Ket<T>)> = self
            .branches(phi)
            .into_iter()
            .map(|b| (b.probability, b.output))
            .collect();
        DensityMatrix::mixture(&mix)
    }

    pub fn fidelity(&self, phi: T) -> T {
        fidelity(&self.output(phi), &self.input)
    }
}

/// Output of standard teleportation when Bob's frame is off by `phi`.
pub fn teleport_with_mismatch<T: Real>(input: &Ket<T>, phi: T) -> Result<DensityMatrix<T>> {
    Teleporter::unspeakable(input.dim()).run(input, phi)
}

/// Fidelity of [`teleport_with_mismatch`] against the input.
pub fn mismatch_fidelity<T: Real>(input: &Ket<T>, phi: T) -> Result<T> {
    let rho = teleport_with_mismatch(input, phi)?;
    Ok(fidelity(&rho, &input.normalized()?))
}

/// Fidelity averaged over `points` equally spaced mismatches.
pub fn average_mismatch_fidelity<T: Real>(input: &Ket<T>, points: usize) -> Result<T> {
    if points == 0 {
        return Err(Error::InvalidParameter(
            "need at least one grid point".into(),
        ));
    }
    let prepared = Teleporter::unspeakable(input.dim()).prepare(input)?;
    let mut acc = T::zero();
    for i in 0..points {
        let phi = T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(points);
        acc += prepared.fidelity(phi);
    }
    Ok(acc / T::from_usize_lossy(points))
}

/// Teleports `alpha` through an invariant carrier into Bob's clock system.
/// Every Bell outcome yields `U_φ|α⟩`; the common output is returned.
pub fn si_teleport<T: Real>(alpha: &Ket<T>, phi: T) -> Result<Ket<T>> {
    let branches = Teleporter::speakable(alpha.dim()).branches(alpha, phi)?;
    let first = branches[0].output.clone();
    for b in &branches[1..] {
        let dist = b.output.phase_aligned_distance(&first);
        if dist > T::tol() {
            return Err(Error::Numerical(format!(
                "Bell outcome ({}, {}) disagrees by {dist}",
                b.shift, b.boost
            )));
        }
    }
    Ok(first)
}
