//! Numerical witness that local phase-covariant teleportation cannot carry
//! unspeakable information.
//!
//! The joint state `|Ψ⟩ = |ψ₀⟩_S ⊗ |E⟩_AB` is split into eigenspaces of
//! `G_− = G_S ⊗ 1 ⊗ 1 − 1 ⊗ 1 ⊗ G_B`. The top nonzero sector
//! `σ_{l_max} = Π_{l_max}|Ψ⟩⟨Ψ|Π_{l_max}` commutes with `1 ⊗ 1 ⊗ G_B`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::quantum::{shift_ket, Generator, Ket, Operator};
use crate::scalar::Real;

/// Amplitude norm below which a sector counts as unoccupied.
pub const SUPPORT_THRESHOLD: f64 = 1e-12;

/// Default number of grid points for the input phase-sensitivity scan.
pub const UI_GRID_POINTS: usize = 1024;

/// Generators for the input system and the two halves of the resource.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessGenerators {
    pub system: Generator,
    pub alice: Generator,
    pub bob: Generator,
}

#[derive(Clone, Debug, PartialEq)]
pub struct WitnessReport<T> {
    /// Occupied `G_−` eigenvalues with their weights `tr σ_l`, ascending.
    pub sectors: Vec<(i64, T)>,
    pub l_max: i64,
    pub m_max: i64,
    pub n_min: i64,
    /// `‖[σ_{l_max}, 1 ⊗ 1 ⊗ G_B]‖` in operator norm.
    pub invariance_residual: T,
    /// Max-entry distance between `σ_{l_max}` and
    /// `(P_{m_max} ⊗ 1 ⊗ Q_{n_min}) σ (P_{m_max} ⊗ 1 ⊗ Q_{n_min})`.
    pub projection_residual: T,
    /// `max_φ ‖U_φ ψ₀ − ψ₀‖` over the scan grid.
    pub input_ui_norm: T,
}

impl<T> WitnessReport<T> {
    pub fn eigenvalues(&self) -> Vec<i64> {
        self.sectors.iter().map(|s| s.0).collect()
    }
}

fn level_of(g: &Generator) -> Vec<i64> {
    g.diagonal()
}

/// Builds the witness for `ψ₀` and the resource `E_ket` on `H_A ⊗ H_B`.
pub fn no_go_witness<T: Real>(
    psi0: &Ket<T>,
    e_ket: &Ket<T>,
    gens: &WitnessGenerators,
) -> Result<WitnessReport<T>> {
    no_go_witness_with_grid(psi0, e_ket, gens, UI_GRID_POINTS)
}

pub fn no_go_witness_with_grid<T: Real>(
    psi0: &Ket<T>,
    e_ket: &Ket<T>,
    gens: &WitnessGenerators,
    grid_points: usize,
) -> Result<WitnessReport<T>> {
    let (ds, da, db) = (gens.system.dim(), gens.alice.dim(), gens.bob.dim());
    if psi0.dim() != ds {
        return Err(Error::DimensionMismatch {
            expected: ds,
            found: psi0.dim(),
        });
    }
    if e_ket.dim() != da * db {
        return Err(Error::DimensionMismatch {
            expected: da * db,
            found: e_ket.dim(),
        });
    }
    if grid_points == 0 {
        return Err(Error::InvalidParameter(
            "need at least one grid point".into(),
        ));
    }
    let psi0 = psi0.normalized()?;
    let e_ket = e_ket.normalized()?;
    let thr = T::lit(SUPPORT_THRESHOLD);
    let s_levels = level_of(&gens.system);
    let b_levels = level_of(&gens.bob);

    let m_max = gens
        .system
        .levels()
        .iter()
        .filter_map(|&(m, _)| {
            let (start, d) = gens.system.block(m)?;
            let w: T = psi0.amplitudes()[start..start + d]
                .iter()
                .map(|z| z.norm_sqr())
                .sum();
            (w.sqrt() > thr).then_some(m)
        })
        .max()
        .ok_or_else(|| Error::InvalidState("input state has no support".into()))?;
    let n_min = gens
        .bob
        .levels()
        .iter()
        .filter_map(|&(n, _)| {
            let (start, d) = gens.bob.block(n)?;
            let w: T = (0..da)
                .flat_map(|a| (start..start + d).map(move |b| a * db + b))
                .map(|i| e_ket[i].norm_sqr())
                .sum();
            (w.sqrt() > thr).then_some(n)
        })
        .min()
        .ok_or_else(|| Error::InvalidState("resource has no support".into()))?;

    let joint = psi0.tensor(&e_ket);
    let dim = joint.dim();
    let l_of = |i: usize| s_levels[i / (da * db)] - b_levels[i % db];
    let mut weights: std::collections::BTreeMap<i64, T> = Default::default();
    for (i, z) in joint.amplitudes().iter().enumerate() {
        let w = weights.entry(l_of(i)).or_insert(T::zero());
        *w += z.norm_sqr();
    }
    let sectors: Vec<(i64, T)> = weights
        .into_iter()
        .filter(|(_, w)| w.sqrt() > thr)
        .collect();
    let l_max = sectors
        .last()
        .map(|s| s.0)
        .expect("normalized state has support");

    let zero = Complex::new(T::zero(), T::zero());
    let top = Ket::new(
        joint
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, z)| if l_of(i) == l_max { *z } else { zero })
            .collect(),
    );
    let sigma = Operator::outer(&top, &top);
    let g_b_full = Operator::from_diagonal(
        &(0..dim)
            .map(|i| Complex::new(T::from_i64_lossy(b_levels[i % db]), T::zero()))
            .collect::<Vec<_>>(),
    );
    let invariance_residual = sigma.commutator(&g_b_full).operator_norm();

    let corner = Ket::new(
        joint
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(i, z)| {
                if s_levels[i / (da * db)] == m_max && b_levels[i % db] == n_min {
                    *z
                } else {
                    zero
                }
            })
            .collect(),
    );
    let projection_residual = sigma.max_abs_diff(&Operator::outer(&corner, &corner));

    let mut input_ui_norm = T::zero();
    for i in 0..grid_points {
        let phi = T::TAU() * T::from_usize_lossy(i) / T::from_usize_lossy(grid_points);
        let moved = shift_ket(&gens.system, phi, &psi0);
        input_ui_norm = input_ui_norm.max((&moved - &psi0).norm());
    }

    Ok(WitnessReport {
        sectors,
        l_max,
        m_max,
        n_min,
        invariance_residual,
        projection_residual,
        input_ui_norm,
    })
}
