//! Shared reference frames as a quantum resource.
//!
//! Generic over the real scalar `T: Real`; the aliases at the crate root fix
//! `T = f64`.

pub mod error;
pub mod estimation;
pub mod linalg;
pub mod protocols;
pub mod quantum;
pub mod rng;
pub mod scalar;
pub mod states;

pub use error::{Error, Result};
pub use estimation::{
    brute_force_min_cost, brute_force_search, estimate_density, min_joint_cost, sample_estimate,
    seed_cost, SearchOptions, DEFAULT_BINS,
};
pub use protocols::{
    alice_fourier_basis, alice_measure, clock_phase, finite_group_align, frameness,
    monte_carlo_cost, no_go_witness, predicted_conditional_state, run_sync_trial, si_teleport,
    teleport_with_mismatch, FourierOutcome, GroupTable, Teleporter, WitnessGenerators,
};
pub use quantum::{fidelity, phase_shift, spectral_projector, BasisLabel, Generator};
pub use rng::RandomSource;
pub use scalar::Real;
pub use states::{
    coherence_matrix, expand, flat_state, optimal_frameness_state, sector_decompose,
    sine_state_paper, single_sector_state,
};

pub type Complex64 = num_complex::Complex<f64>;
pub type Ket = quantum::Ket<f64>;
pub type Operator = quantum::Operator<f64>;
pub type DensityMatrix = quantum::DensityMatrix<f64>;
pub type BipartiteFrameState = states::BipartiteFrameState<f64>;
pub type SchmidtSector = states::SchmidtSector<f64>;
pub type CostFunction = estimation::CostFunction<f64>;
pub type EstimateDensity = estimation::EstimateDensity<f64>;
pub type ConditionalOutcome = protocols::ConditionalOutcome<f64>;
pub type SyncProtocol = protocols::SyncProtocol<f64>;
pub type McEstimate = protocols::McEstimate<f64>;
pub type WitnessReport = protocols::WitnessReport<f64>;
pub type ClockParams = protocols::ClockParams<f64>;
