//! Protocols that consume a shared frame resource.

pub mod clock;
pub mod group;
pub mod sync;
pub mod teleport;
pub mod witness;

pub use clock::{clock_evolution, clock_phase, ClockParams};
pub use group::{finite_group_align, group_resource, GroupAligner, GroupTable};
pub use sync::{
    alice_fourier_basis, alice_measure, conditional_cost, frameness, level_magnitudes,
    monte_carlo_cost, monte_carlo_state_cost, predicted_conditional_state, run_sync_trial,
    ConditionalOutcome, FourierOutcome, FourierPovm, McEstimate, SyncProtocol, SyncTrial,
};
pub use teleport::{
    average_mismatch_fidelity, bell_vector, mismatch_fidelity, si_teleport, teleport_with_mismatch,
    PreparedTeleport, TeleportBranch, Teleporter,
};
pub use witness::{no_go_witness, no_go_witness_with_grid, WitnessGenerators, WitnessReport};
