//! Protocol layer: resource generation, two-round parity projection,
//! entanglement pumping and selective EO along a chain.

pub mod chain;
pub mod parity;
pub mod pump;
pub mod resource;

pub use chain::{chain_selective_eo, ChainConfig, ChainOutcome};
pub use parity::{
    enumerate_two_round, fresh_pair_fidelity, plus_plus, success_summary,
    two_round_parity_projection, ParityBranch, ParityCorrection, ParityOutcome,
};
pub use pump::{
    pump_step, pump_trial, pump_until, PumpRecord, PumpState, PumpTrajectory, Syndrome,
    SyndromeDraw,
};
pub use resource::{
    generate_resource, generate_resource_with, p_values, CorrectionTag, EOResource, GateModel,
};
