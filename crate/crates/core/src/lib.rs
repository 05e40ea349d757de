//! Exact few-qubit simulation of entanglement operations between static spin
//! qubits mediated by a flying electron spin.
//!
//! * [`qcore`]: dense states, unitaries, channels, partial trace, measurement.
//! * [`scattering`]: flying/static scattering gates, with and without reflection.
//! * [`channels`]: initialization, dephasing and relaxation noise.
//! * [`protocol`]: resource states, parity projection, pumping, chains.
//! * [`metrics`]: concurrence and Bell fidelities.
//!
//! The crate is `no_std` and only needs `alloc`.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod channels;
mod error;
pub mod metrics;
pub mod protocol;
pub mod qcore;
pub mod rng;
pub mod scattering;

pub use error::{Error, Result};
