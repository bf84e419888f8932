//! Unitary space-time block codes built from uniquely factorable constellation
//! pairs (UFCPs) for a noncoherent two-transmit, one-receive antenna link.
//!
//! Modules, bottom up:
//! - [`constellations`]: Gaussian-integer QAM sets and their corner energies.
//! - [`ufcp`]: factorable pairs and the optimal QAM factorization.
//! - [`stbc`]: codewords, coding gain, optimal designs and baseline codebooks.
//! - [`channel`]: block Rayleigh fading and complex Gaussian noise.
//! - [`receiver`]: GLRT detection, blind identification, channel estimation.
//! - [`harness`]: Monte Carlo error-rate curves, gain tables and output files.

pub mod channel;
pub mod constellations;
pub mod error;
pub mod harness;
pub mod receiver;
pub mod stbc;
pub mod ufcp;

pub use error::{Error, Result};
