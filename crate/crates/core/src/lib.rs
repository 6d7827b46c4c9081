//! Decoding and error-floor exploration for binary LDPC codes on the AWGN
//! channel.
//!
//! The crate provides the machinery to measure *why* iterative and relaxation
//! decoders fail at high SNR: belief-propagation and linear-programming
//! decoders, an exact block/symbol-MAP oracle for small codes, a
//! pseudo-codeword search that walks the LP error surface toward low
//! effective distance, a Nelder-Mead instanton optimizer for arbitrary
//! decoders, and a harness that turns found instantons into frame-error-rate
//! estimates and pseudo-codeword spectra.
//!
//! Everything is deterministic for a fixed master seed; see the individual
//! module docs for the contracts.

pub mod amoeba;
pub mod bp;
pub mod channel;
pub mod error;
pub mod explorer;
pub mod graph;
pub mod lp;
pub mod oracle;
pub mod pcs;
pub mod simplex;

pub use error::{Error, Result};
pub use graph::{BinaryWord, TannerGraph};
