//! Codes that mask defective multi-level memory cells.
//!
//! A cell with q levels is *partially stuck-at* level s when it can only
//! store values >= s; it is *stuck-at* s when it must store exactly s; it
//! has an *unreachable* level s when it can only store values <= s. The
//! encoder knows the defect positions and levels, the decoder does not.
//!
//! Modules:
//! - [`ring`]: arithmetic over the alphabet `[q]` (finite field or mod-q ring).
//! - [`linalg`]: dense matrices over a field, reduced row echelon form with a
//!   recorded transform, and the block maskability test.
//! - [`codes`]: linear codes as systematic parity-check matrices (Hamming,
//!   MDS, shortened, user registry) plus brute-force distance checking.
//! - [`smc`]: the classical stuck-at masking codec.
//! - [`psmc`]: the partially-stuck-at masking constructions.
//! - [`umc`]: the complement wrapper for cells with unreachable levels.
//! - [`bounds`]: redundancy bounds, channel capacity and rate formulas.
//! - [`oracle`]: exhaustive verification and exact maximum-size search.
//! - [`sim`]: seeded Monte Carlo simulation of the defect channel.

pub mod bounds;
pub mod codes;
mod error;
pub mod linalg;
pub mod oracle;
pub mod psmc;
pub mod ring;
pub mod sim;
pub mod smc;
pub mod umc;

pub use error::{Error, Result};
pub use smc::PsaPattern;

/// A length-n sequence over the alphabet `[q]`: a memory state, a message,
/// or a stored codeword.
pub type CellWord = Vec<u32>;
