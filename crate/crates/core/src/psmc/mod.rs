//! Constructions that mask partially-stuck-at cells.
//!
//! Three families, by how much structure they need from the alphabet:
//!
//! - [`shift`]: add a scalar multiple of the all-one word. Works over any
//!   `[q]`, masks defects whose levels sum to less than q, and can pack an
//!   extra symbol into the redundancy cell.
//! - [`matrix`]: add `z * H` for a parity-check matrix H over F_q. Masks
//!   u <= ceil(q/s) + d - 3 cells at redundancy n - k, driven by the reduced
//!   row echelon block structure of the stuck columns.
//! - [`smc_backed`]: shift the word so few cells sit near the wrap-around,
//!   then pin those with an inner small-alphabet stuck-at code. Handles any
//!   u, at redundancy (n-k-1) log_q(q / floor(q/Q)) + 2.
//!
//! [`descriptor`] carries the bookkeeping: capability, message-space size,
//! and exact (log-form) redundancy per construction.

pub mod descriptor;
pub mod matrix;
pub mod shift;
pub mod smc_backed;

pub use descriptor::{Capability, CodecDescriptor, Construction, InnerCodeParams, Redundancy};
pub use matrix::{
    c2_decode, c2_encode, masks_with_shift, matrix_decode, matrix_encode, rre_mask_solve,
    word_masks,
};
pub use shift::{
    c1_decode, c1_encode, c1b_decode, c1b_encode, gen1_decode, gen1_encode,
};
pub use smc_backed::{
    c3_decode, c3_encode, c3_encode_with_trace, gen3_decode, gen3_encode, gen3_encode_with_trace,
    gen3s_decode, gen3s_encode, InnerMaskTrace,
};
