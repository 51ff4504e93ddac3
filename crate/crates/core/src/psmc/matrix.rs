//! Masking with a parity-check matrix: store `w + z * H` over F_q.
//!
//! The shift `z` comes from the reduced row echelon form of the stuck
//! columns: each column is associated with the row of its lowermost nonzero
//! entry, and the pivot rows are fixed greedily top-down, each time taking
//! the smallest field element (in integer encoding) that clears every column
//! in the row's block. This succeeds whenever the per-row exclusion budgets
//! fit below q, which for the parity-check matrix of an `[n, k, d]_q` code
//! covers any u <= ceil(q/s) + d - 3 cells partially stuck at level s.
//!
//! Message symbols sit on the non-pivot columns of H and zeros on the pivot
//! columns, so the decoder can recover z from the stored word alone; for a
//! systematic H this is the familiar "redundancy first" layout.

use crate::codes::LinearCode;
use crate::linalg::{column_block_assignment, maskable_check, rre, MatrixOverField};
use crate::smc::{embed_message, PsaPattern};
use crate::{CellWord, Error, Result};

/// Finds `z` with `(w + z * H)` clearing every stuck position strictly above
/// its exclusion range: position stuck at level s ends with a value >= s.
///
/// Errors with [`Error::UnmaskablePattern`] (or
/// [`Error::UnmaskableColumn`]) when the RRE block structure of the stuck
/// columns cannot absorb the budgets.
pub fn rre_mask_solve(
    h: &MatrixOverField,
    w: &[u32],
    pattern: &PsaPattern,
) -> Result<Vec<u32>> {
    assert_eq!(w.len(), h.cols());
    let ctx = *h.ctx();
    let q = ctx.q();
    let kappa = h.rows();
    if pattern.u() == 0 {
        return Ok(vec![0; kappa]);
    }
    pattern.check_fits(h.cols())?;

    let stuck_cols = h.submatrix_cols(pattern.positions());
    let red = rre(&stuck_cols);
    let assignment = column_block_assignment(&red.r)?;
    if !maskable_check(&red.r, pattern.levels()) {
        return Err(Error::UnmaskablePattern);
    }

    // greedy choice of the pivot-row coefficients, smallest value first
    let mut zp = vec![0u32; kappa];
    let mut partial: Vec<u32> = pattern.iter().map(|(pos, _)| w[pos]).collect();
    for i in 0..red.rank {
        let block: Vec<usize> =
            (0..red.r.cols()).filter(|&j| assignment[j] == i).collect();
        let levels = pattern.levels();
        let choice = (0..q)
            .find(|&e| {
                block.iter().all(|&j| {
                    let shifted = ctx.add(partial[j], ctx.mul(e, red.r.get(i, j)));
                    shifted >= levels[j]
                })
            })
            .ok_or(Error::Internal("no row coefficient despite passing maskability"))?;
        zp[i] = choice;
        if choice != 0 {
            for (j, acc) in partial.iter_mut().enumerate() {
                *acc = ctx.add(*acc, ctx.mul(choice, red.r.get(i, j)));
            }
        }
    }
    // zp solves the problem against RRE(stuck columns); zp * T applies the
    // same shift through H itself, since (zp * T) * H_u = zp * RRE(H_u)
    Ok(red.t.left_mul_vec(&zp))
}

/// Does `y` sit at or above every stuck level?
pub fn word_masks(y: &[u32], pattern: &PsaPattern) -> bool {
    pattern.iter().all(|(pos, s)| y[pos] >= s)
}

/// Verification call: does the shift `z` mask `pattern` when applied to `w`?
pub fn masks_with_shift(
    h: &MatrixOverField,
    w: &[u32],
    z: &[u32],
    pattern: &PsaPattern,
) -> bool {
    let ctx = h.ctx();
    let x = h.left_mul_vec(z);
    let y: Vec<u32> = w.iter().zip(x.iter()).map(|(&a, &b)| ctx.add(a, b)).collect();
    word_masks(&y, pattern)
}

/// Encodes against an arbitrary full-rank matrix registered as a
/// [`LinearCode`]; no capability formula is applied, the solver simply fails
/// on patterns the matrix cannot absorb.
pub fn matrix_encode(code: &LinearCode, m: &[u32], pattern: &PsaPattern) -> Result<CellWord> {
    if m.len() != code.k() {
        return Err(Error::Parameter(format!("message length {} != k = {}", m.len(), code.k())));
    }
    if let Some(&bad) = m.iter().find(|&&v| v >= code.q()) {
        return Err(Error::Parameter(format!("message symbol {bad} outside [{}]", code.q())));
    }
    if let Some(&bad) = pattern.levels().iter().find(|&&s| s == 0 || s >= code.q()) {
        return Err(Error::Parameter(format!("level {bad} outside 1..{}", code.q())));
    }
    let ctx = code.ctx();
    let w = embed_message(code, m);
    let z = rre_mask_solve(code.parity_check(), &w, pattern)?;
    let x = code.parity_check().left_mul_vec(&z);
    Ok(w.iter().zip(x.iter()).map(|(&a, &b)| ctx.add(a, b)).collect())
}

/// Inverse of [`matrix_encode`]; reads the shift off the pivot columns.
pub fn matrix_decode(code: &LinearCode, y: &[u32]) -> CellWord {
    crate::smc::smc_decode(code, y)
}

/// Masks u <= ceil(q/s) + d - 3 cells partially stuck at a common level s,
/// at redundancy n - k.
pub fn c2_encode(code: &LinearCode, m: &[u32], pattern: &PsaPattern) -> Result<CellWord> {
    let q = code.q();
    let u = pattern.u();
    if u > 0 {
        let s = pattern.levels()[0];
        if pattern.levels().iter().any(|&l| l != s) {
            return Err(Error::Parameter("levels must all be equal".into()));
        }
        if s == 0 || s >= q {
            return Err(Error::Parameter(format!("level {s} outside 1..{q}")));
        }
        let cap = (q as u64).div_ceil(s as u64) + code.d_claimed() as u64 - 3;
        if u as u64 > cap {
            return Err(Error::CapabilityExceeded(format!(
                "u = {u} exceeds ceil(q/s) + d - 3 = {cap}"
            )));
        }
    }
    matrix_encode(code, m, pattern)
}

pub fn c2_decode(code: &LinearCode, y: &[u32]) -> CellWord {
    matrix_decode(code, y)
}
