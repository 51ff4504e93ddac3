//! Classical stuck-at masking.
//!
//! An `[n, k, d]_q` code with d >= u + 1 masks u cells stuck at exact
//! levels: put the message on the message coordinates, then add a codeword
//! multiple `z * H` chosen so the stored word matches every stuck cell. The
//! decoder reads `z` back from the redundancy coordinates and subtracts, so
//! it needs neither the positions nor the levels.

use serde::{Deserialize, Serialize};

use crate::codes::LinearCode;
use crate::linalg::solve_left;
use crate::{CellWord, Error, Result};

/// A defect pattern: sorted distinct positions with one level per position.
///
/// The meaning of a level depends on the codec: an exact target for SMC, a
/// minimum for the partially-stuck constructions, a maximum for unreachable
/// levels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PsaPattern {
    positions: Vec<usize>,
    levels: Vec<u32>,
}

impl PsaPattern {
    pub fn new(positions: Vec<usize>, levels: Vec<u32>) -> Result<Self> {
        if positions.len() != levels.len() {
            return Err(Error::Parameter(format!(
                "{} positions but {} levels",
                positions.len(),
                levels.len()
            )));
        }
        if positions.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter("positions must be strictly increasing".into()));
        }
        Ok(Self { positions, levels })
    }

    pub fn empty() -> Self {
        Self { positions: Vec::new(), levels: Vec::new() }
    }

    /// All positions stuck at the same level.
    pub fn uniform(positions: Vec<usize>, level: u32) -> Result<Self> {
        let levels = vec![level; positions.len()];
        Self::new(positions, levels)
    }

    pub fn u(&self) -> usize {
        self.positions.len()
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.positions.iter().copied().zip(self.levels.iter().copied())
    }

    pub fn max_level(&self) -> u32 {
        self.levels.iter().copied().max().unwrap_or(0)
    }

    pub fn level_sum(&self) -> u64 {
        self.levels.iter().map(|&s| s as u64).sum()
    }

    pub(crate) fn check_fits(&self, n: usize) -> Result<()> {
        if let Some(&p) = self.positions.last() {
            if p >= n {
                return Err(Error::Parameter(format!("position {p} outside word length {n}")));
            }
        }
        Ok(())
    }
}

/// Encodes `m` so that the stored word holds exactly `level` at every stuck
/// position. Levels are exact targets in `[q]`; requires `u <= d - 1`.
///
/// The canonical shift `z` is the solution of `z * H_u = s - w_u` with free
/// unknowns set to zero, so the output is deterministic.
pub fn smc_encode(code: &LinearCode, m: &[u32], pattern: &PsaPattern) -> Result<CellWord> {
    let q = code.q();
    let n = code.n();
    if m.len() != code.k() {
        return Err(Error::Parameter(format!("message length {} != k = {}", m.len(), code.k())));
    }
    if let Some(&bad) = m.iter().find(|&&v| v >= q) {
        return Err(Error::Parameter(format!("message symbol {bad} outside [{q}]")));
    }
    pattern.check_fits(n)?;
    if let Some(&bad) = pattern.levels().iter().find(|&&s| s >= q) {
        return Err(Error::Parameter(format!("stuck level {bad} outside [{q}]")));
    }
    let u = pattern.u();
    if u as u32 + 1 > code.d_claimed() {
        return Err(Error::CapabilityExceeded(format!(
            "u = {u} stuck cells need distance >= {}, code claims {}",
            u + 1,
            code.d_claimed()
        )));
    }

    let ctx = code.ctx();
    let w = embed_message(code, m);
    let h_u = code.parity_check().submatrix_cols(pattern.positions());
    let target: Vec<u32> = pattern
        .iter()
        .map(|(pos, s)| ctx.sub(s, w[pos]))
        .collect();
    let z = solve_left(&h_u, &target)
        .ok_or(Error::Internal("stuck system inconsistent despite u <= d - 1"))?;
    let x = code.parity_check().left_mul_vec(&z);
    Ok(w.iter().zip(x.iter()).map(|(&a, &b)| ctx.add(a, b)).collect())
}

/// Pattern-oblivious decoder: recover the shift from the redundancy
/// coordinates, subtract, read the message coordinates.
pub fn smc_decode(code: &LinearCode, y: &[u32]) -> CellWord {
    assert_eq!(y.len(), code.n());
    let ctx = code.ctx();
    let pivots = code.pivot_cols();
    let h_p = code.parity_check().submatrix_cols(pivots);
    let y_p: Vec<u32> = pivots.iter().map(|&j| y[j]).collect();
    let z = solve_left(&h_p, &y_p).expect("pivot columns are invertible");
    let x = code.parity_check().left_mul_vec(&z);
    let w: Vec<u32> = y.iter().zip(x.iter()).map(|(&a, &b)| ctx.sub(a, b)).collect();
    code.message_cols().iter().map(|&j| w[j]).collect()
}

/// Zeros on the redundancy (pivot) columns, message symbols in order on the
/// rest. For a systematic code this is `(0^{n-k} | m)`.
pub(crate) fn embed_message(code: &LinearCode, m: &[u32]) -> CellWord {
    let mut w = vec![0u32; code.n()];
    for (&j, &sym) in code.message_cols().iter().zip(m.iter()) {
        w[j] = sym;
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MatrixOverField;
    use crate::ring::make_ctx;

    fn code_5_2_3() -> LinearCode {
        let ctx = make_ctx(3).unwrap();
        let h = MatrixOverField::from_rows(
            ctx,
            &[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 1, 1], vec![0, 0, 1, 0, 1]],
        )
        .unwrap();
        LinearCode::from_matrix(h, 3, true).unwrap()
    }

    #[test]
    fn pattern_validation() {
        assert!(PsaPattern::new(vec![0, 0], vec![1, 1]).is_err());
        assert!(PsaPattern::new(vec![2, 1], vec![1, 1]).is_err());
        assert!(PsaPattern::new(vec![0], vec![1, 1]).is_err());
        assert!(PsaPattern::new(vec![0, 4], vec![1, 2]).is_ok());
    }

    #[test]
    fn canonical_encode_of_the_two_cell_example() {
        let code = code_5_2_3();
        let pattern = PsaPattern::new(vec![0, 4], vec![1, 2]).unwrap();
        let y = smc_encode(&code, &[2, 1], &pattern).unwrap();
        assert_eq!(y, vec![1, 1, 0, 1, 2]);
        assert_eq!(y[0], 1);
        assert_eq!(y[4], 2);
        assert_eq!(smc_decode(&code, &y), vec![2, 1]);
    }

    #[test]
    fn alternative_valid_word_decodes_to_the_same_message() {
        // a different but valid shift produces (1,0,1,0,2); the decoder does
        // not care which shift the encoder used
        let code = code_5_2_3();
        assert_eq!(smc_decode(&code, &[1, 0, 1, 0, 2]), vec![2, 1]);
    }

    #[test]
    fn empty_pattern_is_the_identity_embedding() {
        let code = code_5_2_3();
        let y = smc_encode(&code, &[2, 1], &PsaPattern::empty()).unwrap();
        assert_eq!(y, vec![0, 0, 0, 2, 1]);
        assert_eq!(smc_decode(&code, &y), vec![2, 1]);
    }

    #[test]
    fn binary_repetition_masks_a_zero_stuck_cell() {
        let code = LinearCode::hamming(2, 2).unwrap(); // [3,1,3] repetition
        let pattern = PsaPattern::new(vec![0], vec![0]).unwrap();
        let y = smc_encode(&code, &[1], &pattern).unwrap();
        assert_eq!(y, vec![0, 0, 1]);
        assert_eq!(smc_decode(&code, &y), vec![1]);
    }

    #[test]
    fn capability_is_enforced() {
        let code = code_5_2_3();
        let pattern = PsaPattern::uniform(vec![0, 1, 2], 1).unwrap();
        assert!(matches!(
            smc_encode(&code, &[0, 0], &pattern),
            Err(Error::CapabilityExceeded(_))
        ));
    }

    #[test]
    fn exhaustive_masking_and_round_trip_at_tiny_scale() {
        let code = code_5_2_3();
        let q = 3u32;
        for m0 in 0..q {
            for m1 in 0..q {
                for a in 0..5usize {
                    for b in a + 1..5 {
                        for sa in 0..q {
                            for sb in 0..q {
                                let pattern =
                                    PsaPattern::new(vec![a, b], vec![sa, sb]).unwrap();
                                let y = smc_encode(&code, &[m0, m1], &pattern).unwrap();
                                assert_eq!(y[a], sa);
                                assert_eq!(y[b], sb);
                                assert_eq!(smc_decode(&code, &y), vec![m0, m1]);
                            }
                        }
                    }
                }
            }
        }
    }
}
