//! Cells with unreachable levels, by complementing a partially-stuck codec.
//!
//! A cell that cannot go above level s is, after the substitution
//! `v -> q - 1 - v`, a cell that cannot go below q - 1 - s. So any codec for
//! partially-stuck cells serves here: encode for the complemented levels,
//! store the complemented word, and complement again before decoding. The
//! redundancy carries over unchanged.

use crate::smc::PsaPattern;
use crate::{CellWord, Error, Result};

/// `v -> q - 1 - v`, its own inverse.
pub fn complement_word(q: u32, w: &[u32]) -> CellWord {
    w.iter().map(|&v| q - 1 - v).collect()
}

/// The partially-stuck pattern equivalent to unreachable maxima: level
/// `q - 1 - s` at each position. Positions with maximum q - 1 impose nothing
/// and are dropped.
pub fn dual_pattern(q: u32, maxima: &PsaPattern) -> Result<PsaPattern> {
    if let Some(&bad) = maxima.levels().iter().find(|&&s| s >= q) {
        return Err(Error::Parameter(format!("unreachable level {bad} outside [{q}]")));
    }
    let mut positions = Vec::new();
    let mut levels = Vec::new();
    for (pos, s) in maxima.iter() {
        if s < q - 1 {
            positions.push(pos);
            levels.push(q - 1 - s);
        }
    }
    PsaPattern::new(positions, levels)
}

/// Encodes through any partially-stuck encoder: the closure receives the
/// complemented (minimum-level) pattern and must return a word meeting it.
pub fn umc_encode<E>(q: u32, maxima: &PsaPattern, inner_encode: E) -> Result<CellWord>
where
    E: FnOnce(&PsaPattern) -> Result<CellWord>,
{
    let dual = dual_pattern(q, maxima)?;
    let y = inner_encode(&dual)?;
    Ok(complement_word(q, &y))
}

/// Decodes by undoing the complement and applying the inner decoder.
pub fn umc_decode<D, T>(q: u32, stored: &[u32], inner_decode: D) -> T
where
    D: FnOnce(&[u32]) -> T,
{
    inner_decode(&complement_word(q, stored))
}

/// Does the stored word respect every unreachable maximum?
pub fn word_within_maxima(y: &[u32], maxima: &PsaPattern) -> bool {
    maxima.iter().all(|(pos, s)| y[pos] <= s)
}

/// The single-shift construction wrapped for unreachable levels: masks up to
/// `q - 1` cells whose complemented levels are all 1, i.e. maxima q - 2 or
/// looser.
pub fn umc_c1_encode(q: u32, n: usize, m: &[u32], maxima: &PsaPattern) -> Result<CellWord> {
    umc_encode(q, maxima, |dual| crate::psmc::c1_encode(q, n, m, dual))
}

pub fn umc_c1_decode(q: u32, n: usize, stored: &[u32]) -> CellWord {
    umc_decode(q, stored, |y| crate::psmc::c1_decode(q, n, y))
}
