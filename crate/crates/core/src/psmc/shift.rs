//! Masking by a scalar shift of the whole word.
//!
//! Store `(w + z * 1_n) mod q` with `w = (0 | m)` and read `z` back from
//! cell 0. Plain integer arithmetic mod q throughout; q does not have to be
//! a prime power.
//!
//! With u stuck-at-1 cells and u < q some shift avoids them all, costing one
//! redundancy symbol. The improved variants observe that a valid shift
//! exists in a small window `[sum(s_i) + 1]`, so the remaining values of the
//! redundancy cell can carry an extra message symbol `m'`, cutting the
//! redundancy to `1 - log_q floor(q / (sum(s_i) + 1))`.

use crate::ring::{mod_add, mod_sub};
use crate::smc::PsaPattern;
use crate::{CellWord, Error, Result};

fn check_inputs(q: u32, n: usize, m: &[u32], pattern: &PsaPattern) -> Result<()> {
    if q < 2 {
        return Err(Error::InvalidAlphabet(q));
    }
    if n == 0 {
        return Err(Error::Parameter("word length must be positive".into()));
    }
    if m.len() != n - 1 {
        return Err(Error::Parameter(format!("message length {} != n - 1 = {}", m.len(), n - 1)));
    }
    if let Some(&bad) = m.iter().find(|&&v| v >= q) {
        return Err(Error::Parameter(format!("message symbol {bad} outside [{q}]")));
    }
    pattern.check_fits(n)?;
    if let Some(&bad) = pattern.levels().iter().find(|&&s| s == 0 || s >= q) {
        return Err(Error::Parameter(format!("partially-stuck level {bad} outside 1..{q}")));
    }
    Ok(())
}

/// Masks up to u < q partially-stuck-at-1 cells with one redundancy symbol.
pub fn c1_encode(q: u32, n: usize, m: &[u32], pattern: &PsaPattern) -> Result<CellWord> {
    check_inputs(q, n, m, pattern)?;
    if pattern.levels().iter().any(|&s| s != 1) {
        return Err(Error::Parameter("levels must all be 1".into()));
    }
    if pattern.u() as u64 >= q as u64 {
        return Err(Error::CapabilityExceeded(format!("u = {} but q = {q}", pattern.u())));
    }
    let mut w = Vec::with_capacity(n);
    w.push(0);
    w.extend_from_slice(m);
    // smallest value the stuck cells avoid
    let v = (0..q)
        .find(|&v| pattern.iter().all(|(pos, _)| w[pos] != v))
        .expect("u < q leaves a free value");
    let z = (q - v) % q;
    Ok(w.iter().map(|&x| mod_add(q, x, z)).collect())
}

pub fn c1_decode(q: u32, n: usize, y: &[u32]) -> CellWord {
    assert_eq!(y.len(), n);
    let z = y[0];
    y[1..].iter().map(|&x| mod_sub(q, x, z)).collect()
}

/// Like [`c1_encode`] but stores an extra symbol `m' < floor(q / (u + 1))`
/// in the redundancy cell.
pub fn c1b_encode(
    q: u32,
    n: usize,
    m: &[u32],
    m_prime: u32,
    pattern: &PsaPattern,
) -> Result<CellWord> {
    check_inputs(q, n, m, pattern)?;
    if pattern.levels().iter().any(|&s| s != 1) {
        return Err(Error::Parameter("levels must all be 1".into()));
    }
    if pattern.u() as u64 >= q as u64 {
        return Err(Error::CapabilityExceeded(format!("u = {} but q = {q}", pattern.u())));
    }
    shift_encode(q, n, m, m_prime, pattern)
}

/// Decodes both messages; the decoder must know the defect count `u` the
/// encoder saw.
pub fn c1b_decode(q: u32, n: usize, u: usize, y: &[u32]) -> (CellWord, u32) {
    shift_decode(q, n, u as u32 + 1, y)
}

/// Arbitrary levels with `sum(s_i) < q`; extra symbol
/// `m' < floor(q / (sum(s_i) + 1))`.
pub fn gen1_encode(
    q: u32,
    n: usize,
    m: &[u32],
    m_prime: u32,
    pattern: &PsaPattern,
) -> Result<CellWord> {
    check_inputs(q, n, m, pattern)?;
    if pattern.level_sum() >= q as u64 {
        return Err(Error::CapabilityExceeded(format!(
            "levels sum to {} but q = {q}",
            pattern.level_sum()
        )));
    }
    shift_encode(q, n, m, m_prime, pattern)
}

/// Decodes both messages given the level sum the encoder saw.
pub fn gen1_decode(q: u32, n: usize, level_sum: u32, y: &[u32]) -> (CellWord, u32) {
    shift_decode(q, n, level_sum + 1, y)
}

/// Shared encoder. `window = sum(s_i) + 1` values are reserved for the
/// masking offset v; the rest of the redundancy cell carries `m'`. The
/// offset is the smallest v in the window for which every stuck cell lands
/// on or above its level after the shift `z = (q - v - m' * window) mod q`.
fn shift_encode(
    q: u32,
    n: usize,
    m: &[u32],
    m_prime: u32,
    pattern: &PsaPattern,
) -> Result<CellWord> {
    let window = pattern.level_sum() as u32 + 1;
    let mp_space = q / window;
    if m_prime >= mp_space {
        return Err(Error::Parameter(format!(
            "extra symbol {m_prime} outside [{mp_space}] for window {window}"
        )));
    }
    let mut w = Vec::with_capacity(n);
    w.push(0);
    w.extend_from_slice(m);
    let base = m_prime * window;
    let v = (0..window)
        .find(|&v| {
            let z = (q - v - base) % q;
            pattern.iter().all(|(pos, s)| mod_add(q, w[pos], z) >= s)
        })
        .ok_or(Error::Internal("no masking offset despite level sum < q"))?;
    let z = (q - v - base) % q;
    Ok(w.iter().map(|&x| mod_add(q, x, z)).collect())
}

fn shift_decode(q: u32, n: usize, window: u32, y: &[u32]) -> (CellWord, u32) {
    assert_eq!(y.len(), n);
    let z = y[0];
    let m_prime = if z == 0 {
        0 // v = 0, m' = 0 is the only way to reach shift 0
    } else {
        let t = q - z;
        (t - t % window) / window
    };
    let m = y[1..].iter().map(|&x| mod_sub(q, x, z)).collect();
    (m, m_prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn stuck1(positions: &[usize]) -> PsaPattern {
        PsaPattern::uniform(positions.to_vec(), 1).unwrap()
    }

    #[test]
    fn golden_two_cell_trace() {
        let pattern = stuck1(&[1, 2]);
        let y = c1_encode(3, 5, &[2, 0, 1, 0], &pattern).unwrap();
        assert_eq!(y, vec![2, 1, 2, 0, 2]);
        assert_eq!(c1_decode(3, 5, &y), vec![2, 0, 1, 0]);
    }

    #[test]
    fn no_defects_means_no_shift() {
        let y = c1_encode(3, 5, &[2, 0, 1, 0], &PsaPattern::empty()).unwrap();
        assert_eq!(y, vec![0, 2, 0, 1, 0]);
    }

    #[test]
    fn binary_single_cell() {
        let pattern = stuck1(&[1]);
        let y = c1_encode(2, 3, &[0, 1], &pattern).unwrap();
        assert_eq!(y, vec![1, 1, 0]);
        assert_eq!(c1_decode(2, 3, &y), vec![0, 1]);
    }

    #[test]
    fn capability_is_u_strictly_below_q() {
        let pattern = stuck1(&[0, 1]);
        assert!(matches!(
            c1_encode(2, 3, &[0, 0], &pattern),
            Err(Error::CapabilityExceeded(_))
        ));
    }

    #[test]
    fn c1b_hand_trace_q6() {
        let pattern = stuck1(&[1, 2]);
        let y = c1b_encode(6, 3, &[4, 5], 1, &pattern).unwrap();
        assert_eq!(y, vec![3, 1, 2]);
        assert_eq!(c1b_decode(6, 3, 2, &y), (vec![4, 5], 1));
    }

    #[test]
    fn c1b_zero_shift_corner() {
        // v = 0 and m' = 0 give shift 0; the decoder's z = 0 special case
        let y = c1b_encode(5, 3, &[3, 4], 0, &PsaPattern::empty()).unwrap();
        assert_eq!(y, vec![0, 3, 4]);
        assert_eq!(c1b_decode(5, 3, 0, &y), (vec![3, 4], 0));
    }

    #[test]
    fn c1b_rejects_out_of_range_extra_symbol() {
        let pattern = stuck1(&[1, 2]);
        // floor(6/3) = 2, so m' = 2 is out of range
        assert!(matches!(
            c1b_encode(6, 3, &[4, 5], 2, &pattern),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn gen1_hand_trace_q5() {
        let pattern = PsaPattern::new(vec![1, 2], vec![1, 2]).unwrap();
        let y = gen1_encode(5, 3, &[0, 3], 0, &pattern).unwrap();
        assert_eq!(y, vec![4, 4, 2]);
        assert!(y[1] >= 1 && y[2] >= 2);
        assert_eq!(gen1_decode(5, 3, 3, &y), (vec![0, 3], 0));
    }

    #[test]
    fn gen1_rejects_level_sum_at_q() {
        let pattern = PsaPattern::new(vec![0, 1], vec![2, 3]).unwrap();
        assert!(matches!(
            gen1_encode(5, 3, &[0, 0], 0, &pattern),
            Err(Error::CapabilityExceeded(_))
        ));
    }

    #[test]
    fn gen1_with_unit_levels_is_byte_identical_to_c1b() {
        let q = 5u32;
        let n = 4usize;
        for u in 0..3usize {
            let positions: Vec<usize> = (1..=u).collect();
            let pattern = PsaPattern::uniform(positions, 1).unwrap();
            let mp_space = q / (u as u32 + 1);
            let mut m = vec![0u32; n - 1];
            loop {
                for mp in 0..mp_space {
                    let a = c1b_encode(q, n, &m, mp, &pattern).unwrap();
                    let b = gen1_encode(q, n, &m, mp, &pattern).unwrap();
                    assert_eq!(a, b);
                }
                if !crate::oracle::advance_word(&mut m, q) {
                    break;
                }
            }
        }
    }
}
