//! Masking any number of cells by chaining an inner stuck-at code over a
//! smaller alphabet.
//!
//! Shift the whole word by some z so that, among the stuck cells, few sit at
//! a value where adding `[Q]` could drop them below their level (below s or
//! above q - Q). Pigeonholing over z bounds that count by
//! `u~ = floor(sum(sigma_{s_i}) / q)` with `sigma_s = min(q, Q + s - 1)`.
//! Those few cells are then pinned by an `[n, k, d >= u~ + 1]_Q` stuck-at
//! code: a cell below its level gets exactly the deficit added, a wrapped
//! cell gets zero. Everything the inner code adds lies in `[Q]`, which the
//! remaining stuck cells absorb by construction.
//!
//! The stored word has n + 1 cells. The last one records z (or q - Q when
//! z = 0, which the decoder can tell apart because cell n - k - 1 carries
//! only an inner-code symbol). The first n - k - 1 cells hold inner-code
//! symbols in their low `[Q]` part, so their remaining capacity carries an
//! extra message m' with `floor(q / Q)` values per cell.
//!
//! The extra-message contribution on the first cells can wrap a shifted
//! stuck cell past zero, so candidates are checked, never trusted: the
//! encoder walks z upward over the shifts within the pigeonhole budget and,
//! for each, searches the inner code's whole solution space — every
//! admissible per-cell target and every left-kernel offset, canonical
//! solution first — accepting the first fully assembled word that masks.

use crate::codes::LinearCode;
use crate::linalg::{left_kernel_basis, solve_left};
use crate::psmc::matrix::word_masks;
use crate::ring::{mod_add, mod_sub};
use crate::smc::PsaPattern;
use crate::{CellWord, Error, Result};

/// How an encoder masked a pattern: the shift, the pinned cells, and the
/// inner-code contribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InnerMaskTrace {
    /// The word shift z.
    pub shift: u32,
    /// Positions handed to the inner stuck-at code.
    pub pinned: Vec<usize>,
    /// The inner-code coefficient vector.
    pub inner_shift: Vec<u32>,
    /// The added inner codeword multiple (length n).
    pub inner_word: Vec<u32>,
}

fn sigma(q: u32, bigq: u32, level: u32) -> u64 {
    (q as u64).min(bigq as u64 + level as u64 - 1)
}

/// Budget for the inner code: `floor(sum(sigma_{s_i}) / q)`.
fn inner_budget(q: u32, bigq: u32, pattern: &PsaPattern) -> u64 {
    let total: u64 = pattern.levels().iter().map(|&s| sigma(q, bigq, s)).sum();
    total / q as u64
}

fn validate(
    q: u32,
    qcode: &LinearCode,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<u64> {
    let bigq = qcode.q();
    let n = qcode.n();
    let k = qcode.k();
    if 2 * bigq as u64 > q as u64 {
        return Err(Error::Parameter(format!(
            "need 2Q <= q to separate the stored shift (Q = {bigq}, q = {q})"
        )));
    }
    if !qcode.is_systematic() {
        return Err(Error::Parameter("inner code must have a systematic parity check".into()));
    }
    pattern.check_fits(n + 1)?;
    let max_level = pattern.max_level();
    if pattern.u() > 0 {
        if pattern.levels().iter().any(|&s| s == 0) {
            return Err(Error::Parameter("partially-stuck levels start at 1".into()));
        }
        if max_level + 1 > bigq {
            return Err(Error::Parameter(format!(
                "inner alphabet Q = {bigq} too small for level {max_level}"
            )));
        }
        if bigq as u64 + max_level as u64 - 1 >= q as u64 {
            return Err(Error::Parameter(format!(
                "Q + s - 1 = {} leaves no safe window in [{q}]",
                bigq + max_level - 1
            )));
        }
    }
    if m.len() != k {
        return Err(Error::Parameter(format!("message length {} != k = {k}", m.len())));
    }
    if m_prime.len() != n - k - 1 {
        return Err(Error::Parameter(format!(
            "extra message length {} != n - k - 1 = {}",
            m_prime.len(),
            n - k - 1
        )));
    }
    let mp_space = q / bigq;
    if let Some(&bad) = m_prime.iter().find(|&&v| v >= mp_space) {
        return Err(Error::Parameter(format!("extra symbol {bad} outside [{mp_space}]")));
    }
    if let Some(&bad) = m.iter().find(|&&v| v >= q) {
        return Err(Error::Parameter(format!("message symbol {bad} outside [{q}]")));
    }
    let budget = inner_budget(q, bigq, pattern);
    if budget + 1 > qcode.d_claimed() as u64 {
        return Err(Error::CapabilityExceeded(format!(
            "inner budget {budget} needs distance >= {}, code claims {}",
            budget + 1,
            qcode.d_claimed()
        )));
    }
    Ok(budget)
}

fn engine_encode(
    q: u32,
    qcode: &LinearCode,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<(CellWord, InnerMaskTrace)> {
    let budget = validate(q, qcode, m, m_prime, pattern)?;
    let bigq = qcode.q();
    let n = qcode.n();
    let k = qcode.k();
    let r = n - k;
    let safe_hi = q - bigq;

    let mut w = vec![0u32; n + 1];
    w[r..r + k].copy_from_slice(m);

    // the inner code sees this much already added to cell i besides its own
    // contribution
    let extra_at = |i: usize| if i < r - 1 { bigq * m_prime[i] } else { 0 };

    for z in 0..q {
        // the pigeonhole budget counts cells outside the [s, q - Q] window
        let window_unsafe = pattern
            .iter()
            .filter(|&(pos, s)| pos < n && {
                let v = mod_add(q, w[pos], z);
                v < s || v > safe_hi
            })
            .count() as u64;
        if window_unsafe > budget {
            continue;
        }

        // cells the inner code must pin: some value in [Q] would drop them
        // below their level (for the leading cells that includes the
        // extra-message offset already sitting there)
        let mut pinned: Vec<usize> = Vec::new();
        let mut target_sets: Vec<Vec<u32>> = Vec::new();
        for (pos, s) in pattern.iter() {
            if pos == n {
                continue; // the shift cell is rewritten below and never gets [Q]
            }
            let v = mod_add(q, w[pos], z);
            let ok = |c: u32| mod_add(q, mod_add(q, v, c), extra_at(pos)) >= s;
            if (0..bigq).all(ok) {
                continue;
            }
            // nonempty: a window of Q consecutive values meets at most s < Q
            // forbidden residues
            target_sets.push((0..bigq).filter(|&c| ok(c)).collect());
            pinned.push(pos);
        }

        let sub = qcode.parity_check().submatrix_cols(&pinned);
        let kernel = left_kernel_basis(&sub);
        let ctx = qcode.ctx();

        let mut choice = vec![0usize; pinned.len()];
        'targets: loop {
            let targets: Vec<u32> =
                choice.iter().zip(&target_sets).map(|(&c, t)| t[c]).collect();
            if let Some(particular) = solve_left(&sub, &targets) {
                let mut combo = vec![0u32; kernel.len()];
                loop {
                    let mut inner_shift = particular.clone();
                    for (coef, basis_vec) in combo.iter().zip(&kernel) {
                        if *coef != 0 {
                            for (zi, bi) in inner_shift.iter_mut().zip(basis_vec) {
                                *zi = ctx.add(*zi, ctx.mul(*coef, *bi));
                            }
                        }
                    }
                    let inner_word = qcode.parity_check().left_mul_vec(&inner_shift);
                    let mut y: CellWord = w.iter().map(|&x| mod_add(q, x, z)).collect();
                    y[n] = if z > 0 { z } else { q - bigq };
                    for i in 0..n {
                        y[i] = mod_add(q, y[i], inner_word[i]);
                    }
                    for i in 0..r - 1 {
                        y[i] = mod_add(q, y[i], bigq * m_prime[i]);
                    }
                    if word_masks(&y, pattern) {
                        return Ok((
                            y,
                            InnerMaskTrace { shift: z, pinned, inner_shift, inner_word },
                        ));
                    }
                    if !crate::oracle::advance_word(&mut combo, bigq) {
                        break;
                    }
                }
            }
            // next combination of admissible targets
            for (i, c) in choice.iter_mut().enumerate() {
                *c += 1;
                if *c < target_sets[i].len() {
                    continue 'targets;
                }
                *c = 0;
            }
            break;
        }
    }
    Err(Error::UnmaskablePattern)
}

fn engine_decode(q: u32, qcode: &LinearCode, y: &[u32]) -> (CellWord, CellWord) {
    let bigq = qcode.q();
    let n = qcode.n();
    let k = qcode.k();
    let r = n - k;
    assert_eq!(y.len(), n + 1);

    // cell n - k - 1 carries only an inner symbol; if the difference to the
    // shift cell exceeds Q - 1 the stored shift must have been zero
    let z = if mod_sub(q, y[r - 1], y[n]) <= bigq - 1 { y[n] } else { 0 };
    let shifted: Vec<u32> = y.iter().map(|&x| mod_sub(q, x, z)).collect();
    let m_prime: CellWord = shifted[..r - 1].iter().map(|&v| v / bigq).collect();
    let mut t: Vec<u32> = shifted[..r - 1].iter().map(|&v| v % bigq).collect();
    t.push(shifted[r - 1] % bigq);
    let inner = qcode.parity_check().left_mul_vec(&t);
    let m: CellWord =
        (0..k).map(|i| mod_sub(q, shifted[r + i], inner[r + i])).collect();
    (m, m_prime)
}

/// Masks any u partially-stuck-at-1 cells in n + 1 cells, backed by a binary
/// `[n, k, d >= floor(2u/q) + 1]` stuck-at code. Needs q >= 4.
pub fn c3_encode(
    q: u32,
    bincode: &LinearCode,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<CellWord> {
    Ok(c3_encode_with_trace(q, bincode, m, m_prime, pattern)?.0)
}

/// [`c3_encode`] plus the masking trace, for inspection and golden tests.
pub fn c3_encode_with_trace(
    q: u32,
    bincode: &LinearCode,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<(CellWord, InnerMaskTrace)> {
    if bincode.q() != 2 {
        return Err(Error::Parameter("the inner code must be binary".into()));
    }
    if pattern.levels().iter().any(|&s| s != 1) {
        return Err(Error::Parameter("levels must all be 1".into()));
    }
    engine_encode(q, bincode, m, m_prime, pattern)
}

pub fn c3_decode(q: u32, bincode: &LinearCode, y: &[u32]) -> (CellWord, CellWord) {
    engine_decode(q, bincode, y)
}

/// Same-level generalization: u cells partially stuck at s, inner code over
/// F_Q with Q >= s + 1 a prime power and 2Q <= q.
pub fn gen3s_encode(
    q: u32,
    qcode: &LinearCode,
    s: u32,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<CellWord> {
    if pattern.levels().iter().any(|&l| l != s) {
        return Err(Error::Parameter(format!("levels must all equal {s}")));
    }
    Ok(engine_encode(q, qcode, m, m_prime, pattern)?.0)
}

pub fn gen3s_decode(q: u32, qcode: &LinearCode, y: &[u32]) -> (CellWord, CellWord) {
    engine_decode(q, qcode, y)
}

/// Mixed-level generalization; the per-level weights `sigma_s = Q + s - 1`
/// set the inner-code budget.
pub fn gen3_encode(
    q: u32,
    qcode: &LinearCode,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<CellWord> {
    Ok(engine_encode(q, qcode, m, m_prime, pattern)?.0)
}

/// [`gen3_encode`] plus the masking trace.
pub fn gen3_encode_with_trace(
    q: u32,
    qcode: &LinearCode,
    m: &[u32],
    m_prime: &[u32],
    pattern: &PsaPattern,
) -> Result<(CellWord, InnerMaskTrace)> {
    engine_encode(q, qcode, m, m_prime, pattern)
}

pub fn gen3_decode(q: u32, qcode: &LinearCode, y: &[u32]) -> (CellWord, CellWord) {
    engine_decode(q, qcode, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::MatrixOverField;
    use crate::ring::make_ctx;

    fn hamming_7_4() -> LinearCode {
        LinearCode::hamming(2, 3).unwrap()
    }

    /// The printed 4x15 binary parity-check matrix used by the worked
    /// 16-cell example (kept verbatim, including its duplicated column 4).
    fn printed_15_11() -> LinearCode {
        let ctx = make_ctx(2).unwrap();
        let h = MatrixOverField::from_rows(
            ctx,
            &[
                vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1],
                vec![0, 1, 0, 0, 0, 0, 1, 1, 1, 0, 0, 0, 1, 1, 1],
                vec![0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 1, 0, 0, 1],
                vec![0, 0, 0, 1, 0, 1, 1, 0, 1, 1, 0, 1, 0, 1, 1],
            ],
        )
        .unwrap();
        LinearCode::from_matrix(h, 3, false).unwrap()
    }

    #[test]
    fn golden_sixteen_cell_trace() {
        let code = printed_15_11();
        let m = vec![0, 3, 2, 1, 2, 2, 3, 1, 3, 2, 2];
        let m_prime = vec![1, 0, 1];
        let pattern = PsaPattern::uniform(vec![1, 4, 8, 12, 15], 1).unwrap();
        let (y, trace) = c3_encode_with_trace(4, &code, &m, &m_prime, &pattern).unwrap();
        assert_eq!(trace.shift, 1);
        assert_eq!(trace.pinned, vec![8, 12]);
        assert_eq!(trace.inner_shift, vec![1, 0, 0, 0]);
        assert_eq!(
            trace.inner_word,
            vec![1, 0, 0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1]
        );
        assert_eq!(y, vec![0, 1, 3, 1, 1, 0, 3, 2, 3, 0, 1, 3, 1, 0, 0, 1]);
        assert!(word_masks(&y, &pattern));
        let (dm, dmp) = c3_decode(4, &code, &y);
        assert_eq!(dm, m);
        assert_eq!(dmp, m_prime);
    }

    #[test]
    fn no_defects_picks_zero_shift() {
        let code = hamming_7_4();
        let m = vec![1, 2, 3, 0];
        let m_prime = vec![1, 0];
        let (y, trace) =
            c3_encode_with_trace(4, &code, &m, &m_prime, &PsaPattern::empty()).unwrap();
        assert_eq!(trace.shift, 0);
        assert!(trace.pinned.is_empty());
        assert_eq!(y[7], 2); // q - Q records the zero shift
        assert_eq!(y[..2], [2, 0]); // Q * m'
        let (dm, dmp) = c3_decode(4, &code, &y);
        assert_eq!(dm, m);
        assert_eq!(dmp, m_prime);
    }

    #[test]
    fn zero_shift_branch_in_the_decoder() {
        let code = hamming_7_4();
        let q = 4;
        // all-zero message keeps every cell clear of the wrap values, so the
        // encoder stays at z = 0 and the decoder must take the z = 0 branch
        let y = c3_encode(q, &code, &[0; 4], &[0, 0], &PsaPattern::empty()).unwrap();
        assert_eq!(y[7], q - 2);
        let diff = mod_sub(q, y[2], y[7]);
        assert!(diff >= 2);
        let (dm, dmp) = c3_decode(q, &code, &y);
        assert_eq!(dm, vec![0; 4]);
        assert_eq!(dmp, vec![0, 0]);
    }

    #[test]
    fn wrap_prone_first_cells_still_mask() {
        // a stuck cell among the extra-message cells: the shifted value plus
        // Q * m' can wrap past zero, which the candidate check must catch
        let code = hamming_7_4();
        let pattern = PsaPattern::uniform(vec![0, 3, 4], 1).unwrap();
        let m = vec![3, 3, 0, 0];
        let m_prime = vec![1, 0];
        let y = c3_encode(4, &code, &m, &m_prime, &pattern).unwrap();
        assert!(word_masks(&y, &pattern));
        let (dm, dmp) = c3_decode(4, &code, &y);
        assert_eq!(dm, m);
        assert_eq!(dmp, m_prime);
    }

    #[test]
    fn capability_check_uses_the_inner_distance() {
        let code = hamming_7_4(); // d = 3, so the budget must stay <= 2
        // q = 4, s = 1: budget floor(2u/4) hits 3 at u = 6
        let pattern = PsaPattern::uniform(vec![0, 1, 2, 3, 4, 5], 1).unwrap();
        assert!(matches!(
            c3_encode(4, &code, &[0; 4], &[0, 0], &pattern),
            Err(Error::CapabilityExceeded(_))
        ));
    }

    #[test]
    fn rejects_binary_alphabets_without_room() {
        let code = hamming_7_4();
        assert!(matches!(
            c3_encode(3, &code, &[0; 4], &[0, 0], &PsaPattern::empty()),
            Err(Error::Parameter(_))
        ));
    }

    #[test]
    fn gen3_reduces_to_c3_byte_for_byte() {
        let code = hamming_7_4();
        let q = 5u32;
        let mut cases = 0;
        for m0 in 0..q {
            for pos in 0..8usize {
                let pattern = PsaPattern::uniform(vec![pos], 1).unwrap();
                let m = vec![m0, 1, 4, 2];
                let m_prime = vec![1, 0];
                let a = c3_encode(q, &code, &m, &m_prime, &pattern).unwrap();
                let b = gen3_encode(q, &code, &m, &m_prime, &pattern).unwrap();
                assert_eq!(a, b);
                cases += 1;
            }
        }
        assert_eq!(cases, 40);
    }

    #[test]
    fn gen3_mixed_levels_mask_and_round_trip() {
        // q = 8, Q = 4 inner code [5,3,3]: budget floor((4+5+6)/8) = 1 for
        // levels (1,2,3)
        let inner = LinearCode::hamming(4, 2).unwrap().shorten(0).unwrap(); // [5,3,3]_4
        let q = 8u32;
        let pattern = PsaPattern::new(vec![0, 2, 5], vec![1, 2, 3]).unwrap();
        let m = vec![7, 0, 5];
        let m_prime = vec![1];
        let y = gen3_encode(q, &inner, &m, &m_prime, &pattern).unwrap();
        assert!(word_masks(&y, &pattern));
        let (dm, dmp) = gen3_decode(q, &inner, &y);
        assert_eq!(dm, m);
        assert_eq!(dmp, m_prime);
    }

    #[test]
    fn gen3s_same_level_exhaustive_slice() {
        let inner = LinearCode::hamming(4, 2).unwrap(); // [5,3,3]_4
        let q = 8u32;
        let s = 2u32;
        // budget floor((4+2-1)u/8) <= 2 allows u up to 4
        for a in 0..6usize {
            for b in a + 1..6 {
                let pattern = PsaPattern::uniform(vec![a, b], s).unwrap();
                let m = vec![3, 6, 1];
                let m_prime = vec![0];
                let y = gen3s_encode(q, &inner, s, &m, &m_prime, &pattern).unwrap();
                assert!(word_masks(&y, &pattern), "pattern {a},{b}");
                let (dm, dmp) = gen3s_decode(q, &inner, &y);
                assert_eq!(dm, m);
                assert_eq!(dmp, m_prime);
            }
        }
    }
}
