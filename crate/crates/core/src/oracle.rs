//! Brute-force ground truth at desk scale.
//!
//! [`verify_exhaustive`] sweeps a codec over every message and every
//! admissible defect pattern up to a given size, checking masking and
//! round-trip on each case. [`max_m_exhaustive`] finds, by exact
//! backtracking over all of `[q]^n`, the largest number of decoder classes
//! that can each serve every u-subset of positions at level s; it is the
//! reference point the partition bound and the constructions are compared
//! against.

use serde::Serialize;

use crate::codes::LinearCode;
use crate::psmc::{
    c1_decode, c1_encode, c1b_decode, c1b_encode, c2_decode, c2_encode, c3_decode, c3_encode,
    gen1_decode, gen1_encode, word_masks,
};
use crate::smc::{smc_decode, smc_encode, PsaPattern};
use crate::umc::{umc_c1_decode, umc_c1_encode, word_within_maxima};
use crate::{Error, Result};

/// Case-count guard for [`verify_exhaustive`].
pub const CASE_GUARD: u64 = 10_000_000;

/// Word-space guard for [`max_m_exhaustive`]: q^n at most this.
pub const MAX_M_GUARD: u64 = 16;

/// Which codec to sweep, with everything the sweep needs to know.
#[derive(Debug, Clone)]
pub enum CodecSpec {
    C1 { q: u32, n: usize },
    C1b { q: u32, n: usize },
    Gen1 { q: u32, n: usize },
    C2 { code: LinearCode, s: u32 },
    C3 { q: u32, bincode: LinearCode },
    Smc { code: LinearCode },
    UmcC1 { q: u32, n: usize },
}

impl CodecSpec {
    pub fn name(&self) -> &'static str {
        match self {
            CodecSpec::C1 { .. } => "c1",
            CodecSpec::C1b { .. } => "c1b",
            CodecSpec::Gen1 { .. } => "gen1",
            CodecSpec::C2 { .. } => "c2",
            CodecSpec::C3 { .. } => "c3",
            CodecSpec::Smc { .. } => "smc",
            CodecSpec::UmcC1 { .. } => "umc-c1",
        }
    }

    fn q(&self) -> u32 {
        match self {
            CodecSpec::C1 { q, .. }
            | CodecSpec::C1b { q, .. }
            | CodecSpec::Gen1 { q, .. }
            | CodecSpec::C3 { q, .. }
            | CodecSpec::UmcC1 { q, .. } => *q,
            CodecSpec::C2 { code, .. } | CodecSpec::Smc { code } => code.q(),
        }
    }

    /// Length of the stored word.
    fn word_len(&self) -> usize {
        match self {
            CodecSpec::C1 { n, .. } | CodecSpec::C1b { n, .. } | CodecSpec::Gen1 { n, .. } => *n,
            CodecSpec::C2 { code, .. } | CodecSpec::Smc { code } => code.n(),
            CodecSpec::C3 { bincode, .. } => bincode.n() + 1,
            CodecSpec::UmcC1 { n, .. } => *n,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema: u32,
    pub codec: String,
    pub cases: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

/// All defect patterns the codec family admits at each size `0..=u_max`.
fn level_assignments(spec: &CodecSpec, u: usize) -> Vec<Vec<u32>> {
    let q = spec.q();
    match spec {
        CodecSpec::C1 { .. } | CodecSpec::C1b { .. } | CodecSpec::C3 { .. } => {
            vec![vec![1; u]]
        }
        CodecSpec::UmcC1 { .. } => vec![vec![q - 2; u]], // maxima dual to level 1
        CodecSpec::C2 { s, .. } => vec![vec![*s; u]],
        CodecSpec::Gen1 { .. } => {
            // every profile with levels in 1..q and sum < q
            let mut out = Vec::new();
            let mut cur = vec![1u32; u];
            loop {
                if cur.iter().map(|&s| s as u64).sum::<u64>() < q as u64 {
                    out.push(cur.clone());
                }
                let mut i = 0;
                loop {
                    if i == u {
                        return out;
                    }
                    cur[i] += 1;
                    if cur[i] < q {
                        break;
                    }
                    cur[i] = 1;
                    i += 1;
                }
                if u == 0 {
                    return out;
                }
            }
        }
        CodecSpec::Smc { code } => {
            // exact stuck values in [q]
            let q = code.q();
            let mut out = Vec::new();
            let mut cur = vec![0u32; u];
            loop {
                out.push(cur.clone());
                if !advance_word(&mut cur, q) {
                    return out;
                }
            }
        }
    }
}

fn subsets(n: usize, u: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(u);
    fn rec(start: usize, n: usize, u: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == u {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, u, cur, out);
            cur.pop();
        }
    }
    rec(0, n, u, &mut cur, &mut out);
    out
}

/// Odometer increment over `[q]^len`; false once exhausted.
pub fn advance_word(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

struct CaseOutcome {
    ok: bool,
    detail: String,
}

fn run_case(spec: &CodecSpec, m: &[u32], extra: &[u32], pattern: &PsaPattern) -> CaseOutcome {
    let fail = |what: &str| CaseOutcome {
        ok: false,
        detail: format!(
            "{what}: m={m:?} extra={extra:?} positions={:?} levels={:?}",
            pattern.positions(),
            pattern.levels()
        ),
    };
    let ok = CaseOutcome { ok: true, detail: String::new() };
    match spec {
        CodecSpec::C1 { q, n } => match c1_encode(*q, *n, m, pattern) {
            Ok(y) => {
                if !word_masks(&y, pattern) {
                    return fail("mask violation");
                }
                if c1_decode(*q, *n, &y) != m {
                    return fail("round-trip failure");
                }
                ok
            }
            Err(e) => fail(&format!("encode error {e}")),
        },
        CodecSpec::C1b { q, n } => {
            let mp = extra[0];
            match c1b_encode(*q, *n, m, mp, pattern) {
                Ok(y) => {
                    if !word_masks(&y, pattern) {
                        return fail("mask violation");
                    }
                    if c1b_decode(*q, *n, pattern.u(), &y) != (m.to_vec(), mp) {
                        return fail("round-trip failure");
                    }
                    ok
                }
                Err(e) => fail(&format!("encode error {e}")),
            }
        }
        CodecSpec::Gen1 { q, n } => {
            let mp = extra[0];
            match gen1_encode(*q, *n, m, mp, pattern) {
                Ok(y) => {
                    if !word_masks(&y, pattern) {
                        return fail("mask violation");
                    }
                    let sum = pattern.level_sum() as u32;
                    if gen1_decode(*q, *n, sum, &y) != (m.to_vec(), mp) {
                        return fail("round-trip failure");
                    }
                    ok
                }
                Err(e) => fail(&format!("encode error {e}")),
            }
        }
        CodecSpec::C2 { code, .. } => match c2_encode(code, m, pattern) {
            Ok(y) => {
                if !word_masks(&y, pattern) {
                    return fail("mask violation");
                }
                if c2_decode(code, &y) != m {
                    return fail("round-trip failure");
                }
                ok
            }
            Err(e) => fail(&format!("encode error {e}")),
        },
        CodecSpec::C3 { q, bincode } => match c3_encode(*q, bincode, m, extra, pattern) {
            Ok(y) => {
                if !word_masks(&y, pattern) {
                    return fail("mask violation");
                }
                if c3_decode(*q, bincode, &y) != (m.to_vec(), extra.to_vec()) {
                    return fail("round-trip failure");
                }
                ok
            }
            Err(e) => fail(&format!("encode error {e}")),
        },
        CodecSpec::Smc { code } => match smc_encode(code, m, pattern) {
            Ok(y) => {
                let exact = pattern.iter().all(|(pos, s)| y[pos] == s);
                if !exact {
                    return fail("stuck value mismatch");
                }
                if smc_decode(code, &y) != m {
                    return fail("round-trip failure");
                }
                ok
            }
            Err(e) => fail(&format!("encode error {e}")),
        },
        CodecSpec::UmcC1 { q, n } => match umc_c1_encode(*q, *n, m, pattern) {
            Ok(y) => {
                if !word_within_maxima(&y, pattern) {
                    return fail("maximum violation");
                }
                if umc_c1_decode(*q, *n, &y) != m {
                    return fail("round-trip failure");
                }
                ok
            }
            Err(e) => fail(&format!("encode error {e}")),
        },
    }
}

/// Sweeps every message times every admissible pattern of size `0..=u_max`,
/// checking masking and round-trip. Zero failures is a pass.
pub fn verify_exhaustive(spec: &CodecSpec, u_max: usize) -> Result<VerifyReport> {
    let q = spec.q();
    let word_len = spec.word_len();

    // main-message space
    let (main_len, main_q) = match spec {
        CodecSpec::C1 { n, .. } | CodecSpec::C1b { n, .. } | CodecSpec::Gen1 { n, .. } => {
            (*n - 1, q)
        }
        CodecSpec::C2 { code, .. } | CodecSpec::Smc { code } => (code.k(), q),
        CodecSpec::C3 { bincode, .. } => (bincode.k(), q),
        CodecSpec::UmcC1 { n, .. } => (*n - 1, q),
    };
    let main_count = (main_q as u64).checked_pow(main_len as u32).ok_or_else(|| {
        Error::TooLarge("message space overflows the case counter".into())
    })?;

    // patterns per size, with their level assignments and extra-message space
    let mut planned: u64 = 0;
    let mut plan: Vec<(Vec<usize>, Vec<u32>)> = Vec::new();
    for u in 0..=u_max {
        let assignments = level_assignments(spec, u);
        for subset in subsets(word_len, u) {
            for levels in &assignments {
                let extra_space = extra_space(spec, levels);
                let block = main_count
                    .checked_mul(extra_space)
                    .ok_or_else(|| Error::TooLarge("case counter overflow".into()))?;
                planned = planned
                    .checked_add(block)
                    .ok_or_else(|| Error::TooLarge("case counter overflow".into()))?;
                plan.push((subset.clone(), levels.clone()));
            }
        }
    }
    if planned > CASE_GUARD {
        return Err(Error::TooLarge(format!("{planned} cases exceed the {CASE_GUARD} guard")));
    }

    let mut cases = 0u64;
    let mut failures = 0u64;
    let mut first: Option<String> = None;
    for (subset, levels) in plan {
        let pattern = PsaPattern::new(subset, levels.clone())?;
        let mut m = vec![0u32; main_len];
        loop {
            let extra_total = extra_space(spec, &levels);
            for e in 0..extra_total {
                let extra = extra_digits(spec, e, &levels);
                let outcome = run_case(spec, &m, &extra, &pattern);
                cases += 1;
                if !outcome.ok {
                    failures += 1;
                    first.get_or_insert(outcome.detail);
                }
            }
            if !advance_word(&mut m, main_q) {
                break;
            }
        }
    }
    Ok(VerifyReport {
        schema: 1,
        codec: spec.name().to_string(),
        cases,
        failures,
        first_counterexample: first,
    })
}

fn extra_space(spec: &CodecSpec, levels: &[u32]) -> u64 {
    match spec {
        CodecSpec::C1b { q, .. } => (*q as u64) / (levels.len() as u64 + 1),
        CodecSpec::Gen1 { q, .. } => {
            let sum: u64 = levels.iter().map(|&s| s as u64).sum();
            (*q as u64) / (sum + 1)
        }
        CodecSpec::C3 { q, bincode } => {
            let per_cell = (*q / 2) as u64;
            per_cell.pow((bincode.n() - bincode.k() - 1) as u32)
        }
        _ => 1,
    }
}

fn extra_digits(spec: &CodecSpec, index: u64, _levels: &[u32]) -> Vec<u32> {
    match spec {
        CodecSpec::C1b { .. } | CodecSpec::Gen1 { .. } => vec![index as u32],
        CodecSpec::C3 { q, bincode } => {
            let per_cell = (*q / 2) as u64;
            let len = bincode.n() - bincode.k() - 1;
            let mut out = vec![0u32; len];
            let mut v = index;
            for d in out.iter_mut() {
                *d = (v % per_cell) as u32;
                v /= per_cell;
            }
            out
        }
        _ => Vec::new(),
    }
}

// ---------------------------------------------------------------------------
// Exact maximum message count
// ---------------------------------------------------------------------------

/// Sphere-partition ceiling on the message count of any scheme masking u
/// cells partially stuck at s: `floor((q^n + u (q-s)^n) / (u + 1))`.
pub fn partition_bound_m(n: usize, q: u32, u: usize, s: u32) -> u64 {
    let total = (q as u64).pow(n as u32);
    let clear = ((q - s) as u64).pow(n as u32);
    (total + u as u64 * clear) / (u as u64 + 1)
}

/// Exact maximum M such that some subset of `[q]^n` splits into M disjoint
/// classes, each containing, for every u-subset U of positions, a word with
/// all U-coordinates >= s. Backtracking with the all-(q-1) word pinned to
/// class 0 and a remaining-words bound.
pub fn max_m_exhaustive(n: usize, q: u32, u: usize, s: u32) -> Result<u64> {
    let space = (q as u64).checked_pow(n as u32).filter(|&v| v <= MAX_M_GUARD);
    let Some(space) = space else {
        return Err(Error::TooLarge(format!("q^n exceeds {MAX_M_GUARD}")));
    };
    if u == 0 {
        return Ok(space);
    }
    if u > n {
        return Err(Error::Parameter(format!("u = {u} exceeds n = {n}")));
    }
    let subsets = subsets(n, u);
    let full: u32 = (1 << subsets.len()) - 1;

    // cover mask per word, words ordered by decreasing integer encoding so
    // the all-(q-1) word comes first
    let mut covers: Vec<u32> = Vec::with_capacity(space as usize);
    for enc in (0..space).rev() {
        let mut digits = vec![0u32; n];
        let mut v = enc;
        for d in digits.iter_mut() {
            *d = (v % q as u64) as u32;
            v /= q as u64;
        }
        let mut mask = 0u32;
        for (bit, subset) in subsets.iter().enumerate() {
            if subset.iter().all(|&i| digits[i] >= s) {
                mask |= 1 << bit;
            }
        }
        covers.push(mask);
    }

    fn dfs(
        idx: usize,
        covers: &[u32],
        full: u32,
        groups: &mut Vec<u32>,
        best: &mut u64,
        first_forced: bool,
    ) {
        let complete = groups.iter().filter(|&&g| g == full).count() as u64;
        let remaining = (covers.len() - idx) as u64;
        if complete > *best {
            *best = complete;
        }
        if complete + remaining <= *best || idx == covers.len() {
            return;
        }
        let w = covers[idx];
        // join an existing group (only ones it can still help)
        for gi in 0..groups.len() {
            if groups[gi] | w != groups[gi] {
                let saved = groups[gi];
                groups[gi] |= w;
                dfs(idx + 1, covers, full, groups, best, false);
                groups[gi] = saved;
            }
        }
        // open a new group
        if w != 0 {
            groups.push(w);
            dfs(idx + 1, covers, full, groups, best, false);
            groups.pop();
        }
        // discard (not allowed for the pinned first word)
        if !first_forced {
            dfs(idx + 1, covers, full, groups, best, false);
        }
    }

    let mut best = 0u64;
    let mut groups = Vec::new();
    dfs(0, &covers, full, &mut groups, &mut best, true);
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_shift_suite_is_clean() {
        let spec = CodecSpec::C1 { q: 3, n: 5 };
        let report = verify_exhaustive(&spec, 2).unwrap();
        assert!(report.passed(), "{:?}", report.first_counterexample);
        // 81 messages x (1 + 5 + 10) patterns
        assert_eq!(report.cases, 81 * 16);
    }

    #[test]
    fn exact_stuck_suite_counts_its_cases() {
        let ctx = crate::ring::make_ctx(3).unwrap();
        let h = crate::linalg::MatrixOverField::from_rows(
            ctx,
            &[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 1, 1], vec![0, 0, 1, 0, 1]],
        )
        .unwrap();
        let code = LinearCode::from_matrix(h, 3, true).unwrap();
        let report = verify_exhaustive(&CodecSpec::Smc { code }, 2).unwrap();
        assert!(report.passed(), "{:?}", report.first_counterexample);
        assert_eq!(report.cases, 9 * (1 + 5 * 3 + 10 * 9));
    }

    #[test]
    fn guard_rejects_huge_sweeps() {
        let spec = CodecSpec::C1 { q: 16, n: 16 };
        assert!(matches!(verify_exhaustive(&spec, 4), Err(Error::TooLarge(_))));
    }

    #[test]
    fn max_m_tiny_instances() {
        assert_eq!(max_m_exhaustive(2, 2, 1, 1).unwrap(), 2);
        assert_eq!(max_m_exhaustive(3, 2, 1, 1).unwrap(), 4);
        assert_eq!(max_m_exhaustive(2, 3, 1, 1).unwrap(), 6);
        assert_eq!(max_m_exhaustive(2, 2, 0, 1).unwrap(), 4);
    }

    #[test]
    fn max_m_guard() {
        assert!(matches!(max_m_exhaustive(5, 2, 1, 1), Err(Error::TooLarge(_))));
    }

    #[test]
    fn max_m_respects_the_partition_bound() {
        for &(n, q, u, s) in &[(2usize, 2u32, 1usize, 1u32), (3, 2, 1, 1), (2, 3, 1, 1), (2, 3, 1, 2)] {
            let m = max_m_exhaustive(n, q, u, s).unwrap();
            let bound = partition_bound_m(n, q, u, s);
            assert!(m <= bound, "({n},{q},{u},{s}): {m} > {bound}");
        }
        // the two-cell binary instance meets its bound exactly
        assert_eq!(max_m_exhaustive(2, 2, 1, 1).unwrap(), partition_bound_m(2, 2, 1, 1));
    }
}
