//! Redundancy bounds and the defect-channel capacity analysis.
//!
//! Everything here is closed-form: counting and sphere-partition lower
//! bounds on the redundancy needed to mask partially-stuck cells, the two
//! trivial upper bounds, the capacity `C_q(p, s)` of the channel where each
//! cell is independently partially stuck at s with probability p, the
//! asymptotic rate of the chained construction, the per-unit-p gap between
//! them (the difference coefficient), and the threshold where the trivial
//! levels-only scheme overtakes it.

use serde::Serialize;

use crate::codes::{rho_constructive, CodeRegistry};
use crate::ring::is_prime_power;
use crate::{Error, Result};

fn log_base(q: u32, x: f64) -> f64 {
    x.ln() / (q as f64).ln()
}

/// Counting lower bound: `u - log_q prod(q - s_i)`.
pub fn lower_counting(n: usize, levels: &[u32], q: u32) -> Result<f64> {
    if levels.len() > n {
        return Err(Error::Parameter(format!("u = {} exceeds n = {n}", levels.len())));
    }
    if let Some(&bad) = levels.iter().find(|&&s| s == 0 || s >= q) {
        return Err(Error::Parameter(format!("level {bad} outside 1..{q}")));
    }
    let sum_logs: f64 = levels.iter().map(|&s| log_base(q, (q - s) as f64)).sum();
    Ok(levels.len() as f64 - sum_logs)
}

/// Partition lower bound for a common level s:
/// `log_q(u+1) - log_q(1 + u (1 - s/q)^n)`.
pub fn lower_improved(n: usize, u: usize, s: u32, q: u32) -> f64 {
    let shrink = 1.0 - s as f64 / q as f64;
    log_base(q, (u + 1) as f64) - log_base(q, 1.0 + u as f64 * shrink.powi(n as i32))
}

/// Limit of [`lower_improved`] as n grows: `log_q(u + 1)`.
pub fn lower_improved_limit(u: usize, q: u32) -> f64 {
    log_base(q, (u + 1) as f64)
}

/// Trivial upper bound: use only the levels `s_max..q`, costing
/// `n (1 - log_q(q - s_max))`.
pub fn upper_trivial(n: usize, s_max: u32, q: u32) -> f64 {
    if s_max == 0 {
        return 0.0;
    }
    n as f64 * (1.0 - log_base(q, (q - s_max) as f64))
}

/// Upper bound through exact stuck-at masking: the smallest constructive
/// redundancy of a distance-(u+1) code, when one exists.
pub fn upper_smc(n: usize, u: usize, q: u32, registry: Option<&CodeRegistry>) -> Option<u32> {
    rho_constructive(n, u as u32 + 1, q, registry)
}

/// Capacity of the channel where a cell is partially stuck at s with
/// probability p (encoder informed; decoder knowledge changes nothing):
/// `1 - p log_q(q / (q - s))`.
pub fn capacity(q: u32, p: f64, s: u32) -> f64 {
    debug_assert!((0.0..=1.0).contains(&p) && s >= 1 && s < q);
    1.0 - p * log_base(q, q as f64 / (q - s) as f64)
}

/// Asymptotic rate of the chained construction with inner alphabet s + 1:
/// `1 - (2 s p / q) log_q(q / floor(q / (s + 1)))`.
pub fn rate_r(q: u32, p: f64, s: u32) -> f64 {
    let floor = q / (s + 1);
    1.0 - (2.0 * s as f64 * p / q as f64) * log_base(q, q as f64 / floor as f64)
}

/// Difference coefficient: `capacity - rate = p * delta(q, s)`.
pub fn delta(q: u32, s: u32) -> f64 {
    let floor = q / (s + 1);
    (2.0 * s as f64 / q as f64) * log_base(q, q as f64 / floor as f64)
        - log_base(q, q as f64 / (q - s) as f64)
}

/// Defect probability beyond which using only the levels `s..q` beats the
/// chained construction: `(q / 2s) log_{s+1}(q / (q - s))`.
pub fn threshold_p(q: u32, s: u32) -> f64 {
    (q as f64 / (2.0 * s as f64)) * (q as f64 / (q - s) as f64).ln() / ((s + 1) as f64).ln()
}

/// Best of the chained construction and the trivial levels-only scheme, for
/// q a multiple of s + 1 (where both formulas apply verbatim).
pub fn r_max(q: u32, p: f64, s: u32) -> f64 {
    if p <= threshold_p(q, s) {
        rate_r(q, p, s)
    } else {
        log_base(q, (q - s) as f64)
    }
}

/// The (q, s) grid of the difference-coefficient table: s in {1,2,3,4,6,7}
/// (s + 1 a prime power), s < q.
pub fn delta_table_grid() -> Vec<(u32, u32)> {
    let qs = [2u32, 3, 4, 5, 6, 7, 8, 11, 13, 16, 21, 32];
    let ss = [1u32, 2, 3, 4, 6, 7];
    let mut out = Vec::new();
    for &q in &qs {
        for &s in &ss {
            if s < q {
                debug_assert!(is_prime_power(s + 1));
                out.push((q, s));
            }
        }
    }
    out
}

/// All the bounds for one instance, rendered by the CLI as JSON.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub schema: u32,
    pub n: usize,
    pub q: u32,
    pub u: usize,
    pub levels: Vec<u32>,
    pub lower_counting: f64,
    /// Only defined when all levels agree.
    pub lower_improved: Option<f64>,
    pub upper_trivial: f64,
    /// `None` when no constructive code reaches distance u + 1.
    pub upper_smc: Option<u32>,
    pub units: &'static str,
}

impl BoundReport {
    pub fn compute(
        n: usize,
        q: u32,
        levels: &[u32],
        registry: Option<&CodeRegistry>,
    ) -> Result<Self> {
        let lower = lower_counting(n, levels, q)?;
        let uniform = levels.first().map(|&s| levels.iter().all(|&l| l == s).then_some(s));
        let improved = match uniform {
            Some(Some(s)) => Some(lower_improved(n, levels.len(), s, q)),
            Some(None) => None,
            None => Some(0.0), // u = 0
        };
        Ok(Self {
            schema: 1,
            n,
            q,
            u: levels.len(),
            levels: levels.to_vec(),
            lower_counting: lower,
            lower_improved: improved,
            upper_trivial: upper_trivial(n, levels.iter().copied().max().unwrap_or(0), q),
            upper_smc: upper_smc(n, levels.len(), q, registry),
            units: "q-ary symbols",
        })
    }
}
