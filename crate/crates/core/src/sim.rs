//! Seeded Monte Carlo simulation of the partially-stuck-at channel.
//!
//! Each cell of a word is independently partially stuck at level s with
//! probability p. A trial samples a defect pattern, counts it as a failure
//! when it exceeds the codec's capability (no retry), and otherwise runs a
//! full encode / mask-check / decode round-trip on a random message.
//!
//! Determinism contract: trial t draws from a ChaCha stream seeded with
//! `seed ^ t`, so runs are reproducible and trials are order-independent.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::Serialize;

use crate::codes::LinearCode;
use crate::psmc::{
    c1_decode, c1_encode, c2_decode, c2_encode, c3_decode, c3_encode, word_masks,
    CodecDescriptor, InnerCodeParams,
};
use crate::smc::PsaPattern;
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub enum SimCodec {
    C1 { q: u32, n: usize },
    C2 { code: LinearCode, s: u32 },
    C3 { q: u32, bincode: LinearCode },
}

impl SimCodec {
    pub fn descriptor(&self) -> Result<CodecDescriptor> {
        match self {
            SimCodec::C1 { q, n } => {
                CodecDescriptor::c1(*q, *n, (*q as usize - 1).min(*n))
            }
            SimCodec::C2 { code, s } => CodecDescriptor::c2(code, *s),
            SimCodec::C3 { q, bincode } => {
                CodecDescriptor::c3(*q, InnerCodeParams::of(bincode))
            }
        }
    }

    fn q(&self) -> u32 {
        match self {
            SimCodec::C1 { q, .. } | SimCodec::C3 { q, .. } => *q,
            SimCodec::C2 { code, .. } => code.q(),
        }
    }

    fn stuck_level(&self) -> u32 {
        match self {
            SimCodec::C2 { s, .. } => *s,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SimConfig {
    pub codec: SimCodec,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SimReport {
    pub schema: u32,
    pub construction: String,
    pub q: u32,
    pub word_len: usize,
    pub stuck_level: u32,
    pub p: f64,
    pub trials: u64,
    pub seed: u64,
    pub capability_u_max: usize,
    /// `u_histogram[u]` = number of trials with exactly u stuck cells.
    pub u_histogram: Vec<u64>,
    pub capability_failures: u64,
    pub mask_violations: u64,
    pub roundtrip_failures: u64,
    pub failure_rate: f64,
    pub mask_success_rate: f64,
    pub achieved_rate: f64,
    pub redundancy: f64,
}

pub fn simulate(cfg: &SimConfig) -> Result<SimReport> {
    if !(0.0..=1.0).contains(&cfg.p) {
        return Err(Error::Parameter(format!("p = {} outside [0, 1]", cfg.p)));
    }
    let descriptor = cfg.codec.descriptor()?;
    let word_len = descriptor.word_len;
    let (u_max, _) = descriptor.max_pattern();
    let q = cfg.codec.q();
    let level = cfg.codec.stuck_level();

    let mut histogram = vec![0u64; word_len + 1];
    let mut capability_failures = 0u64;
    let mut mask_violations = 0u64;
    let mut roundtrip_failures = 0u64;

    for trial in 0..cfg.trials {
        let mut rng = ChaCha12Rng::seed_from_u64(cfg.seed ^ trial);
        let positions: Vec<usize> =
            (0..word_len).filter(|_| rng.gen_bool(cfg.p)).collect();
        let u = positions.len();
        histogram[u] += 1;
        if u > u_max {
            capability_failures += 1;
            continue;
        }
        let pattern = PsaPattern::uniform(positions, level)?;
        let outcome = run_trial(&cfg.codec, &pattern, &mut rng);
        match outcome {
            TrialOutcome::Ok => {}
            TrialOutcome::MaskViolation => mask_violations += 1,
            TrialOutcome::RoundTrip => roundtrip_failures += 1,
        }
    }

    let bad = capability_failures + mask_violations + roundtrip_failures;
    Ok(SimReport {
        schema: 1,
        construction: match cfg.codec {
            SimCodec::C1 { .. } => "c1".into(),
            SimCodec::C2 { .. } => "c2".into(),
            SimCodec::C3 { .. } => "c3".into(),
        },
        q,
        word_len,
        stuck_level: level,
        p: cfg.p,
        trials: cfg.trials,
        seed: cfg.seed,
        capability_u_max: u_max,
        u_histogram: histogram,
        capability_failures,
        mask_violations,
        roundtrip_failures,
        failure_rate: capability_failures as f64 / cfg.trials.max(1) as f64,
        mask_success_rate: 1.0 - bad as f64 / cfg.trials.max(1) as f64,
        achieved_rate: descriptor.rate(),
        redundancy: descriptor.redundancy().as_f64(),
    })
}

enum TrialOutcome {
    Ok,
    MaskViolation,
    RoundTrip,
}

fn random_word(rng: &mut ChaCha12Rng, len: usize, radix: u32) -> Vec<u32> {
    (0..len).map(|_| rng.gen_range(0..radix)).collect()
}

fn run_trial(codec: &SimCodec, pattern: &PsaPattern, rng: &mut ChaCha12Rng) -> TrialOutcome {
    match codec {
        SimCodec::C1 { q, n } => {
            let m = random_word(rng, *n - 1, *q);
            match c1_encode(*q, *n, &m, pattern) {
                Ok(y) if !word_masks(&y, pattern) => TrialOutcome::MaskViolation,
                Ok(y) if c1_decode(*q, *n, &y) != m => TrialOutcome::RoundTrip,
                Ok(_) => TrialOutcome::Ok,
                Err(_) => TrialOutcome::MaskViolation,
            }
        }
        SimCodec::C2 { code, .. } => {
            let m = random_word(rng, code.k(), code.q());
            match c2_encode(code, &m, pattern) {
                Ok(y) if !word_masks(&y, pattern) => TrialOutcome::MaskViolation,
                Ok(y) if c2_decode(code, &y) != m => TrialOutcome::RoundTrip,
                Ok(_) => TrialOutcome::Ok,
                Err(_) => TrialOutcome::MaskViolation,
            }
        }
        SimCodec::C3 { q, bincode } => {
            let m = random_word(rng, bincode.k(), *q);
            let m_prime = random_word(rng, bincode.n() - bincode.k() - 1, *q / 2);
            match c3_encode(*q, bincode, &m, &m_prime, pattern) {
                Ok(y) if !word_masks(&y, pattern) => TrialOutcome::MaskViolation,
                Ok(y) if c3_decode(*q, bincode, &y) != (m.clone(), m_prime.clone()) => {
                    TrialOutcome::RoundTrip
                }
                Ok(_) => TrialOutcome::Ok,
                Err(_) => TrialOutcome::MaskViolation,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_defect_probability_never_fails() {
        let cfg = SimConfig {
            codec: SimCodec::C1 { q: 4, n: 16 },
            p: 0.0,
            trials: 200,
            seed: 7,
        };
        let r = simulate(&cfg).unwrap();
        assert_eq!(r.capability_failures, 0);
        assert_eq!(r.mask_violations, 0);
        assert_eq!(r.roundtrip_failures, 0);
        assert_eq!(r.u_histogram[0], 200);
        assert_eq!(r.mask_success_rate, 1.0);
    }

    #[test]
    fn repeat_runs_are_identical(){
        let cfg = SimConfig {
            codec: SimCodec::C1 { q: 8, n: 32 },
            p: 0.1,
            trials: 500,
            seed: 42,
        };
        let a = serde_json::to_string(&simulate(&cfg).unwrap()).unwrap();
        let b = serde_json::to_string(&simulate(&cfg).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn chained_codec_masks_in_every_successful_trial() {
        let bincode = LinearCode::hamming(2, 4).unwrap(); // [15,11,3]
        let cfg = SimConfig {
            codec: SimCodec::C3 { q: 4, bincode },
            p: 0.05,
            trials: 400,
            seed: 11,
        };
        let r = simulate(&cfg).unwrap();
        assert_eq!(r.mask_violations, 0);
        assert_eq!(r.roundtrip_failures, 0);
        assert_eq!(r.word_len, 16);
    }

    #[test]
    fn rejects_bad_probability() {
        let cfg = SimConfig {
            codec: SimCodec::C1 { q: 4, n: 4 },
            p: 1.5,
            trials: 1,
            seed: 0,
        };
        assert!(simulate(&cfg).is_err());
    }
}
