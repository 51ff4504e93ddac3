//! Codec bookkeeping: which construction, what it can mask, how many
//! messages it stores, and its redundancy in exact form.
//!
//! Message-space sizes are kept factored as `q^a * b^c`, so the redundancy
//! `r = len - log_q M = (len - a) - c * log_q(b)` is exact symbolic data;
//! floats only appear when a caller asks for them.

use serde::Serialize;

use crate::codes::LinearCode;
use crate::smc::PsaPattern;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Construction {
    C1,
    C1b,
    Gen1,
    RreMask,
    C2,
    Gen2,
    C3,
    Gen3SameS,
    Gen3DiffS,
}

/// What a codec instance can mask.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Capability {
    /// Up to `u_max` cells, all at level `s`.
    UniformLevels { u_max: usize, s: u32 },
    /// Any profile whose levels sum to at most this.
    LevelSumAtMost(u32),
    /// Exactly this level profile (in some cell order).
    Profile(Vec<u32>),
}

/// Inner-code parameters carried for reporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InnerCodeParams {
    pub q: u32,
    pub n: usize,
    pub k: usize,
    pub d: u32,
}

impl InnerCodeParams {
    pub fn of(code: &LinearCode) -> Self {
        Self { q: code.q(), n: code.n(), k: code.k(), d: code.d_claimed() }
    }
}

/// Redundancy in the exact form `int_part + log_coeff * log_q(log_arg)`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct Redundancy {
    pub q: u32,
    pub int_part: i64,
    pub log_coeff: i64,
    pub log_arg: u64,
}

impl Redundancy {
    fn normalized(self) -> Self {
        if self.log_arg == 1 || self.log_coeff == 0 {
            Self { log_coeff: 0, log_arg: 1, ..self }
        } else {
            self
        }
    }

    pub fn as_f64(&self) -> f64 {
        self.int_part as f64
            + self.log_coeff as f64 * (self.log_arg as f64).ln() / (self.q as f64).ln()
    }
}

impl PartialEq for Redundancy {
    fn eq(&self, other: &Self) -> bool {
        let a = self.normalized();
        let b = other.normalized();
        (a.q, a.int_part, a.log_coeff, a.log_arg) == (b.q, b.int_part, b.log_coeff, b.log_arg)
    }
}

impl std::fmt::Display for Redundancy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.normalized();
        if n.log_coeff == 0 {
            write!(f, "{}", n.int_part)
        } else {
            write!(f, "{} + {} * log_{}({})", n.int_part, n.log_coeff, n.q, n.log_arg)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CodecDescriptor {
    pub construction: Construction,
    pub q: u32,
    /// Stored word length (n + 1 for the inner-code constructions).
    pub word_len: usize,
    pub capability: Capability,
    pub inner_code: Option<InnerCodeParams>,
    /// `M = q^msg_q_exp * msg_extra_base^msg_extra_exp` messages.
    pub msg_q_exp: u32,
    pub msg_extra_base: u64,
    pub msg_extra_exp: u32,
    /// Inner-code stuck budget for the chained constructions.
    pub inner_budget: Option<u64>,
}

impl CodecDescriptor {
    fn base(construction: Construction, q: u32, word_len: usize, capability: Capability) -> Self {
        Self {
            construction,
            q,
            word_len,
            capability,
            inner_code: None,
            msg_q_exp: 0,
            msg_extra_base: 1,
            msg_extra_exp: 0,
            inner_budget: None,
        }
    }

    /// `r = word_len - log_q M`, exact.
    pub fn redundancy(&self) -> Redundancy {
        Redundancy {
            q: self.q,
            int_part: self.word_len as i64 - self.msg_q_exp as i64,
            log_coeff: -(self.msg_extra_exp as i64),
            log_arg: self.msg_extra_base,
        }
        .normalized()
    }

    pub fn rate(&self) -> f64 {
        (self.word_len as f64 - self.redundancy().as_f64()) / self.word_len as f64
    }

    pub fn c1(q: u32, n: usize, u_max: usize) -> Result<Self> {
        if u_max as u64 >= q as u64 || u_max > n {
            return Err(Error::Parameter(format!("need u < q and u <= n, got u = {u_max}")));
        }
        let mut d = Self::base(Construction::C1, q, n, Capability::UniformLevels { u_max, s: 1 });
        d.msg_q_exp = n as u32 - 1;
        Ok(d)
    }

    pub fn c1b(q: u32, n: usize, u_max: usize) -> Result<Self> {
        if u_max as u64 >= q as u64 || u_max > n {
            return Err(Error::Parameter(format!("need u < q and u <= n, got u = {u_max}")));
        }
        let mut d = Self::base(Construction::C1b, q, n, Capability::UniformLevels { u_max, s: 1 });
        d.msg_q_exp = n as u32 - 1;
        d.msg_extra_base = (q / (u_max as u32 + 1)) as u64;
        d.msg_extra_exp = 1;
        Ok(d)
    }

    pub fn gen1(q: u32, n: usize, levels: &[u32]) -> Result<Self> {
        let sum: u64 = levels.iter().map(|&s| s as u64).sum();
        if sum >= q as u64 || levels.len() > n {
            return Err(Error::Parameter(format!("need sum(levels) < q, got {sum}")));
        }
        let mut d = Self::base(
            Construction::Gen1,
            q,
            n,
            Capability::LevelSumAtMost(sum as u32),
        );
        d.msg_q_exp = n as u32 - 1;
        d.msg_extra_base = (q / (sum as u32 + 1)) as u64;
        d.msg_extra_exp = 1;
        Ok(d)
    }

    /// A registered masking matrix used directly, with an externally argued
    /// capability (the generic solver has no closed-form formula).
    pub fn rre_mask(code: &LinearCode, u_max: usize, s: u32) -> Result<Self> {
        let q = code.q();
        if s == 0 || s >= q {
            return Err(Error::Parameter(format!("level {s} outside 1..{q}")));
        }
        let mut d = Self::base(
            Construction::RreMask,
            q,
            code.n(),
            Capability::UniformLevels { u_max, s },
        );
        d.inner_code = Some(InnerCodeParams::of(code));
        d.msg_q_exp = code.k() as u32;
        Ok(d)
    }

    pub fn c2(code: &LinearCode, s: u32) -> Result<Self> {
        let q = code.q();
        if s == 0 || s >= q {
            return Err(Error::Parameter(format!("level {s} outside 1..{q}")));
        }
        let cap = ((q as u64).div_ceil(s as u64) + code.d_claimed() as u64 - 3)
            .min(code.n() as u64) as usize;
        let construction = if s == 1 { Construction::C2 } else { Construction::Gen2 };
        let mut d = Self::base(
            construction,
            q,
            code.n(),
            Capability::UniformLevels { u_max: cap, s },
        );
        d.inner_code = Some(InnerCodeParams::of(code));
        d.msg_q_exp = code.k() as u32;
        Ok(d)
    }

    pub fn c3(q: u32, inner: InnerCodeParams) -> Result<Self> {
        if inner.q != 2 {
            return Err(Error::Parameter("the inner code must be binary".into()));
        }
        Self::gen3_same(q, inner, 1).map(|mut d| {
            d.construction = Construction::C3;
            d
        })
    }

    pub fn gen3_same(q: u32, inner: InnerCodeParams, s: u32) -> Result<Self> {
        let bigq = inner.q;
        check_gen3_alphabets(q, bigq, s)?;
        // largest u with floor((Q+s-1) u / q) <= d - 1
        let sigma = (q as u64).min(bigq as u64 + s as u64 - 1);
        let u_max = (((q as u64 * inner.d as u64) - 1) / sigma).min(inner.n as u64 + 1) as usize;
        let mut d = Self::base(
            Construction::Gen3SameS,
            q,
            inner.n + 1,
            Capability::UniformLevels { u_max, s },
        );
        d.inner_code = Some(inner);
        d.msg_q_exp = inner.k as u32;
        d.msg_extra_base = (q / bigq) as u64;
        d.msg_extra_exp = (inner.n - inner.k - 1) as u32;
        Ok(d)
    }

    pub fn gen3_profile(q: u32, inner: InnerCodeParams, levels: &[u32]) -> Result<Self> {
        let bigq = inner.q;
        let s_max = levels.iter().copied().max().unwrap_or(1);
        check_gen3_alphabets(q, bigq, s_max)?;
        let total: u64 =
            levels.iter().map(|&s| (q as u64).min(bigq as u64 + s as u64 - 1)).sum();
        let budget = total / q as u64;
        if budget + 1 > inner.d as u64 {
            return Err(Error::CapabilityExceeded(format!(
                "profile needs inner distance >= {}, code claims {}",
                budget + 1,
                inner.d
            )));
        }
        let mut d = Self::base(
            Construction::Gen3DiffS,
            q,
            inner.n + 1,
            Capability::Profile(levels.to_vec()),
        );
        d.inner_code = Some(inner);
        d.msg_q_exp = inner.k as u32;
        d.msg_extra_base = (q / bigq) as u64;
        d.msg_extra_exp = (inner.n - inner.k - 1) as u32;
        d.inner_budget = Some(budget);
        Ok(d)
    }

    /// Largest pattern the descriptor covers, for simulators and bound
    /// comparisons.
    pub fn max_pattern(&self) -> (usize, u32) {
        match &self.capability {
            Capability::UniformLevels { u_max, s } => (*u_max, *s),
            Capability::LevelSumAtMost(sum) => (*sum as usize, 1),
            Capability::Profile(levels) => {
                (levels.len(), levels.iter().copied().max().unwrap_or(1))
            }
        }
    }

    /// Does a concrete pattern fall inside the capability?
    pub fn admits(&self, pattern: &PsaPattern) -> bool {
        match &self.capability {
            Capability::UniformLevels { u_max, s } => {
                pattern.u() <= *u_max && pattern.levels().iter().all(|&l| l <= *s)
            }
            Capability::LevelSumAtMost(sum) => pattern.level_sum() <= *sum as u64,
            Capability::Profile(levels) => {
                let mut have = levels.clone();
                have.sort_unstable();
                let mut want = pattern.levels().to_vec();
                want.sort_unstable();
                want.iter().all(|w| {
                    if let Some(idx) = have.iter().position(|h| h >= w) {
                        have.remove(idx);
                        true
                    } else {
                        false
                    }
                })
            }
        }
    }
}

fn check_gen3_alphabets(q: u32, bigq: u32, s: u32) -> Result<()> {
    if 2 * bigq as u64 > q as u64 {
        return Err(Error::Parameter(format!("need 2Q <= q (Q = {bigq}, q = {q})")));
    }
    if s + 1 > bigq {
        return Err(Error::Parameter(format!("need Q >= s + 1 (Q = {bigq}, s = {s})")));
    }
    if bigq as u64 + s as u64 - 1 >= q as u64 {
        return Err(Error::Parameter(format!("need Q + s - 1 < q (Q = {bigq}, s = {s}, q = {q})")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_symbol_for_the_plain_shift() {
        let d = CodecDescriptor::c1(3, 5, 2).unwrap();
        let r = d.redundancy();
        assert_eq!(r, Redundancy { q: 3, int_part: 1, log_coeff: 0, log_arg: 1 });
        assert_eq!(r.as_f64(), 1.0);
    }

    #[test]
    fn packed_shift_redundancy_q6() {
        let d = CodecDescriptor::c1b(6, 5, 2).unwrap();
        let r = d.redundancy();
        assert_eq!(r, Redundancy { q: 6, int_part: 1, log_coeff: -1, log_arg: 2 });
        assert!((r.as_f64() - (1.0 - 2f64.ln() / 6f64.ln())).abs() < 1e-15);
        assert!((r.as_f64() - 0.613).abs() < 1e-3);
    }

    #[test]
    fn chained_redundancy_binary_inner() {
        let inner = InnerCodeParams { q: 2, n: 63, k: 57, d: 3 };
        let d = CodecDescriptor::c3(4, inner).unwrap();
        let r = d.redundancy();
        assert_eq!(r, Redundancy { q: 4, int_part: 7, log_coeff: -5, log_arg: 2 });
        assert!((r.as_f64() - 4.5).abs() < 1e-12);
    }

    #[test]
    fn mixed_profile_budget_and_redundancy() {
        let inner = InnerCodeParams { q: 4, n: 31, k: 24, d: 5 };
        let levels = [1, 1, 1, 1, 2, 2, 3];
        let d = CodecDescriptor::gen3_profile(8, inner, &levels).unwrap();
        assert_eq!(d.inner_budget, Some(4));
        assert!((d.redundancy().as_f64() - 6.0).abs() < 1e-12);

        // treating every cell as level 3 costs one more unit of budget:
        // seven level-3 cells need floor(6 * 7 / 8) = 5 pinned slots
        let all_three = CodecDescriptor::gen3_profile(
            8,
            InnerCodeParams { q: 4, n: 31, k: 23, d: 6 },
            &[3; 7],
        )
        .unwrap();
        assert_eq!(all_three.inner_budget, Some(5));
        let same = CodecDescriptor::gen3_same(8, InnerCodeParams { q: 4, n: 31, k: 23, d: 6 }, 3)
            .unwrap();
        assert_eq!(same.capability, Capability::UniformLevels { u_max: 7, s: 3 });
    }

    #[test]
    fn registered_matrix_descriptor() {
        // the 2x8 doubled-Hamming matrix masks any three level-1 cells over
        // F_3 at two symbols of redundancy, above both lower bounds
        let ctx = crate::ring::make_ctx(3).unwrap();
        let h = crate::linalg::MatrixOverField::from_rows(
            ctx,
            &[vec![1, 1, 0, 0, 1, 1, 1, 1], vec![0, 0, 1, 1, 1, 1, 2, 2]],
        )
        .unwrap();
        let code = crate::codes::LinearCode::from_matrix(h, 3, false).unwrap();
        let d = CodecDescriptor::rre_mask(&code, 3, 1).unwrap();
        let r = d.redundancy().as_f64();
        assert_eq!(r, 2.0);
        let lc = crate::bounds::lower_counting(8, &[1, 1, 1], 3).unwrap();
        let li = crate::bounds::lower_improved(8, 3, 1, 3);
        assert!((lc - 1.107).abs() < 5e-4);
        assert!((li - 1.161).abs() < 5e-4);
        assert!(lc <= r && li <= r);
    }

    #[test]
    fn capability_admission() {
        let d = CodecDescriptor::gen1(5, 4, &[1, 2]).unwrap();
        assert!(d.admits(&PsaPattern::new(vec![0, 2], vec![2, 1]).unwrap()));
        assert!(d.admits(&PsaPattern::new(vec![1], vec![3]).unwrap()));
        assert!(!d.admits(&PsaPattern::new(vec![0, 1], vec![2, 2]).unwrap()));

        let p = CodecDescriptor::gen3_profile(
            8,
            InnerCodeParams { q: 4, n: 31, k: 24, d: 5 },
            &[1, 1, 2],
        )
        .unwrap();
        assert!(p.admits(&PsaPattern::new(vec![3, 9], vec![1, 2]).unwrap()));
        assert!(!p.admits(&PsaPattern::new(vec![3, 9], vec![2, 2]).unwrap()));
    }

    #[test]
    fn message_space_matches_the_redundancy_accounting() {
        // M = q^(n-1) * floor(q/(u+1)): count it directly for a tiny case
        let d = CodecDescriptor::c1b(5, 3, 1).unwrap();
        let m_count = 5u64.pow(d.msg_q_exp) * d.msg_extra_base.pow(d.msg_extra_exp);
        assert_eq!(m_count, 25 * 2);
        let logq_m = (m_count as f64).ln() / 5f64.ln();
        assert!((d.word_len as f64 - logq_m - d.redundancy().as_f64()).abs() < 1e-12);
    }
}
