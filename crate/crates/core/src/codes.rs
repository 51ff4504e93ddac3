//! Linear codes held as parity-check matrices with a claimed minimum
//! distance.
//!
//! Built-in families cover what the masking constructions need: q-ary
//! Hamming codes (d = 3), shortened Reed-Solomon / MDS codes for n <= q + 1,
//! parity and repetition codes. Anything else enters through
//! [`LinearCode::from_matrix`] or a registry manifest. [`rho_constructive`]
//! reports the smallest redundancy these sources achieve for a target
//! (n, d, q); externally tabulated codes that none of the families can build
//! are representable as declared registry entries (parameters without a
//! matrix), which participate in redundancy reports but cannot encode.

use std::path::Path;

use crate::linalg::{rre, MatrixOverField};
use crate::ring::{is_prime_power, make_ctx, AlphabetCtx};
use crate::{Error, Result};

/// Guard for brute-force codeword enumeration: q^k must stay below this.
pub const BRUTE_FORCE_GUARD: u128 = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Provenance {
    BuiltinFamily(&'static str),
    UserSupplied,
    Shortened(Box<Provenance>),
}

/// An `[n, k, d]_q` linear code stored through a parity-check matrix.
///
/// The matrix is kept exactly as constructed. `pivot_cols` lists the columns
/// whose submatrix is the identity after row reduction; for a systematic
/// matrix these are `0..n-k`. Encoders place message symbols on the
/// complementary columns, so a non-systematic matrix works without being
/// rewritten.
#[derive(Debug, Clone)]
pub struct LinearCode {
    ctx: AlphabetCtx,
    n: usize,
    k: usize,
    d_claimed: u32,
    h: MatrixOverField,
    pivot_cols: Vec<usize>,
    provenance: Provenance,
    verified: bool,
}

impl LinearCode {
    /// Wraps an explicit parity-check matrix. The matrix must have full row
    /// rank; it does not have to be systematic. With `verify` set the
    /// minimum distance is computed by brute force and must equal
    /// `d_claimed`.
    pub fn from_matrix(h: MatrixOverField, d_claimed: u32, verify: bool) -> Result<Self> {
        Self::build(h, d_claimed, verify, Provenance::UserSupplied)
    }

    fn build(h: MatrixOverField, d_claimed: u32, verify: bool, provenance: Provenance) -> Result<Self> {
        let n = h.cols();
        let rows = h.rows();
        if rows == 0 || n == 0 {
            return Err(Error::Parameter("empty parity-check matrix".into()));
        }
        let red = rre(&h);
        if red.rank < rows {
            return Err(Error::RankDeficient);
        }
        let k = n - rows;
        if k == 0 {
            return Err(Error::Parameter("code dimension must be at least 1".into()));
        }
        if d_claimed == 0 || d_claimed as usize > n {
            return Err(Error::Parameter(format!("claimed distance {d_claimed} outside 1..={n}")));
        }
        let mut code = Self {
            ctx: *h.ctx(),
            n,
            k,
            d_claimed,
            h,
            pivot_cols: red.pivot_cols,
            provenance,
            verified: false,
        };
        if verify {
            let actual = code.min_distance_bruteforce()?;
            if actual != d_claimed {
                return Err(Error::ClaimedDistance { claimed: d_claimed, actual });
            }
            code.verified = true;
        }
        Ok(code)
    }

    /// The q-ary Hamming code `[(q^r - 1)/(q - 1), n - r, 3]`.
    ///
    /// Columns are one representative per projective point, normalized so the
    /// first nonzero coordinate is 1, enumerated by increasing integer
    /// encoding (top row most significant) and then permuted into systematic
    /// form by moving the identity columns to the front in order.
    pub fn hamming(q: u32, r: u32) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::Parameter(format!("q={q} is not a prime power")));
        }
        if r < 2 {
            return Err(Error::Parameter("Hamming codes need r >= 2".into()));
        }
        let qq = q as u128;
        let n128 = (qq.pow(r) - 1) / (qq - 1);
        if n128 > 1 << 20 {
            return Err(Error::TooLarge(format!("Hamming length {n128}")));
        }
        let n = n128 as usize;
        let ctx = make_ctx(q)?;

        let mut identity_cols: Vec<Vec<u32>> = Vec::with_capacity(r as usize);
        let mut other_cols: Vec<Vec<u32>> = Vec::new();
        for enc in 1..qq.pow(r) {
            let digits = to_digits(enc, q, r as usize); // digits[0] = top row
            let first = digits.iter().position(|&d| d != 0).expect("nonzero encoding");
            if digits[first] != 1 {
                continue;
            }
            let weight = digits.iter().filter(|&&d| d != 0).count();
            if weight == 1 {
                identity_cols.push(digits);
            } else {
                other_cols.push(digits);
            }
        }
        // unit columns in increasing encoding order are e_{r-1}, ..., e_0
        identity_cols.reverse();
        let cols: Vec<Vec<u32>> = identity_cols.into_iter().chain(other_cols).collect();
        debug_assert_eq!(cols.len(), n);

        let mut data = Vec::with_capacity(r as usize * n);
        for i in 0..r as usize {
            for col in &cols {
                data.push(col[i]);
            }
        }
        let h = MatrixOverField::new(ctx, r as usize, n, data)?;
        Self::build(h, 3, false, Provenance::BuiltinFamily("hamming"))
    }

    /// A shortened/extended Reed-Solomon `[n, n-d+1, d]_q` code for
    /// `2 <= d <= n <= q + 1`. Redundancy `d - 1`, Singleton-tight.
    pub fn mds(q: u32, n: usize, d: u32) -> Result<Self> {
        if !is_prime_power(q) {
            return Err(Error::Parameter(format!("q={q} is not a prime power")));
        }
        if n > q as usize + 1 {
            return Err(Error::UnsupportedRange(format!("MDS length {n} exceeds q+1={}", q + 1)));
        }
        if d < 2 || d as usize > n {
            return Err(Error::Parameter(format!("MDS distance {d} outside 2..={n}")));
        }
        let ctx = make_ctx(q)?;
        let rows = (d - 1) as usize;
        let plain = n.min(q as usize); // evaluation-point columns
        let mut data = vec![0u32; rows * n];
        for j in 0..plain {
            let alpha = j as u32;
            let mut power = 1u32; // alpha^0, with 0^0 = 1
            for i in 0..rows {
                data[i * n + j] = power;
                power = ctx.mul(power, alpha);
            }
        }
        if n == q as usize + 1 {
            data[(rows - 1) * n + (n - 1)] = 1; // the extra evaluation point
        }
        let h = MatrixOverField::new(ctx, rows, n, data)?;
        // any d-1 columns are independent, so row reduction is systematic
        let sys = rre(&h).r;
        Self::build(sys, d, false, Provenance::BuiltinFamily("mds"))
    }

    /// Shortens by removing the last `count` message coordinates:
    /// `[n - count, k - count, >= d]` with the redundancy untouched.
    pub fn shorten(&self, count: usize) -> Result<Self> {
        if count >= self.k {
            return Err(Error::Parameter(format!(
                "cannot shorten by {count}; dimension is {}",
                self.k
            )));
        }
        if count == 0 {
            return Ok(self.clone());
        }
        let message_cols = self.message_cols();
        let dropped: Vec<usize> = message_cols[message_cols.len() - count..].to_vec();
        let kept: Vec<usize> = (0..self.n).filter(|j| !dropped.contains(j)).collect();
        let h = self.h.submatrix_cols(&kept);
        Self::build(
            h,
            self.d_claimed,
            false,
            Provenance::Shortened(Box::new(self.provenance.clone())),
        )
    }

    pub fn ctx(&self) -> &AlphabetCtx {
        &self.ctx
    }

    pub fn q(&self) -> u32 {
        self.ctx.q()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn redundancy(&self) -> usize {
        self.n - self.k
    }

    pub fn d_claimed(&self) -> u32 {
        self.d_claimed
    }

    pub fn parity_check(&self) -> &MatrixOverField {
        &self.h
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn verified(&self) -> bool {
        self.verified
    }

    /// Columns carrying the redundancy. `0..n-k` iff the matrix is systematic.
    pub fn pivot_cols(&self) -> &[usize] {
        &self.pivot_cols
    }

    pub fn is_systematic(&self) -> bool {
        self.pivot_cols.iter().copied().eq(0..self.n - self.k)
    }

    /// Columns carrying message symbols, in increasing order.
    pub fn message_cols(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.k);
        let mut pivots = self.pivot_cols.iter().peekable();
        for j in 0..self.n {
            if pivots.peek() == Some(&&j) {
                pivots.next();
            } else {
                out.push(j);
            }
        }
        out
    }

    /// Exact minimum Hamming weight over all nonzero codewords, by
    /// enumerating the q^k messages. Guarded.
    pub fn min_distance_bruteforce(&self) -> Result<u32> {
        let total = (self.q() as u128).checked_pow(self.k as u32);
        match total {
            Some(t) if t <= BRUTE_FORCE_GUARD => {}
            _ => {
                return Err(Error::TooLarge(format!(
                    "q^k = {}^{} exceeds the brute-force guard",
                    self.q(),
                    self.k
                )))
            }
        }
        // row-reduced H has the identity on the pivot columns, which makes
        // the parity part of each codeword a plain matrix product
        let red = rre(&self.h).r;
        let msg_cols = self.message_cols();
        let ctx = &self.ctx;
        let rows = self.n - self.k;
        let mut best = self.n as u32;
        let mut msg = vec![0u32; self.k];
        loop {
            if !advance(&mut msg, self.q()) {
                break;
            }
            let weight_msg = msg.iter().filter(|&&v| v != 0).count() as u32;
            let mut weight = weight_msg;
            for i in 0..rows {
                let mut acc = 0u32;
                for (t, &j) in msg_cols.iter().enumerate() {
                    acc = ctx.add(acc, ctx.mul(red.get(i, j), msg[t]));
                }
                if acc != 0 {
                    weight += 1;
                }
            }
            best = best.min(weight);
            if best == 1 {
                break;
            }
        }
        Ok(best)
    }

    /// The codeword whose message coordinates are `m`, for test oracles.
    pub fn codeword(&self, m: &[u32]) -> Vec<u32> {
        assert_eq!(m.len(), self.k);
        let red = rre(&self.h).r;
        let msg_cols = self.message_cols();
        let ctx = &self.ctx;
        let mut word = vec![0u32; self.n];
        for (t, &j) in msg_cols.iter().enumerate() {
            word[j] = m[t];
        }
        for (i, &p) in self.pivot_cols.iter().enumerate() {
            let mut acc = 0u32;
            for (t, &j) in msg_cols.iter().enumerate() {
                acc = ctx.add(acc, ctx.mul(red.get(i, j), m[t]));
            }
            word[p] = ctx.neg(acc);
        }
        word
    }
}

fn to_digits(enc: u128, q: u32, len: usize) -> Vec<u32> {
    // digits[0] is the most significant (top matrix row)
    let mut out = vec![0u32; len];
    let mut v = enc;
    for i in (0..len).rev() {
        out[i] = (v % q as u128) as u32;
        v /= q as u128;
    }
    out
}

/// Odometer increment over [q]^len; false once the space is exhausted.
fn advance(digits: &mut [u32], q: u32) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < q {
            return true;
        }
        *d = 0;
    }
    false
}

// ---------------------------------------------------------------------------
// Registry
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub enum RegistryEntry {
    /// A concrete code with its matrix.
    Code { name: String, code: LinearCode },
    /// Parameters of an externally known code, without a matrix. Usable for
    /// redundancy reports and capability checks, not for encoding.
    Declared { name: String, q: u32, n: usize, k: usize, d: u32 },
}

impl RegistryEntry {
    pub fn params(&self) -> (u32, usize, usize, u32) {
        match self {
            RegistryEntry::Code { code, .. } => {
                (code.q(), code.n(), code.k(), code.d_claimed())
            }
            RegistryEntry::Declared { q, n, k, d, .. } => (*q, *n, *k, *d),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            RegistryEntry::Code { name, .. } => name,
            RegistryEntry::Declared { name, .. } => name,
        }
    }
}

/// Append-only collection of user codes consulted by [`rho_constructive`].
#[derive(Debug, Clone, Default)]
pub struct CodeRegistry {
    entries: Vec<RegistryEntry>,
}

impl CodeRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register_code(&mut self, name: impl Into<String>, code: LinearCode) {
        self.entries.push(RegistryEntry::Code { name: name.into(), code });
    }

    pub fn register_declared(&mut self, name: impl Into<String>, q: u32, n: usize, k: usize, d: u32) {
        self.entries.push(RegistryEntry::Declared { name: name.into(), q, n, k, d });
    }

    pub fn entries(&self) -> &[RegistryEntry] {
        &self.entries
    }

    pub fn find(&self, name: &str) -> Option<&RegistryEntry> {
        self.entries.iter().find(|e| e.name() == name)
    }

    /// Loads a manifest: one code per line, `name q n k d path-to-H`, with
    /// `-` as the path for declared (matrix-less) entries. Paths are
    /// resolved relative to the manifest file. Lines starting with `#` are
    /// skipped.
    pub fn load_manifest(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read manifest {}: {e}", path.display())))?;
        let base = path.parent().unwrap_or_else(|| Path::new("."));
        let mut reg = Self::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 6 {
                return Err(Error::Parse(format!(
                    "manifest line {}: expected 'name q n k d path'",
                    lineno + 1
                )));
            }
            let name = parts[0].to_string();
            let q: u32 = parts[1].parse().map_err(|_| Error::Parse("bad q".into()))?;
            let n: usize = parts[2].parse().map_err(|_| Error::Parse("bad n".into()))?;
            let k: usize = parts[3].parse().map_err(|_| Error::Parse("bad k".into()))?;
            let d: u32 = parts[4].parse().map_err(|_| Error::Parse("bad d".into()))?;
            if parts[5] == "-" {
                reg.register_declared(name, q, n, k, d);
                continue;
            }
            let mpath = base.join(parts[5]);
            let mtext = std::fs::read_to_string(&mpath)
                .map_err(|e| Error::Parse(format!("cannot read {}: {e}", mpath.display())))?;
            let h = MatrixOverField::parse_text(&mtext)?;
            let code = LinearCode::from_matrix(h, d, false)?;
            if code.q() != q || code.n() != n || code.k() != k {
                return Err(Error::Parse(format!(
                    "manifest entry {name}: declared [{n},{k}]_{q} but matrix gives [{},{}]_{}",
                    code.n(),
                    code.k(),
                    code.q()
                )));
            }
            reg.register_code(name, code);
        }
        Ok(reg)
    }
}

/// Smallest redundancy among the constructive families (plus the registry,
/// when given) for a length-n code of minimum distance at least d over F_q.
/// `None` when nothing applies; in particular for any d >= 2 when q is not a
/// prime power.
pub fn rho_constructive(n: usize, d: u32, q: u32, registry: Option<&CodeRegistry>) -> Option<u32> {
    assert!(n >= 1 && d >= 1);
    if d == 1 {
        return Some(0);
    }
    if !is_prime_power(q) || d as usize > n {
        return None;
    }
    let mut best: Option<u32> = None;
    let mut consider = |r: u32| {
        best = Some(best.map_or(r, |b| b.min(r)));
    };

    if d == 2 {
        consider(1);
    }
    if d == 3 {
        // smallest Hamming redundancy whose length reaches n, shortened down
        let qq = q as u128;
        let mut r_h = 2u32;
        loop {
            let len = (qq.pow(r_h) - 1) / (qq - 1);
            if len >= n as u128 {
                break;
            }
            r_h += 1;
        }
        if (r_h as usize) < n {
            consider(r_h);
        }
    }
    if n <= q as usize + 1 {
        consider(d - 1); // MDS
    }
    if d as usize == n {
        consider(n as u32 - 1); // repetition
    }
    if let Some(reg) = registry {
        for entry in reg.entries() {
            let (eq, en, ek, ed) = entry.params();
            if eq != q || ed < d || en < n {
                continue;
            }
            let short = en - n;
            if ek > short {
                consider((en - ek) as u32);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hamming_parameters() {
        let c = LinearCode::hamming(2, 4).unwrap();
        assert_eq!((c.n(), c.k(), c.d_claimed()), (15, 11, 3));
        assert!(c.is_systematic());

        let c = LinearCode::hamming(3, 2).unwrap();
        assert_eq!((c.n(), c.k(), c.d_claimed()), (4, 2, 3));
        assert_eq!(c.min_distance_bruteforce().unwrap(), 3);
        // the doubled-column masking matrix embeds exactly this parity check
        assert_eq!(c.parity_check().row(0), &[1, 0, 1, 1]);
        assert_eq!(c.parity_check().row(1), &[0, 1, 1, 2]);

        let c = LinearCode::hamming(2, 2).unwrap();
        assert_eq!((c.n(), c.k(), c.d_claimed()), (3, 1, 3));
        assert_eq!(c.min_distance_bruteforce().unwrap(), 3);
    }

    #[test]
    fn hamming_columns_cover_every_projective_point() {
        let c = LinearCode::hamming(2, 4).unwrap();
        let h = c.parity_check();
        let mut encodings: Vec<u32> = (0..15)
            .map(|j| h.col(j).iter().fold(0, |acc, &d| acc * 2 + d))
            .collect();
        encodings.sort_unstable();
        assert_eq!(encodings, (1..16).collect::<Vec<_>>());
    }

    #[test]
    fn mds_families() {
        let c = LinearCode::mds(5, 5, 3).unwrap();
        assert_eq!((c.n(), c.k(), c.d_claimed()), (5, 3, 3));
        assert_eq!(c.min_distance_bruteforce().unwrap(), 3);

        let parity = LinearCode::mds(7, 6, 2).unwrap();
        assert_eq!(parity.redundancy(), 1);
        assert_eq!(parity.min_distance_bruteforce().unwrap(), 2);

        let rep = LinearCode::mds(4, 5, 5).unwrap();
        assert_eq!((rep.n(), rep.k()), (5, 1));
        assert_eq!(rep.min_distance_bruteforce().unwrap(), 5);

        assert!(matches!(LinearCode::mds(4, 6, 3), Err(Error::UnsupportedRange(_))));
    }

    #[test]
    fn shortening() {
        let c = LinearCode::hamming(5, 3).unwrap();
        assert_eq!((c.n(), c.k()), (31, 28));
        let s = c.shorten(1).unwrap();
        assert_eq!((s.n(), s.k(), s.d_claimed()), (30, 27, 3));
        assert_eq!(s.redundancy(), 3);

        let c = LinearCode::hamming(3, 3).unwrap();
        let s = c.shorten(8).unwrap();
        assert_eq!((s.n(), s.k(), s.d_claimed()), (5, 2, 3));
        assert_eq!(s.min_distance_bruteforce().unwrap(), 3);

        let same = c.shorten(0).unwrap();
        assert_eq!(same.n(), c.n());

        assert!(c.shorten(c.k()).is_err());
    }

    #[test]
    fn from_matrix_accepts_and_rejects() {
        let ctx = make_ctx(3).unwrap();
        let h = MatrixOverField::from_rows(
            ctx,
            &[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 1, 1], vec![0, 0, 1, 0, 1]],
        )
        .unwrap();
        let c = LinearCode::from_matrix(h.clone(), 3, true).unwrap();
        assert!(c.verified());
        assert_eq!((c.n(), c.k()), (5, 2));

        // wrong distance claim is caught under verify
        let err = LinearCode::from_matrix(h, 4, true).unwrap_err();
        assert_eq!(err, Error::ClaimedDistance { claimed: 4, actual: 3 });

        // k = 0 is rejected
        let i2 = MatrixOverField::identity(make_ctx(2).unwrap(), 2).unwrap();
        assert!(LinearCode::from_matrix(i2, 2, false).is_err());

        // dependent rows are rejected
        let dep = MatrixOverField::from_rows(ctx, &[vec![1, 2, 0], vec![2, 1, 0]]).unwrap();
        assert_eq!(LinearCode::from_matrix(dep, 2, false).unwrap_err(), Error::RankDeficient);
    }

    #[test]
    fn non_systematic_matrix_gets_pivot_columns() {
        let ctx = make_ctx(3).unwrap();
        let h = MatrixOverField::from_rows(
            ctx,
            &[vec![1, 1, 0, 0, 1, 1, 1, 1], vec![0, 0, 1, 1, 1, 1, 2, 2]],
        )
        .unwrap();
        let c = LinearCode::from_matrix(h, 3, false).unwrap();
        assert!(!c.is_systematic());
        assert_eq!(c.pivot_cols(), &[0, 2]);
        assert_eq!(c.message_cols(), vec![1, 3, 4, 5, 6, 7]);
    }

    #[test]
    fn brute_force_distances() {
        assert_eq!(LinearCode::hamming(2, 4).unwrap().min_distance_bruteforce().unwrap(), 3);
        let rep = LinearCode::hamming(2, 2).unwrap();
        assert_eq!(rep.min_distance_bruteforce().unwrap(), 3);
    }

    #[test]
    fn brute_force_guard() {
        let c = LinearCode::hamming(2, 5).unwrap().shorten(2).unwrap();
        // [29, 24]: 2^24 exceeds the guard
        assert!(matches!(c.min_distance_bruteforce(), Err(Error::TooLarge(_))));
    }

    #[test]
    fn codeword_satisfies_parity_checks() {
        let c = LinearCode::hamming(3, 2).unwrap();
        let ctx = *c.ctx();
        for m0 in 0..3 {
            for m1 in 0..3 {
                let w = c.codeword(&[m0, m1]);
                for i in 0..c.redundancy() {
                    let mut acc = 0;
                    for (j, &x) in w.iter().enumerate() {
                        acc = ctx.add(acc, ctx.mul(c.parity_check().get(i, j), x));
                    }
                    assert_eq!(acc, 0);
                }
            }
        }
    }

    #[test]
    fn constructive_redundancy_values() {
        assert_eq!(rho_constructive(5, 3, 3, None), Some(3));
        assert_eq!(rho_constructive(9, 1, 7, None), Some(0));
        assert_eq!(rho_constructive(30, 3, 5, None), Some(3));
        assert_eq!(rho_constructive(4, 3, 3, None), Some(2)); // exact Hamming / MDS tie
        assert_eq!(rho_constructive(5, 2, 4, None), Some(1));
        assert_eq!(rho_constructive(6, 6, 4, None), Some(5)); // repetition
        assert_eq!(rho_constructive(7, 6, 4, None), None); // d < n, past the MDS range
        assert_eq!(rho_constructive(30, 6, 5, None), None); // nothing constructive reaches it
        assert_eq!(rho_constructive(10, 3, 6, None), None); // not a prime power
        assert_eq!(rho_constructive(10, 1, 6, None), Some(0));
    }

    #[test]
    fn registry_feeds_rho() {
        let mut reg = CodeRegistry::new();
        reg.register_declared("table-31-24-5", 4, 31, 24, 5);
        assert_eq!(rho_constructive(31, 5, 4, Some(&reg)), Some(7));
        // shortened view of the declared entry
        assert_eq!(rho_constructive(10, 5, 4, Some(&reg)), Some(7));
        // distance monotonicity: a d=5 entry also supplies d=4
        assert_eq!(rho_constructive(31, 4, 4, Some(&reg)), Some(7));
        assert_eq!(reg.find("table-31-24-5").map(|e| e.params()), Some((4, 31, 24, 5)));
    }
}
