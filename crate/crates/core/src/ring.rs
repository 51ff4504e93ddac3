//! Arithmetic over the alphabet `[q] = {0, 1, ..., q-1}`.
//!
//! For a prime power q = p^m the alphabet carries the finite field F_q: the
//! integer v stands for the polynomial over F_p whose coefficients are the
//! base-p digits of v (digit i = coefficient of x^i). That bijection is the
//! identity on representations, so field elements and alphabet integers are
//! the same `u32` values throughout the crate. For all other q only the
//! additive group Z_q is available.
//!
//! Masking constructions that shift whole words use plain integer mod-q
//! addition (see [`mod_add`]) even when q is a prime power; constructions
//! built on parity-check matrices use the field operations on [`AlphabetCtx`].

use crate::{Error, Result};

/// Largest supported alphabet size.
pub const MAX_Q: u32 = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphabetKind {
    /// q is a prime power; the full field structure is available.
    Field,
    /// q is not a prime power; only mod-q addition is structural.
    ModRing,
}

/// Arithmetic context for the alphabet `[q]`.
///
/// Immutable after construction; every operation is pure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlphabetCtx {
    q: u32,
    kind: AlphabetKind,
    p: u32,
    m: u32,
    reduction_poly: u64,
}

/// Builds the context for `[q]`: a field context when q is a prime power
/// (with the canonical reduction polynomial), a mod-q ring otherwise.
pub fn make_ctx(q: u32) -> Result<AlphabetCtx> {
    AlphabetCtx::new(q)
}

impl AlphabetCtx {
    pub fn new(q: u32) -> Result<Self> {
        if q < 2 || q > MAX_Q {
            return Err(Error::InvalidAlphabet(q));
        }
        match prime_power(q) {
            Some((p, m)) => Ok(Self {
                q,
                kind: AlphabetKind::Field,
                p,
                m,
                reduction_poly: canonical_irreducible(p as u64, m),
            }),
            None => Ok(Self { q, kind: AlphabetKind::ModRing, p: 0, m: 0, reduction_poly: 0 }),
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn kind(&self) -> AlphabetKind {
        self.kind
    }

    pub fn is_field(&self) -> bool {
        self.kind == AlphabetKind::Field
    }

    /// Field characteristic. Zero for mod-ring contexts.
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Extension degree m with q = p^m. Zero for mod-ring contexts.
    pub fn extension_degree(&self) -> u32 {
        self.m
    }

    /// Integer-encoded reduction polynomial (coefficient of x^i is digit i
    /// base p). For m = 1 this is the polynomial x, encoded as p.
    pub fn reduction_poly(&self) -> u64 {
        self.reduction_poly
    }

    /// Structural addition: field addition (digit-wise mod p) for fields,
    /// integer addition mod q otherwise. The two coincide for prime q.
    pub fn add(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        match self.kind {
            AlphabetKind::ModRing => mod_add(self.q, a, b),
            AlphabetKind::Field => {
                if self.m == 1 {
                    mod_add(self.q, a, b)
                } else {
                    self.digitwise(a, b, |x, y, p| (x + y) % p)
                }
            }
        }
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn neg(&self, a: u32) -> u32 {
        debug_assert!(a < self.q);
        match self.kind {
            AlphabetKind::ModRing => mod_neg(self.q, a),
            AlphabetKind::Field => {
                if self.m == 1 {
                    mod_neg(self.q, a)
                } else {
                    self.digitwise(a, 0, |x, _, p| (p - x) % p)
                }
            }
        }
    }

    /// Structural multiplication. For fields this is polynomial
    /// multiplication modulo the reduction polynomial; for mod-q rings it is
    /// the integer product mod q (the two coincide for prime q).
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        debug_assert!(a < self.q && b < self.q);
        match self.kind {
            AlphabetKind::ModRing => ((a as u64 * b as u64) % self.q as u64) as u32,
            AlphabetKind::Field => {
                if self.m == 1 {
                    ((a as u64 * b as u64) % self.q as u64) as u32
                } else {
                    self.poly_mul(a, b)
                }
            }
        }
    }

    /// Multiplicative inverse. Field contexts only.
    pub fn inv(&self, a: u32) -> Result<u32> {
        if !self.is_field() {
            return Err(Error::ContextKind("inversion"));
        }
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(a, (self.q - 2) as u64))
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Base-p digits of an element, least significant first (the
    /// coefficients of its polynomial representative).
    pub fn element_digits(&self, v: u32) -> Vec<u32> {
        assert!(self.is_field(), "digits are only defined for field contexts");
        let mut out = vec![0u32; self.m as usize];
        let mut v = v;
        for d in out.iter_mut() {
            *d = v % self.p;
            v /= self.p;
        }
        out
    }

    /// Inverse of [`element_digits`].
    pub fn element_from_digits(&self, digits: &[u32]) -> u32 {
        assert!(self.is_field());
        let mut v = 0u64;
        for &d in digits.iter().rev() {
            debug_assert!(d < self.p);
            v = v * self.p as u64 + d as u64;
        }
        v as u32
    }

    fn digitwise(&self, a: u32, b: u32, f: impl Fn(u64, u64, u64) -> u64) -> u32 {
        let p = self.p as u64;
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.m {
            out += f(a % p, b % p, p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let m = self.m as usize;
        let mut da = [0u64; 32];
        let mut db = [0u64; 32];
        let (mut x, mut y) = (a as u64, b as u64);
        for i in 0..m {
            da[i] = x % p;
            db[i] = y % p;
            x /= p;
            y /= p;
        }
        // schoolbook product, degree <= 2m-2
        let mut prod = [0u64; 63];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
            }
        }
        // reduce modulo the monic reduction polynomial
        let mut red = [0u64; 32];
        let mut r = self.reduction_poly;
        for digit in red.iter_mut().take(m + 1) {
            *digit = r % p;
            r /= p;
        }
        for deg in (m..=2 * m - 2).rev() {
            let c = prod[deg];
            if c == 0 {
                continue;
            }
            prod[deg] = 0;
            let shift = deg - m;
            for i in 0..m {
                prod[i + shift] = (prod[i + shift] + (p - red[i]) * c) % p;
            }
        }
        let mut out = 0u64;
        for i in (0..m).rev() {
            out = out * p + prod[i];
        }
        out as u32
    }
}

/// `(a + b) mod q` as plain integers.
pub fn mod_add(q: u32, a: u32, b: u32) -> u32 {
    ((a as u64 + b as u64) % q as u64) as u32
}

/// `(a - b) mod q` as plain integers.
pub fn mod_sub(q: u32, a: u32, b: u32) -> u32 {
    ((a as u64 + q as u64 - b as u64 % q as u64) % q as u64) as u32
}

/// `-a mod q` as plain integers.
pub fn mod_neg(q: u32, a: u32) -> u32 {
    if a == 0 {
        0
    } else {
        q - a
    }
}

/// Decomposes q as p^m with p prime, if possible.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 0u32;
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            p = d;
            break;
        }
        d += 1;
    }
    if p == 0 {
        return Some((q, 1)); // q itself is prime
    }
    let mut rest = q;
    let mut m = 0u32;
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest == 1 {
        Some((p, m))
    } else {
        None
    }
}

pub fn is_prime_power(q: u32) -> bool {
    prime_power(q).is_some()
}

/// Lexicographically smallest (by integer encoding) monic irreducible
/// polynomial of degree m over F_p.
fn canonical_irreducible(p: u64, m: u32) -> u64 {
    let lead = p.pow(m);
    if m == 1 {
        return lead; // the polynomial x
    }
    for t in 0..lead {
        let cand = lead + t;
        if poly_is_irreducible(cand, p, m) {
            return cand;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

fn poly_deg(x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let mut deg = 0;
    let mut v = x;
    while v >= p {
        v /= p;
        deg += 1;
    }
    Some(deg)
}

/// Remainder of a modulo the monic polynomial b, both integer-encoded over F_p.
fn poly_rem(a: u64, b: u64, p: u64) -> u64 {
    let db = poly_deg(b, p).expect("divisor must be nonzero");
    let mut digits = [0u64; 64];
    let mut bd = [0u64; 64];
    let mut x = a;
    let mut top = 0usize;
    for (i, d) in digits.iter_mut().enumerate() {
        if x == 0 {
            break;
        }
        *d = x % p;
        x /= p;
        top = i;
    }
    let mut y = b;
    for d in bd.iter_mut().take(db as usize + 1) {
        *d = y % p;
        y /= p;
    }
    let mut deg = top as i64;
    while deg >= db as i64 {
        let c = digits[deg as usize];
        if c != 0 {
            let shift = deg as usize - db as usize;
            for i in 0..=db as usize {
                digits[i + shift] = (digits[i + shift] + (p - bd[i]) * c) % p;
            }
        }
        deg -= 1;
    }
    let mut out = 0u64;
    for i in (0..db as usize).rev() {
        out = out * p + digits[i];
    }
    out
}

/// Trial division by every monic polynomial of degree 1..=m/2.
fn poly_is_irreducible(f: u64, p: u64, m: u32) -> bool {
    for d in 1..=m / 2 {
        let lead = p.pow(d);
        for t in 0..lead {
            let g = lead + t;
            if poly_rem(f, g, p) == 0 {
                return false;
            }
        }
    }
    true
}
