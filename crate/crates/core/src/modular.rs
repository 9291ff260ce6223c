//! Exact arithmetic in `Z/nZ` and the number-theoretic helpers used by the
//! isomorphism constructions: valuations, quadratic characters, square roots
//! modulo prime powers, binary quadratic form representations, factorization
//! and the Chinese remainder decomposition.
//!
//! All moduli are bounded by `2^63 - 1`; products go through `u128`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported modulus.
pub const MAX_MODULUS: u64 = (1 << 63) - 1;

/// Below this size `sqrt_mod_pk` is cross-checked against an exhaustive scan in
/// debug builds.
pub const EXHAUSTIVE_SQRT_THRESHOLD: u64 = 1 << 16;

#[inline]
pub fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    if a <= u32::MAX as u64 && b <= u32::MAX as u64 {
        (a * b) % n
    } else {
        ((a as u128 * b as u128) % n as u128) as u64
    }
}

pub fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1 % n;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// The ring `Z/nZ`, operating on canonical representatives in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Zn {
    n: u64,
}

impl Zn {
    pub fn new(n: u64) -> Self {
        assert!((1..=MAX_MODULUS).contains(&n), "modulus {n} out of range");
        Zn { n }
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.n
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.n
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        (x as i128).rem_euclid(self.n as i128) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.n {
            s - self.n
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + (self.n - b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.n - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.n)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.n)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        gcd(a % self.n, self.n) == 1
    }

    /// Inverse by the extended Euclidean algorithm; `None` for non-units.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let (mut r0, mut r1) = (self.n as i128, (a % self.n) as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        if r0 != 1 {
            return None;
        }
        Some(t0.rem_euclid(self.n as i128) as u64)
    }
}

/// An element of `Z/mZ` carried together with its modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Residue {
    value: u64,
    modulus: u64,
}

impl Residue {
    pub fn new(value: u64, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        Residue {
            value: value % modulus,
            modulus,
        }
    }

    pub fn from_i64(value: i64, modulus: u64) -> Self {
        Residue {
            value: Zn::new(modulus).reduce_i64(value),
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// `p^k` for an odd prime `p` and `k >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    p: u64,
    k: u32,
    q: u64,
}

impl PrimePower {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if p.is_multiple_of(2) || !is_prime(p) {
            return Err(Error::UnsupportedModulus {
                n: p,
                reason: "base must be an odd prime",
            });
        }
        if k == 0 {
            return Err(Error::UnsupportedModulus {
                n: p,
                reason: "exponent must be at least 1",
            });
        }
        let q = p
            .checked_pow(k)
            .filter(|&q| q <= MAX_MODULUS)
            .ok_or(Error::UnsupportedModulus {
                n: p,
                reason: "prime power overflows 2^63 - 1",
            })?;
        Ok(PrimePower { p, k, q })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn zn(&self) -> Zn {
        Zn::new(self.q)
    }

    /// `p^e` reduced mod `p^k`, so `p^k` itself maps to 0.
    pub fn p_pow(&self, e: u32) -> u64 {
        if e >= self.k {
            0
        } else {
            self.p.pow(e)
        }
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "{}", self.p)
        } else {
            write!(f, "{}^{}", self.p, self.k)
        }
    }
}

/// Prime factorization of an odd `n >= 3`, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<PrimePower>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[PrimePower] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    /// Exponent of `p` in `n` (0 when `p` does not divide `n`).
    pub fn nu(&self, p: u64) -> u32 {
        self.factors.iter().find(|f| f.p == p).map_or(0, |f| f.k)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|f| f.p)
    }
}

/// Ensures `n` is an odd modulus `>= 3` within range.
pub fn check_odd_modulus(n: u64) -> Result<()> {
    if n < 3 {
        return Err(Error::UnsupportedModulus {
            n,
            reason: "modulus must be at least 3",
        });
    }
    if n.is_multiple_of(2) {
        return Err(Error::UnsupportedModulus {
            n,
            reason: "modulus must be odd",
        });
    }
    if n > MAX_MODULUS {
        return Err(Error::UnsupportedModulus {
            n,
            reason: "modulus exceeds 2^63 - 1",
        });
    }
    Ok(())
}

pub fn factorize(n: u64) -> Result<Factorization> {
    check_odd_modulus(n)?;
    let mut primes = Vec::new();
    collect_prime_factors(n, &mut primes);
    primes.sort_unstable();
    let mut factors: Vec<PrimePower> = Vec::new();
    for p in primes {
        match factors.last_mut() {
            Some(last) if last.p == p => {
                last.k += 1;
                last.q *= p;
            }
            _ => factors.push(PrimePower { p, k: 1, q: p }),
        }
    }
    Ok(Factorization { n, factors })
}

fn collect_prime_factors(mut n: u64, out: &mut Vec<u64>) {
    for p in (3..1000u64).step_by(2) {
        if p * p > n {
            break;
        }
        while n.is_multiple_of(p) {
            out.push(p);
            n /= p;
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            out.push(m);
            continue;
        }
        let d = pollard_brent(m);
        stack.push(d);
        stack.push(m / d);
    }
}

/// Pollard's rho with Brent's cycle detection; `n` odd composite.
fn pollard_brent(n: u64) -> u64 {
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        let mut power = 1u64;
        let mut lam = 1u64;
        while d == 1 {
            if power == lam {
                x = y;
                power *= 2;
                lam = 0;
            }
            y = f(y);
            lam += 1;
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Writes `x ≡ unit · p^s (mod p^k)` with `unit` coprime to `p`.
///
/// Zero has valuation `k` and no unit part.
pub fn valuation(x: u64, pp: &PrimePower) -> (u32, Option<u64>) {
    let mut x = x % pp.q;
    if x == 0 {
        return (pp.k, None);
    }
    let mut s = 0;
    while x.is_multiple_of(pp.p) {
        x /= pp.p;
        s += 1;
    }
    (s, Some(x))
}

/// Quadratic character of a unit modulo an odd prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum QrChar {
    #[serde(rename = "QR")]
    Qr,
    #[serde(rename = "QNR")]
    Qnr,
}

impl QrChar {
    pub fn is_residue(self) -> bool {
        self == QrChar::Qr
    }

    pub fn token(self) -> &'static str {
        match self {
            QrChar::Qr => "QR",
            QrChar::Qnr => "QNR",
        }
    }
}

impl fmt::Display for QrChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

/// Euler's criterion.
pub fn qr_char(u: u64, p: u64) -> Result<QrChar> {
    if u.is_multiple_of(p) {
        return Err(Error::NotCoprime { value: u, p });
    }
    Ok(if pow_mod(u, (p - 1) / 2, p) == 1 {
        QrChar::Qr
    } else {
        QrChar::Qnr
    })
}

/// Quadratic character by squaring every residue; the slow cross-check for [`qr_char`].
pub fn qr_char_exhaustive(u: u64, p: u64) -> Result<QrChar> {
    let u = u % p;
    if u == 0 {
        return Err(Error::NotCoprime { value: u, p });
    }
    let found = (1..p).any(|x| mul_mod(x, x, p) == u);
    Ok(if found { QrChar::Qr } else { QrChar::Qnr })
}

/// Least `u >= 2` that is a quadratic nonresidue mod the odd prime `p`.
pub fn smallest_qnr(p: u64) -> u64 {
    assert!(p % 2 == 1 && is_prime(p), "{p} is not an odd prime");
    (2..p)
        .find(|&u| qr_char(u, p) == Ok(QrChar::Qnr))
        .expect("every odd prime has a quadratic nonresidue")
}

/// Tonelli-Shanks square root of a nonzero residue modulo an odd prime.
fn sqrt_mod_p(t: u64, p: u64) -> Option<u64> {
    let t = t % p;
    if pow_mod(t, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(pow_mod(t, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let z = smallest_qnr(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut tt = pow_mod(t, q, p);
    let mut r = pow_mod(t, q.div_ceil(2), p);
    while tt != 1 {
        let mut i = 0;
        let mut probe = tt;
        while probe != 1 {
            probe = mul_mod(probe, probe, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        tt = mul_mod(tt, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Square root of a unit modulo `p^k`: Tonelli-Shanks mod `p`, then Newton/Hensel
/// lifting. Returns the smaller of the two roots, or `None` for nonresidues.
pub fn sqrt_mod_pk(t: u64, pp: &PrimePower) -> Result<Option<u64>> {
    let zn = pp.zn();
    let t = zn.reduce(t);
    if t.is_multiple_of(pp.p) {
        return Err(Error::NotCoprime { value: t, p: pp.p });
    }
    let root = sqrt_mod_p(t, pp.p).map(|mut x| {
        let mut precision = 1;
        while precision < pp.k {
            let err = zn.sub(zn.mul(x, x), t);
            let inv = zn.inv(zn.add(x, x)).expect("root of a unit is a unit");
            x = zn.sub(x, zn.mul(err, inv));
            precision *= 2;
        }
        debug_assert_eq!(zn.mul(x, x), t);
        x.min(zn.neg(x))
    });
    if cfg!(debug_assertions) && pp.q <= EXHAUSTIVE_SQRT_THRESHOLD {
        debug_assert_eq!(root, sqrt_mod_pk_exhaustive(t, pp), "sqrt of {t} mod {}", pp.q);
    }
    Ok(root)
}

/// Least square root of `t` mod `p^k` by scanning every residue.
pub fn sqrt_mod_pk_exhaustive(t: u64, pp: &PrimePower) -> Option<u64> {
    let zn = pp.zn();
    let t = zn.reduce(t);
    (0..pp.q).find(|&x| zn.mul(x, x) == t)
}

/// Least square root of an arbitrary residue mod `p^k` (units, multiples of
/// `p`, and zero).
pub fn least_sqrt(t: u64, pp: &PrimePower) -> Option<u64> {
    let t = t % pp.q;
    match valuation(t, pp) {
        (_, None) => Some(0),
        (e, Some(unit)) => {
            if e % 2 == 1 {
                return None;
            }
            // x = p^(e/2) * y with y^2 ≡ unit (mod p^(k-e)).
            let rest = PrimePower {
                p: pp.p,
                k: pp.k - e,
                q: pp.q / pp.p.pow(e),
            };
            let y0 = sqrt_mod_pk(unit, &rest).expect("unit part is coprime")?;
            let y = y0.min(rest.q - y0);
            Some(pp.p.pow(e / 2) * y)
        }
    }
}

/// Lexicographically least `(x, y)`, both units, with `x^2 + y^2 ≡ s^-1 (mod p^k)`.
///
/// Fails with [`Error::NoRepresentation`] when no unit pair exists (for
/// instance `s ≡ 1 (mod 3)`).
pub fn two_squares_unit(s: u64, pp: &PrimePower) -> Result<(u64, u64)> {
    let zn = pp.zn();
    let target = zn.inv(s).ok_or(Error::NotCoprime { value: s, p: pp.p })?;
    // Solvability with x a unit depends only on x mod p.
    for x in (1..pp.q.min(pp.p)).filter(|x| x % pp.p != 0) {
        let rest = zn.sub(target, zn.mul(x, x));
        if rest.is_multiple_of(pp.p) {
            continue;
        }
        if let Some(y) = sqrt_mod_pk(rest, pp)? {
            return Ok((x, y));
        }
    }
    Err(Error::NoRepresentation(format!(
        "{target} mod {} is not a sum of two unit squares",
        pp.q
    )))
}

/// Lexicographically least `(x, y)`, `y` a unit, with `x^2 - y^2 ≡ c (mod p^k)`.
///
/// For `p = 3` and `c ≡ 1 (mod 3)` there is no such pair and
/// [`Error::NoRepresentation`] is returned.
pub fn hyperbola_unit(c: u64, pp: &PrimePower) -> Result<(u64, u64)> {
    let zn = pp.zn();
    let c = zn.reduce(c);
    if c.is_multiple_of(pp.p) {
        return Err(Error::NotCoprime { value: c, p: pp.p });
    }
    let mut best: Option<(u64, u64)> = None;
    for x in 0..pp.q.min(pp.p) {
        let y_sq = zn.sub(zn.mul(x, x), c);
        if y_sq.is_multiple_of(pp.p) {
            continue;
        }
        if let Some(y) = sqrt_mod_pk(y_sq, pp)? {
            best = Some((x, y));
            break;
        }
    }
    best.ok_or_else(|| Error::NoRepresentation(format!("{c} mod {} is not x^2 - y^2 with y a unit", pp.q)))
}

/// Lexicographically least `(x, y)` with `x^2 - c·y^2 ≡ d (mod p^k)`, `c` a unit.
///
/// No unit condition on `x` or `y`. This is the form behind every
/// two-dimensional block in the explicit isomorphisms (`c = -1` gives sums of
/// two squares, `c = 1` the hyperbola).
pub fn norm_form(c: u64, d: u64, pp: &PrimePower) -> Option<(u64, u64)> {
    let zn = pp.zn();
    let c_inv = zn.inv(c)?;
    let d = zn.reduce(d);
    (0..pp.q).find_map(|x| {
        let t = zn.mul(zn.sub(zn.mul(x, x), d), c_inv);
        least_sqrt(t, pp).map(|y| (x, y))
    })
}

/// Reduces `x mod n` into its components modulo each prime power of `f`.
pub fn crt_split(x: Residue, f: &Factorization) -> Result<Vec<Residue>> {
    if x.modulus != f.n {
        return Err(Error::ModulusMismatch {
            expected: f.n,
            found: x.modulus,
        });
    }
    Ok(f.factors.iter().map(|pp| Residue::new(x.value, pp.q)).collect())
}

/// Inverse of [`crt_split`].
pub fn crt_combine(parts: &[Residue], f: &Factorization) -> Result<Residue> {
    if parts.len() != f.factors.len() {
        return Err(Error::Precondition(format!(
            "expected {} components, got {}",
            f.factors.len(),
            parts.len()
        )));
    }
    let zn = Zn::new(f.n);
    let mut acc = 0;
    for (part, pp) in parts.iter().zip(&f.factors) {
        if part.modulus != pp.q {
            return Err(Error::ModulusMismatch {
                expected: pp.q,
                found: part.modulus,
            });
        }
        let cofactor = f.n / pp.q;
        let inv = pp.zn().inv(cofactor % pp.q).expect("coprime cofactor");
        acc = zn.add(acc, zn.mul(zn.mul(part.value, cofactor), inv));
    }
    Ok(Residue::new(acc, f.n))
}
