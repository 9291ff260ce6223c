//! The ring `(a,b / Z/nZ)`: free `Z/nZ`-module on `{1, i, j, k}` with
//! `i^2 = a`, `j^2 = b`, `ij = -ji = k`. The parameters need not be units.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular::{check_odd_modulus, Zn, MAX_MODULUS};

/// Coordinates with respect to the standard basis `{1, i, j, k}`.
pub type Coords = [u64; 4];

/// The triple `(n, a, b)` with `a`, `b` reduced mod `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingParams {
    n: u64,
    a: u64,
    b: u64,
}

impl RingParams {
    /// Arithmetic-only constructor; any `n >= 2`.
    pub fn new(n: u64, a: i64, b: i64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(Error::UnsupportedModulus {
                n,
                reason: "modulus must be in [2, 2^63 - 1]",
            });
        }
        let zn = Zn::new(n);
        Ok(RingParams {
            n,
            a: zn.reduce_i64(a),
            b: zn.reduce_i64(b),
        })
    }

    /// Constructor for classification and isomorphism work: `n` odd, `n >= 3`.
    pub fn odd(n: u64, a: i64, b: i64) -> Result<Self> {
        check_odd_modulus(n)?;
        Self::new(n, a, b)
    }

    /// Same as [`RingParams::new`] for already non-negative parameters.
    pub fn from_residues(n: u64, a: u64, b: u64) -> Result<Self> {
        if !(2..=MAX_MODULUS).contains(&n) {
            return Err(Error::UnsupportedModulus {
                n,
                reason: "modulus must be in [2, 2^63 - 1]",
            });
        }
        Ok(RingParams { n, a: a % n, b: b % n })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn zn(&self) -> Zn {
        Zn::new(self.n)
    }

    pub fn swapped(&self) -> RingParams {
        RingParams {
            n: self.n,
            a: self.b,
            b: self.a,
        }
    }

    /// Reduce the parameters modulo a divisor `m` of `n`.
    pub fn reduce(&self, m: u64) -> Result<RingParams> {
        if m < 2 || !self.n.is_multiple_of(m) {
            return Err(Error::ModulusMismatch {
                expected: self.n,
                found: m,
            });
        }
        Ok(RingParams {
            n: m,
            a: self.a % m,
            b: self.b % m,
        })
    }
}

impl fmt::Display for RingParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{} / Z/{}Z)", self.a, self.b, self.n)
    }
}

/// A quaternion ring with its multiplication table materialized.
///
/// `table[x][y] = (z, c)` means `e_x · e_y = c · e_z` for basis elements
/// `e_0 = 1, e_1 = i, e_2 = j, e_3 = k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatRing {
    params: RingParams,
    zn: Zn,
    table: [[(usize, u64); 4]; 4],
}

impl QuatRing {
    pub fn new(params: RingParams) -> Self {
        let zn = params.zn();
        let (a, b) = (params.a, params.b);
        let ab = zn.mul(a, b);
        let one = zn.reduce(1);
        let m = |x: u64| zn.neg(x);
        let table = [
            [(0, one), (1, one), (2, one), (3, one)],
            [(1, one), (0, a), (3, one), (2, a)],
            [(2, one), (3, m(one)), (0, b), (1, m(b))],
            [(3, one), (2, m(a)), (1, b), (0, m(ab))],
        ];
        QuatRing { params, zn, table }
    }

    pub fn params(&self) -> RingParams {
        self.params
    }

    pub fn n(&self) -> u64 {
        self.params.n
    }

    pub fn zn(&self) -> Zn {
        self.zn
    }

    /// Basis product `e_x · e_y` as `(index, coefficient)`.
    pub fn basis_product(&self, x: usize, y: usize) -> (usize, u64) {
        self.table[x][y]
    }

    pub fn elem(&self, coords: [i64; 4]) -> Quat<'_> {
        Quat {
            ring: self,
            c: coords.map(|x| self.zn.reduce_i64(x)),
        }
    }

    pub fn from_coords(&self, coords: Coords) -> Quat<'_> {
        Quat {
            ring: self,
            c: coords.map(|x| self.zn.reduce(x)),
        }
    }

    pub fn scalar(&self, x: u64) -> Quat<'_> {
        self.from_coords([x, 0, 0, 0])
    }

    pub fn basis(&self, idx: usize) -> Quat<'_> {
        let mut c = [0; 4];
        c[idx] = self.zn.reduce(1);
        Quat { ring: self, c }
    }

    pub fn one(&self) -> Quat<'_> {
        self.basis(0)
    }

    pub fn i(&self) -> Quat<'_> {
        self.basis(1)
    }

    pub fn j(&self) -> Quat<'_> {
        self.basis(2)
    }

    pub fn k(&self) -> Quat<'_> {
        self.basis(3)
    }

    pub fn add_coords(&self, x: &Coords, y: &Coords) -> Coords {
        std::array::from_fn(|t| self.zn.add(x[t], y[t]))
    }

    pub fn sub_coords(&self, x: &Coords, y: &Coords) -> Coords {
        std::array::from_fn(|t| self.zn.sub(x[t], y[t]))
    }

    pub fn neg_coords(&self, x: &Coords) -> Coords {
        x.map(|v| self.zn.neg(v))
    }

    pub fn scale_coords(&self, s: u64, x: &Coords) -> Coords {
        x.map(|v| self.zn.mul(s, v))
    }

    /// Product by bilinear extension of the structure table.
    pub fn mul_coords(&self, x: &Coords, y: &Coords) -> Coords {
        let zn = self.zn;
        let mut out = [0u64; 4];
        for (s, &xs) in x.iter().enumerate() {
            if xs == 0 {
                continue;
            }
            for (t, &yt) in y.iter().enumerate() {
                if yt == 0 {
                    continue;
                }
                let (idx, coef) = self.table[s][t];
                out[idx] = zn.add(out[idx], zn.mul(coef, zn.mul(xs, yt)));
            }
        }
        out
    }

    pub fn conj_coords(&self, x: &Coords) -> Coords {
        [x[0], self.zn.neg(x[1]), self.zn.neg(x[2]), self.zn.neg(x[3])]
    }

    pub fn trace_coords(&self, x: &Coords) -> u64 {
        self.zn.add(x[0], x[0])
    }

    /// `x0^2 - a x1^2 - b x2^2 + ab x3^2`.
    pub fn norm_coords(&self, x: &Coords) -> u64 {
        let zn = self.zn;
        let (a, b) = (self.params.a, self.params.b);
        let sq = |v: u64| zn.mul(v, v);
        let mut acc = sq(x[0]);
        acc = zn.sub(acc, zn.mul(a, sq(x[1])));
        acc = zn.sub(acc, zn.mul(b, sq(x[2])));
        zn.add(acc, zn.mul(zn.mul(a, b), sq(x[3])))
    }

    /// `a x1^2 + b x2^2 - ab x3^2`, the scalar square of the pure part.
    pub fn pure_square_coords(&self, x1: u64, x2: u64, x3: u64) -> u64 {
        let zn = self.zn;
        let (a, b) = (self.params.a, self.params.b);
        let sq = |v: u64| zn.mul(v, v);
        let acc = zn.add(zn.mul(a, sq(x1)), zn.mul(b, sq(x2)));
        zn.sub(acc, zn.mul(zn.mul(a, b), sq(x3)))
    }

    /// Half of `xy + yx` for pure `x`, `y`: `a x1 y1 + b x2 y2 - ab x3 y3`.
    /// Pure elements anticommute iff this vanishes (n odd).
    pub fn pure_bilinear(&self, x: &Coords, y: &Coords) -> u64 {
        let zn = self.zn;
        let (a, b) = (self.params.a, self.params.b);
        let acc = zn.add(zn.mul(a, zn.mul(x[1], y[1])), zn.mul(b, zn.mul(x[2], y[2])));
        zn.sub(acc, zn.mul(zn.mul(a, b), zn.mul(x[3], y[3])))
    }

    /// Checks `(e_x e_y) e_z = e_x (e_y e_z)` on all 64 basis triples, which by
    /// trilinearity certifies associativity of the whole ring.
    pub fn check_associativity(&self) -> bool {
        (0..4).all(|x| {
            (0..4).all(|y| {
                (0..4).all(|z| {
                    let (ex, ey, ez) = (self.basis(x).c, self.basis(y).c, self.basis(z).c);
                    let left = self.mul_coords(&self.mul_coords(&ex, &ey), &ez);
                    let right = self.mul_coords(&ex, &self.mul_coords(&ey, &ez));
                    left == right
                })
            })
        })
    }

    /// All `n^4` elements in lexicographic coordinate order.
    pub fn elements(&self) -> impl Iterator<Item = Quat<'_>> + '_ {
        let n = self.n();
        (0..n.pow(4)).map(move |idx| {
            let c = [idx / (n * n * n), (idx / (n * n)) % n, (idx / n) % n, idx % n];
            Quat { ring: self, c }
        })
    }

    /// All `n^3` pure elements in lexicographic order of `(x1, x2, x3)`.
    pub fn pure_elements(&self) -> impl Iterator<Item = Coords> + '_ {
        let n = self.n();
        (0..n.pow(3)).map(move |idx| [0, idx / (n * n), (idx / n) % n, idx % n])
    }

    /// Parses `x0 + x1*i + x2*j + x3*k` (terms in any order, signs allowed,
    /// coefficients optional) or the compact `[x0,x1,x2,x3]`.
    pub fn parse(&self, text: &str) -> Result<Quat<'_>> {
        let text = text.trim();
        if let Some(inner) = text.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
            if parts.len() != 4 {
                return Err(Error::Parse(format!("expected 4 coordinates in {text:?}")));
            }
            let mut c = [0i64; 4];
            for (slot, part) in c.iter_mut().zip(parts) {
                *slot = part
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad coordinate {part:?}")))?;
            }
            return Ok(self.elem(c));
        }
        let mut acc = [0u64; 4];
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty quaternion".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (pos, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && pos > 0 {
                terms.push(&compact[start..pos]);
                start = pos;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (negative, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            let (coef, idx) = match body.rsplit_once('*') {
                Some((c, unit)) => (c, basis_index(unit)?),
                None => match body.chars().last() {
                    Some(ch @ ('i' | 'j' | 'k')) => (&body[..body.len() - 1], basis_index(&ch.to_string())?),
                    _ => (body, 0),
                },
            };
            let value: u64 = if coef.is_empty() {
                1
            } else {
                coef.parse()
                    .map_err(|_| Error::Parse(format!("bad coefficient in {term:?}")))?
            };
            let value = self.zn.reduce(value);
            let value = if negative { self.zn.neg(value) } else { value };
            acc[idx] = self.zn.add(acc[idx], value);
        }
        Ok(Quat { ring: self, c: acc })
    }
}

fn basis_index(unit: &str) -> Result<usize> {
    match unit {
        "i" => Ok(1),
        "j" => Ok(2),
        "k" => Ok(3),
        other => Err(Error::Parse(format!("unknown basis element {other:?}"))),
    }
}

/// An element `x0 + x1 i + x2 j + x3 k` of a [`QuatRing`].
#[derive(Clone, Copy)]
pub struct Quat<'r> {
    ring: &'r QuatRing,
    c: Coords,
}

impl<'r> Quat<'r> {
    pub fn ring(&self) -> &'r QuatRing {
        self.ring
    }

    pub fn coords(&self) -> Coords {
        self.c
    }

    pub fn scalar_part(&self) -> u64 {
        self.c[0]
    }

    pub fn pure_part(&self) -> Quat<'r> {
        Quat {
            ring: self.ring,
            c: [0, self.c[1], self.c[2], self.c[3]],
        }
    }

    pub fn is_pure(&self) -> bool {
        self.c[0] == 0
    }

    fn same_ring(&self, other: &Quat<'_>) -> Result<()> {
        if std::ptr::eq(self.ring, other.ring) || self.ring.params == other.ring.params {
            Ok(())
        } else {
            Err(Error::MismatchedRings {
                left: self.ring.params.to_string(),
                right: other.ring.params.to_string(),
            })
        }
    }

    pub fn mul(&self, other: &Quat<'_>) -> Result<Quat<'r>> {
        self.same_ring(other)?;
        Ok(Quat {
            ring: self.ring,
            c: self.ring.mul_coords(&self.c, &other.c),
        })
    }

    pub fn add(&self, other: &Quat<'_>) -> Result<Quat<'r>> {
        self.same_ring(other)?;
        Ok(Quat {
            ring: self.ring,
            c: self.ring.add_coords(&self.c, &other.c),
        })
    }

    pub fn sub(&self, other: &Quat<'_>) -> Result<Quat<'r>> {
        self.same_ring(other)?;
        Ok(Quat {
            ring: self.ring,
            c: self.ring.sub_coords(&self.c, &other.c),
        })
    }

    pub fn neg(&self) -> Quat<'r> {
        Quat {
            ring: self.ring,
            c: self.ring.neg_coords(&self.c),
        }
    }

    pub fn scale(&self, s: u64) -> Quat<'r> {
        Quat {
            ring: self.ring,
            c: self.ring.scale_coords(s, &self.c),
        }
    }

    /// `x0 - (x1 i + x2 j + x3 k)`.
    pub fn conj(&self) -> Quat<'r> {
        Quat {
            ring: self.ring,
            c: self.ring.conj_coords(&self.c),
        }
    }

    pub fn trace(&self) -> u64 {
        self.ring.trace_coords(&self.c)
    }

    pub fn norm(&self) -> u64 {
        self.ring.norm_coords(&self.c)
    }

    /// Scalar square of a pure quaternion.
    pub fn pure_square(&self) -> Result<u64> {
        if !self.is_pure() {
            return Err(Error::NotPure);
        }
        Ok(self.ring.pure_square_coords(self.c[1], self.c[2], self.c[3]))
    }

    /// Compact form `[x0,x1,x2,x3]`.
    pub fn to_compact(&self) -> String {
        format!("[{},{},{},{}]", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}

impl PartialEq for Quat<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.params == other.ring.params && self.c == other.c
    }
}

impl Eq for Quat<'_> {}

impl fmt::Debug for Quat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring.params)
    }
}

impl fmt::Display for Quat<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*i + {}*j + {}*k", self.c[0], self.c[1], self.c[2], self.c[3])
    }
}
