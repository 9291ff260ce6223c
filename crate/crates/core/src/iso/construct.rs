//! Explicit isomorphisms between quaternion rings over `Z/p^kZ`.
//!
//! Each [`Construction`] names a family of isomorphic pairs together with the
//! coordinate matrix realizing it. Witnesses always run from the left-hand
//! ring of the family (`source()`) to the right-hand one (`target()`); when
//! the natural matrix goes the other way it is inverted.

use serde::Serialize;

use super::witness::IsoWitness;
use crate::error::{Error, Result};
use crate::modular::{
    check_odd_modulus, hyperbola_unit, norm_form, qr_char, sqrt_mod_pk, two_squares_unit, PrimePower, QrChar,
};
use crate::quat::RingParams;

/// A family of explicit isomorphisms and its parameters. All parameters are
/// residues mod `p^k` (or mod `n` for [`Construction::Swap`]).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Construction {
    /// `(a, b) ≅ (b, a)` via `i -> J, j -> I, k -> -K`.
    Swap { n: u64, a: u64, b: u64 },
    /// `(a, b p^s) ≅ (a, -a b p^s)` for a unit `a`; the inverse of
    /// `I -> i, J -> k, K -> a j`.
    NegatedProduct { pp: PrimePower, a: u64, b: u64, s: u32 },
    /// `(t p^r, m) ≅ (s p^r, m)` when `st` is a square mod `p`; `i -> x I`,
    /// `k -> x K` with `x^2 = t s^-1`.
    SquareClass {
        pp: PrimePower,
        t: u64,
        s: u64,
        r: u32,
        m: u64,
    },
    /// `(p^r, p^r) ≅ (s p^r, s p^r)`; `i -> x I + y J`, `j -> -y I + x J`,
    /// `k -> s^-1 K` with `x^2 + y^2 = s^-1`.
    DiagonalScaling { pp: PrimePower, s: u64, r: u32 },
    /// `(1, a p^s) ≅ (1, p^s)`; inverse of `j -> x J + y K`, `k -> y J + x K`
    /// with `x^2 - y^2 = a^-1`.
    AbsorbUnitOverOne { pp: PrimePower, a: u64, s: u32 },
    /// `(u, p^s) ≅ (u, b p^s)` for a nonresidue `u`; `j -> x J + y K`,
    /// `k -> u y J + x K` with `x^2 - u y^2 = b^-1`.
    AbsorbUnitOverNonresidue { pp: PrimePower, u: u64, b: u64, s: u32 },
}

impl Construction {
    /// Short identifier used in reports.
    pub fn family(&self) -> &'static str {
        match self {
            Construction::Swap { .. } => "swap",
            Construction::NegatedProduct { .. } => "negated-product",
            Construction::SquareClass { .. } => "square-class",
            Construction::DiagonalScaling { .. } => "diagonal-scaling",
            Construction::AbsorbUnitOverOne { .. } => "absorb-unit-over-one",
            Construction::AbsorbUnitOverNonresidue { .. } => "absorb-unit-over-nonresidue",
        }
    }

    pub fn source(&self) -> Result<RingParams> {
        Ok(self.rings()?.0)
    }

    pub fn target(&self) -> Result<RingParams> {
        Ok(self.rings()?.1)
    }

    fn rings(&self) -> Result<(RingParams, RingParams)> {
        let mk = |pp: &PrimePower, a: u64, b: u64| RingParams::from_residues(pp.q(), a, b);
        let pair = match *self {
            Construction::Swap { n, a, b } => {
                check_odd_modulus(n)?;
                let src = RingParams::from_residues(n, a, b)?;
                (src, src.swapped())
            }
            Construction::NegatedProduct { pp, a, b, s } => {
                let zn = pp.zn();
                let bp = zn.mul(b, pp.p_pow(s));
                (mk(&pp, a, bp)?, mk(&pp, a, zn.neg(zn.mul(a, bp)))?)
            }
            Construction::SquareClass { pp, t, s, r, m } => {
                let zn = pp.zn();
                let pr = pp.p_pow(r);
                (mk(&pp, zn.mul(t, pr), m)?, mk(&pp, zn.mul(s, pr), m)?)
            }
            Construction::DiagonalScaling { pp, s, r } => {
                let zn = pp.zn();
                let pr = pp.p_pow(r);
                (mk(&pp, pr, pr)?, mk(&pp, zn.mul(s, pr), zn.mul(s, pr))?)
            }
            Construction::AbsorbUnitOverOne { pp, a, s } => {
                let ps = pp.p_pow(s);
                (mk(&pp, 1, pp.zn().mul(a, ps))?, mk(&pp, 1, ps)?)
            }
            Construction::AbsorbUnitOverNonresidue { pp, u, b, s } => {
                let ps = pp.p_pow(s);
                (mk(&pp, u, ps)?, mk(&pp, u, pp.zn().mul(b, ps))?)
            }
        };
        Ok(pair)
    }

    fn check_hypotheses(&self) -> Result<()> {
        let unit = |pp: &PrimePower, x: u64, name: &str| {
            if x.is_multiple_of(pp.p()) {
                Err(Error::Precondition(format!(
                    "{name} = {x} must be coprime to {}",
                    pp.p()
                )))
            } else {
                Ok(())
            }
        };
        let exponent = |pp: &PrimePower, e: u32, name: &str| {
            if e > pp.k() {
                Err(Error::Precondition(format!("{name} = {e} exceeds k = {}", pp.k())))
            } else {
                Ok(())
            }
        };
        match *self {
            Construction::Swap { .. } => Ok(()),
            Construction::NegatedProduct { pp, a, s, .. } => {
                unit(&pp, a, "a")?;
                exponent(&pp, s, "s")
            }
            Construction::SquareClass { pp, t, s, r, .. } => {
                unit(&pp, t, "t")?;
                unit(&pp, s, "s")?;
                exponent(&pp, r, "r")?;
                if qr_char(pp.zn().mul(s, t), pp.p())? != QrChar::Qr {
                    return Err(Error::Precondition(format!(
                        "s·t = {s}·{t} is not a quadratic residue mod {}",
                        pp.p()
                    )));
                }
                Ok(())
            }
            Construction::DiagonalScaling { pp, s, r } => {
                unit(&pp, s, "s")?;
                exponent(&pp, r, "r")
            }
            Construction::AbsorbUnitOverOne { pp, a, s } => {
                unit(&pp, a, "a")?;
                exponent(&pp, s, "s")
            }
            Construction::AbsorbUnitOverNonresidue { pp, u, b, s } => {
                unit(&pp, b, "b")?;
                exponent(&pp, s, "s")?;
                if qr_char(u, pp.p())? != QrChar::Qnr {
                    return Err(Error::Precondition(format!(
                        "u = {u} is not a quadratic nonresidue mod {}",
                        pp.p()
                    )));
                }
                Ok(())
            }
        }
    }

    /// Builds the explicit witness `source -> target`.
    pub fn witness(&self) -> Result<IsoWitness> {
        self.check_hypotheses()?;
        let (src, tgt) = self.rings()?;
        match *self {
            Construction::Swap { .. } => IsoWitness::from_images(src, tgt, [0, 0, 1, 0], [0, 1, 0, 0]),
            Construction::NegatedProduct { pp, .. } => {
                // Natural direction is target -> source: I -> i, J -> k.
                let q = pp.q();
                IsoWitness::from_images(tgt, src, [0, 1, 0, 0], [0, 0, 0, 1 % q])?.inverse()
            }
            Construction::SquareClass { pp, t, s, .. } => {
                let zn = pp.zn();
                let ratio = zn.mul(t, zn.inv(s).expect("checked unit"));
                let x = sqrt_mod_pk(ratio, &pp)?.expect("s·t is a residue");
                IsoWitness::from_images(src, tgt, [0, x, 0, 0], [0, 0, 1 % pp.q(), 0])
            }
            Construction::DiagonalScaling { pp, s, .. } => {
                let zn = pp.zn();
                let target = zn.inv(s).expect("checked unit");
                // Unit coordinates are not always available (s ≡ 1 mod 3); the
                // block determinant is x^2 + y^2 = s^-1 either way.
                let (x, y) = match two_squares_unit(s, &pp) {
                    Ok(xy) => xy,
                    Err(Error::NoRepresentation(_)) => norm_form(zn.neg(1), target, &pp).ok_or_else(|| {
                        Error::NoRepresentation(format!("{target} as a sum of two squares mod {}", pp.q()))
                    })?,
                    Err(e) => return Err(e),
                };
                IsoWitness::from_images(src, tgt, [0, x, y, 0], [0, zn.neg(y), x, 0])
            }
            Construction::AbsorbUnitOverOne { pp, a, .. } => {
                let zn = pp.zn();
                let c = zn.inv(a).expect("checked unit");
                let (x, y) = match hyperbola_unit(c, &pp) {
                    Ok(xy) => xy,
                    Err(Error::NoRepresentation(_)) => norm_form(1, c, &pp)
                        .ok_or_else(|| Error::NoRepresentation(format!("{c} as x^2 - y^2 mod {}", pp.q())))?,
                    Err(e) => return Err(e),
                };
                // Natural direction is (1, p^s) -> (1, a p^s).
                IsoWitness::from_images(tgt, src, [0, 1, 0, 0], [0, 0, x, y])?.inverse()
            }
            Construction::AbsorbUnitOverNonresidue { pp, u, b, .. } => {
                let c = pp.zn().inv(b).expect("checked unit");
                let (x, y) = norm_form(u, c, &pp)
                    .ok_or_else(|| Error::NoRepresentation(format!("{c} as x^2 - {u} y^2 mod {}", pp.q())))?;
                IsoWitness::from_images(src, tgt, [0, 1, 0, 0], [0, 0, x, y])
            }
        }
    }

    /// Every admissible parameter tuple of every family over `Z/p^kZ`.
    pub fn admissible(pp: &PrimePower) -> Vec<Construction> {
        let pp = *pp;
        let q = pp.q();
        let p = pp.p();
        let units: Vec<u64> = (1..q).filter(|x| x % p != 0).collect();
        let exps = 0..=pp.k();
        let mut out = Vec::new();
        for a in 0..q {
            for b in 0..q {
                out.push(Construction::Swap { n: q, a, b });
            }
        }
        for &a in &units {
            for b in 0..q {
                for s in exps.clone() {
                    out.push(Construction::NegatedProduct { pp, a, b, s });
                }
            }
        }
        for &t in &units {
            for &s in &units {
                if qr_char(t * s % p, p) != Ok(QrChar::Qr) {
                    continue;
                }
                for r in exps.clone() {
                    for m in 0..q {
                        out.push(Construction::SquareClass { pp, t, s, r, m });
                    }
                }
            }
        }
        for &s in &units {
            for r in exps.clone() {
                out.push(Construction::DiagonalScaling { pp, s, r });
            }
        }
        for &a in &units {
            for s in exps.clone() {
                out.push(Construction::AbsorbUnitOverOne { pp, a, s });
            }
        }
        for &u in units.iter().filter(|&&u| qr_char(u, p) == Ok(QrChar::Qnr)) {
            for &b in &units {
                for s in exps.clone() {
                    out.push(Construction::AbsorbUnitOverNonresidue { pp, u, b, s });
                }
            }
        }
        out
    }
}

/// Free-function form of [`Construction::witness`].
pub fn constructive_witness(construction: &Construction) -> Result<IsoWitness> {
    construction.witness()
}
