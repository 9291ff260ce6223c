//! Shape of an isomorphism `(a,b) -> (a,c)` relative to a standard basis of
//! the target that starts with `f(i)`.

use super::linalg;
use super::search::{pure_square_table, SearchCaps};
use super::witness::IsoWitness;
use crate::error::{Error, Result};
use crate::modular::check_odd_modulus;
use crate::quat::{Coords, QuatRing};

/// Extends `{1, f(i)}` to a standard basis `{1, I = f(i), J, K = IJ}` of the
/// target and checks that in this basis `f(j) = α1 I + β1 J + γ1 K` and
/// `f(k) = α2 I + β2 J + γ2 K` with `α1·a = α2·a = 0`.
///
/// Returns `Ok(false)` when no such basis exists or the shape fails.
pub fn standard_basis_shape_check(w: &IsoWitness, caps: &SearchCaps) -> Result<bool> {
    let (src, tgt) = (w.source(), w.target());
    check_odd_modulus(src.n())?;
    if src.a() != tgt.a() {
        return Err(Error::Precondition(format!(
            "first parameters differ ({} vs {})",
            src.a(),
            tgt.a()
        )));
    }
    caps.check_enumeration(src.n())?;
    let ring = QuatRing::new(tgt);
    let zn = ring.zn();
    let n = src.n();
    let img_i = w.img_i();
    let one = ring.one().coords();
    let squares = pure_square_table(&ring);
    let basis = squares.iter().enumerate().find_map(|(idx, &sq)| {
        if sq != tgt.b() {
            return None;
        }
        let idx = idx as u64;
        let big_j: Coords = [0, idx / (n * n), (idx / n) % n, idx % n];
        if ring.pure_bilinear(&img_i, &big_j) != 0 {
            return None;
        }
        let big_k = ring.mul_coords(&img_i, &big_j);
        linalg::inverse4(&linalg::from_columns([one, img_i, big_j, big_k]), zn)
    });
    let Some(to_basis) = basis else {
        return Ok(false);
    };
    let a = src.a();
    let ok = [w.column(2), w.column(3)].iter().all(|col| {
        let coords = linalg::mat_vec4(&to_basis, col, zn);
        coords[0] == 0 && zn.mul(coords[1], a) == 0
    });
    Ok(ok)
}
