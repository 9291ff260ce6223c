//! Exhaustive isomorphism search.
//!
//! For odd `n` every ring isomorphism `f: (a1,b1) -> (a2,b2)` fixes the scalars,
//! commutes with conjugation and therefore maps pure quaternions to pure
//! quaternions. It is determined by `f(i)` and `f(j)`, which must be pure,
//! square to `a1` and `b1`, and anticommute. Conversely any such pair whose
//! induced matrix is invertible defines an isomorphism. Enumerating those
//! pairs is therefore a complete decision procedure.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::linalg;
use super::witness::IsoWitness;
use crate::error::{Error, Result};
use crate::modular::check_odd_modulus;
use crate::quat::{Coords, QuatRing, RingParams};

/// Limits on the exhaustive searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCaps {
    /// Maximum number of pure elements (`n^3`) a scan may visit.
    pub enumeration: u64,
    /// Largest modulus accepted by the oracle-backed partition.
    pub oracle_n: u64,
    /// Largest modulus for the 2×2 matrix embedding search.
    pub m2_n: u64,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            enumeration: 1 << 27,
            oracle_n: 27,
            m2_n: 49,
        }
    }
}

impl SearchCaps {
    pub fn check_enumeration(&self, n: u64) -> Result<()> {
        let size = n.checked_pow(3).unwrap_or(u64::MAX);
        if size > self.enumeration {
            return Err(Error::InstanceTooLarge {
                what: "pure element count n^3",
                size,
                cap: self.enumeration,
            });
        }
        Ok(())
    }

    pub fn check_oracle(&self, n: u64) -> Result<()> {
        if n > self.oracle_n {
            return Err(Error::InstanceTooLarge {
                what: "oracle modulus",
                size: n,
                cap: self.oracle_n,
            });
        }
        self.check_enumeration(n)
    }
}

/// Table of `q^2` for every pure `q`, indexed like [`QuatRing::pure_elements`].
pub(crate) fn pure_square_table(ring: &QuatRing) -> Vec<u64> {
    let n = ring.n();
    let mut out = Vec::with_capacity(n.pow(3) as usize);
    for x1 in 0..n {
        for x2 in 0..n {
            for x3 in 0..n {
                out.push(ring.pure_square_coords(x1, x2, x3));
            }
        }
    }
    out
}

fn pure_from_index(idx: u64, n: u64) -> Coords {
    [0, idx / (n * n), (idx / n) % n, idx % n]
}

/// Every pure `q` with `q^2 = t`, in lexicographic order of `(x1, x2, x3)`.
pub fn pure_sqrt_set(params: RingParams, t: u64, caps: &SearchCaps) -> Result<Vec<Coords>> {
    check_odd_modulus(params.n())?;
    caps.check_enumeration(params.n())?;
    let ring = QuatRing::new(params);
    let t = t % params.n();
    Ok(pure_square_table(&ring)
        .iter()
        .enumerate()
        .filter(|(_, &sq)| sq == t)
        .map(|(idx, _)| pure_from_index(idx as u64, params.n()))
        .collect())
}

/// Smallest witness (in enumeration order of `f(i)`, then `f(j)`) of an
/// isomorphism `r1 -> r2`, or `None` when the rings are not isomorphic.
///
/// Candidate images of `i` are examined in parallel; the result is the
/// globally first hit regardless of scheduling.
pub fn find_isomorphism(r1: RingParams, r2: RingParams, caps: &SearchCaps) -> Result<Option<IsoWitness>> {
    if r1.n() != r2.n() {
        return Err(Error::ModulusMismatch {
            expected: r1.n(),
            found: r2.n(),
        });
    }
    let n = r1.n();
    check_odd_modulus(n)?;
    caps.check_enumeration(n)?;
    let target = QuatRing::new(r2);
    let squares = pure_square_table(&target);
    let candidates = |t: u64| -> Vec<Coords> {
        squares
            .iter()
            .enumerate()
            .filter(|(_, &sq)| sq == t)
            .map(|(idx, _)| pure_from_index(idx as u64, n))
            .collect()
    };
    let for_i = candidates(r1.a());
    let for_j = candidates(r1.b());
    if for_i.is_empty() || for_j.is_empty() {
        return Ok(None);
    }
    let zn = r2.zn();
    let one = target.one().coords();
    let found = for_i.par_iter().find_map_first(|img_i| {
        for_j.iter().find_map(|img_j| {
            if target.pure_bilinear(img_i, img_j) != 0 {
                return None;
            }
            let img_k = target.mul_coords(img_i, img_j);
            let m = linalg::from_columns([one, *img_i, *img_j, img_k]);
            zn.is_unit(linalg::det4(&m, zn)).then_some(m)
        })
    });
    found.map(|m| IsoWitness::from_matrix(r1, r2, m)).transpose()
}

pub fn are_isomorphic(r1: RingParams, r2: RingParams, caps: &SearchCaps) -> Result<bool> {
    Ok(find_isomorphism(r1, r2, caps)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::witness::verify_witness;

    fn params(n: u64, a: i64, b: i64) -> RingParams {
        RingParams::odd(n, a, b).unwrap()
    }

    #[test]
    fn pure_sqrt_set_examples() {
        let caps = SearchCaps::default();
        assert!(pure_sqrt_set(params(3, 1, 0), 2, &caps).unwrap().is_empty());
        let roots = pure_sqrt_set(params(3, 2, 0), 2, &caps).unwrap();
        assert!(roots.contains(&[0, 1, 0, 0]));
        assert_eq!(pure_sqrt_set(params(3, 0, 0), 0, &caps).unwrap().len(), 27);
    }

    #[test]
    fn pure_sqrt_set_cap_and_parity() {
        let caps = SearchCaps {
            enumeration: 100,
            ..SearchCaps::default()
        };
        assert!(matches!(
            pure_sqrt_set(params(5, 1, 1), 1, &caps),
            Err(Error::InstanceTooLarge { cap: 100, .. })
        ));
        let even = RingParams::new(4, 1, 1).unwrap();
        assert!(pure_sqrt_set(even, 1, &SearchCaps::default()).is_err());
    }

    #[test]
    fn find_isomorphism_examples() {
        let caps = SearchCaps::default();
        let w = find_isomorphism(params(3, 1, 1), params(3, 2, 2), &caps)
            .unwrap()
            .unwrap();
        assert_eq!(verify_witness(&w), Ok(()));
        assert!(find_isomorphism(params(3, 1, 0), params(3, 2, 0), &caps)
            .unwrap()
            .is_none());
        let r = params(9, 6, 3);
        let w = find_isomorphism(r, r, &caps).unwrap().unwrap();
        assert_eq!(verify_witness(&w), Ok(()));
    }

    #[test]
    fn find_isomorphism_rejects_bad_input() {
        let caps = SearchCaps::default();
        assert!(find_isomorphism(params(3, 1, 1), params(9, 1, 1), &caps).is_err());
        let even = RingParams::new(4, 1, 1).unwrap();
        assert!(matches!(
            find_isomorphism(even, even, &caps),
            Err(Error::UnsupportedModulus { .. })
        ));
    }

    #[test]
    fn oracle_is_symmetric_mod_3_and_9() {
        let caps = SearchCaps::default();
        for n in [3u64, 9] {
            let all: Vec<_> = (0..n)
                .flat_map(|a| (0..n).map(move |b| RingParams::from_residues(n, a, b).unwrap()))
                .collect();
            for (x, r1) in all.iter().enumerate() {
                for r2 in &all[x..] {
                    let fwd = find_isomorphism(*r1, *r2, &caps).unwrap();
                    let back = find_isomorphism(*r2, *r1, &caps).unwrap();
                    assert_eq!(fwd.is_some(), back.is_some(), "{r1} vs {r2}");
                    if let Some(w) = fwd {
                        assert_eq!(verify_witness(&w), Ok(()));
                    }
                }
            }
        }
    }
}
