//! Embedding of `(a,b / Z/nZ)` onto the 2×2 matrix ring for unit `a`, `b`.

use serde::{Deserialize, Serialize};

use super::linalg;
use super::search::SearchCaps;
use crate::error::{Error, Result};
use crate::modular::{check_odd_modulus, Zn};

pub type Mat2 = [[u64; 2]; 2];

/// Matrices `I`, `J` with `I^2 = a`, `J^2 = b`, `IJ = -JI` such that
/// `{Id, I, J, IJ}` is a basis of `M_2(Z/nZ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct M2Witness {
    pub n: u64,
    pub a: u64,
    pub b: u64,
    #[serde(rename = "I")]
    pub i: Mat2,
    #[serde(rename = "J")]
    pub j: Mat2,
}

fn mul2(x: &Mat2, y: &Mat2, zn: Zn) -> Mat2 {
    std::array::from_fn(|r| std::array::from_fn(|c| zn.add(zn.mul(x[r][0], y[0][c]), zn.mul(x[r][1], y[1][c]))))
}

fn flatten(m: &Mat2) -> [u64; 4] {
    [m[0][0], m[0][1], m[1][0], m[1][1]]
}

fn scalar2(s: u64) -> Mat2 {
    [[s, 0], [0, s]]
}

fn spans(i: &Mat2, j: &Mat2, zn: Zn) -> bool {
    let ij = mul2(i, j, zn);
    let m = linalg::from_columns([flatten(&scalar2(zn.reduce(1))), flatten(i), flatten(j), flatten(&ij)]);
    zn.is_unit(linalg::det4(&m, zn))
}

impl M2Witness {
    /// Re-checks every defining relation and the spanning condition.
    pub fn verify(&self) -> bool {
        let zn = Zn::new(self.n);
        let (i, j) = (&self.i, &self.j);
        let reduced = flatten(i).iter().chain(flatten(j).iter()).all(|&x| x < self.n);
        let ij = mul2(i, j, zn);
        let ji = mul2(j, i, zn);
        let neg_ji = ji.map(|row| row.map(|x| zn.neg(x)));
        reduced
            && mul2(i, i, zn) == scalar2(zn.reduce(self.a))
            && mul2(j, j, zn) == scalar2(zn.reduce(self.b))
            && ij == neg_ji
            && spans(i, j, zn)
    }
}

/// First witness in lexicographic order of the entries of `I`, then `J`,
/// both ranging over trace-zero matrices.
pub fn m2_witness(n: u64, a: u64, b: u64, caps: &SearchCaps) -> Result<M2Witness> {
    check_odd_modulus(n)?;
    if n > caps.m2_n {
        return Err(Error::InstanceTooLarge {
            what: "matrix embedding modulus",
            size: n,
            cap: caps.m2_n,
        });
    }
    let zn = Zn::new(n);
    let (a, b) = (zn.reduce(a), zn.reduce(b));
    for (name, v) in [("a", a), ("b", b)] {
        if !zn.is_unit(v) {
            return Err(Error::Precondition(format!("{name} = {v} is not a unit mod {n}")));
        }
    }
    // Trace zero: [[x, y], [z, -x]] squares to (x^2 + yz)·Id.
    let trace_zero_roots = |t: u64| {
        (0..n).flat_map(move |x| {
            (0..n).flat_map(move |y| {
                (0..n)
                    .filter_map(move |z| (zn.add(zn.mul(x, x), zn.mul(y, z)) == t).then_some([[x, y], [z, zn.neg(x)]]))
            })
        })
    };
    let js: Vec<Mat2> = trace_zero_roots(b).collect();
    for i in trace_zero_roots(a) {
        for j in &js {
            let ij = mul2(&i, j, zn);
            let ji = mul2(j, &i, zn);
            if ij
                .iter()
                .flatten()
                .zip(ji.iter().flatten())
                .any(|(x, y)| zn.add(*x, *y) != 0)
            {
                continue;
            }
            if spans(&i, j, zn) {
                return Ok(M2Witness { n, a, b, i, j: *j });
            }
        }
    }
    Err(Error::NoRepresentation(format!(
        "no embedding of ({a},{b} / Z/{n}Z) into M_2"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_witness_mod_3() {
        let w = m2_witness(3, 2, 2, &SearchCaps::default()).unwrap();
        assert_eq!(w.i, [[0, 1], [2, 0]]);
        assert_eq!(w.j, [[1, 1], [1, 2]]);
        assert!(w.verify());
    }

    #[test]
    fn witnesses_exist_for_units() {
        let caps = SearchCaps::default();
        assert!(m2_witness(3, 1, 1, &caps).unwrap().verify());
        assert!(m2_witness(5, 2, 3, &caps).unwrap().verify());
        assert!(m2_witness(15, 7, 11, &caps).unwrap().verify());
    }

    #[test]
    fn rejects_non_units_and_large_moduli() {
        let caps = SearchCaps::default();
        assert!(matches!(m2_witness(9, 3, 1, &caps), Err(Error::Precondition(_))));
        assert!(matches!(
            m2_witness(51, 1, 1, &caps),
            Err(Error::InstanceTooLarge { .. })
        ));
        assert!(matches!(
            m2_witness(4, 1, 1, &caps),
            Err(Error::UnsupportedModulus { .. })
        ));
    }

    #[test]
    fn verify_catches_tampering() {
        let mut w = m2_witness(5, 2, 3, &SearchCaps::default()).unwrap();
        w.j[0][1] = (w.j[0][1] + 1) % 5;
        assert!(!w.verify());
    }
}
