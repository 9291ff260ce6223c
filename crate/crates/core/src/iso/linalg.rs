//! Small dense matrices over `Z/nZ`.

use crate::modular::Zn;

/// `m[row][col]`.
pub type Mat4 = [[u64; 4]; 4];

fn minor3(m: &Mat4, skip_row: usize, skip_col: usize) -> [[u64; 3]; 3] {
    let mut out = [[0; 3]; 3];
    for (ro, r) in (0..4).filter(|&r| r != skip_row).enumerate() {
        for (co, c) in (0..4).filter(|&c| c != skip_col).enumerate() {
            out[ro][co] = m[r][c];
        }
    }
    out
}

fn det3(m: &[[u64; 3]; 3], zn: Zn) -> u64 {
    let term = |a: u64, b: u64, c: u64, d: u64, e: u64| zn.mul(a, zn.sub(zn.mul(b, c), zn.mul(d, e)));
    let t0 = term(m[0][0], m[1][1], m[2][2], m[1][2], m[2][1]);
    let t1 = term(m[0][1], m[1][0], m[2][2], m[1][2], m[2][0]);
    let t2 = term(m[0][2], m[1][0], m[2][1], m[1][1], m[2][0]);
    zn.add(zn.sub(t0, t1), t2)
}

pub fn det4(m: &Mat4, zn: Zn) -> u64 {
    (0..4).fold(0, |acc, c| {
        let t = zn.mul(m[0][c], det3(&minor3(m, 0, c), zn));
        if c % 2 == 0 {
            zn.add(acc, t)
        } else {
            zn.sub(acc, t)
        }
    })
}

/// Inverse through the adjugate; `None` unless the determinant is a unit.
pub fn inverse4(m: &Mat4, zn: Zn) -> Option<Mat4> {
    let det_inv = zn.inv(det4(m, zn))?;
    let mut out = [[0; 4]; 4];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            let cof = det3(&minor3(m, c, r), zn);
            let cof = if (r + c) % 2 == 0 { cof } else { zn.neg(cof) };
            *slot = zn.mul(cof, det_inv);
        }
    }
    Some(out)
}

pub fn mat_mul4(x: &Mat4, y: &Mat4, zn: Zn) -> Mat4 {
    let mut out = [[0; 4]; 4];
    for (r, row) in out.iter_mut().enumerate() {
        for (c, slot) in row.iter_mut().enumerate() {
            *slot = (0..4).fold(0, |acc, t| zn.add(acc, zn.mul(x[r][t], y[t][c])));
        }
    }
    out
}

pub fn mat_vec4(m: &Mat4, v: &[u64; 4], zn: Zn) -> [u64; 4] {
    std::array::from_fn(|r| (0..4).fold(0, |acc, t| zn.add(acc, zn.mul(m[r][t], v[t]))))
}

pub fn identity4(zn: Zn) -> Mat4 {
    let one = zn.reduce(1);
    std::array::from_fn(|r| std::array::from_fn(|c| if r == c { one } else { 0 }))
}

/// Matrix whose columns are the given vectors.
pub fn from_columns(cols: [[u64; 4]; 4]) -> Mat4 {
    std::array::from_fn(|r| std::array::from_fn(|c| cols[c][r]))
}

pub fn column(m: &Mat4, c: usize) -> [u64; 4] {
    std::array::from_fn(|r| m[r][c])
}
