use std::fmt;

use serde::{Deserialize, Serialize};

use super::linalg::{self, Mat4};
use crate::error::{Error, Result};
use crate::quat::{Coords, QuatRing, RingParams};

/// A candidate unital ring isomorphism `source -> target`, stored as its
/// coordinate matrix: column `c` holds the image of basis element `c`
/// (`1, i, j, k`) in target coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IsoWitness {
    source: RingParams,
    target: RingParams,
    matrix: Mat4,
}

/// Serialized witness: `{"n", "source": [a,b], "target": [a,b], "matrix"}`.
/// `matrix` is row-major; column `c` is the image of the `c`-th basis element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub n: u64,
    pub source: [u64; 2],
    pub target: [u64; 2],
    pub matrix: [[u64; 4]; 4],
}

impl IsoWitness {
    pub fn from_matrix(source: RingParams, target: RingParams, matrix: Mat4) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::ModulusMismatch {
                expected: source.n(),
                found: target.n(),
            });
        }
        let zn = source.zn();
        Ok(IsoWitness {
            source,
            target,
            matrix: matrix.map(|row| row.map(|x| zn.reduce(x))),
        })
    }

    /// The linear map `1 -> 1, i -> img_i, j -> img_j, k -> img_i·img_j`.
    pub fn from_images(source: RingParams, target: RingParams, img_i: Coords, img_j: Coords) -> Result<Self> {
        if source.n() != target.n() {
            return Err(Error::ModulusMismatch {
                expected: source.n(),
                found: target.n(),
            });
        }
        let ring = QuatRing::new(target);
        let img_i = img_i.map(|x| ring.zn().reduce(x));
        let img_j = img_j.map(|x| ring.zn().reduce(x));
        let img_k = ring.mul_coords(&img_i, &img_j);
        let one = ring.one().coords();
        Ok(IsoWitness {
            source,
            target,
            matrix: linalg::from_columns([one, img_i, img_j, img_k]),
        })
    }

    pub fn identity(params: RingParams) -> Self {
        IsoWitness {
            source: params,
            target: params,
            matrix: linalg::identity4(params.zn()),
        }
    }

    pub fn source(&self) -> RingParams {
        self.source
    }

    pub fn target(&self) -> RingParams {
        self.target
    }

    pub fn n(&self) -> u64 {
        self.source.n()
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.matrix
    }

    /// Image of the `idx`-th basis element.
    pub fn column(&self, idx: usize) -> Coords {
        linalg::column(&self.matrix, idx)
    }

    pub fn img_i(&self) -> Coords {
        self.column(1)
    }

    pub fn img_j(&self) -> Coords {
        self.column(2)
    }

    pub fn apply(&self, x: &Coords) -> Coords {
        linalg::mat_vec4(&self.matrix, x, self.source.zn())
    }

    pub fn determinant(&self) -> u64 {
        linalg::det4(&self.matrix, self.source.zn())
    }

    pub fn is_invertible(&self) -> bool {
        self.source.zn().is_unit(self.determinant())
    }

    pub fn inverse(&self) -> Result<IsoWitness> {
        let inv = linalg::inverse4(&self.matrix, self.source.zn())
            .ok_or_else(|| Error::Precondition("witness matrix is singular".into()))?;
        Ok(IsoWitness {
            source: self.target,
            target: self.source,
            matrix: inv,
        })
    }

    /// `next ∘ self`, for `self: A -> B` and `next: B -> C`.
    pub fn then(&self, next: &IsoWitness) -> Result<IsoWitness> {
        if self.target != next.source {
            return Err(Error::MismatchedRings {
                left: self.target.to_string(),
                right: next.source.to_string(),
            });
        }
        let matrix = linalg::mat_mul4(&next.matrix, &self.matrix, self.source.zn());
        Ok(IsoWitness {
            source: self.source,
            target: next.target,
            matrix,
        })
    }

    /// Reads the same matrix modulo a divisor `m` of `n`.
    pub fn reduce(&self, m: u64) -> Result<IsoWitness> {
        let source = self.source.reduce(m)?;
        let target = self.target.reduce(m)?;
        Ok(IsoWitness {
            source,
            target,
            matrix: self.matrix.map(|row| row.map(|x| x % m)),
        })
    }

    pub fn to_doc(&self) -> WitnessDoc {
        WitnessDoc {
            n: self.n(),
            source: [self.source.a(), self.source.b()],
            target: [self.target.a(), self.target.b()],
            matrix: self.matrix,
        }
    }

    pub fn from_doc(doc: &WitnessDoc) -> Result<Self> {
        let source = RingParams::from_residues(doc.n, doc.source[0], doc.source[1])?;
        let target = RingParams::from_residues(doc.n, doc.target[0], doc.target[1])?;
        Self::from_matrix(source, target, doc.matrix)
    }
}

/// Why a witness fails verification.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case", tag = "defect")]
pub enum WitnessDefect {
    ModulusMismatch,
    /// `1` is not mapped to `1`.
    UnitColumn,
    ImageOfISquare,
    ImageOfJSquare,
    Anticommutation,
    /// Column 3 differs from `img_i · img_j`.
    ProductColumn,
    Singular,
    NotMultiplicative {
        left: usize,
        right: usize,
    },
    Conjugation {
        basis: usize,
    },
    Trace {
        basis: usize,
    },
    Norm {
        basis: usize,
    },
}

impl fmt::Display for WitnessDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const NAMES: [&str; 4] = ["1", "i", "j", "k"];
        match self {
            WitnessDefect::ModulusMismatch => write!(f, "source and target moduli differ"),
            WitnessDefect::UnitColumn => write!(f, "1 is not mapped to 1"),
            WitnessDefect::ImageOfISquare => write!(f, "f(i)^2 != a"),
            WitnessDefect::ImageOfJSquare => write!(f, "f(j)^2 != b"),
            WitnessDefect::Anticommutation => write!(f, "f(i) f(j) != -f(j) f(i)"),
            WitnessDefect::ProductColumn => write!(f, "f(k) != f(i) f(j)"),
            WitnessDefect::Singular => write!(f, "matrix determinant is not a unit"),
            WitnessDefect::NotMultiplicative { left, right } => {
                write!(
                    f,
                    "f({}·{}) != f({}) f({})",
                    NAMES[*left], NAMES[*right], NAMES[*left], NAMES[*right]
                )
            }
            WitnessDefect::Conjugation { basis } => write!(f, "conjugation not preserved at {}", NAMES[*basis]),
            WitnessDefect::Trace { basis } => write!(f, "trace not preserved at {}", NAMES[*basis]),
            WitnessDefect::Norm { basis } => write!(f, "norm not preserved at {}", NAMES[*basis]),
        }
    }
}

/// Machine check of a witness: structural invariants, multiplicativity on all
/// 16 basis pairs, and preservation of conjugation, trace and norm on the basis.
pub fn verify_witness(w: &IsoWitness) -> std::result::Result<(), WitnessDefect> {
    if w.source.n() != w.target.n() {
        return Err(WitnessDefect::ModulusMismatch);
    }
    let src = QuatRing::new(w.source);
    let tgt = QuatRing::new(w.target);
    if w.column(0) != tgt.one().coords() {
        return Err(WitnessDefect::UnitColumn);
    }
    let (fi, fj) = (w.img_i(), w.img_j());
    if tgt.mul_coords(&fi, &fi) != tgt.scalar(w.source.a()).coords() {
        return Err(WitnessDefect::ImageOfISquare);
    }
    if tgt.mul_coords(&fj, &fj) != tgt.scalar(w.source.b()).coords() {
        return Err(WitnessDefect::ImageOfJSquare);
    }
    let fij = tgt.mul_coords(&fi, &fj);
    if fij != tgt.neg_coords(&tgt.mul_coords(&fj, &fi)) {
        return Err(WitnessDefect::Anticommutation);
    }
    if w.column(3) != fij {
        return Err(WitnessDefect::ProductColumn);
    }
    if !w.is_invertible() {
        return Err(WitnessDefect::Singular);
    }
    for x in 0..4 {
        for y in 0..4 {
            let prod = src.mul_coords(&src.basis(x).coords(), &src.basis(y).coords());
            if w.apply(&prod) != tgt.mul_coords(&w.column(x), &w.column(y)) {
                return Err(WitnessDefect::NotMultiplicative { left: x, right: y });
            }
        }
    }
    for basis in 0..4 {
        preserves_structure_at(w, &src, &tgt, &src.basis(basis).coords()).map_err(|d| match d {
            StructureDefect::Conjugation => WitnessDefect::Conjugation { basis },
            StructureDefect::Trace => WitnessDefect::Trace { basis },
            StructureDefect::Norm => WitnessDefect::Norm { basis },
        })?;
    }
    Ok(())
}

pub fn is_valid_witness(w: &IsoWitness) -> bool {
    verify_witness(w).is_ok()
}

/// Which of conjugation, trace or norm a map fails to preserve at an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureDefect {
    Conjugation,
    Trace,
    Norm,
}

/// Checks `f(conj x) = conj f(x)`, `tr f(x) = tr x` and `n(f(x)) = n(x)` for one element.
pub fn preserves_structure(w: &IsoWitness, x: &Coords) -> std::result::Result<(), StructureDefect> {
    let src = QuatRing::new(w.source);
    let tgt = QuatRing::new(w.target);
    preserves_structure_at(w, &src, &tgt, x)
}

pub(crate) fn preserves_structure_at(
    w: &IsoWitness,
    src: &QuatRing,
    tgt: &QuatRing,
    x: &Coords,
) -> std::result::Result<(), StructureDefect> {
    let fx = w.apply(x);
    if w.apply(&src.conj_coords(x)) != tgt.conj_coords(&fx) {
        return Err(StructureDefect::Conjugation);
    }
    if tgt.trace_coords(&fx) != src.trace_coords(x) {
        return Err(StructureDefect::Trace);
    }
    if tgt.norm_coords(&fx) != src.norm_coords(x) {
        return Err(StructureDefect::Norm);
    }
    Ok(())
}
