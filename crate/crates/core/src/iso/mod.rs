//! Deciding isomorphism between quaternion rings over the same odd `Z/nZ`.

mod construct;
pub mod linalg;
mod m2;
mod search;
mod shape;
pub(crate) mod witness;

pub use construct::{constructive_witness, Construction};
pub use m2::{m2_witness, M2Witness, Mat2};
pub(crate) use search::pure_square_table;
pub use search::{are_isomorphic, find_isomorphism, pure_sqrt_set, SearchCaps};
pub use shape::standard_basis_shape_check;
pub use witness::{
    is_valid_witness, preserves_structure, verify_witness, IsoWitness, StructureDefect, WitnessDefect, WitnessDoc,
};
