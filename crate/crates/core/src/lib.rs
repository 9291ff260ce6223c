//! Generalized quaternion rings `(a,b / Z/nZ)` for odd `n`, where `a` and `b`
//! need not be units.
//!
//! The ring has basis `{1, i, j, k}` with `i^2 = a`, `j^2 = b` and
//! `ij = -ji = k`. For odd `n` a ring isomorphism maps pure quaternions to pure
//! quaternions (they are exactly the trace-zero elements and 2 is invertible),
//! so it is determined by the images of `i` and `j`: pure elements squaring to
//! `a` and `b` that anticommute and span together with `1` and their product.
//! [`find_isomorphism`] searches exactly this space, which makes it a complete
//! decision procedure, and every answer comes with a matrix that
//! [`verify_witness`] re-checks independently.
//!
//! ```
//! use gquat::{class_count, classify_n, label, find_isomorphism, RingParams, SearchCaps};
//!
//! assert_eq!(class_count(45).unwrap(), 40);
//! assert_eq!(label(&classify_n(4, 6, 45).unwrap()), "3^2:s0r1:QR|5:UNIT");
//!
//! let caps = SearchCaps::default();
//! let r1 = RingParams::odd(3, 1, 0).unwrap();
//! let r2 = RingParams::odd(3, 2, 0).unwrap();
//! assert!(find_isomorphism(r1, r2, &caps).unwrap().is_none());
//! ```

pub mod classifier;
pub mod error;
pub mod iso;
pub mod modular;
pub mod quat;
pub mod verify;

pub use classifier::{
    brute_force_partition, brute_force_partition_detailed, canonical_classes, canonical_form, canonical_representative,
    class_count, class_count_pp, classify_n, congruence_count, fingerprint, isotropic_set_size, label, CanonicalClass,
    ClassEntry, ClassReport, ClassTag, CongruenceStyle, Fingerprint, FingerprintDifference, Partition,
};
pub use error::{Error, Result};
pub use iso::{
    are_isomorphic, constructive_witness, find_isomorphism, m2_witness, preserves_structure, verify_witness,
    Construction, IsoWitness, M2Witness, SearchCaps, WitnessDefect,
};
pub use modular::{factorize, qr_char, smallest_qnr, Factorization, PrimePower, QrChar, Residue, Zn};
pub use quat::{Coords, Quat, QuatRing, RingParams};
pub use verify::{run_suite, CheckRecord, Ledger, Suite};
