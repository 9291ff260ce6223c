//! Canonical forms, invariants and class counts for `(a,b / Z/nZ)`, `n` odd.
//!
//! Over `Z/p^kZ` a ring is determined by the valuations `s <= r` of its
//! parameters (zero has valuation `k`) together with quadratic characters of
//! their unit parts, which gives `2k^2 + 2` classes. Over `Z/nZ` the ring splits
//! along the prime powers of `n`, so the class of `(a, b)` is the vector of its
//! per-prime-power classes.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::iso::{find_isomorphism, pure_square_table, IsoWitness, SearchCaps};
use crate::modular::{
    check_odd_modulus, crt_combine, factorize, qr_char, smallest_qnr, valuation, PrimePower, QrChar, Residue,
};
use crate::quat::{QuatRing, RingParams};

/// Character data attached to a valuation pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClassTag {
    /// Both parameters are units.
    Unit,
    /// Character of the parameter with the smaller valuation.
    ChiA { chi: QrChar },
    /// Equal valuations: character of the product of the unit parts.
    ChiProd { chi: QrChar },
    /// Distinct valuations, both below `k`: both characters.
    ChiPair { chi_a: QrChar, chi_b: QrChar },
    /// Both parameters vanish.
    Zero,
}

/// Isomorphism class over `Z/p^kZ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalClass {
    pub pp: PrimePower,
    pub s: u32,
    pub r: u32,
    pub tag: ClassTag,
    /// Canonical representative `(a*, b*)` mod `p^k`.
    pub rep: (u64, u64),
}

impl CanonicalClass {
    /// Label such as `3^2:s0r1:QR`, `5:UNIT` or `3:s1r2:QR-QNR`.
    pub fn token(&self) -> String {
        let body = match self.tag {
            ClassTag::Unit => "UNIT".to_string(),
            ClassTag::Zero => "ZERO".to_string(),
            ClassTag::ChiA { chi } | ClassTag::ChiProd { chi } => format!("s{}r{}:{}", self.s, self.r, chi),
            ClassTag::ChiPair { chi_a, chi_b } => format!("s{}r{}:{}-{}", self.s, self.r, chi_a, chi_b),
        };
        format!("{}:{}", self.pp, body)
    }

    pub fn rep_params(&self) -> RingParams {
        RingParams::from_residues(self.pp.q(), self.rep.0, self.rep.1).expect("prime power modulus")
    }
}

impl fmt::Display for CanonicalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.token())
    }
}

/// Canonical class of `(a, b / Z/p^kZ)`.
pub fn canonical_form(a: u64, b: u64, pp: &PrimePower) -> CanonicalClass {
    let k = pp.k();
    let (mut s, mut ua) = valuation(a, pp);
    let (mut r, mut ub) = valuation(b, pp);
    if s > r {
        std::mem::swap(&mut s, &mut r);
        std::mem::swap(&mut ua, &mut ub);
    }
    let u = smallest_qnr(pp.p());
    let zn = pp.zn();
    let chi = |unit: Option<u64>| qr_char(unit.expect("valuation below k"), pp.p()).expect("unit part");
    // Representative p^e or u·p^e according to the character.
    let scaled = |c: QrChar, e: u32| {
        if c.is_residue() {
            pp.p_pow(e)
        } else {
            zn.mul(u, pp.p_pow(e))
        }
    };
    let (tag, rep) = if s == k {
        (ClassTag::Zero, (0, 0))
    } else if r == 0 {
        (ClassTag::Unit, (1, 1))
    } else if s == 0 {
        let c = chi(ua);
        (ClassTag::ChiA { chi: c }, (scaled(c, 0), pp.p_pow(r)))
    } else if s == r {
        let c = qr_char(zn.mul(ua.unwrap(), ub.unwrap()), pp.p()).expect("unit product");
        (ClassTag::ChiProd { chi: c }, (scaled(c, s), pp.p_pow(r)))
    } else if r < k {
        let (ca, cb) = (chi(ua), chi(ub));
        (
            ClassTag::ChiPair { chi_a: ca, chi_b: cb },
            (scaled(ca, s), scaled(cb, r)),
        )
    } else {
        let c = chi(ua);
        (ClassTag::ChiA { chi: c }, (scaled(c, s), 0))
    };
    CanonicalClass {
        pp: *pp,
        s,
        r,
        tag,
        rep,
    }
}

/// Every canonical class over `Z/p^kZ`, ordered by `(s, r)` then tag.
pub fn canonical_classes(pp: &PrimePower) -> Vec<CanonicalClass> {
    let u = smallest_qnr(pp.p());
    let mut seen = Vec::new();
    for s in 0..=pp.k() {
        for r in s..=pp.k() {
            for ua in [1, u] {
                for ub in [1, u] {
                    let c = canonical_form(ua * pp.p_pow(s), ub * pp.p_pow(r), pp);
                    if !seen.contains(&c) {
                        seen.push(c);
                    }
                }
            }
        }
    }
    seen
}

/// `2k^2 + 2`.
pub fn class_count_pp(pp: &PrimePower) -> u64 {
    let k = pp.k() as u64;
    2 * k * k + 2
}

/// `2^ω(n) · ∏_{p | n} (ν_p(n)^2 + 1)`.
pub fn class_count(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(f.factors().iter().map(|pp| 2 * ((pp.k() as u64).pow(2) + 1)).product())
}

/// Per-prime-power classes of `(a, b / Z/nZ)`.
pub fn classify_n(a: u64, b: u64, n: u64) -> Result<Vec<CanonicalClass>> {
    let f = factorize(n)?;
    Ok(f.factors()
        .iter()
        .map(|pp| canonical_form(a % pp.q(), b % pp.q(), pp))
        .collect())
}

/// `|`-joined tokens of a class vector.
pub fn label(classes: &[CanonicalClass]) -> String {
    classes.iter().map(CanonicalClass::token).collect::<Vec<_>>().join("|")
}

/// The CRT lift of the per-prime-power representatives to `Z/nZ`.
pub fn canonical_representative(a: u64, b: u64, n: u64) -> Result<RingParams> {
    let f = factorize(n)?;
    let classes = classify_n(a, b, n)?;
    let part = |sel: fn(&CanonicalClass) -> u64| -> Result<u64> {
        let parts: Vec<Residue> = classes.iter().map(|c| Residue::new(sel(c), c.pp.q())).collect();
        Ok(crt_combine(&parts, &f)?.value())
    };
    RingParams::from_residues(n, part(|c| c.rep.0)?, part(|c| c.rep.1)?)
}

/// Isomorphism invariants computed from the pure quaternions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Fingerprint {
    /// Entry `t`: number of pure `q` with `q^2 = t`.
    pub pure_square_histogram: Vec<u64>,
    /// `(p, count)`: pure `q` with `n(q) = 0` and `p·q != 0`, per prime `p | n`.
    pub isotropic_counts: Vec<(u64, u64)>,
}

/// A fingerprint component on which two rings differ.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "component", rename_all = "snake_case")]
pub enum FingerprintDifference {
    PureSquareHistogram { t: u64, left: u64, right: u64 },
    IsotropicCount { p: u64, left: u64, right: u64 },
}

impl fmt::Display for FingerprintDifference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FingerprintDifference::PureSquareHistogram { t, left, right } => {
                write!(f, "pure-square histogram at t={t} ({left} vs {right})")
            }
            FingerprintDifference::IsotropicCount { p, left, right } => {
                write!(f, "isotropic pure count for p={p} ({left} vs {right})")
            }
        }
    }
}

impl Fingerprint {
    /// The first component separating `self` from `other`.
    ///
    /// Histogram bins where the left ring has no pure square root of `t` but
    /// the right ring does come first, then the converse, then any count
    /// mismatch, then the isotropic counts.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<FingerprintDifference> {
        let bins = || {
            self.pure_square_histogram
                .iter()
                .zip(&other.pure_square_histogram)
                .enumerate()
        };
        let pick = |pred: &dyn Fn(u64, u64) -> bool| {
            bins().find(|(_, (&l, &r))| pred(l, r)).map(|(t, (&left, &right))| {
                FingerprintDifference::PureSquareHistogram {
                    t: t as u64,
                    left,
                    right,
                }
            })
        };
        pick(&|l, r| l == 0 && r > 0)
            .or_else(|| pick(&|l, r| l > 0 && r == 0))
            .or_else(|| pick(&|l, r| l != r))
            .or_else(|| {
                self.isotropic_counts
                    .iter()
                    .zip(&other.isotropic_counts)
                    .find(|(l, r)| l != r)
                    .map(|(&(p, left), &(_, right))| FingerprintDifference::IsotropicCount { p, left, right })
            })
    }
}

pub fn fingerprint(params: RingParams, caps: &SearchCaps) -> Result<Fingerprint> {
    let n = params.n();
    check_odd_modulus(n)?;
    caps.check_enumeration(n)?;
    let primes: Vec<u64> = factorize(n)?.primes().collect();
    let ring = QuatRing::new(params);
    let mut histogram = vec![0u64; n as usize];
    let mut isotropic = vec![0u64; primes.len()];
    for (idx, sq) in pure_square_table(&ring).into_iter().enumerate() {
        histogram[sq as usize] += 1;
        if sq != 0 {
            continue;
        }
        let idx = idx as u64;
        let coords = [idx / (n * n), (idx / n) % n, idx % n];
        for (slot, &p) in isotropic.iter_mut().zip(&primes) {
            // p·q = 0 iff every coordinate is a multiple of n/p.
            if coords.iter().any(|x| x % (n / p) != 0) {
                *slot += 1;
            }
        }
    }
    Ok(Fingerprint {
        pure_square_histogram: histogram,
        isotropic_counts: primes.into_iter().zip(isotropic).collect(),
    })
}

/// One isomorphism class in a [`ClassReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub rep_a: u64,
    pub rep_b: u64,
    pub class_size: u64,
    pub canonical_tags: String,
}

/// Partition of all `n^2` parameter pairs into isomorphism classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: u64,
    pub total: u64,
    pub classes: Vec<ClassEntry>,
}

impl ClassReport {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,rep_a,rep_b,class_size,canonical_tags\n");
        for c in &self.classes {
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                self.n, c.rep_a, c.rep_b, c.class_size, c.canonical_tags
            ));
        }
        out
    }
}

/// Oracle partition with the witnesses that justified every merge.
#[derive(Debug, Clone)]
pub struct Partition {
    pub n: u64,
    /// Least member of each class, in increasing order.
    pub representatives: Vec<RingParams>,
    /// Class index of pair `(a, b)` at position `a·n + b`.
    pub class_of: Vec<usize>,
    /// `member -> representative` witness for every non-representative member.
    pub witnesses: Vec<IsoWitness>,
}

impl Partition {
    pub fn class_sizes(&self) -> Vec<u64> {
        let mut sizes = vec![0; self.representatives.len()];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }

    pub fn report(&self) -> Result<ClassReport> {
        let sizes = self.class_sizes();
        let classes = self
            .representatives
            .iter()
            .zip(sizes)
            .map(|(rep, size)| {
                Ok(ClassEntry {
                    rep_a: rep.a(),
                    rep_b: rep.b(),
                    class_size: size,
                    canonical_tags: label(&classify_n(rep.a(), rep.b(), self.n)?),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ClassReport {
            n: self.n,
            total: classes.len() as u64,
            classes,
        })
    }
}

/// Partitions every pair `(a, b)` mod `n` with the exhaustive oracle, after
/// bucketing by fingerprint. Pairs are visited in lexicographic order, so each
/// class is represented by its least member.
pub fn brute_force_partition_detailed(n: u64, caps: &SearchCaps) -> Result<Partition> {
    check_odd_modulus(n)?;
    caps.check_oracle(n)?;
    let pairs: Vec<RingParams> = (0..n)
        .flat_map(|a| (0..n).map(move |b| RingParams::from_residues(n, a, b)))
        .collect::<Result<_>>()?;
    let prints: Vec<Fingerprint> = pairs.par_iter().map(|p| fingerprint(*p, caps)).collect::<Result<_>>()?;
    let mut buckets: HashMap<&Fingerprint, Vec<usize>> = HashMap::new();
    let mut representatives = Vec::new();
    let mut class_of = Vec::with_capacity(pairs.len());
    let mut witnesses = Vec::new();
    for (pair, print) in pairs.iter().zip(&prints) {
        let bucket = buckets.entry(print).or_default();
        let mut joined = None;
        for &class in bucket.iter() {
            if let Some(w) = find_isomorphism(*pair, representatives[class], caps)? {
                joined = Some(class);
                if *pair != representatives[class] {
                    witnesses.push(w);
                }
                break;
            }
        }
        let class = joined.unwrap_or_else(|| {
            representatives.push(*pair);
            bucket.push(representatives.len() - 1);
            representatives.len() - 1
        });
        class_of.push(class);
    }
    Ok(Partition {
        n,
        representatives,
        class_of,
        witnesses,
    })
}

pub fn brute_force_partition(n: u64, caps: &SearchCaps) -> Result<ClassReport> {
    brute_force_partition_detailed(n, caps)?.report()
}

/// The two congruences counting isotropic pure elements in
/// `(u p^s, p^s)` and `(p^s, p^s)`, reduced mod `p^(k-s)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CongruenceStyle {
    /// `u x1^2 + x2^2 - u p^s x3^2 ≡ 0`.
    E1,
    /// `x1^2 + x2^2 - p^s x3^2 ≡ 0`.
    E2,
}

/// Nonzero triples mod `p^(k-s)` solving the chosen congruence.
pub fn congruence_count(style: CongruenceStyle, u: u64, s: u32, pp: &PrimePower) -> Result<u64> {
    if s == 0 || s >= pp.k() {
        return Err(Error::Precondition(format!(
            "need 0 < s < k, got s = {s}, k = {}",
            pp.k()
        )));
    }
    if u.is_multiple_of(pp.p()) {
        return Err(Error::NotCoprime { value: u, p: pp.p() });
    }
    let m = pp.p().pow(pp.k() - s);
    let size = m.pow(3);
    let cap = SearchCaps::default().enumeration;
    if size > cap {
        return Err(Error::InstanceTooLarge {
            what: "congruence triples",
            size,
            cap,
        });
    }
    let zn = crate::modular::Zn::new(m);
    let ps = zn.reduce(pp.p().pow(s));
    let (c1, c3) = match style {
        CongruenceStyle::E1 => (zn.reduce(u), zn.mul(zn.reduce(u), ps)),
        CongruenceStyle::E2 => (zn.reduce(1), ps),
    };
    let mut count = 0;
    for x1 in 0..m {
        for x2 in 0..m {
            for x3 in 0..m {
                let v = zn.add(zn.mul(c1, zn.mul(x1, x1)), zn.mul(x2, x2));
                if zn.sub(v, zn.mul(c3, zn.mul(x3, x3))) == 0 && (x1, x2, x3) != (0, 0, 0) {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Pure `q` in `params` with `n(q) = 0` and `p·q != 0`: returns the set size
/// and the number of distinct coordinate triples it leaves mod `modulus`.
pub fn isotropic_set_size(params: RingParams, p: u64, modulus: u64, caps: &SearchCaps) -> Result<(u64, u64)> {
    let n = params.n();
    check_odd_modulus(n)?;
    caps.check_enumeration(n)?;
    if !n.is_multiple_of(p) || !n.is_multiple_of(modulus) {
        return Err(Error::ModulusMismatch {
            expected: n,
            found: p * modulus,
        });
    }
    let ring = QuatRing::new(params);
    let mut images = std::collections::HashSet::new();
    let mut total = 0;
    for q in ring.pure_elements() {
        let zero_norm = ring.norm_coords(&q) == 0;
        let p_torsion = q.iter().all(|x| x % (n / p) == 0);
        if zero_norm && !p_torsion {
            total += 1;
            images.insert([q[1] % modulus, q[2] % modulus, q[3] % modulus]);
        }
    }
    Ok((total, images.len() as u64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u64, k: u32) -> PrimePower {
        PrimePower::new(p, k).unwrap()
    }

    #[test]
    fn canonical_form_examples() {
        let c = canonical_form(4, 6, &pp(3, 2));
        assert_eq!(
            (c.s, c.r, c.tag, c.rep),
            (0, 1, ClassTag::ChiA { chi: QrChar::Qr }, (1, 3))
        );
        assert_eq!(c.token(), "3^2:s0r1:QR");
        let c = canonical_form(3, 6, &pp(3, 2));
        assert_eq!(
            (c.s, c.r, c.tag, c.rep),
            (1, 1, ClassTag::ChiProd { chi: QrChar::Qnr }, (6, 3))
        );
        let c = canonical_form(0, 0, &pp(3, 2));
        assert_eq!((c.s, c.r, c.tag, c.rep), (2, 2, ClassTag::Zero, (0, 0)));
        assert_eq!(canonical_form(2, 4, &pp(5, 1)).tag, ClassTag::Unit);
    }

    #[test]
    fn canonical_form_cases() {
        let m = pp(3, 3);
        // 0 < s < r < k
        let c = canonical_form(6, 9, &m);
        assert_eq!(
            (c.s, c.r, c.tag, c.rep),
            (
                1,
                2,
                ClassTag::ChiPair {
                    chi_a: QrChar::Qnr,
                    chi_b: QrChar::Qr
                },
                (6, 9)
            )
        );
        // 0 < s < r = k
        let c = canonical_form(0, 15, &m);
        assert_eq!(
            (c.s, c.r, c.tag, c.rep),
            (1, 3, ClassTag::ChiA { chi: QrChar::Qnr }, (6, 0))
        );
        // s = 0, r = k
        let c = canonical_form(0, 4, &m);
        assert_eq!(
            (c.s, c.r, c.tag, c.rep),
            (0, 3, ClassTag::ChiA { chi: QrChar::Qr }, (1, 0))
        );
    }

    #[test]
    fn number_of_canonical_classes() {
        for (p, k) in [(3, 1), (3, 2), (3, 3), (5, 2), (7, 3), (11, 4)] {
            let m = pp(p, k);
            assert_eq!(canonical_classes(&m).len() as u64, class_count_pp(&m));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_on_reps() {
        for (p, k) in [(3, 2), (5, 3), (7, 2)] {
            let m = pp(p, k);
            for c in canonical_classes(&m) {
                assert_eq!(canonical_form(c.rep.0, c.rep.1, &m), c);
            }
        }
    }

    #[test]
    fn canonical_form_invariant_under_swap_and_squares() {
        for (p, k) in [(3, 2), (5, 2), (3, 3)] {
            let m = pp(p, k);
            let zn = m.zn();
            let squares: Vec<u64> = (1..m.q()).filter(|x| x % p != 0).map(|x| zn.mul(x, x)).collect();
            for a in 0..m.q() {
                for b in 0..m.q() {
                    let c = canonical_form(a, b, &m);
                    assert_eq!(canonical_form(b, a, &m), c);
                    for &sq in &squares {
                        assert_eq!(canonical_form(zn.mul(a, sq), b, &m), c);
                        assert_eq!(canonical_form(a, zn.mul(b, sq), &m), c);
                    }
                }
            }
        }
    }

    #[test]
    fn class_counts() {
        assert_eq!(class_count_pp(&pp(3, 1)), 4);
        assert_eq!(class_count_pp(&pp(3, 2)), 10);
        assert_eq!(class_count_pp(&pp(7, 3)), 20);
        assert_eq!(class_count(9), Ok(10));
        assert_eq!(class_count(15), Ok(16));
        assert_eq!(class_count(45), Ok(40));
        assert!(class_count(1).is_err());
        assert!(class_count(30).is_err());
    }

    #[test]
    fn class_count_matches_product_over_factors() {
        for n in (3..=200u64).step_by(2) {
            let f = factorize(n).unwrap();
            let per_pp: u64 = f.factors().iter().map(class_count_pp).product();
            let omega = f.omega() as u32;
            let formula = 2u64.pow(omega) * f.factors().iter().map(|x| (x.k() as u64).pow(2) + 1).product::<u64>();
            assert_eq!(class_count(n).unwrap(), per_pp);
            assert_eq!(per_pp, formula);
        }
    }

    #[test]
    fn classify_n_examples() {
        let c = classify_n(4, 6, 45).unwrap();
        assert_eq!(c[0], canonical_form(4, 6, &pp(3, 2)));
        assert_eq!(c[1], canonical_form(4, 1, &pp(5, 1)));
        let c = classify_n(1, 1, 15).unwrap();
        assert!(c.iter().all(|x| x.tag == ClassTag::Unit));
        // (3,5) mod 3 is (0,2); mod 5 it is (3,0).
        let c = classify_n(3, 5, 15).unwrap();
        assert_eq!(
            (c[0].s, c[0].r, c[0].tag, c[0].rep),
            (0, 1, ClassTag::ChiA { chi: QrChar::Qnr }, (2, 0))
        );
        assert_eq!(
            (c[1].s, c[1].r, c[1].tag, c[1].rep),
            (0, 1, ClassTag::ChiA { chi: QrChar::Qnr }, (2, 0))
        );
        assert_eq!(label(&c), "3:s0r1:QNR|5:s0r1:QNR");
        assert_eq!(label(&classify_n(0, 0, 45).unwrap()), "3^2:ZERO|5:ZERO");
        assert!(classify_n(1, 1, 12).is_err());
    }

    #[test]
    fn classify_n_components_agree_with_oracle_mod_3_and_5() {
        let caps = SearchCaps::default();
        for (a, b) in [(3u64, 5u64), (0, 7), (6, 10), (9, 12)] {
            for c in classify_n(a, b, 15).unwrap() {
                let q = c.pp.q();
                let src = RingParams::from_residues(q, a % q, b % q).unwrap();
                assert!(find_isomorphism(src, c.rep_params(), &caps).unwrap().is_some());
            }
        }
    }

    #[test]
    fn canonical_representative_lifts() {
        let rep = canonical_representative(4, 6, 45).unwrap();
        let back = classify_n(rep.a(), rep.b(), 45).unwrap();
        assert_eq!(back, classify_n(4, 6, 45).unwrap());
        assert_eq!(
            canonical_representative(0, 0, 45).unwrap(),
            RingParams::odd(45, 0, 0).unwrap()
        );
    }

    #[test]
    fn fingerprint_examples() {
        let caps = SearchCaps::default();
        let z = fingerprint(RingParams::odd(3, 0, 0).unwrap(), &caps).unwrap();
        assert_eq!(z.pure_square_histogram, vec![27, 0, 0]);
        let f10 = fingerprint(RingParams::odd(3, 1, 0).unwrap(), &caps).unwrap();
        assert_eq!(f10.pure_square_histogram[2], 0);
        let f20 = fingerprint(RingParams::odd(3, 2, 0).unwrap(), &caps).unwrap();
        assert!(f20.pure_square_histogram[2] > 0);
        assert_eq!(
            f10.first_difference(&f20),
            Some(FingerprintDifference::PureSquareHistogram {
                t: 2,
                left: 0,
                right: 18
            })
        );
        assert_eq!(f10.first_difference(&f10), None);
        for n in [3u64, 9, 15] {
            let f = fingerprint(RingParams::odd(n, 2, 3).unwrap(), &caps).unwrap();
            assert_eq!(f.pure_square_histogram.iter().sum::<u64>(), n.pow(3));
        }
    }

    #[test]
    fn brute_force_small() {
        let caps = SearchCaps::default();
        let r = brute_force_partition(3, &caps).unwrap();
        let reps: Vec<(u64, u64)> = r.classes.iter().map(|c| (c.rep_a, c.rep_b)).collect();
        assert_eq!(reps, vec![(0, 0), (0, 1), (0, 2), (1, 1)]);
        assert_eq!(r.total, 4);
        assert_eq!(r.classes.iter().map(|c| c.class_size).sum::<u64>(), 9);
        assert_eq!(brute_force_partition(5, &caps).unwrap().total, 4);
        let csv = r.to_csv();
        assert!(csv.starts_with("n,rep_a,rep_b,class_size,canonical_tags\n3,0,0,1,3:ZERO\n"));
    }

    #[test]
    fn brute_force_respects_caps() {
        let caps = SearchCaps {
            oracle_n: 5,
            ..SearchCaps::default()
        };
        assert!(matches!(
            brute_force_partition(7, &caps),
            Err(Error::InstanceTooLarge { .. })
        ));
    }

    #[test]
    fn congruence_count_examples() {
        assert_eq!(congruence_count(CongruenceStyle::E2, 2, 1, &pp(3, 2)), Ok(2));
        assert_eq!(congruence_count(CongruenceStyle::E1, 2, 1, &pp(3, 2)), Ok(14));
        assert!(congruence_count(CongruenceStyle::E1, 2, 0, &pp(3, 2)).is_err());
        assert!(congruence_count(CongruenceStyle::E1, 2, 2, &pp(3, 2)).is_err());
        assert!(congruence_count(CongruenceStyle::E1, 3, 1, &pp(3, 2)).is_err());
    }

    #[test]
    fn isotropic_sets_for_3_squared() {
        let caps = SearchCaps::default();
        let n1 = isotropic_set_size(RingParams::odd(9, 6, 3).unwrap(), 3, 3, &caps).unwrap();
        let n2 = isotropic_set_size(RingParams::odd(9, 3, 3).unwrap(), 3, 3, &caps).unwrap();
        assert_eq!(n1, (14 * 27, 14));
        assert_eq!(n2, (2 * 27, 2));
    }
}
