//! Self-check suites over `Z/p^kZ` producing a per-check pass/fail ledger.
//!
//! * [`Suite::Lemmas`]: explicit isomorphism families and the families of
//!   pairs that must be non-isomorphic, each confirmed by the oracle.
//! * [`Suite::Invariants`]: classifier/oracle agreement, fingerprint
//!   invariance, descent of witnesses, structure preservation, counting.
//! * [`Suite::M2`]: the 2×2 matrix embedding for every pair of units.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{
    brute_force_partition_detailed, canonical_form, class_count, class_count_pp, congruence_count, fingerprint,
    isotropic_set_size, CongruenceStyle,
};
use crate::error::{Error, Result};
use crate::iso::witness::preserves_structure_at;
use crate::iso::{find_isomorphism, m2_witness, verify_witness, Construction, IsoWitness, SearchCaps};
use crate::modular::{smallest_qnr, PrimePower};
use crate::quat::{QuatRing, RingParams};

/// Number of random elements used for structure preservation when the ring
/// is too large to scan.
pub const PRESERVATION_SAMPLES: usize = 10_000;

/// Largest modulus for which the invariant suite compares every pair of rings
/// with the oracle; above it the comparison goes through the partition.
pub const PAIRWISE_ORACLE_MAX: u64 = 9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Lemmas,
    Invariants,
    M2,
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Lemmas => "lemmas",
            Suite::Invariants => "invariants",
            Suite::M2 => "m2",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lemmas" => Ok(Suite::Lemmas),
            "invariants" => Ok(Suite::Invariants),
            "m2" => Ok(Suite::M2),
            other => Err(Error::Parse(format!(
                "unknown suite {other:?} (expected lemmas, invariants or m2)"
            ))),
        }
    }
}

/// One line of a [`Ledger`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckRecord {
    pub check: String,
    pub case: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckRecord {
    fn new(check: impl Into<String>, case: impl Into<String>, failure: Option<String>) -> Self {
        CheckRecord {
            check: check.into(),
            case: case.into(),
            passed: failure.is_none(),
            detail: failure,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ledger {
    pub suite: Suite,
    pub p: u64,
    pub k: u32,
    pub n: u64,
    pub total: u64,
    pub passed: u64,
    pub failed: u64,
    pub checks: Vec<CheckRecord>,
}

impl Ledger {
    fn new(suite: Suite, pp: &PrimePower, checks: Vec<CheckRecord>) -> Self {
        let passed = checks.iter().filter(|c| c.passed).count() as u64;
        Ledger {
            suite,
            p: pp.p(),
            k: pp.k(),
            n: pp.q(),
            total: checks.len() as u64,
            passed,
            failed: checks.len() as u64 - passed,
            checks,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("suite,p,k,check,case,passed\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                self.suite, self.p, self.k, c.check, c.case, c.passed
            ));
        }
        out
    }
}

/// A pair of rings some non-isomorphism result declares distinct.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedPair {
    pub family: &'static str,
    pub left: RingParams,
    pub right: RingParams,
}

/// Every pair predicted non-isomorphic over `Z/p^kZ`, with unit parts drawn
/// from `{1, u}`. Duplicates (as unordered pairs) keep their first family.
///
/// * `zero-pattern`: `(a p^s, b p^r)`, `(c p^s, 0)`, `(0, 0)` pairwise, `s <= r < k`.
/// * `valuation-pattern`: `(a p^s1, b p^s2)` vs `(c p^s3, d p^s4)` with
///   `s1 <= s2`, `s3 <= s4` and `(s1, s2) != (s3, s4)`.
/// * `isotropic-count`: `(u p^s, p^s)` vs `(p^s, p^s)` and `(u p^s, 0)` vs
///   `(p^s, 0)`, `0 < s < k`.
/// * `residue-pair`: the four rings `(u^e p^s, u^f p^r)` pairwise, `0 < s < r < k`.
/// * `nonresidue-root`: `(1, p^s)` vs `(u, p^s)`, `0 < s <= k`.
pub fn predicted_distinct_pairs(pp: &PrimePower, u: u64) -> Result<Vec<PredictedPair>> {
    let q = pp.q();
    let k = pp.k();
    let zn = pp.zn();
    let ring = |a: u64, b: u64| RingParams::from_residues(q, a, b);
    let units = [1, zn.reduce(u)];
    let scaled = |c: u64, e: u32| zn.mul(c, pp.p_pow(e));
    let mut raw: Vec<(&'static str, RingParams, RingParams)> = Vec::new();

    for s in 0..k {
        for r in s..k {
            for a in units {
                for b in units {
                    let r1 = ring(scaled(a, s), scaled(b, r))?;
                    for c in units {
                        raw.push(("zero-pattern", r1, ring(scaled(c, s), 0)?));
                    }
                    raw.push(("zero-pattern", r1, ring(0, 0)?));
                }
            }
        }
        for c in units {
            raw.push(("zero-pattern", ring(scaled(c, s), 0)?, ring(0, 0)?));
        }
    }

    let exps: Vec<(u32, u32)> = (0..=k).flat_map(|x| (x..=k).map(move |y| (x, y))).collect();
    for &(s1, s2) in &exps {
        for &(s3, s4) in &exps {
            if (s1, s2) == (s3, s4) {
                continue;
            }
            for a in units {
                for b in units {
                    for c in units {
                        for d in units {
                            raw.push((
                                "valuation-pattern",
                                ring(scaled(a, s1), scaled(b, s2))?,
                                ring(scaled(c, s3), scaled(d, s4))?,
                            ));
                        }
                    }
                }
            }
        }
    }

    for s in 1..k {
        let ps = pp.p_pow(s);
        raw.push(("isotropic-count", ring(scaled(u, s), ps)?, ring(ps, ps)?));
        raw.push(("isotropic-count", ring(scaled(u, s), 0)?, ring(ps, 0)?));
    }

    for s in 1..k {
        for r in s + 1..k {
            let four = [
                ring(scaled(u, s), scaled(u, r))?,
                ring(scaled(1, s), scaled(u, r))?,
                ring(scaled(u, s), scaled(1, r))?,
                ring(scaled(1, s), scaled(1, r))?,
            ];
            for x in 0..4 {
                for y in x + 1..4 {
                    raw.push(("residue-pair", four[x], four[y]));
                }
            }
        }
    }

    for s in 1..=k {
        raw.push((
            "nonresidue-root",
            ring(1, pp.p_pow(s))?,
            ring(zn.reduce(u), pp.p_pow(s))?,
        ));
    }

    let mut seen = BTreeSet::new();
    Ok(raw
        .into_iter()
        .filter(|(_, l, r)| l != r && seen.insert(if l < r { (*l, *r) } else { (*r, *l) }))
        .map(|(family, left, right)| PredictedPair { family, left, right })
        .collect())
}

/// Where a construction's witness came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum WitnessOrigin {
    Constructive,
    Oracle,
}

/// The explicit witness of `c` when it verifies, otherwise the oracle's.
pub fn construction_witness(c: &Construction, caps: &SearchCaps) -> Result<(IsoWitness, WitnessOrigin)> {
    if let Ok(w) = c.witness() {
        if verify_witness(&w).is_ok() {
            return Ok((w, WitnessOrigin::Constructive));
        }
    }
    match find_isomorphism(c.source()?, c.target()?, caps)? {
        Some(w) => Ok((w, WitnessOrigin::Oracle)),
        None => Err(Error::NoRepresentation(format!(
            "{} {} -> {}: no witness found",
            c.family(),
            c.source()?,
            c.target()?
        ))),
    }
}

/// Checks conjugation, trace and norm preservation on every element when the
/// source has at most `PRESERVATION_SAMPLES` elements, otherwise on that many
/// seeded random ones. Returns a description of the first failure.
pub fn check_preservation(w: &IsoWitness, seed: u64) -> Option<String> {
    let src = QuatRing::new(w.source());
    let tgt = QuatRing::new(w.target());
    let n = w.n();
    let fail = |x: &[u64; 4]| {
        preserves_structure_at(w, &src, &tgt, x)
            .err()
            .map(|d| format!("{d:?} fails at {x:?}"))
    };
    if n.checked_pow(4).is_some_and(|size| size <= PRESERVATION_SAMPLES as u64) {
        src.elements().find_map(|x| fail(&x.coords()))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..PRESERVATION_SAMPLES).find_map(|_| fail(&std::array::from_fn(|_| rng.gen_range(0..n))))
    }
}

fn summarize<T>(check: &str, items: &[T], noun: &str, mut test: impl FnMut(&T) -> Option<String>) -> CheckRecord {
    let failure = items.iter().find_map(&mut test);
    CheckRecord::new(check, format!("{} {noun}", items.len()), failure)
}

fn family_checks(pp: &PrimePower, caps: &SearchCaps) -> Result<Vec<CheckRecord>> {
    caps.check_oracle(pp.q())?;
    let mut checks = Vec::new();
    let all = Construction::admissible(pp);
    let families: Vec<&'static str> = all.iter().map(Construction::family).fold(Vec::new(), |mut acc, f| {
        if !acc.contains(&f) {
            acc.push(f);
        }
        acc
    });
    for family in families {
        let tuples: Vec<Construction> = all.iter().copied().filter(|c| c.family() == family).collect();
        let outcomes: Vec<Option<String>> = tuples
            .par_iter()
            .map(|c| match construction_witness(c, caps) {
                Ok((w, _)) => verify_witness(&w).err().map(|d| format!("{c:?}: {d}")),
                Err(e) => Some(format!("{c:?}: {e}")),
            })
            .collect();
        let failure = outcomes.into_iter().flatten().next();
        checks.push(CheckRecord::new(
            format!("construction:{family}"),
            format!("{} tuples", tuples.len()),
            failure,
        ));
    }
    let u = smallest_qnr(pp.p());
    let pairs = predicted_distinct_pairs(pp, u)?;
    let verdicts: Vec<Result<Option<IsoWitness>>> = pairs
        .par_iter()
        .map(|pair| find_isomorphism(pair.left, pair.right, caps))
        .collect();
    for (pair, verdict) in pairs.iter().zip(verdicts) {
        let failure = verdict?.map(|w| format!("oracle found an isomorphism: {:?}", w.matrix()));
        checks.push(CheckRecord::new(
            format!("distinct:{}", pair.family),
            format!(
                "({},{}) vs ({},{})",
                pair.left.a(),
                pair.left.b(),
                pair.right.a(),
                pair.right.b()
            ),
            failure,
        ));
    }
    // The nonresidue-root family is isomorphic exactly at s = 0.
    let one = RingParams::from_residues(pp.q(), 1, 1)?;
    let nonres = RingParams::from_residues(pp.q(), u, 1)?;
    let failure = match find_isomorphism(one, nonres, caps)? {
        Some(w) => verify_witness(&w).err().map(|d| d.to_string()),
        None => Some("oracle found no isomorphism".to_string()),
    };
    checks.push(CheckRecord::new(
        "isomorphic:nonresidue-root",
        format!("(1,1) vs ({u},1)"),
        failure,
    ));
    Ok(checks)
}

/// Oracle verdicts for every unordered pair of rings over `Z/nZ`.
struct PairwiseVerdicts {
    rings: Vec<RingParams>,
    /// `(x, y, witness x -> y)` for every `x < y` with an isomorphism.
    isomorphic: Vec<(usize, usize, IsoWitness)>,
    /// `(x, y)` for every `x < y` without one.
    distinct: Vec<(usize, usize)>,
}

fn pairwise_verdicts(n: u64, caps: &SearchCaps) -> Result<PairwiseVerdicts> {
    let rings: Vec<RingParams> = (0..n)
        .flat_map(|a| (0..n).map(move |b| RingParams::from_residues(n, a, b)))
        .collect::<Result<_>>()?;
    let pairs: Vec<(usize, usize)> = (0..rings.len())
        .flat_map(|x| (x + 1..rings.len()).map(move |y| (x, y)))
        .collect();
    let found: Vec<Option<IsoWitness>> = pairs
        .par_iter()
        .map(|&(x, y)| find_isomorphism(rings[x], rings[y], caps))
        .collect::<Result<_>>()?;
    let mut isomorphic = Vec::new();
    let mut distinct = Vec::new();
    for ((x, y), w) in pairs.into_iter().zip(found) {
        match w {
            Some(w) => isomorphic.push((x, y, w)),
            None => distinct.push((x, y)),
        }
    }
    Ok(PairwiseVerdicts {
        rings,
        isomorphic,
        distinct,
    })
}

fn invariant_checks(pp: &PrimePower, caps: &SearchCaps) -> Result<Vec<CheckRecord>> {
    let q = pp.q();
    caps.check_oracle(q)?;
    let mut checks = Vec::new();

    let partition = brute_force_partition_detailed(q, caps)?;
    let expected = class_count_pp(pp);
    let found = partition.representatives.len() as u64;
    checks.push(CheckRecord::new(
        "class-count",
        format!("n={q}"),
        (found != expected).then(|| format!("oracle found {found} classes, formula gives {expected}")),
    ));
    let formula = class_count(q)?;
    checks.push(CheckRecord::new(
        "class-count-formula",
        format!("n={q}"),
        (formula != expected).then(|| format!("global formula {formula} vs prime-power formula {expected}")),
    ));

    let class_of = |r: &RingParams| canonical_form(r.a(), r.b(), pp);
    let mut witnesses: Vec<IsoWitness> = partition.witnesses.clone();
    if q <= PAIRWISE_ORACLE_MAX {
        let verdicts = pairwise_verdicts(q, caps)?;
        let rings = &verdicts.rings;
        let total = verdicts.isomorphic.len() + verdicts.distinct.len();
        let failure = verdicts
            .isomorphic
            .iter()
            .find(|(x, y, _)| class_of(&rings[*x]) != class_of(&rings[*y]))
            .map(|(x, y, _)| format!("{} and {} are isomorphic but classified apart", rings[*x], rings[*y]))
            .or_else(|| {
                verdicts
                    .distinct
                    .iter()
                    .find(|(x, y)| class_of(&rings[*x]) == class_of(&rings[*y]))
                    .map(|(x, y)| format!("{} and {} share a class but are not isomorphic", rings[*x], rings[*y]))
            });
        checks.push(CheckRecord::new(
            "classifier-oracle-agreement",
            format!("{total} pairs"),
            failure,
        ));

        let prints: Vec<_> = rings.par_iter().map(|r| fingerprint(*r, caps)).collect::<Result<_>>()?;
        checks.push(summarize(
            "fingerprint-invariance",
            &verdicts.isomorphic,
            "isomorphic pairs",
            |(x, y, _)| (prints[*x] != prints[*y]).then(|| format!("{} and {}", rings[*x], rings[*y])),
        ));
        witnesses = verdicts.isomorphic.into_iter().map(|(_, _, w)| w).collect();
    } else {
        let failure = partition.class_of.iter().enumerate().find_map(|(idx, &c)| {
            let member = RingParams::from_residues(q, idx as u64 / q, idx as u64 % q).ok()?;
            let rep = partition.representatives[c];
            (class_of(&member) != class_of(&rep)).then(|| format!("{member} joined {rep} but is classified apart"))
        });
        let labels: BTreeSet<_> = partition.representatives.iter().map(|r| class_of(r).token()).collect();
        let failure = failure.or_else(|| {
            (labels.len() != partition.representatives.len()).then(|| "two oracle classes share a label".to_string())
        });
        checks.push(CheckRecord::new(
            "classifier-oracle-agreement",
            format!("{} classes", partition.representatives.len()),
            failure,
        ));
        checks.push(summarize(
            "fingerprint-invariance",
            &partition.witnesses,
            "witnesses",
            |w| {
                let (l, r) = (fingerprint(w.source(), caps).ok()?, fingerprint(w.target(), caps).ok()?);
                (l != r).then(|| format!("{} and {}", w.source(), w.target()))
            },
        ));
    }

    checks.push(summarize("witness-verifies", &witnesses, "witnesses", |w| {
        verify_witness(w)
            .err()
            .map(|d| format!("{} -> {}: {d}", w.source(), w.target()))
    }));
    checks.push(summarize("structure-preservation", &witnesses, "witnesses", |w| {
        check_preservation(w, w.source().a() * q + w.source().b())
            .map(|e| format!("{} -> {}: {e}", w.source(), w.target()))
    }));
    for s in 1..pp.k() {
        let m = pp.p().pow(s);
        checks.push(summarize(&format!("descent:mod-{m}"), &witnesses, "witnesses", |w| {
            let reduced = w.reduce(m).ok()?;
            verify_witness(&reduced)
                .err()
                .map(|d| format!("{} -> {} reduced: {d}", w.source(), w.target()))
        }));
    }

    let zn = pp.zn();
    let squares: BTreeSet<u64> = (1..q).filter(|x| x % pp.p() != 0).map(|x| zn.mul(x, x)).collect();
    let all: Vec<(u64, u64)> = (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).collect();
    checks.push(summarize("canonical-form-invariance", &all, "pairs", |&(a, b)| {
        let c = canonical_form(a, b, pp);
        let moved =
            std::iter::once((b, a)).chain(squares.iter().flat_map(|&sq| [(zn.mul(a, sq), b), (a, zn.mul(b, sq))]));
        moved
            .into_iter()
            .find(|&(x, y)| canonical_form(x, y, pp) != c)
            .map(|(x, y)| format!("({a},{b}) vs ({x},{y})"))
    }));

    let u = smallest_qnr(pp.p());
    for s in 1..pp.k() {
        let e1 = congruence_count(CongruenceStyle::E1, u, s, pp)?;
        let e2 = congruence_count(CongruenceStyle::E2, u, s, pp)?;
        checks.push(CheckRecord::new(
            "congruence-dichotomy",
            format!("s={s}"),
            (e1 == e2).then(|| format!("both congruences have {e1} solutions")),
        ));
        if s == 1 {
            let ps = pp.p_pow(s);
            let m = pp.p().pow(pp.k() - s);
            for (style, count, a) in [("E1", e1, zn.mul(u, ps)), ("E2", e2, ps)] {
                let (size, image) = isotropic_set_size(RingParams::from_residues(q, a, ps)?, pp.p(), m, caps)?;
                let lifts = pp.p().pow(3 * s);
                checks.push(CheckRecord::new(
                    format!("isotropic-set:{style}"),
                    format!("({a},{ps})"),
                    (image != count || size != count * lifts)
                        .then(|| format!("set has {size} elements, {image} residues; congruence gives {count}")),
                ));
            }
        }
    }
    Ok(checks)
}

fn m2_checks(pp: &PrimePower, caps: &SearchCaps) -> Result<Vec<CheckRecord>> {
    let q = pp.q();
    if q > caps.m2_n {
        return Err(Error::InstanceTooLarge {
            what: "matrix embedding modulus",
            size: q,
            cap: caps.m2_n,
        });
    }
    let zn = pp.zn();
    let units: Vec<u64> = (1..q).filter(|&x| zn.is_unit(x)).collect();
    let pairs: Vec<(u64, u64)> = units.iter().flat_map(|&a| units.iter().map(move |&b| (a, b))).collect();
    pairs
        .par_iter()
        .map(|&(a, b)| {
            let failure = match m2_witness(q, a, b, caps) {
                Ok(w) if w.verify() => None,
                Ok(_) => Some("witness does not verify".to_string()),
                Err(e @ Error::InstanceTooLarge { .. }) => return Err(e),
                Err(e) => Some(e.to_string()),
            };
            Ok(CheckRecord::new("m2-embedding", format!("({a},{b})"), failure))
        })
        .collect()
}

/// Runs one suite over `Z/p^kZ`. Cap violations are errors; failed checks are
/// recorded in the ledger.
pub fn run_suite(suite: Suite, pp: &PrimePower, caps: &SearchCaps) -> Result<Ledger> {
    let checks = match suite {
        Suite::Lemmas => family_checks(pp, caps)?,
        Suite::Invariants => invariant_checks(pp, caps)?,
        Suite::M2 => m2_checks(pp, caps)?,
    };
    Ok(Ledger::new(suite, pp, checks))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pp(p: u64, k: u32) -> PrimePower {
        PrimePower::new(p, k).unwrap()
    }

    #[test]
    fn predicted_pairs_for_3_squared() {
        let pairs = predicted_distinct_pairs(&pp(3, 2), 2).unwrap();
        assert!(pairs.len() >= 20);
        let families: BTreeSet<_> = pairs.iter().map(|p| p.family).collect();
        assert!(families.contains("zero-pattern"));
        assert!(families.contains("valuation-pattern"));
        assert!(families.contains("isotropic-count"));
        assert!(!families.contains("residue-pair"));
        let r = |a, b| RingParams::odd(9, a, b).unwrap();
        assert!(pairs.iter().any(|p| (p.left, p.right) == (r(6, 3), r(3, 3))));
        assert!(pairs.iter().any(|p| (p.left, p.right) == (r(6, 0), r(3, 0))));
    }

    #[test]
    fn residue_pairs_appear_from_cube() {
        let pairs = predicted_distinct_pairs(&pp(3, 3), 2).unwrap();
        assert!(pairs.iter().any(|p| p.family == "residue-pair"));
    }

    #[test]
    fn suites_pass_mod_3() {
        let caps = SearchCaps::default();
        for suite in [Suite::Lemmas, Suite::Invariants, Suite::M2] {
            let ledger = run_suite(suite, &pp(3, 1), &caps).unwrap();
            assert!(
                ledger.all_passed(),
                "{suite}: {:?}",
                ledger.failures().collect::<Vec<_>>()
            );
            assert_eq!(ledger.total, ledger.passed);
        }
    }

    #[test]
    fn suites_respect_caps() {
        let caps = SearchCaps {
            oracle_n: 5,
            m2_n: 5,
            ..SearchCaps::default()
        };
        for suite in [Suite::Lemmas, Suite::Invariants, Suite::M2] {
            assert!(matches!(
                run_suite(suite, &pp(7, 1), &caps),
                Err(Error::InstanceTooLarge { .. })
            ));
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in [Suite::Lemmas, Suite::Invariants, Suite::M2] {
            assert_eq!(suite.to_string().parse::<Suite>().unwrap(), suite);
        }
        assert!("all".parse::<Suite>().is_err());
    }

    #[test]
    fn preservation_flags_a_bad_map() {
        let r = RingParams::odd(3, 1, 2).unwrap();
        assert_eq!(check_preservation(&IsoWitness::identity(r), 0), None);
        let mut m = *IsoWitness::identity(r).matrix();
        m[0][1] = 1;
        let w = IsoWitness::from_matrix(r, r, m).unwrap();
        assert!(check_preservation(&w, 0).is_some());
    }
}
