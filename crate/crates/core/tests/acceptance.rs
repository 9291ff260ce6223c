//! Acceptance criteria. Runs as a plain binary so every criterion prints one
//! PASS/FAIL line; exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gquat::verify::{check_preservation, construction_witness, predicted_distinct_pairs};
use gquat::{
    brute_force_partition_detailed, class_count, class_count_pp, classify_n, congruence_count, find_isomorphism,
    isotropic_set_size, label, m2_witness, smallest_qnr, verify_witness, CongruenceStyle, Construction, IsoWitness,
    PrimePower, QuatRing, RingParams, SearchCaps,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn pp(p: u64, k: u32) -> PrimePower {
    PrimePower::new(p, k).expect("odd prime")
}

fn class_counts(caps: &SearchCaps, found: &mut Vec<IsoWitness>) -> Outcome {
    let mut notes = Vec::new();
    for (p, k, budget) in [(3, 1, 10), (5, 1, 10), (7, 1, 10), (3, 2, 120)] {
        let start = Instant::now();
        let partition = brute_force_partition_detailed(pp(p, k).q(), caps).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let got = partition.representatives.len() as u64;
        let want = class_count_pp(&pp(p, k));
        ensure(got == want, || {
            format!("n={}: {got} classes, expected {want}", pp(p, k).q())
        })?;
        ensure(elapsed < Duration::from_secs(budget), || {
            format!("n={}: took {elapsed:?}, budget {budget}s", pp(p, k).q())
        })?;
        notes.push(format!("n={}: {got} in {:.2}s", pp(p, k).q(), elapsed.as_secs_f64()));
        found.extend(partition.witnesses);
    }
    Ok(notes.join(", "))
}

fn composite_counts(caps: &SearchCaps, found: &mut Vec<IsoWitness>) -> Outcome {
    let start = Instant::now();
    // 105 = 3·5·7 gives 2^3·(1+1)^3.
    for (n, want) in [(15, 16), (45, 40), (105, 64)] {
        let got = class_count(n).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("class_count({n}) = {got}, expected {want}"))?;
    }
    for (n, want) in [(15u64, 16usize), (105, 64)] {
        let mut labels = BTreeSet::new();
        for a in 0..n {
            for b in 0..n {
                labels.insert(label(&classify_n(a, b, n).map_err(|e| e.to_string())?));
            }
        }
        ensure(labels.len() == want, || {
            format!("{} distinct labels over Z/{n}Z, expected {want}", labels.len())
        })?;
    }
    for p in [3u64, 5, 7] {
        let classes = gquat::brute_force_partition(p, caps).map_err(|e| e.to_string())?.total;
        ensure(classes == 4, || format!("oracle finds {classes} classes over Z/{p}Z"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut checks = 0;
    for _ in 0..50 {
        let (a, b) = (rng.gen_range(0..15), rng.gen_range(0..15));
        for class in classify_n(a, b, 15).map_err(|e| e.to_string())? {
            let q = class.pp.q();
            let src = RingParams::from_residues(q, a % q, b % q).map_err(|e| e.to_string())?;
            let w = find_isomorphism(src, class.rep_params(), caps)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("({a},{b}) mod {q} is not isomorphic to its representative"))?;
            verify_witness(&w).map_err(|d| format!("({a},{b}) mod {q}: {d}"))?;
            found.push(w);
            checks += 1;
        }
    }
    ensure(start.elapsed() < Duration::from_secs(60), || {
        format!("took {:?}", start.elapsed())
    })?;
    Ok(format!(
        "16 labels over Z/15Z, 64 over Z/105Z, {checks} component checks"
    ))
}

fn constructive_witnesses(caps: &SearchCaps, found: &mut Vec<IsoWitness>) -> Outcome {
    let start = Instant::now();
    let (mut constructive, mut oracle) = (0, 0);
    for (p, k) in [(3, 1), (3, 2), (5, 1), (5, 2)] {
        for c in Construction::admissible(&pp(p, k)) {
            let (w, origin) = construction_witness(&c, caps).map_err(|e| e.to_string())?;
            verify_witness(&w).map_err(|d| format!("{c:?}: {d}"))?;
            ensure(
                w.source() == c.source().unwrap() && w.target() == c.target().unwrap(),
                || format!("{c:?}: witness joins the wrong rings"),
            )?;
            match origin {
                gquat::verify::WitnessOrigin::Constructive => constructive += 1,
                gquat::verify::WitnessOrigin::Oracle => oracle += 1,
            }
            found.push(w);
        }
    }
    ensure(start.elapsed() < Duration::from_secs(300), || {
        format!("took {:?}", start.elapsed())
    })?;
    Ok(format!("{constructive} constructive, {oracle} oracle-backed"))
}

fn non_isomorphism(caps: &SearchCaps) -> Outcome {
    let start = Instant::now();
    let pairs = predicted_distinct_pairs(&pp(3, 2), 2).map_err(|e| e.to_string())?;
    ensure(pairs.len() >= 20, || format!("only {} pairs enumerated", pairs.len()))?;
    for pair in &pairs {
        let verdict = find_isomorphism(pair.left, pair.right, caps).map_err(|e| e.to_string())?;
        ensure(verdict.is_none(), || {
            format!("{}: {} ≅ {}", pair.family, pair.left, pair.right)
        })?;
    }
    ensure(start.elapsed() < Duration::from_secs(300), || {
        format!("took {:?}", start.elapsed())
    })?;
    let families: BTreeSet<_> = pairs.iter().map(|p| p.family).collect();
    Ok(format!("{} pairs from {} families", pairs.len(), families.len()))
}

fn preservation(found: &[IsoWitness]) -> Outcome {
    let by_n = |n: u64| found.iter().filter(move |w| w.n() == n);
    ensure(by_n(3).count() > 0 && by_n(9).count() > 0, || {
        "no witnesses over Z/3Z or Z/9Z".to_string()
    })?;
    let failure = found.par_iter().enumerate().find_map_first(|(idx, w)| {
        check_preservation(w, idx as u64).map(|e| format!("{} -> {}: {e}", w.source(), w.target()))
    });
    if let Some(why) = failure {
        return Err(why);
    }
    Ok(format!(
        "{} witnesses ({} over Z/3Z, {} over Z/9Z)",
        found.len(),
        by_n(3).count(),
        by_n(9).count()
    ))
}

fn structure_sanity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = 2 * rng.gen_range(1..50) + 1;
        let params = RingParams::from_residues(n, rng.gen_range(0..n), rng.gen_range(0..n)).unwrap();
        ensure(QuatRing::new(params).check_associativity(), || {
            format!("{params} is not associative")
        })?;
    }
    let ring = QuatRing::new(RingParams::odd(3, 1, 2).unwrap());
    for x in ring.elements() {
        for y in ring.elements() {
            let lhs = x.mul(&y).unwrap().norm();
            ensure(lhs == ring.zn().mul(x.norm(), y.norm()), || {
                format!("n(xy) != n(x)n(y) at {x}, {y}")
            })?;
        }
    }
    for n in [9u64, 15] {
        for _ in 0..10_000 {
            let params = RingParams::from_residues(n, rng.gen_range(0..n), rng.gen_range(0..n)).unwrap();
            let ring = QuatRing::new(params);
            let x = ring.from_coords(std::array::from_fn(|_| rng.gen_range(0..n)));
            let y = ring.from_coords(std::array::from_fn(|_| rng.gen_range(0..n)));
            let lhs = x.mul(&y).unwrap().norm();
            ensure(lhs == ring.zn().mul(x.norm(), y.norm()), || {
                format!("{params}: fails at {x}, {y}")
            })?;
        }
    }
    Ok("200 associativity checks, 6561 + 20000 norm products".to_string())
}

fn unit_case(caps: &SearchCaps) -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in [3u64, 5] {
        for a in 1..n {
            for b in 1..n {
                let w = m2_witness(n, a, b, caps).map_err(|e| format!("({a},{b}) mod {n}: {e}"))?;
                ensure(w.verify(), || format!("({a},{b}) mod {n}: witness does not verify"))?;
                count += 1;
            }
        }
    }
    ensure(count == 20, || format!("{count} unit pairs"))?;
    ensure(start.elapsed() < Duration::from_secs(60), || {
        format!("took {:?}", start.elapsed())
    })?;
    Ok(format!("{count} unit pairs embed"))
}

fn congruence_dichotomy(caps: &SearchCaps) -> Outcome {
    let mut cases = 0;
    for p in [3u64, 5] {
        let u = smallest_qnr(p);
        for k in 2..=3 {
            for s in 1..k {
                let m = pp(p, k);
                let e1 = congruence_count(CongruenceStyle::E1, u, s, &m).map_err(|e| e.to_string())?;
                let e2 = congruence_count(CongruenceStyle::E2, u, s, &m).map_err(|e| e.to_string())?;
                ensure(e1 != e2, || format!("p={p} k={k} s={s}: both counts are {e1}"))?;
                cases += 1;
            }
        }
    }
    let m = pp(3, 2);
    let u = smallest_qnr(3);
    for (style, a) in [(CongruenceStyle::E1, 3 * u), (CongruenceStyle::E2, 3)] {
        let count = congruence_count(style, u, 1, &m).map_err(|e| e.to_string())?;
        let ring = RingParams::from_residues(9, a, 3).unwrap();
        let (size, image) = isotropic_set_size(ring, 3, 3, caps).map_err(|e| e.to_string())?;
        ensure(image == count && size == 27 * count, || {
            format!("{style:?}: congruence {count}, set {size} elements / {image} residues")
        })?;
    }
    Ok(format!("{cases} exponent cases differ; set sizes match for 3^2"))
}

fn main() -> ExitCode {
    let caps = SearchCaps::default();
    let mut witnesses = Vec::new();
    let mut ok = true;
    let mut report = |id: u32, name: &str, run: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(note) => println!("criterion {id} ({name}): PASS [{secs:.1}s] - {note}"),
            Err(why) => {
                ok = false;
                println!("criterion {id} ({name}): FAIL [{secs:.1}s] - {why}");
            }
        }
    };
    report(1, "prime-power class counts", &mut || {
        class_counts(&caps, &mut witnesses)
    });
    report(2, "composite counting", &mut || composite_counts(&caps, &mut witnesses));
    report(3, "constructive witnesses", &mut || {
        constructive_witnesses(&caps, &mut witnesses)
    });
    report(4, "non-isomorphism ledger", &mut || non_isomorphism(&caps));
    report(5, "structure preservation", &mut || preservation(&witnesses));
    report(6, "structure sanity", &mut structure_sanity);
    report(7, "unit case embedding", &mut || unit_case(&caps));
    report(8, "congruence dichotomy", &mut || congruence_dichotomy(&caps));
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
