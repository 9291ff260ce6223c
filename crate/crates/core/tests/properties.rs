use gquat::{
    canonical_form, classify_n, find_isomorphism, fingerprint, verify_witness, Construction, IsoWitness, PrimePower,
    QuatRing, RingParams, SearchCaps,
};
use proptest::prelude::*;

fn odd_modulus() -> impl Strategy<Value = u64> {
    (1u64..60).prop_map(|h| 2 * h + 1)
}

fn ring_and_elements() -> impl Strategy<Value = (RingParams, [u64; 4], [u64; 4], [u64; 4])> {
    odd_modulus().prop_flat_map(|n| {
        let coords = || prop::array::uniform4(0..n);
        ((0..n), (0..n), coords(), coords(), coords())
            .prop_map(move |(a, b, x, y, z)| (RingParams::from_residues(n, a, b).unwrap(), x, y, z))
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative((params, x, y, z) in ring_and_elements()) {
        let r = QuatRing::new(params);
        let (x, y, z) = (r.from_coords(x), r.from_coords(y), r.from_coords(z));
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn multiplication_distributes((params, x, y, z) in ring_and_elements()) {
        let r = QuatRing::new(params);
        let (x, y, z) = (r.from_coords(x), r.from_coords(y), r.from_coords(z));
        prop_assert_eq!(x.mul(&y.add(&z).unwrap()).unwrap(), x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap());
        prop_assert_eq!(y.add(&z).unwrap().mul(&x).unwrap(), y.mul(&x).unwrap().add(&z.mul(&x).unwrap()).unwrap());
    }

    #[test]
    fn conjugation_reverses_products((params, x, y, _z) in ring_and_elements()) {
        let r = QuatRing::new(params);
        let (x, y) = (r.from_coords(x), r.from_coords(y));
        prop_assert_eq!(x.mul(&y).unwrap().conj(), y.conj().mul(&x.conj()).unwrap());
        prop_assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn norm_and_trace_come_from_conjugation((params, x, y, _z) in ring_and_elements()) {
        let r = QuatRing::new(params);
        let (x, y) = (r.from_coords(x), r.from_coords(y));
        prop_assert_eq!(x.mul(&x.conj()).unwrap(), r.scalar(x.norm()));
        prop_assert_eq!(x.add(&x.conj()).unwrap(), r.scalar(x.trace()));
        prop_assert_eq!(x.mul(&y).unwrap().norm(), r.zn().mul(x.norm(), y.norm()));
    }

    #[test]
    fn pure_elements_square_to_scalars((params, x, _y, _z) in ring_and_elements()) {
        let r = QuatRing::new(params);
        let q = r.from_coords([0, x[1], x[2], x[3]]);
        let sq = q.pure_square().unwrap();
        prop_assert_eq!(q.mul(&q).unwrap(), r.scalar(sq));
        prop_assert_eq!(r.zn().neg(sq), q.norm());
    }

    #[test]
    fn display_parses_back((params, x, _y, _z) in ring_and_elements()) {
        let r = QuatRing::new(params);
        let q = r.from_coords(x);
        prop_assert_eq!(r.parse(&q.to_string()).unwrap(), q);
        prop_assert_eq!(r.parse(&q.to_compact()).unwrap(), q);
    }

    #[test]
    fn canonical_form_depends_only_on_class(p in prop::sample::select(vec![3u64, 5, 7]), k in 1u32..4, a in 0u64..1000, b in 0u64..1000) {
        let pp = PrimePower::new(p, k).unwrap();
        let c = canonical_form(a % pp.q(), b % pp.q(), &pp);
        prop_assert_eq!(canonical_form(c.rep.0, c.rep.1, &pp), c);
        prop_assert_eq!(canonical_form(b % pp.q(), a % pp.q(), &pp), c);
    }

    #[test]
    fn classify_n_is_componentwise(n in odd_modulus(), a in 0u64..1000, b in 0u64..1000) {
        let classes = classify_n(a, b, n).unwrap();
        for c in classes {
            prop_assert_eq!(c, canonical_form(a % c.pp.q(), b % c.pp.q(), &c.pp));
        }
    }
}

fn ring(n: u64, a: i64, b: i64) -> RingParams {
    RingParams::odd(n, a, b).unwrap()
}

#[test]
fn witnesses_compose_and_invert() {
    let caps = SearchCaps::default();
    let chain = [ring(9, 1, 3), ring(9, 4, 6), ring(9, 3, 7), ring(9, 6, 1)];
    let mut total = IsoWitness::identity(chain[0]);
    for pair in chain.windows(2) {
        let w = find_isomorphism(pair[0], pair[1], &caps).unwrap().expect("isomorphic");
        verify_witness(&w).unwrap();
        total = total.then(&w).unwrap();
        verify_witness(&total).unwrap();
    }
    assert_eq!(total.target(), chain[3]);
    let back = total.inverse().unwrap();
    verify_witness(&back).unwrap();
    assert_eq!(total.then(&back).unwrap(), IsoWitness::identity(chain[0]));
}

#[test]
fn witness_documents_round_trip() {
    let caps = SearchCaps::default();
    let w = find_isomorphism(ring(9, 3, 3), ring(9, 6, 6), &caps).unwrap().unwrap();
    let json = serde_json::to_string(&w.to_doc()).unwrap();
    let doc: gquat::iso::WitnessDoc = serde_json::from_str(&json).unwrap();
    assert_eq!(IsoWitness::from_doc(&doc).unwrap(), w);
}

#[test]
fn oracle_verdicts_are_symmetric_and_respect_fingerprints_mod_9() {
    let caps = SearchCaps::default();
    let rings: Vec<RingParams> = (0..9)
        .flat_map(|a| (0..9).map(move |b| RingParams::from_residues(9, a, b).unwrap()))
        .collect();
    let prints: Vec<_> = rings.iter().map(|r| fingerprint(*r, &caps).unwrap()).collect();
    for (x, rx) in rings.iter().enumerate().step_by(4) {
        for (y, ry) in rings.iter().enumerate() {
            let fwd = find_isomorphism(*rx, *ry, &caps).unwrap();
            let bwd = find_isomorphism(*ry, *rx, &caps).unwrap();
            assert_eq!(fwd.is_some(), bwd.is_some(), "{rx} vs {ry}");
            if fwd.is_some() {
                assert_eq!(prints[x], prints[y], "{rx} vs {ry}");
            }
        }
    }
}

#[test]
fn constructions_over_cube_of_three_verify() {
    let pp = PrimePower::new(3, 3).unwrap();
    for c in Construction::admissible(&pp).iter().step_by(7) {
        let w = c.witness().unwrap();
        assert_eq!(verify_witness(&w), Ok(()), "{c:?}");
    }
}
