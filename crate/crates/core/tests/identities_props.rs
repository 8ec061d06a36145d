use proptest::prelude::*;

use qdivisor::identities::{approx, build_side, find_identity, full_default_suite, verify_identity, ParamBinding};
use qdivisor::scalar::rat;

const BOUND_IDS: [&str; 3] = ["lemma5", "lemma6", "lemma7"];

/// Setting `a` to a number after building agrees with building at that number.
#[test]
fn binding_a_commutes_with_building() {
    let a = rat(1, 2);
    for id in BOUND_IDS {
        let d = find_identity(id).unwrap();
        let key = d.params.iter().find(|p| p.name != "a" && p.name != "c").unwrap().name;
        for side in d.sides {
            let formal = build_side(id, side, &ParamBinding::new(8, 40).with(key, "2")).unwrap();
            let bound = build_side(id, side, &ParamBinding::order(8).with(key, "2").with("a", "1/2")).unwrap();
            let sub = formal.substitute("a", &a).unwrap();
            let (lhs, rhs) = (sub.q_coeffs(), bound.q_coeffs());
            // the constant term is a full power series in a, cut at a^40
            assert!((approx(&lhs[0]) - approx(&rhs[0])).abs() < 1e-9, "{id}/{side} at q^0");
            assert_eq!(lhs[1..], rhs[1..], "{id}/{side}");
        }
    }
}

/// A side built at a larger order, cut back down, equals the side built at the smaller one.
#[test]
fn truncation_is_consistent() {
    let mut seen = std::collections::HashSet::new();
    for entry in full_default_suite() {
        let key = (entry.id.clone(), entry.binding.describe());
        if !seen.insert(key) {
            continue;
        }
        let d = find_identity(&entry.id).unwrap();
        let mut small = entry.binding.clone();
        let mut big = entry.binding.clone();
        (small.nq, small.nt, big.nq, big.nt) = (8, 8, 14, 14);
        let side = d.sides[0];
        let lo = build_side(&entry.id, side, &small).unwrap();
        let hi = build_side(&entry.id, side, &big).unwrap();
        let cut = hi.restrict(lo.spec().nq(), lo.spec().nt()).unwrap();
        assert_eq!(cut, lo, "{} {}", entry.id, entry.binding.describe());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_parameters_verify(
        id in prop::sample::select(&BOUND_IDS[..]),
        n in -5i64..=5,
        den in 1i64..=6,
        r in 1u32..=4,
        bound in any::<bool>(),
    ) {
        prop_assume!(n != 0);
        let d = find_identity(id).unwrap();
        let key = d.params.iter().find(|p| p.name != "a" && p.name != "c").unwrap().name;
        let c = format!("{n}/{den}");
        let mut b = ParamBinding::order(10).with("c", &c).with(key, &r.to_string());
        if bound {
            b = b.with("a", "-2/3");
        }
        if bound && rat(n, den) * rat(-2, 3) == rat(1, 1) {
            // a·c = 1 is a pole of the second T sum
            prop_assert!(verify_identity(id, &b).is_err());
        } else {
            let report = verify_identity(id, &b).unwrap();
            prop_assert!(report.passed(), "{}", report.summary());
        }
    }
}
