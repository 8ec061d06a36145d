use proptest::prelude::*;

use qdivisor::scalar::{int, rat};
use qdivisor::series::{
    basic_hypergeom, binom_expand, pochhammer, qbinom_gauss, HypergeomKind, Length, ParamMonomial, Series, VarSpec,
};
use qdivisor::{QSeries, Rational};

type P = ParamMonomial<Rational>;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| rat(n, d))
}

fn spec() -> VarSpec {
    VarSpec::new(&["q", "a"], 5, 6).unwrap()
}

/// A sparse random series over `spec()`.
fn series() -> impl Strategy<Value = QSeries> {
    prop::collection::vec(((0u32..=5, 0u32..=6), small_rational()), 0..10).prop_map(|terms| {
        let sp = spec();
        let mut s = Series::zero(&sp);
        for ((e0, e1), c) in terms {
            if e0 + e1 <= sp.nt() {
                let cur = s.coeff(&[e0, e1]);
                s.set_coeff(&[e0, e1], cur + c).unwrap();
            }
        }
        s
    })
}

fn unit_series() -> impl Strategy<Value = QSeries> {
    (series(), small_rational().prop_filter("unit", |c| *c != int(0))).prop_map(|(mut s, c)| {
        s.set_coeff(&[0, 0], c).unwrap();
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in series(), b in series(), c in series()) {
        let ab = a.try_mul(&b).unwrap();
        prop_assert_eq!(&ab, &b.try_mul(&a).unwrap());
        prop_assert_eq!(ab.try_mul(&c).unwrap(), a.try_mul(&b.try_mul(&c).unwrap()).unwrap());
        let left = a.try_mul(&b.try_add(&c).unwrap()).unwrap();
        let right = ab.try_add(&a.try_mul(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(a.try_add(&b).unwrap(), b.try_add(&a).unwrap());
        prop_assert_eq!(a.try_sub(&a).unwrap(), Series::zero(&spec()));
    }

    #[test]
    fn binomial_powers_cancel(alpha in small_rational(), c in small_rational(), e in 1u32..=3) {
        let sp = VarSpec::q_only(12);
        let x = Series::monomial(&sp, &[e], c).unwrap();
        let p = binom_expand(&x, &alpha).unwrap().try_mul(&binom_expand(&x, &-alpha).unwrap()).unwrap();
        prop_assert_eq!(p, Series::one(&sp));
    }

    #[test]
    fn hypergeom_stable_in_terms(a in small_rational(), b in small_rational(), c in small_rational()) {
        let sp = VarSpec::q_only(10);
        let up = [P::scalar(a, 0), P::scalar(b, 0)];
        let low = [P::scalar(c, 1)];
        let z = P::q(1);
        let base = basic_hypergeom(HypergeomKind::TwoPhiOne, &up, &low, &z, sp.nt(), &sp).unwrap();
        for more in [sp.nt() + 1, 2 * sp.nt() + 5] {
            prop_assert_eq!(&base, &basic_hypergeom(HypergeomKind::TwoPhiOne, &up, &low, &z, more, &sp).unwrap());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn inverse_of_units(s in unit_series()) {
        let inv = s.inverse().unwrap();
        prop_assert_eq!(s.try_mul(&inv).unwrap(), Series::one(&spec()));
    }
}

#[test]
fn pochhammer_telescopes() {
    let sp = spec();
    let pool = [
        P::scalar(rat(1, 2), 0),
        P::scalar(rat(-2, 3), 1),
        P::q(1),
        P::formal("a", 0),
        P::scaled(rat(3, 5), "a", 2),
    ];
    for x in &pool {
        for n in 0..=12u32 {
            let next = pochhammer(x, Length::Finite(n + 1), &sp).unwrap();
            let mut factor = Series::one(&sp);
            let m = x.clone().shifted(n);
            factor = factor.try_sub(&m.to_series(&sp).unwrap()).unwrap();
            let want = pochhammer(x, Length::Finite(n), &sp).unwrap().try_mul(&factor).unwrap();
            assert_eq!(next, want, "x = {x:?}, n = {n}");
        }
    }
}

#[test]
fn gaussian_binomial_symmetry() {
    let sp = VarSpec::q_only(80);
    for big in 0..=12u32 {
        for n in 0..=big {
            let a: QSeries = qbinom_gauss(big, n, &sp).unwrap();
            assert_eq!(a, qbinom_gauss(big, big - n, &sp).unwrap(), "[{big} {n}]");
        }
    }
}
