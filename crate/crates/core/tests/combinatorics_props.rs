use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use qdivisor::combinatorics::{
    bell_poly, bell_poly_recurrence, divisor_sigma, eulerian_coeffs, factorial, gen_binom, polylog_neg, stirling1,
    stirling2,
};
use qdivisor::scalar::{int, rat, rational_to_f64};
use qdivisor::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-7i64..=7, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

#[test]
fn stirling_orthogonality() {
    for j in 0..=10u32 {
        for i in 0..=10u32 {
            let a: BigInt = (0..=10).map(|k| stirling1(j, k) * stirling2(k, i)).sum();
            let b: BigInt = (0..=10).map(|k| stirling2(j, k) * stirling1(k, i)).sum();
            let want = if i == j { BigInt::one() } else { BigInt::zero() };
            assert_eq!(a, want, "s·S at ({j},{i})");
            assert_eq!(b, want, "S·s at ({j},{i})");
        }
    }
}

#[test]
fn eulerian_rows() {
    for m in 1..=8u32 {
        let row = eulerian_coeffs(m);
        let rev: Vec<_> = row.iter().rev().cloned().collect();
        assert_eq!(row, rev, "A_{m} palindromic");
        assert_eq!(row.iter().sum::<BigInt>(), factorial(m));
    }
}

#[test]
fn bell_forms_agree() {
    for m in 0..=6 {
        assert_eq!(bell_poly(m), bell_poly_recurrence(m), "Y_{m}");
    }
}

fn brute_sigma(m: u32, c: &Rational, n: u64) -> Rational {
    (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| int(d.pow(m) as i64) * num_traits::pow(c.clone(), d as usize))
        .sum()
}

#[test]
fn sigma_against_trial_division() {
    for n in 1..=500u64 {
        for m in 0..=4 {
            assert_eq!(divisor_sigma(m, &int(1), n).unwrap(), brute_sigma(m, &int(1), n), "σ_{m}({n})");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn weighted_sigma(n in 1u64..=60, m in 0u32..=4, c in small_rational()) {
        prop_assert_eq!(divisor_sigma(m, &c, n).unwrap(), brute_sigma(m, &c, n));
    }

    #[test]
    fn polylog_matches_partial_sums(m in 0u32..=5, num in -3i64..=3) {
        let x = rat(num, 8);
        let exact = rational_to_f64(&polylog_neg(m, &x).unwrap()).unwrap();
        let xf = num as f64 / 8.0;
        let partial: f64 = (1..=200).map(|n: i32| (n as f64).powi(m as i32) * xf.powi(n)).sum();
        prop_assert!((exact - partial).abs() < 1e-9 * (1.0 + exact.abs()), "{} vs {}", exact, partial);
    }

    #[test]
    fn vandermonde(a in small_rational(), b in small_rational(), n in 0u32..=8) {
        let lhs: Rational = (0..=n).map(|k| gen_binom(&a, k) * gen_binom(&b, n - k)).sum();
        prop_assert_eq!(lhs, gen_binom(&(a + b), n));
    }
}
