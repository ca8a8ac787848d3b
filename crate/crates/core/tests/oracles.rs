mod common;

use coincidence_entropy::coincidence::{
    ic_closed, ic_direct, ic_quadrature, ic_recurrence, ic_via_legendre, QuadNodes,
};
use coincidence_entropy::legendre::{legendre_argument, legendre_eval};
use coincidence_entropy::{FamilySpec, TruncationPolicy};
use common::*;

#[test]
fn exact_spot_values() {
    assert_eq!(f_exact(2, &q(1, 4)), q(59, 128));
    assert_eq!(f_exact(2, &q(1, 2)), q(3, 8));
    assert_eq!(g_exact(1, &q(1, 1)), q(1, 3));
    assert_eq!(g_exact(2, &q(1, 1)), q(5, 27));
    assert_eq!(u_exact(1, &q(1, 1)), q(1, 2));
    assert_eq!(u_exact(2, &q(1, 1)), q(3, 8));
    assert_eq!(j_exact(0, &q(1, 3)), q(1, 2));
}

#[test]
fn oracle_sums_agree_with_each_other() {
    // the finite G and J sums against the identities that link them to F and U
    for n in 0..8u64 {
        for (a, b) in [(1, 7), (1, 4), (2, 5)] {
            let x = q(a, b);
            let lhs = f_exact(n, &x);
            let two_x = q(2, 1) * &x;
            let shift = pow(&(q(1, 1) - &two_x), 2 * n + 1);
            assert_eq!(lhs, &shift * g_exact(n + 1, &-x.clone()));
            let ratio = &x / (q(1, 1) - &x);
            assert_eq!(lhs, u_exact(n, &ratio));
        }
        let x = q(2, 9);
        let factor = (q(1, 1) - &x) / (q(1, 1) + &x);
        assert_eq!(j_exact(n, &x), factor * u_exact(n, &x));
    }
}

#[test]
fn backends_match_exact_rationals() {
    let policy = TruncationPolicy::default();
    for n in 0..=12u64 {
        for &x in &[0.125, 0.25, 0.375, 0.5, 0.8125] {
            let want = to_f64(&f_exact(n, &exact(x)));
            let spec = FamilySpec::binomial(n);
            assert!(rel(ic_closed(&spec, x).unwrap().value, want) <= 1e-15, "closed F_{n}({x})");
            assert!(rel(ic_recurrence(&spec, x).unwrap().value, want) <= 1e-14, "rec F_{n}({x})");
            assert!(rel(ic_direct(&spec, x, &policy).unwrap().value, want) <= 1e-14, "direct F_{n}({x})");
            assert!(rel(ic_quadrature(&spec, x, QuadNodes::Auto).unwrap().value, want) <= 1e-14);
            assert!(rel(ic_via_legendre(&spec, x).unwrap().value, want) <= 1e-14, "legendre F_{n}({x})");
        }
        for &x in &[0.25, 1.0, 2.5] {
            let want = to_f64(&u_exact(n, &exact(x)));
            let spec = FamilySpec::bbh(n);
            assert!(rel(ic_closed(&spec, x).unwrap().value, want) <= 1e-14, "closed U_{n}({x})");
            assert!(rel(ic_via_legendre(&spec, x).unwrap().value, want) <= 1e-14, "legendre U_{n}({x})");
        }
        for &x in &[0.25, 0.5, 0.875] {
            let want = to_f64(&j_exact(n, &exact(x)));
            let spec = FamilySpec::mkz(n);
            assert!(rel(ic_closed(&spec, x).unwrap().value, want) <= 1e-14, "closed J_{n}({x})");
            assert!(rel(ic_recurrence(&spec, x).unwrap().value, want) <= 1e-13, "rec J_{n}({x})");
        }
        if n >= 1 {
            for &x in &[0.25, 1.0, 3.0] {
                let want = to_f64(&g_exact(n, &exact(x)));
                let spec = FamilySpec::neg_binomial(n as f64).unwrap();
                assert!(rel(ic_closed(&spec, x).unwrap().value, want) <= 1e-14, "closed G_{n}({x})");
                assert!(rel(ic_recurrence(&spec, x).unwrap().value, want) <= 1e-14, "rec G_{n}({x})");
                assert!(rel(ic_via_legendre(&spec, x).unwrap().value, want) <= 1e-14, "legendre G_{n}({x})");
            }
        }
    }
}

#[test]
fn legendre_matches_sum_form_after_rounding() {
    for n in 0..=12u64 {
        for (a, b) in [(1, 3), (1, 5), (2, 7), (3, 8), (9, 20), (1, 100), (49, 100)] {
            let x = a as f64 / b as f64;
            let t = legendre_argument(x).unwrap().t;
            let want = to_f64(&legendre_exact(n, &exact(t)));
            assert_eq!(legendre_eval(n, t), want, "P_{n}({t})");
        }
    }
}
