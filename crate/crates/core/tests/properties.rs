mod common;

use entire::equations::{self, random_b_provider};
use entire::flux::{self, builtin_catalog};
use entire::inversion::{cardano_inverse, invert_monotone, invert_numeric, InversionConfig};
use entire::solution::{construct, BundleSource, DerivativeBundle};
use proptest::prelude::*;

fn catalog_index() -> impl Strategy<Value = usize> {
    0..builtin_catalog().len()
}

fn full_range_pair() -> impl Strategy<Value = flux::FluxPair> {
    prop_oneof![
        Just(flux::identity()),
        Just(flux::cubic()),
        Just(flux::arsinh()),
    ]
}

fn bundle() -> impl Strategy<Value = DerivativeBundle> {
    (prop::array::uniform8(-20.0..20.0f64)).prop_map(|v| DerivativeBundle {
        x: v[0],
        y: v[1],
        u: v[2],
        ux: v[3],
        uy: v[4],
        uxx: v[5],
        uxy: v[6],
        uyy: v[7],
        source: BundleSource::Analytic,
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn primitive_derivative_is_coefficient(i in catalog_index(), t in -5.0..5.0f64) {
        let pair = &builtin_catalog()[i];
        let h = f64::EPSILON.cbrt() * t.abs().max(1.0);
        let fd = (pair.primitive(t + h) - pair.primitive(t - h)) / (2.0 * h);
        prop_assert!((fd - pair.coefficient(t)).abs() < 1e-6);
    }

    #[test]
    fn primitive_is_nondecreasing(i in catalog_index(), a in -5.0..5.0f64, b in -5.0..5.0f64) {
        let pair = &builtin_catalog()[i];
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        prop_assert!(pair.primitive(lo) <= pair.primitive(hi));
    }

    #[test]
    fn analytic_inverse_round_trips(i in catalog_index(), s in -0.999..0.999f64) {
        let pair = &builtin_catalog()[i];
        let range = pair.range();
        // interior point of the range, scaled to stay well inside finite ranges
        let x = if range.is_real_line() { 50.0 * s } else { s * range.hi };
        let inverse = pair.analytic_inverse().expect("catalog pairs carry inverses");
        prop_assert!((pair.primitive(inverse(x)) - x).abs() < 1e-10 * x.abs().max(1.0));
    }

    #[test]
    fn numeric_inverse_meets_residual_contract(pair in full_range_pair(), x in -500.0..500.0f64) {
        let cfg = InversionConfig::default();
        let t = invert_numeric(&pair, x, &cfg).unwrap();
        prop_assert!((pair.primitive(t) - x).abs() <= cfg.rel_tol * x.abs().max(1.0));
    }

    #[test]
    fn cardano_matches_numeric(x in -100.0..100.0f64) {
        let closed = cardano_inverse(x);
        let numeric = invert_numeric(&flux::cubic(), x, &InversionConfig::default()).unwrap();
        prop_assert!((closed - numeric).abs() <= 1e-10 * closed.abs().max(1.0));
    }

    #[test]
    fn cardano_is_exactly_odd(x in -1e12..1e12f64) {
        prop_assert_eq!(cardano_inverse(-x).to_bits(), (-cardano_inverse(x)).to_bits());
    }

    #[test]
    fn separable_solutions_are_antisymmetric(pair in full_range_pair(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let sol = construct(pair.clone(), pair, 1.0);
        let (a, b) = (sol.value(x, y).unwrap(), sol.value(y, x).unwrap());
        prop_assert!((a + b).abs() < 1e-9 * a.abs().max(1.0));
    }

    #[test]
    fn mixed_derivative_vanishes(pair in full_range_pair(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let sol = construct(pair.clone(), pair, 1.0);
        let fd = entire::verify::fd_bundle_of(&sol, x, y).unwrap();
        prop_assert!(fd.uxy.abs() < 1e-6, "uxy = {}", fd.uxy);
    }

    #[test]
    fn separation_identity(pair in full_range_pair(), c in -3.0..3.0f64, x in -3.0..3.0f64, y in -3.0..3.0f64) {
        prop_assume!(c != 0.0);
        let sol = construct(pair.clone(), pair.clone(), c);
        let b = sol.eval(x, y).unwrap();
        prop_assert!((pair.coefficient(b.ux) * b.uxx - c).abs() < 1e-12);
        prop_assert!((pair.coefficient(b.uy) * b.uyy + c).abs() < 1e-12);
    }

    #[test]
    fn zero_constant_has_constant_gradient(i in catalog_index(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let pair = builtin_catalog().swap_remove(i);
        let sol = construct(pair.clone(), pair, 0.0);
        let (origin, here) = (sol.eval(0.0, 0.0).unwrap(), sol.eval(x, y).unwrap());
        prop_assert_eq!((origin.ux, origin.uy), (here.ux, here.uy));
    }

    #[test]
    fn b_providers_respect_bound(seed in any::<u64>(), b in bundle(), bound in 0.0..10.0f64) {
        let provider = random_b_provider(seed, std::sync::Arc::new(move |_: &DerivativeBundle| bound));
        let v = provider(&b);
        prop_assert!(v.abs() < bound || (bound == 0.0 && v == 0.0));
    }

    #[test]
    fn flipped_and_plain_agree_without_mixed_term(mut b in bundle()) {
        b.uxy = 0.0;
        prop_assert_eq!(
            equations::wrong_msa().residual(&b).to_bits(),
            equations::wrong_msa_flipped().residual(&b).to_bits()
        );
    }

    #[test]
    fn wrong_msa_is_uniformly_elliptic(b in bundle()) {
        let m = equations::wrong_msa().ellipticity_margin(&b);
        let expected = 1.0 + b.ux * b.ux + b.uy * b.uy;
        prop_assert!(m >= 1.0);
        prop_assert!((m - expected).abs() <= 1e-12 * expected);
    }

    #[test]
    fn aronsson_is_degenerate(b in bundle()) {
        prop_assert_eq!(equations::aronsson().classify(&b), equations::Ellipticity::Degenerate);
    }

    #[test]
    fn residual_is_linear_in_second_derivatives(b1 in bundle(), b2 in bundle(), s in -2.0..2.0f64) {
        // fixed first-order data; only (uxx, uxy, uyy) vary
        let mut second = b2;
        second.ux = b1.ux;
        second.uy = b1.uy;
        let mut combined = b1;
        combined.uxx = b1.uxx + s * second.uxx;
        combined.uxy = b1.uxy + s * second.uxy;
        combined.uyy = b1.uyy + s * second.uyy;
        for eq in [equations::wrong_msa(), equations::minimal_surface(), equations::example3_sqrt()] {
            let lhs = eq.residual(&combined);
            let rhs = eq.residual(&b1) + s * eq.residual(&second);
            let scale = eq.residual(&b1).abs() + (s * eq.residual(&second)).abs() + 1.0;
            prop_assert!((lhs - rhs).abs() <= 1e-12 * scale, "{}", eq.name());
        }
    }

    #[test]
    fn corollary_duality(pair in full_range_pair(), seed in any::<u64>(), x in -3.0..3.0f64, y in -3.0..3.0f64) {
        let sol = construct(pair.clone(), pair.clone(), 1.0);
        let eq = equations::corollary_form(&pair, &pair, random_b_provider(seed, equations::corollary_bound(&pair, &pair)));
        prop_assert!(eq.residual(&sol.eval(x, y).unwrap()).abs() < 1e-12);
    }
}

#[test]
fn inverse_dispatch_prefers_closed_form() {
    let cfg = InversionConfig::default();
    let pair = flux::cubic();
    for x in common::linspace(-50.0, 50.0, 101) {
        assert_eq!(invert_monotone(&pair, x, &cfg).unwrap().to_bits(), cardano_inverse(x).to_bits());
    }
}

#[test]
fn numeric_inverse_reports_overflowing_preimage() {
    // sinh(1445) is not representable
    let err = invert_numeric(&flux::arsinh(), -1445.0, &InversionConfig::default()).unwrap_err();
    assert!(matches!(err, entire::Error::NoConvergence { .. }), "{err:?}");
}
