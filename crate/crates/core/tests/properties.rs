//! Randomized property suites.

mod common;

use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use a2count::census::curve_stats;
use a2count::cohomology::motive::{evaluate, HeckeTraces, ScalarExpr, Symbol};
use a2count::cohomology::slopes::newton_polygon;
use a2count::cohomology::trace::{assemble_trace, Isotype, TraceOptions};
use a2count::error::CohomologyError;
use a2count::ffield::{build_field, QuadraticExtension};
use a2count::modforms::NewformSystem;

use common::*;

fn dominant_even(max: u32) -> impl Strategy<Value = (u32, u32)> {
    (0..=max).prop_flat_map(move |l| (Just(l), 0..=l)).prop_filter("even weight within bound", move |&(l, m)| {
        (l + m) % 2 == 0 && l + m <= max
    })
}

fn proper_rational() -> impl Strategy<Value = BigRational> {
    (2i64..9, 1i64..9).prop_map(|(a, b)| BigRational::new(a.into(), b.into())).prop_filter("not a unit", |x| {
        x.numer() != x.denom()
    })
}

fn fields() -> &'static Vec<Arc<QuadraticExtension>> {
    static F: OnceLock<Vec<Arc<QuadraticExtension>>> = OnceLock::new();
    F.get_or_init(|| {
        [(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1), (5, 2)]
            .iter()
            .map(|&(p, r)| Arc::new(QuadraticExtension::new(Arc::new(build_field(p, r).unwrap())).unwrap()))
            .collect()
    })
}

fn newforms() -> &'static Vec<NewformSystem> {
    static F: OnceLock<Vec<NewformSystem>> = OnceLock::new();
    F.get_or_init(|| all_newforms(22).expect("newforms"))
}

#[test]
fn s6_characters_are_orthonormal() {
    s6_orthogonality().unwrap();
    regular_representation().unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn beta_evaluates_to_dimension((l, m) in dominant_even(20)) {
        prop_assert!(beta_dimension(l, m).is_ok(), "{:?}", beta_dimension(l, m));
    }

    #[test]
    fn beta_matches_weyl_ratio((l, m) in dominant_even(20), x in proper_rational(), y in proper_rational()) {
        prop_assume!(x != y && x != y.recip());
        let r = beta_round_trip(l, m, &x, &y);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn random_curves_obey_weil_bounds(seed in any::<u64>(), which in 0usize..7) {
        let ext = &fields()[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_curve(&ext.base, &mut rng);
        let s = curve_stats(ext, &f).unwrap();
        let r = weil_and_parity(&s, ext.base.q() as u64);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn field_axioms(which in 0usize..7, a in any::<u32>(), b in any::<u32>(), c in any::<u32>()) {
        let f = &fields()[which].base;
        let (a, b, c) = (f.from_code(a % f.q()), f.from_code(b % f.q()), f.from_code(c % f.q()));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        if let Some(inv) = f.inv(a) {
            prop_assert_eq!(f.mul(a, inv), f.from_int(1));
        }
        prop_assert_eq!(f.quadratic_character(f.mul(a, b)), f.quadratic_character(a) * f.quadratic_character(b));
    }

    #[test]
    fn cusp_basis_has_valence_rank(level in prop::sample::select(vec![1u32, 2, 4]), half in 1u32..=12) {
        let r = cusp_rank(level, 2 * half);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn newforms_satisfy_hecke_relations(i in 0usize..1000) {
        let forms = newforms();
        let f = &forms[i % forms.len()];
        let r = hecke_relations(f);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn eisenstein_dimension_contraction((l, m) in dominant_even(24)) {
        let r = dimension_contraction(l, m);
        prop_assert!(r.is_ok(), "{:?}", r);
    }

    #[test]
    fn evaluation_is_linear_and_twists_by_q(
        a in -50i64..50, b in -50i64..50, e in 0u32..4, d in 0u32..3,
        q in prop::sample::select(vec![3u64, 5, 7, 9, 11, 13]),
    ) {
        let src = HeckeTraces::default();
        let x = ScalarExpr::tate(a, e);
        let y = ScalarExpr::term(b, e, Symbol::New { level: 4, weight: 6 });
        let sum = evaluate(&(x.clone() + y.clone()), q, &src).unwrap();
        prop_assert_eq!(sum, evaluate(&x, q, &src).unwrap() + evaluate(&y, q, &src).unwrap());
        let tw = evaluate(&y.twist(d), q, &src).unwrap();
        prop_assert_eq!(tw, evaluate(&y, q, &src).unwrap() * BigInt::from(q).pow(d));
    }

    #[test]
    fn ordinary_polygon_slopes(p in prop::sample::select(vec![3u64, 5, 7]), u in 1i64..20, va in 0u32..4, vb in 0u32..4) {
        // (1 - aX)(1 - bX) with v(a) = va and v(b) = va + vb + 1
        prop_assume!(u % p as i64 != 0);
        let a = BigInt::from(u) * BigInt::from(p).pow(va);
        let b = BigInt::from(u + p as i64) * BigInt::from(p).pow(va + vb + 1);
        let c = vec![BigInt::from(1), -(&a + &b), &a * &b];
        let got = newton_polygon(&c, p);
        let want: Vec<BigRational> = [va, va + vb + 1].iter().map(|&v| BigRational::from_integer(v.into())).collect();
        prop_assert_eq!(got, want);
    }
}

#[test]
fn twists_cancel_and_residuals_vanish() {
    for (p, r) in [(3, 1), (5, 1), (3, 2), (7, 1)] {
        let d = census(p, r);
        twist_cancellation(&d.genus2).unwrap();
        twist_cancellation(&d.genus1_base).unwrap();
        twist_cancellation(&d.genus1_ext).unwrap();
    }
    let options = TraceOptions::literal().with_kappa(a2count::census::ConjugateNormalization::Doubled);
    for p in [3, 5, 7] {
        residuals_vanish(&census(p, 1), &options).unwrap();
    }
}

#[test]
fn odd_weight_is_rejected() {
    let d = census(3, 1);
    for (l, m) in [(1, 0), (2, 1), (5, 2)] {
        let r = assemble_trace(&d, l, m, &Isotype::Full, &TraceOptions::default());
        assert!(matches!(r, Err(CohomologyError::OddWeight(_))), "({l},{m})");
    }
}

#[test]
fn weil_bounds_on_a_large_sample() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    weil_sample(&[(3, 1), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)], 100_000, &mut rng).unwrap();
}
