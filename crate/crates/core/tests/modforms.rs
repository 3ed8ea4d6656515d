//! Elliptic newforms against tabulated q-expansions.

use num_bigint::BigInt;

use a2count::error::ModformError;
use a2count::modforms::spaces::{
    dim_sign, full_trace_with, new_trace_with, prime_power, sign_trace, sign_trace_with, TraceRule,
};
use a2count::modforms::{cusp_basis, dim_cusp, dim_new, eta_quotient, hecke_eigen, new_trace};

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn single(level: u32, weight: u32) -> a2count::modforms::NewformSystem {
    let mut f = hecke_eigen(level, weight, 13).unwrap();
    assert_eq!(f.len(), 1, "level {level} weight {weight}");
    f.remove(0)
}

#[test]
fn tabulated_expansions() {
    let delta = single(1, 12);
    assert_eq!(delta.coefficients[1..8].to_vec(), ints(&[1, -24, 252, -1472, 4830, -6048, -16744]));
    let f28 = single(2, 8);
    assert_eq!(f28.coefficients[1..8].to_vec(), ints(&[1, -8, 12, 64, -210, -96, 1016]));
    assert_eq!(f28.w2, Some(1));
    let f46 = single(4, 6);
    assert_eq!(f46.coefficients[1..10].to_vec(), ints(&[1, 0, -12, 0, 54, 0, -88, 0, -99]));
    let f210 = single(2, 10);
    assert_eq!((f210.ap[&2].clone(), f210.ap[&3].clone(), f210.w2), (BigInt::from(16), BigInt::from(-156), Some(-1)));
    assert_eq!(single(4, 10).ap[&3], BigInt::from(228));
}

#[test]
fn eta_product_is_the_level_four_form() {
    let eta = eta_quotient(&[(2, 12)], 12).unwrap();
    let f46 = single(4, 6);
    for n in 0..12 {
        assert_eq!(eta.coeff(n), f46.a(n), "n = {n}");
    }
}

#[test]
fn dimensions() {
    assert_eq!(dim_cusp(1, 12).unwrap(), 1);
    assert_eq!(dim_cusp(1, 14).unwrap(), 0);
    assert_eq!(dim_new(2, 8).unwrap(), 1);
    assert_eq!(dim_new(4, 6).unwrap(), 1);
    assert_eq!((dim_sign(8, 1).unwrap(), dim_sign(8, -1).unwrap()), (1, 0));
    assert_eq!((dim_sign(10, 1).unwrap(), dim_sign(10, -1).unwrap()), (0, 1));
    for k in (2..=16).step_by(2) {
        assert_eq!(cusp_basis(4, k, 40).unwrap().len(), dim_cusp(4, k).unwrap());
    }
}

#[test]
fn traces_at_prime_powers() {
    // tau(3)^2 - 2 * 3^11 against tau(9) = tau(3)^2 - 3^11
    assert_eq!(full_trace_with(1, 12, 9, TraceRule::Frobenius).unwrap(), BigInt::from(-290790));
    assert_eq!(full_trace_with(1, 12, 9, TraceRule::HeckeEigenvalue).unwrap(), BigInt::from(-113643));
    assert_eq!(new_trace_with(4, 6, 9, TraceRule::HeckeEigenvalue).unwrap(), BigInt::from(-99));
    assert_eq!(new_trace_with(4, 6, 9, TraceRule::Frobenius).unwrap(), BigInt::from(-342));
    assert_eq!(new_trace(2, 8, 3).unwrap(), BigInt::from(12));
    assert_eq!(sign_trace(10, -1, 3).unwrap(), BigInt::from(-156));
    assert_eq!(sign_trace(10, 1, 3).unwrap(), BigInt::from(0));
    assert_eq!(sign_trace_with(8, 1, 9, TraceRule::HeckeEigenvalue).unwrap(), BigInt::from(144 - 2187));
}

#[test]
fn errors() {
    assert!(matches!(prime_power(15), Err(ModformError::NotPrimePower(15))));
    assert_eq!(prime_power(27).unwrap(), (3, 3));
    assert!(matches!(dim_cusp(3, 12), Err(ModformError::UnsupportedLevel(3))));
    assert!(matches!(dim_cusp(1, 11), Err(ModformError::OddWeight(11))));
    assert!(matches!(hecke_eigen(1, 24, 5), Err(ModformError::IrrationalEigenvalue { level: 1, weight: 24 })));
    assert!(full_trace_with(2, 8, 4, TraceRule::Frobenius).is_err());
}
