//! Census tallies against brute-force enumeration over all equations.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use a2count::census::*;
use a2count::error::{CensusError, FieldError};
use a2count::ffield::{build_field, is_squarefree, FieldSpec, Poly, QuadraticExtension};
use a2count::partition::Partition;

fn all_polys(field: &FieldSpec, degree: usize) -> Vec<Poly> {
    let q = field.q() as u64;
    let count = q.pow(degree as u32) * (q - 1);
    (0..count)
        .map(|mut i| {
            let mut f: Poly = (0..degree)
                .map(|_| {
                    let c = field.from_code((i % q) as u32);
                    i /= q;
                    c
                })
                .collect();
            f.push(field.from_code(1 + i as u32));
            f
        })
        .collect()
}

/// `sum a1^n1 a2^n2` over every squarefree quintic and sextic, keyed by `(nu, n1, n2)`.
fn brute_genus2(p: u32, w: u32) -> BTreeMap<(Partition, u32, u32), BigInt> {
    let field = build_field(p, 1).unwrap();
    let ext = QuadraticExtension::new(Arc::new(field.clone())).unwrap();
    let mut out = BTreeMap::new();
    for d in [5, 6] {
        for f in all_polys(&field, d) {
            if !is_squarefree(&field, &f) {
                continue;
            }
            let s = curve_stats(&ext, &f).unwrap();
            for n2 in 0..=w / 2 {
                for n1 in 0..=(w - 2 * n2) {
                    let v = BigInt::from(s.a1).pow(n1) * BigInt::from(s.a2).pow(n2);
                    *out.entry((s.nu.clone(), n1, n2)).or_insert_with(BigInt::zero) += v;
                }
            }
        }
    }
    out
}

#[test]
fn genus2_tally_matches_brute_force() {
    for p in [3, 5] {
        let w = 6;
        let tally = census_genus2(&build_field(p, 1).unwrap(), w).unwrap();
        for ((nu, n1, n2), v) in brute_genus2(p, w) {
            assert_eq!(tally.raw(&nu, n1, n2).unwrap(), &v, "q={p} nu={nu} n1={n1} n2={n2}");
        }
        for ((nu, n1, n2), v) in tally.entries() {
            if n1 % 2 == 1 {
                assert!(v.is_zero(), "odd entry {nu} {n1} {n2}");
            }
        }
    }
}

#[test]
fn genus1_tally_matches_brute_force() {
    let field = build_field(5, 1).unwrap();
    let w = 6;
    let tally = census_genus1(&field, w, Stratum::Genus1Base).unwrap();
    let mut brute: BTreeMap<(Partition, u32, u32), BigInt> = BTreeMap::new();
    let q = 5i64;
    for f in all_polys(&field, 3) {
        if !is_squarefree(&field, &f) {
            continue;
        }
        let pts = count_curve_points(&field, &f, 3).unwrap() as i64;
        let a1 = q + 1 - pts;
        let a2 = a1 * a1 - 2 * q;
        let nu = a2count::ffield::factor_degree_partition(&field, &f);
        for n2 in 0..=w / 2 {
            for n1 in 0..=(w - 2 * n2) {
                let v = BigInt::from(a1).pow(n1) * BigInt::from(a2).pow(n2);
                *brute.entry((nu.clone(), n1, n2)).or_insert_with(BigInt::zero) += v;
            }
        }
    }
    for ((nu, n1, n2), v) in brute {
        assert_eq!(tally.raw(&nu, n1, n2).unwrap(), &v, "nu={nu} n1={n1} n2={n2}");
    }
}

#[test]
fn genus2_mass_of_split_curves_over_f5() {
    let tally = census_genus2(&build_field(5, 1).unwrap(), 4).unwrap();
    let split = Partition::new(vec![1; 6]);
    // only x^5 - x and its twists split, each with a2 = 20
    assert_eq!(a_m2(&tally, &split, 0, 1).unwrap(), BigRational::new(1.into(), 6.into()));
}

#[test]
fn curve_over_f25_has_six_points() {
    let f5 = Arc::new(build_field(5, 1).unwrap());
    let ext = QuadraticExtension::new(f5.clone()).unwrap();
    let f: Poly = [0, -1, 0, 0, 0, 1].iter().map(|&c| f5.from_int(c)).collect();
    let s = curve_stats(&ext, &f).unwrap();
    // 5 affine points and one at infinity over F_25
    assert_eq!((s.a1, s.a2), (0, 20));
    assert_eq!(s.nu, Partition::new(vec![1; 6]));
}

#[test]
fn sharded_census_equals_whole() {
    let field = build_field(7, 1).unwrap();
    let whole = census_genus2(&field, 8).unwrap();
    let mut merged = census_genus2_shard(&field, 8, DESK_CENSUS_CAP, 0, 3).unwrap();
    for s in 1..3 {
        merged.merge(&census_genus2_shard(&field, 8, DESK_CENSUS_CAP, s, 3).unwrap()).unwrap();
    }
    assert_eq!(merged.entries(), whole.entries());
    assert_eq!(merged.to_json(), whole.to_json());
}

#[test]
fn merge_rejects_other_fields() {
    let mut a = census_genus2(&build_field(3, 1).unwrap(), 4).unwrap();
    let b = census_genus2(&build_field(5, 1).unwrap(), 4).unwrap();
    assert!(matches!(a.merge(&b), Err(CensusError::MergeMismatch(_))));
}

#[test]
fn tally_files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g2.json");
    let t = census_genus2(&build_field(3, 2).unwrap(), 6).unwrap();
    save_tally(&t, &path).unwrap();
    let back = load_tally(&path).unwrap();
    assert_eq!(back, t);
    assert!(matches!(load_tally_expecting(&path, Stratum::Genus1Base), Err(CensusError::StratumMismatch { .. })));
    std::fs::write(&path, "{not json").unwrap();
    assert!(matches!(load_tally(&path), Err(CensusError::CorruptFile(_))));
}

#[test]
fn caps_and_characteristic() {
    assert!(matches!(build_field(2, 1), Err(FieldError::EvenCharacteristic)));
    let f17 = build_field(17, 1).unwrap();
    assert!(matches!(census_genus2(&f17, 4), Err(CensusError::CapExceeded { q: 17, cap: 13 })));
    assert!(census_genus2_with_cap(&build_field(3, 1).unwrap(), 2, LONG_RUN_CENSUS_CAP).is_ok());
}

#[test]
fn counts_of_monic_squarefree_polynomials() {
    // every squarefree equation is a unique scalar multiple of a monic one
    for p in [3u64, 5] {
        let t = census_genus2(&build_field(p as u32, 1).unwrap(), 2).unwrap();
        let brute: u64 = [5, 6]
            .iter()
            .map(|&d| {
                let field = build_field(p as u32, 1).unwrap();
                all_polys(&field, d).iter().filter(|f| is_squarefree(&field, f)).count() as u64
            })
            .sum();
        assert_eq!(t.total_monic() * (p - 1), brute);
    }
}
