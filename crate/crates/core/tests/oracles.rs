mod common;

use std::collections::BTreeSet;

use cqdef_core::chains::{blow_down, blow_down_by, enumerate_k, special_k, NormalForm};
use cqdef_core::lattice::{cf_eval, cf_expand};
use cqdef_core::minkowski::{enum_decompositions, lattice_point_count, segment, segment_length};
use cqdef_core::resolutions::lattice_points_right;
use cqdef_core::scalar::binomial;
use cqdef_core::{valid_models, Model, Rat};
use num_integer::gcd;
use proptest::prelude::*;

fn model(n: i64, q: i64) -> Model {
    Model::from_i64(n, q).unwrap()
}

fn coprime_pair() -> impl Strategy<Value = (i64, i64)> {
    (3i64..400).prop_flat_map(|n| (Just(n), 1..n - 1)).prop_filter("coprime", |(n, q)| gcd(*n, *q) == 1)
}

proptest! {
    #[test]
    fn cf_round_trip((n, q) in coprime_pair()) {
        let cf = cf_expand(&n, &(n - q)).unwrap();
        prop_assert!(cf.coeffs.iter().all(|&c| c >= 2));
        prop_assert_eq!(cf_eval(&cf.coeffs), Some(Rat::new(n, n - q)));
    }

    #[test]
    fn blow_down_order_is_irrelevant(
        chain in prop::collection::vec(1i64..5, 1..8),
        picks in prop::collection::vec(0usize..8, 16),
    ) {
        let reference = blow_down(&chain);
        prop_assume!(reference != NormalForm::Invalid);
        let mut it = picks.into_iter().cycle();
        let (nf, _) = blow_down_by(&chain, |ones| it.next().unwrap() % ones.len());
        prop_assert_eq!(nf, reference);
    }

    #[test]
    fn segment_length_formula((n, q) in coprime_pair()) {
        let m = model(n, q);
        for h in m.interior() {
            let seg = segment(&m, h).unwrap();
            prop_assert_eq!(seg.length(), segment_length(&m, h).unwrap());
            let shifted = seg.shifted_interval();
            prop_assert_eq!(shifted.length(), seg.length());
            if m.is_inner(h) {
                prop_assert_eq!(lattice_point_count(&m, h).unwrap(), m.a(h) - 1);
            }
        }
    }

    #[test]
    fn vandermonde(a in -20i64..20, b in -20i64..20, k in 0u32..10) {
        let lhs = binomial(&(a + b), k);
        let rhs: i64 = (0..=k).map(|j| binomial(&a, j) * binomial(&b, k - j)).sum();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn unit_width_decompositions_match_scan() {
    for (n, q) in valid_models(3..=30) {
        let m = model(n, q);
        let decomps = enum_decompositions(&m).unwrap();
        for h in m.interior() {
            let ours: BTreeSet<Vec<(Rat, Rat)>> = decomps
                .iter()
                .filter(|d| d.h == h && d.p == 1)
                .map(|d| {
                    let frac = |r: &Rat| r - r.floor();
                    let mut key = vec![
                        (frac(&d.summand0.lo), d.summand0.length()),
                        (frac(&d.summand1.lo), d.summand1.length()),
                    ];
                    key.sort();
                    key
                })
                .collect();
            let brute = common::p1_decompositions_brute(&m, h);
            assert_eq!(ours, brute, "({n},{q}) h={h}");
            assert!(!ours.is_empty() || segment_length(&m, h).unwrap() < Rat::from_integer(1));
        }
    }
}

#[test]
fn special_zero_chain_attains_the_floor() {
    let mut hits = 0;
    for (n, q) in valid_models(3..=50) {
        let m = model(n, q);
        let ks = enumerate_k(m.a_chain());
        for h in m.interior() {
            let exists = ks.iter().any(|k| k.k(h) == 1);
            match special_k(m.a_chain(), h) {
                Ok(z) => {
                    assert!(ks.contains(&z), "({n},{q}) h={h}: {z} not in K");
                    assert_eq!(z.k(h), 1);
                    let len = segment_length(&m, h).unwrap();
                    assert_eq!(len.floor().to_integer(), m.a(h) - 1, "({n},{q}) h={h}");
                    hits += 1;
                }
                Err(_) => assert!(!exists, "({n},{q}) h={h}: special chain missed"),
            }
        }
    }
    assert!(hits > 100, "{hits}");
}

#[test]
fn lattice_points_right_of_the_middle_cone() {
    let mut seen = 0;
    for (n, q) in valid_models(3..=40) {
        let m = model(n, q);
        for k in enumerate_k(m.a_chain()) {
            for h in m.interior().filter(|&h| m.is_inner(h) && k.alpha(h) == 1) {
                let got = lattice_points_right(&m, &k, h).unwrap();
                assert_eq!(got, k.alpha(h - 1) - 1, "({n},{q}) k={k} h={h}");
                seen += 1;
            }
        }
    }
    assert!(seen > 0);
}
