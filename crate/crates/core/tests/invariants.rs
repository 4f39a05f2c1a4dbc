//! Property tests over small random codes. Every optimized search is compared
//! with the brute-force oracle, and the structural normal forms are checked
//! against their defining identities.

use convinv_core::distances::{
    column_distance, gen_column_distance, gen_column_distance_profile, ghw, stabilization_bound,
    Budget,
};
use convinv_core::maps::{check_equivalence, check_isometry, check_strong_isometry, CodeMap};
use convinv_core::structure::popov::is_row_reduced;
use convinv_core::structure::smith::maximal_minors;
use convinv_core::{oracle, ConvCode, Field, PolyVector, Polynomial};
use num_bigint::BigUint;
use proptest::prelude::*;

fn small_code() -> impl Strategy<Value = Option<ConvCode>> {
    (
        prop_oneof![Just(2u32), Just(3u32)],
        1usize..=3,
        1usize..=2,
        0usize..=2,
    )
        .prop_flat_map(|(p, n, k, deg)| {
            let k = k.min(n);
            let coeff = proptest::collection::vec(0..p, deg + 1);
            let row = proptest::collection::vec(coeff, n);
            (Just(p), proptest::collection::vec(row, k))
        })
        .prop_map(|(p, rows)| ConvCode::from_coeffs(Field::prime(p).unwrap(), rows).ok())
}

fn budget() -> Budget {
    Budget {
        oracle: 200_000,
        ..Budget::default()
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn basis_is_transform_of_generator(code in small_code()) {
        let Some(code) = code else { return Ok(()) };
        let field = code.field();
        let gen = code.generator().rows();
        for (u, b) in code.transform().iter().zip(code.basis()) {
            let coeffs: Vec<Polynomial> = u.entries().to_vec();
            prop_assert_eq!(&PolyVector::combine(field, &coeffs, gen, code.n()), b);
        }
        prop_assert!(is_row_reduced(field, code.basis()));
        let degs: Vec<usize> = code.basis().iter().map(|b| b.degree().unwrap()).collect();
        prop_assert!(degs.windows(2).all(|w| w[0] >= w[1]));
        prop_assert_eq!(code.delta(), degs.iter().sum::<usize>());
    }

    #[test]
    fn invariant_factors_match_minors(code in small_code()) {
        let Some(code) = code else { return Ok(()) };
        let field = code.field();
        // A row-reduced basis has a maximal minor of degree delta.
        let (gcd, max_degree) = maximal_minors(field, code.basis());
        prop_assert_eq!(max_degree, Some(code.delta()));
        let product = code
            .invariant_factors()
            .iter()
            .fold(Polynomial::one(), |acc, f| acc.mul(field, f));
        prop_assert_eq!(product.monic(field), gcd.monic(field));
        prop_assert_eq!(code.is_noncatastrophic(), gcd.degree() == Some(0));
    }

    #[test]
    fn reverse_is_an_involution(code in small_code()) {
        // <(x)> reverses to <(1)>, so only delay-free codes come back.
        let Some(code) = code.filter(ConvCode::is_noncatastrophic) else { return Ok(()) };
        let back = code.reverse().unwrap().reverse().unwrap();
        prop_assert!(back.same_module(&code));
    }

    #[test]
    fn searches_agree_with_oracle(code in small_code()) {
        let Some(code) = code else { return Ok(()) };
        let b = budget();
        for j in 0..=1 {
            let col = column_distance(&code, j, &b).unwrap().value;
            prop_assert_eq!(col, oracle::naive_column_distance(&code, j, &b).unwrap());
            for r in 1..=code.k() {
                let fast = gen_column_distance(&code, r, j, &b).unwrap().value;
                prop_assert_eq!(fast, oracle::naive_gen_column_distance(&code, r, j, &b).unwrap());
                if r == 1 {
                    prop_assert_eq!(fast, col);
                }
            }
        }
        let block = code.evaluate_at_zero();
        for r in 1..=block.dim() {
            prop_assert_eq!(ghw(&block, r, &b).unwrap().value, oracle::naive_ghw(&block, r, &b).unwrap());
        }
    }

    #[test]
    fn profile_stabilizes_within_bound(code in small_code()) {
        let Some(code) = code else { return Ok(()) };
        let b = budget();
        for r in 1..=code.k() {
            let p = gen_column_distance_profile(&code, r, &b).unwrap();
            let bound = stabilization_bound(&code, r).unwrap();
            prop_assert!(p.is_monotone());
            prop_assert!(p.limit.value <= code.n() * (code.delta1() + 1));
            if let Some(idx) = p.stabilization_index() {
                prop_assert!(BigUint::from(idx) <= bound.sharp);
            }
        }
    }

    #[test]
    fn identity_map_is_strong_isometry(code in small_code()) {
        let Some(code) = code else { return Ok(()) };
        let b = budget();
        let map = CodeMap::identity(&code);
        prop_assert!(check_equivalence(&map, &b).unwrap().holds);
        prop_assert!(check_isometry(&map, &b).unwrap().holds);
        prop_assert!(check_strong_isometry(&map, code.delta1() + 1, &b).unwrap().holds);
    }
}
