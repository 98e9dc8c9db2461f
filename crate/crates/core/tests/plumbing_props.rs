mod common;

use common::{make_coprime, pairwise_coprime};
use num_rational::BigRational;
use proptest::prelude::*;
use splice_d::plumbing::{evaluate_cont_frac, gram_matrix, neg_cont_frac, plumbing_graph};
use splice_d::seifert::{normalize, SeifertData};

fn triple(max: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(2..=max, 3).prop_map(move |raw| make_coprime(&raw, max))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn plumbing_lattice_is_negative_definite_and_unimodular(a in triple(40)) {
        prop_assume!(pairwise_coprime(&a));
        let data = SeifertData::positive(&a).unwrap();
        let g = plumbing_graph(&data).unwrap();
        let l = gram_matrix(&g).unwrap();
        prop_assert!(l.is_negative_definite());
        prop_assert_eq!(l.determinant().magnitude().clone(), 1u32.into());

        // legs reproduce aⱼ/bⱼ, and the rank adds up
        let n = normalize(&data).unwrap();
        let mut rank = 1;
        for ((&aj, &bj), leg) in a.iter().zip(&n.b).zip(g.leg_framings()) {
            let ks: Vec<u64> = leg.iter().map(|&k| (-k) as u64).collect();
            prop_assert!(ks.iter().all(|&k| k >= 2));
            prop_assert_eq!(evaluate_cont_frac(&ks), BigRational::new(aj.into(), bj.into()));
            prop_assert_eq!(&ks, &neg_cont_frac(aj, bj).unwrap());
            rank += ks.len();
        }
        prop_assert_eq!(l.rank(), rank);
        prop_assert_eq!(g.framing(g.center), Some(-n.e));
    }

    #[test]
    fn expansion_evaluates_back((a, b) in (2u64..500).prop_flat_map(|a| (Just(a), 1..a))) {
        // step down to the nearest coprime numerator; b = 1 always qualifies
        let b = (1..=b).rev().find(|&b| num_integer::gcd(a, b) == 1).unwrap();
        let ks = neg_cont_frac(a, b).unwrap();
        prop_assert!(ks.iter().all(|&k| k >= 2));
        prop_assert_eq!(evaluate_cont_frac(&ks), BigRational::new(a.into(), b.into()));
    }
}
