mod common;

use common::{naive_identifies, permutation, triangle_free};
use idcode::constructor::{
    bound_check, certified_bound, construct_near_triangle_free, construct_triangle_free, Certificate, ConstructError,
    ConstructOptions, MAX_BRUTE_FORCE_T,
};
use idcode::enumerate::connected_triangle_free;
use idcode::exact::gamma_id_exact;
use idcode::families::{in_f_delta, planted_triangles};
use proptest::prelude::*;

#[test]
fn exhaustive_bound_with_exact_sandwich() {
    let opts = ConstructOptions::default();
    for n in 4..=7 {
        for g in connected_triangle_free(n) {
            let cert = construct_triangle_free(&g, &opts).unwrap_or_else(|e| panic!("{:?}: {e}", g.edges()));
            assert!(naive_identifies(&g, &cert.code.to_vec()));
            assert!(gamma_id_exact(&g, None).unwrap().size <= cert.code.len());
            if g.max_degree() >= 3 {
                let extra = i64::from(in_f_delta(&g, g.max_degree()).is_some());
                assert!(bound_check(&g, &cert.code, extra).holds, "{:?}", g.edges());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn certificates_hold_on_random_graphs(g in triangle_free(3, 40)) {
        let cert = construct_triangle_free(&g, &ConstructOptions::default()).unwrap();
        prop_assert!(naive_identifies(&g, &cert.code.to_vec()));
        prop_assert_eq!((cert.bound_num, cert.bound_den, cert.family), certified_bound(&g));
        prop_assert!(cert.bound_den * cert.code.len() as u64 <= cert.bound_num);
        prop_assert_eq!(cert.n, g.order());
        prop_assert!(!cert.trace.is_empty());
    }

    #[test]
    fn construction_is_replayable(g in triangle_free(3, 30)) {
        let opts = ConstructOptions::default();
        let a = construct_triangle_free(&g, &opts).unwrap().to_toml();
        let b = construct_triangle_free(&g, &opts).unwrap().to_toml();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(Certificate::from_toml(&a).unwrap().to_toml(), a);
    }

    #[test]
    fn relabelled_inputs_also_meet_the_bound(g in triangle_free(4, 24), seed in any::<u64>()) {
        let h = g.relabel(&permutation(g.order(), seed));
        let cert = construct_triangle_free(&h, &ConstructOptions::default()).unwrap();
        prop_assert!(naive_identifies(&h, &cert.code.to_vec()));
        prop_assert!(cert.bound_met());
    }

    #[test]
    fn small_fallback_thresholds_still_certify(g in triangle_free(4, 24), threshold in 0usize..8) {
        let opts = ConstructOptions { fallback_threshold: threshold, ..ConstructOptions::default() };
        let cert = construct_triangle_free(&g, &opts).unwrap();
        prop_assert!(naive_identifies(&g, &cert.code.to_vec()) && cert.bound_met());
    }

    #[test]
    fn planted_triangles_meet_the_corollary_bound(n in 6usize..=14, extra in 0usize..=14, t in 1usize..=3, seed in any::<u64>()) {
        let (g, planted) = planted_triangles(n, n - 1 + extra, t, seed);
        prop_assume!(g.max_degree() >= 3 && g.is_identifiable());
        for given in [Some(planted.as_slice()), None] {
            let cert = construct_near_triangle_free(&g, given, &ConstructOptions::default()).unwrap();
            let td = cert.triangle_deletion.as_ref().unwrap();
            let d = g.max_degree() as i64;
            prop_assert!(naive_identifies(&g, &cert.code.to_vec()));
            prop_assert!(bound_check(&g, &cert.code, 4 * td.t as i64 * d + 1).holds);
            prop_assert!(td.damage.iter().all(|&k| k <= 4));
            prop_assert_eq!(td.damage.len(), td.t);
            prop_assert!(td.unseparated.len() <= 4 * td.t);
            prop_assert!(td.patch.len() <= td.unseparated.len());
            if td.t <= MAX_BRUTE_FORCE_T {
                prop_assert!(td.t_min.unwrap() <= td.t);
            }
            let gt = g.without_edges(&td.edges).unwrap();
            prop_assert!(gt.is_triangle_free() && gt.is_connected());
        }
    }
}

#[test]
fn triangles_are_rejected_by_the_plain_constructor() {
    let (g, _) = planted_triangles(10, 12, 1, 4);
    assert!(matches!(
        construct_triangle_free(&g, &ConstructOptions::default()),
        Err(ConstructError::NotTriangleFree(..))
    ));
}
