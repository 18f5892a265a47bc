mod common;

use common::{members, naive_gamma, naive_xy_identifies};
use idcode::enumerate::for_each_labelled;
use idcode::exact::{gamma_id_exact, min_xy_identifying_exact, solve, ExactError, SearchOptions};
use idcode::families::{make_standard, StandardGraph};
use idcode::VertexSet;
use proptest::prelude::*;

#[test]
fn agrees_with_subset_enumeration_up_to_six_vertices() {
    let mut checked = 0;
    for n in 1..=6 {
        for_each_labelled(n, |g| match naive_gamma(g) {
            Some(want) => {
                let r = gamma_id_exact(g, None).unwrap();
                assert_eq!(r.size, want, "{:?}", g.edges());
                assert_eq!(r.code.len(), want);
                assert!(naive_xy_identifies(g, &(0..n).collect::<Vec<_>>(), &r.code.to_vec()));
                checked += 1;
            }
            None => assert!(matches!(gamma_id_exact(g, None), Err(ExactError::NotIdentifiable(..)))),
        });
    }
    assert!(checked > 20_000);
}

#[test]
fn complete_bipartite_witnesses() {
    for (d, want) in [(3, 4), (4, 6), (5, 8)] {
        let g = make_standard(StandardGraph::CompleteBipartite(d, d));
        assert_eq!(gamma_id_exact(&g, None).unwrap().size, want, "K{d},{d}");
    }
}

fn xy_instance() -> impl Strategy<Value = (idcode::Graph, VertexSet, VertexSet)> {
    (common::any_graph(11), any::<u16>(), any::<u16>()).prop_map(|(g, xm, ym)| {
        let n = g.order();
        (g, members(u64::from(xm), n).into(), members(u64::from(ym) | 1, n).into())
    })
}

proptest! {
    #[test]
    fn xy_optimum_is_at_most_x((g, x, y) in xy_instance()) {
        match min_xy_identifying_exact(&g, &x, &y) {
            Ok(r) => {
                prop_assert!(r.size <= x.len());
                prop_assert!(r.code.is_subset(&y));
                prop_assert!(naive_xy_identifies(&g, &x.to_vec(), &r.code.to_vec()));
                // No smaller subset of Y works.
                let ys = y.to_vec();
                for mask in 0u64..1 << ys.len() {
                    if (mask.count_ones() as usize) < r.size {
                        let c: Vec<usize> = members(mask, ys.len()).into_iter().map(|i| ys[i]).collect();
                        prop_assert!(!naive_xy_identifies(&g, &x.to_vec(), &c));
                    }
                }
            }
            Err(ExactError::NotIdentifiable(..)) if x == g.vertex_set() && y == g.vertex_set() => {
                prop_assert!(g.find_closed_twins().is_some());
            }
            Err(ExactError::NotYIdentifiable(_)) => {
                let ys = y.to_vec();
                prop_assert!(!naive_xy_identifies(&g, &x.to_vec(), &ys));
            }
            Err(e) => prop_assert!(false, "unexpected {e}"),
        }
    }

    #[test]
    fn forced_vertices_cost_at_most_themselves(g in common::triangle_free(3, 12), f in any::<u16>()) {
        let all = g.vertex_set();
        let forced: VertexSet = members(u64::from(f), g.order()).into();
        let free = gamma_id_exact(&g, None).unwrap();
        let opts = SearchOptions { forced: forced.clone(), ..SearchOptions::default() };
        let r = solve(&g, &all, &all, &opts).unwrap();
        prop_assert!(forced.is_subset(&r.code));
        prop_assert!(free.size <= r.size && r.size <= free.size + forced.len());
    }
}
