mod common;

use common::{members, naive_xy_identifies};
use idcode::bondy::{greedy_separating, greedy_separating_run, greedy_xy_identifying, BondyError};
use idcode::codecheck::unseparated_pairs;
use idcode::exact::min_xy_identifying_exact;
use idcode::{Graph, VertexSet};
use proptest::prelude::*;

/// A graph on up to 20 vertices with `X` and `Y`, where `X` is
/// `Y`-identifiable by construction: `Y` contains every vertex of `X`
/// together with all its neighbours, and the graph has no closed twins
/// inside `X`.
fn instance() -> impl Strategy<Value = (Graph, VertexSet, VertexSet)> {
    (common::any_graph(20), any::<u32>(), any::<u32>())
        .prop_map(|(g, xm, ym)| {
            let n = g.order();
            let x: VertexSet = members(u64::from(xm), n).into();
            let mut y: VertexSet = members(u64::from(ym), n).into();
            for v in x.iter() {
                y.union_with(g.nbhd(v));
            }
            (g, x, y)
        })
        .prop_filter("X must be Y-identifiable", |(g, x, y)| {
            !x.is_empty() && naive_xy_identifies(g, &x.to_vec(), &y.to_vec())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn greedy_sizes_and_validity((g, x, y) in instance()) {
        let run = greedy_separating_run(&g, &x, &y).unwrap();
        prop_assert!(run.code.len() < x.len());
        prop_assert!(run.code.is_subset(&y));
        prop_assert!(unseparated_pairs(&g, &run.code, &x).is_empty());
        prop_assert!(run.part_counts.windows(2).all(|w| w[0] < w[1]));
        prop_assert_eq!(run.part_counts.len(), run.code.len() + 1);

        let c = greedy_xy_identifying(&g, &x, &y).unwrap();
        prop_assert!(c.len() <= x.len() && c.is_subset(&y));
        prop_assert!(naive_xy_identifies(&g, &x.to_vec(), &c.to_vec()));
    }
}

#[test]
fn inseparable_pairs_are_reported() {
    let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
    let only_middle = VertexSet::singleton(1);
    assert_eq!(greedy_separating(&p3, &VertexSet::from([0, 1]), &only_middle), Err(BondyError::NotSeparable(0, 1)));
    assert_eq!(
        greedy_xy_identifying(&p3, &VertexSet::singleton(0), &VertexSet::singleton(2)),
        Err(BondyError::NotDominable(0))
    );
}

#[test]
fn greedy_is_sometimes_above_the_optimum() {
    let mut gaps = 0;
    for seed in 0..300u64 {
        let n = 6 + (seed % 8) as usize;
        let g = idcode::families::random_triangle_free(n, n + 3, seed);
        let (x, y) = (g.vertex_set(), g.vertex_set());
        let greedy = greedy_xy_identifying(&g, &x, &y).unwrap();
        let best = min_xy_identifying_exact(&g, &x, &y).unwrap();
        assert!(best.size <= greedy.len());
        gaps += usize::from(best.size < greedy.len());
    }
    println!("greedy exceeded the optimum on {gaps} of 300 instances");
    assert!(gaps > 0);
}
