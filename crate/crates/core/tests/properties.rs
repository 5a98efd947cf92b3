use cliquemdl::{greedy_cliques, pair_count, parse_edge_list, Graph, NullModel};
use proptest::prelude::*;

fn arb_graph() -> impl Strategy<Value = Graph> {
    (0usize..40, 0.0f64..1.0, any::<u64>()).prop_map(|(n, p, seed)| {
        let p = p.clamp(0.01, 0.99);
        NullModel::gnp(p).unwrap().sample(n, None, seed).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn edge_list_round_trip(g in arb_graph()) {
        let text = g.to_edge_list();
        prop_assert_eq!(parse_edge_list(&text).unwrap(), g);
    }

    #[test]
    fn clique_removal_round_trip(g in arb_graph(), seed in any::<u64>()) {
        for clique in greedy_cliques(&g, 3, seed) {
            let remainder = g.remove_clique_edges(&clique).unwrap();
            prop_assert_eq!(remainder.n(), g.n());
            prop_assert_eq!(remainder.m() as u64, g.m() as u64 - pair_count(clique.len()));
            prop_assert_eq!(remainder.add_clique_edges(&clique).unwrap(), g.clone());
        }
    }

    #[test]
    fn unsorted_and_doubled_edges_parse_to_the_same_graph(g in arb_graph()) {
        let mut text = String::new();
        for &(u, v) in g.edges().iter().rev() {
            text.push_str(&format!("{v} {u}\n{u} {v}\n"));
        }
        let parsed = parse_edge_list(&format!("n {}\n{text}", g.n())).unwrap();
        prop_assert_eq!(parsed, g);
    }
}
