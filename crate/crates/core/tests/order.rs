mod common;

use std::collections::HashSet;

use ltree_intermezzo::intermezzo::induced_order;
use ltree_intermezzo::order::{
    chain_partition, check_partial_order, close_relation, hasse, height, is_cs_tree, width, PartialOrder, Relation,
};
use ltree_intermezzo::reductions::{mcp_to_gim, MulticolorGraph};
use proptest::prelude::*;

fn pair_set(rel: &Relation) -> HashSet<(usize, usize)> {
    rel.pairs().collect()
}

/// Strongly connected components by mutual reachability, computed from the
/// naive closure.
fn in_one_component(n: usize, pairs: &HashSet<(usize, usize)>, members: &[usize]) -> bool {
    let closed = common::naive_closure(n, pairs);
    members.iter().all(|&a| members.iter().all(|&b| closed.contains(&(a, b))))
}

fn upward_pairs() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=9).prop_flat_map(|n| {
        let pairs = proptest::collection::vec((0..n, 0..n), 0..=2 * n);
        (Just(n), pairs.prop_map(|ps| ps.into_iter().filter(|(a, b)| a < b).collect()))
    })
}

fn any_pairs() -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (1usize..=8).prop_flat_map(|n| (Just(n), proptest::collection::vec((0..n, 0..n), 0..=2 * n)))
}

#[test]
fn closure_of_a_two_step_chain() {
    let rel = Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
    let closed = pair_set(&close_relation(&rel));
    let expected: HashSet<_> = [(0, 1), (1, 2), (0, 2), (0, 0), (1, 1), (2, 2)].into_iter().collect();
    assert_eq!(closed, expected);
}

#[test]
fn closure_of_the_empty_relation_is_reflexive() {
    let closed = close_relation(&Relation::new(1));
    assert_eq!(pair_set(&closed), [(0, 0)].into_iter().collect());
}

#[test]
fn partial_order_checks() {
    let ok = close_relation(&Relation::from_pairs(3, [(0, 1), (1, 2)]).unwrap());
    assert!(check_partial_order(&ok).is_ok());

    let two = close_relation(&Relation::from_pairs(2, [(0, 1), (1, 0)]).unwrap());
    let mut cyc = check_partial_order(&two).unwrap_err();
    cyc.sort();
    assert_eq!(cyc, vec![0, 1]);

    let three = close_relation(&Relation::from_pairs(3, [(0, 1), (1, 2), (2, 0)]).unwrap());
    let mut cyc = check_partial_order(&three).unwrap_err();
    cyc.sort();
    assert_eq!(cyc, vec![0, 1, 2]);
}

#[test]
fn hasse_of_total_and_trivial_orders() {
    assert_eq!(hasse(&PartialOrder::total(3)).cover_edges(), &[(0, 1), (1, 2)]);
    assert!(hasse(&PartialOrder::trivial(3)).cover_edges().is_empty());
}

#[test]
fn hasse_of_the_smallest_clique_instance_is_a_tree() {
    let g = MulticolorGraph::new(2, 1);
    let (inst, _) = mcp_to_gim(&g, false);
    let order = induced_order(&inst).unwrap();
    let diagram = hasse(&order);
    assert_eq!(diagram.cover_edges().len(), order.len() - 1);
    let minimal = order.minimal_elements();
    assert_eq!(minimal.len(), 1);
    assert_eq!(inst.name(minimal[0]), "s.1");
    assert!(is_cs_tree(&order));

    // Independent transitive reduction: strict pairs with no middle element.
    let n = order.len();
    let oracle: HashSet<(usize, usize)> =
        order.strict_pairs().filter(|&(a, b)| !(0..n).any(|m| order.less(a, m) && order.less(m, b))).collect();
    assert_eq!(diagram.cover_edges().iter().copied().collect::<HashSet<_>>(), oracle);
}

#[test]
fn heights_and_chain_counts_of_extremes() {
    assert_eq!(height(&PartialOrder::trivial(5)), 1);
    assert_eq!(height(&PartialOrder::total(7)), 7);
    let anti = chain_partition(&PartialOrder::trivial(4));
    assert_eq!(anti.len(), 4);
    assert!(anti.chains().iter().all(|c| c.len() == 1));
    assert_eq!(chain_partition(&PartialOrder::total(6)).len(), 1);
}

#[test]
fn clique_instance_has_one_more_chain_than_colors() {
    for (k, q) in [(2, 1), (2, 3), (3, 2), (4, 1)] {
        let (inst, _) = mcp_to_gim(&MulticolorGraph::new(k, q), false);
        let order = induced_order(&inst).unwrap();
        assert_eq!(chain_partition(&order).len(), k + 1, "k={k} q={q}");
        assert_eq!(width(&order), k + 1);
    }
}

#[test]
fn cs_tree_examples() {
    assert!(is_cs_tree(&PartialOrder::total(4)));
    assert!(!is_cs_tree(&PartialOrder::trivial(2)));
    // A diamond has one minimum but a cycle in its diagram.
    let diamond = PartialOrder::from_pairs(4, [(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    assert!(!is_cs_tree(&diamond));
}

#[test]
fn eight_element_closure_matches_warshall() {
    let rel = Relation::from_pairs(8, [(0, 3), (3, 5), (5, 1), (1, 7), (2, 6), (6, 2), (4, 4), (7, 0)]).unwrap();
    let oracle = common::naive_closure(8, &pair_set(&rel));
    assert_eq!(pair_set(&close_relation(&rel)), oracle);
}

proptest! {
    #[test]
    fn closure_matches_naive_composition((n, pairs) in any_pairs()) {
        let rel = Relation::from_pairs(n, pairs.iter().copied()).unwrap();
        let oracle = common::naive_closure(n, &pairs.iter().copied().collect());
        prop_assert_eq!(pair_set(&close_relation(&rel)), oracle);
    }

    #[test]
    fn closure_is_idempotent_and_monotone((n, pairs) in any_pairs(), extra in (0usize..8, 0usize..8)) {
        let rel = Relation::from_pairs(n, pairs.iter().copied()).unwrap();
        let once = close_relation(&rel);
        prop_assert_eq!(pair_set(&close_relation(&once)), pair_set(&once));
        let mut bigger = rel.clone();
        bigger.insert(extra.0 % n, extra.1 % n).unwrap();
        prop_assert!(pair_set(&once).is_subset(&pair_set(&close_relation(&bigger))));
    }

    #[test]
    fn cycles_are_reported_iff_present((n, pairs) in any_pairs()) {
        let closed = close_relation(&Relation::from_pairs(n, pairs.iter().copied()).unwrap());
        let set: HashSet<_> = pairs.iter().copied().collect();
        let naive = common::naive_closure(n, &set);
        let cyclic = naive.iter().any(|&(a, b)| a != b && naive.contains(&(b, a)));
        match check_partial_order(&closed) {
            Ok(()) => prop_assert!(!cyclic),
            Err(cyc) => {
                prop_assert!(cyc.len() >= 2);
                prop_assert!(in_one_component(n, &set, &cyc));
            }
        }
    }

    #[test]
    fn hasse_closure_round_trips((n, pairs) in upward_pairs()) {
        let order = PartialOrder::from_pairs(n, pairs).unwrap();
        let diagram = hasse(&order);
        let rebuilt = PartialOrder::from_pairs(n, diagram.cover_edges().iter().copied()).unwrap();
        prop_assert_eq!(&rebuilt, &order);
        for &(a, b) in diagram.cover_edges() {
            prop_assert!(!(0..n).any(|m| order.less(a, m) && order.less(m, b)));
        }
    }

    #[test]
    fn chain_partition_is_minimum((n, pairs) in upward_pairs()) {
        let order = PartialOrder::from_pairs(n, pairs).unwrap();
        let chains = chain_partition(&order);
        prop_assert!(chains.is_valid_for(&order));
        prop_assert_eq!(chains.len(), common::max_antichain(&order));
        prop_assert_eq!(chains.chain_lengths().iter().sum::<usize>(), n);
    }

    #[test]
    fn height_is_the_longest_chain((n, pairs) in upward_pairs()) {
        let order = PartialOrder::from_pairs(n, pairs).unwrap();
        prop_assert_eq!(height(&order), common::longest_chain(&order));
    }

    #[test]
    fn linear_extensions_respect_the_order((n, pairs) in upward_pairs()) {
        let order = PartialOrder::from_pairs(n, pairs).unwrap();
        let ext = order.linear_extension();
        prop_assert!(order.is_linear_extension(&ext));
    }

    #[test]
    fn cs_tree_flag_matches_definition((n, pairs) in upward_pairs()) {
        let order = PartialOrder::from_pairs(n, pairs).unwrap();
        let diagram = hasse(&order);
        let one_min = order.minimal_elements().len() == 1;
        // A connected graph with n - 1 edges is a tree; with one minimum
        // every element is reachable from it, so the diagram is connected.
        let expected = one_min && diagram.cover_edges().len() == n - 1;
        prop_assert_eq!(is_cs_tree(&order), expected);
    }
}
