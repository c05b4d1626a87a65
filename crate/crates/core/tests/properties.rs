use proptest::prelude::*;
use uted_core::eval::synth::tree_from_parent_array;
use uted_core::{
    astar_uted_forest_entry, h1, h2, h3, mapping_valid, parse_tree, unit_costs, CostMatrix,
    HeuristicKind, Label, MappingClass, SearchOptions, Tree,
};

const TOL: f64 = 1e-9;

fn tree(max: usize) -> impl Strategy<Value = Tree> {
    (1..=max).prop_flat_map(|size| {
        let labels =
            proptest::collection::vec(prop::sample::select(vec!["a", "b", "c", "d"]), size);
        let parents = (0..size)
            .map(|v| {
                if v == 0 {
                    Just(0).boxed()
                } else {
                    (0..v).boxed()
                }
            })
            .collect::<Vec<_>>();
        (labels, parents).prop_map(|(labels, parents)| {
            let labels: Vec<Label> = labels.into_iter().map(|l| Label::new(l).unwrap()).collect();
            tree_from_parent_array(&labels, &parents)
        })
    })
}

fn subsets(x: &Tree, y: &Tree, mask_x: u32, mask_y: u32) -> (Vec<usize>, Vec<usize>) {
    let pick = |n: usize, mask: u32| (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
    (pick(x.len(), mask_x), pick(y.len(), mask_y))
}

proptest! {
    #[test]
    fn serialization_round_trips(t in tree(12)) {
        let back = parse_tree(&t.to_string()).unwrap();
        prop_assert_eq!(&back, &t);
        prop_assert_eq!(back.to_string(), t.to_string());
    }

    #[test]
    fn preorder_invariants(t in tree(12)) {
        for i in 1..=t.len() {
            prop_assert_eq!(t.subtree_end(i), i + t.subtree_size(i) - 1);
            for &c in t.children(i) {
                prop_assert_eq!(t.parent(c), Some(i));
                prop_assert!(c > i && c <= t.subtree_end(i));
                prop_assert!(t.is_ancestor(i, c));
            }
        }
        prop_assert_eq!(t.parent(1), None);
        prop_assert_eq!(t.subtree_size(1), t.len());
    }

    #[test]
    fn heuristics_are_ordered_and_symmetric(x in tree(8), y in tree(8), mx in any::<u32>(), my in any::<u32>()) {
        let costs = CostMatrix::new(&x, &y, &unit_costs()).unwrap();
        let flipped = costs.transposed();
        let (left, right) = subsets(&x, &y, mx, my);
        let bounds = [h1(&costs, &left, &right), h2(&costs, &left, &right), h3(&costs, &left, &right)];
        prop_assert!(bounds[0] >= -TOL && bounds[0] <= bounds[1] + TOL && bounds[1] <= bounds[2] + TOL, "{:?}", bounds);
        prop_assert!(bounds[2] <= left.len().max(right.len()) as f64 + TOL);
        let swapped = [h1(&flipped, &right, &left), h2(&flipped, &right, &left), h3(&flipped, &right, &left)];
        for (a, b) in bounds.iter().zip(swapped) {
            prop_assert!((a - b).abs() <= TOL, "{:?} vs {:?}", bounds, swapped);
        }
    }

    #[test]
    fn distance_is_symmetric_and_bounded(x in tree(7), y in tree(7)) {
        let c = unit_costs();
        let options = SearchOptions::new(HeuristicKind::H3);
        let xy = astar_uted_forest_entry(&x, &y, &c, &options).unwrap();
        let yx = astar_uted_forest_entry(&y, &x, &c, &options).unwrap();
        prop_assert!((xy.distance - yx.distance).abs() <= TOL);
        prop_assert!(xy.distance <= (x.len() + y.len()) as f64 + TOL);
        prop_assert!(xy.distance >= x.len().abs_diff(y.len()) as f64 - TOL);
        prop_assert!(mapping_valid(&x, &y, &xy.mapping, MappingClass::Unordered));
        prop_assert_eq!(astar_uted_forest_entry(&x, &x, &c, &options).unwrap().distance, 0.0);
    }
}
