//! Seeded generators for synthetic trees and metric cost tables.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cost::CostTable;
use crate::tree::{Label, Tree};

/// Builds a preorder [`Tree`] from a parent array in any topological order
/// (`parents[v] < v` for `v > 0`, 0-based, `parents[0]` ignored).
pub fn tree_from_parent_array(labels: &[Label], parents: &[usize]) -> Tree {
    let k = labels.len();
    let mut children = vec![Vec::new(); k];
    for v in 1..k {
        children[parents[v]].push(v);
    }
    fn build(v: usize, labels: &[Label], children: &[Vec<usize>]) -> Tree {
        Tree::node(
            labels[v].clone(),
            children[v]
                .iter()
                .map(|&c| build(c, labels, children))
                .collect(),
        )
    }
    build(0, labels, &children)
}

/// Random recursive tree with `size` nodes and labels drawn from `alphabet`.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, size: usize, alphabet: &[&str]) -> Tree {
    assert!(size > 0 && !alphabet.is_empty());
    let labels: Vec<Label> = (0..size)
        .map(|_| {
            Label::new(*alphabet.choose(rng).expect("non-empty alphabet")).expect("valid label")
        })
        .collect();
    let parents: Vec<usize> = (0..size)
        .map(|v| if v == 0 { 0 } else { rng.gen_range(0..v) })
        .collect();
    tree_from_parent_array(&labels, &parents)
}

/// Carbon skeleton of a random acyclic alkane with `carbons` atoms; each
/// node is labeled with its hydrogen count `4 - degree`.
pub fn random_alkane<R: Rng + ?Sized>(rng: &mut R, carbons: usize) -> Tree {
    assert!(carbons > 0);
    let mut parents = vec![0usize; carbons];
    let mut degree = vec![0usize; carbons];
    for v in 1..carbons {
        let open: Vec<usize> = (0..v).filter(|&u| degree[u] < 4).collect();
        let p = *open
            .choose(rng)
            .expect("a tree always has a carbon with a free valence");
        parents[v] = p;
        degree[p] += 1;
        degree[v] += 1;
    }
    let labels: Vec<Label> = degree.iter().map(|&d| Label::from(4 - d as i64)).collect();
    tree_from_parent_array(&labels, &parents)
}

/// Random metric over `alphabet` plus the gap: random symmetric positive
/// weights closed under shortest paths.
#[allow(clippy::needless_range_loop)]
pub fn random_metric_table<R: Rng + ?Sized>(rng: &mut R, alphabet: &[&str]) -> CostTable {
    let k = alphabet.len() + 1;
    let mut d = vec![vec![0.0f64; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let w = rng.gen_range(0.1..2.0);
            d[a][b] = w;
            d[b][a] = w;
        }
    }
    for via in 0..k {
        for a in 0..k {
            for b in 0..k {
                let detour = d[a][via] + d[via][b];
                if detour < d[a][b] {
                    d[a][b] = detour;
                }
            }
        }
    }
    CostTable::new(alphabet.iter().map(|s| s.to_string()).collect(), d)
        .expect("shortest-path closure is a metric")
}
