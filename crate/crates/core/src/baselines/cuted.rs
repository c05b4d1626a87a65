//! Constrained unordered tree edit distance (Zhang 1996).
//!
//! Tree-to-tree and forest-to-forest distances are tabulated bottom-up over
//! all node pairs. Matching two children forests against each other is a
//! min-cost assignment with deletion and insertion of whole subtrees.

use super::BaselineError;
use crate::assignment::{AssignmentProblem, LsapSolver};
use crate::cost::{CostFunction, CostMatrix};
use crate::tree::Tree;

pub fn cuted_constrained<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
) -> Result<f64, BaselineError> {
    if x.is_empty() || y.is_empty() {
        return Err(BaselineError::EmptyTree);
    }
    Ok(cuted_constrained_costs(x, y, &CostMatrix::new(x, y, c)?))
}

pub fn cuted_constrained_costs(x: &Tree, y: &Tree, costs: &CostMatrix) -> f64 {
    let (m, n) = (x.len(), y.len());
    // Cost of deleting / inserting whole subtrees and children forests.
    let mut del_tree = vec![0.0; m + 1];
    for i in (1..=m).rev() {
        del_tree[i] = costs.deletion(i) + x.children(i).iter().map(|&c| del_tree[c]).sum::<f64>();
    }
    let mut ins_tree = vec![0.0; n + 1];
    for j in (1..=n).rev() {
        ins_tree[j] = costs.insertion(j) + y.children(j).iter().map(|&c| ins_tree[c]).sum::<f64>();
    }
    let del_forest = |i: usize| del_tree[i] - costs.deletion(i);
    let ins_forest = |j: usize| ins_tree[j] - costs.insertion(j);

    let at = |i: usize, j: usize| i * (n + 1) + j;
    let mut tree = vec![0.0; (m + 1) * (n + 1)];
    let mut forest = vec![0.0; (m + 1) * (n + 1)];
    let mut solver = LsapSolver::default();

    for i in (1..=m).rev() {
        let xs = x.children(i);
        for j in (1..=n).rev() {
            let ys = y.children(j);

            let f = if xs.is_empty() {
                ins_forest(j)
            } else if ys.is_empty() {
                del_forest(i)
            } else {
                // The whole forest of i goes below one child of j (which is inserted) ...
                let into_child = ins_forest(j)
                    + ys.iter()
                        .map(|&t| forest[at(i, t)] - ins_forest(t))
                        .fold(f64::INFINITY, f64::min);
                // ... or the forest of j goes below one child of i ...
                let from_child = del_forest(i)
                    + xs.iter()
                        .map(|&s| forest[at(s, j)] - del_forest(s))
                        .fold(f64::INFINITY, f64::min);
                // ... or the children subtrees are matched one-to-one.
                let sub = xs
                    .iter()
                    .flat_map(|&s| ys.iter().map(move |&t| (s, t)))
                    .map(|(s, t)| tree[at(s, t)])
                    .collect();
                let problem = AssignmentProblem::from_flat(
                    sub,
                    xs.iter().map(|&s| del_tree[s]).collect(),
                    ys.iter().map(|&t| ins_tree[t]).collect(),
                );
                into_child.min(from_child).min(solver.solve(&problem).cost)
            };
            forest[at(i, j)] = f;

            let mut t = f + costs.get(i, j);
            for &c in ys {
                t = t.min(ins_tree[j] + tree[at(i, c)] - ins_tree[c]);
            }
            for &c in xs {
                t = t.min(del_tree[i] + tree[at(c, j)] - del_tree[c]);
            }
            tree[at(i, j)] = t;
        }
    }
    tree[at(1, 1)]
}
