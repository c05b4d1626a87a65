//! Ordered tree edit distance, Zhang & Shasha keyroot decomposition.

use super::BaselineError;
use crate::cost::{CostFunction, CostMatrix};
use crate::tree::Tree;

/// Postorder view of a tree: 1-based postorder positions.
struct PostOrder {
    /// Preorder index of the node at each postorder position.
    node: Vec<usize>,
    /// Postorder position of the leftmost leaf below each position.
    leftmost: Vec<usize>,
    keyroots: Vec<usize>,
}

impl PostOrder {
    fn new(t: &Tree) -> Self {
        let m = t.len();
        let mut node = vec![0; m + 1];
        let mut position = vec![0; m + 1];
        let mut next = 1;
        // (node, index of next child to visit)
        let mut stack = vec![(1usize, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, c) = *top;
            if let Some(&child) = t.children(v).get(c) {
                top.1 += 1;
                stack.push((child, 0));
            } else {
                stack.pop();
                node[next] = v;
                position[v] = next;
                next += 1;
            }
        }
        let mut leftmost = vec![0; m + 1];
        for p in 1..=m {
            let mut v = node[p];
            while let Some(&first) = t.children(v).first() {
                v = first;
            }
            leftmost[p] = position[v];
        }
        // A keyroot is the highest node for its leftmost leaf.
        let mut highest = vec![0; m + 1];
        for p in 1..=m {
            highest[leftmost[p]] = p;
        }
        let mut keyroots: Vec<usize> = highest.into_iter().filter(|&p| p > 0).collect();
        keyroots.sort_unstable();
        PostOrder {
            node,
            leftmost,
            keyroots,
        }
    }
}

pub fn ted_ordered<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
) -> Result<f64, BaselineError> {
    if x.is_empty() || y.is_empty() {
        return Err(BaselineError::EmptyTree);
    }
    Ok(ted_ordered_costs(x, y, &CostMatrix::new(x, y, c)?))
}

/// `O(m^2 n^2)` worst case time, `O(m n)` memory.
pub fn ted_ordered_costs(x: &Tree, y: &Tree, costs: &CostMatrix) -> f64 {
    let (a, b) = (PostOrder::new(x), PostOrder::new(y));
    let (m, n) = (x.len(), y.len());
    let del = |p: usize| costs.deletion(a.node[p]);
    let ins = |q: usize| costs.insertion(b.node[q]);
    let sub = |p: usize, q: usize| costs.get(a.node[p], b.node[q]);

    let mut tree_dist = vec![0.0; (m + 1) * (n + 1)];
    let mut forest = vec![0.0; (m + 1) * (n + 1)];
    for &ki in &a.keyroots {
        for &kj in &b.keyroots {
            let (li, lj) = (a.leftmost[ki], b.leftmost[kj]);
            let (rows, cols) = (ki - li + 2, kj - lj + 2);
            let at = |r: usize, c: usize| r * cols + c;
            forest[at(0, 0)] = 0.0;
            for r in 1..rows {
                forest[at(r, 0)] = forest[at(r - 1, 0)] + del(li + r - 1);
            }
            for c in 1..cols {
                forest[at(0, c)] = forest[at(0, c - 1)] + ins(lj + c - 1);
            }
            for r in 1..rows {
                let p = li + r - 1;
                for c in 1..cols {
                    let q = lj + c - 1;
                    let edit = (forest[at(r - 1, c)] + del(p)).min(forest[at(r, c - 1)] + ins(q));
                    let value = if a.leftmost[p] == li && b.leftmost[q] == lj {
                        let v = edit.min(forest[at(r - 1, c - 1)] + sub(p, q));
                        tree_dist[p * (n + 1) + q] = v;
                        v
                    } else {
                        let (pr, qc) = (a.leftmost[p] - li, b.leftmost[q] - lj);
                        edit.min(forest[at(pr, qc)] + tree_dist[p * (n + 1) + q])
                    };
                    forest[at(r, c)] = value;
                }
            }
        }
    }
    tree_dist[m * (n + 1) + n]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::unit_costs;
    use crate::tree::parse_tree;

    fn d(a: &str, b: &str) -> f64 {
        ted_ordered(
            &parse_tree(a).unwrap(),
            &parse_tree(b).unwrap(),
            &unit_costs(),
        )
        .unwrap()
    }

    #[test]
    fn reference() {
        assert_eq!(d("a(b(c,d),e)", "a(e,d,c)"), 3.0);
    }

    #[test]
    fn basics() {
        assert_eq!(d("a(b(c,d),e)", "a(b(c,d),e)"), 0.0);
        assert_eq!(d("a", "b"), 1.0);
        assert_eq!(d("a", "b(a)"), 1.0);
        // classic Zhang-Shasha example: f(d(a,c(b)),e) vs f(c(d(a,b)),e)
        assert_eq!(d("f(d(a,c(b)),e)", "f(c(d(a,b)),e)"), 2.0);
        // sibling order matters
        assert_eq!(d("a(b,c)", "a(c,b)"), 2.0);
    }

    #[test]
    fn keyroots() {
        let t = parse_tree("a(b(c,d),e)").unwrap();
        let po = PostOrder::new(&t);
        // postorder: c d b e a
        assert_eq!(po.node[1..].to_vec(), vec![3, 4, 2, 5, 1]);
        assert_eq!(po.leftmost[1..].to_vec(), vec![1, 2, 1, 4, 1]);
        assert_eq!(po.keyroots, vec![2, 4, 5]);
    }
}
