//! Exact min-cost assignment with deletion and insertion options.
//!
//! An unbalanced instance with `p` left and `q` right elements is reduced to
//! a square `(p+q) x (q+p)` linear sum assignment problem:
//!
//! ```text
//!             J (q)            I-dummies (p)
//! I (p)   [ substitution  |  diag(deletion)  ]
//! J-dum   [ diag(insert)  |  0               ]
//! ```
//!
//! Off-diagonal entries of the two diagonal blocks are forbidden; they hold
//! one more than the sum of all finite entries, so no optimal solution uses
//! them and the solver never sees an infinity.

/// `p` left elements, `q` right elements.
#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentProblem {
    /// Row-major `p x q` substitution costs.
    substitution: Vec<f64>,
    deletion: Vec<f64>,
    insertion: Vec<f64>,
}

/// What each left element is assigned to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Assigned {
    Right(usize),
    Deleted,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AssignmentSolution {
    pub cost: f64,
    /// One entry per left element.
    pub matching: Vec<Assigned>,
    /// Right elements left unmatched (inserted).
    pub inserted: Vec<usize>,
}

impl AssignmentProblem {
    /// `substitution` has one row per left element, each of length `insertion.len()`.
    pub fn new(substitution: Vec<Vec<f64>>, deletion: Vec<f64>, insertion: Vec<f64>) -> Self {
        assert_eq!(
            substitution.len(),
            deletion.len(),
            "one substitution row per left element"
        );
        assert!(
            substitution.iter().all(|r| r.len() == insertion.len()),
            "substitution rows must cover all right elements"
        );
        let problem = AssignmentProblem {
            substitution: substitution.into_iter().flatten().collect(),
            deletion,
            insertion,
        };
        debug_assert!(problem.all_costs().all(|v| v.is_finite() && v >= 0.0));
        problem
    }

    /// Builds from a flat row-major substitution block.
    pub fn from_flat(substitution: Vec<f64>, deletion: Vec<f64>, insertion: Vec<f64>) -> Self {
        assert_eq!(substitution.len(), deletion.len() * insertion.len());
        AssignmentProblem {
            substitution,
            deletion,
            insertion,
        }
    }

    pub fn left_len(&self) -> usize {
        self.deletion.len()
    }

    pub fn right_len(&self) -> usize {
        self.insertion.len()
    }

    pub fn substitution(&self, i: usize, j: usize) -> f64 {
        self.substitution[i * self.insertion.len() + j]
    }

    pub fn deletion(&self, i: usize) -> f64 {
        self.deletion[i]
    }

    pub fn insertion(&self, j: usize) -> f64 {
        self.insertion[j]
    }

    fn all_costs(&self) -> impl Iterator<Item = f64> + '_ {
        self.substitution
            .iter()
            .chain(&self.deletion)
            .chain(&self.insertion)
            .copied()
    }
}

/// Solves the problem to global optimality in `O((p+q)^3)`.
pub fn solve_assignment(problem: &AssignmentProblem) -> AssignmentSolution {
    let mut solver = LsapSolver::default();
    solver.solve(problem)
}

/// Optimal cost only, reusing `solver`'s buffers.
pub fn assignment_cost(problem: &AssignmentProblem, solver: &mut LsapSolver) -> f64 {
    solver.solve(problem).cost
}

/// Shortest augmenting path solver for square LSAPs (Jonker-Volgenant
/// style Hungarian method with row/column potentials). Buffers are kept
/// between calls.
#[derive(Debug, Default)]
pub struct LsapSolver {
    cost: Vec<f64>,
    u: Vec<f64>,
    v: Vec<f64>,
    row_of_col: Vec<usize>,
    way: Vec<usize>,
    min_slack: Vec<f64>,
    used: Vec<bool>,
}

impl LsapSolver {
    pub fn solve(&mut self, problem: &AssignmentProblem) -> AssignmentSolution {
        let (p, q) = (problem.left_len(), problem.right_len());
        let size = p + q;
        if size == 0 {
            return AssignmentSolution {
                cost: 0.0,
                matching: Vec::new(),
                inserted: Vec::new(),
            };
        }
        let forbidden = problem.all_costs().sum::<f64>() + 1.0;

        self.cost.clear();
        self.cost.resize(size * size, 0.0);
        for i in 0..p {
            for j in 0..q {
                self.cost[i * size + j] = problem.substitution(i, j);
            }
            for d in 0..p {
                self.cost[i * size + q + d] = if d == i {
                    problem.deletion(i)
                } else {
                    forbidden
                };
            }
        }
        for r in 0..q {
            for j in 0..q {
                self.cost[(p + r) * size + j] = if j == r {
                    problem.insertion(r)
                } else {
                    forbidden
                };
            }
            // remaining block stays zero
        }

        self.run(size);

        let mut matching = vec![Assigned::Deleted; p];
        let mut inserted = Vec::new();
        let mut cost = 0.0;
        for col in 1..=size {
            let row = self.row_of_col[col] - 1;
            let c = col - 1;
            cost += self.cost[row * size + c];
            if row < p && c < q {
                matching[row] = Assigned::Right(c);
            } else if row >= p && c < q {
                inserted.push(c);
            }
        }
        inserted.sort_unstable();
        AssignmentSolution {
            cost,
            matching,
            inserted,
        }
    }

    // 1-based arrays; column 0 is the virtual source of each augmentation.
    fn run(&mut self, size: usize) {
        self.u.clear();
        self.u.resize(size + 1, 0.0);
        self.v.clear();
        self.v.resize(size + 1, 0.0);
        self.row_of_col.clear();
        self.row_of_col.resize(size + 1, 0);
        self.way.clear();
        self.way.resize(size + 1, 0);

        for row in 1..=size {
            self.row_of_col[0] = row;
            let mut col0 = 0;
            self.min_slack.clear();
            self.min_slack.resize(size + 1, f64::INFINITY);
            self.used.clear();
            self.used.resize(size + 1, false);
            loop {
                self.used[col0] = true;
                let r0 = self.row_of_col[col0];
                let mut delta = f64::INFINITY;
                let mut col1 = 0;
                for col in 1..=size {
                    if self.used[col] {
                        continue;
                    }
                    let slack = self.cost[(r0 - 1) * size + col - 1] - self.u[r0] - self.v[col];
                    if slack < self.min_slack[col] {
                        self.min_slack[col] = slack;
                        self.way[col] = col0;
                    }
                    if self.min_slack[col] < delta {
                        delta = self.min_slack[col];
                        col1 = col;
                    }
                }
                for col in 0..=size {
                    if self.used[col] {
                        self.u[self.row_of_col[col]] += delta;
                        self.v[col] -= delta;
                    } else {
                        self.min_slack[col] -= delta;
                    }
                }
                col0 = col1;
                if self.row_of_col[col0] == 0 {
                    break;
                }
            }
            loop {
                let col1 = self.way[col0];
                self.row_of_col[col0] = self.row_of_col[col1];
                col0 = col1;
                if col0 == 0 {
                    break;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Minimum over all partial injections from left to right.
    fn brute_force(p: &AssignmentProblem) -> f64 {
        fn go(p: &AssignmentProblem, i: usize, used: &mut Vec<bool>) -> f64 {
            if i == p.left_len() {
                return (0..p.right_len())
                    .filter(|&j| !used[j])
                    .map(|j| p.insertion(j))
                    .sum();
            }
            let mut best = p.deletion(i) + go(p, i + 1, used);
            for j in 0..p.right_len() {
                if !used[j] {
                    used[j] = true;
                    best = best.min(p.substitution(i, j) + go(p, i + 1, used));
                    used[j] = false;
                }
            }
            best
        }
        go(p, 0, &mut vec![false; p.right_len()])
    }

    fn solution_cost(p: &AssignmentProblem, s: &AssignmentSolution) -> f64 {
        let mut used = vec![false; p.right_len()];
        let mut total = 0.0;
        for (i, a) in s.matching.iter().enumerate() {
            match *a {
                Assigned::Right(j) => {
                    assert!(!used[j], "right element {j} matched twice");
                    used[j] = true;
                    total += p.substitution(i, j);
                }
                Assigned::Deleted => total += p.deletion(i),
            }
        }
        let inserted: Vec<usize> = (0..p.right_len()).filter(|&j| !used[j]).collect();
        assert_eq!(inserted, s.inserted);
        total + inserted.iter().map(|&j| p.insertion(j)).sum::<f64>()
    }

    #[test]
    fn zero_diagonal() {
        let p = AssignmentProblem::new(
            vec![vec![0.0, 1.0], vec![1.0, 0.0]],
            vec![1.0, 1.0],
            vec![1.0, 1.0],
        );
        let s = solve_assignment(&p);
        assert_eq!(s.cost, 0.0);
        assert_eq!(s.matching, vec![Assigned::Right(0), Assigned::Right(1)]);
    }

    #[test]
    fn reference_node_sets_unit_costs() {
        let left = ["a", "b", "c", "d", "e"];
        let right = ["a", "e", "d", "c"];
        let sub = left
            .iter()
            .map(|l| {
                right
                    .iter()
                    .map(|r| if l == r { 0.0 } else { 1.0 })
                    .collect()
            })
            .collect();
        let p = AssignmentProblem::new(sub, vec![1.0; 5], vec![1.0; 4]);
        assert_eq!(brute_force(&p), 1.0);
        let s = solve_assignment(&p);
        assert_eq!(s.cost, 1.0);
        assert_eq!(s.matching[1], Assigned::Deleted);
    }

    #[test]
    fn forced_insertion() {
        let p = AssignmentProblem::new(vec![], vec![], vec![2.0]);
        let s = solve_assignment(&p);
        assert_eq!(s.cost, 2.0);
        assert_eq!(s.inserted, vec![0]);
    }

    #[test]
    fn empty_problem() {
        let p = AssignmentProblem::new(vec![], vec![], vec![]);
        assert_eq!(solve_assignment(&p).cost, 0.0);
    }

    fn problem_strategy() -> impl Strategy<Value = AssignmentProblem> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(p, q)| {
            (
                prop::collection::vec(0.0f64..10.0, p * q),
                prop::collection::vec(0.0f64..10.0, p),
                prop::collection::vec(0.0f64..10.0, q),
            )
                .prop_map(|(s, d, i)| AssignmentProblem::from_flat(s, d, i))
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn matches_brute_force(p in problem_strategy()) {
            let s = solve_assignment(&p);
            let oracle = brute_force(&p);
            prop_assert!((s.cost - oracle).abs() < 1e-9, "solver {} vs oracle {}", s.cost, oracle);
            prop_assert!((solution_cost(&p, &s) - s.cost).abs() < 1e-9);
        }

        #[test]
        fn invariant_under_permutation(p in problem_strategy(), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut rows: Vec<usize> = (0..p.left_len()).collect();
            let mut cols: Vec<usize> = (0..p.right_len()).collect();
            rows.shuffle(&mut rng);
            cols.shuffle(&mut rng);
            let sub = rows.iter().map(|&i| cols.iter().map(|&j| p.substitution(i, j)).collect()).collect();
            let permuted = AssignmentProblem::new(
                sub,
                rows.iter().map(|&i| p.deletion(i)).collect(),
                cols.iter().map(|&j| p.insertion(j)).collect(),
            );
            prop_assert!((solve_assignment(&p).cost - solve_assignment(&permuted).cost).abs() < 1e-9);
        }

        #[test]
        fn adding_a_left_element_is_bounded(p in problem_strategy(), row in prop::collection::vec(0.0f64..10.0, 7), del in 0.0f64..10.0) {
            let q = p.right_len();
            let base = solve_assignment(&p).cost;
            let mut sub: Vec<f64> = (0..p.left_len()).flat_map(|i| (0..q).map(move |j| (i, j))).map(|(i, j)| p.substitution(i, j)).collect();
            sub.extend_from_slice(&row[..q]);
            let mut dels: Vec<f64> = (0..p.left_len()).map(|i| p.deletion(i)).collect();
            dels.push(del);
            let ins: Vec<f64> = (0..q).map(|j| p.insertion(j)).collect();
            let grown = solve_assignment(&AssignmentProblem::from_flat(sub, dels, ins.clone())).cost;
            // the new element can at most take over one formerly inserted element
            let max_saving = ins.iter().copied().fold(0.0, f64::max);
            prop_assert!(grown >= base - max_saving - 1e-9);
            // and never more expensive than deleting the new element
            prop_assert!(grown <= base + del + 1e-9);
        }
    }
}
