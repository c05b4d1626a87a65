//! Admissible lower bounds `h(I, J)` on the cost of mapping the node sets
//! `I` (left tree) and `J` (right tree) onto each other.
//!
//! The three bounds relax the problem progressively:
//!
//! * `h3`: optimal one-to-one mapping between `I` and `J` ignoring ancestry,
//!   solved exactly as an assignment problem, `O((|I|+|J|)^3)`.
//! * `h2`: with `|I| >= |J|`, exactly `|I| - |J|` elements of `I` are deleted
//!   and every other element pays its cheapest substitution into `J`
//!   (one-to-many), `O(|I| |J|)`.
//! * `h1`: only the `|I| - |J|` cheapest deletions, `O(|I| + |J|)`.
//!
//! When `|I| < |J|` the roles of the two sides are exchanged. All three are
//! exact when one side is empty, which the A* search relies on when it
//! completes a mapping by inserting the remaining right nodes.

use std::fmt;
use std::str::FromStr;

use crate::assignment::{AssignmentProblem, LsapSolver};
use crate::cost::CostMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum HeuristicKind {
    H1,
    #[default]
    H2,
    H3,
    /// `h = 0`: plain uniform-cost search.
    Zero,
}

impl HeuristicKind {
    pub const ALL: [HeuristicKind; 4] = [
        HeuristicKind::H1,
        HeuristicKind::H2,
        HeuristicKind::H3,
        HeuristicKind::Zero,
    ];

    pub fn name(self) -> &'static str {
        match self {
            HeuristicKind::H1 => "h1",
            HeuristicKind::H2 => "h2",
            HeuristicKind::H3 => "h3",
            HeuristicKind::Zero => "zero",
        }
    }
}

impl fmt::Display for HeuristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HeuristicKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "h1" => Ok(HeuristicKind::H1),
            "h2" => Ok(HeuristicKind::H2),
            "h3" => Ok(HeuristicKind::H3),
            "zero" | "h0" => Ok(HeuristicKind::Zero),
            other => Err(format!(
                "unknown heuristic {other:?} (expected h1, h2, h3 or zero)"
            )),
        }
    }
}

/// Evaluates one heuristic repeatedly, reusing scratch buffers.
#[derive(Debug, Default)]
pub struct Heuristic {
    kind: HeuristicKind,
    scratch: Vec<f64>,
    solver: LsapSolver,
    evaluations: u64,
}

impl Heuristic {
    pub fn new(kind: HeuristicKind) -> Self {
        Heuristic {
            kind,
            ..Default::default()
        }
    }

    pub fn kind(&self) -> HeuristicKind {
        self.kind
    }

    /// Number of bounds computed so far.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// `h(I, J)` for 1-based node indices `left` of x and `right` of y.
    pub fn bound(&mut self, costs: &CostMatrix, left: &[usize], right: &[usize]) -> f64 {
        self.evaluations += 1;
        if left.is_empty() {
            return right.iter().map(|&j| costs.insertion(j)).sum();
        }
        if right.is_empty() {
            return left.iter().map(|&i| costs.deletion(i)).sum();
        }
        match self.kind {
            HeuristicKind::Zero => 0.0,
            HeuristicKind::H1 => h1_with(costs, left, right, &mut self.scratch),
            HeuristicKind::H2 => h2_with(costs, left, right, &mut self.scratch),
            HeuristicKind::H3 => h3_with(costs, left, right, &mut self.solver),
        }
    }
}

/// Sum of the `|I| - |J|` smallest deletion costs (or insertion costs if `|J| > |I|`).
pub fn h1(costs: &CostMatrix, left: &[usize], right: &[usize]) -> f64 {
    h1_with(costs, left, right, &mut Vec::new())
}

/// One-to-many relaxation; see the module docs.
pub fn h2(costs: &CostMatrix, left: &[usize], right: &[usize]) -> f64 {
    h2_with(costs, left, right, &mut Vec::new())
}

/// Unrestricted optimal mapping between the two sets.
pub fn h3(costs: &CostMatrix, left: &[usize], right: &[usize]) -> f64 {
    h3_with(costs, left, right, &mut LsapSolver::default())
}

/// Sum of the `k` smallest entries of `terms` (linear-time selection).
fn sum_smallest(terms: &mut [f64], k: usize) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if k < terms.len() {
        terms.select_nth_unstable_by(k - 1, f64::total_cmp);
    }
    terms[..k].iter().sum()
}

fn h1_with(costs: &CostMatrix, left: &[usize], right: &[usize], scratch: &mut Vec<f64>) -> f64 {
    scratch.clear();
    if left.len() >= right.len() {
        scratch.extend(left.iter().map(|&i| costs.deletion(i)));
        sum_smallest(scratch, left.len() - right.len())
    } else {
        scratch.extend(right.iter().map(|&j| costs.insertion(j)));
        sum_smallest(scratch, right.len() - left.len())
    }
}

fn h2_with(costs: &CostMatrix, left: &[usize], right: &[usize], scratch: &mut Vec<f64>) -> f64 {
    use std::cmp::Ordering::*;
    match left.len().cmp(&right.len()) {
        Greater => h2_oriented(
            left,
            right,
            |i| costs.deletion(i),
            |i, j| costs.get(i, j),
            scratch,
        ),
        Less => h2_oriented(
            right,
            left,
            |j| costs.insertion(j),
            |j, i| costs.get(i, j),
            scratch,
        ),
        // Either orientation is a valid bound here; taking the larger keeps
        // the value independent of argument order.
        Equal => {
            let a = h2_oriented(
                left,
                right,
                |i| costs.deletion(i),
                |i, j| costs.get(i, j),
                scratch,
            );
            let b = h2_oriented(
                right,
                left,
                |j| costs.insertion(j),
                |j, i| costs.get(i, j),
                scratch,
            );
            a.max(b)
        }
    }
}

/// `big` is the larger side; `gap(a)` its gap cost and `sub(a, b)` the cost
/// of pairing `a` from `big` with `b` from `small`.
fn h2_oriented(
    big: &[usize],
    small: &[usize],
    gap: impl Fn(usize) -> f64,
    sub: impl Fn(usize, usize) -> f64,
    scratch: &mut Vec<f64>,
) -> f64 {
    if small.is_empty() {
        return big.iter().map(|&a| gap(a)).sum();
    }
    scratch.clear();
    let mut matched = 0.0;
    for &a in big {
        let cheapest = small
            .iter()
            .map(|&b| sub(a, b))
            .fold(f64::INFINITY, f64::min);
        matched += cheapest;
        scratch.push(gap(a) - cheapest);
    }
    matched + sum_smallest(scratch, big.len() - small.len())
}

fn h3_with(costs: &CostMatrix, left: &[usize], right: &[usize], solver: &mut LsapSolver) -> f64 {
    let sub = left
        .iter()
        .flat_map(|&i| right.iter().map(move |&j| costs.get(i, j)))
        .collect();
    let problem = AssignmentProblem::from_flat(
        sub,
        left.iter().map(|&i| costs.deletion(i)).collect(),
        right.iter().map(|&j| costs.insertion(j)).collect(),
    );
    solver.solve(&problem).cost
}
