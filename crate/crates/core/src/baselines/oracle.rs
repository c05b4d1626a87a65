//! Exhaustive enumeration of all mappings of a class. Exponential; used as
//! the reference every distance is tested against.
//!
//! Deliberately shares no search logic with the A* module: left nodes are
//! assigned in order to the gap or to any unused right node, and a branch
//! survives only if every pair of substitutions passes the class predicate.

use super::BaselineError;
use crate::cost::{CostFunction, CostMatrix};
use crate::mapping::{Mapping, MappingClass};
use crate::tree::Tree;

/// Largest `m + n` the oracle accepts.
pub const ORACLE_SIZE_LIMIT: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleOptions {
    pub class: MappingClass,
    /// Restrict to mappings containing `(1, 1)`.
    pub roots_mapped: bool,
    pub size_limit: usize,
}

impl OracleOptions {
    pub fn new(class: MappingClass) -> Self {
        OracleOptions {
            class,
            roots_mapped: false,
            size_limit: ORACLE_SIZE_LIMIT,
        }
    }
}

/// Minimum mapping cost over all mappings of `class`.
pub fn oracle_distance<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
    class: MappingClass,
) -> Result<f64, BaselineError> {
    Ok(oracle_search(x, y, &checked_costs(x, y, c)?, OracleOptions::new(class))?.0)
}

/// Like [`oracle_distance`] but only over mappings that map root to root.
pub fn oracle_distance_rooted<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
    class: MappingClass,
) -> Result<f64, BaselineError> {
    let options = OracleOptions {
        roots_mapped: true,
        ..OracleOptions::new(class)
    };
    Ok(oracle_search(x, y, &checked_costs(x, y, c)?, options)?.0)
}

pub fn oracle_distance_costs(
    x: &Tree,
    y: &Tree,
    costs: &CostMatrix,
    class: MappingClass,
) -> Result<f64, BaselineError> {
    Ok(oracle_search(x, y, costs, OracleOptions::new(class))?.0)
}

fn checked_costs<C: CostFunction + ?Sized>(
    x: &Tree,
    y: &Tree,
    c: &C,
) -> Result<CostMatrix, BaselineError> {
    if x.is_empty() || y.is_empty() {
        return Err(BaselineError::EmptyTree);
    }
    if x.len() + y.len() > ORACLE_SIZE_LIMIT {
        return Err(BaselineError::TooLarge {
            total: x.len() + y.len(),
            limit: ORACLE_SIZE_LIMIT,
        });
    }
    Ok(CostMatrix::new(x, y, c)?)
}

/// Optimal cost and one optimal mapping.
pub fn oracle_search(
    x: &Tree,
    y: &Tree,
    costs: &CostMatrix,
    options: OracleOptions,
) -> Result<(f64, Mapping), BaselineError> {
    if x.is_empty() || y.is_empty() {
        return Err(BaselineError::EmptyTree);
    }
    let total = x.len() + y.len();
    if total > options.size_limit {
        return Err(BaselineError::TooLarge {
            total,
            limit: options.size_limit,
        });
    }
    let mut e = Enumerator {
        x,
        y,
        costs,
        class: options.class,
        roots_mapped: options.roots_mapped,
        partner: vec![0; x.len() + 1],
        used: vec![false; y.len() + 1],
        best: f64::INFINITY,
        best_partner: Vec::new(),
    };
    e.assign(1, 0.0);
    let mut pairs: Vec<(usize, usize)> = (1..=x.len()).map(|i| (i, e.best_partner[i])).collect();
    let mut mapped = vec![false; y.len() + 1];
    for &(_, j) in &pairs {
        mapped[j] = true;
    }
    pairs.extend((1..=y.len()).filter(|&j| !mapped[j]).map(|j| (0, j)));
    Ok((e.best, Mapping::new(pairs).with_class(options.class)))
}

struct Enumerator<'a> {
    x: &'a Tree,
    y: &'a Tree,
    costs: &'a CostMatrix,
    class: MappingClass,
    roots_mapped: bool,
    partner: Vec<usize>,
    used: Vec<bool>,
    best: f64,
    best_partner: Vec<usize>,
}

impl Enumerator<'_> {
    fn assign(&mut self, i: usize, cost: f64) {
        if cost >= self.best {
            return;
        }
        if i > self.x.len() {
            let inserted: f64 = (1..=self.y.len())
                .filter(|&j| !self.used[j])
                .map(|j| self.costs.insertion(j))
                .sum();
            let total = cost + inserted;
            if total < self.best
                && (self.class != MappingClass::Constrained || self.constrained_ok())
            {
                self.best = total;
                self.best_partner = self.partner.clone();
            }
            return;
        }
        let root_forced = i == 1 && self.roots_mapped;
        if !root_forced {
            self.partner[i] = 0;
            self.assign(i + 1, cost + self.costs.deletion(i));
        }
        for j in 1..=self.y.len() {
            if self.used[j] || (root_forced && j != 1) || !self.compatible(i, j) {
                continue;
            }
            self.used[j] = true;
            self.partner[i] = j;
            self.assign(i + 1, cost + self.costs.get(i, j));
            self.used[j] = false;
        }
        self.partner[i] = 0;
    }

    /// Checks `(i, j)` against every earlier substitution.
    fn compatible(&self, i: usize, j: usize) -> bool {
        (1..i).all(|a| {
            let b = self.partner[a];
            if b == 0 {
                return true;
            }
            let ancestry = self.x.is_ancestor(a, i) == self.y.is_ancestor(b, j)
                && self.x.is_ancestor(i, a) == self.y.is_ancestor(j, b);
            let order = self.class != MappingClass::Ordered || (a < i) == (b < j);
            ancestry && order
        })
    }

    fn constrained_ok(&self) -> bool {
        let subs: Vec<(usize, usize)> = (1..=self.x.len())
            .filter(|&i| self.partner[i] > 0)
            .map(|i| (i, self.partner[i]))
            .collect();
        subs.iter().all(|&(i1, j1)| {
            subs.iter().all(|&(i2, j2)| {
                let (li, lj) = (self.x.lca(i1, i2), self.y.lca(j1, j2));
                subs.iter()
                    .all(|&(i3, j3)| self.x.is_ancestor(li, i3) == self.y.is_ancestor(lj, j3))
            })
        })
    }
}
