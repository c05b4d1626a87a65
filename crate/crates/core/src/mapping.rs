//! Mappings between two trees and the three validity classes.
//!
//! A mapping is a set of index pairs `(i, j)` with `0` as the gap partner:
//! `(i, 0)` deletes `x_i`, `(0, j)` inserts `y_j`, `(i, j)` substitutes.

use std::fmt;

use crate::tree::Tree;

/// Which structural constraints a mapping must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MappingClass {
    /// Ancestry is preserved in both directions.
    Unordered,
    /// Additionally, disjoint subtrees map into disjoint subtrees: for all
    /// substituted pairs `(i1,j1), (i2,j2), (i3,j3)`, `lca(i1,i2)` is a proper
    /// ancestor of `i3` iff `lca(j1,j2)` is a proper ancestor of `j3`.
    Constrained,
    /// Additionally, the left-to-right (preorder) order is preserved.
    Ordered,
}

impl fmt::Display for MappingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MappingClass::Unordered => "unordered",
            MappingClass::Constrained => "constrained",
            MappingClass::Ordered => "ordered",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Mapping {
    pairs: Vec<(usize, usize)>,
    class: Option<MappingClass>,
}

impl Mapping {
    pub fn new(pairs: Vec<(usize, usize)>) -> Self {
        Mapping { pairs, class: None }
    }

    pub fn with_class(mut self, class: MappingClass) -> Self {
        self.class = Some(class);
        self
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// The class this mapping was produced for, if known.
    pub fn class(&self) -> Option<MappingClass> {
        self.class
    }

    /// Pairs sorted by left index, then right index.
    pub fn sorted(&self) -> Vec<(usize, usize)> {
        let mut p = self.pairs.clone();
        p.sort_unstable();
        p
    }

    /// Substituted pairs only (both sides non-gap).
    pub fn substitutions(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.pairs.iter().copied().filter(|&(i, j)| i > 0 && j > 0)
    }

    /// Each `i in 1..=m` occurs exactly once on the left, each `j in 1..=n`
    /// exactly once on the right, and `(0, 0)` never occurs.
    pub fn is_complete(&self, m: usize, n: usize) -> bool {
        let mut left = vec![0u32; m + 1];
        let mut right = vec![0u32; n + 1];
        for &(i, j) in &self.pairs {
            if i > m || j > n || (i == 0 && j == 0) {
                return false;
            }
            left[i] += 1;
            right[j] += 1;
        }
        left[1..].iter().all(|&c| c == 1) && right[1..].iter().all(|&c| c == 1)
    }
}

/// True iff `mapping` is complete and satisfies the constraints of `class`.
pub fn mapping_valid(x: &Tree, y: &Tree, mapping: &Mapping, class: MappingClass) -> bool {
    if !mapping.is_complete(x.len(), y.len()) {
        return false;
    }
    let subs: Vec<(usize, usize)> = mapping.substitutions().collect();
    for (a, &(i1, j1)) in subs.iter().enumerate() {
        for &(i2, j2) in &subs[a + 1..] {
            if x.is_ancestor(i1, i2) != y.is_ancestor(j1, j2)
                || x.is_ancestor(i2, i1) != y.is_ancestor(j2, j1)
            {
                return false;
            }
            if class == MappingClass::Ordered && (i1 < i2) != (j1 < j2) {
                return false;
            }
        }
    }
    if class == MappingClass::Constrained {
        for &(i1, j1) in &subs {
            for &(i2, j2) in &subs {
                let (li, lj) = (x.lca(i1, i2), y.lca(j1, j2));
                for &(i3, j3) in &subs {
                    if x.is_ancestor(li, i3) != y.is_ancestor(lj, j3) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn reference() -> (Tree, Tree) {
        (
            parse_tree("a(b(c,d),e)").unwrap(),
            parse_tree("a(e,d,c)").unwrap(),
        )
    }

    #[test]
    fn reference_classes() {
        let (x, y) = reference();
        let m1 = Mapping::new(vec![(1, 1), (2, 0), (3, 4), (4, 3), (5, 2)]);
        let m2 = Mapping::new(vec![(1, 1), (2, 0), (3, 4), (4, 3), (5, 0), (0, 2)]);
        let m3 = Mapping::new(vec![(1, 1), (2, 0), (3, 2), (4, 3), (5, 4)]);

        assert!(mapping_valid(&x, &y, &m1, MappingClass::Unordered));
        assert!(!mapping_valid(&x, &y, &m1, MappingClass::Constrained));
        assert!(!mapping_valid(&x, &y, &m1, MappingClass::Ordered));

        assert!(mapping_valid(&x, &y, &m2, MappingClass::Constrained));
        assert!(mapping_valid(&x, &y, &m2, MappingClass::Unordered));
        assert!(!mapping_valid(&x, &y, &m2, MappingClass::Ordered));

        assert!(mapping_valid(&x, &y, &m3, MappingClass::Ordered));
        assert!(mapping_valid(&x, &y, &m3, MappingClass::Unordered));
        assert!(!mapping_valid(&x, &y, &m3, MappingClass::Constrained));
    }

    #[test]
    fn incomplete_or_duplicate_is_invalid() {
        let (x, y) = reference();
        let missing = Mapping::new(vec![(1, 1), (2, 0), (3, 4), (4, 3)]);
        assert!(!mapping_valid(&x, &y, &missing, MappingClass::Unordered));
        let dup = Mapping::new(vec![(1, 1), (2, 1), (3, 4), (4, 3), (5, 2)]);
        assert!(!mapping_valid(&x, &y, &dup, MappingClass::Unordered));
        let gap_gap = Mapping::new(vec![(1, 1), (2, 0), (3, 4), (4, 3), (5, 2), (0, 0)]);
        assert!(!mapping_valid(&x, &y, &gap_gap, MappingClass::Unordered));
    }

    #[test]
    fn ancestry_violation() {
        let x = parse_tree("a(b)").unwrap();
        let y = parse_tree("a(b)").unwrap();
        let flipped = Mapping::new(vec![(1, 2), (2, 1)]);
        assert!(!mapping_valid(&x, &y, &flipped, MappingClass::Unordered));
    }
}
