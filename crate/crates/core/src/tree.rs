//! Rooted, labeled trees in depth-first (preorder) indexing.
//!
//! Nodes are numbered `1..=m` in preorder; index `0` is never a node and is
//! used by mappings as the gap partner. Because of the preorder numbering,
//! the proper descendants of node `i` are exactly the contiguous range
//! `i + 1 ..= subtree_end(i)`, which makes ancestry tests O(1).

use std::fmt;
use std::ops::RangeInclusive;

use thiserror::Error;

/// Text used for the gap symbol. Labels may never equal it.
pub const GAP_SYMBOL: &str = "-";
/// Alternative rendering of the gap symbol, also reserved.
pub const GAP_SYMBOL_UNICODE: &str = "\u{2212}";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TreeError {
    #[error("empty tree text")]
    Empty,
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("label {0:?} is reserved for the gap symbol")]
    ReservedLabel(String),
    #[error("node index {index} out of bounds for tree of size {size}")]
    IndexOutOfBounds { index: usize, size: usize },
    #[error("node {ancestor} is not an ancestor of node {descendant}")]
    NotAnAncestor { ancestor: usize, descendant: usize },
}

/// A node label: an opaque symbol, optionally interpretable as a number.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(String);

impl Label {
    pub fn new(text: impl Into<String>) -> Result<Self, TreeError> {
        let text = text.into();
        if text.is_empty() {
            return Err(TreeError::Syntax {
                position: 0,
                message: "empty label".into(),
            });
        }
        if text == GAP_SYMBOL || text == GAP_SYMBOL_UNICODE {
            return Err(TreeError::ReservedLabel(text));
        }
        Ok(Label(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Numeric value of the label, if its text parses as a finite real.
    pub fn numeric(&self) -> Option<f64> {
        self.0.trim().parse::<f64>().ok().filter(|v| v.is_finite())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<i64> for Label {
    fn from(value: i64) -> Self {
        Label(value.to_string())
    }
}

/// Proper descendants of a node, as a contiguous preorder index range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescendantSet {
    pub node: usize,
    range: RangeInclusive<usize>,
}

impl DescendantSet {
    pub fn range(&self) -> RangeInclusive<usize> {
        self.range.clone()
    }

    pub fn len(&self) -> usize {
        if self.range.is_empty() {
            0
        } else {
            self.range.end() + 1 - self.range.start()
        }
    }

    pub fn is_empty(&self) -> bool {
        self.range.is_empty()
    }

    pub fn contains(&self, j: usize) -> bool {
        self.range.contains(&j)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.range.clone().collect()
    }
}

/// Immutable rooted labeled tree with preorder indexing `1..=m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    labels: Vec<Label>,
    // All per-node vectors below have length m + 1; slot 0 is unused.
    parent: Vec<usize>,
    end: Vec<usize>,
    children: Vec<Vec<usize>>,
}

impl Tree {
    /// Builds a tree from preorder labels and parent indices.
    ///
    /// `parents[0]` belongs to the root and is ignored; every other entry must
    /// be a 1-based index smaller than the node's own index, and the node
    /// sequence must be a valid preorder (each node's parent is on the
    /// current root-to-node path).
    pub fn from_parents(labels: Vec<Label>, parents: &[usize]) -> Result<Self, TreeError> {
        let m = labels.len();
        if m == 0 {
            return Err(TreeError::Empty);
        }
        if parents.len() != m {
            return Err(TreeError::Syntax {
                position: 0,
                message: format!("{} labels but {} parents", m, parents.len()),
            });
        }
        let mut parent = vec![0; m + 1];
        let mut children = vec![Vec::new(); m + 1];
        // Stack of open ancestors; a preorder sequence only ever attaches to it.
        let mut path: Vec<usize> = vec![1];
        for i in 2..=m {
            let p = parents[i - 1];
            if p == 0 || p >= i {
                return Err(TreeError::Syntax {
                    position: i,
                    message: format!("parent {p} of node {i} must be in 1..{i}"),
                });
            }
            while let Some(&top) = path.last() {
                if top == p {
                    break;
                }
                path.pop();
            }
            if path.is_empty() {
                return Err(TreeError::Syntax {
                    position: i,
                    message: format!("node {i} breaks preorder (parent {p} already closed)"),
                });
            }
            parent[i] = p;
            children[p].push(i);
            path.push(i);
        }
        let mut end: Vec<usize> = (0..=m).collect();
        for i in (2..=m).rev() {
            let p = parent[i];
            end[p] = end[p].max(end[i]);
        }
        Ok(Tree {
            labels,
            parent,
            end,
            children,
        })
    }

    /// A single-node tree.
    pub fn leaf(label: Label) -> Self {
        Tree {
            labels: vec![label],
            parent: vec![0, 0],
            end: vec![0, 1],
            children: vec![vec![], vec![]],
        }
    }

    /// Builds `root(children...)` from already-built subtrees.
    pub fn node(label: Label, subtrees: Vec<Tree>) -> Self {
        let mut labels = vec![label];
        let mut parents = vec![0];
        for sub in subtrees {
            let offset = labels.len();
            for (k, l) in sub.labels.into_iter().enumerate() {
                labels.push(l);
                let p = sub.parent[k + 1];
                parents.push(if p == 0 { 1 } else { p + offset });
            }
        }
        Tree::from_parents(labels, &parents).expect("subtree concatenation is a valid preorder")
    }

    /// Number of nodes `m`.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &Label {
        &self.labels[i - 1]
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    /// Parent of node `i`, or `None` for the root.
    pub fn parent(&self, i: usize) -> Option<usize> {
        match self.parent[i] {
            0 => None,
            p => Some(p),
        }
    }

    /// Children of node `i` in stored (textual) order.
    pub fn children(&self, i: usize) -> &[usize] {
        &self.children[i]
    }

    /// Last preorder index inside the subtree of `i`.
    #[inline]
    pub fn subtree_end(&self, i: usize) -> usize {
        self.end[i]
    }

    #[inline]
    pub fn subtree_size(&self, i: usize) -> usize {
        self.end[i] + 1 - i
    }

    pub fn descendants(&self, i: usize) -> Result<DescendantSet, TreeError> {
        self.check(i)?;
        Ok(DescendantSet {
            node: i,
            range: i + 1..=self.end[i],
        })
    }

    /// Proper ancestry: `is_ancestor(i, i)` is false.
    #[inline]
    pub fn is_ancestor(&self, i: usize, j: usize) -> bool {
        i < j && j <= self.end[i]
    }

    /// Path `l = p_0, p_1, ..., p_t = j` where each element is the parent of the next.
    pub fn path_between(&self, l: usize, j: usize) -> Result<Vec<usize>, TreeError> {
        self.check(l)?;
        self.check(j)?;
        if l != j && !self.is_ancestor(l, j) {
            return Err(TreeError::NotAnAncestor {
                ancestor: l,
                descendant: j,
            });
        }
        let mut path = vec![j];
        let mut cur = j;
        while cur != l {
            cur = self.parent[cur];
            path.push(cur);
        }
        path.reverse();
        Ok(path)
    }

    pub fn depth(&self, i: usize) -> usize {
        let mut d = 0;
        let mut cur = i;
        while self.parent[cur] != 0 {
            cur = self.parent[cur];
            d += 1;
        }
        d
    }

    /// Lowest common ancestor (a node counts as its own ancestor here).
    pub fn lca(&self, mut a: usize, mut b: usize) -> usize {
        while a != b {
            if a > b {
                a = self.parent[a];
            } else {
                b = self.parent[b];
            }
        }
        a
    }

    /// Structure + labels re-rooted under a new placeholder root.
    pub fn with_placeholder_root(&self, placeholder: Label) -> Tree {
        Tree::node(placeholder, vec![self.clone()])
    }

    fn check(&self, i: usize) -> Result<(), TreeError> {
        if i == 0 || i > self.len() {
            Err(TreeError::IndexOutOfBounds {
                index: i,
                size: self.len(),
            })
        } else {
            Ok(())
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_tree(self))
    }
}

impl std::str::FromStr for Tree {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_tree(s)
    }
}

/// Parses `label [ '(' tree (',' tree)* ')' ]`, with `\` escaping `( ) , \`.
///
/// Whitespace between tokens is ignored; whitespace inside a label is kept
/// unless it is leading or trailing and unescaped.
pub fn parse_tree(text: &str) -> Result<Tree, TreeError> {
    let mut parser = Parser {
        chars: text.char_indices().peekable(),
        len: text.len(),
    };
    parser.skip_ws();
    if parser.chars.peek().is_none() {
        return Err(TreeError::Empty);
    }
    let mut labels = Vec::new();
    let mut parents = Vec::new();
    parser.tree(0, &mut labels, &mut parents)?;
    parser.skip_ws();
    if let Some(&(pos, c)) = parser.chars.peek() {
        return Err(TreeError::Syntax {
            position: pos,
            message: format!("unexpected {c:?} after tree"),
        });
    }
    Tree::from_parents(labels, &parents)
}

struct Parser<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    len: usize,
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while matches!(self.chars.peek(), Some(&(_, c)) if c.is_whitespace()) {
            self.chars.next();
        }
    }

    fn position(&mut self) -> usize {
        self.chars.peek().map_or(self.len, |&(p, _)| p)
    }

    fn tree(
        &mut self,
        parent: usize,
        labels: &mut Vec<Label>,
        parents: &mut Vec<usize>,
    ) -> Result<(), TreeError> {
        self.skip_ws();
        let start = self.position();
        let text = self.label()?;
        if text.is_empty() {
            return Err(TreeError::Syntax {
                position: start,
                message: "expected a label".into(),
            });
        }
        labels.push(Label::new(text).map_err(|e| match e {
            TreeError::ReservedLabel(_) => TreeError::Syntax {
                position: start,
                message: "label '-' is reserved for the gap symbol".into(),
            },
            other => other,
        })?);
        parents.push(parent);
        let me = labels.len();
        self.skip_ws();
        if matches!(self.chars.peek(), Some(&(_, '('))) {
            self.chars.next();
            loop {
                self.tree(me, labels, parents)?;
                self.skip_ws();
                match self.chars.next() {
                    Some((_, ',')) => continue,
                    Some((_, ')')) => break,
                    Some((pos, c)) => {
                        return Err(TreeError::Syntax {
                            position: pos,
                            message: format!("expected ',' or ')', found {c:?}"),
                        })
                    }
                    None => {
                        return Err(TreeError::Syntax {
                            position: self.len,
                            message: "unclosed '('".into(),
                        })
                    }
                }
            }
        }
        Ok(())
    }

    fn label(&mut self) -> Result<String, TreeError> {
        let mut out = String::new();
        // Length of `out` up to the last character that must be kept.
        let mut keep = 0;
        while let Some(&(pos, c)) = self.chars.peek() {
            match c {
                '(' | ')' | ',' => break,
                '\\' => {
                    self.chars.next();
                    match self.chars.next() {
                        Some((_, e)) => {
                            out.push(e);
                            keep = out.len();
                        }
                        None => {
                            return Err(TreeError::Syntax {
                                position: pos,
                                message: "dangling escape".into(),
                            })
                        }
                    }
                }
                c if c.is_whitespace() => {
                    self.chars.next();
                    if !out.is_empty() {
                        out.push(c);
                    }
                }
                c => {
                    self.chars.next();
                    out.push(c);
                    keep = out.len();
                }
            }
        }
        out.truncate(keep);
        Ok(out)
    }
}

/// Inverse of [`parse_tree`].
pub fn serialize_tree(t: &Tree) -> String {
    let mut out = String::new();
    write_node(t, 1, &mut out);
    out
}

fn write_node(t: &Tree, i: usize, out: &mut String) {
    escape_label(t.label(i).as_str(), out);
    let kids = t.children(i);
    if !kids.is_empty() {
        out.push('(');
        for (n, &c) in kids.iter().enumerate() {
            if n > 0 {
                out.push(',');
            }
            write_node(t, c, out);
        }
        out.push(')');
    }
}

fn escape_label(text: &str, out: &mut String) {
    let last = text.chars().count().saturating_sub(1);
    for (n, c) in text.chars().enumerate() {
        let edge_ws = c.is_whitespace() && (n == 0 || n == last);
        if matches!(c, '(' | ')' | ',' | '\\') || edge_ws {
            out.push('\\');
        }
        out.push(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_left() -> Tree {
        parse_tree("a(b(c,d),e)").unwrap()
    }

    #[test]
    fn parses_reference_trees() {
        let x = reference_left();
        assert_eq!(x.len(), 5);
        let labels: Vec<_> = x.labels().iter().map(Label::as_str).collect();
        assert_eq!(labels, ["a", "b", "c", "d", "e"]);
        let parents: Vec<_> = (1..=5).map(|i| x.parent(i)).collect();
        assert_eq!(parents, [None, Some(1), Some(2), Some(2), Some(1)]);

        let y = parse_tree("a(e,d,c)").unwrap();
        let labels: Vec<_> = y.labels().iter().map(Label::as_str).collect();
        assert_eq!(labels, ["a", "e", "d", "c"]);
        assert_eq!(
            (2..=4).map(|i| y.parent(i)).collect::<Vec<_>>(),
            [Some(1); 3]
        );
    }

    #[test]
    fn single_node() {
        let t = parse_tree("a").unwrap();
        assert_eq!(t.len(), 1);
        assert!(t.descendants(1).unwrap().is_empty());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_tree(""), Err(TreeError::Empty));
        assert_eq!(parse_tree("   "), Err(TreeError::Empty));
        assert!(matches!(parse_tree("a(b"), Err(TreeError::Syntax { .. })));
        assert!(matches!(parse_tree("a(b,)"), Err(TreeError::Syntax { .. })));
        assert!(matches!(
            parse_tree("a)"),
            Err(TreeError::Syntax { position: 1, .. })
        ));
        assert!(matches!(parse_tree("a(-)"), Err(TreeError::Syntax { .. })));
        assert!(matches!(parse_tree("a\\"), Err(TreeError::Syntax { .. })));
    }

    #[test]
    fn whitespace_between_tokens_is_ignored() {
        let t = parse_tree("  a ( b ,\n c d )  ").unwrap();
        assert_eq!(serialize_tree(&t), "a(b,c d)");
    }

    #[test]
    fn serialize_examples() {
        assert_eq!(serialize_tree(&reference_left()), "a(b(c,d),e)");
        assert_eq!(serialize_tree(&parse_tree("x").unwrap()), "x");
        let t = Tree::leaf(Label::new("a,b").unwrap());
        assert_eq!(serialize_tree(&t), "a\\,b");
        assert_eq!(parse_tree("a\\,b").unwrap(), t);
    }

    #[test]
    fn descendants_examples() {
        let x = reference_left();
        assert_eq!(x.descendants(2).unwrap().to_vec(), vec![3, 4]);
        assert!(x.descendants(5).unwrap().is_empty());
        assert_eq!(x.descendants(1).unwrap().to_vec(), vec![2, 3, 4, 5]);
        assert!(matches!(
            x.descendants(6),
            Err(TreeError::IndexOutOfBounds { .. })
        ));
        assert!(matches!(
            x.descendants(0),
            Err(TreeError::IndexOutOfBounds { .. })
        ));
    }

    #[test]
    fn paths() {
        let x = reference_left();
        assert_eq!(x.path_between(1, 3).unwrap(), vec![1, 2, 3]);
        assert_eq!(x.path_between(4, 4).unwrap(), vec![4]);
        assert_eq!(x.path_between(1, 5).unwrap(), vec![1, 5]);
        assert_eq!(
            x.path_between(5, 3),
            Err(TreeError::NotAnAncestor {
                ancestor: 5,
                descendant: 3
            })
        );
    }

    #[test]
    fn ancestry() {
        let x = reference_left();
        assert!(x.is_ancestor(2, 4));
        assert!(!x.is_ancestor(2, 2));
        assert!(!x.is_ancestor(5, 3));
        assert_eq!(x.lca(3, 4), 2);
        assert_eq!(x.lca(3, 5), 1);
        assert_eq!(x.depth(4), 2);
    }

    #[test]
    fn placeholder_root_shifts_indices() {
        let x = reference_left().with_placeholder_root(Label::new("^").unwrap());
        assert_eq!(serialize_tree(&x), "^(a(b(c,d),e))");
        assert_eq!(x.parent(2), Some(1));
        assert_eq!(x.subtree_end(2), 6);
    }

    #[test]
    fn from_parents_rejects_non_preorder() {
        let labels: Vec<Label> = ["a", "b", "c", "d"]
            .iter()
            .map(|s| Label::new(*s).unwrap())
            .collect();
        // d attaches to b after c's sibling subtree under a was opened: not preorder.
        assert!(Tree::from_parents(labels.clone(), &[0, 1, 1, 2]).is_err());
        assert!(Tree::from_parents(labels, &[0, 1, 2, 1]).is_ok());
    }

    #[test]
    fn numeric_labels() {
        assert_eq!(Label::new("3").unwrap().numeric(), Some(3.0));
        assert_eq!(Label::new("-1.5").unwrap().numeric(), Some(-1.5));
        assert_eq!(Label::new("C").unwrap().numeric(), None);
        assert!(Label::new("-").is_err());
    }
}
