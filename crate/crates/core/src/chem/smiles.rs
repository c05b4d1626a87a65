//! SMILES to syntax tree conversion with ring cutting.

use std::collections::HashMap;

use super::elements::{atomic_number, canonical_symbol};
use super::{ChemError, LabelScheme};
use crate::tree::{Label, Tree};

/// Label of a ring-cut leaf under the numeric schemes.
pub const RING_CUT_NUMERIC: i64 = 0;

/// A converted molecule together with the number of discarded
/// stereo, isotope, charge and atom-class annotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmilesSyntaxTree {
    pub tree: Tree,
    pub discarded: usize,
}

/// Atomic number of a neutral element.
pub fn electron_count(element: &str) -> Result<u32, ChemError> {
    atomic_number(element).ok_or_else(|| ChemError::UnknownElement {
        symbol: element.to_string(),
        position: 0,
    })
}

/// Converts a single-component SMILES string to a tree.
///
/// The first atom is the root and every further atom becomes a child of the
/// atom it bonds to. The second occurrence of a ring-bond number adds a
/// ring-cut leaf below the current atom instead of closing the cycle.
pub fn smiles_to_tree(smiles: &str, scheme: LabelScheme) -> Result<SmilesSyntaxTree, ChemError> {
    if scheme == LabelScheme::Raw {
        return Err(ChemError::UnsupportedScheme(scheme));
    }
    let parsed = Parser::new(smiles).run()?;
    let labels = parsed
        .nodes
        .iter()
        .map(|node| node.label(scheme))
        .collect::<Result<Vec<_>, _>>()?;
    let parents: Vec<usize> = parsed
        .nodes
        .iter()
        .map(|n| n.parent.map_or(0, |p| p + 1))
        .collect();
    let tree = Tree::from_parents(labels, &parents).expect("SMILES nodes are created in preorder");
    Ok(SmilesSyntaxTree {
        tree,
        discarded: parsed.discarded,
    })
}

#[derive(Debug)]
struct Node {
    parent: Option<usize>,
    bond: Option<char>,
    kind: NodeKind,
}

#[derive(Debug)]
enum NodeKind {
    Atom {
        symbol: String,
        element: &'static str,
        aromatic: bool,
        hydrogens: Option<u32>,
        valence_used: u32,
    },
    RingCut {
        token: String,
    },
}

impl Node {
    fn label(&self, scheme: LabelScheme) -> Result<Label, ChemError> {
        let bond_prefix = || self.bond.map(String::from).unwrap_or_default();
        let label = match (&self.kind, scheme) {
            (NodeKind::Atom { element, .. }, LabelScheme::ElectronCount) => {
                Label::from(i64::from(atomic_number(element).unwrap_or(0)))
            }
            (
                NodeKind::Atom {
                    element,
                    aromatic,
                    hydrogens,
                    valence_used,
                    ..
                },
                LabelScheme::HydrogenCount,
            ) => Label::from(i64::from(hydrogens.unwrap_or_else(|| {
                implicit_hydrogens(element, *aromatic, *valence_used)
            }))),
            (NodeKind::Atom { symbol, .. }, _) => {
                Label::new(bond_prefix() + symbol).expect("atom tokens are non-empty")
            }
            (NodeKind::RingCut { .. }, LabelScheme::ElectronCount | LabelScheme::HydrogenCount) => {
                Label::from(RING_CUT_NUMERIC)
            }
            (NodeKind::RingCut { token }, _) => {
                Label::new(bond_prefix() + token).expect("ring tokens are non-empty")
            }
        };
        Ok(label)
    }
}

fn implicit_hydrogens(element: &str, aromatic: bool, used: u32) -> u32 {
    let valences: &[u32] = match element {
        "B" => &[3],
        "C" => &[4],
        "N" | "P" => &[3, 5],
        "O" => &[2],
        "S" => &[2, 4, 6],
        "F" | "Cl" | "Br" | "I" => &[1],
        _ => &[],
    };
    let used = used + u32::from(aromatic);
    let candidates = if aromatic {
        &valences[..valences.len().min(1)]
    } else {
        valences
    };
    candidates
        .iter()
        .find(|&&v| v >= used)
        .map_or(0, |&v| v - used)
}

fn bond_order(bond: Option<char>) -> u32 {
    match bond {
        Some('=') => 2,
        Some('#') => 3,
        Some('$') => 4,
        _ => 1,
    }
}

struct Parsed {
    nodes: Vec<Node>,
    discarded: usize,
}

struct Parser<'a> {
    text: &'a str,
    bytes: &'a [u8],
    pos: usize,
    nodes: Vec<Node>,
    discarded: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser {
            text,
            bytes: text.as_bytes(),
            pos: 0,
            nodes: Vec::new(),
            discarded: 0,
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ChemError {
        ChemError::Syntax {
            position: self.pos,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn run(mut self) -> Result<Parsed, ChemError> {
        let mut current: Option<usize> = None;
        let mut branches: Vec<(usize, usize)> = Vec::new();
        let mut bond: Option<char> = None;
        let mut rings: HashMap<u32, (usize, Option<char>)> = HashMap::new();

        while let Some(b) = self.peek() {
            match b {
                b'(' => {
                    let anchor =
                        current.ok_or_else(|| self.syntax("branch before the first atom"))?;
                    if bond.is_some() {
                        return Err(self.syntax("bond symbol before a branch"));
                    }
                    branches.push((anchor, self.pos));
                    self.pos += 1;
                }
                b')' => {
                    let (anchor, _) = branches
                        .pop()
                        .ok_or(ChemError::UnbalancedParenthesis { position: self.pos })?;
                    if bond.is_some() {
                        return Err(self.syntax("dangling bond at the end of a branch"));
                    }
                    current = Some(anchor);
                    self.pos += 1;
                }
                b'-' | b'=' | b'#' | b'$' | b':' | b'/' | b'\\' => {
                    if bond.is_some() {
                        return Err(self.syntax("two consecutive bond symbols"));
                    }
                    if current.is_none() {
                        return Err(self.syntax("bond before the first atom"));
                    }
                    if b == b'/' || b == b'\\' {
                        // Directional single bond: stereo is dropped, the bond stays implicit.
                        self.discarded += 1;
                    } else {
                        bond = Some(b as char);
                    }
                    self.pos += 1;
                }
                b'.' => return Err(ChemError::Disconnected { position: self.pos }),
                b'0'..=b'9' | b'%' => {
                    let at =
                        current.ok_or_else(|| self.syntax("ring bond before the first atom"))?;
                    let (number, token) = self.ring_number()?;
                    match rings.remove(&number) {
                        Some((partner, opening_bond)) => {
                            if partner == at {
                                return Err(self
                                    .syntax(format!("ring bond {token} closes on its own atom")));
                            }
                            let closing = bond.take().or(opening_bond);
                            let order = bond_order(closing);
                            self.add_valence(partner, order);
                            self.add_valence(at, order);
                            self.nodes.push(Node {
                                parent: Some(at),
                                bond: closing,
                                kind: NodeKind::RingCut { token },
                            });
                        }
                        None => {
                            rings.insert(number, (at, bond.take()));
                        }
                    }
                }
                b'[' => {
                    let kind = self.bracket_atom()?;
                    current = Some(self.add_atom(current, bond.take(), kind));
                }
                _ => {
                    let kind = self.organic_atom()?;
                    current = Some(self.add_atom(current, bond.take(), kind));
                }
            }
        }
        if let Some(&(_, position)) = branches.last() {
            return Err(ChemError::UnbalancedParenthesis { position });
        }
        if bond.is_some() {
            return Err(self.syntax("dangling bond at the end of input"));
        }
        if let Some(&number) = rings.keys().min() {
            return Err(ChemError::UnmatchedRingBond { ring: number });
        }
        if self.nodes.is_empty() {
            return Err(ChemError::Empty);
        }
        Ok(Parsed {
            nodes: self.nodes,
            discarded: self.discarded,
        })
    }

    fn add_valence(&mut self, at: usize, order: u32) {
        if let NodeKind::Atom { valence_used, .. } = &mut self.nodes[at].kind {
            *valence_used += order;
        }
    }

    fn add_atom(&mut self, parent: Option<usize>, bond: Option<char>, kind: NodeKind) -> usize {
        let index = self.nodes.len();
        if let Some(p) = parent {
            self.nodes.push(Node {
                parent: Some(p),
                bond,
                kind,
            });
            let order = bond_order(bond);
            self.add_valence(p, order);
            self.add_valence(index, order);
        } else {
            self.nodes.push(Node {
                parent: None,
                bond: None,
                kind,
            });
        }
        index
    }

    fn ring_number(&mut self) -> Result<(u32, String), ChemError> {
        let start = self.pos;
        if self.peek() == Some(b'%') {
            let digits = self
                .bytes
                .get(start + 1..start + 3)
                .filter(|d| d.iter().all(u8::is_ascii_digit));
            let digits = digits.ok_or_else(|| self.syntax("'%' must be followed by two digits"))?;
            let number = u32::from(digits[0] - b'0') * 10 + u32::from(digits[1] - b'0');
            self.pos += 3;
            Ok((number, self.text[start..self.pos].to_string()))
        } else {
            self.pos += 1;
            Ok((
                u32::from(self.bytes[start] - b'0'),
                self.text[start..self.pos].to_string(),
            ))
        }
    }

    fn organic_atom(&mut self) -> Result<NodeKind, ChemError> {
        let start = self.pos;
        let rest = &self.text[start..];
        let symbol = [
            "Cl", "Br", "B", "C", "N", "O", "P", "S", "F", "I", "b", "c", "n", "o", "p", "s",
        ]
        .into_iter()
        .find(|s| rest.starts_with(s));
        let Some(symbol) = symbol else {
            return Err(match rest.chars().next() {
                Some(ch) if ch.is_ascii_alphabetic() || ch == '*' => {
                    let len = if rest[1..].starts_with(|c: char| c.is_ascii_lowercase()) {
                        2
                    } else {
                        1
                    };
                    ChemError::UnknownElement {
                        symbol: rest[..len.min(rest.len())].to_string(),
                        position: start,
                    }
                }
                Some(']') => ChemError::UnbalancedBracket { position: start },
                Some(ch) => self.syntax(format!("unexpected character {ch:?}")),
                None => self.syntax("unexpected end of input"),
            });
        };
        self.pos += symbol.len();
        let aromatic = symbol.starts_with(|c: char| c.is_ascii_lowercase());
        let element = canonical_symbol(symbol).expect("organic subset symbols are elements");
        Ok(NodeKind::Atom {
            symbol: symbol.to_string(),
            element,
            aromatic,
            hydrogens: None,
            valence_used: 0,
        })
    }

    fn bracket_atom(&mut self) -> Result<NodeKind, ChemError> {
        let open = self.pos;
        let close = self.text[open..]
            .find(']')
            .map(|k| open + k)
            .ok_or(ChemError::UnbalancedBracket { position: open })?;
        let inner = &self.text[open + 1..close];
        if inner.contains('[') {
            return Err(ChemError::UnbalancedBracket { position: open });
        }
        let mut k = 0;
        let ib = inner.as_bytes();
        let digits = |k: &mut usize| {
            let s = *k;
            while *k < ib.len() && ib[*k].is_ascii_digit() {
                *k += 1;
            }
            &inner[s..*k]
        };

        if !digits(&mut k).is_empty() {
            self.discarded += 1;
        }
        let symbol_start = k;
        let aromatic = ib.get(k).is_some_and(u8::is_ascii_lowercase);
        if aromatic {
            let two = inner.get(k..k + 2);
            k += if matches!(two, Some("se" | "as" | "te")) {
                2
            } else {
                1
            };
        } else if ib.get(k).is_some_and(u8::is_ascii_uppercase) {
            k += 1;
            if ib.get(k).is_some_and(u8::is_ascii_lowercase)
                && atomic_number(&inner[symbol_start..k + 1]).is_some()
            {
                k += 1;
            }
        }
        let symbol = &inner[symbol_start..k];
        let element = match symbol {
            "" => {
                return Err(ChemError::Syntax {
                    position: open + 1 + symbol_start,
                    message: "bracket atom without an element".into(),
                })
            }
            s if aromatic
                && !matches!(s, "b" | "c" | "n" | "o" | "p" | "s" | "se" | "as" | "te") =>
            {
                None
            }
            s => canonical_symbol(s),
        };
        let element = element.ok_or_else(|| ChemError::UnknownElement {
            symbol: symbol.to_string(),
            position: open + 1 + symbol_start,
        })?;

        if ib.get(k) == Some(&b'@') {
            self.discarded += 1;
            while ib.get(k) == Some(&b'@') {
                k += 1;
            }
        }
        let mut hydrogens = 0;
        if ib.get(k) == Some(&b'H') {
            k += 1;
            let count = digits(&mut k);
            hydrogens = if count.is_empty() {
                1
            } else {
                count.parse().expect("digit run")
            };
        }
        if matches!(ib.get(k), Some(b'+' | b'-')) {
            self.discarded += 1;
            while matches!(ib.get(k), Some(b'+' | b'-')) {
                k += 1;
            }
            digits(&mut k);
        }
        if ib.get(k) == Some(&b':') {
            k += 1;
            if digits(&mut k).is_empty() {
                return Err(ChemError::Syntax {
                    position: open + 1 + k,
                    message: "atom class needs digits".into(),
                });
            }
            self.discarded += 1;
        }
        if k != inner.len() {
            return Err(ChemError::Syntax {
                position: open + 1 + k,
                message: format!("unexpected {:?} in bracket atom", &inner[k..]),
            });
        }
        self.pos = close + 1;
        let token = match hydrogens {
            0 => format!("[{symbol}]"),
            1 => format!("[{symbol}H]"),
            h => format!("[{symbol}H{h}]"),
        };
        Ok(NodeKind::Atom {
            symbol: token,
            element,
            aromatic,
            hydrogens: Some(hydrogens),
            valence_used: 0,
        })
    }
}
