//! Molecular dataset ingestion.
//!
//! Datasets are line-delimited JSON records `{"id", "tree" | "smiles",
//! "target"}`. SMILES records are converted with [`smiles_to_tree`] under
//! the dataset's [`LabelScheme`].

mod dataset;
mod elements;
mod smiles;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use dataset::{
    load_dataset, read_dataset, write_dataset, DatasetError, DatasetFormat, LabeledDataset,
    LabeledRecord, RecordKind,
};
pub use elements::atomic_number;
pub use smiles::{electron_count, smiles_to_tree, SmilesSyntaxTree, RING_CUT_NUMERIC};

/// How node labels of a dataset are derived.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum LabelScheme {
    /// Hydrogen count of each heavy atom.
    HydrogenCount,
    /// Atomic number of each atom.
    ElectronCount,
    /// Raw SMILES tokens, with bond symbols prefixed to the child's label.
    Syntactic,
    /// Labels taken verbatim from tree records.
    #[default]
    Raw,
}

impl LabelScheme {
    pub const ALL: [LabelScheme; 4] = [
        LabelScheme::HydrogenCount,
        LabelScheme::ElectronCount,
        LabelScheme::Syntactic,
        LabelScheme::Raw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LabelScheme::HydrogenCount => "hydrogen-count",
            LabelScheme::ElectronCount => "electron-count",
            LabelScheme::Syntactic => "syntactic",
            LabelScheme::Raw => "raw",
        }
    }

    /// Whether labels are integers meant for numeric-difference costs.
    pub fn is_numeric(self) -> bool {
        matches!(
            self,
            LabelScheme::HydrogenCount | LabelScheme::ElectronCount
        )
    }
}

impl fmt::Display for LabelScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelScheme {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LabelScheme::ALL
            .into_iter()
            .find(|scheme| scheme.name() == s)
            .ok_or_else(|| format!("unknown label scheme {s:?} (expected hydrogen-count, electron-count, syntactic or raw)"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ChemError {
    #[error("empty SMILES string")]
    Empty,
    #[error("unbalanced parenthesis at byte {position}")]
    UnbalancedParenthesis { position: usize },
    #[error("unbalanced bracket at byte {position}")]
    UnbalancedBracket { position: usize },
    #[error("unknown element {symbol:?} at byte {position}")]
    UnknownElement { symbol: String, position: usize },
    #[error("ring bond {ring} is never closed")]
    UnmatchedRingBond { ring: u32 },
    #[error(
        "disconnected structure ('.') at byte {position}; only single components are supported"
    )]
    Disconnected { position: usize },
    #[error("SMILES syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("label scheme {0} cannot be derived from SMILES")]
    UnsupportedScheme(LabelScheme),
}
