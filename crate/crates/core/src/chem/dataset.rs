use std::fs::File;
use std::io::{self, BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;
use serde_json::Value;
use thiserror::Error;

use super::{smiles_to_tree, LabelScheme};
use crate::tree::{parse_tree, Tree};

#[derive(Debug, Clone, PartialEq)]
pub struct LabeledRecord {
    pub id: String,
    pub tree: Tree,
    pub target: f64,
}

/// Non-empty list of labeled trees with finite targets.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub records: Vec<LabeledRecord>,
    pub scheme: LabelScheme,
    /// SMILES annotations dropped during conversion.
    pub discarded: usize,
}

impl LabeledDataset {
    pub fn new(records: Vec<LabeledRecord>, scheme: LabelScheme) -> Result<Self, DatasetError> {
        if records.is_empty() {
            return Err(DatasetError::Empty);
        }
        if let Some(r) = records.iter().find(|r| !r.target.is_finite()) {
            return Err(DatasetError::Record {
                line: 0,
                id: Some(r.id.clone()),
                message: format!("target {} is not finite", r.target),
            });
        }
        Ok(LabeledDataset {
            records,
            scheme,
            discarded: 0,
        })
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn trees(&self) -> impl Iterator<Item = &Tree> {
        self.records.iter().map(|r| &r.tree)
    }

    pub fn targets(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.target).collect()
    }
}

#[derive(Debug, Error)]
pub enum DatasetError {
    #[error("cannot read {path}")]
    Io { path: PathBuf, source: io::Error },
    #[error("dataset I/O error: {0}")]
    Stream(#[from] io::Error),
    #[error("dataset contains no records")]
    Empty,
    #[error("record {} (line {line}): {message}", id.as_deref().unwrap_or("<unknown id>"))]
    Record {
        line: usize,
        id: Option<String>,
        message: String,
    },
}

/// Which record kinds a dataset file may contain.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RecordKind {
    Tree,
    Smiles,
}

/// Input format of [`load_dataset`]: the label scheme for SMILES records and
/// an optional restriction to one record kind.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct DatasetFormat {
    pub scheme: LabelScheme,
    pub only: Option<RecordKind>,
}

impl DatasetFormat {
    pub fn new(scheme: LabelScheme) -> Self {
        DatasetFormat { scheme, only: None }
    }

    pub fn only(self, kind: RecordKind) -> Self {
        DatasetFormat {
            only: Some(kind),
            ..self
        }
    }
}

impl From<LabelScheme> for DatasetFormat {
    fn from(scheme: LabelScheme) -> Self {
        DatasetFormat::new(scheme)
    }
}

pub fn load_dataset(
    path: &Path,
    format: impl Into<DatasetFormat>,
) -> Result<LabeledDataset, DatasetError> {
    let file = File::open(path).map_err(|source| DatasetError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    read_dataset(BufReader::new(file), format)
}

/// Parses JSONL records; blank lines are skipped. SMILES records are
/// converted under the format's scheme.
pub fn read_dataset<R: BufRead>(
    reader: R,
    format: impl Into<DatasetFormat>,
) -> Result<LabeledDataset, DatasetError> {
    let format = format.into();
    let mut lines = Vec::new();
    for (k, line) in reader.lines().enumerate() {
        let line = line?;
        if !line.trim().is_empty() {
            lines.push((k + 1, line));
        }
    }
    if lines.is_empty() {
        return Err(DatasetError::Empty);
    }
    let parsed: Vec<(LabeledRecord, usize)> = lines
        .par_iter()
        .map(|(line, text)| parse_record(*line, text, format))
        .collect::<Result<_, _>>()?;
    let discarded = parsed.iter().map(|(_, d)| d).sum();
    if discarded > 0 {
        log::warn!(
            "discarded {discarded} stereo/isotope/charge/class annotations while converting SMILES"
        );
    }
    Ok(LabeledDataset {
        records: parsed.into_iter().map(|(r, _)| r).collect(),
        scheme: format.scheme,
        discarded,
    })
}

fn parse_record(
    line: usize,
    text: &str,
    format: DatasetFormat,
) -> Result<(LabeledRecord, usize), DatasetError> {
    let fail = |id: Option<&str>, message: String| DatasetError::Record {
        line,
        id: id.map(str::to_string),
        message,
    };
    let value: Value =
        serde_json::from_str(text).map_err(|e| fail(None, format!("invalid JSON: {e}")))?;
    let id = match value.get("id") {
        Some(Value::String(s)) => s.clone(),
        Some(Value::Number(n)) => n.to_string(),
        _ => return Err(fail(None, "missing string field \"id\"".into())),
    };
    let id_ref = Some(id.as_str());
    let target = match value.get("target") {
        Some(Value::Number(n)) => n.as_f64().unwrap_or(f64::NAN),
        Some(Value::String(s)) => s
            .trim()
            .parse::<f64>()
            .map_err(|_| fail(id_ref, format!("target {s:?} is not a number")))?,
        _ => return Err(fail(id_ref, "missing numeric field \"target\"".into())),
    };
    if !target.is_finite() {
        return Err(fail(id_ref, format!("target {target} is not finite")));
    }
    let (tree, discarded) = match (value.get("tree"), value.get("smiles")) {
        (Some(_), None) if format.only == Some(RecordKind::Smiles) => {
            return Err(fail(id_ref, "expected a \"smiles\" record".into()))
        }
        (None, Some(_)) if format.only == Some(RecordKind::Tree) => {
            return Err(fail(id_ref, "expected a \"tree\" record".into()))
        }
        (Some(Value::String(t)), None) => {
            (parse_tree(t).map_err(|e| fail(id_ref, e.to_string()))?, 0)
        }
        (None, Some(Value::String(s))) => {
            let converted =
                smiles_to_tree(s, format.scheme).map_err(|e| fail(id_ref, e.to_string()))?;
            (converted.tree, converted.discarded)
        }
        (Some(_), Some(_)) => {
            return Err(fail(
                id_ref,
                "record has both \"tree\" and \"smiles\"".into(),
            ))
        }
        _ => {
            return Err(fail(
                id_ref,
                "record needs a string field \"tree\" or \"smiles\"".into(),
            ))
        }
    };
    Ok((LabeledRecord { id, tree, target }, discarded))
}

#[derive(Serialize)]
struct RecordOut<'a> {
    id: &'a str,
    tree: String,
    target: f64,
}

/// Writes the dataset as tree records, one JSON object per line.
pub fn write_dataset<W: Write>(mut writer: W, dataset: &LabeledDataset) -> io::Result<()> {
    for r in &dataset.records {
        serde_json::to_writer(
            &mut writer,
            &RecordOut {
                id: &r.id,
                tree: r.tree.to_string(),
                target: r.target,
            },
        )?;
        writer.write_all(b"\n")?;
    }
    writer.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str, scheme: LabelScheme) -> Result<LabeledDataset, DatasetError> {
        read_dataset(text.as_bytes(), scheme)
    }

    #[test]
    fn tree_record() {
        let ds = read(
            r#"{"id":"m1","tree":"3(2(3,3),3)","target":-164.0}"#,
            LabelScheme::HydrogenCount,
        )
        .unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds.records[0].id, "m1");
        assert_eq!(ds.records[0].tree.len(), 5);
        assert_eq!(ds.records[0].target, -164.0);
    }

    #[test]
    fn smiles_record() {
        let ds = read(
            "{\"id\":\"e\",\"smiles\":\"CCO\",\"target\":1}\n\n",
            LabelScheme::Syntactic,
        )
        .unwrap();
        assert_eq!(ds.records[0].tree.to_string(), "C(C(O))");
        let mut out = Vec::new();
        write_dataset(&mut out, &ds).unwrap();
        assert_eq!(
            String::from_utf8(out).unwrap(),
            "{\"id\":\"e\",\"tree\":\"C(C(O))\",\"target\":1.0}\n"
        );
    }

    #[test]
    fn errors() {
        assert!(matches!(
            read("", LabelScheme::Raw),
            Err(DatasetError::Empty)
        ));
        assert!(matches!(
            read("\n  \n", LabelScheme::Raw),
            Err(DatasetError::Empty)
        ));
        let err = read("{\"id\":\"ok\",\"tree\":\"a\",\"target\":1}\n{\"id\":\"bad\",\"tree\":\"a\",\"target\":\"NaN\"}", LabelScheme::Raw).unwrap_err();
        assert!(matches!(&err, DatasetError::Record { line: 2, id: Some(id), .. } if id == "bad"));
        assert!(err.to_string().contains("bad"));
        let err = read(r#"{"id":"x","tree":"a(","target":1}"#, LabelScheme::Raw).unwrap_err();
        assert!(err.to_string().contains("record x"));
        assert!(read(
            r#"{"id":"x","smiles":"C(","target":1}"#,
            LabelScheme::Syntactic
        )
        .is_err());
        assert!(read(r#"{"tree":"a","target":1}"#, LabelScheme::Raw).is_err());
        let smiles_only = DatasetFormat::new(LabelScheme::Syntactic).only(RecordKind::Smiles);
        assert!(read_dataset(
            r#"{"id":"t","tree":"a","target":1}"#.as_bytes(),
            smiles_only
        )
        .is_err());
        assert!(read_dataset(
            r#"{"id":"t","smiles":"C","target":1}"#.as_bytes(),
            smiles_only
        )
        .is_ok());
    }
}
