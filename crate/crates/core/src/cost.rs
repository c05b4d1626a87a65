//! Cost functions over labels extended by the gap symbol.
//!
//! A cost function is queried with `Option<&Label>`, where `None` is the gap.
//! All algorithms work on a precomputed [`CostMatrix`] for a fixed tree pair.

use std::collections::HashMap;
use std::fmt;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

use crate::mapping::Mapping;
use crate::tree::{Label, Tree, TreeError, GAP_SYMBOL, GAP_SYMBOL_UNICODE};

/// Absolute tolerance used when comparing costs inside the algorithms.
pub const SEARCH_EPS: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum CostError {
    #[error("label {0:?} is not numeric")]
    NonNumericLabel(String),
    #[error("label {0:?} is not in the cost table")]
    UnknownLabel(String),
    #[error("cost table: {0}")]
    Table(String),
    #[error("cost table violates the metric axioms: {0}")]
    NotMetric(MetricViolation),
    #[error("invalid cost {value} for ({x}, {y})")]
    InvalidCost { x: String, y: String, value: f64 },
    #[error("mapping pair ({0}, {1}) is out of bounds")]
    PairOutOfBounds(usize, usize),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A (pseudo)metric over labels and the gap symbol; `None` denotes the gap.
pub trait CostFunction: Send + Sync {
    fn cost(&self, x: Option<&Label>, y: Option<&Label>) -> Result<f64, CostError>;

    fn substitution(&self, x: &Label, y: &Label) -> Result<f64, CostError> {
        self.cost(Some(x), Some(y))
    }

    fn deletion(&self, x: &Label) -> Result<f64, CostError> {
        self.cost(Some(x), None)
    }

    fn insertion(&self, y: &Label) -> Result<f64, CostError> {
        self.cost(None, Some(y))
    }
}

impl<C: CostFunction + ?Sized> CostFunction for &C {
    fn cost(&self, x: Option<&Label>, y: Option<&Label>) -> Result<f64, CostError> {
        (**self).cost(x, y)
    }
}

impl<C: CostFunction + ?Sized> CostFunction for Box<C> {
    fn cost(&self, x: Option<&Label>, y: Option<&Label>) -> Result<f64, CostError> {
        (**self).cost(x, y)
    }
}

/// `c(x, y) = 0` if `x == y`, else `1`; the gap is just another symbol.
#[derive(Debug, Clone, Copy, Default)]
pub struct UnitCosts;

pub fn unit_costs() -> UnitCosts {
    UnitCosts
}

impl CostFunction for UnitCosts {
    fn cost(&self, x: Option<&Label>, y: Option<&Label>) -> Result<f64, CostError> {
        Ok(if x == y { 0.0 } else { 1.0 })
    }
}

/// `c(x, y) = |value(x) - value(y)|`, with the gap standing for `gap_value`.
#[derive(Debug, Clone, Copy)]
pub struct NumericDiffCosts {
    pub gap_value: f64,
}

impl Default for NumericDiffCosts {
    fn default() -> Self {
        NumericDiffCosts { gap_value: 0.0 }
    }
}

pub fn numeric_diff_costs(gap_value: f64) -> NumericDiffCosts {
    NumericDiffCosts { gap_value }
}

impl NumericDiffCosts {
    fn value(&self, x: Option<&Label>) -> Result<f64, CostError> {
        match x {
            None => Ok(self.gap_value),
            Some(l) => l
                .numeric()
                .ok_or_else(|| CostError::NonNumericLabel(l.to_string())),
        }
    }
}

impl CostFunction for NumericDiffCosts {
    fn cost(&self, x: Option<&Label>, y: Option<&Label>) -> Result<f64, CostError> {
        Ok((self.value(x)? - self.value(y)?).abs())
    }
}

/// Explicit cost table over a finite alphabet plus the gap.
///
/// Index 0 of the table is the gap; labels are 1-based.
#[derive(Debug, Clone)]
pub struct CostTable {
    symbols: Vec<String>,
    index: HashMap<String, usize>,
    values: Vec<f64>,
}

impl CostTable {
    /// Builds a table from labels and a `(k+1) x (k+1)` matrix whose row and
    /// column 0 are the gap. The table is validated as a metric.
    pub fn new(labels: Vec<String>, matrix: Vec<Vec<f64>>) -> Result<Self, CostError> {
        let table = Self::new_unchecked(labels, matrix)?;
        let sample: Vec<Option<Label>> = std::iter::once(None)
            .chain(table.symbols.iter().map(|s| Label::new(s.clone()).ok()))
            .collect();
        let report = validate_metric(&table, &sample);
        match report.violation {
            Some(v) => Err(CostError::NotMetric(v)),
            None => Ok(table),
        }
    }

    /// Like [`CostTable::new`] but without metric validation. Callers that
    /// feed the result to the distance algorithms must validate it first.
    pub fn new_unchecked(labels: Vec<String>, matrix: Vec<Vec<f64>>) -> Result<Self, CostError> {
        let k = labels.len() + 1;
        if matrix.len() != k || matrix.iter().any(|row| row.len() != k) {
            return Err(CostError::Table(format!(
                "expected a {k}x{k} matrix including the gap"
            )));
        }
        let mut index = HashMap::new();
        for (n, l) in labels.iter().enumerate() {
            Label::new(l.clone())?;
            if index.insert(l.clone(), n + 1).is_some() {
                return Err(CostError::Table(format!("duplicate label {l:?}")));
            }
        }
        let mut values = Vec::with_capacity(k * k);
        for (r, row) in matrix.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if !v.is_finite() || v < 0.0 {
                    let name = |i: usize| {
                        if i == 0 {
                            GAP_SYMBOL.to_string()
                        } else {
                            labels[i - 1].clone()
                        }
                    };
                    return Err(CostError::InvalidCost {
                        x: name(r),
                        y: name(c),
                        value: v,
                    });
                }
                values.push(v);
            }
        }
        Ok(CostTable {
            symbols: labels,
            index,
            values,
        })
    }

    /// Reads the CSV format: a header row of labels (first cell ignored) and
    /// one row per label starting with that label; `-` denotes the gap.
    pub fn from_csv_reader<R: Read>(reader: R) -> Result<Self, CostError> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .from_reader(reader);
        let mut records = rdr.records();
        let header = records
            .next()
            .ok_or_else(|| CostError::Table("empty cost table".into()))??;
        let columns: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
        let mut rows: HashMap<String, Vec<f64>> = HashMap::new();
        for rec in records {
            let rec = rec?;
            let name = rec.get(0).unwrap_or_default().to_string();
            let vals = rec
                .iter()
                .skip(1)
                .map(|s| {
                    s.parse::<f64>()
                        .map_err(|_| CostError::Table(format!("row {name:?}: bad number {s:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if vals.len() != columns.len() {
                return Err(CostError::Table(format!(
                    "row {name:?} has {} entries, expected {}",
                    vals.len(),
                    columns.len()
                )));
            }
            if rows.insert(name.clone(), vals).is_some() {
                return Err(CostError::Table(format!("duplicate row {name:?}")));
            }
        }
        let is_gap = |s: &str| s == GAP_SYMBOL || s == GAP_SYMBOL_UNICODE;
        let gap_col = columns
            .iter()
            .position(|c| is_gap(c))
            .ok_or_else(|| CostError::Table("header lacks the gap column '-'".into()))?;
        let labels: Vec<String> = columns.iter().filter(|c| !is_gap(c)).cloned().collect();
        let order: Vec<usize> = std::iter::once(gap_col)
            .chain(
                columns
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !is_gap(c))
                    .map(|(n, _)| n),
            )
            .collect();
        let row_for = |name: &str| -> Result<&Vec<f64>, CostError> {
            if is_gap(name) {
                rows.iter()
                    .find(|(k, _)| is_gap(k))
                    .map(|(_, v)| v)
                    .ok_or_else(|| CostError::Table("missing gap row '-'".into()))
            } else {
                rows.get(name)
                    .ok_or_else(|| CostError::Table(format!("missing row {name:?}")))
            }
        };
        let mut matrix = Vec::with_capacity(order.len());
        for &r in &order {
            let row = row_for(&columns[r])?;
            matrix.push(order.iter().map(|&c| row[c]).collect());
        }
        if rows.len() != order.len() {
            return Err(CostError::Table(
                "row labels do not match the header".into(),
            ));
        }
        CostTable::new(labels, matrix)
    }

    pub fn from_csv_path(path: impl AsRef<Path>) -> Result<Self, CostError> {
        CostTable::from_csv_reader(std::fs::File::open(path)?)
    }

    pub fn labels(&self) -> &[String] {
        &self.symbols
    }

    fn slot(&self, x: Option<&Label>) -> Result<usize, CostError> {
        match x {
            None => Ok(0),
            Some(l) => self
                .index
                .get(l.as_str())
                .copied()
                .ok_or_else(|| CostError::UnknownLabel(l.to_string())),
        }
    }
}

impl CostFunction for CostTable {
    fn cost(&self, x: Option<&Label>, y: Option<&Label>) -> Result<f64, CostError> {
        let k = self.symbols.len() + 1;
        Ok(self.values[self.slot(x)? * k + self.slot(y)?])
    }
}

/// Which metric axiom failed, and on which symbols (`None` is the gap).
#[derive(Debug, Clone, PartialEq)]
pub enum MetricViolation {
    NonZeroSelfDistance {
        x: Option<Label>,
        value: f64,
    },
    Negative {
        x: Option<Label>,
        y: Option<Label>,
        value: f64,
    },
    Asymmetric {
        x: Option<Label>,
        y: Option<Label>,
        forward: f64,
        backward: f64,
    },
    Triangle {
        x: Option<Label>,
        y: Option<Label>,
        z: Option<Label>,
        direct: f64,
        detour: f64,
    },
    Evaluation(String),
}

fn show(x: &Option<Label>) -> String {
    x.as_ref()
        .map_or_else(|| GAP_SYMBOL.to_string(), Label::to_string)
}

impl fmt::Display for MetricViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MetricViolation::NonZeroSelfDistance { x, value } => {
                write!(f, "c({0}, {0}) = {value} != 0", show(x))
            }
            MetricViolation::Negative { x, y, value } => {
                write!(f, "c({}, {}) = {value} < 0", show(x), show(y))
            }
            MetricViolation::Asymmetric {
                x,
                y,
                forward,
                backward,
            } => {
                write!(
                    f,
                    "c({0}, {1}) = {forward} but c({1}, {0}) = {backward}",
                    show(x),
                    show(y)
                )
            }
            MetricViolation::Triangle {
                x,
                y,
                z,
                direct,
                detour,
            } => write!(
                f,
                "c({0}, {2}) = {direct} > c({0}, {1}) + c({1}, {2}) = {detour}",
                show(x),
                show(y),
                show(z)
            ),
            MetricViolation::Evaluation(msg) => f.write_str(msg),
        }
    }
}

/// Outcome of [`validate_metric`].
#[derive(Debug, Clone, PartialEq, Default)]
pub struct MetricReport {
    /// First violated axiom, if any.
    pub violation: Option<MetricViolation>,
    /// Distinct symbol pairs at distance zero. These make the cost a
    /// pseudometric, which all algorithms here still handle correctly.
    pub coincident_pairs: Vec<(Option<Label>, Option<Label>)>,
}

impl MetricReport {
    pub fn is_valid(&self) -> bool {
        self.violation.is_none()
    }
}

/// Checks self-distance, nonnegativity, symmetry and the triangle
/// inequality exhaustively over `sample`, using tolerance [`SEARCH_EPS`]
/// scaled by the magnitudes involved.
pub fn validate_metric<C: CostFunction + ?Sized>(c: &C, sample: &[Option<Label>]) -> MetricReport {
    let k = sample.len();
    let mut d = vec![0.0; k * k];
    for a in 0..k {
        for b in 0..k {
            match c.cost(sample[a].as_ref(), sample[b].as_ref()) {
                Ok(v) => d[a * k + b] = v,
                Err(e) => {
                    return MetricReport {
                        violation: Some(MetricViolation::Evaluation(e.to_string())),
                        ..Default::default()
                    }
                }
            }
        }
    }
    let tol = |v: f64| SEARCH_EPS * (1.0 + v.abs());
    let fail = |v| MetricReport {
        violation: Some(v),
        ..Default::default()
    };
    let mut coincident = Vec::new();
    for a in 0..k {
        let s = d[a * k + a];
        if s.is_nan() || s.abs() > tol(s) {
            return fail(MetricViolation::NonZeroSelfDistance {
                x: sample[a].clone(),
                value: s,
            });
        }
        for b in 0..k {
            let v = d[a * k + b];
            if v.is_nan() || v < -tol(v) {
                return fail(MetricViolation::Negative {
                    x: sample[a].clone(),
                    y: sample[b].clone(),
                    value: v,
                });
            }
            let w = d[b * k + a];
            if (v - w).abs() > tol(v.max(w)) {
                return fail(MetricViolation::Asymmetric {
                    x: sample[a].clone(),
                    y: sample[b].clone(),
                    forward: v,
                    backward: w,
                });
            }
            if a < b && sample[a] != sample[b] && v.abs() <= tol(0.0) {
                coincident.push((sample[a].clone(), sample[b].clone()));
            }
        }
    }
    for a in 0..k {
        for b in 0..k {
            for z in 0..k {
                let direct = d[a * k + z];
                let detour = d[a * k + b] + d[b * k + z];
                if direct > detour + tol(direct) {
                    return fail(MetricViolation::Triangle {
                        x: sample[a].clone(),
                        y: sample[b].clone(),
                        z: sample[z].clone(),
                        direct,
                        detour,
                    });
                }
            }
        }
    }
    MetricReport {
        violation: None,
        coincident_pairs: coincident,
    }
}

/// Costs between all nodes of two trees, with index 0 as the gap on both
/// sides: `get(i, 0)` is the deletion cost of `x_i`, `get(0, j)` the
/// insertion cost of `y_j`.
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl CostMatrix {
    pub fn new<C: CostFunction + ?Sized>(x: &Tree, y: &Tree, c: &C) -> Result<Self, CostError> {
        let (m, n) = (x.len(), y.len());
        let mut values = Vec::with_capacity((m + 1) * (n + 1));
        for i in 0..=m {
            let xi = (i > 0).then(|| x.label(i));
            for j in 0..=n {
                let yj = (j > 0).then(|| y.label(j));
                let v = c.cost(xi, yj)?;
                if !v.is_finite() || v < 0.0 {
                    return Err(CostError::InvalidCost {
                        x: xi.map_or(GAP_SYMBOL.into(), Label::to_string),
                        y: yj.map_or(GAP_SYMBOL.into(), Label::to_string),
                        value: v,
                    });
                }
                values.push(v);
            }
        }
        Ok(CostMatrix {
            rows: m,
            cols: n,
            values,
        })
    }

    /// Builds a matrix directly from a `(m+1) x (n+1)` table.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Self {
        let m = rows.len() - 1;
        let n = rows[0].len() - 1;
        assert!(rows.iter().all(|r| r.len() == n + 1), "ragged cost matrix");
        CostMatrix {
            rows: m,
            cols: n,
            values: rows.into_iter().flatten().collect(),
        }
    }

    /// Size `m` of the left tree.
    #[inline]
    pub fn m(&self) -> usize {
        self.rows
    }

    /// Size `n` of the right tree.
    #[inline]
    pub fn n(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * (self.cols + 1) + j]
    }

    #[inline]
    pub fn deletion(&self, i: usize) -> f64 {
        self.get(i, 0)
    }

    #[inline]
    pub fn insertion(&self, j: usize) -> f64 {
        self.get(0, j)
    }

    /// The same costs with the roles of the two trees exchanged.
    pub fn transposed(&self) -> CostMatrix {
        let mut values = Vec::with_capacity(self.values.len());
        for j in 0..=self.cols {
            for i in 0..=self.rows {
                values.push(self.get(i, j));
            }
        }
        CostMatrix {
            rows: self.cols,
            cols: self.rows,
            values,
        }
    }

    /// Costs for both trees wrapped in a placeholder root (new index 1 on
    /// each side). The placeholder costs like the gap, so the two
    /// placeholders match for free and the wrapped costs stay metric.
    pub fn with_placeholder_roots(&self) -> CostMatrix {
        let (m, n) = (self.rows + 1, self.cols + 1);
        let old = |i: usize| i.saturating_sub(1);
        let mut values = Vec::with_capacity((m + 1) * (n + 1));
        for i in 0..=m {
            for j in 0..=n {
                values.push(self.get(old(i), old(j)));
            }
        }
        CostMatrix {
            rows: m,
            cols: n,
            values,
        }
    }

    /// Sum of `c(x_i, y_j)` over the mapping's pairs.
    pub fn mapping_cost(&self, mapping: &Mapping) -> Result<f64, CostError> {
        let mut total = 0.0;
        for &(i, j) in mapping.pairs() {
            if i > self.rows || j > self.cols {
                return Err(CostError::PairOutOfBounds(i, j));
            }
            total += self.get(i, j);
        }
        Ok(total)
    }
}

/// Total cost of a mapping between two trees.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct MappingCost {
    pub total: f64,
}

pub fn mapping_cost<C: CostFunction + ?Sized>(
    c: &C,
    x: &Tree,
    y: &Tree,
    mapping: &Mapping,
) -> Result<MappingCost, CostError> {
    let mut total = 0.0;
    for &(i, j) in mapping.pairs() {
        if i > x.len() || j > y.len() {
            return Err(CostError::PairOutOfBounds(i, j));
        }
        let xi = (i > 0).then(|| x.label(i));
        let yj = (j > 0).then(|| y.label(j));
        total += c.cost(xi, yj)?;
    }
    Ok(MappingCost { total })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::parse_tree;

    fn lab(s: &str) -> Label {
        Label::new(s).unwrap()
    }

    #[test]
    fn unit_cost_examples() {
        let c = unit_costs();
        assert_eq!(c.substitution(&lab("a"), &lab("a")).unwrap(), 0.0);
        assert_eq!(c.substitution(&lab("a"), &lab("b")).unwrap(), 1.0);
        assert_eq!(c.deletion(&lab("a")).unwrap(), 1.0);
        assert_eq!(c.cost(None, None).unwrap(), 0.0);
    }

    #[test]
    fn numeric_examples() {
        let c = numeric_diff_costs(0.0);
        assert_eq!(c.substitution(&lab("3"), &lab("1")).unwrap(), 2.0);
        assert_eq!(c.deletion(&lab("3")).unwrap(), 3.0);
        assert_eq!(c.substitution(&lab("7"), &lab("7")).unwrap(), 0.0);
        assert!(matches!(
            c.deletion(&lab("C")),
            Err(CostError::NonNumericLabel(_))
        ));
        assert_eq!(numeric_diff_costs(1.0).insertion(&lab("3")).unwrap(), 2.0);
    }

    #[test]
    fn validate_examples() {
        let sample = vec![None, Some(lab("a")), Some(lab("b"))];
        assert!(validate_metric(&unit_costs(), &sample).is_valid());

        let digits: Vec<_> = std::iter::once(None)
            .chain((0..10).map(|d| Some(Label::from(d))))
            .collect();
        let report = validate_metric(&numeric_diff_costs(0.0), &digits);
        assert!(report.is_valid());
        // label 0 coincides with the gap under gap_value 0
        assert_eq!(report.coincident_pairs, vec![(None, Some(lab("0")))]);

        let crafted = CostTable::new_unchecked(
            vec!["a".into(), "b".into(), "c".into()],
            vec![
                vec![0.0, 3.0, 3.0, 3.0],
                vec![3.0, 0.0, 5.0, 1.0],
                vec![3.0, 5.0, 0.0, 1.0],
                vec![3.0, 1.0, 1.0, 0.0],
            ],
        )
        .unwrap();
        let sample = vec![None, Some(lab("a")), Some(lab("b")), Some(lab("c"))];
        let report = validate_metric(&crafted, &sample);
        assert!(
            matches!(report.violation, Some(MetricViolation::Triangle { direct, detour, .. }) if direct == 5.0 && detour == 2.0)
        );
    }

    #[test]
    fn validate_reports_asymmetry_and_self_distance() {
        let t = CostTable::new_unchecked(vec!["a".into()], vec![vec![0.0, 1.0], vec![2.0, 0.0]])
            .unwrap();
        assert!(matches!(
            validate_metric(&t, &[None, Some(lab("a"))]).violation,
            Some(MetricViolation::Asymmetric { .. })
        ));
        let t = CostTable::new_unchecked(vec!["a".into()], vec![vec![0.0, 1.0], vec![1.0, 0.5]])
            .unwrap();
        assert!(matches!(
            validate_metric(&t, &[None, Some(lab("a"))]).violation,
            Some(MetricViolation::NonZeroSelfDistance { .. })
        ));
        assert!(CostTable::new(vec!["a".into()], vec![vec![0.0, 1.0], vec![2.0, 0.0]]).is_err());
    }

    #[test]
    fn table_from_csv() {
        let csv = ",-,a,b\n-,0,1,1\na,1,0,0.5\nb,1,0.5,0\n";
        let t = CostTable::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(t.substitution(&lab("a"), &lab("b")).unwrap(), 0.5);
        assert_eq!(t.deletion(&lab("b")).unwrap(), 1.0);
        assert!(matches!(
            t.deletion(&lab("z")),
            Err(CostError::UnknownLabel(_))
        ));

        // gap column need not come first
        let csv = "x,a,-\na,0,2\n-,2,0\n";
        let t = CostTable::from_csv_reader(csv.as_bytes()).unwrap();
        assert_eq!(t.insertion(&lab("a")).unwrap(), 2.0);

        let broken = ",-,a,b\n-,0,1,1\na,1,0,5\nb,1,5,0\n";
        assert!(matches!(
            CostTable::from_csv_reader(broken.as_bytes()),
            Err(CostError::NotMetric(_))
        ));
        assert!(CostTable::from_csv_reader(",a\na,0\n".as_bytes()).is_err());
    }

    #[test]
    fn reference_mapping_costs() {
        let x = parse_tree("a(b(c,d),e)").unwrap();
        let y = parse_tree("a(e,d,c)").unwrap();
        let m1 = Mapping::new(vec![(1, 1), (2, 0), (3, 4), (4, 3), (5, 2)]);
        let m2 = Mapping::new(vec![(1, 1), (2, 0), (3, 4), (4, 3), (5, 0), (0, 2)]);
        assert_eq!(mapping_cost(&unit_costs(), &x, &y, &m1).unwrap().total, 1.0);
        assert_eq!(mapping_cost(&unit_costs(), &x, &y, &m2).unwrap().total, 3.0);
        let id = Mapping::new((1..=5).map(|i| (i, i)).collect());
        assert_eq!(mapping_cost(&unit_costs(), &x, &x, &id).unwrap().total, 0.0);
        let bad = Mapping::new(vec![(6, 1)]);
        assert!(mapping_cost(&unit_costs(), &x, &y, &bad).is_err());

        let cm = CostMatrix::new(&x, &y, &unit_costs()).unwrap();
        assert_eq!(cm.mapping_cost(&m1).unwrap(), 1.0);
    }

    #[test]
    fn placeholder_matrix() {
        let x = parse_tree("a(b)").unwrap();
        let y = parse_tree("c").unwrap();
        let cm = CostMatrix::new(&x, &y, &unit_costs())
            .unwrap()
            .with_placeholder_roots();
        assert_eq!((cm.m(), cm.n()), (3, 2));
        assert_eq!(cm.get(1, 1), 0.0);
        assert_eq!(cm.get(2, 2), 1.0);
        assert_eq!(cm.get(3, 0), 1.0);
        assert_eq!(cm.get(1, 2), 1.0);
    }
}
