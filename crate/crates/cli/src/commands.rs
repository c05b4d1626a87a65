use std::collections::BTreeSet;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{anyhow, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use uted_core::baselines::{oracle_distance, oracle_distance_rooted};
use uted_core::chem::{
    load_dataset, write_dataset, DatasetError, DatasetFormat, LabeledDataset, RecordKind,
};
use uted_core::eval::synth::random_tree;
use uted_core::eval::{
    benchmark, knn_crossval, pairwise_distances, Algorithm, BenchmarkSummary, Budgets, EvalError,
    PairwiseConfig,
};
use uted_core::{
    astar_uted_forest_entry, astar_uted_with, cuted_constrained, numeric_diff_costs, parse_tree,
    ted_ordered, unit_costs, validate_metric, CostError, CostFunction, CostTable, Label,
    MappingClass, SearchOptions,
};

use crate::{
    BenchArgs, ConvertArgs, DatasetArgs, DistArgs, KnnArgs, SearchArgs, SelfcheckArgs, SourceFormat,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Code {
    Success = 0,
    Usage = 1,
    Compute = 2,
    Io = 3,
}

impl From<Code> for ExitCode {
    fn from(code: Code) -> Self {
        ExitCode::from(code as u8)
    }
}

#[derive(Debug)]
pub struct Failure {
    pub code: Code,
    pub error: anyhow::Error,
}

type CmdResult = Result<Code, Failure>;

trait OrExit<T> {
    fn or_exit(self, code: Code) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> OrExit<T> for Result<T, E> {
    fn or_exit(self, code: Code) -> Result<T, Failure> {
        self.map_err(|e| Failure {
            code,
            error: e.into(),
        })
    }
}

fn fail<T>(code: Code, error: anyhow::Error) -> Result<T, Failure> {
    Err(Failure { code, error })
}

/// A cost function with its display name and a sample alphabet.
struct Costs {
    function: Box<dyn CostFunction>,
    name: String,
    sample: Vec<String>,
}

fn load_costs(source: &str, gap_value: f64) -> Result<Costs, Failure> {
    match source {
        "unit" => Ok(Costs {
            function: Box::new(unit_costs()),
            name: "unit".into(),
            sample: ["a", "b", "c", "d"].map(String::from).to_vec(),
        }),
        "numeric" => {
            if !gap_value.is_finite() {
                return fail(Code::Usage, anyhow!("--gap-value must be finite"));
            }
            let name = if gap_value == 0.0 {
                "numeric".to_string()
            } else {
                format!("numeric{gap_value}")
            };
            Ok(Costs {
                function: Box::new(numeric_diff_costs(gap_value)),
                name,
                sample: (0..10).map(|v| v.to_string()).collect(),
            })
        }
        path => {
            let table = match CostTable::from_csv_path(path) {
                Ok(table) => table,
                Err(e @ CostError::NotMetric(_)) => {
                    return fail(
                        Code::Usage,
                        anyhow!(e).context(format!("cost table {path} is not a metric")),
                    )
                }
                Err(e) => {
                    return fail(
                        Code::Io,
                        anyhow!(e).context(format!("cannot load cost table {path}")),
                    )
                }
            };
            let name = Path::new(path)
                .file_stem()
                .map_or_else(|| "table".into(), |s| s.to_string_lossy().into_owned());
            let sample = table.labels().to_vec();
            Ok(Costs {
                function: Box::new(table),
                name,
                sample,
            })
        }
    }
}

fn load(args: &DatasetArgs) -> Result<LabeledDataset, Failure> {
    load_dataset(&args.dataset, args.scheme).map_err(dataset_failure)
}

fn dataset_failure(e: DatasetError) -> Failure {
    Failure {
        code: Code::Io,
        error: e.into(),
    }
}

/// Rejects datasets whose labels the cost function cannot price.
fn check_labels(ds: &LabeledDataset, costs: &Costs) -> Result<(), Failure> {
    let labels: BTreeSet<&Label> = ds.records.iter().flat_map(|r| r.tree.labels()).collect();
    for label in labels {
        if let Err(e) = costs.function.cost(Some(label), None) {
            return fail(
                Code::Usage,
                anyhow!(e).context(format!(
                    "costs {:?} cannot be applied to this dataset",
                    costs.name
                )),
            );
        }
    }
    Ok(())
}

fn budgets(polls: Option<u64>, ms: Option<u64>) -> Budgets {
    Budgets {
        max_polls: polls,
        max_time: ms.map(Duration::from_millis),
    }
}

fn pairwise_config(search: &SearchArgs, costs: &Costs) -> Result<PairwiseConfig, Failure> {
    if search.forced_roots && !matches!(search.algorithm, Algorithm::Uted | Algorithm::Oracle) {
        return fail(
            Code::Usage,
            anyhow!("--forced-roots applies to uted and oracle only"),
        );
    }
    let mut config = PairwiseConfig::new(search.algorithm, search.heuristic, costs.name.clone());
    config.workers = search.workers;
    config.budgets = budgets(search.budget_polls, search.budget_ms);
    config.forced_roots = search.forced_roots;
    Ok(config)
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path)
        .map(BufWriter::new)
        .with_context(|| format!("cannot create {}", path.display()))
        .or_exit(Code::Io)
}

/// Runs `write` against the file at `path`, or stdout when absent.
fn emit<F>(path: Option<&Path>, write: F) -> Result<(), Failure>
where
    F: FnOnce(&mut dyn Write) -> Result<(), EvalError>,
{
    let result = match path {
        Some(p) => {
            let mut file = create(p)?;
            write(&mut file).and_then(|()| file.flush().map_err(EvalError::from))
        }
        None => write(&mut io::stdout().lock()),
    };
    result.map_err(|e| Failure {
        code: Code::Io,
        error: anyhow!(e).context(match path {
            Some(p) => format!("cannot write {}", p.display()),
            None => "cannot write to stdout".to_string(),
        }),
    })
}

pub fn convert(args: ConvertArgs) -> CmdResult {
    let kind = match args.from {
        SourceFormat::Smiles => RecordKind::Smiles,
        SourceFormat::Tree => RecordKind::Tree,
    };
    let ds = load_dataset(&args.input, DatasetFormat::new(args.scheme).only(kind))
        .map_err(dataset_failure)?;
    if ds.discarded > 0 {
        eprintln!(
            "warning: {} stereo/isotope/charge/class annotations discarded",
            ds.discarded
        );
    }
    emit(args.output.as_deref(), |w| {
        write_dataset(w, &ds).map_err(EvalError::from)
    })?;
    log::info!("converted {} records", ds.len());
    Ok(Code::Success)
}

pub fn dist(args: DistArgs) -> CmdResult {
    let costs = load_costs(&args.cost.costs, args.cost.gap_value)?;
    let config = pairwise_config(&args.search, &costs)?;
    let ds = load(&args.data)?;
    check_labels(&ds, &costs)?;
    let matrix = pairwise_distances(&ds, costs.function.as_ref(), &config);
    emit(args.output.as_deref(), |w| matrix.write_csv(w))?;
    if let Some(stats) = &args.stats {
        emit(Some(stats), |w| matrix.write_stats_csv(w))?;
    }
    match matrix.failure_count() {
        0 => Ok(Code::Success),
        failed => fail(
            Code::Compute,
            anyhow!(
                "{failed} of {} pairs failed; their matrix entries are empty",
                matrix.pairs.len()
            ),
        ),
    }
}

pub fn bench(args: BenchArgs) -> CmdResult {
    let cost_sets = args
        .costs
        .iter()
        .map(|source| load_costs(source, args.gap_value))
        .collect::<Result<Vec<_>, _>>()?;
    let ds = load(&args.data)?;
    for costs in &cost_sets {
        check_labels(&ds, costs)?;
    }
    let mut configs: Vec<(PairwiseConfig, &dyn CostFunction)> = Vec::new();
    let mut seen = BTreeSet::new();
    for costs in &cost_sets {
        for &algorithm in &args.algorithm {
            for &heuristic in &args.heuristic {
                let mut config = PairwiseConfig::new(algorithm, heuristic, costs.name.clone());
                config.workers = args.workers;
                config.budgets = budgets(args.budget_polls, args.budget_ms);
                if seen.insert(config.label()) {
                    configs.push((config, costs.function.as_ref()));
                }
            }
        }
    }
    fs::create_dir_all(&args.out_dir)
        .with_context(|| format!("cannot create {}", args.out_dir.display()))
        .or_exit(Code::Io)?;
    let summaries = benchmark(&ds, &configs);
    let mut stdout = io::stdout().lock();
    let _ = writeln!(
        stdout,
        "{:<28} {:>8} {:>9} {:>14} {:>12} {:>8}",
        "config", "pairs", "failures", "mean_micros", "mean_polls", "slope"
    );
    for s in &summaries {
        write_summary_files(&args.out_dir, s)?;
        let slope = s
            .fit
            .map_or_else(|| "-".to_string(), |f| format!("{:.3}", f.slope));
        let _ = writeln!(
            stdout,
            "{:<28} {:>8} {:>9} {:>14.1} {:>12.1} {:>8}",
            s.label,
            s.rows.len(),
            s.failures,
            s.mean_micros,
            s.mean_polls,
            slope
        );
    }
    let failed: usize = summaries.iter().map(|s| s.failures).sum();
    if failed > 0 {
        return fail(
            Code::Compute,
            anyhow!("{failed} pairs failed across all configurations"),
        );
    }
    Ok(Code::Success)
}

fn write_summary_files(dir: &Path, s: &BenchmarkSummary) -> Result<(), Failure> {
    emit(Some(&dir.join(format!("{}.summary.csv", s.label))), |w| {
        s.write_summary_csv(w)
    })?;
    emit(Some(&dir.join(format!("{}.pairs.csv", s.label))), |w| {
        s.write_rows_csv(w)
    })?;
    emit(Some(&dir.join(format!("{}.plot.csv", s.label))), |w| {
        s.write_plot_csv(w)
    })
}

pub fn knn(args: KnnArgs) -> CmdResult {
    let costs = load_costs(&args.cost.costs, args.cost.gap_value)?;
    let config = pairwise_config(&args.search, &costs)?;
    let ds = load(&args.data)?;
    check_labels(&ds, &costs)?;
    let n = ds.len();
    if args.folds == 0 || args.folds > n {
        return fail(
            Code::Usage,
            anyhow!("--folds {} is invalid for {n} records", args.folds),
        );
    }
    let train = n - n.div_ceil(args.folds);
    if args.k == 0 || args.k > train {
        return fail(
            Code::Usage,
            anyhow!(
                "--k {} is invalid: the smallest training set has {train} records",
                args.k
            ),
        );
    }
    let matrix = pairwise_distances(&ds, costs.function.as_ref(), &config);
    let report = match knn_crossval(&ds, &matrix, args.k, args.folds, args.seed) {
        Ok(report) => report,
        Err(e @ EvalError::PoisonedPair { .. }) => return fail(Code::Compute, anyhow!(e)),
        Err(e) => return fail(Code::Usage, anyhow!(e)),
    };
    emit(args.output.as_deref(), |w| report.write_csv(w))?;
    if args.output.is_some() {
        println!("{report}");
    } else {
        eprintln!("{report}");
    }
    Ok(Code::Success)
}

pub fn selfcheck(args: SelfcheckArgs) -> CmdResult {
    let mut failures = 0;
    let mut report = |name: &str, outcome: Result<String, String>| match outcome {
        Ok(detail) => println!("PASS {name}: {detail}"),
        Err(detail) => {
            failures += 1;
            println!("FAIL {name}: {detail}");
        }
    };

    report("reference", reference_check(&args));

    let costs = match load_costs(&args.cost.costs, args.cost.gap_value) {
        Ok(costs) => {
            report("metric", metric_check(&costs));
            Some(costs)
        }
        Err(f) if f.code == Code::Usage => {
            report("metric", Err(format!("{:#}", f.error)));
            None
        }
        Err(f) => return Err(f),
    };
    match costs {
        Some(costs) => report("oracle", oracle_sweep(&args, &costs)),
        None => report("oracle", Err("skipped: cost function unusable".into())),
    }
    if failures == 0 {
        Ok(Code::Success)
    } else {
        println!("{failures} check(s) failed");
        Ok(Code::Compute)
    }
}

fn reference_check(args: &SelfcheckArgs) -> Result<String, String> {
    let x = parse_tree("a(b(c,d),e)").expect("literal");
    let y = parse_tree("a(e,d,c)").expect("literal");
    let c = unit_costs();
    let uted = astar_uted_with(&x, &y, &c, &SearchOptions::new(args.heuristic))
        .map_err(|e| e.to_string())?
        .distance;
    let cuted = cuted_constrained(&x, &y, &c).map_err(|e| e.to_string())?;
    let ted = ted_ordered(&x, &y, &c).map_err(|e| e.to_string())?;
    let detail = format!("uted={uted} cuted={cuted} ted={ted}");
    if (uted, cuted, ted) == (1.0, 3.0, 3.0) {
        Ok(detail)
    } else {
        Err(format!("{detail}, expected uted=1 cuted=3 ted=3"))
    }
}

fn metric_check(costs: &Costs) -> Result<String, String> {
    let sample: Vec<Option<Label>> = std::iter::once(None)
        .chain(
            costs
                .sample
                .iter()
                .filter_map(|s| Label::new(s.clone()).ok())
                .map(Some),
        )
        .collect();
    let result = validate_metric(costs.function.as_ref(), &sample);
    match result.violation {
        Some(v) => Err(v.to_string()),
        None if result.coincident_pairs.is_empty() => Ok(format!(
            "{} is a metric on {} symbols",
            costs.name,
            sample.len()
        )),
        None => Ok(format!(
            "{} is a pseudometric on {} symbols ({} coincident pairs)",
            costs.name,
            sample.len(),
            result.coincident_pairs.len()
        )),
    }
}

fn oracle_sweep(args: &SelfcheckArgs, costs: &Costs) -> Result<String, String> {
    if costs.sample.is_empty() {
        return Err("cost table has no labels".into());
    }
    let alphabet: Vec<&str> = costs.sample.iter().map(String::as_str).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let options = SearchOptions::new(args.heuristic);
    let c = costs.function.as_ref();
    for pair in 0..args.pairs {
        let (m, n) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let x = random_tree(&mut rng, m, &alphabet);
        let y = random_tree(&mut rng, n, &alphabet);
        let free = astar_uted_forest_entry(&x, &y, c, &options)
            .map_err(|e| e.to_string())?
            .distance;
        let free_oracle =
            oracle_distance(&x, &y, c, MappingClass::Unordered).map_err(|e| e.to_string())?;
        let rooted = astar_uted_with(&x, &y, c, &options)
            .map_err(|e| e.to_string())?
            .distance;
        let rooted_oracle = oracle_distance_rooted(&x, &y, c, MappingClass::Unordered)
            .map_err(|e| e.to_string())?;
        if (free - free_oracle).abs() > 1e-9 || (rooted - rooted_oracle).abs() > 1e-9 {
            return Err(format!("pair {pair} ({x} / {y}): A* {free}/{rooted} vs oracle {free_oracle}/{rooted_oracle}"));
        }
    }
    Ok(format!(
        "{} pairs agree with the oracle ({}, {})",
        args.pairs, args.heuristic, costs.name
    ))
}
