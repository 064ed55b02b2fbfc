//! Latency benchmark harness for the space operations.
//!
//! Measures wall-clock per operation across configurable payload sizes,
//! worker counts and similarity floors, after a warmup phase. The workload
//! (payload bytes, concept choices, per-thread order) is a pure function of
//! the seed; timings naturally vary. Results are reported as rows of
//! mean/p50/p95 and can be checked against the qualitative properties that
//! survive hardware changes: write latency is (nearly) independent of
//! payload size, and read result counts shrink as the floor rises.

use std::fmt;
use std::io::Write as _;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, Barrier};
use std::thread;
use std::time::Instant;

use bytes::Bytes;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::error::SpaceError;
use crate::ontology::{ConceptId, ConceptIndex};
use crate::space::{MetaModel, SemanticQuery, Space};

/// Lease used for benchmark entries; long enough that nothing expires
/// mid-cell.
const BENCH_LEASE_MS: u64 = 600_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchOp {
    Write,
    Read,
    Take,
}

impl BenchOp {
    pub fn as_str(&self) -> &'static str {
        match self {
            BenchOp::Write => "write",
            BenchOp::Read => "read",
            BenchOp::Take => "take",
        }
    }
}

impl fmt::Display for BenchOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchOp {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "write" => Ok(BenchOp::Write),
            "read" => Ok(BenchOp::Read),
            "take" => Ok(BenchOp::Take),
            other => Err(format!("unknown bench op {other:?} (write|read|take)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub op: BenchOp,
    /// Payload sizes in bytes, one cell group per size.
    pub sizes: Vec<usize>,
    /// Concurrent worker counts, one cell per count.
    pub threads: Vec<usize>,
    /// Similarity floors for read cells; ignored (recorded as 0) for
    /// write and take.
    pub floors: Vec<f64>,
    /// Timed operations per cell, split across the workers.
    pub reps: usize,
    /// Untimed operations per cell before measuring.
    pub warmup: usize,
    pub seed: u64,
    /// Entries prepopulated before read/take cells.
    pub entries: usize,
    pub model: MetaModel,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            op: BenchOp::Write,
            sizes: vec![1024],
            threads: vec![1],
            floors: vec![0.5],
            reps: 100,
            warmup: 10,
            seed: 42,
            entries: 3430,
            model: MetaModel::Rdfs,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub op: BenchOp,
    pub size_bytes: usize,
    pub threads: usize,
    pub floor: f64,
    pub count: usize,
    pub mean_ms: f64,
    pub p50_ms: f64,
    pub p95_ms: f64,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub rows: Vec<BenchRow>,
    /// Host description and timestamp; informational, not part of the CSV.
    pub environment: String,
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid bench config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// One planned cell: everything the timed phase will do, fixed up front.
#[derive(Debug, Clone, PartialEq)]
pub struct CellPlan {
    pub op: BenchOp,
    pub size_bytes: usize,
    pub threads: usize,
    pub floor: f64,
    /// The payload every operation of this cell stores or none for
    /// read/take cells (their payloads come from prepopulation).
    pub payload: Bytes,
    /// Concept index per prepopulated entry.
    pub prepopulate: Vec<usize>,
    /// Concept index per warmup operation.
    pub warmup_ops: Vec<usize>,
    /// Concept index per timed operation, per worker.
    pub per_thread: Vec<Vec<usize>>,
}

/// The full deterministic workload derived from a config and an index.
#[derive(Debug, Clone, PartialEq)]
pub struct WorkloadPlan {
    pub concepts: Vec<ConceptId>,
    pub cells: Vec<CellPlan>,
}

fn validate(cfg: &BenchConfig) -> Result<(), BenchError> {
    let fail = |msg: String| Err(BenchError::InvalidConfig(msg));
    if cfg.reps == 0 {
        return fail("reps must be >= 1".into());
    }
    if cfg.sizes.is_empty() || cfg.sizes.contains(&0) {
        return fail("sizes must be non-empty, each >= 1 byte".into());
    }
    if cfg.threads.is_empty() || cfg.threads.contains(&0) {
        return fail("threads must be non-empty, each >= 1".into());
    }
    if cfg.op == BenchOp::Read {
        if cfg.floors.is_empty() {
            return fail("read bench needs at least one floor".into());
        }
        if cfg.floors.iter().any(|f| !(0.0..=1.0).contains(f)) {
            return fail("floors must lie in [0, 1]".into());
        }
    }
    if cfg.op != BenchOp::Write && cfg.entries == 0 {
        return fail("read/take bench needs entries >= 1".into());
    }
    Ok(())
}

/// Expands a config into its deterministic workload.
pub fn plan_workload(cfg: &BenchConfig, index: &ConceptIndex) -> Result<WorkloadPlan, BenchError> {
    validate(cfg)?;
    if index.is_empty() {
        return Err(BenchError::InvalidConfig("index has no concepts".into()));
    }
    let concepts: Vec<ConceptId> = index.concepts().cloned().collect();
    let n = concepts.len();
    let floors: Vec<f64> = match cfg.op {
        BenchOp::Read => cfg.floors.clone(),
        _ => vec![0.0],
    };

    let mut cells = Vec::new();
    for (size_idx, &size) in cfg.sizes.iter().enumerate() {
        for &threads in &cfg.threads {
            for &floor in &floors {
                let cell_idx = cells.len() as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(
                    cfg.seed ^ (cell_idx << 20) ^ ((size_idx as u64) << 40),
                );
                let mut payload = vec![0u8; size];
                rng.fill(payload.as_mut_slice());

                let prepopulate = if cfg.op == BenchOp::Write {
                    Vec::new()
                } else {
                    (0..cfg.entries).map(|i| i % n).collect()
                };
                let warmup_ops: Vec<usize> = (0..cfg.warmup).map(|_| rng.gen_range(0..n)).collect();

                let per_thread = match cfg.op {
                    BenchOp::Take => {
                        // Disjoint concept draws per worker: a shuffled
                        // round-robin list split contiguously.
                        let mut order: Vec<usize> = (0..cfg.reps).map(|i| i % n).collect();
                        order.shuffle(&mut rng);
                        split_shares(&order, threads, cfg.reps)
                    }
                    _ => {
                        let mut per_thread = Vec::with_capacity(threads);
                        for t in 0..threads {
                            let mut trng =
                                ChaCha8Rng::seed_from_u64(cfg.seed ^ (cell_idx << 20) ^ (t as u64));
                            let share = share_of(cfg.reps, threads, t);
                            per_thread.push((0..share).map(|_| trng.gen_range(0..n)).collect());
                        }
                        per_thread
                    }
                };

                cells.push(CellPlan {
                    op: cfg.op,
                    size_bytes: size,
                    threads,
                    floor,
                    payload: Bytes::from(payload),
                    prepopulate,
                    warmup_ops,
                    per_thread,
                });
            }
        }
    }
    Ok(WorkloadPlan { concepts, cells })
}

fn share_of(total: usize, workers: usize, worker: usize) -> usize {
    total / workers + usize::from(worker < total % workers)
}

fn split_shares(order: &[usize], workers: usize, total: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(workers);
    let mut cursor = 0;
    for t in 0..workers {
        let share = share_of(total, workers, t);
        out.push(order[cursor..cursor + share].to_vec());
        cursor += share;
    }
    out
}

/// Runs the benchmark against `space`, which must already have an index
/// loaded for the configured model. Each cell clears the model's entries,
/// prepopulates (read/take), warms up, and times its operations from the
/// configured number of workers. The last cell's population is left in
/// place so [`check_properties`] can inspect the frozen end state.
pub fn run_bench(cfg: &BenchConfig, space: &Arc<Space>) -> Result<BenchReport, BenchError> {
    let index = space
        .index(cfg.model)
        .ok_or(SpaceError::ModelNotLoaded(cfg.model))?;
    let plan = plan_workload(cfg, &index)?;
    let concepts = &plan.concepts;

    let mut rows = Vec::with_capacity(plan.cells.len());
    for cell in &plan.cells {
        for concept in concepts {
            space.take(cfg.model, concept)?;
        }
        for &concept_idx in &cell.prepopulate {
            space.write(
                cell.payload.clone(),
                cfg.model,
                &concepts[concept_idx],
                BENCH_LEASE_MS,
            )?;
        }
        for &concept_idx in &cell.warmup_ops {
            run_op(cell, space, cfg.model, &concepts[concept_idx])?;
        }

        let barrier = Barrier::new(cell.threads);
        let mut latencies: Vec<f64> = Vec::with_capacity(cell.per_thread.len());
        let result: Result<Vec<Vec<f64>>, BenchError> = thread::scope(|scope| {
            let handles: Vec<_> = cell
                .per_thread
                .iter()
                .map(|ops| {
                    let barrier = &barrier;
                    let space = Arc::clone(space);
                    scope.spawn(move || -> Result<Vec<f64>, BenchError> {
                        let mut times = Vec::with_capacity(ops.len());
                        barrier.wait();
                        for &concept_idx in ops {
                            let start = Instant::now();
                            run_op(cell, &space, cfg.model, &concepts[concept_idx])?;
                            times.push(start.elapsed().as_secs_f64() * 1e3);
                        }
                        Ok(times)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("bench worker panicked"))
                .collect()
        });
        for thread_times in result? {
            latencies.extend(thread_times);
        }

        latencies.sort_by(|a, b| a.partial_cmp(b).expect("finite latencies"));
        rows.push(BenchRow {
            op: cell.op,
            size_bytes: cell.size_bytes,
            threads: cell.threads,
            floor: cell.floor,
            count: latencies.len(),
            mean_ms: latencies.iter().sum::<f64>() / latencies.len().max(1) as f64,
            p50_ms: percentile(&latencies, 0.50),
            p95_ms: percentile(&latencies, 0.95),
        });
    }

    Ok(BenchReport {
        rows,
        environment: environment_note(),
    })
}

fn run_op(
    cell: &CellPlan,
    space: &Space,
    model: MetaModel,
    concept: &ConceptId,
) -> Result<(), BenchError> {
    match cell.op {
        BenchOp::Write => {
            space.write(cell.payload.clone(), model, concept, BENCH_LEASE_MS)?;
        }
        BenchOp::Read => {
            space.read(&SemanticQuery {
                model,
                concept: concept.clone(),
                floor: cell.floor,
            })?;
        }
        BenchOp::Take => {
            space.take(model, concept)?;
        }
    }
    Ok(())
}

/// Nearest-rank percentile over an ascending slice.
fn percentile(sorted: &[f64], q: f64) -> f64 {
    if sorted.is_empty() {
        return 0.0;
    }
    let idx = ((sorted.len() - 1) as f64 * q).round() as usize;
    sorted[idx]
}

fn environment_note() -> String {
    let cpus = thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1);
    format!(
        "{} {} ({} cpus), epoch-ms {}",
        std::env::consts::OS,
        std::env::consts::ARCH,
        cpus,
        Space::now_ms()
    )
}

/// Verdict of one qualitative property check.
#[derive(Debug, Clone)]
pub struct PropertyVerdict {
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

impl fmt::Display for PropertyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} ({})",
            self.name,
            if self.pass { "PASS" } else { "FAIL" },
            self.detail
        )
    }
}

/// Allowed p50 growth from the smallest to the largest write payload.
/// Generous against scheduler noise while still catching O(size) writes.
pub const SIZE_INDEPENDENCE_FACTOR: f64 = 5.0;

/// Checks the hardware-independent properties of a finished run:
/// (a) write latency independent of payload size, (b) read result counts
/// non-increasing in the floor, (c) space bookkeeping reconciles.
pub fn check_properties(
    report: &BenchReport,
    space: &Space,
    model: MetaModel,
) -> Vec<PropertyVerdict> {
    vec![
        check_size_independence(report),
        check_floor_monotonicity(report, space, model),
        check_bookkeeping(space),
    ]
}

fn check_size_independence(report: &BenchReport) -> PropertyVerdict {
    let name = "write-size-independence";
    let mut thread_groups: Vec<usize> = report
        .rows
        .iter()
        .filter(|r| r.op == BenchOp::Write)
        .map(|r| r.threads)
        .collect();
    thread_groups.sort_unstable();
    thread_groups.dedup();

    let mut checked = 0;
    for threads in thread_groups {
        let mut group: Vec<&BenchRow> = report
            .rows
            .iter()
            .filter(|r| r.op == BenchOp::Write && r.threads == threads)
            .collect();
        group.sort_by_key(|r| r.size_bytes);
        if group.len() < 2 {
            continue;
        }
        checked += 1;
        let smallest = group.first().expect("nonempty group");
        let largest = group.last().expect("nonempty group");
        let ratio = largest.p50_ms / smallest.p50_ms.max(f64::MIN_POSITIVE);
        if ratio > SIZE_INDEPENDENCE_FACTOR {
            return PropertyVerdict {
                name,
                pass: false,
                detail: format!(
                    "p50 grew {ratio:.2}x from {}B to {}B at {} threads (limit {SIZE_INDEPENDENCE_FACTOR}x)",
                    smallest.size_bytes, largest.size_bytes, threads
                ),
            };
        }
    }
    if checked == 0 {
        return PropertyVerdict {
            name,
            pass: true,
            detail: "not applicable: fewer than two write payload sizes".into(),
        };
    }
    PropertyVerdict {
        name,
        pass: true,
        detail: format!("p50 ratio within {SIZE_INDEPENDENCE_FACTOR}x across {checked} group(s)"),
    }
}

fn check_floor_monotonicity(
    report: &BenchReport,
    space: &Space,
    model: MetaModel,
) -> PropertyVerdict {
    let name = "floor-count-monotonicity";
    let Some(index) = space.index(model) else {
        return PropertyVerdict {
            name,
            pass: false,
            detail: format!("no index loaded for {model}"),
        };
    };
    let mut floors: Vec<f64> = report
        .rows
        .iter()
        .filter(|r| r.op == BenchOp::Read)
        .map(|r| r.floor)
        .collect();
    if floors.is_empty() {
        floors = (1..=10).map(|i| i as f64 / 10.0).collect();
    }
    floors.sort_by(|a, b| a.partial_cmp(b).expect("finite floors"));
    floors.dedup();

    let probes: Vec<ConceptId> = index.concepts().take(64).cloned().collect();
    for probe in &probes {
        let mut previous: Option<(f64, usize)> = None;
        for &floor in &floors {
            let count = match space.read(&SemanticQuery {
                model,
                concept: probe.clone(),
                floor,
            }) {
                Ok(results) => results.len(),
                Err(err) => {
                    return PropertyVerdict {
                        name,
                        pass: false,
                        detail: format!("read failed for {probe} at floor {floor}: {err}"),
                    }
                }
            };
            if let Some((prev_floor, prev_count)) = previous {
                if count > prev_count {
                    return PropertyVerdict {
                        name,
                        pass: false,
                        detail: format!(
                            "{probe}: count rose from {prev_count} at floor {prev_floor} to {count} at floor {floor}"
                        ),
                    };
                }
            }
            previous = Some((floor, count));
        }
    }
    PropertyVerdict {
        name,
        pass: true,
        detail: format!(
            "counts non-increasing over {} floors for {} probe concept(s)",
            floors.len(),
            probes.len()
        ),
    }
}

fn check_bookkeeping(space: &Space) -> PropertyVerdict {
    let name = "space-bookkeeping";
    let stats = space.stats();
    let expected = stats.total_writes - stats.total_takes - stats.expired_total;
    if stats.live_entries == expected {
        PropertyVerdict {
            name,
            pass: true,
            detail: format!(
                "{} writes - {} taken - {} expired == {} live",
                stats.total_writes, stats.total_takes, stats.expired_total, stats.live_entries
            ),
        }
    } else {
        PropertyVerdict {
            name,
            pass: false,
            detail: format!(
                "{} writes - {} taken - {} expired != {} live",
                stats.total_writes, stats.total_takes, stats.expired_total, stats.live_entries
            ),
        }
    }
}

const CSV_HEADER: &str = "op,size_bytes,threads,floor,count,mean_ms,p50_ms,p95_ms";

/// The report as CSV: pinned header, one row per cell, `.`-decimal floats
/// whose text round-trips exactly.
pub fn csv_string(report: &BenchReport) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            row.op,
            row.size_bytes,
            row.threads,
            row.floor,
            row.count,
            row.mean_ms,
            row.p50_ms,
            row.p95_ms
        ));
    }
    out
}

/// Writes [`csv_string`] to `path`.
pub fn write_csv(report: &BenchReport, path: &Path) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(csv_string(report).as_bytes())?;
    file.flush()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ontology::{build_concept_index, parse_pairs};
    use crate::sample::SWING_TAXONOMY_PAIRS;
    use crate::space::SpaceConfig;

    fn loaded_space() -> Arc<Space> {
        let space = Arc::new(Space::new(SpaceConfig::default()));
        let index = build_concept_index(parse_pairs(SWING_TAXONOMY_PAIRS).unwrap(), &[]).unwrap();
        space.load_model(MetaModel::Rdfs, index);
        space
    }

    fn small_cfg(op: BenchOp) -> BenchConfig {
        BenchConfig {
            op,
            sizes: vec![64, 256],
            threads: vec![1, 2],
            floors: vec![0.3, 0.7],
            reps: 10,
            warmup: 2,
            seed: 7,
            entries: 40,
            model: MetaModel::Rdfs,
        }
    }

    #[test]
    fn workload_is_deterministic() {
        let space = loaded_space();
        let index = space.index(MetaModel::Rdfs).unwrap();
        for op in [BenchOp::Write, BenchOp::Read, BenchOp::Take] {
            let cfg = small_cfg(op);
            let a = plan_workload(&cfg, &index).unwrap();
            let b = plan_workload(&cfg, &index).unwrap();
            assert_eq!(a, b, "same seed, same plan for {op}");
        }
        let mut other = small_cfg(BenchOp::Write);
        other.seed = 8;
        let a = plan_workload(&small_cfg(BenchOp::Write), &index).unwrap();
        let c = plan_workload(&other, &index).unwrap();
        assert_ne!(a, c, "different seed, different plan");
    }

    #[test]
    fn config_validation() {
        let space = loaded_space();
        let index = space.index(MetaModel::Rdfs).unwrap();
        let mut cfg = small_cfg(BenchOp::Write);
        cfg.reps = 0;
        assert!(matches!(
            plan_workload(&cfg, &index),
            Err(BenchError::InvalidConfig(_))
        ));
        let mut cfg = small_cfg(BenchOp::Read);
        cfg.floors = vec![1.5];
        assert!(matches!(
            plan_workload(&cfg, &index),
            Err(BenchError::InvalidConfig(_))
        ));
    }

    #[test]
    fn write_bench_rowcount_and_reps() {
        let space = loaded_space();
        let cfg = BenchConfig {
            sizes: vec![1024, 4096],
            threads: vec![1],
            reps: 20,
            warmup: 2,
            ..small_cfg(BenchOp::Write)
        };
        let report = run_bench(&cfg, &space).unwrap();
        assert_eq!(report.rows.len(), 2);
        for row in &report.rows {
            assert_eq!(row.count, 20);
            assert!(row.p50_ms >= 0.0 && row.p95_ms >= row.p50_ms);
        }
        let verdicts = check_properties(&report, &space, MetaModel::Rdfs);
        assert!(verdicts.iter().all(|v| v.pass), "{verdicts:?}");
    }

    #[test]
    fn take_bench_total_equals_prepopulation() {
        let space = loaded_space();
        let cfg = BenchConfig {
            op: BenchOp::Take,
            sizes: vec![64],
            threads: vec![4],
            reps: 21, // one take per swing concept
            warmup: 0,
            entries: 84,
            ..small_cfg(BenchOp::Take)
        };
        let before = space.stats().total_takes;
        let report = run_bench(&cfg, &space).unwrap();
        assert_eq!(report.rows.len(), 1);
        // Every prepopulated entry was removed by exactly one take
        // (timed takes cover all concepts once; the drain finds nothing).
        let taken = space.stats().total_takes - before;
        assert_eq!(taken, 84);
        assert_eq!(space.stats().live_entries, 0);
    }

    #[test]
    fn read_bench_runs_all_floor_cells() {
        let space = loaded_space();
        let cfg = BenchConfig {
            sizes: vec![128],
            threads: vec![2],
            floors: vec![0.2, 0.5, 0.9],
            reps: 12,
            warmup: 1,
            entries: 63,
            ..small_cfg(BenchOp::Read)
        };
        let report = run_bench(&cfg, &space).unwrap();
        assert_eq!(report.rows.len(), 3);
        let verdicts = check_properties(&report, &space, MetaModel::Rdfs);
        assert!(verdicts.iter().all(|v| v.pass), "{verdicts:?}");
    }

    #[test]
    fn csv_empty_report_is_header_only() {
        let report = BenchReport {
            rows: vec![],
            environment: String::new(),
        };
        assert_eq!(csv_string(&report), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn csv_round_trips_exactly() {
        let report = BenchReport {
            rows: vec![
                BenchRow {
                    op: BenchOp::Write,
                    size_bytes: 1024,
                    threads: 4,
                    floor: 0.0,
                    count: 100,
                    mean_ms: 0.12345678901234567,
                    p50_ms: 0.1,
                    p95_ms: 0.30000000000000004,
                },
                BenchRow {
                    op: BenchOp::Read,
                    size_bytes: 64,
                    threads: 1,
                    floor: 0.7,
                    count: 10,
                    mean_ms: 1.5,
                    p50_ms: 1.25,
                    p95_ms: 2.75,
                },
            ],
            environment: String::new(),
        };
        let text = csv_string(&report);
        let lines: Vec<&str> = text.trim_end().lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], CSV_HEADER);
        let parsed: Vec<BenchRow> = lines[1..]
            .iter()
            .map(|line| {
                let cols: Vec<&str> = line.split(',').collect();
                BenchRow {
                    op: cols[0].parse().unwrap(),
                    size_bytes: cols[1].parse().unwrap(),
                    threads: cols[2].parse().unwrap(),
                    floor: cols[3].parse().unwrap(),
                    count: cols[4].parse().unwrap(),
                    mean_ms: cols[5].parse().unwrap(),
                    p50_ms: cols[6].parse().unwrap(),
                    p95_ms: cols[7].parse().unwrap(),
                }
            })
            .collect();
        assert_eq!(parsed, report.rows);
    }

    #[test]
    fn write_csv_creates_file() {
        let report = BenchReport {
            rows: vec![],
            environment: String::new(),
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("report.csv");
        write_csv(&report, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), csv_string(&report));
    }

    // Negative control: a synthetic report with latency growing linearly in
    // payload size must fail the size-independence check.
    #[test]
    fn size_independence_negative_control() {
        let mk = |size: usize, p50: f64| BenchRow {
            op: BenchOp::Write,
            size_bytes: size,
            threads: 1,
            floor: 0.0,
            count: 10,
            mean_ms: p50,
            p50_ms: p50,
            p95_ms: p50,
        };
        let report = BenchReport {
            rows: vec![mk(1024, 0.1), mk(8 * 1024 * 1024, 0.1 * 8192.0)],
            environment: String::new(),
        };
        let verdict = check_size_independence(&report);
        assert!(!verdict.pass);

        let flat = BenchReport {
            rows: vec![mk(1024, 0.1), mk(8 * 1024 * 1024, 0.12)],
            environment: String::new(),
        };
        assert!(check_size_independence(&flat).pass);
    }
}
