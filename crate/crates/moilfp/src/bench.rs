//! Benchmark aggregation: solve a corpus, group per (n, m, k) and report the
//! usual search-effort columns as a TSV table.

use crate::model::Instance;
use crate::search::{solve, Completion, SolveOptions, SolveReport};
use std::collections::BTreeMap;
use std::sync::Mutex;

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub mean_secs: f64,
    pub min_secs: f64,
    pub max_secs: f64,
    pub mean_eff: f64,
    pub min_eff: u64,
    pub max_eff: u64,
    pub mean_cn: f64,
    pub mean_sn_cn_pct: f64,
    pub instances: usize,
    pub failures: usize,
}

#[derive(Debug)]
pub struct BenchOutcome {
    pub rows: Vec<BenchRow>,
    /// (instance name, error text) for solves that failed or were cut off.
    pub failures: Vec<(String, String)>,
}

struct Sample {
    secs: f64,
    eff: u64,
    cn: u64,
    sn: u64,
}

fn per_instance(report: &SolveReport) -> Sample {
    Sample {
        secs: report.wall_time.as_secs_f64(),
        eff: report.efficient.len() as u64,
        cn: report.created_nodes,
        sn: report.saturated_nodes,
    }
}

/// Solves every instance (optionally across `jobs` threads) and aggregates
/// per-(n, m, k) rows. Aggregation order is deterministic: instances are
/// sorted by name inside each group before reduction.
pub fn run_bench(instances: &[Instance], opts: &SolveOptions, jobs: usize) -> BenchOutcome {
    let results: Mutex<Vec<(usize, Result<SolveReport, String>)>> = Mutex::new(Vec::new());
    let jobs = jobs.max(1);
    let next = std::sync::atomic::AtomicUsize::new(0);
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(instances.len().max(1)) {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                if i >= instances.len() {
                    break;
                }
                let res = match solve(&instances[i], opts) {
                    Ok(r) if r.status == Completion::Complete => Ok(r),
                    Ok(_) => Err("incomplete: resource cap reached".to_string()),
                    Err(e) => Err(e.to_string()),
                };
                results.lock().unwrap().push((i, res));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(i, _)| *i);

    let mut groups: BTreeMap<(usize, usize, usize), Vec<Sample>> = BTreeMap::new();
    let mut group_failures: BTreeMap<(usize, usize, usize), usize> = BTreeMap::new();
    let mut failures = Vec::new();
    let mut keyed: Vec<(String, (usize, usize, usize), Result<SolveReport, String>)> = results
        .into_iter()
        .map(|(i, r)| {
            let inst = &instances[i];
            (inst.name.clone(), (inst.n, inst.m(), inst.k()), r)
        })
        .collect();
    keyed.sort_by(|a, b| a.0.cmp(&b.0));
    for (name, key, res) in keyed {
        match res {
            Ok(report) => groups.entry(key).or_default().push(per_instance(&report)),
            Err(e) => {
                *group_failures.entry(key).or_default() += 1;
                failures.push((name, e));
            }
        }
    }

    let mut rows = Vec::new();
    for (key, samples) in &groups {
        let c = samples.len() as f64;
        let mean_secs = samples.iter().map(|s| s.secs).sum::<f64>() / c;
        let min_secs = samples.iter().map(|s| s.secs).fold(f64::INFINITY, f64::min);
        let max_secs = samples.iter().map(|s| s.secs).fold(0.0, f64::max);
        let mean_eff = samples.iter().map(|s| s.eff as f64).sum::<f64>() / c;
        let min_eff = samples.iter().map(|s| s.eff).min().unwrap_or(0);
        let max_eff = samples.iter().map(|s| s.eff).max().unwrap_or(0);
        let mean_cn = samples.iter().map(|s| s.cn as f64).sum::<f64>() / c;
        let mean_sn_cn_pct = samples
            .iter()
            .map(|s| if s.cn > 0 { 100.0 * s.sn as f64 / s.cn as f64 } else { 0.0 })
            .sum::<f64>()
            / c;
        rows.push(BenchRow {
            n: key.0,
            m: key.1,
            k: key.2,
            mean_secs,
            min_secs,
            max_secs,
            mean_eff,
            min_eff,
            max_eff,
            mean_cn,
            mean_sn_cn_pct,
            instances: samples.len(),
            failures: group_failures.get(key).copied().unwrap_or(0),
        });
    }
    for (key, count) in group_failures {
        if !groups.contains_key(&key) {
            rows.push(BenchRow {
                n: key.0,
                m: key.1,
                k: key.2,
                mean_secs: 0.0,
                min_secs: 0.0,
                max_secs: 0.0,
                mean_eff: 0.0,
                min_eff: 0,
                max_eff: 0,
                mean_cn: 0.0,
                mean_sn_cn_pct: 0.0,
                instances: 0,
                failures: count,
            });
        }
    }
    rows.sort_by_key(|r| (r.n, r.m, r.k));
    BenchOutcome { rows, failures }
}

pub const TSV_HEADER: &str = "n\tm\tk\tMean CPU(s)\tMin CPU(s)\tMax CPU(s)\tMean Eff Sol\tMin Eff Sol\tMax Eff Sol\tMean CN\tMean SN/CN %";

pub fn render_tsv(rows: &[BenchRow]) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{}\t{}\t{}\t{:.2}\t{:.2}\t{:.2}\t{:.2}\t{}\t{}\t{:.2}\t{:.2}\n",
            r.n,
            r.m,
            r.k,
            r.mean_secs,
            r.min_secs,
            r.max_secs,
            r.mean_eff,
            r.min_eff,
            r.max_eff,
            r.mean_cn,
            r.mean_sn_cn_pct
        ));
    }
    out
}
