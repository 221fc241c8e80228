//! Command-line entry point: solve, oracle, generate, bench and selftest.
//!
//! Exit codes: 0 success, 2 parse/validation error, 3 incomplete (resource
//! caps), 4 internal failure.

use crate::bench::{render_tsv, run_bench};
use crate::generator::{generate, instance_file_name, GenSpec};
use crate::model::{fmt4, fmt_exact, parse_instance, write_instance, Instance, Point};
use crate::oracle::{enumerate, DEFAULT_BOX_CAP};
use crate::search::{render_report, solve, Completion, SolveOptions};
use clap::{Args, Parser, Subcommand};
use std::fs;
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_INCOMPLETE: i32 = 3;
pub const EXIT_INTERNAL: i32 = 4;

#[derive(Parser)]
#[command(
    name = "moilfp",
    about = "Exact optimization of a linear fractional objective over the integer efficient set"
)]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance file with the branch-and-bound search
    Solve {
        path: PathBuf,
        /// Write the search event log to this file
        #[arg(long)]
        trace: Option<PathBuf>,
        /// Stop after creating this many nodes
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Stop after this many wall seconds
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Enumerate the integer domain and report the exact efficient set
    Oracle {
        path: PathBuf,
        /// Abort if the integer box holds more points than this
        #[arg(long, default_value_t = DEFAULT_BOX_CAP)]
        cap: u128,
    },
    /// Generate a deterministic random corpus of instance files
    Generate(GenArgs),
    /// Solve a corpus and print the aggregated benchmark table
    Bench {
        /// Directory of .moilfp files (alternative to an inline spec)
        #[arg(long, conflicts_with_all = ["n", "m", "k"])]
        dir: Option<PathBuf>,
        /// Inline generator spec: variables
        #[arg(long, requires_all = ["m", "k"])]
        n: Option<usize>,
        /// Inline generator spec: constraints
        #[arg(long, requires_all = ["n", "k"])]
        m: Option<usize>,
        /// Inline generator spec: criteria
        #[arg(long, requires_all = ["n", "m"])]
        k: Option<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 10)]
        count: usize,
        /// Solve this many instances concurrently
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Also write the TSV table to this file
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-instance node cap
        #[arg(long)]
        max_nodes: Option<u64>,
        /// Per-instance wall-second cap
        #[arg(long)]
        max_seconds: Option<f64>,
    },
    /// Run the bundled reference walkthrough and print pass/fail lines
    Selftest,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Directory to write instance files into
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
}

impl GenArgs {
    fn spec(&self) -> GenSpec {
        GenSpec { n: self.n, m: self.m, k: self.k, seed: self.seed, count: self.count }
    }
}

fn load_instance(path: &Path) -> Result<Instance, (i32, String)> {
    let text = fs::read_to_string(path)
        .map_err(|e| (EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "instance".to_string());
    parse_instance(&text, &name).map_err(|e| (EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn cmd_solve(
    path: &Path,
    trace: Option<&Path>,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> Result<i32, (i32, String)> {
    let inst = load_instance(path)?;
    let opts = SolveOptions { max_nodes, max_seconds, collect_trace: trace.is_some() };
    let report = match solve(&inst, &opts) {
        Ok(r) => r,
        Err(crate::search::SolveError::Validation(e)) => {
            return Err((EXIT_INPUT, e.to_string()))
        }
        Err(e) => return Err((EXIT_INTERNAL, e.to_string())),
    };
    if let Some(tpath) = trace {
        let mut text = String::new();
        for e in &report.trace {
            text.push_str(&e.render());
            text.push('\n');
        }
        fs::write(tpath, text)
            .map_err(|e| (EXIT_INTERNAL, format!("cannot write trace: {e}")))?;
    }
    print!("{}", render_report(&inst, &report));
    Ok(if report.status == Completion::Complete { EXIT_OK } else { EXIT_INCOMPLETE })
}

fn cmd_oracle(path: &Path, cap: u128) -> Result<i32, (i32, String)> {
    let inst = load_instance(path)?;
    let truth = match enumerate(&inst, cap) {
        Ok(t) => t,
        Err(crate::oracle::OracleError::TooLarge { .. }) => {
            return Err((EXIT_INCOMPLETE, "integer box exceeds the cap".to_string()))
        }
        Err(e) => return Err((EXIT_INPUT, e.to_string())),
    };
    print!("{}", truth.render(&inst));
    Ok(EXIT_OK)
}

fn cmd_generate(args: &GenArgs) -> Result<i32, (i32, String)> {
    let spec = args.spec();
    let instances = generate(&spec).map_err(|e| (EXIT_INPUT, e.to_string()))?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| (EXIT_INTERNAL, format!("cannot create {}: {e}", args.out_dir.display())))?;
    for (i, inst) in instances.iter().enumerate() {
        let file = args.out_dir.join(instance_file_name(&spec, i));
        fs::write(&file, write_instance(inst))
            .map_err(|e| (EXIT_INTERNAL, format!("cannot write {}: {e}", file.display())))?;
        println!("{}", file.display());
    }
    Ok(EXIT_OK)
}

fn cmd_bench(
    dir: Option<&Path>,
    spec: Option<GenSpec>,
    jobs: usize,
    out: Option<&Path>,
    max_nodes: Option<u64>,
    max_seconds: Option<f64>,
) -> Result<i32, (i32, String)> {
    let instances = match (dir, spec) {
        (Some(d), _) => {
            let mut files: Vec<PathBuf> = fs::read_dir(d)
                .map_err(|e| (EXIT_INPUT, format!("cannot read {}: {e}", d.display())))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "moilfp"))
                .collect();
            files.sort();
            if files.is_empty() {
                return Err((EXIT_INPUT, format!("no .moilfp files in {}", d.display())));
            }
            files
                .iter()
                .map(|p| load_instance(p))
                .collect::<Result<Vec<_>, _>>()?
        }
        (None, Some(spec)) => generate(&spec).map_err(|e| (EXIT_INPUT, e.to_string()))?,
        (None, None) => {
            return Err((EXIT_INPUT, "bench needs --dir or an inline --n/--m/--k spec".into()))
        }
    };
    let opts = SolveOptions { max_nodes, max_seconds, collect_trace: false };
    let outcome = run_bench(&instances, &opts, jobs);
    let table = render_tsv(&outcome.rows);
    print!("{table}");
    for (name, err) in &outcome.failures {
        eprintln!("FAILED {name}: {err}");
    }
    if let Some(path) = out {
        fs::write(path, &table)
            .map_err(|e| (EXIT_INTERNAL, format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(if outcome.failures.is_empty() { EXIT_OK } else { EXIT_INCOMPLETE })
}

fn check(label: &str, ok: bool, failures: &mut u32) {
    println!("{} {label}", if ok { "PASS" } else { "FAIL" });
    if !ok {
        *failures += 1;
    }
}

fn cmd_selftest() -> Result<i32, (i32, String)> {
    use crate::efficiency::ideal_point;
    use crate::model::{rat, rint, rone, rzero, Relation};
    use crate::search::{build_delta, step0, Step0};
    use crate::simplex::Tableau;
    use std::collections::BTreeSet;

    let inst = crate::fixtures::reference_instance();
    let mut failures = 0u32;

    let mut objs = inst.criteria.clone();
    objs.push(inst.master.clone());
    let mut t = Tableau::new(&inst, &[], &objs);
    let root = t.solve_primal(2).map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    check(
        "root relaxation point (0, 0, 22/7, 0, 0, 0)",
        root.point.coords == vec![rzero(), rzero(), rat(22, 7), rzero(), rzero(), rzero()],
        &mut failures,
    );
    check("root relaxation value 2126/355", root.value == rat(2126, 355), &mut failures);

    match step0(&inst).map_err(|e| (EXIT_INTERNAL, e.to_string()))? {
        Ok(Step0::Incumbent { x_opt, psi_opt, .. }) => {
            check(
                "initial incumbent (4, 0, 0, 0, 0, 0)",
                x_opt == Point::from_ints(&[4, 0, 0, 0, 0, 0]),
                &mut failures,
            );
            check("initial incumbent value 266/165", psi_opt == rat(266, 165), &mut failures);
        }
        _ => check("initial incumbent exists", false, &mut failures),
    }

    let mut coeffs = vec![rzero(); 6];
    coeffs[2] = rone();
    t.add_row(&coeffs, Relation::Le, &rint(3))
        .map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    let node1 = t.reoptimize_dual(2).map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    check(
        "first bounded node point (0, 0, 3, 0, 0, 0)",
        node1.point == Point::from_ints(&[0, 0, 3, 0, 0, 0]),
        &mut failures,
    );
    check("first bounded node value 290/49", node1.value == rat(290, 49), &mut failures);
    let delta = build_delta(&t, 2);
    check(
        "improving set {x1, x2, x4, x6}",
        delta == BTreeSet::from([0usize, 1, 3, 5]),
        &mut failures,
    );
    let id = ideal_point(&t, 2).map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    check(
        "ideal point (7.2632, 1.7566)",
        fmt4(&id.values[0]) == "7.2632" && fmt4(&id.values[1]) == "1.7566",
        &mut failures,
    );

    let truth = enumerate(&inst, DEFAULT_BOX_CAP).map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    let report = solve(&inst, &SolveOptions::default())
        .map_err(|e| (EXIT_INTERNAL, e.to_string()))?;
    let (best_point, best_value) = truth.best.clone().expect("nonempty domain");
    check(
        "solver optimum equals enumeration optimum",
        report.psi_opt.as_ref() == Some(&best_value),
        &mut failures,
    );
    check(
        "solver point is in the enumerated efficient set",
        report
            .x_opt
            .as_ref()
            .is_some_and(|x| truth.efficient_contains(x)),
        &mut failures,
    );
    println!(
        "optimum: x={} psi={} ({})",
        Point::from_ints(&best_point).render(),
        fmt_exact(&best_value),
        fmt4(&best_value)
    );

    Ok(if failures == 0 { EXIT_OK } else { EXIT_INTERNAL })
}

/// Parses `args` and runs the selected command; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    let result = match &cli.command {
        Command::Solve { path, trace, max_nodes, max_seconds } => {
            cmd_solve(path, trace.as_deref(), *max_nodes, *max_seconds)
        }
        Command::Oracle { path, cap } => cmd_oracle(path, *cap),
        Command::Generate(args) => cmd_generate(args),
        Command::Bench { dir, n, m, k, seed, count, jobs, out, max_nodes, max_seconds } => {
            let spec = match (n, m, k) {
                (Some(n), Some(m), Some(k)) => {
                    Some(GenSpec { n: *n, m: *m, k: *k, seed: *seed, count: *count })
                }
                _ => None,
            };
            cmd_bench(dir.as_deref(), spec, *jobs, out.as_deref(), *max_nodes, *max_seconds)
        }
        Command::Selftest => cmd_selftest(),
    };
    match result {
        Ok(code) => code,
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            code
        }
    }
}
