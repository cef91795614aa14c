use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use ddm_core::bench::{
    fill_speedups, run_bench, run_dynamic, to_csv_string, verify_workload, write_csv, Algorithm, BenchOptions,
    VerifyOptions, WorkloadSpec,
};
use ddm_core::io::write_extents;
use ddm_core::ParallelConfig;

#[derive(Parser)]
#[command(name = "ddm-bench", version, about = "Interval matching benchmarks and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Time matching algorithms on generated workloads.
    Bench(BenchArgs),
    /// Check every algorithm against brute force on generated workloads.
    Verify(VerifyArgs),
    /// Replay random extent moves on the incremental matcher.
    Dynamic(DynamicArgs),
    /// Write a generated workload in the extent text format.
    Generate(GenerateArgs),
}

#[derive(Args)]
struct WorkloadArgs {
    /// Total extent count N (half subscriptions, half updates).
    #[arg(long)]
    extents: usize,
    /// Routing-space length.
    #[arg(long, default_value_t = ddm_core::bench::DEFAULT_LENGTH)]
    length: f64,
    #[arg(long, default_value_t = 1)]
    dims: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl WorkloadArgs {
    fn spec(&self, alpha: f64) -> WorkloadSpec {
        WorkloadSpec::new(self.extents, alpha)
            .with_length(self.length)
            .with_dims(self.dims)
            .with_seed(self.seed)
    }
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    workload: WorkloadArgs,
    /// One or more of bf, sbm, gb, itm, bf-par, itm-par.
    #[arg(long, value_delimiter = ',', required = true)]
    algo: Vec<Algorithm>,
    /// Overlapping degree; several values run a sweep.
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// Worker counts for the parallel algorithms. Defaults to the logical core count.
    #[arg(long, value_delimiter = ',')]
    threads: Vec<usize>,
    /// Grid cells per dimension, required by gb.
    #[arg(long)]
    grid_cells: Option<usize>,
    #[arg(long, default_value_t = 30)]
    reps: usize,
    /// Reuse one workload for every repetition.
    #[arg(long)]
    fixed_workload: bool,
    /// Write results here instead of printing CSV to stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    workload: WorkloadArgs,
    #[arg(long)]
    alpha: f64,
    /// Number of seeds, starting at --seed.
    #[arg(long, default_value_t = 1)]
    seeds: u64,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, default_value_t = 64)]
    grid_cells: usize,
    /// Audited dynamic moves per instance (d = 1 only).
    #[arg(long, default_value_t = 100)]
    moves: usize,
}

#[derive(Args)]
struct DynamicArgs {
    #[command(flatten)]
    workload: WorkloadArgs,
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,
    #[arg(long)]
    moves: usize,
    /// Compare against brute force every k moves; 0 audits only at the end.
    #[arg(long, default_value_t = 1)]
    audit_every: usize,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    workload: WorkloadArgs,
    #[arg(long)]
    alpha: f64,
    /// Output file, `-` for stdout.
    #[arg(long)]
    out: PathBuf,
}

fn bench(args: BenchArgs) -> Result<()> {
    let threads = if args.threads.is_empty() {
        vec![ParallelConfig::available().workers()]
    } else {
        args.threads
    };
    if args.algo.contains(&Algorithm::Gb) && args.grid_cells.is_none() {
        bail!("gb needs --grid-cells G");
    }
    let mut results = Vec::new();
    for &alpha in &args.alpha {
        let spec = args.workload.spec(alpha);
        spec.validate()?;
        for &algo in &args.algo {
            let ps: &[usize] = if algo.is_parallel() { &threads } else { &[1] };
            for &p in ps {
                let options = BenchOptions {
                    threads: p,
                    grid_cells: args.grid_cells,
                    reps: args.reps,
                    fixed_workload: args.fixed_workload,
                };
                let r = run_bench(&spec, algo, &options).with_context(|| format!("{algo} p={p} alpha={alpha}"))?;
                eprintln!(
                    "{algo:<8} N={} alpha={alpha} p={p}: mean {:.6}s sd {:.6}s K={}",
                    r.extents,
                    r.mean,
                    r.stddev,
                    r.k()
                );
                results.push(r);
            }
        }
    }
    fill_speedups(&mut results);
    match args.csv {
        Some(path) => write_csv(&path, &results).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{}", to_csv_string(&results)?),
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> Result<bool> {
    let mut ok = true;
    for offset in 0..args.seeds {
        let seed = args.workload.seed.wrapping_add(offset);
        let spec = args.workload.spec(args.alpha).with_seed(seed);
        let mut options = VerifyOptions {
            grid_cells: args.grid_cells,
            dynamic_moves: args.moves,
            seed,
            ..Default::default()
        };
        if let Some(p) = args.threads {
            options.threads = p;
        }
        match verify_workload(&spec, &options) {
            Ok(report) => println!("seed {seed}: {report}"),
            Err(e) => {
                println!("seed {seed}: MISMATCH: {e}");
                ok = false;
            }
        }
    }
    Ok(ok)
}

fn dynamic(args: DynamicArgs) -> Result<bool> {
    let spec = args.workload.spec(args.alpha);
    match run_dynamic(&spec, args.moves, args.audit_every) {
        Ok(r) => {
            println!(
                "OK: {} moves, {} audits, build {:.6}s, mean move {:.9}s, K={}",
                r.moves, r.audits, r.build_s, r.mean_move_s, r.k
            );
            Ok(true)
        }
        Err(e) => {
            println!("MISMATCH: {e}");
            Ok(false)
        }
    }
}

fn generate(args: GenerateArgs) -> Result<()> {
    let inst = args.workload.spec(args.alpha).generate()?;
    let text = write_extents(&inst);
    if args.out.as_os_str() == "-" {
        print!("{text}");
    } else {
        fs::write(&args.out, text).with_context(|| format!("writing {}", args.out.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Bench(a) => bench(a).map(|_| true),
        Command::Verify(a) => verify(a),
        Command::Dynamic(a) => dynamic(a),
        Command::Generate(a) => generate(a).map(|_| true),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
