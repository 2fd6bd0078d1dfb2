use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use erdos_straus::parallel::{self, default_threads, ScanOptions};
use erdos_straus::render;
use erdos_straus::report::{
    write_scan_csv, InputRange, OracleReportJson, OutcomeJson, ScanReportJson, SeriesReportJson,
    SolveReportJson,
};
use erdos_straus::{Error, Result, RunManifest, WitnessCache};
use erdos_straus_core::{enumerate_triples, Instance, SearchConfig, Strategy};
use num_bigint::BigUint;
use serde::Serialize;

const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Parser)]
#[command(
    name = "erdos-straus",
    version,
    about = "Search and verify decompositions 4/n^s = 1/x + 1/y + 1/z"
)]
struct Cli {
    /// Seed recorded in the run manifest
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum StrategyArg {
    FirstFound,
    SmallestX,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// x ranges over [floor(N/a) + 1, x_multiplier * N)
    #[arg(long, default_value_t = 300)]
    x_multiplier: u64,
    /// Number of t values tried per x, starting at t_min
    #[arg(long, default_value_t = 500)]
    t_window: u64,
    /// Numerator a of the target fraction a/N
    #[arg(long, default_value_t = 4)]
    numerator: u32,
    #[arg(long, value_enum, default_value_t = StrategyArg::FirstFound)]
    strategy: StrategyArg,
    /// Give up on a single n after this many milliseconds
    #[arg(long)]
    time_budget_ms: Option<u64>,
    /// Directory of cached per-n outcomes
    #[arg(long)]
    cache: Option<PathBuf>,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    threads: Option<usize>,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            x_multiplier: self.x_multiplier,
            t_window: self.t_window,
            numerator: self.numerator,
            strategy: match self.strategy {
                StrategyArg::FirstFound => Strategy::FirstFound,
                StrategyArg::SmallestX => Strategy::SmallestX,
            },
        }
    }

    fn options<'a>(&self, cache: Option<&'a WitnessCache>) -> Result<ScanOptions<'a>> {
        let threads = self.threads.unwrap_or_else(default_threads);
        if threads == 0 {
            return Err(Error::Usage("--threads must be at least 1".into()));
        }
        Ok(ScanOptions {
            threads,
            time_budget: self.time_budget_ms.map(Duration::from_millis),
            cache,
        })
    }

    fn open_cache(&self) -> Result<Option<WitnessCache>> {
        self.cache.as_ref().map(WitnessCache::open).transpose()
    }
}

#[derive(Subcommand)]
enum Command {
    /// Find the first witness for 4/n^s
    Solve {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[command(flatten)]
        search: SearchArgs,
        /// Print a JSON report on stdout (human lines go to stderr)
        #[arg(long)]
        json: bool,
    },
    /// Search every n in [n_min, n_max] and report the capture rate
    Scan {
        #[arg(long)]
        n_min: u64,
        #[arg(long)]
        n_max: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
        /// Write the JSON report to this file
        #[arg(long)]
        output: Option<PathBuf>,
        /// Write per-n rows as CSV to this file
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare sum 1/n^s with the witness series up to n_max
    Series {
        #[arg(long)]
        s: u32,
        #[arg(long)]
        n_max: u64,
        #[command(flatten)]
        search: SearchArgs,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Enumerate every decomposition of 4/n^s with z <= z_cap by brute force
    Oracle {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 1)]
        s: u32,
        #[arg(long)]
        z_cap: BigUint,
        #[arg(long)]
        json: bool,
    },
}

fn human_sink(json: bool) -> Box<dyn Write> {
    if json {
        Box::new(io::stderr())
    } else {
        Box::new(io::stdout())
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> Error + '_ {
    move |source| Error::Io {
        path: path.to_owned(),
        source,
    }
}

fn stdout_err(source: io::Error) -> Error {
    Error::Io {
        path: "<stdout>".into(),
        source,
    }
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out).map_err(stdout_err)
}

fn write_json_file<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    fs::write(path, text).map_err(io_err(path))
}

fn run(cli: Cli) -> Result<ExitCode> {
    let seed = cli.seed;
    match cli.command {
        Command::Solve { n, s, search, json } => {
            let cfg = search.config();
            let cache = search.open_cache()?;
            let opts = search.options(cache.as_ref())?;
            let outcome = parallel::solve(n, s, &cfg, &opts)?;
            let mut human = human_sink(json);
            writeln!(human, "{}", render::outcome_line(&outcome, s)).map_err(stdout_err)?;
            if let Some(w) = &outcome.witness {
                writeln!(
                    human,
                    "4/{} = 1/{} + 1/{} + 1/{}",
                    Instance::new(n, s)?.denominator(),
                    w.x,
                    w.y,
                    w.z
                )
                .map_err(stdout_err)?;
            }
            if json {
                let manifest = RunManifest::new(
                    "solve",
                    &cfg,
                    InputRange {
                        n_min: n,
                        n_max: n,
                        s,
                    },
                    seed,
                );
                print_json(&SolveReportJson {
                    manifest,
                    n,
                    s,
                    outcome: OutcomeJson::from(&outcome),
                })?;
            }
            Ok(if outcome.found() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Scan {
            n_min,
            n_max,
            s,
            search,
            json,
            output,
            csv,
        } => {
            let cfg = search.config();
            let cache = search.open_cache()?;
            let opts = search.options(cache.as_ref())?;
            let mut human = human_sink(json);
            let mut write_failed = None;
            let report = parallel::scan(n_min, n_max, s, &cfg, &opts, |o| {
                if write_failed.is_none() {
                    if let Err(e) = writeln!(human, "{}", render::outcome_line(o, s)) {
                        write_failed = Some(e);
                    }
                }
            })?;
            if let Some(e) = write_failed {
                return Err(stdout_err(e));
            }
            write!(human, "{}", render::summary_block(&report)).map_err(stdout_err)?;
            human.flush().map_err(stdout_err)?;

            let manifest = RunManifest::new("scan", &cfg, InputRange { n_min, n_max, s }, seed);
            let doc = ScanReportJson::new(manifest, &report);
            if let Some(path) = &output {
                write_json_file(path, &doc)?;
            }
            if let Some(path) = &csv {
                let file = fs::File::create(path).map_err(io_err(path))?;
                write_scan_csv(io::BufWriter::new(file), &report)?;
            }
            if json {
                print_json(&doc)?;
            }
            Ok(if report.complete() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Series {
            s,
            n_max,
            search,
            json,
            output,
        } => {
            let cfg = search.config();
            let cache = search.open_cache()?;
            let opts = search.options(cache.as_ref())?;
            let report = parallel::series(s, n_max, &cfg, &opts)?;
            let mut human = human_sink(json);
            write!(human, "{}", render::series_block(&report)).map_err(stdout_err)?;
            human.flush().map_err(stdout_err)?;

            let manifest =
                RunManifest::new("series", &cfg, InputRange { n_min: 2, n_max, s }, seed);
            let doc = SeriesReportJson::new(manifest, &report);
            if let Some(path) = &output {
                write_json_file(path, &doc)?;
            }
            if json {
                print_json(&doc)?;
            }
            Ok(if report.identity_holds() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        Command::Oracle { n, s, z_cap, json } => {
            let inst = Instance::new(n, s)?;
            let triples = enumerate_triples(inst.denominator(), &z_cap)
                .map_err(|e| Error::Usage(e.to_string()))?;
            let mut human = human_sink(json);
            writeln!(human, "{}", render::triple_list(&triples)).map_err(stdout_err)?;
            if json {
                let manifest = RunManifest::new(
                    "oracle",
                    &SearchConfig::default(),
                    InputRange {
                        n_min: n,
                        n_max: n,
                        s,
                    },
                    seed,
                );
                let triples = triples.iter().map(|t| [t.x, t.y, t.z]).collect();
                print_json(&OracleReportJson {
                    manifest,
                    n,
                    s,
                    z_cap,
                    triples,
                })?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
