use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use subshift::complexity::DimensionMethod;
use subshift::run::{run, Command, RunConfig};
use subshift::{Alpha, ConstructionParams, OrderingPolicy, Variant};

#[derive(Parser)]
#[command(name = "subshift", version, about = "Build and measure hierarchical permutation subshifts")]
struct Cli {
    /// Run configuration (JSON); replaces all flags when given.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "subshift-out")]
    out: PathBuf,
    /// Write JSON copies of CSV tables.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Option<Cmd>,
}

#[derive(Args, Clone)]
struct Params {
    #[arg(long, default_value = "marker")]
    variant: Variant,
    #[arg(long, default_value = "1/2")]
    alpha: Alpha,
    #[arg(long, default_value_t = 25)]
    l1: u64,
    #[arg(long, default_value_t = 25)]
    n1: u64,
    /// Number of levels to build.
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u64).range(1..))]
    levels: u64,
    #[arg(long, default_value = "lex-unrank")]
    ordering: OrderingPolicy,
    /// Sample seed words with this rng seed instead of taking the smallest.
    #[arg(long)]
    seed: Option<u64>,
}

impl Params {
    fn resolve(&self) -> ConstructionParams {
        let mut p = ConstructionParams::new(self.variant, self.alpha, self.l1, self.n1)
            .with_max_level(self.levels as usize)
            .with_ordering(self.ordering);
        p.rng_seed = self.seed;
        p
    }
}

fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .filter(|x| !x.is_empty())
        .map(|x| x.trim().parse().map_err(|_| format!("bad list entry {x:?}")))
        .collect()
}

#[derive(Subcommand)]
enum Cmd {
    /// Build the hierarchy and write the level manifest.
    Construct {
        #[command(flatten)]
        params: Params,
        /// Also write the materialized words of each level.
        #[arg(long)]
        words: bool,
    },
    /// Exact factor counts for n = 1..=nmax.
    Profile {
        #[command(flatten)]
        params: Params,
        #[arg(long)]
        nmax: usize,
    },
    /// Entropy-dimension estimates from a profile.
    Dimension {
        #[command(flatten)]
        params: Params,
        /// Profile CSV to read instead of computing one.
        #[arg(long)]
        profile: Option<PathBuf>,
        #[arg(long, default_value_t = 256)]
        nmax: usize,
        /// loglog, critical or logderiv (default: all three).
        #[arg(long, value_parser = method)]
        method: Option<DimensionMethod>,
    },
    /// Cylinder frequencies in a prefix of the limit word.
    Measure {
        #[command(flatten)]
        params: Params,
        /// Comma-separated words over 0, 1 and b.
        #[arg(long, value_parser = list::<String>)]
        word: std::vec::Vec<String>,
        #[arg(long, default_value_t = 100_000)]
        length: u64,
    },
    /// First-return times.
    ReturnTime {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_parser = list::<u64>, default_value = "0")]
        offsets: std::vec::Vec<u64>,
        #[arg(long, value_parser = list::<u64>)]
        n: std::vec::Vec<u64>,
        #[arg(long, default_value_t = 1_000_000)]
        budget: u64,
    },
    /// Chain census and chain positions of offsets.
    Chains {
        #[command(flatten)]
        params: Params,
        #[arg(long = "level", value_parser = list::<usize>, default_value = "1")]
        chain_levels: std::vec::Vec<usize>,
        #[arg(long, value_parser = list::<u64>, default_value = "")]
        offsets: std::vec::Vec<u64>,
        #[arg(long, default_value_t = 0.375)]
        eta: f64,
    },
    /// Entropy-generating sets S_1..S_J.
    Egs {
        #[command(flatten)]
        params: Params,
        #[arg(long = "egs-levels", default_value_t = 3)]
        egs_levels: usize,
    },
    /// Autocorrelation, block-lag and eigenvalue scans.
    Spectral {
        #[command(flatten)]
        params: Params,
        #[arg(long, value_parser = list::<String>)]
        word: std::vec::Vec<String>,
        #[arg(long, default_value_t = 1)]
        level: usize,
        #[arg(long, default_value_t = 50)]
        max_lag: u64,
        #[arg(long, default_value_t = 100)]
        block_lags: u64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
        #[arg(long, default_value_t = 500_000)]
        length: u64,
    },
    /// Empirical measure of A △ σ^{l_n} A along word lengths.
    Rigidity {
        #[command(flatten)]
        params: Params,
        /// Cylinder word; omit for the whole space.
        #[arg(long)]
        word: Option<String>,
        #[arg(long = "level", value_parser = list::<usize>, default_value = "1,2,3")]
        lag_levels: std::vec::Vec<usize>,
        #[arg(long, default_value_t = 1_000_000)]
        length: u64,
    },
    /// Hand-checked oracle suite on the smallest marker instance.
    Selftest {
        #[arg(long)]
        quick: bool,
    },
}

fn method(s: &str) -> Result<DimensionMethod, String> {
    match s {
        "loglog" | "log-log-regression" => Ok(DimensionMethod::LogLogRegression),
        "critical" | "critical-value-scan" => Ok(DimensionMethod::CriticalValueScan),
        "logderiv" | "log-derivative-regression" => Ok(DimensionMethod::LogDerivativeRegression),
        other => Err(format!("unknown method {other:?}")),
    }
}

fn resolve(cmd: Cmd) -> (ConstructionParams, Command) {
    match cmd {
        Cmd::Construct { params, words } => (params.resolve(), Command::Construct { write_words: words }),
        Cmd::Profile { params, nmax } => (params.resolve(), Command::Profile { n_max: nmax }),
        Cmd::Dimension {
            params,
            profile,
            nmax,
            method,
        } => (
            params.resolve(),
            Command::Dimension {
                profile,
                n_max: nmax,
                method,
            },
        ),
        Cmd::Measure {
            params,
            word,
            length,
        } => (params.resolve(), Command::Measure { words: word, length }),
        Cmd::ReturnTime {
            params,
            offsets,
            n,
            budget,
        } => (
            params.resolve(),
            Command::ReturnTime {
                offsets,
                ns: n,
                budget,
            },
        ),
        Cmd::Chains {
            params,
            chain_levels,
            offsets,
            eta,
        } => (
            params.resolve(),
            Command::Chains {
                levels: chain_levels,
                offsets,
                eta,
            },
        ),
        Cmd::Egs { params, egs_levels } => (params.resolve(), Command::Egs { levels: egs_levels }),
        Cmd::Spectral {
            params,
            word,
            level,
            max_lag,
            block_lags,
            grid,
            length,
        } => (
            params.resolve(),
            Command::Spectral {
                words: word,
                level,
                max_lag,
                block_lags,
                grid,
                length,
            },
        ),
        Cmd::Rigidity {
            params,
            word,
            lag_levels,
            length,
        } => (
            params.resolve(),
            Command::Rigidity {
                word,
                levels: lag_levels,
                length,
            },
        ),
        Cmd::Selftest { quick } => (ConstructionParams::tiny(), Command::Selftest { quick }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("SUBSHIFT_THREADS").ok().and_then(|s| s.parse().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let config = match (&cli.config, cli.command) {
        (Some(path), _) => match std::fs::read_to_string(path)
            .map_err(subshift::Error::from)
            .and_then(|t| RunConfig::from_json(&t))
        {
            Ok(c) => c,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        (None, Some(cmd)) => {
            let (params, command) = resolve(cmd);
            RunConfig {
                params,
                command,
                out_dir: cli.out.clone(),
                json: cli.json,
            }
        }
        (None, None) => {
            eprintln!("error: a subcommand or --config is required");
            return ExitCode::from(2);
        }
    };
    match run(&config) {
        Ok(outcome) => {
            for w in &outcome.manifest.warnings {
                eprintln!("warning: {w}");
            }
            for f in &outcome.manifest.files {
                println!("{}  {}", f.sha256, config.out_dir.join(&f.path).display());
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
