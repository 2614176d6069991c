use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context};
use biobab::bnp::BitoptwInstance;
use biobab::engine::EngineConfig;
use biobab::harness::{benchmark, front_csv, performance_profile, profile_csv, solve_instance, time_limit, Method, RunRecord};
use biobab::problems::setcover::SetCoveringInstance;
use biobab::problems::ssuflp::SsuflpInstance;
use biobab::problems::uboflp::UboflpInstance;
use biobab::problems::{Family, Instance};
use biobab::Error;
use clap::{Args, Parser, Subcommand};

const EXIT_ERROR: u8 = 1;
const EXIT_TIME_LIMIT: u8 = 2;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "biobab", version, about = "Exact bi-objective integer programming")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one instance and write its Pareto front.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "biobab-lp")]
        method: String,
        #[command(flatten)]
        run: RunFlags,
        /// Front CSV destination (default: stdout).
        #[arg(long)]
        front: Option<PathBuf>,
        /// Append the stats record to this file (default: stderr).
        #[arg(long)]
        stats: Option<PathBuf>,
    },
    /// Run several methods on a set of instances and check their fronts agree.
    Benchmark {
        /// Glob of instance files, e.g. `data/*.ubof`.
        #[arg(required_unless_present = "generate")]
        pattern: Option<String>,
        /// Generate instances instead, e.g. `ubof:6,15` (see `generate`).
        #[arg(long, conflicts_with = "pattern")]
        generate: Option<String>,
        /// Number of generated instances, seeded from `--seed` upward.
        #[arg(long, default_value_t = 5)]
        count: u64,
        /// Comma-separated method names.
        #[arg(long, value_delimiter = ',', required = true)]
        methods: Vec<String>,
        #[command(flatten)]
        run: RunFlags,
        /// JSON-lines destination (default: stdout).
        #[arg(long)]
        records: Option<PathBuf>,
    },
    /// Turn JSON-lines run records into performance-profile curves.
    Profile {
        records: PathBuf,
        /// CSV destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write a random instance.
    Generate {
        /// Family and sizes: `ubof:F,L[,radius]`, `ssuf:F,L`,
        /// `bscp:rows,columns[,density]` or `btop:points,fleet`.
        spec: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Destination (default: stdout).
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Clone)]
struct RunFlags {
    /// Disable objective-space branching.
    #[arg(long)]
    no_osb: bool,
    /// Disable segment tightening.
    #[arg(long)]
    no_tighten: bool,
    /// Disable lower bound lifting.
    #[arg(long)]
    no_lift: bool,
    /// Disable integer dominance.
    #[arg(long)]
    no_intdom: bool,
    /// Time limit in seconds.
    #[arg(long, default_value_t = 7200.0)]
    time_limit: f64,
    /// Seed; runs are deterministic, so this only offsets generated instances.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

impl RunFlags {
    fn config(&self) -> EngineConfig {
        EngineConfig {
            osb: !self.no_osb,
            tightening: !self.no_tighten,
            lifting: !self.no_lift,
            int_dominance: !self.no_intdom,
            time_limit: time_limit(Some(self.time_limit)),
        }
    }
}

/// Failure with the exit code it maps to.
struct Failure {
    code: u8,
    err: anyhow::Error,
}

impl From<anyhow::Error> for Failure {
    fn from(err: anyhow::Error) -> Self {
        let code = match err.downcast_ref::<Error>() {
            Some(Error::Unsupported(_)) => EXIT_USAGE,
            _ => EXIT_ERROR,
        };
        Failure { code, err }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        anyhow::Error::from(err).into()
    }
}

fn usage(msg: String) -> Failure {
    Failure {
        code: EXIT_USAGE,
        err: anyhow::anyhow!(msg),
    }
}

fn parse_method(name: &str) -> Result<Method, Failure> {
    name.parse().map_err(|e: Error| usage(e.to_string()))
}

fn write_out(path: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn read_instance(path: &Path) -> anyhow::Result<Instance> {
    Instance::read(path).with_context(|| format!("reading {}", path.display()))
}

fn generate(spec: &str, seed: u64) -> anyhow::Result<Instance> {
    let (family, params) = spec.split_once(':').unwrap_or((spec, ""));
    let nums: Vec<f64> = params
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.trim().parse::<f64>().with_context(|| format!("bad size {s:?}")))
        .collect::<anyhow::Result<_>>()?;
    let int = |k: usize| -> anyhow::Result<usize> {
        let v = *nums.get(k).context("missing size parameter")?;
        if v < 0.0 || v.fract() != 0.0 {
            bail!("size parameter {v} must be a nonnegative integer");
        }
        Ok(v as usize)
    };
    let opt = |k: usize, default: f64| nums.get(k).copied().unwrap_or(default);
    let family = Family::from_extension(family)
        .ok_or_else(|| Error::Unsupported(format!("unknown family {family:?}")))?;
    Ok(match family {
        Family::Uboflp => Instance::Uboflp(UboflpInstance::generate(int(0)?, int(1)?, opt(2, 30.0), seed)?),
        Family::Ssuflp => Instance::Ssuflp(SsuflpInstance::generate(int(0)?, int(1)?, seed)?),
        Family::SetCovering => {
            Instance::SetCovering(SetCoveringInstance::generate(int(0)?, int(1)?, opt(2, 0.3), seed)?)
        }
        Family::Bitoptw => Instance::Bitoptw(BitoptwInstance::generate(int(0)?, int(1)?, seed)?),
    })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Solve {
            instance,
            method,
            run,
            front,
            stats,
        } => {
            let method = parse_method(&method)?;
            let inst = read_instance(&instance)?;
            let out = solve_instance(&inst, method, &run.config())?;
            write_out(front.as_deref(), &front_csv(&out.front))?;
            let record = RunRecord::new(&instance.display().to_string(), method, &out);
            let line = serde_json::to_string(&record).map_err(anyhow::Error::from)? + "\n";
            match stats {
                Some(p) => {
                    let mut f = fs::OpenOptions::new()
                        .create(true)
                        .append(true)
                        .open(&p)
                        .with_context(|| format!("opening {}", p.display()))?;
                    f.write_all(line.as_bytes()).map_err(anyhow::Error::from)?;
                }
                None => eprint!("{line}"),
            }
            if !out.complete {
                eprintln!("time limit reached; front is partial");
                return Ok(EXIT_TIME_LIMIT);
            }
            Ok(0)
        }
        Command::Benchmark {
            pattern,
            generate: gen,
            count,
            methods,
            run,
            records,
        } => {
            let methods: Vec<Method> = methods.iter().map(|m| parse_method(m)).collect::<Result<_, _>>()?;
            let mut instances = Vec::new();
            if let Some(spec) = gen {
                for seed in run.seed..run.seed + count {
                    instances.push((format!("{spec}#{seed}"), generate(&spec, seed)?));
                }
            } else {
                let pattern = pattern.expect("clap requires a pattern");
                let mut paths: Vec<PathBuf> = glob::glob(&pattern)
                    .map_err(|e| usage(format!("bad pattern: {e}")))?
                    .collect::<Result<_, _>>()
                    .map_err(anyhow::Error::from)?;
                paths.sort();
                for p in paths {
                    instances.push((p.display().to_string(), read_instance(&p)?));
                }
            }
            if instances.is_empty() {
                return Err(usage("no instances matched".into()));
            }
            let recs = benchmark(&instances, &methods, &run.config())?;
            let mut text = String::new();
            for r in &recs {
                text += &serde_json::to_string(r).map_err(anyhow::Error::from)?;
                text.push('\n');
            }
            write_out(records.as_deref(), &text)?;
            Ok(0)
        }
        Command::Profile { records, out } => {
            let text = fs::read_to_string(&records)
                .with_context(|| format!("reading {}", records.display()))?;
            let recs: Vec<RunRecord> = text
                .lines()
                .filter(|l| !l.trim().is_empty())
                .enumerate()
                .map(|(k, l)| serde_json::from_str(l).with_context(|| format!("record on line {}", k + 1)))
                .collect::<anyhow::Result<_>>()?;
            write_out(out.as_deref(), &profile_csv(&performance_profile(&recs)))?;
            Ok(0)
        }
        Command::Generate { spec, seed, out } => {
            let inst = generate(&spec, seed)?;
            write_out(out.as_deref(), &inst.to_text())?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.err);
            ExitCode::from(f.code)
        }
    }
}
