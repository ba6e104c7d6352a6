//! `ybe`: build and verify Yang-Baxter R-matrices from symmetric spaces.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ybe_core::catalog::{list_entries, Params};
use ybe_core::job::{self, CheckId, JobError, JobSpec, ReportFormat, RunManifest, Target, GRASSMANN_IDS};
use ybe_core::verify::{Backend, SamplerConfig, VerificationReport};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "ybe", version, about = "Exact construction and verification of Yang-Baxter R-matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog entries and their parameters.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Export Ĝ, Ĉ and R in the matrix JSON format.
    Build {
        #[command(flatten)]
        entry: EntryArgs,
        #[arg(long, default_value = "-")]
        out: String,
    },
    /// Run one check on one entry.
    Verify {
        #[command(flatten)]
        entry: EntryArgs,
        #[arg(long, value_parser = parse_check)]
        check: CheckId,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Write the h-expansion coefficients M_0..M_order, one file per order.
    Expand {
        #[command(flatten)]
        entry: EntryArgs,
        #[arg(long, default_value_t = 2)]
        order: usize,
        #[arg(long, default_value = ".")]
        out_dir: PathBuf,
    },
    /// Recover the shift constant c from the QYBE.
    Fit {
        #[command(flatten)]
        entry: EntryArgs,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Checks on the composed Grassmannian R-matrix.
    Grassmann {
        #[command(subcommand)]
        command: GrassmannCommand,
    },
    /// Run every job of a JSON manifest.
    Run {
        manifest: PathBuf,
        /// Maximum number of jobs running at once.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value = "-")]
        out: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum GrassmannCommand {
    Verify {
        #[arg(long)]
        p: i64,
        #[arg(long)]
        q: i64,
        #[arg(long, value_enum, default_value = "qybe")]
        check: GrassmannCheck,
        /// grassmann, grassmann_complex or grassmann_quaternion
        #[arg(long, default_value = "grassmann")]
        variant: String,
        #[command(flatten)]
        run: RunArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GrassmannCheck {
    Qybe,
    Expansion,
}

#[derive(Args)]
struct EntryArgs {
    #[arg(long)]
    entry: String,
    #[arg(long, allow_negative_numbers = true)]
    n: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    k: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    p: Option<i64>,
    #[arg(long, allow_negative_numbers = true)]
    q: Option<i64>,
}

impl EntryArgs {
    fn params(&self) -> Params {
        Params { n: self.n, k: self.k, p: self.p, q: self.q }
    }
}

#[derive(Args)]
struct RunArgs {
    #[arg(long, value_enum, default_value = "exact")]
    mode: Mode,
    /// Defaults to YBE_SEED, then 0.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    points: Option<usize>,
    #[arg(long, default_value = "-")]
    out: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

impl RunArgs {
    fn sampler(&self) -> anyhow::Result<SamplerConfig> {
        let mut cfg = SamplerConfig::with_seed(match self.seed {
            Some(s) => s,
            None => env_seed()?,
        });
        if let Some(n) = self.points {
            cfg.num_points = n;
        }
        Ok(cfg)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exact,
    Sampled,
}

impl From<Mode> for Backend {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => Backend::Exact,
            Mode::Sampled => Backend::Sampled,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl From<Format> for ReportFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => ReportFormat::Json,
            Format::Text => ReportFormat::Text,
        }
    }
}

fn parse_check(s: &str) -> Result<CheckId, String> {
    CheckId::from_name(s).ok_or_else(|| {
        let names: Vec<&str> = CheckId::ALL.iter().map(|c| c.name()).collect();
        format!("unknown check `{s}`; expected one of {}", names.join(", "))
    })
}

/// Usage problems exit with 2, everything else unexpected with 3.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn env_seed() -> anyhow::Result<u64> {
    match std::env::var("YBE_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Usage(format!("YBE_SEED must be an unsigned integer, got {s:?}")).into()),
        Err(_) => Ok(0),
    }
}

fn job_error(e: JobError) -> anyhow::Error {
    match e {
        JobError::Usage(m) => Usage(m).into(),
        other => anyhow::Error::new(other),
    }
}

fn write_out(out: &str, text: &str) -> anyhow::Result<()> {
    if out == "-" {
        std::io::stdout().write_all(text.as_bytes())?;
        Ok(())
    } else {
        fs::write(out, text).with_context(|| format!("writing {out}"))
    }
}

fn report_and_status(reports: &[VerificationReport], out: &str, format: Format) -> anyhow::Result<u8> {
    write_out(out, &job::emit_report(reports, format.into()))?;
    Ok(if reports.iter().all(VerificationReport::passed) { 0 } else { EXIT_FAIL })
}

fn run_single(spec: JobSpec, run: &RunArgs) -> anyhow::Result<u8> {
    let reports = job::run_job(&spec, 0).map_err(job_error)?;
    report_and_status(&reports, &run.out, run.format)
}

fn resolve(entry: &EntryArgs) -> anyhow::Result<Target> {
    Target::resolve(&entry.entry, &entry.params()).map_err(job_error)
}

fn list(format: Format) -> anyhow::Result<u8> {
    let entries = list_entries();
    let text = match format {
        Format::Json => serde_json::to_string_pretty(&entries)? + "\n",
        Format::Text => {
            let mut s = format!("{:<22} {:<10} {:<8} {}\n", "entry", "params", "leg dim", "title");
            for e in &entries {
                s += &format!("{:<22} {:<10} {:<8} {}\n", e.id, e.params.join(","), e.leg_dim, e.title);
            }
            for id in GRASSMANN_IDS {
                s += &format!("{:<22} {:<10} {:<8} {}\n", id, "p,q", "p*q*d", "composed Grassmannian R-matrix");
            }
            s
        }
    };
    write_out("-", &text)?;
    Ok(0)
}

fn run_manifest(path: &Path, jobs: usize, out: &str, format: Format) -> anyhow::Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let mut value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if let Some(obj) = value.as_object_mut() {
        if !obj.contains_key("seed") {
            obj.insert("seed".into(), env_seed()?.into());
        }
    }
    let manifest: RunManifest = serde_json::from_value(value).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    for spec in &manifest.jobs {
        spec.validate().map_err(job_error)?;
    }
    let mut all = Vec::new();
    for (spec, result) in manifest.jobs.iter().zip(job::run_manifest(&manifest, jobs.max(1))) {
        let reports = result.map_err(job_error)?;
        if let Some(job_out) = &spec.out {
            write_out(job_out, &job::emit_report(&reports, format.into()))?;
        }
        all.extend(reports);
    }
    report_and_status(&all, out, format)
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    match cli.command {
        Command::List { format } => list(format),
        Command::Build { entry, out } => {
            let target = resolve(&entry)?;
            let mut map = serde_json::Map::new();
            map.insert("entry".into(), entry.entry.clone().into());
            map.insert("params".into(), serde_json::to_value(target.subject().params)?);
            for (name, m) in job::build_artifacts(&target).map_err(job_error)? {
                map.insert(name, serde_json::to_value(m)?);
            }
            write_out(&out, &(serde_json::to_string_pretty(&map)? + "\n"))?;
            Ok(0)
        }
        Command::Verify { entry, check, run } => {
            let spec = JobSpec::new(check, entry.entry.clone(), entry.params()).with_mode(run.mode.into()).with_sampler(run.sampler()?);
            run_single(spec, &run)
        }
        Command::Expand { entry, order, out_dir } => {
            let target = resolve(&entry)?;
            fs::create_dir_all(&out_dir).with_context(|| format!("creating {}", out_dir.display()))?;
            for (k, m) in job::expand_artifacts(&target, order).map_err(job_error)?.into_iter().enumerate() {
                let path = out_dir.join(format!("M{k}.json"));
                fs::write(&path, serde_json::to_string_pretty(&m)? + "\n").with_context(|| format!("writing {}", path.display()))?;
                println!("{}", path.display());
            }
            Ok(0)
        }
        Command::Fit { entry, run } => {
            let spec = JobSpec::new(CheckId::Fit, entry.entry.clone(), entry.params()).with_sampler(run.sampler()?);
            run_single(spec, &run)
        }
        Command::Grassmann { command: GrassmannCommand::Verify { p, q, check, variant, run } } => {
            if !GRASSMANN_IDS.contains(&variant.as_str()) {
                return Err(Usage(format!("unknown variant `{variant}`")).into());
            }
            let check = match check {
                GrassmannCheck::Qybe => CheckId::Qybe,
                GrassmannCheck::Expansion => CheckId::Expansion,
            };
            let spec = JobSpec::new(check, variant, Params::pq(p, q)).with_mode(run.mode.into()).with_sampler(run.sampler()?);
            run_single(spec, &run)
        }
        Command::Run { manifest, jobs, out, format } => run_manifest(&manifest, jobs, &out, format),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INTERNAL)
        }
    }
}
