use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use fispec_cli::{
    cmd_decompose, cmd_eval, cmd_multiplicities, cmd_orbits, cmd_report, cmd_spectrum, JobConfig, Output,
    SpectrumDocument, SpectrumFlags, Status, COMMANDS, DEFAULT_LAMBDA_CUTOFF, DEFAULT_N_MAX,
};

/// Stable spectra of FI-set relations.
///
/// Flags override the `job` block of the config file.
#[derive(Debug, Parser)]
#[command(name = "fispec", version)]
struct Args {
    /// One of eval, orbits, decompose, multiplicities, spectrum, report.
    command: Option<String>,
    /// Job configuration file.
    #[arg(long, short)]
    config: PathBuf,
    /// FI-set or relation to act on.
    #[arg(long)]
    name: Option<String>,
    /// Degree for eval; first verified degree for spectrum.
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[arg(long)]
    lambda_cutoff: Option<usize>,
    #[arg(long)]
    laplacian: bool,
    /// Use r^T r, for relations between different FI-sets.
    #[arg(long)]
    singular: bool,
    #[arg(long)]
    oracle_check: bool,
    /// Check a previously written spectrum report instead of recomputing.
    #[arg(long)]
    from: Option<PathBuf>,
    /// Also write the spectrum as n,eigenvalue,multiplicity CSV.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn run(args: Args) -> Result<Output> {
    let text = std::fs::read_to_string(&args.config).with_context(|| format!("reading {}", args.config.display()))?;
    let cfg = JobConfig::parse(&text).with_context(|| format!("in {}", args.config.display()))?;
    let job = &cfg.job;

    if let Some(w) = args.workers.or(job.workers) {
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global()?;
    }
    let Some(command) = args.command.clone().or(job.command.clone()) else {
        bail!("no command given; expected one of {}", COMMANDS.join(", "));
    };
    let name = || {
        args.name
            .clone()
            .or(job.name.clone())
            .context("this command needs --name")
    };
    let n_max = args.n_max.or(job.n_max).unwrap_or(DEFAULT_N_MAX);
    let cutoff = args
        .lambda_cutoff
        .or(job.lambda_cutoff)
        .unwrap_or(DEFAULT_LAMBDA_CUTOFF);
    let oracle_check = args.oracle_check || job.oracle_check;

    let output = match command.as_str() {
        "eval" => {
            let n = args.n.or(job.n).context("eval needs --n")?;
            Output {
                text: cmd_eval(&cfg, &name()?, n)?,
                status: Status::Success,
            }
        }
        "orbits" => cmd_orbits(&cfg, &name()?, n_max)?,
        "decompose" => cmd_decompose(&cfg, &name()?, n_max)?,
        "multiplicities" => Output {
            text: cmd_multiplicities(&cfg, &name()?, cutoff, n_max)?,
            status: Status::Success,
        },
        "spectrum" => {
            let cached = match &args.from {
                Some(p) => Some(SpectrumDocument::from_json(
                    &std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
                )?),
                None => None,
            };
            let flags = SpectrumFlags {
                n: args.n.or(job.n),
                n_max: args.n_max.or(job.n_max),
                laplacian: args.laplacian || job.laplacian,
                singular: args.singular || job.singular,
                oracle_check,
                cached,
            };
            let out = cmd_spectrum(&cfg, &name()?, &flags)?;
            if let Some(path) = &args.csv {
                let doc = SpectrumDocument::from_json(&out.text)?;
                let lo = flags.n.unwrap_or(doc.report.distinct_from);
                let hi = flags.n_max.unwrap_or(lo + 5);
                std::fs::write(path, doc.report.to_csv(lo..=hi))
                    .with_context(|| format!("writing {}", path.display()))?;
            }
            out
        }
        "report" => cmd_report(&cfg, n_max, cutoff, oracle_check)?,
        other => bail!("unknown command {other:?}; expected one of {}", COMMANDS.join(", ")),
    };
    Ok(output)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let out_path = args.out.clone();
    match run(args) {
        Ok(output) => {
            let written = match &out_path {
                Some(p) => std::fs::write(p, &output.text).with_context(|| format!("writing {}", p.display())),
                None => {
                    print!("{}", output.text);
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: {e:#}");
                return ExitCode::from(1);
            }
            if output.status == Status::Failed {
                eprintln!("error: the report failed its checks");
            }
            ExitCode::from(output.status.exit_code() as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
