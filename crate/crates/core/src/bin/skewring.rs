use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use skewring::cli::{error_report, parse_input, run, JobSpec, Options, Report};
use skewring::Error;

#[derive(Parser)]
#[command(name = "skewring", version, about = "Simplicity, regularity and automorphism checks for skew group rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide simplicity with both engines and ship a certificate or witness.
    Simple(Common),
    /// Decide G-simplicity of the ground ring.
    GSimple(Common),
    /// Classify α(g) as identity, X-inner or X-outer (`element` in the input).
    ClassifyAut(Common),
    /// Corner-inner witness for α(g).
    CornerInner(Common),
    /// Two-sided ideal generated by `gens` (or `x`).
    Ideal(Common),
    /// Certificate Σ aᵢ·x·bᵢ = 1 for `x`.
    Certificate(Common),
    /// Solve x·y·x = x.
    QuasiInverse(Common),
    /// Iterated length reduction starting from `x`.
    Reduce(Common),
    /// Tower checks: build, verify, clopen, freeness, limit-simplicity, level-ring.
    Tower {
        check: String,
        #[command(flatten)]
        common: Common,
    },
    /// Re-check certificates and witnesses against the ring in the input.
    Verify {
        /// Artifact file: a certificate, an array of them, or a report.
        #[arg(long)]
        certificate: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Run a whole job file `{command, input, options}`.
    Job {
        file: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Common {
    /// Input document; `-` reads standard input.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Print the JSON report instead of the text summary.
    #[arg(long)]
    json: bool,
    /// Also write the JSON report to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    depth: Option<usize>,
    /// `q` or `p=PRIME`.
    #[arg(long)]
    field: Option<String>,
    /// Comma-separated group words.
    #[arg(long)]
    sample: Option<String>,
    #[arg(long)]
    max_dim: Option<usize>,
    /// Include wall-clock timing in the report.
    #[arg(long)]
    timing: bool,
}

fn read_text(path: &PathBuf) -> Result<String, Error> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Error::Io(e.to_string()))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn build_job(command: &str, common: &Common, check: Option<&str>, certificate: Option<&PathBuf>) -> Result<JobSpec, Error> {
    let mut input = match &common.input {
        Some(p) => parse_input(&read_text(p)?)?,
        None => Default::default(),
    };
    if let Some(c) = check {
        input.check = Some(c.to_string());
    }
    if let Some(p) = certificate {
        let text = read_text(p)?;
        input.certificate = Some(serde_json::from_str(&text).map_err(|e| Error::Schema {
            pointer: "/input/certificate".into(),
            message: e.to_string(),
        })?);
    }
    Ok(JobSpec {
        command: command.to_string(),
        input,
        options: Options {
            depth: common.depth,
            field: common.field.clone(),
            max_dim: common.max_dim,
            sample: common
                .sample
                .as_ref()
                .map(|s| s.split(',').map(|w| w.trim().to_string()).filter(|w| !w.is_empty()).collect()),
            timing: common.timing,
        },
    })
}

fn emit(report: &Report, json: bool, out: Option<&PathBuf>) -> ExitCode {
    let text = report.to_json_string();
    if let Some(path) = out {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("cannot write {}: {e}", path.display());
            return ExitCode::from(2);
        }
    }
    if json {
        println!("{text}");
    } else {
        print!("{}", report.to_text());
    }
    ExitCode::from(report.exit_code as u8)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (name, common, check, cert) = match &cli.command {
        Command::Job { file, json, out } => {
            let report = match read_text(file) {
                Ok(t) => skewring::cli::run_json(&t),
                Err(e) => error_report("", &e),
            };
            return emit(&report, *json, out.as_ref());
        }
        Command::Simple(c) => ("simple", c, None, None),
        Command::GSimple(c) => ("g-simple", c, None, None),
        Command::ClassifyAut(c) => ("classify-aut", c, None, None),
        Command::CornerInner(c) => ("corner-inner", c, None, None),
        Command::Ideal(c) => ("ideal", c, None, None),
        Command::Certificate(c) => ("certificate", c, None, None),
        Command::QuasiInverse(c) => ("quasi-inverse", c, None, None),
        Command::Reduce(c) => ("reduce", c, None, None),
        Command::Tower { check, common } => ("tower", common, Some(check.as_str()), None),
        Command::Verify { certificate, common } => ("verify", common, None, certificate.as_ref()),
    };
    let report = match build_job(name, common, check, cert) {
        Ok(job) => run(&job),
        Err(e) => error_report(name, &e),
    };
    emit(&report, common.json, common.out.as_ref())
}
