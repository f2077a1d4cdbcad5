use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use surgery_cert::certify::{self, CertifyOptions, Slope};
use surgery_cert::homfly;

#[derive(Parser)]
#[command(name = "surgery-cert", version, about = "Certify two knots with a common p/q-surgery are distinct")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a single slope.
    Certify {
        /// Slope as P/Q or P.
        #[arg(long, allow_hyphen_values = true)]
        slope: String,
        /// Write the certificate as JSON to this path ("-" for stdout).
        #[arg(long)]
        json: Option<PathBuf>,
        #[command(flatten)]
        opts: Opts,
    },
    /// Certify every slope listed in a file, one per line.
    Batch {
        #[arg(long)]
        slopes: PathBuf,
        #[command(flatten)]
        opts: Opts,
    },
}

#[derive(Args)]
struct Opts {
    /// Smallest s to try when choosing parameters.
    #[arg(long, default_value_t = 1)]
    s_start: i64,
    /// Compute Γ of the cable knot directly when it has at most this many crossings.
    #[arg(long, default_value_t = certify::DEFAULT_GAMMA_BUDGET)]
    gamma_budget: usize,
    /// Cross-check Γ against the full HOMFLYPT recursion when small enough.
    #[arg(long)]
    verify_oracle: bool,
    #[arg(long, default_value_t = homfly::DEFAULT_ORACLE_BUDGET)]
    oracle_budget: usize,
}

impl From<&Opts> for CertifyOptions {
    fn from(o: &Opts) -> Self {
        CertifyOptions {
            s_start: o.s_start,
            gamma_budget: o.gamma_budget,
            verify_oracle: o.verify_oracle,
            oracle_budget: o.oracle_budget,
            ..Default::default()
        }
    }
}

fn run_certify(slope: &str, json: Option<PathBuf>, opts: &CertifyOptions) -> Result<(), String> {
    let s: Slope = slope.parse().map_err(|e| format!("{e}"))?;
    let cert = certify::certify_slope(s.p, s.q, opts).map_err(|e| format!("{e}"))?;
    match json.as_deref() {
        Some(p) if p.as_os_str() == "-" => println!("{}", cert.to_json()),
        Some(p) => std::fs::write(p, cert.to_json() + "\n").map_err(|e| format!("{}: {e}", p.display()))?,
        None => {}
    }
    let p = &cert.params;
    eprintln!("slope {} (p, q, r, s, t) = ({}, {}, {}, {}, {})", cert.slope, p.p, p.q, p.r, p.s, p.t);
    if cert.mirror_reduced {
        eprintln!("  reduced from {} by mirroring", cert.requested_slope);
    }
    eprintln!("  cable braid: {} strands, {} crossings, genus {}", cert.strands, cert.crossings, cert.genus);
    if let Some(g) = &cert.gamma_cr {
        eprintln!("  Γ(C(R)) = {g}");
    }
    eprintln!("  Γ(K_B) − Γ(K_G) = {}", cert.diff);
    eprintln!("  verified ({}, {} checks)", cert.diff_nonzero_reason, cert.checks.len());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Certify { slope, json, opts } => match run_certify(&slope, json, &(&opts).into()) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::FAILURE
            }
        },
        Cmd::Batch { slopes, opts } => {
            let text = match std::fs::read_to_string(&slopes) {
                Ok(t) => t,
                Err(e) => {
                    eprintln!("error: {}: {e}", slopes.display());
                    return ExitCode::FAILURE;
                }
            };
            let lines: Vec<&str> = text
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#'))
                .collect();
            let report = certify::batch(&lines, &(&opts).into());
            println!("{report}");
            if report.all_verified() {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
