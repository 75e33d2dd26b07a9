//! Command-line driver: parses arguments into a [`qsign::cli::JobSpec`],
//! runs it, and prints a plain-text or JSON report.
//!
//! Exit status: 0 on success (and agreement when several methods ran),
//! 1 on a validation error, 2 when independent methods disagree.

use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use qsign::cli::{run, Command, JobSpec};

#[derive(Parser)]
#[command(
    name = "qsign",
    version,
    about = "Exact evaluation of induced sign characters of the Hecke algebra H_n(q) \
             at products (1 + T_s1)...(1 + T_sm), with cross-checked independent methods"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit the report as JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Also report the q = 1 specialization of each result
    #[arg(long, global = true)]
    q1: bool,
    /// Largest accepted rank n
    #[arg(long, global = true, default_value_t = 5)]
    max_n: usize,
    /// Largest accepted word length
    #[arg(long, global = true, default_value_t = 16)]
    max_m: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate the induced sign character of a word's product, cross-checking methods
    EvalEpsilon {
        /// Number of strands
        #[arg(long)]
        n: usize,
        /// Comma-separated generator indices, e.g. "1,2,1" (empty for the empty word)
        #[arg(long)]
        word: String,
        /// Partition of n, e.g. "2,1"
        #[arg(long)]
        lambda: String,
        /// tableaux | immanant | chartable | all
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Expand (1 + T_{s_i1})...(1 + T_{s_im}) over the natural basis
    ExpandHecke {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
    },
    /// Evaluate the functional σ_B of a word's wiring diagram at x^{u,w}
    Sigma {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        /// Source permutation in one-line notation, e.g. "213"
        #[arg(long)]
        u: String,
        /// Sink permutation in one-line notation
        #[arg(long)]
        w: String,
        /// dp | direct | zalgebra | all
        #[arg(long, default_value = "all")]
        method: String,
    },
    /// Transition coefficients r_{u,v,t} over all endpoints
    RPoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        /// Defaults to the identity
        #[arg(long)]
        t: Option<String>,
    },
    /// Walk-count polynomials along a word reduced for u t^{-1}, two ways
    PPoly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        u: String,
        /// Start of the walk
        #[arg(long)]
        v: String,
        /// Defaults to the identity
        #[arg(long)]
        t: Option<String>,
    },
    /// Normal-order a quantum-matrix monomial under both rewrite strategies
    Straighten {
        /// Space-separated factors, e.g. "x[2,2] x[1,1] x[3,3]"
        #[arg(long)]
        monomial: String,
    },
    /// List the G-tableaux of a diagram and shape with their statistics
    ListTableaux {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        word: String,
        #[arg(long)]
        lambda: String,
    },
    /// Run the seeded cross-verification battery
    Verify {
        /// Seed for the deterministic random checks
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn build_job(cli: &Cli) -> JobSpec {
    let mut job = JobSpec::new(match cli.cmd {
        Cmd::EvalEpsilon { .. } => Command::EvalEpsilon,
        Cmd::ExpandHecke { .. } => Command::ExpandHecke,
        Cmd::Sigma { .. } => Command::Sigma,
        Cmd::RPoly { .. } => Command::RPoly,
        Cmd::PPoly { .. } => Command::PPoly,
        Cmd::Straighten { .. } => Command::Straighten,
        Cmd::ListTableaux { .. } => Command::ListTableaux,
        Cmd::Verify { .. } => Command::Verify,
    });
    job.q1 = cli.q1;
    job.max_n = cli.max_n;
    job.max_m = cli.max_m;
    match &cli.cmd {
        Cmd::EvalEpsilon { n, word, lambda, method } => {
            job.n = *n;
            job.word = Some(word.clone());
            job.lambda = Some(lambda.clone());
            job.method = Some(method.clone());
        }
        Cmd::ExpandHecke { n, word } => {
            job.n = *n;
            job.word = Some(word.clone());
        }
        Cmd::Sigma { n, word, u, w, method } => {
            job.n = *n;
            job.word = Some(word.clone());
            job.u = Some(u.clone());
            job.w = Some(w.clone());
            job.method = Some(method.clone());
        }
        Cmd::RPoly { n, u, v, t } => {
            job.n = *n;
            job.u = Some(u.clone());
            job.v = Some(v.clone());
            job.t = t.clone();
        }
        Cmd::PPoly { n, word, u, v, t } => {
            job.n = *n;
            job.word = Some(word.clone());
            job.u = Some(u.clone());
            job.v = Some(v.clone());
            job.t = t.clone();
        }
        Cmd::Straighten { monomial } => {
            job.monomial = Some(monomial.clone());
        }
        Cmd::ListTableaux { n, word, lambda } => {
            job.n = *n;
            job.word = Some(word.clone());
            job.lambda = Some(lambda.clone());
        }
        Cmd::Verify { seed } => {
            job.seed = *seed;
        }
    }
    job
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are successes, not validation errors
            let code = if e.exit_code() == 0 { 0 } else { 1 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let json = cli.json;
    let job = build_job(&cli);
    match run(&job) {
        Ok(report) => {
            let text = if json {
                match serde_json::to_string_pretty(&report.to_json()) {
                    Ok(s) => s + "\n",
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(1);
                    }
                }
            } else {
                report.render_text()
            };
            // tolerate a closed pipe (e.g. piping into `head`)
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.agreement {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
