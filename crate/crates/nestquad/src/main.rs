//! Command-line front end for nested quadrature rule generation.
//!
//! Subcommands: `generate` (run a whole extension chain), `extend` (one
//! extension step on an existing document), `verify` (re-derive every
//! invariant of a document), `moments` (dump a moments file).
//!
//! Exit codes: 0 success; 1 invalid flags or unreadable input; 2 the
//! extension chain stopped early (the completed prefix is still written);
//! 3 a verification check failed.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use nestquad::document::{
    build_rule_document, extend_document, verify_document, RuleDocument, VerifyError,
};
use nestquad::moments::{load_moments, moments_to_json};
use nestquad::{DistributionSpec, Error, Interval, MomentSequence, Polynomial, Schedule};

#[derive(Parser)]
#[command(
    name = "nestquad",
    version,
    about = "Nested quadrature rules from moment sequences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a nested rule by running a whole extension chain.
    Generate(GenerateArgs),
    /// Apply one extension step to an existing rule document.
    Extend(ExtendArgs),
    /// Re-derive and check every invariant of a rule document.
    Verify(VerifyArgs),
    /// Write the moments of a built-in distribution as a moments file.
    Moments(MomentsArgs),
}

#[derive(Args)]
struct DistArgs {
    /// Built-in distribution: uniform:a,b | beta:alpha,beta | gauss.
    #[arg(long)]
    dist: Option<String>,
    /// Moments file to use instead of a built-in distribution.
    #[arg(long = "moments-file")]
    moments_file: Option<PathBuf>,
    /// Override the working domain: LOWER UPPER (each "p/q", -inf, inf).
    #[arg(long, num_args = 2, allow_hyphen_values = true, value_names = ["LOWER", "UPPER"])]
    interval: Option<Vec<String>>,
}

#[derive(Args)]
struct GenerateArgs {
    #[command(flatten)]
    dist: DistArgs,
    /// Comma-separated nodes-to-add per level, e.g. 1,2,4,6,12.
    #[arg(long)]
    schedule: Option<String>,
    /// Use the p = n+1 rule starting from one node at the domain midpoint.
    #[arg(long)]
    gkp: bool,
    /// Number of extension rounds for --gkp.
    #[arg(long, default_value_t = 4)]
    iterations: usize,
    /// Significant decimal digits for nodes and weights.
    #[arg(long, default_value_t = 50)]
    precision: u32,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the node/weight/first_level table as CSV instead of JSON.
    #[arg(long)]
    csv: bool,
    /// Description stored in the document.
    #[arg(long)]
    description: Option<String>,
}

#[derive(Args)]
struct ExtendArgs {
    /// Rule document to extend.
    doc: PathBuf,
    /// Number of nodes to add.
    #[arg(long)]
    p: Option<usize>,
    /// Comma-separated candidate p values, tried in order.
    #[arg(long = "try")]
    try_list: Option<String>,
    /// Moments file (required when the document's distribution is custom).
    #[arg(long = "moments-file")]
    moments_file: Option<PathBuf>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the node/weight/first_level table as CSV instead of JSON.
    #[arg(long)]
    csv: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Rule document to verify.
    doc: PathBuf,
    /// Moments file (required when the document's distribution is custom).
    #[arg(long = "moments-file")]
    moments_file: Option<PathBuf>,
}

#[derive(Args)]
struct MomentsArgs {
    /// Built-in distribution: uniform:a,b | beta:alpha,beta | gauss.
    #[arg(long)]
    dist: String,
    /// Highest moment index to write (file holds indices 0..=count).
    #[arg(long, allow_hyphen_values = true)]
    count: String,
    /// Round moments to this many significant decimal digits instead of
    /// writing them exactly.
    #[arg(long)]
    precision: Option<u32>,
    /// Output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
}

const EXIT_OK: u8 = 0;
const EXIT_USAGE: u8 = 1;
const EXIT_CHAIN_FAILED: u8 = 2;
const EXIT_VERIFY_FAILED: u8 = 3;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's help/version displays are not errors
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::from(EXIT_OK),
                _ => ExitCode::from(EXIT_USAGE),
            };
        }
    };
    let code = match cli.command {
        Command::Generate(args) => cmd_generate(args),
        Command::Extend(args) => cmd_extend(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Moments(args) => cmd_moments(args),
    };
    ExitCode::from(code)
}

fn usage_error(msg: &str) -> u8 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

/// Resolves the moment sequence from --dist or --moments-file, applying
/// an --interval override when present.
fn resolve_moments(dist: &DistArgs) -> Result<MomentSequence, String> {
    let mut mu = match (&dist.dist, &dist.moments_file) {
        (Some(spec), None) => {
            let spec: DistributionSpec = spec.parse().map_err(|e: Error| e.to_string())?;
            MomentSequence::from_distribution(spec)
        }
        (None, Some(path)) => load_moments(path).map_err(|e| e.to_string())?,
        (Some(_), Some(_)) => {
            return Err("--dist and --moments-file are mutually exclusive".to_string())
        }
        (None, None) => return Err("one of --dist or --moments-file is required".to_string()),
    };
    if let Some(bounds) = &dist.interval {
        let lo = Interval::parse_endpoint(&bounds[0])
            .ok_or_else(|| format!("bad interval bound {:?}", bounds[0]))?;
        let hi = Interval::parse_endpoint(&bounds[1])
            .ok_or_else(|| format!("bad interval bound {:?}", bounds[1]))?;
        let omega = Interval::new(lo, hi).map_err(|e| e.to_string())?;
        mu = mu.with_domain(omega);
    }
    Ok(mu)
}

fn parse_usize_list(s: &str, what: &str) -> Result<Vec<usize>, String> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| format!("bad {what} entry {part:?}"))
        })
        .collect()
}

fn write_payload(out: &Option<PathBuf>, payload: &str) -> Result<(), String> {
    match out {
        Some(path) => std::fs::write(path, payload).map_err(|e| e.to_string()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(payload.as_bytes())
                .and_then(|_| stdout.write_all(b"\n"))
                .map_err(|e| e.to_string())
        }
    }
}

fn render(doc: &RuleDocument, csv: bool) -> Result<String, String> {
    if csv {
        Ok(doc.to_csv())
    } else {
        doc.to_json().map_err(|e| e.to_string())
    }
}

fn cmd_generate(args: GenerateArgs) -> u8 {
    let mu = match resolve_moments(&args.dist) {
        Ok(mu) => mu,
        Err(m) => return usage_error(&m),
    };
    if args.precision < 10 {
        return usage_error("--precision must be at least 10");
    }

    let (start, schedule) = match (&args.schedule, args.gkp) {
        (Some(_), true) => return usage_error("--schedule and --gkp are mutually exclusive"),
        (None, false) => return usage_error("one of --schedule or --gkp is required"),
        (Some(list), false) => {
            let ps = match parse_usize_list(list, "schedule") {
                Ok(ps) => ps,
                Err(m) => return usage_error(&m),
            };
            (Polynomial::one(), Schedule::Explicit(ps))
        }
        (None, true) => {
            let Some(mid) = mu.domain().midpoint() else {
                return usage_error(
                    "--gkp needs a finite domain or the whole real line (no midpoint otherwise)",
                );
            };
            (
                Polynomial::linear_from_root(&mid),
                Schedule::NPlusOne {
                    iterations: args.iterations,
                },
            )
        }
    };
    if let Err(e) = schedule.validate() {
        return usage_error(&e.to_string());
    }

    let description = args.description.clone().unwrap_or_else(|| {
        format!(
            "Nested quadrature rule for {} on {}",
            args.dist.dist.as_deref().unwrap_or("custom moments"),
            mu.domain()
        )
    });
    let omega = mu.domain().clone();
    let built =
        match build_rule_document(&start, &schedule, &mu, &omega, args.precision, &description) {
            Ok(built) => built,
            Err(e) => return usage_error(&e.to_string()),
        };

    let payload = match render(&built.document, args.csv) {
        Ok(p) => p,
        Err(m) => return usage_error(&m),
    };
    if let Err(m) = write_payload(&args.out, &payload) {
        return usage_error(&m);
    }
    eprintln!(
        "generated {} level(s), top formula has {} node(s)",
        built.document.levels.len(),
        built.document.levels.last().map_or(0, |l| l.nodes.len())
    );
    match built.failure {
        Some(reason) => {
            eprintln!("chain stopped early: {reason}");
            EXIT_CHAIN_FAILED
        }
        None => EXIT_OK,
    }
}

/// Moments for an existing document: its built-in distribution, or the
/// supplied moments file for custom rules.
fn moments_for_document(
    doc: &RuleDocument,
    moments_file: &Option<PathBuf>,
) -> Result<MomentSequence, String> {
    let domain = doc.domain_interval().map_err(|e| e.to_string())?;
    match (doc.distribution.as_str(), moments_file) {
        ("custom", None) => {
            Err("document has a custom distribution; --moments-file is required".to_string())
        }
        ("custom", Some(path)) => {
            let mu = load_moments(path).map_err(|e| e.to_string())?;
            if mu.domain() != &domain {
                return Err(format!(
                    "moments file domain {} does not match document domain {domain}",
                    mu.domain()
                ));
            }
            Ok(mu)
        }
        (spec, file) => {
            if file.is_some() {
                return Err(
                    "document names a built-in distribution; drop --moments-file".to_string()
                );
            }
            let spec: DistributionSpec = spec.parse().map_err(|e: Error| e.to_string())?;
            // the document's domain governs (it may have been overridden
            // at generation time)
            Ok(MomentSequence::from_distribution(spec).with_domain(domain))
        }
    }
}

fn cmd_extend(args: ExtendArgs) -> u8 {
    let text = match std::fs::read_to_string(&args.doc) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.doc.display())),
    };
    let doc = match RuleDocument::from_json(&text) {
        Ok(d) => d,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mu = match moments_for_document(&doc, &args.moments_file) {
        Ok(mu) => mu,
        Err(m) => return usage_error(&m),
    };
    let candidates = match (&args.p, &args.try_list) {
        (Some(_), Some(_)) => return usage_error("--p and --try are mutually exclusive"),
        (None, None) => return usage_error("one of --p or --try is required"),
        (Some(p), None) => vec![*p],
        (None, Some(list)) => match parse_usize_list(list, "try") {
            Ok(ps) => ps,
            Err(m) => return usage_error(&m),
        },
    };
    if candidates.is_empty() || candidates.contains(&0) {
        return usage_error("candidate p values must be at least 1");
    }

    match extend_document(&doc, &candidates, &mu) {
        Ok((Some(updated), p, _)) => {
            let payload = match render(&updated, args.csv) {
                Ok(p) => p,
                Err(m) => return usage_error(&m),
            };
            if let Err(m) = write_payload(&args.out, &payload) {
                return usage_error(&m);
            }
            eprintln!(
                "extended to {} node(s) with p = {p}",
                updated.levels.last().map_or(0, |l| l.nodes.len())
            );
            EXIT_OK
        }
        Ok((None, p, outcome)) => {
            let reason = outcome
                .failure_reason()
                .map_or_else(|| "unknown".to_string(), |r| r.to_string());
            eprintln!("extension with p = {p} failed: {reason}");
            EXIT_CHAIN_FAILED
        }
        Err(e) => usage_error(&e.to_string()),
    }
}

fn cmd_verify(args: VerifyArgs) -> u8 {
    let text = match std::fs::read_to_string(&args.doc) {
        Ok(t) => t,
        Err(e) => return usage_error(&format!("cannot read {}: {e}", args.doc.display())),
    };
    let doc = match RuleDocument::from_json(&text) {
        Ok(d) => d,
        Err(e) => return usage_error(&e.to_string()),
    };
    let mu = match moments_for_document(&doc, &args.moments_file) {
        Ok(mu) => mu,
        Err(m) => return usage_error(&m),
    };
    match verify_document(&doc, &mu) {
        Ok(()) => {
            println!(
                "ok: {} level(s), {} node(s) at the top level",
                doc.levels.len(),
                doc.levels.last().map_or(0, |l| l.nodes.len())
            );
            EXIT_OK
        }
        Err(e @ (VerifyError::Malformed(_) | VerifyError::Cannot(_))) => {
            eprintln!("{e}");
            EXIT_USAGE
        }
        Err(e @ VerifyError::Failed { .. }) => {
            eprintln!("{e}");
            EXIT_VERIFY_FAILED
        }
    }
}

fn cmd_moments(args: MomentsArgs) -> u8 {
    let count: usize = match args.count.trim().parse::<i64>() {
        Ok(c) if c >= 0 => c as usize,
        _ => {
            return usage_error(&format!(
                "--count must be a nonnegative integer, got {:?}",
                args.count
            ))
        }
    };
    let spec: DistributionSpec = match args.dist.parse() {
        Ok(s) => s,
        Err(e) => {
            let e: Error = e;
            return usage_error(&e.to_string());
        }
    };
    let mut mu = MomentSequence::from_distribution(spec);
    if let Some(digits) = args.precision {
        if digits < 1 {
            return usage_error("--precision must be at least 1");
        }
        mu = match mu.to_approximate(digits, count) {
            Ok(m) => m,
            Err(e) => return usage_error(&e.to_string()),
        };
    }
    let json = match moments_to_json(&mu, count) {
        Ok(j) => j,
        Err(e) => return usage_error(&e.to_string()),
    };
    if let Err(m) = write_payload(&args.out, &json) {
        return usage_error(&m);
    }
    eprintln!("wrote {} moment(s)", count + 1);
    EXIT_OK
}
