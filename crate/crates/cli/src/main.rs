//! `mvhom`: batch front end for the finite-space engine.
//!
//! Exit status: 0 success, 1 validation failure, 2 bound exceeded,
//! 3 malformed input.

mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mvhom::corr::{box_product, compose, mpath};
use mvhom::engine::{
    nullhomotopy_certificate, space_homology, HomologyOptions, DEFAULT_BOUND, DEFAULT_SNF_LIMIT,
};
use mvhom::fixedset::greatest_fixed_subset;
use mvhom::json::{CertificateDoc, CorrDoc, FixedSetDoc, HomologyReportDoc, Resolver, ValidityDoc};
use mvhom::simplicial::{verify_fin_identities, CheckStatus};
use mvhom::{affine, Error};
use serde::Serialize;
use serde_json::Value;

#[derive(Parser)]
#[command(
    name = "mvhom",
    version,
    about = "Continuous multivalued maps on finite spaces"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Seed for randomized behavior. Every current subcommand is
    /// deterministic, so the seed only appears in the provenance of a run.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Check a correspondence and report the failing criteria.
    Validate {
        #[arg(long)]
        corr: PathBuf,
    },
    /// Compose two correspondences: first `--first`, then `--second`.
    Compose {
        #[arg(long)]
        first: PathBuf,
        #[arg(long)]
        second: PathBuf,
    },
    /// Box product of two correspondences.
    Box {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Run the face, degeneracy and prism identity suites.
    VerifyIdentities(IdentityArgs),
    /// Finite-model homology of a space.
    Homology {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, default_value_t = 2)]
        max_n: usize,
        /// Largest basis enumerated in any degree.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
        /// Basis size above which degrees >= 2 are skipped unless forced.
        #[arg(long, default_value_t = DEFAULT_SNF_LIMIT)]
        snf_limit: usize,
        #[arg(long)]
        attempt_snf_high_degrees: bool,
    },
    /// Nullhomotopy certificate for a cycle over a discrete space.
    Certify {
        #[arg(long)]
        cycle: PathBuf,
        /// Name of the basepoint.
        #[arg(long)]
        basepoint: String,
    },
    /// Greatest fixed subset of a self-correspondence.
    Fixedset {
        #[arg(long)]
        corr: PathBuf,
    },
    /// Multivalued path from one subset to another.
    Mpath {
        #[arg(long)]
        space: PathBuf,
        /// Comma-separated point names.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Args)]
struct IdentityArgs {
    #[arg(long, group = "model", required = true)]
    affine: bool,
    #[arg(long, group = "model", required = true)]
    finite: bool,
    #[arg(long, default_value_t = 3)]
    max_n: usize,
}

/// What a subcommand produced: a document and the exit status it implies.
struct Report {
    body: Value,
    text: String,
    status: u8,
}

impl Report {
    fn new<T: Serialize>(doc: &T, text: String, status: u8) -> Self {
        Report {
            body: serde_json::to_value(doc).expect("report documents serialize"),
            text,
            status,
        }
    }
}

fn exit_status(e: &Error) -> u8 {
    match e {
        Error::BoundExceeded { .. } | Error::TooManyCorrs { .. } | Error::Overflow => 2,
        Error::Malformed(_)
        | Error::UnknownPoint(_)
        | Error::PointIndex(_)
        | Error::DuplicatePoint(_)
        | Error::Antisymmetry(..)
        | Error::SpaceMismatch(_)
        | Error::AssignmentLength { .. }
        | Error::DegreeMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::EmptyValue
        | Error::EmptySpace => 3,
        _ => 1,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidCorr(_) => "invalid_corr",
        Error::BoundExceeded { .. } => "bound_exceeded",
        Error::TooManyCorrs { .. } => "too_many_corrs",
        Error::Overflow => "overflow",
        Error::NotACycle => "not_a_cycle",
        Error::NotDiscrete => "not_discrete",
        Error::Disconnected { .. } => "disconnected",
        Error::DegreeZero => "degree_zero",
        Error::CertificateFailed => "certificate_failed",
        _ if exit_status(e) == 3 => "malformed_input",
        _ => "failure",
    }
}

#[derive(Serialize)]
struct ErrorDoc<'a> {
    error: &'static str,
    message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<ValidityDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    from: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    to: Option<&'a str>,
}

fn error_report(e: &Error) -> Report {
    let mut doc = ErrorDoc {
        error: error_kind(e),
        message: e.to_string(),
        witness: None,
        degree: None,
        bound: None,
        from: None,
        to: None,
    };
    match e {
        Error::InvalidCorr(v) => doc.witness = Some(ValidityDoc::from(v)),
        Error::BoundExceeded { degree, bound } => {
            doc.degree = Some(*degree);
            doc.bound = Some(*bound);
        }
        Error::TooManyCorrs { bound } => doc.bound = Some(*bound),
        Error::Disconnected { from, to } => {
            doc.from = Some(from);
            doc.to = Some(to);
        }
        _ => {}
    }
    Report::new(&doc, format!("error: {e}\n"), exit_status(e))
}

fn names(list: &str) -> Vec<&str> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect()
}

fn run(cmd: &Command) -> mvhom::Result<Report> {
    let mut res = Resolver::new();
    match cmd {
        Command::Validate { corr } => {
            // Construction validates, so an invalid graph arrives as the error
            // carrying its witnesses.
            let v = match res.load_corr(corr) {
                Ok(c) => c.validity(),
                Err(Error::InvalidCorr(v)) => v,
                Err(e) => return Err(e),
            };
            let status = if v.is_valid { 0 } else { 1 };
            Ok(Report::new(
                &ValidityDoc::from(&v),
                render::validity(&v),
                status,
            ))
        }
        Command::Compose { first, second } => {
            let r = res.load_corr(first)?;
            let s = res.load_corr(second)?;
            let c = compose(&r, &s)?;
            Ok(Report::new(&CorrDoc::from_corr(&c), render::corr(&c), 0))
        }
        Command::Box { left, right } => {
            let r = res.load_corr(left)?;
            let s = res.load_corr(right)?;
            let c = box_product(&r, &s)?;
            Ok(Report::new(&CorrDoc::from_corr(&c), render::corr(&c), 0))
        }
        Command::VerifyIdentities(args) => {
            let checks = if args.affine {
                affine::verify_prism_identities(args.max_n)?
            } else {
                verify_fin_identities(args.max_n)?
            };
            let status = if checks.iter().all(|c| c.status == CheckStatus::Pass) {
                0
            } else {
                1
            };
            Ok(Report::new(&checks, render::identities(&checks), status))
        }
        Command::Homology {
            space,
            max_n,
            bound,
            snf_limit,
            attempt_snf_high_degrees,
        } => {
            if *bound == 0 {
                return Err(Error::Malformed("--bound must be positive".into()));
            }
            let x = res.load_space(space)?;
            let opts = HomologyOptions {
                max_n: *max_n,
                bound: *bound,
                snf_limit: *snf_limit,
                attempt_high_degrees: *attempt_snf_high_degrees,
                ..Default::default()
            };
            let r = space_homology(&x, &opts)?;
            let doc = HomologyReportDoc::from_report(&r);
            let status = if doc.complete { 0 } else { 2 };
            Ok(Report::new(&doc, render::homology(&doc), status))
        }
        Command::Certify { cycle, basepoint } => {
            let z = res.load_chain(cycle)?;
            let x0 = z.space().index_of(basepoint)?;
            let cert = nullhomotopy_certificate(&z, x0)?;
            let doc = CertificateDoc::from_certificate(&cert);
            Ok(Report::new(&doc, render::certificate(&doc), 0))
        }
        Command::Fixedset { corr } => {
            let t = res.load_corr(corr)?;
            let rep = greatest_fixed_subset(&t)?;
            let doc = FixedSetDoc::from_report(t.source(), &rep);
            Ok(Report::new(&doc, render::fixed_set(&doc), 0))
        }
        Command::Mpath { space, from, to } => {
            let x = res.load_space(space)?;
            let a = x.subset(&names(from))?;
            let b = x.subset(&names(to))?;
            if a.count_ones(..) == 0 || b.count_ones(..) == 0 {
                return Err(Error::EmptyValue);
            }
            let p = mpath(&x, &a, &b)?;
            Ok(Report::new(&CorrDoc::from_corr(&p), render::corr(&p), 0))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let Cli {
        format,
        seed: _,
        command,
    } = cli;
    let report = run(&command).unwrap_or_else(|e| error_report(&e));
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&report.body).expect("json values serialize")
        ),
        Format::Text => print!("{}", report.text),
    }
    ExitCode::from(report.status)
}
