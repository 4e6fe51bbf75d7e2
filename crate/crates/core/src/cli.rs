//! Command-line front end. JSON arguments are inline when they start with `{`
//! or `[`, and file paths otherwise.
//!
//! Exit codes: 0 when a verdict was computed, 1 for invalid input, 2 for
//! `Unknown` verdicts and unsupported value modes.

use std::collections::BTreeSet;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::cluster::Cluster;
use crate::error::{Error, Result};
use crate::flags::{
    check_certificate, check_spectrality_verdict, decide_spectrality, find_flags,
    theorem4_verify_on, theorem6_verify_on, theorem7_pipeline, Flag, SpectralityStatus,
    SpectralityVerdict, ThresholdMode,
};
use crate::json::{self, FracDoc};
use crate::oracle::{enumerate_rational_spectra, tiling_complements_mod};
use crate::pair::{laba_certificate, not_a_pair_certificate, theorem3_certificate, verify_pair, RationalityCertificate};
use crate::spectrum::{rational_classes, zero_report, Gamma};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ThresholdArg {
    AsStated,
    Conservative,
}

impl From<ThresholdArg> for ThresholdMode {
    fn from(t: ThresholdArg) -> Self {
        match t {
            ThresholdArg::AsStated => ThresholdMode::AsStated,
            ThresholdArg::Conservative => ThresholdMode::Conservative,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "specrat", version, about = "Spectral pairs and rationality certificates for clusters A + [0,1]")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "as-stated")]
    threshold_mode: ThresholdArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check that δ̂_Γ vanishes on (A - A) \ {0}
    Verify {
        #[arg(long)]
        cluster: String,
        #[arg(long)]
        gamma: String,
    },
    /// Integer zero set of δ̂_Γ as a periodic part and exceptional window
    Zeros {
        #[arg(long)]
        gamma: String,
        #[arg(long, default_value_t = -20, allow_hyphen_values = true)]
        lo: i64,
        #[arg(long, default_value_t = 20, allow_hyphen_values = true)]
        hi: i64,
    },
    /// Rational equivalence classes of Γ
    Classes {
        #[arg(long)]
        gamma: String,
    },
    /// Flags of shape r × s inside a set (JSON integer list) or in A - A
    Flags {
        #[arg(long, conflicts_with = "cluster", required_unless_present = "cluster")]
        set: Option<String>,
        #[arg(long)]
        cluster: Option<String>,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        r: i64,
        #[arg(long, value_parser = clap::value_parser!(i64).range(1..))]
        s: i64,
        #[arg(long)]
        n_max: Option<i64>,
    },
    /// Rationality certificate: from a flag in A - A, from Γ's rational
    /// classes, or from a flag in Γ's zero set
    Certify {
        #[arg(long)]
        cluster: String,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, requires = "gamma")]
        flag: Option<String>,
    },
    /// Decide spectrality of a cluster
    Decide {
        #[arg(long)]
        cluster: String,
        #[arg(long)]
        den_max: Option<u64>,
    },
    /// Enumerate spectra with denominators at most den-max
    Enum {
        #[arg(long)]
        cluster: String,
        #[arg(long)]
        den_max: u64,
    },
    /// Rational zeros of the mask polynomial on the unit circle
    MaskZeros {
        #[arg(long)]
        cluster: String,
    },
    /// Tiling complements of A in ℤ_n
    Tile {
        #[arg(long)]
        cluster: String,
        #[arg(long)]
        n: u64,
    },
    /// Check the flag-extension mechanism on a concrete Γ
    Extend {
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        flag: String,
    },
    /// Re-validate a certificate or spectrality verdict
    CheckCertificate {
        document: String,
    },
    /// Parse and re-serialize a document
    Roundtrip {
        document: String,
    },
}

/// Failure with the exit code it maps to.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: e.exit_code(), message: e.to_string() }
    }
}

type Outcome = std::result::Result<(i32, String), Failure>;

fn read_doc(arg: &str) -> Result<String> {
    let t = arg.trim_start();
    if t.starts_with('{') || t.starts_with('[') {
        return Ok(arg.to_string());
    }
    std::fs::read_to_string(arg)
        .map_err(|e| Error::InvalidInput(format!("cannot read {arg}: {e}")))
}

fn load<T: for<'de> serde::Deserialize<'de>>(arg: &str) -> Result<T> {
    json::parse(&read_doc(arg)?)
}

fn emit<T: Serialize>(v: &T) -> Outcome {
    Ok((0, json::render(v)?))
}

fn certify(cluster: &str, gamma: Option<&str>, flag: Option<&str>, mode: ThresholdMode) -> Outcome {
    let c: Cluster = load(cluster)?;
    let Some(gamma) = gamma else {
        if let Some(cert) = theorem7_pipeline(&c, None, mode)? {
            return emit(&cert);
        }
        if let Some(cert) = laba_certificate(&c) {
            return emit(&cert);
        }
        let doc = json!({
            "verdict": "NoApplicableFlag",
            "cluster": c,
            "threshold_mode": mode,
        });
        return Ok((2, json::render(&doc)?));
    };
    let g: Gamma = load(gamma)?;
    let pv = verify_pair(&c, &g)?;
    if !pv.is_spectral_pair {
        return emit(&not_a_pair_certificate(&c, &g, &pv));
    }
    match flag {
        Some(f) => {
            let f: Flag = load(f)?;
            let mut cert = theorem4_verify_on(&g, &f, mode)?;
            cert.cluster = Some(c);
            emit(&cert)
        }
        None => emit(&theorem3_certificate(&c, &g)?),
    }
}

fn check(document: &str) -> Outcome {
    let text = read_doc(document)?;
    let v: serde_json::Value = json::parse(&text)?;
    let kind = if v.get("status").is_some() {
        let verdict: SpectralityVerdict = json::parse(&text)?;
        check_spectrality_verdict(&verdict)?;
        "spectrality_verdict"
    } else {
        check_certificate(&json::parse::<RationalityCertificate>(&text)?)?;
        "certificate"
    };
    emit(&json!({ "valid": true, "kind": kind }))
}

fn dispatch(cli: Cli) -> Outcome {
    let mode: ThresholdMode = cli.threshold_mode.into();
    match cli.command {
        Command::Verify { cluster, gamma } => {
            let c: Cluster = load(&cluster)?;
            let g: Gamma = load(&gamma)?;
            emit(&verify_pair(&c, &g)?)
        }
        Command::Zeros { gamma, lo, hi } => emit(&zero_report(&load(&gamma)?, (lo, hi))?),
        Command::Classes { gamma } => emit(&rational_classes(&load(&gamma)?)?),
        Command::Flags { set, cluster, r, s, n_max } => {
            let s_set: BTreeSet<i64> = match (set, cluster) {
                (Some(set), _) => load::<Vec<i64>>(&set)?.into_iter().collect(),
                (None, Some(c)) => {
                    load::<Cluster>(&c)?.difference_set().values().iter().copied().collect()
                }
                (None, None) => unreachable!("clap enforces one source"),
            };
            let flags = find_flags(&s_set, r, s, None, n_max);
            emit(&json!({ "set": s_set, "r": r, "s": s, "flags": flags }))
        }
        Command::Certify { cluster, gamma, flag } => {
            certify(&cluster, gamma.as_deref(), flag.as_deref(), mode)
        }
        Command::Decide { cluster, den_max } => {
            let v = decide_spectrality(&load(&cluster)?, den_max, mode)?;
            let code = if v.status == SpectralityStatus::Unknown { 2 } else { 0 };
            Ok((code, json::render(&v)?))
        }
        Command::Enum { cluster, den_max } => {
            emit(&enumerate_rational_spectra(&load(&cluster)?, den_max)?)
        }
        Command::MaskZeros { cluster } => {
            let c: Cluster = load(&cluster)?;
            let zeros: Vec<FracDoc> = c
                .rational_mask_zeros()
                .iter()
                .map(|z| FracDoc::from_rational(z).expect("small fraction"))
                .collect();
            emit(&json!({
                "cluster": c,
                "cyclotomic_divisors": c.cyclotomic_divisors(),
                "zeros": zeros,
                "laba_rational": c.laba_rationality(),
            }))
        }
        Command::Tile { cluster, n } => {
            let c: Cluster = load(&cluster)?;
            let complements = tiling_complements_mod(&c, n)?;
            emit(&json!({ "cluster": c, "n": n, "complements": complements }))
        }
        Command::Extend { gamma, flag } => {
            let (ok, trace) = theorem6_verify_on(&load(&gamma)?, &load(&flag)?)?;
            emit(&json!({ "holds": ok, "trace": trace }))
        }
        Command::CheckCertificate { document } => check(&document),
        Command::Roundtrip { document } => Ok((0, json::round_trip(&read_doc(&document)?)?)),
    }
}

/// Runs one command; `args` excludes the program name.
pub fn run<I, S>(args: I) -> CommandResult
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv = std::iter::once(std::ffi::OsString::from("specrat"))
        .chain(args.into_iter().map(Into::into));
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandResult { exit_code: 1, stdout: String::new(), stderr: text }
            } else {
                CommandResult { exit_code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli) {
        Ok((exit_code, stdout)) => CommandResult { exit_code, stdout, stderr: String::new() },
        Err(f) => CommandResult {
            exit_code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.message),
        },
    }
}
