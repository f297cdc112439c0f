//! Command grammar and the conversion of command line strings into domain
//! objects. Conversion failures carry the argument name and entry position,
//! and any `@path` argument is read as a JSON document in the same shape
//! the corresponding output uses.

use clap::{Parser, Subcommand};
use num_traits::Zero;
use qforms::{parse_rational, DiagonalForm, Error, Place, Rational, Result};
use serde::de::DeserializeOwned;
use std::collections::BTreeSet;
use std::fs;

#[derive(Parser)]
#[command(
    name = "qforms",
    version,
    about = "Exact local-global invariants and commensurability decisions \
             for quadratic forms over the rationals"
)]
pub struct Cli {
    /// Largest auxiliary prime the realization and similarity sweeps may use.
    #[arg(long, global = true, env = "QFORMS_SEARCH_BOUND", value_name = "N")]
    pub search_bound: Option<u64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Dimension, determinant and discriminant classes, signature, and the
    /// Hasse invariants over the supporting places.
    Invariants {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Hilbert symbol (a, b) at a place.
    Hilbert {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        place: String,
    },
    /// Isometry over the rationals, or over one completion if a place is given.
    Isometric {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        place: Option<String>,
    },
    /// Isotropy over the rationals (with a witness in low dimension), or
    /// over one completion if a place is given.
    Isotropic {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        place: Option<String>,
    },
    /// Witt index over the completion at a place.
    Witt {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        place: String,
    },
    /// Tits index of the special orthogonal group over a completion.
    TitsIndex {
        #[arg(allow_hyphen_values = true)]
        form: String,
        #[arg(allow_hyphen_values = true)]
        place: String,
    },
    /// Similarity: is some rational multiple of the first form isometric to
    /// the second?
    Similar {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
    },
    /// Whether the two forms have isomorphic special orthogonal groups.
    Isogroupic {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
    },
    /// Whether the first form embeds in the second over the rationals, or
    /// over one completion if a place is given.
    Subform {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
        #[arg(allow_hyphen_values = true)]
        place: Option<String>,
    },
    /// Distinguishing codimension-1 subform for an odd-dimensional pair,
    /// certified at the given finite place.
    WitnessOdd {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        place: String,
    },
    /// Distinguishing codimension-1 subform for an even-dimensional pair
    /// with locally square discriminants.
    WitnessEven1 {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        place: String,
    },
    /// Distinguishing codimension-2 subform for an even-dimensional pair
    /// whose discriminants differ at the place.
    WitnessEven2 {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
        #[arg(allow_hyphen_values = true)]
        place: String,
    },
    /// Re-check a certificate produced by a witness command or dichotomy.
    VerifyCert {
        /// Inline JSON or @path to a file holding the certificate object.
        cert: String,
    },
    /// A complement t with r + t isometric to q, when the codimension is at
    /// least 3.
    Transfer {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Commensurability of the hyperbolic quotients of two admissible forms.
    Commensurable {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
    },
    /// Commensurable-or-certified-witness report for an admissible pair of
    /// dimension at least 5.
    Dichotomy {
        #[arg(allow_hyphen_values = true)]
        q1: String,
        #[arg(allow_hyphen_values = true)]
        q2: String,
    },
    /// Whether the space of the first admissible form embeds as a totally
    /// geodesic subspace of the space of the second.
    Contains {
        #[arg(allow_hyphen_values = true)]
        r: String,
        #[arg(allow_hyphen_values = true)]
        q: String,
    },
    /// Prime-set parametrization of odd-dimensional commensurability classes.
    Maclachlan {
        #[command(subcommand)]
        cmd: MaclachlanCmd,
    },
    /// Build a form with the invariants given in a profile document.
    Synthesize {
        /// Inline JSON or @path to a file holding the profile.
        profile: String,
    },
    /// A rational landing in prescribed local square classes.
    SquareExists {
        /// Inline JSON or @path: array of {"place", "representative"} pairs.
        constraints: String,
    },
}

#[derive(Subcommand)]
pub enum MaclachlanCmd {
    /// Read the prime set of an odd-dimensional admissible form.
    ToPrimes {
        #[arg(allow_hyphen_values = true)]
        form: String,
    },
    /// Realize a prime set as a determinant-one admissible form.
    ToForm {
        /// Half-dimension n; the form has dimension 2n + 1.
        #[arg(long)]
        n: usize,
        /// Comma-separated primes; omit for the empty set.
        primes: Option<String>,
    },
    /// All classes over prime sets drawn from primes up to the bound.
    Enumerate {
        /// Half-dimension n; forms have dimension 2n + 1.
        #[arg(long)]
        n: usize,
        #[arg(long)]
        prime_bound: u64,
    },
}

fn read_at_path(label: &str, path: &str) -> Result<String> {
    fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{label}: cannot read '{path}': {e}")))
}

// The bare description of an error, without the "parse error:" prefix the
// Display form carries, so nested position labels read as one message.
fn detail(e: &Error) -> String {
    match e {
        Error::Parse(msg) => msg.clone(),
        other => other.to_string(),
    }
}

// A single nonzero entry; the documented grammar wants denominators
// positive, so "1/-2" is rejected even though the rational type could
// normalize it.
fn parse_entry(tok: &str) -> Result<Rational> {
    if let Some((_, den)) = tok.split_once('/') {
        if den.trim().starts_with('-') {
            return Err(Error::Parse(format!(
                "'{}' must have a positive denominator",
                tok.trim()
            )));
        }
    }
    let x = parse_rational(tok)?;
    if x.is_zero() {
        return Err(Error::Parse("zero is not allowed".into()));
    }
    Ok(x)
}

/// Comma-separated rationals, or @path to a JSON array of them.
pub fn form_arg(label: &str, raw: &str) -> Result<DiagonalForm> {
    if let Some(path) = raw.strip_prefix('@') {
        let text = read_at_path(label, path)?;
        return serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("{label} ('{path}'): {e}")));
    }
    let mut entries = Vec::new();
    for (i, tok) in raw.split(',').enumerate() {
        let entry = parse_entry(tok)
            .map_err(|e| Error::Parse(format!("{label}, entry {}: {}", i + 1, detail(&e))))?;
        entries.push(entry);
    }
    DiagonalForm::new(entries).map_err(|e| Error::Parse(format!("{label}: {}", detail(&e))))
}

/// A nonzero rational scalar argument.
pub fn rational_arg(label: &str, raw: &str) -> Result<Rational> {
    parse_entry(raw).map_err(|e| Error::Parse(format!("{label}: {}", detail(&e))))
}

/// 'inf' or a decimal prime. Any failure, including a composite number, is
/// a parse error of this argument.
pub fn place_arg(label: &str, raw: &str) -> Result<Place> {
    raw.parse::<Place>()
        .map_err(|e| Error::Parse(format!("{label}: {}", detail(&e))))
}

/// Inline JSON or @path holding a document of the expected shape.
pub fn json_arg<T: DeserializeOwned>(label: &str, raw: &str) -> Result<T> {
    let text = match raw.strip_prefix('@') {
        Some(path) => read_at_path(label, path)?,
        None => raw.to_string(),
    };
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{label}: {e}")))
}

/// Comma-separated primes; None or an empty string is the empty set.
pub fn primes_arg(label: &str, raw: Option<&str>) -> Result<BTreeSet<u64>> {
    let mut out = BTreeSet::new();
    let Some(raw) = raw else { return Ok(out) };
    if raw.trim().is_empty() {
        return Ok(out);
    }
    for (i, tok) in raw.split(',').enumerate() {
        let p: u64 = tok.trim().parse().map_err(|_| {
            Error::Parse(format!("{label}, entry {}: '{}' is not an integer", i + 1, tok.trim()))
        })?;
        Place::finite(p)
            .map_err(|e| Error::Parse(format!("{label}, entry {}: {}", i + 1, detail(&e))))?;
        out.insert(p);
    }
    Ok(out)
}
