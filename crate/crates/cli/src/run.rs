//! Dispatch from the parsed command line to the library, and assembly of
//! the JSON envelope. Every run prints exactly one JSON object: {"ok": true,
//! "result": ..., "certificate": ...?} on success, {"ok": false, "error":
//! {"kind", "message"}} otherwise. Exit codes separate how a run ended:
//! 0 the decision was computed (whatever the answer), 1 the request did not
//! parse, 2 a precondition failed, 3 a bounded search ran out of room.
//! Nested objects use sorted keys and canonical rational strings, so output
//! is byte-stable for fixed inputs.

use crate::args::{self, Cli, Command, MaclachlanCmd};
use clap::error::ErrorKind;
use clap::Parser;
use qforms::{
    commensurable, contains_as_subspace, dichotomy_report, distinguishing_subform_even_codim1,
    distinguishing_subform_even_codim2, distinguishing_subform_odd, globally_isometric,
    globally_isotropic, hilbert_symbol, is_subform, isogroupic, local_isometric, local_isotropic,
    local_subform, local_witt_index, maclachlan_enumerate, maclachlan_form_to_primes,
    maclachlan_primes_to_form, similar, square_existence, synthesize_form, tits_index,
    transfer_subform, verify_certificate, DiagonalForm, Error, LocalSquareClass, Rational, Result,
    SquareClassConstraint, SubformCertificate, SynthesisProfile, DEFAULT_SEARCH_BOUND,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::ffi::OsString;

pub struct Outcome {
    pub code: i32,
    pub body: String,
}

#[derive(Serialize)]
struct Response {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorBody>,
}

#[derive(Serialize)]
struct ErrorBody {
    kind: &'static str,
    message: String,
}

fn encode(resp: &Response) -> String {
    serde_json::to_string(resp).expect("the response envelope always serializes")
}

fn success(result: Value, certificate: Option<Value>) -> Outcome {
    Outcome {
        code: 0,
        body: encode(&Response { ok: true, result: Some(result), certificate, error: None }),
    }
}

fn failure(code: i32, kind: &'static str, message: String) -> Outcome {
    Outcome {
        code,
        body: encode(&Response {
            ok: false,
            result: None,
            certificate: None,
            error: Some(ErrorBody { kind, message }),
        }),
    }
}

fn classify(e: &Error) -> (i32, &'static str) {
    match e {
        Error::Parse(_) => (1, "parse"),
        Error::SearchExhausted(_) => (3, "search-exhausted"),
        _ => (2, "precondition"),
    }
}

pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            return Outcome { code: 0, body: e.render().to_string() };
        }
        Err(e) => return failure(1, "parse", e.to_string()),
    };
    let bound = cli.search_bound.unwrap_or(DEFAULT_SEARCH_BOUND);
    match execute(cli.command, bound) {
        Ok((result, certificate)) => success(result, certificate),
        Err(e) => {
            let (code, kind) = classify(&e);
            failure(code, kind, e.to_string())
        }
    }
}

fn form_value(q: &DiagonalForm) -> Value {
    serde_json::to_value(q).expect("forms always serialize")
}

fn cert_value(cert: &SubformCertificate) -> Value {
    serde_json::to_value(cert).expect("certificates always serialize")
}

fn witness_value(x: &[Rational]) -> Value {
    Value::Array(x.iter().map(|c| Value::String(c.to_string())).collect())
}

fn invariants_value(q: &DiagonalForm) -> Result<Value> {
    let profile = q.invariants()?;
    let mut hasse = serde_json::Map::new();
    for v in q.support_places()? {
        hasse.insert(v.to_string(), json!(q.hasse(v)?));
    }
    Ok(json!({
        "dim": profile.dim,
        "det": profile.det.to_string(),
        "disc": profile.disc.to_string(),
        "signature": [profile.signature.0, profile.signature.1],
        "hasse": hasse,
    }))
}

/// One entry of the square-exists request: the class of `representative`
/// at `place` is the class the answer must land in.
#[derive(Deserialize)]
struct ConstraintDoc {
    place: String,
    representative: String,
}

fn execute(cmd: Command, bound: u64) -> Result<(Value, Option<Value>)> {
    Ok(match cmd {
        Command::Invariants { form } => {
            let q = args::form_arg("form", &form)?;
            (invariants_value(&q)?, None)
        }
        Command::Hilbert { a, b, place } => {
            let a = args::rational_arg("a", &a)?;
            let b = args::rational_arg("b", &b)?;
            let v = args::place_arg("place", &place)?;
            (json!(hilbert_symbol(&a, &b, v)?), None)
        }
        Command::Isometric { q1, q2, place } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let verdict = match place {
                Some(p) => local_isometric(&q1, &q2, args::place_arg("place", &p)?)?,
                None => globally_isometric(&q1, &q2)?,
            };
            (json!(verdict), None)
        }
        Command::Isotropic { form, place } => {
            let q = args::form_arg("form", &form)?;
            let (verdict, witness) = match place {
                Some(p) => (local_isotropic(&q, args::place_arg("place", &p)?)?, None),
                None => globally_isotropic(&q)?,
            };
            let mut body = serde_json::Map::new();
            body.insert("isotropic".into(), json!(verdict));
            if let Some(x) = witness {
                body.insert("witness".into(), witness_value(&x));
            }
            (Value::Object(body), None)
        }
        Command::Witt { form, place } => {
            let q = args::form_arg("form", &form)?;
            let v = args::place_arg("place", &place)?;
            (json!(local_witt_index(&q, v)?), None)
        }
        Command::TitsIndex { form, place } => {
            let q = args::form_arg("form", &form)?;
            let v = args::place_arg("place", &place)?;
            let idx = tits_index(&q, v)?;
            let mut doc = serde_json::to_value(idx)
                .expect("indices always serialize")
                .as_object()
                .cloned()
                .expect("the index serializes to an object");
            doc.insert("label".into(), json!(idx.label()));
            (Value::Object(doc), None)
        }
        Command::Similar { q1, q2 } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let lambda = similar(&q1, &q2, bound)?;
            (
                json!({
                    "similar": lambda.is_some(),
                    "lambda": lambda.map(|c| c.to_string()),
                }),
                None,
            )
        }
        Command::Isogroupic { q1, q2 } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let verdict = isogroupic(&q1, &q2, bound)?;
            (serde_json::to_value(verdict).expect("verdicts always serialize"), None)
        }
        Command::Subform { r, q, place } => {
            let r = args::form_arg("r", &r)?;
            let q = args::form_arg("q", &q)?;
            let verdict = match place {
                Some(p) => local_subform(&r, &q, args::place_arg("place", &p)?)?,
                None => is_subform(&r, &q)?,
            };
            (json!(verdict), None)
        }
        Command::WitnessOdd { q1, q2, place } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let v = args::place_arg("place", &place)?;
            let (r, cert) = distinguishing_subform_odd(&q1, &q2, v, bound)?;
            (
                json!({ "place": v.to_string(), "witness": form_value(&r) }),
                Some(cert_value(&cert)),
            )
        }
        Command::WitnessEven1 { q1, q2, place } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let v = args::place_arg("place", &place)?;
            let (r, cert) = distinguishing_subform_even_codim1(&q1, &q2, v)?;
            (
                json!({ "place": v.to_string(), "witness": form_value(&r) }),
                Some(cert_value(&cert)),
            )
        }
        Command::WitnessEven2 { q1, q2, place } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let v = args::place_arg("place", &place)?;
            let (r, cert) = distinguishing_subform_even_codim2(&q1, &q2, v, bound)?;
            (
                json!({ "place": v.to_string(), "witness": form_value(&r) }),
                Some(cert_value(&cert)),
            )
        }
        Command::VerifyCert { cert } => {
            let cert: SubformCertificate = args::json_arg("cert", &cert)?;
            (json!(verify_certificate(&cert)), None)
        }
        Command::Transfer { r, q } => {
            let r = args::form_arg("r", &r)?;
            let q = args::form_arg("q", &q)?;
            let t = transfer_subform(&r, &q, bound)?;
            (json!({ "complement": form_value(&t) }), None)
        }
        Command::Commensurable { q1, q2 } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            (json!(commensurable(&q1, &q2, bound)?), None)
        }
        Command::Dichotomy { q1, q2 } => {
            let q1 = args::form_arg("q1", &q1)?;
            let q2 = args::form_arg("q2", &q2)?;
            let report = dichotomy_report(&q1, &q2, bound)?;
            let cert = report.codim1_witness.as_ref().or(report.codim2_witness.as_ref());
            let result = json!({
                "dims_equal": report.dims_equal,
                "commensurable": report.commensurable,
                "shared_range": report.shared_range.map(|(a, b)| vec![a, b]),
            });
            (result, cert.map(cert_value))
        }
        Command::Contains { r, q } => {
            let r = args::form_arg("r", &r)?;
            let q = args::form_arg("q", &q)?;
            let verdict = contains_as_subspace(&r, &q)?;
            (serde_json::to_value(verdict).expect("verdicts always serialize"), None)
        }
        Command::Maclachlan { cmd } => match cmd {
            MaclachlanCmd::ToPrimes { form } => {
                let q = args::form_arg("form", &form)?;
                let class = maclachlan_form_to_primes(&q)?;
                (serde_json::to_value(&class).expect("classes always serialize"), None)
            }
            MaclachlanCmd::ToForm { n, primes } => {
                let set = args::primes_arg("primes", primes.as_deref())?;
                let q = maclachlan_primes_to_form(n, &set, bound)?;
                (
                    json!({
                        "form": form_value(&q),
                        "n": n,
                        "primes": set.iter().collect::<Vec<_>>(),
                    }),
                    None,
                )
            }
            MaclachlanCmd::Enumerate { n, prime_bound } => {
                let classes = maclachlan_enumerate(n, prime_bound, bound)?;
                (
                    json!({
                        "classes": classes
                            .iter()
                            .map(|c| serde_json::to_value(c).expect("classes always serialize"))
                            .collect::<Vec<_>>(),
                        "count": classes.len(),
                    }),
                    None,
                )
            }
        },
        Command::Synthesize { profile } => {
            let profile: SynthesisProfile = args::json_arg("profile", &profile)?;
            let q = synthesize_form(&profile, bound)?;
            (json!({ "form": form_value(&q) }), None)
        }
        Command::SquareExists { constraints } => {
            let docs: Vec<ConstraintDoc> = args::json_arg("constraints", &constraints)?;
            let mut cs = Vec::with_capacity(docs.len());
            for (i, doc) in docs.iter().enumerate() {
                let label = format!("constraints, entry {}", i + 1);
                let place = args::place_arg(&label, &doc.place)?;
                let rep = args::rational_arg(&label, &doc.representative)?;
                cs.push(SquareClassConstraint { place, target: LocalSquareClass::of(&rep, place)? });
            }
            let s = square_existence(&cs, bound)?;
            (json!({ "value": s.to_string() }), None)
        }
    })
}
