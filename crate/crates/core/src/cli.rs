//! The `csai` command-line front end.
//!
//! Every subcommand reads one JSON document (a path, or `-` for stdin),
//! runs one library operation and prints one JSON document. Exit codes:
//! 0 for an affirmative verdict, 1 for a negative verdict with its
//! witness, 2 for input errors (printed as `{"error": ...}`), 3 when the
//! centre test is inconclusive.

use std::ffi::OsString;
use std::io::Read;

use clap::{Parser, ValueEnum};
use serde_json::{json, Value};

use crate::cones::{self, HermitianSquare};
use crate::error::{Error, Result};
use crate::involution::{self, Involution};
use crate::json::*;
use crate::matrix::{Matrix, MatrixTuple};
use crate::scalars::{GaussRational, Kind, Quaternion, Rational, Scalar};
use crate::structure::{
    self, BasisFamily, CsaReport, CsaVerdict, CsaiVerdict, DeltaCase, FieldVerdict, MatrixAlgebra,
};
use crate::words::{decide_similarity, ScanOptions};

pub const EXIT_AFFIRMATIVE: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT_ERROR: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "csai",
    version,
    about = "Exact checks for matrix algebras with involution"
)]
pub struct Cli {
    pub command: Command,
    /// Input JSON document; `-` reads stdin.
    #[arg(default_value = "-")]
    pub input: String,
    /// Seed for randomized steps (the centre test).
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Longest word scanned by `similar`; overrides `max_len` in the input.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Worker threads for `similar`; 1 or unset scans sequentially.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Simultaneous unitary similarity of two tuples.
    Similar,
    /// Positive semidefiniteness of a hermitian matrix.
    Psd,
    /// Sylvester signature of a hermitian matrix.
    Signature,
    /// Write a hermitian matrix as adjoint(b)·b.
    HermSquare,
    /// Kind and type of an involution.
    InvoClassify,
    /// Positivity of an involution.
    InvoPositive,
    /// Find a with sigma = Int(a)∘gamma.
    SolveScaling,
    /// Check a cone membership certificate.
    ConeVerify,
    /// Check the multiplication table of a matrix-unit family.
    DeltaCheck,
    /// Central simplicity of a structure-constant algebra.
    CsaCheck,
    /// Central simplicity with involution.
    CsaiCheck,
    /// Reduced trace of a matrix.
    Trd,
}

/// Exit code and JSON body of one invocation.
#[derive(Clone, Debug, PartialEq)]
pub struct Response {
    pub code: i32,
    pub body: Value,
}

impl Response {
    fn new(code: i32, body: Value) -> Self {
        Response { code, body }
    }

    fn verdict(ok: bool, body: Value) -> Self {
        Response::new(if ok { EXIT_AFFIRMATIVE } else { EXIT_NEGATIVE }, body)
    }

    pub fn error(msg: impl std::fmt::Display) -> Self {
        Response::new(EXIT_INPUT_ERROR, json!({ "error": msg.to_string() }))
    }

    /// The document as printed: pretty JSON with a trailing newline.
    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.body).expect("JSON values serialize");
        s.push('\n');
        s
    }
}

macro_rules! by_kind {
    ($kind:expr, $f:ident($($arg:expr),*)) => {
        match $kind {
            Kind::Real => $f::<Rational>($($arg),*),
            Kind::Complex => $f::<GaussRational>($($arg),*),
            Kind::Quaternion => $f::<Quaternion>($($arg),*),
        }
    };
}

/// Parses arguments (including the program name), reads the input through
/// `read_path` (which receives the path, `-` for stdin) and runs the
/// command.
pub fn run_with<I, S>(args: I, read_path: impl FnOnce(&str) -> std::io::Result<String>) -> Response
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => return Response::error(e.to_string().trim_end()),
    };
    let path = cli.input.clone();
    let text = match read_path(&path) {
        Ok(t) => t,
        Err(e) => return Response::error(format!("cannot read {path}: {e}")),
    };
    let doc: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Response::error(format!("malformed JSON: {e}")),
    };
    match dispatch(&cli, &doc) {
        Ok(r) => r,
        Err(e) => Response::error(e),
    }
}

/// Reads `-` from stdin and anything else from the file system.
pub fn read_input(path: &str) -> std::io::Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
    }
}

pub fn dispatch(cli: &Cli, doc: &Value) -> Result<Response> {
    match cli.command {
        Command::Similar => similar(cli, doc),
        Command::Psd => by_kind!(kind_from_value(doc)?, psd(doc)),
        Command::Signature => by_kind!(kind_from_value(doc)?, signature(doc)),
        Command::HermSquare => by_kind!(kind_from_value(doc)?, herm_square(doc)),
        Command::InvoClassify => by_kind!(kind_from_value(doc)?, invo_classify(doc)),
        Command::InvoPositive => by_kind!(kind_from_value(doc)?, invo_positive(doc)),
        Command::SolveScaling => {
            by_kind!(kind_from_value(field(doc, "sigma")?)?, solve_scaling(doc))
        }
        Command::ConeVerify => by_kind!(kind_from_value(field(doc, "a")?)?, cone_verify(doc)),
        Command::DeltaCheck => delta_check(doc),
        Command::CsaCheck => csa_check(cli, doc),
        Command::CsaiCheck => csai_check(cli, doc),
        Command::Trd => by_kind!(kind_from_value(doc)?, trd(doc)),
    }
}

fn tuple_from_value<T: Scalar>(v: &Value, what: &str) -> Result<MatrixTuple<T>> {
    let items = v
        .as_array()
        .ok_or_else(|| Error::Parse(format!("{what} must be an array of matrices")))?
        .iter()
        .map(matrix_from_value::<T>)
        .collect::<Result<Vec<_>>>()?;
    MatrixTuple::new(items)
}

fn similar(cli: &Cli, doc: &Value) -> Result<Response> {
    let first = field(doc, "X")?.get(0).ok_or(Error::EmptyTuple)?;
    by_kind!(kind_from_value(first)?, similar_as(cli, doc))
}

fn similar_as<T: Scalar>(cli: &Cli, doc: &Value) -> Result<Response> {
    let x = tuple_from_value::<T>(field(doc, "X")?, "X")?;
    let y = tuple_from_value::<T>(field(doc, "Y")?, "Y")?;
    let max_len = match (cli.max_len, doc.get("max_len")) {
        (Some(m), _) => Some(m),
        (None, None | Some(Value::Null)) => None,
        (None, Some(v)) => Some(usize_from_value(v, "max_len")?),
    };
    let threads = cli.threads.unwrap_or(1);
    let options = ScanOptions {
        max_len,
        parallel: threads > 1,
        ..ScanOptions::default()
    };
    let verdict = if threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .map_err(|e| Error::Invalid(e.to_string()))?;
        pool.install(|| decide_similarity(&x, &y, &options))?
    } else {
        decide_similarity(&x, &y, &options)?
    };
    let mut body = json!({ "outcome": verdict.outcome.to_string(), "max_len": verdict.max_len });
    if let (Some(w), Some((tx, ty))) = (&verdict.witness, &verdict.traces) {
        body["witness"] = json!(w.to_string());
        body["traces"] = json!([scalar_to_value(tx), scalar_to_value(ty)]);
    }
    Ok(Response::verdict(verdict.is_equivalent(), body))
}

fn psd<T: Scalar>(doc: &Value) -> Result<Response> {
    let h = matrix_from_value::<T>(doc)?;
    let v = cones::is_psd(&h)?;
    Ok(Response::verdict(
        v.psd,
        json!({ "psd": v.psd, "certificate": congruence_to_value(&v.certificate) }),
    ))
}

fn signature<T: Scalar>(doc: &Value) -> Result<Response> {
    let h = matrix_from_value::<T>(doc)?;
    let cert = cones::diagonalize_congruence(&h)?;
    let s = cert.signature();
    Ok(Response::new(
        EXIT_AFFIRMATIVE,
        json!({
            "positives": s.positives,
            "negatives": s.negatives,
            "zeros": s.zeros,
            "signature": s.signature,
            "certificate": congruence_to_value(&cert),
        }),
    ))
}

fn herm_square<T: Scalar>(doc: &Value) -> Result<Response> {
    let h = matrix_from_value::<T>(doc)?;
    Ok(match cones::hermitian_square_certificate(&h)? {
        HermitianSquare::ExactFactor(b) => Response::new(
            EXIT_AFFIRMATIVE,
            json!({ "result": "exact-factor", "b": matrix_to_value(&b) }),
        ),
        HermitianSquare::RealClosureFactor(c) => Response::new(
            EXIT_AFFIRMATIVE,
            json!({ "result": "real-closure-factor", "certificate": congruence_to_value(&c) }),
        ),
        HermitianSquare::NotPsd(c) => Response::new(
            EXIT_NEGATIVE,
            json!({ "result": "not-psd", "certificate": congruence_to_value(&c) }),
        ),
    })
}

fn invo_classify<T: Scalar>(doc: &Value) -> Result<Response> {
    let inv = involution_from_value::<T>(doc)?;
    if let Err(v) = inv.verify() {
        return Ok(Response::new(
            EXIT_NEGATIVE,
            json!({ "valid": false, "violation": v.to_string() }),
        ));
    }
    let c = inv.classify()?;
    Ok(Response::new(
        EXIT_AFFIRMATIVE,
        json!({
            "valid": true,
            "kind": c.kind.to_string(),
            "type": c.ty.to_string(),
            "dim_sym": c.dim_sym,
            "degree": c.degree,
        }),
    ))
}

fn invo_positive<T: Scalar>(doc: &Value) -> Result<Response> {
    let inv = involution_from_value::<T>(doc)?;
    let v = inv.is_positive();
    Ok(Response::verdict(
        v.positive,
        json!({
            "positive": v.positive,
            "gram": matrix_to_value(&v.gram),
            "certificate": congruence_to_value(&v.certificate),
        }),
    ))
}

fn solve_scaling<T: Scalar>(doc: &Value) -> Result<Response> {
    let sigma = involution_from_value::<T>(field(doc, "sigma")?)?;
    let gamma = involution_from_value::<T>(field(doc, "gamma")?)?;
    Ok(match involution::solve_scaling(&sigma, &gamma) {
        Ok(a) => Response::new(EXIT_AFFIRMATIVE, json!({ "scale": matrix_to_value(&a) })),
        Err(Error::NoSolution) => Response::new(
            EXIT_NEGATIVE,
            json!({ "scale": null, "reason": Error::NoSolution.to_string() }),
        ),
        Err(e) => return Err(e),
    })
}

fn cone_verify<T: Scalar>(doc: &Value) -> Result<Response> {
    let a = matrix_from_value::<T>(field(doc, "a")?)?;
    let inv: Involution<T> = match doc.get("involution") {
        Some(v) => involution_from_value(v)?,
        None => Involution::canonical(a.n()),
    };
    let z = matrix_from_value::<T>(field(doc, "z")?)?;
    let cert = cone_certificate_from_value::<T>(field(doc, "certificate")?)?;
    Ok(match cones::verify_cone_certificate(&a, &inv, &z, &cert) {
        Ok(()) => Response::new(EXIT_AFFIRMATIVE, json!({ "valid": true })),
        Err(e) => Response::new(
            EXIT_NEGATIVE,
            json!({ "valid": false, "failure": e.to_string() }),
        ),
    })
}

fn delta_report_value(r: &structure::DeltaReport, independent: bool) -> Value {
    json!({
        "holds": r.holds,
        "clauses_checked": r.clauses_checked,
        "failing_clause": r.failing_clause,
        "independent": independent,
    })
}

fn family_n(case: DeltaCase, len: usize) -> Result<usize> {
    let labels = case.labels().len();
    let n = ((len / labels) as f64).sqrt().round() as usize;
    if n == 0 || labels * n * n != len {
        return Err(Error::ShapeMismatch(format!(
            "case {} needs {labels}·n² elements, got {len}",
            case.number()
        )));
    }
    Ok(n)
}

fn delta_matrices<T: Scalar>(case: DeltaCase, family: &[Value]) -> Result<Response> {
    let elems = family
        .iter()
        .map(matrix_from_value::<T>)
        .collect::<Result<Vec<_>>>()?;
    let fam = BasisFamily::new(case, family_n(case, elems.len())?, elems)?;
    let alg = MatrixAlgebra::<T>::new();
    let r = structure::verify_delta(&alg, &fam);
    let independent = fam.is_independent(&alg);
    Ok(Response::verdict(
        r.holds,
        delta_report_value(&r, independent),
    ))
}

/// `{"case": 1|2|3, "family": [...]}` with the family listed label-major,
/// then by row and column. Elements are matrices, or coordinate vectors
/// when an `"algebra"` is given.
fn delta_check(doc: &Value) -> Result<Response> {
    let k = usize_from_value(field(doc, "case")?, "case")?;
    let case = u8::try_from(k)
        .ok()
        .and_then(DeltaCase::from_number)
        .ok_or_else(|| Error::Invalid(format!("case must be 1, 2 or 3, got {k}")))?;
    let family = field(doc, "family")?
        .as_array()
        .ok_or_else(|| Error::Parse("family must be an array".into()))?;
    if let Some(a) = doc.get("algebra") {
        let alg = algebra_from_value(a)?;
        let elems = family
            .iter()
            .map(rationals_from_value)
            .collect::<Result<Vec<_>>>()?;
        if elems.iter().any(|e| e.len() != alg.m()) {
            return Err(Error::ShapeMismatch(format!(
                "family vectors must have length {}",
                alg.m()
            )));
        }
        let fam = BasisFamily::new(case, family_n(case, elems.len())?, elems)?;
        let r = structure::verify_delta(&alg, &fam);
        let independent = fam.is_independent(&alg);
        return Ok(Response::verdict(
            r.holds,
            delta_report_value(&r, independent),
        ));
    }
    let first = family
        .first()
        .ok_or_else(|| Error::Invalid("family is empty".into()))?;
    by_kind!(kind_from_value(first)?, delta_matrices(case, family))
}

fn field_value(v: &FieldVerdict) -> (Value, Value) {
    match v {
        FieldVerdict::Field {
            theta,
            minimal_polynomial,
        } => (
            json!(true),
            json!({ "theta": rationals_to_value(theta), "minimal_polynomial": rationals_to_value(minimal_polynomial) }),
        ),
        FieldVerdict::NotField { left, right } => (
            json!(false),
            json!({ "zero_divisors": [rationals_to_value(left), rationals_to_value(right)] }),
        ),
        FieldVerdict::Inconclusive => (json!("inconclusive"), Value::Null),
    }
}

fn csa_value(r: &CsaReport) -> Value {
    let (is_field, certificate) = field_value(&r.center_field);
    json!({
        "verdict": r.verdict.name(),
        "m": r.m,
        "associativity_violation": r.associativity_violation.map(|(u, v, w)| [u, v, w]),
        "unit_violation": r.unit_violation,
        "semisimple": r.semisimple,
        "center": r.center.iter().map(|z| rationals_to_value(z)).collect::<Vec<_>>(),
        "center_is_field": is_field,
        "center_certificate": certificate,
        "degree": r.degree,
    })
}

fn csa_code(v: CsaVerdict) -> i32 {
    match v {
        CsaVerdict::Inconclusive => EXIT_INCONCLUSIVE,
        v if v.passed() => EXIT_AFFIRMATIVE,
        _ => EXIT_NEGATIVE,
    }
}

fn csa_check(cli: &Cli, doc: &Value) -> Result<Response> {
    let alg = algebra_from_value(doc)?;
    let r = alg.csa_model_check(cli.seed);
    Ok(Response::new(csa_code(r.verdict), csa_value(&r)))
}

fn csai_check(cli: &Cli, doc: &Value) -> Result<Response> {
    let alg = algebra_from_value(doc)?;
    let r = alg.csai_model_check(cli.seed)?;
    let code = match r.verdict {
        CsaiVerdict::Pass => EXIT_AFFIRMATIVE,
        CsaiVerdict::Inconclusive => EXIT_INCONCLUSIVE,
        _ => EXIT_NEGATIVE,
    };
    Ok(Response::new(
        code,
        json!({
            "verdict": r.verdict.name(),
            "algebra": csa_value(&r.csa),
            "involutive": r.involutive,
            "anti_multiplicative_violation": r.anti_multiplicative_violation.map(|(u, v)| [u, v]),
            "symmetric_center_dim": r.symmetric_center_dim,
            "kind": r.kind.to_string(),
        }),
    ))
}

fn trd<T: Scalar>(doc: &Value) -> Result<Response> {
    let m: Matrix<T> = matrix_from_value(doc)?;
    Ok(Response::new(
        EXIT_AFFIRMATIVE,
        json!({ "trd": scalar_to_value(&m.reduced_trace()) }),
    ))
}
