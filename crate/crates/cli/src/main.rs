//! `linfield`: one-shot commands over JSON field and polynomial documents.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use linfield::laws::{self, Mutation};
use linfield::serial::{self, FieldDoc};
use linfield::skew;
use linfield::subfield::{is_block_circulant, is_subfield_poly, SubfieldContext};
use linfield::{dickson, moore, DicksonMatrix, Error, LinPoly};

#[derive(Parser)]
#[command(name = "linfield", version, about = "Exact algebra of linearized polynomials over finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Field description file: {"p": .., "f": [..], "g": [[..], ..]}
    #[arg(long, value_name = "PATH")]
    field: PathBuf,
    /// Spaces of indentation for the JSON output; 0 prints one line.
    #[arg(long, default_value_t = 0, value_name = "INT")]
    json_indent: usize,
}

#[derive(Args)]
struct OnePoly {
    #[command(flatten)]
    common: Common,
    /// Polynomial as JSON, @file, or a name from the field file.
    #[arg(long, value_name = "JSON")]
    poly: String,
}

#[derive(Args)]
struct TwoPolys {
    #[command(flatten)]
    common: Common,
    /// Given twice or more; applied left to right as written.
    #[arg(long, value_name = "JSON", num_args = 1, required = true)]
    poly: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate L at an element.
    Eval {
        #[command(flatten)]
        p: OnePoly,
        #[arg(long, value_name = "JSON")]
        x: String,
    },
    /// Compose polynomials: the first is applied last.
    Compose(TwoPolys),
    /// Rank of L as a GF(q)-linear map.
    Rank(OnePoly),
    /// Determinant of the Dickson matrix.
    Det(OnePoly),
    /// Compositional inverse of a permutation polynomial.
    Invert(OnePoly),
    /// Adjugate polynomial L* with L ∘ L* = det(L) x.
    Adjugate(OnePoly),
    /// GF(q)-basis of the kernel.
    Kernel(OnePoly),
    /// GF(q)-basis of the image.
    Image(OnePoly),
    /// Trace-form representation: 1 full, 2 dual-side, 3 compact.
    TraceRep {
        #[command(flatten)]
        p: OnePoly,
        /// Basis of GF(q^n) over GF(q); defaults to the monomial basis.
        #[arg(long, value_name = "JSON")]
        basis: Option<String>,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=3))]
        form: u8,
    },
    /// Factor a rank n-1 polynomial into degree-one factors and a permutation.
    Factor(OnePoly),
    /// Monic right gcd of two skew polynomials.
    SkewGcd(TwoPolys),
    /// Trace-dual basis.
    DualBasis {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_name = "JSON")]
        basis: String,
    },
    /// Subfield coefficients, full-form pattern and block-circulant structure.
    SubfieldCheck {
        #[command(flatten)]
        p: OnePoly,
        #[arg(long, value_name = "INT")]
        m: usize,
    },
    /// Matrix of L over GF(q) in a basis, by conjugating the Dickson matrix.
    MatrixRep {
        #[command(flatten)]
        p: OnePoly,
        #[arg(long, value_name = "JSON")]
        basis: String,
    },
    /// Run the law suites and report one line per law.
    Selftest {
        /// Deliberately break an identity to confirm the suites notice.
        #[arg(long, value_name = "MUTATION")]
        inject: Option<Mutation>,
        #[arg(long)]
        seed: Option<u64>,
        /// Run the criteria one after another instead of concurrently.
        #[arg(long)]
        serial: bool,
    },
}

struct Failure {
    error: Error,
}

impl From<Error> for Failure {
    fn from(error: Error) -> Self {
        Self { error }
    }
}

fn malformed(msg: impl Into<String>) -> Failure {
    Error::Malformed(msg.into()).into()
}

/// Reads `@path` from disk; anything else is JSON, falling back to a bare name.
fn operand(arg: &str) -> Result<Value, Failure> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|e| malformed(format!("cannot read {path}: {e}")))?,
        None => arg.to_owned(),
    };
    Ok(serde_json::from_str(&text).unwrap_or_else(|_| Value::String(text.trim().to_owned())))
}

fn load_field(path: &Path) -> Result<FieldDoc, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| malformed(format!("cannot read {}: {e}", path.display())))?;
    Ok(text.parse::<FieldDoc>()?)
}

fn load_poly(p: &OnePoly) -> Result<(FieldDoc, LinPoly), Failure> {
    let doc = load_field(&p.common.field)?;
    let l = doc.parse_poly(&operand(&p.poly)?)?;
    Ok((doc, l))
}

fn run(command: &Command) -> Result<(Value, usize), Failure> {
    Ok(match command {
        Command::Eval { p, x } => {
            let (doc, l) = load_poly(p)?;
            let x = doc.parse_element(&operand(x)?)?;
            let y = l.evaluate(&x);
            (json!({"value": serial::element_to_json(&doc.tower, &y)}), p.common.json_indent)
        }
        Command::Compose(ps) => {
            let doc = load_field(&ps.common.field)?;
            let polys = ps
                .poly
                .iter()
                .map(|s| Ok(doc.parse_poly(&operand(s)?)?))
                .collect::<Result<Vec<_>, Failure>>()?;
            let mut it = polys.into_iter();
            let first = it.next().ok_or_else(|| malformed("compose needs at least one --poly"))?;
            let c = it.try_fold(first, |acc, l| acc.compose(&l))?;
            (serial::poly_to_json(&c), ps.common.json_indent)
        }
        Command::Rank(p) => {
            let (_, l) = load_poly(p)?;
            (json!({"rank": DicksonMatrix::from_poly(&l).rank()}), p.common.json_indent)
        }
        Command::Det(p) => {
            let (doc, l) = load_poly(p)?;
            let det = DicksonMatrix::from_poly(&l).determinant();
            (json!({"det": serial::element_to_json(&doc.tower, &det)}), p.common.json_indent)
        }
        Command::Invert(p) => {
            let (_, l) = load_poly(p)?;
            (serial::poly_to_json(&dickson::inverse_poly(&l)?), p.common.json_indent)
        }
        Command::Adjugate(p) => {
            let (_, l) = load_poly(p)?;
            (serial::poly_to_json(&dickson::adjugate_poly(&l)), p.common.json_indent)
        }
        Command::Kernel(p) => {
            let (doc, l) = load_poly(p)?;
            (json!({"kernel": serial::elements_to_json(&doc.tower, &l.kernel_basis())}), p.common.json_indent)
        }
        Command::Image(p) => {
            let (doc, l) = load_poly(p)?;
            (json!({"image": serial::elements_to_json(&doc.tower, &l.image_basis())}), p.common.json_indent)
        }
        Command::TraceRep { p, basis, form } => {
            let (doc, l) = load_poly(p)?;
            let basis = match basis {
                Some(b) => doc.parse_elements(&operand(b)?)?,
                None => doc.tower.monomial_basis(),
            };
            let tf = match form {
                1 => moore::to_trace_form_full(&l, &basis)?,
                2 => moore::to_trace_form_dualside(&l, &basis)?,
                _ => moore::compact_form(&l),
            };
            (serial::trace_form_to_json(&tf), p.common.json_indent)
        }
        Command::Factor(p) => {
            let (doc, l) = load_poly(p)?;
            let chain = skew::factor_chain(&l)?;
            let out = json!({
                "permutation": serial::poly_to_json(&chain.permutation),
                "gammas": serial::elements_to_json(&doc.tower, &chain.gammas),
            });
            (out, p.common.json_indent)
        }
        Command::SkewGcd(ps) => {
            let doc = load_field(&ps.common.field)?;
            let [a, b] = ps.poly.as_slice() else {
                return Err(malformed("skew-gcd needs exactly two --poly operands"));
            };
            let a = doc.parse_skew(&operand(a)?)?;
            let b = doc.parse_skew(&operand(b)?)?;
            (serial::skew_to_json(&a.rgcd(&b)?), ps.common.json_indent)
        }
        Command::DualBasis { common, basis } => {
            let doc = load_field(&common.field)?;
            let basis = doc.parse_elements(&operand(basis)?)?;
            let dual = moore::dual_basis(&doc.tower, &basis)?;
            (json!({"basis": serial::elements_to_json(&doc.tower, &dual)}), common.json_indent)
        }
        Command::SubfieldCheck { p, m } => {
            let (doc, l) = load_poly(p)?;
            let sub = is_subfield_poly(&l, *m)?;
            let ctx = SubfieldContext::new(&doc.tower, *m)?;
            let b = ctx.b_matrix(&l);
            let out = json!({
                "subfield": sub,
                "alpha_pattern": ctx.alpha_pattern_holds(&l),
                "block_circulant": is_block_circulant(&b, *m),
                "b_matrix": serial::base_matrix_to_json(&doc.tower, &b),
            });
            (out, p.common.json_indent)
        }
        Command::MatrixRep { p, basis } => {
            let (doc, l) = load_poly(p)?;
            let basis = doc.parse_elements(&operand(basis)?)?;
            let m = dickson::matrix_rep(&l, &basis)?;
            (json!({"matrix": serial::base_matrix_to_json(&doc.tower, &m)}), p.common.json_indent)
        }
        Command::Selftest { .. } => unreachable!("handled before dispatch"),
    })
}

fn selftest(inject: Option<Mutation>, seed: Option<u64>, serial: bool) -> ExitCode {
    let mut cfg = laws::Config {
        mutation: inject,
        ..laws::Config::default()
    };
    if let Some(seed) = seed {
        cfg.seed = seed;
    }
    let start = Instant::now();
    let reports = laws::run_all(&cfg, !serial);
    let mut ok = true;
    for r in &reports {
        println!("{r}");
        for line in r.lines() {
            println!("{line}");
        }
        ok &= r.passed();
    }
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!(
        "{passed}/{} criteria passed in {:.2}s",
        reports.len(),
        start.elapsed().as_secs_f64()
    );
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Command::Selftest { inject, seed, serial } = cli.command {
        return selftest(inject, seed, serial);
    }
    match run(&cli.command) {
        Ok((value, indent)) => {
            println!("{}", serial::to_string_indented(&value, indent));
            ExitCode::SUCCESS
        }
        Err(Failure { error }) => {
            println!("{}", serial::to_string_indented(&serial::error_to_json(&error), 0));
            eprintln!("linfield: {error}");
            ExitCode::from(if error.is_input_error() { 2 } else { 1 })
        }
    }
}
