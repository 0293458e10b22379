//! `sr-dmod`: command-line front end for Stanley-Reisner differential
//! operator computations.
//!
//! Every subcommand prints compact JSON on standard output. Exit codes:
//! 0 = success (for `verify`: all checks PASS or NA), 1 = a verification
//! check FAILed, 2 = malformed input or violated precondition.

mod verify;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use sr_dmod_core::ddm::InverseOutcome;
use sr_dmod_core::{
    candidate_ass_primes, cech_cohomology, complex_from_json, ddm, parse, r_filtration_report,
    rf_filtration_check, saturate, CheckOutcome, DdmContext, Error, ExponentVector, FieldSpec,
    RationalPoint, SimplicialComplex, SrRing, TSpaceVerdict,
};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "sr-dmod",
    version,
    about = "Stanley-Reisner rings, their differential operators, and local cohomology probes"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Emit machine JSON (the default output is already JSON; this flag is
    /// accepted so scripts can request it explicitly).
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum DdmAction {
    Nf,
    Invert,
    Rank,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenerateMode {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide whether a complex is a T-space.
    Check { complex: PathBuf },
    /// Print the face ideal generators (minimal non-faces).
    Ideal { complex: PathBuf },
    /// Print the minimal primes of the face ideal.
    Primes { complex: PathBuf },
    /// Hilbert function values and their partial sums.
    Hilbert {
        complex: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Monomial basis of the ring of differential operators up to a degree
    /// bound, with the support-law verdict.
    Dbasis {
        complex: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        char: u32,
    },
    /// Work in the quotient of the operator ring by the left ideal of a
    /// rational point.
    Ddm {
        complex: PathBuf,
        /// Comma-separated coordinates, e.g. `1,1,0,0`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Operator literal, e.g. `"x1 d1^[1]"`.
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        #[arg(long, value_enum)]
        action: DdmAction,
        #[arg(long, default_value_t = 0)]
        char: u32,
        /// Truncation / filtration bound for the rank action.
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
    },
    /// Apply a differential operator to a fraction over the localization at
    /// a monomial.
    Act {
        #[arg(long)]
        complex: PathBuf,
        /// Localizing monomial, e.g. `w`.
        #[arg(long)]
        f: String,
        /// Operator literal, e.g. `"x4 d4^[2]"`.
        #[arg(long, allow_hyphen_values = true)]
        op: String,
        /// Fraction literal `g/f^k`, e.g. `"x3/w^2"`.
        #[arg(long, allow_hyphen_values = true)]
        fraction: String,
        #[arg(long, default_value_t = 0)]
        char: u32,
    },
    /// Čech cohomology dimension table over a multidegree box, with
    /// box-supported candidate associated primes.
    Cech {
        complex: PathBuf,
        /// Comma-separated monomial generators, e.g. `"w"` or `"x,y"`.
        #[arg(long)]
        ideal: String,
        #[arg(long = "box", default_value = "-4:4", allow_hyphen_values = true)]
        bounds: String,
        #[arg(long, default_value_t = 0)]
        char: u32,
    },
    /// Growth report for the operator filtration; optionally also the
    /// localized filtration stability check.
    Holonomy {
        complex: PathBuf,
        #[arg(long, default_value_t = 8)]
        imax: u32,
        /// Localizing monomial for the localized filtration check.
        #[arg(long)]
        f: Option<String>,
        #[arg(long, default_value_t = 3)]
        tmax: u32,
        #[arg(long, default_value_t = 0)]
        char: u32,
    },
    /// Generate a stream of test complexes, one JSON object per line.
    Generate {
        n: usize,
        #[arg(long, value_enum, default_value_t = GenerateMode::Exhaustive)]
        mode: GenerateMode,
        /// Number of complexes in random mode.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the verification suite against a complex and print the report.
    Verify {
        complex: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        char: u32,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long = "box", default_value = "-4:4", allow_hyphen_values = true)]
        bounds: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn load_complex(path: &PathBuf) -> Result<SimplicialComplex, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    complex_from_json(&text)
}

/// Renders an exponent vector as a monomial in the given labels, `1` when
/// all exponents vanish.
fn monomial_string(e: &ExponentVector, labels: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &x) in e.0.iter().enumerate() {
        match x {
            0 => {}
            1 => parts.push(labels[i].clone()),
            _ => parts.push(format!("{}^{}", labels[i], x)),
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

fn face_labels(complex: &SimplicialComplex, mask: sr_dmod_core::Face) -> Vec<String> {
    mask.vertices().map(|v| complex.label(v).to_string()).collect()
}

fn ratio_string(r: &num_rational::BigRational) -> String {
    use num_traits::One;
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn outcome_json(outcome: &CheckOutcome) -> Value {
    match outcome {
        CheckOutcome::Pass => json!({"verdict": "PASS"}),
        CheckOutcome::Fail(w) => json!({"verdict": "FAIL", "witness": w}),
        CheckOutcome::NotApplicable(r) => json!({"verdict": "NA", "reason": r}),
    }
}

fn emit(v: &Value) {
    println!("{v}");
}

fn run(cmd: Cmd) -> Result<u8, Error> {
    match cmd {
        Cmd::Check { complex } => {
            let c = load_complex(&complex)?;
            let out = match c.is_t_space() {
                TSpaceVerdict::TSpace => json!({"t_space": true}),
                TSpaceVerdict::NotTSpace => json!({"t_space": false}),
                TSpaceVerdict::NotApplicable => json!({
                    "t_space": Value::Null,
                    "note": "zero face ideal: the separation condition is vacuous",
                }),
            };
            emit(&out);
            Ok(0)
        }
        Cmd::Ideal { complex } => {
            let c = load_complex(&complex)?;
            let ring = SrRing::new(c.clone(), FieldSpec::Rationals);
            let gens: Vec<String> = ring
                .face_ideal_generators()?
                .iter()
                .map(|g| monomial_string(g, c.labels()))
                .collect();
            emit(&json!({"generators": gens}));
            Ok(0)
        }
        Cmd::Primes { complex } => {
            let c = load_complex(&complex)?;
            let primes: Vec<Vec<String>> = c
                .minimal_primes_masks()
                .into_iter()
                .map(|p| face_labels(&c, p))
                .collect();
            emit(&json!({"minimal_primes": primes}));
            Ok(0)
        }
        Cmd::Hilbert {
            complex,
            max_degree,
        } => {
            let c = load_complex(&complex)?;
            let ring = SrRing::new(c, FieldSpec::Rationals);
            let values: Vec<u64> = (0..=max_degree).map(|j| ring.hilbert(j)).collect();
            let sums: Vec<u64> = (0..=max_degree).map(|i| ring.iterated_hilbert(i)).collect();
            emit(&json!({"values": values, "partial_sums": sums}));
            Ok(0)
        }
        Cmd::Dbasis {
            complex,
            max_degree,
            char,
        } => {
            // the basis is characteristic-independent, but a non-field
            // characteristic should be rejected here like everywhere else
            FieldSpec::from_char(char)?;
            let c = load_complex(&complex)?;
            let basis = sr_dmod_core::idealizer::dr_basis_up_to(&c, max_degree);
            let rendered: Vec<String> = basis
                .iter()
                .map(|m| render_operator_monomial(m, c.labels()))
                .collect();
            let verdict = sr_dmod_core::idealizer::verify_xdelx(&c, max_degree);
            emit(&json!({
                "count": rendered.len(),
                "basis": rendered,
                "support_law": outcome_json(&verdict),
            }));
            Ok(0)
        }
        Cmd::Ddm {
            complex,
            point,
            op,
            action,
            char,
            max_degree,
        } => {
            let c = load_complex(&complex)?;
            let field = FieldSpec::from_char(char)?;
            let labels = c.labels().to_vec();
            let coords = parse::parse_point(&point, field)?;
            let pt = RationalPoint::new(&c, field, coords)?;
            let op = parse::parse_operator(&op, &labels, field)?;
            match action {
                DdmAction::Nf => {
                    let ctx = DdmContext::new(c, pt)?;
                    let nf = ctx.normal_form_diffop(&op)?;
                    emit(&json!({"normal_form": nf.render(&labels)}));
                    Ok(0)
                }
                DdmAction::Invert => {
                    let ctx = DdmContext::new(c, pt)?;
                    let w = ctx.normal_form_diffop(&op)?;
                    match ctx.find_inverse(&w)? {
                        InverseOutcome::Inverse { f } => {
                            let product = ctx.polynomial_times(&f, &w);
                            let verified = product
                                .sub(&ddm::DdmElement::one(f.n(), ctx.field()))
                                .is_zero();
                            emit(&json!({
                                "invertible": true,
                                "inverse": f.render(&labels),
                                "verified": verified,
                            }));
                        }
                        InverseOutcome::Failure(wit) => {
                            emit(&json!({
                                "invertible": false,
                                "witness": {
                                    "element": wit.w.render(&labels),
                                    "obstruction_order": monomial_string(&wit.t_l, &labels),
                                    "reduced": wit.reduced.render(&labels),
                                },
                            }));
                        }
                    }
                    Ok(0)
                }
                DdmAction::Rank => {
                    let report = ddm::filt_dim_check(&c, &pt, max_degree)?;
                    emit(&json!({
                        "order_dims": report.order_dims,
                        "bernstein_dims": report.bernstein_dims,
                        "hilbert_partial_sums": report.iterated_hilbert,
                        "order_matches_sums": outcome_json(&report.verdict),
                    }));
                    Ok(0)
                }
            }
        }
        Cmd::Act {
            complex,
            f,
            op,
            fraction,
            char,
        } => {
            let c = load_complex(&complex)?;
            let field = FieldSpec::from_char(char)?;
            let labels = c.labels().to_vec();
            let f = parse::parse_monomial(&f, &labels)?;
            let ctx = saturate(&c, field, &f)?;
            let op = parse::parse_operator(&op, &labels, field)?;
            let (num, k) = parse::parse_fraction_literal(&fraction, &labels, field, &f)?;
            let u = ctx.fraction(num, k);
            let result = ctx.act(&op, &u)?;
            emit(&json!({
                "input": ctx.render_fraction(&u),
                "result": ctx.render_fraction(&result),
                "denominator_exponent": result.k,
            }));
            Ok(0)
        }
        Cmd::Cech {
            complex,
            ideal,
            bounds,
            char,
        } => {
            let c = load_complex(&complex)?;
            let field = FieldSpec::from_char(char)?;
            let labels = c.labels().to_vec();
            let gens: Vec<ExponentVector> = ideal
                .split(',')
                .map(|m| parse::parse_monomial(m.trim(), &labels))
                .collect::<Result<_, _>>()?;
            let (lo, hi) = parse::parse_box(&bounds)?;
            let comp = cech_cohomology(&c, field, &gens, lo, hi)?;
            let table: Vec<Value> = comp
                .table()
                .iter()
                .map(|((j, m), d)| json!({"j": j, "multidegree": m, "dim": d}))
                .collect();
            let primes: Vec<Value> = (0..=gens.len())
                .map(|j| {
                    let ps: Vec<Vec<String>> = candidate_ass_primes(&comp, j)
                        .into_iter()
                        .map(|p| face_labels(&c, p))
                        .collect();
                    json!({"j": j, "primes": ps})
                })
                .collect();
            emit(&json!({"table": table, "candidate_primes": primes}));
            Ok(0)
        }
        Cmd::Holonomy {
            complex,
            imax,
            f,
            tmax,
            char,
        } => {
            let c = load_complex(&complex)?;
            let field = FieldSpec::from_char(char)?;
            let report = r_filtration_report(&c, field, imax)?;
            let mut out = json!({
                "dims": report.dims,
                "r": report.r,
                "c_bound": ratio_string(&report.c_bound),
                "leading": ratio_string(&report.leading),
                "length_bound": ratio_string(&report.length_bound),
                "growth": outcome_json(&report.verdict),
            });
            if let Some(f) = f {
                let fv = parse::parse_monomial(&f, c.labels())?;
                let check = rf_filtration_check(&c, field, &fv, imax.min(tmax + 1), tmax)?;
                out["localized_filtration"] = outcome_json(&check);
            }
            emit(&out);
            Ok(0)
        }
        Cmd::Generate {
            n,
            mode,
            count,
            seed,
        } => {
            let stream = match mode {
                GenerateMode::Exhaustive => sr_dmod_core::exhaustive_complexes(n)?,
                GenerateMode::Random => sr_dmod_core::random_complexes(n, count, seed)?,
            };
            for c in &stream {
                let facets: Vec<Vec<usize>> = c
                    .facets()
                    .map(|f| f.vertices().collect())
                    .collect();
                emit(&json!({"n": c.n(), "labels": c.labels(), "facets": facets}));
            }
            Ok(0)
        }
        Cmd::Verify {
            complex,
            seed,
            char,
            max_degree,
            bounds,
        } => {
            let c = load_complex(&complex)?;
            let field = FieldSpec::from_char(char)?;
            let (lo, hi) = parse::parse_box(&bounds)?;
            let report = verify::run_suite(&c, field, max_degree, (lo, hi), seed)?;
            emit(&report.to_json());
            Ok(if report.fail_count == 0 { 0 } else { 1 })
        }
    }
}

fn render_operator_monomial(
    m: &sr_dmod_core::OperatorMonomial,
    labels: &[String],
) -> String {
    let mut parts = Vec::new();
    if !m.x.is_zero() {
        parts.push(monomial_string(&m.x, labels));
    }
    for (i, &t) in m.d.0.iter().enumerate() {
        if t > 0 {
            parts.push(format!("d{}^[{}]", i + 1, t));
        }
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join(" ")
    }
}
