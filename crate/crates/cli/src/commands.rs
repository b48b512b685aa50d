use hzeta::local_ring::make_ring_spec;
use hzeta::oracle::{match_series_with_budget, verify_xlambda};
use hzeta::polyrat::{ProductRationalFunction, RationalFunctionJson};
use hzeta::residue::is_prime;
use hzeta::zeta_formulas::{zeta_inert, zeta_main, zeta_snf, zeta_totally_ramified, ExtensionShape};
use hzeta::Error;
use serde_json::{json, Value};

use crate::checks::run_suite;
use crate::{Command, Output, ShapeArgs, Variant, EXIT_CAPACITY, EXIT_CHECK_FAILED, EXIT_USAGE};

/// Rendered output of a successful run.
pub struct Run {
    pub text: String,
    pub passed: bool,
}

/// A run that could not complete, with its exit status.
#[derive(Debug)]
pub struct Failure {
    pub status: u8,
    pub message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { status: EXIT_USAGE, message: format!("usage error: {}", message.into()) }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Capacity { what, requested, limit } => Failure {
                status: EXIT_CAPACITY,
                message: json!({
                    "error": "capacity",
                    "what": what,
                    "requested": requested.to_string(),
                    "limit": limit.to_string(),
                })
                .to_string(),
            },
            Error::Contract(_) | Error::Domain(_) => Failure::usage(err.to_string()),
            other => Failure { status: EXIT_CHECK_FAILED, message: format!("error: {other}") },
        }
    }
}

fn shape_of(args: &ShapeArgs) -> Result<ExtensionShape, Failure> {
    ExtensionShape::new(args.e, args.f).map_err(|_| Failure::usage("--e and --f must be positive"))
}

fn require_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Failure::usage(format!("--p {p} is not prime")))
    }
}

fn variant_name(v: Variant) -> &'static str {
    match v {
        Variant::Main => "main",
        Variant::Snf => "snf",
        Variant::Inert => "inert",
        Variant::Totram => "totram",
    }
}

fn build(shape: ExtensionShape, variant: Variant) -> Result<ProductRationalFunction, Failure> {
    Ok(match variant {
        Variant::Main => zeta_main(shape)?,
        Variant::Snf => zeta_snf(shape)?,
        Variant::Inert if shape.e() == 1 => zeta_inert(shape.n())?,
        Variant::Inert => return Err(Failure::usage("--variant inert requires --e 1")),
        Variant::Totram if shape.f() == 1 => zeta_totally_ramified(shape.n())?,
        Variant::Totram => return Err(Failure::usage("--variant totram requires --f 1")),
    })
}

fn to_json_text(value: &Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("values serialize"))
}

pub fn run(command: &Command) -> Result<Run, Failure> {
    match *command {
        Command::Formula { shape, variant, output } => {
            let shape = shape_of(&shape)?;
            let rf = build(shape, variant)?;
            let text = match output {
                Output::Text => format!("{rf}\n"),
                Output::Latex => format!("{}\n", rf.to_latex()),
                Output::Json => {
                    let body = RationalFunctionJson::from(&rf);
                    to_json_text(&json!({
                        "e": shape.e(),
                        "f": shape.f(),
                        "variant": variant_name(variant),
                        "numerator": body.numerator,
                        "denominator": body.denominator,
                    }))
                }
            };
            Ok(Run { text, passed: true })
        }
        Command::Series { shape, p, terms, variant, output } => {
            let shape = shape_of(&shape)?;
            require_prime(p)?;
            let coefficients = build(shape, variant)?.series_y(p, terms)?;
            let text = match output {
                Output::Text => {
                    format!("{}\n", coefficients.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
                }
                Output::Json => to_json_text(&json!({
                    "e": shape.e(),
                    "f": shape.f(),
                    "p": p,
                    "variant": variant_name(variant),
                    "coefficients": coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
                })),
                Output::Latex => return Err(Failure::usage("series supports --output text or json")),
            };
            Ok(Run { text, passed: true })
        }
        Command::Check { suite, shape, p, seed, output } => {
            let shape = shape_of(&shape)?;
            require_prime(p)?;
            let report = run_suite(suite, shape, p, seed)?;
            let passed = report.passed();
            let text = match output {
                Output::Text => report.table(),
                Output::Json => to_json_text(&report.to_json()),
                Output::Latex => return Err(Failure::usage("check supports --output text or json")),
            };
            Ok(Run { text, passed })
        }
        Command::Oracle { shape, p, terms, seed, budget, trials, output } => {
            let shape = shape_of(&shape)?;
            require_prime(p)?;
            if budget == 0 {
                return Err(Failure::usage("--budget must be positive"));
            }
            let spec = make_ring_spec(p, shape.e(), shape.f(), terms.max(1))?;
            let mut series = match_series_with_budget(&spec, terms, budget)?;
            for r in &mut series {
                r.seed = Some(seed);
            }
            let xlambda = verify_xlambda(&spec, trials, seed)?;
            let passed = series.iter().all(|r| r.matches) && xlambda.passed();
            let text = match output {
                Output::Text => {
                    let mut out = String::new();
                    for r in &series {
                        out.push_str(&format!(
                            "{}  k={}  oracle={}  formula={}\n",
                            if r.matches { "PASS" } else { "FAIL" },
                            r.k,
                            r.oracle_count,
                            r.formula_count
                        ));
                    }
                    out.push_str(&format!(
                        "{}  x_lambda  trials={}  seed={}  mismatches={}\n",
                        if xlambda.passed() { "PASS" } else { "FAIL" },
                        xlambda.trials,
                        xlambda.seed,
                        xlambda.mismatches.len()
                    ));
                    out
                }
                Output::Json => to_json_text(&json!({ "series": series, "xlambda": xlambda })),
                Output::Latex => return Err(Failure::usage("oracle supports --output text or json")),
            };
            Ok(Run { text, passed })
        }
    }
}
