//! The `sigtau` command line. JSON results go to stdout, diagnostics to
//! stderr. Exit codes: 0 success, 1 invalid input, 2 a checked property
//! fails.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::value::RawValue;
use sigtau_core::algebra::{AlgebraFile, MapFile};
use sigtau_core::endos::classify;
use sigtau_core::polyring::{delta_generator, parse_poly, PolyEndo};
use sigtau_core::rational::format_q;
use sigtau_core::twisted::inner_witness;
use sigtau_core::universal::{
    build, verify_certificate, CertificateFile, FactorizationCertificate, UnivCase, UniversalError,
};
use sigtau_core::{Branch, EndoKind, GeneralDerivation, QuadInt, QuadRing, TwistedDerivation};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_PROPERTY: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "sigtau", version, about = "Exact (sigma, tau)-derivation toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the ring endomorphisms of the ring of integers of Q(sqrt(d)).
    Classify {
        #[arg(long, allow_negative_numbers = true)]
        d: BigInt,
    },
    /// Test the twisted Leibniz law on seeded random pairs.
    LeibnizCheck {
        #[command(flatten)]
        derivation: DerivationArgs,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decide whether a derivation is inner and print the witness.
    Inner {
        #[command(flatten)]
        derivation: DerivationArgs,
    },
    /// Apply the generator (tau - sigma)/g of derivations on Q[x].
    UfdDelta {
        #[arg(long, allow_hyphen_values = true)]
        sigma_image: String,
        #[arg(long, allow_hyphen_values = true)]
        tau_image: String,
        #[arg(long, allow_hyphen_values = true)]
        apply: String,
    },
    /// Build a factorization certificate for a derivation on an algebra.
    Universal {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=4))]
        case: u8,
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        sigma: PathBuf,
        #[arg(long)]
        tau: PathBuf,
        #[arg(long)]
        derivation: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-check a factorization certificate from its raw data.
    Verify {
        #[arg(long)]
        cert: PathBuf,
    },
}

#[derive(clap::Args, Debug)]
struct DerivationArgs {
    #[arg(long, allow_negative_numbers = true)]
    d: BigInt,
    #[arg(long)]
    sigma: String,
    #[arg(long)]
    tau: String,
    #[arg(long, allow_negative_numbers = true)]
    alpha: BigInt,
    #[arg(long, allow_negative_numbers = true)]
    beta: BigInt,
}

/// An input error reported as `{"code": ..., "message": ...}`.
#[derive(Debug, Serialize)]
struct CliError {
    code: &'static str,
    message: String,
}

fn invalid(code: &'static str, message: impl ToString) -> CliError {
    CliError {
        code,
        message: message.to_string(),
    }
}

/// A successful run: JSON payload plus exit code.
struct Success {
    json: String,
    code: i32,
}

fn ok(json: String) -> Result<Success, CliError> {
    Ok(Success { json, code: EXIT_OK })
}

pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return EXIT_OK;
            }
            let _ = write!(stderr, "{e}");
            let msg = e.to_string().lines().next().unwrap_or("").trim_start_matches("error: ").to_string();
            return emit_error(stdout, &invalid("usage", msg));
        }
    };
    match execute(cli.command) {
        Ok(s) => {
            let _ = writeln!(stdout, "{}", s.json);
            s.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            emit_error(stdout, &e)
        }
    }
}

fn emit_error(stdout: &mut dyn Write, e: &CliError) -> i32 {
    let _ = writeln!(stdout, "{}", to_json(e));
    EXIT_INVALID
}

fn to_json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("output serializes")
}

fn execute(cmd: Command) -> Result<Success, CliError> {
    match cmd {
        Command::Classify { d } => classify_cmd(&d),
        Command::LeibnizCheck {
            derivation,
            samples,
            seed,
        } => leibniz_cmd(&derivation, samples, seed),
        Command::Inner { derivation } => inner_cmd(&derivation),
        Command::UfdDelta {
            sigma_image,
            tau_image,
            apply,
        } => ufd_cmd(&sigma_image, &tau_image, &apply),
        Command::Universal {
            case,
            algebra,
            sigma,
            tau,
            derivation,
            out,
        } => universal_cmd(case, &algebra, &sigma, &tau, &derivation, out.as_deref()),
        Command::Verify { cert } => verify_cmd(&cert),
    }
}

fn ring(d: &BigInt) -> Result<QuadRing, CliError> {
    QuadRing::from_bigint(d).map_err(|e| invalid("invalid_d", e))
}

fn endo(name: &str) -> Result<EndoKind, CliError> {
    EndoKind::parse(name).ok_or_else(|| invalid("invalid_endo", format!("unknown endomorphism {name:?}, expected id or conj")))
}

/// A JSON integer of any size.
fn int(n: &BigInt) -> Box<RawValue> {
    RawValue::from_string(n.to_string()).expect("integer is valid JSON")
}

#[derive(Serialize)]
struct IntPair {
    a: Box<RawValue>,
    b: Box<RawValue>,
}

fn pair(x: &QuadInt) -> IntPair {
    IntPair {
        a: int(&x.a),
        b: int(&x.b),
    }
}

fn classify_cmd(d: &BigInt) -> Result<Success, CliError> {
    let r = ring(d)?;
    #[derive(Serialize)]
    struct Endo {
        kind: &'static str,
        #[serde(skip_serializing_if = "Option::is_none")]
        sqrt_image: Option<String>,
        #[serde(skip_serializing_if = "Option::is_none")]
        omega_image: Option<String>,
    }
    #[derive(Serialize)]
    struct Out {
        endos: Vec<Endo>,
    }
    let endos = classify(&r)
        .into_iter()
        .map(|e| {
            let image = (e.kind != EndoKind::Identity).then(|| r.display(&e.gen_image()).replace(' ', ""));
            let (sqrt_image, omega_image) = match r.branch() {
                Branch::Sqrt => (image, None),
                Branch::Omega => (None, image),
            };
            Endo {
                kind: e.kind.name(),
                sqrt_image,
                omega_image,
            }
        })
        .collect();
    ok(to_json(&Out { endos }))
}

fn leibniz_cmd(args: &DerivationArgs, samples: usize, seed: u64) -> Result<Success, CliError> {
    let r = ring(&args.d)?;
    let (s, t) = (endo(&args.sigma)?, endo(&args.tau)?);
    let d = TwistedDerivation::with_any_pair(r, s, t, QuadInt::new(args.alpha.clone(), args.beta.clone()));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = || QuadInt::new(rng.random_range(-1000i64..=1000), rng.random_range(-1000i64..=1000));
    // The pair (gen, gen) is always tested first.
    let pairs = std::iter::once((QuadInt::gen(), QuadInt::gen())).chain(std::iter::repeat_with(|| (draw(), draw())));
    let mut checked = 0usize;
    let mut counterexample = None;
    for (x, y) in pairs.take(samples) {
        checked += 1;
        if !d.leibniz_holds(&x, &y) {
            counterexample = Some((x, y));
            break;
        }
    }
    #[derive(Serialize)]
    struct Counter {
        x: IntPair,
        y: IntPair,
    }
    #[derive(Serialize)]
    struct Out {
        holds: bool,
        checked: usize,
        seed: u64,
        #[serde(skip_serializing_if = "Option::is_none")]
        counterexample: Option<Counter>,
    }
    let holds = counterexample.is_none();
    let out = Out {
        holds,
        checked,
        seed,
        counterexample: counterexample.map(|(x, y)| Counter { x: pair(&x), y: pair(&y) }),
    };
    Ok(Success {
        json: to_json(&out),
        code: if holds { EXIT_OK } else { EXIT_PROPERTY },
    })
}

fn inner_cmd(args: &DerivationArgs) -> Result<Success, CliError> {
    let r = ring(&args.d)?;
    let (s, t) = (endo(&args.sigma)?, endo(&args.tau)?);
    let d = TwistedDerivation::new(r, s, t, QuadInt::new(args.alpha.clone(), args.beta.clone()))
        .map_err(|e| invalid("sigma_equals_tau", e))?;
    let dec = inner_witness(&d).map_err(|e| invalid("sigma_equals_tau", e))?;
    #[derive(Serialize)]
    struct Candidate {
        u: String,
        v: String,
    }
    #[derive(Serialize)]
    struct Out {
        inner: bool,
        #[serde(skip_serializing_if = "Option::is_none")]
        witness: Option<IntPair>,
        #[serde(skip_serializing_if = "Option::is_none")]
        candidate: Option<Candidate>,
    }
    let out = match &dec.witness {
        Some(w) => Out {
            inner: true,
            witness: Some(pair(w)),
            candidate: None,
        },
        None => Out {
            inner: false,
            witness: None,
            candidate: Some(Candidate {
                u: format_q(&dec.candidate.u),
                v: format_q(&dec.candidate.v),
            }),
        },
    };
    ok(to_json(&out))
}

fn ufd_cmd(sigma_image: &str, tau_image: &str, apply: &str) -> Result<Success, CliError> {
    let p = |s: &str| parse_poly(s).map_err(|e| invalid("invalid_polynomial", e));
    let (s, t, f) = (p(sigma_image)?, p(tau_image)?, p(apply)?);
    let delta = delta_generator(PolyEndo::new(s), PolyEndo::new(t)).map_err(|e| invalid("sigma_equals_tau", e))?;
    let result = delta.apply(&f).map_err(|e| invalid("inexact_division", e))?;
    #[derive(Serialize)]
    struct Out {
        g: String,
        g_monic: String,
        result: String,
    }
    ok(to_json(&Out {
        g: delta.g().to_string(),
        g_monic: delta.g_monic().to_string(),
        result: result.to_string(),
    }))
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|e| invalid("io", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid("invalid_json", format!("{what} file {}: {e}", path.display())))
}

fn universal_error_code(e: &UniversalError) -> &'static str {
    match e {
        UniversalError::SigmaEqualsTau => "sigma_equals_tau",
        UniversalError::TauNotInvertible => "tau_not_invertible",
        UniversalError::SigmaNotInvertible => "sigma_not_invertible",
        UniversalError::InvertibleEndo(_) => "invertible_endo",
        UniversalError::KernelNotContained(_) => "kernel_not_contained",
        UniversalError::NotAnEndomorphism(_) => "not_an_endomorphism",
        UniversalError::NonzeroOnUnit => "nonzero_on_unit",
        UniversalError::LeibnizViolated { .. } => "leibniz_violated",
        UniversalError::DimensionMismatch { .. } => "dimension_mismatch",
        UniversalError::DiagramBroken(_) => "diagram_broken",
        UniversalError::Algebra(_) => "invalid_algebra",
    }
}

fn universal_cmd(
    case: u8,
    algebra: &Path,
    sigma: &Path,
    tau: &Path,
    derivation: &Path,
    out: Option<&Path>,
) -> Result<Success, CliError> {
    let case = UnivCase::try_from(case).map_err(|e| invalid("usage", e))?;
    let alg_file: AlgebraFile = read_json(algebra, "algebra")?;
    let alg = alg_file.to_algebra().map_err(|e| invalid("invalid_algebra", e))?;
    let n = alg.dim();
    let map = |path: &Path, what: &str| -> Result<_, CliError> {
        let f: MapFile = read_json(path, what)?;
        f.to_matrix(n).map_err(|e| invalid("invalid_map", format!("{what}: {e}")))
    };
    let (s, t, dm) = (map(sigma, "sigma")?, map(tau, "tau")?, map(derivation, "derivation")?);
    let d = GeneralDerivation::new(alg, s, t, dm).map_err(|e| invalid(universal_error_code(&e), e))?;
    let cert = build(case, &d).map_err(|e| invalid(universal_error_code(&e), e))?;
    let json = cert.to_json();
    match out {
        None => ok(json),
        Some(path) => {
            fs::write(path, format!("{json}\n")).map_err(|e| invalid("io", format!("{}: {e}", path.display())))?;
            #[derive(Serialize)]
            struct Written<'a> {
                case: UnivCase,
                all_pass: bool,
                out: &'a str,
            }
            ok(to_json(&Written {
                case,
                all_pass: cert.all_pass(),
                out: &path.to_string_lossy(),
            }))
        }
    }
}

fn verify_cmd(path: &Path) -> Result<Success, CliError> {
    let file: CertificateFile = read_json(path, "certificate")?;
    let cert = FactorizationCertificate::from_file(&file).map_err(|e| invalid("invalid_certificate", e))?;
    let report = verify_certificate(&cert);
    Ok(Success {
        json: to_json(&report),
        code: if report.all_pass { EXIT_OK } else { EXIT_PROPERTY },
    })
}
