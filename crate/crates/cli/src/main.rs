//! `pvi`: command-line front end for classification, orbit analysis, residual
//! verification and the built-in self-test.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error.

use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use pvi_core::curves::{derive_quartics, master_poly, CurveId};
use pvi_core::elliptic::{Elliptic, TauPoint};
use pvi_core::orbit::{enumerate_orbit, lemma1_reduce, orbit_partition, orbits_of_denominator, RationalPair};
use pvi_core::params::{AlphaTuple, ComplexValue, PviParams};
use pvi_core::poly::{MultiPoly, Var};
use pvi_core::selftest::{self, CurveCatalog};
use pvi_core::verifier::{classify_with, orbit_to_curve, verify_curve, SampleSpec, Verdict};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "pvi", version, about = "Exceptional algebraic solutions of Painleve VI")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
#[command(group(ArgGroup::new("params").required(true).args(["alpha", "pvi"])))]
struct ParamArgs {
    /// Elliptic-form parameters a0,a1,a2,a3 as p/q tokens.
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    /// ODE parameters alpha,beta,gamma,delta as p/q tokens.
    #[arg(long, allow_hyphen_values = true)]
    pvi: Option<String>,
}

impl ParamArgs {
    fn alpha(&self) -> Result<AlphaTuple, Failure> {
        match (&self.alpha, &self.pvi) {
            (Some(a), None) => AlphaTuple::parse(a).map_err(Failure::usage),
            (None, Some(p)) => Ok(PviParams::parse(p).map_err(Failure::usage)?.to_alpha()),
            _ => Err(Failure::Usage("give exactly one of --alpha, --pvi".into())),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the exceptional solutions for a parameter tuple.
    Classify {
        #[command(flatten)]
        params: ParamArgs,
        /// Cross-check every canonical curve by ODE residuals.
        #[arg(long)]
        verify: bool,
    },
    /// Orbit of a rational vector, or the orbit partition of a denominator.
    #[command(group(ArgGroup::new("input").required(true).args(["mu", "denominator"])))]
    Orbit {
        #[arg(long, requires = "nu", allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long, requires = "mu", allow_hyphen_values = true)]
        nu: Option<String>,
        #[arg(long)]
        denominator: Option<i64>,
    },
    /// ODE residuals of a canonical curve.
    Verify {
        #[arg(long)]
        curve: CurveId,
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long, default_value_t = 25)]
        samples: usize,
    },
    /// Evaluate a Picard solution at one modulus.
    EvalPicard {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long, allow_hyphen_values = true)]
        nu: String,
        #[arg(long, allow_hyphen_values = true)]
        tau_re: f64,
        #[arg(long)]
        tau_im: f64,
        /// Also report the master-polynomial value for these parameters.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
    },
    /// Derive the four quartic curves from the tripling formula.
    DeriveQuartics,
    /// Run the built-in consistency checks.
    Selftest {
        /// Shorthand for --format json.
        #[arg(long)]
        json: bool,
        /// Replace a catalog curve, as ID=POLY.
        #[arg(long, hide = true)]
        curve_override: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Verification(Output),
}

impl Failure {
    fn usage(e: impl std::fmt::Display) -> Self {
        Failure::Usage(e.to_string())
    }
}

enum Output {
    Json(Value),
    Text(String),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            emit(out);
            ExitCode::SUCCESS
        }
        Err(Failure::Verification(out)) => {
            emit(out);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(out: Output) {
    match out {
        Output::Json(v) => println!("{}", serde_json::to_string_pretty(&v).expect("json value")),
        Output::Text(s) => print!("{s}"),
    }
}

/// Serializes through `Value` so object keys come out sorted.
fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn versioned(mut v: Value) -> Value {
    if let Value::Object(m) = &mut v {
        m.insert("schema_version".into(), json!(1));
    }
    v
}

fn no_csv(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::Usage("csv output is only available for verify and orbit".into()));
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Classify { params, verify } => {
            no_csv(format)?;
            classify(params, *verify, format)
        }
        Command::Orbit { mu, nu, denominator } => match (mu, nu, denominator) {
            (Some(mu), Some(nu), None) => orbit(mu, nu, format),
            (None, None, Some(n)) => partition(*n, format),
            _ => Err(Failure::Usage("give --mu with --nu, or --denominator".into())),
        },
        Command::Verify { curve, params, samples } => verify(*curve, params, *samples, format),
        Command::EvalPicard { mu, nu, tau_re, tau_im, alpha } => {
            no_csv(format)?;
            eval_picard(mu, nu, *tau_re, *tau_im, alpha.as_deref(), format)
        }
        Command::DeriveQuartics => {
            no_csv(format)?;
            quartics(format)
        }
        Command::Selftest { json, curve_override } => {
            no_csv(format)?;
            let format = if *json { Format::Json } else { format };
            run_selftest(curve_override, format)
        }
    }
}

fn classify(params: &ParamArgs, verify: bool, format: Format) -> Result<Output, Failure> {
    let alpha = params.alpha()?;
    let r = classify_with(&alpha, verify, &SampleSpec::default());
    let ok = r.verified() != Some(false);
    let out = if format == Format::Json {
        let mut v = versioned(to_value(&r));
        v["alpha"] = json!(alpha.to_strings());
        v["pvi"] = json!(alpha.to_pvi().to_strings());
        Output::Json(v)
    } else {
        let mut s = format!("alpha: {alpha}\npvi: {}\nkind: {}\n", alpha.to_pvi(), to_value(&r.kind).as_str().unwrap_or(""));
        let names: Vec<&str> = r.curves.iter().map(|c| c.name()).collect();
        s += &format!("curves: [{}]\n", names.join(", "));
        if let Some(note) = &r.picard_note {
            s += &format!("note: {note}\n");
        }
        for c in r.verification.iter().flatten() {
            s += &format!(
                "  {} expected={} max_residual={:.3e} agrees={}\n",
                c.curve, c.expected, c.max_residual, c.agrees
            );
        }
        Output::Text(s)
    };
    if ok {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn orbit(mu: &str, nu: &str, format: Format) -> Result<Output, Failure> {
    let v = RationalPair::parse(mu, nu).map_err(Failure::usage)?;
    if v.is_half_integer() {
        return Err(Failure::Usage(format!("{v} is a half-period")));
    }
    let l1 = lemma1_reduce(&v).map_err(Failure::usage)?;
    let elements = enumerate_orbit(&v).map_err(Failure::usage)?;
    let curve = orbit_to_curve(&v).map_err(Failure::usage)?;
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema_version": 1,
            "input": v,
            "lemma1": l1,
            "parity": l1.parity(),
            "elements": elements,
            "size": elements.len(),
            "curve": curve,
        })),
        Format::Csv => {
            let mut s = String::from("mu,nu\n");
            for e in &elements {
                s += &format!("{},{}\n", pvi_core::rational::fmt_r64(&e.mu()), pvi_core::rational::fmt_r64(&e.nu()));
            }
            Output::Text(s)
        }
        Format::Text => {
            let list: Vec<String> = elements.iter().map(|e| e.to_string()).collect();
            Output::Text(format!(
                "vector: {v}\nreduced: M={} N={} m={} n={} ({}), standard {}\nsize: {}\nelements: {}\ncurve: {}\n",
                l1.big_m,
                l1.big_n,
                l1.m,
                l1.n,
                l1.parity(),
                l1.standard,
                elements.len(),
                list.join(" "),
                curve.map_or("none", CurveId::name),
            ))
        }
    })
}

fn partition(n: i64, format: Format) -> Result<Output, Failure> {
    let sizes = orbit_partition(n).map_err(Failure::usage)?;
    let orbits = orbits_of_denominator(n).map_err(Failure::usage)?;
    let curves: Vec<Option<CurveId>> = orbits
        .iter()
        .map(|o| o.iter().next().and_then(|v| orbit_to_curve(v).ok().flatten()))
        .collect();
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema_version": 1,
            "denominator": n,
            "partition": sizes,
            "orbits": orbits,
            "curves": curves,
        })),
        Format::Csv => {
            let mut s = String::from("orbit,size,curve\n");
            for (k, (size, c)) in sizes.iter().zip(&curves).enumerate() {
                s += &format!("{k},{size},{}\n", c.map_or("", CurveId::name));
            }
            Output::Text(s)
        }
        Format::Text => Output::Text(format!("N={n}: {sizes:?}\n")),
    })
}

fn verify(curve: CurveId, params: &ParamArgs, samples: usize, format: Format) -> Result<Output, Failure> {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be positive".into()));
    }
    let alpha = params.alpha()?;
    let spec = SampleSpec { count: samples, ..Default::default() };
    let r = match verify_curve(curve, &alpha.to_pvi(), &spec) {
        Ok(r) => r,
        Err(e) => return Err(Failure::Verification(Output::Text(format!("{e}\n")))),
    };
    let out = match format {
        Format::Json => Output::Json(to_value(&r)),
        Format::Csv => Output::Text(r.to_csv()),
        Format::Text => Output::Text(format!(
            "curve {} params {}\nsamples {} skipped {}\nmax residual {:.3e} median {:.3e}\nverdict {}\n",
            r.curve,
            r.params.join(","),
            r.samples.len(),
            r.skipped,
            r.max_residual,
            r.median_residual,
            to_value(&r.verdict).as_str().unwrap_or(""),
        )),
    };
    if r.verdict == Verdict::Accepted {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn eval_picard(
    mu: &str,
    nu: &str,
    tau_re: f64,
    tau_im: f64,
    alpha: Option<&str>,
    format: Format,
) -> Result<Output, Failure> {
    let v = RationalPair::parse(mu, nu).map_err(Failure::usage)?;
    let tau = TauPoint::new(tau_re, tau_im).map_err(Failure::usage)?;
    let (t, y) = Elliptic::default().picard_eval(&v, &tau).map_err(Failure::usage)?;
    let curve = orbit_to_curve(&v).map_err(Failure::usage)?;
    let at = [(Var::Y, y), (Var::T, t)];
    let value = |p: &MultiPoly| p.eval_complex(&at).norm();
    let curve_residual = curve.map(|c| value(&c.poly()));
    let master = match alpha {
        Some(a) => Some(value(&master_poly(&AlphaTuple::parse(a).map_err(Failure::usage)?))),
        None => None,
    };
    Ok(match format {
        Format::Json => Output::Json(json!({
            "schema_version": 1,
            "vector": v,
            "tau": ComplexValue::from(tau.value()),
            "t": ComplexValue::from(t),
            "y": ComplexValue::from(y),
            "curve": curve,
            "curve_residual": curve_residual,
            "master_residual": master,
        })),
        _ => {
            let c = |z: Complex64| format!("{:.15e}{:+.15e}i", z.re, z.im);
            let mut s = format!("t = {}\ny = {}\n", c(t), c(y));
            if let (Some(id), Some(r)) = (curve, curve_residual) {
                s += &format!("curve {id}: |P| = {r:.3e}\n");
            }
            if let Some(m) = master {
                s += &format!("master polynomial: |P| = {m:.3e}\n");
            }
            Output::Text(s)
        }
    })
}

fn quartics(format: Format) -> Result<Output, Failure> {
    let q = derive_quartics().map_err(Failure::usage)?;
    let mut all_match = true;
    let mut entries = serde_json::Map::new();
    let mut text = String::new();
    for id in CurveId::QUARTICS {
        let p = q.get(id).expect("quartic");
        let matches = *p == id.poly();
        all_match &= matches;
        entries.insert(id.name().into(), json!({ "poly": p.to_json(), "matches_catalog": matches }));
        text += &format!("{id}: {p}{}\n", if matches { "" } else { "  (differs from catalog)" });
    }
    let out = match format {
        Format::Json => Output::Json(json!({ "schema_version": 1, "quartics": entries, "all_match": all_match })),
        _ => Output::Text(text),
    };
    if all_match {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}

fn run_selftest(overrides: &[String], format: Format) -> Result<Output, Failure> {
    let mut cat = CurveCatalog::default();
    for o in overrides {
        let (id, poly) = o
            .split_once('=')
            .ok_or_else(|| Failure::Usage(format!("expected ID=POLY, got {o}")))?;
        let id: CurveId = id.parse().map_err(Failure::usage)?;
        cat = cat.with(id, MultiPoly::parse(poly).map_err(Failure::usage)?);
    }
    let r = selftest::run(&cat);
    let out = match format {
        Format::Json => Output::Json(to_value(&r)),
        _ => {
            let mut s = String::new();
            for c in &r.checks {
                s += &format!(
                    "{:<4} {:<28} {:>9.1} ms  {}\n",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.millis,
                    c.detail
                );
            }
            let n = r.checks.iter().filter(|c| c.passed).count();
            s += &format!("{n}/{} checks passed\n", r.checks.len());
            Output::Text(s)
        }
    };
    if r.passed {
        Ok(out)
    } else {
        Err(Failure::Verification(out))
    }
}
