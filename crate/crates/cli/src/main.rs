//! `qbarnes`: compute q-Euler-Barnes numbers, their measures and p-adic
//! L-values, and run the identity-verification suites.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 precondition
//! failure, 3 pole, 4 budget exceeded, 5 precision exhausted.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qbarnes::characters_lfunctions::{h_chi, l_at_negative, l_riemann, DirichletCharacter, Scalar};
use qbarnes::euler_barnes::{carlitz_sequence, h_closed, h_rational_in_q, limit_q_to_1, BarnesParams};
use qbarnes::exact_numbers::{
    parse_rational, rational_to_string, BigRational, Exponent, PadicContext, PadicNumber,
};
use qbarnes::padic_integration::{measure_e_value, mu_value, AdmissibleU, Budget, MeasureCell};
use qbarnes::qnum::{FractionalArg, QBase};
use qbarnes::series::{classical_gf_coefficients, q_gf_coefficients, render};
use qbarnes::verify::{run_suite, Report, VerifyConfig};
use qbarnes::Error;

#[derive(Parser, Debug)]
#[command(name = "qbarnes", version, about = "q-Euler-Barnes numbers, p-adic measures and L-functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute a value and print it with every input echoed
    Compute {
        #[arg(value_enum)]
        kind: Kind,
        #[command(flatten)]
        config: RunConfig,
    },
    /// Run an identity-verification suite (or `all`)
    Verify {
        suite: String,
        #[command(flatten)]
        config: RunConfig,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    /// H_n^(r)(w, u, q | a) from the closed form
    Hbarnes,
    /// H_n^(r)(w, u, q | a) as a reduced rational function of q, with its q -> 1 limit
    HbarnesPoly,
    /// Generating-function coefficients H_0..H_n at w
    GfCoeffs,
    /// Classical Euler-Barnes polynomials H_0..H_n(w, u | a)
    Classical,
    /// Carlitz q-Frobenius-Euler numbers H_0..H_k(u : q)
    Carlitz,
    /// Twisted numbers H_{k,chi}^(r)(u, q | a)
    Hchi,
    /// L_{p,q:a_1}(u | -k, chi omega^k), optionally with a level-N Riemann sum
    Lvalue,
    /// Measure E^(k) of the cell x + f p^N Z_p
    Measure,
    /// Distribution mu_u of the cell x + d f p^N Z_p
    Mu,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug, Clone)]
struct RunConfig {
    /// Prime p [default: 3; verify sweeps its own primes when omitted]
    #[arg(long)]
    p: Option<u64>,
    /// p-adic working precision M [default: 6]
    #[arg(long)]
    precision: Option<u32>,
    /// q as num/den
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// u as num/den
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    /// Weights a_1,..,a_r as a comma list
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    a: Option<Vec<i64>>,
    /// r, when the weights default to all ones
    #[arg(long)]
    r: Option<usize>,
    /// Index n
    #[arg(long)]
    n: Option<u32>,
    /// Index k
    #[arg(long)]
    k: Option<u64>,
    /// Shift w as num/den
    #[arg(long, allow_hyphen_values = true)]
    w: Option<String>,
    /// Cell factor f
    #[arg(long, default_value_t = 1)]
    f: u64,
    /// Cell factor d
    #[arg(long, default_value_t = 1)]
    d: u64,
    /// Cell representative x
    #[arg(long, default_value_t = 0)]
    x: u64,
    /// Level N
    #[arg(long = "level-N")]
    level: Option<u32>,
    /// Character: trivial:d, quadratic:d or {"d":..,"values":[..]}
    #[arg(long = "char")]
    chi: Option<String>,
    /// Seed for sampled identity checks
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Cap on Riemann-sum evaluation points
    #[arg(long, default_value_t = Budget::default().max_points)]
    budget: u64,
}

fn rational_flag(name: &str, value: &Option<String>, default: &str) -> Result<BigRational, Error> {
    let text = value.as_deref().unwrap_or(default);
    parse_rational(text).map_err(|_| Error::Precondition {
        param: name.to_string(),
        reason: format!("cannot parse `{text}` as num/den"),
    })
}

fn required<T: Copy>(name: &str, value: Option<T>) -> Result<T, Error> {
    value.ok_or_else(|| Error::Precondition {
        param: name.to_string(),
        reason: format!("--{name} is required for this computation"),
    })
}

impl RunConfig {
    fn q(&self) -> Result<BigRational, Error> {
        rational_flag("q", &self.q, "2")
    }

    fn u(&self) -> Result<BigRational, Error> {
        rational_flag("u", &self.u, "3")
    }

    fn padic_q(&self) -> Result<BigRational, Error> {
        rational_flag("q", &self.q, &(self.prime() + 1).to_string())
    }

    fn padic_u(&self) -> Result<AdmissibleU, Error> {
        AdmissibleU::new(rational_flag("u", &self.u, &self.prime().to_string())?, self.prime())
    }

    fn a(&self) -> Result<Vec<i64>, Error> {
        let a = match (&self.a, self.r) {
            (Some(a), Some(r)) if a.len() != r => {
                return Err(Error::Precondition {
                    param: "r".into(),
                    reason: format!("--r {r} disagrees with {} weights in --a", a.len()),
                })
            }
            (Some(a), _) => a.clone(),
            (None, r) => vec![1; r.unwrap_or(1)],
        };
        Ok(a)
    }

    fn a1(&self) -> Result<i64, Error> {
        Ok(self.a()?[0])
    }

    fn w(&self) -> Result<BigRational, Error> {
        rational_flag("w", &self.w, "0")
    }

    fn w_arg(&self) -> Result<FractionalArg, Error> {
        let w = self.w()?;
        let den = w.denom().try_into().map_err(|_| Error::Precondition {
            param: "w".into(),
            reason: "denominator too large".into(),
        })?;
        FractionalArg::new(w.numer().clone(), den)
    }

    fn chi(&self) -> Result<DirichletCharacter, Error> {
        DirichletCharacter::from_spec(self.chi.as_deref().unwrap_or("trivial:1"))
    }

    fn ctx(&self) -> Result<PadicContext, Error> {
        PadicContext::new(self.prime(), self.precision())
    }

    fn budget(&self) -> Budget {
        Budget {
            max_points: self.budget,
        }
    }

    fn params(&self) -> Result<BarnesParams, Error> {
        BarnesParams::new(self.a()?, self.u()?, QBase::from_q(self.q()?)?)
    }

    fn verify_config(&self) -> Result<VerifyConfig, Error> {
        let opt_rat = |name: &str, v: &Option<String>| -> Result<Option<BigRational>, Error> {
            v.as_ref().map(|_| rational_flag(name, v, "")).transpose()
        };
        Ok(VerifyConfig {
            seed: self.seed,
            budget: self.budget(),
            p: self.p,
            precision: self.precision,
            u: opt_rat("u", &self.u)?,
            q: opt_rat("q", &self.q)?,
            n: self.n,
            level: self.level,
            chi: self.chi.as_ref().map(|_| self.chi()).transpose()?,
        })
    }

    fn prime(&self) -> u64 {
        self.p.unwrap_or(3)
    }

    fn precision(&self) -> u32 {
        self.precision.unwrap_or(6)
    }
}

/// A computed result: echoed inputs plus one or more values.
struct Output {
    kind: &'static str,
    inputs: BTreeMap<&'static str, String>,
    values: Vec<Value>,
    extra: BTreeMap<&'static str, Value>,
}

impl Output {
    fn new(kind: &'static str) -> Self {
        Output {
            kind,
            inputs: BTreeMap::new(),
            values: Vec::new(),
            extra: BTreeMap::new(),
        }
    }

    fn input(mut self, key: &'static str, value: impl ToString) -> Self {
        self.inputs.insert(key, value.to_string());
        self
    }

    fn rational(mut self, x: &BigRational) -> Self {
        self.values.push(Value::String(rational_to_string(x)));
        self
    }

    fn padic(mut self, x: &PadicNumber) -> Self {
        self.values.push(Value::String(x.to_string()));
        self.extra
            .insert("padic", serde_json::to_value(x).expect("serializable"));
        self
    }

    fn to_json(&self) -> Value {
        let mut obj = json!({ "kind": self.kind, "inputs": self.inputs });
        if self.values.len() == 1 {
            obj["value"] = self.values[0].clone();
        } else {
            obj["values"] = Value::Array(self.values.clone());
        }
        for (k, v) in &self.extra {
            obj[*k] = v.clone();
        }
        obj
    }

    fn write_csv(&self, out: impl Write) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        let mut header = vec!["kind".to_string()];
        header.extend(self.inputs.keys().map(|k| k.to_string()));
        header.extend(["index".to_string(), "value".to_string()]);
        w.write_record(&header)?;
        for (i, v) in self.values.iter().enumerate() {
            let mut row = vec![self.kind.to_string()];
            row.extend(self.inputs.values().cloned());
            row.push(i.to_string());
            row.push(v.as_str().map(str::to_string).unwrap_or_else(|| v.to_string()));
            w.write_record(&row)?;
        }
        w.flush()?;
        Ok(())
    }
}

fn compute(kind: Kind, c: &RunConfig) -> Result<Output, Error> {
    Ok(match kind {
        Kind::Hbarnes => {
            let n = required("n", c.n)? as u64;
            let params = c.params()?;
            let value = h_closed(n, &c.w_arg()?, &params)?;
            Output::new("hbarnes")
                .input("n", n)
                .input("w", rational_to_string(&c.w()?))
                .input("a", format!("{:?}", params.a()))
                .input("u", rational_to_string(params.u()))
                .input("q", rational_to_string(&params.q().value()))
                .rational(&value)
        }
        Kind::HbarnesPoly => {
            let n = required("n", c.n)? as u64;
            let w = c.w()?;
            if !w.is_integer() {
                return Err(Error::Precondition {
                    param: "w".into(),
                    reason: "the rational-function route needs an integer w".into(),
                });
            }
            let w: i64 = w.to_integer().try_into().map_err(|_| Error::Precondition {
                param: "w".into(),
                reason: "w out of range".into(),
            })?;
            let (a, u) = (c.a()?, c.u()?);
            let rf = h_rational_in_q(n, w, &a, &u)?;
            let limit = limit_q_to_1(n, w, &a, &u)?;
            let mut out = Output::new("hbarnes-poly")
                .input("n", n)
                .input("w", w)
                .input("a", format!("{a:?}"))
                .input("u", rational_to_string(&u));
            out.values.push(Value::String(format!("({}) / ({})", rf.numerator(), rf.denominator())));
            out.extra.insert("numerator", Value::String(rf.numerator().to_string()));
            out.extra.insert("denominator", Value::String(rf.denominator().to_string()));
            out.extra.insert("q_to_1_limit", Value::String(rational_to_string(&limit)));
            out
        }
        Kind::GfCoeffs => {
            let n = required("n", c.n)? as usize;
            let params = c.params()?;
            let w = c.w()?;
            if !w.is_integer() {
                return Err(Error::Precondition {
                    param: "w".into(),
                    reason: "generating-function coefficients need an integer w".into(),
                });
            }
            let wi: i64 = w.to_integer().try_into().map_err(|_| Error::Precondition {
                param: "w".into(),
                reason: "w out of range".into(),
            })?;
            let coeffs = q_gf_coefficients(&params, Some(wi), n, n)?;
            let mut out = Output::new("gf-coeffs")
                .input("n", n)
                .input("w", wi)
                .input("a", format!("{:?}", params.a()))
                .input("u", rational_to_string(params.u()))
                .input("q", rational_to_string(&params.q().value()));
            out.values = render(&coeffs).into_iter().map(Value::String).collect();
            out
        }
        Kind::Classical => {
            let n = required("n", c.n)? as usize;
            let (a, u, w) = (c.a()?, c.u()?, c.w()?);
            let coeffs = classical_gf_coefficients(&w, &u, &a, n)?;
            let mut out = Output::new("classical")
                .input("n", n)
                .input("w", rational_to_string(&w))
                .input("a", format!("{a:?}"))
                .input("v", rational_to_string(&u));
            out.values = render(&coeffs).into_iter().map(Value::String).collect();
            out
        }
        Kind::Carlitz => {
            let k = required("k", c.k)?;
            let (u, q) = (c.u()?, c.q()?);
            let seq = carlitz_sequence(k, &u, &q)?;
            let mut out = Output::new("carlitz")
                .input("k", k)
                .input("u", rational_to_string(&u))
                .input("q", rational_to_string(&q));
            out.values = render(&seq).into_iter().map(Value::String).collect();
            out
        }
        Kind::Hchi => {
            let k = required("k", c.k)?;
            let params = c.params()?;
            let chi = c.chi()?;
            let out = Output::new("hchi")
                .input("k", k)
                .input("a", format!("{:?}", params.a()))
                .input("u", rational_to_string(params.u()))
                .input("q", rational_to_string(&params.q().value()))
                .input("char", chi.label());
            match h_chi(k, &params, &chi)? {
                Scalar::Rational(x) => out.rational(&x),
                Scalar::Padic(x) => out.padic(&x),
            }
        }
        Kind::Lvalue => {
            let k = required("k", c.k)?;
            let (ctx, u, q, a1, chi) = (c.ctx()?, c.padic_u()?, c.padic_q()?, c.a1()?, c.chi()?);
            let closed = l_at_negative(k, &chi, &u, &q, a1, ctx)?;
            let mut out = Output::new("lvalue")
                .input("k", k)
                .input("p", c.prime())
                .input("M", c.precision())
                .input("a1", a1)
                .input("u", rational_to_string(u.value()))
                .input("q", rational_to_string(&q))
                .input("char", chi.label())
                .padic(&closed);
            if let Some(level) = c.level {
                let twisted = chi.teichmuller_twist(k as i64, ctx)?;
                let s = Exponent::from(-(k as i64));
                let sum = l_riemann(&s, &twisted, &u, &q, a1, ctx, level, c.budget())?;
                out.inputs.insert("level_N", level.to_string());
                out.extra.insert("riemann_sum", Value::String(sum.to_string()));
                out.extra.insert(
                    "error_valuation",
                    serde_json::to_value(sum.difference_valuation(&closed)).expect("serializable"),
                );
            }
            out
        }
        Kind::Measure => {
            let k = required("k", c.k)?;
            let level = required("level-N", c.level)?;
            let (u, q, a1) = (c.padic_u()?, c.padic_q()?, c.a1()?);
            let cell = MeasureCell::simple(c.x, c.f, level, c.prime())?;
            let value = measure_e_value(&cell, k, &u, &q, a1)?;
            Output::new("measure")
                .input("k", k)
                .input("p", c.prime())
                .input("x", c.x)
                .input("f", c.f)
                .input("level_N", level)
                .input("a1", a1)
                .input("u", rational_to_string(u.value()))
                .input("q", rational_to_string(&q))
                .rational(&value)
        }
        Kind::Mu => {
            let level = required("level-N", c.level)?;
            let u = c.padic_u()?;
            let cell = MeasureCell::new(c.x, c.f, level, c.d, c.prime())?;
            let value = mu_value(&cell, &u)?;
            Output::new("mu")
                .input("p", c.prime())
                .input("x", c.x)
                .input("f", c.f)
                .input("d", c.d)
                .input("level_N", level)
                .input("u", rational_to_string(u.value()))
                .rational(&value)
        }
    })
}

fn write_report_csv(report: &Report, out: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["suite", "name", "params", "residual", "error_valuation", "pass"])?;
    for check in &report.checks {
        let params = check
            .params
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";");
        let vals = check
            .error_valuation
            .as_ref()
            .map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "))
            .unwrap_or_default();
        w.write_record([
            report.suite.as_str(),
            check.name.as_str(),
            params.as_str(),
            check.residual.as_deref().unwrap_or(""),
            vals.as_str(),
            if check.pass { "true" } else { "false" },
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Pole { .. } => 3,
        Error::BudgetExceeded { .. } => 4,
        Error::PrecisionExhausted { .. } => 5,
        Error::Precondition { .. }
        | Error::InadmissibleU { .. }
        | Error::ExponentAlignment { .. }
        | Error::QIsOne
        | Error::DivisionByZero => 2,
    }
}

fn error_payload(e: &Error) -> Value {
    let (kind, param) = match e {
        Error::Precondition { param, .. } => ("precondition", param.as_str()),
        Error::InadmissibleU { .. } => ("AdmissibleU", "u"),
        Error::ExponentAlignment { .. } => ("exponent-alignment", "w"),
        Error::QIsOne => ("q-is-one", "q"),
        Error::DivisionByZero => ("division-by-zero", ""),
        Error::Pole { .. } => ("pole", "q,u"),
        Error::BudgetExceeded { .. } => ("budget", "budget"),
        Error::PrecisionExhausted { .. } => ("precision", "precision"),
    };
    json!({ "error": kind, "param": param, "message": e.to_string() })
}

/// Render the command's output into a buffer; the bool is the verdict.
fn run(cli: Cli) -> Result<(Vec<u8>, bool), Error> {
    let mut buf = Vec::new();
    let pass = match cli.command {
        Command::Compute { kind, config } => {
            let out = compute(kind, &config)?;
            match config.format {
                Format::Json => render_json(&out.to_json(), &mut buf),
                Format::Csv => out.write_csv(&mut buf).expect("writing to memory"),
            }
            true
        }
        Command::Verify { suite, config } => {
            let report = run_suite(&suite, &config.verify_config()?)?;
            match config.format {
                Format::Json => render_json(&serde_json::to_value(&report).expect("serializable"), &mut buf),
                Format::Csv => write_report_csv(&report, &mut buf).expect("writing to memory"),
            }
            report.pass
        }
    };
    Ok((buf, pass))
}

fn render_json(value: &Value, buf: &mut Vec<u8>) {
    serde_json::to_writer_pretty(&mut *buf, value).expect("writing to memory");
    buf.push(b'\n');
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((buf, pass)) => {
            // A closed pipe (e.g. `| head`) is not an error of the computation.
            let _ = io::stdout().lock().write_all(&buf);
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("{}", serde_json::to_string(&error_payload(&e)).expect("json"));
            ExitCode::from(exit_code(&e))
        }
    }
}
