//! Command-line front end.
//!
//! [`run`] writes its report to the given sink and returns whether every
//! requested check passed; `main` turns that into the exit status.

use std::io::Write;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::chebyshev::{cheb_t_from_t, key_identity, lemma_sum_lhs, recip_t_via_phi};
use crate::curves::{generate, preset, CurveSpec};
use crate::error::{Error, Result};
use crate::export::{read_csv, svg, write_csv};
use crate::laurent::LaurentPoly;
use crate::oracle::oracle_symbol;
use crate::qseries::{big_q_jacobi, gauss_2f1_terminating, q_saalschutz_check};
use crate::scalar::{Rational, Scalar};
use crate::subdivision::{subdivide, Polygon, SchemeParams};
use crate::symbols::{closed_form_symbol, dd_symbol, mask_for_level, SubdivisionMask, ThetaSpec};

/// Relative tolerance for float identity and comparison checks.
pub const FLOAT_CHECK_RTOL: f64 = 1e-9;

const DEFAULT_T: &str = "2,3/2,5,7/3";
const SAALSCHUTZ_SEED: u64 = 0x5eed_0001;
const SAALSCHUTZ_PER_N: usize = 4;

#[derive(Parser, Debug)]
#[command(name = "expsubdiv", version, about = "Exponential-reproducing interpolatory subdivision toolkit")]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Number realization; defaults to rational except for `subdivide`.
    #[arg(long, global = true, value_enum)]
    pub arithmetic: Option<Arithmetic>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Arithmetic {
    Rational,
    Float,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Chebyshev, big q-Jacobi and q-Saalschütz identities.
    Identities(IdentitiesArgs),
    /// Print the mask of one refinement level as JSON.
    Symbol(SymbolArgs),
    /// Compare the closed-form symbol with the Hurwitz-matrix construction.
    Compare(CompareArgs),
    /// Refine a closed polygon.
    Subdivide(SubdivideArgs),
    /// Distance of the closed form at v = 1 - 4^-m from the Dubuc–Deslauriers mask.
    DdLimit(DdLimitArgs),
}

#[derive(Args, Debug)]
pub struct IdentitiesArgs {
    #[arg(long)]
    pub n_max: usize,
    /// Comma-separated sample points, each `p/q` or an integer.
    #[arg(long, default_value = DEFAULT_T)]
    pub t: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("param").required(true).args(["v", "theta", "hyperbolic"])))]
pub struct SymbolArgs {
    #[arg(long)]
    pub n: usize,
    /// Level parameter directly, as `p/q`.
    #[arg(long)]
    pub v: Option<String>,
    /// Trigonometric frequency; the mask uses `v = cos(theta / 2^(k+1))`.
    #[arg(long)]
    pub theta: Option<f64>,
    /// Hyperbolic frequency; the mask uses `v = cosh(s / 2^(k+1))`.
    #[arg(long)]
    pub hyperbolic: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub k: usize,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub v: String,
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("source").required(true).args(["preset", "input"])))]
pub struct SubdivideArgs {
    /// star2d, star3d, lissajous2d, lissajous3d or lissajous-sphere.
    #[arg(long)]
    pub preset: Option<String>,
    /// CSV file with one point per line.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Scheme parameter; presets supply their own default.
    #[arg(long)]
    pub n: Option<usize>,
    /// Frequency; presets supply their own default. Exact circle
    /// reproduction needs `theta = 2 pi / N` for `N` input points.
    #[arg(long)]
    pub theta: Option<f64>,
    #[arg(long, default_value_t = 6)]
    pub steps: usize,
    /// Refined points as CSV (JSON with `--format json`); stdout if omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub svg: Option<PathBuf>,
    #[arg(long, default_value_t = 4)]
    pub nu: u32,
    #[arg(long, default_value_t = 3)]
    pub nu1: u32,
    #[arg(long, default_value_t = 4)]
    pub nu2: u32,
    #[arg(long, default_value_t = 5)]
    pub nu3: u32,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    #[arg(long, default_value_t = 0.0)]
    pub rho: f64,
    /// Number of curve samples `N`; defaults to `2n + 2`.
    #[arg(long)]
    pub points: Option<usize>,
}

#[derive(Args, Debug)]
pub struct DdLimitArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub m_max: u32,
}

/// One evaluated identity instance.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityRecord {
    pub identity: &'static str,
    pub n: usize,
    pub t: Value,
    pub lhs: Value,
    pub rhs: Value,
    pub residual: f64,
    pub pass: bool,
    pub error: Option<String>,
}

impl IdentityRecord {
    fn new<S: Scalar>(identity: &'static str, n: usize, t: Option<&S>, outcome: Result<(S, S)>) -> Self {
        let t = t.map_or(Value::Null, Scalar::to_json);
        match outcome {
            Ok((lhs, rhs)) => {
                let residual = (lhs.clone() - rhs.clone()).to_f64().abs();
                let pass = if S::is_exact() {
                    lhs == rhs
                } else {
                    residual <= FLOAT_CHECK_RTOL * rhs.to_f64().abs().max(1.0)
                };
                IdentityRecord {
                    identity,
                    n,
                    t,
                    lhs: lhs.to_json(),
                    rhs: rhs.to_json(),
                    residual,
                    pass,
                    error: None,
                }
            }
            Err(e) => IdentityRecord {
                identity,
                n,
                t,
                lhs: Value::Null,
                rhs: Value::Null,
                residual: f64::INFINITY,
                pass: false,
                error: Some(e.to_string()),
            },
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "identity": self.identity,
            "n": self.n,
            "t": self.t,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.pass,
        });
        if let Some(e) = &self.error {
            v["error"] = json!(e);
        }
        v
    }
}

pub const SUITES: [&str; 6] = ["prop1", "remark2", "lemma3", "prop4", "main_result1", "q_saalschutz"];

fn x_of_t<S: Scalar>(t: &S) -> S {
    (t.clone() + S::one() / t.clone()) / S::from_i64(2)
}

/// Evaluates every identity suite for `n <= n_max` at the sample points `ts`.
pub fn identity_suites<S: Scalar>(n_max: usize, ts: &[S]) -> Vec<IdentityRecord> {
    let two = S::from_i64(2);
    let mut out = Vec::new();
    for n in 0..=n_max {
        for t in ts {
            let closed = || -> Result<S> {
                let tn = t.powi(n as i64);
                Ok(two.clone() * tn.clone() / (S::one() + tn.clone() * tn))
            };
            let phi = recip_t_via_phi(n, t);
            out.push(IdentityRecord::new("prop1", n, Some(t), phi.clone().and_then(|p| Ok((p, closed()?)))));

            let remark = phi.clone().and_then(|p| {
                let z = -(t.clone() - S::one()).powi(2) / (S::from_i64(4) * t.clone());
                let f = gauss_2f1_terminating(n, &S::from_i64(n as i64), &S::from_ratio(1, 2), &z)?;
                Ok((p * f, S::one()))
            });
            out.push(IdentityRecord::new("remark2", n, Some(t), remark));

            let main = (|| {
                let inv = -(S::one() / t.clone());
                let p = big_q_jacobi(t, &inv, &inv, &-S::one(), &t.powi(2), n)?;
                Ok((p * cheb_t_from_t(n, t)?, S::one()))
            })();
            out.push(IdentityRecord::new("main_result1", n, Some(t), main));

            if n >= 1 {
                let lemma = phi.and_then(|p| Ok((lemma_sum_lhs(n, t)?, p - S::one())));
                out.push(IdentityRecord::new("lemma3", n, Some(t), lemma));
                out.push(IdentityRecord::new("prop4", n, Some(t), key_identity(n, &x_of_t(t))));
            }
        }
    }
    out.extend(saalschutz_suite::<S>(n_max.min(6), SAALSCHUTZ_PER_N, SAALSCHUTZ_SEED));
    out
}

fn random_rational<S: Scalar>(rng: &mut ChaCha8Rng) -> S {
    let mut p = 0;
    while p == 0 {
        p = rng.gen_range(-9i64..=9);
    }
    S::from_ratio(p, rng.gen_range(1i64..=9))
}

/// Random nonsingular parameter tuples `(a, b, c, q)` for each `n <= n_max`,
/// drawn from a seeded generator.
pub fn saalschutz_tuples<S: Scalar>(n_max: usize, per_n: usize, seed: u64) -> Vec<(usize, [S; 4])> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for n in 0..=n_max {
        let mut found = 0;
        while found < per_n {
            let tuple: [S; 4] = std::array::from_fn(|_| random_rational(&mut rng));
            let [a, b, c, q] = &tuple;
            if *q == S::one() || *q == -S::one() || q_saalschutz_check(n, a, b, c, q).is_err() {
                continue;
            }
            out.push((n, tuple));
            found += 1;
        }
    }
    out
}

pub fn saalschutz_suite<S: Scalar>(n_max: usize, per_n: usize, seed: u64) -> Vec<IdentityRecord> {
    saalschutz_tuples::<S>(n_max, per_n, seed)
        .into_iter()
        .map(|(n, [a, b, c, q])| {
            IdentityRecord::new::<S>("q_saalschutz", n, None, q_saalschutz_check(n, &a, &b, &c, &q))
        })
        .collect()
}

fn parse_list<S: Scalar>(list: &str) -> Result<Vec<S>> {
    list.split(',').map(S::parse).collect()
}

fn emit(out: &mut dyn Write, text: &str) -> Result<()> {
    writeln!(out, "{text}").map_err(|e| Error::InvalidInput(format!("write failed: {e}")))
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<()> {
    emit(out, &serde_json::to_string_pretty(v).expect("JSON values always serialize"))
}

fn write_file(path: &PathBuf, contents: &str) -> Result<()> {
    std::fs::write(path, contents)
        .map_err(|e| Error::InvalidInput(format!("cannot write {}: {e}", path.display())))
}

fn run_identities<S: Scalar>(args: &IdentitiesArgs, format: Format, out: &mut dyn Write) -> Result<bool> {
    let ts = parse_list::<S>(&args.t)?;
    let records = identity_suites(args.n_max, &ts);
    let all_pass = records.iter().all(|r| r.pass);
    match format {
        Format::Json => {
            let list: Vec<Value> = records.iter().map(IdentityRecord::to_json).collect();
            emit_json(out, &json!({ "records": list, "pass": all_pass }))?;
        }
        Format::Text => {
            for suite in SUITES {
                let rows: Vec<&IdentityRecord> = records.iter().filter(|r| r.identity == suite).collect();
                let pass = rows.iter().all(|r| r.pass);
                let verdict = if pass { "PASS" } else { "FAIL" };
                if S::is_exact() {
                    emit(out, &format!("{suite:<14} {verdict}  ({} cases)", rows.len()))?;
                } else {
                    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
                    emit(out, &format!("{suite:<14} max residual {worst:.3e}  {verdict}  ({} cases)", rows.len()))?;
                }
                for r in rows.iter().filter(|r| !r.pass) {
                    let detail = r.error.clone().unwrap_or_else(|| format!("lhs {} rhs {}", r.lhs, r.rhs));
                    emit(out, &format!("  n={} t={}: {detail}", r.n, r.t))?;
                }
            }
        }
    }
    Ok(all_pass)
}

fn exact_or_dd<S: Scalar>(n: usize, v: &S) -> Result<SubdivisionMask<S>> {
    if *v == S::one() {
        Ok(dd_symbol(n))
    } else {
        closed_form_symbol(n, v)
    }
}

fn run_symbol(args: &SymbolArgs, arithmetic: Option<Arithmetic>, out: &mut dyn Write) -> Result<bool> {
    let mask_json = match (&args.v, args.theta, args.hyperbolic) {
        (Some(v), _, _) => match arithmetic.unwrap_or(Arithmetic::Rational) {
            Arithmetic::Rational => exact_or_dd(args.n, &Rational::parse(v)?)?.to_json(),
            Arithmetic::Float => exact_or_dd(args.n, &f64::parse(v)?)?.to_json(),
        },
        (None, theta, hyper) => {
            if arithmetic == Some(Arithmetic::Rational) {
                return Err(Error::InvalidInput("rational arithmetic requires --v p/q".into()));
            }
            let spec = match (theta, hyper) {
                (Some(w), _) => trig_or_zero(w),
                (None, Some(0.0)) => ThetaSpec::Zero,
                (None, Some(s)) => ThetaSpec::Hyperbolic(s),
                (None, None) => unreachable!("clap requires one of --v, --theta, --hyperbolic"),
            };
            let mut j = mask_for_level(args.n, spec, args.k)?.to_json();
            j["k"] = json!(args.k);
            j
        }
    };
    emit_json(out, &mask_json)?;
    Ok(true)
}

fn compare_masks<S: Scalar>(n: usize, v: &S) -> Result<(LaurentPoly<S>, LaurentPoly<S>)> {
    Ok((closed_form_symbol(n, v)?.symbol, oracle_symbol(n, v)?.symbol))
}

fn coeff_json<S: Scalar>(p: &LaurentPoly<S>, reach: i64) -> Vec<Value> {
    (-reach..=reach).map(|e| p.coeff(e).to_json()).collect()
}

fn run_compare(args: &CompareArgs, arithmetic: Option<Arithmetic>, format: Format, out: &mut dyn Write) -> Result<bool> {
    let reach = 2 * args.n as i64 + 1;
    let (cf, or, deviation, pass) = match arithmetic.unwrap_or(Arithmetic::Rational) {
        Arithmetic::Rational => {
            let (cf, or) = compare_masks(args.n, &Rational::parse(&args.v)?)?;
            let dev = (&cf - &or).to_f64().coeffs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
            let same = cf == or;
            (coeff_json(&cf, reach), coeff_json(&or, reach), dev, same)
        }
        Arithmetic::Float => {
            let (cf, or) = compare_masks(args.n, &f64::parse(&args.v)?)?;
            let dev = cf.max_abs_diff(&or);
            (coeff_json(&cf, reach), coeff_json(&or, reach), dev, dev <= FLOAT_CHECK_RTOL)
        }
    };
    match format {
        Format::Json => emit_json(
            out,
            &json!({
                "n": args.n,
                "v": args.v,
                "lo": -reach,
                "closed_form": cf,
                "oracle": or,
                "max_deviation": deviation,
                "pass": pass,
            }),
        )?,
        Format::Text => {
            let show = |c: &[Value]| c.iter().map(|x| x.to_string().replace('"', "")).collect::<Vec<_>>().join(", ");
            emit(out, &format!("closed form (z^{} .. z^{reach}): [{}]", -reach, show(&cf)))?;
            emit(out, &format!("oracle      (z^{} .. z^{reach}): [{}]", -reach, show(&or)))?;
            emit(out, &format!("max deviation: {deviation:e}"))?;
        }
    }
    Ok(pass)
}

fn trig_or_zero(w: f64) -> ThetaSpec {
    if w == 0.0 {
        ThetaSpec::Zero
    } else {
        ThetaSpec::Trigonometric(w)
    }
}

fn subdivide_input(args: &SubdivideArgs) -> Result<(Polygon, SchemeParams)> {
    if let Some(name) = &args.preset {
        let kind = preset(name, args.nu, args.nu1, args.nu2, args.nu3, args.tau, args.rho)?;
        let spec = match args.points {
            Some(points) => CurveSpec { kind, points },
            None => CurveSpec::with_default_points(kind),
        };
        let (poly, mut params) = generate(&spec)?;
        if let Some(n) = args.n {
            params.n = n;
        }
        if let Some(w) = args.theta {
            params.theta = trig_or_zero(w);
        }
        return Ok((poly, params));
    }
    let path = args.input.as_ref().expect("clap requires --preset or --input");
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    let poly = read_csv(&text)?;
    let n = args.n.ok_or_else(|| Error::InvalidInput("--input requires --n".into()))?;
    let w = args.theta.ok_or_else(|| Error::InvalidInput("--input requires --theta".into()))?;
    Ok((poly, SchemeParams { n, theta: trig_or_zero(w) }))
}

fn run_subdivide(args: &SubdivideArgs, arithmetic: Option<Arithmetic>, format: Format, out: &mut dyn Write) -> Result<bool> {
    if arithmetic == Some(Arithmetic::Rational) {
        return Err(Error::InvalidInput("subdivide runs in float arithmetic only".into()));
    }
    let (control, params) = subdivide_input(args)?;
    let refined = subdivide(&control, &params, args.steps)?;
    let body = match format {
        Format::Text => write_csv(&refined),
        Format::Json => {
            let theta = match params.theta {
                ThetaSpec::Zero => json!(0.0),
                ThetaSpec::Trigonometric(w) => json!(w),
                ThetaSpec::Hyperbolic(s) => json!({ "hyperbolic": s }),
            };
            let doc = json!({
                "n": params.n,
                "theta": theta,
                "steps": args.steps,
                "points": refined.points,
            });
            serde_json::to_string_pretty(&doc).expect("JSON values always serialize") + "\n"
        }
    };
    if let Some(path) = &args.svg {
        write_file(path, &svg(&refined, &control))?;
    }
    match &args.out {
        Some(path) => {
            write_file(path, &body)?;
            emit(
                out,
                &format!(
                    "{} control points, n = {}, {} steps -> {} points written to {}",
                    control.len(),
                    params.n,
                    args.steps,
                    refined.len(),
                    path.display()
                ),
            )?;
        }
        None => write!(out, "{body}").map_err(|e| Error::InvalidInput(format!("write failed: {e}")))?,
    }
    Ok(true)
}

/// `(m, v, ||closed_form(v) - dd||_inf)` for `v = 1 - 4^-m`, `m = 1..=m_max`.
pub fn dd_limit_table<S: Scalar>(n: usize, m_max: u32) -> Result<Vec<(u32, S, f64)>> {
    let dd = dd_symbol::<S>(n).symbol;
    (1..=m_max)
        .map(|m| {
            let v = S::one() - S::from_i64(4).powi(-(m as i64));
            let cf = closed_form_symbol(n, &v)?.symbol;
            let diff = (&cf - &dd).to_f64();
            let dev = diff.coeffs().iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
            Ok((m, v, dev))
        })
        .collect()
}

/// True when the deviations strictly decrease from `m = 2` on.
pub fn strictly_decreasing(devs: &[f64]) -> bool {
    devs.windows(2).all(|w| w[1] < w[0])
}

fn run_dd_limit(args: &DdLimitArgs, arithmetic: Option<Arithmetic>, format: Format, out: &mut dyn Write) -> Result<bool> {
    if args.m_max < 1 {
        return Err(Error::InvalidInput("--m-max must be at least 1".into()));
    }
    let rows: Vec<(u32, Value, f64)> = match arithmetic.unwrap_or(Arithmetic::Rational) {
        Arithmetic::Rational => dd_limit_table::<Rational>(args.n, args.m_max)?
            .into_iter()
            .map(|(m, v, d)| (m, v.to_json(), d))
            .collect(),
        Arithmetic::Float => dd_limit_table::<f64>(args.n, args.m_max)?
            .into_iter()
            .map(|(m, v, d)| (m, v.to_json(), d))
            .collect(),
    };
    let devs: Vec<f64> = rows.iter().filter(|r| r.0 >= 2).map(|r| r.2).collect();
    let monotone = strictly_decreasing(&devs);
    match format {
        Format::Json => {
            let table: Vec<Value> = rows
                .iter()
                .map(|(m, v, d)| json!({ "m": m, "v": v, "deviation": d }))
                .collect();
            emit_json(out, &json!({ "n": args.n, "rows": table, "monotone": monotone }))?;
        }
        Format::Text => {
            emit(out, &format!("{:>3}  {:>24}  {:>12}", "m", "v", "max |diff|"))?;
            for (m, v, d) in &rows {
                let v = v.to_string().replace('"', "");
                emit(out, &format!("{m:>3}  {v:>24}  {d:>12.4e}"))?;
            }
            emit(out, &format!("monotone from m = 2: {monotone}"))?;
        }
    }
    Ok(monotone)
}

/// Executes one parsed command. `Ok(false)` means a requested check failed.
pub fn run(cli: &Cli, out: &mut dyn Write) -> Result<bool> {
    match &cli.command {
        Command::Identities(args) => match cli.arithmetic.unwrap_or(Arithmetic::Rational) {
            Arithmetic::Rational => run_identities::<Rational>(args, cli.format, out),
            Arithmetic::Float => run_identities::<f64>(args, cli.format, out),
        },
        Command::Symbol(args) => run_symbol(args, cli.arithmetic, out),
        Command::Compare(args) => run_compare(args, cli.arithmetic, cli.format, out),
        Command::Subdivide(args) => run_subdivide(args, cli.arithmetic, cli.format, out),
        Command::DdLimit(args) => run_dd_limit(args, cli.arithmetic, cli.format, out),
    }
}
