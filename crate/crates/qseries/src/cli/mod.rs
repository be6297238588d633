//! Command-line front end. Every subcommand reads a [`SeriesDocument`] (except
//! `qint`), runs one computation and emits a versioned [`Report`].
//!
//! Exit codes: 0 success, 2 invalid specification or arguments, 3 a limit
//! was requested but the series does not converge there, 4 I/O failure,
//! 1 any other numerical failure.

pub mod document;
pub mod plot;
pub mod report;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rug::ops::Pow;
use rug::Float;
use serde_json::{json, Map, Value};

use crate::euler_maclaurin::{default_depths, series_expansion, verify_expansion};
use crate::lacunary::{oscillation_report, slopes, LacunaryReport};
use crate::numeric::{self, HpComplex, HpReal};
use crate::poly::RatPoly;
use crate::qintegral::{
    extrapolate_lemma, lemma_limit, lemma_sum, q_integral_power, residue_pair, LemmaPair,
};
use crate::radial::{
    classify_radial_limit, default_fit_order, default_grid, extrapolate_limit, radial_samples,
    twist, twisted_spec, Grid, RadialLimitResult,
};
use crate::series::{self, EvalOptions, Exponent, SeriesSpec};
use crate::{Error, Result};

pub use document::SeriesDocument;
pub use report::{Fmt, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_NO_LIMIT: i32 = 3;
pub const EXIT_IO: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "qseries",
    version,
    about = "Radial limits, asymptotics and oscillation of q-series"
)]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = numeric::DEFAULT_PRECISION)]
    pub precision: u32,
    /// Emit the report as JSON (default).
    #[arg(long, global = true, conflicts_with = "csv")]
    pub json: bool,
    /// Emit the report as key,value CSV.
    #[arg(long, global = true)]
    pub csv: bool,
    /// Write output here instead of stdout; for `plot`, the CSV data path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Record wall time in the report (makes output nondeterministic).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify and compute the radial limit at the document's root of unity.
    Limit {
        /// Series document (JSON).
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Both)]
        mode: Mode,
        /// Extrapolation grid `x_min,x_max,count` in x = -log q.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
        /// Number of fractional powers fitted beyond the constant.
        #[arg(long)]
        fit_order: Option<usize>,
    },
    /// Asymptotic expansion in x = -log q via Euler-Maclaurin.
    Asympt {
        /// Series document (JSON).
        spec: PathBuf,
        /// Highest lattice position W (exponent W/d).
        #[arg(long)]
        order: Option<usize>,
        /// Number m of Bernoulli correction levels.
        #[arg(long)]
        em_depth: Option<usize>,
        /// Compare against direct evaluation and report the residual slope.
        #[arg(long)]
        verify: bool,
        /// Sample grid `x_min,x_max,count` for --verify.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
    },
    /// Oscillation report for a lacunary series sum C(n) q^{a^n}.
    Lacunary {
        /// Series document (JSON).
        spec: PathBuf,
        /// Base a, overriding the document's exponent.
        #[arg(long)]
        base: Option<String>,
        /// Number of subsequence points per cluster.
        #[arg(long, default_value_t = 8)]
        rmax: usize,
    },
    /// q-integral of x^c, or the rectangle sum of a pair `x(t),y(t)`.
    Qint {
        /// Exponent c of the q-integral of x^c.
        #[arg(long)]
        c: Option<String>,
        /// q in (0, 1), as a decimal string.
        #[arg(long)]
        q: String,
        /// Two polynomials in t separated by a comma, e.g. `t,2t`.
        #[arg(long)]
        pair: Option<String>,
        /// Also extrapolate the pair's sum to q = 1.
        #[arg(long)]
        extrapolate: bool,
    },
    /// Plot data: rectangle corners or values along the radius.
    Plot {
        /// Series document (JSON).
        spec: PathBuf,
        #[arg(long, value_enum, default_value_t = PlotKind::Rectangles)]
        what: PlotKind,
        /// q for the rectangle plot.
        #[arg(long, default_value = "0.9")]
        q: String,
        /// Residue class j of the rectangle decomposition.
        #[arg(long, default_value_t = 0)]
        residue: usize,
        /// Radial grid `x_min,x_max,count` for the convergence plot.
        #[arg(long, value_parser = parse_grid)]
        grid: Option<Grid>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Closed,
    Numeric,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PlotKind {
    Rectangles,
    Convergence,
}

fn parse_grid(s: &str) -> std::result::Result<Grid, String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, n] = parts[..] else {
        return Err("expected x_min,x_max,count".into());
    };
    let grid = Grid {
        x_min: a.parse().map_err(|_| format!("bad x_min {a:?}"))?,
        x_max: b.parse().map_err(|_| format!("bad x_max {b:?}"))?,
        count: n.parse().map_err(|_| format!("bad count {n:?}"))?,
    };
    grid.points(53).map_err(|e| e.to_string())?;
    Ok(grid)
}

fn grid_json(g: &Grid) -> Value {
    json!({ "x_min": g.x_min, "x_max": g.x_max, "count": g.count })
}

/// Process exit code for an error.
pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Io { .. } => EXIT_IO,
        Error::InvalidSpec(_)
        | Error::InvalidArgument(_)
        | Error::NonzeroMean { .. }
        | Error::NonIntegerPolynomial(_)
        | Error::OutsideUnitDisk { .. } => EXIT_INVALID,
        _ => EXIT_FAILURE,
    }
}

/// A finished command: the report, its exit code and any files written.
#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub exit: i32,
    /// Raw data for stdout when `plot` has no `--out`.
    pub stdout_data: Option<String>,
}

/// Parses arguments, runs the command, writes output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
        }
    };
    match execute(&cli).and_then(|o| emit(&cli, o)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

fn emit(cli: &Cli, outcome: Outcome) -> Result<i32> {
    let text = if cli.csv {
        outcome.report.to_csv()
    } else {
        outcome.report.to_json()
    };
    match (&cli.command, &cli.out) {
        (Command::Plot { .. }, _) => match outcome.stdout_data {
            Some(data) => print!("{data}"),
            None => print!("{text}"),
        },
        (_, Some(path)) => write_file(path, &text)?,
        (_, None) => print!("{text}"),
    }
    Ok(outcome.exit)
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Runs the parsed command without touching stdout.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let prec = cli.precision;
    if !(16..=65536).contains(&prec) {
        return Err(Error::InvalidArgument(format!(
            "precision {prec} outside 16..=65536"
        )));
    }
    let start = Instant::now();
    let mut outcome = match &cli.command {
        Command::Limit {
            spec,
            mode,
            grid,
            fit_order,
        } => cmd_limit(spec, *mode, grid.clone(), *fit_order, prec)?,
        Command::Asympt {
            spec,
            order,
            em_depth,
            verify,
            grid,
        } => cmd_asympt(spec, *order, *em_depth, *verify, grid.clone(), prec)?,
        Command::Lacunary { spec, base, rmax } => cmd_lacunary(spec, base.as_deref(), *rmax, prec)?,
        Command::Qint {
            c,
            q,
            pair,
            extrapolate,
        } => cmd_qint(c.as_deref(), q, pair.as_deref(), *extrapolate, prec)?,
        Command::Plot {
            spec,
            what,
            q,
            residue,
            grid,
        } => cmd_plot(
            spec,
            *what,
            q,
            *residue,
            grid.clone(),
            cli.out.as_deref(),
            prec,
        )?,
    };
    if cli.timing {
        outcome.report.wall_time_s = Some(start.elapsed().as_secs_f64());
    }
    Ok(outcome)
}

fn load(
    path: &Path,
    prec: u32,
) -> Result<(SeriesDocument, SeriesSpec, crate::radial::RootOfUnity)> {
    let doc = SeriesDocument::read(path)?;
    let (spec, xi) = doc.to_spec(prec)?;
    Ok((doc, spec, xi))
}

fn report(command: &str, inputs: Value, results: Map<String, Value>, prec: u32) -> Report {
    Report {
        command: command.into(),
        inputs,
        results: Value::Object(results),
        precision: prec,
        wall_time_s: None,
    }
}

fn lacunary_json(rep: &LacunaryReport, fmt: Fmt) -> Value {
    let residues: Vec<Value> = rep
        .per_residue
        .iter()
        .map(|r| {
            json!({
                "j": r.j,
                "M": fmt.real(&r.slopes.big_m),
                "m": fmt.real(&r.slopes.small_m),
                "x_norm": fmt.real(&r.slopes.x_norm),
                "x0": fmt.real(&r.x0),
                "x0_prime": fmt.real(&r.x0_prime),
                "lower_value": fmt.real(&r.lower_value),
                "upper_value": fmt.real(&r.upper_value),
                "inequality_holds": r.inequality_holds,
                "rectangle_sums_high": r.rectangle_sums_high.iter().map(|v| fmt.real(v)).collect::<Vec<_>>(),
                "rectangle_sums_low": r.rectangle_sums_low.iter().map(|v| fmt.real(v)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let samples = |s: &[(HpReal, HpComplex)]| -> Vec<Value> {
        s.iter()
            .map(|(q, v)| json!({ "q": fmt.real(q), "value": fmt.complex(v) }))
            .collect()
    };
    json!({
        "a": fmt.real(&rep.a),
        "k": rep.k,
        "per_residue": residues,
        "cluster_high": fmt.complex(&rep.cluster_high),
        "cluster_low": fmt.complex(&rep.cluster_low),
        "separation": fmt.real(&rep.separation()),
        "inequality_holds": rep.inequality_holds(),
        "verdict": rep.verdict(),
        "last_coefficient_zero": rep.last_coefficient_zero,
        "samples_high": samples(&rep.samples_high),
        "samples_low": samples(&rep.samples_low),
    })
}

fn cmd_limit(
    path: &Path,
    mode: Mode,
    grid: Option<Grid>,
    fit_order: Option<usize>,
    prec: u32,
) -> Result<Outcome> {
    let (doc, spec, xi) = load(path, prec)?;
    let fmt = Fmt::for_precision(prec);
    let mut inputs = json!({ "document": doc, "mode": format!("{mode:?}").to_lowercase() });
    let mut results = Map::new();
    let class = classify_radial_limit(&spec, &xi)?;
    results.insert("classification".into(), json!(class.tag()));
    if let Some(s) = spec.polynomial_exponent() {
        let tw = twist(&spec.coefficients, s, &xi)?;
        results.insert(
            "twisted_coefficients".into(),
            tw.values().iter().map(|v| fmt.complex(v)).collect(),
        );
    }
    let exit = match &class {
        RadialLimitResult::Converges(closed) => {
            if mode != Mode::Numeric {
                results.insert("closed".into(), fmt.complex(closed));
            }
            if mode != Mode::Closed {
                let s = spec
                    .polynomial_exponent()
                    .expect("convergent limits come from polynomial exponents");
                let grid = match grid {
                    Some(g) => g,
                    None => default_grid(&spec, &xi)?,
                };
                let order = fit_order.unwrap_or_else(|| default_fit_order(s));
                inputs["grid"] = grid_json(&grid);
                inputs["fit_order"] = json!(order);
                let ex = extrapolate_limit(
                    &spec,
                    &xi,
                    &grid,
                    order,
                    &EvalOptions::with_precision(prec),
                )?;
                results.insert("numeric".into(), fmt.complex(&ex.estimate));
                results.insert(
                    "numeric_error_estimate".into(),
                    fmt.real(&ex.error_estimate),
                );
                if mode == Mode::Both {
                    results.insert(
                        "difference".into(),
                        fmt.real(&(closed - &ex.estimate).abs()),
                    );
                }
            }
            EXIT_OK
        }
        RadialLimitResult::Diverges {
            leading_term,
            twisted_mean,
        } => {
            results.insert("twisted_mean".into(), fmt.complex(twisted_mean));
            results.insert(
                "leading_term".into(),
                json!({
                    "coefficient": fmt.complex(&leading_term.coefficient),
                    "exponent": leading_term.exponent.to_string(),
                    "conjectural": leading_term.conjectural,
                }),
            );
            EXIT_NO_LIMIT
        }
        RadialLimitResult::Oscillates { evidence, note } => {
            results.insert("note".into(), json!(note));
            if let Some(rep) = evidence {
                results.insert("evidence".into(), lacunary_json(rep, fmt));
            }
            EXIT_NO_LIMIT
        }
    };
    Ok(Outcome {
        report: report("limit", inputs, results, prec),
        exit,
        stdout_data: None,
    })
}

fn cmd_asympt(
    path: &Path,
    order: Option<usize>,
    em_depth: Option<usize>,
    verify: bool,
    grid: Option<Grid>,
    prec: u32,
) -> Result<Outcome> {
    let (doc, spec, xi) = load(path, prec)?;
    let s = spec
        .polynomial_exponent()
        .ok_or_else(|| Error::InvalidSpec("asympt needs a polynomial exponent".into()))?;
    let (m0, w0) = default_depths(s.degree());
    let (m, w) = (em_depth.unwrap_or(m0), order.unwrap_or(w0));
    if m == 0 {
        return Err(Error::InvalidArgument("--em-depth must be >= 1".into()));
    }
    let target = if xi.is_one() {
        spec.clone()
    } else {
        twisted_spec(&spec, &xi)?
    };
    let expansion = series_expansion(&target, m, w, prec)?;
    let fmt = Fmt::for_precision(prec);
    let mut inputs = json!({ "document": doc, "order": w, "em_depth": m });
    let mut results = Map::new();
    let terms: Vec<Value> = expansion
        .terms
        .iter()
        .map(|t| {
            json!({
                "lattice": t.lattice,
                "exponent": expansion.exponent(t).to_string(),
                "coefficient": fmt.complex(&t.coefficient),
                "symbolic": t.symbolic.as_ref().map(|c| c.to_string()),
            })
        })
        .collect();
    results.insert(
        "denominator_degree".into(),
        json!(expansion.denominator_degree),
    );
    results.insert("terms".into(), json!(terms));
    results.insert(
        "remainder_order".into(),
        json!(expansion.remainder_order.to_string()),
    );
    if verify {
        let grid = grid.unwrap_or(Grid {
            x_min: 1e-3,
            x_max: 1e-2,
            count: 8,
        });
        inputs["grid"] = grid_json(&grid);
        let xs = grid.points(prec)?;
        let rep = verify_expansion(&target, &expansion, &xs, &EvalOptions::with_precision(prec))?;
        let rows: Vec<Value> = rep
            .rows
            .iter()
            .map(|r| json!({ "x": fmt.real(&r.x), "residual": fmt.real(&r.residual) }))
            .collect();
        results.insert(
            "verification".into(),
            json!({
                "rows": rows,
                "slope": rep.slope,
                "noise_floor": fmt.real(&rep.noise_floor),
                "verdict": rep.verdict(),
            }),
        );
    }
    Ok(Outcome {
        report: report("asympt", inputs, results, prec),
        exit: EXIT_OK,
        stdout_data: None,
    })
}

fn cmd_lacunary(path: &Path, base: Option<&str>, rmax: usize, prec: u32) -> Result<Outcome> {
    let (doc, spec, xi) = load(path, prec)?;
    if !xi.is_one() {
        return Err(Error::InvalidSpec(
            "lacunary analysis is only defined at q -> 1".into(),
        ));
    }
    let a = match (base, &spec.exponent) {
        (Some(b), _) => document::parse_real(b, prec)?,
        (None, Exponent::Exponential(e)) => e.base().clone(),
        (None, Exponent::Polynomial(_)) => {
            return Err(Error::InvalidSpec(
                "polynomial exponent; pass --base for a lacunary analysis".into(),
            ))
        }
    };
    if a <= 1 {
        return Err(Error::InvalidArgument("base must exceed 1".into()));
    }
    let rep = oscillation_report(&spec.coefficients, &a, rmax, prec)?;
    let fmt = Fmt::for_precision(prec);
    let inputs = json!({ "document": doc, "base": fmt.real(&a), "rmax": rmax });
    let Value::Object(results) = lacunary_json(&rep, fmt) else {
        unreachable!()
    };
    Ok(Outcome {
        report: report("lacunary", inputs, results, prec),
        exit: EXIT_OK,
        stdout_data: None,
    })
}

fn parse_exponent_c(s: &str, prec: u32) -> Result<HpReal> {
    match s.trim() {
        "pi" | "π" => Ok(numeric::pi(prec)),
        t => document::parse_real(t, prec),
    }
}

fn cmd_qint(
    c: Option<&str>,
    q: &str,
    pair: Option<&str>,
    extrapolate: bool,
    prec: u32,
) -> Result<Outcome> {
    let fmt = Fmt::for_precision(prec);
    let q_val = document::parse_real(q, prec)?;
    let mut results = Map::new();
    let inputs = match (c, pair) {
        (Some(c), None) => {
            let c_val = parse_exponent_c(c, prec)?;
            let v = q_integral_power(&c_val, &q_val)?;
            let limit = Float::with_val(prec, 1) / Float::with_val(prec, &c_val + 1u32);
            results.insert("value".into(), fmt.real(&v));
            results.insert("limit".into(), fmt.real(&limit));
            results.insert(
                "difference".into(),
                fmt.real(&Float::with_val(prec, &v - &limit)),
            );
            json!({ "c": c, "q": q })
        }
        (None, Some(p)) => {
            let (xs, ys) = p
                .split_once(',')
                .ok_or_else(|| Error::InvalidArgument("--pair expects `x(t),y(t)`".into()))?;
            let lp = LemmaPair::from_polys(RatPoly::parse(xs)?, RatPoly::parse(ys)?, prec)?;
            let opts = EvalOptions::with_precision(prec);
            let eps = numeric::pow2(prec, -(prec as i32) / 2);
            let r = lemma_sum(&lp, &q_val, &eps, &opts)?;
            results.insert("c".into(), fmt.real(&lp.c));
            results.insert("sum".into(), fmt.real(&r.sum));
            results.insert("tail_sum".into(), fmt.real(&r.tail_sum));
            results.insert("lower_int".into(), fmt.real(&r.lower_int));
            results.insert("upper_int".into(), fmt.real(&r.upper_int));
            results.insert("squeezed".into(), json!(r.squeezed()));
            results.insert("tail_start".into(), json!(r.n_start + 1));
            results.insert("error_bound".into(), fmt.real(&r.error_bound));
            results.insert("limit".into(), fmt.real(&lemma_limit(&lp)));
            if extrapolate {
                let d = lp.x_poly.degree();
                let e = extrapolate_lemma(&lp, &Grid::for_degree(d), 2 * d, &opts)?;
                results.insert("extrapolated".into(), fmt.real(&e.estimate));
                results.insert(
                    "extrapolation_error_estimate".into(),
                    fmt.real(&e.error_estimate),
                );
            }
            json!({ "pair": p, "q": q, "extrapolate": extrapolate })
        }
        _ => {
            return Err(Error::InvalidArgument(
                "qint needs exactly one of --c or --pair".into(),
            ))
        }
    };
    Ok(Outcome {
        report: report("qint", inputs, results, prec),
        exit: EXIT_OK,
        stdout_data: None,
    })
}

/// Rectangle corners `(n, x_left, x_right, height)` in the q-plane.
struct Corners {
    rows: Vec<(u64, HpReal, HpReal, HpReal)>,
    curves: Vec<plot::Curve>,
    extra: Map<String, Value>,
}

const CORNER_CUTOFF: f64 = 1e-9;
const MAX_RECTANGLES: u64 = 4000;

fn pow_q(lq: &HpReal, e: &HpReal) -> HpReal {
    Float::with_val(lq.prec(), lq * e).exp()
}

fn lacunary_corners(
    spec: &SeriesSpec,
    q: &HpReal,
    j: usize,
    prec: u32,
    fmt: Fmt,
) -> Result<Corners> {
    let Exponent::Exponential(e) = &spec.exponent else {
        unreachable!()
    };
    let k = spec.coefficients.period();
    let wp = prec + 32;
    let a = Float::with_val(wp, e.base());
    let sl = slopes(&a, k, j)?;
    let lq = Float::with_val(wp, q.ln_ref());
    let mut rows = Vec::new();
    let mut worst = Float::new(prec);
    for n in 0..MAX_RECTANGLES {
        let base = Float::with_val(wp, (&a).pow((n * k as u64) as u32)) * &sl.x_norm;
        let next = Float::with_val(wp, (&a).pow((n * k as u64 + k as u64) as u32)) * &sl.x_norm;
        let x_right = pow_q(&lq, &base);
        if x_right < CORNER_CUTOFF {
            break;
        }
        let x_left = pow_q(&lq, &next);
        let height = pow_q(&lq, &Float::with_val(wp, &base * &sl.big_m));
        // both top corners lie on the bounding curves
        let on_upper = Float::with_val(wp, (&x_right).pow(&sl.big_m)) - &height;
        let on_lower = Float::with_val(wp, (&x_left).pow(&sl.small_m)) - &height;
        worst = worst
            .max(&Float::with_val(prec, on_upper.abs()))
            .max(&Float::with_val(prec, on_lower.abs()));
        rows.push((
            n,
            Float::with_val(prec, x_left),
            Float::with_val(prec, x_right),
            Float::with_val(prec, height),
        ));
    }
    let curve = |p: &HpReal, label: String, color| {
        let p = p.to_f64();
        plot::Curve {
            label,
            points: (0..=200)
                .map(|i| i as f64 / 200.0)
                .map(|x| (x, x.powf(p)))
                .collect(),
            color,
        }
    };
    let mut extra = Map::new();
    extra.insert("M".into(), fmt.real(&sl.big_m));
    extra.insert("m".into(), fmt.real(&sl.small_m));
    extra.insert("max_corner_deviation".into(), fmt.real(&worst));
    Ok(Corners {
        curves: vec![
            curve(
                &sl.big_m,
                format!("y = x^M, M = {:.4}", sl.big_m.to_f64()),
                "#d62728",
            ),
            curve(
                &sl.small_m,
                format!("y = x^m, m = {:.4}", sl.small_m.to_f64()),
                "#2ca02c",
            ),
        ],
        rows,
        extra,
    })
}

fn polynomial_corners(
    spec: &SeriesSpec,
    q: &HpReal,
    j: usize,
    prec: u32,
    fmt: Fmt,
) -> Result<Corners> {
    let s = spec.polynomial_exponent().expect("polynomial exponent");
    let k = spec.coefficients.period();
    let pair = residue_pair(s, k, j, prec)?;
    let wp = prec + 32;
    let lq = Float::with_val(wp, q.ln_ref());
    let at = |p: &RatPoly, t: &HpReal| pow_q(&lq, &p.eval_float(t, wp));
    let (xp, yp) = (pair.x_poly.poly(), pair.y_poly.poly());
    let mut rows = Vec::new();
    for n in 0..MAX_RECTANGLES {
        let t = Float::with_val(wp, n);
        let x_right = at(xp, &t);
        let x_left = at(xp, &Float::with_val(wp, n + 1));
        if n > pair.increase_index() && x_right < CORNER_CUTOFF {
            break;
        }
        rows.push((
            n,
            Float::with_val(prec, x_left),
            Float::with_val(prec, x_right),
            Float::with_val(prec, at(yp, &t)),
        ));
    }
    // squeeze curves parameterised by t past the increase index
    let t0 = pair.increase_index() as f64;
    let t1 = rows.len().max(2) as f64 + 1.0;
    let shifted = yp.compose_affine(&1.into(), &(-1).into());
    let sample = |p: &RatPoly| -> Vec<(f64, f64)> {
        (0..=300)
            .map(|i| {
                let t = Float::with_val(wp, t0 + (t1 - t0) * i as f64 / 300.0);
                (at(xp, &t).to_f64(), at(p, &t).to_f64())
            })
            .collect()
    };
    let c = pair.c.to_f64();
    let mut extra = Map::new();
    extra.insert("x_poly".into(), json!(xp.to_string()));
    extra.insert("y_poly".into(), json!(yp.to_string()));
    extra.insert("c".into(), fmt.real(&pair.c));
    extra.insert("increase_index".into(), json!(pair.increase_index()));
    Ok(Corners {
        rows,
        curves: vec![
            plot::Curve {
                label: "phi: (q^x(t), q^y(t))".into(),
                points: sample(yp),
                color: "#2ca02c",
            },
            plot::Curve {
                label: "psi: (q^x(t), q^y(t-1))".into(),
                points: sample(&shifted),
                color: "#d62728",
            },
            plot::Curve {
                label: format!("y = x^c, c = {c:.4}"),
                points: (0..=200)
                    .map(|i| i as f64 / 200.0)
                    .map(|x| (x, x.powf(c)))
                    .collect(),
                color: "#7f7f7f",
            },
        ],
        extra,
    })
}

fn cmd_plot(
    path: &Path,
    what: PlotKind,
    q: &str,
    residue: usize,
    grid: Option<Grid>,
    out: Option<&Path>,
    prec: u32,
) -> Result<Outcome> {
    let (doc, spec, xi) = load(path, prec)?;
    let fmt = Fmt::for_precision(prec);
    let mut inputs = json!({ "document": doc, "what": format!("{what:?}").to_lowercase() });
    let mut results = Map::new();
    let (csv, svg) = match what {
        PlotKind::Rectangles => {
            let q_val = document::parse_real(q, prec)?;
            if !(q_val > 0 && q_val < 1) {
                return Err(Error::InvalidArgument("--q must lie in (0, 1)".into()));
            }
            let k = spec.coefficients.period();
            if k < 2 || residue + 2 > k {
                return Err(Error::InvalidArgument(format!(
                    "rectangles need period >= 2 and residue <= period - 2 (period {k}, residue {residue})"
                )));
            }
            inputs["q"] = json!(q);
            inputs["residue"] = json!(residue);
            let corners = match spec.exponent {
                Exponent::Exponential(_) => lacunary_corners(&spec, &q_val, residue, prec, fmt)?,
                Exponent::Polynomial(_) => polynomial_corners(&spec, &q_val, residue, prec, fmt)?,
            };
            let mut csv = String::from("n,x_left,x_right,height\n");
            for (n, l, r, h) in &corners.rows {
                csv.push_str(&format!(
                    "{n},{},{},{}\n",
                    numeric::format_real(l, fmt.digits),
                    numeric::format_real(r, fmt.digits),
                    numeric::format_real(h, fmt.digits)
                ));
            }
            let rects: Vec<plot::Rect> = corners
                .rows
                .iter()
                .map(|(_, l, r, h)| plot::Rect {
                    x_left: l.to_f64(),
                    x_right: r.to_f64(),
                    height: h.to_f64(),
                })
                .collect();
            let svg = plot::render(
                &format!("rectangles R(n), q = {q}"),
                "x",
                &rects,
                &corners.curves,
                true,
            );
            results.insert("rectangles".into(), json!(corners.rows.len()));
            results.extend(corners.extra);
            (csv, svg)
        }
        PlotKind::Convergence => {
            let grid = grid.unwrap_or(Grid {
                x_min: 1e-4,
                x_max: 1e-1,
                count: 25,
            });
            inputs["grid"] = grid_json(&grid);
            let xs = grid.points(prec)?;
            let opts = EvalOptions::with_precision(prec);
            let values: Vec<(HpReal, HpComplex)> = match &spec.exponent {
                Exponent::Polynomial(_) => radial_samples(&spec, &xi, &xs, &opts)?
                    .into_iter()
                    .map(|s| (s.x, s.value))
                    .collect(),
                Exponent::Exponential(_) => {
                    if !xi.is_one() {
                        return Err(Error::InvalidSpec(
                            "exponential exponents are sampled at q -> 1 only".into(),
                        ));
                    }
                    let eps = numeric::pow2(prec, -(prec as i32) / 2);
                    xs.iter()
                        .map(|x| {
                            Ok((
                                x.clone(),
                                series::evaluate_at_x(&spec, x, &eps, &opts)?.value,
                            ))
                        })
                        .collect::<Result<_>>()?
                }
            };
            let mut csv = String::from("x,re,im\n");
            for (x, v) in &values {
                let (re, im) = v.format(fmt.digits);
                csv.push_str(&format!(
                    "{},{re},{im}\n",
                    numeric::format_real(x, fmt.digits)
                ));
            }
            let line = |part: fn(&HpComplex) -> f64| {
                values
                    .iter()
                    .map(|(x, v)| (x.to_f64().log10(), part(v)))
                    .collect()
            };
            let mut curves = vec![plot::Curve {
                label: "Re".into(),
                points: line(|v| v.re.to_f64()),
                color: "#1f77b4",
            }];
            if values.iter().any(|(_, v)| !v.im.is_zero()) {
                curves.push(plot::Curve {
                    label: "Im".into(),
                    points: line(|v| v.im.to_f64()),
                    color: "#ff7f0e",
                });
            }
            let svg = plot::render(
                "series value along the radius",
                "log10 x, x = -log|q|",
                &[],
                &curves,
                false,
            );
            if let Some((x, v)) = values.first() {
                results.insert("smallest_x".into(), fmt.real(x));
                results.insert("value_at_smallest_x".into(), fmt.complex(v));
            }
            results.insert("points".into(), json!(values.len()));
            (csv, svg)
        }
    };
    let stdout_data = match out {
        Some(p) => {
            let svg_path = p.with_extension("svg");
            write_file(p, &csv)?;
            write_file(&svg_path, &svg)?;
            results.insert("csv".into(), json!(p.display().to_string()));
            results.insert("svg".into(), json!(svg_path.display().to_string()));
            None
        }
        None => Some(csv),
    };
    Ok(Outcome {
        report: report("plot", inputs, results, prec),
        exit: EXIT_OK,
        stdout_data,
    })
}
