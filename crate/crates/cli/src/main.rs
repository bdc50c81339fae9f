//! `cyclelift`: forms, cycle integrals, lifts and identity checks from the
//! command line.
//!
//! Exit status is 0 on success, 1 when an identity check fails and 2 on
//! bad input.

mod cache;
mod error;
mod expr;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cyclelift::analytic::{ComplexValue, EvaluationConfig};
use cyclelift::bqf::{class_representatives, cycle, genus_char, pell, reduce, QuadraticForm};
use cyclelift::cycleint::{
    cycle_integral, cycle_integral_periods, cycle_integral_quadrature, cycle_integral_square, CycleIntegralResult,
};
use cyclelift::exactmath::FundamentalDiscriminant;
use cyclelift::qseries::QSeries;
use cyclelift::shintani::{
    default_delta, shintani_lift, verify_corollary, verify_eisenstein_lift, verify_modularity, verify_period_symmetry,
    verify_siegel, verify_t0_independence, verify_two_route, verify_vanishing, verify_z0_independence, Report,
    SuiteReport,
};
use cyclelift::{DoubleDouble, Real};
use num_bigint::BigInt;
use serde_json::json;

use cache::Cache;
use error::{CliError, CliResult};
use output::{sci, Format, Output};

#[derive(Debug, Parser)]
#[command(
    name = "cyclelift",
    version,
    about = "Cycle integrals and Shintani lifts of weakly holomorphic modular forms"
)]
struct Cli {
    /// Working precision in bits: up to 53 runs in f64, up to 106 in double-double.
    #[arg(long, global = true, default_value_t = 106)]
    prec: u32,
    /// Number of q-expansion terms.
    #[arg(long, global = true, default_value_t = 200)]
    trunc: i64,
    /// Gauss-Legendre nodes per quadrature piece.
    #[arg(long, global = true, default_value_t = 64)]
    quad_degree: usize,
    /// Tolerance for identity checks.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol: f64,
    /// Directory for cached q-expansions.
    #[arg(long, global = true, env = "CYCLELIFT_CACHE")]
    cache_dir: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Binary quadratic forms.
    #[command(subcommand)]
    Forms(FormsCommand),
    /// The cycle integral of a form along the geodesic of Q.
    Cycleint {
        #[arg(long)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, value_enum, default_value_t = RouteArg::Auto)]
        route: RouteArg,
    },
    /// Coefficients of the Shintani lift.
    Lift {
        #[arg(long)]
        f: String,
        /// Fundamental discriminant; defaults to 1 for even k and -3 for odd k.
        #[arg(long, allow_hyphen_values = true)]
        delta: Option<i64>,
        #[arg(long, default_value_t = 20)]
        mmax: i64,
        /// Half the weight; must agree with the weight of --f.
        #[arg(long)]
        k: Option<u32>,
    },
    /// Run an identity suite.
    #[command(subcommand)]
    Verify(Suite),
}

#[derive(Debug, Subcommand)]
enum FormsCommand {
    /// Reduce a form, printing the reduced form and the matrix used.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// The reduction cycle through the class of a form.
    Cycle {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// One representative per class of discriminant D.
    Classes {
        #[arg(long)]
        d: i64,
    },
    /// Fundamental solution of t^2 - D u^2 = 4.
    Pell {
        #[arg(long)]
        d: i64,
    },
    /// Genus character values for one form or every class of a discriminant.
    Genus {
        #[arg(long, allow_hyphen_values = true)]
        d1: i64,
        #[arg(long, allow_hyphen_values = true, conflicts_with = "d", required_unless_present = "d")]
        q: Option<String>,
        #[arg(long)]
        d: Option<i64>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RouteArg {
    Auto,
    Quadrature,
    Periods,
    Lstar,
}

#[derive(Debug, Subcommand)]
enum Suite {
    /// Sums of zeta values over classes against class-number values.
    Siegel {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4])]
        k: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = [5, 8, 12, 13, 17])]
        d: Vec<i64>,
    },
    /// The lift of G_2k against Cohen's series.
    EisensteinLift {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 4])]
        k: Vec<u32>,
        #[arg(long, default_value_t = 24)]
        mmax: i64,
    },
    /// Cycle integrals of images under the Bol operator vanish.
    Corollary {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4])]
        k: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
        m: Vec<i64>,
        #[arg(long, value_delimiter = ',', default_values_t = [5, 8, 13])]
        d: Vec<i64>,
    },
    /// Quadrature against the period polynomial route.
    TwoRoute {
        #[command(flatten)]
        forms: FormList,
        #[arg(long, value_delimiter = ',', default_values_t = [5, 8, 12])]
        d: Vec<i64>,
    },
    /// Symmetry of the period vector of a cusp form.
    PeriodsSymmetry {
        #[command(flatten)]
        forms: FormList,
    },
    /// L* values do not depend on the splitting point t0.
    T0Independence {
        #[arg(long, default_value = "Delta")]
        f: String,
        #[arg(long, default_value_t = 5)]
        c: i64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 2)]
        d: i64,
        #[arg(long, default_value_t = 6)]
        s: i64,
        #[arg(long, value_delimiter = ',', default_values_t = [1.0, 0.6, 1.7])]
        t0: Vec<f64>,
    },
    /// Lifts vanish where there are no cusp forms.
    Vanishing {
        #[arg(long, value_delimiter = ',', default_values_t = [2, 3, 4, 5])]
        k: Vec<u32>,
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
        basis: Vec<i64>,
        #[arg(long, default_value_t = 20)]
        mmax: i64,
    },
    /// Cycle integrals do not depend on the base point.
    Z0Independence {
        #[command(flatten)]
        forms: FormList,
        #[arg(long, value_delimiter = ',', default_values_t = [5, 8, 12, 13])]
        d: Vec<i64>,
    },
    /// Transformation law under z -> -1/z at random points.
    Modularity {
        #[command(flatten)]
        forms: FormList,
        #[arg(long, default_value_t = 10)]
        points: usize,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

#[derive(Debug, Args)]
struct FormList {
    /// Forms to check, separated by ';'.
    #[arg(long = "f", value_delimiter = ';', default_values_t = ["Delta".to_string(), "f12_1".to_string()])]
    f: Vec<String>,
}

/// Validated run settings.
struct Run {
    cfg: EvaluationConfig,
    cache: Cache,
    format: Format,
}

impl Run {
    fn new(cli: &Cli) -> CliResult<Self> {
        if !(53..=106).contains(&cli.prec) {
            return Err(CliError::Usage(format!("--prec must lie in 53..=106, got {}", cli.prec)));
        }
        if cli.trunc < 10 {
            return Err(CliError::Usage(format!("--trunc must be at least 10, got {}", cli.trunc)));
        }
        if !(cli.tol > 0.0 && cli.tol.is_finite()) {
            return Err(CliError::Usage(format!("--tol must be positive, got {}", cli.tol)));
        }
        if cli.quad_degree < 2 {
            return Err(CliError::Usage(format!("--quad-degree must be at least 2, got {}", cli.quad_degree)));
        }
        let cfg =
            EvaluationConfig { prec: cli.prec, truncation: cli.trunc, quad_degree: cli.quad_degree, tol: cli.tol };
        Ok(Self { cfg, cache: Cache::new(cli.cache_dir.clone()), format: cli.format })
    }

    fn double(&self) -> bool {
        self.cfg.prec > 53
    }

    fn form(&self, src: &str) -> CliResult<QSeries> {
        expr::parse_form(src, self.cfg.truncation, &self.cache)
    }
}

fn parse_q(src: &str) -> CliResult<QuadraticForm> {
    let inner = src.trim().trim_start_matches('[').trim_end_matches(']');
    let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("expected a form a,b,c, got {src:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let n: Vec<BigInt> = parts.iter().map(|p| p.parse::<BigInt>().map_err(|_| bad())).collect::<CliResult<_>>()?;
    Ok(QuadraticForm::new(n[0].clone(), n[1].clone(), n[2].clone()))
}

fn half_weight(f: &QSeries, src: &str) -> CliResult<u32> {
    match f.weight() {
        Some(w) if w >= 2 && w % 2 == 0 => Ok((w / 2) as u32),
        w => Err(CliError::Usage(format!("{src:?} has weight {w:?}; a positive even weight 2k is needed"))),
    }
}

fn abc(q: &QuadraticForm) -> String {
    format!("[{},{},{}]", q.a, q.b, q.c)
}

fn value_cells<T: Real>(v: &ComplexValue<T>) -> Vec<String> {
    let (re, im, err) = v.to_f64();
    vec![sci(re), sci(im), sci(err)]
}

fn forms(cmd: &FormsCommand) -> CliResult<Output> {
    Ok(match cmd {
        FormsCommand::Reduce { q } => {
            let q = parse_q(q)?;
            let (r, m) = reduce(&q)?;
            let mut o =
                Output::new(json!({ "input": q, "reduced": r, "matrix": m }), vec!["input", "reduced", "matrix"]);
            o.row(vec![abc(&q), abc(&r), serde_json::to_string(&m)?]);
            o
        }
        FormsCommand::Cycle { q } => {
            let (r, _) = reduce(&parse_q(q)?)?;
            let cyc = cycle(&r)?;
            let mut o = Output::new(serde_json::to_value(&cyc)?, vec!["j", "form", "step"]);
            for (j, (f, m)) in cyc.forms.iter().zip(&cyc.steps).enumerate() {
                o.row(vec![j.to_string(), abc(f), m.to_string()]);
            }
            o
        }
        FormsCommand::Classes { d } => {
            let reps = class_representatives(*d)?;
            let mut o = Output::new(json!({ "D": d, "classes": reps }), vec!["a", "b", "c"]);
            for q in &reps {
                o.row(vec![q.a.to_string(), q.b.to_string(), q.c.to_string()]);
            }
            o
        }
        FormsCommand::Pell { d } => {
            if *d <= 0 {
                return Err(CliError::Usage(format!("Pell needs a positive discriminant, got {d}")));
            }
            let (t, u) = pell(&BigInt::from(*d))?;
            let mut o = Output::new(json!({ "D": d, "t": t.to_string(), "u": u.to_string() }), vec!["D", "t", "u"]);
            o.json["t"] = serde_json::from_str(&t.to_string()).unwrap_or(o.json["t"].take());
            o.json["u"] = serde_json::from_str(&u.to_string()).unwrap_or(o.json["u"].take());
            o.row(vec![d.to_string(), t.to_string(), u.to_string()]);
            o
        }
        FormsCommand::Genus { d1, q, d } => {
            let fd = FundamentalDiscriminant::new(*d1)?;
            let forms = match (q, d) {
                (Some(q), _) => vec![parse_q(q)?],
                (None, Some(d)) => class_representatives(*d)?,
                (None, None) => unreachable!("clap requires --q or --d"),
            };
            let mut values = Vec::new();
            let mut o = Output::new(json!(null), vec!["form", "D1", "chi"]);
            for f in &forms {
                let chi = genus_char(fd, f)?;
                o.row(vec![abc(f), d1.to_string(), chi.to_string()]);
                values.push(json!({ "Q": f, "chi": chi }));
            }
            o.json = json!({ "D1": d1, "values": values });
            o
        }
    })
}

fn cycleint<T: Real>(run: &Run, f: &str, q: &str, route: RouteArg) -> CliResult<Output> {
    let form = run.form(f)?;
    half_weight(&form, f)?;
    let q = parse_q(q)?;
    let cfg = &run.cfg;
    let r: CycleIntegralResult<T> = match route {
        RouteArg::Auto => cycle_integral(&form, &q, cfg)?,
        RouteArg::Quadrature => cycle_integral_quadrature(&form, &q, cfg)?,
        RouteArg::Periods => cycle_integral_periods(&form, &q, cfg)?,
        RouteArg::Lstar => cycle_integral_square(&form, &q, cfg)?,
    };
    let mut o = Output::new(json!({ "f": f, "result": r }), vec!["f", "Q", "route", "re", "im", "err"]);
    let mut cells = vec![f.to_string(), abc(&q), r.route.to_string()];
    cells.extend(value_cells(&r.value));
    o.row(cells);
    Ok(o)
}

fn lift<T: Real>(run: &Run, f: &str, delta: Option<i64>, mmax: i64, k: Option<u32>) -> CliResult<Output> {
    let form = run.form(f)?;
    let weight_k = half_weight(&form, f)?;
    if let Some(k) = k {
        if k != weight_k {
            return Err(CliError::Usage(format!("--k {k} disagrees with the weight {} of {f:?}", 2 * weight_k)));
        }
    }
    if mmax < 1 {
        return Err(CliError::Usage(format!("--mmax must be positive, got {mmax}")));
    }
    let delta = match delta {
        Some(d) => FundamentalDiscriminant::new(d)?,
        None => default_delta(weight_k),
    };
    let l = shintani_lift::<T>(&form, weight_k, delta, mmax, &run.cfg)?;
    let mut o = Output::new(json!({ "f": f, "lift": l }), vec!["m", "re", "im", "err", "classes", "routes"]);
    for (m, c) in &l.coefficients {
        let mut cells = vec![m.to_string()];
        cells.extend(value_cells(&c.value));
        cells.push(c.classes.to_string());
        cells.push(c.routes.iter().map(ToString::to_string).collect::<Vec<_>>().join("+"));
        o.row(cells);
    }
    Ok(o)
}

fn verify<T: Real>(run: &Run, suite: &Suite) -> CliResult<(Output, bool)> {
    let cfg = &run.cfg;
    let forms = |list: &FormList| -> CliResult<Vec<(String, QSeries)>> {
        list.f.iter().map(|s| Ok((s.clone(), run.form(s)?))).collect()
    };
    let (name, suites): (&str, Vec<SuiteReport>) = match suite {
        Suite::Siegel { k, d } => {
            let mut reports: Vec<Report> = Vec::new();
            for &k in k {
                for &d in d {
                    reports.push(verify_siegel::<T>(k, d, cfg)?);
                }
            }
            ("siegel", vec![SuiteReport::new("siegel", reports)])
        }
        Suite::EisensteinLift { k, mmax } => (
            "eisenstein-lift",
            k.iter().map(|&k| verify_eisenstein_lift::<T>(k, *mmax, cfg)).collect::<Result<_, _>>()?,
        ),
        Suite::Corollary { k, m, d } => {
            ("corollary", k.iter().map(|&k| verify_corollary::<T>(k, m, d, cfg)).collect::<Result<_, _>>()?)
        }
        Suite::TwoRoute { forms: list, d } => {
            let fs = forms(list)?;
            ("two-route", fs.iter().map(|(l, f)| verify_two_route::<T>(f, l, d, cfg)).collect::<Result<_, _>>()?)
        }
        Suite::PeriodsSymmetry { forms: list } => {
            let fs = forms(list)?;
            let reports = fs.iter().map(|(l, f)| verify_period_symmetry::<T>(f, l, cfg)).collect::<Result<_, _>>()?;
            ("periods-symmetry", vec![SuiteReport::new("periods-symmetry", reports)])
        }
        Suite::T0Independence { f, c, d, s, t0 } => {
            let form = run.form(f)?;
            ("t0-independence", vec![verify_t0_independence::<T>(&form, f, (*c, *d), *s, t0, cfg)?])
        }
        Suite::Vanishing { k, basis, mmax } => {
            ("vanishing", k.iter().map(|&k| verify_vanishing::<T>(k, basis, *mmax, cfg)).collect::<Result<_, _>>()?)
        }
        Suite::Z0Independence { forms: list, d } => {
            let fs = forms(list)?;
            (
                "z0-independence",
                fs.iter().map(|(l, f)| verify_z0_independence::<T>(f, l, d, cfg)).collect::<Result<_, _>>()?,
            )
        }
        Suite::Modularity { forms: list, points, seed } => {
            let fs = forms(list)?;
            let suites = fs
                .iter()
                .enumerate()
                .map(|(i, (l, f))| verify_modularity::<T>(f, l, *points, seed + i as u64, cfg))
                .collect::<Result<_, _>>()?;
            ("modularity", suites)
        }
    };
    let reports: Vec<Report> = suites.into_iter().flat_map(|s| s.reports).collect();
    let report = SuiteReport::new(name, reports);
    let mut o = Output::new(
        serde_json::to_value(&report)?,
        vec!["identity", "parameters", "abs_gap", "rel_gap", "compared", "tolerance", "pass"],
    );
    for r in &report.reports {
        o.row(vec![
            r.identity.clone(),
            r.parameters.to_string(),
            sci(r.abs_gap),
            sci(r.rel_gap),
            serde_json::to_value(r.compared)?.as_str().unwrap_or_default().to_string(),
            format!("{:e}", r.tolerance),
            r.pass.to_string(),
        ]);
    }
    Ok((o, report.pass))
}

/// Runs `$f::<T>(args)` with `T` chosen by the precision.
macro_rules! at_precision {
    ($run:expr, $f:ident ( $($arg:expr),* )) => {
        if $run.double() { $f::<DoubleDouble>($($arg),*) } else { $f::<f64>($($arg),*) }
    };
}

fn execute(cli: &Cli) -> CliResult<bool> {
    let run = Run::new(cli)?;
    let (out, pass) = match &cli.command {
        Command::Forms(cmd) => (forms(cmd)?, true),
        Command::Cycleint { f, q, route } => (at_precision!(run, cycleint(&run, f, q, *route))?, true),
        Command::Lift { f, delta, mmax, k } => (at_precision!(run, lift(&run, f, *delta, *mmax, *k))?, true),
        Command::Verify(suite) => at_precision!(run, verify(&run, suite))?,
    };
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    out.write(run.format, &mut lock)?;
    lock.flush()?;
    Ok(pass)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("cyclelift: identity check failed");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("cyclelift: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
