use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use segre_core::polygamma::{
    tail_cutoff_for, verify_diagonal_identity, verify_power_identity, verify_two_variable_identity,
    IdentityEvaluation,
};
use segre_core::rational::{format_rational, parse_rational};
use segre_core::{
    convergence_report, estimate, lct, newton_polyhedron, segre_class, Arithmetic, ConditionMode,
    EstimatorConfig, MonomialIdeal, NewtonPolyhedron, Rational,
};

mod svg;

#[derive(Parser)]
#[command(name = "newton-segre", version, about = "Segre classes and log canonical thresholds of monomial ideals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Log canonical threshold of the ideal.
    Lct(IdealArgs),
    /// Exact Segre class: pushforward in H and the series in X_1..X_n.
    Segre {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Dimension of the projective space; the series is truncated above it.
        #[arg(long)]
        ambient: Option<usize>,
    },
    /// Lattice-sum approximation of the Segre class at X.
    Estimate(EstimateArgs),
    /// Evaluate a polygamma identity over a list of m.
    Verify(VerifyArgs),
    /// Extreme points and facets of the Newton polyhedron.
    Diagram {
        #[command(flatten)]
        ideal: IdealArgs,
        /// Write an SVG of the staircase to this path (two variables only).
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct IdealArgs {
    /// Ideal as text ("x1^2, x1*x2") or JSON ({"n":2,"generators":[[2,0],[1,1]]}).
    ideal: String,
    /// Number of variables; defaults to the highest index mentioned.
    #[arg(long)]
    n: Option<usize>,
}

impl IdealArgs {
    fn parse(&self) -> Result<MonomialIdeal, CliError> {
        Ok(MonomialIdeal::parse(&self.ideal, self.n)?)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    #[value(alias = "membership_based")]
    Membership,
    #[value(alias = "lct_based")]
    Lct,
}

#[derive(Clone, Copy, ValueEnum)]
enum Arith {
    Float,
    Exact,
}

#[derive(clap::Args)]
struct EstimateArgs {
    #[command(flatten)]
    ideal: IdealArgs,
    /// Lattice refinement level.
    #[arg(long, required_unless_present = "m_list", conflicts_with = "m_list")]
    m: Option<u64>,
    /// Comma-separated increasing levels; prints a convergence CSV.
    #[arg(long, value_delimiter = ',')]
    m_list: Option<Vec<u64>>,
    /// Comma-separated positive parameters, as integers, p/q or decimals.
    #[arg(long = "X", value_delimiter = ',', required = true)]
    x: Vec<String>,
    #[arg(long, value_enum, default_value = "membership")]
    mode: Mode,
    /// Ray cutoff for unbounded regions [default: 10 m^2].
    #[arg(long)]
    cutoff: Option<u64>,
    #[arg(long, env = "NEWTON_SEGRE_THREADS", default_value_t = 1)]
    threads: usize,
    #[arg(long, value_enum, default_value = "float")]
    arith: Arith,
    /// Fail if the ray tail bound exceeds this.
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Identity {
    Power,
    TwoVar,
    Diagonal,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    identity: Identity,
    /// power: l,X   two-var: l,X1,X2   diagonal: l1,l2,X1,X2
    #[arg(long, value_delimiter = ',', required = true, allow_negative_numbers = true)]
    params: Vec<f64>,
    #[arg(long, value_delimiter = ',', required = true)]
    m_list: Vec<u64>,
    /// Target accuracy of the estimated psi2 tail; sets the summation cutoff.
    #[arg(long, default_value_t = 1e-6)]
    tolerance: f64,
    #[arg(long, env = "NEWTON_SEGRE_THREADS", default_value_t = 1)]
    threads: usize,
}

#[derive(Debug)]
enum CliError {
    Core(segre_core::Error),
    Io(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(_) => "IoError",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(m) => m.clone(),
        }
    }
}

impl From<segre_core::Error> for CliError {
    fn from(e: segre_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Core(segre_core::Error::InvalidConfig(msg.into()))
}

fn print_json(value: &impl Serialize) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Serialize)]
struct LctJson {
    lct: String,
    sigma: String,
}

fn run_lct(args: &IdealArgs) -> Result<(), CliError> {
    let t = lct(&args.parse()?);
    print_json(&LctJson {
        lct: format_rational(t.value()),
        sigma: format_rational(&t.sigma()),
    })
}

fn run_segre(args: &IdealArgs, ambient: Option<usize>) -> Result<(), CliError> {
    let i = args.parse()?;
    let s = segre_class(&i, ambient.unwrap_or(i.n()))?;
    print_json(&s.to_json())
}

#[derive(Serialize)]
struct EstimateJson {
    m: u64,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<String>,
    /// Bound on the mass lost to the ray cutoff; the O(1/m) lattice bias is not included.
    tail_bound: f64,
    cutoff: u64,
    points: u128,
    columns: u64,
    lct_evaluations: u64,
}

fn run_estimate(args: &EstimateArgs) -> Result<(), CliError> {
    let i = args.ideal.parse()?;
    let x = args
        .x
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<Rational>, _>>()?;
    let mut cfg = EstimatorConfig::new(args.m.unwrap_or(1), x)
        .with_mode(match args.mode {
            Mode::Membership => ConditionMode::MembershipBased,
            Mode::Lct => ConditionMode::LctBased,
        })
        .with_arithmetic(match args.arith {
            Arith::Float => Arithmetic::Float64,
            Arith::Exact => Arithmetic::ExactRational,
        })
        .with_threads(args.threads);
    if let Some(c) = args.cutoff {
        cfg = cfg.with_cutoff(c);
    }
    if let Some(t) = args.tolerance {
        cfg = cfg.with_tolerance(t);
    }
    cfg.validate(i.n())?;

    if let Some(levels) = &args.m_list {
        let rows = convergence_report(&i, &cfg, levels)?;
        let mut w = csv::Writer::from_writer(io::stdout().lock());
        w.write_record(["m", "estimate", "exact", "abs_error", "seconds"])?;
        for r in rows {
            w.write_record([
                r.m.to_string(),
                float(r.estimate),
                float(r.exact),
                float(r.abs_error),
                format!("{:.6}", r.seconds),
            ])?;
        }
        w.flush()?;
        return Ok(());
    }

    let e = estimate(&i, &cfg)?;
    print_json(&EstimateJson {
        m: cfg.m,
        value: e.value,
        exact: e.exact.as_ref().map(format_rational),
        tail_bound: e.tail_bound,
        cutoff: cfg.cutoff(),
        points: e.points,
        columns: e.columns,
        lct_evaluations: e.lct_evaluations,
    })
}

fn integer_param(v: f64, name: &str) -> Result<u64, CliError> {
    if v >= 1.0 && v.fract() == 0.0 && v < 1e15 {
        Ok(v as u64)
    } else {
        Err(invalid(format!("{name} must be a positive integer, got {v}")))
    }
}

fn evaluate_identity(args: &VerifyArgs, m: u64) -> Result<IdentityEvaluation, CliError> {
    let p = &args.params;
    let expect = |k: usize, form: &str| {
        if p.len() == k {
            Ok(())
        } else {
            Err(invalid(format!("--params for this identity is {form}")))
        }
    };
    Ok(match args.identity {
        Identity::Power => {
            expect(2, "l,X")?;
            verify_power_identity(integer_param(p[0], "l")?, p[1], m)?
        }
        Identity::TwoVar => {
            expect(3, "l,X1,X2")?;
            let l = integer_param(p[0], "l")?;
            let c = tail_cutoff_for(m, p[1], p[2], 2 * m * l, args.tolerance)?;
            verify_two_variable_identity(l, p[1], p[2], m, c, Some(args.tolerance))?
        }
        Identity::Diagonal => {
            expect(4, "l1,l2,X1,X2")?;
            let (l1, l2) = (integer_param(p[0], "l1")?, integer_param(p[1], "l2")?);
            let c = tail_cutoff_for(m, p[2], p[3], 2 * m * l1, args.tolerance)?;
            verify_diagonal_identity(l1, l2, p[2], p[3], m, c, Some(args.tolerance))?
        }
    })
}

fn run_verify(args: &VerifyArgs) -> Result<(), CliError> {
    if args.threads == 0 {
        return Err(invalid("threads must be at least 1"));
    }
    if !(args.tolerance > 0.0) {
        return Err(invalid("tolerance must be positive"));
    }
    if let Some(&m) = args.m_list.iter().find(|&&m| m == 0) {
        return Err(invalid(format!("m must be at least 1, got {m}")));
    }
    let pool = rayon_pool(args.threads)?;
    let rows = pool.install(|| {
        args.m_list
            .iter()
            .map(|&m| evaluate_identity(args, m).map(|v| (m, v)))
            .collect::<Result<Vec<_>, _>>()
    })?;
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(["m", "value", "target", "abs_error"])?;
    for (m, v) in rows {
        w.write_record([m.to_string(), float(v.value), float(v.target), float(v.abs_error())])?;
    }
    w.flush()?;
    Ok(())
}

fn rayon_pool(threads: usize) -> Result<rayon::ThreadPool, CliError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| invalid(e.to_string()))
}

#[derive(Serialize)]
struct DiagramJson {
    ideal: String,
    #[serde(flatten)]
    polyhedron: segre_core::polyhedron::PolyhedronJson,
    bounded_region: bool,
}

fn run_diagram(args: &IdealArgs, svg_path: Option<&PathBuf>) -> Result<(), CliError> {
    let i = args.parse()?;
    let p: NewtonPolyhedron = newton_polyhedron(&i);
    let bounded = p.diagram_facets().all(|f| f.ray_axes().is_empty());
    if let Some(path) = svg_path {
        if i.n() != 2 {
            return Err(invalid("the staircase picture needs exactly two variables"));
        }
        std::fs::write(path, svg::staircase(&p))?;
    }
    print_json(&DiagramJson {
        ideal: i.to_string(),
        polyhedron: p.to_json(),
        bounded_region: bounded,
    })
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Lct(a) => run_lct(a),
        Command::Segre { ideal, ambient } => run_segre(ideal, *ambient),
        Command::Estimate(a) => run_estimate(a),
        Command::Verify(a) => run_verify(a),
        Command::Diagram { ideal, svg } => run_diagram(ideal, svg.as_ref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let body = serde_json::json!({ "error": e.kind(), "message": e.message() });
            eprintln!("{body}");
            ExitCode::FAILURE
        }
    }
}
