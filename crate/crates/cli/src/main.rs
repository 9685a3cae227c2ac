use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use num_rational::Ratio;

use mocktheta::calculus::FunctionHandle;
use mocktheta::harness::{run_identity_suite, CheckReport, SuiteParams, SUITES};
use mocktheta::mock::{phi_tilde_grid, MockIndex};
use mocktheta::numeric::{dedekind_eta, DomainPoint, Evaluated, HalfInt, Truncation};
use mocktheta::qexp::{product_identity_check, product_identity_variant, shift_law_checks, triple_product_check, IdentityReport, ProductVariant};
use mocktheta::theta::{jacobi_theta_ab, theta_jm, Sign, ThetaIndex};
use mocktheta::DoubleDouble;

mod literal;

use literal::{format_complex, parse_complex};

#[derive(Parser, Debug)]
#[command(name = "mocktheta", version, about = "Evaluate and check rank-one mock theta functions and their completions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate one function on a grid and write CSV.
    Table(TableArgs),
    /// Run a verification suite and write its JSON report.
    Verify(VerifyArgs),
    /// Check a q-expansion identity exactly to a given order.
    Qcheck(QcheckArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Family {
    Phi,
    PhiTilde,
    PhiAdd,
    ThetaPair,
    SuperA,
    SuperB,
    /// R^±_{j,m}(τ, v)
    Zwegers,
    /// Θ^±_{j,m}(τ, z, t)
    Theta,
    /// ϑ_ab(τ, z)
    Jacobi,
    Eta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Precision {
    F64,
    Dd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct FnSpec {
    #[arg(long = "fn", value_enum)]
    family: Family,
    #[arg(long, default_value = "+", value_parser = parse_sign, allow_hyphen_values = true)]
    sign: Sign,
    #[arg(long, default_value = "1", value_parser = parse_half)]
    m: HalfInt,
    #[arg(long, default_value = "0", value_parser = parse_half, allow_hyphen_values = true)]
    s: HalfInt,
    /// Index j of Θ and R.
    #[arg(long, default_value = "0", value_parser = parse_half, allow_hyphen_values = true)]
    j: HalfInt,
    /// Characteristics of ϑ_ab and R̂^B_ab.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    a: u8,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    b: u8,
    /// Fixed series half-width; the default truncates adaptively.
    #[arg(long)]
    trunc: Option<i64>,
    #[arg(long, value_enum, default_value = "f64")]
    precision: Precision,
}

#[derive(Args, Debug)]
struct PointArgs {
    #[arg(long, default_value = "i", value_parser = parse_complex, allow_hyphen_values = true)]
    tau: Complex<f64>,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    u: Complex<f64>,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    v: Complex<f64>,
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    t: Complex<f64>,
    /// Elliptic variable of `theta` and `jacobi`.
    #[arg(long, default_value = "0", value_parser = parse_complex, allow_hyphen_values = true)]
    z: Complex<f64>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    #[command(flatten)]
    func: FnSpec,
    #[command(flatten)]
    point: PointArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Coord {
    TauRe,
    TauIm,
    URe,
    UIm,
    VRe,
    VIm,
}

#[derive(Clone, Copy, Debug)]
struct Axis {
    coord: Coord,
    start: f64,
    end: f64,
    n: usize,
}

impl Axis {
    fn values(&self) -> Vec<f64> {
        if self.n == 1 {
            return vec![self.start];
        }
        (0..self.n).map(|k| self.start + (self.end - self.start) * k as f64 / (self.n - 1) as f64).collect()
    }
}

#[derive(Args, Debug)]
struct TableArgs {
    #[command(flatten)]
    func: FnSpec,
    #[command(flatten)]
    point: PointArgs,
    /// `COORD:START:END:N` with COORD one of tau-re, tau-im, u-re, u-im, v-re, v-im.
    #[arg(long, value_parser = parse_axis, required = true)]
    axis: Vec<Axis>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    suite: String,
    #[arg(long, default_value = "1", value_parser = parse_half)]
    m: HalfInt,
    #[arg(long, default_value = "0", value_parser = parse_half, allow_hyphen_values = true)]
    s: HalfInt,
    #[arg(long, default_value = "0", value_parser = parse_half, allow_hyphen_values = true)]
    sprime: HalfInt,
    /// Defaults to `+` for integral s′ and `−` otherwise.
    #[arg(long, value_parser = parse_sign, allow_hyphen_values = true)]
    sign: Option<Sign>,
    #[arg(long, default_value_t = 7)]
    seed: u64,
    #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(u64).range(1..=10_000))]
    points: u64,
    #[arg(long)]
    trunc: Option<i64>,
    /// Base finite-difference step.
    #[arg(long)]
    step: Option<f64>,
    #[arg(long)]
    tol_series: Option<f64>,
    #[arg(long)]
    tol_first: Option<f64>,
    #[arg(long)]
    tol_second: Option<f64>,
    #[arg(long)]
    tol_covariance: Option<f64>,
    #[arg(long)]
    tol_commutator: Option<f64>,
    #[arg(long)]
    tol_span: Option<f64>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Identity {
    ProductIdentity,
    TripleProduct,
    ShiftLaws,
    /// The product identity with ϑ₀₁ left out; expected to fail.
    ProductIdentityDropped,
}

#[derive(Args, Debug)]
struct QcheckArgs {
    #[arg(long, value_enum)]
    identity: Identity,
    /// Exponent of q to which both sides are compared, e.g. `20` or `41/2`.
    #[arg(long, default_value = "20", value_parser = parse_order)]
    order: Ratio<i64>,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

enum Failure {
    Usage(String),
    Compute(mocktheta::Error),
    Io(String),
    /// A check ran and did not hold; the report is already written.
    Check,
}

impl From<mocktheta::Error> for Failure {
    fn from(e: mocktheta::Error) -> Self {
        Failure::Compute(e)
    }
}

fn parse_sign(s: &str) -> Result<Sign, String> {
    s.parse().map_err(|e: mocktheta::Error| e.to_string())
}

fn parse_half(s: &str) -> Result<HalfInt, String> {
    s.parse().map_err(|e: mocktheta::Error| e.to_string())
}

fn parse_order(s: &str) -> Result<Ratio<i64>, String> {
    let r: Ratio<i64> = s.trim().parse().map_err(|_| format!("not a rational order: {s:?}"))?;
    if r <= Ratio::from_integer(0) {
        return Err(format!("order must be positive, got {s}"));
    }
    Ok(r)
}

fn parse_axis(s: &str) -> Result<Axis, String> {
    let parts: Vec<_> = s.split(':').collect();
    let [c, a, b, n] = parts[..] else {
        return Err(format!("axis must be COORD:START:END:N, got {s:?}"));
    };
    let coord = Coord::from_str(c, true)?;
    let num = |x: &str| x.parse::<f64>().ok().filter(|v| v.is_finite()).ok_or_else(|| format!("bad number {x:?} in axis {s:?}"));
    let n: usize = n.parse().map_err(|_| format!("bad count {n:?} in axis {s:?}"))?;
    if n == 0 || n > 100_000 {
        return Err(format!("axis count must be in 1..=100000, got {n}"));
    }
    Ok(Axis { coord, start: num(a)?, end: num(b)?, n })
}

fn truncation(spec: &FnSpec) -> Result<Truncation, Failure> {
    let tr = match (spec.trunc, spec.precision) {
        (Some(k), _) => Truncation::fixed(k),
        (None, Precision::F64) => Truncation::default(),
        (None, Precision::Dd) => Truncation::extended(),
    };
    tr.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(tr)
}

fn handle(spec: &FnSpec) -> Result<Option<FunctionHandle>, Failure> {
    let idx = || MockIndex::new(spec.sign, spec.m, spec.s);
    let h = match spec.family {
        Family::Phi => FunctionHandle::phi(idx()?),
        Family::PhiTilde => FunctionHandle::phi_tilde(idx()?),
        Family::PhiAdd => FunctionHandle::phi_add(idx()?),
        Family::ThetaPair => FunctionHandle::theta_pair(idx()?),
        Family::SuperA => FunctionHandle::super_a(),
        Family::SuperB => FunctionHandle::super_b(spec.a, spec.b),
        Family::Zwegers => FunctionHandle::zwegers(spec.sign, spec.j, spec.m)?,
        Family::Theta | Family::Jacobi | Family::Eta => return Ok(None),
    };
    Ok(Some(h.with_truncation(truncation(spec)?)))
}

struct Sample {
    value: Complex<f64>,
    tail_bound: f64,
}

fn lower(e: Evaluated<DoubleDouble>) -> Sample {
    Sample { value: mocktheta::complex::lower(e.value), tail_bound: e.tail_bound }
}

fn evaluate(spec: &FnSpec, p: &DomainPoint<f64>, z: Complex<f64>) -> Result<Sample, Failure> {
    let tr = truncation(spec)?;
    let dd = spec.precision == Precision::Dd;
    let lift = mocktheta::complex::lift::<DoubleDouble>;
    let f64s = |e: Evaluated<f64>| Sample { value: e.value, tail_bound: e.tail_bound };
    if let Some(h) = handle(spec)? {
        return Ok(if dd { lower(h.eval_with_tail(&p.lift::<DoubleDouble>())?) } else { f64s(h.eval_with_tail(p)?) });
    }
    Ok(match spec.family {
        Family::Theta => {
            let idx = ThetaIndex::new(spec.sign, spec.j, spec.m)?;
            if dd {
                lower(theta_jm(&idx, lift(p.tau()), lift(z), lift(p.t()), &tr)?)
            } else {
                f64s(theta_jm(&idx, p.tau(), z, p.t(), &tr)?)
            }
        }
        Family::Jacobi => {
            if dd {
                lower(jacobi_theta_ab(spec.a, spec.b, lift(p.tau()), lift(z), &tr)?)
            } else {
                f64s(jacobi_theta_ab(spec.a, spec.b, p.tau(), z, &tr)?)
            }
        }
        Family::Eta => {
            if dd {
                lower(dedekind_eta(lift(p.tau()), &tr)?)
            } else {
                f64s(dedekind_eta(p.tau(), &tr)?)
            }
        }
        _ => unreachable!("handled above"),
    })
}

fn label(spec: &FnSpec) -> String {
    let (s, m) = (spec.sign, spec.m);
    match spec.family {
        Family::Phi => format!("phi{s}[{m},{}]", spec.s),
        Family::PhiTilde => format!("phi_tilde{s}[{m},{}]", spec.s),
        Family::PhiAdd => format!("phi_add{s}[{m},{}]", spec.s),
        Family::ThetaPair => format!("theta_pair{s}[{m},{}]", spec.s),
        Family::SuperA => "R_A".into(),
        Family::SuperB => format!("R_B{}{}", spec.a, spec.b),
        Family::Zwegers => format!("R{s}[{},{m}]", spec.j),
        Family::Theta => format!("Theta{s}[{},{m}]", spec.j),
        Family::Jacobi => format!("theta{}{}", spec.a, spec.b),
        Family::Eta => "eta".into(),
    }
}

fn point(p: &PointArgs) -> Result<DomainPoint<f64>, Failure> {
    DomainPoint::new(p.tau, p.u, p.v, p.t).map_err(|e| Failure::Usage(e.to_string()))
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| Failure::Io(e.to_string())),
    }
}

fn precision_name(p: Precision) -> &'static str {
    match p {
        Precision::F64 => "f64",
        Precision::Dd => "dd",
    }
}

fn run_eval(args: &EvalArgs) -> Result<(), Failure> {
    let p = point(&args.point)?;
    let r = evaluate(&args.func, &p, args.point.z)?;
    let name = label(&args.func);
    let text = match args.format {
        Format::Text => format!(
            "{name} = {}\ntail_bound = {:e}\nprecision = {}\n",
            format_complex(r.value),
            r.tail_bound,
            precision_name(args.func.precision)
        ),
        Format::Json => {
            let v = serde_json::json!({
                "function": name,
                "value": [r.value.re, r.value.im],
                "tail_bound": r.tail_bound,
                "precision": precision_name(args.func.precision),
                "point": {
                    "tau": [p.tau().re, p.tau().im],
                    "u": [p.u().re, p.u().im],
                    "v": [p.v().re, p.v().im],
                    "t": [p.t().re, p.t().im],
                    "z": [args.point.z.re, args.point.z.im],
                },
            });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
    };
    write_out(&None, &text)
}

fn grid_points(args: &TableArgs) -> Result<Vec<DomainPoint<f64>>, Failure> {
    let base = &args.point;
    let mut pts = vec![(base.tau, base.u, base.v)];
    for axis in &args.axis {
        let mut next = Vec::with_capacity(pts.len() * axis.n);
        for &(tau, u, v) in &pts {
            for x in axis.values() {
                let (mut tau, mut u, mut v) = (tau, u, v);
                match axis.coord {
                    Coord::TauRe => tau.re = x,
                    Coord::TauIm => tau.im = x,
                    Coord::URe => u.re = x,
                    Coord::UIm => u.im = x,
                    Coord::VRe => v.re = x,
                    Coord::VIm => v.im = x,
                }
                next.push((tau, u, v));
            }
        }
        if next.len() > 1_000_000 {
            return Err(Failure::Usage("grid has more than 10^6 points".into()));
        }
        pts = next;
    }
    pts.into_iter()
        .map(|(tau, u, v)| DomainPoint::new(tau, u, v, base.t).map_err(|e| Failure::Usage(e.to_string())))
        .collect()
}

fn run_table(args: &TableArgs) -> Result<(), Failure> {
    let pts = grid_points(args)?;
    let spec = &args.func;
    let values: Vec<Result<Sample, Failure>> = if spec.family == Family::PhiTilde {
        let idx = MockIndex::new(spec.sign, spec.m, spec.s)?;
        let tr = truncation(spec)?;
        if spec.precision == Precision::Dd {
            let lifted: Vec<_> = pts.iter().map(|p| p.lift::<DoubleDouble>()).collect();
            phi_tilde_grid(&idx, &lifted, &tr).into_iter().map(|r| r.map(lower).map_err(Failure::from)).collect()
        } else {
            phi_tilde_grid(&idx, &pts, &tr)
                .into_iter()
                .map(|r| r.map(|e| Sample { value: e.value, tail_bound: e.tail_bound }).map_err(Failure::from))
                .collect()
        }
    } else {
        pts.iter().map(|p| evaluate(spec, p, args.point.z)).collect()
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(["tau_re", "tau_im", "u_re", "u_im", "v_re", "v_im", "value_re", "value_im", "tail_bound"]).map_err(io)?;
    for (p, r) in pts.iter().zip(values) {
        let r = r?;
        let cells = [p.tau().re, p.tau().im, p.u().re, p.u().im, p.v().re, p.v().im, r.value.re, r.value.im, r.tail_bound];
        w.write_record(cells.iter().map(|x| format!("{x:e}"))).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    write_out(&args.out, &String::from_utf8(bytes).expect("csv is utf-8"))
}

fn run_verify(args: &VerifyArgs) -> Result<(), Failure> {
    if !SUITES.contains(&args.suite.as_str()) {
        return Err(Failure::Usage(format!("unknown suite {:?}; expected one of: {}", args.suite, SUITES.join(", "))));
    }
    let mut params = SuiteParams::new(args.m, args.s, args.sprime).with_seed(args.seed).with_points(args.points as usize);
    if !args.m.is_positive() {
        return Err(Failure::Usage(format!("m must be positive, got {}", args.m)));
    }
    if let Some(sign) = args.sign {
        params = params.with_sign(sign);
    }
    if let Some(k) = args.trunc {
        params.truncation = Truncation::fixed(k);
        params.truncation.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if let Some(h) = args.step {
        params.diff.step = h;
        params.diff.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    let t = &mut params.tolerances;
    for (slot, v) in [
        (&mut t.series, args.tol_series),
        (&mut t.first_derivative, args.tol_first),
        (&mut t.second_derivative, args.tol_second),
        (&mut t.covariance, args.tol_covariance),
        (&mut t.commutator, args.tol_commutator),
        (&mut t.span, args.tol_span),
    ] {
        if let Some(v) = v {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Failure::Usage(format!("tolerances must be positive, got {v}")));
            }
            *slot = v;
        }
    }
    let report: CheckReport = run_identity_suite(&args.suite, &params)?;
    write_out(&args.out, &format!("{}\n", report.to_json()))?;
    for c in report.failures() {
        eprintln!("FAILED {}: max_abs_err {:?}, tol {:e}", c.name, c.max_abs_err, c.tol);
    }
    if report.overall {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn run_qcheck(args: &QcheckArgs) -> Result<(), Failure> {
    let reports: Vec<IdentityReport> = match args.identity {
        Identity::ProductIdentity => vec![product_identity_check(args.order)?],
        Identity::ProductIdentityDropped => vec![product_identity_variant(args.order, ProductVariant::DropFactor)?],
        Identity::TripleProduct => {
            [(0, 0), (0, 1), (1, 0), (1, 1)].iter().map(|&(a, b)| triple_product_check(a, b, args.order)).collect::<Result<_, _>>()?
        }
        Identity::ShiftLaws => shift_law_checks(args.order)?,
    };
    let overall = reports.iter().all(|r| r.equal);
    let v = serde_json::json!({
        "schema": 1,
        "identity": args.identity.to_possible_value().expect("no skipped variants").get_name(),
        "order": args.order.to_string(),
        "reports": reports,
        "overall": overall,
    });
    write_out(&args.out, &format!("{}\n", serde_json::to_string_pretty(&v).expect("json")))?;
    if overall {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let r = match &cli.command {
        Command::Eval(a) => run_eval(a),
        Command::Table(a) => run_table(a),
        Command::Verify(a) => run_verify(a),
        Command::Qcheck(a) => run_qcheck(a),
    };
    match r {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Check) => ExitCode::from(1),
    }
}
