//! The `licrit` command line.
//!
//! Exit codes: 0 success, 1 numerical failure (routes disagree, a sign
//! violation, a zero count outside its band), 2 usage or domain error.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use licrit_core::criterion::{verdict, CriterionReport, Overall};
use licrit_core::lfunc::LFunctionDescriptor;
use licrit_core::licoeff::{
    arithmetic_route, arithmetic_series, asymptotic_route, chebyshev_route, chebyshev_series, classical_route,
    classical_series, cross_validate, zero_sum_route, zero_sum_series, ArithmeticOptions, CrossOptions, LiParams,
    LiResult, Route, TailMode,
};
use licrit_core::numerics::PrecisionPolicy;
use licrit_core::zeros::{count_estimate, find_zeros, FindOptions, ZeroSet};
use licrit_core::Error;
use serde::Serialize;

use crate::descriptor::{resolve, DescriptorFile};
use crate::output::{self, CriterionReportJson, CrossReportJson, Format};
use crate::threads::Threads;
use crate::zerofile::{read_zeros, render_zeros, ZeroSetFile};

pub const PRECISION_ENV: &str = "LICRIT_PRECISION_BITS";

#[derive(Debug, Parser)]
#[command(name = "licrit", version, about = "Modified Li coefficients λ_F(n, a) of L-functions and the positivity criterion")]
pub struct Cli {
    /// Output format for tables and reports.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    pub format: Format,
    /// Write results here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for the numerical kernels.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,
    /// Fixed working precision in bits; overrides LICRIT_PRECISION_BITS.
    #[arg(long, global = true)]
    pub bits: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Functional-equation data of an L-function: degree d_F, conductor q_F,
    /// λ = Π λ_j^{2λ_j} and the zero-counting constant c_1.
    #[command(subcommand)]
    Descriptor(DescriptorCmd),
    /// Non-trivial zeros: the Hardy Z sign-change finder, zero tables, the
    /// zero-counting law (d_F/2π) T log T + c_1 T and synthetic off-line pairs.
    #[command(subcommand)]
    Zeros(ZerosCmd),
    /// Modified Li coefficients λ_F(n, a) = Σ_ρ [1 − ((ρ−a)/(ρ+a−1))^n].
    #[command(subcommand)]
    Li(LiCmd),
    /// The positivity criterion: for a < 1/2 every zero lies on Re s = 1/2
    /// exactly when Re λ_F(n, a) ≥ 0 for all n.
    #[command(subcommand)]
    Criterion(CriterionCmd),
    /// Worked experiments.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Debug, Subcommand)]
pub enum DescriptorCmd {
    /// Print the descriptor with its degree d_F, conductor q_F, λ and c_1.
    Show {
        /// zeta, kronecker:D, or a JSON descriptor file.
        #[arg(long = "L", default_value = "zeta")]
        l: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum ZerosCmd {
    /// Locate the zeros of ζ(1/2 + it) on (0, T] from sign changes of the
    /// Hardy function Z(t) = e^{iθ(t)} ζ(1/2 + it).
    Find {
        /// Height T.
        #[arg(long = "T")]
        t: f64,
        /// Accuracy of each ordinate.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        /// Grid points per mean zero spacing.
        #[arg(long, default_value_t = 8.0)]
        points_per_spacing: f64,
    },
    /// Read and validate a zero table (one ordinate per line, `#` comments).
    Parse { file: PathBuf },
    /// Compare a zero count with (d_F/2π) T log T + c_1 T; the gap must stay
    /// within 2 + log T.
    CheckCount {
        /// zeta, kronecker:D, or a JSON descriptor file.
        #[arg(long = "L", default_value = "zeta")]
        l: String,
        /// Count zeros of this table; without it the zeros of ζ are located.
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// Height T.
        #[arg(long = "T")]
        t: f64,
    },
    /// Add the symmetric off-line pair β + iγ, (1−β) + iγ to a zero table.
    Inject {
        /// Zero table to extend.
        #[arg(long)]
        zeros: PathBuf,
        /// Real part, 0 < β < 1 and β ≠ ½.
        #[arg(long)]
        beta: f64,
        /// Ordinate γ > 0.
        #[arg(long)]
        gamma: f64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    /// Σ over zeros of 4 sin²(n θ/2)-type terms plus a tail estimate.
    ZeroSum,
    /// The same sum through Chebyshev polynomials T_n(cos θ).
    Chebyshev,
    /// Explicit formula: pole, conductor, gamma and Dirichlet-series blocks (a < 0).
    Arithmetic,
    /// Explicit formula at a = 0 with a cutoff ladder X, 2X, 4X.
    Classical,
    /// Asymptotic law (d_F/2) n log n + c n with C_F(a).
    Asymptotic,
}

impl RouteArg {
    fn route(self) -> Route {
        match self {
            RouteArg::ZeroSum => Route::ZeroSum,
            RouteArg::Chebyshev => Route::Chebyshev,
            RouteArg::Arithmetic => Route::Arithmetic,
            RouteArg::Classical => Route::Classical,
            RouteArg::Asymptotic => Route::Asymptotic,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TailArg {
    /// Spread over the cutoffs M/2, M/4, …; realistic, flagged heuristic.
    Ladder,
    /// Proven termwise majorant; only useful for small n.
    Majorant,
}

#[derive(Debug, Args)]
pub struct Common {
    /// zeta, kronecker:D, or a JSON descriptor file.
    #[arg(long = "L", default_value = "zeta")]
    pub l: String,
    /// Shift a ≠ 1/2.
    #[arg(long, allow_negative_numbers = true)]
    pub a: f64,
    /// Zero table (plain ordinates or a JSON set with off-line pairs).
    #[arg(long)]
    pub zeros: Option<PathBuf>,
    /// Use zeros up to this height only.
    #[arg(long = "T")]
    pub t: Option<f64>,
    /// Dirichlet-series cutoff of the arithmetic route.
    #[arg(long = "M")]
    pub m: Option<u64>,
    /// Base cutoff of the classical route.
    #[arg(long = "X")]
    pub x: Option<u64>,
    /// Number of terms of the C_F(a) series.
    #[arg(long = "K")]
    pub k: Option<usize>,
    /// Tail treatment of the arithmetic route.
    #[arg(long, value_enum)]
    pub tail_mode: Option<TailArg>,
}

#[derive(Debug, Subcommand)]
pub enum LiCmd {
    /// Evaluate λ_F(n, a) by one route.
    Compute {
        #[command(flatten)]
        common: Common,
        /// Index n ≥ 1 (with --all, the last one).
        #[arg(long)]
        n: u64,
        /// Evaluation route.
        #[arg(long, value_enum)]
        route: RouteArg,
        /// Emit every n from 1 to N.
        #[arg(long)]
        all: bool,
    },
    /// Cross-validate every applicable route for n = 1, …, N: zero sum,
    /// Chebyshev form, explicit formula, with the asymptotic law reported.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Largest index N.
        #[arg(long)]
        n: u64,
        /// Gate the asymptotic law as well.
        #[arg(long)]
        gate_asymptotic: bool,
        /// Residuals may reach this multiple of the summed error bounds.
        #[arg(long, default_value_t = 2.0)]
        safety: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum CriterionCmd {
    /// Sign verdicts for Re λ_F(n, a), n = 1, …, N, with the growth test on
    /// second differences that signals zeros off the line.
    Run {
        #[command(flatten)]
        common: Common,
        /// Largest index N.
        #[arg(long)]
        n: u64,
        /// Evaluation route.
        #[arg(long, value_enum)]
        route: RouteArg,
    },
}

#[derive(Debug, Subcommand)]
pub enum DemoCmd {
    /// Inject an off-line pair β + iγ, (1−β) + iγ and compare the coefficient
    /// sequences of the clean and perturbed zero sets.
    OfflineZero {
        /// Zero table; without it the zeros of ζ up to --T are located.
        #[arg(long)]
        zeros: Option<PathBuf>,
        /// Height up to which zeros are located when no table is given.
        #[arg(long = "T", default_value_t = 1000.0)]
        t: f64,
        /// Real part of the injected zero, 0 < β < 1 and β ≠ ½.
        #[arg(long, default_value_t = 0.8)]
        beta: f64,
        /// Ordinate of the injected zero.
        #[arg(long, default_value_t = 14.0)]
        gamma: f64,
        /// Shift a ≠ 1/2.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        /// Largest index N.
        #[arg(long, default_value_t = 2000)]
        n: u64,
    },
}

/// Failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub msg: String,
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Numerical(_) | Error::SignConvention(_) => 1,
            Error::Domain(_) | Error::Parse { .. } | Error::Precondition(_) => 2,
        };
        CliError { code, msg: e.to_string() }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError { code: 2, msg: msg.into() }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// What a subcommand produced: text for the output sink, notes for stderr and
/// the exit code.
#[derive(Debug, Default)]
pub struct Outcome {
    pub text: String,
    pub notes: Vec<String>,
    pub code: i32,
}

/// Parses `argv`, runs one subcommand and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    let env = std::env::var(PRECISION_ENV).ok();
    match execute(&cli, env.as_deref()) {
        Ok(out) => {
            for n in &out.notes {
                eprintln!("{n}");
            }
            if let Err(e) = write_out(cli.out.as_ref(), &out.text) {
                eprintln!("error: {}", e.msg);
                return e.code;
            }
            out.code
        }
        Err(e) => {
            eprintln!("error: {}", e.msg);
            e.code
        }
    }
}

fn write_out(path: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            let mut o = std::io::stdout().lock();
            o.write_all(text.as_bytes()).map_err(|e| usage(e.to_string()))
        }
    }
}

/// Width policy from `--bits`, else the environment value, else the default.
pub fn precision(flag: Option<usize>, env: Option<&str>) -> CliResult<PrecisionPolicy> {
    let bits = match (flag, env) {
        (Some(b), _) => Some(b),
        (None, Some(s)) => Some(
            s.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("{PRECISION_ENV} must be a bit count, not `{s}`")))?,
        ),
        (None, None) => None,
    };
    match bits {
        Some(b) if !(64..=1 << 20).contains(&b) => Err(usage(format!("precision {b} bits is outside 64..=1048576"))),
        Some(b) => Ok(PrecisionPolicy::fixed(b)),
        None => Ok(PrecisionPolicy::default()),
    }
}

/// Runs the parsed command without touching stdout.
pub fn execute(cli: &Cli, env_bits: Option<&str>) -> CliResult<Outcome> {
    let par = Threads::new(cli.threads);
    let policy = precision(cli.bits, env_bits)?;
    match &cli.command {
        Command::Descriptor(DescriptorCmd::Show { l }) => descriptor_show(l, cli.format),
        Command::Zeros(z) => zeros_cmd(z, cli.format, &par),
        Command::Li(LiCmd::Compute { common, n, route, all }) => li_compute(common, *n, *route, *all, policy, cli.format, &par),
        Command::Li(LiCmd::Verify { common, n, gate_asymptotic, safety }) => {
            li_verify(common, *n, *gate_asymptotic, *safety, policy, cli.format, &par)
        }
        Command::Criterion(CriterionCmd::Run { common, n, route }) => criterion_run(common, *n, *route, policy, cli.format, &par),
        Command::Demo(DemoCmd::OfflineZero { zeros, t, beta, gamma, a, n }) => {
            demo_offline(zeros.as_ref(), *t, *beta, *gamma, *a, *n, policy, cli.format, &par)
        }
    }
}

#[derive(Serialize)]
struct DescriptorReport {
    descriptor: DescriptorFile,
    degree: f64,
    q_f: f64,
    lambda_product: f64,
    c1: f64,
    self_conjugate: bool,
}

fn descriptor_show(l: &str, fmt: Format) -> CliResult<Outcome> {
    let d = resolve(l)?;
    let c = d.structural_constants();
    let rep = DescriptorReport {
        descriptor: DescriptorFile::from_descriptor(&d),
        degree: c.degree,
        q_f: c.q_f,
        lambda_product: c.lambda_product,
        c1: c.c1,
        self_conjugate: d.is_self_conjugate(),
    };
    let text = match fmt {
        Format::Json => output::to_json(&rep),
        Format::Csv => format!(
            "field,value\nname,{}\ndegree,{}\nq_f,{}\nlambda_product,{}\nc1,{}\nself_conjugate,{}\n",
            d.name, c.degree, c.q_f, c.lambda_product, c.c1, rep.self_conjugate
        ),
    };
    Ok(Outcome { text, ..Default::default() })
}

#[derive(Serialize)]
struct ZeroSummary {
    source: String,
    count: u64,
    complete_to: f64,
    first: Option<f64>,
    last: Option<f64>,
    offline: usize,
}

#[derive(Serialize)]
struct CountCheck {
    t: f64,
    count: u64,
    estimate: f64,
    band: f64,
    within: bool,
}

fn zeros_cmd(cmd: &ZerosCmd, fmt: Format, par: &Threads) -> CliResult<Outcome> {
    match cmd {
        ZerosCmd::Find { t, tol, points_per_spacing } => {
            let opts = FindOptions { tol: *tol, band: None, points_per_spacing: *points_per_spacing };
            let found = find_zeros(*t, &opts, par)?;
            let mut notes = found.warnings.clone();
            notes.push(format!(
                "{} zeros on (0, {t}]; smooth count {:.3}, main-term estimate {:.3}",
                found.zeros.count(),
                found.smooth_count,
                found.estimate
            ));
            let text = match fmt {
                Format::Json => output::to_json(&ZeroSetFile::from_set(&found.zeros)),
                Format::Csv => found.zeros.to_text(),
            };
            Ok(Outcome { text, notes, code: 0 })
        }
        ZerosCmd::Parse { file } => {
            let z = read_zeros(file)?;
            let s = ZeroSummary {
                source: z.source().to_string(),
                count: z.count(),
                complete_to: z.complete_to(),
                first: z.online().first().map(|w| w.gamma),
                last: z.online().last().map(|w| w.gamma),
                offline: z.offline().len(),
            };
            let text = match fmt {
                Format::Json => output::to_json(&s),
                Format::Csv => format!(
                    "count,complete_to,first,last,offline\n{},{},{},{},{}\n",
                    s.count,
                    s.complete_to,
                    s.first.map_or(String::new(), |v| v.to_string()),
                    s.last.map_or(String::new(), |v| v.to_string()),
                    s.offline
                ),
            };
            Ok(Outcome { text, ..Default::default() })
        }
        ZerosCmd::CheckCount { l, zeros, t } => {
            let d = resolve(l)?;
            let z = match zeros {
                Some(p) => {
                    let z = read_zeros(p)?;
                    if z.complete_to() < *t {
                        return Err(usage(format!(
                            "the table is complete only to {}, below T = {t}",
                            z.complete_to()
                        )));
                    }
                    z
                }
                None => {
                    if l != "zeta" {
                        return Err(usage("the zero finder covers ζ only; pass --zeros for other L-functions"));
                    }
                    find_zeros(*t, &FindOptions::default(), par)?.zeros
                }
            };
            let count = z.truncated(*t).count();
            let estimate = count_estimate(&d, *t)?;
            let band = 2.0 + t.ln();
            let c = CountCheck { t: *t, count, estimate, band, within: (count as f64 - estimate).abs() <= band };
            let text = match fmt {
                Format::Json => output::to_json(&c),
                Format::Csv => format!("T,count,estimate,band,within\n{},{},{},{},{}\n", c.t, c.count, c.estimate, c.band, c.within),
            };
            Ok(Outcome { text, notes: Vec::new(), code: if c.within { 0 } else { 1 } })
        }
        ZerosCmd::Inject { zeros, beta, gamma } => {
            let z = read_zeros(zeros)?.inject_zero(*beta, *gamma)?;
            Ok(Outcome { text: render_zeros(&z), ..Default::default() })
        }
    }
}

/// Checks that every truncation flag belongs to the chosen route.
fn check_flags(c: &Common, route: Route) -> CliResult<()> {
    let zero_route = matches!(route, Route::ZeroSum | Route::Chebyshev);
    let mut stray = Vec::new();
    if !zero_route && c.zeros.is_some() {
        stray.push("--zeros");
    }
    if !zero_route && c.t.is_some() {
        stray.push("--T");
    }
    if route != Route::Arithmetic && c.m.is_some() {
        stray.push("--M");
    }
    if route != Route::Arithmetic && c.tail_mode.is_some() {
        stray.push("--tail-mode");
    }
    if route != Route::Classical && c.x.is_some() {
        stray.push("--X");
    }
    if route != Route::Asymptotic && c.k.is_some() {
        stray.push("--K");
    }
    if !stray.is_empty() {
        return Err(usage(format!("{} do not apply to the {} route", stray.join(", "), route.name())));
    }
    if zero_route && c.zeros.is_none() {
        return Err(usage(format!("the {} route needs --zeros", route.name())));
    }
    Ok(())
}

fn params(c: &Common, n: u64, policy: PrecisionPolicy) -> CliResult<LiParams> {
    let mut p = LiParams::new(n, c.a)?.with_precision(policy);
    if let Some(t) = c.t {
        p = p.with_t(t);
    }
    if let Some(m) = c.m {
        p = p.with_m(m);
    }
    if let Some(x) = c.x {
        p = p.with_x(x);
    }
    if let Some(k) = c.k {
        p = p.with_k(k);
    }
    Ok(p)
}

fn arith_opts(c: &Common) -> ArithmeticOptions {
    let mut o = ArithmeticOptions::default();
    if let Some(TailArg::Majorant) = c.tail_mode {
        o.tail_mode = TailMode::Majorant;
    }
    o
}

struct Inputs {
    d: LFunctionDescriptor,
    z: Option<ZeroSet>,
}

fn inputs(c: &Common) -> CliResult<Inputs> {
    let d = resolve(&c.l)?;
    let z = c.zeros.as_ref().map(|p| read_zeros(p)).transpose()?;
    Ok(Inputs { d, z })
}

fn compute(inp: &Inputs, c: &Common, p: &LiParams, route: Route, all: bool, par: &Threads) -> CliResult<Vec<LiResult>> {
    let z = || inp.z.as_ref().ok_or_else(|| usage("--zeros is required"));
    let d = &inp.d;
    let out = if all {
        match route {
            Route::ZeroSum => zero_sum_series(d, z()?, p, par)?,
            Route::Chebyshev => chebyshev_series(d, z()?, p, par)?,
            Route::Arithmetic => arithmetic_series(d, p, &arith_opts(c), par)?,
            Route::Classical => classical_series(d, p, par)?,
            Route::Asymptotic => (1..=p.n)
                .map(|n| asymptotic_route(d, &p.clone().with_n(n)))
                .collect::<licrit_core::Result<Vec<_>>>()?,
        }
    } else {
        vec![match route {
            Route::ZeroSum => zero_sum_route(d, z()?, p, par)?,
            Route::Chebyshev => chebyshev_route(d, z()?, p, par)?,
            Route::Arithmetic => arithmetic_route(d, p, &arith_opts(c), par)?,
            Route::Classical => classical_route(d, p, par)?,
            Route::Asymptotic => asymptotic_route(d, p)?,
        }]
    };
    Ok(out)
}

fn li_compute(
    c: &Common,
    n: u64,
    route: RouteArg,
    all: bool,
    policy: PrecisionPolicy,
    fmt: Format,
    par: &Threads,
) -> CliResult<Outcome> {
    let route = route.route();
    let p = params(c, n, policy)?;
    check_flags(c, route)?;
    let inp = inputs(c)?;
    let res = compute(&inp, c, &p, route, all, par)?;
    let notes = heuristic_note(&res);
    Ok(Outcome { text: output::results(&res, fmt), notes, code: 0 })
}

fn heuristic_note(res: &[LiResult]) -> Vec<String> {
    if res.iter().any(|r| r.heuristic) {
        vec!["note: some error bounds are estimates, not proven bounds".into()]
    } else {
        Vec::new()
    }
}

fn li_verify(
    c: &Common,
    n: u64,
    gate_asymptotic: bool,
    safety: f64,
    policy: PrecisionPolicy,
    fmt: Format,
    par: &Threads,
) -> CliResult<Outcome> {
    let p = params(c, n, policy)?;
    if c.x.is_some() && c.a != 0.0 {
        return Err(usage("--X applies to the classical route, which needs a = 0"));
    }
    if (c.m.is_some() || c.tail_mode.is_some()) && !(c.a < 0.0) {
        return Err(usage("--M and --tail-mode apply to the arithmetic route, which needs a < 0"));
    }
    if !(safety > 0.0) {
        return Err(usage("--safety must be positive"));
    }
    let inp = inputs(c)?;
    let opts = CrossOptions { arithmetic: arith_opts(c), gate_asymptotic, safety };
    let rep = cross_validate(&inp.d, inp.z.as_ref(), &p, &opts, par)?;
    let text = match fmt {
        Format::Json => output::to_json(&CrossReportJson::from(&rep)),
        Format::Csv => output::cross_csv(&rep),
    };
    let mut notes = vec![format!(
        "routes {}: worst residual/allowed {:.3}",
        rep.routes.iter().map(|r| r.name()).collect::<Vec<_>>().join(", "),
        rep.worst_ratio()
    )];
    for (n, f) in rep.failures() {
        notes.push(format!(
            "disagreement at n = {n}: {} vs {} differ by {:.3e} > {:.3e}",
            f.first.name(),
            f.second.name(),
            f.residual,
            f.allowed
        ));
    }
    Ok(Outcome { text, notes, code: if rep.passed() { 0 } else { 1 } })
}

fn report_notes(rep: &CriterionReport) -> Vec<String> {
    let mut notes = rep.warnings.iter().map(|w| format!("warning: {w}")).collect::<Vec<_>>();
    notes.push(match rep.overall {
        Overall::ConsistentUpTo(n) => format!("consistent up to n = {n}"),
        Overall::ViolationWitness(n) => format!("violation witness at n = {n}"),
        Overall::Inconclusive { first_indeterminate } => format!("inconclusive: sign unresolved at n = {first_indeterminate}"),
    });
    if let Some(g) = &rep.growth {
        notes.push(format!("growth: {}", g.note));
    }
    notes
}

fn criterion_run(
    c: &Common,
    n: u64,
    route: RouteArg,
    policy: PrecisionPolicy,
    fmt: Format,
    par: &Threads,
) -> CliResult<Outcome> {
    let route = route.route();
    let p = params(c, n, policy)?;
    check_flags(c, route)?;
    let inp = inputs(c)?;
    let res = compute(&inp, c, &p, route, true, par)?;
    let rep = verdict(&res, c.a)?;
    let text = match fmt {
        Format::Json => output::to_json(&CriterionReportJson::from(&rep)),
        Format::Csv => output::criterion_csv(&rep),
    };
    let code = if matches!(rep.overall, Overall::ViolationWitness(_)) { 1 } else { 0 };
    Ok(Outcome { text, notes: report_notes(&rep), code })
}

#[derive(Serialize)]
struct DemoReport {
    beta: f64,
    gamma: f64,
    a: f64,
    zeros: u64,
    complete_to: f64,
    clean: CriterionReportJson,
    injected: CriterionReportJson,
}

#[allow(clippy::too_many_arguments)]
fn demo_offline(
    zeros: Option<&PathBuf>,
    t: f64,
    beta: f64,
    gamma: f64,
    a: f64,
    n: u64,
    policy: PrecisionPolicy,
    fmt: Format,
    par: &Threads,
) -> CliResult<Outcome> {
    let p = LiParams::new(n, a)?.with_precision(policy);
    let clean = match zeros {
        Some(path) => read_zeros(path)?,
        None => find_zeros(t, &FindOptions { tol: 1e-9, ..Default::default() }, par)?.zeros,
    };
    if !clean.offline().is_empty() {
        return Err(usage("the demo needs a zero set without off-line zeros"));
    }
    let dirty = clean.inject_zero(beta, gamma)?;
    let d = licrit_core::lfunc::builtin_zeta();
    let rc = verdict(&zero_sum_series(&d, &clean, &p, par)?, a)?;
    let rd = verdict(&zero_sum_series(&d, &dirty, &p, par)?, a)?;
    let mut notes = Vec::new();
    for (tag, r) in [("clean", &rc), ("injected", &rd)] {
        notes.extend(report_notes(r).into_iter().map(|s| format!("{tag}: {s}")));
    }
    let text = match fmt {
        Format::Json => output::to_json(&DemoReport {
            beta,
            gamma,
            a,
            zeros: clean.count(),
            complete_to: clean.complete_to(),
            clean: CriterionReportJson::from(&rc),
            injected: CriterionReportJson::from(&rd),
        }),
        Format::Csv => {
            let mut s = String::from("n,a,clean_re,injected_re,clean_bound,injected_bound\n");
            for (x, y) in rc.records.iter().zip(&rd.records) {
                s.push_str(&format!("{},{a},{},{},{},{}\n", x.n, x.re, y.re, x.error_bound, y.error_bound));
            }
            s
        }
    };
    Ok(Outcome { text, notes, code: 0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("licrit").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn precision_sources() {
        assert_eq!(precision(None, None).unwrap(), PrecisionPolicy::default());
        assert_eq!(precision(None, Some("256")).unwrap(), PrecisionPolicy::fixed(256));
        assert_eq!(precision(Some(512), Some("256")).unwrap(), PrecisionPolicy::fixed(512));
        assert_eq!(precision(None, Some("many")).unwrap_err().code, 2);
        assert_eq!(precision(Some(8), None).unwrap_err().code, 2);
    }

    #[test]
    fn negative_shift_parses() {
        let cli = parse(&["li", "compute", "--a", "-1", "--n", "3", "--route", "asymptotic"]);
        match cli.command {
            Command::Li(LiCmd::Compute { common, n, .. }) => {
                assert_eq!(common.a, -1.0);
                assert_eq!(n, 3);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn stray_flags_are_usage_errors() {
        let cli = parse(&["li", "compute", "--a", "-1", "--n", "1", "--route", "arithmetic", "--X", "1000"]);
        let e = execute(&cli, None).unwrap_err();
        assert_eq!(e.code, 2);
        assert!(e.msg.contains("--X"));
        let cli = parse(&["li", "compute", "--a", "0", "--n", "1", "--route", "zero-sum"]);
        assert!(execute(&cli, None).unwrap_err().msg.contains("--zeros"));
    }

    #[test]
    fn half_is_rejected() {
        let cli = parse(&["li", "compute", "--a", "0.5", "--n", "1", "--route", "asymptotic"]);
        let e = execute(&cli, None).unwrap_err();
        assert_eq!(e.code, 2);
        assert!(e.msg.contains("1/2"));
    }

    #[test]
    fn asymptotic_rows() {
        let cli = parse(&["li", "compute", "--a", "-1", "--n", "3", "--route", "asymptotic", "--all"]);
        let out = execute(&cli, None).unwrap();
        assert_eq!(out.text.lines().count(), 4);
        assert!(out.text.lines().nth(3).unwrap().starts_with("3,-1,asymptotic,"));
    }
}
