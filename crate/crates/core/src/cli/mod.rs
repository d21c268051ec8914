//! Command-line front end: argument parsing, command dispatch and report
//! rendering.
//!
//! Exit codes: 0 when every check passes (or a query was answered), 1 when
//! a check fails, 2 on usage errors.

pub mod parse;
pub mod verify;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use crate::endo::{
    check_endomorphism, enumerate_positive, find_zero_type, simplicity_test, solve_negative,
    EndoError, Endomorphism, RELATIONS,
};
use crate::ore::{specialize, GwaParams, OreElement, OreError, OreMonomial};
use crate::poisson::{bracket, gwa_bracket, gwa_reduce, jacobi_check, BracketSpec, PoissonElement, HXY};
use crate::poly::Var;
use crate::scalar::Scalar;
use crate::semiclassical::{lift, sc_bracket, SemiclassicalError};

use parse::{parse_poly_in, parse_scalar, ParseError};

#[derive(Debug, Parser)]
#[command(name = "gwa", version, about = "Exact checks for a generalized Weyl algebra and its semiclassical limit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// The polynomial a(h), e.g. "h^2 + 1".
    #[arg(long = "a", value_name = "EXPR", allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Conductor N of the coefficient field Q(zeta_N).
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..=10_000))]
    pub conductor: u32,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Seed for randomized checks.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EndoKind {
    Positive,
    Zero,
    Negative,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Semiclassical bracket of two generators, computed through the quantum algebra.
    Limit {
        #[command(flatten)]
        common: Common,
        /// Generator pair, e.g. "y,x".
        #[arg(long, value_parser = parse_pair)]
        pair: (Var, Var),
    },
    /// Centrality of an element of the quantum algebra (default xy - a(th)).
    Central {
        #[command(flatten)]
        common: Common,
        /// Element in normal order t^a h^b x^i y^j.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Poisson simplicity of the semiclassical limit.
    Simple {
        #[command(flatten)]
        common: Common,
    },
    /// Classify Poisson endomorphisms.
    Endos {
        #[command(flatten)]
        common: Common,
    },
    /// Check a candidate endomorphism against the defining relations.
    CheckEndo {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        kind: EndoKind,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        c: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        n: i32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        u: i32,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        v: i32,
    },
    /// Poisson bracket of two elements of the semiclassical limit.
    Bracket {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        f: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Jacobi identity for the limit bracket, optionally with {y,x} replaced.
    Jacobi {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        yx: Option<String>,
    },
    /// Defining relations of the algebra at t = lambda.
    Specialize {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        /// Element to evaluate at t = lambda.
        #[arg(long, allow_hyphen_values = true)]
        f: Option<String>,
    },
    /// Run the full verification suite (over the built-in test set when --a is absent).
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Limit { .. } => "limit",
            Command::Central { .. } => "central",
            Command::Simple { .. } => "simple",
            Command::Endos { .. } => "endos",
            Command::CheckEndo { .. } => "check-endo",
            Command::Bracket { .. } => "bracket",
            Command::Jacobi { .. } => "jacobi",
            Command::Specialize { .. } => "specialize",
            Command::Verify { .. } => "verify",
        }
    }

    pub fn common(&self) -> &Common {
        match self {
            Command::Limit { common, .. }
            | Command::Central { common, .. }
            | Command::Simple { common }
            | Command::Endos { common }
            | Command::CheckEndo { common, .. }
            | Command::Bracket { common, .. }
            | Command::Jacobi { common, .. }
            | Command::Specialize { common, .. }
            | Command::Verify { common } => common,
        }
    }
}

fn parse_pair(s: &str) -> Result<(Var, Var), String> {
    let gen = |g: &str| match g.trim() {
        "h" => Ok(Var::H),
        "x" => Ok(Var::X),
        "y" => Ok(Var::Y),
        other => Err(format!("'{other}' is not one of h, x, y")),
    };
    let (l, r) = s.split_once(',').ok_or("expected two generators separated by ','")?;
    Ok((gen(l)?, gen(r)?))
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid expression for {what}: {source}")]
    Parse {
        what: &'static str,
        source: ParseError,
    },
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error(transparent)]
    Endo(#[from] EndoError),
    #[error(transparent)]
    Semiclassical(#[from] SemiclassicalError),
}

impl CliError {
    /// Bad input is a usage error; a failed internal invariant is a failed
    /// check.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Parse { .. } | CliError::Ore(_) => 2,
            CliError::Endo(_) | CliError::Semiclassical(_) => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Info,
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Row {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Row {
    pub fn info(name: impl Into<String>, detail: impl ToString) -> Self {
        Self {
            name: name.into(),
            status: Status::Info,
            detail: detail.to_string(),
        }
    }

    pub fn check(name: impl Into<String>, ok: bool, detail: impl ToString) -> Self {
        Self {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            detail: detail.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Input {
    pub a: String,
    pub conductor: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub input: Input,
    pub results: Vec<Row>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.status != Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{}: a = {}, conductor = {}", self.command, self.input.a, self.input.conductor);
        for r in &self.results {
            let _ = match r.status {
                Status::Info => writeln!(s, "{} = {}", r.name, r.detail),
                Status::Pass => writeln!(s, "[PASS] {}: {}", r.name, r.detail),
                Status::Fail => writeln!(s, "[FAIL] {}: {}", r.name, r.detail),
            };
        }
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.to_text(),
            Format::Json => {
                let mut j = self.to_json();
                j.push('\n');
                j
            }
        }
    }
}

fn parse_err(what: &'static str) -> impl Fn(ParseError) -> CliError {
    move |source| CliError::Parse { what, source }
}

fn params_of(common: &Common) -> Result<GwaParams, CliError> {
    let text = common
        .a
        .as_deref()
        .ok_or_else(|| CliError::Usage("--a <EXPR> is required".into()))?;
    let a = parse_poly_in(text, &[Var::H], common.conductor).map_err(parse_err("--a"))?;
    Ok(GwaParams::with_conductor(a, common.conductor)?)
}

fn generator(v: Var) -> PoissonElement {
    match v {
        Var::H => PoissonElement::h(),
        Var::X => PoissonElement::x(),
        Var::Y => PoissonElement::y(),
        Var::T => unreachable!("t is not a generator"),
    }
}

fn parse_b1(text: &str, what: &'static str, conductor: u32) -> Result<PoissonElement, CliError> {
    let p = parse_poly_in(text, HXY, conductor).map_err(parse_err(what))?;
    PoissonElement::from_poly(&p)
        .map_err(|_| CliError::Usage(format!("{what}: x and y must have non-negative exponents")))
}

fn parse_ore(text: &str, what: &'static str, conductor: u32) -> Result<OreElement, CliError> {
    let p = parse_poly_in(text, &[Var::T, Var::H, Var::X, Var::Y], conductor)
        .map_err(parse_err(what))?;
    OreElement::from_commutative(&p)
        .map_err(|_| CliError::Usage(format!("{what}: x and y must have non-negative exponents")))
}

/// Execute a parsed command.
pub fn run(command: &Command) -> Result<Report, CliError> {
    let common = command.common();
    if let Command::Verify { .. } = command {
        if common.a.is_none() {
            return verify::run_default(common.seed, common.conductor);
        }
    }
    let params = params_of(common)?;
    let n = params.conductor();
    let results = match command {
        Command::Limit { pair: (u, v), .. } => limit(&params, *u, *v)?,
        Command::Central { f, .. } => central(&params, f.as_deref())?,
        Command::Simple { .. } => {
            let s = simplicity_test(&params)?;
            vec![Row::info("simple", s.simple), Row::info("witness", s.witness)]
        }
        Command::Endos { .. } => endos(&params)?,
        Command::CheckEndo {
            kind,
            gamma,
            b,
            c,
            n: nn,
            u,
            v,
            ..
        } => {
            let scalar = |t: &str, what| parse_scalar(t, n).map_err(parse_err(what));
            let gamma = scalar(gamma, "--gamma")?;
            let psi = match kind {
                EndoKind::Positive => Endomorphism::Positive {
                    gamma,
                    b: scalar(b, "--b")?,
                    n: *nn,
                },
                EndoKind::Zero => Endomorphism::Zero { gamma },
                EndoKind::Negative => Endomorphism::Negative {
                    gamma,
                    b: scalar(b, "--b")?,
                    c: scalar(c, "--c")?,
                    u: *u,
                    v: *v,
                },
            };
            check_endo(&params, &psi)?
        }
        Command::Bracket { f, g, .. } => {
            let f = gwa_reduce(&parse_b1(f, "--f", n)?, &params);
            let g = gwa_reduce(&parse_b1(g, "--g", n)?, &params);
            vec![Row::info(format!("{{{f}, {g}}}"), gwa_bracket(&f, &g, &params))]
        }
        Command::Jacobi { yx, .. } => {
            let mut spec = BracketSpec::gwa(&params);
            if let Some(t) = yx {
                spec.yx = parse_b1(t, "--yx", n)?;
            }
            let r = jacobi_check(&spec);
            let detail = if r.passed() {
                "J(h, x, y) = 0".to_string()
            } else {
                format!("J(h, x, y) = {}", r.residual)
            };
            vec![
                Row::info("{y,x}", &spec.yx),
                Row::check("jacobi identity", r.passed(), detail),
            ]
        }
        Command::Specialize { lambda, f, .. } => {
            let lambda = parse_scalar(lambda, n).map_err(parse_err("--lambda"))?;
            if lambda.is_zero() {
                return Err(CliError::Usage("--lambda must be nonzero".into()));
            }
            let f = f.as_deref().map(|t| parse_ore(t, "--f", n)).transpose()?;
            specialize_rows(&params, &lambda, f.as_ref())?
        }
        Command::Verify { .. } => verify::suite(&params, common.seed)?,
    };
    Ok(Report {
        schema: 1,
        command: command.name().to_string(),
        input: Input {
            a: params.a().to_string(),
            conductor: n,
        },
        results,
    })
}

fn limit(params: &GwaParams, u: Var, v: Var) -> Result<Vec<Row>, CliError> {
    let alg = params.algebra();
    let (gu, gv) = (generator(u), generator(v));
    let value = sc_bracket(&lift(&gu), &lift(&gv), &alg)?;
    let closed = bracket(&gu, &gv, &BracketSpec::gwa(params));
    Ok(vec![
        Row::info(format!("{{{u},{v}}}"), &value),
        Row::check("closed form", value == closed, format!("expected {closed}")),
    ])
}

fn central(params: &GwaParams, f: Option<&str>) -> Result<Vec<Row>, CliError> {
    let alg = params.algebra();
    let f = match f {
        Some(t) => parse_ore(t, "--f", params.conductor())?,
        None => alg.casimir(),
    };
    let c = alg.is_central(&f);
    let mut rows = vec![Row::info("f", &f), Row::info("central", c.central)];
    if let Some((g, w)) = c.witness {
        rows.push(Row::info("witness", format!("[f, {g}] = {w}")));
    }
    Ok(rows)
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", ")
}

fn power_rule(coeff: &Scalar, e: i32) -> String {
    let g = match e {
        0 => return coeff.to_string(),
        1 => "gamma".to_string(),
        _ => format!("gamma^{e}"),
    };
    if coeff.is_one() {
        g
    } else {
        let c = coeff.to_string();
        if coeff.display_components() > 1 {
            format!("({c})*{g}")
        } else {
            format!("{c}*{g}")
        }
    }
}

/// Sample `(b, n)` values for instantiating the positive family.
pub const POSITIVE_SAMPLES: [(i64, i32); 2] = [(1, 0), (2, 1)];

fn endos(params: &GwaParams) -> Result<Vec<Row>, CliError> {
    let samples: Vec<(Scalar, i32)> = POSITIVE_SAMPLES
        .iter()
        .map(|&(b, n)| (Scalar::from(b), n))
        .collect();
    let mut rows = Vec::new();
    let fam = enumerate_positive(params, &samples)?;
    rows.push(Row::info("k", fam.k));
    rows.push(Row::info("positive family", fam.describe()));
    rows.push(Row::info("positive gamma", join(&fam.gammas)));
    rows.push(Row::info("positive conductor", fam.conductor));
    let sound = fam
        .instances
        .iter()
        .map(|psi| check_endomorphism(psi, params).map(|r| r.passed()))
        .collect::<Result<Vec<_>, _>>()?;
    rows.push(Row::check(
        "positive instances",
        sound.iter().all(|&ok| ok),
        format!("{} instances satisfy the defining relations", fam.instances.len()),
    ));

    let zero = find_zero_type(params)?;
    rows.push(Row::info("zero-type certificate", &zero.certificate));
    if zero.certificate.is_unit() {
        rows.push(Row::info("zero-type", "none (a has only simple roots)"));
    } else {
        rows.push(Row::info(
            "zero-type",
            if zero.exact_roots.is_empty() {
                "no roots found at this conductor".to_string()
            } else {
                format!("gamma in {{{}}}", join(&zero.exact_roots))
            },
        ));
        if !zero.residual.is_unit() {
            rows.push(Row::info("zero-type residual", &zero.residual));
        }
    }
    let zero_sound = zero
        .endomorphisms
        .iter()
        .map(|psi| check_endomorphism(psi, params).map(|r| r.passed()))
        .collect::<Result<Vec<_>, _>>()?;
    if !zero_sound.is_empty() {
        rows.push(Row::check(
            "zero-type instances",
            zero_sound.iter().all(|&ok| ok),
            format!("{} instances satisfy the defining relations", zero_sound.len()),
        ));
    }

    let neg = solve_negative(params)?;
    if !neg.feasible {
        rows.push(Row::info(
            "negative",
            format!("none: {}", neg.reason.as_deref().unwrap_or("infeasible")),
        ));
        return Ok(rows);
    }
    let (g, c0) = (neg.g.expect("feasible"), neg.c0.clone().expect("feasible"));
    let (beta0, e) = neg.beta_rule.clone().expect("feasible");
    rows.push(Row::info("negative constraint", format!("gamma^{g} = {c0}")));
    rows.push(Row::info("negative bc", format!("bc = {}", power_rule(&beta0, e))));
    rows.push(Row::info("negative u+v", neg.s.expect("feasible")));
    rows.push(Row::info("negative conductor", neg.conductor));
    rows.push(Row::info(
        "negative solutions",
        if neg.solutions.is_empty() {
            "none found at this conductor".to_string()
        } else {
            neg.solutions
                .iter()
                .map(|s| format!("gamma = {}, bc = {}", s.gamma, s.bc))
                .collect::<Vec<_>>()
                .join("; ")
        },
    ));
    if let Some(r) = &neg.residual {
        rows.push(Row::info("negative residual", r));
    }
    let neg_sound = neg
        .endomorphisms()
        .iter()
        .map(|psi| check_endomorphism(psi, params).map(|r| r.passed()))
        .collect::<Result<Vec<_>, _>>()?;
    if !neg_sound.is_empty() {
        rows.push(Row::check(
            "negative instances",
            neg_sound.iter().all(|&ok| ok),
            format!("{} instances (b = 1, u = 0) satisfy the defining relations", neg_sound.len()),
        ));
    }
    Ok(rows)
}

fn check_endo(params: &GwaParams, psi: &Endomorphism) -> Result<Vec<Row>, CliError> {
    let report = check_endomorphism(psi, params)?;
    let mut rows = vec![
        Row::info("endomorphism", psi),
        Row::info("images", psi.images(params)?),
    ];
    for name in RELATIONS {
        let failure = report.failures.iter().find(|(n, _)| *n == name);
        rows.push(match failure {
            None => Row::check(name, true, "holds"),
            Some((_, r)) => Row::check(name, false, format!("residual {r}")),
        });
    }
    Ok(rows)
}

fn specialize_rows(
    params: &GwaParams,
    lambda: &Scalar,
    f: Option<&OreElement>,
) -> Result<Vec<Row>, CliError> {
    let alg = params.specialized(lambda)?;
    let mut rows = vec![Row::info("lambda", lambda)];
    if lambda.root_of_unity_order().is_some() {
        rows.push(Row::info(
            "warning",
            "lambda is a root of unity; the specialization is outside the generic range",
        ));
    }
    let (h, x, y) = (OreElement::h(), OreElement::x(), OreElement::y());
    let mono = |c: Scalar, h, x, y| OreElement::monomial(c, OreMonomial::new(0, h, x, y));
    let xh = alg.mul(&x, &h);
    let want_xh = mono(lambda.clone(), 1, 1, 0);
    rows.push(Row::check("xh = lambda*h*x", xh == want_xh, &xh));
    let yh = alg.mul(&y, &h);
    let want_yh = mono(lambda.inv().expect("nonzero"), 1, 0, 1);
    rows.push(Row::check("yh = lambda^-1*h*y", yh == want_yh, &yh));
    let yx = alg.mul(&y, &x);
    let a = OreElement::from_laurent(params.a())?;
    let a_l = OreElement::from_laurent(&params.a().substitute_h(lambda, 1).map_err(OreError::from)?)?;
    let want_yx = &(&mono(Scalar::one(), 0, 1, 1) + &a) - &a_l;
    rows.push(Row::check("yx = xy + a(h) - a(lambda*h)", yx == want_yx, &yx));
    if let Some(f) = f {
        rows.push(Row::info("f at t = lambda", specialize(f, lambda)?.element));
    }
    Ok(rows)
}

/// Parse `args`, run, print, and return the exit code.
/// Captured result of one CLI invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invocation {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parse and run `args` without touching the process streams.
pub fn invoke<I, T>(args: I) -> Invocation
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            let (stdout, stderr) = if e.use_stderr() {
                (String::new(), text)
            } else {
                (text, String::new())
            };
            return Invocation { code: e.exit_code(), stdout, stderr };
        }
    };
    let format = cli.command.common().format;
    match run(&cli.command) {
        Ok(report) => Invocation {
            code: report.exit_code(),
            stdout: report.render(format),
            stderr: String::new(),
        },
        Err(e) => Invocation {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let inv = invoke(args);
    let _ = std::io::stdout().lock().write_all(inv.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(inv.stderr.as_bytes());
    inv.code
}
