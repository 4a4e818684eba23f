//! Command-line front end for `lndkit`.

pub mod parse;
pub mod report;

use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use lndkit::automorphism::{validate, PlaneAuto, PolyMap};
use lndkit::derivation::{
    default_cap, exp_auto, lnd_decide2, lnd_semidecide, Derivation, LndVerdict, Nilpotence, NotLndCertificate,
};
use lndkit::eigen::{
    census_with_limit, darboux_verify, extactic_with_limit, kernel_bounded, linear_darboux_search, CensusKind,
    DEFAULT_CENSUS_BOUND, DEFAULT_EXTACTIC_MAX_ORDER,
};
use lndkit::isotropy::{
    conjugate, dim3_counterexample, is_in_isotropy, jonquieres_sweep_with_budget, ju_group, theorem_check_with,
    triangular_isotropy_solve, triangular_map, CellOutcome, SweepResult, TriangularIsotropyProblem,
    DEFAULT_SWEEP_BUDGET,
};
use lndkit::{Error, Poly, Rational, UniPoly};

pub use parse::{parse_poly, parse_rational, ParseError};
pub use report::{Certificate, Report, ReportError, Witness};

/// Environment variable capping `--budget`.
pub const BUDGET_CEILING_VAR: &str = "LNDKIT_BUDGET_CEILING";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_INCONCLUSIVE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "lndkit", version, about = "Exact tools for plane polynomial derivations and their isotropy groups")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default, Clone)]
struct DerivArgs {
    /// D(x) in two variables.
    #[arg(long, allow_hyphen_values = true)]
    dx: Option<String>,
    /// D(y) in two variables.
    #[arg(long, allow_hyphen_values = true)]
    dy: Option<String>,
    /// Number of variables for --d1..--d6 and --m1..--m6.
    #[arg(long)]
    nvars: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    d1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d5: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d6: Option<String>,
}

#[derive(Args, Debug, Default, Clone)]
struct MapArgs {
    /// First component of a plane map.
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    /// Second component of a plane map.
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m1: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m2: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m3: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m4: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m5: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m6: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide local nilpotence of a plane derivation.
    Lnd {
        #[command(flatten)]
        d: DerivArgs,
    },
    /// Conjugate a locally nilpotent derivation to u(x) d/dy.
    Rectify {
        #[command(flatten)]
        d: DerivArgs,
    },
    /// Exponential of a locally nilpotent derivation.
    Exp {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long)]
        cap: Option<u32>,
    },
    /// Conjugate a derivation by an automorphism.
    Conjugate {
        #[command(flatten)]
        d: DerivArgs,
        #[command(flatten)]
        m: MapArgs,
    },
    /// Check whether a map commutes with a derivation.
    Commute {
        #[command(flatten)]
        d: DerivArgs,
        #[command(flatten)]
        m: MapArgs,
    },
    /// Tame decomposition of a plane map.
    Decompose {
        #[command(flatten)]
        m: MapArgs,
    },
    /// Inverse of a plane automorphism.
    Invert {
        #[command(flatten)]
        m: MapArgs,
    },
    /// Check D(h) = lambda h.
    DarbouxVerify {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// All invariant lines with rational coefficients.
    DarbouxLinear {
        #[command(flatten)]
        d: DerivArgs,
    },
    /// Extactic determinant of order m.
    Extactic {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long, default_value_t = 1)]
        order: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Polynomials of bounded degree killed by D.
    Kernel {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        mmax: u32,
    },
    /// Eigenvector census up to a degree bound.
    Census {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        mmax: u32,
        /// Candidate eigenvectors to verify (repeatable).
        #[arg(long, allow_hyphen_values = true)]
        h: Vec<String>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Affine maps with u(alpha x + beta) = gamma u(x).
    Ju {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    /// Solve the triangular isotropy equations for fixed alpha, gamma.
    Triangular {
        #[arg(long, default_value_t = 0)]
        ell: u32,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        b0: String,
        #[arg(long, allow_hyphen_values = true)]
        b1: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        alpha: String,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        gamma: String,
        #[arg(long, default_value_t = 4)]
        m: u32,
    },
    /// Degree sweep over triangular maps commuting with D.
    Sweep {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Run the local nilpotence decision and the matching evidence search.
    TheoremCheck {
        #[command(flatten)]
        d: DerivArgs,
        #[arg(long, default_value_t = 10)]
        dmax: u32,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BOUND)]
        mmax: u32,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Three-variable derivation with commuting maps of any degree.
    Dim3Example {
        #[arg(long, default_value_t = 100)]
        p: u32,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Report,
    /// Text written to standard output.
    pub stdout: String,
}

enum Failure {
    Usage(String),
    Parse { field: String, err: ParseError },
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

/// Run with `argv[0]` the program name.
pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome { exit_code: EXIT_OK, report: Report::new("help"), stdout: text };
            }
            let mut report = Report::new("");
            report.error = Some(ReportError { kind: "usage".into(), message: text.trim().to_string(), position: None });
            report.exit_code = EXIT_USAGE;
            let stdout = if argv.iter().any(|a| a == "--json") { report.to_json() + "\n" } else { report.to_text() };
            return Outcome { exit_code: EXIT_USAGE, stdout, report };
        }
    };
    let start = Instant::now();
    let mut report = Report::new(command_name(&cli.command));
    let result = dispatch(&cli.command, &mut report);
    let exit_code = match result {
        Ok(()) => {
            if report.headline() == Some("Inconclusive") {
                EXIT_INCONCLUSIVE
            } else {
                EXIT_OK
            }
        }
        Err(Failure::Usage(message)) => {
            report.error = Some(ReportError { kind: "usage".into(), message, position: None });
            EXIT_USAGE
        }
        Err(Failure::Parse { field, err }) => {
            report.error = Some(ReportError {
                kind: "parse".into(),
                message: if err.expected.is_empty() {
                    format!("--{field}: {}", err.message)
                } else {
                    format!("--{field}: {} (expected {})", err.message, err.expected.join(", "))
                },
                position: Some(err.position),
            });
            EXIT_USAGE
        }
        Err(Failure::Lib(Error::BudgetExceeded(m))) => {
            report.error = Some(ReportError { kind: "budget".into(), message: m, position: None });
            EXIT_INCONCLUSIVE
        }
        Err(Failure::Lib(e)) => {
            report.error = Some(ReportError { kind: "domain".into(), message: e.to_string(), position: None });
            EXIT_DOMAIN
        }
    };
    report.timings.insert("total_ms".into(), start.elapsed().as_secs_f64() * 1e3);
    report.exit_code = exit_code;
    let stdout = if cli.json { report.to_json() + "\n" } else { report.to_text() };
    Outcome { exit_code, report, stdout }
}

/// [`run`] without the program name.
pub fn run_args(args: &[&str]) -> Outcome {
    run(std::iter::once("lndkit").chain(args.iter().copied()))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Lnd { .. } => "lnd",
        Command::Rectify { .. } => "rectify",
        Command::Exp { .. } => "exp",
        Command::Conjugate { .. } => "conjugate",
        Command::Commute { .. } => "commute",
        Command::Decompose { .. } => "decompose",
        Command::Invert { .. } => "invert",
        Command::DarbouxVerify { .. } => "darboux-verify",
        Command::DarbouxLinear { .. } => "darboux-linear",
        Command::Extactic { .. } => "extactic",
        Command::Kernel { .. } => "kernel",
        Command::Census { .. } => "census",
        Command::Ju { .. } => "ju",
        Command::Triangular { .. } => "triangular",
        Command::Sweep { .. } => "sweep",
        Command::TheoremCheck { .. } => "theorem-check",
        Command::Dim3Example { .. } => "dim3-example",
    }
}

fn poly_arg(field: &str, src: &str, nvars: usize) -> std::result::Result<Poly, Failure> {
    parse_poly(src, nvars).map_err(|err| Failure::Parse { field: field.to_string(), err })
}

fn rational_arg(field: &str, src: &str) -> std::result::Result<Rational, Failure> {
    parse_rational(src).map_err(|err| Failure::Parse { field: field.to_string(), err })
}

fn uni_arg(field: &str, src: &str) -> std::result::Result<UniPoly, Failure> {
    let p = poly_arg(field, src, 1)?;
    Ok(UniPoly::from_poly(&p, 0)?)
}

fn derivation_arg(a: &DerivArgs, report: &mut Report) -> std::result::Result<Derivation, Failure> {
    let numbered = [&a.d1, &a.d2, &a.d3, &a.d4, &a.d5, &a.d6];
    let d = if a.nvars.is_some() || numbered.iter().any(|d| d.is_some()) {
        if a.dx.is_some() || a.dy.is_some() {
            return Err(Failure::Usage("use either --dx/--dy or --nvars with --d1..--dn".into()));
        }
        let n = a.nvars.ok_or_else(|| Failure::Usage("--d1..--dn need --nvars".into()))?;
        if !(1..=6).contains(&n) {
            return Err(Failure::Usage("--nvars must be between 1 and 6".into()));
        }
        if numbered[n..].iter().any(|d| d.is_some()) {
            return Err(Failure::Usage(format!("component beyond --d{n} given")));
        }
        let mut comps = Vec::with_capacity(n);
        for (i, src) in numbered[..n].iter().enumerate() {
            let field = format!("d{}", i + 1);
            let src = src.as_ref().ok_or_else(|| Failure::Usage(format!("missing --{field}")))?;
            comps.push(poly_arg(&field, src, n)?);
        }
        Derivation::new(comps)?
    } else {
        let dx = a.dx.as_ref().ok_or_else(|| Failure::Usage("missing --dx".into()))?;
        let dy = a.dy.as_ref().ok_or_else(|| Failure::Usage("missing --dy".into()))?;
        Derivation::plane(poly_arg("dx", dx, 2)?, poly_arg("dy", dy, 2)?)?
    };
    report.input("derivation", &d);
    Ok(d)
}

fn map_arg(m: &MapArgs, nvars: usize, report: &mut Report) -> std::result::Result<PolyMap, Failure> {
    let numbered = [&m.m1, &m.m2, &m.m3, &m.m4, &m.m5, &m.m6];
    let map = if numbered.iter().any(|c| c.is_some()) {
        if m.f.is_some() || m.g.is_some() {
            return Err(Failure::Usage("use either --f/--g or --m1..--mn".into()));
        }
        if numbered[nvars.min(6)..].iter().any(|c| c.is_some()) {
            return Err(Failure::Usage(format!("map component beyond --m{nvars} given")));
        }
        let mut comps = Vec::with_capacity(nvars);
        for (i, src) in numbered[..nvars.min(6)].iter().enumerate() {
            let field = format!("m{}", i + 1);
            let src = src.as_ref().ok_or_else(|| Failure::Usage(format!("missing --{field}")))?;
            comps.push(poly_arg(&field, src, nvars)?);
        }
        PolyMap::new(comps)?
    } else {
        if nvars != 2 {
            return Err(Failure::Usage(format!("a map in {nvars} variables needs --m1..--m{nvars}")));
        }
        let f = m.f.as_ref().ok_or_else(|| Failure::Usage("missing --f".into()))?;
        let g = m.g.as_ref().ok_or_else(|| Failure::Usage("missing --g".into()))?;
        PolyMap::plane(poly_arg("f", f, 2)?, poly_arg("g", g, 2)?)?
    };
    report.input("map", &map);
    Ok(map)
}

/// `--budget` clamped to the ceiling from the environment.
fn budget_arg(requested: Option<u64>, default: u64, report: &mut Report) -> u64 {
    let mut b = requested.unwrap_or(default);
    if let Some(ceiling) = std::env::var(BUDGET_CEILING_VAR).ok().and_then(|v| v.trim().parse::<u64>().ok()) {
        if b > ceiling {
            report.caveats.push(format!("budget {b} lowered to the ceiling {ceiling} set by {BUDGET_CEILING_VAR}"));
            b = ceiling;
        }
    }
    report.input("budget", b);
    b
}

fn witness_of(label: &str, map: &PolyMap, d: Option<&Derivation>) -> std::result::Result<Witness, Failure> {
    let commutes = match d {
        Some(d) => Some(is_in_isotropy(map, d)?.commutes),
        None => None,
    };
    Ok(Witness {
        label: label.to_string(),
        nvars: map.nvars(),
        components: map.components().iter().map(Poly::to_string).collect(),
        degree: map.degree(),
        derivation: d.map(|d| d.components().iter().map(Poly::to_string).collect()).unwrap_or_default(),
        commutes,
    })
}

fn not_lnd_certificate(c: &NotLndCertificate, d: &Derivation) -> std::result::Result<Certificate, Failure> {
    let mut data = std::collections::BTreeMap::new();
    let kind = match c {
        NotLndCertificate::NonzeroDivergence { cofactor, reduced, divergence } => {
            data.insert("common_factor".into(), cofactor.to_string());
            data.insert("reduced".into(), format!("({}, {})", reduced[0], reduced[1]));
            data.insert("divergence".into(), divergence.to_string());
            "NonzeroDivergence"
        }
        NotLndCertificate::CofactorNotInKernelAlgebra { cofactor, kernel_generator } => {
            data.insert("common_factor".into(), cofactor.to_string());
            data.insert("kernel_generator".into(), kernel_generator.to_string());
            "CofactorNotInKernelAlgebra"
        }
        NotLndCertificate::KernelGeneratorNotCoordinate { kernel_generator, reason } => {
            data.insert("kernel_generator".into(), kernel_generator.to_string());
            data.insert("reason".into(), reason.to_string());
            "KernelGeneratorNotCoordinate"
        }
        NotLndCertificate::NonzeroEigenvalueWitness(pair) => {
            data.insert("h".into(), pair.h.to_string());
            data.insert("lambda".into(), pair.lambda.to_string());
            "NonzeroEigenvalueWitness"
        }
    };
    Ok(Certificate { kind: kind.into(), data, rechecked: c.recheck(d)? })
}

fn verdict_name(v: &LndVerdict) -> &'static str {
    match v {
        LndVerdict::Lnd(_) => "LND",
        LndVerdict::NotLnd(_) => "NotLND",
        LndVerdict::Inconclusive { .. } => "Inconclusive",
    }
}

fn report_lnd(d: &Derivation, v: &LndVerdict, report: &mut Report, full: bool) -> CmdResult {
    report.verdict("verdict", verdict_name(v));
    match v {
        LndVerdict::Lnd(cert) => {
            let conj = conjugate(&cert.rectifier, d)?;
            report.verdict("normal_u", &cert.normal_u);
            report.verdict("rectified", &conj);
            if cert.rectifier == PlaneAuto::identity() {
                report.verdict("rectifier", "identity");
            } else {
                report.verdict("rectifier", &cert.rectifier);
            }
            if full {
                report.verdict("kernel_generator", &cert.kernel_generator);
                let cof = UniPoly::new(cert.cofactor_coeffs.clone()).to_poly(1, 0).to_string_with(&["f"]);
                report.verdict("common_factor_in_f", cof);
                report.verdict("nilpotence_index", cert.nilpotence_index);
            }
            report.witnesses.push(witness_of("rectifier", &cert.rectifier.to_map(), None)?);
        }
        LndVerdict::NotLnd(c) => {
            report.verdict("reason", c);
            report.certificates.push(not_lnd_certificate(c, d)?);
        }
        LndVerdict::Inconclusive { reason } => report.verdict("reason", reason),
    }
    Ok(())
}

fn report_sweep(d: &Derivation, sweep: &SweepResult, report: &mut Report) -> CmdResult {
    match sweep.max_witness_degree() {
        Some(m) => report.verdict("sweep_max_degree", m),
        None => report.verdict("sweep_max_degree", "none"),
    }
    let cells: Vec<String> = sweep
        .cells
        .iter()
        .map(|c| {
            let o = match &c.outcome {
                CellOutcome::Witness { .. } => "witness",
                CellOutcome::NoneFound => "none",
                CellOutcome::Undecided { .. } => "undecided",
            };
            format!("{}:{o}", c.degree)
        })
        .collect();
    report.verdict("sweep_cells", cells.join(" "));
    report.verdict("sweep_class", format!("{:?}", sweep.search_class));
    for c in &sweep.cells {
        if let CellOutcome::Witness { auto, .. } = &c.outcome {
            report.witnesses.push(witness_of(&format!("sweep degree {}", c.degree), &auto.to_map(), Some(d))?);
        }
        if let CellOutcome::Undecided { reason } = &c.outcome {
            report.caveats.push(format!("degree {}: {reason}", c.degree));
        }
    }
    report.caveats.extend(sweep.notes.iter().cloned());
    Ok(())
}

fn dispatch(cmd: &Command, report: &mut Report) -> CmdResult {
    match cmd {
        Command::Lnd { d } => {
            let d = derivation_arg(d, report)?;
            let v = lnd_decide2(&d)?;
            report_lnd(&d, &v, report, true)
        }
        Command::Rectify { d } => {
            let d = derivation_arg(d, report)?;
            let v = lnd_decide2(&d)?;
            report_lnd(&d, &v, report, false)
        }
        Command::Exp { d, cap } => {
            let d = derivation_arg(d, report)?;
            let cap = cap.unwrap_or_else(|| default_cap(&d));
            report.input("cap", cap);
            let proof = lnd_semidecide(&d, cap);
            let map = exp_auto(&d, &proof)?;
            if let Nilpotence::NilpotentWithin(k) = proof {
                report.verdict("verdict", format!("NilpotentWithin({k})"));
            }
            if map.nvars() == 2 {
                validate(&map)?;
            }
            report.verdict("exp", &map);
            report.witnesses.push(witness_of("exp", &map, Some(&d))?);
            Ok(())
        }
        Command::Conjugate { d, m } => {
            let d = derivation_arg(d, report)?;
            let map = map_arg(m, d.nvars(), report)?;
            let phi = validate(&map)?;
            let c = conjugate(&phi, &d)?;
            report.verdict("verdict", &c);
            report.verdict("fixes_derivation", c == d);
            Ok(())
        }
        Command::Commute { d, m } => {
            let d = derivation_arg(d, report)?;
            let map = map_arg(m, d.nvars(), report)?;
            let r = is_in_isotropy(&map, &d)?;
            report.verdict("verdict", if r.commutes { "commutes" } else { "does not commute" });
            let res: Vec<String> = r.residuals.iter().map(Poly::to_string).collect();
            report.verdict("residuals", res.join(", "));
            report.caveats.extend(r.caveat);
            Ok(())
        }
        Command::Decompose { m } => {
            let map = map_arg(m, 2, report)?;
            match validate(&map) {
                Ok(a) => {
                    report.verdict("verdict", "automorphism");
                    report.verdict("jacobian", a.jacobian());
                    report.verdict("degree", a.degree().0);
                    for (i, f) in a.factorization().factors.iter().enumerate() {
                        report.verdict(&format!("factor_{}", i + 1), f);
                    }
                    report.verdict("factor_count", a.factorization().factors.len());
                }
                Err(Error::NotAnAutomorphism(ob)) => {
                    report.verdict("verdict", "not an automorphism");
                    report.verdict("reason", ob);
                }
                Err(e) => return Err(e.into()),
            }
            Ok(())
        }
        Command::Invert { m } => {
            let map = map_arg(m, 2, report)?;
            let a = validate(&map)?;
            let inv = a.invert();
            report.verdict("verdict", &inv);
            report.witnesses.push(witness_of("inverse", &inv.to_map(), None)?);
            Ok(())
        }
        Command::DarbouxVerify { d, h } => {
            let d = derivation_arg(d, report)?;
            let h = poly_arg("h", h, d.nvars())?;
            report.input("h", &h);
            match darboux_verify(&d, &h)? {
                Some(l) => {
                    report.verdict("verdict", "eigenvector");
                    report.verdict("lambda", l);
                }
                None => report.verdict("verdict", "not an eigenvector"),
            }
            Ok(())
        }
        Command::DarbouxLinear { d } => {
            let d = derivation_arg(d, report)?;
            let found = linear_darboux_search(&d)?;
            report.verdict("verdict", format!("{} invariant lines", found.pairs.len()));
            let pairs: Vec<String> = found.pairs.iter().map(|p| format!("{} (lambda = {})", p.h, p.lambda)).collect();
            report.verdict("pairs", pairs.join(", "));
            let fams: Vec<String> = found.families.iter().map(|f| f.to_string()).collect();
            report.verdict("families", fams.join("; "));
            report.verdict("extension_flag", found.extension_flag);
            Ok(())
        }
        Command::Extactic { d, order, budget } => {
            let d = derivation_arg(d, report)?;
            report.input("order", order);
            let limit = budget_arg(*budget, DEFAULT_EXTACTIC_MAX_ORDER as u64, report);
            let e = extactic_with_limit(&d, *order, limit.min(u32::MAX as u64) as u32)?;
            report.verdict("verdict", &e);
            report.verdict("vanishes", e.is_zero());
            Ok(())
        }
        Command::Kernel { d, mmax } => {
            let d = derivation_arg(d, report)?;
            report.input("mmax", mmax);
            let basis = kernel_bounded(&d, *mmax)?;
            report.verdict("verdict", format!("dimension {}", basis.len()));
            report.verdict("basis", basis.iter().map(Poly::to_string).collect::<Vec<_>>().join(", "));
            Ok(())
        }
        Command::Census { d, mmax, h, budget } => {
            let d = derivation_arg(d, report)?;
            report.input("mmax", mmax);
            let cands = h.iter().map(|s| poly_arg("h", s, 2)).collect::<std::result::Result<Vec<_>, _>>()?;
            let limit = budget_arg(*budget, DEFAULT_EXTACTIC_MAX_ORDER as u64, report);
            let cen = census_with_limit(&d, *mmax, &cands, limit.min(u32::MAX as u64) as u32)?;
            let head = match &cen.kind {
                CensusKind::NoEigenvectorUpTo(m) => format!("NoEigenvectorUpTo({m})"),
                CensusKind::FiniteList { pairs, bound } => format!("FiniteList({} pairs, degree <= {bound})", pairs.len()),
                CensusKind::InfiniteFamily { extactic_order } => format!("InfiniteFamily(order {extactic_order})"),
            };
            report.verdict("verdict", head);
            let pairs: Vec<String> = cen.pairs.iter().map(|p| format!("{} (lambda = {})", p.h, p.lambda)).collect();
            report.verdict("pairs", pairs.join(", "));
            report.verdict("kernel_basis", cen.kernel_basis.iter().map(Poly::to_string).collect::<Vec<_>>().join(", "));
            report.verdict(
                "vanishing_orders",
                cen.vanishing_orders.iter().map(u32::to_string).collect::<Vec<_>>().join(", "),
            );
            report.verdict("extension_flag", cen.extension_flag);
            if cen.uncorroborated {
                report.caveats.push("an extactic determinant vanishes without a corroborating first integral or line family".into());
            }
            report.caveats.push(format!("census covers eigenvectors of degree <= {} only", cen.bound));
            Ok(())
        }
        Command::Ju { u } => {
            let u = uni_arg("u", u)?;
            report.input("u", &u);
            let data = ju_group(&u)?;
            let sols: Vec<String> =
                data.affine_solutions.iter().map(|(a, b, g)| format!("({a}, {b}, {g})")).collect();
            report.verdict("verdict", format!("{} isolated, {} families", sols.len(), data.families.len()));
            report.verdict("affine_solutions", sols.join(", "));
            report.verdict("families", data.families.iter().map(|f| f.to_string()).collect::<Vec<_>>().join("; "));
            report.verdict("free_part", if data.free_part { "P(x) unconstrained" } else { "constrained" });
            report.verdict("extension_flag", data.extension_flag);
            let d = Derivation::plane(Poly::zero(2), u.to_poly(2, 0))?;
            for (a, b, g) in &data.affine_solutions {
                let map = triangular_map(a, b, g, &UniPoly::zero());
                report.witnesses.push(witness_of(&format!("({a}, {b}, {g})"), &map, Some(&d))?);
            }
            Ok(())
        }
        Command::Triangular { ell, a, b0, b1, alpha, gamma, m } => {
            let prob = TriangularIsotropyProblem::new(*ell, uni_arg("a", a)?, uni_arg("b0", b0)?, uni_arg("b1", b1)?)?;
            let (alpha, gamma) = (rational_arg("alpha", alpha)?, rational_arg("gamma", gamma)?);
            report.input("derivation", prob.derivation());
            report.input("alpha", &alpha);
            report.input("gamma", &gamma);
            report.input("m", m);
            match triangular_isotropy_solve(&prob, &alpha, &gamma, *m)? {
                None => report.verdict("verdict", "Empty"),
                Some(sol) => {
                    report.verdict("verdict", format!("dimension {}", sol.basis.len()));
                    report.verdict("particular", &sol.particular);
                    report.verdict("basis", sol.basis.iter().map(UniPoly::to_string).collect::<Vec<_>>().join(", "));
                    let d = prob.derivation();
                    report.witnesses.push(witness_of("particular", &sol.map_for(&sol.particular), Some(&d))?);
                    for (i, b) in sol.basis.iter().enumerate() {
                        let p = &sol.particular + b;
                        report.witnesses.push(witness_of(&format!("basis {}", i + 1), &sol.map_for(&p), Some(&d))?);
                    }
                }
            }
            Ok(())
        }
        Command::Sweep { d, dmax, budget } => {
            let d = derivation_arg(d, report)?;
            report.input("dmax", dmax);
            let budget = budget_arg(*budget, DEFAULT_SWEEP_BUDGET as u64, report);
            let sweep = jonquieres_sweep_with_budget(&d, *dmax, budget as usize)?;
            report_sweep(&d, &sweep, report)?;
            let head = report.verdicts["sweep_max_degree"].clone();
            report.verdict("verdict", format!("max witness degree {head}"));
            Ok(())
        }
        Command::TheoremCheck { d, dmax, mmax, budget } => {
            let d = derivation_arg(d, report)?;
            report.input("dmax", dmax);
            let budget = budget_arg(*budget, DEFAULT_SWEEP_BUDGET as u64, report);
            let rep = theorem_check_with(&d, *dmax, *mmax, budget as usize)?;
            report.verdict("summary", &rep.summary);
            report_lnd(&d, &rep.verdict, report, true)?;
            if let Some(m) = rep.max_witness_degree() {
                report.verdict("witness_max_degree", m);
                for (k, w) in rep.witnesses.iter().enumerate() {
                    report.witnesses.push(witness_of(&format!("exp(f^{} D)", k + 1), &w.to_map(), Some(&d))?);
                }
            }
            if let Some(s) = &rep.sweep {
                report_sweep(&d, s, report)?;
            }
            for c in &rep.eigen_certificates {
                report.certificates.push(not_lnd_certificate(c, &d)?);
            }
            if let Some(c) = &rep.census {
                report.verdict("census_pairs", c.pairs.len());
                report.verdict("extension_flag", c.extension_flag);
            }
            if !rep.verdict.is_lnd() {
                report.caveats.push("the sweep covers triangular maps only; it is evidence for bounded degree, not a proof".into());
            }
            Ok(())
        }
        Command::Dim3Example { p } => {
            report.input("p", p);
            let rep = dim3_counterexample(*p)?;
            report.input("derivation", &rep.derivation);
            let nil = |n: &Nilpotence| match n {
                Nilpotence::NilpotentWithin(k) => format!("NilpotentWithin({k})"),
                Nilpotence::NotNilpotentWithin { cap, .. } => format!("NotNilpotentWithin({cap})"),
            };
            report.verdict("verdict", format!("commuting map of degree {} verified", rep.witness_degree));
            report.verdict("nilpotence", nil(&rep.nilpotence));
            report.verdict("control", &rep.control);
            report.verdict("control_nilpotence", nil(&rep.control_nilpotence));
            report.caveats.extend(rep.commutation.caveat.clone());
            report.witnesses.push(witness_of("witness", &rep.witness, Some(&rep.derivation))?);
            Ok(())
        }
    }
}
