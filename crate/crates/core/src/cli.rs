//! Command-line front end: parse h and options, dispatch the computations,
//! and emit human-readable or line-delimited machine-readable reports.
//!
//! Exit codes: 0 success, 1 verification failure (with counterexample
//! dump), 2 parse error, 3 mathematical domain error (e.g. bracket against
//! a trivial HH^2).

use crate::cohomology::{
    hh0, hh1_char0, hh2_charp_from_poly, is_derivation, project_hh2, Derivation, Hh0Report,
};
use crate::gerstenhaber::{
    bracket_adgan, bracket_dg, bracket_general, composition_series, CompositionReport,
};
use crate::ore::OreAlgebra;
use crate::parse::{parse_factored, parse_ore, parse_poly};
use crate::poly::{FactoredPoly, Poly};
use crate::scalar::Field;
use crate::verify::{run_suite, SuiteConfig, SuiteName, SuiteReport};
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser, Debug)]
#[command(
    name = "ahoch",
    version,
    about = "Exact Hochschild cohomology of the algebras A_h (yh·x − x·yh = h) inside the Weyl algebra",
    after_help = "Derivation specs for `bracket`:\n  \
        dg:g=<poly>                 the derivation D_g (D(x)=0, D(yh)=g)\n  \
        ad:g=<poly>,n=<int>         the derivation ad_{g a_n}\n  \
        general:dx=<elt>,dyhat=<elt> explicit values on the generators\n\
        Elements use the grammar: integers, rationals a/b, x, yh, + - * ^, parentheses."
)]
pub struct Cli {
    /// Field characteristic: 0 for Q or a prime p for F_p
    #[arg(long = "char", default_value_t = 0)]
    pub characteristic: u64,

    /// The defining polynomial h as an expression in x
    #[arg(long)]
    pub h: Option<String>,

    /// h in factored form: comma-separated factor^multiplicity terms
    #[arg(long = "h-factored")]
    pub h_factored: Option<String>,

    /// Seed for the randomized suites
    #[arg(long, default_value_t = 0)]
    pub seed: u64,

    /// Maximum x-degree of sampled elements
    #[arg(long = "max-x-deg", default_value_t = 6)]
    pub max_x_deg: usize,

    /// Maximum yh-degree of sampled elements
    #[arg(long = "max-yh-deg", default_value_t = 4)]
    pub max_yh_deg: usize,

    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Machine,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// HH^0 / HH^1 / HH^2 summary (characteristic 0)
    Report,
    /// Composition series of HH^2 as a Lie module over HH^1
    Series,
    /// Evaluate the Gerstenhaber bracket of a derivation against a class,
    /// via the closed formula and the resolution lifting
    Bracket {
        /// Derivation spec (see --help)
        #[arg(long)]
        derivation: String,
        /// The HH^2 class, as an element expression in x and yh
        #[arg(long)]
        class: String,
    },
    /// Run a named verification suite
    Verify {
        /// homotopy | chain | bracket-agreement | lie-module | witt-rep
        suite: String,
        /// Trials per identity and case
        #[arg(long)]
        trials: Option<usize>,
    },
    /// HH^2 structure over the center in characteristic p, with freeness
    Charp,
}

/// Error carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// exit 2
    Parse(String),
    /// exit 3
    Domain(String),
    /// exit 1
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::VerifyFailed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Parse(m) | CliError::Domain(m) | CliError::VerifyFailed(m) => m,
        }
    }
}

/// Output lines plus the process exit code (0 success, 1 verification
/// failure with counterexamples included in the lines).
#[derive(Debug)]
pub struct RunOutcome {
    pub lines: Vec<String>,
    pub exit_code: i32,
}

impl RunOutcome {
    fn ok(lines: Vec<String>) -> Self {
        RunOutcome {
            lines,
            exit_code: 0,
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The validated problem data: the field, h, and optionally its factorization.
pub struct Instance {
    pub field: Field,
    pub h: Poly,
    pub factored: Option<FactoredPoly>,
}

impl Instance {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let field = match cli.characteristic {
            0 => Field::Rational,
            p if is_prime(p) => Field::Prime(p),
            p => {
                return Err(CliError::Parse(format!(
                    "--char must be 0 or a prime, got {p}"
                )))
            }
        };
        let (h, factored) = match (&cli.h, &cli.h_factored) {
            (Some(_), Some(_)) => {
                return Err(CliError::Parse(
                    "supply exactly one of --h and --h-factored".into(),
                ))
            }
            (None, None) => {
                return Err(CliError::Parse(
                    "one of --h or --h-factored is required".into(),
                ))
            }
            (Some(text), None) => {
                let h = parse_poly(text, field).map_err(|e| CliError::Parse(e.to_string()))?;
                (h, None)
            }
            (None, Some(text)) => {
                let fac =
                    parse_factored(text, field).map_err(|e| CliError::Parse(e.to_string()))?;
                (fac.expand(), Some(fac))
            }
        };
        if h.is_zero() {
            return Err(CliError::Domain("h must be nonzero".into()));
        }
        Ok(Instance { field, h, factored })
    }

    /// A factorization for the series engine: the supplied one, or the
    /// squarefree decomposition fallback (characteristic 0).
    pub fn factorization(&self) -> Result<FactoredPoly, CliError> {
        match &self.factored {
            Some(f) => Ok(f.clone()),
            None => self
                .h
                .squarefree_decomposition()
                .map_err(|e| CliError::Domain(e.to_string())),
        }
    }
}

#[derive(Serialize)]
struct ReportRecord {
    schema_version: u32,
    record: &'static str,
    characteristic: u64,
    h: String,
    hh0: String,
    hh1_center_dim: usize,
    hh1_center_basis: Vec<String>,
    hh1_derived_deg_bound: usize,
    hh1_nilradical_modulus: String,
    hh2_modulus: String,
    hh2_is_zero: bool,
    hh_higher: &'static str,
}

#[derive(Serialize)]
struct SeriesFactorRecord {
    i: u32,
    j: usize,
    u: String,
    alpha: u32,
    mu: String,
}

#[derive(Serialize)]
struct SeriesRecord {
    schema_version: u32,
    record: &'static str,
    h: String,
    gcd: String,
    m_h: u32,
    length: u32,
    semisimple: bool,
    thetas: Vec<String>,
    factors: Vec<SeriesFactorRecord>,
    trivial: bool,
}

#[derive(Serialize)]
struct BracketRecord {
    schema_version: u32,
    record: &'static str,
    h: String,
    derivation: String,
    class: String,
    closed_route: Option<String>,
    lifting_route: String,
    agree: Option<bool>,
}

#[derive(Serialize)]
struct VerifyCaseRecord<'a> {
    schema_version: u32,
    record: &'static str,
    suite: &'a str,
    case: &'a str,
    identity: &'a str,
    trials: usize,
    failures: &'a [crate::resolution::IdentityFailure],
}

#[derive(Serialize)]
struct VerifySummaryRecord<'a> {
    schema_version: u32,
    record: &'static str,
    suite: &'a str,
    seed: u64,
    passed: bool,
    total_failures: usize,
}

#[derive(Serialize)]
struct CharpRecord {
    schema_version: u32,
    record: &'static str,
    p: u64,
    h: String,
    gcd: String,
    j_summands: Vec<JSummandRecord>,
    k_basis: Vec<String>,
    k_rank: usize,
    quotient_invariants: Vec<String>,
    complement_xi: Option<String>,
    complement_generator: Option<String>,
    free: bool,
    rank: Option<u32>,
}

#[derive(Serialize)]
struct JSummandRecord {
    j: usize,
    weyl_monomial: String,
}

fn emit(out: &mut Vec<String>, format: Format, record: impl Serialize, text: String) {
    match format {
        Format::Machine => out.push(serde_json::to_string(&record).expect("serializable")),
        Format::Text => out.push(text),
    }
}

pub fn series_record_lines(rep: &CompositionReport, format: Format) -> Vec<String> {
    let mut out = Vec::new();
    let record = SeriesRecord {
        schema_version: SCHEMA_VERSION,
        record: "series",
        h: rep.h.to_string(),
        gcd: rep.gcd.to_string(),
        m_h: rep.m_h,
        length: rep.length,
        semisimple: rep.semisimple,
        thetas: rep.thetas.iter().map(|t| t.to_string()).collect(),
        factors: rep
            .factors
            .iter()
            .map(|f| SeriesFactorRecord {
                i: f.i,
                j: f.j,
                u: f.u.to_string(),
                alpha: f.alpha,
                mu: f.mu.to_string(),
            })
            .collect(),
        trivial: rep.trivial,
    };
    let mut text = String::new();
    text.push_str(&format!("h = {}; gcd(h, h') = {}\n", rep.h, rep.gcd));
    if rep.trivial {
        text.push_str("HH^2(A_h) = 0 (h is separable); composition series is empty\n");
    }
    text.push_str(&format!(
        "m_h = {}; composition length = {}; semisimple: {}\n",
        rep.m_h, rep.length, rep.semisimple
    ));
    let thetas: Vec<String> = rep
        .thetas
        .iter()
        .enumerate()
        .map(|(i, t)| format!("Theta_{i} = {t}"))
        .collect();
    text.push_str(&thetas.join("; "));
    for f in &rep.factors {
        text.push_str(&format!(
            "\nfactor (i={}, j={}): u = {}, alpha = {}, mu = {}",
            f.i, f.j, f.u, f.alpha, f.mu
        ));
    }
    emit(&mut out, format, record, text);
    out
}

fn cmd_report(inst: &Instance, format: Format) -> Result<RunOutcome, CliError> {
    if inst.field.characteristic() != 0 {
        return Err(CliError::Domain(
            "`report` summarizes characteristic 0; use `charp` for characteristic p".into(),
        ));
    }
    let hh0_str = match hh0(&inst.h) {
        Hh0Report::Char0 => "F".to_string(),
        Hh0Report::CharP { .. } => unreachable!("characteristic 0"),
    };
    let hh1 =
        hh1_char0(&inst.h, inst.factored.as_ref()).map_err(|e| CliError::Domain(e.to_string()))?;
    let (modulus, is_zero) =
        crate::cohomology::hh2_char0(&inst.h).map_err(|e| CliError::Domain(e.to_string()))?;

    let record = ReportRecord {
        schema_version: SCHEMA_VERSION,
        record: "report",
        characteristic: 0,
        h: inst.h.to_string(),
        hh0: hh0_str.clone(),
        hh1_center_dim: hh1.center_dim,
        hh1_center_basis: hh1.center_basis.iter().map(|g| g.to_string()).collect(),
        hh1_derived_deg_bound: hh1.derived_deg_bound,
        hh1_nilradical_modulus: hh1.nilradical_modulus.to_string(),
        hh2_modulus: modulus.to_string(),
        hh2_is_zero: is_zero,
        hh_higher: "HH^i(A_h) = 0 for all i >= 3",
    };
    let mut text = String::new();
    text.push_str(&format!("A_h with h = {} over Q\n", inst.h));
    text.push_str(&format!("HH^0(A_h) = {hh0_str}\n"));
    text.push_str(&format!(
        "HH^1(A_h): center dim = {} with basis D_g for g in {{{}}}; [HH^1,HH^1] spanned by ad_{{g a_n}} with deg g < {}; nilradical condition: g in ({})F[x]\n",
        hh1.center_dim,
        hh1.center_basis
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        hh1.derived_deg_bound,
        hh1.nilradical_modulus
    ));
    if is_zero {
        text.push_str("HH^2(A_h) = 0 (h is separable)\n");
    } else {
        text.push_str(&format!(
            "HH^2(A_h) = D[yh] with D = F[x]/({modulus}), infinite dimensional\n"
        ));
    }
    text.push_str("HH^i(A_h) = 0 for all i >= 3");
    let mut out = Vec::new();
    emit(&mut out, format, record, text);
    Ok(RunOutcome::ok(out))
}

fn cmd_series(inst: &Instance, format: Format) -> Result<RunOutcome, CliError> {
    if inst.field.characteristic() != 0 {
        return Err(CliError::Domain(
            "composition series are a characteristic-0 computation".into(),
        ));
    }
    let fac = inst.factorization()?;
    let rep = composition_series(&fac).map_err(|e| CliError::Domain(e.to_string()))?;
    Ok(RunOutcome::ok(series_record_lines(&rep, format)))
}

/// Parse the derivation mini-language: `dg:g=...`, `ad:g=...,n=...`,
/// `general:dx=...,dyhat=...`.
pub fn parse_derivation_spec(
    spec: &str,
    alg: &OreAlgebra,
) -> Result<(Derivation, DerivKind), CliError> {
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| CliError::Parse(format!("malformed derivation spec '{spec}'")))?;
    let fields: Vec<(&str, &str)> = rest
        .split(',')
        .map(|kv| {
            kv.split_once('=')
                .ok_or_else(|| CliError::Parse(format!("malformed key=value '{kv}'")))
        })
        .collect::<Result<_, _>>()?;
    let get = |key: &str| -> Result<&str, CliError> {
        fields
            .iter()
            .find(|(k, _)| *k == key)
            .map(|(_, v)| *v)
            .ok_or_else(|| CliError::Parse(format!("derivation spec missing '{key}='")))
    };
    match kind {
        "dg" => {
            let g =
                parse_poly(get("g")?, alg.field()).map_err(|e| CliError::Parse(e.to_string()))?;
            Ok((Derivation::d_g(alg, &g), DerivKind::Dg { g }))
        }
        "ad" => {
            let g =
                parse_poly(get("g")?, alg.field()).map_err(|e| CliError::Parse(e.to_string()))?;
            let n: usize = get("n")?
                .parse()
                .map_err(|_| CliError::Parse("n must be a nonnegative integer".into()))?;
            let d = Derivation::ad_gan(alg, &g, n).map_err(|e| CliError::Domain(e.to_string()))?;
            Ok((d, DerivKind::Ad { g, n }))
        }
        "general" => {
            let dx = parse_ore(get("dx")?, alg).map_err(|e| CliError::Parse(e.to_string()))?;
            let dyhat =
                parse_ore(get("dyhat")?, alg).map_err(|e| CliError::Parse(e.to_string()))?;
            if !is_derivation(&dx, &dyhat) {
                let residual = crate::cohomology::cochain_d2(&dx, &dyhat);
                return Err(CliError::Domain(format!(
                    "not a derivation: rD2 residual = {residual}"
                )));
            }
            let d = Derivation::new(dx, dyhat).expect("validated");
            Ok((d, DerivKind::General))
        }
        other => Err(CliError::Parse(format!(
            "unknown derivation kind '{other}' (expected dg | ad | general)"
        ))),
    }
}

pub enum DerivKind {
    Dg { g: Poly },
    Ad { g: Poly, n: usize },
    General,
}

fn cmd_bracket(
    inst: &Instance,
    spec: &str,
    class_text: &str,
    format: Format,
) -> Result<RunOutcome, CliError> {
    if inst.field.characteristic() != 0 {
        return Err(CliError::Domain(
            "brackets are computed in characteristic 0".into(),
        ));
    }
    let alg = OreAlgebra::new(inst.h.clone()).expect("h nonzero");
    let (d, kind) = parse_derivation_spec(spec, &alg)?;
    let class_elt = parse_ore(class_text, &alg).map_err(|e| CliError::Parse(e.to_string()))?;
    let class = project_hh2(&class_elt).map_err(|e| CliError::Domain(e.to_string()))?;

    let lifting =
        bracket_general(&d, &class.lift()).map_err(|e| CliError::Domain(e.to_string()))?;
    let closed = match &kind {
        DerivKind::Dg { g } => Some(bracket_dg(g, &class)),
        DerivKind::Ad { g, n } => {
            Some(bracket_adgan(g, *n, &class).map_err(|e| CliError::Domain(e.to_string()))?)
        }
        DerivKind::General => None,
    };
    let agree = closed.as_ref().map(|c| c == &lifting);

    let record = BracketRecord {
        schema_version: SCHEMA_VERSION,
        record: "bracket",
        h: inst.h.to_string(),
        derivation: spec.to_string(),
        class: class.to_string(),
        closed_route: closed.as_ref().map(|c| c.to_string()),
        lifting_route: lifting.to_string(),
        agree,
    };
    let mut text = format!(
        "[{spec}, {class}] over h = {}\n  lifting route: {lifting}",
        inst.h
    );
    if let Some(c) = &closed {
        text.push_str(&format!("\n  closed route:  {c}"));
        text.push_str(&format!("\n  agree: {}", agree.unwrap()));
    }
    let mut out = Vec::new();
    emit(&mut out, format, record, text);
    Ok(RunOutcome {
        lines: out,
        exit_code: if agree == Some(false) { 1 } else { 0 },
    })
}

pub fn verify_report_lines(rep: &SuiteReport, format: Format) -> (Vec<String>, bool) {
    let mut out = Vec::new();
    for case in &rep.cases {
        match format {
            Format::Machine => {
                let record = VerifyCaseRecord {
                    schema_version: SCHEMA_VERSION,
                    record: "verify-case",
                    suite: &rep.suite,
                    case: &case.case,
                    identity: &case.identity,
                    trials: case.trials,
                    failures: &case.failures,
                };
                out.push(serde_json::to_string(&record).expect("serializable"));
            }
            Format::Text => {
                let status = if case.failures.is_empty() {
                    "PASS"
                } else {
                    "FAIL"
                };
                out.push(format!(
                    "{status} [{}] {}: {} ({} trials)",
                    rep.suite, case.case, case.identity, case.trials
                ));
                for f in &case.failures {
                    out.push(format!(
                        "      counterexample: input = {}; lhs = {}; rhs = {}",
                        f.input, f.lhs, f.rhs
                    ));
                }
            }
        }
    }
    let passed = rep.passed();
    match format {
        Format::Machine => {
            let record = VerifySummaryRecord {
                schema_version: SCHEMA_VERSION,
                record: "verify-summary",
                suite: &rep.suite,
                seed: rep.seed,
                passed,
                total_failures: rep.total_failures(),
            };
            out.push(serde_json::to_string(&record).expect("serializable"));
        }
        Format::Text => {
            out.push(format!(
                "suite {}: {} ({} failures, seed {})",
                rep.suite,
                if passed { "PASS" } else { "FAIL" },
                rep.total_failures(),
                rep.seed
            ));
        }
    }
    (out, passed)
}

fn cmd_verify(
    cli: &Cli,
    suite: &str,
    trials: Option<usize>,
    format: Format,
) -> Result<RunOutcome, CliError> {
    let name: SuiteName = suite.parse().map_err(|e: String| CliError::Parse(e))?;
    let cfg = SuiteConfig {
        seed: cli.seed,
        trials: trials.unwrap_or(200),
        max_x_deg: cli.max_x_deg,
        max_yhat_deg: cli.max_yh_deg,
    };
    let rep = run_suite(name, &cfg);
    let (lines, passed) = verify_report_lines(&rep, format);
    Ok(RunOutcome {
        lines,
        exit_code: if passed { 0 } else { 1 },
    })
}

fn cmd_charp(inst: &Instance, format: Format) -> Result<RunOutcome, CliError> {
    let p = match inst.field {
        Field::Prime(p) => p,
        Field::Rational => {
            return Err(CliError::Domain(
                "`charp` requires --char p for a prime p".into(),
            ))
        }
    };
    let rep = hh2_charp_from_poly(&inst.h, p).map_err(|e| CliError::Domain(e.to_string()))?;
    let record = CharpRecord {
        schema_version: SCHEMA_VERSION,
        record: "charp",
        p,
        h: rep.h.to_string(),
        gcd: rep.gcd.to_string(),
        j_summands: rep
            .j_summands
            .iter()
            .map(|s| JSummandRecord {
                j: s.j,
                weyl_monomial: s.weyl_monomial.clone(),
            })
            .collect(),
        k_basis: rep.k_basis.iter().map(|b| b.to_string()).collect(),
        k_rank: rep.k_rank,
        quotient_invariants: rep
            .quotient_invariants
            .iter()
            .map(|d| d.to_string())
            .collect(),
        complement_xi: rep.complement_xi.as_ref().map(|x| x.to_string()),
        complement_generator: rep.complement_generator.clone(),
        free: rep.free,
        rank: rep.rank,
    };
    let mut text = String::new();
    text.push_str(&format!(
        "A_h with h = {} over F_{p}; gcd(h, h') = {}\n",
        rep.h, rep.gcd
    ));
    if rep.j_summands.is_empty() {
        text.push_str("torsion part: none (gcd = 1)\n");
    } else {
        let parts: Vec<String> = rep
            .j_summands
            .iter()
            .map(|s| format!("(C_A(x)/gcd·C_A(x))·{}", s.weyl_monomial))
            .collect();
        text.push_str(&format!("torsion part: {}\n", parts.join(" ⊕ ")));
    }
    text.push_str(&format!(
        "K = im kappa: F[x^p]-basis {{{}}} (rank {})\n",
        rep.k_basis
            .iter()
            .map(|b| b.to_string())
            .collect::<Vec<_>>()
            .join(", "),
        rep.k_rank
    ));
    if !rep.quotient_invariants.is_empty() {
        text.push_str(&format!(
            "F[x]/K torsion invariants (t = x^p): {}\n",
            rep.quotient_invariants
                .iter()
                .map(|d| d.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        ));
    }
    if let Some(generator) = &rep.complement_generator {
        text.push_str(&format!("free summand generator: {generator}\n"));
    }
    text.push_str(&format!(
        "HH^2 free over Z(A_h): {}{}",
        rep.free,
        rep.rank.map(|r| format!(" (rank {r})")).unwrap_or_default()
    ));
    let mut out = Vec::new();
    emit(&mut out, format, record, text);
    Ok(RunOutcome::ok(out))
}

/// Run a parsed command line; prints nothing, returns the output lines
/// and exit code.
pub fn run(cli: &Cli) -> Result<RunOutcome, CliError> {
    match &cli.command {
        Command::Verify { suite, trials } => cmd_verify(cli, suite, *trials, cli.format),
        command => {
            let inst = Instance::from_cli(cli)?;
            match command {
                Command::Report => cmd_report(&inst, cli.format),
                Command::Series => cmd_series(&inst, cli.format),
                Command::Bracket { derivation, class } => {
                    cmd_bracket(&inst, derivation, class, cli.format)
                }
                Command::Charp => cmd_charp(&inst, cli.format),
                Command::Verify { .. } => unreachable!(),
            }
        }
    }
}
