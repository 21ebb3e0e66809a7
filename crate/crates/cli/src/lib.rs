//! Report generation behind the `bicomplex` binary.
//!
//! [`run`] takes a parsed [`RunConfig`], writes the report to `out` and
//! diagnostics to `err`, and returns the process exit code.

use std::io::{self, Write};

use bicomplex::format::format_significant;
use bicomplex::{
    absolute_convergence_check, analyze_series, evaluate_product, log_bound_check, log_sum_equivalence,
    AbsoluteCheck, AnalysisConfig, Bicomplex, BranchIndex, Error, Expr, IdempotentPair, LogBound, LogSumEquivalence,
    ProductReport, ProductVerdict, SeriesReport, Terms, Verdict,
};
use serde::Serialize;

mod args;

pub use args::parse_args;

pub const EXIT_OK: i32 = 0;
pub const EXIT_UNRESOLVED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_EVAL: i32 = 3;

/// Significant digits in text reports.
pub const TEXT_DIGITS: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Eval,
    Series,
    Product,
    CheckBounds,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Eval => "eval",
            Command::Series => "series",
            Command::Product => "product",
            Command::CheckBounds => "check-bounds",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub expr: String,
    pub tol: f64,
    pub window: usize,
    pub max_terms: u64,
    pub output: OutputFormat,
    /// Branch for `log(...)` inside the expression; principal when unset.
    pub branch: Option<BranchIndex>,
    /// Index for `eval` and `check-bounds`.
    pub at: u64,
    /// Exit 1 unless the analysis resolves favourably.
    pub strict: bool,
}

impl RunConfig {
    pub fn new(command: Command, expr: impl Into<String>) -> Self {
        let d = AnalysisConfig::default();
        RunConfig {
            command,
            expr: expr.into(),
            tol: d.tol,
            window: d.window,
            max_terms: d.max_terms,
            output: OutputFormat::Text,
            branch: None,
            at: 1,
            strict: false,
        }
    }

    pub fn analysis(&self) -> AnalysisConfig {
        AnalysisConfig::new(self.tol, self.window, self.max_terms)
    }

    fn branch_or_principal(&self) -> BranchIndex {
        self.branch.unwrap_or(BranchIndex::PRINCIPAL)
    }
}

#[derive(Serialize)]
struct ConfigEcho {
    tol: f64,
    window: usize,
    max_terms: u64,
    branch: Option<BranchIndex>,
    #[serde(skip_serializing_if = "Option::is_none")]
    at: Option<u64>,
}

#[derive(Serialize)]
struct Envelope<'a, R: Serialize> {
    command: Command,
    expr: String,
    config: ConfigEcho,
    report: &'a R,
}

#[derive(Serialize)]
pub struct EvalReport {
    pub value: Bicomplex,
    pub idempotent: IdempotentPair,
}

/// `product` merges the three product analyses into one report.
#[derive(Serialize)]
pub struct ProductCommandReport {
    #[serde(flatten)]
    pub evaluation: ProductReport,
    /// Both absolute-convergence criteria agree, per the dedicated check.
    pub agree: bool,
    pub absolute_check: Option<AbsoluteCheck>,
    pub log_sum_equivalence: Option<LogSumEquivalence>,
}

#[derive(Serialize)]
pub struct BoundsReport {
    /// `EXPR(at) - 1`
    pub w: Bicomplex,
    pub precondition_ok: bool,
    #[serde(flatten)]
    pub bound: Option<LogBound>,
}

enum Failure {
    Usage(String),
    Eval(String),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Eval(format!("write failed: {e}"))
    }
}

/// Runs one command; returns the exit code.
pub fn run(cfg: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match dispatch(cfg, out) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Eval(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_EVAL
        }
    }
}

fn dispatch(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, Failure> {
    let expr = Expr::parse(&cfg.expr).map_err(|e| {
        let caret = format!("{}^", " ".repeat(e.offset));
        Failure::Usage(format!("cannot parse expression: {e}\n  {}\n  {caret}", cfg.expr))
    })?;
    if matches!(cfg.command, Command::Series | Command::Product) {
        cfg.analysis().validate().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    if cfg.at == 0 {
        return Err(Failure::Usage("--at must be at least 1".into()));
    }
    match cfg.command {
        Command::Eval => eval_command(cfg, &expr, out),
        Command::Series => series_command(cfg, &expr, out),
        Command::Product => product_command(cfg, &expr, out),
        Command::CheckBounds => bounds_command(cfg, &expr, out),
    }
}

fn eval_at(cfg: &RunConfig, expr: &Expr) -> Result<Bicomplex, Failure> {
    expr.eval(cfg.at, cfg.branch_or_principal())
        .map_err(|e| Failure::Eval(format!("term {}: {e}", cfg.at)))
}

fn check_terms(terms: &Terms) -> Result<(), Failure> {
    match terms.error() {
        Some(e) => Err(Failure::Eval(e.to_string())),
        None => Ok(()),
    }
}

fn write_json<R: Serialize>(cfg: &RunConfig, expr: &Expr, report: &R, out: &mut dyn Write) -> Result<(), Failure> {
    let at = matches!(cfg.command, Command::Eval | Command::CheckBounds).then_some(cfg.at);
    let env = Envelope {
        command: cfg.command,
        expr: expr.to_string(),
        config: ConfigEcho {
            tol: cfg.tol,
            window: cfg.window,
            max_terms: cfg.max_terms,
            branch: cfg.branch,
            at,
        },
        report,
    };
    serde_json::to_writer_pretty(&mut *out, &env).map_err(|e| Failure::Eval(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

/// Aligned `key  value` lines.
struct Text<'a> {
    out: &'a mut dyn Write,
}

impl Text<'_> {
    fn line(&mut self, key: &str, value: impl std::fmt::Display) -> io::Result<()> {
        writeln!(self.out, "{key:<24}{value}")
    }

    fn num(&mut self, key: &str, x: f64) -> io::Result<()> {
        self.line(key, format_significant(x, TEXT_DIGITS))
    }

    fn bc(&mut self, key: &str, w: Bicomplex) -> io::Result<()> {
        self.line(key, format!("{w:.TEXT_DIGITS$}"))
    }

    fn verdict(&mut self, key: &str, v: impl Serialize) -> io::Result<()> {
        self.line(key, snake(&v))
    }
}

fn snake(v: &impl Serialize) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".into(),
    }
}

fn eval_command(cfg: &RunConfig, expr: &Expr, out: &mut dyn Write) -> Result<i32, Failure> {
    let value = eval_at(cfg, expr)?;
    let report = EvalReport {
        value,
        idempotent: value.to_idempotent(),
    };
    match cfg.output {
        OutputFormat::Json => write_json(cfg, expr, &report, out)?,
        OutputFormat::Text => {
            let mut t = Text { out };
            t.bc("value", report.value)?;
            t.line("idempotent", format!("{:.TEXT_DIGITS$}", report.idempotent))?;
        }
    }
    Ok(EXIT_OK)
}

fn series_command(cfg: &RunConfig, expr: &Expr, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut terms = Terms::new(expr, cfg.branch_or_principal());
    let report = analyze_series(terms.by_ref(), cfg.analysis()).map_err(|e| Failure::Eval(e.to_string()))?;
    check_terms(&terms)?;
    match cfg.output {
        OutputFormat::Json => write_json(cfg, expr, &report, out)?,
        OutputFormat::Text => write_series_text(&mut Text { out }, expr, &report)?,
    }
    let resolved = report.verdict == Verdict::Converged;
    Ok(if cfg.strict && !resolved { EXIT_UNRESOLVED } else { EXIT_OK })
}

fn write_series_text(t: &mut Text, expr: &Expr, r: &SeriesReport) -> io::Result<()> {
    t.line("series", format!("sum {expr}"))?;
    t.verdict("verdict", r.verdict)?;
    t.line("terms_used", r.terms_used)?;
    t.bc("limit_estimate", r.limit_estimate)?;
    t.num("tail_delta", r.tail_delta)?;
    t.line("absolute", r.absolute)?;
    t.verdict("absolute_verdict", r.absolute_verdict)?;
    t.line(
        "component_verdicts",
        format!("{} | {}", snake(&r.component_verdicts[0]), snake(&r.component_verdicts[1])),
    )
}

fn product_command(cfg: &RunConfig, expr: &Expr, out: &mut dyn Write) -> Result<i32, Failure> {
    let branch = cfg.branch_or_principal();
    let mut terms = Terms::new(expr, branch);
    let evaluation = evaluate_product(terms.by_ref(), cfg.analysis()).map_err(|e| Failure::Eval(e.to_string()))?;
    check_terms(&terms)?;
    let singular = evaluation.verdict == ProductVerdict::SingularTerm;

    let (absolute_check, log_sum) = if singular {
        (None, None)
    } else {
        let a = absolute_convergence_check(Terms::new(expr, branch), cfg.analysis());
        let e = log_sum_equivalence(Terms::new(expr, branch), evaluation.terms_used);
        (a.ok(), e.ok())
    };
    let report = ProductCommandReport {
        agree: absolute_check.as_ref().is_some_and(|a| a.agree),
        evaluation,
        absolute_check,
        log_sum_equivalence: log_sum,
    };
    match cfg.output {
        OutputFormat::Json => write_json(cfg, expr, &report, out)?,
        OutputFormat::Text => write_product_text(&mut Text { out }, expr, &report)?,
    }
    if singular {
        return Ok(EXIT_EVAL);
    }
    let resolved = report.evaluation.verdict == ProductVerdict::ConvergedNonsingular;
    Ok(if cfg.strict && !resolved { EXIT_UNRESOLVED } else { EXIT_OK })
}

fn write_product_text(t: &mut Text, expr: &Expr, r: &ProductCommandReport) -> io::Result<()> {
    let e = &r.evaluation;
    t.line("product", format!("prod {expr}"))?;
    t.verdict("verdict", e.verdict)?;
    t.line("terms_used", e.terms_used)?;
    if let Some(k) = e.singular_index {
        t.line("singular_index", k)?;
    }
    t.bc("limit_estimate", e.limit_estimate)?;
    if let Some(x) = &e.extrapolation {
        t.bc("extrapolated_limit", x.limit)?;
        t.num("extrapolation_error", x.error_estimate)?;
    }
    t.bc("log_sum", e.log_sum)?;
    t.num("tail_delta", e.tail_delta)?;
    t.line("necessary_condition_ok", e.necessary_condition_ok)?;
    t.line("absolute", e.absolute)?;
    t.verdict("via_log_norms", e.via_log_norms)?;
    t.verdict("via_deviation_norms", e.via_deviation_norms)?;
    t.line("criteria_agreement", e.criteria_agreement)?;
    if let Some(a) = &r.absolute_check {
        t.line("agree", r.agree)?;
        if let Some(k) = a.hypothesis_violated_at {
            t.line("hypothesis_violated_at", k)?;
        }
    }
    if let Some(q) = &r.log_sum_equivalence {
        t.num("max_discrepancy", q.max_discrepancy)?;
        t.line("terms_compared", q.terms_compared)?;
        if let Some(l) = &q.lattice_offset {
            let (k1, k2) = l.nearest();
            t.line("lattice_offset", format!("({k1}, {k2})"))?;
        }
    }
    Ok(())
}

fn bounds_command(cfg: &RunConfig, expr: &Expr, out: &mut dyn Write) -> Result<i32, Failure> {
    let w = eval_at(cfg, expr)? - Bicomplex::ONE;
    let bound = match log_bound_check(w) {
        Ok(b) => Some(b),
        Err(Error::Precondition(_)) => None,
        Err(e) => return Err(Failure::Eval(e.to_string())),
    };
    let report = BoundsReport {
        w,
        precondition_ok: bound.is_some(),
        bound,
    };
    match cfg.output {
        OutputFormat::Json => write_json(cfg, expr, &report, out)?,
        OutputFormat::Text => {
            let mut t = Text { out };
            t.bc("w", report.w)?;
            t.num("norm", w.euclid())?;
            match &report.bound {
                None => t.line("precondition", "failed: ||w|| is not below 1/2")?,
                Some(b) => {
                    t.line("lower_ok", b.lower_ok)?;
                    t.line("upper_ok", b.upper_ok)?;
                    t.num("ratio", b.ratio)?;
                }
            }
        }
    }
    let fine = bound.is_some_and(|b| b.lower_ok && b.upper_ok);
    Ok(if cfg.strict && !fine { EXIT_UNRESOLVED } else { EXIT_OK })
}
