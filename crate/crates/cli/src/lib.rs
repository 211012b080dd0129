//! Command-line front end: polynomial tables, moments, verification suites,
//! numeric evaluation and basis transforms.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use qortho::analytic::{
    product_gf_check, quadrature_moment, weight_density, wrapped_gauss_moment, Measure, NumericConfig, ProductGf,
};
use qortho::families::{family_poly, FamilyId};
use qortho::qcore::{parse_poly, parse_scalar, Poly, QError, Scalar};
use qortho::suites::{run_suite, SuiteConfig, SuiteId, SuiteReport};
use qortho::transforms::{connection_check, inverse_pair_apply, to_basis, ConnectionId, Direction, PairId};
use qortho::umbral::{closed_moments, moments};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] qortho::Error),
    #[error(transparent)]
    Q(#[from] QError),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, CliError>;

/// Exit status plus everything destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
    Latex,
}

impl FromStr for Format {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(Format::Text),
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "latex" => Ok(Format::Latex),
            _ => Err(CliError::Usage(format!("unknown format '{s}' (expected json, csv, latex or text)"))),
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "qortho", version, about = "Exact q-polynomial families, moments and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print p_0 .. p_n of a family.
    Gen(GenArgs),
    /// Print Lambda(x^k) for k <= upto, next to the closed form when one exists.
    Moments(MomentArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Evaluate a numeric quantity: weight, circle_moment, wrapped_moment or product_gf.
    Eval(EvalArgs),
    /// Expand in a family basis, check a connection identity or apply an inverse pair.
    Transform(TransformArgs),
}

#[derive(Args, Debug)]
struct GenArgs {
    family_pos: Option<String>,
    n_pos: Option<u32>,
    format_pos: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    format: Option<String>,
    /// Rational value substituted for q.
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    /// Rational value substituted for s.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
}

#[derive(Args, Debug)]
struct MomentArgs {
    family_pos: Option<String>,
    upto_pos: Option<u32>,
    format_pos: Option<String>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    upto: Option<u32>,
    #[arg(long)]
    format: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    suite_pos: Option<String>,
    #[arg(long)]
    suite: Option<String>,
    #[arg(long)]
    upto: Option<u32>,
    /// Single value of q for the numeric checks, replacing the default 1/4, 1/2, 3/4.
    #[arg(long)]
    q: Option<String>,
    /// Tolerance overriding every numeric check's own bound.
    #[arg(long)]
    tol: Option<f64>,
    /// Number of factors kept in infinite products.
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct EvalArgs {
    kind_pos: Option<String>,
    #[arg(long)]
    kind: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// Measure for circle_moment (default qhermite_circle).
    #[arg(long)]
    measure: Option<String>,
    /// Generating function for product_gf: eq_5_10 (default), eq_6_3 or eq_6_2.
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    trunc: Option<usize>,
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct TransformArgs {
    /// to_basis, connection_check or inverse_pair.
    op: String,
    #[arg(long)]
    family: Option<String>,
    /// Polynomial in x, s to expand (to_basis).
    #[arg(long, allow_hyphen_values = true)]
    poly: Option<String>,
    /// Connection or pair identifier.
    #[arg(long)]
    id: Option<String>,
    #[arg(long)]
    n: Option<u32>,
    /// Comma-separated sequence (inverse_pair).
    #[arg(long, allow_hyphen_values = true)]
    seq: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// forward or backward.
    #[arg(long)]
    direction: Option<String>,
    #[arg(long)]
    format: Option<String>,
}

/// One polynomial in the machine-readable table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PolyRecord {
    pub family: String,
    pub n: u32,
    pub terms: Vec<TermRecord>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermRecord {
    pub x: u32,
    pub s: u32,
    pub coeff: String,
}

impl PolyRecord {
    pub fn new(family: FamilyId, n: u32, p: &Poly) -> PolyRecord {
        let terms = p.terms().map(|(&(x, s), c)| TermRecord { x, s, coeff: c.to_string() }).collect();
        PolyRecord { family: family.as_str().to_string(), n, terms, text: p.render() }
    }

    /// Rebuild the polynomial from its terms.
    pub fn poly(&self) -> Result<Poly> {
        let mut p = Poly::zero();
        for t in &self.terms {
            p = p + Poly::term(parse_scalar(&t.coeff)?, t.x, t.s);
        }
        Ok(p)
    }
}

/// Parse a `gen` JSON table and render it again.
pub fn regen_json(text: &str) -> Result<String> {
    let records: Vec<PolyRecord> = serde_json::from_str(text)?;
    let mut out = Vec::with_capacity(records.len());
    for r in &records {
        let family: FamilyId = r.family.parse()?;
        out.push(PolyRecord::new(family, r.n, &r.poly()?));
    }
    Ok(serde_json::to_string_pretty(&out)? + "\n")
}

fn pick<T>(flag: Option<T>, pos: Option<T>, what: &str) -> Result<T> {
    flag.or(pos).ok_or_else(|| CliError::Usage(format!("missing {what}")))
}

fn format_of(flag: Option<String>, pos: Option<String>, default: Format) -> Result<Format> {
    flag.or(pos).map_or(Ok(default), |f| f.parse())
}

fn exact_value(text: &str) -> Result<Scalar> {
    let v = parse_scalar(text).map_err(|e| CliError::Usage(format!("bad value '{text}': {e}")))?;
    if !v.is_constant() {
        return Err(CliError::Usage(format!("'{text}' is not a rational number")));
    }
    Ok(v)
}

fn real_value(text: &str) -> Result<f64> {
    if let Ok(x) = text.trim().parse::<f64>() {
        return Ok(x);
    }
    Ok(exact_value(text)?.eval_f64(1.0))
}

/// Substitute rational values for `s` and then `q` into every coefficient.
fn substitute(p: &Poly, q: Option<&Scalar>, s: Option<&Scalar>) -> Result<Poly> {
    let p = match s {
        Some(s) => p.subs_s(s),
        None => p.clone(),
    };
    match q.and_then(Scalar::to_rational) {
        Some(q) => Ok(p.try_map_scalars(|c| c.eval_q(&q).map(|r| Scalar::from_rational(&r)))?),
        None => Ok(p),
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn cmd_gen(a: GenArgs) -> Result<String> {
    let family: FamilyId = pick(a.family, a.family_pos, "family")?.parse()?;
    let n_max = pick(a.n, a.n_pos, "n")?;
    let format = format_of(a.format, a.format_pos, Format::Json)?;
    let q = a.q.as_deref().map(exact_value).transpose()?;
    let s = a.s.as_deref().map(exact_value).transpose()?;
    let rows = (0..=n_max)
        .map(|n| Ok((n, substitute(&family_poly(family, n), q.as_ref(), s.as_ref())?)))
        .collect::<Result<Vec<_>>>()?;
    let mut out = String::new();
    match format {
        Format::Json => {
            let records: Vec<_> = rows.iter().map(|(n, p)| PolyRecord::new(family, *n, p)).collect();
            out = serde_json::to_string_pretty(&records)? + "\n";
        }
        Format::Csv => {
            out.push_str("family,n,poly\n");
            for (n, p) in &rows {
                let _ = writeln!(out, "{family},{n},{}", csv_field(&p.render()));
            }
        }
        Format::Latex => {
            out.push_str("\\begin{align*}\n");
            for (n, p) in &rows {
                let _ = writeln!(out, "p_{{{n}}} &= {} \\\\", p.render_latex());
            }
            out.push_str("\\end{align*}\n");
        }
        Format::Text => {
            for (n, p) in &rows {
                let _ = writeln!(out, "{n}: {}", p.render());
            }
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct MomentRow {
    n: usize,
    value: String,
    closed: Option<String>,
    matches: Option<bool>,
}

fn cmd_moments(a: MomentArgs) -> Result<String> {
    let family: FamilyId = pick(a.family, a.family_pos, "family")?.parse()?;
    let upto = pick(a.upto, a.upto_pos, "upto")?;
    let format = format_of(a.format, a.format_pos, Format::Json)?;
    let q = a.q.as_deref().map(exact_value).transpose()?;
    let s = a.s.as_deref().map(exact_value).transpose()?;
    let lam = moments(family, upto as usize)?;
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for (n, m) in lam.moments.iter().enumerate() {
        let closed = closed_moments(family, n as u32).ok();
        let matches = closed.as_ref().map(|c| c == m);
        let value = substitute(m, q.as_ref(), s.as_ref())?;
        let closed = closed.map(|c| substitute(&c, q.as_ref(), s.as_ref())).transpose()?;
        rows.push(MomentRow { n, value: value.render(), closed: closed.as_ref().map(Poly::render), matches });
        values.push((value, closed));
    }
    let mut out = String::new();
    match format {
        Format::Json => {
            let doc = serde_json::json!({ "family": family.as_str(), "upto": upto, "moments": rows });
            out = serde_json::to_string_pretty(&doc)? + "\n";
        }
        Format::Csv => {
            out.push_str("n,value,closed,match\n");
            for r in &rows {
                let closed = r.closed.as_deref().map(csv_field).unwrap_or_default();
                let matches = r.matches.map(|m| m.to_string()).unwrap_or_default();
                let _ = writeln!(out, "{},{},{closed},{matches}", r.n, csv_field(&r.value));
            }
        }
        Format::Latex => {
            out.push_str("\\begin{align*}\n");
            for (n, (v, _)) in values.iter().enumerate() {
                let _ = writeln!(out, "\\Lambda(x^{{{n}}}) &= {} \\\\", v.render_latex());
            }
            out.push_str("\\end{align*}\n");
        }
        Format::Text => {
            for r in &rows {
                let tail = match (&r.closed, r.matches) {
                    (Some(c), Some(m)) => format!("  closed {c}  {}", if m { "match" } else { "MISMATCH" }),
                    _ => String::new(),
                };
                let _ = writeln!(out, "{}: {}{tail}", r.n, r.value);
            }
        }
    }
    Ok(out)
}

fn render_report(report: &SuiteReport, format: Format) -> Result<String> {
    let mut out = String::new();
    let status = |pass: bool| if pass { "PASS" } else { "FAIL" };
    match format {
        Format::Json => {
            let records: Vec<_> = report
                .records
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "id": r.id,
                        "tag": r.tag,
                        "status": status(r.pass),
                        "detail": r.detail,
                        "seconds": r.elapsed.as_secs_f64(),
                    })
                })
                .collect();
            let doc = serde_json::json!({
                "suite": report.suite.as_str(),
                "status": status(report.passed()),
                "checks": records,
            });
            out = serde_json::to_string_pretty(&doc)? + "\n";
        }
        Format::Csv => {
            out.push_str("id,tag,status,detail,seconds\n");
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{:.6}",
                    r.id,
                    r.tag,
                    status(r.pass),
                    csv_field(&r.detail),
                    r.elapsed.as_secs_f64()
                );
            }
        }
        Format::Latex => {
            out.push_str("\\begin{tabular}{lll}\n");
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "\\texttt{{{}}} & \\texttt{{{}}} & {} \\\\",
                    r.id.replace('_', "\\_"),
                    r.tag.replace('_', "\\_"),
                    status(r.pass)
                );
            }
            out.push_str("\\end{tabular}\n");
        }
        Format::Text => {
            for r in &report.records {
                let _ = writeln!(
                    out,
                    "{:<4} {:<28} {:<10} {:>9.3}ms  {}",
                    status(r.pass),
                    r.id,
                    r.tag,
                    r.elapsed.as_secs_f64() * 1e3,
                    r.detail
                );
            }
            let failed = report.failures().count();
            let _ = writeln!(
                out,
                "{}: {} ({} checks, {failed} failed)",
                report.suite,
                status(report.passed()),
                report.records.len()
            );
        }
    }
    Ok(out)
}

fn cmd_verify(a: VerifyArgs) -> Result<(String, bool)> {
    let suite: SuiteId = pick(a.suite, a.suite_pos, "suite")?.parse()?;
    let format = format_of(a.format, None, Format::Text)?;
    let mut cfg = SuiteConfig::default();
    if let Some(n) = a.upto {
        cfg.upto = n;
    }
    if let Some(q) = a.q.as_deref() {
        let q = real_value(q)?;
        NumericConfig::new(q)?;
        cfg.qs = vec![q];
    }
    if let Some(tol) = a.tol {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(CliError::Usage(format!("tolerance {tol} must be positive")));
        }
        cfg.tol = Some(tol);
    }
    if let Some(k) = a.trunc {
        if k == 0 {
            return Err(CliError::Usage("truncation must be at least 1".into()));
        }
        cfg.trunc = Some(k);
    }
    let report = run_suite(suite, &cfg);
    Ok((render_report(&report, format)?, report.passed()))
}

fn numeric_config(q: Option<&str>, tol: Option<f64>, trunc: Option<usize>) -> Result<NumericConfig> {
    let q = q.map_or(Ok(0.5), real_value)?;
    let mut cfg = NumericConfig::new(q)?;
    if let Some(tol) = tol {
        cfg = cfg.with_tol(tol)?;
    }
    if let Some(k) = trunc {
        cfg = cfg.with_truncation(k)?;
    }
    Ok(cfg)
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T> {
    v.ok_or_else(|| CliError::Usage(format!("--{flag} is required")))
}

fn cmd_eval(a: EvalArgs) -> Result<String> {
    let kind = pick(a.kind, a.kind_pos, "kind")?;
    let format = format_of(a.format, None, Format::Text)?;
    let cfg = numeric_config(a.q.as_deref(), a.tol, a.trunc)?;
    let mut fields = vec![("kind", serde_json::json!(kind)), ("q", serde_json::json!(cfg.q))];
    let value = match kind.as_str() {
        "weight" => {
            let x = need(a.x, "x")?;
            fields.push(("x", x.into()));
            weight_density(x, &cfg)?
        }
        "circle_moment" => {
            let n = need(a.n, "n")?;
            let n = u32::try_from(n).map_err(|_| CliError::Usage(format!("n = {n} must be nonnegative")))?;
            let measure: Measure = a.measure.as_deref().unwrap_or("qhermite_circle").parse()?;
            fields.push(("n", n.into()));
            quadrature_moment(measure, n, &cfg)?
        }
        "wrapped_moment" => {
            let n = need(a.n, "n")?;
            fields.push(("n", n.into()));
            wrapped_gauss_moment(n, &cfg)?
        }
        "product_gf" => {
            let which = match a.id.as_deref().unwrap_or("eq_5_10") {
                "eq_5_10" => ProductGf::Eq5_10 { x: need(a.x, "x")?, s: a.s.unwrap_or(1.0), t: need(a.t, "t")? },
                "eq_6_3" => ProductGf::Eq6_3 { theta: need(a.theta, "theta")?, t: need(a.t, "t")? },
                "eq_6_2" => {
                    let n = need(a.n, "n")?;
                    let n = u32::try_from(n).map_err(|_| CliError::Usage(format!("n = {n} must be nonnegative")))?;
                    ProductGf::Eq6_2 { n, theta: need(a.theta, "theta")? }
                }
                other => return Err(CliError::Usage(format!("unknown generating function '{other}'"))),
            };
            let check = product_gf_check(which, &cfg)?;
            fields.push(("lhs", check.lhs.into()));
            fields.push(("rhs", check.rhs.into()));
            check.residual
        }
        other => {
            return Err(CliError::Usage(format!(
                "unknown eval kind '{other}' (expected weight, circle_moment, wrapped_moment or product_gf)"
            )))
        }
    };
    fields.push(("value", value.into()));
    Ok(match format {
        Format::Json => {
            let doc: serde_json::Map<_, _> = fields.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
            serde_json::to_string_pretty(&doc)? + "\n"
        }
        Format::Csv => {
            let head: Vec<_> = fields.iter().map(|(k, _)| *k).collect();
            let row: Vec<_> = fields.iter().map(|(_, v)| csv_field(&v.to_string().replace('"', ""))).collect();
            format!("{}\n{}\n", head.join(","), row.join(","))
        }
        Format::Latex | Format::Text if kind == "product_gf" => {
            let get = |k: &str| fields.iter().find(|(n, _)| *n == k).map(|(_, v)| v.clone()).unwrap_or_default();
            format!("lhs {}\nrhs {}\nresidual {value:.3e}\n", get("lhs"), get("rhs"))
        }
        Format::Latex | Format::Text => format!("{value:.15}\n"),
    })
}

fn cmd_transform(a: TransformArgs) -> Result<(String, bool)> {
    let format = format_of(a.format, None, Format::Text)?;
    match a.op.as_str() {
        "to_basis" => {
            let family: FamilyId = need(a.family, "family")?.parse()?;
            let p = parse_poly(&need(a.poly, "poly")?)?;
            let coeffs = to_basis(&p, family)?;
            let texts: Vec<String> = coeffs.iter().map(Poly::render).collect();
            let out = match format {
                Format::Json => {
                    let doc = serde_json::json!({ "family": family.as_str(), "poly": p.render(), "coeffs": texts });
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
                Format::Csv => {
                    let mut out = String::from("k,coeff\n");
                    for (k, c) in texts.iter().enumerate() {
                        let _ = writeln!(out, "{k},{}", csv_field(c));
                    }
                    out
                }
                Format::Latex => {
                    let terms: Vec<_> = coeffs
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(k, c)| format!("\\left({}\\right) p_{{{k}}}", c.render_latex()))
                        .collect();
                    format!("{} = {}\n", p.render_latex(), if terms.is_empty() { "0".into() } else { terms.join(" + ") })
                }
                Format::Text => texts.iter().enumerate().map(|(k, c)| format!("{k}: {c}\n")).collect(),
            };
            Ok((out, true))
        }
        "connection_check" => {
            let id: ConnectionId = need(a.id, "id")?.parse()?;
            let v = connection_check(id, need(a.n, "n")?);
            let out = match format {
                Format::Json => {
                    let doc = serde_json::json!({
                        "id": id.as_str(),
                        "n": v.n,
                        "lhs": v.lhs.render(),
                        "rhs": v.rhs.render(),
                        "residual": v.residual.render(),
                        "holds": v.holds(),
                    });
                    serde_json::to_string_pretty(&doc)? + "\n"
                }
                Format::Csv => format!(
                    "id,n,lhs,rhs,residual,holds\n{id},{},{},{},{},{}\n",
                    v.n,
                    csv_field(&v.lhs.render()),
                    csv_field(&v.rhs.render()),
                    csv_field(&v.residual.render()),
                    v.holds()
                ),
                Format::Latex => format!("{} = {}\n", v.lhs.render_latex(), v.rhs.render_latex()),
                Format::Text => format!(
                    "lhs: {}\nrhs: {}\nresidual: {}\n{}\n",
                    v.lhs.render(),
                    v.rhs.render(),
                    v.residual.render(),
                    if v.holds() { "PASS" } else { "FAIL" }
                ),
            };
            Ok((out, v.holds()))
        }
        "inverse_pair" => {
            let id: PairId = need(a.id, "id")?.parse()?;
            let s = a.s.as_deref().map_or(Ok(Scalar::one()), exact_value)?;
            let direction = match a.direction.as_deref().unwrap_or("forward") {
                "forward" => Direction::Forward,
                "backward" => Direction::Backward,
                other => return Err(CliError::Usage(format!("unknown direction '{other}'"))),
            };
            let seq = need(a.seq, "seq")?
                .split(',')
                .map(|t| parse_scalar(t.trim()).map_err(CliError::from))
                .collect::<Result<Vec<_>>>()?;
            let texts: Vec<String> = inverse_pair_apply(id, &s, &seq, direction)?.iter().map(Scalar::to_string).collect();
            let out = match format {
                Format::Json => serde_json::to_string_pretty(&serde_json::json!({ "id": id.as_str(), "values": texts }))? + "\n",
                Format::Csv => format!("{}\n", texts.iter().map(|t| csv_field(t)).collect::<Vec<_>>().join(",")),
                Format::Latex | Format::Text => format!("[{}]\n", texts.join(", ")),
            };
            Ok((out, true))
        }
        other => Err(CliError::Usage(format!(
            "unknown transform '{other}' (expected to_basis, connection_check or inverse_pair)"
        ))),
    }
}

fn dispatch(cli: Cli) -> Result<(String, bool)> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a).map(|s| (s, true)),
        Command::Moments(a) => cmd_moments(a).map(|s| (s, true)),
        Command::Verify(a) => cmd_verify(a),
        Command::Eval(a) => cmd_eval(a).map(|s| (s, true)),
        Command::Transform(a) => cmd_transform(a),
    }
}

/// Run the command line; 0 on success, 1 when a verification fails, 2 on usage or domain errors.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| dispatch(cli)));
    match result {
        Ok(Ok((stdout, pass))) => Outcome { code: if pass { 0 } else { 1 }, stdout, stderr: String::new() },
        Ok(Err(e)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {e}\n") },
        Err(_) => Outcome { code: 2, stdout: String::new(), stderr: "error: internal failure\n".into() },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let out = run(std::iter::once("qortho").chain(args.iter().copied()));
        assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
        out.stdout
    }

    #[test]
    fn formats_parse() {
        assert_eq!("latex".parse::<Format>().unwrap(), Format::Latex);
        assert!("yaml".parse::<Format>().is_err());
    }

    #[test]
    fn substitution_needs_even_powers() {
        let p = parse_poly("v*x + q").unwrap();
        let q = exact_value("1/4").unwrap();
        assert!(substitute(&p, Some(&q), None).is_err());
        let p = parse_poly("q*x + s").unwrap();
        let s = exact_value("-2").unwrap();
        assert_eq!(substitute(&p, Some(&q), Some(&s)).unwrap(), parse_poly("x/4 - 2").unwrap());
    }

    #[test]
    fn json_regenerates() {
        let out = ok(&["gen", "q_hermite", "5", "json"]);
        assert_eq!(regen_json(&out).unwrap(), out);
    }

    #[test]
    fn csv_quotes_when_needed() {
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("x^2"), "x^2");
    }

    #[test]
    fn numbers_accept_fractions_and_decimals() {
        assert_eq!(real_value("1/2").unwrap(), 0.5);
        assert_eq!(real_value("0.25").unwrap(), 0.25);
        assert!(real_value("x").is_err());
    }
}
