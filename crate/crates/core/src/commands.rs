//! The command layer behind the `hecke` binary: configuration, report types
//! and their text, CSV and JSON renderings.
//!
//! Every command returns an [`Outcome`] holding the rendered output and the
//! process exit code (`0` success, `2` computation-domain error, `3`
//! certification failure).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::str::FromStr;

use rug::{Complex, Float};
use serde::{Deserialize, Serialize};

use crate::bounds::{BoundFactors, ErrorBudget, DEFAULT_N_MAX};
use crate::cache::ZetaCache;
use crate::error::{Error, Result};
use crate::matrix::{f_n_with_cache, GroupParam};
use crate::precision::{format_fixed, format_sci, format_truncated, parse_real, PrecisionContext, DEFAULT_GUARD_BITS};
use crate::roots::{bisect_delta_capped, hausdorff_table_capped, RootEnclosure};
use crate::spectral::{rank_analysis, ruelle_at_zero, vanishing_order_probe, ProbeReport, RankReport};

/// Tag carried by every JSON document.
pub const SCHEMA: &str = "hecke-zeta/1";

/// The parameters of Table 1.
pub const TABLE_WS: [&str; 9] = ["3", "4", "5", "6", "8", "10", "16", "40", "100"];

pub const DEFAULT_RUELLE_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" => Ok(Self::Text),
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Parse(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    /// Decimal or symbolic (`2pi`) Hecke parameter.
    pub w: String,
    pub digits: u32,
    pub n_override: Option<usize>,
    pub precision_bits: Option<u32>,
    pub format: OutputFormat,
    pub cache_path: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            w: "3".into(),
            digits: 20,
            n_override: None,
            precision_bits: None,
            format: OutputFormat::Text,
            cache_path: None,
        }
    }
}

impl RunConfig {
    /// The working context: `digits + 10` decimal digits plus guard bits,
    /// unless an explicit precision is given.
    pub fn context(&self) -> Result<PrecisionContext> {
        if self.digits == 0 {
            return Err(Error::Domain("digits must be at least 1".into()));
        }
        match self.precision_bits {
            Some(bits) => PrecisionContext::with_working_bits(self.digits, DEFAULT_GUARD_BITS, bits),
            None => Ok(PrecisionContext::for_digits(self.digits + 10)),
        }
    }

    fn bisection_context(&self) -> Result<PrecisionContext> {
        match self.precision_bits {
            Some(bits) => PrecisionContext::with_working_bits(self.digits, DEFAULT_GUARD_BITS, bits),
            None => Ok(PrecisionContext::for_bisection(self.digits)),
        }
    }

    pub fn group(&self, ctx: &PrecisionContext) -> Result<GroupParam> {
        GroupParam::parse(&self.w, ctx.working_bits())
    }

    fn open_cache(&self) -> Result<Option<ZetaCache>> {
        self.cache_path.as_ref().map(ZetaCache::open).transpose()
    }
}

/// Rendered output and exit code of one command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorReport {
    pub kind: String,
    pub message: String,
    pub exit_code: i32,
}

impl From<&Error> for ErrorReport {
    fn from(e: &Error) -> Self {
        Self {
            kind: e.kind().into(),
            message: e.to_string(),
            exit_code: e.exit_code(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorDocument {
    pub schema: String,
    pub command: String,
    pub error: ErrorReport,
}

/// `F_N(s)` and its certified distance to `Z(s)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub schema: String,
    pub w: String,
    pub s_re: String,
    pub s_im: String,
    pub n: usize,
    pub digits: u32,
    pub working_bits: u32,
    pub value_re: String,
    pub value_im: String,
    pub bound: String,
    pub budget: ErrorBudget,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionRow {
    pub w: String,
    /// Common truncation of both endpoints to `digits` places.
    pub delta: Option<String>,
    pub lo: Option<String>,
    pub hi: Option<String>,
    pub width: Option<String>,
    pub certified_digits: Option<u32>,
    pub n_lo: Option<usize>,
    pub n_hi: Option<usize>,
    pub enclosure: Option<RootEnclosure>,
    pub error: Option<ErrorReport>,
}

impl DimensionRow {
    fn from_result(w: &GroupParam, digits: u32, result: &Result<RootEnclosure>) -> Self {
        match result {
            Ok(enc) => Self {
                w: w.label().into(),
                delta: enc.truncated(digits),
                lo: Some(format_truncated(&enc.lo, digits + 5)),
                hi: Some(format_truncated(&enc.hi, digits + 5)),
                width: Some(format_sci(&enc.width(), 3)),
                certified_digits: Some(enc.digits),
                n_lo: Some(enc.lo_cert.n),
                n_hi: Some(enc.hi_cert.n),
                enclosure: Some(enc.clone()),
                error: None,
            },
            Err(e) => Self {
                w: w.label().into(),
                delta: None,
                lo: None,
                hi: None,
                width: None,
                certified_digits: None,
                n_lo: None,
                n_hi: None,
                enclosure: None,
                error: Some(e.into()),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimensionTable {
    pub schema: String,
    pub digits: u32,
    pub working_bits: u32,
    pub rows: Vec<DimensionRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuelleSummary {
    pub schema: String,
    pub w: String,
    pub n: usize,
    pub digits: u32,
    pub f0: String,
    pub f1: String,
    pub ratio: String,
    pub defect: String,
    pub tolerance: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrivialSummary {
    pub schema: String,
    pub w: String,
    pub rank: RankReport,
    pub probe: Option<ProbeReport>,
    pub probe_error: Option<ErrorReport>,
    pub holds: bool,
}

fn finish<T: Serialize>(
    command: &str,
    format: OutputFormat,
    result: Result<(T, i32)>,
    text: impl FnOnce(&T) -> String,
    csv: impl FnOnce(&T) -> String,
) -> Outcome {
    match result {
        Ok((report, exit_code)) => {
            let stdout = match format {
                OutputFormat::Text => text(&report),
                OutputFormat::Csv => csv(&report),
                OutputFormat::Json => {
                    let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
                    s.push('\n');
                    s
                }
            };
            Outcome {
                stdout,
                stderr: String::new(),
                exit_code,
            }
        }
        Err(e) => error_outcome(command, format, &e),
    }
}

/// Diagnostic for a failed command; JSON mode prints an error document.
pub fn error_outcome(command: &str, format: OutputFormat, e: &Error) -> Outcome {
    let (stdout, stderr) = if format == OutputFormat::Json {
        let doc = ErrorDocument {
            schema: SCHEMA.into(),
            command: command.into(),
            error: e.into(),
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("error serializes");
        s.push('\n');
        (s, String::new())
    } else {
        (String::new(), format!("error ({}): {e}\n", e.kind()))
    };
    Outcome {
        stdout,
        stderr,
        exit_code: e.exit_code(),
    }
}

/// Parses `re,im` (or a bare real part).
pub fn parse_point(text: &str, bits: u32) -> Result<(Complex, String, String)> {
    let (re, im) = match text.split_once(',') {
        Some((re, im)) => (re.trim(), im.trim()),
        None => (text.trim(), "0"),
    };
    let z = Complex::with_val(bits, (parse_real(re, bits)?, parse_real(im, bits)?));
    Ok((z, re.to_string(), im.to_string()))
}

pub fn cmd_eval(config: &RunConfig, s_text: &str) -> Outcome {
    finish(
        "eval",
        config.format,
        eval_report(config, s_text).map(|r| (r, 0)),
        eval_text,
        eval_csv,
    )
}

fn eval_report(config: &RunConfig, s_text: &str) -> Result<EvalReport> {
    let ctx = config.context()?;
    let w = config.group(&ctx)?;
    let (s, s_re, s_im) = parse_point(s_text, ctx.working_bits())?;
    let factors = BoundFactors::new(&s, &w, &ctx)?;
    let n = match config.n_override {
        Some(n) => n,
        None => {
            let eps = Float::with_val(ctx.working_bits(), Float::i_pow_u(10, config.digits)).recip();
            factors.choose_n(&eps, DEFAULT_N_MAX)?
        }
    };
    let cache = config.open_cache()?;
    let value = f_n_with_cache(&s, n, &w, &ctx, cache.as_ref())?.value;
    if let Some(c) = &cache {
        c.persist()?;
    }
    let budget = factors.budget(n);
    Ok(EvalReport {
        schema: SCHEMA.into(),
        w: w.label().into(),
        s_re,
        s_im,
        n,
        digits: config.digits,
        working_bits: ctx.working_bits(),
        value_re: format_fixed(value.real(), config.digits),
        value_im: format_fixed(value.imag(), config.digits),
        bound: format_sci(&budget.total, 6),
        budget,
    })
}

fn eval_text(r: &EvalReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "w            {}", r.w);
    let _ = writeln!(out, "s            {} + {} i", r.s_re, r.s_im);
    let _ = writeln!(out, "N            {}", r.n);
    let _ = writeln!(out, "precision    {} bits", r.working_bits);
    let _ = writeln!(out, "Re F_N(s)    {}", r.value_re);
    let _ = writeln!(out, "Im F_N(s)    {}", r.value_im);
    let _ = writeln!(out, "|Z - F_N| <= {}", r.bound);
    let _ = writeln!(out, "  P_N        {}", format_sci(&r.budget.p_n, 6));
    let _ = writeln!(out, "  Q          {}", format_sci(&r.budget.q, 6));
    let _ = writeln!(out, "  C          {}", format_sci(&r.budget.c.value, 6));
    out
}

/// Columns: `w,s_re,s_im,n,value_re,value_im,bound`.
fn eval_csv(r: &EvalReport) -> String {
    format!(
        "w,s_re,s_im,n,value_re,value_im,bound\n{},{},{},{},{},{},{}\n",
        r.w, r.s_re, r.s_im, r.n, r.value_re, r.value_im, r.bound
    )
}

/// Dimension of one parameter (`hausdorff`).
pub fn cmd_hausdorff(config: &RunConfig) -> Outcome {
    let result = dimension_table(config, std::slice::from_ref(&config.w));
    finish("hausdorff", config.format, result, table_text, table_csv)
}

/// Dimensions of several parameters (`table`), Table 1 by default.
pub fn cmd_table(config: &RunConfig, ws: &[String]) -> Outcome {
    let ws: Vec<String> = if ws.is_empty() {
        TABLE_WS.iter().map(|s| s.to_string()).collect()
    } else {
        ws.to_vec()
    };
    finish(
        "table",
        config.format,
        dimension_table(config, &ws),
        table_text,
        table_csv,
    )
}

fn dimension_table(config: &RunConfig, ws: &[String]) -> Result<(DimensionTable, i32)> {
    let ctx = config.bisection_context()?;
    let groups = ws
        .iter()
        .map(|w| GroupParam::parse(w, ctx.working_bits()))
        .collect::<Result<Vec<_>>>()?;
    let n_max = config.n_override.unwrap_or(DEFAULT_N_MAX);
    let rows: Vec<DimensionRow> = if groups.len() == 1 {
        let r = bisect_delta_capped(&groups[0], config.digits, &ctx, n_max);
        vec![DimensionRow::from_result(&groups[0], config.digits, &r)]
    } else {
        hausdorff_table_capped(&groups, config.digits, &ctx, n_max)
            .iter()
            .map(|row| DimensionRow::from_result(&row.w, config.digits, &row.result))
            .collect()
    };
    let exit = rows
        .iter()
        .filter_map(|r| r.error.as_ref().map(|e| e.exit_code))
        .max()
        .unwrap_or(0);
    Ok((
        DimensionTable {
            schema: SCHEMA.into(),
            digits: config.digits,
            working_bits: ctx.working_bits(),
            rows,
        },
        exit,
    ))
}

fn table_text(t: &DimensionTable) -> String {
    let mut out = String::new();
    let width = t.digits as usize + 2;
    let _ = writeln!(out, "{:>6}  {:<width$}  {:>5}  {:>5}", "w", "delta", "N_lo", "N_hi");
    for r in &t.rows {
        match (&r.delta, &r.error) {
            (_, Some(e)) => {
                let _ = writeln!(out, "{:>6}  FAILED ({}): {}", r.w, e.kind, e.message);
            }
            (delta, None) => {
                let shown = delta.clone().unwrap_or_else(|| {
                    format!(
                        "[{}, {}]",
                        r.lo.as_deref().unwrap_or("?"),
                        r.hi.as_deref().unwrap_or("?")
                    )
                });
                let _ = writeln!(
                    out,
                    "{:>6}  {:<width$}  {:>5}  {:>5}",
                    r.w,
                    shown,
                    r.n_lo.unwrap_or(0),
                    r.n_hi.unwrap_or(0)
                );
            }
        }
    }
    out
}

/// Columns: `w,delta,lo,hi,width,certified_digits,n_lo,n_hi,error`.
fn table_csv(t: &DimensionTable) -> String {
    let mut out = String::from("w,delta,lo,hi,width,certified_digits,n_lo,n_hi,error\n");
    for r in &t.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.w,
            r.delta.as_deref().unwrap_or(""),
            r.lo.as_deref().unwrap_or(""),
            r.hi.as_deref().unwrap_or(""),
            r.width.as_deref().unwrap_or(""),
            r.certified_digits.map(|d| d.to_string()).unwrap_or_default(),
            r.n_lo.map(|d| d.to_string()).unwrap_or_default(),
            r.n_hi.map(|d| d.to_string()).unwrap_or_default(),
            r.error.as_ref().map(|e| e.kind.as_str()).unwrap_or(""),
        );
    }
    out
}

pub fn cmd_ruelle(config: &RunConfig) -> Outcome {
    finish("ruelle", config.format, ruelle_summary(config), ruelle_text, ruelle_csv)
}

fn ruelle_summary(config: &RunConfig) -> Result<(RuelleSummary, i32)> {
    let ctx = config.context()?;
    let w = config.group(&ctx)?;
    let n = config.n_override.unwrap_or(DEFAULT_RUELLE_N);
    let r = ruelle_at_zero(&w, n, &ctx)?;
    let holds = r.holds();
    let d = config.digits;
    Ok((
        RuelleSummary {
            schema: SCHEMA.into(),
            w: w.label().into(),
            n,
            digits: d,
            f0: format_fixed(&r.f0, d),
            f1: format_fixed(&r.f1, d),
            ratio: format_fixed(&r.ratio, d),
            defect: format_sci(&r.defect, 3),
            tolerance: format_sci(&r.tolerance, 3),
            holds,
        },
        if holds { 0 } else { 3 },
    ))
}

fn ruelle_text(r: &RuelleSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "w                {}", r.w);
    let _ = writeln!(out, "N                {}", r.n);
    let _ = writeln!(out, "F_N(0)           {}", r.f0);
    let _ = writeln!(out, "F_(N-1)(1)       {}", r.f1);
    let _ = writeln!(out, "R(0) estimate    {}", r.ratio);
    let _ = writeln!(out, "defect           {} (tolerance {})", r.defect, r.tolerance);
    let _ = writeln!(out, "identity holds   {}", r.holds);
    out
}

/// Columns: `w,n,f0,f1,ratio,defect,tolerance,holds`.
fn ruelle_csv(r: &RuelleSummary) -> String {
    format!(
        "w,n,f0,f1,ratio,defect,tolerance,holds\n{},{},{},{},{},{},{},{}\n",
        r.w, r.n, r.f0, r.f1, r.ratio, r.defect, r.tolerance, r.holds
    )
}

pub fn cmd_trivial(config: &RunConfig, m: u32) -> Outcome {
    finish(
        "trivial",
        config.format,
        trivial_summary(config, m),
        trivial_text,
        trivial_csv,
    )
}

fn trivial_summary(config: &RunConfig, m: u32) -> Result<(TrivialSummary, i32)> {
    let ctx = config.context()?;
    let w = config.group(&ctx)?;
    let rank = rank_analysis(m, &w, &ctx)?;
    let (probe, probe_error) = match vanishing_order_probe(m, &w, &ctx) {
        Ok(p) => (Some(p), None),
        Err(e) => (None, Some(ErrorReport::from(&e))),
    };
    let holds = rank.holds() && probe.as_ref().is_some_and(ProbeReport::within_bounds);
    Ok((
        TrivialSummary {
            schema: SCHEMA.into(),
            w: w.label().into(),
            rank,
            probe,
            probe_error,
            holds,
        },
        if holds { 0 } else { 3 },
    ))
}

fn trivial_text(t: &TrivialSummary) -> String {
    let r = &t.rank;
    let mut out = String::new();
    let _ = writeln!(out, "w                 {}", t.w);
    let _ = writeln!(out, "m                 {}", r.m);
    let _ = writeln!(
        out,
        "rank of 1 - U(0)  {} (predicted {})",
        r.observed_rank, r.predicted_rank
    );
    let _ = writeln!(
        out,
        "support pattern   {}",
        if r.pattern_ok { "ok" } else { "mismatch" }
    );
    let _ = writeln!(
        out,
        "order of zero     between {} and {}",
        r.degree_lower, r.degree_upper
    );
    match (&t.probe, &t.probe_error) {
        (Some(p), _) => {
            let _ = writeln!(
                out,
                "probe slope       {:.4} (heuristic, not certified)",
                p.slope_estimate
            );
        }
        (None, Some(e)) => {
            let _ = writeln!(out, "probe             failed: {}", e.message);
        }
        (None, None) => {}
    }
    out
}

/// Columns: `w,m,observed_rank,predicted_rank,degree_lower,degree_upper,pattern_ok,probe_slope`.
fn trivial_csv(t: &TrivialSummary) -> String {
    let r = &t.rank;
    format!(
        "w,m,observed_rank,predicted_rank,degree_lower,degree_upper,pattern_ok,probe_slope\n{},{},{},{},{},{},{},{}\n",
        t.w,
        r.m,
        r.observed_rank,
        r.predicted_rank,
        r.degree_lower,
        r.degree_upper,
        r.pattern_ok,
        t.probe
            .as_ref()
            .map(|p| format!("{:.6}", p.slope_estimate))
            .unwrap_or_default()
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(format: OutputFormat) -> RunConfig {
        RunConfig {
            digits: 15,
            format,
            ..RunConfig::default()
        }
    }

    #[test]
    fn formats_parse() {
        assert_eq!("JSON".parse::<OutputFormat>().unwrap(), OutputFormat::Json);
        assert!("yaml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn eval_closed_form() {
        let mut c = config(OutputFormat::Text);
        c.n_override = Some(1);
        let out = cmd_eval(&c, "1,0");
        assert_eq!(out.exit_code, 0);
        // 1 - π²/27
        assert!(out.stdout.contains("0.634459096255950"), "{}", out.stdout);
    }

    #[test]
    fn eval_at_excluded_point() {
        let out = cmd_eval(&config(OutputFormat::Json), "0.5,0");
        assert_eq!(out.exit_code, 2);
        let doc: ErrorDocument = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(doc.error.kind, "pole_proximity");
        assert_eq!(doc.schema, SCHEMA);
    }

    #[test]
    fn bad_w_is_a_domain_error() {
        let mut c = config(OutputFormat::Text);
        c.w = "2".into();
        let out = cmd_ruelle(&c);
        assert_eq!(out.exit_code, 2);
        assert!(out.stderr.contains("w > 2"));
    }

    #[test]
    fn json_round_trips() {
        let mut c = config(OutputFormat::Json);
        c.n_override = Some(12);
        let out = cmd_eval(&c, "0.3,2");
        let r: EvalReport = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", out.stdout);

        let out = cmd_trivial(&c, 2);
        let t: TrivialSummary = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(t.rank.observed_rank, 3);
    }

    #[test]
    fn csv_has_header_and_row() {
        let out = cmd_ruelle(&config(OutputFormat::Csv));
        let lines: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[0].starts_with("w,n,f0"));
        assert!(lines[1].ends_with(",true"));
    }
}
