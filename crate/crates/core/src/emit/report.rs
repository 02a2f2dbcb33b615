//! Convergence tables for the five π constructions, with the two classical
//! rational baselines.

use std::fmt;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use super::format::sig15;
use crate::error::{Error, Result};
use crate::identities::{quadrant_secant_product, tan_series, Depth};
use crate::numerics::{Angle, Extended, Mode, PrecisionContext, Real};
use crate::sequences::{closed_form_term, error_model, run_iteration, trig_step, PolygonStep};

/// Extra decimal digits carried by the reference π beyond the context.
const REFERENCE_GUARD_DIGITS: u32 = 10;
/// The reference π never drops below this many digits, even in native mode.
const REFERENCE_MIN_DIGITS: u32 = 30;

pub const CSV_HEADER: [&str; 5] = ["method", "m", "estimate", "abs_error", "error_ratio"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
#[value(rename_all = "snake_case")]
pub enum Method {
    /// `4/t_m` from the apposition recurrence.
    Radical,
    /// `4/t_m` with `t_m` from the cotangent closed form.
    Cotangent,
    /// `4/r_m` from perimeter-preserving polygon doubling, starting at the square.
    TrigStep,
    /// `4/S_m` with `S_m` the tangent series at `π/4`.
    TanSeries,
    /// Twice the quadrant secant product.
    SecantProduct,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Radical,
        Method::Cotangent,
        Method::TrigStep,
        Method::TanSeries,
        Method::SecantProduct,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Radical => "radical",
            Method::Cotangent => "cotangent",
            Method::TrigStep => "trig_step",
            Method::TanSeries => "tan_series",
            Method::SecantProduct => "secant_product",
        }
    }
}

impl Method {
    /// Leading-order `|estimate − π|` after `m` steps.
    pub fn error_model(self, m: u32) -> f64 {
        match self {
            // 2^(m+1) sin(π/2^(m+1)) falls short by π³/(24·4^m)
            Method::SecantProduct => 2.0 * error_model(m as usize),
            _ => error_model(m as usize),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub method: Method,
    pub m: u32,
    pub estimate: f64,
    pub abs_error: f64,
    /// `abs_error / previous abs_error`; absent at `m = 1` and after an exact hit.
    pub error_ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Baseline {
    pub name: &'static str,
    pub numerator: u32,
    pub denominator: u32,
    pub estimate: f64,
    pub abs_error: f64,
    /// Smallest `m` whose radical estimate beats this baseline.
    pub radical_crossing: Option<u32>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportContext {
    pub mode: Mode,
    pub decimal_digits: Option<u32>,
    pub unit_roundoff: f64,
    pub m_max: u32,
    pub reference_pi: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub context: ReportContext,
    pub rows: Vec<ReportRow>,
    pub baselines: Vec<Baseline>,
}

const BASELINES: [(&str, u32, u32); 2] = [("archimedes_22_7", 22, 7), ("metius_355_113", 355, 113)];

/// π from the secant product of half-angle radicals:
/// `c₁ = √½`, `c_{k+1} = √((1 + c_k)/2)`, `π = 2 Π 1/c_k`.
///
/// Computed in extended arithmetic at the context's digits plus a guard, so
/// it shares nothing with the methods being tabulated.
pub fn reference_pi(ctx: &PrecisionContext) -> Extended {
    let digits =
        ctx.decimal_digits().unwrap_or(0).max(REFERENCE_MIN_DIGITS) + REFERENCE_GUARD_DIGITS;
    let rctx = PrecisionContext::extended(digits).expect("reference digit count is in range");
    let half = Extended::from_f64(0.5, &rctx);
    let one = Extended::from_f64(1.0, &rctx);
    // truncation error is about (π/2^(n+1))²/6 relative
    let steps = rctx.binary_precision() / 2 + 4;
    let mut c = half.sqrt();
    let mut product = one.clone() / c.clone();
    for _ in 1..steps {
        c = ((one.clone() + c) * half.clone()).sqrt();
        product = product / c.clone();
    }
    product.scale_pow2(1)
}

/// Estimates of π for `m = 1..=m_max`.
pub fn method_estimates<R: Real>(
    method: Method,
    m_max: u32,
    ctx: &PrecisionContext,
) -> Result<Vec<R>> {
    let one = R::from_f64(1.0, ctx);
    let four = R::from_f64(4.0, ctx);
    let mut out = Vec::with_capacity(m_max as usize);
    match method {
        Method::Radical => {
            let state = run_iteration(&one, m_max as usize, ctx)?;
            let terms = state.terms();
            for m in 1..=m_max as usize {
                // past the precision floor the abscissa no longer moves
                let t = &terms[m.min(terms.len() - 1)];
                out.push(four.clone() / t.clone());
            }
        }
        Method::Cotangent => {
            for m in 1..=m_max {
                out.push(four.clone() / closed_form_term(m, &one, ctx)?);
            }
        }
        Method::TrigStep => {
            let mut step = PolygonStep::new(4, one, ctx)?;
            for _ in 1..=m_max {
                step = trig_step(&step, ctx)?;
                out.push(four.clone() / step.apothem_r().clone());
            }
        }
        Method::TanSeries => {
            let quarter = Angle::new(R::pi(ctx).scale_pow2(-2));
            for m in 1..=m_max {
                let sum = tan_series(&quarter, Depth::Finite(m), ctx)?;
                out.push(four.clone() / sum.termwise().expect("finite depth").clone());
            }
        }
        Method::SecantProduct => {
            for m in 1..=m_max {
                let product = quadrant_secant_product::<R>(Depth::Finite(m), ctx)?;
                out.push(product.termwise().expect("finite depth").scale_pow2(1));
            }
        }
    }
    Ok(out)
}

fn rows_for<R: Real>(
    method: Method,
    m_max: u32,
    ctx: &PrecisionContext,
    pi: &Extended,
) -> Result<Vec<ReportRow>> {
    let estimates = method_estimates::<R>(method, m_max, ctx)?;
    let mut rows: Vec<ReportRow> = Vec::with_capacity(estimates.len());
    for (i, estimate) in estimates.iter().enumerate() {
        let abs_error = (estimate.to_extended(pi.precision()) - pi.clone())
            .abs()
            .to_f64();
        let error_ratio = match rows.last() {
            Some(prev) if prev.abs_error > 0.0 => Some(abs_error / prev.abs_error),
            _ => None,
        };
        rows.push(ReportRow {
            method,
            m: i as u32 + 1,
            estimate: estimate.to_f64(),
            abs_error,
            error_ratio,
        });
    }
    Ok(rows)
}

fn all_rows<R: Real>(m_max: u32, ctx: &PrecisionContext, pi: &Extended) -> Result<Vec<ReportRow>> {
    // each method is independent; extended arithmetic keeps its constant
    // cache per thread
    let tables: Vec<Result<Vec<ReportRow>>> = std::thread::scope(|scope| {
        let handles: Vec<_> = Method::ALL
            .iter()
            .map(|&method| scope.spawn(move || rows_for::<R>(method, m_max, ctx, pi)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("report worker panicked"))
            .collect()
    });
    let mut rows = Vec::new();
    for table in tables {
        rows.extend(table?);
    }
    Ok(rows)
}

/// Tabulates every method for `m = 1..=m_max` under `ctx`.
pub fn build_report(m_max: u32, ctx: &PrecisionContext) -> Result<Report> {
    if m_max == 0 {
        return Err(Error::Domain("m_max must be at least 1".into()));
    }
    let pi = reference_pi(ctx);
    let rows = match ctx.mode() {
        Mode::Native => all_rows::<f64>(m_max, ctx, &pi)?,
        Mode::Extended => all_rows::<Extended>(m_max, ctx, &pi)?,
    };
    let rctx = PrecisionContext::extended(
        ctx.decimal_digits().unwrap_or(0).max(REFERENCE_MIN_DIGITS) + REFERENCE_GUARD_DIGITS,
    )?;
    let baselines = BASELINES
        .iter()
        .map(|&(name, numerator, denominator)| {
            let ratio = Extended::from_f64(numerator as f64, &rctx)
                / Extended::from_f64(denominator as f64, &rctx);
            let abs_error = (ratio.clone() - pi.clone()).abs().to_f64();
            let radical_crossing = rows
                .iter()
                .find(|r| r.method == Method::Radical && r.abs_error < abs_error)
                .map(|r| r.m);
            Baseline {
                name,
                numerator,
                denominator,
                estimate: ratio.to_f64(),
                abs_error,
                radical_crossing,
            }
        })
        .collect();
    Ok(Report {
        context: ReportContext {
            mode: ctx.mode(),
            decimal_digits: ctx.decimal_digits(),
            unit_roundoff: ctx.unit_roundoff(),
            m_max,
            reference_pi: pi.to_f64(),
        },
        rows,
        baselines,
    })
}

impl Report {
    pub fn rows_for(&self, method: Method) -> impl Iterator<Item = &ReportRow> {
        self.rows.iter().filter(move |r| r.method == method)
    }

    /// The flattened table shared by both encodings.
    pub fn table(&self) -> Vec<TableRow> {
        let rows = self.rows.iter().map(|r| TableRow {
            method: r.method.name().to_string(),
            m: Some(r.m),
            estimate: sig15(r.estimate),
            abs_error: sig15(r.abs_error),
            error_ratio: r.error_ratio.map(sig15),
        });
        let baselines = self.baselines.iter().map(|b| TableRow {
            method: b.name.to_string(),
            m: b.radical_crossing,
            estimate: sig15(b.estimate),
            abs_error: sig15(b.abs_error),
            error_ratio: None,
        });
        rows.chain(baselines).collect()
    }

    /// CSV with the fixed header. Baseline rows follow the method rows; their
    /// `m` column holds the radical crossing index.
    pub fn to_csv(&self) -> String {
        let mut out = csv::Writer::from_writer(Vec::new());
        out.write_record(CSV_HEADER).expect("writing to memory");
        for row in self.table() {
            let m = row.m.map(|m| m.to_string()).unwrap_or_default();
            let ratio = row.error_ratio.unwrap_or_default();
            out.write_record([&row.method, &m, &row.estimate, &row.abs_error, &ratio])
                .expect("writing to memory");
        }
        String::from_utf8(out.into_inner().expect("flushing to memory")).expect("ASCII output")
    }

    /// `{rows, baselines, context}` with every real as a 15-digit string.
    pub fn to_json(&self) -> String {
        let doc = JsonReport {
            rows: self
                .rows
                .iter()
                .map(|r| JsonRow {
                    method: r.method,
                    m: r.m,
                    estimate: sig15(r.estimate),
                    abs_error: sig15(r.abs_error),
                    error_ratio: r.error_ratio.map(sig15),
                })
                .collect(),
            baselines: self
                .baselines
                .iter()
                .map(|b| JsonBaseline {
                    name: b.name.to_string(),
                    numerator: b.numerator,
                    denominator: b.denominator,
                    estimate: sig15(b.estimate),
                    abs_error: sig15(b.abs_error),
                    radical_crossing: b.radical_crossing,
                })
                .collect(),
            context: JsonContext {
                mode: self.context.mode,
                decimal_digits: self.context.decimal_digits,
                unit_roundoff: sig15(self.context.unit_roundoff),
                m_max: self.context.m_max,
                reference_pi: sig15(self.context.reference_pi),
            },
        };
        let mut text = serde_json::to_string_pretty(&doc).expect("report serializes");
        text.push('\n');
        text
    }
}

/// One line of the flattened table, values kept as their emitted strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub method: String,
    pub m: Option<u32>,
    pub estimate: String,
    pub abs_error: String,
    pub error_ratio: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonRow {
    method: Method,
    m: u32,
    estimate: String,
    abs_error: String,
    error_ratio: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct JsonBaseline {
    name: String,
    numerator: u32,
    denominator: u32,
    estimate: String,
    abs_error: String,
    radical_crossing: Option<u32>,
}

#[derive(Serialize, Deserialize)]
struct JsonContext {
    mode: Mode,
    decimal_digits: Option<u32>,
    unit_roundoff: String,
    m_max: u32,
    reference_pi: String,
}

#[derive(Serialize, Deserialize)]
struct JsonReport {
    rows: Vec<JsonRow>,
    baselines: Vec<JsonBaseline>,
    context: JsonContext,
}

fn malformed(e: impl fmt::Display) -> Error {
    Error::MalformedReport(e.to_string())
}

/// Reads back the output of [`Report::to_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<TableRow>> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().map_err(malformed)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(malformed(format!("unexpected header {header:?}")));
    }
    let optional = |s: &str| (!s.is_empty()).then(|| s.to_string());
    reader
        .records()
        .map(|record| {
            let record = record.map_err(malformed)?;
            let m = match &record[1] {
                "" => None,
                s => Some(s.parse().map_err(malformed)?),
            };
            Ok(TableRow {
                method: record[0].to_string(),
                m,
                estimate: record[2].to_string(),
                abs_error: record[3].to_string(),
                error_ratio: optional(&record[4]),
            })
        })
        .collect()
}

/// Reads back the output of [`Report::to_json`].
pub fn parse_json(text: &str) -> Result<Vec<TableRow>> {
    let doc: JsonReport = serde_json::from_str(text).map_err(malformed)?;
    let rows = doc.rows.into_iter().map(|r| TableRow {
        method: r.method.name().to_string(),
        m: Some(r.m),
        estimate: r.estimate,
        abs_error: r.abs_error,
        error_ratio: r.error_ratio,
    });
    let baselines = doc.baselines.into_iter().map(|b| TableRow {
        method: b.name,
        m: b.radical_crossing,
        estimate: b.estimate,
        abs_error: b.abs_error,
        error_ratio: None,
    });
    Ok(rows.chain(baselines).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    // mpmath, 50 digits
    use std::f64::consts::PI;
    const ERR_22_7: f64 = 0.0012644892673496186802;
    const ERR_355_113: f64 = 2.6676418906242231237e-7;

    #[test]
    fn reference_pi_is_accurate() {
        let p = reference_pi(&PrecisionContext::native());
        assert_eq!(p.to_f64(), PI);
        let ctx = PrecisionContext::extended(60).unwrap();
        let lit = Extended::parse(
            "3.14159265358979323846264338327950288419716939937510582097494459",
            ctx.binary_precision() + 64,
        )
        .unwrap();
        let p = reference_pi(&ctx);
        assert!((p - lit).abs().to_f64() < 1e-62);
    }

    #[test]
    fn radical_row_and_baselines() {
        let report = build_report(5, &PrecisionContext::native()).unwrap();
        let row = report.rows_for(Method::Radical).nth(1).unwrap();
        assert_eq!(row.m, 2);
        assert!((row.estimate - 3.1825978780745281102).abs() < 1e-14);
        assert!((row.abs_error - 0.041005224484734872).abs() < 1e-14);
        assert!(report
            .rows_for(Method::Radical)
            .next()
            .unwrap()
            .error_ratio
            .is_none());
        assert!((report.baselines[0].abs_error - ERR_22_7).abs() < 1e-18);
        assert!((report.baselines[1].abs_error - ERR_355_113).abs() < 1e-20);
        // 5 rows per method
        assert_eq!(report.rows.len(), 25);
        assert_eq!(report.baselines[0].radical_crossing, Some(5));
        assert_eq!(report.baselines[1].radical_crossing, None);
    }

    #[test]
    fn methods_agree_row_by_row() {
        let report = build_report(12, &PrecisionContext::native()).unwrap();
        let radical: Vec<_> = report.rows_for(Method::Radical).collect();
        // the secant product approaches from below along its own sequence
        for method in [Method::Cotangent, Method::TrigStep, Method::TanSeries] {
            for (row, base) in report.rows_for(method).zip(&radical) {
                assert!(
                    (row.estimate - base.estimate).abs() < 1e-13,
                    "{method} m = {}",
                    row.m
                );
            }
        }
    }

    #[test]
    fn secant_product_rows() {
        let report = build_report(20, &PrecisionContext::native()).unwrap();
        let rows: Vec<_> = report.rows_for(Method::SecantProduct).collect();
        assert!((rows[0].estimate - 2.0 * std::f64::consts::SQRT_2).abs() < 1e-15);
        assert!(rows[19].abs_error < 2e-11);
        for r in &rows[4..15] {
            let model = Method::SecantProduct.error_model(r.m);
            assert!((r.abs_error / model - 1.0).abs() < 1e-3, "m = {}", r.m);
        }
        assert!(rows.windows(2).all(|w| w[1].estimate > w[0].estimate));
    }

    #[test]
    fn encodings_round_trip() {
        let report = build_report(4, &PrecisionContext::native()).unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("method,m,estimate,abs_error,error_ratio\n"));
        assert_eq!(parse_csv(&csv).unwrap(), report.table());
        assert_eq!(parse_json(&report.to_json()).unwrap(), report.table());
        assert!(parse_csv("a,b\n1,2\n").is_err());
        assert!(parse_json("{").is_err());
    }

    #[test]
    fn zero_depth_is_rejected() {
        assert!(build_report(0, &PrecisionContext::native()).is_err());
    }
}
