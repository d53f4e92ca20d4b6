//! Serialization for the command-line front end: 12-significant-digit
//! rounding, the CSV table layouts, and the JSON output shapes.

use revratio::analysis::{ConstantsCertificate, FigurePoint, Segment};
use revratio::verifier::{CheckResult, VerificationReport};
use serde::Serialize;

/// Rounds to 12 significant decimal digits, the printing precision of every
/// machine-readable output. Parsing the printed decimal back recovers the
/// rounded value bit-for-bit, so CSV and JSON round-trip exactly.
pub fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}")
        .parse()
        .expect("decimal form of a finite float")
}

#[derive(Serialize)]
pub struct RevenueOut {
    pub myerson_price: f64,
    pub rev: f64,
    pub srev: f64,
    pub brev: f64,
    pub bundle_price: f64,
    pub ratio: f64,
}

#[derive(Serialize)]
pub struct ConstantsOut {
    pub c_star: f64,
    pub r_star: f64,
    pub residual: f64,
}

impl From<&ConstantsCertificate<f64>> for ConstantsOut {
    fn from(c: &ConstantsCertificate<f64>) -> Self {
        ConstantsOut {
            c_star: round12(c.c_star),
            r_star: round12(c.r_star),
            residual: round12(c.residual),
        }
    }
}

#[derive(Serialize)]
pub struct SegmentOut {
    pub d: u32,
    pub c_low: f64,
    pub c_high: f64,
    pub ratio_low: f64,
    pub ratio_high: f64,
}

impl From<&Segment<f64>> for SegmentOut {
    fn from(s: &Segment<f64>) -> Self {
        SegmentOut {
            d: s.d,
            c_low: round12(s.c_low),
            c_high: round12(s.c_high),
            ratio_low: round12(s.ratio_low),
            ratio_high: round12(s.ratio_high),
        }
    }
}

#[derive(Serialize)]
pub struct CheckOut {
    pub name: String,
    pub passed: bool,
    pub margin: f64,
    pub details: String,
}

#[derive(Serialize)]
pub struct ReportOut {
    pub checks: Vec<CheckOut>,
    pub all_passed: bool,
}

impl From<&CheckResult> for CheckOut {
    fn from(c: &CheckResult) -> Self {
        CheckOut {
            name: c.name.to_string(),
            passed: c.passed,
            margin: round12(c.margin),
            details: c.details.clone(),
        }
    }
}

impl From<&VerificationReport> for ReportOut {
    fn from(r: &VerificationReport) -> Self {
        ReportOut {
            checks: r.checks.iter().map(CheckOut::from).collect(),
            all_passed: r.all_passed,
        }
    }
}

/// Segment table in CSV form; one line per price, newline terminated.
pub fn table_csv(rows: &[Segment<f64>]) -> String {
    let mut out = String::from("d,c_low,c_high,ratio_low,ratio_high\n");
    for r in rows {
        let s = SegmentOut::from(r);
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            s.d, s.c_low, s.c_high, s.ratio_low, s.ratio_high
        ));
    }
    out
}

/// Ratio-curve samples in long CSV form: one row per (c, d) pair.
pub fn figure_csv(points: &[FigurePoint<f64>]) -> String {
    let mut out = String::from("c,d,ratio\n");
    for p in points {
        out.push_str(&format!("{},{},{}\n", round12(p.c), p.d, round12(p.ratio)));
    }
    out
}

/// Pretty JSON with a trailing newline, so file and stream output match.
pub fn json_line<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output type");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round12_is_idempotent_and_close() {
        for &x in &[
            std::f64::consts::PI,
            2.6556746947655825,
            0.559694790179874,
            1e-300,
            -17.25,
            3.0,
        ] {
            let r = round12(x);
            assert_eq!(round12(r), r, "idempotence at {x}");
            assert!(((r - x) / x).abs() < 1e-11, "proximity at {x}");
        }
        assert_eq!(round12(0.0), 0.0);
        assert_eq!(round12(1.0), 1.0);
    }

    #[test]
    fn round12_round_trips_through_display() {
        for &x in &[std::f64::consts::E, 123.456789, 1.0 / 3.0] {
            let r = round12(x);
            let reparsed: f64 = format!("{r}").parse().unwrap();
            assert_eq!(reparsed, r, "display round-trip at {x}");
        }
    }
}
