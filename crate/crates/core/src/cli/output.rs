//! Number formatting and the CSV/JSON writers.

use std::io::Write;

use serde::ser::Error as _;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::fidelity::FidelityReport;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_f64(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "NaN".to_owned()
    } else if x > 0.0 {
        "inf".to_owned()
    } else {
        "-inf".to_owned()
    }
}

/// An `f64` serialized to JSON with [`format_f64`]; non-finite values become `null`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Num(pub f64);

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if !self.0.is_finite() {
            return serializer.serialize_none();
        }
        let raw = RawValue::from_string(format_f64(self.0)).map_err(S::Error::custom)?;
        raw.serialize(serializer)
    }
}

pub fn nums<const N: usize>(xs: [f64; N]) -> [Num; N] {
    xs.map(Num)
}

pub const SWEEP_COLUMNS: [&str; 14] = [
    "alpha",
    "beta",
    "eta",
    "p",
    "epsilon",
    "f_av_quad",
    "f_av_closed",
    "f_m_quad",
    "f_a_quad",
    "f_a_closed",
    "f_b_closed",
    "f_ma_closed",
    "f_mb_closed",
    "discrepancy_flags",
];

/// One sweep row with the keys of [`SWEEP_COLUMNS`], in that order.
#[derive(Debug, Serialize)]
pub struct SweepRow {
    alpha: Num,
    beta: Num,
    eta: Num,
    p: Num,
    epsilon: Num,
    f_av_quad: Num,
    f_av_closed: Num,
    f_m_quad: Num,
    f_a_quad: Num,
    f_a_closed: Num,
    f_b_closed: Num,
    f_ma_closed: Num,
    f_mb_closed: Num,
    discrepancy_flags: String,
}

impl From<&FidelityReport> for SweepRow {
    fn from(r: &FidelityReport) -> Self {
        Self {
            alpha: Num(r.alpha),
            beta: Num(r.beta),
            eta: Num(r.eta),
            p: Num(r.p),
            epsilon: Num(r.epsilon),
            f_av_quad: Num(r.f_av_quad),
            f_av_closed: Num(r.f_av_closed),
            f_m_quad: Num(r.f_m_quad),
            f_a_quad: Num(r.f_a_quad),
            f_a_closed: Num(r.f_a_closed),
            f_b_closed: Num(r.f_b_closed),
            f_ma_closed: Num(r.f_ma_closed),
            f_mb_closed: Num(r.f_mb_closed),
            discrepancy_flags: r.flags.to_string(),
        }
    }
}

impl SweepRow {
    fn fields(&self) -> Vec<String> {
        let mut out: Vec<String> = [
            self.alpha,
            self.beta,
            self.eta,
            self.p,
            self.epsilon,
            self.f_av_quad,
            self.f_av_closed,
            self.f_m_quad,
            self.f_a_quad,
            self.f_a_closed,
            self.f_b_closed,
            self.f_ma_closed,
            self.f_mb_closed,
        ]
        .iter()
        .map(|n| format_f64(n.0))
        .collect();
        out.push(self.discrepancy_flags.clone());
        out
    }
}

/// RFC 4180 CSV: header row, CRLF line endings.
pub fn write_csv<W: Write>(rows: &[FidelityReport], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::CRLF).from_writer(out);
    w.write_record(SWEEP_COLUMNS)?;
    for r in rows {
        w.write_record(SweepRow::from(r).fields())?;
    }
    w.flush()?;
    Ok(())
}

/// A JSON array of row objects keyed like the CSV header.
pub fn write_json<W: Write>(rows: &[FidelityReport], mut out: W) -> serde_json::Result<()> {
    let rows: Vec<SweepRow> = rows.iter().map(SweepRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &rows)?;
    writeln!(out).map_err(serde_json::Error::io)
}
