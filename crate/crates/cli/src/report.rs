//! Serializable report layouts and CSV/JSON rendering.

use jost_core::model::energy;
use jost_core::poles::{PoleRecord, ScanRegion};
use jost_core::potential::PotentialSpec;
use jost_core::UNITS_LINE;
use num_complex::Complex64;
use serde::Serialize;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct C {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for C {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum PotentialOut {
    SquareWell {
        #[serde(rename = "type")]
        kind: &'static str,
        #[serde(rename = "V0")]
        v0: f64,
        a: f64,
    },
    Other(PotentialSpec),
}

impl From<&PotentialSpec> for PotentialOut {
    fn from(p: &PotentialSpec) -> Self {
        match p {
            PotentialSpec::SquareWell { depth, radius } => PotentialOut::SquareWell {
                kind: "square_well",
                v0: *depth,
                a: *radius,
            },
            other => PotentialOut::Other(other.clone()),
        }
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct RegionOut {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
}

impl From<&ScanRegion> for RegionOut {
    fn from(r: &ScanRegion) -> Self {
        Self {
            re_min: r.re_min,
            re_max: r.re_max,
            im_min: r.im_min,
            im_max: r.im_max,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PoleOut {
    pub k0: C,
    #[serde(rename = "E")]
    pub e: C,
    pub class: Option<&'static str>,
    pub residual: f64,
    pub pseudonorm: Option<C>,
    pub norm_constant: Option<C>,
    pub flags: Vec<&'static str>,
}

impl From<&PoleRecord> for PoleOut {
    fn from(r: &PoleRecord) -> Self {
        Self {
            k0: r.k0.into(),
            e: energy(r.k0).into(),
            class: r.classification.map(|c| c.as_str()),
            residual: r.residual,
            pseudonorm: r.pseudonorm.map(C::from),
            norm_constant: r.norm_constant.map(C::from),
            flags: r.flags.iter().map(|f| f.as_str()).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PolesReport {
    pub units: &'static str,
    pub potential: PotentialOut,
    pub l: usize,
    pub engine: &'static str,
    pub region: RegionOut,
    pub scanned_region: RegionOut,
    pub winding: usize,
    pub poles: Vec<PoleOut>,
}

#[derive(Debug, Serialize)]
pub struct TableRow {
    pub eps: f64,
    pub value: C,
    pub extrapolated: C,
}

#[derive(Debug, Serialize)]
pub struct ScheduleOut {
    pub eps0: f64,
    pub ratio: f64,
    pub count: usize,
}

#[derive(Debug, Serialize)]
pub struct PseudonormReport {
    pub units: &'static str,
    pub potential: PotentialOut,
    pub l: usize,
    pub engine: &'static str,
    pub k0_input: C,
    pub pole: PoleOut,
    pub formula: Option<C>,
    pub regularized: C,
    pub error_estimate: f64,
    pub discrepancy: Option<f64>,
    pub schedule: ScheduleOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableRow>>,
}

#[derive(Debug, Serialize)]
pub struct GridRow {
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub arg: f64,
}

#[derive(Debug, Serialize)]
pub struct GridReport {
    pub units: &'static str,
    pub potential: PotentialOut,
    pub l: usize,
    pub engine: &'static str,
    pub rows: Vec<GridRow>,
}

#[derive(Debug, Serialize)]
pub struct SweepOut {
    pub parameter: String,
    pub values: Vec<f64>,
}

#[derive(Debug, Serialize)]
pub struct TrackPoint {
    pub parameter: f64,
    #[serde(flatten)]
    pub pole: PoleOut,
}

#[derive(Debug, Serialize)]
pub struct TrackOut {
    pub end: jost_core::poles::TrajectoryEnd,
    pub points: Vec<TrackPoint>,
}

#[derive(Debug, Serialize)]
pub struct TrajectoryReport {
    pub units: &'static str,
    pub potential: PotentialOut,
    pub l: usize,
    pub engine: &'static str,
    pub region: RegionOut,
    pub sweep: SweepOut,
    pub trajectories: Vec<TrackOut>,
}

pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// CSV with the units line as a leading comment.
pub fn to_csv<R: AsRef<[u8]>>(header: &[&str], rows: impl IntoIterator<Item = Vec<R>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    let body = String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields");
    format!("# {UNITS_LINE}\n{body}")
}

/// Shortest round-trip form, switching to exponent notation for very large
/// or small magnitudes.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}

pub fn fmt_opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}
