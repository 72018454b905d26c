//! Browser bindings for the square-well demo page in `www/`.
//!
//! Every export uses the closed-form square-well Jost function. The plain
//! `*_json` and `landscape` functions do the work and are what the native
//! tests call; the `#[wasm_bindgen]` wrappers only convert errors.

use jost_core::jost::{AnalyticSquareWell, JostEvaluator};
use jost_core::model::energy;
use jost_core::poles::{find_poles, trajectory, ScanRegion, TrajectoryEnd};
use jost_core::square_well::SquareWellParams;
use num_complex::Complex64;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Largest lattice the landscape will evaluate.
pub const MAX_CELLS: usize = 400 * 400;

#[derive(Serialize)]
struct Pole {
    re: f64,
    im: f64,
    e_re: f64,
    e_im: f64,
    class: Option<&'static str>,
    n_re: Option<f64>,
    n_im: Option<f64>,
    flags: Vec<&'static str>,
}

#[derive(Serialize)]
struct Track {
    lost: bool,
    points: Vec<(f64, Pole)>,
}

fn well(depth: f64, radius: f64, l: u32) -> Result<AnalyticSquareWell, String> {
    let params = SquareWellParams::new(depth, radius).map_err(|e| e.to_string())?;
    Ok(AnalyticSquareWell::new(params, l as usize))
}

fn pole(r: &jost_core::poles::PoleRecord) -> Pole {
    let e = energy(r.k0);
    Pole {
        re: r.k0.re,
        im: r.k0.im,
        e_re: e.re,
        e_im: e.im,
        class: r.classification.map(|c| c.as_str()),
        n_re: r.pseudonorm.map(|n| n.re),
        n_im: r.pseudonorm.map(|n| n.im),
        flags: r.flags.iter().map(|f| f.as_str()).collect(),
    }
}

/// `[log10|f|, arg f]` pairs on an `n_re × n_im` lattice, Re fastest.
/// Points where `f` is undefined (k = 0 for l ≥ 1) are NaN.
#[allow(clippy::too_many_arguments)]
pub fn landscape(
    depth: f64,
    radius: f64,
    l: u32,
    re: (f64, f64),
    im: (f64, f64),
    n_re: usize,
    n_im: usize,
) -> Result<Vec<f64>, String> {
    if n_re < 2 || n_im < 2 || n_re * n_im > MAX_CELLS {
        return Err(format!("lattice must be between 2x2 and {MAX_CELLS} points"));
    }
    let j = well(depth, radius, l)?;
    let mut out = Vec::with_capacity(2 * n_re * n_im);
    for iy in 0..n_im {
        let y = im.0 + (im.1 - im.0) * iy as f64 / (n_im - 1) as f64;
        for ix in 0..n_re {
            let x = re.0 + (re.1 - re.0) * ix as f64 / (n_re - 1) as f64;
            match j.jost(Complex64::new(x, y)) {
                Ok(f) => {
                    out.push(f.norm().log10());
                    out.push(f.arg());
                }
                Err(_) => out.extend([f64::NAN, f64::NAN]),
            }
        }
    }
    Ok(out)
}

pub fn poles_json(depth: f64, radius: f64, l: u32, re: (f64, f64), im: (f64, f64)) -> Result<String, String> {
    let j = well(depth, radius, l)?;
    let region = ScanRegion::new(re, im).map_err(|e| e.to_string())?;
    let scan = find_poles(&j, &region).map_err(|e| e.to_string())?;
    let poles: Vec<Pole> = scan.records.iter().map(pole).collect();
    serde_json::to_string(&poles).map_err(|e| e.to_string())
}

#[allow(clippy::too_many_arguments)]
pub fn trajectory_json(
    radius: f64,
    l: u32,
    depth_from: f64,
    depth_to: f64,
    steps: u32,
    re: (f64, f64),
    im: (f64, f64),
) -> Result<String, String> {
    if steps == 0 || steps > 2000 {
        return Err("steps must be between 1 and 2000".into());
    }
    let region = ScanRegion::new(re, im).map_err(|e| e.to_string())?;
    let depths: Vec<f64> = (0..=steps)
        .map(|i| depth_from + (depth_to - depth_from) * i as f64 / steps as f64)
        .collect();
    let tracks = trajectory(
        |v| {
            let p = SquareWellParams::new(v, radius)?;
            Ok(Box::new(AnalyticSquareWell::new(p, l as usize)) as Box<dyn JostEvaluator + Send>)
        },
        &depths,
        &region,
    )
    .map_err(|e| e.to_string())?;
    let out: Vec<Track> = tracks
        .iter()
        .map(|t| Track {
            lost: matches!(t.end, TrajectoryEnd::Lost { .. }),
            points: t.points.iter().map(|p| (p.parameter, pole(&p.record))).collect(),
        })
        .collect();
    serde_json::to_string(&out).map_err(|e| e.to_string())
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn jost_landscape(
    depth: f64,
    radius: f64,
    l: u32,
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
    n_re: usize,
    n_im: usize,
) -> Result<Vec<f64>, JsValue> {
    landscape(depth, radius, l, (re_min, re_max), (im_min, im_max), n_re, n_im).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn scan_poles(depth: f64, radius: f64, l: u32, re_min: f64, re_max: f64, im_min: f64, im_max: f64) -> Result<String, JsValue> {
    poles_json(depth, radius, l, (re_min, re_max), (im_min, im_max)).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
#[allow(clippy::too_many_arguments)]
pub fn depth_sweep(
    radius: f64,
    l: u32,
    depth_from: f64,
    depth_to: f64,
    steps: u32,
    re_min: f64,
    re_max: f64,
    im_min: f64,
    im_max: f64,
) -> Result<String, JsValue> {
    trajectory_json(radius, l, depth_from, depth_to, steps, (re_min, re_max), (im_min, im_max))
        .map_err(|e| JsValue::from_str(&e))
}
