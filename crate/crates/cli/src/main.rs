//! `jost`: pole scans, pseudonorm reports, Jost-function grids and depth
//! sweeps. Exit codes: 0 success, 1 invalid input, 2 partial result (flagged
//! records or lost trajectories), 3 numeric failure.

mod args;
mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use jost_core::jost::{evaluator, Engine, JostEvaluator};
use jost_core::poles::{find_poles, refine_zero, trajectory, ScanRegion, TrajectoryEnd};
use jost_core::potential::PotentialSpec;
use jost_core::pseudonorm::{pseudonorm_regularized, RegulatorSchedule};
use jost_core::radial::DEFAULT_TOL;
use jost_core::{JostError, UNITS_LINE};
use num_complex::Complex64;

use args::{Cli, Command, EngineArg, Format, ModelArgs, OutputArgs, RegionArgs};
use report::*;

/// Lattice size limit for `jost-grid`.
const GRID_CAP: usize = 1_000_000;

enum Failure {
    Usage(String),
    Numeric(JostError),
}

impl From<JostError> for Failure {
    fn from(e: JostError) -> Self {
        match e {
            JostError::InvalidParameter { .. } => Failure::Usage(e.to_string()),
            other => Failure::Numeric(other),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn usage(flag: &str, msg: impl std::fmt::Display) -> Failure {
    Failure::Usage(format!("{flag}: {msg}"))
}

struct Model {
    potential: PotentialSpec,
    l: usize,
    engine: Engine,
}

impl Model {
    fn load(m: &ModelArgs) -> Result<Self, Failure> {
        let potential = match &m.potential_file {
            Some(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| usage("--potential-file", e))?;
                let p: PotentialSpec = serde_json::from_str(&text).map_err(|e| usage("--potential-file", e))?;
                p.validate().map_err(|e| usage("--potential-file", e))?;
                p
            }
            None => {
                if !(m.radius > 0.0 && m.radius.is_finite()) {
                    return Err(usage("--radius", format!("must be positive, got {}", m.radius)));
                }
                PotentialSpec::square_well(m.well, m.radius).map_err(|e| usage("--well", e))?
            }
        };
        let engine = match m.engine {
            EngineArg::Numeric => Engine::Numeric,
            EngineArg::Analytic => {
                if potential.as_square_well().is_none() {
                    return Err(usage("--engine", "analytic evaluation needs a square well"));
                }
                Engine::Analytic
            }
            EngineArg::Auto if potential.as_square_well().is_some() => Engine::Analytic,
            EngineArg::Auto => Engine::Numeric,
        };
        Ok(Self {
            potential,
            l: m.l,
            engine,
        })
    }

    fn evaluator(&self) -> Result<Box<dyn JostEvaluator + Send>, Failure> {
        Ok(evaluator(&self.potential, self.l, self.engine)?)
    }

    fn engine_name(&self) -> &'static str {
        match self.engine {
            Engine::Numeric => "numeric",
            Engine::Analytic => "analytic",
        }
    }
}

fn region(r: &RegionArgs) -> Result<ScanRegion, Failure> {
    let mut region = ScanRegion::new(r.re, r.im).map_err(|e| usage("--re/--im", e))?;
    region.max_depth = r.max_depth;
    region.newton_tol = r.newton_tol;
    region.validate().map_err(|e| usage("--newton-tol", e))?;
    Ok(region)
}

fn emit(out: &OutputArgs, text: &str) -> Result<(), Failure> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| usage("--output", e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| usage("stdout", e)),
    }
}

fn c_fields(z: Option<Complex64>) -> [String; 2] {
    [fmt_opt(z.map(|z| z.re)), fmt_opt(z.map(|z| z.im))]
}

fn pole_row(p: &PoleOut) -> Vec<String> {
    let mut row = vec![num(p.k0.re), num(p.k0.im), num(p.e.re), num(p.e.im)];
    row.push(p.class.unwrap_or("").to_string());
    row.push(num(p.residual));
    row.extend(c_fields(p.pseudonorm.map(|c| Complex64::new(c.re, c.im))));
    row.extend(c_fields(p.norm_constant.map(|c| Complex64::new(c.re, c.im))));
    row.push(p.flags.join(";"));
    row
}

const POLE_HEADER: [&str; 11] = [
    "re_k0", "im_k0", "re_E", "im_E", "class", "residual", "re_N", "im_N", "re_norm_constant", "im_norm_constant", "flags",
];

fn cmd_poles(model: &ModelArgs, reg: &RegionArgs, out: &OutputArgs) -> Outcome {
    let m = Model::load(model)?;
    let region = region(reg)?;
    let jost = m.evaluator()?;
    let scan = find_poles(jost.as_ref(), &region)?;
    let poles: Vec<PoleOut> = scan.records.iter().map(PoleOut::from).collect();
    let partial = !scan.is_complete() || scan.records.iter().any(|r| r.is_flagged());
    let text = match out.format {
        Format::Json => to_json(&PolesReport {
            units: UNITS_LINE,
            potential: (&m.potential).into(),
            l: m.l,
            engine: m.engine_name(),
            region: (&region).into(),
            scanned_region: (&scan.scanned).into(),
            winding: scan.winding,
            poles,
        }),
        Format::Csv => to_csv(&POLE_HEADER, poles.iter().map(pole_row)),
    };
    emit(out, &text)?;
    Ok(partial)
}

fn cmd_pseudonorm(
    model: &ModelArgs,
    k0: Complex64,
    sched: &args::ScheduleArgs,
    trace: bool,
    newton_tol: f64,
    out: &OutputArgs,
) -> Outcome {
    let m = Model::load(model)?;
    if newton_tol.is_nan() || newton_tol <= 0.0 {
        return Err(usage("--newton-tol", "must be positive"));
    }
    let eps0 = sched.eps0.unwrap_or(0.5 / (m.potential.cutoff() * m.potential.cutoff()));
    let schedule = RegulatorSchedule::new(eps0, sched.ratio, sched.count).map_err(|e| usage("--eps0/--ratio/--count", e))?;
    let jost = m.evaluator()?;
    let record = refine_zero(jost.as_ref(), k0, newton_tol)?;
    let reg = pseudonorm_regularized(&m.potential, m.l, record.k0, &schedule, DEFAULT_TOL)?;
    let discrepancy = record.pseudonorm.map(|n| (n - reg.value).norm());
    let pole = PoleOut::from(&record);
    let partial = record.is_flagged();
    let text = match out.format {
        Format::Json => to_json(&PseudonormReport {
            units: UNITS_LINE,
            potential: (&m.potential).into(),
            l: m.l,
            engine: m.engine_name(),
            k0_input: k0.into(),
            formula: pole.pseudonorm,
            pole,
            regularized: reg.value.into(),
            error_estimate: reg.error,
            discrepancy,
            schedule: ScheduleOut {
                eps0: schedule.eps0,
                ratio: schedule.ratio,
                count: schedule.count,
            },
            table: trace.then(|| {
                reg.table
                    .iter()
                    .zip(&reg.extrapolants)
                    .map(|((eps, v), x)| TableRow {
                        eps: *eps,
                        value: (*v).into(),
                        extrapolated: (*x).into(),
                    })
                    .collect()
            }),
        }),
        Format::Csv => {
            let mut header = POLE_HEADER.to_vec();
            header.extend(["re_regularized", "im_regularized", "error_estimate", "discrepancy"]);
            let mut row = pole_row(&pole);
            row.extend([num(reg.value.re), num(reg.value.im), num(reg.error), fmt_opt(discrepancy)]);
            let mut text = to_csv(&header, [row]);
            if trace {
                let rows = reg.table.iter().zip(&reg.extrapolants).map(|((eps, v), x)| {
                    vec![num(*eps), num(v.re), num(v.im), num(x.re), num(x.im)]
                });
                let table = to_csv(&["eps", "re_N_eps", "im_N_eps", "re_extrapolated", "im_extrapolated"], rows);
                text.push('\n');
                text.push_str(table.split_once('\n').map_or("", |(_, body)| body));
            }
            text
        }
    };
    emit(out, &text)?;
    Ok(partial)
}

fn lattice(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn cmd_jost_grid(model: &ModelArgs, re: (f64, f64), im: (f64, f64), n_re: usize, n_im: usize, out: &OutputArgs) -> Outcome {
    let m = Model::load(model)?;
    if n_re == 0 || n_im == 0 || n_re.saturating_mul(n_im) > GRID_CAP {
        return Err(usage("--n-re/--n-im", format!("need 1 <= n_re * n_im <= {GRID_CAP}")));
    }
    let jost = m.evaluator()?;
    let (xs, ys) = (lattice(re.0, re.1, n_re), lattice(im.0, im.1, n_im));
    let mut rows = Vec::with_capacity(n_re * n_im);
    for &y in &ys {
        for &x in &xs {
            let k = Complex64::new(x, y);
            let (abs, arg) = match jost.jost(k) {
                Ok(f) => (f.norm(), f.arg()),
                // k = 0 for l >= 1 and out-of-range points
                Err(JostError::Domain { .. } | JostError::Range { .. }) => (f64::NAN, f64::NAN),
                Err(e) => return Err(e.into()),
            };
            rows.push(GridRow { re: x, im: y, abs, arg });
        }
    }
    let text = match out.format {
        Format::Json => to_json(&GridReport {
            units: UNITS_LINE,
            potential: (&m.potential).into(),
            l: m.l,
            engine: m.engine_name(),
            rows,
        }),
        Format::Csv => to_csv(
            &["re_k", "im_k", "abs_f", "arg_f"],
            rows.iter().map(|r| vec![num(r.re), num(r.im), num(r.abs), num(r.arg)]),
        ),
    };
    emit(out, &text)?;
    Ok(false)
}

fn cmd_trajectory(model: &ModelArgs, reg: &RegionArgs, sweep: &args::Sweep, out: &OutputArgs) -> Outcome {
    let m = Model::load(model)?;
    let Some(base) = m.potential.as_square_well() else {
        return Err(usage("--sweep", "V0 sweeps need a square-well potential"));
    };
    let values = sweep.values();
    if values.iter().any(|v| *v < 0.0) {
        return Err(usage("--sweep", "depths must be non-negative"));
    }
    let region = region(reg)?;
    let (l, engine) = (m.l, m.engine);
    let tracks = trajectory(
        |v| evaluator(&PotentialSpec::square_well(v, base.radius)?, l, engine),
        &values,
        &region,
    )?;
    let partial = tracks.iter().any(|t| matches!(t.end, TrajectoryEnd::Lost { .. }));
    let text = match out.format {
        Format::Json => to_json(&TrajectoryReport {
            units: UNITS_LINE,
            potential: (&m.potential).into(),
            l,
            engine: m.engine_name(),
            region: (&region).into(),
            sweep: SweepOut {
                parameter: sweep.name.clone(),
                values,
            },
            trajectories: tracks
                .iter()
                .map(|t| TrackOut {
                    end: t.end.clone(),
                    points: t
                        .points
                        .iter()
                        .map(|p| TrackPoint {
                            parameter: p.parameter,
                            pole: (&p.record).into(),
                        })
                        .collect(),
                })
                .collect(),
        }),
        Format::Csv => {
            let rows = tracks.iter().enumerate().flat_map(|(i, t)| {
                t.points.iter().map(move |p| {
                    let r = &p.record;
                    let mut row = vec![i.to_string(), num(p.parameter), num(r.k0.re), num(r.k0.im)];
                    row.push(r.classification.map(|c| c.as_str()).unwrap_or("").to_string());
                    row.extend(c_fields(r.pseudonorm));
                    row
                })
            });
            to_csv(&["track", "parameter", "re_k0", "im_k0", "class", "re_N", "im_N"], rows)
        }
    };
    emit(out, &text)?;
    Ok(partial)
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Poles { model, region, out } => cmd_poles(model, region, out),
        Command::Pseudonorm {
            model,
            k0,
            schedule,
            trace,
            newton_tol,
            out,
        } => cmd_pseudonorm(model, *k0, schedule, *trace, *newton_tol, out),
        Command::JostGrid {
            model,
            re,
            im,
            n_re,
            n_im,
            out,
        } => cmd_jost_grid(model, *re, *im, *n_re, *n_im, out),
        Command::Trajectory {
            model,
            region,
            sweep,
            out,
        } => cmd_trajectory(model, region, sweep, out),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(e)) => {
            let payload = serde_json::json!({
                "units": UNITS_LINE,
                "error": e.to_string(),
                "detail": format!("{e:?}"),
            });
            eprintln!("{payload}");
            ExitCode::from(3)
        }
    }
}
