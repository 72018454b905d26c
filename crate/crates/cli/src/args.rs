use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

#[derive(Debug, Parser)]
#[command(name = "jost", version, about = "Jost-function zeros and pseudonorms of short-range radial potentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find every Jost zero in a rectangle of the complex k plane.
    Poles {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        region: RegionArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Refine a zero near --k0 and report its pseudonorm by formula and by regularized quadrature.
    Pseudonorm {
        #[command(flatten)]
        model: ModelArgs,
        /// Approximate zero, e.g. `0,-0.64`, `3.9+1.6i` or `-0.64i`.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
        k0: Complex64,
        #[command(flatten)]
        schedule: ScheduleArgs,
        /// Include the regulator table.
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = 1e-12)]
        newton_tol: f64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Tabulate |f_l(k)| and arg f_l(k) on a lattice.
    JostGrid {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-6:6")]
        re: (f64, f64),
        #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-2:3")]
        im: (f64, f64),
        /// Points along Re k.
        #[arg(long, default_value_t = 61)]
        n_re: usize,
        /// Points along Im k.
        #[arg(long, default_value_t = 26)]
        n_im: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Follow the zeros of a square well while its depth is swept.
    Trajectory {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        region: RegionArgs,
        /// `V0=lo:hi:steps`; `steps` intervals, `lo > hi` sweeps downwards.
        #[arg(long, allow_hyphen_values = true, value_parser = parse_sweep)]
        sweep: Sweep,
        #[command(flatten)]
        out: OutputArgs,
    },
}

#[derive(Debug, Clone, Args)]
pub struct ModelArgs {
    /// Square-well depth V0.
    #[arg(long, default_value_t = 4.0)]
    pub well: f64,
    /// Square-well radius a.
    #[arg(long, default_value_t = 1.0)]
    pub radius: f64,
    /// JSON potential description; overrides --well and --radius.
    #[arg(long)]
    pub potential_file: Option<PathBuf>,
    /// Orbital angular momentum.
    #[arg(long, default_value_t = 0)]
    pub l: usize,
    #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
    pub engine: EngineArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    /// Closed form for square wells, numeric otherwise.
    Auto,
    Numeric,
    Analytic,
}

#[derive(Debug, Clone, Args)]
pub struct RegionArgs {
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-6:6")]
    pub re: (f64, f64),
    #[arg(long, allow_hyphen_values = true, value_parser = parse_range, default_value = "-2:3")]
    pub im: (f64, f64),
    #[arg(long, default_value_t = 10)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 1e-12)]
    pub newton_tol: f64,
}

#[derive(Debug, Clone, Args)]
pub struct ScheduleArgs {
    /// First regulator; defaults to 0.5 / R^2.
    #[arg(long)]
    pub eps0: Option<f64>,
    #[arg(long, default_value_t = 0.5)]
    pub ratio: f64,
    #[arg(long, default_value_t = 12)]
    pub count: usize,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub name: String,
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
}

impl Sweep {
    pub fn values(&self) -> Vec<f64> {
        (0..=self.steps)
            .map(|i| self.lo + (self.hi - self.lo) * i as f64 / self.steps as f64)
            .collect()
    }
}

fn parse_f64(s: &str) -> Result<f64, String> {
    let v: f64 = s.trim().parse().map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_range(s: &str) -> Result<(f64, f64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got `{s}`"))?;
    let (lo, hi) = (parse_f64(a)?, parse_f64(b)?);
    if lo < hi {
        Ok((lo, hi))
    } else {
        Err(format!("range `{s}` must have lo < hi"))
    }
}

pub fn parse_sweep(s: &str) -> Result<Sweep, String> {
    let (name, rest) = s.split_once('=').ok_or_else(|| format!("expected V0=lo:hi:steps, got `{s}`"))?;
    if name.trim() != "V0" {
        return Err(format!("only the V0 parameter can be swept, got `{name}`"));
    }
    let parts: Vec<&str> = rest.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected V0=lo:hi:steps, got `{s}`"));
    }
    let steps: usize = parts[2].trim().parse().map_err(|_| format!("`{}` is not a step count", parts[2]))?;
    if steps == 0 {
        return Err("a sweep needs at least one step".into());
    }
    Ok(Sweep {
        name: "V0".into(),
        lo: parse_f64(parts[0])?,
        hi: parse_f64(parts[1])?,
        steps,
    })
}

/// Accepts `re,im`, `re+imi`, `re-imi`, `imi` and plain `re`.
pub fn parse_complex(s: &str) -> Result<Complex64, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if let Some((a, b)) = t.split_once(',') {
        return Ok(Complex64::new(parse_f64(a)?, parse_f64(b)?));
    }
    if let Some(body) = t.strip_suffix(['i', 'j']) {
        // split at the last sign that is not part of an exponent
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
        let (re, im) = match split {
            Some(i) => (parse_f64(&body[..i])?, &body[i..]),
            None => (0.0, body),
        };
        let im = match im {
            "" | "+" => 1.0,
            "-" => -1.0,
            v => parse_f64(v)?,
        };
        return Ok(Complex64::new(re, im));
    }
    Ok(Complex64::new(parse_f64(&t)?, 0.0))
}
