//! Parameter-grid evaluation of the concurrence and its CSV encoding.

use std::io::{self, Write};

use rayon::prelude::*;

use crate::channels::{evolve_werner_analytic, ChannelKind};
use crate::entanglement::concurrence_x;
use crate::error::{Error, Result};
use crate::states::WernerLikeParams;

pub const CSV_HEADER: &str = "theta,p,r,concurrence";

/// `steps` evenly spaced points from `start` to `stop` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridSpec {
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
}

impl GridSpec {
    pub fn new(start: f64, stop: f64, steps: usize) -> Self {
        Self { start, stop, steps }
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.start];
        }
        let last = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.stop
                } else {
                    self.start + (self.stop - self.start) * (i as f64 / last)
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScanConfig {
    pub kind: ChannelKind,
    pub r_values: Vec<f64>,
    pub theta: GridSpec,
    pub p: GridSpec,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let config = |field, reason: String| Err(Error::Config { field, reason });
        if self.r_values.is_empty() {
            return config("r", "at least one value is required".into());
        }
        if let Some(r) = self.r_values.iter().find(|r| !(0.0..=1.0).contains(*r)) {
            return config("r", format!("{r} is outside [0, 1]"));
        }
        if self.theta.steps < 2 {
            return config(
                "theta_steps",
                format!("{} is below the minimum of 2", self.theta.steps),
            );
        }
        if !(self.theta.start.is_finite() && self.theta.stop.is_finite()) {
            return config("theta_range", "bounds must be finite".into());
        }
        if self.p.steps < 2 {
            return config(
                "p_steps",
                format!("{} is below the minimum of 2", self.p.steps),
            );
        }
        for (field, value) in [("p_start", self.p.start), ("p_stop", self.p.stop)] {
            if !(0.0..=1.0).contains(&value) {
                return config(field, format!("{value} is outside [0, 1]"));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanRow {
    pub theta: f64,
    pub p: f64,
    pub r: f64,
    pub concurrence: f64,
}

impl ScanRow {
    pub fn to_csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            format_value(self.theta),
            format_value(self.p),
            format_value(self.r),
            format_value(self.concurrence)
        )
    }
}

/// Concurrence over the configured grid. Rows are ordered with `r`
/// outermost, then `theta`, then `p`.
pub fn scan_surface(cfg: &ScanConfig) -> Result<Vec<ScanRow>> {
    cfg.validate()?;
    evaluate_grid(
        cfg.kind,
        &cfg.r_values,
        &cfg.theta.points(),
        &cfg.p.points(),
    )
}

pub(crate) fn evaluate_grid(
    kind: ChannelKind,
    r_values: &[f64],
    thetas: &[f64],
    ps: &[f64],
) -> Result<Vec<ScanRow>> {
    let slices: Vec<(f64, f64)> = r_values
        .iter()
        .flat_map(|&r| thetas.iter().map(move |&theta| (r, theta)))
        .collect();
    let blocks = slices
        .par_iter()
        .map(|&(r, theta)| {
            let params = WernerLikeParams::new(r, theta)?;
            ps.iter()
                .map(|&p| {
                    let xe = evolve_werner_analytic(kind, &params, p)?;
                    Ok(ScanRow {
                        theta,
                        p,
                        r,
                        concurrence: concurrence_x(&xe).value(),
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(blocks.into_iter().flatten().collect())
}

/// Shortest decimal string that parses back to the same `f64`; never uses
/// exponent notation.
pub fn format_value(x: f64) -> String {
    if x == 0.0 {
        "0".to_string()
    } else {
        x.to_string()
    }
}

/// Writes the header and one LF-terminated line per row.
pub fn write_csv<W: Write>(rows: &[ScanRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for row in rows {
        writeln!(out, "{}", row.to_csv_line())?;
    }
    out.flush()
}
