//! The six reference concurrence datasets and the qualitative claims each
//! one is expected to show.
//!
//! | figure | channel | r                    | axes              |
//! |--------|---------|----------------------|-------------------|
//! | 1      | AD      | 1                    | θ ∈ [0, π] × p    |
//! | 2      | AD      | 0.7                  | θ ∈ [0, π] × p    |
//! | 3      | PD      | 1                    | θ ∈ [0, π] × p    |
//! | 4      | PD      | 0.7                  | θ ∈ [0, π] × p    |
//! | 5      | D       | 1                    | θ ∈ [0, π] × p    |
//! | 6      | D       | 0.4, 0.5, …, 1.0     | θ = π/4, p only   |

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::esd::is_initially_entangled;
use crate::scan::{evaluate_grid, GridSpec, ScanRow};
use crate::states::WernerLikeParams;

pub const SURFACE_THETA_STEPS: usize = 101;
pub const SURFACE_P_STEPS: usize = 101;
pub const CURVE_P_STEPS: usize = 1001;

/// Angles this close to a window edge `π/4 + kπ/2` are not judged by the
/// figure 1 predicate; there the critical probability is 1 up to rounding.
const WINDOW_EDGE_EPS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FigureSpec {
    number: u8,
}

impl FigureSpec {
    pub fn new(number: u8) -> Result<Self> {
        if (1..=6).contains(&number) {
            Ok(Self { number })
        } else {
            Err(Error::Config {
                field: "figure",
                reason: format!("unknown figure {number} (expected 1 to 6)"),
            })
        }
    }

    pub fn all() -> impl Iterator<Item = FigureSpec> {
        (1..=6).map(|number| FigureSpec { number })
    }

    pub fn number(&self) -> u8 {
        self.number
    }

    pub fn kind(&self) -> ChannelKind {
        match self.number {
            1 | 2 => ChannelKind::AmplitudeDamping,
            3 | 4 => ChannelKind::PhaseDamping,
            _ => ChannelKind::Depolarizing,
        }
    }

    pub fn r_values(&self) -> Vec<f64> {
        match self.number {
            1 | 3 | 5 => vec![1.0],
            2 | 4 => vec![0.7],
            _ => (4..=10).map(|i| i as f64 / 10.0).collect(),
        }
    }

    pub fn thetas(&self) -> Vec<f64> {
        if self.number == 6 {
            vec![FRAC_PI_4]
        } else {
            GridSpec::new(0.0, PI, SURFACE_THETA_STEPS).points()
        }
    }

    pub fn p_grid(&self) -> GridSpec {
        let steps = if self.number == 6 {
            CURVE_P_STEPS
        } else {
            SURFACE_P_STEPS
        };
        GridSpec::new(0.0, 1.0, steps)
    }

    /// The claim [`caption_check`] verifies for this figure.
    pub fn claim(&self) -> &'static str {
        match self.number {
            1 => "sudden death exactly for angles within pi/4 of a multiple of pi",
            2 => "sudden death for every initially entangled angle",
            3 => "no sudden death for any angle",
            4 => "sudden death for every initially entangled angle",
            5 => "sudden death for every initially entangled angle",
            _ => "critical probability increases with r",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Dataset {
    pub spec: FigureSpec,
    pub rows: Vec<ScanRow>,
}

pub fn figure_dataset(spec: FigureSpec) -> Result<Dataset> {
    let rows = evaluate_grid(
        spec.kind(),
        &spec.r_values(),
        &spec.thetas(),
        &spec.p_grid().points(),
    )?;
    Ok(Dataset { spec, rows })
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaptionCheck {
    pub figure: u8,
    pub claim: &'static str,
    pub holds: bool,
    /// One entry per slice or series that contradicts the claim.
    pub violations: Vec<String>,
}

/// Evaluates the qualitative claim for `dataset` on its own grid.
///
/// "Sudden death" for a θ-slice means some row with `p < 1` has exactly
/// zero concurrence. Slices whose initial state is separable are skipped.
pub fn caption_check(dataset: &Dataset) -> CaptionCheck {
    let spec = dataset.spec;
    let mut violations = Vec::new();

    if spec.number() == 6 {
        let mut previous: Option<(f64, f64)> = None;
        for (r, rows) in group_by(&dataset.rows, |row| row.r) {
            let Some(crossing) = first_zero(&rows) else {
                violations.push(format!("r={r}: concurrence never reaches zero"));
                continue;
            };
            if let Some((prev_r, prev_crossing)) = previous {
                if crossing <= prev_crossing {
                    violations.push(format!(
                        "r={r}: crossing at p={crossing} not after r={prev_r} crossing at p={prev_crossing}"
                    ));
                }
            }
            previous = Some((r, crossing));
        }
    } else {
        for (theta, rows) in group_by(&dataset.rows, |row| row.theta) {
            let r = rows[0].r;
            let entangled = WernerLikeParams::new(r, theta)
                .map(|p| is_initially_entangled(&p))
                .unwrap_or(false);
            if !entangled {
                continue;
            }
            let dies = rows.iter().any(|row| row.p < 1.0 && row.concurrence == 0.0);
            let expected = match spec.number() {
                1 => {
                    let from_edge = (theta.rem_euclid(FRAC_PI_2) - FRAC_PI_4).abs();
                    if from_edge < WINDOW_EDGE_EPS {
                        continue;
                    }
                    let from_multiple = theta.rem_euclid(PI).min(PI - theta.rem_euclid(PI));
                    from_multiple < FRAC_PI_4
                }
                3 => false,
                _ => true,
            };
            if dies != expected {
                violations.push(format!(
                    "theta={theta}: {} sudden death",
                    if dies { "unexpected" } else { "missing" }
                ));
            }
        }
    }

    CaptionCheck {
        figure: spec.number(),
        claim: spec.claim(),
        holds: violations.is_empty(),
        violations,
    }
}

/// Groups rows by a coordinate, preserving the order of first appearance.
fn group_by(rows: &[ScanRow], key: impl Fn(&ScanRow) -> f64) -> Vec<(f64, Vec<ScanRow>)> {
    let mut order = Vec::new();
    let mut groups: BTreeMap<u64, Vec<ScanRow>> = BTreeMap::new();
    for row in rows {
        let k = key(row);
        groups
            .entry(k.to_bits())
            .or_insert_with(|| {
                order.push(k);
                Vec::new()
            })
            .push(*row);
    }
    order
        .into_iter()
        .map(|k| (k, groups.remove(&k.to_bits()).unwrap_or_default()))
        .collect()
}

fn first_zero(rows: &[ScanRow]) -> Option<f64> {
    rows.iter()
        .find(|row| row.concurrence == 0.0)
        .map(|row| row.p)
}
