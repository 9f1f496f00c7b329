//! Entanglement sudden death: where, if anywhere, the concurrence of an
//! evolved Werner-like state first reaches zero.
//!
//! Every evolved state here is X-shaped with `u = 0`, so the concurrence is
//! `2·max{0, f(p)}` with `f(p) = |v(p)| - √(y(p)z(p))`. The analytic
//! critical probabilities solve `f(p) = 0` in closed form for amplitude and
//! phase damping; [`pc_numeric`] brackets the same root by bisection and
//! works for all three channels.

use std::fmt;

use crate::channels::{evolve_werner_analytic, ChannelKind};
use crate::entanglement::{concurrence_x, x_discriminant, Concurrence};
use crate::error::{Error, Result};
use crate::states::WernerLikeParams;

/// Initial concurrence at or below this counts as separable. Without the
/// margin the Werner threshold `r = 1/3` lands on either side by rounding.
pub const ENTANGLED_EPS: f64 = 1e-12;

/// A critical probability within this distance of 1 is the asymptotic
/// steady state, not sudden death.
pub const UNIT_MARGIN: f64 = 1e-12;

/// Points in the sign scan that precedes bisection, spanning `[0, 1]`.
pub const SCAN_POINTS: usize = 1024;

pub const DEFAULT_PC_TOL: f64 = 1e-10;

const MAX_BISECTIONS: usize = 200;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EsdStatus {
    NotEntangledInitially,
    NoEsd,
    Esd,
}

impl fmt::Display for EsdStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EsdStatus::NotEntangledInitially => "NotEntangledInitially",
            EsdStatus::NoEsd => "NoESD",
            EsdStatus::Esd => "ESD",
        })
    }
}

/// Outcome of a critical-probability query. `pc` lies in `(0, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum CriticalResult {
    NotEntangledInitially,
    NoEsd,
    Esd { pc: f64 },
}

impl CriticalResult {
    pub fn status(&self) -> EsdStatus {
        match self {
            CriticalResult::NotEntangledInitially => EsdStatus::NotEntangledInitially,
            CriticalResult::NoEsd => EsdStatus::NoEsd,
            CriticalResult::Esd { .. } => EsdStatus::Esd,
        }
    }

    pub fn pc(&self) -> Option<f64> {
        match self {
            CriticalResult::Esd { pc } => Some(*pc),
            _ => None,
        }
    }
}

/// `2·max{0, r|sinθ cosθ| - (1-r)/4}`.
pub fn initial_concurrence(params: &WernerLikeParams) -> Concurrence {
    let r = params.r();
    let (s, c) = params.theta().sin_cos();
    let margin = r * (s * c).abs() - (1.0 - r) / 4.0;
    Concurrence::from_value(2.0 * margin.max(0.0))
}

pub fn is_initially_entangled(params: &WernerLikeParams) -> bool {
    initial_concurrence(params).value() > ENTANGLED_EPS
}

fn classify(pc: f64) -> CriticalResult {
    if pc < 1.0 - UNIT_MARGIN {
        CriticalResult::Esd { pc }
    } else {
        CriticalResult::NoEsd
    }
}

/// Closed-form critical probability for amplitude or phase damping.
///
/// Amplitude damping: `p_c = (4r|sc| + r - 1) / (4r c² - r + 1)`, which is
/// `|tanθ|` for a pure initial state. Phase damping: no sudden death at
/// `r = 1`, otherwise `p_c = 1 - √((1-r) / (4r|sc|))`. The depolarizing
/// channel has no closed form and yields [`Error::Unsupported`].
pub fn pc_analytic(kind: ChannelKind, params: &WernerLikeParams) -> Result<CriticalResult> {
    if kind == ChannelKind::Depolarizing {
        return Err(Error::Unsupported(kind));
    }
    if !is_initially_entangled(params) {
        return Ok(CriticalResult::NotEntangledInitially);
    }
    let r = params.r();
    let (s, c) = params.theta().sin_cos();
    let sc = (s * c).abs();

    let result = match kind {
        ChannelKind::AmplitudeDamping => {
            classify((4.0 * r * sc + r - 1.0) / (4.0 * r * c * c - r + 1.0))
        }
        ChannelKind::PhaseDamping if r == 1.0 => CriticalResult::NoEsd,
        ChannelKind::PhaseDamping => classify(1.0 - ((1.0 - r) / (4.0 * r * sc)).sqrt()),
        ChannelKind::Depolarizing => unreachable!(),
    };
    Ok(result)
}

/// Whether amplitude damping kills the entanglement at some `p < 1`:
/// `|sinθ cosθ| - cos²θ < (1/r - 1)/2`.
///
/// Uses the same [`UNIT_MARGIN`] as [`pc_analytic`], so the two always agree.
pub fn esd_condition_ad(params: &WernerLikeParams) -> Result<bool> {
    if !is_initially_entangled(params) {
        return Err(Error::NotEntangled);
    }
    let r = params.r();
    let (s, c) = params.theta().sin_cos();
    let lhs = (s * c).abs() - c * c;
    let rhs = (1.0 / r - 1.0) / 2.0;
    // pc < 1 - ε  ⇔  4r(lhs - rhs) < -ε(4rc² - r + 1)
    let denominator = 4.0 * r * c * c - r + 1.0;
    Ok(4.0 * r * (lhs - rhs) < -UNIT_MARGIN * denominator)
}

fn discriminant(kind: ChannelKind, params: &WernerLikeParams, p: f64) -> Result<f64> {
    Ok(x_discriminant(&evolve_werner_analytic(kind, params, p)?))
}

fn scan_point(i: usize) -> f64 {
    i as f64 / (SCAN_POINTS - 1) as f64
}

/// Critical probability by scan and bisection on `f(p) = |v| - √(yz)`.
///
/// A [`SCAN_POINTS`]-point scan over `[0, 1]` locates the single sign
/// change of `f`; the bracket is then halved until narrower than `tol` and
/// its midpoint returned. If `f` stays positive on `[0, 1)` and vanishes only
/// at `p = 1` the result is [`CriticalResult::NoEsd`]. More than one sign
/// change is reported as [`Error::BracketFailure`].
pub fn pc_numeric(
    kind: ChannelKind,
    params: &WernerLikeParams,
    tol: f64,
) -> Result<CriticalResult> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::domain("tol", tol, "(0, inf)"));
    }
    if !is_initially_entangled(params) {
        return Ok(CriticalResult::NotEntangledInitially);
    }

    let values = (0..SCAN_POINTS)
        .map(|i| discriminant(kind, params, scan_point(i)))
        .collect::<Result<Vec<_>>>()?;
    if values[0] <= 0.0 {
        return Ok(CriticalResult::NotEntangledInitially);
    }
    let sign_changes = values
        .windows(2)
        .filter(|w| (w[0] > 0.0) != (w[1] > 0.0))
        .count();
    if sign_changes > 1 {
        return Err(Error::BracketFailure {
            sign_changes,
            points: SCAN_POINTS,
        });
    }
    let Some(first_dead) = values.iter().position(|&f| f <= 0.0) else {
        return Ok(CriticalResult::NoEsd);
    };
    if first_dead == SCAN_POINTS - 1 && values[first_dead] >= 0.0 {
        // vanishes only in the steady state
        return Ok(CriticalResult::NoEsd);
    }

    let mut lo = scan_point(first_dead - 1);
    let mut hi = scan_point(first_dead);
    for _ in 0..MAX_BISECTIONS {
        if hi - lo <= tol {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if discriminant(kind, params, mid)? > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(CriticalResult::Esd {
        pc: 0.5 * (lo + hi),
    })
}

/// True iff, on a uniform `steps`-point grid over `[0, 1]`, the concurrence
/// never returns to a positive value after first reaching zero.
///
/// # Panics
///
/// If `steps < 2`.
pub fn no_revival_scan(kind: ChannelKind, params: &WernerLikeParams, steps: usize) -> bool {
    assert!(steps >= 2, "no_revival_scan needs at least two grid points");
    if !is_initially_entangled(params) {
        return true;
    }
    let mut dead = false;
    for i in 0..steps {
        let p = i as f64 / (steps - 1) as f64;
        let xe = evolve_werner_analytic(kind, params, p).expect("grid point lies in [0, 1]");
        let alive = concurrence_x(&xe).value() > 0.0;
        if dead && alive {
            return false;
        }
        dead |= !alive;
    }
    true
}
