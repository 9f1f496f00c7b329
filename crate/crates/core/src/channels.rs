//! Single-qubit noise channels and their local action on two qubits.
//!
//! Each qubit couples to its own bath, so the joint map is
//! `ρ ↦ Σᵢⱼ (Eᵢ⊗Fⱼ) ρ (Eᵢ⊗Fⱼ)†`. For Werner-like inputs the result stays
//! X-shaped and [`evolve_werner_analytic`] gives its elements in closed form;
//! the Kraus route in [`apply_local`] is the independent check on those
//! expressions.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matcore::{kron, Complex, Mat2, Mat4};
use crate::states::{DensityMatrix, WernerLikeParams, XElements};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChannelKind {
    AmplitudeDamping,
    PhaseDamping,
    Depolarizing,
}

impl ChannelKind {
    pub const ALL: [ChannelKind; 3] = [
        ChannelKind::AmplitudeDamping,
        ChannelKind::PhaseDamping,
        ChannelKind::Depolarizing,
    ];

    /// Lowercase token used on the command line and in JSON.
    pub fn token(self) -> &'static str {
        match self {
            ChannelKind::AmplitudeDamping => "ad",
            ChannelKind::PhaseDamping => "pd",
            ChannelKind::Depolarizing => "d",
        }
    }
}

impl fmt::Display for ChannelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ChannelKind::AmplitudeDamping => "AD",
            ChannelKind::PhaseDamping => "PD",
            ChannelKind::Depolarizing => "D",
        })
    }
}

impl FromStr for ChannelKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "ad" => Ok(ChannelKind::AmplitudeDamping),
            "pd" => Ok(ChannelKind::PhaseDamping),
            "d" => Ok(ChannelKind::Depolarizing),
            other => Err(format!("unknown channel `{other}` (expected ad, pd or d)")),
        }
    }
}

/// A Kraus decomposition of one of the three channels at probability `p`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausChannel {
    kind: ChannelKind,
    p: f64,
    ops: Vec<Mat2>,
}

impl KrausChannel {
    pub fn new(kind: ChannelKind, p: f64) -> Result<Self> {
        match kind {
            ChannelKind::AmplitudeDamping => amplitude_damping(p),
            ChannelKind::PhaseDamping => phase_damping(p),
            ChannelKind::Depolarizing => depolarizing(p),
        }
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn ops(&self) -> &[Mat2] {
        &self.ops
    }

    /// `max |Σₖ Eₖ†Eₖ - I|`.
    pub fn completeness_deviation(&self) -> f64 {
        let sum = self
            .ops
            .iter()
            .fold(Mat2::zeros(), |acc, e| acc + e.dagger() * *e);
        sum.max_abs_diff(&Mat2::identity())
    }

    /// Action on a single-qubit operator (linear, so any 2×2 matrix works).
    pub fn apply_single(&self, rho: &Mat2) -> Mat2 {
        self.ops
            .iter()
            .fold(Mat2::zeros(), |acc, e| acc + *e * *rho * e.dagger())
    }
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain("p", p, "[0, 1]"))
    }
}

/// `E₀ = |0⟩⟨0| + √(1-p)|1⟩⟨1|`, `E₁ = √p|0⟩⟨1|`.
pub fn amplitude_damping(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let e0 = Mat2::from_real([[1.0, 0.0], [0.0, (1.0 - p).sqrt()]]);
    let e1 = Mat2::from_real([[0.0, p.sqrt()], [0.0, 0.0]]);
    Ok(KrausChannel {
        kind: ChannelKind::AmplitudeDamping,
        p,
        ops: vec![e0, e1],
    })
}

/// `ρ ↦ (1-p)ρ + p(P₀ρP₀ + P₁ρP₁)` as `{√(1-p)I, √p|0⟩⟨0|, √p|1⟩⟨1|}`.
pub fn phase_damping(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    Ok(KrausChannel {
        kind: ChannelKind::PhaseDamping,
        p,
        ops: vec![
            Mat2::identity().scale_real((1.0 - p).sqrt()),
            Mat2::from_diag([p.sqrt(), 0.0]),
            Mat2::from_diag([0.0, p.sqrt()]),
        ],
    })
}

/// `ρ ↦ (1-p)ρ + p I/2` as `{√(1-3p/4)I, √(p/4)σx, √(p/4)σy, √(p/4)σz}`.
pub fn depolarizing(p: f64) -> Result<KrausChannel> {
    check_probability(p)?;
    let q = (p / 4.0).sqrt();
    Ok(KrausChannel {
        kind: ChannelKind::Depolarizing,
        p,
        ops: vec![
            Mat2::identity().scale_real((1.0 - 0.75 * p).sqrt()),
            Mat2::pauli_x().scale_real(q),
            Mat2::pauli_y().scale_real(q),
            Mat2::pauli_z().scale_real(q),
        ],
    })
}

/// Applies `on_a` to the first qubit and `on_b` to the second.
pub fn apply_local(on_a: &KrausChannel, on_b: &KrausChannel, rho: &DensityMatrix) -> DensityMatrix {
    let m = rho.matrix();
    let mut out = Mat4::zeros();
    for e in on_a.ops() {
        for f in on_b.ops() {
            let k = kron(e, f);
            out = out + k * *m * k.dagger();
        }
    }
    DensityMatrix::from_mat_unchecked(out)
}

/// Decay probability `1 - exp(-γt/2)` of the amplitude damping bath.
pub fn p_of_t(gamma: f64, t: f64) -> Result<f64> {
    if !(gamma.is_finite() && gamma >= 0.0) {
        return Err(Error::domain("gamma", gamma, "[0, inf)"));
    }
    if !(t.is_finite() && t >= 0.0) {
        return Err(Error::domain("t", t, "[0, inf)"));
    }
    Ok(-(-0.5 * gamma * t).exp_m1())
}

/// X elements of a Werner-like state after both qubits pass through `kind`
/// at probability `p`.
pub fn evolve_werner_analytic(
    kind: ChannelKind,
    params: &WernerLikeParams,
    p: f64,
) -> Result<XElements> {
    check_probability(p)?;
    let r = params.r();
    let (sin, cos) = params.theta().sin_cos();
    let (sin2, cos2) = (sin * sin, cos * cos);
    let mix = (1.0 - r) / 4.0;
    let real = |a: f64| Complex::new(a, 0.0);

    let xe = match kind {
        ChannelKind::AmplitudeDamping => {
            let yz = mix * (1.0 - p * p) + r * cos2 * p * (1.0 - p);
            XElements {
                x: mix * (1.0 + p).powi(2) + r * (cos2 * p * p + sin2),
                y: yz,
                z: yz,
                w: (mix + r * cos2) * (1.0 - p).powi(2),
                u: real(0.0),
                v: real(r * sin * cos * (1.0 - p)),
            }
        }
        ChannelKind::PhaseDamping => XElements {
            x: mix + r * sin2,
            y: mix,
            z: mix,
            w: mix + r * cos2,
            u: real(0.0),
            v: real(r * sin * cos * (1.0 - p).powi(2)),
        },
        ChannelKind::Depolarizing => {
            let keep = 1.0 - p / 2.0;
            let flip = p / 2.0;
            let yz = mix * (1.0 - p + p * p / 2.0) + p / 4.0 * keep * (1.0 + r);
            XElements {
                x: keep.powi(2) * (mix + r * sin2)
                    + p * keep * mix
                    + flip.powi(2) * (mix + r * cos2),
                y: yz,
                z: yz,
                w: keep.powi(2) * (mix + r * cos2)
                    + p * keep * mix
                    + flip.powi(2) * (mix + r * sin2),
                u: real(0.0),
                v: real(r * sin * cos * (1.0 - p).powi(2)),
            }
        }
    };
    Ok(xe)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{extract_x, validate, werner_like};
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, PI};

    fn c(re: f64) -> Complex {
        Complex::new(re, 0.0)
    }

    fn basis() -> Vec<Mat2> {
        let mut out = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let mut m = Mat2::zeros();
                m[(i, j)] = c(1.0);
                out.push(m);
            }
        }
        out
    }

    /// The channel maps written out directly, without Kraus operators.
    fn literal_map(kind: ChannelKind, p: f64, rho: &Mat2) -> Mat2 {
        match kind {
            ChannelKind::AmplitudeDamping => {
                let mut out = Mat2::zeros();
                out[(0, 0)] = rho[(0, 0)] + rho[(1, 1)] * p;
                out[(1, 1)] = rho[(1, 1)] * (1.0 - p);
                out[(0, 1)] = rho[(0, 1)] * (1.0 - p).sqrt();
                out[(1, 0)] = rho[(1, 0)] * (1.0 - p).sqrt();
                out
            }
            ChannelKind::PhaseDamping => {
                let p0 = Mat2::from_diag([1.0, 0.0]);
                let p1 = Mat2::from_diag([0.0, 1.0]);
                rho.scale_real(1.0 - p) + (p0 * *rho * p0 + p1 * *rho * p1).scale_real(p)
            }
            ChannelKind::Depolarizing => {
                rho.scale_real(1.0 - p) + Mat2::identity().scale(rho.trace() * (p / 2.0))
            }
        }
    }

    fn probabilities(n: usize) -> impl Iterator<Item = f64> {
        (0..n).map(move |i| i as f64 / (n - 1) as f64)
    }

    #[test]
    fn constructors_reject_out_of_range() {
        for kind in ChannelKind::ALL {
            assert!(KrausChannel::new(kind, -0.01).is_err());
            assert!(KrausChannel::new(kind, 1.01).is_err());
            assert!(KrausChannel::new(kind, f64::NAN).is_err());
        }
    }

    #[test]
    fn completeness_on_fifty_points() {
        for kind in ChannelKind::ALL {
            for p in probabilities(50) {
                let ch = KrausChannel::new(kind, p).unwrap();
                assert!(ch.completeness_deviation() <= 1e-12, "{kind} p={p}");
            }
        }
    }

    #[test]
    fn kraus_sets_match_literal_maps() {
        for kind in ChannelKind::ALL {
            for p in probabilities(11) {
                let ch = KrausChannel::new(kind, p).unwrap();
                for b in basis() {
                    let diff = ch.apply_single(&b).max_abs_diff(&literal_map(kind, p, &b));
                    assert!(diff <= 1e-15, "{kind} p={p} diff={diff}");
                }
            }
        }
    }

    #[test]
    fn zero_probability_is_identity() {
        for kind in ChannelKind::ALL {
            let ch = KrausChannel::new(kind, 0.0).unwrap();
            for b in basis() {
                assert_eq!(ch.apply_single(&b), b);
            }
        }
    }

    #[test]
    fn amplitude_damping_operators() {
        let ch = amplitude_damping(0.5).unwrap();
        assert_eq!(
            ch.ops()[0],
            Mat2::from_real([[1.0, 0.0], [0.0, FRAC_1_SQRT_2]])
        );
        assert_eq!(
            ch.ops()[1],
            Mat2::from_real([[0.0, 0.5f64.sqrt()], [0.0, 0.0]])
        );
        assert_eq!(amplitude_damping(0.0).unwrap().ops()[1], Mat2::zeros());
    }

    #[test]
    fn full_amplitude_damping_resets_to_ground() {
        let ch = amplitude_damping(1.0).unwrap();
        let plus = Mat2::from_real([[0.5, 0.5], [0.5, 0.5]]);
        let out = ch.apply_single(&plus);
        assert!(out.max_abs_diff(&Mat2::from_diag([1.0, 0.0])) < 1e-15);
    }

    #[test]
    fn phase_damping_on_plus_state() {
        let plus = Mat2::from_real([[0.5, 0.5], [0.5, 0.5]]);
        let half = phase_damping(0.5).unwrap().apply_single(&plus);
        assert!(half.max_abs_diff(&Mat2::from_real([[0.5, 0.25], [0.25, 0.5]])) < 1e-15);
        let full = phase_damping(1.0).unwrap().apply_single(&plus);
        assert!(full.max_abs_diff(&Mat2::from_diag([0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn depolarizing_examples() {
        let ground = Mat2::from_diag([1.0, 0.0]);
        let half = depolarizing(0.5).unwrap().apply_single(&ground);
        assert!(half.max_abs_diff(&Mat2::from_diag([0.75, 0.25])) < 1e-15);
        let full = depolarizing(1.0).unwrap().apply_single(&ground);
        assert!(full.max_abs_diff(&Mat2::from_diag([0.5, 0.5])) < 1e-15);
    }

    #[test]
    fn local_identity_channels_leave_state() {
        let rho = werner_like(&WernerLikeParams::new(0.6, 0.4).unwrap());
        let id = amplitude_damping(0.0).unwrap();
        assert!(
            apply_local(&id, &id, &rho)
                .matrix()
                .max_abs_diff(rho.matrix())
                < 1e-15
        );
    }

    #[test]
    fn full_depolarizing_gives_maximally_mixed() {
        let rho = werner_like(&WernerLikeParams::new(0.9, 1.1).unwrap());
        let d = depolarizing(1.0).unwrap();
        let out = apply_local(&d, &d, &rho);
        assert!(
            out.matrix()
                .max_abs_diff(&Mat4::identity().scale_real(0.25))
                < 1e-15
        );
    }

    #[test]
    fn distinct_channels_per_qubit() {
        // AD on A only: |11⟩ decays to |01⟩ with probability p.
        let rho = DensityMatrix::new(Mat4::from_diag([0.0, 0.0, 0.0, 1.0])).unwrap();
        let out = apply_local(
            &amplitude_damping(0.3).unwrap(),
            &amplitude_damping(0.0).unwrap(),
            &rho,
        );
        assert!(
            out.matrix()
                .max_abs_diff(&Mat4::from_diag([0.0, 0.3, 0.0, 0.7]))
                < 1e-15
        );
    }

    #[test]
    fn p_of_t_values() {
        assert_eq!(p_of_t(1.0, 0.0).unwrap(), 0.0);
        assert!((p_of_t(1.0, 2.0 * 4f64.ln()).unwrap() - 0.75).abs() < 1e-15);
        let late = p_of_t(1.0, 60.0).unwrap();
        assert!(late <= 1.0 && 1.0 - late < 1e-12);
        assert!(p_of_t(1.0, 10.0).unwrap() < p_of_t(1.0, 20.0).unwrap());
        assert!(p_of_t(-1.0, 1.0).is_err());
        assert!(p_of_t(1.0, -1.0).is_err());
        assert!(p_of_t(1.0, f64::INFINITY).is_err());
    }

    #[test]
    fn analytic_at_zero_is_initial_state() {
        for kind in ChannelKind::ALL {
            let params = WernerLikeParams::new(0.8, 0.9).unwrap();
            let xe = evolve_werner_analytic(kind, &params, 0.0).unwrap();
            let initial = extract_x(&werner_like(&params), 1e-12).unwrap();
            assert!(xe.to_matrix().max_abs_diff(&initial.to_matrix()) < 1e-15);
        }
    }

    #[test]
    fn analytic_amplitude_damping_bell_half() {
        let params = WernerLikeParams::new(1.0, FRAC_PI_4).unwrap();
        let xe = evolve_werner_analytic(ChannelKind::AmplitudeDamping, &params, 0.5).unwrap();
        let want = [0.625, 0.125, 0.125, 0.125];
        for (got, want) in [xe.x, xe.y, xe.z, xe.w].into_iter().zip(want) {
            assert!((got - want).abs() < 1e-15);
        }
        assert_eq!(xe.u, c(0.0));
        assert!((xe.v - c(0.25)).norm() < 1e-15);
        // Kraus cross-check
        let ad = amplitude_damping(0.5).unwrap();
        let kraus = apply_local(&ad, &ad, &werner_like(&params));
        assert!(kraus.matrix().max_abs_diff(&xe.to_matrix()) < 1e-12);
    }

    #[test]
    fn analytic_full_depolarizing() {
        for j in 0..8 {
            let params = WernerLikeParams::new(1.0, j as f64 * 0.4).unwrap();
            let xe = evolve_werner_analytic(ChannelKind::Depolarizing, &params, 1.0).unwrap();
            assert!(
                xe.to_matrix()
                    .max_abs_diff(&Mat4::identity().scale_real(0.25))
                    < 1e-15
            );
        }
    }

    #[test]
    fn analytic_rejects_bad_p() {
        let params = WernerLikeParams::new(1.0, 0.3).unwrap();
        assert!(evolve_werner_analytic(ChannelKind::Depolarizing, &params, 1.5).is_err());
    }

    #[test]
    fn phase_damping_freezes_diagonal() {
        for i in 0..=10 {
            for j in 0..=20 {
                let params = WernerLikeParams::new(i as f64 / 10.0, j as f64 * PI / 20.0).unwrap();
                let initial = extract_x(&werner_like(&params), 1e-12).unwrap();
                for p in probabilities(21) {
                    let xe = evolve_werner_analytic(ChannelKind::PhaseDamping, &params, p).unwrap();
                    assert_eq!(
                        (xe.x, xe.y, xe.z, xe.w),
                        (initial.x, initial.y, initial.z, initial.w)
                    );
                    let pd = phase_damping(p).unwrap();
                    let kraus =
                        extract_x(&apply_local(&pd, &pd, &werner_like(&params)), 1e-12).unwrap();
                    for (a, b) in [
                        (kraus.x, xe.x),
                        (kraus.y, xe.y),
                        (kraus.z, xe.z),
                        (kraus.w, xe.w),
                    ] {
                        assert!((a - b).abs() <= 1e-15);
                    }
                }
            }
        }
    }

    #[test]
    fn channel_tokens_round_trip() {
        for kind in ChannelKind::ALL {
            assert_eq!(kind.token().parse::<ChannelKind>().unwrap(), kind);
        }
        assert!("xx".parse::<ChannelKind>().is_err());
    }

    #[test]
    fn local_output_is_valid() {
        let rho = werner_like(&WernerLikeParams::new(0.5, 0.7).unwrap());
        for kind in ChannelKind::ALL {
            let ch = KrausChannel::new(kind, 0.37).unwrap();
            let out = apply_local(&ch, &ch, &rho);
            assert!(validate(out.matrix(), &Default::default()).passed);
        }
    }
}
