//! Entanglement dynamics of two qubits under independent local noise.
//!
//! The crate evolves extended Werner-like states `r|Φ⟩⟨Φ| + (1-r)I/4`, with
//! `|Φ⟩ = sinθ|00⟩ + cosθ|11⟩`, through amplitude damping, phase damping and
//! depolarizing channels acting on each qubit separately. Concurrence is
//! available from the general Wootters eigenvalue construction and from the
//! closed form for X-shaped density matrices, and [`esd`] locates the
//! probability at which entanglement vanishes.
//!
//! Basis order everywhere is `|00⟩, |01⟩, |10⟩, |11⟩`.

pub mod channels;
pub mod entanglement;
pub mod error;
pub mod esd;
pub mod figures;
pub mod matcore;
pub mod scan;
pub mod states;

pub use channels::{
    amplitude_damping, apply_local, depolarizing, evolve_werner_analytic, p_of_t, phase_damping,
    ChannelKind, KrausChannel,
};
pub use entanglement::{concurrence_eig, concurrence_x, spin_flip, Concurrence};
pub use error::{Error, Result};
pub use esd::{
    esd_condition_ad, initial_concurrence, no_revival_scan, pc_analytic, pc_numeric,
    CriticalResult, EsdStatus,
};
pub use figures::{caption_check, figure_dataset, CaptionCheck, Dataset, FigureSpec};
pub use matcore::{eig_general, eig_hermitian, kron, Complex, Mat2, Mat4};
pub use scan::{scan_surface, GridSpec, ScanConfig, ScanRow};
pub use states::{
    bell_like, extract_x, purity_tr, validate, werner_like, DensityMatrix, ValidationReport,
    ValidationTolerances, WernerLikeParams, XElements,
};
