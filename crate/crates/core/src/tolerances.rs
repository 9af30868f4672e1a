//! Numerical thresholds used across the crate, kept in one table.

/// Relative tolerance for algebra identities (norm multiplicativity,
/// alternativity, power associativity).
pub const ALGEBRA_REL: f64 = 1e-12;

/// Orthogonality tolerance for automorphism matrices.
pub const AUTOMORPHISM_ORTHO: f64 = 1e-10;

/// Multiplicativity tolerance `‖g(xy) − g(x)g(y)‖` for automorphisms.
pub const AUTOMORPHISM_MUL: f64 = 1e-8;

/// Leibniz residual tolerance for derivations.
pub const DERIVATION_LEIBNIZ: f64 = 1e-10;

/// Newton polishing stops once `‖P(x)‖` drops below this.
pub const NEWTON_RESIDUAL: f64 = 1e-14;

/// Newton iteration cap.
pub const NEWTON_MAX_ITER: usize = 50;

/// A point counts as a root for localization when its potential is below this.
pub const ROOT_POTENTIAL: f64 = 1e-12;

/// `‖A‖ < SPHERICAL_REMAINDER · (1 + max‖a_k‖)` signals a spherical root.
pub const SPHERICAL_REMAINDER: f64 = 1e-8;

/// Relative singular-value cutoff for numerical rank.
pub const RANK_CUTOFF: f64 = 1e-8;

/// Singular-value ratios inside `[RANK_AMBIGUOUS_LO, RANK_AMBIGUOUS_HI]`
/// are too close to the cutoff to classify.
pub const RANK_AMBIGUOUS_LO: f64 = 1e-10;
pub const RANK_AMBIGUOUS_HI: f64 = 1e-6;

/// Residual target for the complex polynomial root finder (relative to
/// `Σ|a_k||z|^k`).
pub const ABERTH_RESIDUAL: f64 = 1e-13;

/// Aberth sweep limit.
pub const ABERTH_MAX_SWEEPS: usize = 500;

/// Imaginary parts below this (relative to `1 + |z|`) are treated as real.
pub const REAL_ROOT_IMAG: f64 = 1e-7;

/// Roots closer than this (relative) are merged into one stratum.
pub const ROOT_CLUSTER: f64 = 1e-6;

/// Root matching tolerance for the cyclic symmetry check.
pub const CYCLIC_MATCH: f64 = 1e-8;

/// Attractor deduplication distance.
pub const ATTRACTOR_DEDUP: f64 = 1e-6;

/// Minimum pairwise distance for roots to count as isolated.
pub const ISOLATED_SEPARATION: f64 = 1e-4;

/// Default capture radius around attractors.
pub const CAPTURE_RADIUS: f64 = 0.05;

/// Per-step slack on the Lyapunov property, relative to the initial potential.
pub const LYAPUNOV_SLACK: f64 = 1e-12;

/// Half-width of the excluded equator band, in `|cos φ|`.
pub const EQUATOR_BAND: f64 = 0.05;

/// Bisection target for `|Δ(t_c)|`.
pub const CROSSING_DELTA: f64 = 1e-10;

/// Tangential crossings have `|Δ̇| < TANGENTIAL_REL · max|Δ̇|`.
pub const TANGENTIAL_REL: f64 = 1e-6;

/// Spectral peak threshold above the noise floor, in dB.
pub const PEAK_DB: f64 = 10.0;

/// Dynamic range cap for the spectral noise floor (relative to the max bin).
pub const PSD_FLOOR_REL: f64 = 1e-12;
