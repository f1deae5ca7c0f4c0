//! The Mlynar distribution with parameter n: the law of the gain in a
//! stopping-time game on a fair n-faced die, where throw X_k stops the game
//! as soon as X_k <= k and the gain is the stopping index.
//!
//! The crate provides
//!
//! - numerically robust pmf/cdf/mode/mean/variance evaluation for any
//!   n from 1 to 10^15 ([`Mlynar`]),
//! - an exact rational oracle for small n ([`exact`]),
//! - the scaled-gain asymptotics: E[G_n/sqrt(n)] -> sqrt(pi/2),
//!   Var[G_n/sqrt(n)] -> 2 - pi/2, and the Kolmogorov distance to the
//!   Rayleigh(1) limit law ([`asymptotics`]),
//! - reproducible Monte Carlo sampling by game simulation or cdf inversion
//!   ([`sample`]),
//! - decade-grid studies and the power-law regression of the convergence
//!   gap, plus the brute-force enumeration oracle ([`study`]).
//!
//! With the default `parallel` feature the heavy loops (large-n survival
//! sums, the sup-distance walk, Monte Carlo batches, path enumeration) run
//! on rayon with a fixed chunk layout, so results are identical to the
//! sequential fallback's chunk order and independent of the thread count.

mod dist;
mod error;

pub mod asymptotics;
pub mod exact;
pub mod kernels;
pub mod sample;
pub mod study;

pub use dist::{
    MeanEval, Mlynar, Modes, PmfIter, PmfTable, Probability, FULL_TABLE_LIMIT, MAX_FACE_COUNT,
    MEAN_TRUNCATION_EPS,
};
pub use error::{Error, Result};

pub use asymptotics::{
    asymptotic_mean, kolmogorov_distance, rayleigh_cdf, scaled_cdf, scaled_mean_limit,
    scaled_stats, scaled_variance_limit, DistanceReport, ScaledStats,
};
pub use sample::{play_game, run_batch, sample_inverse, GameRng, GameTrace, Method, SampleStats};
pub use study::{brute_force_pmf, delta_curve, distance_curve, fit_power_law, FitResult, GridSpec};
