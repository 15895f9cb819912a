//! Independent numerical checks on one-dimensional grids.
//!
//! Densities are sampled on uniform grids, summed by discrete convolution,
//! and their Rényi entropies measured by the trapezoid rule. Every bound
//! constant is dimension-free, so `d = 1` exercises all of them.

mod certify;
mod convolve;
mod grid;
mod law;

pub use certify::{
    certify_instance, certify_repi, collision_bound, random_corpus, run_corpus, Certification, CorpusInstance,
    CERTIFY_SLACK, CORPUS_ORDERS,
};
pub use convolve::{convolve, convolve_direct, convolve_fft, DIRECT_LIMIT};
pub use grid::{entropy_power_of_grid, renyi_entropy_of_grid, trapezoid, GridDensity, DEFAULT_SPACING, MASS_TOLERANCE};
pub use law::{gaussian_renyi_entropy, Law, TAIL_CUTOFF};
