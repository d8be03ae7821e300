//! Coreset selection by minimizing hyperspherical energy over spherical
//! clusters, plus the geometric tooling that justifies it: Gaussian random
//! projection with distance-concentration measurement, energy functionals and
//! their gradient solver, farthest-point (max-min) selection with bound
//! checkers, spherical k-means, distribution-matching losses, and a
//! version-space hypothesis-pruning simulator.
//!
//! The crate is examples-first. Each major capability has a runnable example:
//!
//! - `cargo run --example energy_descent` — energy functionals and the
//!   gradient solver on the unit sphere
//! - `cargo run --example coreset_selection` — greedy product selection vs
//!   the max-min rule, with bound reports
//! - `cargo run --example spherical_clustering` — spherical k-means on a
//!   synthetic mixture
//! - `cargo run --example mheal_pipeline` — the full cluster-then-select
//!   pipeline producing a representative set
//! - `cargo run --example random_projection` — projection concentration and
//!   order-preservation measurement
//! - `cargo run --example distribution_matching` — KL / MMD / mean-shift
//!   losses across selection budgets
//! - `cargo run --example boundary_partition` — per-point energy scores and
//!   the in/out version-space split
//! - `cargo run --example hypothesis_pruning` — IWAL vs MHEAL pruning
//!   schedules on a labeled stream
//!
//! A thin `mheal` binary exposes the same capabilities as subcommands
//! (`select`, `cluster`, `mheal`, `match`, `boundary`, `prune`, `project`,
//! `check-bounds`) for file-based pipelines.

pub mod clustering;
pub mod energy;
pub mod error;
pub mod evaluation;
pub mod geometry;
pub mod io;
pub mod pipeline;
pub mod points;
pub mod report;
pub mod selection;
pub mod versionspace;

pub use error::Error;
pub use points::{PointSet, UnitPointSet};

/// Pairwise distances below this are treated as coincident points.
/// Energies over such pairs are infinite rather than overflowing.
pub const DUP_TOL: f64 = 1e-12;

/// Sums `terms` in a canonical order (ascending by total float order), so the
/// result depends only on the multiset of terms, never on row order or on a
/// parallel reduction schedule.
pub(crate) fn canonical_sum(mut terms: Vec<f64>) -> f64 {
    terms.sort_unstable_by(f64::total_cmp);
    terms.iter().sum()
}

/// Derives a module-scoped seed from a root seed and a label, so sub-runs
/// are independently reproducible: identical (root, label) pairs always map
/// to the identical stream seed.
pub fn derive_seed(root: u64, label: &str) -> u64 {
    // FNV-1a over the label, folded into the root, then splitmix64-finalized
    let mut h: u64 = 0xcbf29ce484222325;
    for b in label.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x100000001b3);
    }
    let mut z = root ^ h;
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}
