//! Gaussian random projection: distance concentration measured by Monte
//! Carlo (fresh matrix per trial, kappa = input dimension), plus the
//! order-preservation fraction for one fixed projection to a lower dimension.

use mheal::geometry::{
    concentration_test, gaussian_project, order_preservation_check, OrderKind, ProjectionMatrix,
};
use mheal::points::{euclid, PointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn main() -> Result<(), mheal::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(29);
    // rows at five different scales, so squared distances spread widely
    // enough for the certified-order sub-report to have real mass
    let rows: Vec<Vec<f64>> = (0..60)
        .map(|i| {
            let scale = 0.5 + 0.75 * (i % 5) as f64;
            (0..40).map(|_| scale * rng.sample::<f64, _>(StandardNormal)).collect()
        })
        .collect();
    let data = PointSet::from_rows(&rows)?;

    let report = concentration_test(&data, 1.0, 1.0, 20_000, 29)?;
    println!(
        "concentration at kappa = {} (input dimension), epsilon = {}:",
        report.kappa, report.epsilon
    );
    println!(
        "  {} violations in {} trials: rate {:.6} vs bound {:.6}",
        report.violations, report.trials, report.violation_rate, report.bound
    );
    println!(
        "  feasible (kappa * eps^2 clears the constant): {}   passed: {}",
        report.feasible, report.passed
    );

    // one fixed matrix down to 16 dimensions
    let proj = ProjectionMatrix::generate(16, 40, 1.0, 7)?;
    let projected = gaussian_project(&data, &proj)?;
    println!(
        "\nfixed projection {} -> {} dims; squared distances scale by about band factor {}",
        proj.input_dim(),
        proj.kappa(),
        proj.band_factor()
    );
    for (i, j) in [(0usize, 1usize), (2, 3), (4, 5)] {
        let before = euclid(data.row(i), data.row(j)).powi(2);
        let after = euclid(projected.row(i), projected.row(j)).powi(2);
        println!(
            "  pair ({i}, {j}): |x_i - x_j|^2 = {before:.3}, projected {after:.3}, ratio {:.3}",
            after / before
        );
    }

    let order = order_preservation_check(&data, &proj, OrderKind::Geodesic, 0.5, 31)?;
    println!("\norder preservation over shared-middle triples (chord metric):");
    println!(
        "  {} of {} eligible triples kept their order ({:.4}){}",
        order.preserved,
        order.eligible,
        order.fraction_preserved,
        if order.subsampled { ", subsampled" } else { "" }
    );
    println!(
        "  band-certified triples: {} with {} violations (must be 0)",
        order.conditional_triples, order.conditional_violations
    );
    Ok(())
}
