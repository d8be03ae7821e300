//! How well a coreset stands in for the full set, measured three ways: a
//! binned KL divergence per feature, a plain-distance MMD statistic, and the
//! distance between means. Max-min coresets are compared against uniform
//! random subsets of the same size.

use mheal::evaluation::match_losses;
use mheal::geometry::{normalize_to_sphere, NormalizeMode};
use mheal::points::PointSet;
use mheal::selection::maxmin_select;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn mixture(n: usize, d: usize, k: usize, seed: u64) -> PointSet {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            let c = i % k;
            (0..d)
                .map(|j| {
                    let center = if j == c % d { 3.0 } else { 0.0 };
                    center + 0.5 * rng.sample::<f64, _>(StandardNormal)
                })
                .collect()
        })
        .collect();
    PointSet::from_rows(&rows).unwrap()
}

fn main() -> Result<(), mheal::Error> {
    let data = mixture(300, 4, 3, 41);
    // selection runs on the sphere; losses compare the raw rows
    let unit = normalize_to_sphere(&data, NormalizeMode::L2)?.points;
    let mut rng = ChaCha8Rng::seed_from_u64(41);

    println!("losses against the full 300-point set (beta = 1e-6):");
    println!("{:>8} {:>12} {:>12} {:>12} {:>10}", "budget", "kl", "mmd", "mmd_mu", "rule");
    for budget in [10usize, 20, 40] {
        let picked = maxmin_select(&unit, budget, 0)?.selected;
        let coreset = match_losses(&data, &data.gather(&picked)?, 1e-6)?;
        println!(
            "{budget:>8} {:>12.6} {:>12.6} {:>12.6} {:>10}",
            coreset.kl, coreset.mmd, coreset.mmd_mu, "max-min"
        );

        let uniform: Vec<usize> =
            rand::seq::index::sample(&mut rng, data.rows(), budget).into_vec();
        let baseline = match_losses(&data, &data.gather(&uniform)?, 1e-6)?;
        println!(
            "{budget:>8} {:>12.6} {:>12.6} {:>12.6} {:>10}",
            baseline.kl, baseline.mmd, baseline.mmd_mu, "uniform"
        );
    }

    // the self-match is exactly zero, not merely small: identical histograms
    // and identical kernel sums cancel term for term
    let full_indices: Vec<usize> = (0..data.rows()).collect();
    let zero = match_losses(&data, &data.gather(&full_indices)?, 0.0)?;
    println!(
        "\nself-match at beta = 0: kl = {:?}, mmd = {:?}, mmd_mu = {:?}",
        zero.kl, zero.mmd, zero.mmd_mu
    );
    assert_eq!((zero.kl, zero.mmd, zero.mmd_mu), (0.0, 0.0, 0.0));
    Ok(())
}
