//! Two selection rules over one pool: product-of-distances greedy tried from
//! every start, and max-min (farthest-point) selection, whose step-wise
//! sandwich bounds and loss envelope are checked on the way.

use mheal::points::{norm, PointSet, UnitPointSet};
use mheal::selection::{
    approximation_loss_check, greedy_select, maxmin_select, sandwich_bounds,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn main() -> Result<(), mheal::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let rows: Vec<Vec<f64>> = (0..40)
        .map(|_| {
            let v: Vec<f64> = (0..3).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let len = norm(&v);
            v.into_iter().map(|x| x / len).collect()
        })
        .collect();
    let pool = UnitPointSet::from_points(PointSet::from_rows(&rows)?)?;

    let greedy = greedy_select(&pool, 6)?;
    println!("greedy over all 40 starts:");
    println!("  winner start {}  selected {:?}", greedy.best_init, greedy.selected);
    println!(
        "  log-energy {:.6}  distance product {:.6}",
        greedy.energy.value,
        greedy.energy.product().unwrap()
    );
    println!(
        "  {} distance evaluations, {} degenerate picks",
        greedy.distance_evals, greedy.degenerate_picks
    );

    let maxmin = maxmin_select(&pool, 6, greedy.best_init)?;
    println!("\nmax-min from the same start:");
    println!("  selected {:?}", maxmin.selected);
    println!("  radii {:?}", maxmin.radii.iter().map(|r| (r * 1e4).round() / 1e4).collect::<Vec<_>>());
    println!("  covering radius {:.4}", maxmin.covering_radius);
    assert!(
        maxmin.radii.windows(2).all(|w| w[1] <= w[0]),
        "farthest-point radii must be non-increasing"
    );

    // certify the fourth max-min step: bounds around the energy of
    // prefix + candidate
    let prefix = &maxmin.selected[..3];
    let candidate = maxmin.selected[3];
    let b = sandwich_bounds(&pool, prefix, candidate)?;
    println!("\nsandwich bounds for candidate {candidate} after prefix {prefix:?}:");
    println!("  lower {:.6} <= middle {:.6} <= energy {:.6}", b.lower, b.middle, b.energy);
    println!(
        "  hypothesis (candidate min-dist {:.4} <= selected min-pairwise {:.4}) holds: {}",
        b.candidate_min_dist, b.selected_min_pairwise, b.hypothesis_holds
    );
    println!("  chain holds: {:?}   upper loss bound {:.6}", b.chain_holds, b.upper_loss_bound);

    let envelope = approximation_loss_check(&pool, &maxmin.selected)?;
    println!("\nloss envelope for the full max-min selection:");
    println!(
        "  per-root loss {:.6} inside [{:.6}, {:.6}]: {}",
        envelope.per_root_loss, envelope.lower, envelope.upper, envelope.within
    );
    println!("  chord spread over remaining candidates: {:.4} .. {:.4}", envelope.min_chord, envelope.max_chord);
    Ok(())
}
