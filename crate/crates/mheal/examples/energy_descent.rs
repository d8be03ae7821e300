//! Energy functionals on the unit sphere and the monotone descent solver:
//! four points crowded into one octant of S^2 spread out under the s = 2
//! flow, heading for the regular tetrahedron (energy 2.25, chord sqrt(8/3)).

use mheal::energy::{energy, minimize_e1_swap, minimize_e2};
use mheal::points::{euclid, norm, PointSet, UnitPointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

fn random_unit_points(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    (0..n)
        .map(|_| {
            let v: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
            let len = norm(&v);
            v.into_iter().map(|x| x / len).collect()
        })
        .collect()
}

fn main() -> Result<(), mheal::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    // clumped start: one base direction plus small noise, renormalized
    let rows: Vec<Vec<f64>> = (0..4)
        .map(|_| {
            let v: Vec<f64> = [1.0, 0.0, 0.0]
                .iter()
                .map(|&b| b + 0.3 * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let len = norm(&v);
            v.into_iter().map(|x| x / len).collect()
        })
        .collect();
    let start = UnitPointSet::from_points(PointSet::from_rows(&rows)?)?;

    println!("energies of the clumped start (4 points on S^2):");
    for s in 0..=2 {
        let e = energy(&start, s)?;
        print!("  E_{s} = {:.6}", e.value);
        if let Some(p) = e.product() {
            print!("   (pairwise-distance product {p:.6})");
        }
        println!();
    }

    let run = minimize_e2(&start, 0.02, 30_000, 1e-12)?;
    let first = run.energy_trace[0];
    let last = *run.energy_trace.last().unwrap();
    println!("\ns = 2 descent: {} iterations, stopped on {:?}", run.iterations, run.stop);
    println!("  energy {first:.6} -> {last:.6}   (tetrahedron optimum 2.25)");
    assert!(
        run.energy_trace.windows(2).all(|w| w[1] <= w[0]),
        "descent trace must be non-increasing"
    );

    let pts = &run.points;
    let mut chords: Vec<f64> = (0..4)
        .flat_map(|i| (i + 1..4).map(move |j| (i, j)))
        .map(|(i, j)| euclid(pts.row(i), pts.row(j)))
        .collect();
    chords.sort_by(f64::total_cmp);
    println!(
        "  final chords {:.4} .. {:.4}   (tetrahedron chord {:.4})",
        chords[0],
        chords[5],
        (8.0f64 / 3.0).sqrt()
    );

    // discrete counterpart: pick 6 of 40 pool points by 1-swap local search
    // on the s = 1 energy
    let pool_rows = random_unit_points(40, 3, &mut rng);
    let pool = UnitPointSet::from_points(PointSet::from_rows(&pool_rows)?)?;
    let swap = minimize_e1_swap(&pool, 6, 7, 100)?;
    println!(
        "\n1-swap search over the pool: E_1 = {:.4} after {} passes, {} swaps, locally optimal: {}",
        swap.energy.value, swap.passes, swap.improving_swaps, swap.locally_optimal
    );
    println!("  selected {:?}", swap.selected);
    Ok(())
}
