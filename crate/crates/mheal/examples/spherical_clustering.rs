//! Spherical k-means on a synthetic mixture: three directional blobs on S^2,
//! then a labeled two-blob set scored by best-matching accuracy. Labels never
//! enter the clustering; they only grade it afterwards.

use mheal::clustering::{matched_accuracy, spherical_kmeans};
use mheal::points::{dot, norm, PointSet, UnitPointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// `per` points around each of the given directions, noise sigma 0.25,
/// renormalized to the sphere.
fn blobs(centers: &[[f64; 3]], per: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut rows = Vec::with_capacity(centers.len() * per);
    for c in centers {
        for _ in 0..per {
            let v: Vec<f64> = c
                .iter()
                .map(|&x| x + 0.25 * rng.sample::<f64, _>(StandardNormal))
                .collect();
            let len = norm(&v);
            rows.push(v.into_iter().map(|x| x / len).collect());
        }
    }
    rows
}

fn main() -> Result<(), mheal::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let centers = [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]];
    let rows = blobs(&centers, 100, &mut rng);
    let points = UnitPointSet::from_points(PointSet::from_rows(&rows)?)?;

    let model = spherical_kmeans(&points, 3, 60, 17)?;
    println!(
        "k = 3 on 300 points: {} sweeps, {} reseeds, objective {:.4}",
        model.iterations_run, model.reseeds, model.objective
    );
    println!(
        "  objective trace {:.4} -> {:.4} over {} half-steps",
        model.objective_trace[0],
        model.objective_trace.last().unwrap(),
        model.objective_trace.len()
    );
    assert!(
        model.objective_trace.windows(2).all(|w| w[1] <= w[0] + 1e-9),
        "objective must not increase at any half-step"
    );
    for c in 0..model.k() {
        // which true direction this center landed on
        let best = centers
            .iter()
            .enumerate()
            .max_by(|a, b| {
                dot(&model.centers[c], a.1).total_cmp(&dot(&model.centers[c], b.1))
            })
            .unwrap()
            .0;
        println!(
            "  cluster {c}: {} members, center aligned with blob {best} (cos {:.4})",
            model.members(c).len(),
            dot(&model.centers[c], &centers[best])
        );
    }

    // scored run: two blobs, +/-1 labels by blob
    let rows = blobs(&[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0]], 80, &mut rng);
    let labels: Vec<i8> = (0..160).map(|i| if i < 80 { 1 } else { -1 }).collect();
    let points = UnitPointSet::from_points(PointSet::from_rows(&rows)?)?;
    let model = spherical_kmeans(&points, 2, 60, 5)?;
    let accuracy = matched_accuracy(&model.assignments, &labels, 2)?;
    println!("\nlabeled two-blob run: matched accuracy {accuracy:.4}");
    Ok(())
}
