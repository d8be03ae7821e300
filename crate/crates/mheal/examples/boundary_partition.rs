//! Per-point energy scores from k-nearest-neighbor distances, and the
//! resulting in/out split. High-energy points sit in dense neighborhoods;
//! low-energy points are the isolated ones, so the same scores find either
//! crowded cores or outliers depending on the requested direction.

use mheal::evaluation::{boundary_partition, Direction};
use mheal::points::PointSet;

fn main() -> Result<(), mheal::Error> {
    // a 5 x 5 unit grid plus two far-away points
    let mut rows: Vec<Vec<f64>> = (0..25)
        .map(|i| vec![(i % 5) as f64, (i / 5) as f64])
        .collect();
    rows.push(vec![10.0, 10.0]);
    rows.push(vec![12.0, -3.0]);
    let points = PointSet::from_rows(&rows)?;

    let dense = boundary_partition(&points, 4, 0.25, Direction::HighEnergy)?;
    // round(0.25 * 27) = 7 flagged points
    println!(
        "high-energy direction: {} of {} points flagged",
        dense.in_version_space.len(),
        points.rows()
    );
    println!("  flagged {:?}", dense.in_version_space);
    let mut ranked: Vec<usize> = (0..points.rows()).collect();
    ranked.sort_by(|&a, &b| dense.scores[b].total_cmp(&dense.scores[a]));
    println!(
        "  score extremes: {} at {:.4} (grid interior) down to {} at {:.4} (outlier)",
        ranked[0],
        dense.scores[ranked[0]],
        ranked[ranked.len() - 1],
        dense.scores[ranked[ranked.len() - 1]]
    );

    let sparse = boundary_partition(&points, 4, 0.1, Direction::LowEnergy)?;
    println!(
        "\nlow-energy direction at fraction 0.1: flagged {:?} (the outliers and a corner)",
        sparse.in_version_space
    );
    assert!(sparse.in_version_space.contains(&25));
    assert!(sparse.in_version_space.contains(&26));

    // duplicates give an infinite score; they are reported, not rejected
    rows.push(vec![0.0, 0.0]);
    let with_dup = PointSet::from_rows(&rows)?;
    let part = boundary_partition(&with_dup, 4, 0.25, Direction::HighEnergy)?;
    println!(
        "\nafter appending a duplicate of point 0: degenerate (infinite-score) points {:?}",
        part.degenerate
    );
    Ok(())
}
