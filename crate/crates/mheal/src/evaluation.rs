//! Distribution-matching losses between a dataset and a selected subset, and
//! the per-point energy partition separating likely-boundary points from the
//! interior.

use crate::error::Error;
use crate::points::{euclid, PointSet};
use serde::{Deserialize, Serialize};

/// Histogram resolution for the KL loss: per-feature histograms with this
/// many bins over the full set's min-max range, averaged across features.
pub const KL_BINS: usize = 32;

#[derive(Debug, Clone, Serialize)]
pub struct MatchReport {
    /// Mean, over features, of sum_bins X(i) * ln(X(i) / (X'(i) + beta)).
    pub kl: f64,
    /// |three-term plain-distance statistic|^(1/2).
    pub mmd: f64,
    /// Distance between the two means.
    pub mmd_mu: f64,
    pub beta: f64,
    pub n: usize,
    pub m: usize,
    pub bins: usize,
}

/// How well `subset` matches `full`, feature histograms binned on the full
/// set's per-feature range. The beta offset sits in the KL denominator so an
/// empty subset bin stays finite (beta = 0 is honored literally and may
/// produce an infinite kl).
pub fn match_losses(full: &PointSet, subset: &PointSet, beta: f64) -> Result<MatchReport, Error> {
    if full.is_empty() {
        return Err(Error::EmptyInput);
    }
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if full.dim() != subset.dim() {
        return Err(Error::DimensionMismatch {
            expected: full.dim(),
            got: subset.dim(),
        });
    }
    if !beta.is_finite() || beta < 0.0 {
        return Err(Error::invalid("beta", "must be finite and non-negative"));
    }
    let (n, m, d) = (full.rows(), subset.rows(), full.dim());

    // KL over per-feature histograms
    let mut kl_sum = 0.0;
    for f in 0..d {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let v = full.row(i)[f];
            lo = lo.min(v);
            hi = hi.max(v);
        }
        let width = hi - lo;
        let bin_of = |v: f64| -> usize {
            if width <= 0.0 {
                return 0;
            }
            let b = ((v - lo) / width * KL_BINS as f64).floor() as isize;
            b.clamp(0, KL_BINS as isize - 1) as usize
        };
        let mut hx = [0u64; KL_BINS];
        let mut hs = [0u64; KL_BINS];
        for i in 0..n {
            hx[bin_of(full.row(i)[f])] += 1;
        }
        for i in 0..m {
            hs[bin_of(subset.row(i)[f])] += 1;
        }
        let mut kl_f = 0.0;
        for b in 0..KL_BINS {
            let x = hx[b] as f64 / n as f64;
            if x == 0.0 {
                continue;
            }
            let x_sub = hs[b] as f64 / m as f64;
            kl_f += x * (x / (x_sub + beta)).ln();
        }
        kl_sum += kl_f;
    }
    let kl = kl_sum / d as f64;

    // plain-distance MMD, all three double sums in the same iteration order
    let mut aa = 0.0;
    for i in 0..n {
        for j in 0..n {
            aa += euclid(full.row(i), full.row(j));
        }
    }
    let mut ab = 0.0;
    for i in 0..n {
        for j in 0..m {
            ab += euclid(full.row(i), subset.row(j));
        }
    }
    let mut bb = 0.0;
    for i in 0..m {
        for j in 0..m {
            bb += euclid(subset.row(i), subset.row(j));
        }
    }
    let stat = aa / (n * n) as f64 - 2.0 * ab / (n * m) as f64 + bb / (m * m) as f64;
    let mmd = stat.abs().sqrt();

    let mu_x = full.mean_row();
    let mu_s = subset.mean_row();
    let mmd_mu = euclid(&mu_x, &mu_s);

    Ok(MatchReport {
        kl,
        mmd,
        mmd_mu,
        beta,
        n,
        m,
        bins: KL_BINS,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Top scorers (densest neighborhoods) are flagged in-version-space.
    HighEnergy,
    /// Bottom scorers (most isolated) are flagged instead.
    LowEnergy,
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryPartition {
    /// Flagged indices, ascending. Exactly round(fraction * n) of them.
    pub in_version_space: Vec<usize>,
    /// Everything else, ascending.
    pub out_version_space: Vec<usize>,
    /// Per-point score: sum over the knn_k nearest neighbors of ln(1/dist).
    pub scores: Vec<f64>,
    pub knn_k: usize,
    pub fraction: f64,
    pub direction: Direction,
    /// Points whose score is infinite because a nearest neighbor coincides
    /// with them; they sort per direction and are worth a warning.
    pub degenerate: Vec<usize>,
}

/// Scores every point by the log-inverse-distance energy of its knn_k
/// nearest neighbors and flags the top round(fraction*n) per `direction`.
/// Under this score dense regions rank high and isolated points rank low.
pub fn boundary_partition(
    points: &PointSet,
    knn_k: usize,
    fraction: f64,
    direction: Direction,
) -> Result<BoundaryPartition, Error> {
    let n = points.rows();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if knn_k == 0 || knn_k >= n {
        return Err(Error::invalid("knn_k", "must satisfy 1 <= knn_k < n"));
    }
    if !(fraction > 0.0 && fraction < 1.0) {
        return Err(Error::invalid("fraction", "must lie strictly inside (0, 1)"));
    }

    let mut scores = Vec::with_capacity(n);
    let mut degenerate = Vec::new();
    for i in 0..n {
        let mut dists: Vec<f64> = (0..n)
            .filter(|&j| j != i)
            .map(|j| euclid(points.row(i), points.row(j)))
            .collect();
        dists.sort_unstable_by(f64::total_cmp);
        let score: f64 = dists[..knn_k].iter().map(|d| -d.ln()).sum();
        if !score.is_finite() {
            degenerate.push(i);
        }
        scores.push(score);
    }

    let take = (fraction * n as f64).round() as usize;
    let mut order: Vec<usize> = (0..n).collect();
    match direction {
        Direction::HighEnergy => order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]).then(a.cmp(&b))),
        Direction::LowEnergy => order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]).then(a.cmp(&b))),
    }
    let mut in_vs: Vec<usize> = order[..take].to_vec();
    let mut out_vs: Vec<usize> = order[take..].to_vec();
    in_vs.sort_unstable();
    out_vs.sort_unstable();

    Ok(BoundaryPartition {
        in_version_space: in_vs,
        out_version_space: out_vs,
        scores,
        knn_k,
        fraction,
        direction,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_with_outlier() -> PointSet {
        let mut rows = Vec::new();
        for x in 0..5 {
            for y in 0..5 {
                rows.push(vec![x as f64, y as f64]);
            }
        }
        rows.push(vec![10.0, 10.0]);
        PointSet::from_rows(&rows).unwrap()
    }

    #[test]
    fn identical_sets_have_zero_losses() {
        let pts = grid_with_outlier();
        let rep = match_losses(&pts, &pts, 0.0).unwrap();
        assert_eq!(rep.kl, 0.0);
        assert_eq!(rep.mmd, 0.0);
        assert_eq!(rep.mmd_mu, 0.0);
    }

    #[test]
    fn mean_shift_example() {
        let full = PointSet::from_rows(&[vec![0.0, 0.0], vec![2.0, 0.0]]).unwrap();
        let sub = PointSet::from_rows(&[vec![0.0, 0.0]]).unwrap();
        let rep = match_losses(&full, &sub, 0.552).unwrap();
        assert_eq!(rep.mmd_mu, 1.0);
        assert!(rep.mmd > 0.0);
    }

    #[test]
    fn kl_penalizes_collapsed_subsets() {
        let full = PointSet::from_rows(
            &(0..64).map(|i| vec![i as f64 / 63.0]).collect::<Vec<_>>(),
        )
        .unwrap();
        let tight = PointSet::from_rows(&[vec![0.0], vec![0.01]]).unwrap();
        let spread = PointSet::from_rows(
            &(0..8).map(|i| vec![i as f64 / 7.0]).collect::<Vec<_>>(),
        )
        .unwrap();
        let beta = 0.352;
        let kl_tight = match_losses(&full, &tight, beta).unwrap().kl;
        let kl_spread = match_losses(&full, &spread, beta).unwrap().kl;
        assert!(kl_spread < kl_tight, "{kl_spread} !< {kl_tight}");
    }

    #[test]
    fn mismatched_dims_and_empty_subset_are_rejected() {
        let full = PointSet::from_rows(&[vec![0.0, 1.0]]).unwrap();
        let wrong = PointSet::from_rows(&[vec![0.0]]).unwrap();
        assert!(matches!(
            match_losses(&full, &wrong, 0.0),
            Err(Error::DimensionMismatch { expected: 2, got: 1 })
        ));
        let empty = PointSet::empty(2);
        assert!(matches!(
            match_losses(&full, &empty, 0.0),
            Err(Error::EmptySubset)
        ));
    }

    #[test]
    fn partition_sizes_and_disjointness() {
        let pts = grid_with_outlier(); // 26 points
        let part = boundary_partition(&pts, 5, 0.30, Direction::HighEnergy).unwrap();
        assert_eq!(part.in_version_space.len(), 8); // round(0.3 * 26)
        assert_eq!(
            part.in_version_space.len() + part.out_version_space.len(),
            26
        );
        let mut all: Vec<usize> = part
            .in_version_space
            .iter()
            .chain(&part.out_version_space)
            .copied()
            .collect();
        all.sort_unstable();
        assert_eq!(all, (0..26).collect::<Vec<_>>());
    }

    #[test]
    fn outlier_scores_lowest_under_high_energy() {
        let pts = grid_with_outlier();
        let part = boundary_partition(&pts, 5, 0.30, Direction::HighEnergy).unwrap();
        let outlier = 25usize;
        assert!(!part.in_version_space.contains(&outlier));
        let min_score = part
            .scores
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        assert_eq!(part.scores[outlier], min_score);

        // flipping the direction flags it
        let flipped = boundary_partition(&pts, 5, 0.30, Direction::LowEnergy).unwrap();
        assert!(flipped.in_version_space.contains(&outlier));
    }

    #[test]
    fn duplicate_neighbors_go_infinite_and_are_reported() {
        let pts = PointSet::from_rows(&[
            vec![0.0, 0.0],
            vec![0.0, 0.0],
            vec![1.0, 0.0],
            vec![2.0, 0.0],
        ])
        .unwrap();
        let part = boundary_partition(&pts, 1, 0.5, Direction::HighEnergy).unwrap();
        assert_eq!(part.degenerate, vec![0, 1]);
        assert_eq!(part.in_version_space, vec![0, 1]);
    }

    #[test]
    fn parameter_validation() {
        let pts = grid_with_outlier();
        assert!(boundary_partition(&pts, 26, 0.3, Direction::HighEnergy).is_err());
        assert!(boundary_partition(&pts, 0, 0.3, Direction::HighEnergy).is_err());
        assert!(boundary_partition(&pts, 5, 0.0, Direction::HighEnergy).is_err());
        assert!(boundary_partition(&pts, 5, 1.0, Direction::HighEnergy).is_err());
    }
}
