//! Spherical k-means: cosine assignment against unit centers, centers
//! recomputed as renormalized member sums.

use crate::error::Error;
use crate::points::{dot, euclid, norm, UnitPointSet};
use crate::DUP_TOL;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClusterModel {
    /// k unit-norm centers, row-major.
    pub centers: Vec<Vec<f64>>,
    /// Cluster index per point.
    pub assignments: Vec<usize>,
    /// Sum over points of 1 - cos(center, point).
    pub objective: f64,
    /// Number of assignment sweeps performed.
    pub iterations_run: usize,
    pub seed: u64,
    /// Objective after every half-step, alternating assignment / update;
    /// non-increasing end to end.
    pub objective_trace: Vec<f64>,
    /// Rounds in which an empty cluster was reseeded.
    pub reseeds: usize,
}

impl ClusterModel {
    pub fn k(&self) -> usize {
        self.centers.len()
    }

    /// Point indices of one cluster, ascending.
    pub fn members(&self, cluster: usize) -> Vec<usize> {
        self.assignments
            .iter()
            .enumerate()
            .filter_map(|(i, &a)| (a == cluster).then_some(i))
            .collect()
    }
}

fn objective_of(points: &UnitPointSet, centers: &[Vec<f64>], assignments: &[usize]) -> f64 {
    assignments
        .iter()
        .enumerate()
        .map(|(i, &a)| 1.0 - dot(points.row(i), &centers[a]))
        .sum()
}

/// Assign each point to the center of maximal cosine; ties to the lowest
/// cluster index.
fn assign(points: &UnitPointSet, centers: &[Vec<f64>]) -> Vec<usize> {
    (0..points.rows())
        .map(|i| {
            let x = points.row(i);
            let mut best = 0usize;
            let mut best_dot = f64::NEG_INFINITY;
            for (c, center) in centers.iter().enumerate() {
                let d = dot(x, center);
                if d > best_dot {
                    best_dot = d;
                    best = c;
                }
            }
            best
        })
        .collect()
}

/// Lloyd iterations on the sphere. Initial centers are the first k distinct
/// rows of a seeded permutation; convergence is declared when an assignment
/// sweep changes nothing. Empty clusters are reseeded at the point farthest
/// (in 1 - cos) from its current center, which cannot increase the objective.
pub fn spherical_kmeans(
    points: &UnitPointSet,
    k: usize,
    max_iters: usize,
    seed: u64,
) -> Result<ClusterModel, Error> {
    let n = points.rows();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if k == 0 {
        return Err(Error::invalid("k", "must be positive"));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let order: Vec<usize> = rand::seq::index::sample(&mut rng, n, n).into_iter().collect();
    let mut centers: Vec<Vec<f64>> = Vec::with_capacity(k);
    let mut collected = 0usize;
    for &i in &order {
        let row = points.row(i);
        if centers.iter().all(|c| euclid(c, row) >= DUP_TOL) {
            if collected < k {
                centers.push(row.to_vec());
            }
            collected += 1;
            if centers.len() == k {
                break;
            }
        }
    }
    if centers.len() < k {
        return Err(Error::KExceedsDistinctPoints { k, distinct: collected });
    }

    let mut assignments: Vec<usize> = Vec::new();
    let mut trace = Vec::new();
    let mut iterations = 0usize;
    let mut reseeds = 0usize;

    for _ in 0..max_iters {
        let next = assign(points, &centers);
        iterations += 1;
        trace.push(objective_of(points, &centers, &next));
        let unchanged = next == assignments;
        assignments = next;
        if unchanged {
            break;
        }

        // update step: renormalized member sums
        let d = points.dim();
        let mut sums = vec![vec![0.0f64; d]; k];
        let mut counts = vec![0usize; k];
        for (i, &a) in assignments.iter().enumerate() {
            counts[a] += 1;
            for (s, v) in sums[a].iter_mut().zip(points.row(i)) {
                *s += v;
            }
        }
        let empties: Vec<usize> = (0..k).filter(|&c| counts[c] == 0).collect();
        for c in 0..k {
            if counts[c] == 0 {
                continue;
            }
            let nrm = norm(&sums[c]);
            if nrm < 1e-12 {
                // antipodal cancellation; keep the previous center
                continue;
            }
            centers[c] = sums[c].iter().map(|v| v / nrm).collect();
        }
        if !empties.is_empty() {
            reseeds += 1;
            // farthest points (1 - cos to their own center), worst first
            let mut by_gap: Vec<(usize, f64)> = assignments
                .iter()
                .enumerate()
                .map(|(i, &a)| (i, 1.0 - dot(points.row(i), &centers[a])))
                .collect();
            by_gap.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
            for (slot, &c) in empties.iter().enumerate() {
                centers[c] = points.row(by_gap[slot].0).to_vec();
            }
        }
        trace.push(objective_of(points, &centers, &assignments));
    }

    // pathological tie chains can leave a cluster empty at the cap; repair by
    // moving the farthest point into it so the non-emptiness contract holds
    let mut counts = vec![0usize; k];
    for &a in &assignments {
        counts[a] += 1;
    }
    for c in 0..k {
        if counts[c] > 0 {
            continue;
        }
        let (worst, _) = assignments
            .iter()
            .enumerate()
            .filter(|&(_, &a)| counts[a] > 1)
            .map(|(i, &a)| (i, 1.0 - dot(points.row(i), &centers[a])))
            .max_by(|a, b| a.1.total_cmp(&b.1).then(b.0.cmp(&a.0)))
            .expect("n >= k guarantees a donor cluster");
        counts[assignments[worst]] -= 1;
        assignments[worst] = c;
        counts[c] += 1;
        centers[c] = points.row(worst).to_vec();
        reseeds += 1;
    }

    let objective = objective_of(points, &centers, &assignments);
    Ok(ClusterModel {
        centers,
        assignments,
        objective,
        iterations_run: iterations,
        seed,
        objective_trace: trace,
        reseeds,
    })
}

/// Clustering accuracy against reference labels under the best one-to-one
/// cluster-to-label matching (Hungarian assignment on the confusion counts).
/// A conventional stand-in for "unsupervised accuracy"; the matching rule is
/// part of the reported number.
pub fn matched_accuracy(assignments: &[usize], labels: &[i8], k: usize) -> Result<f64, Error> {
    if assignments.is_empty() {
        return Err(Error::EmptyInput);
    }
    if assignments.len() != labels.len() {
        return Err(Error::DimensionMismatch {
            expected: assignments.len(),
            got: labels.len(),
        });
    }
    let mut classes: Vec<i8> = labels.to_vec();
    classes.sort_unstable();
    classes.dedup();
    let class_of = |l: i8| classes.iter().position(|&c| c == l).unwrap();

    let side = k.max(classes.len());
    let mut confusion = vec![vec![0u64; side]; side];
    for (&a, &l) in assignments.iter().zip(labels) {
        confusion[a][class_of(l)] += 1;
    }
    let matched = max_assignment(&confusion);
    Ok(matched as f64 / assignments.len() as f64)
}

/// Maximum-weight perfect matching on a square count matrix via the
/// shortest-augmenting-path Hungarian method (minimizing negated weights).
fn max_assignment(weights: &[Vec<u64>]) -> u64 {
    let n = weights.len();
    let cost: Vec<Vec<f64>> = weights
        .iter()
        .map(|row| row.iter().map(|&w| -(w as f64)).collect())
        .collect();
    // potentials and matching arrays are 1-indexed with a dummy column 0
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut matched = vec![0usize; n + 1]; // matched[j] = row assigned to column j

    for i in 1..=n {
        matched[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = matched[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[matched[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if matched[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            matched[j0] = matched[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    (1..=n)
        .filter(|&j| matched[j] != 0)
        .map(|j| weights[matched[j] - 1][j - 1])
        .sum()
}
