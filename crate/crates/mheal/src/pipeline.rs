//! MHEAL end to end: normalize to the sphere, pre-estimate spherical
//! clusters, then pick per-cluster representatives with the max-min rule
//! started from a rotation-searched init.

use crate::clustering::{spherical_kmeans, ClusterModel};
use crate::energy::{subset_energy_lenient, EnergyValue};
use crate::error::Error;
use crate::geometry::{normalize_to_sphere, NormalizeMode};
use crate::points::{dot, norm, PointSet, UnitPointSet};
use crate::selection::maxmin_select;
use crate::{derive_seed, DUP_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::fmt;

#[derive(Debug, Clone, Serialize)]
pub struct MhealConfig {
    /// Cluster count.
    pub k: usize,
    /// Per-cluster selection budget.
    pub tau: usize,
    /// Rotation-candidate count; None means min(32, cluster size) per
    /// cluster. Explicit values larger than a cluster are clamped with a
    /// warning.
    pub m: Option<usize>,
    pub seed: u64,
    pub normalize: NormalizeMode,
    pub kmeans_max_iters: usize,
}

impl MhealConfig {
    pub fn new(k: usize, tau: usize) -> Self {
        Self {
            k,
            tau,
            m: None,
            seed: 0,
            normalize: NormalizeMode::L2,
            kmeans_max_iters: 60,
        }
    }

    fn validate(&self) -> Result<(), Error> {
        if self.k == 0 {
            return Err(Error::invalid("k", "must be positive"));
        }
        if self.tau == 0 {
            return Err(Error::invalid("tau", "must be positive"));
        }
        if self.m == Some(0) {
            return Err(Error::invalid("m", "must be positive when set"));
        }
        if self.kmeans_max_iters == 0 {
            return Err(Error::invalid("kmeans_max_iters", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MhealWarning {
    /// Declared budget tau*k exceeds the data size.
    BudgetExceedsData { requested: usize, available: usize },
    /// Cluster smaller than tau; selection truncated to the cluster size.
    TruncatedCluster { cluster: usize, size: usize, tau: usize },
    SingletonCluster { cluster: usize },
    /// Explicit m larger than the cluster; clamped.
    RotationClamped { cluster: usize, m: usize, size: usize },
    /// Every cluster member coincides with the center; rotation search is
    /// undefined and the lowest-index member seeds the selection.
    DegenerateRotation { cluster: usize },
    ZeroVarianceColumns { columns: Vec<usize> },
}

impl fmt::Display for MhealWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::BudgetExceedsData { requested, available } => {
                write!(f, "requested budget {requested} exceeds the {available} available points")
            }
            Self::TruncatedCluster { cluster, size, tau } => {
                write!(f, "cluster {cluster} has {size} points, fewer than tau = {tau}; selection truncated")
            }
            Self::SingletonCluster { cluster } => {
                write!(f, "cluster {cluster} has a single member, contributed once")
            }
            Self::RotationClamped { cluster, m, size } => {
                write!(f, "m = {m} clamped to cluster {cluster} size {size}")
            }
            Self::DegenerateRotation { cluster } => {
                write!(f, "cluster {cluster} members all coincide with its center; rotation search skipped")
            }
            Self::ZeroVarianceColumns { columns } => {
                write!(f, "{} zero-variance column(s) left unscaled: {columns:?}", columns.len())
            }
        }
    }
}

/// One cluster's slice of the representative set. Indices are global row
/// indices of the normalized input, in selection order.
#[derive(Debug, Clone, Serialize)]
pub struct ClusterSelection {
    pub cluster: usize,
    pub indices: Vec<usize>,
    /// Canonical log-energy (s = 0) of the selection; zero pairs for a
    /// singleton.
    pub energy: EnergyValue,
    /// Max-min radii trace, non-increasing.
    pub radii: Vec<f64>,
    /// Global index of the winning start.
    pub best_init: usize,
    /// Global indices of the rotation-candidate set W.
    pub candidates: Vec<usize>,
    pub distance_evals: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentativeSet {
    pub per_cluster: Vec<ClusterSelection>,
    /// S*: all selections flattened, ascending by cluster then selection
    /// order.
    pub flat: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct MhealOutcome {
    /// The normalized points every index refers to.
    pub normalized: UnitPointSet,
    pub model: ClusterModel,
    pub set: RepresentativeSet,
    pub warnings: Vec<MhealWarning>,
}

/// Rotation-candidate search from an explicit starting member: each step
/// appends the unchosen member whose center-to-point direction maximizes
/// 1 - cos against the direction of the previously appended member. Members
/// coinciding with the center have no direction and are excluded, so fewer
/// than `m` indices may return.
pub fn rotation_candidates_from(
    cluster: &UnitPointSet,
    center: &[f64],
    m: usize,
    start: usize,
) -> Result<Vec<usize>, Error> {
    let n = cluster.rows();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if center.len() != cluster.dim() {
        return Err(Error::DimensionMismatch {
            expected: cluster.dim(),
            got: center.len(),
        });
    }
    if m == 0 {
        return Err(Error::invalid("m", "must be positive"));
    }
    if m > n {
        return Err(Error::MExceedsCluster { m, size: n });
    }
    if start >= n {
        return Err(Error::IndexOutOfBounds { index: start, len: n });
    }

    let dirs: Vec<Option<Vec<f64>>> = (0..n)
        .map(|i| {
            let diff: Vec<f64> = cluster
                .row(i)
                .iter()
                .zip(center)
                .map(|(x, c)| x - c)
                .collect();
            let nrm = norm(&diff);
            (nrm >= DUP_TOL).then(|| diff.into_iter().map(|v| v / nrm).collect())
        })
        .collect();
    let Some(start_dir) = dirs[start].as_ref() else {
        return Err(Error::invalid("start", "coincides with the center"));
    };

    let mut chosen = vec![start];
    let mut taken = vec![false; n];
    taken[start] = true;
    let mut prev_dir = start_dir.clone();
    while chosen.len() < m {
        let mut best: Option<(usize, f64)> = None;
        for (i, dir) in dirs.iter().enumerate() {
            if taken[i] {
                continue;
            }
            let Some(dir) = dir else { continue };
            let gap = 1.0 - dot(&prev_dir, dir);
            if best.map_or(true, |(_, b)| gap > b) {
                best = Some((i, gap));
            }
        }
        let Some((i, _)) = best else {
            break; // remaining members coincide with the center
        };
        taken[i] = true;
        prev_dir = dirs[i].clone().expect("eligible by construction");
        chosen.push(i);
    }
    Ok(chosen)
}

/// Rotation-candidate search from a seeded random eligible member.
pub fn rotation_candidates(
    cluster: &UnitPointSet,
    center: &[f64],
    m: usize,
    seed: u64,
) -> Result<Vec<usize>, Error> {
    let eligible: Vec<usize> = (0..cluster.rows())
        .filter(|&i| {
            let diff: Vec<f64> = cluster
                .row(i)
                .iter()
                .zip(center)
                .map(|(x, c)| x - c)
                .collect();
            norm(&diff) >= DUP_TOL
        })
        .collect();
    if eligible.is_empty() {
        return Err(Error::invalid(
            "cluster",
            "every member coincides with the center",
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let start = eligible[rng.gen_range(0..eligible.len())];
    rotation_candidates_from(cluster, center, m, start)
}

/// Picks the start in `candidates` whose max-min selection to `tau` points
/// has the largest pairwise-distance product (smallest canonical log-energy);
/// ties go to the lowest candidate index. Returns the winner and the
/// distance evaluations spent searching.
pub fn best_init(
    cluster: &UnitPointSet,
    candidates: &[usize],
    tau: usize,
) -> Result<(usize, u64), Error> {
    if candidates.is_empty() {
        return Err(Error::invalid("candidates", "must be non-empty"));
    }
    let mut evals = 0u64;
    let mut best: Option<(f64, usize)> = None;
    for &start in candidates {
        let run = maxmin_select(cluster, tau, start)?;
        evals += run.distance_evals;
        let e = subset_energy_lenient(cluster, &run.selected, 0);
        evals += e.pair_count;
        let key = (e.value, start);
        if best.map_or(true, |b| key < b) {
            best = Some(key);
        }
    }
    Ok((best.expect("candidates non-empty").1, evals))
}

/// The full pipeline: normalize, cluster, then per cluster run the rotation
/// search, the best-init search, and max-min selection to tau points.
/// Deterministic given the config seed.
pub fn run_mheal(points: &PointSet, config: &MhealConfig) -> Result<MhealOutcome, Error> {
    config.validate()?;
    let n = points.rows();
    if n == 0 {
        return Err(Error::EmptyInput);
    }

    let mut warnings = Vec::new();
    let normalized = normalize_to_sphere(points, config.normalize)?;
    if !normalized.zero_variance_columns.is_empty() {
        warnings.push(MhealWarning::ZeroVarianceColumns {
            columns: normalized.zero_variance_columns.clone(),
        });
    }
    let unit = normalized.points;
    if config.tau * config.k > n {
        warnings.push(MhealWarning::BudgetExceedsData {
            requested: config.tau * config.k,
            available: n,
        });
    }

    let model = spherical_kmeans(
        &unit,
        config.k,
        config.kmeans_max_iters,
        derive_seed(config.seed, "kmeans"),
    )?;

    let mut per_cluster = Vec::with_capacity(config.k);
    for c in 0..config.k {
        let members = model.members(c);
        let size = members.len();
        debug_assert!(size > 0, "clustering guarantees non-empty clusters");
        let cluster_points = unit.gather(&members)?;

        if size == 1 {
            warnings.push(MhealWarning::SingletonCluster { cluster: c });
            per_cluster.push(ClusterSelection {
                cluster: c,
                indices: vec![members[0]],
                energy: subset_energy_lenient(&cluster_points, &[0], 0),
                radii: Vec::new(),
                best_init: members[0],
                candidates: vec![members[0]],
                distance_evals: 0,
            });
            continue;
        }

        let tau_c = config.tau.min(size);
        if tau_c < config.tau {
            warnings.push(MhealWarning::TruncatedCluster {
                cluster: c,
                size,
                tau: config.tau,
            });
        }
        let m_c = match config.m {
            Some(m) if m > size => {
                warnings.push(MhealWarning::RotationClamped { cluster: c, m, size });
                size
            }
            Some(m) => m,
            None => 32.min(size),
        };

        let rotation = rotation_candidates(
            &cluster_points,
            &model.centers[c],
            m_c,
            derive_seed(config.seed, &format!("rotation/{c}")),
        );
        let candidates_local = match rotation {
            Ok(w) => w,
            Err(Error::InvalidParameter { .. }) => {
                warnings.push(MhealWarning::DegenerateRotation { cluster: c });
                vec![0]
            }
            Err(e) => return Err(e),
        };

        let (start_local, search_evals) = best_init(&cluster_points, &candidates_local, tau_c)?;
        let run = maxmin_select(&cluster_points, tau_c, start_local)?;
        let energy = subset_energy_lenient(&cluster_points, &run.selected, 0);
        per_cluster.push(ClusterSelection {
            cluster: c,
            indices: run.selected.iter().map(|&l| members[l]).collect(),
            energy,
            radii: run.radii,
            best_init: members[start_local],
            candidates: candidates_local.iter().map(|&l| members[l]).collect(),
            distance_evals: search_evals + run.distance_evals,
        });
    }

    let flat: Vec<usize> = per_cluster
        .iter()
        .flat_map(|cs| cs.indices.iter().copied())
        .collect();
    Ok(MhealOutcome {
        normalized: unit,
        model,
        set: RepresentativeSet { per_cluster, flat },
        warnings,
    })
}
