//! Version-space pruning over a random hyperplane pool: generate hypotheses,
//! eliminate them round by round against a shrinking loss threshold, and
//! compare uniform sampling (IWAL) with per-cluster round-robin sampling
//! (MHEAL) across seeds.

use crate::clustering::spherical_kmeans;
use crate::derive_seed;
use crate::error::Error;
use crate::geometry::{normalize_to_sphere, NormalizeMode};
use crate::points::PointSet;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

/// ln(1 + exp(-margin)), stable for large magnitudes in both directions.
pub fn logistic_loss(margin: f64) -> f64 {
    if margin >= 0.0 {
        (-margin).exp().ln_1p()
    } else {
        -margin + margin.exp().ln_1p()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HypothesisPool {
    /// H x d, row-major. Entry order: the d weights of hypothesis 0, its
    /// bias, then hypothesis 1, ... so a pool is reproducible from `seed`.
    pub weights: Vec<f64>,
    pub biases: Vec<f64>,
    pub dim: usize,
    pub seed: u64,
    pub alive: Vec<bool>,
    /// Minimum-mean-loss hypothesis on the generation data; ties -> lowest.
    pub h_star: usize,
    /// Mean logistic loss per hypothesis on the generation data.
    pub train_loss: Vec<f64>,
}

impl HypothesisPool {
    pub fn len(&self) -> usize {
        self.biases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.biases.is_empty()
    }

    pub fn survivors(&self) -> usize {
        self.alive.iter().filter(|&&a| a).count()
    }

    /// w_i . x + b_i
    pub fn margin(&self, i: usize, x: &[f64]) -> f64 {
        let w = &self.weights[i * self.dim..(i + 1) * self.dim];
        w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>() + self.biases[i]
    }

    pub fn sample_loss(&self, i: usize, x: &[f64], y: i8) -> f64 {
        logistic_loss(y as f64 * self.margin(i, x))
    }
}

/// Draws `h` hyperplanes with i.i.d. standard-Gaussian weights and bias and
/// fixes h_star as the minimum-mean-loss hypothesis on (data, labels).
pub fn generate_pool(
    d: usize,
    h: usize,
    data: &PointSet,
    labels: &[i8],
    seed: u64,
) -> Result<HypothesisPool, Error> {
    if data.is_empty() {
        return Err(Error::EmptyData);
    }
    if h == 0 {
        return Err(Error::invalid("pool_size", "need at least one hypothesis"));
    }
    if d != data.dim() {
        return Err(Error::DimensionMismatch {
            expected: data.dim(),
            got: d,
        });
    }
    if labels.len() != data.rows() {
        return Err(Error::DimensionMismatch {
            expected: data.rows(),
            got: labels.len(),
        });
    }
    for (row, &y) in labels.iter().enumerate() {
        if y != 1 && y != -1 {
            return Err(Error::BadLabel {
                row,
                value: y as f64,
            });
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut weights = Vec::with_capacity(h * d);
    let mut biases = Vec::with_capacity(h);
    for _ in 0..h {
        for _ in 0..d {
            weights.push(rand::Rng::sample(&mut rng, StandardNormal));
        }
        biases.push(rand::Rng::sample(&mut rng, StandardNormal));
    }

    let mut pool = HypothesisPool {
        weights,
        biases,
        dim: d,
        seed,
        alive: vec![true; h],
        h_star: 0,
        train_loss: Vec::with_capacity(h),
    };
    for i in 0..h {
        let mean = (0..data.rows())
            .map(|r| pool.sample_loss(i, data.row(r), labels[r]))
            .sum::<f64>()
            / data.rows() as f64;
        pool.train_loss.push(mean);
    }
    pool.h_star = pool
        .train_loss
        .iter()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .unwrap();
    Ok(pool)
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ThetaSpec {
    pub xi: f64,
    pub r: f64,
    pub k: usize,
    /// (xi / k) / r; k = 1 recovers the plain disagreement-over-radius ratio.
    pub theta: f64,
}

pub fn theta_from_params(xi: f64, r: f64, k: usize) -> Result<ThetaSpec, Error> {
    if !(r > 0.0) {
        return Err(Error::invalid("r", "ball radius must be positive"));
    }
    if k == 0 {
        return Err(Error::invalid("k", "cluster count must be at least 1"));
    }
    Ok(ThetaSpec {
        xi,
        r,
        k,
        theta: (xi / k as f64) / r,
    })
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TraceRow {
    pub t: usize,
    /// Post-elimination survivor count.
    pub survivors: usize,
    pub threshold: f64,
    pub queried: bool,
    pub cumulative_labels: usize,
    /// Minimum loss on this round's sample among post-elimination survivors.
    pub best_surviving_loss: f64,
}

/// One elimination round at threshold sqrt(theta0 / t). Survivors whose loss
/// on (x, y) exceeds the threshold are eliminated, except h_star, which is
/// never eliminated — the pool cannot empty. A label is spent (queried) iff
/// the pre-elimination survivors' max-minus-min loss on the sample exceeds
/// the threshold.
pub fn prune_round(
    pool: &mut HypothesisPool,
    x: &[f64],
    y: i8,
    t: usize,
    theta0: f64,
    prior_labels: usize,
) -> Result<TraceRow, Error> {
    if t == 0 {
        return Err(Error::invalid("t", "rounds are 1-based"));
    }
    if pool.survivors() == 0 {
        return Err(Error::NoSurvivors);
    }
    let threshold = (theta0 / t as f64).sqrt();

    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut losses = vec![0.0; pool.len()];
    for i in 0..pool.len() {
        if !pool.alive[i] {
            continue;
        }
        let loss = pool.sample_loss(i, x, y);
        losses[i] = loss;
        lo = lo.min(loss);
        hi = hi.max(loss);
    }
    let queried = hi - lo > threshold;

    let mut best = f64::INFINITY;
    let mut survivors = 0;
    for i in 0..pool.len() {
        if !pool.alive[i] {
            continue;
        }
        if losses[i] > threshold && i != pool.h_star {
            pool.alive[i] = false;
        } else {
            survivors += 1;
            best = best.min(losses[i]);
        }
    }
    debug_assert!(pool.alive[pool.h_star]);

    Ok(TraceRow {
        t,
        survivors,
        threshold,
        queried,
        cumulative_labels: prior_labels + usize::from(queried),
        best_surviving_loss: best,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RunTrace {
    pub rows: Vec<TraceRow>,
    /// Held-out mean logistic loss of the best (lowest train-loss) survivor,
    /// per round.
    pub heldout_error: Vec<f64>,
    /// Per-round alive masks, populated only when requested.
    #[serde(skip)]
    pub masks: Vec<Vec<bool>>,
}

fn run_schedule(
    pool: &mut HypothesisPool,
    train: &PointSet,
    train_labels: &[i8],
    held: &PointSet,
    held_labels: &[i8],
    stream: &[usize],
    theta0: f64,
    record_masks: bool,
) -> Result<RunTrace, Error> {
    let mut rows = Vec::with_capacity(stream.len());
    let mut heldout_error = Vec::with_capacity(stream.len());
    let mut masks = Vec::new();
    let mut heldout_memo: Vec<Option<f64>> = vec![None; pool.len()];
    let mut labels = 0;
    for (idx, &r) in stream.iter().enumerate() {
        let t = idx + 1;
        let row = prune_round(pool, train.row(r), train_labels[r], t, theta0, labels)?;
        labels = row.cumulative_labels;
        rows.push(row);

        let best = (0..pool.len())
            .filter(|&i| pool.alive[i])
            .min_by(|&a, &b| pool.train_loss[a].total_cmp(&pool.train_loss[b]).then(a.cmp(&b)))
            .ok_or(Error::NoSurvivors)?;
        let err = *heldout_memo[best].get_or_insert_with(|| {
            (0..held.rows())
                .map(|j| pool.sample_loss(best, held.row(j), held_labels[j]))
                .sum::<f64>()
                / held.rows() as f64
        });
        heldout_error.push(err);
        if record_masks {
            masks.push(pool.alive.clone());
        }
    }
    Ok(RunTrace {
        rows,
        heldout_error,
        masks,
    })
}

fn shuffled_cycle(indices: &[usize], rounds: usize, seed: u64) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm = indices.to_vec();
    perm.shuffle(&mut rng);
    (0..rounds).map(|t| perm[t % perm.len()]).collect()
}

/// 80/20 split of row indices, shuffled by seed: (train, held).
fn split_indices(n: usize, seed: u64) -> (Vec<usize>, Vec<usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let held = n / 5;
    (perm[held..].to_vec(), perm[..held].to_vec())
}

#[derive(Debug, Clone, Serialize)]
pub struct SeedRun {
    pub seed: u64,
    pub iwal: RunTrace,
    pub mheal: RunTrace,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct SummaryRow {
    pub t: usize,
    pub iwal_mean: f64,
    pub iwal_std: f64,
    pub mheal_mean: f64,
    pub mheal_std: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct StudyOutcome {
    pub runs: Vec<SeedRun>,
    pub survivors: Vec<SummaryRow>,
    pub error: Vec<SummaryRow>,
    pub labels: Vec<SummaryRow>,
}

fn mean_std(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

fn summarize(runs: &[SeedRun], rounds: usize, metric: impl Fn(&RunTrace, usize) -> f64) -> Vec<SummaryRow> {
    (0..rounds)
        .map(|idx| {
            let iwal: Vec<f64> = runs.iter().map(|r| metric(&r.iwal, idx)).collect();
            let mheal: Vec<f64> = runs.iter().map(|r| metric(&r.mheal, idx)).collect();
            let (iwal_mean, iwal_std) = mean_std(&iwal);
            let (mheal_mean, mheal_std) = mean_std(&mheal);
            SummaryRow {
                t: idx + 1,
                iwal_mean,
                iwal_std,
                mheal_mean,
                mheal_std,
            }
        })
        .collect()
}

/// Paired pruning study. Per seed: 80/20 split, one pool shared by both
/// schedules as independent copies, an IWAL stream drawn uniformly (seeded
/// shuffle, cycled) and an MHEAL stream drawn round-robin across the
/// spherical k-means clusters of the training points. Summaries are
/// mean +/- population standard deviation across seeds.
#[allow(clippy::too_many_arguments)]
pub fn run_study(
    data: &PointSet,
    data_labels: &[i8],
    pool_size: usize,
    rounds: usize,
    theta0_iwal: f64,
    theta0_mheal: f64,
    k: usize,
    seeds: &[u64],
) -> Result<StudyOutcome, Error> {
    if data.rows() < 5 {
        return Err(Error::invalid("data", "study needs at least 5 rows for the 80/20 split"));
    }
    if data_labels.len() != data.rows() {
        return Err(Error::DimensionMismatch {
            expected: data.rows(),
            got: data_labels.len(),
        });
    }
    if seeds.is_empty() {
        return Err(Error::invalid("seeds", "need at least one seed"));
    }

    let mut runs = Vec::with_capacity(seeds.len());
    for &seed in seeds {
        let (train_idx, held_idx) = split_indices(data.rows(), derive_seed(seed, "split"));
        let train = data.gather(&train_idx)?;
        let train_labels: Vec<i8> = train_idx.iter().map(|&i| data_labels[i]).collect();
        let held = data.gather(&held_idx)?;
        let held_labels: Vec<i8> = held_idx.iter().map(|&i| data_labels[i]).collect();

        let pool = generate_pool(
            data.dim(),
            pool_size,
            &train,
            &train_labels,
            derive_seed(seed, "pool"),
        )?;

        let iwal_stream = shuffled_cycle(
            &(0..train.rows()).collect::<Vec<_>>(),
            rounds,
            derive_seed(seed, "stream/iwal"),
        );

        let unit = normalize_to_sphere(&train, NormalizeMode::L2)?;
        let model = spherical_kmeans(&unit.points, k, 60, derive_seed(seed, "stream/kmeans"))?;
        let mut cycles: Vec<Vec<usize>> = Vec::with_capacity(k);
        for c in 0..k {
            let members = model.members(c);
            let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, &format!("stream/cluster/{c}")));
            let mut perm = members;
            perm.shuffle(&mut rng);
            cycles.push(perm);
        }
        let mut taken = vec![0usize; k];
        let mheal_stream: Vec<usize> = (0..rounds)
            .map(|idx| {
                let c = idx % k;
                let pick = cycles[c][taken[c] % cycles[c].len()];
                taken[c] += 1;
                pick
            })
            .collect();

        let mut iwal_pool = pool.clone();
        let iwal = run_schedule(
            &mut iwal_pool,
            &train,
            &train_labels,
            &held,
            &held_labels,
            &iwal_stream,
            theta0_iwal,
            false,
        )?;
        let mut mheal_pool = pool;
        let mheal = run_schedule(
            &mut mheal_pool,
            &train,
            &train_labels,
            &held,
            &held_labels,
            &mheal_stream,
            theta0_mheal,
            false,
        )?;
        runs.push(SeedRun { seed, iwal, mheal });
    }

    let survivors = summarize(&runs, rounds, |tr, i| tr.rows[i].survivors as f64);
    let error = summarize(&runs, rounds, |tr, i| tr.heldout_error[i]);
    let labels = summarize(&runs, rounds, |tr, i| tr.rows[i].cumulative_labels as f64);
    Ok(StudyOutcome {
        runs,
        survivors,
        error,
        labels,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SameStreamReport {
    /// True when the tighter-theta survivor set is contained in the looser
    /// one at every round.
    pub subset_every_round: bool,
    /// (loose, tight) survivor counts per round.
    pub survivor_pairs: Vec<(usize, usize)>,
}

/// Diagnostic: run both thresholds over the identical uniform stream and
/// identical pool copies, checking set inclusion of the tight (theta0_mheal)
/// survivors inside the loose (theta0_iwal) survivors round by round.
pub fn same_stream_check(
    data: &PointSet,
    data_labels: &[i8],
    pool_size: usize,
    rounds: usize,
    theta0_iwal: f64,
    theta0_mheal: f64,
    seed: u64,
) -> Result<SameStreamReport, Error> {
    let (train_idx, held_idx) = split_indices(data.rows(), derive_seed(seed, "split"));
    let train = data.gather(&train_idx)?;
    let train_labels: Vec<i8> = train_idx.iter().map(|&i| data_labels[i]).collect();
    let held = data.gather(&held_idx)?;
    let held_labels: Vec<i8> = held_idx.iter().map(|&i| data_labels[i]).collect();

    let pool = generate_pool(
        data.dim(),
        pool_size,
        &train,
        &train_labels,
        derive_seed(seed, "pool"),
    )?;
    let stream = shuffled_cycle(
        &(0..train.rows()).collect::<Vec<_>>(),
        rounds,
        derive_seed(seed, "stream/iwal"),
    );

    let mut loose_pool = pool.clone();
    let loose = run_schedule(
        &mut loose_pool,
        &train,
        &train_labels,
        &held,
        &held_labels,
        &stream,
        theta0_iwal,
        true,
    )?;
    let mut tight_pool = pool;
    let tight = run_schedule(
        &mut tight_pool,
        &train,
        &train_labels,
        &held,
        &held_labels,
        &stream,
        theta0_mheal,
        true,
    )?;

    let mut subset = true;
    let mut pairs = Vec::with_capacity(rounds);
    for t in 0..rounds {
        let (lm, tm) = (&loose.masks[t], &tight.masks[t]);
        if tm.iter().zip(lm).any(|(&a, &b)| a && !b) {
            subset = false;
        }
        pairs.push((
            lm.iter().filter(|&&a| a).count(),
            tm.iter().filter(|&&a| a).count(),
        ));
    }
    Ok(SameStreamReport {
        subset_every_round: subset,
        survivor_pairs: pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn blob_data(n: usize, seed: u64) -> (PointSet, Vec<i8>) {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut rows = Vec::with_capacity(n);
        let mut labels = Vec::with_capacity(n);
        for i in 0..n {
            let y: i8 = if i % 2 == 0 { 1 } else { -1 };
            let cx = 2.0 * y as f64;
            rows.push(vec![
                cx + rng.gen::<f64>() - 0.5,
                rng.gen::<f64>() - 0.5,
            ]);
            labels.push(y);
        }
        (PointSet::from_rows(&rows).unwrap(), labels)
    }

    #[test]
    fn logistic_loss_values() {
        assert!((logistic_loss(0.0) - LN_2).abs() < 1e-15);
        assert!(logistic_loss(40.0) < 1e-15);
        assert!((logistic_loss(-40.0) - 40.0).abs() < 1e-15);
        // no overflow at extreme margins
        assert_eq!(logistic_loss(-1e4), 1e4);
        assert_eq!(logistic_loss(1e4), 0.0);
    }

    #[test]
    fn pool_generation_is_seed_deterministic() {
        let (data, labels) = blob_data(40, 7);
        let a = generate_pool(2, 25, &data, &labels, 99).unwrap();
        let b = generate_pool(2, 25, &data, &labels, 99).unwrap();
        assert_eq!(a.weights, b.weights);
        assert_eq!(a.biases, b.biases);
        assert_eq!(a.h_star, b.h_star);
        let c = generate_pool(2, 25, &data, &labels, 100).unwrap();
        assert_ne!(a.weights, c.weights);
    }

    #[test]
    fn h_star_minimizes_mean_loss() {
        let (data, labels) = blob_data(60, 3);
        let pool = generate_pool(2, 50, &data, &labels, 11).unwrap();
        let brute = pool
            .train_loss
            .iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0;
        assert_eq!(pool.h_star, brute);
        let single = generate_pool(2, 1, &data, &labels, 11).unwrap();
        assert_eq!(single.h_star, 0);
    }

    #[test]
    fn theta_worked_values() {
        assert_eq!(theta_from_params(1.0, 0.1, 1).unwrap().theta, 10.0);
        let t3 = theta_from_params(1.0, 0.1, 3).unwrap().theta;
        assert!((t3 - 10.0 / 3.0).abs() < 1e-12);
        assert_eq!(theta_from_params(0.0, 0.1, 4).unwrap().theta, 0.0);
        assert!(theta_from_params(1.0, 0.0, 1).is_err());
        assert!(theta_from_params(1.0, 0.1, 0).is_err());
    }

    /// d=1 pool with margins +5 and -5 on the sample (1), y=+1: losses are
    /// ~0.0067 and ~5.007, so threshold 1 eliminates the second hypothesis.
    fn two_hypothesis_pool() -> HypothesisPool {
        HypothesisPool {
            weights: vec![5.0, -5.0],
            biases: vec![0.0, 0.0],
            dim: 1,
            seed: 0,
            alive: vec![true, true],
            h_star: 0,
            train_loss: vec![logistic_loss(5.0), logistic_loss(-5.0)],
        }
    }

    #[test]
    fn elimination_and_query_rule() {
        let mut pool = two_hypothesis_pool();
        let row = prune_round(&mut pool, &[1.0], 1, 1, 1.0, 0).unwrap();
        assert_eq!(row.threshold, 1.0);
        assert_eq!(pool.alive, vec![true, false]);
        assert_eq!(row.survivors, 1);
        assert!(row.queried); // disagreement ~5.0 > 1
        assert_eq!(row.cumulative_labels, 1);
        assert!((row.best_surviving_loss - logistic_loss(5.0)).abs() < 1e-15);
    }

    #[test]
    fn h_star_is_never_eliminated() {
        let mut pool = two_hypothesis_pool();
        pool.h_star = 1; // protect the lossier hypothesis on purpose
        let row = prune_round(&mut pool, &[1.0], 1, 1, 1.0, 3).unwrap();
        assert_eq!(pool.alive, vec![true, true]);
        assert_eq!(row.survivors, 2);
        assert_eq!(row.cumulative_labels, 4);
    }

    #[test]
    fn vacuous_threshold_keeps_everything_without_querying() {
        let mut pool = two_hypothesis_pool();
        let row = prune_round(&mut pool, &[1.0], 1, 1, 1e6, 0).unwrap();
        assert_eq!(pool.alive, vec![true, true]);
        assert!(!row.queried);
        assert_eq!(row.cumulative_labels, 0);
    }

    #[test]
    fn single_survivor_never_queries() {
        let mut pool = two_hypothesis_pool();
        pool.alive[1] = false;
        let row = prune_round(&mut pool, &[1.0], 1, 100, 1e-9, 0).unwrap();
        assert_eq!(row.survivors, 1);
        assert!(!row.queried); // max-min disagreement is exactly 0
    }

    #[test]
    fn tight_threshold_survivors_nest_inside_loose_ones() {
        let (data, labels) = blob_data(100, 5);
        let rep = same_stream_check(&data, &labels, 60, 50, 10.0, 10.0 / 3.0, 0).unwrap();
        assert!(rep.subset_every_round);
        for &(loose, tight) in &rep.survivor_pairs {
            assert!(tight <= loose);
        }
    }

    #[test]
    fn study_traces_are_monotone_and_bounded() {
        let (data, labels) = blob_data(80, 9);
        let out = run_study(&data, &labels, 40, 30, 10.0, 10.0 / 3.0, 2, &[0, 1]).unwrap();
        assert_eq!(out.survivors.len(), 30);
        for run in &out.runs {
            for tr in [&run.iwal, &run.mheal] {
                for w in tr.rows.windows(2) {
                    assert!(w[1].survivors <= w[0].survivors);
                    assert!(w[1].cumulative_labels >= w[0].cumulative_labels);
                    assert!(w[1].cumulative_labels - w[0].cumulative_labels <= 1);
                }
                assert!(tr.rows.last().unwrap().cumulative_labels <= 30);
                assert_eq!(tr.heldout_error.len(), 30);
                assert!(tr.heldout_error.iter().all(|e| e.is_finite()));
            }
        }
    }

    #[test]
    fn study_is_seed_deterministic() {
        let (data, labels) = blob_data(50, 2);
        let a = run_study(&data, &labels, 30, 20, 10.0, 10.0 / 3.0, 2, &[4, 5]).unwrap();
        let b = run_study(&data, &labels, 30, 20, 10.0, 10.0 / 3.0, 2, &[4, 5]).unwrap();
        for (ra, rb) in a.survivors.iter().zip(&b.survivors) {
            assert_eq!(ra.iwal_mean, rb.iwal_mean);
            assert_eq!(ra.mheal_mean, rb.mheal_mean);
        }
        for (ra, rb) in a.error.iter().zip(&b.error) {
            assert_eq!(ra.iwal_mean, rb.iwal_mean);
            assert_eq!(ra.mheal_std, rb.mheal_std);
        }
    }

    #[test]
    fn zero_rounds_gives_empty_traces() {
        let (data, labels) = blob_data(20, 1);
        let out = run_study(&data, &labels, 10, 0, 10.0, 10.0 / 3.0, 2, &[0]).unwrap();
        assert!(out.survivors.is_empty());
        assert!(out.runs[0].iwal.rows.is_empty());
    }

    #[test]
    fn pool_rejects_bad_labels_and_empty_data() {
        let (data, mut labels) = blob_data(10, 0);
        labels[3] = 2;
        assert!(matches!(
            generate_pool(2, 5, &data, &labels, 0),
            Err(Error::BadLabel { row: 3, .. })
        ));
        let empty = PointSet::empty(2);
        assert!(matches!(
            generate_pool(2, 5, &empty, &[], 0),
            Err(Error::EmptyData)
        ));
    }
}
