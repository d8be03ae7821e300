//! Sequential subset selection on the sphere: the greedy product rule, the
//! max-min (farthest-point) rule, and the bound checkers that sandwich the
//! selection quality.
//!
//! All pairwise-distance products are handled as sums of logs; a distance
//! below the duplicate tolerance contributes -inf, so degenerate candidates
//! lose every comparison automatically.

use crate::energy::{subset_energy_lenient, EnergyValue};
use crate::error::Error;
use crate::points::{euclid, UnitPointSet};
use crate::{canonical_sum, DUP_TOL};
use serde::Serialize;

/// Absolute slack, in log space, for the sandwich-chain comparisons. Sums of
/// pair logs accumulate rounding of this order long before the inequalities
/// carry information.
pub const CHAIN_SLACK: f64 = 1e-9;

/// Incremental state of a sequential selection over a fixed pool.
///
/// Two caches are maintained exactly on every append, each in one O(M·d)
/// sweep: `min_dist[p]` (distance from pool point p to its nearest selected
/// point) for the max-min rule, and `log_sum[p]` (sum of log-distances from p
/// to every selected point) for the product rule.
#[derive(Debug, Clone)]
pub struct SelectionState {
    selected: Vec<usize>,
    in_set: Vec<bool>,
    min_dist: Vec<f64>,
    log_sum: Vec<f64>,
    /// Sum of log-distances over all pairs of selected points; -inf once any
    /// selected pair coincides.
    pair_log: f64,
    budget: usize,
    distance_evals: u64,
    degenerate_picks: u64,
}

impl SelectionState {
    pub fn start(pool: &UnitPointSet, init: usize, budget: usize) -> Result<Self, Error> {
        let m = pool.rows();
        if budget == 0 {
            return Err(Error::invalid("budget", "must be positive"));
        }
        if budget > m {
            return Err(Error::BudgetExceedsPool { budget, pool: m });
        }
        if init >= m {
            return Err(Error::IndexOutOfBounds { index: init, len: m });
        }
        let mut state = Self {
            selected: Vec::with_capacity(budget),
            in_set: vec![false; m],
            min_dist: vec![f64::INFINITY; m],
            log_sum: vec![0.0; m],
            pair_log: 0.0,
            budget,
            distance_evals: 0,
            degenerate_picks: 0,
        };
        state.append_unchecked(pool, init);
        Ok(state)
    }

    /// Appends `index` and refreshes both caches with one pass over the pool.
    pub fn append(&mut self, pool: &UnitPointSet, index: usize) -> Result<(), Error> {
        let m = pool.rows();
        if index >= m {
            return Err(Error::IndexOutOfBounds { index, len: m });
        }
        if self.in_set[index] {
            return Err(Error::invalid("index", "already selected"));
        }
        if self.selected.len() == self.budget {
            return Err(Error::invalid("selection", "budget exhausted"));
        }
        self.append_unchecked(pool, index);
        Ok(())
    }

    fn append_unchecked(&mut self, pool: &UnitPointSet, index: usize) {
        // contribution of the new point to the selected pair-log total
        self.pair_log += self.log_sum[index];
        let new_row = pool.row(index).to_vec();
        for p in 0..pool.rows() {
            let d = euclid(&new_row, pool.row(p));
            self.min_dist[p] = self.min_dist[p].min(d);
            if d < DUP_TOL {
                self.log_sum[p] = f64::NEG_INFINITY;
            } else {
                self.log_sum[p] += d.ln();
            }
        }
        self.distance_evals += pool.rows() as u64;
        self.selected.push(index);
        self.in_set[index] = true;
    }

    pub fn selected(&self) -> &[usize] {
        &self.selected
    }

    pub fn is_selected(&self, index: usize) -> bool {
        self.in_set[index]
    }

    pub fn min_dist(&self) -> &[f64] {
        &self.min_dist
    }

    /// Sum of log-distances from pool point `p` to every selected point.
    pub fn log_sum(&self, p: usize) -> f64 {
        self.log_sum[p]
    }

    pub fn pool_size(&self) -> usize {
        self.in_set.len()
    }

    pub fn budget(&self) -> usize {
        self.budget
    }

    pub fn distance_evals(&self) -> u64 {
        self.distance_evals
    }

    /// Number of steps that were forced to pick a duplicate of an already
    /// selected point because nothing better remained.
    pub fn degenerate_picks(&self) -> u64 {
        self.degenerate_picks
    }

    fn argmax_unselected(&self, score: impl Fn(usize) -> f64) -> Result<usize, Error> {
        let mut best: Option<(usize, f64)> = None;
        let mut first_unselected = None;
        for p in 0..self.in_set.len() {
            if self.in_set[p] {
                continue;
            }
            if first_unselected.is_none() {
                first_unselected = Some(p);
            }
            let s = score(p);
            if s > best.map_or(f64::NEG_INFINITY, |(_, b)| b) {
                best = Some((p, s));
            }
        }
        match (best, first_unselected) {
            (Some((p, _)), _) => Ok(p),
            (None, Some(p)) => Ok(p), // every remaining score is -inf
            (None, None) => Err(Error::PoolExhausted),
        }
    }
}

/// One step of the greedy product rule: append the unselected point whose
/// distance product to the selected set is maximal (log-space; ties to the
/// lowest index). Candidates coinciding with a selected point score -inf and
/// are chosen only when nothing else remains.
pub fn sequential_step(pool: &UnitPointSet, state: &mut SelectionState) -> Result<usize, Error> {
    if state.selected.is_empty() {
        return Err(Error::invalid("state", "no selected points"));
    }
    let chosen = state.argmax_unselected(|p| state.log_sum[p])?;
    if state.log_sum[chosen] == f64::NEG_INFINITY {
        state.degenerate_picks += 1;
    }
    state.append(pool, chosen)?;
    Ok(chosen)
}

/// One step of the max-min rule: append the unselected point farthest from
/// the selected set (ties to the lowest index).
pub fn maxmin_step(pool: &UnitPointSet, state: &mut SelectionState) -> Result<usize, Error> {
    if state.selected.is_empty() {
        return Err(Error::invalid("state", "no selected points"));
    }
    let chosen = state.argmax_unselected(|p| state.min_dist[p])?;
    state.append(pool, chosen)?;
    Ok(chosen)
}

#[derive(Debug, Clone, Serialize)]
pub struct GreedyOutcome {
    pub best_init: usize,
    /// Indices in selection order for the winning start.
    pub selected: Vec<usize>,
    /// Canonical log-energy (s = 0) of the winning selection.
    pub energy: EnergyValue,
    pub distance_evals: u64,
    /// Steps, across all starts, forced onto a duplicate candidate.
    pub degenerate_picks: u64,
}

/// Greedy product-rule selection from one fixed start.
pub fn greedy_run(
    pool: &UnitPointSet,
    start: usize,
    budget: usize,
) -> Result<SelectionState, Error> {
    let mut state = SelectionState::start(pool, start, budget)?;
    for _ in 1..budget {
        sequential_step(pool, &mut state)?;
    }
    Ok(state)
}

/// Greedy product-rule selection tried from every start; returns the start
/// whose final selection has the largest pairwise-distance product
/// (equivalently the smallest log-energy), ties to the lowest start index.
pub fn greedy_select(pool: &UnitPointSet, budget: usize) -> Result<GreedyOutcome, Error> {
    let m = pool.rows();
    if budget < 2 {
        return Err(Error::invalid("budget", "must be at least 2"));
    }
    if budget > m {
        return Err(Error::BudgetExceedsPool { budget, pool: m });
    }
    let mut best: Option<(usize, Vec<usize>, EnergyValue)> = None;
    let mut evals: u64 = 0;
    let mut degenerate: u64 = 0;
    for start in 0..m {
        let state = greedy_run(pool, start, budget)?;
        evals += state.distance_evals;
        degenerate += state.degenerate_picks;
        // canonical evaluation: independent of selection order
        let e = subset_energy_lenient(pool, state.selected(), 0);
        evals += e.pair_count;
        if best.as_ref().map_or(true, |(_, _, b)| e.value < b.value) {
            best = Some((start, state.selected.clone(), e));
        }
    }
    let (best_init, selected, energy) = best.expect("m >= budget >= 2");
    Ok(GreedyOutcome {
        best_init,
        selected,
        energy,
        distance_evals: evals,
        degenerate_picks: degenerate,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MaxminOutcome {
    /// Indices in selection order, starting with the init.
    pub selected: Vec<usize>,
    /// min-distance of the chosen point at each step after the first;
    /// non-increasing (farthest-point property).
    pub radii: Vec<f64>,
    /// max over the pool of the final distance to the nearest selected point.
    pub covering_radius: f64,
    pub distance_evals: u64,
}

/// Max-min (farthest-point) selection from an explicit init.
pub fn maxmin_select(
    pool: &UnitPointSet,
    budget: usize,
    init: usize,
) -> Result<MaxminOutcome, Error> {
    let mut state = SelectionState::start(pool, init, budget)?;
    let mut radii = Vec::with_capacity(budget.saturating_sub(1));
    for _ in 1..budget {
        // record the candidate's min-distance before the append clears it
        let chosen = state.argmax_unselected(|p| state.min_dist[p])?;
        radii.push(state.min_dist[chosen]);
        state.append(pool, chosen)?;
    }
    let covering_radius = state
        .min_dist
        .iter()
        .copied()
        .fold(0.0f64, f64::max);
    Ok(MaxminOutcome {
        selected: state.selected,
        radii,
        covering_radius,
        distance_evals: state.distance_evals,
    })
}

/// Sandwich bounds around the pairwise-distance product when one candidate
/// joins an existing selection. All values are logs of the respective
/// products; a vanished product appears as -inf.
///
/// With W the selected set (|W| = N-1), m the candidate's distance to its
/// nearest selected point, and P_W the pairwise product over W:
///
/// - `lower`  = log m^(N(N-1)/2)
/// - `middle` = log (P_W · m^(N-1))
/// - `energy` = log of the pairwise product over W plus the candidate
/// - `upper_loss_bound` = log (max_j ||w_N - w_j||)^(N(N-1)/2)
///
/// The chain lower ≤ middle ≤ energy is guaranteed when the hypothesis
/// m ≤ min-pairwise(W) holds; it is checked, never assumed.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub lower: f64,
    pub middle: f64,
    pub energy: f64,
    pub upper_loss_bound: f64,
    /// Candidate min-distance vs. the selected set's own min pairwise
    /// distance (vacuously true for a single selected point).
    pub hypothesis_holds: bool,
    /// None when the hypothesis fails (chain not applicable); Some(holds)
    /// otherwise, compared with CHAIN_SLACK in log space.
    pub chain_holds: Option<bool>,
    pub candidate_min_dist: f64,
    pub selected_min_pairwise: f64,
}

pub fn sandwich_bounds(
    pool: &UnitPointSet,
    selected: &[usize],
    candidate: usize,
) -> Result<BoundReport, Error> {
    let m_pool = pool.rows();
    if selected.is_empty() {
        return Err(Error::invalid("selected", "need at least one selected point"));
    }
    for &i in selected.iter().chain(std::iter::once(&candidate)) {
        if i >= m_pool {
            return Err(Error::IndexOutOfBounds { index: i, len: m_pool });
        }
    }
    let n_prev = selected.len();
    let n = n_prev + 1;

    // pair logs within W; coincident selected points make every bound -inf
    // vs a possibly finite lower, so they are rejected instead
    let mut w_logs = Vec::with_capacity(n_prev * (n_prev - 1) / 2);
    let mut min_pair_w = f64::INFINITY;
    for a in 0..n_prev {
        for b in 0..a {
            let d = euclid(pool.row(selected[a]), pool.row(selected[b]));
            if d < DUP_TOL {
                return Err(Error::DuplicatePoints {
                    i: selected[a].max(selected[b]),
                    j: selected[a].min(selected[b]),
                });
            }
            min_pair_w = min_pair_w.min(d);
            w_logs.push(d.ln());
        }
    }
    let pair_log_w = canonical_sum(w_logs.clone());

    let cand_dists: Vec<f64> = selected
        .iter()
        .map(|&j| euclid(pool.row(candidate), pool.row(j)))
        .collect();
    let m = cand_dists.iter().copied().fold(f64::INFINITY, f64::min);
    let max_d = cand_dists.iter().copied().fold(0.0f64, f64::max);

    let half_pairs = (n * (n - 1) / 2) as f64;
    let lower = half_pairs * m.ln();
    let middle = pair_log_w + (n - 1) as f64 * m.ln();
    let mut all_logs = w_logs;
    all_logs.extend(cand_dists.iter().map(|d| d.ln()));
    let energy = canonical_sum(all_logs);
    let upper_loss_bound = half_pairs * max_d.ln();

    let hypothesis_holds = m <= min_pair_w;
    let chain_holds = hypothesis_holds
        .then(|| lower <= middle + CHAIN_SLACK && middle <= energy + CHAIN_SLACK);

    Ok(BoundReport {
        lower,
        middle,
        energy,
        upper_loss_bound,
        hypothesis_holds,
        chain_holds,
        candidate_min_dist: m,
        selected_min_pairwise: min_pair_w,
    })
}

/// Minimum and maximum pairwise distance over a selected subset — the chord
/// range that scales any approximation-loss bound for the selection.
pub fn chord_envelope(pool: &UnitPointSet, selected: &[usize]) -> Result<(f64, f64), Error> {
    if selected.len() < 2 {
        return Err(Error::FewerThanTwoPoints(selected.len()));
    }
    for &i in selected {
        if i >= pool.rows() {
            return Err(Error::IndexOutOfBounds { index: i, len: pool.rows() });
        }
    }
    let mut min_c = f64::INFINITY;
    let mut max_c = 0.0f64;
    for a in 0..selected.len() {
        for b in 0..a {
            let d = euclid(pool.row(selected[a]), pool.row(selected[b]));
            min_c = min_c.min(d);
            max_c = max_c.max(d);
        }
    }
    Ok((min_c, max_c))
}

/// Realized approximation-loss envelope for a selection in acquisition order.
///
/// The loss of the final acquisition is bounded above by
/// max^(N(N-1)/2) − min^(N(N-1)/2) over the last point's distances to the
/// earlier ones; `per_root_loss` is that bound re-expressed per pair root
/// (the (N(N-1)/2)-th root). The envelope brackets it by the candidate
/// pool's chord spreads: `lower` = 2·min over remaining candidates of
/// (max_j − min_j), `upper` = max over remaining candidates of max_j. The
/// upper end always contains the loss; the lower end is reported, not
/// guaranteed.
#[derive(Debug, Clone, Serialize)]
pub struct LossEnvelope {
    pub min_chord: f64,
    pub max_chord: f64,
    pub per_root_loss: f64,
    pub lower: f64,
    pub upper: f64,
    pub within: bool,
}

pub fn approximation_loss_check(
    pool: &UnitPointSet,
    selected: &[usize],
) -> Result<LossEnvelope, Error> {
    let (min_chord, max_chord) = chord_envelope(pool, selected)?;
    let n = selected.len();
    let (last, prior) = selected.split_last().expect("checked length");
    let dists: Vec<f64> = prior
        .iter()
        .map(|&j| euclid(pool.row(*last), pool.row(j)))
        .collect();
    let min_d = dists.iter().copied().fold(f64::INFINITY, f64::min);
    let max_d = dists.iter().copied().fold(0.0f64, f64::max);

    let half_pairs = (n * (n - 1) / 2) as f64;
    // per-root of max^hp - min^hp, evaluated in log space
    let per_root_loss = if max_d <= 0.0 || min_d >= max_d {
        0.0
    } else {
        let a = half_pairs * max_d.ln();
        let b = half_pairs * min_d.ln();
        let log_loss = a + (-(b - a).exp()).ln_1p();
        (log_loss / half_pairs).exp()
    };

    // candidate pool at acquisition time: everything outside the earlier
    // selection (the final point itself included)
    let mut in_prior = vec![false; pool.rows()];
    for &i in prior {
        in_prior[i] = true;
    }
    let mut lower = f64::INFINITY;
    let mut upper = 0.0f64;
    for p in 0..pool.rows() {
        if in_prior[p] {
            continue;
        }
        let mut mn = f64::INFINITY;
        let mut mx = 0.0f64;
        for &j in prior {
            let d = euclid(pool.row(p), pool.row(j));
            mn = mn.min(d);
            mx = mx.max(d);
        }
        lower = lower.min(2.0 * (mx - mn));
        upper = upper.max(mx);
    }
    let within = lower <= per_root_loss && per_root_loss <= upper;
    Ok(LossEnvelope {
        min_chord,
        max_chord,
        per_root_loss,
        lower,
        upper,
        within,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::points::PointSet;

    fn units(rows: &[Vec<f64>]) -> UnitPointSet {
        UnitPointSet::from_points(PointSet::from_rows(rows).unwrap()).unwrap()
    }

    fn square() -> UnitPointSet {
        units(&[
            vec![1.0, 0.0],
            vec![0.0, 1.0],
            vec![-1.0, 0.0],
            vec![0.0, -1.0],
        ])
    }

    fn hexagon() -> UnitPointSet {
        let s = 3.0f64.sqrt() / 2.0;
        units(&[
            vec![1.0, 0.0],
            vec![0.5, s],
            vec![-0.5, s],
            vec![-1.0, 0.0],
            vec![-0.5, -s],
            vec![0.5, -s],
        ])
    }

    #[test]
    fn sequential_step_prefers_antipode_then_breaks_tie_low() {
        let pool = square();
        let mut state = SelectionState::start(&pool, 0, 3).unwrap();
        assert_eq!(sequential_step(&pool, &mut state).unwrap(), 2);
        // both remaining products equal 2 exactly; tie goes to index 1
        assert_eq!(sequential_step(&pool, &mut state).unwrap(), 1);
    }

    #[test]
    fn sequential_step_pool_of_two_is_forced() {
        let pool = units(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let mut state = SelectionState::start(&pool, 1, 2).unwrap();
        assert_eq!(sequential_step(&pool, &mut state).unwrap(), 0);
    }

    #[test]
    fn steps_error_when_pool_exhausted() {
        let pool = units(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let mut state = SelectionState::start(&pool, 0, 2).unwrap();
        sequential_step(&pool, &mut state).unwrap();
        assert!(matches!(
            maxmin_step(&pool, &mut state),
            Err(Error::PoolExhausted)
        ));
    }

    #[test]
    fn maxmin_steps_on_square() {
        let pool = square();
        let mut state = SelectionState::start(&pool, 0, 3).unwrap();
        assert_eq!(maxmin_step(&pool, &mut state).unwrap(), 2);
        // 1 and 3 both sit at sqrt(2) from the selected pair
        assert_eq!(maxmin_step(&pool, &mut state).unwrap(), 1);
    }

    #[test]
    fn maxmin_budget_one_returns_init() {
        let pool = square();
        let out = maxmin_select(&pool, 1, 3).unwrap();
        assert_eq!(out.selected, vec![3]);
        assert!(out.radii.is_empty());
    }

    #[test]
    fn maxmin_radii_non_increasing_and_cache_exact() {
        let pool = {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
            let rows: Vec<Vec<f64>> = (0..100)
                .map(|_| {
                    let v: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() - 0.5).collect();
                    let n = crate::points::norm(&v);
                    v.into_iter().map(|x| x / n).collect()
                })
                .collect();
            units(&rows)
        };
        let out = maxmin_select(&pool, 20, 0).unwrap();
        for w in out.radii.windows(2) {
            assert!(w[1] <= w[0], "radii increased: {} -> {}", w[0], w[1]);
        }

        // incremental cache vs from-scratch recomputation, exact equality
        let mut state = SelectionState::start(&pool, 0, 20).unwrap();
        for _ in 1..20 {
            maxmin_step(&pool, &mut state).unwrap();
            for p in 0..pool.rows() {
                let mut scratch = f64::INFINITY;
                for &w in state.selected() {
                    scratch = scratch.min(euclid(pool.row(p), pool.row(w)));
                }
                assert_eq!(scratch, state.min_dist()[p]);
            }
        }
    }

    #[test]
    fn greedy_select_full_budget_takes_all_points() {
        let pool = square();
        let out = greedy_select(&pool, 4).unwrap();
        let mut sel = out.selected.clone();
        sel.sort_unstable();
        assert_eq!(sel, vec![0, 1, 2, 3]);
    }

    #[test]
    fn greedy_on_hexagon_is_blocked_from_the_global_optimum() {
        // The antipode maximizes the first factor from every start, and no
        // completion of a diameter pair reaches the equilateral triple: every
        // start yields product 2*sqrt(3), while the global best over all 20
        // subsets is 3*sqrt(3).
        let pool = hexagon();
        let out = greedy_select(&pool, 3).unwrap();
        let product = out.energy.product().unwrap();
        assert!((product - 2.0 * 3.0f64.sqrt()).abs() < 1e-9, "product {product}");

        let mut brute_best = 0.0f64;
        for a in 0..6 {
            for b in 0..a {
                for c in 0..b {
                    let p = euclid(pool.row(a), pool.row(b))
                        * euclid(pool.row(a), pool.row(c))
                        * euclid(pool.row(b), pool.row(c));
                    brute_best = brute_best.max(p);
                }
            }
        }
        assert!((brute_best - 3.0 * 3.0f64.sqrt()).abs() < 1e-9);
        assert!(product < brute_best - 1.0);
    }

    #[test]
    fn greedy_budget_two_achieves_diameter() {
        let pool = {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
            let rows: Vec<Vec<f64>> = (0..30)
                .map(|_| {
                    let v: Vec<f64> = (0..4).map(|_| rng.gen::<f64>() - 0.5).collect();
                    let n = crate::points::norm(&v);
                    v.into_iter().map(|x| x / n).collect()
                })
                .collect();
            units(&rows)
        };
        let out = greedy_select(&pool, 2).unwrap();
        let achieved = euclid(pool.row(out.selected[0]), pool.row(out.selected[1]));
        let mut diameter = 0.0f64;
        for a in 0..pool.rows() {
            for b in 0..a {
                diameter = diameter.max(euclid(pool.row(a), pool.row(b)));
            }
        }
        assert_eq!(achieved, diameter);
    }

    #[test]
    fn greedy_counter_within_envelope() {
        let pool = hexagon();
        let out = greedy_select(&pool, 3).unwrap();
        let m = pool.rows() as u64;
        assert!(out.distance_evals <= 2 * m * m * 9);
    }

    #[test]
    fn sandwich_two_point_chain_is_tight() {
        let pool = square();
        let rep = sandwich_bounds(&pool, &[0], 2).unwrap();
        // single selected point: lower = middle = energy = log 2
        assert_eq!(rep.lower, rep.middle);
        assert_eq!(rep.middle, rep.energy);
        assert!((rep.energy - 2.0f64.ln()).abs() < 1e-15);
        assert!(rep.hypothesis_holds);
        assert_eq!(rep.chain_holds, Some(true));
    }

    #[test]
    fn sandwich_chain_on_square_state() {
        let pool = square();
        // selected pair (0, 2) at distance 2; candidate 1 at sqrt(2) each
        let rep = sandwich_bounds(&pool, &[0, 2], 1).unwrap();
        assert!(rep.hypothesis_holds, "sqrt(2) <= 2");
        assert_eq!(rep.chain_holds, Some(true));
        assert!(rep.lower <= rep.middle + CHAIN_SLACK);
        assert!(rep.middle <= rep.energy + CHAIN_SLACK);
        // energy = log(2 * sqrt2 * sqrt2) = log 4
        assert!((rep.energy - 4.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn sandwich_duplicate_candidate_degenerates_to_neg_inf() {
        let pool = units(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 0.0]]);
        let rep = sandwich_bounds(&pool, &[0, 1], 2).unwrap();
        assert_eq!(rep.lower, f64::NEG_INFINITY);
        assert_eq!(rep.middle, f64::NEG_INFINITY);
        assert_eq!(rep.energy, f64::NEG_INFINITY);
        assert!(rep.hypothesis_holds);
        assert_eq!(rep.chain_holds, Some(true));
    }

    #[test]
    fn sandwich_rejects_duplicate_selected_pair() {
        let pool = units(&[vec![1.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(
            sandwich_bounds(&pool, &[0, 1], 2),
            Err(Error::DuplicatePoints { i: 1, j: 0 })
        ));
    }

    #[test]
    fn chord_envelope_examples() {
        let pool = square();
        assert_eq!(chord_envelope(&pool, &[0, 2]).unwrap(), (2.0, 2.0));

        let tri = units(&[
            vec![1.0, 0.0],
            vec![-0.5, 3.0f64.sqrt() / 2.0],
            vec![-0.5, -(3.0f64.sqrt()) / 2.0],
        ]);
        let (mn, mx) = chord_envelope(&tri, &[0, 1, 2]).unwrap();
        assert!((mn - 3.0f64.sqrt()).abs() < 1e-12);
        assert!((mx - 3.0f64.sqrt()).abs() < 1e-12);
        assert!(mn <= mx);
    }

    #[test]
    fn loss_envelope_upper_contains_realized_loss() {
        let pool = {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
            let rows: Vec<Vec<f64>> = (0..40)
                .map(|_| {
                    let v: Vec<f64> = (0..3).map(|_| rng.gen::<f64>() - 0.5).collect();
                    let n = crate::points::norm(&v);
                    v.into_iter().map(|x| x / n).collect()
                })
                .collect();
            units(&rows)
        };
        for budget in [3usize, 5, 8] {
            let sel = maxmin_select(&pool, budget, 0).unwrap();
            let env = approximation_loss_check(&pool, &sel.selected).unwrap();
            assert!(
                env.per_root_loss <= env.upper + 1e-12,
                "loss {} above upper {}",
                env.per_root_loss,
                env.upper
            );
            assert!(env.min_chord <= env.max_chord);
        }
    }

    #[test]
    fn maxmin_on_duplicate_heavy_pool_keeps_radii_trace_sane() {
        let pool = units(&[
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![1.0, 0.0],
            vec![-1.0, 0.0],
        ]);
        let out = maxmin_select(&pool, 4, 0).unwrap();
        assert_eq!(out.selected[1], 3); // the only distinct point comes first
        assert_eq!(out.radii[1], 0.0);
        assert_eq!(out.radii[2], 0.0);
        assert_eq!(out.covering_radius, 0.0);
    }

    #[test]
    fn budget_validation() {
        let pool = square();
        assert!(matches!(
            greedy_select(&pool, 5),
            Err(Error::BudgetExceedsPool { budget: 5, pool: 4 })
        ));
        assert!(matches!(
            maxmin_select(&pool, 5, 0),
            Err(Error::BudgetExceedsPool { .. })
        ));
        assert!(greedy_select(&pool, 1).is_err());
    }
}
