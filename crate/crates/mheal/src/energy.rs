//! Hyperspherical energy functionals over unit point sets, the gradient
//! solver for the inverse-square case, and a swap heuristic for the
//! inverse-distance case.
//!
//! For points w_1..w_N on the unit sphere and exponent s, the energy is
//!
//! - s = 0:  sum over pairs of log(1 / |w_i - w_j|)   (log of the inverse
//!   pairwise-distance product; minimizing it maximizes the product)
//! - s > 0:  sum over pairs of |w_i - w_j|^(-s)
//!
//! Pairwise sums are reduced in a canonical value-sorted order, so the value
//! depends only on the multiset of distances: shuffling rows leaves it
//! unchanged bit-exactly.

use crate::error::Error;
use crate::points::{euclid, norm, PointSet, UnitPointSet};
use crate::{canonical_sum, DUP_TOL};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyValue {
    pub s: u32,
    /// Log-energy for s = 0, sum-energy for s >= 1. Finite iff
    /// `min_pair_distance` is positive.
    pub value: f64,
    /// N * (N - 1) / 2.
    pub pair_count: u64,
    pub min_pair_distance: f64,
}

impl EnergyValue {
    /// The pairwise-distance product for s = 0, recovered as exp(-value).
    pub fn product(&self) -> Option<f64> {
        (self.s == 0).then(|| (-self.value).exp())
    }
}

fn check_s(s: u32) -> Result<(), Error> {
    if s > 2 {
        return Err(Error::invalid("s", "supported exponents are 0, 1, 2"));
    }
    Ok(())
}

#[inline]
fn pair_term(d: f64, s: u32) -> f64 {
    match s {
        0 => -d.ln(),
        1 => 1.0 / d,
        _ => 1.0 / (d * d),
    }
}

/// Energy over all unordered pairs. Requires at least two points; a pair
/// closer than the duplicate tolerance is an error carrying the indices
/// (its energy would be infinite).
pub fn energy(points: &UnitPointSet, s: u32) -> Result<EnergyValue, Error> {
    check_s(s)?;
    let n = points.rows();
    if n < 2 {
        return Err(Error::FewerThanTwoPoints(n));
    }
    let mut terms = Vec::with_capacity(n * (n - 1) / 2);
    let mut min_d = f64::INFINITY;
    for i in 0..n {
        for j in 0..i {
            let d = euclid(points.row(i), points.row(j));
            if d < DUP_TOL {
                return Err(Error::DuplicatePoints { i, j });
            }
            min_d = min_d.min(d);
            terms.push(pair_term(d, s));
        }
    }
    Ok(EnergyValue {
        s,
        value: canonical_sum(terms),
        pair_count: (n * (n - 1) / 2) as u64,
        min_pair_distance: min_d,
    })
}

/// Energy of a subset of rows, tolerating degenerate inputs: fewer than two
/// rows yield the vacuous zero-pair value, and duplicate pairs yield an
/// infinite value instead of an error. Used where selections may legitimately
/// be singletons or contain coincident data points.
pub(crate) fn subset_energy_lenient(points: &UnitPointSet, subset: &[usize], s: u32) -> EnergyValue {
    let n = subset.len();
    if n < 2 {
        return EnergyValue {
            s,
            value: 0.0,
            pair_count: 0,
            min_pair_distance: f64::INFINITY,
        };
    }
    let mut terms = Vec::with_capacity(n * (n - 1) / 2);
    let mut min_d = f64::INFINITY;
    for a in 0..n {
        for b in 0..a {
            let d = euclid(points.row(subset[a]), points.row(subset[b]));
            min_d = min_d.min(d);
            terms.push(if d < DUP_TOL {
                f64::INFINITY
            } else {
                pair_term(d, s)
            });
        }
    }
    EnergyValue {
        s,
        value: canonical_sum(terms),
        pair_count: (n * (n - 1) / 2) as u64,
        min_pair_distance: min_d,
    }
}

/// Raw s-energy of a full configuration given as flat row-major data;
/// +infinity on duplicate pairs. Internal workhorse for the descent loop.
fn raw_energy(data: &[f64], n: usize, d: usize, s: u32) -> f64 {
    let mut terms = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in 0..i {
            let dist = euclid(&data[i * d..(i + 1) * d], &data[j * d..(j + 1) * d]);
            if dist < DUP_TOL {
                return f64::INFINITY;
            }
            terms.push(pair_term(dist, s));
        }
    }
    canonical_sum(terms)
}

/// Gradient of the s = 2 energy with respect to point `index`:
/// sum over j != i of -2 (w_i - w_j) / |w_i - w_j|^4.
pub fn grad_e2(points: &UnitPointSet, index: usize) -> Result<Vec<f64>, Error> {
    let n = points.rows();
    if index >= n {
        return Err(Error::IndexOutOfBounds { index, len: n });
    }
    let d = points.dim();
    let wi = points.row(index);
    let mut g = vec![0.0; d];
    for j in 0..n {
        if j == index {
            continue;
        }
        let wj = points.row(j);
        let dist = euclid(wi, wj);
        if dist < DUP_TOL {
            return Err(Error::DuplicatePoints {
                i: index.max(j),
                j: index.min(j),
            });
        }
        let coef = -2.0 / (dist * dist * dist * dist);
        for (gk, (a, b)) in g.iter_mut().zip(wi.iter().zip(wj)) {
            *gk += coef * (a - b);
        }
    }
    Ok(g)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StopReason {
    /// Max per-point displacement fell below the tolerance.
    Displacement,
    /// Step halving bottomed out at lr / 1024 without finding a descent step.
    StepFloor,
    MaxIters,
}

#[derive(Debug, Clone)]
pub struct DescentOutcome {
    pub points: UnitPointSet,
    /// Energy (s = 2) after each accepted iteration, starting with the
    /// initial value. Non-increasing by construction.
    pub energy_trace: Vec<f64>,
    pub iterations: usize,
    pub stop: StopReason,
}

/// Gradient descent on the s = 2 energy with renormalization to the sphere
/// after every step (the plain iterate does not preserve norms).
///
/// Monotone descent is enforced by halving the step whenever a proposal would
/// increase the energy; halving bottoms out at `lr / 1024`, at which point the
/// solver stops at the last accepted configuration.
pub fn minimize_e2(
    points: &UnitPointSet,
    lr: f64,
    max_iters: usize,
    tol: f64,
) -> Result<DescentOutcome, Error> {
    if !(lr > 0.0) || !lr.is_finite() {
        return Err(Error::invalid("lr", "must be positive and finite"));
    }
    if !(tol >= 0.0) {
        return Err(Error::invalid("tol", "must be non-negative"));
    }
    let n = points.rows();
    if n < 2 {
        return Err(Error::FewerThanTwoPoints(n));
    }
    let d = points.dim();
    // the precondition: starting configuration must be non-degenerate
    energy(points, 2)?;

    let mut current: Vec<f64> = points.points().as_slice().to_vec();
    let mut e_cur = raw_energy(&current, n, d, 2);
    let mut trace = vec![e_cur];
    let floor = lr / 1024.0;
    let mut iterations = 0;
    let mut stop = StopReason::MaxIters;

    for _ in 0..max_iters {
        let grads: Vec<Vec<f64>> = {
            let setp = UnitPointSet::trusted(PointSet::new(current.clone(), n, d)?);
            (0..n)
                .map(|i| grad_e2(&setp, i))
                .collect::<Result<_, _>>()?
        };

        let mut step = lr;
        let mut accepted: Option<(Vec<f64>, f64)> = None;
        loop {
            let mut cand = current.clone();
            let mut valid = true;
            for i in 0..n {
                let row = &mut cand[i * d..(i + 1) * d];
                for (v, g) in row.iter_mut().zip(&grads[i]) {
                    *v -= step * g;
                }
                let nrm = norm(row);
                if nrm < 1e-300 {
                    valid = false;
                    break;
                }
                for v in row.iter_mut() {
                    *v /= nrm;
                }
            }
            let e_new = if valid {
                raw_energy(&cand, n, d, 2)
            } else {
                f64::INFINITY
            };
            if e_new <= e_cur {
                accepted = Some((cand, e_new));
                break;
            }
            step /= 2.0;
            if step < floor {
                break;
            }
        }

        let Some((cand, e_new)) = accepted else {
            stop = StopReason::StepFloor;
            break;
        };
        iterations += 1;
        let max_disp = (0..n)
            .map(|i| euclid(&cand[i * d..(i + 1) * d], &current[i * d..(i + 1) * d]))
            .fold(0.0f64, f64::max);
        current = cand;
        e_cur = e_new;
        trace.push(e_cur);
        if max_disp < tol {
            stop = StopReason::Displacement;
            break;
        }
    }

    Ok(DescentOutcome {
        points: UnitPointSet::trusted(PointSet::new(current, n, d)?),
        energy_trace: trace,
        iterations,
        stop,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SwapOutcome {
    /// Ascending indices of the selected subset.
    pub selected: Vec<usize>,
    pub energy: EnergyValue,
    pub passes: usize,
    pub improving_swaps: usize,
    /// False when max_passes ran out before local optimality.
    pub locally_optimal: bool,
}

/// Best-improvement 1-swap local search for the s = 1 energy, from a seeded
/// random starting subset. Each pass evaluates every (selected, unselected)
/// exchange and applies the single best strict improvement.
pub fn minimize_e1_swap(
    pool: &UnitPointSet,
    n_select: usize,
    seed: u64,
    max_passes: usize,
) -> Result<SwapOutcome, Error> {
    let m = pool.rows();
    if n_select > m {
        return Err(Error::BudgetExceedsPool {
            budget: n_select,
            pool: m,
        });
    }
    if n_select == 0 {
        return Err(Error::invalid("n_select", "must be positive"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut selected: Vec<usize> =
        rand::seq::index::sample(&mut rng, m, n_select).into_iter().collect();
    selected.sort_unstable();
    let mut in_set = vec![false; m];
    for &i in &selected {
        in_set[i] = true;
    }

    let subset_value = |subset: &[usize]| subset_energy_lenient(pool, subset, 1).value;

    let mut current = subset_value(&selected);
    let mut passes = 0;
    let mut improving = 0;
    let mut locally_optimal = false;

    while passes < max_passes {
        passes += 1;
        let mut best: Option<(usize, usize, f64)> = None; // (position, incoming, value)
        for pos in 0..selected.len() {
            let outgoing = selected[pos];
            for incoming in 0..m {
                if in_set[incoming] {
                    continue;
                }
                let mut trial = selected.clone();
                trial[pos] = incoming;
                let val = subset_value(&trial);
                if val < current && best.map_or(true, |(_, _, b)| val < b) {
                    best = Some((pos, incoming, val));
                }
            }
            let _ = outgoing;
        }
        match best {
            Some((pos, incoming, val)) => {
                in_set[selected[pos]] = false;
                in_set[incoming] = true;
                selected[pos] = incoming;
                selected.sort_unstable();
                current = val;
                improving += 1;
            }
            None => {
                locally_optimal = true;
                break;
            }
        }
    }

    Ok(SwapOutcome {
        energy: subset_energy_lenient(pool, &selected, 1),
        selected,
        passes,
        improving_swaps: improving,
        locally_optimal,
    })
}
