//! Sphere normalization, zero-padding, seeded Gaussian random projection, and
//! measurement reports for squared-distance concentration and pairwise-order
//! preservation under projection.

use crate::error::Error;
use crate::points::{angle, dot, euclid, norm, PointSet, UnitPointSet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

/// How raw feature rows are placed on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormalizeMode {
    /// Divide each row by its own l2 norm.
    L2,
    /// Z-score each column (zero mean, unit variance) first, then l2-normalize
    /// each row.
    GaussianStandardizeThenL2,
}

#[derive(Debug)]
pub struct NormalizeOutcome {
    pub points: UnitPointSet,
    /// Columns whose variance was zero under standardization; they are left
    /// centered but unscaled, because real datasets carry constant features.
    pub zero_variance_columns: Vec<usize>,
}

/// Projects every row onto the unit sphere. Mode `L2` is idempotent: re-running
/// it on its own output reproduces the rows bit-exactly up to 1e-12.
pub fn normalize_to_sphere(points: &PointSet, mode: NormalizeMode) -> Result<NormalizeOutcome, Error> {
    points.check_finite()?;
    let n = points.rows();
    let d = points.dim();
    let mut data: Vec<f64> = points.as_slice().to_vec();
    let mut zero_var = Vec::new();

    if mode == NormalizeMode::GaussianStandardizeThenL2 && n > 0 {
        for c in 0..d {
            let mut mean = 0.0;
            for r in 0..n {
                mean += data[r * d + c];
            }
            mean /= n as f64;
            let mut var = 0.0;
            for r in 0..n {
                let v = data[r * d + c] - mean;
                var += v * v;
            }
            var /= n as f64;
            let sd = var.sqrt();
            if sd < 1e-15 {
                zero_var.push(c);
                for r in 0..n {
                    data[r * d + c] -= mean;
                }
            } else {
                for r in 0..n {
                    data[r * d + c] = (data[r * d + c] - mean) / sd;
                }
            }
        }
    }

    for r in 0..n {
        let row = &mut data[r * d..(r + 1) * d];
        let nrm = norm(row);
        if nrm < 1e-300 {
            return Err(Error::ZeroNormRow { row: r });
        }
        for v in row.iter_mut() {
            *v /= nrm;
        }
    }

    Ok(NormalizeOutcome {
        points: UnitPointSet::trusted(PointSet::new(data, n, d)?),
        zero_variance_columns: zero_var,
    })
}

/// Appends one exactly-zero coordinate to every row. Pairwise distances are
/// unchanged bit-for-bit: the new coordinate contributes 0 to every squared
/// difference.
pub fn pad_extend(points: &PointSet) -> PointSet {
    let n = points.rows();
    let d = points.dim();
    let mut data = Vec::with_capacity(n * (d + 1));
    for r in points.iter_rows() {
        data.extend_from_slice(r);
        data.push(0.0);
    }
    PointSet::new(data, n, d + 1).expect("shape is consistent by construction")
}

/// A seeded Gaussian random projection from `input_dim` to `kappa` dimensions.
///
/// Entries are `r_ij / sqrt(kappa)` with `r_ij` i.i.d. zero-mean Gaussian of
/// variance `sigma^2` (`sigma` is the generator parameter before the scale).
/// The realized per-entry variance is therefore `sigma^2 / kappa`, and the
/// expected squared norm of a projected vector `v` is
/// `kappa * entry_variance * |v|^2 = sigma^2 * |v|^2`; that product is the
/// center of the concentration band, exposed as [`band_factor`].
///
/// [`band_factor`]: ProjectionMatrix::band_factor
#[derive(Debug, Clone, Serialize)]
pub struct ProjectionMatrix {
    entries: Vec<f64>,
    kappa: usize,
    input_dim: usize,
    sigma: f64,
    seed: u64,
}

impl ProjectionMatrix {
    /// Draws the matrix. Regeneration from the same seed reproduces the
    /// entries bit-exactly.
    pub fn generate(kappa: usize, input_dim: usize, sigma: f64, seed: u64) -> Result<Self, Error> {
        if kappa == 0 {
            return Err(Error::invalid("kappa", "must be positive"));
        }
        if input_dim == 0 {
            return Err(Error::invalid("input_dim", "must be positive"));
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(Error::invalid("sigma", "must be positive and finite"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let scale = sigma / (kappa as f64).sqrt();
        let entries = (0..kappa * input_dim)
            .map(|_| {
                let z: f64 = StandardNormal.sample(&mut rng);
                z * scale
            })
            .collect();
        Ok(ProjectionMatrix {
            entries,
            kappa,
            input_dim,
            sigma,
            seed,
        })
    }

    /// A projection that copies its input unchanged (identity entries).
    /// Useful as a null model in order-preservation checks.
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = 1.0;
        }
        ProjectionMatrix {
            entries,
            kappa: dim,
            input_dim: dim,
            sigma: 1.0,
            seed: 0,
        }
    }

    #[inline]
    pub fn kappa(&self) -> usize {
        self.kappa
    }

    #[inline]
    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    #[inline]
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    #[inline]
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Variance of the stored (scaled) entries.
    pub fn entry_variance(&self) -> f64 {
        self.sigma * self.sigma / self.kappa as f64
    }

    /// Center factor of the squared-distance concentration band:
    /// `kappa * entry_variance`, so the band for a difference vector `v` is
    /// `(1 +/- eps) * band_factor * |v|^2`.
    pub fn band_factor(&self) -> f64 {
        self.kappa as f64 * self.entry_variance()
    }

    pub fn project_vec(&self, v: &[f64]) -> Result<Vec<f64>, Error> {
        if v.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: v.len(),
            });
        }
        let mut out = vec![0.0; self.kappa];
        for (r, o) in out.iter_mut().enumerate() {
            *o = dot(&self.entries[r * self.input_dim..(r + 1) * self.input_dim], v);
        }
        Ok(out)
    }
}

/// Applies `proj` to every row of `points`.
pub fn gaussian_project(points: &PointSet, proj: &ProjectionMatrix) -> Result<PointSet, Error> {
    if points.dim() != proj.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: proj.input_dim(),
            got: points.dim(),
        });
    }
    let mut data = Vec::with_capacity(points.rows() * proj.kappa());
    for r in points.iter_rows() {
        data.extend_from_slice(&proj.project_vec(r)?);
    }
    PointSet::new(data, points.rows(), proj.kappa())
}

/// Feasibility boundary for the concentration bound: below `kappa * eps^2`
/// of this value the bound exceeds 1 and the test is vacuous.
pub const FEASIBILITY_CONSTANT: f64 = 5.54517744;

#[derive(Debug, Clone, Serialize)]
pub struct ConcentrationReport {
    pub epsilon: f64,
    pub sigma: f64,
    pub kappa: usize,
    pub trials: u64,
    pub violations: u64,
    pub violation_rate: f64,
    /// Theoretical tail mass outside the band: `2 * exp(-kappa * eps^2 / 8)`.
    pub bound: f64,
    /// `kappa * eps^2 > 5.54517744`; when false the bound is >= 1 and the
    /// measurement cannot falsify anything.
    pub feasible: bool,
    /// Band center per unit squared distance: `kappa * entry_variance`.
    /// Documents the row-dimension scaling convention (`n = kappa`).
    pub band_factor: f64,
    pub passed: bool,
}

/// Monte-Carlo measurement of squared-distance concentration under random
/// projection, with `kappa = d` (projection to the same dimension, the
/// convention under which zero-padding by one coordinate stays admissible).
///
/// Each trial draws a pair of distinct input rows and a fresh projection, so
/// `violation_rate` estimates the per-pair probability that the projected
/// squared distance leaves the `(1 +/- eps)` band around
/// `band_factor * |x_i - x_j|^2`. The report only measures; it never asserts
/// the bound.
pub fn concentration_test(
    points: &PointSet,
    epsilon: f64,
    sigma: f64,
    trials: u64,
    seed: u64,
) -> Result<ConcentrationReport, Error> {
    if points.rows() < 2 {
        return Err(Error::FewerThanTwoPoints(points.rows()));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::invalid("epsilon", "must lie in [0, 1]"));
    }
    if trials == 0 {
        return Err(Error::invalid("trials", "must be positive"));
    }
    let kappa = points.dim();
    let bound = 2.0 * (-(kappa as f64) * epsilon * epsilon / 8.0).exp();
    let feasible = kappa as f64 * epsilon * epsilon > FEASIBILITY_CONSTANT;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = points.rows();
    let mut violations = 0u64;
    let mut band_factor = 0.0;
    for _ in 0..trials {
        let i = rng.gen_range(0..n);
        let j = {
            let mut j = rng.gen_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            j
        };
        let proj = ProjectionMatrix::generate(kappa, points.dim(), sigma, rng.gen::<u64>())?;
        band_factor = proj.band_factor();
        let diff: Vec<f64> = points
            .row(i)
            .iter()
            .zip(points.row(j))
            .map(|(a, b)| a - b)
            .collect();
        let orig_sq = dot(&diff, &diff);
        let proj_diff = proj.project_vec(&diff)?;
        let proj_sq = dot(&proj_diff, &proj_diff);
        let center = band_factor * orig_sq;
        if proj_sq < (1.0 - epsilon) * center || proj_sq > (1.0 + epsilon) * center {
            violations += 1;
        }
    }
    let violation_rate = violations as f64 / trials as f64;
    Ok(ConcentrationReport {
        epsilon,
        sigma,
        kappa,
        trials,
        violations,
        violation_rate,
        bound,
        feasible,
        band_factor,
        passed: violation_rate <= bound,
    })
}

/// Metric used for the order-preservation fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderKind {
    /// Euclidean chord order. On unit vectors the geodesic arc is a monotone
    /// function of the chord, so chord order and geodesic order coincide.
    Geodesic,
    /// Angle order, with the cosine clamped to [-1, 1].
    Angle,
}

/// When the full ordered-triple count exceeds this, triples are subsampled
/// with the operation's seed.
pub const MAX_ORDER_TRIPLES: u64 = 100_000;

#[derive(Debug, Clone, Serialize)]
pub struct OrderReport {
    pub kind: OrderKind,
    pub epsilon: f64,
    /// Triples (i, j, l) examined whose unprojected metric satisfies
    /// m(i,j) <= m(j,l).
    pub eligible: u64,
    /// Of those, how many kept the order after projection.
    pub preserved: u64,
    pub fraction_preserved: f64,
    /// Eligible triples where both pairs sit inside the squared-distance band
    /// and the squared distances are separated by more than the 2e/(1-e)
    /// relative gap. For these, preservation of the distance order is a
    /// deterministic consequence of band membership.
    pub conditional_triples: u64,
    /// Must be zero; counted rather than assumed.
    pub conditional_violations: u64,
    pub subsampled: bool,
}

/// Measures how often pairwise order survives projection, over ordered triples
/// (i, j, l) sharing the middle point j.
///
/// The headline fraction uses the requested metric. The conditional sub-report
/// is metric-independent: it restricts to triples whose *squared distances*
/// satisfy `(1+eps) * a^2 < (1-eps) * b^2` and whose projected squared
/// distances both lie inside the `(1 +/- eps)` band, for which
/// `|P(x_i - x_j)| <= |P(x_j - x_l)|` is implied exactly. Violations there
/// would falsify the band arithmetic and are therefore counted, not assumed
/// away.
pub fn order_preservation_check(
    points: &PointSet,
    proj: &ProjectionMatrix,
    kind: OrderKind,
    epsilon: f64,
    seed: u64,
) -> Result<OrderReport, Error> {
    let n = points.rows();
    if n < 3 {
        return Err(Error::FewerThanThreePoints(n));
    }
    if points.dim() != proj.input_dim() {
        return Err(Error::DimensionMismatch {
            expected: proj.input_dim(),
            got: points.dim(),
        });
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::invalid("epsilon", "must lie in [0, 1]"));
    }

    let projected = gaussian_project(points, proj)?;
    let band = proj.band_factor();

    let total = n as u64 * (n as u64 - 1) * (n as u64 - 2);
    let subsampled = total > MAX_ORDER_TRIPLES;

    let mut eligible = 0u64;
    let mut preserved = 0u64;
    let mut conditional = 0u64;
    let mut conditional_violations = 0u64;

    let mut examine = |i: usize, j: usize, l: usize| {
        let (a, b) = match kind {
            OrderKind::Geodesic => (euclid(points.row(i), points.row(j)), euclid(points.row(j), points.row(l))),
            OrderKind::Angle => (angle(points.row(i), points.row(j)), angle(points.row(j), points.row(l))),
        };
        if a > b {
            return;
        }
        eligible += 1;
        let (pa, pb) = match kind {
            OrderKind::Geodesic => (
                euclid(projected.row(i), projected.row(j)),
                euclid(projected.row(j), projected.row(l)),
            ),
            OrderKind::Angle => (
                angle(projected.row(i), projected.row(j)),
                angle(projected.row(j), projected.row(l)),
            ),
        };
        if pa <= pb {
            preserved += 1;
        }

        // Distance-band core, independent of the headline metric.
        let a2 = {
            let d = euclid(points.row(i), points.row(j));
            d * d
        };
        let b2 = {
            let d = euclid(points.row(j), points.row(l));
            d * d
        };
        if (1.0 + epsilon) * a2 < (1.0 - epsilon) * b2 {
            let pa2 = {
                let d = euclid(projected.row(i), projected.row(j));
                d * d
            };
            let pb2 = {
                let d = euclid(projected.row(j), projected.row(l));
                d * d
            };
            let inside = |orig2: f64, proj2: f64| {
                proj2 >= (1.0 - epsilon) * band * orig2 && proj2 <= (1.0 + epsilon) * band * orig2
            };
            if inside(a2, pa2) && inside(b2, pb2) {
                conditional += 1;
                if pa2 > pb2 {
                    conditional_violations += 1;
                }
            }
        }
    };

    if subsampled {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..MAX_ORDER_TRIPLES {
            let i = rng.gen_range(0..n);
            let j = {
                let mut j = rng.gen_range(0..n - 1);
                if j >= i {
                    j += 1;
                }
                j
            };
            let l = loop {
                let l = rng.gen_range(0..n);
                if l != i && l != j {
                    break l;
                }
            };
            examine(i, j, l);
        }
    } else {
        for i in 0..n {
            for j in 0..n {
                if j == i {
                    continue;
                }
                for l in 0..n {
                    if l == i || l == j {
                        continue;
                    }
                    examine(i, j, l);
                }
            }
        }
    }

    let fraction = if eligible > 0 {
        preserved as f64 / eligible as f64
    } else {
        1.0
    };
    Ok(OrderReport {
        kind,
        epsilon,
        eligible,
        preserved,
        fraction_preserved: fraction,
        conditional_triples: conditional,
        conditional_violations,
        subsampled,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn l2_normalize_three_four() {
        let ps = PointSet::from_rows(&[vec![3.0, 4.0]]).unwrap();
        let out = normalize_to_sphere(&ps, NormalizeMode::L2).unwrap();
        assert_eq!(out.points.row(0), &[0.6, 0.8]);
    }

    #[test]
    fn l2_normalize_is_idempotent() {
        let ps = PointSet::from_rows(&[vec![1.0, 2.0, -0.5], vec![-3.0, 0.1, 0.2]]).unwrap();
        let once = normalize_to_sphere(&ps, NormalizeMode::L2).unwrap().points;
        let twice = normalize_to_sphere(once.points(), NormalizeMode::L2)
            .unwrap()
            .points;
        for i in 0..once.rows() {
            for (a, b) in once.row(i).iter().zip(twice.row(i)) {
                assert!(close(*a, *b, 1e-12));
            }
        }
    }

    #[test]
    fn zero_row_is_rejected() {
        let ps = PointSet::from_rows(&[vec![0.0, 0.0]]).unwrap();
        let err = normalize_to_sphere(&ps, NormalizeMode::L2).unwrap_err();
        assert!(matches!(err, Error::ZeroNormRow { row: 0 }));
    }

    #[test]
    fn constant_column_warns_instead_of_erroring() {
        let ps = PointSet::from_rows(&[vec![5.0, 1.0], vec![5.0, 2.0], vec![5.0, 4.0]]).unwrap();
        let out = normalize_to_sphere(&ps, NormalizeMode::GaussianStandardizeThenL2).unwrap();
        assert_eq!(out.zero_variance_columns, vec![0]);
    }

    #[test]
    fn pad_appends_exact_zero_and_keeps_distances() {
        let ps = PointSet::from_rows(&[vec![1.0, 2.0], vec![-0.3, 0.7]]).unwrap();
        let padded = pad_extend(&ps);
        assert_eq!(padded.dim(), 3);
        assert_eq!(padded.row(0), &[1.0, 2.0, 0.0]);
        // exact equality: the zero coordinate contributes nothing
        assert_eq!(
            euclid(ps.row(0), ps.row(1)),
            euclid(padded.row(0), padded.row(1))
        );
    }

    #[test]
    fn pad_of_empty_set_declares_dim() {
        let padded = pad_extend(&PointSet::empty(4));
        assert_eq!(padded.dim(), 5);
        assert_eq!(padded.rows(), 0);
    }

    #[test]
    fn projection_is_reproducible() {
        let a = ProjectionMatrix::generate(4, 4, 1.0, 42).unwrap();
        let b = ProjectionMatrix::generate(4, 4, 1.0, 42).unwrap();
        let v = [0.3, -0.2, 0.9, 0.1];
        assert_eq!(a.project_vec(&v).unwrap(), b.project_vec(&v).unwrap());
    }

    #[test]
    fn identity_projection_is_identity() {
        let ps = PointSet::from_rows(&[vec![1.0, -2.0, 0.5]]).unwrap();
        let out = gaussian_project(&ps, &ProjectionMatrix::identity(3)).unwrap();
        assert_eq!(out.row(0), ps.row(0));
    }

    #[test]
    fn projection_dimension_checked() {
        let ps = PointSet::from_rows(&[vec![1.0, 2.0]]).unwrap();
        let proj = ProjectionMatrix::generate(3, 5, 1.0, 1).unwrap();
        assert!(matches!(
            gaussian_project(&ps, &proj),
            Err(Error::DimensionMismatch { expected: 5, got: 2 })
        ));
    }

    #[test]
    fn bound_formula_is_exact() {
        let ps = PointSet::from_rows(&[vec![0.0; 50], vec![1.0; 50]]).unwrap();
        let rep = concentration_test(&ps, 1.0, 1.0, 10, 0).unwrap();
        assert!(close(rep.bound, 2.0 * (-6.25f64).exp(), 1e-15));
        assert!(rep.feasible);
    }

    #[test]
    fn feasibility_boundary_bound_is_one() {
        // kappa * eps^2 equal to the constant puts the bound at ~1
        let d = 50usize;
        let eps = (FEASIBILITY_CONSTANT / d as f64).sqrt();
        let bound = 2.0 * (-(d as f64) * eps * eps / 8.0).exp();
        assert!(close(bound, 1.0, 1e-9));
    }

    #[test]
    fn order_check_identity_preserves_everything() {
        let ps = PointSet::from_rows(&[vec![0.0], vec![1.0], vec![3.0]]).unwrap();
        let rep = order_preservation_check(&ps, &ProjectionMatrix::identity(1), OrderKind::Geodesic, 0.5, 0)
            .unwrap();
        assert_eq!(rep.fraction_preserved, 1.0);
        assert_eq!(rep.conditional_violations, 0);
    }

    #[test]
    fn order_check_needs_three_points() {
        let ps = PointSet::from_rows(&[vec![0.0], vec![1.0]]).unwrap();
        assert!(matches!(
            order_preservation_check(&ps, &ProjectionMatrix::identity(1), OrderKind::Angle, 0.5, 0),
            Err(Error::FewerThanThreePoints(2))
        ));
    }
}
