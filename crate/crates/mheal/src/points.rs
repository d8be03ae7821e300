//! Row-major point storage and the small vector kernels everything else
//! builds on.

use crate::error::Error;
use serde::{Deserialize, Serialize};

/// A dense set of `rows` points in `dim` dimensions, stored row-major in one
/// flat buffer. An empty set still carries its declared dimension.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PointSet {
    data: Vec<f64>,
    rows: usize,
    dim: usize,
}

impl PointSet {
    pub fn new(data: Vec<f64>, rows: usize, dim: usize) -> Result<Self, Error> {
        if data.len() != rows * dim {
            return Err(Error::invalid(
                "data",
                format!("buffer length {} != rows {} * dim {}", data.len(), rows, dim),
            ));
        }
        Ok(PointSet { data, rows, dim })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, Error> {
        let dim = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::InconsistentDimension {
                    line: i + 1,
                    expected: dim,
                    got: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        PointSet::new(data, rows.len(), dim)
    }

    pub fn empty(dim: usize) -> Self {
        PointSet {
            data: Vec::new(),
            rows: 0,
            dim,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.rows == 0
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn iter_rows(&self) -> impl Iterator<Item = &[f64]> {
        self.data.chunks_exact(self.dim.max(1))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    /// Copies the given rows into a new set, in the order given.
    pub fn gather(&self, indices: &[usize]) -> Result<Self, Error> {
        let mut data = Vec::with_capacity(indices.len() * self.dim);
        for &i in indices {
            if i >= self.rows {
                return Err(Error::IndexOutOfBounds {
                    index: i,
                    len: self.rows,
                });
            }
            data.extend_from_slice(self.row(i));
        }
        PointSet::new(data, indices.len(), self.dim)
    }

    /// Verifies every coordinate is finite.
    pub fn check_finite(&self) -> Result<(), Error> {
        for r in 0..self.rows {
            for (c, v) in self.row(r).iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteInput { row: r, col: c });
                }
            }
        }
        Ok(())
    }

    pub fn mean_row(&self) -> Vec<f64> {
        let mut mu = vec![0.0; self.dim];
        for r in self.iter_rows() {
            for (m, v) in mu.iter_mut().zip(r) {
                *m += v;
            }
        }
        if self.rows > 0 {
            let inv = 1.0 / self.rows as f64;
            for m in &mut mu {
                *m *= inv;
            }
        }
        mu
    }
}

/// A `PointSet` whose rows are guaranteed unit-norm (within `UNIT_NORM_TOL`).
/// Constructed by `geometry::normalize_to_sphere` or validated from raw data.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct UnitPointSet(PointSet);

pub const UNIT_NORM_TOL: f64 = 1e-9;

impl UnitPointSet {
    /// Validates that every row is unit-norm.
    pub fn from_points(points: PointSet) -> Result<Self, Error> {
        for (i, r) in points.iter_rows().enumerate() {
            if (norm(r) - 1.0).abs() > UNIT_NORM_TOL {
                return Err(Error::invalid(
                    "points",
                    format!("row {i} has norm {} (not unit)", norm(r)),
                ));
            }
        }
        Ok(UnitPointSet(points))
    }

    /// Invariant-preserving constructor for rows the caller has already
    /// normalized exactly.
    pub(crate) fn trusted(points: PointSet) -> Self {
        UnitPointSet(points)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.0.rows()
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[f64] {
        self.0.row(i)
    }

    pub fn points(&self) -> &PointSet {
        &self.0
    }

    pub fn into_points(self) -> PointSet {
        self.0
    }

    pub fn gather(&self, indices: &[usize]) -> Result<Self, Error> {
        Ok(UnitPointSet(self.0.gather(indices)?))
    }
}

#[inline]
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

#[inline]
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn euclid(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// Angle between two vectors, with the cosine clamped to [-1, 1] to absorb
/// rounding.
#[inline]
pub fn angle(a: &[f64], b: &[f64]) -> f64 {
    let na = norm(a);
    let nb = norm(b);
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    (dot(a, b) / (na * nb)).clamp(-1.0, 1.0).acos()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gather_preserves_order() {
        let ps = PointSet::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0], vec![0.5, 0.5]]).unwrap();
        let g = ps.gather(&[2, 0]).unwrap();
        assert_eq!(g.row(0), &[0.5, 0.5]);
        assert_eq!(g.row(1), &[1.0, 0.0]);
    }

    #[test]
    fn empty_set_keeps_dim() {
        let ps = PointSet::empty(7);
        assert_eq!(ps.dim(), 7);
        assert_eq!(ps.rows(), 0);
    }

    #[test]
    fn unit_validation_rejects_non_unit() {
        let ps = PointSet::from_rows(&[vec![3.0, 4.0]]).unwrap();
        assert!(UnitPointSet::from_points(ps).is_err());
    }

    #[test]
    fn angle_is_clamped() {
        let a = [1.0, 0.0];
        assert_eq!(angle(&a, &a), 0.0);
        assert!((angle(&a, &[-1.0, 0.0]) - std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn inconsistent_rows_rejected() {
        let err = PointSet::from_rows(&[vec![1.0], vec![1.0, 2.0]]).unwrap_err();
        assert!(matches!(err, Error::InconsistentDimension { line: 2, .. }));
    }
}
