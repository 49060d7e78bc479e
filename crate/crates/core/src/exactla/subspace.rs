use num_traits::{One, Zero};

use super::field::{Field, Scalar};
use super::mat::Mat;

/// A subspace of `k^n`, stored as its reduced row-echelon basis. Two
/// subspaces are equal iff their stored bases are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_spanning(field: Field, ambient: usize, vectors: Vec<Vec<Scalar>>) -> Self {
        if vectors.is_empty() {
            return Subspace::zero(field, ambient);
        }
        let e = Mat::from_rows(field, ambient, &vectors).rref();
        Subspace {
            field,
            ambient,
            basis: e.rows,
            pivots: e.pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Mat) -> Self {
        m.image()
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        let basis = (0..ambient)
            .map(|i| {
                let mut v = vec![Scalar::zero(); ambient];
                v[i] = Scalar::one();
                v
            })
            .collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots: (0..ambient).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn ambient(&self) -> usize {
        self.ambient
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn basis_rows(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    /// Inclusion map `k^dim → k^ambient` whose columns are the basis.
    pub fn inclusion(&self) -> Mat {
        Mat::from_columns(self.field, self.ambient, &self.basis)
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(v.len(), self.ambient);
        let coords: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut residual = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (r, x) in residual.iter_mut().zip(b) {
                if !x.is_zero() {
                    *r = self.field.sub(r, &self.field.mul(c, x));
                }
            }
        }
        residual.iter().all(Zero::is_zero).then_some(coords)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.field, self.ambient, v)
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        if self.dim() == 0 || other.dim() == 0 {
            return Subspace::zero(self.field, self.ambient);
        }
        let u = self.inclusion();
        let w = other.inclusion().scale(&self.field.from_i64(-1));
        let k = Mat::hstack(&[&u, &w]).kernel();
        let vecs = k
            .basis
            .iter()
            .map(|c| u.mul_vec(&c[..self.dim()]))
            .collect();
        Subspace::from_spanning(self.field, self.ambient, vecs)
    }

    /// Image of this subspace under `m`.
    pub fn map(&self, m: &Mat) -> Subspace {
        assert_eq!(m.cols(), self.ambient);
        let vecs = self.basis.iter().map(|b| m.mul_vec(b)).collect();
        Subspace::from_spanning(self.field, m.rows(), vecs)
    }

    /// The quotient `k^ambient / self`, realised on the non-pivot coordinates.
    pub fn quotient(&self) -> Quotient {
        let n = self.ambient;
        let mut is_pivot = vec![None; n];
        for (k, &p) in self.pivots.iter().enumerate() {
            is_pivot[p] = Some(k);
        }
        let free: Vec<usize> = (0..n).filter(|&c| is_pivot[c].is_none()).collect();
        let q = free.len();
        let f = self.field;
        let mut projection = Mat::zeros(f, q, n);
        for j in 0..n {
            match is_pivot[j] {
                None => {
                    let fi = free.binary_search(&j).unwrap();
                    projection.set(fi, j, Scalar::one());
                }
                Some(k) => {
                    for (fi, &fc) in free.iter().enumerate() {
                        let b = &self.basis[k][fc];
                        if !b.is_zero() {
                            projection.set(fi, j, f.neg(b));
                        }
                    }
                }
            }
        }
        let mut section = Mat::zeros(f, n, q);
        for (fi, &fc) in free.iter().enumerate() {
            section.set(fc, fi, Scalar::one());
        }
        Quotient {
            relations: self.clone(),
            free,
            projection,
            section,
        }
    }
}

/// `V / W` with `π: V → V/W` and a linear section `σ` with `πσ = id`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub relations: Subspace,
    pub free: Vec<usize>,
    pub projection: Mat,
    pub section: Mat,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.free.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    #[test]
    fn quotient_maps_compose() {
        let w = Subspace::from_spanning(Field::Rationals, 3, vec![vec![q(1), q(1), q(0)]]);
        let quo = w.quotient();
        assert_eq!(quo.dim(), 2);
        assert!(quo.projection.mul(&quo.section).is_identity());
        assert!(quo.projection.mul(&w.inclusion()).is_zero());
    }

    #[test]
    fn intersection_and_sum() {
        let f = Field::Rationals;
        let a = Subspace::from_spanning(f, 3, vec![vec![q(1), q(0), q(0)], vec![q(0), q(1), q(0)]]);
        let b = Subspace::from_spanning(f, 3, vec![vec![q(0), q(1), q(0)], vec![q(0), q(0), q(1)]]);
        let i = a.intersect(&b);
        assert_eq!(i.dim(), 1);
        assert!(i.contains(&[q(0), q(5), q(0)]));
        assert_eq!(a.sum(&b), Subspace::full(f, 3));
    }
}
