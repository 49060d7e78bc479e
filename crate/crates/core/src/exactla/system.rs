//! Linear systems whose unknown is a matrix `F` (`t × s`), flattened
//! row-major: entry `F[r][c]` is unknown `r·s + c`.

use num_traits::Zero;

use super::field::{Field, Scalar};
use super::mat::Mat;
use super::subspace::Subspace;
use crate::error::Result;

/// Coefficients of `F ↦ L F R`.
pub fn sandwich_coefficients(l: &Mat, r: &Mat) -> Mat {
    l.kron(&r.transpose())
}

/// Coefficients of `F ↦ L (F ⊗ I_k) R`.
pub fn left_tensor_coefficients(l: &Mat, r: &Mat, t: usize, s: usize, k: usize) -> Mat {
    assert_eq!(l.cols(), t * k, "left_tensor_coefficients: L");
    assert_eq!(r.rows(), s * k, "left_tensor_coefficients: R");
    tensor_coefficients(l, r, t, s, |row, i| row * k + i, |col, i| col * k + i, k)
}

/// Coefficients of `F ↦ L (I_k ⊗ F) R`.
pub fn right_tensor_coefficients(l: &Mat, r: &Mat, t: usize, s: usize, k: usize) -> Mat {
    assert_eq!(l.cols(), t * k, "right_tensor_coefficients: L");
    assert_eq!(r.rows(), s * k, "right_tensor_coefficients: R");
    tensor_coefficients(l, r, t, s, |row, i| i * t + row, |col, i| i * s + col, k)
}

fn tensor_coefficients(
    l: &Mat,
    r: &Mat,
    t: usize,
    s: usize,
    lidx: impl Fn(usize, usize) -> usize,
    ridx: impl Fn(usize, usize) -> usize,
    k: usize,
) -> Mat {
    let f = l.field();
    let (pn, qn) = (l.rows(), r.cols());
    let mut out = Mat::zeros(f, pn * qn, t * s);
    for row in 0..t {
        for col in 0..s {
            let unknown = row * s + col;
            for i in 0..k {
                let lc = lidx(row, i);
                let rr = ridx(col, i);
                let rrow = r.row(rr);
                for p in 0..pn {
                    let a = l.get(p, lc);
                    if a.is_zero() {
                        continue;
                    }
                    for (q, b) in rrow.iter().enumerate() {
                        if b.is_zero() {
                            continue;
                        }
                        out.add_at(p * qn + q, unknown, &f.mul(a, b));
                    }
                }
            }
        }
    }
    out
}

/// Coefficients of an arbitrary linear map `F ↦ g(F)` by evaluation on
/// the matrix units.
pub fn coefficients_of(field: Field, t: usize, s: usize, g: impl Fn(&Mat) -> Mat) -> Mat {
    let mut cols = Vec::with_capacity(t * s);
    for r in 0..t {
        for c in 0..s {
            let mut e = Mat::zeros(field, t, s);
            e.set(r, c, field.one());
            cols.push(g(&e).vectorize());
        }
    }
    let n = cols.first().map_or(0, Vec::len);
    Mat::from_columns(field, n, &cols)
}

/// Accumulates blocks of equations `A x = b` in a fixed number of unknowns.
#[derive(Clone, Debug)]
pub struct LinearSystem {
    field: Field,
    unknowns: usize,
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

impl LinearSystem {
    pub fn new(field: Field, unknowns: usize) -> Self {
        LinearSystem {
            field,
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    /// Adds `coeffs · x = 0`.
    pub fn homogeneous(&mut self, coeffs: &Mat) {
        assert_eq!(coeffs.cols(), self.unknowns, "homogeneous: unknown count");
        for r in 0..coeffs.rows() {
            let row = coeffs.row(r);
            if row.iter().all(Zero::is_zero) {
                continue;
            }
            self.rows.push(row.to_vec());
            self.rhs.push(Scalar::zero());
        }
    }

    /// Adds `coeffs · x = target` (target flattened like the unknowns).
    pub fn equal(&mut self, coeffs: &Mat, target: &[Scalar]) {
        assert_eq!(coeffs.cols(), self.unknowns, "equal: unknown count");
        assert_eq!(coeffs.rows(), target.len(), "equal: target length");
        for r in 0..coeffs.rows() {
            let row = coeffs.row(r);
            if row.iter().all(Zero::is_zero) && target[r].is_zero() {
                continue;
            }
            self.rows.push(row.to_vec());
            self.rhs.push(target[r].clone());
        }
    }

    /// Pins unknown `i` to `value`.
    pub fn fix(&mut self, i: usize, value: Scalar) {
        let mut row = vec![Scalar::zero(); self.unknowns];
        row[i] = self.field.one();
        self.rows.push(row);
        self.rhs.push(value);
    }

    pub fn coefficient_matrix(&self) -> Mat {
        Mat::from_rows(self.field, self.unknowns, &self.rows)
    }

    /// Solutions of the homogeneous part.
    pub fn kernel(&self) -> Subspace {
        if self.rows.is_empty() {
            return Subspace::full(self.field, self.unknowns);
        }
        self.coefficient_matrix().kernel()
    }

    /// One particular solution, free variables set to zero.
    pub fn solve(&self) -> Result<Option<Vec<Scalar>>> {
        if self.rows.is_empty() {
            return Ok(Some(vec![Scalar::zero(); self.unknowns]));
        }
        self.coefficient_matrix().solve(&self.rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rand_mat(f: Field, r: usize, c: usize, seed: i64) -> Mat {
        Mat::from_fn(f, r, c, |i, j| f.from_i64((seed + 3 * i as i64 - 2 * j as i64) % 5))
    }

    #[test]
    fn builders_match_evaluation() {
        let f = Field::Rationals;
        let (t, s, k) = (2, 3, 2);
        let l = rand_mat(f, 3, t * k, 1);
        let r = rand_mat(f, s * k, 2, 2);
        let ik = Mat::identity(f, k);
        let a = left_tensor_coefficients(&l, &r, t, s, k);
        let b = coefficients_of(f, t, s, |x| l.mul(&x.kron(&ik)).mul(&r));
        assert_eq!(a, b);
        let a = right_tensor_coefficients(&l, &r, t, s, k);
        let b = coefficients_of(f, t, s, |x| l.mul(&ik.kron(x)).mul(&r));
        assert_eq!(a, b);
        let l2 = rand_mat(f, 2, t, 3);
        let r2 = rand_mat(f, s, 4, 4);
        let a = sandwich_coefficients(&l2, &r2);
        let b = coefficients_of(f, t, s, |x| l2.mul(x).mul(&r2));
        assert_eq!(a, b);
    }
}
