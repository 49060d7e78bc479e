use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::field::{format_scalar, Field, Scalar};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense matrix over a [`Field`], row-major.
///
/// A `rows × cols` matrix is the k-linear map `k^cols → k^rows`; vectors
/// are column vectors and composition is `a.mul(&b)` = `a ∘ b`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Elimination strategy used for echelon forms. Both give the same reduced
/// row-echelon form; the choice only affects intermediate values.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Elimination {
    /// Bareiss-style fraction-free forward elimination followed by
    /// normalisation. Intermediates stay integral when the input is.
    #[default]
    FractionFree,
    /// Textbook Gauss-Jordan with field division, pivoting on the last
    /// available row.
    GaussJordan,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub rows: Vec<Vec<Scalar>>,
    pub pivots: Vec<usize>,
}

impl Mat {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Mat::new",
                expected: rows * cols,
                got: data.len(),
            });
        }
        let data = data.into_iter().map(|v| field.reduce(v)).collect();
        Ok(Mat {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Mat {
            field,
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(field.reduce(f(r, c)));
            }
        }
        Mat {
            field,
            rows,
            cols,
            data,
        }
    }

    pub fn from_rows(field: Field, cols: usize, rows: &[Vec<Scalar>]) -> Self {
        let mut m = Mat::zeros(field, rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged row");
            for (c, v) in row.iter().enumerate() {
                m.data[r * cols + c] = field.reduce(v.clone());
            }
        }
        m
    }

    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let cols = columns.len();
        let mut m = Mat::zeros(field, rows, cols);
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "ragged column");
            for (r, v) in col.iter().enumerate() {
                m.data[r * cols + c] = field.reduce(v.clone());
            }
        }
        m
    }

    /// Column vector as a `n × 1` matrix.
    pub fn column(field: Field, v: &[Scalar]) -> Self {
        Mat::from_columns(field, v.len(), &[v.to_vec()])
    }

    pub fn field(&self) -> Field {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        self.data[r * self.cols + c] = self.field.reduce(v);
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Scalar) {
        let i = r * self.cols + c;
        self.data[i] = self.field.add(&self.data[i], v);
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    fn check_same_shape(&self, other: &Mat, op: &'static str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(op));
        }
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch {
                op,
                expected: self.rows * self.cols,
                got: other.rows * other.cols,
            });
        }
        Ok(())
    }

    /// Composition `self ∘ other`. Panics on a shape mismatch; every caller
    /// builds shapes from the same objects, so a mismatch is a logic error.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "mul: {}x{} by {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        assert_eq!(self.field, other.field, "mul: field mismatch");
        let f = self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                for (j, b) in orow.iter().enumerate() {
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * other.cols + j;
                    let prod = a * b;
                    out.data[idx] = &out.data[idx] + prod;
                }
            }
        }
        if let Field::Prime(_) = f {
            for v in out.data.iter_mut() {
                *v = f.reduce(std::mem::take(v));
            }
        }
        out
    }

    pub fn try_mul(&self, other: &Mat) -> Result<Mat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                op: "mul",
                expected: self.cols,
                got: other.rows,
            });
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch("mul"));
        }
        Ok(self.mul(other))
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "mul_vec: dimension mismatch");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = Scalar::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                f.reduce(acc)
            })
            .collect()
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.check_same_shape(other, "add").expect("add");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.add(a, b))
            .collect();
        self.with_data(data)
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.check_same_shape(other, "sub").expect("sub");
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| f.sub(a, b))
            .collect();
        self.with_data(data)
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|a| f.mul(a, s)).collect();
        self.with_data(data)
    }

    fn with_data(&self, data: Vec<Scalar>) -> Mat {
        Mat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Kronecker product with the row-major convention
    /// `e_i ⊗ e_j ↦ i·dim + j` on both sides.
    pub fn kron(&self, other: &Mat) -> Mat {
        let f = self.field;
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        let mut out = Mat::zeros(f, r1 * r2, c1 * c2);
        let oc = c1 * c2;
        for i in 0..r1 {
            for j in 0..c1 {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..r2 {
                    for l in 0..c2 {
                        let b = other.get(k, l);
                        if b.is_zero() {
                            continue;
                        }
                        out.data[(i * r2 + k) * oc + j * c2 + l] = f.mul(a, b);
                    }
                }
            }
        }
        out
    }

    /// `(parts[0] ⊗ … ⊗ parts[n-1]) · self` without forming the Kronecker
    /// product: each factor is applied along its own tensor axis.
    pub fn kron_apply(parts: &[&Mat], m: &Mat) -> Mat {
        let f = m.field;
        let in_dims: Vec<usize> = parts.iter().map(|p| p.cols).collect();
        let out_dims: Vec<usize> = parts.iter().map(|p| p.rows).collect();
        assert_eq!(in_dims.iter().product::<usize>(), m.rows, "kron_apply: shape");
        let cols: Vec<Vec<Scalar>> = (0..m.cols)
            .map(|c| {
                let mut v = m.col(c);
                let mut dims = in_dims.clone();
                for (k, p) in parts.iter().enumerate() {
                    let pre: usize = dims[..k].iter().product();
                    let post: usize = dims[k + 1..].iter().product();
                    let (din, dout) = (dims[k], out_dims[k]);
                    let mut out = vec![Scalar::zero(); pre * dout * post];
                    for a in 0..pre {
                        for j in 0..din {
                            for q in 0..post {
                                let x = &v[(a * din + j) * post + q];
                                if x.is_zero() {
                                    continue;
                                }
                                for i in 0..dout {
                                    let coef = p.get(i, j);
                                    if coef.is_zero() {
                                        continue;
                                    }
                                    let idx = (a * dout + i) * post + q;
                                    out[idx] = &out[idx] + coef * x;
                                }
                            }
                        }
                    }
                    if let Field::Prime(_) = f {
                        for x in out.iter_mut() {
                            *x = f.reduce(std::mem::take(x));
                        }
                    }
                    v = out;
                    dims[k] = dout;
                }
                v
            })
            .collect();
        Mat::from_columns(f, out_dims.iter().product(), &cols)
    }

    pub fn hstack(parts: &[&Mat]) -> Mat {
        let f = parts[0].field;
        let rows = parts[0].rows;
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(f, rows, cols);
        let mut off = 0;
        for p in parts {
            assert_eq!(p.rows, rows, "hstack: row mismatch");
            for r in 0..rows {
                for c in 0..p.cols {
                    out.data[r * cols + off + c] = p.get(r, c).clone();
                }
            }
            off += p.cols;
        }
        out
    }

    pub fn vstack(parts: &[&Mat]) -> Mat {
        let f = parts[0].field;
        let cols = parts[0].cols;
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            assert_eq!(p.cols, cols, "vstack: column mismatch");
            data.extend(p.data.iter().cloned());
            rows += p.rows;
        }
        Mat {
            field: f,
            rows,
            cols,
            data,
        }
    }

    pub fn select_cols(&self, cols: &[usize]) -> Mat {
        Mat::from_fn(self.field, self.rows, cols.len(), |r, c| {
            self.get(r, cols[c]).clone()
        })
    }

    pub fn select_rows(&self, rows: &[usize]) -> Mat {
        Mat::from_fn(self.field, rows.len(), self.cols, |r, c| {
            self.get(rows[r], c).clone()
        })
    }

    /// Position of the first differing entry, used as a failure witness.
    pub fn first_difference(&self, other: &Mat) -> Option<(usize, usize)> {
        if self.shape() != other.shape() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| self.get(r, c) != other.get(r, c))
    }

    /// Row-major flattening, the coordinates used for hom-space bases.
    pub fn vectorize(&self) -> Vec<Scalar> {
        self.data.clone()
    }

    pub fn from_vector(field: Field, rows: usize, cols: usize, v: &[Scalar]) -> Mat {
        Mat::new(field, rows, cols, v.to_vec()).expect("from_vector")
    }

    pub fn rref(&self) -> Echelon {
        self.rref_with(Elimination::default())
    }

    pub fn rref_with(&self, strategy: Elimination) -> Echelon {
        echelon(self.field, self.row_vecs(), self.cols, strategy)
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    pub fn kernel(&self) -> Subspace {
        let e = self.rref();
        let n = self.cols;
        let f = self.field;
        let mut basis = Vec::new();
        let pivot_set: Vec<bool> = {
            let mut v = vec![false; n];
            for &p in &e.pivots {
                v[p] = true;
            }
            v
        };
        for free in (0..n).filter(|&c| !pivot_set[c]) {
            let mut v = vec![Scalar::zero(); n];
            v[free] = Scalar::one();
            for (k, &p) in e.pivots.iter().enumerate() {
                v[p] = f.neg(&e.rows[k][free]);
            }
            basis.push(v);
        }
        Subspace::from_spanning(f, n, basis)
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.field, self.rows, self.transpose().row_vecs())
    }

    /// One preimage of `target`, or `None`. Free variables are set to zero,
    /// so the answer is deterministic.
    pub fn solve(&self, target: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if target.len() != self.rows {
            return Err(Error::DimensionMismatch {
                op: "solve",
                expected: self.rows,
                got: target.len(),
            });
        }
        let aug = Mat::hstack(&[self, &Mat::column(self.field, target)]);
        let e = aug.rref();
        if e.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (k, &p) in e.pivots.iter().enumerate() {
            x[p] = e.rows[k][self.cols].clone();
        }
        Ok(Some(x))
    }

    /// Solves `self · X = target` column by column.
    pub fn solve_mat(&self, target: &Mat) -> Result<Option<Mat>> {
        let mut cols = Vec::with_capacity(target.cols);
        for c in 0..target.cols {
            match self.solve(&target.col(c))? {
                Some(x) => cols.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(Mat::from_columns(self.field, self.cols, &cols)))
    }

    pub fn inverse(&self) -> Option<Mat> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let aug = Mat::hstack(&[self, &Mat::identity(self.field, n)]);
        let e = aug.rref();
        if e.pivots.len() < n || e.pivots[n - 1] != n - 1 {
            return None;
        }
        Some(Mat::from_fn(self.field, n, n, |r, c| e.rows[r][n + c].clone()))
    }

    /// A left inverse `L` with `L · self = I` when `self` is injective.
    pub fn left_inverse(&self) -> Option<Mat> {
        let independent_rows = self.transpose().rref().pivots;
        if independent_rows.len() != self.cols {
            return None;
        }
        let square = self.select_rows(&independent_rows);
        let inv = square.inverse()?;
        let mut out = Mat::zeros(self.field, self.cols, self.rows);
        for (k, &r) in independent_rows.iter().enumerate() {
            for i in 0..self.cols {
                out.set(i, r, inv.get(i, k).clone());
            }
        }
        Some(out)
    }

    pub fn determinant_is_nonzero(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    /// Entries as canonical strings, for reports.
    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(format_scalar).collect())
            .collect()
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(format_scalar).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

fn clear_denominators(row: &mut [Scalar]) {
    let lcm = row
        .iter()
        .filter(|v| !v.is_zero())
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    if !lcm.is_one() {
        let l = Scalar::from_integer(lcm);
        for v in row.iter_mut() {
            *v = &*v * &l;
        }
    }
}

fn echelon(field: Field, mut a: Vec<Vec<Scalar>>, cols: usize, strategy: Elimination) -> Echelon {
    let n = a.len();
    let mut pivots = Vec::new();
    match strategy {
        Elimination::FractionFree => {
            if field == Field::Rationals {
                for row in a.iter_mut() {
                    clear_denominators(row);
                }
            }
            let mut r = 0;
            let mut prev = Scalar::one();
            for c in 0..cols {
                if r == n {
                    break;
                }
                let Some(p) = (r..n).find(|&i| !a[i][c].is_zero()) else {
                    continue;
                };
                a.swap(r, p);
                let piv = a[r][c].clone();
                for i in r + 1..n {
                    let lead = a[i][c].clone();
                    for j in c + 1..cols {
                        let t = field.sub(&field.mul(&piv, &a[i][j]), &field.mul(&lead, &a[r][j]));
                        a[i][j] = field.div(&t, &prev);
                        debug_assert!(field != Field::Rationals || a[i][j].is_integer());
                    }
                    a[i][c] = Scalar::zero();
                }
                prev = piv;
                pivots.push(c);
                r += 1;
            }
        }
        Elimination::GaussJordan => {
            let mut r = 0;
            for c in 0..cols {
                if r == n {
                    break;
                }
                let Some(p) = (r..n).rev().find(|&i| !a[i][c].is_zero()) else {
                    continue;
                };
                a.swap(r, p);
                let inv = field.inv(&a[r][c]).unwrap();
                for j in c..cols {
                    a[r][j] = field.mul(&a[r][j], &inv);
                }
                for i in 0..n {
                    if i == r || a[i][c].is_zero() {
                        continue;
                    }
                    let lead = a[i][c].clone();
                    for j in c..cols {
                        let t = field.mul(&lead, &a[r][j]);
                        a[i][j] = field.sub(&a[i][j], &t);
                    }
                }
                pivots.push(c);
                r += 1;
            }
        }
    }
    // Normalise pivots and clear above them.
    a.truncate(pivots.len());
    for k in (0..pivots.len()).rev() {
        let c = pivots[k];
        let inv = field.inv(&a[k][c]).unwrap();
        if !inv.is_one() {
            for j in c..cols {
                a[k][j] = field.mul(&a[k][j], &inv);
            }
        }
        for i in 0..k {
            if a[i][c].is_zero() {
                continue;
            }
            let lead = a[i][c].clone();
            for j in c..cols {
                if a[k][j].is_zero() {
                    continue;
                }
                let t = field.mul(&lead, &a[k][j]);
                a[i][j] = field.sub(&a[i][j], &t);
            }
        }
    }
    Echelon { rows: a, pivots }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rationals.from_i64(v)
    }

    fn qm(rows: &[&[i64]]) -> Mat {
        let cols = rows[0].len();
        let r: Vec<Vec<Scalar>> = rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect();
        Mat::from_rows(Field::Rationals, cols, &r)
    }

    #[test]
    fn kernel_examples() {
        let z = Mat::zeros(Field::Rationals, 3, 3);
        assert_eq!(z.kernel().dim(), 3);
        let id = Mat::identity(Field::Rationals, 3);
        assert_eq!(id.kernel().dim(), 0);
        // [1 1] has kernel span{(1,-1)}
        let k = qm(&[&[1, 1]]).kernel();
        assert_eq!(k.dim(), 1);
        assert_eq!(k.basis_rows()[0], vec![q(1), q(-1)]);
    }

    #[test]
    fn solve_examples() {
        let id = Mat::identity(Field::Rationals, 3);
        let v = vec![q(1), q(-2), q(5)];
        assert_eq!(id.solve(&v).unwrap(), Some(v.clone()));
        assert_eq!(qm(&[&[1, 1]]).solve(&[q(2)]).unwrap(), Some(vec![q(2), q(0)]));
        let z = Mat::zeros(Field::Rationals, 2, 2);
        assert_eq!(z.solve(&[q(1), q(0)]).unwrap(), None);
        assert!(id.solve(&[q(1)]).is_err());
    }

    #[test]
    fn tensor_rank_quotient() {
        let i2 = Mat::identity(Field::Rationals, 2);
        let i3 = Mat::identity(Field::Rationals, 3);
        assert!(i2.kron(&i3).is_identity());
        assert_eq!(qm(&[&[1, 2], &[2, 4]]).rank(), 1);
    }

    #[test]
    fn kron_apply_matches_kron() {
        let a = qm(&[&[1, 2], &[0, 1], &[3, 0]]);
        let b = qm(&[&[2, -1], &[1, 1]]);
        let v = Mat::from_fn(Field::Rationals, 4, 2, |r, c| q((r * 3 + c) as i64 - 2));
        let expect = a.kron(&b).mul(&v);
        assert_eq!(Mat::kron_apply(&[&a, &b], &v), expect);
    }

    #[test]
    fn left_inverse_of_injection() {
        let m = qm(&[&[1, 0], &[1, 1], &[0, 2]]);
        let l = m.left_inverse().unwrap();
        assert!(l.mul(&m).is_identity());
        assert!(qm(&[&[1, 2], &[2, 4]]).left_inverse().is_none());
    }

    #[test]
    fn strategies_agree_on_rational_input() {
        let m = Mat::from_rows(
            Field::Rationals,
            3,
            &[
                vec![q(2), Field::Rationals.parse("1/3").unwrap(), q(0)],
                vec![q(4), q(1), q(-1)],
                vec![q(6), Field::Rationals.parse("4/3").unwrap(), q(-1)],
            ],
        );
        let a = m.rref_with(Elimination::FractionFree);
        let b = m.rref_with(Elimination::GaussJordan);
        assert_eq!(a.rows, b.rows);
        assert_eq!(a.pivots, b.pivots);
    }
}
