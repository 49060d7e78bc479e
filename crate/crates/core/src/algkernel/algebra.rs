use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::report::{Report, Witness};

/// A finite-dimensional unital algebra given by structure constants.
///
/// `mult` is `dim × dim²`; column `i·dim + j` holds `e_i e_j`.
#[derive(Clone)]
pub struct FinAlgebra {
    name: String,
    field: Field,
    dim: usize,
    mult: Mat,
    unit: Vec<Scalar>,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

/// Equality is structural; names are labels only.
impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.mult == other.mult && self.unit == other.unit
    }
}

impl Eq for FinAlgebra {}

impl std::fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FinAlgebra({}, dim {} over {})", self.name, self.dim, self.field)
    }
}

impl FinAlgebra {
    /// Builds the algebra from shape-checked data. Axioms are not assumed;
    /// run [`check_algebra`] to validate them.
    pub fn new(name: impl Into<String>, field: Field, mult: Mat, unit: Vec<Scalar>) -> Result<Self> {
        let dim = unit.len();
        if mult.field() != field {
            return Err(Error::FieldMismatch("FinAlgebra::new"));
        }
        if mult.rows() != dim || mult.cols() != dim * dim {
            return Err(Error::DimensionMismatch {
                op: "FinAlgebra::new",
                expected: dim * dim,
                got: mult.cols(),
            });
        }
        let unit: Vec<Scalar> = unit.into_iter().map(|v| field.reduce(v)).collect();
        let left = (0..dim)
            .map(|i| Mat::from_fn(field, dim, dim, |r, c| mult.get(r, i * dim + c).clone()))
            .collect();
        let right = (0..dim)
            .map(|i| Mat::from_fn(field, dim, dim, |r, c| mult.get(r, c * dim + i).clone()))
            .collect();
        Ok(FinAlgebra {
            name: name.into(),
            field,
            dim,
            mult,
            unit,
            left,
            right,
        })
    }

    /// From `(i, j, k, c)` meaning `e_i e_j` has coefficient `c` at `e_k`.
    pub fn from_triples(
        name: impl Into<String>,
        field: Field,
        dim: usize,
        unit: Vec<Scalar>,
        triples: &[(usize, usize, usize, Scalar)],
    ) -> Result<Self> {
        let mut mult = Mat::zeros(field, dim, dim * dim);
        for (i, j, k, c) in triples {
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(Error::InvalidInput(format!(
                    "structure constant index ({i},{j},{k}) out of range for dim {dim}"
                )));
            }
            mult.add_at(*k, i * dim + j, c);
        }
        FinAlgebra::new(name, field, mult, unit)
    }

    /// The ground field as a one-dimensional algebra.
    pub fn ground(field: Field) -> Self {
        let one = field.one();
        FinAlgebra::from_triples("k", field, 1, vec![one.clone()], &[(0, 0, 0, one)]).unwrap()
    }

    /// Group algebra from a multiplication table `table[g][h] = gh`.
    pub fn group_algebra(name: impl Into<String>, field: Field, table: &[Vec<usize>]) -> Result<Self> {
        let n = table.len();
        let e = (0..n)
            .find(|&g| (0..n).all(|h| table[g][h] == h))
            .ok_or_else(|| Error::InvalidInput("group table has no identity".into()))?;
        let mut unit = vec![Scalar::zero(); n];
        unit[e] = field.one();
        let triples: Vec<_> = (0..n)
            .flat_map(|g| (0..n).map(move |h| (g, h)))
            .map(|(g, h)| (g, h, table[g][h], field.one()))
            .collect();
        FinAlgebra::from_triples(name, field, n, unit, &triples)
    }

    /// Cyclic group algebra `kC_n` with basis `g^0, …, g^{n-1}`.
    pub fn cyclic_group_algebra(field: Field, n: usize) -> Self {
        let table: Vec<Vec<usize>> = (0..n).map(|g| (0..n).map(|h| (g + h) % n).collect()).collect();
        FinAlgebra::group_algebra(format!("kC{n}"), field, &table).unwrap()
    }

    /// Upper triangular 2×2 matrices, basis `e11, e12, e22`.
    pub fn upper_triangular(field: Field) -> Self {
        let one = field.one();
        let t = [(0, 0, 0), (0, 1, 1), (1, 2, 1), (2, 2, 2)];
        let triples: Vec<_> = t.iter().map(|&(i, j, k)| (i, j, k, one.clone())).collect();
        FinAlgebra::from_triples("T2", field, 3, vec![one.clone(), Scalar::zero(), one], &triples)
            .unwrap()
    }

    /// `k[x]/(x^n − Σ c_i x^i)` with basis `1, x, …, x^{n-1}`; `coeffs` has length `n`.
    pub fn monic_quotient(name: impl Into<String>, field: Field, coeffs: &[Scalar]) -> Self {
        let n = coeffs.len();
        // power[m] = x^m reduced, for m < 2n - 1.
        let mut powers: Vec<Vec<Scalar>> = Vec::new();
        for m in 0..(2 * n).max(1) {
            let v = if m < n {
                let mut v = vec![Scalar::zero(); n];
                v[m] = field.one();
                v
            } else {
                let prev = &powers[m - 1];
                let mut v = vec![Scalar::zero(); n];
                for i in 0..n - 1 {
                    v[i + 1] = prev[i].clone();
                }
                let top = &prev[n - 1];
                for i in 0..n {
                    v[i] = field.add(&v[i], &field.mul(top, &coeffs[i]));
                }
                v
            };
            powers.push(v);
        }
        let mult = Mat::from_fn(field, n, n * n, |k, col| {
            let (i, j) = (col / n, col % n);
            powers[i + j][k].clone()
        });
        let mut unit = vec![Scalar::zero(); n];
        unit[0] = field.one();
        FinAlgebra::new(name, field, mult, unit).unwrap()
    }

    /// `k[x]/(x²)`.
    pub fn dual_numbers(field: Field) -> Self {
        FinAlgebra::monic_quotient("k[x]/(x^2)", field, &[Scalar::zero(), Scalar::zero()])
    }

    pub fn opposite(&self) -> Self {
        let d = self.dim;
        let mult = Mat::from_fn(self.field, d, d * d, |k, col| {
            let (i, j) = (col / d, col % d);
            self.mult.get(k, j * d + i).clone()
        });
        FinAlgebra::new(format!("{}^op", self.name), self.field, mult, self.unit.clone()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> Field {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn mult(&self) -> &Mat {
        &self.mult
    }
    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    /// Matrix of `x ↦ e_i x`.
    pub fn left_mul(&self, i: usize) -> &Mat {
        &self.left[i]
    }

    /// Matrix of `x ↦ x e_i`.
    pub fn right_mul(&self, i: usize) -> &Mat {
        &self.right[i]
    }

    pub fn left_mul_by(&self, a: &[Scalar]) -> Mat {
        combine(self.field, self.dim, &self.left, a)
    }

    pub fn right_mul_by(&self, a: &[Scalar]) -> Mat {
        combine(self.field, self.dim, &self.right, a)
    }

    pub fn product(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        self.left_mul_by(a).mul_vec(b)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    /// Unit as a `dim × 1` map `k → A`.
    pub fn unit_map(&self) -> Mat {
        Mat::column(self.field, &self.unit)
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| self.left[i] == self.right[i])
    }
}

pub(crate) fn combine(field: Field, n: usize, mats: &[Mat], coeffs: &[Scalar]) -> Mat {
    let mut out = Mat::zeros(field, n, n);
    for (m, c) in mats.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// Associativity and both unit laws, with a witness triple on failure.
pub fn check_algebra(a: &FinAlgebra) -> Report {
    let mut r = Report::new(format!("algebra {}", a.name));
    let f = a.field;
    let d = a.dim;
    let id = Mat::identity(f, d);
    let lhs = a.mult.mul(&a.mult.kron(&id));
    let rhs = a.mult.mul(&id.kron(&a.mult));
    match lhs.first_difference(&rhs) {
        None => r.pass("associativity"),
        Some((_, col)) => {
            let (i, j, k) = (col / (d * d), (col / d) % d, col % d);
            r.fail(
                "associativity",
                format!("(e{i} e{j}) e{k} != e{i} (e{j} e{k})"),
                vec![
                    Witness::vector("(e_i e_j) e_k", &lhs.col(col)),
                    Witness::vector("e_i (e_j e_k)", &rhs.col(col)),
                ],
            );
        }
    }
    let u = a.unit_map();
    r.check_eq("left unit", &a.mult.mul(&u.kron(&id)), &id);
    r.check_eq("right unit", &a.mult.mul(&id.kron(&u)), &id);
    r
}

/// Checks that `rho: A → B` (a `dim B × dim A` matrix) is a unital algebra map.
pub fn check_algebra_map(a: &FinAlgebra, b: &FinAlgebra, rho: &Mat) -> Report {
    let mut r = Report::new(format!("algebra map {} -> {}", a.name, b.name));
    if rho.shape() != (b.dim, a.dim) {
        r.fail("shape", format!("expected {}x{}", b.dim, a.dim), Vec::new());
        return r;
    }
    r.check_eq("unital", &rho.mul(&a.unit_map()), &b.unit_map());
    r.check_eq(
        "multiplicative",
        &rho.mul(&a.mult),
        &b.mult.mul(&rho.kron(rho)),
    );
    r
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_algebras_pass() {
        let q = Field::Rationals;
        for a in [
            FinAlgebra::ground(q),
            FinAlgebra::cyclic_group_algebra(q, 2),
            FinAlgebra::cyclic_group_algebra(q, 3),
            FinAlgebra::upper_triangular(q),
            FinAlgebra::dual_numbers(q),
            FinAlgebra::monic_quotient("Q(sqrt2)", q, &[q.from_i64(2), q.from_i64(0)]),
            FinAlgebra::upper_triangular(q).opposite(),
        ] {
            let rep = check_algebra(&a);
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn perturbed_constants_fail_associativity() {
        let q = Field::Rationals;
        let a = FinAlgebra::cyclic_group_algebra(q, 2);
        let mut m = a.mult().clone();
        m.set(1, 2, q.from_i64(2));
        let b = FinAlgebra::new("bad", q, m, a.unit().to_vec()).unwrap();
        let rep = check_algebra(&b);
        let assoc = &rep.items[0];
        assert_eq!(assoc.name, "associativity");
        assert_eq!(assoc.status, crate::report::Status::Fail);
        assert_eq!(assoc.witnesses.len(), 2);
    }

    #[test]
    fn sqrt_two_squares_to_two() {
        let q = Field::Rationals;
        let a = FinAlgebra::monic_quotient("Q(sqrt2)", q, &[q.from_i64(2), q.from_i64(0)]);
        let x = a.basis_vector(1);
        assert_eq!(a.product(&x, &x), vec![q.from_i64(2), q.from_i64(0)]);
    }
}
