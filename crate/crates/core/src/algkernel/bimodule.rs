use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Scalar};
use crate::report::Report;

use super::algebra::{combine, FinAlgebra};

pub type AlgRef = Arc<FinAlgebra>;

pub(crate) fn same_alg(a: &AlgRef, b: &AlgRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An `(A, B)`-bimodule on `k^dim`. One-sided modules use the ground field
/// on the other side.
///
/// `left[i]` is `m ↦ a_i·m` and `right[j]` is `m ↦ m·b_j`.
#[derive(Clone, Debug)]
pub struct Bimodule {
    left_alg: AlgRef,
    right_alg: AlgRef,
    dim: usize,
    left: Vec<Mat>,
    right: Vec<Mat>,
}

impl PartialEq for Bimodule {
    fn eq(&self, other: &Self) -> bool {
        same_alg(&self.left_alg, &other.left_alg)
            && same_alg(&self.right_alg, &other.right_alg)
            && self.left == other.left
            && self.right == other.right
    }
}

impl Bimodule {
    pub fn new(
        left_alg: AlgRef,
        right_alg: AlgRef,
        dim: usize,
        left: Vec<Mat>,
        right: Vec<Mat>,
    ) -> Result<Self> {
        if left_alg.field() != right_alg.field() {
            return Err(Error::FieldMismatch("Bimodule::new"));
        }
        if left.len() != left_alg.dim() || right.len() != right_alg.dim() {
            return Err(Error::DimensionMismatch {
                op: "Bimodule::new (action count)",
                expected: left_alg.dim(),
                got: left.len(),
            });
        }
        for m in left.iter().chain(&right) {
            if m.shape() != (dim, dim) {
                return Err(Error::DimensionMismatch {
                    op: "Bimodule::new (action shape)",
                    expected: dim,
                    got: m.rows().max(m.cols()),
                });
            }
        }
        Ok(Bimodule {
            left_alg,
            right_alg,
            dim,
            left,
            right,
        })
    }

    /// From action maps `A⊗M → M` (`dim × dimA·dim`) and `M⊗B → M`
    /// (`dim × dim·dimB`).
    pub fn from_action_maps(
        left_alg: AlgRef,
        right_alg: AlgRef,
        dim: usize,
        left_action: &Mat,
        right_action: &Mat,
    ) -> Result<Self> {
        let (da, db) = (left_alg.dim(), right_alg.dim());
        if left_action.shape() != (dim, da * dim) || right_action.shape() != (dim, dim * db) {
            return Err(Error::DimensionMismatch {
                op: "Bimodule::from_action_maps",
                expected: dim,
                got: left_action.rows(),
            });
        }
        let f = left_alg.field();
        let left = (0..da)
            .map(|i| Mat::from_fn(f, dim, dim, |r, c| left_action.get(r, i * dim + c).clone()))
            .collect();
        let right = (0..db)
            .map(|j| Mat::from_fn(f, dim, dim, |r, c| right_action.get(r, c * db + j).clone()))
            .collect();
        Bimodule::new(left_alg, right_alg, dim, left, right)
    }

    /// `k^dim` over the ground field on both sides.
    pub fn vector_space(field: Field, dim: usize) -> Self {
        let k = Arc::new(FinAlgebra::ground(field));
        let id = Mat::identity(field, dim);
        Bimodule::new(k.clone(), k, dim, vec![id.clone()], vec![id]).unwrap()
    }

    /// `A` as an `(A, A)`-bimodule.
    pub fn regular(a: &AlgRef) -> Self {
        let d = a.dim();
        let left = (0..d).map(|i| a.left_mul(i).clone()).collect();
        let right = (0..d).map(|i| a.right_mul(i).clone()).collect();
        Bimodule::new(a.clone(), a.clone(), d, left, right).unwrap()
    }

    /// `A_A` as a `(k, A)`-bimodule.
    pub fn right_regular(a: &AlgRef) -> Self {
        Bimodule::regular(a).forget_left()
    }

    /// `_AA` as an `(A, k)`-bimodule.
    pub fn left_regular(a: &AlgRef) -> Self {
        Bimodule::regular(a).forget_right()
    }

    pub fn field(&self) -> Field {
        self.left_alg.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn left_alg(&self) -> &AlgRef {
        &self.left_alg
    }
    pub fn right_alg(&self) -> &AlgRef {
        &self.right_alg
    }
    pub fn left_mats(&self) -> &[Mat] {
        &self.left
    }
    pub fn right_mats(&self) -> &[Mat] {
        &self.right
    }
    pub fn left_mat(&self, i: usize) -> &Mat {
        &self.left[i]
    }
    pub fn right_mat(&self, j: usize) -> &Mat {
        &self.right[j]
    }

    pub fn left_by(&self, a: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.left, a)
    }

    pub fn right_by(&self, b: &[Scalar]) -> Mat {
        combine(self.field(), self.dim, &self.right, b)
    }

    /// `A⊗M → M`, columns indexed `i·dim + m`.
    pub fn left_action_map(&self) -> Mat {
        let refs: Vec<&Mat> = self.left.iter().collect();
        Mat::hstack(&refs)
    }

    /// `M⊗B → M`, columns indexed `m·dimB + j`.
    pub fn right_action_map(&self) -> Mat {
        let db = self.right_alg.dim();
        Mat::from_fn(self.field(), self.dim, self.dim * db, |r, col| {
            self.right[col % db].get(r, col / db).clone()
        })
    }

    pub fn forget_left(&self) -> Bimodule {
        let f = self.field();
        let k = Arc::new(FinAlgebra::ground(f));
        Bimodule::new(k, self.right_alg.clone(), self.dim, vec![Mat::identity(f, self.dim)], self.right.clone())
            .unwrap()
    }

    pub fn forget_right(&self) -> Bimodule {
        let f = self.field();
        let k = Arc::new(FinAlgebra::ground(f));
        Bimodule::new(self.left_alg.clone(), k, self.dim, self.left.clone(), vec![Mat::identity(f, self.dim)])
            .unwrap()
    }

    /// Restriction of scalars along algebra maps `A0 → A` and `B0 → B`
    /// (matrices `dim A × dim A0`, `dim B × dim B0`).
    pub fn restrict(
        &self,
        left: Option<(&AlgRef, &Mat)>,
        right: Option<(&AlgRef, &Mat)>,
    ) -> Result<Bimodule> {
        let (la, lm) = match left {
            Some((a0, rho)) => {
                check_map_shape(rho, self.left_alg.dim(), a0.dim())?;
                let mats = (0..a0.dim()).map(|i| self.left_by(&rho.col(i))).collect();
                (a0.clone(), mats)
            }
            None => (self.left_alg.clone(), self.left.clone()),
        };
        let (ra, rm) = match right {
            Some((b0, rho)) => {
                check_map_shape(rho, self.right_alg.dim(), b0.dim())?;
                let mats = (0..b0.dim()).map(|i| self.right_by(&rho.col(i))).collect();
                (b0.clone(), mats)
            }
            None => (self.right_alg.clone(), self.right.clone()),
        };
        Bimodule::new(la, ra, self.dim, lm, rm)
    }

    /// `M` viewed as a `(B^op, A^op)`-bimodule.
    pub fn opposite(&self) -> Bimodule {
        Bimodule::new(
            Arc::new(self.right_alg.opposite()),
            Arc::new(self.left_alg.opposite()),
            self.dim,
            self.right.clone(),
            self.left.clone(),
        )
        .unwrap()
    }

    /// The k-dual `Hom_k(M, k)` as a `(B, A)`-bimodule:
    /// `(b·f)(m) = f(m·b)`, `(f·a)(m) = f(a·m)`.
    pub fn k_dual(&self) -> Bimodule {
        Bimodule::new(
            self.right_alg.clone(),
            self.left_alg.clone(),
            self.dim,
            self.right.iter().map(Mat::transpose).collect(),
            self.left.iter().map(Mat::transpose).collect(),
        )
        .unwrap()
    }

    pub fn direct_sum(&self, other: &Bimodule) -> Result<Bimodule> {
        if !same_alg(&self.left_alg, &other.left_alg) || !same_alg(&self.right_alg, &other.right_alg) {
            return Err(Error::AlgebraMismatch("direct_sum"));
        }
        let n = self.dim + other.dim;
        let f = self.field();
        let block = |a: &Mat, b: &Mat| {
            let mut m = Mat::zeros(f, n, n);
            for r in 0..a.rows() {
                for c in 0..a.cols() {
                    m.set(r, c, a.get(r, c).clone());
                }
            }
            for r in 0..b.rows() {
                for c in 0..b.cols() {
                    m.set(self.dim + r, self.dim + c, b.get(r, c).clone());
                }
            }
            m
        };
        let left = self.left.iter().zip(&other.left).map(|(a, b)| block(a, b)).collect();
        let right = self.right.iter().zip(&other.right).map(|(a, b)| block(a, b)).collect();
        Bimodule::new(self.left_alg.clone(), self.right_alg.clone(), n, left, right)
    }

    /// Transports the structure along a linear isomorphism `iso: M → N`.
    pub fn transport(&self, iso: &Mat) -> Result<Bimodule> {
        let inv = iso
            .inverse()
            .ok_or_else(|| Error::Precondition("transport along a non-invertible map".into()))?;
        let conj = |m: &Mat| iso.mul(m).mul(&inv);
        Bimodule::new(
            self.left_alg.clone(),
            self.right_alg.clone(),
            self.dim,
            self.left.iter().map(conj).collect(),
            self.right.iter().map(conj).collect(),
        )
    }

    /// Whether `f: self → target` is a bimodule map (both algebras must agree).
    pub fn is_bimodule_map(&self, target: &Bimodule, f: &Mat) -> bool {
        same_alg(&self.left_alg, &target.left_alg)
            && same_alg(&self.right_alg, &target.right_alg)
            && f.shape() == (target.dim, self.dim)
            && self.left.iter().zip(&target.left).all(|(s, t)| f.mul(s) == t.mul(f))
            && self.right.iter().zip(&target.right).all(|(s, t)| f.mul(s) == t.mul(f))
    }
}

fn check_map_shape(rho: &Mat, rows: usize, cols: usize) -> Result<()> {
    if rho.shape() != (rows, cols) {
        return Err(Error::DimensionMismatch {
            op: "restrict",
            expected: rows * cols,
            got: rho.rows() * rho.cols(),
        });
    }
    Ok(())
}

/// Associativity and unitality of both actions and their commutation.
pub fn check_bimodule(m: &Bimodule) -> Report {
    let mut r = Report::new("bimodule");
    let f = m.field();
    let id = Mat::identity(f, m.dim);
    for (side, alg, mats) in [("left", &m.left_alg, &m.left), ("right", &m.right_alg, &m.right)] {
        let d = alg.dim();
        let act = |v: &[Scalar]| combine(f, m.dim, mats, v);
        let mut ok = true;
        'outer: for i in 0..d {
            for j in 0..d {
                let prod = alg.mult().col(i * d + j);
                // left: L_i L_j = L_{e_i e_j}; right: R_j R_i = R_{e_i e_j}
                let lhs = if side == "left" { mats[i].mul(&mats[j]) } else { mats[j].mul(&mats[i]) };
                let rhs = act(&prod);
                if lhs != rhs {
                    r.check_eq(format!("{side} associativity (e{i}, e{j})"), &lhs, &rhs);
                    ok = false;
                    break 'outer;
                }
            }
        }
        if ok {
            r.pass(format!("{side} associativity"));
        }
        r.check_eq(format!("{side} unit"), &act(alg.unit()), &id);
    }
    let commute = m
        .left
        .iter()
        .enumerate()
        .flat_map(|(i, l)| m.right.iter().enumerate().map(move |(j, rr)| (i, j, l, rr)))
        .find(|(_, _, l, rr)| l.mul(rr) != rr.mul(l));
    match commute {
        None => r.pass("actions commute"),
        Some((i, j, l, rr)) => {
            r.check_eq(format!("actions commute (a{i}, b{j})"), &l.mul(rr), &rr.mul(l));
        }
    }
    r
}
