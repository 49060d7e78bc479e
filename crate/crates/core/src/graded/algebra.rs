use std::sync::Arc;

use num_traits::Zero;

use crate::algkernel::{AlgRef, Bimodule, FinAlgebra};
use crate::coring::{Coring, CoringRef};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};

use super::group::{FiniteGroup, GSet, GSetRef, GroupRef};

/// An algebra graded by a finite group on a homogeneous basis:
/// `degree[i]` is the degree of `e_i`, with `A_g A_h ⊆ A_gh` and `1 ∈ A_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedAlgebra {
    algebra: AlgRef,
    group: GroupRef,
    degree: Vec<usize>,
}

impl GradedAlgebra {
    pub fn new(algebra: AlgRef, group: GroupRef, degree: Vec<usize>) -> Result<Self> {
        let n = algebra.dim();
        if degree.len() != n || degree.iter().any(|&g| g >= group.order()) {
            return Err(Error::InvalidInput("one group degree per basis element is required".into()));
        }
        let e = group.identity();
        if algebra.unit().iter().zip(&degree).any(|(u, &g)| !u.is_zero() && g != e) {
            return Err(Error::InvalidInput("the unit is not homogeneous of degree e".into()));
        }
        for i in 0..n {
            for j in 0..n {
                let prod = algebra.mult().col(i * n + j);
                let g = group.mul(degree[i], degree[j]);
                if let Some(k) = (0..n).find(|&k| !prod[k].is_zero() && degree[k] != g) {
                    return Err(Error::InvalidInput(format!(
                        "e{i}·e{j} has a component on e{k} outside degree {g}"
                    )));
                }
            }
        }
        Ok(GradedAlgebra { algebra, group, degree })
    }

    /// Every basis element in degree `e`.
    pub fn concentrated(algebra: AlgRef, group: GroupRef) -> Self {
        let degree = vec![group.identity(); algebra.dim()];
        GradedAlgebra { algebra, group, degree }
    }

    /// The ground field over the trivial group.
    pub fn ground(field: Field) -> Self {
        GradedAlgebra::concentrated(Arc::new(FinAlgebra::ground(field)), Arc::new(FiniteGroup::trivial()))
    }

    /// `kG` graded by `g ↦ g`.
    pub fn group_algebra(field: Field, group: GroupRef) -> Self {
        let alg = FinAlgebra::group_algebra("kG", field, group.table()).expect("valid group table");
        let degree = (0..group.order()).collect();
        GradedAlgebra {
            algebra: Arc::new(alg),
            group,
            degree,
        }
    }

    pub fn algebra(&self) -> &AlgRef {
        &self.algebra
    }
    pub fn group(&self) -> &GroupRef {
        &self.group
    }
    pub fn degree(&self, i: usize) -> usize {
        self.degree[i]
    }
    pub fn degrees(&self) -> &[usize] {
        &self.degree
    }
    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }
    pub fn field(&self) -> Field {
        self.algebra.field()
    }
}

/// The coring `A⊗kX` of a graded algebra and a right `G`-set, together with
/// the data it was built from. Basis `e_i⊗x` sits at `i·|X| + x`.
#[derive(Clone, Debug)]
pub struct GradedCoring {
    pub algebra: GradedAlgebra,
    pub set: GSetRef,
    pub coring: CoringRef,
}

pub type GradedRef = Arc<GradedCoring>;

impl GradedCoring {
    /// `k⊗k{*}`, which is the ground coring.
    pub fn ground(field: Field) -> GradedRef {
        let a = GradedAlgebra::ground(field);
        let x = Arc::new(GSet::fixed_points(a.group().clone(), 1));
        Arc::new(build_graded_coring(&a, &x).expect("ground graded coring"))
    }

    pub fn field(&self) -> Field {
        self.algebra.field()
    }
    pub fn set_len(&self) -> usize {
        self.set.len()
    }
    pub fn index(&self, i: usize, x: usize) -> usize {
        i * self.set.len() + x
    }
    /// `1⊗x` in the carrier.
    pub fn one_tensor(&self, x: usize) -> Vec<crate::exactla::Scalar> {
        let f = self.field();
        let mut v = vec![f.zero(); self.coring.dim()];
        for (i, u) in self.algebra.algebra().unit().iter().enumerate() {
            v[self.index(i, x)] = u.clone();
        }
        v
    }
}

/// Structural equality of the underlying data, or pointer equality.
pub(crate) fn same_graded(a: &GradedRef, b: &GradedRef) -> bool {
    Arc::ptr_eq(a, b) || (a.algebra == b.algebra && *a.set == *b.set && *a.coring == *b.coring)
}

/// `G` acting on `X` as a `|X| × |X|` permutation matrix, `x ↦ x·g`.
pub(crate) fn permutation(field: Field, set: &GSet, g: usize) -> Mat {
    let n = set.len();
    Mat::from_fn(field, n, n, |r, c| if set.act(c, g) == r { field.one() } else { field.zero() })
}

/// `A⊗kX` with `a'(a⊗x) = a'a⊗x`, `(a⊗x)b_g = ab_g⊗xg`,
/// `Δ(a⊗x) = (a⊗x)⊗_A(1⊗x)` and `ε(a⊗x) = a`.
pub fn build_graded_coring(a: &GradedAlgebra, x: &GSetRef) -> Result<GradedCoring> {
    if **a.group() != **x.group() {
        return Err(Error::InvalidInput("the algebra and the G-set use different groups".into()));
    }
    let f = a.field();
    let alg = a.algebra();
    let (n, s) = (alg.dim(), x.len());
    let d = n * s;
    let ids = Mat::identity(f, s);
    let left = (0..n).map(|j| alg.left_mul(j).kron(&ids)).collect();
    let right = (0..n)
        .map(|j| alg.right_mul(j).kron(&permutation(f, x, a.degree(j))))
        .collect();
    let carrier = Bimodule::new(alg.clone(), alg.clone(), d, left, right)?;
    let mut delta = Mat::zeros(f, d * d, d);
    for i in 0..n {
        for p in 0..s {
            let col = i * s + p;
            for (k, u) in alg.unit().iter().enumerate() {
                if !u.is_zero() {
                    delta.set(col * d + k * s + p, col, u.clone());
                }
            }
        }
    }
    let eps = Mat::identity(f, n).kron(&Mat::from_fn(f, 1, s, |_, _| f.one()));
    let name = format!("{}⊗k{{{} points}}", alg.name(), s);
    let coring = Coring::from_raw(name, carrier, &delta, eps)?;
    Ok(GradedCoring {
        algebra: a.clone(),
        set: x.clone(),
        coring: Arc::new(coring),
    })
}

/// The cointegral `δ((a⊗x)⊗_A(1⊗y)) = a·[x = y]`, in coordinates of `C⊗_AC`.
/// On raw basis tensors, `δ((e_i⊗x)⊗(e_j⊗y)) = [x·g_j = y] e_i e_j`.
pub fn graded_cointegral(gc: &GradedCoring) -> Result<Mat> {
    let f = gc.field();
    let a = gc.algebra.algebra();
    let (n, s) = (a.dim(), gc.set_len());
    let d = n * s;
    let mut raw = Mat::zeros(f, n, d * d);
    for i in 0..n {
        for x in 0..s {
            for j in 0..n {
                for y in 0..s {
                    if gc.set.act(x, gc.algebra.degree(j)) != y {
                        continue;
                    }
                    let col = (i * s + x) * d + j * s + y;
                    let prod = a.mult().col(i * n + j);
                    for (r, v) in prod.iter().enumerate() {
                        if !v.is_zero() {
                            raw.set(r, col, v.clone());
                        }
                    }
                }
            }
        }
    }
    let cc = gc.coring.cc();
    let delta = raw.mul(cc.section());
    if delta.mul(cc.projection()) != raw {
        return Err(Error::InvalidStructure("δ is not A-balanced".into()));
    }
    Ok(delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coring::{check_coring, coseparable, is_cointegral};

    #[test]
    fn small_graded_corings() {
        let f = Field::Rationals;
        let c2 = Arc::new(FiniteGroup::cyclic(2));
        let a = GradedAlgebra::group_algebra(f, c2.clone());
        for x in [GSet::regular(c2.clone()), GSet::fixed_points(c2.clone(), 2)] {
            let gc = build_graded_coring(&a, &Arc::new(x)).unwrap();
            assert!(check_coring(&gc.coring).all_pass());
            let delta = graded_cointegral(&gc).unwrap();
            assert!(is_cointegral(&gc.coring, &delta).unwrap());
            assert!(coseparable(&gc.coring).unwrap());
        }
        assert_eq!(*GradedCoring::ground(f).coring, Coring::ground(f));
        let bad = GradedAlgebra::new(a.algebra().clone(), c2, vec![1, 0]);
        assert!(bad.is_err());
    }
}
