use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algkernel::{fgp_left, fgp_right, same_alg, Bimodule, DualBasis};
use crate::coring::{check_bicomodule, Bicomodule, Side};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar, Subspace};

use super::algebra::{same_graded, GradedCoring, GradedRef};

/// An `(A', A)`-bimodule graded by `X'×X` on a homogeneous basis, where
/// `A'` is `G'`-graded with `G'`-set `X'` and `A` is `G`-graded with `X`:
/// `A'_{g'}·M_{(x',x)}·A_g ⊆ M_{(x'g'⁻¹, xg)}`.
///
/// One-sided modules use the ground graded coring `k⊗k{*}` on the other side.
#[derive(Clone, Debug)]
pub struct BigradedBimodule {
    left: GradedRef,
    right: GradedRef,
    carrier: Bimodule,
    degree: Vec<(usize, usize)>,
}

fn support(v: &[Scalar]) -> impl Iterator<Item = usize> + '_ {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(i, _)| i)
}

impl BigradedBimodule {
    pub fn new(left: GradedRef, right: GradedRef, carrier: Bimodule, degree: Vec<(usize, usize)>) -> Result<Self> {
        if !same_alg(left.algebra.algebra(), carrier.left_alg()) || !same_alg(right.algebra.algebra(), carrier.right_alg()) {
            return Err(Error::AlgebraMismatch("bigraded bimodule"));
        }
        if degree.len() != carrier.dim() || degree.iter().any(|&(p, q)| p >= left.set_len() || q >= right.set_len()) {
            return Err(Error::InvalidInput("one (x', x) degree per basis vector is required".into()));
        }
        for (m, &(xl, xr)) in degree.iter().enumerate() {
            for j in 0..right.algebra.dim() {
                let want = (xl, right.set.act(xr, right.algebra.degree(j)));
                if let Some(r) = support(&carrier.right_mat(j).col(m)).find(|&r| degree[r] != want) {
                    return Err(Error::InvalidInput(format!(
                        "m{m}·a{j} has a component on m{r} of degree {:?}, expected {want:?}",
                        degree[r]
                    )));
                }
            }
            for i in 0..left.algebra.dim() {
                let want = (left.set.left_act(left.algebra.degree(i), xl), xr);
                if let Some(r) = support(&carrier.left_mat(i).col(m)).find(|&r| degree[r] != want) {
                    return Err(Error::InvalidInput(format!(
                        "a'{i}·m{m} has a component on m{r} of degree {:?}, expected {want:?}",
                        degree[r]
                    )));
                }
            }
        }
        Ok(BigradedBimodule {
            left,
            right,
            carrier,
            degree,
        })
    }

    /// An `X`-graded right module; `carrier` must be a `(k, A)`-bimodule.
    pub fn right_graded(right: GradedRef, carrier: Bimodule, degree: Vec<usize>) -> Result<Self> {
        let left = GradedCoring::ground(right.field());
        BigradedBimodule::new(left, right, carrier, degree.into_iter().map(|x| (0, x)).collect())
    }

    /// An `X'`-graded left module; `carrier` must be an `(A', k)`-bimodule.
    pub fn left_graded(left: GradedRef, carrier: Bimodule, degree: Vec<usize>) -> Result<Self> {
        let right = GradedCoring::ground(left.field());
        BigradedBimodule::new(left, right, carrier, degree.into_iter().map(|x| (x, 0)).collect())
    }

    /// `Â = A⊗kX`, with `e_i⊗y` of degree `(y·g_i⁻¹, y)`.
    pub fn hat(gc: &GradedRef) -> Self {
        let s = gc.set_len();
        let degree = (0..gc.coring.dim())
            .map(|c| {
                let (i, y) = (c / s, c % s);
                (gc.set.act(y, gc.algebra.group().inv(gc.algebra.degree(i))), y)
            })
            .collect();
        BigradedBimodule::new(gc.clone(), gc.clone(), gc.coring.carrier().clone(), degree).expect("Â is bigraded")
    }

    /// `A_A` generated in degree `x`: `e_i` has degree `x·g_i`.
    pub fn free_right(gc: &GradedRef, x: usize) -> Self {
        let a = gc.algebra.algebra();
        let degree = (0..a.dim()).map(|i| gc.set.act(x, gc.algebra.degree(i))).collect();
        BigradedBimodule::right_graded(gc.clone(), Bimodule::right_regular(a), degree).expect("free graded module")
    }

    /// `_AA` generated in degree `x`: `e_i` has degree `g_i·x = x·g_i⁻¹`.
    pub fn free_left(gc: &GradedRef, x: usize) -> Self {
        let a = gc.algebra.algebra();
        let degree = (0..a.dim()).map(|i| gc.set.left_act(gc.algebra.degree(i), x)).collect();
        BigradedBimodule::left_graded(gc.clone(), Bimodule::left_regular(a), degree).expect("free graded module")
    }

    pub fn direct_sum(&self, other: &BigradedBimodule) -> Result<Self> {
        if !same_graded(&self.left, &other.left) || !same_graded(&self.right, &other.right) {
            return Err(Error::CoringMismatch("graded direct sum"));
        }
        let carrier = self.carrier.direct_sum(&other.carrier)?;
        let degree = self.degree.iter().chain(&other.degree).copied().collect();
        BigradedBimodule::new(self.left.clone(), self.right.clone(), carrier, degree)
    }

    pub fn left(&self) -> &GradedRef {
        &self.left
    }
    pub fn right(&self) -> &GradedRef {
        &self.right
    }
    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }
    pub fn degrees(&self) -> &[(usize, usize)] {
        &self.degree
    }
    pub fn degree(&self, m: usize) -> (usize, usize) {
        self.degree[m]
    }
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }

    /// Basis indices of `_{x'}M` (`Side::Left`) or `M_x` (`Side::Right`).
    pub fn component(&self, side: Side, x: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&m| match side {
                Side::Left => self.degree[m].0 == x,
                Side::Right => self.degree[m].1 == x,
            })
            .collect()
    }

    /// Dimension of each nonzero homogeneous component `M_{(x',x)}`.
    pub fn component_dims(&self) -> BTreeMap<(usize, usize), usize> {
        let mut out = BTreeMap::new();
        for &d in &self.degree {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// Forgets the left grading and action.
    pub fn forget_left(&self) -> Self {
        let degree = self.degree.iter().map(|&(_, x)| (0, x)).collect();
        BigradedBimodule {
            left: GradedCoring::ground(self.carrier.field()),
            right: self.right.clone(),
            carrier: self.carrier.forget_left(),
            degree,
        }
    }

    /// `_{x'}M` as a right `A`-module (`Side::Left`) or `M_x` as a left
    /// `A'`-module (`Side::Right`).
    pub fn component_module(&self, side: Side, x: usize) -> Bimodule {
        let idx = self.component(side, x);
        let restrict = |m: &Mat| m.select_rows(&idx).select_cols(&idx);
        let f = self.carrier.field();
        let k = idx.len();
        match side {
            Side::Left => {
                let right = self.carrier.right_mats().iter().map(restrict).collect();
                Bimodule::new(self.carrier.forget_left().left_alg().clone(), self.carrier.right_alg().clone(), k, vec![Mat::identity(f, k)], right)
            }
            Side::Right => {
                let left = self.carrier.left_mats().iter().map(restrict).collect();
                Bimodule::new(self.carrier.left_alg().clone(), self.carrier.forget_right().right_alg().clone(), k, left, vec![Mat::identity(f, k)])
            }
        }
        .expect("homogeneous components are submodules")
    }
}

/// Whether `_xP` is finitely generated projective as a right module
/// (`Side::Left`) or `N_x` as a left module (`Side::Right`), with a dual basis.
pub fn fgp_check(m: &BigradedBimodule, side: Side, x: usize) -> Result<Option<DualBasis>> {
    let sub = m.component_module(side, x);
    match side {
        Side::Left => fgp_right(&sub),
        Side::Right => fgp_left(&sub),
    }
}

/// The bicomodule over `(A'⊗kX', A⊗kX)` with `λ(m) = (1⊗x')⊗m` and
/// `ρ(m) = m⊗(1⊗x)` for `m` of degree `(x', x)`.
pub fn comodule_of_graded(m: &BigradedBimodule) -> Result<Bicomodule> {
    let f = m.carrier.field();
    let (l, r) = (&m.left, &m.right);
    let (dl, dr, dm) = (l.coring.dim(), r.coring.dim(), m.dim());
    let mut lambda = Mat::zeros(f, dl * dm, dm);
    let mut rho = Mat::zeros(f, dm * dr, dm);
    for (e, &(xl, xr)) in m.degree.iter().enumerate() {
        for c in support(&l.one_tensor(xl)) {
            lambda.set(c * dm + e, e, l.one_tensor(xl)[c].clone());
        }
        for c in support(&r.one_tensor(xr)) {
            rho.set(e * dr + c, e, r.one_tensor(xr)[c].clone());
        }
    }
    let b = Bicomodule::from_raw(l.coring.clone(), r.coring.clone(), m.carrier.clone(), &lambda, &rho)?;
    let rep = check_bicomodule(&b);
    if !rep.all_pass() {
        return Err(Error::InvalidStructure(format!("graded module gives no bicomodule:\n{rep}")));
    }
    Ok(b)
}

/// `(λ − (1⊗x')⊗−)` or `(ρ − −⊗(1⊗x))`, whose kernel is the component.
fn component_defect(b: &Bicomodule, gc: &GradedCoring, side: Side, x: usize) -> Mat {
    let f = b.field();
    let one = Mat::column(f, &gc.one_tensor(x));
    let id = Mat::identity(f, b.dim());
    match side {
        Side::Left => b.lambda().sub(&b.lchain().projection().mul(&one.kron(&id))),
        Side::Right => b.rho().sub(&b.rchain().projection().mul(&id.kron(&one))),
    }
}

/// The inverse of [`comodule_of_graded`]: grades a bicomodule over
/// `(A'⊗kX', A⊗kX)` by its homogeneous components. Returns the graded module
/// and the basis change (columns are the new basis in old coordinates).
pub fn graded_of_comodule(b: &Bicomodule, left: &GradedRef, right: &GradedRef) -> Result<(BigradedBimodule, Mat)> {
    if **b.left_coring() != *left.coring || **b.right_coring() != *right.coring {
        return Err(Error::CoringMismatch("graded_of_comodule"));
    }
    let f = b.field();
    let lefts: Vec<Subspace> = (0..left.set_len())
        .map(|x| component_defect(b, left, Side::Left, x).kernel())
        .collect();
    let rights: Vec<Subspace> = (0..right.set_len())
        .map(|x| component_defect(b, right, Side::Right, x).kernel())
        .collect();
    let mut vecs: Vec<(usize, (usize, usize), Vec<Scalar>)> = Vec::new();
    for (xl, sl) in lefts.iter().enumerate() {
        for (xr, sr) in rights.iter().enumerate() {
            let s = sl.intersect(sr);
            for (row, &p) in s.basis_rows().iter().zip(s.pivots()) {
                vecs.push((p, (xl, xr), row.clone()));
            }
        }
    }
    if vecs.len() != b.dim() {
        return Err(Error::InvalidStructure(format!(
            "homogeneous components span {} of {} dimensions",
            vecs.len(),
            b.dim()
        )));
    }
    vecs.sort_by_key(|(p, _, _)| *p);
    let cols: Vec<Vec<Scalar>> = vecs.iter().map(|(_, _, v)| v.clone()).collect();
    let basis = Mat::from_columns(f, b.dim(), &cols);
    let inv = basis
        .inverse()
        .ok_or_else(|| Error::InvalidStructure("homogeneous components are not independent".into()))?;
    let carrier = b.carrier().transport(&inv)?;
    let degree = vecs.iter().map(|(_, d, _)| *d).collect();
    let g = BigradedBimodule::new(left.clone(), right.clone(), carrier, degree)?;
    Ok((g, basis))
}
