use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactla::{sandwich_coefficients, Field, LinearSystem, Mat, Scalar, Subspace};

use super::bimodule::{same_alg, AlgRef, Bimodule};

/// Which actions a map must commute with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Linearity {
    None,
    Left,
    Right,
    Both,
}

/// A space of linear maps `k^source → k^target`, stored as a canonical
/// subspace of row-major vectorized matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomSpace {
    source_dim: usize,
    target_dim: usize,
    space: Subspace,
    basis: Vec<Mat>,
}

impl HomSpace {
    pub fn from_subspace(target_dim: usize, source_dim: usize, space: Subspace) -> Self {
        assert_eq!(space.ambient(), target_dim * source_dim);
        let f = space.field();
        let basis = space
            .basis_rows()
            .iter()
            .map(|v| Mat::from_vector(f, target_dim, source_dim, v))
            .collect();
        HomSpace {
            source_dim,
            target_dim,
            space,
            basis,
        }
    }

    /// Solutions of the homogeneous system in the entries of `F: source → target`.
    pub fn from_system(sys: &LinearSystem, target_dim: usize, source_dim: usize) -> Self {
        assert_eq!(sys.unknowns(), target_dim * source_dim);
        HomSpace::from_subspace(target_dim, source_dim, sys.kernel())
    }

    pub fn field(&self) -> Field {
        self.space.field()
    }
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    pub fn source_dim(&self) -> usize {
        self.source_dim
    }
    pub fn target_dim(&self) -> usize {
        self.target_dim
    }
    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }
    pub fn subspace(&self) -> &Subspace {
        &self.space
    }

    pub fn combine(&self, coeffs: &[Scalar]) -> Mat {
        let f = self.field();
        let mut out = Mat::zeros(f, self.target_dim, self.source_dim);
        for (b, c) in self.basis.iter().zip(coeffs) {
            if !c.is_zero() {
                out = out.add(&b.scale(c));
            }
        }
        out
    }

    pub fn contains(&self, m: &Mat) -> bool {
        m.shape() == (self.target_dim, self.source_dim) && self.space.contains(&m.vectorize())
    }

    pub fn coordinates(&self, m: &Mat) -> Option<Vec<Scalar>> {
        if m.shape() != (self.target_dim, self.source_dim) {
            return None;
        }
        self.space.coordinates(&m.vectorize())
    }

    /// Matrix, in basis coordinates, of an operator that preserves this space.
    pub fn action_matrix(&self, op: impl Fn(&Mat) -> Mat) -> Result<Mat> {
        let mut cols = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let img = op(b);
            let c = self
                .coordinates(&img)
                .ok_or_else(|| Error::InvalidStructure("operator leaves the hom space".into()))?;
            cols.push(c);
        }
        Ok(Mat::from_columns(self.field(), self.dim(), &cols))
    }
}

/// Adds `F·S_i = T_i·F` for each pair of action matrices.
pub fn add_commutation(sys: &mut LinearSystem, source_ops: &[Mat], target_ops: &[Mat]) {
    for (s, t) in source_ops.iter().zip(target_ops) {
        let f = s.field();
        let it = Mat::identity(f, t.rows());
        let is = Mat::identity(f, s.rows());
        let coeffs = sandwich_coefficients(&it, s).sub(&sandwich_coefficients(t, &is));
        sys.homogeneous(&coeffs);
    }
}

/// The linear system of maps `source → target` with the requested linearity.
pub fn linearity_system(source: &Bimodule, target: &Bimodule, lin: Linearity) -> Result<LinearSystem> {
    let f = source.field();
    if f != target.field() {
        return Err(Error::FieldMismatch("hom_space"));
    }
    let mut sys = LinearSystem::new(f, source.dim() * target.dim());
    if matches!(lin, Linearity::Left | Linearity::Both) {
        if !same_alg(source.left_alg(), target.left_alg()) {
            return Err(Error::AlgebraMismatch("hom_space (left)"));
        }
        add_commutation(&mut sys, source.left_mats(), target.left_mats());
    }
    if matches!(lin, Linearity::Right | Linearity::Both) {
        if !same_alg(source.right_alg(), target.right_alg()) {
            return Err(Error::AlgebraMismatch("hom_space (right)"));
        }
        add_commutation(&mut sys, source.right_mats(), target.right_mats());
    }
    Ok(sys)
}

pub fn hom_space(source: &Bimodule, target: &Bimodule, lin: Linearity) -> Result<HomSpace> {
    let sys = linearity_system(source, target, lin)?;
    Ok(HomSpace::from_system(&sys, target.dim(), source.dim()))
}

/// `Hom_A(M_A, A_A)` for an `(A', A)`-bimodule `M`, as an `(A, A')`-bimodule
/// with `(a·f)(m) = a f(m)` and `(f·a')(m) = f(a'm)`.
pub fn right_dual(m: &Bimodule) -> Result<(Bimodule, HomSpace)> {
    let a = m.right_alg();
    let reg = Bimodule::regular(a);
    let h = hom_space(m, &reg, Linearity::Right)?;
    let left = (0..a.dim())
        .map(|i| h.action_matrix(|x| a.left_mul(i).mul(x)))
        .collect::<Result<Vec<_>>>()?;
    let right = m
        .left_mats()
        .iter()
        .map(|l| h.action_matrix(|x| x.mul(l)))
        .collect::<Result<Vec<_>>>()?;
    let dual = Bimodule::new(a.clone(), m.left_alg().clone(), h.dim(), left, right)?;
    Ok((dual, h))
}

/// `Hom_A(_AM, _AA)` for an `(A, A')`-bimodule `M`, as an `(A', A)`-bimodule
/// with `(a'·f)(m) = f(m a')` and `(f·a)(m) = f(m) a`.
pub fn left_dual(m: &Bimodule) -> Result<(Bimodule, HomSpace)> {
    let a = m.left_alg();
    let reg = Bimodule::regular(a);
    let h = hom_space(m, &reg, Linearity::Left)?;
    let left = m
        .right_mats()
        .iter()
        .map(|r| h.action_matrix(|x| x.mul(r)))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..a.dim())
        .map(|i| h.action_matrix(|x| a.right_mul(i).mul(x)))
        .collect::<Result<Vec<_>>>()?;
    let dual = Bimodule::new(m.right_alg().clone(), a.clone(), h.dim(), left, right)?;
    Ok((dual, h))
}

/// A dual basis `{m_i, f_i}` with `Σ m_i·f_i(m) = m` (right modules) or
/// `Σ f_i(m)·m_i = m` (left modules). The `m_i` are the standard basis.
#[derive(Clone, Debug)]
pub struct DualBasis {
    /// `functionals[i]` is `f_i` as a `dim A × dim M` matrix.
    pub functionals: Vec<Mat>,
}

/// Decides whether `M_A` is finitely generated projective by solving the
/// dual-basis equation, linear in the coordinates of the `f_i`.
pub fn fgp_right(m: &Bimodule) -> Result<Option<DualBasis>> {
    let (_, h) = right_dual(m)?;
    Ok(solve_dual_basis(m.dim(), m.right_mats(), &h, m.field()))
}

/// Same for `_AM`.
pub fn fgp_left(m: &Bimodule) -> Result<Option<DualBasis>> {
    let (_, h) = left_dual(m)?;
    Ok(solve_dual_basis(m.dim(), m.left_mats(), &h, m.field()))
}

fn solve_dual_basis(n: usize, acts: &[Mat], h: &HomSpace, f: Field) -> Option<DualBasis> {
    let r = h.dim();
    if n == 0 {
        return Some(DualBasis {
            functionals: Vec::new(),
        });
    }
    // unknown c[i][j] at i·r + j; f_i = Σ_j c[i][j] h_j
    // Σ_i Σ_j c[i][j] act(h_j(e_l)) e_i = e_l for every l.
    let mut sys = LinearSystem::new(f, n * r);
    for l in 0..n {
        let mut coeffs = Mat::zeros(f, n, n * r);
        for (j, hj) in h.basis().iter().enumerate() {
            let val = hj.col(l);
            let act = super::algebra::combine(f, n, acts, &val);
            for i in 0..n {
                for row in 0..n {
                    let v = act.get(row, i);
                    if !v.is_zero() {
                        coeffs.add_at(row, i * r + j, v);
                    }
                }
            }
        }
        let mut target = vec![Scalar::zero(); n];
        target[l] = f.one();
        sys.equal(&coeffs, &target);
    }
    let sol = sys.solve().ok()??;
    let functionals = (0..n).map(|i| h.combine(&sol[i * r..(i + 1) * r])).collect();
    Some(DualBasis { functionals })
}

/// A separability element `e ∈ A⊗A` with `a e = e a` and `μ(e) = 1`, if any.
pub fn separability_element(a: &AlgRef) -> Option<Vec<Scalar>> {
    let f = a.field();
    let d = a.dim();
    let id = Mat::identity(f, d);
    let mut sys = LinearSystem::new(f, d * d);
    for i in 0..d {
        let coeffs = a.left_mul(i).kron(&id).sub(&id.kron(a.right_mul(i)));
        sys.homogeneous(&coeffs);
    }
    sys.equal(a.mult(), a.unit());
    sys.solve().ok()?
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algkernel::FinAlgebra;

    #[test]
    fn centre_dimensions() {
        let q = Field::Rationals;
        let v = Bimodule::vector_space(q, 2);
        assert_eq!(hom_space(&v, &v, Linearity::None).unwrap().dim(), 4);
        let c2 = Arc::new(FinAlgebra::cyclic_group_algebra(q, 2));
        let r = Bimodule::regular(&c2);
        assert_eq!(hom_space(&r, &r, Linearity::Both).unwrap().dim(), 2);
        let t2 = Arc::new(FinAlgebra::upper_triangular(q));
        let r = Bimodule::regular(&t2);
        assert_eq!(hom_space(&r, &r, Linearity::Both).unwrap().dim(), 1);
    }

    #[test]
    fn separability_by_characteristic() {
        let q = Field::Rationals;
        assert!(separability_element(&Arc::new(FinAlgebra::cyclic_group_algebra(q, 2))).is_some());
        assert!(separability_element(&Arc::new(FinAlgebra::dual_numbers(q))).is_none());
        assert!(separability_element(&Arc::new(FinAlgebra::upper_triangular(q))).is_none());
        let f2 = Field::prime(2).unwrap();
        assert!(separability_element(&Arc::new(FinAlgebra::cyclic_group_algebra(f2, 2))).is_none());
    }

    #[test]
    fn augmentation_module_projectivity() {
        for (field, expect) in [(Field::Rationals, true), (Field::prime(2).unwrap(), false)] {
            let a = Arc::new(FinAlgebra::cyclic_group_algebra(field, 2));
            let k = Arc::new(FinAlgebra::ground(field));
            let id = Mat::identity(field, 1);
            let triv = Bimodule::new(k, a.clone(), 1, vec![id.clone()], vec![id.clone(), id]).unwrap();
            assert_eq!(fgp_right(&triv).unwrap().is_some(), expect);
        }
    }
}
