use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, Subspace};

use super::bimodule::{same_alg, Bimodule};

/// Iterated balanced tensor product `M_1 ⊗_{A_1} M_2 ⊗ … ⊗ M_n`.
///
/// Raw coordinates are the Kronecker coordinates of `M_1 ⊗_k … ⊗_k M_n`.
/// `projection` is `raw → dim`, `section` is `dim → raw`, and
/// `projection · section = id`. The quotient is taken left-nested.
#[derive(Clone, Debug)]
pub struct TensorChain {
    factors: Vec<Bimodule>,
    dim: usize,
    projection: Mat,
    section: Mat,
    bimodule: Bimodule,
}

/// A two-factor chain.
pub type BalancedTensor = TensorChain;

impl TensorChain {
    pub fn new(factors: Vec<Bimodule>) -> Result<Self> {
        let first = factors
            .first()
            .ok_or_else(|| Error::InvalidInput("empty tensor chain".into()))?
            .clone();
        let f = first.field();
        let mut acc = first.clone();
        let mut proj = Mat::identity(f, first.dim());
        let mut sect = proj.clone();
        for next in &factors[1..] {
            if !same_alg(acc.right_alg(), next.left_alg()) {
                return Err(Error::AlgebraMismatch("balanced tensor"));
            }
            let (pi, sigma) = pair_quotient(&acc, next);
            let (t, n) = (acc.dim(), next.dim());
            let q = pi.rows();
            let in_t = Mat::identity(f, n);
            proj = pi.mul(&proj.kron(&in_t));
            sect = Mat::kron_apply(&[&sect, &in_t], &sigma);
            let it = Mat::identity(f, t);
            let left = acc
                .left_mats()
                .iter()
                .map(|l| pi.mul(&Mat::kron_apply(&[l, &in_t], &sigma)))
                .collect();
            let right = next
                .right_mats()
                .iter()
                .map(|r| pi.mul(&Mat::kron_apply(&[&it, r], &sigma)))
                .collect();
            acc = Bimodule::new(acc.left_alg().clone(), next.right_alg().clone(), q, left, right)?;
        }
        Ok(TensorChain {
            dim: acc.dim(),
            factors,
            projection: proj,
            section: sect,
            bimodule: acc,
        })
    }

    pub fn pair(m: &Bimodule, n: &Bimodule) -> Result<Self> {
        TensorChain::new(vec![m.clone(), n.clone()])
    }

    pub fn field(&self) -> Field {
        self.bimodule.field()
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn raw_dim(&self) -> usize {
        self.projection.cols()
    }
    pub fn factors(&self) -> &[Bimodule] {
        &self.factors
    }
    pub fn projection(&self) -> &Mat {
        &self.projection
    }
    pub fn section(&self) -> &Mat {
        &self.section
    }

    /// The product with its induced outer actions.
    pub fn bimodule(&self) -> &Bimodule {
        &self.bimodule
    }

    /// `tgt.π ∘ (parts[0] ⊗ … ⊗ parts[n-1]) ∘ src.σ`, where each part acts on
    /// raw coordinates. Well defined whenever the parts are balanced maps.
    pub fn map(src: &TensorChain, tgt: &TensorChain, parts: &[&Mat]) -> Mat {
        let applied = Mat::kron_apply(parts, &src.section);
        tgt.projection.mul(&applied)
    }

    /// Lifts a map into this chain to raw coordinates.
    pub fn lift(&self, m: &Mat) -> Mat {
        self.section.mul(m)
    }
}

/// Quotient of `M ⊗_k N` by `m·b ⊗ n − m ⊗ b·n`.
fn pair_quotient(m: &Bimodule, n: &Bimodule) -> (Mat, Mat) {
    let f = m.field();
    let total = m.dim() * n.dim();
    let mid = m.right_alg();
    if mid.dim() == 1 && m.right_mat(0).is_identity() && n.left_mat(0).is_identity() {
        let id = Mat::identity(f, total);
        return (id.clone(), id);
    }
    let im = Mat::identity(f, m.dim());
    let in_ = Mat::identity(f, n.dim());
    let mut rel_rows = Vec::new();
    for b in 0..mid.dim() {
        let rel = m.right_mat(b).kron(&in_).sub(&im.kron(n.left_mat(b)));
        for c in 0..total {
            let col = rel.col(c);
            if col.iter().any(|x| !num_traits::Zero::is_zero(x)) {
                rel_rows.push(col);
            }
        }
    }
    let rel = Subspace::from_spanning(f, total, rel_rows);
    let q = rel.quotient();
    (q.projection, q.section)
}

pub fn balanced_tensor(m: &Bimodule, n: &Bimodule) -> Result<BalancedTensor> {
    TensorChain::pair(m, n)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algkernel::{check_bimodule, FinAlgebra};

    #[test]
    fn dimensions_of_standard_products() {
        let q = Field::Rationals;
        let a = Arc::new(FinAlgebra::cyclic_group_algebra(q, 2));
        let reg = Bimodule::regular(&a);
        let t = balanced_tensor(&reg, &reg).unwrap();
        assert_eq!(t.dim(), 2);
        assert!(t.projection().mul(t.section()).is_identity());
        assert!(check_bimodule(t.bimodule()).all_pass());

        let v2 = Bimodule::vector_space(q, 2);
        let v3 = Bimodule::vector_space(q, 3);
        let t = balanced_tensor(&v2, &v3).unwrap();
        assert_eq!(t.dim(), 6);
        assert!(t.projection().is_identity());

        let t2 = Arc::new(FinAlgebra::upper_triangular(q));
        let n = Bimodule::regular(&t2).k_dual();
        let t = balanced_tensor(&Bimodule::regular(&t2), &n).unwrap();
        assert_eq!(t.dim(), n.dim());
    }

    #[test]
    fn mismatched_middle_is_rejected() {
        let q = Field::Rationals;
        let a = Arc::new(FinAlgebra::cyclic_group_algebra(q, 2));
        let b = Arc::new(FinAlgebra::upper_triangular(q));
        assert!(balanced_tensor(&Bimodule::regular(&a), &Bimodule::regular(&b)).is_err());
    }
}
