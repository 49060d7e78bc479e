use std::sync::Arc;

use crate::algkernel::{check_bimodule, same_alg, Bimodule, TensorChain};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::report::Report;

use super::corings::{act_left_after, act_right_after, flip_matrix, same_coring, Coring, CoringRef};

/// A `(C', C)`-bicomodule: an `(A', A)`-bimodule `M` with
/// `λ: M → C'⊗_{A'}M` and `ρ: M → M⊗_AC`, in chain coordinates.
///
/// A right comodule has the ground-field coring on the left and `λ = id`.
#[derive(Clone, Debug)]
pub struct Bicomodule {
    left: CoringRef,
    right: CoringRef,
    carrier: Bimodule,
    lchain: TensorChain,
    rchain: TensorChain,
    lambda: Mat,
    rho: Mat,
}

impl Bicomodule {
    pub fn new(left: CoringRef, right: CoringRef, carrier: Bimodule, lambda: Mat, rho: Mat) -> Result<Self> {
        if !same_alg(left.base(), carrier.left_alg()) {
            return Err(Error::AlgebraMismatch("bicomodule left base"));
        }
        if !same_alg(right.base(), carrier.right_alg()) {
            return Err(Error::AlgebraMismatch("bicomodule right base"));
        }
        let lchain = TensorChain::pair(left.carrier(), &carrier)?;
        let rchain = TensorChain::pair(&carrier, right.carrier())?;
        let d = carrier.dim();
        if lambda.shape() != (lchain.dim(), d) || rho.shape() != (rchain.dim(), d) {
            return Err(Error::DimensionMismatch {
                op: "Bicomodule::new",
                expected: lchain.dim(),
                got: lambda.rows(),
            });
        }
        Ok(Bicomodule {
            left,
            right,
            carrier,
            lchain,
            rchain,
            lambda,
            rho,
        })
    }

    /// Coactions in Kronecker coordinates of `C'⊗_kM` and `M⊗_kC`.
    pub fn from_raw(left: CoringRef, right: CoringRef, carrier: Bimodule, lambda_raw: &Mat, rho_raw: &Mat) -> Result<Self> {
        let lchain = TensorChain::pair(left.carrier(), &carrier)?;
        let rchain = TensorChain::pair(&carrier, right.carrier())?;
        if lambda_raw.rows() != lchain.raw_dim() || rho_raw.rows() != rchain.raw_dim() {
            return Err(Error::DimensionMismatch {
                op: "Bicomodule::from_raw",
                expected: lchain.raw_dim(),
                got: lambda_raw.rows(),
            });
        }
        let lambda = lchain.projection().mul(lambda_raw);
        let rho = rchain.projection().mul(rho_raw);
        Bicomodule::new(left, right, carrier, lambda, rho)
    }

    /// A right `C`-comodule; `carrier` must be a `(k, A)`-bimodule.
    pub fn right_comodule(right: CoringRef, carrier: Bimodule, rho: Mat) -> Result<Self> {
        let k = Arc::new(Coring::ground(carrier.field()));
        let id = Mat::identity(carrier.field(), carrier.dim());
        Bicomodule::new(k, right, carrier, id, rho)
    }

    /// A left `C`-comodule; `carrier` must be an `(A, k)`-bimodule.
    pub fn left_comodule(left: CoringRef, carrier: Bimodule, lambda: Mat) -> Result<Self> {
        let k = Arc::new(Coring::ground(carrier.field()));
        let id = Mat::identity(carrier.field(), carrier.dim());
        Bicomodule::new(left, k, carrier, lambda, id)
    }

    /// `C` as a `(C, C)`-bicomodule with `λ = ρ = Δ`.
    pub fn regular(c: &CoringRef) -> Self {
        Bicomodule::new(c.clone(), c.clone(), c.carrier().clone(), c.delta().clone(), c.delta().clone())
            .unwrap()
    }

    /// `C⊗_AC` as a `(C, C)`-bicomodule with `λ = Δ⊗C` and `ρ = C⊗Δ`.
    pub fn tensor_square(c: &CoringRef) -> Self {
        let cc = c.cc();
        let carrier = cc.bimodule().clone();
        let f = c.field();
        let idc = Mat::identity(f, c.dim());
        let draw = c.delta_raw();
        let lchain = TensorChain::pair(c.carrier(), &carrier).unwrap();
        let rchain = TensorChain::pair(&carrier, c.carrier()).unwrap();
        // raw C⊗C → C⊗C⊗C, then regroup the last (first) two factors.
        let l3 = Mat::kron_apply(&[&draw, &idc], cc.section());
        let lambda = lchain.projection().mul(&Mat::kron_apply(&[&idc, cc.projection()], &l3));
        let r3 = Mat::kron_apply(&[&idc, &draw], cc.section());
        let rho = rchain.projection().mul(&Mat::kron_apply(&[cc.projection(), &idc], &r3));
        Bicomodule::new(c.clone(), c.clone(), carrier, lambda, rho).unwrap()
    }

    pub fn field(&self) -> crate::exactla::Field {
        self.carrier.field()
    }
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
    pub fn left_coring(&self) -> &CoringRef {
        &self.left
    }
    pub fn right_coring(&self) -> &CoringRef {
        &self.right
    }
    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }
    pub fn lchain(&self) -> &TensorChain {
        &self.lchain
    }
    pub fn rchain(&self) -> &TensorChain {
        &self.rchain
    }
    pub fn lambda(&self) -> &Mat {
        &self.lambda
    }
    pub fn rho(&self) -> &Mat {
        &self.rho
    }
    pub fn lambda_raw(&self) -> Mat {
        self.lchain.section().mul(&self.lambda)
    }
    pub fn rho_raw(&self) -> Mat {
        self.rchain.section().mul(&self.rho)
    }

    /// Forgets the left coaction: a right `C`-comodule over `(k, A)`.
    pub fn forget_left(&self) -> Bicomodule {
        Bicomodule::right_comodule(self.right.clone(), self.carrier.forget_left(), self.rho.clone())
            .expect("forget_left")
    }

    /// Forgets the right coaction: a left `C'`-comodule over `(A', k)`.
    pub fn forget_right(&self) -> Bicomodule {
        Bicomodule::left_comodule(self.left.clone(), self.carrier.forget_right(), self.lambda.clone())
            .expect("forget_right")
    }

    /// `M` as a `(C^op, C'^op)`-bicomodule, sides exchanged.
    pub fn opposite(&self, left_op: &CoringRef, right_op: &CoringRef) -> Result<Bicomodule> {
        let f = self.field();
        let d = self.dim();
        let new_lambda = flip_matrix(f, d, self.right.dim()).mul(&self.rho_raw());
        let new_rho = flip_matrix(f, self.left.dim(), d).mul(&self.lambda_raw());
        Bicomodule::from_raw(right_op.clone(), left_op.clone(), self.carrier.opposite(), &new_lambda, &new_rho)
    }

    pub fn same_corings(&self, other: &Bicomodule) -> bool {
        same_coring(&self.left, &other.left) && same_coring(&self.right, &other.right)
    }
}

pub fn check_bicomodule(m: &Bicomodule) -> Report {
    let mut r = Report::new("bicomodule");
    r.merge("carrier", check_bimodule(&m.carrier));
    let f = m.field();
    let idm = Mat::identity(f, m.dim());
    let lb = m.lchain.bimodule();
    let rb = m.rchain.bimodule();
    let mut ok_l = true;
    let mut ok_r = true;
    for (i, a) in m.carrier.left_mats().iter().enumerate() {
        ok_l &= m.lambda.mul(a) == lb.left_mat(i).mul(&m.lambda);
        ok_r &= m.rho.mul(a) == rb.left_mat(i).mul(&m.rho);
    }
    for (i, a) in m.carrier.right_mats().iter().enumerate() {
        ok_l &= m.lambda.mul(a) == lb.right_mat(i).mul(&m.lambda);
        ok_r &= m.rho.mul(a) == rb.right_mat(i).mul(&m.rho);
    }
    r.check("lambda is a bimodule map", ok_l, "λ does not commute with the actions");
    r.check("rho is a bimodule map", ok_r, "ρ does not commute with the actions");

    let c = &m.right;
    let cl = &m.left;
    let idc = Mat::identity(f, c.dim());
    let idcl = Mat::identity(f, cl.dim());
    let rho_raw = m.rho_raw();
    let lambda_raw = m.lambda_raw();

    let chains = (
        TensorChain::new(vec![m.carrier.clone(), c.carrier().clone(), c.carrier().clone()]),
        TensorChain::new(vec![cl.carrier().clone(), cl.carrier().clone(), m.carrier.clone()]),
        TensorChain::new(vec![cl.carrier().clone(), m.carrier.clone(), c.carrier().clone()]),
    );
    let (mcc, ccm, cmc) = match chains {
        (Ok(a), Ok(b), Ok(c)) => (a, b, c),
        _ => {
            r.fail("coassociativity", "chain construction failed", Vec::new());
            return r;
        }
    };
    let lhs = TensorChain::map(&m.rchain, &mcc, &[&idm, &c.delta_raw()]).mul(&m.rho);
    let rhs = TensorChain::map(&m.rchain, &mcc, &[&rho_raw, &idc]).mul(&m.rho);
    r.check_eq("right coassociativity", &lhs, &rhs);
    r.check_eq("right counit", &act_right_after(&m.carrier, c.epsilon()).mul(&rho_raw), &idm);

    let lhs = TensorChain::map(&m.lchain, &ccm, &[&cl.delta_raw(), &idm]).mul(&m.lambda);
    let rhs = TensorChain::map(&m.lchain, &ccm, &[&idcl, &lambda_raw]).mul(&m.lambda);
    r.check_eq("left coassociativity", &lhs, &rhs);
    r.check_eq("left counit", &act_left_after(&m.carrier, cl.epsilon()).mul(&lambda_raw), &idm);

    let lhs = TensorChain::map(&m.rchain, &cmc, &[&lambda_raw, &idc]).mul(&m.rho);
    let rhs = TensorChain::map(&m.lchain, &cmc, &[&idcl, &rho_raw]).mul(&m.lambda);
    r.check_eq("coactions commute", &lhs, &rhs);
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkernel::FinAlgebra;
    use crate::exactla::Field;

    #[test]
    fn regular_and_square_bicomodules_pass() {
        let q = Field::Rationals;
        for c in [
            Coring::grouplike(q, 3),
            Coring::trivial(&Arc::new(FinAlgebra::upper_triangular(q))),
            Coring::dual_of(&FinAlgebra::cyclic_group_algebra(q, 2)),
        ] {
            let c = Arc::new(c);
            let rep = check_bicomodule(&Bicomodule::regular(&c));
            assert!(rep.all_pass(), "{rep}");
            let rep = check_bicomodule(&Bicomodule::tensor_square(&c));
            assert!(rep.all_pass(), "{rep}");
            let rep = check_bicomodule(&Bicomodule::regular(&c).forget_left());
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn opposite_of_regular_is_regular_of_opposite() {
        let q = Field::Rationals;
        let c = Arc::new(Coring::trivial(&Arc::new(FinAlgebra::upper_triangular(q))));
        let cop = Arc::new(c.opposite());
        let m = Bicomodule::regular(&c).opposite(&cop, &cop).unwrap();
        assert!(check_bicomodule(&m).all_pass());
        assert_eq!(m.rho(), cop.delta());
    }
}
