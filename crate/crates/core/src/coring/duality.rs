use crate::algkernel::{combine, left_dual, right_dual, HomSpace};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::report::Report;

use super::bicomodule::Bicomodule;
use super::corings::{act_left_after, act_right_after};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A dual comodule together with the hom space realising its carrier.
#[derive(Clone, Debug)]
pub struct Dual {
    pub comodule: Bicomodule,
    pub hom: HomSpace,
}

/// The basic duality. For a right `C`-comodule `M` (side `Right`) returns
/// `M* = Hom_A(M_A, A_A)` as a left `C`-comodule, determined by
/// `Σ f₍₋₁₎ f₍₀₎(m) = Σ f(m₍₀₎) m₍₁₎`. For a left comodule `N` (side `Left`)
/// returns `*N = Hom_A(_AN, _AA)` as a right comodule, determined by
/// `Σ f₍₀₎(n) f₍₁₎ = Σ n₍₋₁₎ f(n₍₀₎)`. Other coactions are forgotten.
pub fn dualize(m: &Bicomodule, side: Side) -> Result<Dual> {
    match side {
        Side::Right => dual_of_right(&m.forget_left()),
        Side::Left => dual_of_left(&m.forget_right()),
    }
}

fn dual_of_right(m: &Bicomodule) -> Result<Dual> {
    let c = m.right_coring().clone();
    let f = m.field();
    let (carrier, h) = right_dual(m.carrier())?;
    let carrier = carrier.forget_right();
    let (dc, dm) = (c.dim(), m.dim());
    // Φ: C⊗_k M* → Hom_k(M, C), c⊗f ↦ (x ↦ c·f(x)).
    let mut phi_cols = Vec::with_capacity(dc * h.dim());
    for i in 0..dc {
        for hj in h.basis() {
            let mut img = Mat::zeros(f, dc, dm);
            for l in 0..dm {
                let act = combine(f, dc, c.carrier().right_mats(), &hj.col(l));
                for r in 0..dc {
                    img.set(r, l, act.get(r, i).clone());
                }
            }
            phi_cols.push(img.vectorize());
        }
    }
    let phi_raw = Mat::from_columns(f, dc * dm, &phi_cols);
    let lchain = crate::algkernel::TensorChain::pair(c.carrier(), &carrier)?;
    let phi = phi_raw.mul(lchain.section());
    let rho_raw = m.rho_raw();
    let mut cols = Vec::with_capacity(h.dim());
    for hj in h.basis() {
        // x ↦ Σ f(x₍₀₎)·x₍₁₎
        let target = act_left_after(c.carrier(), hj).mul(&rho_raw);
        let sol = phi
            .solve(&target.vectorize())?
            .ok_or_else(|| Error::Precondition("carrier is not finitely generated projective".into()))?;
        cols.push(sol);
    }
    if phi.rank() != phi.cols() {
        return Err(Error::Precondition("dual pairing is degenerate".into()));
    }
    let lambda = Mat::from_columns(f, lchain.dim(), &cols);
    let comodule = Bicomodule::left_comodule(c, carrier, lambda)?;
    Ok(Dual { comodule, hom: h })
}

fn dual_of_left(n: &Bicomodule) -> Result<Dual> {
    let c = n.left_coring().clone();
    let f = n.field();
    let (carrier, h) = left_dual(n.carrier())?;
    let carrier = carrier.forget_left();
    let (dc, dn) = (c.dim(), n.dim());
    // Φ: *N ⊗_k C → Hom_k(N, C), f⊗c ↦ (x ↦ f(x)·c).
    let mut phi_cols = Vec::with_capacity(dc * h.dim());
    for hj in h.basis() {
        for i in 0..dc {
            let mut img = Mat::zeros(f, dc, dn);
            for l in 0..dn {
                let act = combine(f, dc, c.carrier().left_mats(), &hj.col(l));
                for r in 0..dc {
                    img.set(r, l, act.get(r, i).clone());
                }
            }
            phi_cols.push(img.vectorize());
        }
    }
    let phi_raw = Mat::from_columns(f, dc * dn, &phi_cols);
    let rchain = crate::algkernel::TensorChain::pair(&carrier, c.carrier())?;
    let phi = phi_raw.mul(rchain.section());
    let lambda_raw = n.lambda_raw();
    let mut cols = Vec::with_capacity(h.dim());
    for hj in h.basis() {
        let target = act_right_after(c.carrier(), hj).mul(&lambda_raw);
        let sol = phi
            .solve(&target.vectorize())?
            .ok_or_else(|| Error::Precondition("carrier is not finitely generated projective".into()))?;
        cols.push(sol);
    }
    if phi.rank() != phi.cols() {
        return Err(Error::Precondition("dual pairing is degenerate".into()));
    }
    let rho = Mat::from_columns(f, rchain.dim(), &cols);
    let comodule = Bicomodule::right_comodule(c, carrier, rho)?;
    Ok(Dual { comodule, hom: h })
}

/// The canonical map `σ_M: M → *(M*)`, `m ↦ (f ↦ f(m))`, together with
/// the double dual.
pub fn double_dual_map(m: &Bicomodule) -> Result<(Bicomodule, Mat)> {
    let first = dualize(m, Side::Right)?;
    let second = dualize(&first.comodule, Side::Left)?;
    let f = m.field();
    let mut cols = Vec::with_capacity(m.dim());
    for l in 0..m.dim() {
        // evaluation at e_l as a map M* → A, in basis coordinates of M*
        let a_dim = m.right_coring().base().dim();
        let mut ev = Mat::zeros(f, a_dim, first.hom.dim());
        for (j, hj) in first.hom.basis().iter().enumerate() {
            for r in 0..a_dim {
                ev.set(r, j, hj.get(r, l).clone());
            }
        }
        let coords = second
            .hom
            .coordinates(&ev)
            .ok_or_else(|| Error::InvalidStructure("evaluation is not A-linear".into()))?;
        cols.push(coords);
    }
    let sigma = Mat::from_columns(f, second.hom.dim(), &cols);
    Ok((second.comodule, sigma))
}

/// `σ_M` is bijective and right colinear.
pub fn check_double_dual(m: &Bicomodule) -> Report {
    let mut r = Report::new("double dual");
    let mr = m.forget_left();
    match double_dual_map(&mr) {
        Ok((dd, sigma)) => {
            r.check(
                "sigma_M is bijective",
                sigma.rows() == sigma.cols() && sigma.determinant_is_nonzero(),
                "rank deficit",
            );
            let f = m.field();
            let c = m.right_coring();
            let lhs = dd.rho().mul(&sigma);
            let sraw = dd.rchain().projection().mul(&Mat::kron_apply(
                &[&sigma, &Mat::identity(f, c.dim())],
                mr.rchain().section(),
            ));
            let rhs = sraw.mul(mr.rho());
            r.check_eq("sigma_M is colinear", &lhs, &rhs);
        }
        Err(e) => r.fail("double dual", e.to_string(), Vec::new()),
    }
    r
}
