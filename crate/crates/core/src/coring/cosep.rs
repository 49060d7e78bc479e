use std::sync::Arc;

use crate::algkernel::{add_commutation, separability_element, Bimodule, TensorChain};
use crate::error::{Error, Result};
use crate::exactla::{
    left_tensor_coefficients, right_tensor_coefficients, sandwich_coefficients, LinearSystem, Mat,
};
use crate::report::Report;

use super::bicomodule::Bicomodule;
use super::corings::{Coring, CoringRef};
use super::hom::bicolinear_system;

#[derive(Clone, Debug)]
pub enum Coseparability {
    /// `retraction: C⊗_AC → C` is bicolinear with `retraction ∘ Δ = id`.
    Yes { retraction: Mat, cointegral: Mat },
    No,
}

impl Coseparability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Coseparability::Yes { .. })
    }
}

/// Solves for a bicolinear retraction of `Δ`; exact in both directions.
pub fn coseparability(c: &CoringRef) -> Result<Coseparability> {
    let square = Bicomodule::tensor_square(c);
    let reg = Bicomodule::regular(c);
    let mut sys = bicolinear_system(&square, &reg)?;
    let f = c.field();
    let d = c.dim();
    let coeffs = sandwich_coefficients(&Mat::identity(f, d), c.delta());
    sys.equal(&coeffs, &Mat::identity(f, d).vectorize());
    let Some(sol) = sys.solve()? else {
        return Ok(Coseparability::No);
    };
    let retraction = Mat::from_vector(f, d, square.dim(), &sol);
    let cointegral = match find_cointegral(c)? {
        Some(delta) => delta,
        None => {
            return Err(Error::InvalidStructure(
                "retraction exists but the cointegral system is infeasible".into(),
            ))
        }
    };
    Ok(Coseparability::Yes { retraction, cointegral })
}

/// Equations for `δ: C⊗_AC → A`: bimodule map, `δΔ = ε`, and
/// `(C⊗δ)(Δ⊗C) = (δ⊗C)(C⊗Δ)`.
pub fn cointegral_system(c: &Coring) -> Result<LinearSystem> {
    let f = c.field();
    let a = c.base();
    let cc = c.cc();
    let (t, s, d) = (a.dim(), cc.dim(), c.dim());
    let reg = Bimodule::regular(a);
    let mut sys = LinearSystem::new(f, t * s);
    add_commutation(&mut sys, cc.bimodule().left_mats(), reg.left_mats());
    add_commutation(&mut sys, cc.bimodule().right_mats(), reg.right_mats());
    sys.equal(&sandwich_coefficients(&Mat::identity(f, t), c.delta()), &c.epsilon().vectorize());

    let idc = Mat::identity(f, d);
    let draw = c.delta_raw();
    // W = (C⊗π)(Δ⊗C)σ and W' = (π⊗C)(C⊗Δ)σ, both into C⊗(C⊗_AC) resp. (C⊗_AC)⊗C.
    let w = Mat::kron_apply(&[&idc, cc.projection()], &Mat::kron_apply(&[&draw, &idc], cc.section()));
    let w2 = Mat::kron_apply(&[cc.projection(), &idc], &Mat::kron_apply(&[&idc, &draw], cc.section()));
    let ract = c.carrier().right_action_map();
    let lact = c.carrier().left_action_map();
    let lhs = right_tensor_coefficients(&ract, &w, t, s, d);
    let rhs = left_tensor_coefficients(&lact, &w2, t, s, d);
    sys.homogeneous(&lhs.sub(&rhs));
    Ok(sys)
}

pub fn find_cointegral(c: &Coring) -> Result<Option<Mat>> {
    let sys = cointegral_system(c)?;
    let f = c.field();
    Ok(sys
        .solve()?
        .map(|v| Mat::from_vector(f, c.base().dim(), c.cc().dim(), &v)))
}

/// Whether `delta` satisfies every cointegral equation.
pub fn is_cointegral(c: &Coring, delta: &Mat) -> Result<bool> {
    let sys = cointegral_system(c)?;
    let particular = sys.solve()?;
    let Some(p) = particular else {
        return Ok(false);
    };
    if delta.shape() != (c.base().dim(), c.cc().dim()) {
        return Ok(false);
    }
    let diff: Vec<_> = delta.vectorize().iter().zip(&p).map(|(x, y)| c.field().sub(x, y)).collect();
    Ok(sys.kernel().contains(&diff))
}

/// The retraction `(C⊗δ)(Δ⊗C)` induced by a cointegral.
pub fn retraction_from_cointegral(c: &Coring, delta: &Mat) -> Mat {
    let f = c.field();
    let idc = Mat::identity(f, c.dim());
    let cc = c.cc();
    let dp = delta.mul(cc.projection());
    let raw = Mat::kron_apply(&[&c.delta_raw(), &idc], cc.section());
    c.carrier().right_action_map().mul(&Mat::kron_apply(&[&idc, &dp], &raw))
}

#[derive(Clone, Debug)]
pub enum Splitting {
    /// `retraction: M⊗_AC → M` is colinear with `retraction ∘ ρ_M = id`.
    Yes { retraction: Mat },
    No,
}

impl Splitting {
    pub fn is_yes(&self) -> bool {
        matches!(self, Splitting::Yes { .. })
    }
}

/// Which hypothesis made the splitting test applicable.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplittingBasis {
    FieldBase,
    SeparableBase,
    CoseparableCoring,
}

/// Relative injectivity of the right comodule `M` (its left coaction is
/// ignored): a colinear retraction of `ρ_M`.
pub fn injectivity_splitting(m: &Bicomodule) -> Result<(Splitting, SplittingBasis)> {
    let c = m.right_coring();
    let a = c.base();
    let basis = if a.dim() == 1 {
        SplittingBasis::FieldBase
    } else if separability_element(a).is_some() {
        SplittingBasis::SeparableBase
    } else if coseparability(c)?.is_yes() {
        SplittingBasis::CoseparableCoring
    } else {
        return Err(Error::NotApplicable(
            "base algebra is not separable and the coring is not coseparable".into(),
        ));
    };
    let mr = m.forget_left();
    let f = m.field();
    let mc = mr.rchain();
    let idc = Mat::identity(f, c.dim());
    let idm = Mat::identity(f, m.dim());
    let carrier = mc.bimodule().clone();
    let outer = TensorChain::pair(&carrier, c.carrier())?;
    let inner = Mat::kron_apply(&[&idm, &c.delta_raw()], mc.section());
    let rho_mc = outer.projection().mul(&Mat::kron_apply(&[mc.projection(), &idc], &inner));
    let mc_comod = Bicomodule::right_comodule(c.clone(), carrier, rho_mc)?;
    let mut sys = bicolinear_system(&mc_comod, &mr)?;
    let coeffs = sandwich_coefficients(&idm, mr.rho());
    sys.equal(&coeffs, &idm.vectorize());
    Ok(match sys.solve()? {
        Some(v) => (
            Splitting::Yes {
                retraction: Mat::from_vector(f, m.dim(), mc.dim(), &v),
            },
            basis,
        ),
        None => (Splitting::No, basis),
    })
}

pub fn coseparability_report(c: &CoringRef) -> Report {
    let mut r = Report::new(format!("coseparability of {}", c.name()));
    match coseparability(c) {
        Ok(Coseparability::Yes { retraction, cointegral }) => {
            let square = Bicomodule::tensor_square(c);
            let reg = Bicomodule::regular(c);
            r.check(
                "retraction is bicolinear",
                super::hom::is_bicolinear(&square, &reg, &retraction),
                "re-check failed",
            );
            r.check_eq("retraction ∘ Δ = id", &retraction.mul(c.delta()), &Mat::identity(c.field(), c.dim()));
            r.check("cointegral equations hold", is_cointegral(c, &cointegral).unwrap_or(false), "re-check failed");
        }
        Ok(Coseparability::No) => r.fail("bicolinear retraction of Δ", "affine system is infeasible", Vec::new()),
        Err(e) => r.fail("bicolinear retraction of Δ", e.to_string(), Vec::new()),
    }
    r
}

/// `Arc` helper for callers holding a plain coring.
pub fn coseparable(c: &Coring) -> Result<bool> {
    Ok(coseparability(&Arc::new(c.clone()))?.is_yes())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algkernel::FinAlgebra;
    use crate::exactla::Field;

    #[test]
    fn trivial_and_grouplike_are_coseparable() {
        let q = Field::Rationals;
        for c in [
            Coring::trivial(&Arc::new(FinAlgebra::upper_triangular(q))),
            Coring::grouplike(q, 3),
            Coring::dual_of(&FinAlgebra::cyclic_group_algebra(q, 2)),
        ] {
            let c = Arc::new(c);
            let rep = coseparability_report(&c);
            assert!(rep.all_pass(), "{rep}");
        }
    }

    #[test]
    fn dual_numbers_dual_is_not_coseparable() {
        let q = Field::Rationals;
        let c = Arc::new(Coring::dual_of(&FinAlgebra::dual_numbers(q)));
        assert!(!coseparability(&c).unwrap().is_yes());
        assert!(find_cointegral(&c).unwrap().is_none());
    }

    #[test]
    fn splitting_examples() {
        let q = Field::Rationals;
        let c = Arc::new(Coring::grouplike(q, 3));
        let m = Bicomodule::regular(&c).forget_left();
        assert!(injectivity_splitting(&m).unwrap().0.is_yes());

        let d = Arc::new(Coring::dual_of(&FinAlgebra::dual_numbers(q)));
        // the simple comodule k spanned by the grouplike dual of 1
        let carrier = Bimodule::vector_space(q, 1);
        let mut rho_raw = Mat::zeros(q, 2, 1);
        rho_raw.set(0, 0, q.one());
        let simple = Bicomodule::from_raw(
            Arc::new(Coring::ground(q)),
            d.clone(),
            carrier,
            &Mat::identity(q, 1),
            &rho_raw,
        )
        .unwrap();
        assert!(super::super::check_bicomodule(&simple).all_pass());
        assert!(!injectivity_splitting(&simple).unwrap().0.is_yes());
    }
}
