use std::sync::Arc;

use crate::algkernel::{check_algebra_map, Bimodule, TensorChain};
use crate::coring::{check_bicomodule, Bicomodule, CoringRef};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::report::Report;

/// A morphism of corings `(φ, ρ): C → D` from an `A`-coring to a `B`-coring.
#[derive(Clone, Debug)]
pub struct CoringMorphism {
    pub source: CoringRef,
    pub target: CoringRef,
    /// Algebra map `A → B`, a `dim B × dim A` matrix.
    pub rho: Mat,
    /// `C → D`, a `dim D × dim C` matrix.
    pub phi: Mat,
}

impl CoringMorphism {
    pub fn new(source: CoringRef, target: CoringRef, rho: Mat, phi: Mat) -> Result<Self> {
        let (a, b) = (source.base().dim(), target.base().dim());
        if rho.shape() != (b, a) {
            return Err(Error::DimensionMismatch {
                op: "coring morphism rho",
                expected: b * a,
                got: rho.rows() * rho.cols(),
            });
        }
        if phi.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch {
                op: "coring morphism phi",
                expected: target.dim() * source.dim(),
                got: phi.rows() * phi.cols(),
            });
        }
        Ok(CoringMorphism { source, target, rho, phi })
    }

    pub fn identity(c: &CoringRef) -> Self {
        let f = c.field();
        CoringMorphism {
            source: c.clone(),
            target: c.clone(),
            rho: Mat::identity(f, c.base().dim()),
            phi: Mat::identity(f, c.dim()),
        }
    }

    /// `(φ, ρ): C^op → D^op`, whose induction is `B⊗_A−` on left comodules.
    pub fn opposite(&self) -> Self {
        CoringMorphism {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            rho: self.rho.clone(),
            phi: self.phi.clone(),
        }
    }

    /// `D` as an `A`-bimodule through `ρ`.
    fn target_over_source(&self) -> Result<Bimodule> {
        let a = self.source.base();
        self.target
            .carrier()
            .restrict(Some((a, &self.rho)), Some((a, &self.rho)))
    }
}

/// Checks `ρ` is an algebra map, `φ` an `A`-bimodule map, `ε_Dφ = ρε_C`
/// and `Δ_Dφ = ω_{D,D}(φ⊗_Aφ)Δ_C`.
pub fn check_coring_morphism(m: &CoringMorphism) -> Report {
    let mut r = Report::new("coring morphism");
    let (c, d) = (&m.source, &m.target);
    r.merge("rho", check_algebra_map(c.base(), d.base(), &m.rho));
    if !r.all_pass() {
        return r;
    }
    match m.target_over_source() {
        Ok(dres) => {
            r.check("phi is an A-bimodule map", c.carrier().is_bimodule_map(&dres, &m.phi), "commutation fails");
        }
        Err(e) => r.fail("phi is an A-bimodule map", e.to_string(), Vec::new()),
    }
    r.check_eq("counit", &d.epsilon().mul(&m.phi), &m.rho.mul(c.epsilon()));
    let lhs = d.delta().mul(&m.phi);
    let rhs = TensorChain::map(c.cc(), d.cc(), &[&m.phi, &m.phi]).mul(c.delta());
    r.check_eq("comultiplication", &lhs, &rhs);
    r
}

/// The induction bicomodules `X = C⊗_AB ∈ ᶜM^D` and `Λ = B⊗_AC ∈ ᴰM^C`.
///
/// `ρ_X(c⊗b) = Σ c₍₁₎⊗1⊗φ(c₍₂₎)b`, `λ_X = Δ⊗B`, `λ_Λ(b⊗c) = Σ bφ(c₍₁₎)⊗1⊗c₍₂₎`
/// and `ρ_Λ = B⊗Δ`.
pub fn induction_data(m: &CoringMorphism) -> Result<(Bicomodule, Bicomodule)> {
    let rep = check_coring_morphism(m);
    if !rep.all_pass() {
        return Err(Error::InvalidInput(format!("invalid coring morphism:\n{rep}")));
    }
    let (c, d) = (&m.source, &m.target);
    let f = c.field();
    let a = c.base();
    let b = d.base();
    let breg = Bimodule::regular(b);
    let b_ab = breg.restrict(Some((a, &m.rho)), None)?;
    let b_ba = breg.restrict(None, Some((a, &m.rho)))?;
    let (dc, db, dd) = (c.dim(), b.dim(), d.dim());
    let idc = Mat::identity(f, dc);
    let idb = Mat::identity(f, db);
    let idd = Mat::identity(f, dd);
    let draw = c.delta_raw();
    let unit_b = b.unit_map();

    let xc = TensorChain::pair(c.carrier(), &b_ab)?;
    let x_carrier = xc.bimodule().clone();
    let split = Mat::kron_apply(&[&draw, &idb], xc.section());
    let x_lambda = Mat::kron_apply(&[&idc, xc.projection()], &split);
    // c⊗b ↦ 1⊗φ(c)b, raw C⊗B → B⊗D
    let g = unit_b.kron(&d.carrier().right_action_map().mul(&m.phi.kron(&idb)));
    let x_rho = Mat::kron_apply(&[xc.projection(), &idd], &Mat::kron_apply(&[&idc, &g], &split));
    let x = Bicomodule::from_raw(c.clone(), d.clone(), x_carrier, &x_lambda, &x_rho)?;

    let lc = TensorChain::pair(&b_ba, c.carrier())?;
    let l_carrier = lc.bimodule().clone();
    let split = Mat::kron_apply(&[&idb, &draw], lc.section());
    // b⊗c ↦ bφ(c)⊗1, raw B⊗C → D⊗B
    let h = d.carrier().left_action_map().mul(&idb.kron(&m.phi)).kron(&unit_b);
    let l_lambda = Mat::kron_apply(&[&idd, lc.projection()], &Mat::kron_apply(&[&h, &idc], &split));
    let l_rho = Mat::kron_apply(&[lc.projection(), &idc], &split);
    let lambda = Bicomodule::from_raw(d.clone(), c.clone(), l_carrier, &l_lambda, &l_rho)?;

    for (name, bc) in [("C⊗_AB", &x), ("B⊗_AC", &lambda)] {
        let rep = check_bicomodule(bc);
        if !rep.all_pass() {
            return Err(Error::InvalidStructure(format!("{name} is not a bicomodule:\n{rep}")));
        }
    }
    Ok((x, lambda))
}

/// The morphism between trivial corings induced by an algebra map.
pub fn trivial_morphism(a: &crate::algkernel::AlgRef, b: &crate::algkernel::AlgRef, rho: Mat) -> Result<CoringMorphism> {
    let c = Arc::new(crate::coring::Coring::trivial(a));
    let d = Arc::new(crate::coring::Coring::trivial(b));
    let phi = rho.clone();
    CoringMorphism::new(c, d, rho, phi)
}
