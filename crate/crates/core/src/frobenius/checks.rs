use std::sync::Arc;

use crate::algkernel::{
    check_algebra, fgp_left, hom_space, invertible_element_exists, left_dual, Bimodule, FinAlgebra, HomSpace,
    Invertibility, Linearity,
};
use crate::coring::{Bicomodule, Coring, CoringRef};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::report::{Report, Status};

use super::morphism::{induction_data, CoringMorphism};
use super::search::{search_frobenius_system, Budget, FrobeniusReport, Verdict};

/// Whether induction `−⊗_AB: M^C → M^D` along `m` is a Frobenius functor,
/// via the pair `(−□_C(C⊗_AB), −□_D(B⊗_AC))`.
pub fn frobenius_extension_check(m: &CoringMorphism, budget: &Budget) -> Result<FrobeniusReport> {
    let (x, lambda) = induction_data(m)?;
    let mut rep = search_frobenius_system(&x, &lambda, budget)?;
    rep.checks.tag("induction −⊗_AB ≅ −□_C(C⊗_AB)");
    Ok(rep)
}

/// The dual ring `R = (*C)^op` of an `A`-coring, with `*C = Hom_A(_AC, _AA)`
/// and product `(r·r')(c) = r'(c₍₁₎ r(c₍₂₎))`.
#[derive(Clone, Debug)]
pub struct DualRing {
    pub ring: Arc<FinAlgebra>,
    /// `*C` as maps `C → A`; coordinates of `R` refer to this basis.
    pub maps: HomSpace,
    /// `C` as an `(A, R)`-bimodule with `c·r = c₍₁₎ r(c₍₂₎)`.
    pub coring_module: Bimodule,
    /// `R` as an `(A, R)`-bimodule with `(a·r)(c) = r(c a)`.
    pub ring_module: Bimodule,
}

/// `c ↦ c₍₁₎ r(c₍₂₎)` as a matrix on `C`.
fn right_action(c: &Coring, r: &Mat) -> Mat {
    let idc = Mat::identity(c.field(), c.dim());
    let split = c.cc().section().mul(c.delta());
    c.carrier().right_action_map().mul(&Mat::kron_apply(&[&idc, r], &split))
}

pub fn dual_ring(c: &Coring) -> Result<DualRing> {
    let f = c.field();
    let (_, maps) = left_dual(c.carrier())?;
    let n = maps.dim();
    let acts: Vec<Mat> = maps.basis().iter().map(|r| right_action(c, r)).collect();
    let coords = |m: &Mat| {
        maps.coordinates(m)
            .ok_or_else(|| Error::InvalidStructure("dual ring product leaves *C".into()))
    };
    let mut cols = Vec::with_capacity(n * n);
    for act in &acts {
        for rj in maps.basis() {
            cols.push(coords(&rj.mul(act))?);
        }
    }
    let mult = Mat::from_columns(f, n, &cols);
    let unit = coords(c.epsilon())?;
    let ring = Arc::new(FinAlgebra::new(format!("(*{})^op", c.name()), f, mult, unit)?);
    let rep = check_algebra(&ring);
    if !rep.all_pass() {
        return Err(Error::InvalidStructure(format!("dual ring is not an algebra:\n{rep}")));
    }
    let a = c.base().clone();
    let coring_module = Bimodule::new(a.clone(), ring.clone(), c.dim(), c.carrier().left_mats().to_vec(), acts)?;
    let left = (0..a.dim())
        .map(|i| maps.action_matrix(|r| r.mul(c.carrier().right_mat(i))))
        .collect::<Result<Vec<_>>>()?;
    let right = maps
        .basis()
        .iter()
        .map(|rj| maps.action_matrix(|r| rj.mul(&right_action(c, r))))
        .collect::<Result<Vec<_>>>()?;
    let ring_module = Bimodule::new(a, ring.clone(), n, left, right)?;
    Ok(DualRing {
        ring,
        maps,
        coring_module,
        ring_module,
    })
}

/// Decides whether `M^C → M_A` is Frobenius through the dual ring: `_AC`
/// finitely generated projective and `C ≅ R` as `(A, R)`-bimodules.
pub fn dual_ring_route(c: &Coring, budget: &Budget, log: &mut Report) -> Result<Status> {
    if fgp_left(c.carrier())?.is_none() {
        log.fail("_AC finitely generated projective", "dual basis equations are infeasible", Vec::new());
        return Ok(Status::Fail);
    }
    log.pass("_AC finitely generated projective");
    let dr = dual_ring(c)?;
    log.merge("dual ring", check_algebra(&dr.ring));
    let h = hom_space(&dr.coring_module, &dr.ring_module, Linearity::Both)?;
    Ok(match invertible_element_exists(&h, budget.grid) {
        Invertibility::Yes { .. } => {
            log.pass("C ≅ R as (A,R)-bimodules");
            Status::Pass
        }
        Invertibility::No { evaluations } => {
            log.fail(
                "C ≅ R as (A,R)-bimodules",
                format!("generic determinant ≡ 0 (grid exhausted, {evaluations} points)"),
                Vec::new(),
            );
            Status::Fail
        }
        Invertibility::Undecided { reason } => {
            log.undecided("C ≅ R as (A,R)-bimodules", reason);
            Status::Undecided
        }
    })
}

/// `C ∈ ᴬM^C` and `C ∈ ᶜM^A`, the bicomodules of the forgetful functor.
pub fn forgetful_pair(c: &CoringRef) -> Result<(Bicomodule, Bicomodule)> {
    let f = c.field();
    let a = c.base();
    let t = Arc::new(Coring::trivial(a));
    let idc = Mat::identity(f, c.dim());
    let unit = a.unit_map();
    let x = Bicomodule::from_raw(t.clone(), c.clone(), c.carrier().clone(), &unit.kron(&idc), &c.delta_raw())?;
    let lambda = Bicomodule::from_raw(c.clone(), t, c.carrier().clone(), &c.delta_raw(), &idc.kron(&unit))?;
    Ok((x, lambda))
}

/// Whether the forgetful functor `M^C → M_A` is Frobenius, decided by the
/// dual ring and cross-checked by a search for `η: A → C` and
/// `π: C⊗_AC → C` with `π(C⊗η) = C = π(η⊗C)`.
pub fn frobenius_coring_check(c: &CoringRef, budget: &Budget) -> Result<FrobeniusReport> {
    let mut checks = Report::new(format!("Frobenius coring {}", c.name()));
    let mut ring_log = Report::new("dual ring route");
    let ring = dual_ring_route(c, budget, &mut ring_log)?;
    let ring_reason = ring_log.failures().next().map(|i| i.detail.clone());
    checks.merge("dual ring", ring_log);
    let (x, lambda) = forgetful_pair(c)?;
    let sys = search_frobenius_system(&x, &lambda, budget)?;
    checks.merge("system", sys.checks);
    let found = sys.verdict.is_frobenius();
    let agree = match (ring, &sys.verdict) {
        (Status::Pass, Verdict::Frobenius(_)) | (Status::Fail, Verdict::NotFrobenius(_) | Verdict::Undecided(_)) => {
            Status::Pass
        }
        (Status::Pass, Verdict::NotFrobenius(_)) | (Status::Fail, Verdict::Frobenius(_)) => Status::Fail,
        _ => Status::Undecided,
    };
    checks.record(
        "routes agree",
        agree,
        format!("dual ring: {ring:?}, system search: {}", sys.verdict.label()),
        Vec::new(),
    );
    if agree == Status::Fail {
        return Err(Error::InvalidStructure(format!(
            "the dual ring and system routes disagree for {}",
            c.name()
        )));
    }
    let verdict = match (ring, sys.verdict) {
        (_, v @ Verdict::Frobenius(_)) => v,
        (Status::Fail, Verdict::NotFrobenius(r)) => {
            Verdict::NotFrobenius(format!("{}; system route: {r}", ring_reason.unwrap_or_default()))
        }
        (_, v @ Verdict::NotFrobenius(_)) => v,
        (Status::Fail, _) => Verdict::NotFrobenius(
            ring_reason.unwrap_or_else(|| "C is not isomorphic to its dual ring as (A,R)-bimodules".into()),
        ),
        (Status::Pass, Verdict::Undecided(r)) => Verdict::Undecided(format!("dual ring route says yes; {r}")),
        (_, v) => v,
    };
    debug_assert!(found == verdict.is_frobenius());
    Ok(FrobeniusReport { verdict, checks })
}
