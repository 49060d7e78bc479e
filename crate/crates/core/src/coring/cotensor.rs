use crate::algkernel::{Bimodule, TensorChain};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::report::Report;

use super::bicomodule::Bicomodule;
use super::corings::{act_left_after, act_right_after, same_coring};

/// `M□_CN = ker(ρ_M⊗N − M⊗λ_N) ⊆ M⊗_AN`, with its induced bicomodule structure.
#[derive(Clone, Debug)]
pub struct CotensorSpace {
    pub left: Bicomodule,
    pub right: Bicomodule,
    /// The chain `(M, N)`; the subspace lives in its coordinates.
    pub chain: TensorChain,
    pub omega: Mat,
    pub subspace: Subspace,
    /// Inclusion `M□N → M⊗_AN` (columns are the echelon basis).
    pub inclusion: Mat,
    /// A left inverse of the inclusion.
    pub retraction: Mat,
    pub bicomodule: Bicomodule,
}

impl CotensorSpace {
    pub fn dim(&self) -> usize {
        self.subspace.dim()
    }
}

/// Factors `x: S → target` through an injective `j: T → target`, returning
/// `y` with `j y = x`, or an error if `x` leaves the image of `j`.
pub(crate) fn factor_through(j: &Mat, x: &Mat, what: &str) -> Result<Mat> {
    if j.cols() == 0 {
        if x.is_zero() {
            return Ok(Mat::zeros(x.field(), 0, x.cols()));
        }
        return Err(Error::InvalidStructure(format!("{what}: map does not factor")));
    }
    let jinv = j
        .left_inverse()
        .ok_or_else(|| Error::InvalidStructure(format!("{what}: comparison map is not injective")))?;
    let y = jinv.mul(x);
    if j.mul(&y) != *x {
        return Err(Error::InvalidStructure(format!("{what}: map does not factor")));
    }
    Ok(y)
}

/// `ω_{M,N}: M⊗_AN → M⊗_AC⊗_AN`.
pub fn omega_map(m: &Bicomodule, n: &Bicomodule, mn: &TensorChain, mcn: &TensorChain) -> Mat {
    let f = m.field();
    let idm = Mat::identity(f, m.dim());
    let idn = Mat::identity(f, n.dim());
    let a = TensorChain::map(mn, mcn, &[&m.rho_raw(), &idn]);
    let b = TensorChain::map(mn, mcn, &[&idm, &n.lambda_raw()]);
    a.sub(&b)
}

pub fn cotensor(m: &Bicomodule, n: &Bicomodule) -> Result<CotensorSpace> {
    if !same_coring(m.right_coring(), n.left_coring()) {
        return Err(Error::CoringMismatch("cotensor"));
    }
    let f = m.field();
    let c = m.right_coring();
    let cl = m.left_coring();
    let cr = n.right_coring();
    let mn = TensorChain::pair(m.carrier(), n.carrier())?;
    let mcn = TensorChain::new(vec![m.carrier().clone(), c.carrier().clone(), n.carrier().clone()])?;
    let omega = omega_map(m, n, &mn, &mcn);
    let subspace = omega.kernel();
    let inclusion = subspace.inclusion();
    let k = subspace.dim();
    let retraction = if k == 0 {
        Mat::zeros(f, 0, mn.dim())
    } else {
        inclusion
            .left_inverse()
            .ok_or_else(|| Error::InvalidStructure("cotensor inclusion".into()))?
    };

    let outer = mn.bimodule();
    let restrict = |op: &Mat| -> Result<Mat> { factor_through(&inclusion, &op.mul(&inclusion), "cotensor action") };
    let left = outer.left_mats().iter().map(restrict).collect::<Result<Vec<_>>>()?;
    let right = outer.right_mats().iter().map(restrict).collect::<Result<Vec<_>>>()?;
    let carrier = Bimodule::new(outer.left_alg().clone(), outer.right_alg().clone(), k, left, right)?;

    let idm = Mat::identity(f, m.dim());
    let idn = Mat::identity(f, n.dim());
    let idcl = Mat::identity(f, cl.dim());
    let idcr = Mat::identity(f, cr.dim());

    // λ on M□N through C'⊗(M□N) → C'⊗M⊗N.
    let cmn = TensorChain::new(vec![cl.carrier().clone(), m.carrier().clone(), n.carrier().clone()])?;
    let ck = TensorChain::pair(cl.carrier(), &carrier)?;
    let incl_raw = mn.section().mul(&inclusion);
    let j_left = TensorChain::map(&ck, &cmn, &[&idcl, &incl_raw]);
    let lam_ext = TensorChain::map(&mn, &cmn, &[&m.lambda_raw(), &idn]).mul(&inclusion);
    let lambda = factor_through(&j_left, &lam_ext, "cotensor left coaction")?;

    let mnc = TensorChain::new(vec![m.carrier().clone(), n.carrier().clone(), cr.carrier().clone()])?;
    let kc = TensorChain::pair(&carrier, cr.carrier())?;
    let j_right = TensorChain::map(&kc, &mnc, &[&incl_raw, &idcr]);
    let rho_ext = TensorChain::map(&mn, &mnc, &[&idm, &n.rho_raw()]).mul(&inclusion);
    let rho = factor_through(&j_right, &rho_ext, "cotensor right coaction")?;

    let bicomodule = Bicomodule::new(cl.clone(), cr.clone(), carrier, lambda, rho)?;
    Ok(CotensorSpace {
        left: m.clone(),
        right: n.clone(),
        chain: mn,
        omega,
        subspace,
        inclusion,
        retraction,
        bicomodule,
    })
}

/// The counit isomorphism `C□_CN ≅ N` with its inverse `g = ι⁺λ_N`.
pub struct CounitIso {
    pub space: CotensorSpace,
    /// `M□N → N` (or `→ M` on the right).
    pub forward: Mat,
    pub inverse: Mat,
}

pub fn left_counit_iso(n: &Bicomodule) -> Result<CounitIso> {
    let c = n.left_coring();
    let reg = Bicomodule::regular(c);
    let space = cotensor(&reg, n)?;
    let eps_act = act_left_after(n.carrier(), c.epsilon());
    let forward = eps_act.mul(&space.chain.section().mul(&space.inclusion));
    let inverse = factor_through(&space.inclusion, n.lambda(), "left counit inverse")?;
    Ok(CounitIso { space, forward, inverse })
}

pub fn right_counit_iso(m: &Bicomodule) -> Result<CounitIso> {
    let c = m.right_coring();
    let reg = Bicomodule::regular(c);
    let space = cotensor(m, &reg)?;
    let eps_act = act_right_after(m.carrier(), c.epsilon());
    let forward = eps_act.mul(&space.chain.section().mul(&space.inclusion));
    let inverse = factor_through(&space.inclusion, m.rho(), "right counit inverse")?;
    Ok(CounitIso { space, forward, inverse })
}

/// Checks that the counit maps are mutually inverse bicomodule isomorphisms.
pub fn check_counit_isos(m: &Bicomodule) -> Report {
    let mut r = Report::new("counit isomorphisms");
    for (side, iso) in [("left", left_counit_iso(m)), ("right", right_counit_iso(m))] {
        match iso {
            Ok(iso) => {
                let f = m.field();
                r.check_eq(format!("{side}: forward ∘ inverse = id"), &iso.forward.mul(&iso.inverse), &Mat::identity(f, m.dim()));
                r.check_eq(
                    format!("{side}: inverse ∘ forward = id"),
                    &iso.inverse.mul(&iso.forward),
                    &Mat::identity(f, iso.space.dim()),
                );
            }
            Err(e) => r.fail(format!("{side} counit iso"), e.to_string(), Vec::new()),
        }
    }
    r
}

pub fn check_cotensor(s: &CotensorSpace) -> Report {
    let mut r = Report::new("cotensor");
    r.check_zero("omega vanishes on the subspace", &s.omega.mul(&s.inclusion));
    r.merge("induced", super::bicomodule::check_bicomodule(&s.bicomodule));
    r
}
