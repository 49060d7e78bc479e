use std::collections::BTreeMap;

use crate::algkernel::{linearity_system, Bimodule, FinAlgebra, HomSpace, Linearity, TensorChain};
use crate::coring::factor_through;
use crate::error::{Error, Result};
use crate::exactla::{Mat, Scalar, Subspace};
use crate::report::Report;

use super::algebra::same_graded;
use super::module::BigradedBimodule;

/// `M⊗̂_AN`, the span of `m_x⊗_A ₓn` inside `M⊗_AN`.
#[derive(Clone, Debug)]
pub struct HatTensor {
    /// The chain `(M, N)`; the subspace lives in its coordinates.
    pub chain: TensorChain,
    pub subspace: Subspace,
    /// Columns are the homogeneous basis of `M⊗̂N` in chain coordinates.
    pub inclusion: Mat,
    pub module: BigradedBimodule,
}

/// Restricts every action of `outer` to the image of `inclusion`.
pub(crate) fn restrict_actions(outer: &Bimodule, inclusion: &Mat) -> Result<Bimodule> {
    let restrict = |op: &Mat| factor_through(inclusion, &op.mul(inclusion), "restricted action");
    let left = outer.left_mats().iter().map(restrict).collect::<Result<Vec<_>>>()?;
    let right = outer.right_mats().iter().map(restrict).collect::<Result<Vec<_>>>()?;
    Bimodule::new(outer.left_alg().clone(), outer.right_alg().clone(), inclusion.cols(), left, right)
}

/// Homogeneous spanning vectors grouped by degree, turned into a basis sorted
/// by pivot column. Errors unless the components are independent.
pub(crate) fn homogeneous_basis(
    field: crate::exactla::Field,
    ambient: usize,
    groups: BTreeMap<(usize, usize), Vec<Vec<Scalar>>>,
) -> Result<(Subspace, Mat, Vec<(usize, usize)>)> {
    let mut all = Vec::new();
    let mut tagged = Vec::new();
    for (key, vecs) in groups {
        let s = Subspace::from_spanning(field, ambient, vecs);
        for (row, &p) in s.basis_rows().iter().zip(s.pivots()) {
            tagged.push((p, key, row.clone()));
            all.push(row.clone());
        }
    }
    let total = Subspace::from_spanning(field, ambient, all);
    if total.dim() != tagged.len() {
        return Err(Error::InvalidStructure("homogeneous components are not independent".into()));
    }
    tagged.sort_by_key(|(p, _, _)| *p);
    let cols: Vec<Vec<Scalar>> = tagged.iter().map(|(_, _, v)| v.clone()).collect();
    let degrees = tagged.iter().map(|(_, d, _)| *d).collect();
    Ok((total, Mat::from_columns(field, ambient, &cols), degrees))
}

pub fn hat_tensor(m: &BigradedBimodule, n: &BigradedBimodule) -> Result<HatTensor> {
    if !same_graded(m.right(), n.left()) {
        return Err(Error::CoringMismatch("hat tensor"));
    }
    let f = m.carrier().field();
    let chain = TensorChain::pair(m.carrier(), n.carrier())?;
    let dn = n.dim();
    let mut groups: BTreeMap<(usize, usize), Vec<Vec<Scalar>>> = BTreeMap::new();
    for a in 0..m.dim() {
        let (xl, x) = m.degree(a);
        for b in 0..dn {
            let (y, xr) = n.degree(b);
            if x == y {
                groups.entry((xl, xr)).or_default().push(chain.projection().col(a * dn + b));
            }
        }
    }
    let (subspace, inclusion, degrees) = homogeneous_basis(f, chain.dim(), groups)?;
    let carrier = restrict_actions(chain.bimodule(), &inclusion)?;
    let module = BigradedBimodule::new(m.left().clone(), n.right().clone(), carrier, degrees)?;
    Ok(HatTensor {
        chain,
        subspace,
        inclusion,
        module,
    })
}

/// `H(P_{A'}, N) = ⊕_x Hom_gr(ₓP, N)` as an `X`-graded right `A`-module with
/// `(f·a)(p) = f(a·p)`. Maps are `dim N × dim P` matrices.
#[derive(Clone, Debug)]
pub struct GradedHom {
    pub space: HomSpace,
    pub module: BigradedBimodule,
}

pub fn graded_hom(p: &BigradedBimodule, n: &BigradedBimodule) -> Result<GradedHom> {
    if !same_graded(p.right(), n.right()) {
        return Err(Error::CoringMismatch("graded hom"));
    }
    let f = p.carrier().field();
    let (dp, dn) = (p.dim(), n.dim());
    let base = linearity_system(&p.carrier().forget_left(), &n.carrier().forget_left(), Linearity::Right)?;
    let mut rows = Vec::new();
    for x in 0..p.left().set_len() {
        let mut sys = base.clone();
        for r in 0..dn {
            for c in 0..dp {
                if p.degree(c).0 != x || p.degree(c).1 != n.degree(r).1 {
                    sys.fix(r * dp + c, f.zero());
                }
            }
        }
        rows.extend(sys.kernel().basis_rows().iter().cloned());
    }
    let space = HomSpace::from_subspace(dn, dp, Subspace::from_spanning(f, dn * dp, rows));
    let degrees = space
        .subspace()
        .pivots()
        .iter()
        .map(|&i| p.degree(i % dp).0)
        .collect();
    let a = p.carrier().left_alg();
    let right = (0..a.dim())
        .map(|i| space.action_matrix(|h| h.mul(p.carrier().left_mat(i))))
        .collect::<Result<Vec<_>>>()?;
    let k = std::sync::Arc::new(FinAlgebra::ground(f));
    let carrier = Bimodule::new(k, a.clone(), space.dim(), vec![Mat::identity(f, space.dim())], right)?;
    let module = BigradedBimodule::right_graded(p.left().clone(), carrier, degrees)?;
    Ok(GradedHom { space, module })
}

/// `η_M: M → H(P, M⊗̂P)`, `η(m)(p) = Σ_x m_x⊗ₓp`.
#[derive(Clone, Debug)]
pub struct MeniniUnit {
    pub hat: HatTensor,
    pub hom: GradedHom,
    pub eta: Mat,
}

pub fn menini_unit(p: &BigradedBimodule, m: &BigradedBimodule) -> Result<MeniniUnit> {
    let f = p.carrier().field();
    let hat = hat_tensor(m, p)?;
    let hom = graded_hom(p, &hat.module)?;
    let (dm, dp) = (m.dim(), p.dim());
    let mut cols = Vec::with_capacity(dm);
    for a in 0..dm {
        let x = m.degree(a).1;
        let mut raw = Mat::zeros(f, dm * dp, dp);
        for c in (0..dp).filter(|&c| p.degree(c).0 == x) {
            raw.set(a * dp + c, c, f.one());
        }
        let img = factor_through(&hat.inclusion, &hat.chain.projection().mul(&raw), "unit")?;
        let coords = hom
            .space
            .coordinates(&img)
            .ok_or_else(|| Error::InvalidStructure("η(m) is not a graded A'-linear map".into()))?;
        cols.push(coords);
    }
    let eta = Mat::from_columns(f, hom.space.dim(), &cols);
    Ok(MeniniUnit { hat, hom, eta })
}

/// `ε_N: H(P, N)⊗̂P → N`, `f⊗p ↦ f(p)`.
#[derive(Clone, Debug)]
pub struct MeniniCounit {
    pub hom: GradedHom,
    pub hat: HatTensor,
    pub eps: Mat,
}

pub fn menini_counit(p: &BigradedBimodule, n: &BigradedBimodule) -> Result<MeniniCounit> {
    let f = p.carrier().field();
    let hom = graded_hom(p, n)?;
    let hat = hat_tensor(&hom.module, p)?;
    let (dh, dp, dn) = (hom.space.dim(), p.dim(), n.dim());
    let raw = Mat::from_fn(f, dn, dh * dp, |r, c| hom.space.basis()[c / dp].get(r, c % dp).clone());
    let eps = raw.mul(hat.chain.section()).mul(&hat.inclusion);
    Ok(MeniniCounit { hom, hat, eps })
}

/// Both triangle identities of `−⊗̂_AP ⊣ H(P, −)`, at `M` and at `N`.
pub fn menini_triangles(p: &BigradedBimodule, m: &BigradedBimodule, n: &BigradedBimodule) -> Result<Report> {
    let f = p.carrier().field();
    let mut r = Report::new("graded hom-tensor adjunction");
    let ip = Mat::identity(f, p.dim());

    let unit = menini_unit(p, m)?;
    let counit = menini_counit(p, &unit.hat.module)?;
    let shifted = TensorChain::map(&unit.hat.chain, &counit.hat.chain, &[&unit.eta, &ip]).mul(&unit.hat.inclusion);
    let eta_p = factor_through(&counit.hat.inclusion, &shifted, "η⊗̂P")?;
    let t1 = counit.eps.mul(&eta_p);
    r.check_eq("ε_{M⊗̂P} ∘ (η_M⊗̂P) = id", &t1, &Mat::identity(f, unit.hat.module.dim()));

    let counit = menini_counit(p, n)?;
    let unit = menini_unit(p, &counit.hom.module)?;
    let mut cols = Vec::with_capacity(unit.hom.space.dim());
    for g in unit.hom.space.basis() {
        let img = counit.eps.mul(g);
        cols.push(
            counit
                .hom
                .space
                .coordinates(&img)
                .ok_or_else(|| Error::InvalidStructure("H(P, ε) leaves H(P, N)".into()))?,
        );
    }
    let h_eps = Mat::from_columns(f, counit.hom.space.dim(), &cols);
    let t2 = h_eps.mul(&unit.eta);
    r.check_eq("H(P, ε_N) ∘ η_{H(P,N)} = id", &t2, &Mat::identity(f, counit.hom.space.dim()));
    Ok(r)
}
