use std::sync::Arc;

use crate::algkernel::{add_commutation, fgp_left, linearity_system, Bimodule, HomSpace, Linearity, TensorChain};
use crate::coring::{check_bicomodule, factor_through, Bicomodule, Side};
use crate::error::{Error, Result};
use crate::exactla::{left_tensor_coefficients, LinearSystem, Mat, Scalar, Subspace};
use crate::report::Report;

use super::algebra::{build_graded_coring, same_graded};
use super::group::GSet;
use super::hat::{hat_tensor, HatTensor};
use super::module::{comodule_of_graded, graded_of_comodule, BigradedBimodule};

/// `P = H(_{A'}N, A')` for an `X'×X`-graded `(A', A)`-bimodule `N`: maps
/// supported on finitely many `N_x`, as an `X×{*}`-graded `(A, A')`-bimodule
/// with `(a·f)(n) = f(n·a)` and `(f·a')(n) = f(n)·a'`. `ₓP ≅ *(N_x)`.
#[derive(Clone, Debug)]
pub struct GradedDual {
    pub space: HomSpace,
    pub module: BigradedBimodule,
    /// `(x, e_{x,i}, e*_{x,i})`: basis index in `N` and coordinates in `P`.
    pub dual_basis: Vec<(usize, usize, Vec<Scalar>)>,
}

/// Builds `P` and a dual basis `{e_{x,i}, e*_{x,i}}` of every `N_x`. Errors
/// name the first component that is not finitely generated projective.
pub fn graded_dual(n: &BigradedBimodule) -> Result<GradedDual> {
    let f = n.carrier().field();
    let ap = n.left().algebra.algebra().clone();
    let (dn, da) = (n.dim(), ap.dim());
    let xs = n.right().set_len();

    let mut dual_funcs = Vec::new();
    for x in 0..xs {
        let comp = n.component(Side::Right, x);
        let db = fgp_left(&n.component_module(Side::Right, x))?.ok_or_else(|| {
            Error::Precondition(format!("N_{x} is not finitely generated projective as a left module"))
        })?;
        for (i, fi) in db.functionals.iter().enumerate() {
            let mut full = Mat::zeros(f, da, dn);
            for (j, &c) in comp.iter().enumerate() {
                for r in 0..da {
                    full.set(r, c, fi.get(r, j).clone());
                }
            }
            dual_funcs.push((x, comp[i], full));
        }
    }

    let reg = Bimodule::left_regular(&ap);
    let base = linearity_system(&n.carrier().forget_right(), &reg, Linearity::Left)?;
    let mut rows = Vec::new();
    for x in 0..xs {
        let keep = n.component(Side::Right, x);
        let mut sys = base.clone();
        for r in 0..da {
            for c in (0..dn).filter(|c| !keep.contains(c)) {
                sys.fix(r * dn + c, f.zero());
            }
        }
        rows.extend(sys.kernel().basis_rows().iter().cloned());
    }
    let space = HomSpace::from_subspace(da, dn, Subspace::from_spanning(f, da * dn, rows));
    let degrees = space
        .subspace()
        .pivots()
        .iter()
        .map(|&i| (n.degree(i % dn).1, 0))
        .collect();
    let a = n.carrier().right_alg();
    let left = n
        .carrier()
        .right_mats()
        .iter()
        .map(|r| space.action_matrix(|h| h.mul(r)))
        .collect::<Result<Vec<_>>>()?;
    let right = (0..da)
        .map(|j| space.action_matrix(|h| ap.right_mul(j).mul(h)))
        .collect::<Result<Vec<_>>>()?;
    let carrier = Bimodule::new(a.clone(), ap.clone(), space.dim(), left, right)?;
    let star = Arc::new(GSet::fixed_points(n.left().algebra.group().clone(), 1));
    let right_gc = Arc::new(build_graded_coring(&n.left().algebra, &star)?);
    let module = BigradedBimodule::new(n.right().clone(), right_gc, carrier, degrees)?;

    let dual_basis = dual_funcs
        .into_iter()
        .map(|(x, e, fx)| {
            space
                .coordinates(&fx)
                .map(|c| (x, e, c))
                .ok_or_else(|| Error::InvalidStructure("dual basis functional leaves P".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(GradedDual {
        space,
        module,
        dual_basis,
    })
}

/// The cohom `M⊗̂_AP` with the coaction over `A'⊗kX'` fixed by
/// `Σ ρ(m_x⊗e*_{x,i})⊗e_{x,i} = Σ m_x⊗e*_{x,i}⊗(1⊗x')⊗(e_{x,i})_{x'}`.
#[derive(Clone, Debug)]
pub struct GradedCohom {
    pub dual: GradedDual,
    pub hat: HatTensor,
    /// `ρ: M⊗̂P → (M⊗̂P)⊗_{A'}(A'⊗kX')` in chain coordinates.
    pub rho: Mat,
    /// Dimension of the homogenized solution space of the defining system;
    /// `1` means the coaction exists and is unique.
    pub solution_dim: usize,
    pub bicomodule: Bicomodule,
    /// The graded module on a homogeneous basis; `basis` has its columns in
    /// coordinates of `M⊗̂P`.
    pub module: BigradedBimodule,
    pub basis: Mat,
    pub report: Report,
}

pub fn cohom_graded(n: &BigradedBimodule, m: &BigradedBimodule) -> Result<GradedCohom> {
    if !same_graded(n.right(), m.right()) {
        return Err(Error::CoringMismatch("cohom_graded"));
    }
    let f = n.carrier().field();
    let mut report = Report::new("graded cohom");
    report.tag("N is X'×X-graded (A',A), M is X-graded over A, result is graded over A'⊗kX'");
    let dual = graded_dual(n)?;
    let hat = hat_tensor(m, &dual.module)?;
    let q = &hat.module;
    let cp = n.left().coring.clone();
    let (dq, dc, dn, dm, dp) = (q.dim(), cp.dim(), n.dim(), m.dim(), dual.module.dim());

    let qc = TensorChain::pair(q.carrier(), cp.carrier())?;
    let t = TensorChain::new(vec![q.carrier().clone(), cp.carrier().clone(), n.carrier().clone()])?;
    let l = t.projection().mul(&qc.section().kron(&Mat::identity(f, dn)));

    let mut sys = LinearSystem::new(f, qc.dim() * dq);
    for a in 0..dm {
        let x = m.degree(a).1;
        let mut v = Mat::zeros(f, dq * dn, 1);
        let mut rhs = Mat::zeros(f, t.raw_dim(), 1);
        for (_, e, coords) in dual.dual_basis.iter().filter(|(y, _, _)| *y == x) {
            let mut raw = Mat::zeros(f, dm * dp, 1);
            for (c, s) in coords.iter().enumerate() {
                raw.set(a * dp + c, 0, s.clone());
            }
            let qv = factor_through(&hat.inclusion, &hat.chain.projection().mul(&raw), "m⊗e*")?;
            let u = n.left().one_tensor(n.degree(*e).0);
            for i in 0..dq {
                if num_traits::Zero::is_zero(qv.get(i, 0)) {
                    continue;
                }
                v.add_at(i * dn + e, 0, qv.get(i, 0));
                for (c, uc) in u.iter().enumerate() {
                    if !num_traits::Zero::is_zero(uc) {
                        rhs.add_at((i * dc + c) * dn + e, 0, &f.mul(qv.get(i, 0), uc));
                    }
                }
            }
        }
        let coeffs = left_tensor_coefficients(&l, &v, qc.dim(), dq, dn);
        sys.equal(&coeffs, &t.projection().mul(&rhs).col(0));
    }
    add_commutation(&mut sys, q.carrier().right_mats(), qc.bimodule().right_mats());
    let sol = sys.solve()?;
    let solution_dim = sys.kernel().dim() + usize::from(sol.is_some());
    let sol = sol.ok_or_else(|| Error::InvalidStructure("the defining equations of the coaction are infeasible".into()))?;
    report.check(
        "coaction is unique",
        solution_dim == 1,
        format!("homogenized solution space has dimension {solution_dim}"),
    );
    let rho = Mat::from_vector(f, qc.dim(), dq, &sol);

    let lambda = comodule_of_graded(q)?.lambda().clone();
    let bicomodule = Bicomodule::new(m.left().coring.clone(), cp, q.carrier().clone(), lambda, rho.clone())?;
    report.merge("bicomodule", check_bicomodule(&bicomodule));
    let (module, basis) = graded_of_comodule(&bicomodule, m.left(), n.left())?;

    // θ-triangles: Σ e*_{x,i}·f(e_{x,i}) = f on P, and Σ e*_{x,i}(n_x)·e_{x,i} = n on N.
    let pm = dual.module.carrier();
    let mut s_cols = Vec::with_capacity(dp);
    for h in dual.space.basis() {
        let mut acc = vec![f.zero(); dp];
        for (_, e, coords) in &dual.dual_basis {
            let img = pm.right_by(&h.col(*e)).mul_vec(coords);
            acc = acc.iter().zip(&img).map(|(a, b)| f.add(a, b)).collect();
        }
        s_cols.push(acc);
    }
    let s = Mat::from_columns(f, dp, &s_cols);
    let t1 = factor_through(
        &hat.inclusion,
        &hat.chain
            .projection()
            .mul(&Mat::kron_apply(&[&Mat::identity(f, dm), &s], &hat.chain.section().mul(&hat.inclusion))),
        "θ triangle",
    )?;
    report.check_eq("(M⊗̂P) → (M⊗̂P⊗N)⊗̂P → M⊗̂P is the identity", &t1, &Mat::identity(f, dq));
    let mut t2 = Mat::zeros(f, dn, dn);
    for b in 0..dn {
        let x = n.degree(b).1;
        for (_, e, coords) in dual.dual_basis.iter().filter(|(y, _, _)| *y == x) {
            let fe = dual.space.combine(coords);
            let col = n.carrier().left_by(&fe.col(b)).col(*e);
            for (r, v) in col.iter().enumerate() {
                t2.add_at(r, b, v);
            }
        }
    }
    report.check_eq("N → N⊗̂P⊗N → N is the identity", &t2, &Mat::identity(f, dn));

    Ok(GradedCohom {
        dual,
        hat,
        rho,
        solution_dim,
        bicomodule,
        module,
        basis,
        report,
    })
}
