use std::sync::Arc;

use crate::algkernel::{HomSpace, TensorChain};
use crate::coring::{
    act_left_after, act_right_after, comodule_hom_space, cotensor, flip_matrix, is_bicolinear, Bicomodule,
    CotensorSpace,
};
use crate::error::{Error, Result};
use crate::exactla::{Mat, Subspace};
use crate::report::Report;

/// Data for the adjunction `−□_CX ⊣ −□_DΛ`: bicolinear `ψ: C → X□_DΛ` and
/// `ω: Λ□_CX → D`, in the echelon coordinates of the two cotensor products.
#[derive(Clone, Debug)]
pub struct FrobeniusSystem {
    pub x: Bicomodule,
    pub lambda: Bicomodule,
    pub psi: Mat,
    pub omega: Mat,
}

/// Everything the zig-zag identities need, computed once per `(X, Λ)`.
pub(crate) struct Geometry {
    pub x: Bicomodule,
    pub lambda: Bicomodule,
    /// `X□_DΛ`
    pub k1: CotensorSpace,
    /// `Λ□_CX`
    pub k2: CotensorSpace,
    /// `(Λ, X, Λ)` and the comparison `(Λ□X)⊗Λ → Λ⊗X⊗Λ`.
    t1: TensorChain,
    k2l: TensorChain,
    j1: Mat,
    ker1: Subspace,
    /// `(X, Λ, X)` and the comparison `X⊗(Λ□X) → X⊗Λ⊗X`.
    t2: TensorChain,
    xk2: TensorChain,
    j2: Mat,
    ker2: Subspace,
}

/// One side of the zig-zag: `W(ω)·J⁺·V(ψ)`.
pub(crate) enum Lifted {
    Ok(Mat),
    /// `V(ψ)` leaves the image of the comparison map.
    OutsideImage,
}

impl Geometry {
    pub fn new(x: &Bicomodule, lambda: &Bicomodule) -> Result<Self> {
        let k1 = cotensor(x, lambda)?;
        let k2 = cotensor(lambda, x)?;
        let k2c = k2.bicomodule.carrier();
        let k2_raw = k2.chain.section().mul(&k2.inclusion);
        let f = x.field();
        let idx = Mat::identity(f, x.dim());
        let idl = Mat::identity(f, lambda.dim());

        let t1 = TensorChain::new(vec![lambda.carrier().clone(), x.carrier().clone(), lambda.carrier().clone()])?;
        let k2l = TensorChain::pair(k2c, lambda.carrier())?;
        let j1 = TensorChain::map(&k2l, &t1, &[&k2_raw, &idl]);
        let t2 = TensorChain::new(vec![x.carrier().clone(), lambda.carrier().clone(), x.carrier().clone()])?;
        let xk2 = TensorChain::pair(x.carrier(), k2c)?;
        let j2 = TensorChain::map(&xk2, &t2, &[&idx, &k2_raw]);
        let ker1 = j1.kernel();
        let ker2 = j2.kernel();
        Ok(Geometry {
            x: x.clone(),
            lambda: lambda.clone(),
            k1,
            k2,
            t1,
            k2l,
            j1,
            ker1,
            t2,
            xk2,
            j2,
            ker2,
        })
    }

    /// Bicolinear `C → X□Λ`.
    pub fn psi_space(&self) -> Result<HomSpace> {
        let reg = Bicomodule::regular(self.x.left_coring());
        comodule_hom_space(&reg, &self.k1.bicomodule)
    }

    /// Bicolinear `Λ□X → D`.
    pub fn omega_space(&self) -> Result<HomSpace> {
        let reg = Bicomodule::regular(self.x.right_coring());
        comodule_hom_space(&self.k2.bicomodule, &reg)
    }

    /// `ψ` as a raw map `C → X⊗_kΛ`.
    fn psi_raw(&self, psi: &Mat) -> Mat {
        self.k1.chain.section().mul(&self.k1.inclusion.mul(psi))
    }

    /// `(Λ⊗ψ)ρ_Λ: Λ → Λ⊗X⊗Λ`.
    pub fn v1(&self, psi: &Mat) -> Mat {
        let f = self.x.field();
        let idl = Mat::identity(f, self.lambda.dim());
        TensorChain::map(self.lambda.rchain(), &self.t1, &[&idl, &self.psi_raw(psi)]).mul(self.lambda.rho())
    }

    /// `(ψ⊗X)λ_X: X → X⊗Λ⊗X`.
    pub fn v2(&self, psi: &Mat) -> Mat {
        let f = self.x.field();
        let idx = Mat::identity(f, self.x.dim());
        TensorChain::map(self.x.lchain(), &self.t2, &[&self.psi_raw(psi), &idx]).mul(self.x.lambda())
    }

    /// `(Λ□X)⊗Λ → Λ`, `k⊗l ↦ ε_D(ω(k))·l`.
    pub fn w1(&self, omega: &Mat) -> Mat {
        let eo = self.x.right_coring().epsilon().mul(omega);
        act_left_after(self.lambda.carrier(), &eo).mul(self.k2l.section())
    }

    /// `X⊗(Λ□X) → X`, `x⊗k ↦ x·ε_D(ω(k))`.
    pub fn w2(&self, omega: &Mat) -> Mat {
        let eo = self.x.right_coring().epsilon().mul(omega);
        act_right_after(self.x.carrier(), &eo).mul(self.xk2.section())
    }

    /// A preimage of `v` under the first comparison map, if any.
    pub fn lift1(&self, v: &Mat) -> Result<Lifted> {
        lift(&self.j1, v)
    }

    pub fn lift2(&self, v: &Mat) -> Result<Lifted> {
        lift(&self.j2, v)
    }

    /// `W₁(ω)` on the kernel of the first comparison map; must vanish.
    pub fn kernel_defect1(&self, omega: &Mat) -> Mat {
        self.w1(omega).mul(&self.ker1.inclusion())
    }

    pub fn kernel_defect2(&self, omega: &Mat) -> Mat {
        self.w2(omega).mul(&self.ker2.inclusion())
    }

    /// Converts raw `ψ: C → X⊗_kΛ` and `ω: Λ⊗_kX → D` to cotensor coordinates.
    pub fn from_raw(&self, psi_raw: &Mat, omega_raw: &Mat) -> Result<(Mat, Mat)> {
        let projected = self.k1.chain.projection().mul(psi_raw);
        let psi = crate::coring::factor_through(&self.k1.inclusion, &projected, "psi does not land in X□Λ")?;
        let omega = omega_raw.mul(&self.k2.chain.section().mul(&self.k2.inclusion));
        Ok((psi, omega))
    }
}

fn lift(j: &Mat, v: &Mat) -> Result<Lifted> {
    if j.cols() == 0 {
        return Ok(if v.is_zero() {
            Lifted::Ok(Mat::zeros(v.field(), 0, v.cols()))
        } else {
            Lifted::OutsideImage
        });
    }
    Ok(match j.solve_mat(v)? {
        Some(y) => Lifted::Ok(y),
        None => Lifted::OutsideImage,
    })
}

/// `(ω□Λ)(Λ□ψ)` and `(X□ω)(ψ□X)`, or a reason they are not defined.
pub(crate) fn zigzags(g: &Geometry, psi: &Mat, omega: &Mat) -> Result<std::result::Result<(Mat, Mat), String>> {
    let y1 = match g.lift1(&g.v1(psi))? {
        Lifted::Ok(y) => y,
        Lifted::OutsideImage => return Ok(Err("(Λ⊗ψ)ρ_Λ leaves (Λ□X)⊗Λ".into())),
    };
    let y2 = match g.lift2(&g.v2(psi))? {
        Lifted::Ok(y) => y,
        Lifted::OutsideImage => return Ok(Err("(ψ⊗X)λ_X leaves X⊗(Λ□X)".into())),
    };
    if !g.kernel_defect1(omega).is_zero() || !g.kernel_defect2(omega).is_zero() {
        return Ok(Err("ω⊗Λ or X⊗ω is not defined on the image of the comparison map".into()));
    }
    Ok(Ok((g.w1(omega).mul(&y1), g.w2(omega).mul(&y2))))
}

impl FrobeniusSystem {
    /// Builds a system from `ψ: C → X⊗_kΛ` and `ω: Λ⊗_kX → D` in Kronecker
    /// coordinates; `ψ` must land in `X□_DΛ`.
    pub fn from_raw(x: &Bicomodule, lambda: &Bicomodule, psi_raw: &Mat, omega_raw: &Mat) -> Result<Self> {
        let g = Geometry::new(x, lambda)?;
        let c = x.left_coring();
        let d = x.right_coring();
        let expect_psi = (x.dim() * lambda.dim(), c.dim());
        let expect_omega = (d.dim(), lambda.dim() * x.dim());
        if psi_raw.shape() != expect_psi || omega_raw.shape() != expect_omega {
            return Err(Error::InvalidInput(format!(
                "psi must be {}x{} and omega {}x{}",
                expect_psi.0, expect_psi.1, expect_omega.0, expect_omega.1
            )));
        }
        let (psi, omega) = g.from_raw(psi_raw, omega_raw)?;
        Ok(FrobeniusSystem {
            x: x.clone(),
            lambda: lambda.clone(),
            psi,
            omega,
        })
    }

    /// `ψ` as a raw map `C → X⊗_kΛ`.
    pub fn psi_raw(&self) -> Result<Mat> {
        Ok(Geometry::new(&self.x, &self.lambda)?.psi_raw(&self.psi))
    }

    /// `ω` as a raw map `Λ⊗_kX → D`, extended by the retraction onto `Λ□_CX`.
    pub fn omega_raw(&self) -> Result<Mat> {
        let g = Geometry::new(&self.x, &self.lambda)?;
        Ok(self.omega.mul(&g.k2.retraction).mul(g.k2.chain.projection()))
    }
}

/// Exact pass/fail for bicolinearity of `ψ`, `ω` and both zig-zag identities.
pub fn verify_frobenius_system(s: &FrobeniusSystem) -> Report {
    let mut r = Report::new("Frobenius system");
    let g = match Geometry::new(&s.x, &s.lambda) {
        Ok(g) => g,
        Err(e) => {
            r.fail("compatible data", e.to_string(), Vec::new());
            return r;
        }
    };
    let c = s.x.left_coring();
    let d = s.x.right_coring();
    if s.psi.shape() != (g.k1.dim(), c.dim()) || s.omega.shape() != (d.dim(), g.k2.dim()) {
        r.fail(
            "shapes",
            format!(
                "psi must be {}x{}, omega {}x{}",
                g.k1.dim(),
                c.dim(),
                d.dim(),
                g.k2.dim()
            ),
            Vec::new(),
        );
        return r;
    }
    r.check(
        "psi is (C,C)-bicolinear",
        is_bicolinear(&Bicomodule::regular(c), &g.k1.bicomodule, &s.psi),
        "a bimodule or coaction identity fails",
    );
    r.check(
        "omega is (D,D)-bicolinear",
        is_bicolinear(&g.k2.bicomodule, &Bicomodule::regular(d), &s.omega),
        "a bimodule or coaction identity fails",
    );
    let f = s.x.field();
    match zigzags(&g, &s.psi, &s.omega) {
        Ok(Ok((z1, z2))) => {
            r.check_eq("(ω□Λ)(Λ□ψ) = id_Λ", &z1, &Mat::identity(f, s.lambda.dim()));
            r.check_eq("(X□ω)(ψ□X) = id_X", &z2, &Mat::identity(f, s.x.dim()));
        }
        Ok(Err(why)) => r.fail("zig-zags defined", why, Vec::new()),
        Err(e) => r.fail("zig-zags defined", e.to_string(), Vec::new()),
    }
    r
}

/// The transposed system for `(Λ□_C−, X□_D−)`, written over the opposite
/// corings as `(−□Λ^op, −□X^op)`.
pub fn mirror_system(s: &FrobeniusSystem) -> Result<FrobeniusSystem> {
    let c = s.x.left_coring();
    let d = s.x.right_coring();
    let cop = Arc::new(c.opposite());
    let dop = Arc::new(d.opposite());
    let x2 = s.lambda.opposite(&dop, &cop)?;
    let l2 = s.x.opposite(&cop, &dop)?;
    let g = Geometry::new(&s.x, &s.lambda)?;
    let g2 = Geometry::new(&x2, &l2)?;
    let f = s.x.field();
    let (dx, dl) = (s.x.dim(), s.lambda.dim());
    // X⊗Λ → Λ⊗X and back
    let psi_raw = flip_matrix(f, dx, dl).mul(&g.psi_raw(&s.psi));
    let back = g.k2.chain.projection().mul(&flip_matrix(f, dx, dl)).mul(&g2.k2.chain.section()).mul(&g2.k2.inclusion);
    let in_k2 = crate::coring::factor_through(&g.k2.inclusion, &back, "mirrored Λ□X")?;
    let omega = s.omega.mul(&in_k2);
    let projected = g2.k1.chain.projection().mul(&psi_raw);
    let psi = crate::coring::factor_through(&g2.k1.inclusion, &projected, "mirrored X□Λ")?;
    Ok(FrobeniusSystem {
        x: x2,
        lambda: l2,
        psi,
        omega,
    })
}

/// Evaluates the unit-counit triangles of `−□X ⊣ −□Λ` on concrete comodules:
/// for right `C`-comodules `M`, `M□X → M□X□Λ□X → M□X`, and for right
/// `D`-comodules `N`, `N□Λ → N□Λ□X□Λ → N□Λ`. Both must be identities.
pub fn check_naturality(s: &FrobeniusSystem, pool_c: &[Bicomodule], pool_d: &[Bicomodule]) -> Report {
    let mut r = Report::new("naturality");
    let g = match Geometry::new(&s.x, &s.lambda) {
        Ok(g) => g,
        Err(e) => {
            r.fail("compatible data", e.to_string(), Vec::new());
            return r;
        }
    };
    for (i, m) in pool_c.iter().enumerate() {
        let name = format!("triangle on M{i}□X");
        match triangle_f(&g, s, &m.forget_left()) {
            Ok((lhs, rhs)) => {
                r.check_eq(name, &lhs, &rhs);
            }
            Err(e) => r.fail(name, e.to_string(), Vec::new()),
        }
    }
    for (i, n) in pool_d.iter().enumerate() {
        let name = format!("triangle on N{i}□Λ");
        match triangle_g(&g, s, &n.forget_left()) {
            Ok((lhs, rhs)) => {
                r.check_eq(name, &lhs, &rhs);
            }
            Err(e) => r.fail(name, e.to_string(), Vec::new()),
        }
    }
    r
}

fn triangle_f(g: &Geometry, s: &FrobeniusSystem, m: &Bicomodule) -> Result<(Mat, Mat)> {
    let f = m.field();
    let mx = cotensor(m, &s.x)?;
    let idm = Mat::identity(f, m.dim());
    let idx = Mat::identity(f, s.x.dim());
    let u = mx.chain.section().mul(&mx.inclusion);
    let psi_raw = g.psi_raw(&s.psi);
    let t = TensorChain::new(vec![
        m.carrier().clone(),
        s.x.carrier().clone(),
        s.lambda.carrier().clone(),
        s.x.carrier().clone(),
    ])?;
    let raw = Mat::kron_apply(&[&idm, &psi_raw, &idx], &Mat::kron_apply(&[&m.rho_raw(), &idx], &u));
    let v = t.projection().mul(&raw);
    let k2_raw = g.k2.chain.section().mul(&g.k2.inclusion);
    let mxk = TensorChain::new(vec![m.carrier().clone(), s.x.carrier().clone(), g.k2.bicomodule.carrier().clone()])?;
    let j = TensorChain::map(&mxk, &t, &[&idm, &idx, &k2_raw]);
    let y = lift_checked(&j, &v)?;
    let eo = s.x.right_coring().epsilon().mul(&s.omega);
    let act = idm.kron(&act_right_after(s.x.carrier(), &eo));
    let out = mx.chain.projection().mul(&act.mul(&mxk.section().mul(&y)));
    Ok((out, mx.inclusion.clone()))
}

fn triangle_g(g: &Geometry, s: &FrobeniusSystem, n: &Bicomodule) -> Result<(Mat, Mat)> {
    let f = n.field();
    let nl = cotensor(n, &s.lambda)?;
    let idn = Mat::identity(f, n.dim());
    let idl = Mat::identity(f, s.lambda.dim());
    let u = nl.chain.section().mul(&nl.inclusion);
    let psi_raw = g.psi_raw(&s.psi);
    let t = TensorChain::new(vec![
        n.carrier().clone(),
        s.lambda.carrier().clone(),
        s.x.carrier().clone(),
        s.lambda.carrier().clone(),
    ])?;
    let raw = Mat::kron_apply(&[&idn, &idl, &psi_raw], &Mat::kron_apply(&[&idn, &s.lambda.rho_raw()], &u));
    let v = t.projection().mul(&raw);
    let k2_raw = g.k2.chain.section().mul(&g.k2.inclusion);
    let nkl = TensorChain::new(vec![n.carrier().clone(), g.k2.bicomodule.carrier().clone(), s.lambda.carrier().clone()])?;
    let j = TensorChain::map(&nkl, &t, &[&idn, &k2_raw, &idl]);
    let y = lift_checked(&j, &v)?;
    let eo = s.x.right_coring().epsilon().mul(&s.omega);
    let act = act_right_after(n.carrier(), &eo).kron(&idl);
    let out = nl.chain.projection().mul(&act.mul(&nkl.section().mul(&y)));
    Ok((out, nl.inclusion.clone()))
}

fn lift_checked(j: &Mat, v: &Mat) -> Result<Mat> {
    match lift(j, v)? {
        Lifted::Ok(y) => Ok(y),
        Lifted::OutsideImage => Err(Error::InvalidStructure("triangle leaves the comparison image".into())),
    }
}
