//! Right-right entwining structures `(A, C, ψ)` through their coring `A⊗C`.

use std::sync::Arc;

use num_traits::Zero;

use crate::algkernel::{AlgRef, Bimodule};
use crate::coring::{check_coring, coseparable, Coring, CoringRef};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::frobenius::{check_coring_morphism, frobenius_extension_check, Budget, CoringMorphism, FrobeniusReport};
use crate::graded::{permutation, GradedAlgebra, GSet};
use crate::report::Report;

/// `ψ: C⊗A → A⊗C` for a `k`-coalgebra `C`, as a `dimA·dimC × dimC·dimA`
/// matrix (source `c⊗a` at `c·dimA + a`, target `a⊗c` at `a·dimC + c`).
#[derive(Clone, Debug)]
pub struct Entwining {
    pub algebra: AlgRef,
    pub coalgebra: CoringRef,
    pub psi: Mat,
}

impl Entwining {
    pub fn new(algebra: AlgRef, coalgebra: CoringRef, psi: Mat) -> Result<Self> {
        if coalgebra.base().dim() != 1 {
            return Err(Error::InvalidInput("the coalgebra must be a coring over the ground field".into()));
        }
        let (na, nc) = (algebra.dim(), coalgebra.dim());
        if psi.shape() != (na * nc, nc * na) {
            return Err(Error::DimensionMismatch {
                op: "entwining map",
                expected: na * nc,
                got: psi.rows(),
            });
        }
        Ok(Entwining { algebra, coalgebra, psi })
    }

    /// `ψ(c⊗a) = a⊗c`.
    pub fn flip(algebra: AlgRef, coalgebra: CoringRef) -> Result<Self> {
        let f = algebra.field();
        let (na, nc) = (algebra.dim(), coalgebra.dim());
        let psi = Mat::from_fn(f, na * nc, nc * na, |r, c| {
            let (a, cc) = (r / nc, r % nc);
            if c == cc * na + a {
                f.one()
            } else {
                f.zero()
            }
        });
        Entwining::new(algebra, coalgebra, psi)
    }

    /// `ψ(x⊗a_g) = a_g⊗xg` on the grouplike coalgebra `kX`.
    pub fn graded(a: &GradedAlgebra, x: &GSet) -> Result<Self> {
        let f = a.field();
        let (na, nx) = (a.dim(), x.len());
        let mut psi = Mat::zeros(f, na * nx, nx * na);
        for j in 0..na {
            let p = permutation(f, x, a.degree(j));
            for y in 0..nx {
                for z in 0..nx {
                    if !p.get(z, y).is_zero() {
                        psi.set(j * nx + z, y * na + j, f.one());
                    }
                }
            }
        }
        Entwining::new(a.algebra().clone(), Arc::new(Coring::grouplike(f, nx)), psi)
    }
}

/// The coring `A⊗C`: `b(a⊗c) = ba⊗c`, `(a⊗c)b = aψ(c⊗b)`,
/// `Δ(a⊗c) = (a⊗c₁)⊗_A(1⊗c₂)`, `ε(a⊗c) = aε(c)`.
pub fn entwining_coring(e: &Entwining) -> Result<Coring> {
    let a = &e.algebra;
    let c = &e.coalgebra;
    let f = a.field();
    let (na, nc) = (a.dim(), c.dim());
    let d = na * nc;
    let ic = Mat::identity(f, nc);
    let ia = Mat::identity(f, na);
    let left = (0..na).map(|b| a.left_mul(b).kron(&ic)).collect();
    let mu = a.mult().kron(&ic);
    let right = (0..na)
        .map(|b| {
            let mut eb = Mat::zeros(f, na, 1);
            eb.set(b, 0, f.one());
            let psi_b = e.psi.mul(&ic.kron(&eb));
            mu.mul(&ia.kron(&psi_b))
        })
        .collect();
    let carrier = Bimodule::new(a.clone(), a.clone(), d, left, right)?;
    let dc = c.delta_raw();
    let mut delta = Mat::zeros(f, d * d, d);
    for x in 0..na {
        for y in 0..nc {
            let col = x * nc + y;
            for c1 in 0..nc {
                for c2 in 0..nc {
                    let v = dc.get(c1 * nc + c2, y);
                    if v.is_zero() {
                        continue;
                    }
                    for (u, s) in a.unit().iter().enumerate() {
                        if !s.is_zero() {
                            delta.add_at((x * nc + c1) * d + u * nc + c2, col, &f.mul(v, s));
                        }
                    }
                }
            }
        }
    }
    let eps = ia.kron(c.epsilon());
    Coring::from_raw(format!("{}⊗{}", a.name(), c.name()), carrier, &delta, eps)
}

/// Validates the entwining through the coring axioms of `A⊗C`.
pub fn check_entwining(e: &Entwining) -> Report {
    let mut r = Report::new("entwining structure");
    match entwining_coring(e) {
        Ok(c) => r.merge("A⊗C", check_coring(&c)),
        Err(err) => r.fail("A⊗C is a coring", err.to_string(), Vec::new()),
    }
    r
}

/// `(α, γ): (A, C, ψ) → (A', C', ψ')`.
#[derive(Clone, Debug)]
pub struct EntwiningMorphism {
    pub source: Entwining,
    pub target: Entwining,
    /// `dim A' × dim A`.
    pub alpha: Mat,
    /// `dim C' × dim C`.
    pub gamma: Mat,
}

impl EntwiningMorphism {
    pub fn identity(e: &Entwining) -> Self {
        let f = e.algebra.field();
        EntwiningMorphism {
            source: e.clone(),
            target: e.clone(),
            alpha: Mat::identity(f, e.algebra.dim()),
            gamma: Mat::identity(f, e.coalgebra.dim()),
        }
    }

    /// `(α⊗γ, α): A⊗C → A'⊗C'`.
    pub fn coring_morphism(&self) -> Result<CoringMorphism> {
        let c = Arc::new(entwining_coring(&self.source)?);
        let d = Arc::new(entwining_coring(&self.target)?);
        CoringMorphism::new(c, d, self.alpha.clone(), self.alpha.kron(&self.gamma))
    }
}

/// `ψ'(γ⊗α) = (α⊗γ)ψ` and the coring morphism axioms for `(α⊗γ, α)`.
pub fn check_entwining_morphism(m: &EntwiningMorphism) -> Report {
    let mut r = Report::new("entwining morphism");
    let shapes = m.alpha.shape() == (m.target.algebra.dim(), m.source.algebra.dim())
        && m.gamma.shape() == (m.target.coalgebra.dim(), m.source.coalgebra.dim());
    if !r.check("shapes", shapes, "α or γ has the wrong shape") {
        return r;
    }
    let lhs = m.target.psi.mul(&m.gamma.kron(&m.alpha));
    let rhs = m.alpha.kron(&m.gamma).mul(&m.source.psi);
    r.check_eq("ψ'(γ⊗α) = (α⊗γ)ψ", &lhs, &rhs);
    match m.coring_morphism() {
        Ok(cm) => r.merge("(α⊗γ, α)", check_coring_morphism(&cm)),
        Err(e) => r.fail("(α⊗γ, α) is a coring morphism", e.to_string(), Vec::new()),
    }
    r
}

/// Whether `−⊗_AA'` on entwined modules is Frobenius, decided on the
/// induced coring morphism.
pub fn entwined_frobenius_check(m: &EntwiningMorphism, budget: &Budget) -> Result<FrobeniusReport> {
    let rep = check_entwining_morphism(m);
    if !rep.all_pass() {
        return Err(Error::InvalidInput(format!("not a morphism of entwining structures:\n{rep}")));
    }
    let cm = m.coring_morphism()?;
    let cs = coseparable(&cm.source)?;
    let ds = coseparable(&cm.target)?;
    let mut out = frobenius_extension_check(&cm, budget)?;
    out.checks.tag(if cs && ds {
        "A⊗C and A'⊗C' are coseparable: the injector condition is automatic"
    } else {
        "A⊗C or A'⊗C' is not coseparable: the injector condition is part of the search"
    });
    out.checks.merge("entwining morphism", rep);
    Ok(out)
}
