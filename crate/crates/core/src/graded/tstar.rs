use num_traits::Zero;

use crate::algkernel::{check_algebra_map, invertible_element_exists, Bimodule, Invertibility, TensorChain};
use crate::coring::{comodule_hom_space, cotensor, Side};
use crate::error::{Error, Result};
use crate::exactla::Mat;
use crate::frobenius::{frobenius_extension_check, induction_data, Budget, CoringMorphism, FrobeniusReport, Verdict};
use crate::report::{Report, Status};

use super::algebra::{same_graded, GradedRef};
use super::cohom::cohom_graded;
use super::module::{comodule_of_graded, fgp_check, BigradedBimodule};

/// A morphism of graded data `(G, X, A) → (G', X', A')`: a group map `f`, a
/// map of sets `φ` with `φ(xg) = φ(x)f(g)` and an algebra map `α` with
/// `α(A_g) ⊆ A'_{f(g)}`.
#[derive(Clone, Debug)]
pub struct GradedMorphism {
    pub source: GradedRef,
    pub target: GradedRef,
    pub f: Vec<usize>,
    pub phi: Vec<usize>,
    /// `dim A' × dim A`.
    pub alpha: Mat,
}

impl GradedMorphism {
    pub fn identity(gc: &GradedRef) -> Self {
        let f = gc.field();
        GradedMorphism {
            source: gc.clone(),
            target: gc.clone(),
            f: (0..gc.algebra.group().order()).collect(),
            phi: (0..gc.set_len()).collect(),
            alpha: Mat::identity(f, gc.algebra.dim()),
        }
    }
}

pub fn check_graded_morphism(m: &GradedMorphism) -> Report {
    let mut r = Report::new("graded morphism");
    let (s, t) = (&m.source, &m.target);
    let (g, g2) = (s.algebra.group(), t.algebra.group());
    if !r.check("f is a group map", g.is_hom(g2, &m.f), "f(gh) ≠ f(g)f(h) or bad length") {
        return r;
    }
    let equivariant = m.phi.len() == s.set_len()
        && m.phi.iter().all(|&y| y < t.set_len())
        && (0..s.set_len()).all(|x| (0..g.order()).all(|h| m.phi[s.set.act(x, h)] == t.set.act(m.phi[x], m.f[h])));
    r.check("φ(xg) = φ(x)f(g)", equivariant, "φ is not equivariant along f");
    if m.alpha.shape() != (t.algebra.dim(), s.algebra.dim()) {
        r.fail("α is an algebra map", "shape mismatch", Vec::new());
        return r;
    }
    r.merge("alpha", check_algebra_map(s.algebra.algebra(), t.algebra.algebra(), &m.alpha));
    let bad = (0..s.algebra.dim()).find_map(|i| {
        let want = m.f[s.algebra.degree(i)];
        m.alpha
            .col(i)
            .iter()
            .enumerate()
            .find(|(k, v)| !v.is_zero() && t.algebra.degree(*k) != want)
            .map(|(k, _)| (i, k))
    });
    match bad {
        None => r.pass("α(A_g) ⊆ A'_{f(g)}"),
        Some((i, k)) => r.fail(
            "α(A_g) ⊆ A'_{f(g)}",
            format!("α(e{i}) has a component on e'{k} outside degree {}", m.f[s.algebra.degree(i)]),
            vec![crate::report::Witness::vector(format!("α(e{i})"), &m.alpha.col(i))],
        ),
    }
    r
}

/// The coring morphism `(α⊗γ, α): A⊗kX → A'⊗kX'` with `γ(x) = φ(x)`.
pub fn coring_morphism(m: &GradedMorphism) -> Result<CoringMorphism> {
    let rep = check_graded_morphism(m);
    if !rep.all_pass() {
        return Err(Error::InvalidInput(format!("incompatible graded morphism:\n{rep}")));
    }
    let f = m.source.field();
    let gamma = Mat::from_fn(f, m.target.set_len(), m.source.set_len(), |r, c| {
        if m.phi[c] == r {
            f.one()
        } else {
            f.zero()
        }
    });
    CoringMorphism::new(
        m.source.coring.clone(),
        m.target.coring.clone(),
        m.alpha.clone(),
        m.alpha.kron(&gamma),
    )
}

/// Raw index of each quotient basis vector of a chain.
fn free_indices(chain: &TensorChain) -> Vec<usize> {
    let s = chain.section();
    (0..s.cols())
        .map(|k| (0..s.rows()).find(|&r| !s.get(r, k).is_zero()).expect("section columns are unit vectors"))
        .collect()
}

/// `T*(M) = M⊗_AA'` with `(M⊗A')_{x'}` spanned by `m_x⊗a'_{g'}`, `φ(x)g' = x'`.
/// The left structure of `M` is kept.
pub fn tstar(m: &GradedMorphism, module: &BigradedBimodule) -> Result<BigradedBimodule> {
    if !same_graded(module.right(), &m.source) {
        return Err(Error::CoringMismatch("tstar"));
    }
    let (a, ap) = (m.source.algebra.algebra(), m.target.algebra.algebra());
    let bridge = Bimodule::regular(ap).restrict(Some((a, &m.alpha)), None)?;
    let chain = TensorChain::pair(module.carrier(), &bridge)?;
    let da = ap.dim();
    let t = &m.target;
    let degree = free_indices(&chain)
        .into_iter()
        .map(|r| {
            let (e, j) = (r / da, r % da);
            let (xl, x) = module.degree(e);
            (xl, t.set.act(m.phi[x], t.algebra.degree(j)))
        })
        .collect();
    BigradedBimodule::new(module.left().clone(), t.clone(), chain.bimodule().clone(), degree)
}

/// `(T*)'(N) = A'⊗_AN` on left graded modules, with `a'_{g'}⊗ₓn` of left
/// degree `g'·φ(x) = φ(x)g'⁻¹`. The right structure of `N` is kept.
pub fn tstar_left(m: &GradedMorphism, module: &BigradedBimodule) -> Result<BigradedBimodule> {
    if !same_graded(module.left(), &m.source) {
        return Err(Error::CoringMismatch("tstar_left"));
    }
    let (a, ap) = (m.source.algebra.algebra(), m.target.algebra.algebra());
    let bridge = Bimodule::regular(ap).restrict(None, Some((a, &m.alpha)))?;
    let chain = TensorChain::pair(&bridge, module.carrier())?;
    let dn = module.dim();
    let t = &m.target;
    let degree = free_indices(&chain)
        .into_iter()
        .map(|r| {
            let (j, e) = (r / dn, r % dn);
            let (xl, xr) = module.degree(e);
            (t.set.left_act(t.algebra.degree(j), m.phi[xl]), xr)
        })
        .collect();
    BigradedBimodule::new(t.clone(), module.right().clone(), chain.bimodule().clone(), degree)
}

/// Compares the graded formula for `T*(M)` with `M□_C(C⊗_AA')` from the
/// induced coring morphism, up to a colinear isomorphism.
pub fn tstar_route_check(m: &GradedMorphism, module: &BigradedBimodule, grid: u64) -> Result<Report> {
    let mut r = Report::new("T* against induction");
    let graded = comodule_of_graded(&tstar(m, module)?)?;
    let (x, _) = induction_data(&coring_morphism(m)?)?;
    let induced = cotensor(&comodule_of_graded(module)?, &x)?.bicomodule;
    if !r.check(
        "dimensions agree",
        graded.dim() == induced.dim(),
        format!("graded {} vs induced {}", graded.dim(), induced.dim()),
    ) {
        return Ok(r);
    }
    let h = comodule_hom_space(&graded, &induced)?;
    match invertible_element_exists(&h, grid) {
        Invertibility::Yes { .. } => r.pass("graded and induced comodules are isomorphic"),
        Invertibility::No { evaluations } => r.fail(
            "graded and induced comodules are isomorphic",
            format!("generic determinant ≡ 0 (grid exhausted, {evaluations} points)"),
            Vec::new(),
        ),
        Invertibility::Undecided { reason } => r.undecided("graded and induced comodules are isomorphic", reason),
    }
    Ok(r)
}

/// Whether `T*` is Frobenius: every `(T*(Â))_{x'}` is finitely generated
/// projective over `A`, and `Â'⊗̂_{A'}H(_AT*(Â), A) ≅ (T*)'(Â)` as
/// `X'×X`-graded `(A', A)`-bimodules. Cross-checked against the search on
/// the induced coring morphism; a disagreement is an error.
pub fn tstar_frobenius_check(m: &GradedMorphism, budget: &Budget) -> Result<FrobeniusReport> {
    let mut checks = Report::new("graded induction");
    checks.tag("T*(Â) is X×X'-graded (A,A'); the cohom and (T*)'(Â) are X'×X-graded (A',A)");
    let cm = coring_morphism(m)?;
    let hat = BigradedBimodule::hat(&m.source);
    let n = tstar(m, &hat)?;
    let mut graded = Status::Pass;
    let mut reason = String::new();
    for y in 0..m.target.set_len() {
        let name = format!("(T*(Â))_{y} finitely generated projective");
        if fgp_check(&n, Side::Right, y)?.is_some() {
            checks.pass(name);
        } else {
            checks.fail(name, "dual basis equations are infeasible", Vec::new());
            graded = Status::Fail;
            reason = format!("(T*(Â))_{y} is not finitely generated projective over A");
        }
    }
    if graded == Status::Pass {
        let cohom = cohom_graded(&n, &BigradedBimodule::hat(&m.target))?;
        checks.merge("cohom", cohom.report.clone());
        let target = tstar_left(m, &hat)?;
        let name = "Â'⊗̂H(_AT*(Â), A) ≅ (T*)'(Â)";
        if cohom.module.component_dims() != target.component_dims() {
            checks.fail(name, "homogeneous component dimensions differ", Vec::new());
            graded = Status::Fail;
            reason = "the graded components of the two sides have different dimensions".into();
        } else {
            let h = comodule_hom_space(&comodule_of_graded(&cohom.module)?, &comodule_of_graded(&target)?)?;
            match invertible_element_exists(&h, budget.grid) {
                Invertibility::Yes { .. } => checks.pass(name),
                Invertibility::No { evaluations } => {
                    checks.fail(name, format!("generic determinant ≡ 0 (grid exhausted, {evaluations} points)"), Vec::new());
                    graded = Status::Fail;
                    reason = format!("no bigraded isomorphism: generic determinant ≡ 0 (grid exhausted, {evaluations} points)");
                }
                Invertibility::Undecided { reason: why } => {
                    checks.undecided(name, why.clone());
                    graded = Status::Undecided;
                    reason = why;
                }
            }
        }
    }

    let ext = frobenius_extension_check(&cm, budget)?;
    checks.merge("coring route", ext.checks);
    let agree = match (graded, &ext.verdict) {
        (Status::Pass, Verdict::Frobenius(_)) | (Status::Fail, Verdict::NotFrobenius(_)) => Status::Pass,
        (Status::Pass, Verdict::NotFrobenius(_)) | (Status::Fail, Verdict::Frobenius(_)) => Status::Fail,
        _ => Status::Undecided,
    };
    checks.record(
        "routes agree",
        agree,
        format!("graded: {graded}, coring: {}", ext.verdict.label()),
        Vec::new(),
    );
    if agree == Status::Fail {
        return Err(Error::InvalidStructure("graded and coring routes disagree on T*".into()));
    }
    let verdict = match (graded, ext.verdict) {
        (_, v @ Verdict::Frobenius(_)) => v,
        (Status::Fail, _) => Verdict::NotFrobenius(reason),
        (_, v @ Verdict::NotFrobenius(_)) => v,
        (Status::Pass, Verdict::Undecided(r)) => Verdict::Undecided(format!("graded criterion holds; {r}")),
        (_, Verdict::Undecided(r)) => Verdict::Undecided(format!("{reason}; {r}")),
    };
    Ok(FrobeniusReport { verdict, checks })
}

/// The mirrored test: `(T*)'` on left graded modules, decided through the
/// opposite coring morphism.
pub fn tstar_mirror_check(m: &GradedMorphism, budget: &Budget) -> Result<FrobeniusReport> {
    let cm = coring_morphism(m)?.opposite();
    let mut rep = frobenius_extension_check(&cm, budget)?;
    rep.checks.tag("(T*)' through the opposite corings");
    Ok(rep)
}
