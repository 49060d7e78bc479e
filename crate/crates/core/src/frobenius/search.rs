use rayon::prelude::*;

use crate::algkernel::{
    fgp_left, hom_space, invertible_element_exists, left_dual, separability_element, Invertibility, Linearity,
    DEFAULT_GRID_BUDGET,
};
use crate::coring::{coseparable, Bicomodule};
use crate::error::{Error, Result};
use crate::exactla::{Field, LinearSystem, Mat, Scalar};
use crate::report::Report;

use super::system::{verify_frobenius_system, FrobeniusSystem, Geometry, Lifted};

/// Limits for the budgeted parts of the decision procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Largest absolute value of an integer coefficient tried in a sweep.
    pub height: u32,
    /// Grid evaluations allowed in `invertible_element_exists`.
    pub grid: u64,
    /// Candidate vectors allowed per sweep.
    pub candidates: u64,
}

pub const DEFAULT_HEIGHT: u32 = 3;
pub const DEFAULT_CANDIDATES: u64 = 200_000;

impl Default for Budget {
    fn default() -> Self {
        Budget {
            height: DEFAULT_HEIGHT,
            grid: DEFAULT_GRID_BUDGET,
            candidates: DEFAULT_CANDIDATES,
        }
    }
}

/// A Frobenius pair `(F, G)`: `forward` witnesses `F ⊣ G` for
/// `F = −□_CX`, `G = −□_DΛ`, and `backward` witnesses `G ⊣ F` (the same
/// kind of system with the roles of `X` and `Λ` exchanged).
#[derive(Clone, Debug)]
pub struct FrobeniusPair {
    pub forward: FrobeniusSystem,
    pub backward: FrobeniusSystem,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Frobenius(Box<FrobeniusPair>),
    NotFrobenius(String),
    Undecided(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Frobenius(_) => "Frobenius",
            Verdict::NotFrobenius(_) => "NotFrobenius",
            Verdict::Undecided(_) => "Undecided",
        }
    }
    pub fn is_frobenius(&self) -> bool {
        matches!(self, Verdict::Frobenius(_))
    }
    pub fn is_not_frobenius(&self) -> bool {
        matches!(self, Verdict::NotFrobenius(_))
    }
}

#[derive(Clone, Debug)]
pub struct FrobeniusReport {
    pub verdict: Verdict,
    pub checks: Report,
}

/// Outcome of searching one adjunction direction.
#[derive(Clone, Debug)]
pub enum Direction {
    Found(FrobeniusSystem),
    /// No system exists; the reason is an exact obstruction.
    Impossible(String),
    /// The budget ran out.
    Exhausted(String),
}

/// Searches for `ψ, ω` witnessing `−□_CX ⊣ −□_DΛ`.
///
/// `Ψ` and `Ω` are computed exactly and the zig-zags are bilinear in the
/// coordinates `(c, w)`. With `c` fixed the equations are linear in `w` and
/// conversely; both sweeps run over primitive integer vectors of increasing
/// height. Scaling `(ψ, ω) ↦ (tψ, ω/t)` preserves solutions, so a
/// one-dimensional `Ψ` or `Ω` makes a single linear solve decisive.
pub fn search_direction(x: &Bicomodule, lambda: &Bicomodule, budget: &Budget, log: &mut Report) -> Result<Direction> {
    let g = Geometry::new(x, lambda)?;
    let f = x.field();
    let psis = g.psi_space()?;
    let omegas = g.omega_space()?;
    let (p, q) = (psis.dim(), omegas.dim());
    log.pass(format!("dim Ψ = {p}, dim Ω = {q}"));
    if x.dim() == 0 && lambda.dim() == 0 {
        let psi = Mat::zeros(f, g.k1.dim(), x.left_coring().dim());
        let omega = Mat::zeros(f, x.right_coring().dim(), g.k2.dim());
        return Ok(Direction::Found(FrobeniusSystem {
            x: x.clone(),
            lambda: lambda.clone(),
            psi,
            omega,
        }));
    }
    if p == 0 {
        return Ok(Direction::Impossible("no nonzero bicolinear map C → X□Λ".into()));
    }
    if q == 0 {
        return Ok(Direction::Impossible("no nonzero bicolinear map Λ□X → D".into()));
    }
    if let Some(reason) = ring_obstruction(x, lambda, budget, log)? {
        return Ok(Direction::Impossible(reason));
    }

    let mut y1 = Vec::with_capacity(p);
    let mut y2 = Vec::with_capacity(p);
    for psi in psis.basis() {
        match (g.lift1(&g.v1(psi))?, g.lift2(&g.v2(psi))?) {
            (Lifted::Ok(a), Lifted::Ok(b)) => {
                y1.push(a);
                y2.push(b);
            }
            _ => {
                return Ok(Direction::Exhausted(
                    "a basis map of Ψ leaves the image of the comparison map".into(),
                ))
            }
        }
    }
    let w1: Vec<Mat> = omegas.basis().iter().map(|o| g.w1(o)).collect();
    let w2: Vec<Mat> = omegas.basis().iter().map(|o| g.w2(o)).collect();
    let table = Table {
        f,
        p,
        q,
        a1: (0..p).map(|i| (0..q).map(|j| w1[j].mul(&y1[i]).vectorize()).collect()).collect(),
        a2: (0..p).map(|i| (0..q).map(|j| w2[j].mul(&y2[i]).vectorize()).collect()).collect(),
        defect: omegas
            .basis()
            .iter()
            .map(|o| {
                let mut v = g.kernel_defect1(o).vectorize();
                v.extend(g.kernel_defect2(o).vectorize());
                v
            })
            .collect(),
        target: {
            let mut t = Mat::identity(f, lambda.dim()).vectorize();
            t.extend(Mat::identity(f, x.dim()).vectorize());
            t
        },
    };

    let found = if p == 1 {
        match table.solve_w(&[f.one()])? {
            Some(w) => Some((vec![f.one()], w)),
            None => return Ok(Direction::Impossible("Ψ is one-dimensional and the ω-equations are infeasible".into())),
        }
    } else if q == 1 {
        match table.solve_c(&[f.one()])? {
            Some(c) => Some((c, vec![f.one()])),
            None => return Ok(Direction::Impossible("Ω is one-dimensional and the ψ-equations are infeasible".into())),
        }
    } else {
        let mut found = None;
        let mut exhausted = None;
        'heights: for h in 1..=budget.height as i64 {
            for sweep in [Sweep::FixPsi, Sweep::FixOmega] {
                let n = if sweep == Sweep::FixPsi { p } else { q };
                let Some(cands) = candidates(n, h, budget.candidates) else {
                    exhausted = Some(format!("candidate budget {} exceeded at height {h}", budget.candidates));
                    break 'heights;
                };
                let hit = cands.par_iter().find_map_first(|v| {
                    let v: Vec<Scalar> = v.iter().map(|&k| f.from_i64(k)).collect();
                    match sweep {
                        Sweep::FixPsi => table.solve_w(&v).ok().flatten().map(|w| (v, w)),
                        Sweep::FixOmega => table.solve_c(&v).ok().flatten().map(|c| (c, v)),
                    }
                });
                if hit.is_some() {
                    found = hit;
                    break 'heights;
                }
            }
        }
        if found.is_none() {
            let why = exhausted.unwrap_or_else(|| format!("no witness up to coefficient height {}", budget.height));
            return Ok(Direction::Exhausted(why));
        }
        found
    };
    let (c, w) = found.expect("set above");
    let sys = FrobeniusSystem {
        x: x.clone(),
        lambda: lambda.clone(),
        psi: psis.combine(&c),
        omega: omegas.combine(&w),
    };
    let rep = verify_frobenius_system(&sys);
    if !rep.all_pass() {
        return Err(Error::InvalidStructure(format!("search produced an invalid witness:\n{rep}")));
    }
    Ok(Direction::Found(sys))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Sweep {
    FixPsi,
    FixOmega,
}

/// Vectorized `W_j(ω_j)·Y_i(ψ_i)` for both zig-zags.
struct Table {
    f: Field,
    p: usize,
    q: usize,
    a1: Vec<Vec<Vec<Scalar>>>,
    a2: Vec<Vec<Vec<Scalar>>>,
    /// Values of each `ω_j` on the comparison kernels.
    defect: Vec<Vec<Scalar>>,
    target: Vec<Scalar>,
}

impl Table {
    fn entry(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut v = self.a1[i][j].clone();
        v.extend(self.a2[i][j].iter().cloned());
        v
    }

    /// With `ψ = Σ c_i ψ_i` fixed, solves for `w`.
    fn solve_w(&self, c: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let f = self.f;
        let rows = self.target.len();
        let mut cols = Vec::with_capacity(self.q);
        for j in 0..self.q {
            let mut col = vec![f.zero(); rows];
            for (i, ci) in c.iter().enumerate() {
                if num_traits::Zero::is_zero(ci) {
                    continue;
                }
                for (slot, v) in col.iter_mut().zip(self.entry(i, j)) {
                    *slot = f.add(slot, &f.mul(ci, &v));
                }
            }
            cols.push(col);
        }
        let mut sys = LinearSystem::new(f, self.q);
        sys.equal(&Mat::from_columns(f, rows, &cols), &self.target);
        let drows = self.defect.first().map_or(0, Vec::len);
        if drows > 0 {
            sys.homogeneous(&Mat::from_columns(f, drows, &self.defect));
        }
        sys.solve()
    }

    /// With `ω = Σ w_j ω_j` fixed, solves for `c`.
    fn solve_c(&self, w: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        let f = self.f;
        let drows = self.defect.first().map_or(0, Vec::len);
        for r in 0..drows {
            let mut acc = f.zero();
            for (j, wj) in w.iter().enumerate() {
                acc = f.add(&acc, &f.mul(wj, &self.defect[j][r]));
            }
            if !num_traits::Zero::is_zero(&acc) {
                return Ok(None);
            }
        }
        let rows = self.target.len();
        let mut cols = Vec::with_capacity(self.p);
        for i in 0..self.p {
            let mut col = vec![f.zero(); rows];
            for (j, wj) in w.iter().enumerate() {
                if num_traits::Zero::is_zero(wj) {
                    continue;
                }
                for (slot, v) in col.iter_mut().zip(self.entry(i, j)) {
                    *slot = f.add(slot, &f.mul(wj, &v));
                }
            }
            cols.push(col);
        }
        let mut sys = LinearSystem::new(f, self.p);
        sys.equal(&Mat::from_columns(f, rows, &cols), &self.target);
        sys.solve()
    }
}

/// Primitive-up-to-sign integer vectors of height exactly `h`, first nonzero
/// entry positive, ordered by support size and then lexicographically with
/// digits ordered `0, 1, −1, 2, −2, …`. `None` if there are more than `cap`.
pub fn candidates(n: usize, h: i64, cap: u64) -> Option<Vec<Vec<i64>>> {
    let side = (2 * h + 1) as u64;
    let total = side.checked_pow(n as u32)?;
    if total / 2 > cap {
        return None;
    }
    let digits: Vec<i64> = std::iter::once(0).chain((1..=h).flat_map(|k| [k, -k])).collect();
    let mut out = Vec::new();
    let mut idx = vec![0usize; n];
    loop {
        let v: Vec<i64> = idx.iter().map(|&i| digits[i]).collect();
        let first = v.iter().find(|&&k| k != 0);
        if matches!(first, Some(&k) if k > 0) && v.iter().any(|k| k.abs() == h) {
            out.push(v);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                out.sort_by_key(|v| v.iter().filter(|&&k| k != 0).count());
                return Some(out);
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < digits.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// When both corings are isomorphic to trivial ones the direction reduces to
/// rings: `−⊗_AX ⊣ −⊗_BΛ` iff `_BΛ` is finitely generated projective and
/// `X ≅ Hom_B(_BΛ, B)` as `(A, B)`-bimodules.
fn ring_obstruction(x: &Bicomodule, lambda: &Bicomodule, budget: &Budget, log: &mut Report) -> Result<Option<String>> {
    if !(x.left_coring().is_trivial_like() && x.right_coring().is_trivial_like()) {
        return Ok(None);
    }
    if fgp_left(lambda.carrier())?.is_none() {
        return Ok(Some("trivial corings: _BΛ is not finitely generated projective".into()));
    }
    let (dual, _) = left_dual(lambda.carrier())?;
    let h = hom_space(x.carrier(), &dual, Linearity::Both)?;
    match invertible_element_exists(&h, budget.grid) {
        Invertibility::Yes { .. } => {
            log.pass("trivial corings: X ≅ Hom_B(_BΛ, B)");
            Ok(None)
        }
        Invertibility::No { evaluations } => Ok(Some(format!(
            "trivial corings: X ≇ Hom_B(_BΛ, B) as bimodules (generic determinant ≡ 0, grid exhausted after {evaluations} points)"
        ))),
        Invertibility::Undecided { reason } => {
            log.undecided("trivial corings: X ≅ Hom_B(_BΛ, B)", reason);
            Ok(None)
        }
    }
}

/// Which hypothesis lets a system witness the functor-level statement.
pub fn hypothesis(x: &Bicomodule) -> Result<&'static str> {
    let (c, d) = (x.left_coring(), x.right_coring());
    if c.base().dim() == 1 && d.base().dim() == 1 {
        return Ok("field bases");
    }
    if separability_element(c.base()).is_some() && separability_element(d.base()).is_some() {
        return Ok("separable bases");
    }
    if coseparable(c)? && coseparable(d)? {
        return Ok("coseparable corings");
    }
    Ok("none verified: the witness certifies the bicolinear system only")
}

/// Decides whether `(−□_CX, −□_DΛ)` is a Frobenius pair by searching both
/// adjunction directions.
pub fn search_frobenius_system(x: &Bicomodule, lambda: &Bicomodule, budget: &Budget) -> Result<FrobeniusReport> {
    let mut checks = Report::new("Frobenius pair search");
    let hyp = hypothesis(x)?;
    checks.tag(format!("hypothesis: {hyp}"));
    let mut fwd_log = Report::new("−□X ⊣ −□Λ");
    let forward = search_direction(x, lambda, budget, &mut fwd_log)?;
    checks.merge("forward", fwd_log);
    let mut bwd_log = Report::new("−□Λ ⊣ −□X");
    let backward = search_direction(lambda, x, budget, &mut bwd_log)?;
    checks.merge("backward", bwd_log);
    let verdict = match (forward, backward) {
        (Direction::Impossible(r), _) => Verdict::NotFrobenius(format!("−□X ⊣ −□Λ fails: {r}")),
        (_, Direction::Impossible(r)) => Verdict::NotFrobenius(format!("−□Λ ⊣ −□X fails: {r}")),
        (Direction::Found(a), Direction::Found(b)) => {
            checks.merge("forward witness", verify_frobenius_system(&a));
            checks.merge("backward witness", verify_frobenius_system(&b));
            Verdict::Frobenius(Box::new(FrobeniusPair { forward: a, backward: b }))
        }
        (Direction::Exhausted(r), _) | (_, Direction::Exhausted(r)) => Verdict::Undecided(r),
    };
    Ok(FrobeniusReport { verdict, checks })
}
