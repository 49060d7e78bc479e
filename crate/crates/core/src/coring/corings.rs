use std::sync::Arc;

use crate::algkernel::{check_bimodule, same_alg, AlgRef, Bimodule, FinAlgebra, TensorChain};
use crate::error::{Error, Result};
use crate::exactla::{Field, Mat};
use crate::report::Report;

/// An `A`-coring: an `A`-bimodule `C` with `Δ: C → C⊗_AC` and `ε: C → A`.
///
/// `delta` lands in the coordinates of `cc`, the chain `(C, C)`.
#[derive(Clone, Debug)]
pub struct Coring {
    name: String,
    carrier: Bimodule,
    cc: TensorChain,
    delta: Mat,
    epsilon: Mat,
}

pub type CoringRef = Arc<Coring>;

impl PartialEq for Coring {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.delta == other.delta && self.epsilon == other.epsilon
    }
}

pub(crate) fn same_coring(a: &CoringRef, b: &CoringRef) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl Coring {
    /// `delta` in quotient coordinates of `C⊗_AC`.
    pub fn new(name: impl Into<String>, carrier: Bimodule, delta: Mat, epsilon: Mat) -> Result<Self> {
        if !same_alg(carrier.left_alg(), carrier.right_alg()) {
            return Err(Error::AlgebraMismatch("coring carrier must be an A-bimodule"));
        }
        let cc = TensorChain::pair(&carrier, &carrier)?;
        let d = carrier.dim();
        if delta.shape() != (cc.dim(), d) {
            return Err(Error::DimensionMismatch {
                op: "Coring::new (delta)",
                expected: cc.dim(),
                got: delta.rows(),
            });
        }
        if epsilon.shape() != (carrier.left_alg().dim(), d) {
            return Err(Error::DimensionMismatch {
                op: "Coring::new (epsilon)",
                expected: carrier.left_alg().dim(),
                got: epsilon.rows(),
            });
        }
        Ok(Coring {
            name: name.into(),
            carrier,
            cc,
            delta,
            epsilon,
        })
    }

    /// `delta_raw` in Kronecker coordinates of `C⊗_kC` (`dim² × dim`).
    pub fn from_raw(name: impl Into<String>, carrier: Bimodule, delta_raw: &Mat, epsilon: Mat) -> Result<Self> {
        let cc = TensorChain::pair(&carrier, &carrier)?;
        if delta_raw.rows() != cc.raw_dim() {
            return Err(Error::DimensionMismatch {
                op: "Coring::from_raw",
                expected: cc.raw_dim(),
                got: delta_raw.rows(),
            });
        }
        let delta = cc.projection().mul(delta_raw);
        Coring::new(name, carrier, delta, epsilon)
    }

    /// The trivial `A`-coring `A`, `Δ(a) = a⊗1`, `ε = id`.
    pub fn trivial(a: &AlgRef) -> Self {
        let carrier = Bimodule::regular(a);
        let f = a.field();
        let raw = Mat::identity(f, a.dim()).kron(&a.unit_map());
        Coring::from_raw(format!("trivial({})", a.name()), carrier, &raw, Mat::identity(f, a.dim()))
            .unwrap()
    }

    /// The ground field as a coalgebra over itself.
    pub fn ground(field: Field) -> Self {
        Coring::trivial(&Arc::new(FinAlgebra::ground(field)))
    }

    /// Grouplike coalgebra `kX`, `|X| = n`.
    pub fn grouplike(field: Field, n: usize) -> Self {
        let carrier = Bimodule::vector_space(field, n);
        let raw = Mat::from_fn(field, n * n, n, |r, c| {
            if r == c * n + c {
                field.one()
            } else {
                field.zero()
            }
        });
        let eps = Mat::from_fn(field, 1, n, |_, _| field.one());
        Coring::from_raw(format!("k{{{n} grouplikes}}"), carrier, &raw, eps).unwrap()
    }

    /// The dual coalgebra `A*` of a finite-dimensional algebra: `Δ = μ^T`, `ε = 1^T`.
    pub fn dual_of(a: &FinAlgebra) -> Self {
        let f = a.field();
        let carrier = Bimodule::vector_space(f, a.dim());
        let eps = a.unit_map().transpose();
        Coring::from_raw(format!("({})*", a.name()), carrier, &a.mult().transpose(), eps).unwrap()
    }

    /// Sweedler's canonical coring `A⊗_BA` for an algebra map `iota: B → A`,
    /// `Δ(a⊗a') = (a⊗1)⊗_A(1⊗a')`, `ε(a⊗a') = aa'`.
    pub fn sweedler(a: &AlgRef, b: &AlgRef, iota: &Mat) -> Result<Self> {
        let reg = Bimodule::regular(a);
        let ab = reg.restrict(None, Some((b, iota)))?;
        let ba = reg.restrict(Some((b, iota)), None)?;
        let chain = TensorChain::pair(&ab, &ba)?;
        let carrier = chain.bimodule().clone();
        let f = a.field();
        let id = Mat::identity(f, a.dim());
        let u = a.unit_map();
        let left_part = chain.projection().mul(&id.kron(&u));
        let right_part = chain.projection().mul(&u.kron(&id));
        let cc = TensorChain::pair(&carrier, &carrier)?;
        let delta = TensorChain::map(&chain, &cc, &[&left_part, &right_part]);
        let eps = a.mult().mul(chain.section());
        Coring::new(format!("{}(x)_{}{}", a.name(), b.name(), a.name()), carrier, delta, eps)
    }

    /// `C^op` as an `A^op`-coring, `Δ^op = flip ∘ Δ`.
    pub fn opposite(&self) -> Coring {
        let carrier = self.carrier.opposite();
        let d = self.dim();
        let f = self.field();
        let flip = flip_matrix(f, d, d);
        let raw = flip.mul(&self.cc.section().mul(&self.delta));
        Coring::from_raw(format!("{}^op", self.name), carrier, &raw, self.epsilon.clone()).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }
    pub fn field(&self) -> Field {
        self.carrier.field()
    }
    pub fn dim(&self) -> usize {
        self.carrier.dim()
    }
    pub fn base(&self) -> &AlgRef {
        self.carrier.left_alg()
    }
    pub fn carrier(&self) -> &Bimodule {
        &self.carrier
    }
    pub fn cc(&self) -> &TensorChain {
        &self.cc
    }
    pub fn delta(&self) -> &Mat {
        &self.delta
    }
    /// `Δ` in raw coordinates of `C⊗_kC`.
    pub fn delta_raw(&self) -> Mat {
        self.cc.section().mul(&self.delta)
    }
    pub fn epsilon(&self) -> &Mat {
        &self.epsilon
    }

    /// Whether `ε` is bijective, i.e. the coring is isomorphic to the trivial one.
    pub fn is_trivial_like(&self) -> bool {
        self.epsilon.rows() == self.epsilon.cols() && self.epsilon.determinant_is_nonzero()
    }
}

/// Permutation `x⊗y ↦ y⊗x` from `k^p ⊗ k^q` to `k^q ⊗ k^p`.
pub fn flip_matrix(f: Field, p: usize, q: usize) -> Mat {
    let mut m = Mat::zeros(f, p * q, p * q);
    for i in 0..p {
        for j in 0..q {
            m.set(j * p + i, i * q + j, f.one());
        }
    }
    m
}

/// Raw map `X⊗M → M`, `x⊗m ↦ φ(x)·m`, for `φ: X → A` acting on the left of `M`.
pub fn act_left_after(m: &Bimodule, phi: &Mat) -> Mat {
    let id = Mat::identity(m.field(), m.dim());
    m.left_action_map().mul(&phi.kron(&id))
}

/// Raw map `M⊗X → M`, `m⊗x ↦ m·φ(x)`.
pub fn act_right_after(m: &Bimodule, phi: &Mat) -> Mat {
    let id = Mat::identity(m.field(), m.dim());
    m.right_action_map().mul(&id.kron(phi))
}

pub fn check_coring(c: &Coring) -> Report {
    let mut r = Report::new(format!("coring {}", c.name));
    r.merge("carrier", check_bimodule(&c.carrier));
    let a = c.base();
    let cc = c.cc.bimodule();
    let reg = Bimodule::regular(a);
    let mut ok_d = true;
    let mut ok_e = true;
    for i in 0..a.dim() {
        ok_d &= c.delta.mul(c.carrier.left_mat(i)) == cc.left_mat(i).mul(&c.delta);
        ok_d &= c.delta.mul(c.carrier.right_mat(i)) == cc.right_mat(i).mul(&c.delta);
        ok_e &= c.epsilon.mul(c.carrier.left_mat(i)) == reg.left_mat(i).mul(&c.epsilon);
        ok_e &= c.epsilon.mul(c.carrier.right_mat(i)) == reg.right_mat(i).mul(&c.epsilon);
    }
    r.check("delta is an A-bimodule map", ok_d, "Δ does not commute with the actions");
    r.check("epsilon is an A-bimodule map", ok_e, "ε does not commute with the actions");

    let f = c.field();
    let id = Mat::identity(f, c.dim());
    let ccc = match TensorChain::new(vec![c.carrier.clone(), c.carrier.clone(), c.carrier.clone()]) {
        Ok(t) => t,
        Err(e) => {
            r.fail("coassociativity", e.to_string(), Vec::new());
            return r;
        }
    };
    let draw = c.delta_raw();
    let lhs = TensorChain::map(&c.cc, &ccc, &[&id, &draw]).mul(&c.delta);
    let rhs = TensorChain::map(&c.cc, &ccc, &[&draw, &id]).mul(&c.delta);
    r.check_eq("coassociativity", &lhs, &rhs);
    let left_counit = act_left_after(&c.carrier, &c.epsilon).mul(&draw);
    let right_counit = act_right_after(&c.carrier, &c.epsilon).mul(&draw);
    r.check_eq("left counit", &left_counit, &id);
    r.check_eq("right counit", &right_counit, &id);
    r
}
