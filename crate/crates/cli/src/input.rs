//! The JSON input document. Named objects live in arrays so that report
//! order follows declaration order.

use serde::Deserialize;

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum FieldSpec {
    /// `"Q"`
    Named(String),
    /// `{"Fp": p}`
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

/// `"p/q"` or an integer.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum ScalarSpec {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum MatrixSpec {
    /// Row-major list of rows.
    Dense(Vec<Vec<ScalarSpec>>),
    /// `{"rows", "cols", "entries": [[i, j, s], ...]}`; duplicates add up.
    Sparse {
        rows: usize,
        cols: usize,
        entries: Vec<(usize, usize, ScalarSpec)>,
    },
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputDocument {
    pub field: Option<FieldSpec>,
    #[serde(default)]
    pub description: Option<String>,
    #[serde(default)]
    pub groups: Vec<GroupSpec>,
    #[serde(default)]
    pub gsets: Vec<GSetSpec>,
    #[serde(default)]
    pub algebras: Vec<AlgebraSpec>,
    #[serde(default)]
    pub gradings: Vec<GradingSpec>,
    #[serde(default)]
    pub bimodules: Vec<BimoduleSpec>,
    #[serde(default)]
    pub entwinings: Vec<EntwiningSpec>,
    #[serde(default)]
    pub corings: Vec<CoringSpec>,
    #[serde(default)]
    pub comodules: Vec<ComoduleSpec>,
    #[serde(default)]
    pub graded_modules: Vec<GradedModuleSpec>,
    #[serde(default)]
    pub morphisms: Vec<MorphismSpec>,
    #[serde(default)]
    pub systems: Vec<SystemSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    pub name: String,
    /// `table[g][h] = gh`.
    pub table: Option<Vec<Vec<usize>>>,
    pub cyclic: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetSpec {
    pub name: String,
    pub group: String,
    /// `action[x][g] = x·g`.
    pub action: Option<Vec<Vec<usize>>>,
    #[serde(default)]
    pub regular: bool,
    /// `n` points, all fixed.
    pub points: Option<usize>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub name: String,
    pub dim: Option<usize>,
    pub unit: Option<Vec<ScalarSpec>>,
    /// `[i, j, k, c]`: `e_i e_j` has coefficient `c` at `e_k`.
    pub mult: Option<Vec<(usize, usize, usize, ScalarSpec)>>,
    /// `ground`, `upper_triangular`, `dual_numbers`.
    pub builtin: Option<String>,
    /// Name of a group.
    pub group_algebra: Option<String>,
    /// `k[x]/(x^n − Σ c_i x^i)` from `[c_0, …, c_{n-1}]`.
    pub monic_quotient: Option<Vec<ScalarSpec>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradingSpec {
    pub name: String,
    pub algebra: String,
    pub group: String,
    /// Degree of each basis vector; omitted means concentrated in `e`.
    pub degree: Option<Vec<usize>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BimoduleSpec {
    pub name: String,
    /// Algebra names; omitted means the ground field.
    pub left: Option<String>,
    pub right: Option<String>,
    pub dim: Option<usize>,
    /// One `dim × dim` matrix per basis vector of the algebra.
    pub left_action: Option<Vec<MatrixSpec>>,
    pub right_action: Option<Vec<MatrixSpec>>,
    /// `A` as an `(A, A)`-bimodule.
    pub regular: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntwiningSpec {
    pub name: String,
    pub algebra: Option<String>,
    pub coalgebra: Option<String>,
    /// `C⊗A → A⊗C`; omitted means the flip.
    pub psi: Option<MatrixSpec>,
    /// Grading name; with `gset`, `ψ(x⊗a_g) = a_g⊗xg`.
    pub graded: Option<String>,
    pub gset: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoringSpec {
    pub name: String,
    /// `trivial`, `grouplike`, `dual`, `sweedler`, `graded`, `entwining`, `raw`.
    pub kind: String,
    pub algebra: Option<String>,
    pub size: Option<usize>,
    /// Sweedler: `iota: base → algebra`.
    pub base: Option<String>,
    pub iota: Option<MatrixSpec>,
    pub grading: Option<String>,
    pub gset: Option<String>,
    pub entwining: Option<String>,
    /// Raw: a bimodule and `Δ` in Kronecker coordinates of `C⊗_kC`.
    pub carrier: Option<String>,
    pub delta: Option<MatrixSpec>,
    pub epsilon: Option<MatrixSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComoduleSpec {
    pub name: String,
    /// `C` as a `(C, C)`-bicomodule.
    pub regular: Option<String>,
    /// Coring names; omitted means the ground field.
    pub left: Option<String>,
    pub right: Option<String>,
    pub carrier: Option<String>,
    /// Kronecker coordinates of `C'⊗_kM` and `M⊗_kC`.
    pub lambda: Option<MatrixSpec>,
    pub rho: Option<MatrixSpec>,
    /// A graded module viewed as a bicomodule.
    pub graded: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GradedModuleSpec {
    pub name: String,
    /// Graded coring name: `A⊗kX` itself.
    pub hat: Option<String>,
    pub free_right: Option<String>,
    pub free_left: Option<String>,
    pub shift: Option<usize>,
    pub sum: Option<Vec<String>>,
    /// Explicit: graded corings on each side, a bimodule and `(x', x)` per basis vector.
    pub left: Option<String>,
    pub right: Option<String>,
    pub carrier: Option<String>,
    pub degrees: Option<Vec<(usize, usize)>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub name: String,
    /// `coring`, `algebra`, `graded`, `entwining`.
    pub kind: String,
    pub source: String,
    pub target: String,
    pub rho: Option<MatrixSpec>,
    pub phi: Option<MatrixSpec>,
    pub group_map: Option<Vec<usize>>,
    pub set_map: Option<Vec<usize>>,
    pub alpha: Option<MatrixSpec>,
    pub gamma: Option<MatrixSpec>,
}

/// A pair `(X, Λ)` for `frobenius-pair`, optionally with a witness to re-verify.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemSpec {
    pub name: String,
    pub x: String,
    pub lambda: String,
    pub psi_raw: Option<MatrixSpec>,
    pub omega_raw: Option<MatrixSpec>,
}
