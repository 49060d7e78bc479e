//! Finite-dimensional algebras, bimodules, balanced tensor products and hom spaces.

mod algebra;
mod bimodule;
mod hom;
mod invertible;
mod tensor;

pub use algebra::{check_algebra, check_algebra_map, FinAlgebra};
pub(crate) use algebra::combine;
pub use bimodule::{check_bimodule, AlgRef, Bimodule};
pub(crate) use bimodule::same_alg;
pub use hom::{
    add_commutation, fgp_left, fgp_right, hom_space, left_dual, linearity_system, right_dual,
    separability_element, DualBasis, HomSpace, Linearity,
};
pub use invertible::{invertible_element_exists, Invertibility, DEFAULT_GRID_BUDGET};
pub use tensor::{balanced_tensor, BalancedTensor, TensorChain};
