//! Exact linear algebra over `ℚ` and `F_p`.

mod field;
mod mat;
mod subspace;
mod system;

pub use field::{format_scalar, Field, Scalar};
pub use mat::{Echelon, Elimination, Mat};
pub use subspace::{Quotient, Subspace};
pub use system::{
    coefficients_of, left_tensor_coefficients, right_tensor_coefficients, sandwich_coefficients,
    LinearSystem,
};
