//! Graded modules over a group-graded algebra and a `G`-set, and their
//! description as comodules over the coring `A⊗kX`.

mod algebra;
mod cohom;
mod group;
mod hat;
mod module;
mod tstar;

pub(crate) use algebra::permutation;
pub use algebra::{build_graded_coring, graded_cointegral, GradedAlgebra, GradedCoring, GradedRef};
pub use cohom::{cohom_graded, graded_dual, GradedCohom, GradedDual};
pub use group::{FiniteGroup, GSet, GSetRef, GroupRef};
pub use hat::{
    graded_hom, hat_tensor, menini_counit, menini_triangles, menini_unit, GradedHom, HatTensor, MeniniCounit,
    MeniniUnit,
};
pub use module::{comodule_of_graded, fgp_check, graded_of_comodule, BigradedBimodule};
pub use tstar::{
    check_graded_morphism, coring_morphism, tstar, tstar_frobenius_check, tstar_left, tstar_mirror_check,
    tstar_route_check, GradedMorphism,
};
