//! Corings, bicomodules, cotensor products, coseparability and the basic duality.

mod bicomodule;
mod corings;
mod cosep;
mod cotensor;
mod duality;
mod hom;

pub use bicomodule::{check_bicomodule, Bicomodule};
pub use corings::{act_left_after, act_right_after, check_coring, flip_matrix, Coring, CoringRef};
pub use cosep::{
    coseparability, coseparability_report, coseparable, cointegral_system, find_cointegral,
    injectivity_splitting, is_cointegral, retraction_from_cointegral, Coseparability, Splitting,
    SplittingBasis,
};
pub use cotensor::{
    check_cotensor, check_counit_isos, cotensor, left_counit_iso, omega_map, right_counit_iso,
    CotensorSpace, CounitIso,
};
pub(crate) use cotensor::factor_through;
pub use duality::{check_double_dual, double_dual_map, dualize, Dual, Side};
pub use hom::{bicolinear_system, comodule_hom_space, is_bicolinear, nat_space};
