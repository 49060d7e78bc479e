//! Coring morphisms, Frobenius systems and pairs, Frobenius extensions and
//! Frobenius corings.

mod checks;
mod morphism;
mod search;
mod system;

pub use checks::{dual_ring, dual_ring_route, forgetful_pair, frobenius_coring_check, frobenius_extension_check, DualRing};
pub use morphism::{check_coring_morphism, induction_data, trivial_morphism, CoringMorphism};
pub use search::{
    candidates, hypothesis, search_direction, search_frobenius_system, Budget, Direction, FrobeniusPair,
    FrobeniusReport, Verdict, DEFAULT_CANDIDATES, DEFAULT_HEIGHT,
};
pub use system::{check_naturality, mirror_system, verify_frobenius_system, FrobeniusSystem};
