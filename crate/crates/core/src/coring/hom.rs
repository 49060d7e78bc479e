use crate::algkernel::{linearity_system, HomSpace, Linearity};
use crate::error::{Error, Result};
use crate::exactla::{left_tensor_coefficients, right_tensor_coefficients, sandwich_coefficients, LinearSystem, Mat};

use super::bicomodule::Bicomodule;

/// Equations for `F: M → N` to be a bimodule map commuting with both coactions:
/// `ρ_N F = (F⊗C)ρ_M` and `λ_N F = (C'⊗F)λ_M`.
pub fn bicolinear_system(m: &Bicomodule, n: &Bicomodule) -> Result<LinearSystem> {
    if !m.same_corings(n) {
        return Err(Error::CoringMismatch("comodule hom space"));
    }
    let mut sys = linearity_system(m.carrier(), n.carrier(), Linearity::Both)?;
    let f = m.field();
    let (t, s) = (n.dim(), m.dim());
    let c = m.right_coring();
    let cl = m.left_coring();
    let ids = Mat::identity(f, s);

    let lhs = sandwich_coefficients(n.rho(), &ids);
    let rhs = left_tensor_coefficients(n.rchain().projection(), &m.rho_raw(), t, s, c.dim());
    sys.homogeneous(&lhs.sub(&rhs));

    let lhs = sandwich_coefficients(n.lambda(), &ids);
    let rhs = right_tensor_coefficients(n.lchain().projection(), &m.lambda_raw(), t, s, cl.dim());
    sys.homogeneous(&lhs.sub(&rhs));
    Ok(sys)
}

/// All bicolinear maps `M → N`.
pub fn comodule_hom_space(m: &Bicomodule, n: &Bicomodule) -> Result<HomSpace> {
    let sys = bicolinear_system(m, n)?;
    Ok(HomSpace::from_system(&sys, n.dim(), m.dim()))
}

/// Natural transformations between the cotensor functors of `Λ` and `Λ'`,
/// identified with bicolinear maps `Λ → Λ'`.
pub fn nat_space(lambda: &Bicomodule, lambda2: &Bicomodule) -> Result<HomSpace> {
    comodule_hom_space(lambda, lambda2)
}

/// Whether `F` is bicolinear, re-checked as matrix identities.
pub fn is_bicolinear(m: &Bicomodule, n: &Bicomodule, map: &Mat) -> bool {
    match bicolinear_system(m, n) {
        Ok(sys) => {
            map.shape() == (n.dim(), m.dim())
                && sys.coefficient_matrix().mul_vec(&map.vectorize()).iter().all(num_traits::Zero::is_zero)
        }
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::algkernel::FinAlgebra;
    use crate::coring::Coring;
    use crate::exactla::Field;

    #[test]
    fn grouplike_nat_space_has_one_dimension_per_point() {
        let c = Arc::new(Coring::grouplike(Field::Rationals, 3));
        let reg = Bicomodule::regular(&c);
        assert_eq!(nat_space(&reg, &reg).unwrap().dim(), 3);
        assert_eq!(comodule_hom_space(&reg, &reg).unwrap().dim(), 3);
    }

    #[test]
    fn trivial_coring_endomorphisms_are_the_centre() {
        let q = Field::Rationals;
        let c = Arc::new(Coring::trivial(&Arc::new(FinAlgebra::cyclic_group_algebra(q, 2))));
        let reg = Bicomodule::regular(&c);
        let h = comodule_hom_space(&reg, &reg).unwrap();
        assert_eq!(h.dim(), 2);
        assert!(h.contains(&Mat::identity(q, 2)));
    }
}
