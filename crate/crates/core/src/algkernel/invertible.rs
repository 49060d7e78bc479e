use rayon::prelude::*;

use crate::exactla::{Field, Mat, Scalar};

use super::hom::HomSpace;

pub const DEFAULT_GRID_BUDGET: u64 = 1_000_000;

/// Outcome of deciding whether a hom space contains an invertible map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Invertibility {
    /// `map = Σ coeffs_i h_i` is invertible.
    Yes { coeffs: Vec<Scalar>, map: Mat },
    /// The generic determinant vanishes on the whole grid, hence identically.
    No { evaluations: u64 },
    /// The grid exceeds the budget, or is too small to certify over `F_p`.
    Undecided { reason: String },
}

impl Invertibility {
    pub fn is_yes(&self) -> bool {
        matches!(self, Invertibility::Yes { .. })
    }
    pub fn is_no(&self) -> bool {
        matches!(self, Invertibility::No { .. })
    }
}

/// Decides whether `Σ t_i h_i` is invertible for some scalars `t_i`.
///
/// `det(Σ t_i h_i)` has degree at most `d` in each variable, so it is the
/// zero polynomial iff it vanishes on `{0..d}^m` whenever those `d+1` points
/// are distinct in `k`. Grid points are visited in lexicographic order and
/// the first nonzero point is returned, independent of thread count.
pub fn invertible_element_exists(h: &HomSpace, grid_budget: u64) -> Invertibility {
    let d = h.source_dim();
    if d != h.target_dim() {
        return Invertibility::No { evaluations: 0 };
    }
    let f = h.field();
    let m = h.dim();
    if d == 0 {
        return Invertibility::Yes {
            coeffs: vec![Scalar::from_integer(0.into()); m],
            map: Mat::zeros(f, 0, 0),
        };
    }
    if m == 0 {
        return Invertibility::No { evaluations: 0 };
    }
    // A basis element that is already invertible is the common case.
    for (i, b) in h.basis().iter().enumerate() {
        if b.determinant_is_nonzero() {
            let mut coeffs = vec![f.zero(); m];
            coeffs[i] = f.one();
            return Invertibility::Yes { coeffs, map: b.clone() };
        }
    }
    let base = (d + 1) as u64;
    let total = match base.checked_pow(m as u32) {
        Some(t) if t <= grid_budget => t,
        _ => {
            return Invertibility::Undecided {
                reason: format!("grid {base}^{m} exceeds budget {grid_budget}"),
            }
        }
    };
    let point = |idx: u64| -> Vec<Scalar> {
        let mut digits = vec![f.zero(); m];
        let mut r = idx;
        for k in (0..m).rev() {
            digits[k] = f.from_i64((r % base) as i64);
            r /= base;
        }
        digits
    };
    let found = (0..total)
        .into_par_iter()
        .find_first(|&idx| h.combine(&point(idx)).determinant_is_nonzero());
    match found {
        Some(idx) => {
            let coeffs = point(idx);
            let map = h.combine(&coeffs);
            Invertibility::Yes { coeffs, map }
        }
        None => match f {
            Field::Prime(p) if p <= d as u64 => Invertibility::Undecided {
                reason: format!("grid of size {} is not a vanishing certificate over F_{p}", d + 1),
            },
            _ => Invertibility::No { evaluations: total },
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Subspace;

    fn space(f: Field, n: usize, mats: &[Mat]) -> HomSpace {
        let vecs = mats.iter().map(Mat::vectorize).collect();
        HomSpace::from_subspace(n, n, Subspace::from_spanning(f, n * n, vecs))
    }

    #[test]
    fn identity_is_found() {
        let f = Field::Rationals;
        let h = space(f, 2, &[Mat::identity(f, 2)]);
        assert!(invertible_element_exists(&h, DEFAULT_GRID_BUDGET).is_yes());
    }

    #[test]
    fn common_kernel_forces_no() {
        let f = Field::Rationals;
        let q = |v| f.from_i64(v);
        // rank-one maps killing (0,0,1)
        let a = Mat::from_rows(f, 3, &[vec![q(1), q(0), q(0)], vec![q(0); 3], vec![q(0); 3]]);
        let b = Mat::from_rows(f, 3, &[vec![q(0); 3], vec![q(0), q(1), q(0)], vec![q(0); 3]]);
        let h = space(f, 3, &[a, b]);
        assert_eq!(invertible_element_exists(&h, DEFAULT_GRID_BUDGET), Invertibility::No { evaluations: 16 });
    }

    #[test]
    fn combination_needed() {
        let f = Field::Rationals;
        let q = |v| f.from_i64(v);
        let a = Mat::from_rows(f, 2, &[vec![q(1), q(0)], vec![q(0), q(0)]]);
        let b = Mat::from_rows(f, 2, &[vec![q(0), q(0)], vec![q(0), q(1)]]);
        let h = space(f, 2, &[a, b]);
        match invertible_element_exists(&h, DEFAULT_GRID_BUDGET) {
            Invertibility::Yes { map, .. } => assert!(map.determinant_is_nonzero()),
            other => panic!("{other:?}"),
        }
    }
}
