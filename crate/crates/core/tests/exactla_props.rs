use proptest::prelude::*;

use coring_core::algkernel::{invertible_element_exists, HomSpace, Invertibility};
use coring_core::exactla::{Elimination, Field, Mat, Subspace};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rationals),
        Just(Field::prime(2).unwrap()),
        Just(Field::prime(5).unwrap()),
    ]
}

/// Small integer matrices with many zeros, so rank deficits are common.
fn mat_in(f: Field, rows: usize, cols: usize) -> impl Strategy<Value = Mat> {
    proptest::collection::vec(prop_oneof![3 => Just(0i64), 2 => -3i64..=3], rows * cols)
        .prop_map(move |v| Mat::new(f, rows, cols, v.into_iter().map(|x| f.from_i64(x)).collect()).unwrap())
}

fn mat() -> impl Strategy<Value = Mat> {
    (field(), 1usize..=5, 1usize..=5).prop_flat_map(|(f, r, c)| mat_in(f, r, c))
}

fn square() -> impl Strategy<Value = Mat> {
    (field(), 1usize..=4).prop_flat_map(|(f, n)| mat_in(f, n, n))
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, .. ProptestConfig::default() })]

    #[test]
    fn both_eliminations_agree(m in mat()) {
        let (a, b) = (m.rref_with(Elimination::FractionFree), m.rref_with(Elimination::GaussJordan));
        prop_assert_eq!(a.pivots, b.pivots);
        prop_assert_eq!(a.rows, b.rows);
    }

    #[test]
    fn rank_nullity(m in mat()) {
        let k = m.kernel();
        prop_assert_eq!(m.rank() + k.dim(), m.cols());
        prop_assert!(m.mul(&k.inclusion()).is_zero());
        prop_assert_eq!(m.image().dim(), m.rank());
        prop_assert_eq!(m.transpose().rank(), m.rank());
    }

    #[test]
    fn solve_is_exact((m, x) in mat().prop_flat_map(|m| {
        let f = m.field();
        let c = m.cols();
        (Just(m), mat_in(f, c, 1))
    })) {
        let b = m.mul(&x).col(0);
        let sol = m.solve(&b).unwrap().expect("consistent system");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn inconsistent_systems_are_detected(m in mat()) {
        let f = m.field();
        let img = m.image();
        let target: Vec<_> = (0..m.rows()).map(|i| f.from_i64(i as i64 + 1)).collect();
        prop_assert_eq!(m.solve(&target).unwrap().is_some(), img.contains(&target));
    }

    #[test]
    fn inverse_iff_full_rank(m in square()) {
        let n = m.rows();
        match m.inverse() {
            Some(inv) => {
                prop_assert_eq!(m.rank(), n);
                prop_assert!(m.mul(&inv).is_identity());
                prop_assert!(inv.mul(&m).is_identity());
            }
            None => prop_assert!(m.rank() < n),
        }
        prop_assert_eq!(m.determinant_is_nonzero(), m.rank() == n);
    }

    #[test]
    fn kronecker_mixed_product((a, b, c, d) in field().prop_flat_map(|f| (
        mat_in(f, 2, 3), mat_in(f, 2, 2), mat_in(f, 3, 2), mat_in(f, 2, 1),
    ))) {
        prop_assert_eq!(a.kron(&b).mul(&c.kron(&d)), a.mul(&c).kron(&b.mul(&d)));
    }

    #[test]
    fn sum_and_intersection_dimensions((u, w) in (field(), 1usize..=5).prop_flat_map(|(f, n)| (
        mat_in(f, n, 3), mat_in(f, n, 3),
    ))) {
        let (u, w) = (u.image(), w.image());
        let s = u.sum(&w);
        let i = u.intersect(&w);
        prop_assert_eq!(s.dim() + i.dim(), u.dim() + w.dim());
        prop_assert!(s.contains_subspace(&u) && s.contains_subspace(&w));
        prop_assert!(u.contains_subspace(&i) && w.contains_subspace(&i));
    }

    #[test]
    fn quotient_splits(m in mat()) {
        let s = m.image();
        let q = s.quotient();
        prop_assert_eq!(q.dim() + s.dim(), m.rows());
        prop_assert!(q.projection.mul(&q.section).is_identity());
        prop_assert!(q.projection.mul(&s.inclusion()).is_zero());
    }
}

fn hom(f: Field, n: usize, mats: &[Mat]) -> HomSpace {
    let vecs = mats.iter().map(Mat::vectorize).collect();
    HomSpace::from_subspace(n, n, Subspace::from_spanning(f, n * n, vecs))
}

/// Every point of `F_p^m`.
fn exhaustive(h: &HomSpace, p: u64) -> bool {
    let f = h.field();
    let m = h.dim();
    (0..p.pow(m as u32)).any(|mut idx| {
        let t: Vec<_> = (0..m)
            .map(|_| {
                let d = f.from_i64((idx % p) as i64);
                idx /= p;
                d
            })
            .collect();
        h.combine(&t).determinant_is_nonzero()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 128, .. ProptestConfig::default() })]

    /// Over `F_5` with `n ≤ 3` the grid is a vanishing certificate, so the
    /// decision must match brute force over the whole space.
    #[test]
    fn invertibility_matches_brute_force_over_f5(mats in (1usize..=3, 1usize..=3).prop_flat_map(|(n, m)| {
        proptest::collection::vec(mat_in(Field::prime(5).unwrap(), n, n), m)
    })) {
        let f = Field::prime(5).unwrap();
        let n = mats[0].rows();
        let h = hom(f, n, &mats);
        let expect = exhaustive(&h, 5);
        match invertible_element_exists(&h, 1_000_000) {
            Invertibility::Yes { map, .. } => {
                prop_assert!(expect);
                prop_assert!(map.determinant_is_nonzero());
                prop_assert!(h.contains(&map));
            }
            Invertibility::No { .. } => prop_assert!(!expect),
            Invertibility::Undecided { reason } => prop_assert!(false, "undecided: {}", reason),
        }
    }

    /// Over `F_2` with `n ≥ 2` a zero grid is no certificate.
    #[test]
    fn small_prime_grids_do_not_overclaim(mats in proptest::collection::vec(mat_in(Field::prime(2).unwrap(), 2, 2), 1..=3)) {
        let f = Field::prime(2).unwrap();
        let h = hom(f, 2, &mats);
        let expect = exhaustive(&h, 2);
        match invertible_element_exists(&h, 1_000_000) {
            Invertibility::Yes { .. } => prop_assert!(expect),
            Invertibility::No { .. } => prop_assert!(!expect),
            Invertibility::Undecided { .. } => {}
        }
    }
}

#[test]
fn field_arithmetic_over_f7() {
    let f = Field::prime(7).unwrap();
    for a in 1..7 {
        let x = f.from_i64(a);
        let inv = f.inv(&x).unwrap();
        assert_eq!(f.mul(&x, &inv), f.one());
    }
    assert_eq!(f.from_i64(-1), f.from_i64(6));
    assert_eq!(f.parse("1/3").unwrap(), f.from_i64(5));
    assert!(f.parse("1/7").is_err());
    assert!(f.inv(&f.zero()).is_none());
}
