use std::sync::Arc;

use coring_core::algkernel::{Bimodule, FinAlgebra};
use coring_core::coring::*;
use coring_core::exactla::{Field, Mat};

fn q() -> Field {
    Field::Rationals
}

/// Right comodule over grouplike `kX` with the given degrees.
fn graded_right(c: &CoringRef, degrees: &[usize]) -> Bicomodule {
    let f = q();
    let n = degrees.len();
    let x = c.dim();
    let raw = Mat::from_fn(f, n * x, n, |r, col| {
        if r == col * x + degrees[col] {
            f.one()
        } else {
            f.zero()
        }
    });
    Bicomodule::from_raw(
        Arc::new(Coring::ground(f)),
        c.clone(),
        Bimodule::vector_space(f, n),
        &Mat::identity(f, n),
        &raw,
    )
    .unwrap()
}

fn graded_left(c: &CoringRef, degrees: &[usize]) -> Bicomodule {
    let f = q();
    let n = degrees.len();
    let raw = Mat::from_fn(f, c.dim() * n, n, |r, col| {
        if r == degrees[col] * n + col {
            f.one()
        } else {
            f.zero()
        }
    });
    Bicomodule::from_raw(
        c.clone(),
        Arc::new(Coring::ground(f)),
        Bimodule::vector_space(f, n),
        &raw,
        &Mat::identity(f, n),
    )
    .unwrap()
}

#[test]
fn grouplike_cotensor_dimension() {
    let c = Arc::new(Coring::grouplike(q(), 2));
    let m = graded_right(&c, &[0, 1, 1]);
    let n = graded_left(&c, &[0, 0, 0, 1]);
    assert!(check_bicomodule(&m).all_pass());
    assert!(check_bicomodule(&n).all_pass());
    let s = cotensor(&m, &n).unwrap();
    assert_eq!(s.dim(), 5);
    assert!(check_cotensor(&s).all_pass());
}

#[test]
fn counit_isomorphisms_hold() {
    let f = q();
    let c = Arc::new(Coring::grouplike(f, 2));
    let m = graded_right(&c, &[0, 1, 1]);
    let n = graded_left(&c, &[1, 0]);
    for b in [m, n, Bicomodule::regular(&c)] {
        let rep = check_counit_isos(&b);
        assert!(rep.all_pass(), "{rep}");
    }
    let t2 = Arc::new(Coring::trivial(&Arc::new(FinAlgebra::upper_triangular(f))));
    assert!(check_counit_isos(&Bicomodule::regular(&t2)).all_pass());
    let d = Arc::new(Coring::dual_of(&FinAlgebra::dual_numbers(f)));
    assert!(check_counit_isos(&Bicomodule::regular(&d)).all_pass());
}

#[test]
fn cotensor_rejects_mismatched_corings() {
    let f = q();
    let c = Arc::new(Coring::grouplike(f, 2));
    let d = Arc::new(Coring::grouplike(f, 3));
    let m = graded_right(&c, &[0]);
    let n = graded_left(&d, &[0]);
    assert!(cotensor(&m, &n).is_err());
}

#[test]
fn dual_of_regular_grouplike_is_left_regular() {
    let f = q();
    let c = Arc::new(Coring::grouplike(f, 3));
    let right = Bicomodule::regular(&c).forget_left();
    let dual = dualize(&right, Side::Right).unwrap();
    assert_eq!(dual.comodule.dim(), 3);
    assert!(check_bicomodule(&dual.comodule).all_pass());
    let left = Bicomodule::regular(&c).forget_right();
    let h = comodule_hom_space(&dual.comodule, &left).unwrap();
    let inv = coring_core::algkernel::invertible_element_exists(&h, 1_000_000);
    assert!(inv.is_yes());
}

#[test]
fn double_dual_is_bijective() {
    let f = q();
    let cs = [
        Arc::new(Coring::grouplike(f, 2)),
        Arc::new(Coring::dual_of(&FinAlgebra::dual_numbers(f))),
        Arc::new(Coring::dual_of(&FinAlgebra::upper_triangular(f))),
        Arc::new(Coring::trivial(&Arc::new(FinAlgebra::cyclic_group_algebra(f, 2)))),
    ];
    for c in cs {
        let rep = check_double_dual(&Bicomodule::regular(&c));
        assert!(rep.all_pass(), "{rep}");
    }
}

#[test]
fn coseparable_implies_split() {
    let f = q();
    let c = Arc::new(Coring::grouplike(f, 2));
    assert!(coseparability(&c).unwrap().is_yes());
    for degs in [vec![0], vec![1, 1, 0], vec![0, 1]] {
        let m = graded_right(&c, &degs);
        assert!(injectivity_splitting(&m).unwrap().0.is_yes());
    }
}

#[test]
fn splitting_over_nonseparable_base_uses_coseparability() {
    let f = q();
    let a = Arc::new(FinAlgebra::dual_numbers(f));
    let c = Arc::new(Coring::trivial(&a));
    let reg = Bicomodule::regular(&c);
    let (split, basis) = injectivity_splitting(&reg).unwrap();
    assert!(split.is_yes());
    assert_eq!(basis, SplittingBasis::CoseparableCoring);
}
