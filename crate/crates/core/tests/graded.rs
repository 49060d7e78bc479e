use std::sync::Arc;

use coring_core::algkernel::{invertible_element_exists, Bimodule, FinAlgebra};
use coring_core::coring::{check_coring, comodule_hom_space, cotensor, Coring, Side};
use coring_core::exactla::{Field, Mat};
use coring_core::graded::*;

fn q() -> Field {
    Field::Rationals
}

fn c2() -> GroupRef {
    Arc::new(FiniteGroup::cyclic(2))
}

/// `ℚC₂` graded by `C₂` with the regular `C₂`-set.
fn qc2_regular(f: Field) -> GradedRef {
    let g = c2();
    let a = GradedAlgebra::group_algebra(f, g.clone());
    Arc::new(build_graded_coring(&a, &Arc::new(GSet::regular(g))).unwrap())
}

#[test]
fn degenerate_gradings_recover_familiar_corings() {
    let f = q();
    let triv = Arc::new(FiniteGroup::trivial());
    let k = GradedAlgebra::ground(f);
    let one = build_graded_coring(&k, &Arc::new(GSet::fixed_points(triv.clone(), 1))).unwrap();
    assert_eq!(*one.coring, Coring::ground(f));
    let three = build_graded_coring(&k, &Arc::new(GSet::fixed_points(triv.clone(), 3))).unwrap();
    assert_eq!(*three.coring, Coring::grouplike(f, 3));
    let t2 = GradedAlgebra::concentrated(Arc::new(FinAlgebra::upper_triangular(f)), triv.clone());
    let t = build_graded_coring(&t2, &Arc::new(GSet::fixed_points(triv, 1))).unwrap();
    assert_eq!(*t.coring, Coring::trivial(t2.algebra()));
    let gc = qc2_regular(f);
    assert_eq!(gc.coring.dim(), 4);
    assert!(check_coring(&gc.coring).all_pass());
}

#[test]
fn comodule_round_trip_is_the_identity() {
    let gc = qc2_regular(q());
    let mods = [
        BigradedBimodule::hat(&gc),
        BigradedBimodule::free_right(&gc, 1),
        BigradedBimodule::free_left(&gc, 0),
    ];
    for m in mods {
        let b = comodule_of_graded(&m).unwrap();
        let (back, basis) = graded_of_comodule(&b, m.left(), m.right()).unwrap();
        assert!(basis.is_identity());
        assert_eq!(back.degrees(), m.degrees());
        assert_eq!(back.carrier(), m.carrier());
    }
}

#[test]
fn hat_tensor_is_the_cotensor_product() {
    let gc = qc2_regular(q());
    let hat = BigradedBimodule::hat(&gc);
    let m = BigradedBimodule::free_right(&gc, 1).direct_sum(&BigradedBimodule::free_right(&gc, 0)).unwrap();
    for (a, b) in [(&m, &hat), (&hat, &hat)] {
        let h = hat_tensor(a, b).unwrap();
        let c = cotensor(&comodule_of_graded(a).unwrap(), &comodule_of_graded(b).unwrap()).unwrap();
        assert_eq!(h.subspace, c.subspace);
        assert!(comodule_of_graded(&h.module).is_ok());
    }
}

#[test]
fn adjunction_triangles_and_the_regular_case() {
    let gc = qc2_regular(q());
    let hat = BigradedBimodule::hat(&gc);
    let m = BigradedBimodule::free_right(&gc, 1);
    let n = BigradedBimodule::free_right(&gc, 0).direct_sum(&m).unwrap();
    let rep = menini_triangles(&hat, &m, &n).unwrap();
    assert!(rep.all_pass(), "{rep}");

    // H(Â, N) ≅ N as graded modules
    let h = graded_hom(&hat, &n).unwrap();
    assert_eq!(h.module.component_dims(), n.component_dims());
    let iso = comodule_hom_space(&comodule_of_graded(&h.module).unwrap(), &comodule_of_graded(&n).unwrap()).unwrap();
    assert!(invertible_element_exists(&iso, 1_000_000).is_yes());
}

#[test]
fn augmentation_module_is_projective_only_off_characteristic_two() {
    for (f, expect) in [(q(), true), (Field::prime(2).unwrap(), false), (Field::prime(3).unwrap(), true)] {
        let g = c2();
        let a = GradedAlgebra::group_algebra(f, g.clone());
        let gc = Arc::new(build_graded_coring(&a, &Arc::new(GSet::fixed_points(g, 1))).unwrap());
        let alg = a.algebra();
        let one = Mat::identity(f, 1);
        let k = Arc::new(FinAlgebra::ground(f));
        let carrier = Bimodule::new(k, alg.clone(), 1, vec![one.clone()], vec![one.clone(), one]).unwrap();
        let m = BigradedBimodule::right_graded(gc, carrier, vec![0]).unwrap();
        assert_eq!(fgp_check(&m, Side::Left, 0).unwrap().is_some(), expect, "{f:?}");
    }
}

fn trivial_data(a: FinAlgebra) -> GradedRef {
    let triv = Arc::new(FiniteGroup::trivial());
    let ga = GradedAlgebra::concentrated(Arc::new(a), triv.clone());
    Arc::new(build_graded_coring(&ga, &Arc::new(GSet::fixed_points(triv, 1))).unwrap())
}

fn unit_morphism(target: FinAlgebra) -> GradedMorphism {
    let f = target.field();
    let alpha = target.unit_map();
    GradedMorphism {
        source: trivial_data(FinAlgebra::ground(f)),
        target: trivial_data(target),
        f: vec![0],
        phi: vec![0],
        alpha,
    }
}

#[test]
fn cohom_of_the_regular_bimodule_is_the_identity() {
    let gc = qc2_regular(q());
    let hat = BigradedBimodule::hat(&gc);
    let m = BigradedBimodule::free_right(&gc, 1).direct_sum(&BigradedBimodule::free_right(&gc, 0)).unwrap();
    let c = cohom_graded(&hat, &m).unwrap();
    assert!(c.report.all_pass(), "{}", c.report);
    assert_eq!(c.solution_dim, 1);
    assert_eq!(c.module.component_dims(), m.component_dims());
    let iso = comodule_hom_space(&comodule_of_graded(&c.module).unwrap(), &comodule_of_graded(&m).unwrap()).unwrap();
    assert!(invertible_element_exists(&iso, 1_000_000).is_yes());
}

#[test]
fn cohom_with_trivial_gradings_is_tensor_with_the_dual() {
    use coring_core::algkernel::{left_dual, TensorChain};
    let gc = trivial_data(FinAlgebra::upper_triangular(q()));
    let n = BigradedBimodule::hat(&gc);
    let m = BigradedBimodule::free_right(&gc, 0);
    let c = cohom_graded(&n, &m).unwrap();
    assert!(c.report.all_pass(), "{}", c.report);
    let (dual, _) = left_dual(n.carrier()).unwrap();
    assert_eq!(c.dual.module.carrier(), &dual);
    let plain = TensorChain::pair(m.carrier(), &dual).unwrap();
    assert!(c.hat.inclusion.is_identity());
    assert_eq!(c.hat.module.carrier(), plain.bimodule());
}

#[test]
fn cohom_requires_projective_components() {
    let f = Field::prime(2).unwrap();
    let g = c2();
    let a = GradedAlgebra::group_algebra(f, g.clone());
    let gc = Arc::new(build_graded_coring(&a, &Arc::new(GSet::fixed_points(g, 1))).unwrap());
    let one = Mat::identity(f, 1);
    let k = Arc::new(FinAlgebra::ground(f));
    let aug = Bimodule::new(a.algebra().clone(), k, 1, vec![one.clone(), one.clone()], vec![one]).unwrap();
    let n = BigradedBimodule::left_graded(gc, aug, vec![0]).unwrap();
    let m = BigradedBimodule::free_right(n.right(), 0);
    let err = cohom_graded(&n, &m).unwrap_err();
    assert!(err.to_string().contains("N_0"), "{err}");
}

#[test]
fn tstar_of_the_regular_module_is_the_induction_bicomodule() {
    let g = c2();
    let f = q();
    let a = GradedAlgebra::group_algebra(f, g.clone());
    let src = Arc::new(build_graded_coring(&a, &Arc::new(GSet::regular(g.clone()))).unwrap());
    let triv = Arc::new(FiniteGroup::trivial());
    let a2 = GradedAlgebra::concentrated(a.algebra().clone(), triv.clone());
    let tgt = Arc::new(build_graded_coring(&a2, &Arc::new(GSet::fixed_points(triv, 1))).unwrap());
    let mor = GradedMorphism {
        source: src.clone(),
        target: tgt,
        f: vec![0, 0],
        phi: vec![0, 0],
        alpha: Mat::identity(f, 2),
    };
    assert!(check_graded_morphism(&mor).all_pass());
    let hat = BigradedBimodule::hat(&src);
    let t = tstar(&mor, &hat).unwrap();
    assert_eq!(t.dim(), 4);
    assert_eq!(t.component_dims().values().sum::<usize>(), 4);
    let (x, _) = coring_core::frobenius::induction_data(&coring_morphism(&mor).unwrap()).unwrap();
    let b = comodule_of_graded(&t).unwrap();
    assert_eq!(b.carrier(), x.carrier());
    assert_eq!(b.lambda(), x.lambda());
    assert_eq!(b.rho(), x.rho());
    for m in [BigradedBimodule::free_right(&src, 1), hat.forget_left()] {
        let rep = tstar_route_check(&mor, &m, 1_000_000).unwrap();
        assert!(rep.all_pass(), "{rep}");
    }
    let rep = tstar_frobenius_check(&mor, &coring_core::frobenius::Budget::default()).unwrap();
    let agree = rep.checks.items.iter().find(|i| i.name.ends_with("routes agree")).unwrap();
    assert_eq!(agree.status, coring_core::report::Status::Pass, "{}", rep.checks);
    assert!(rep.verdict.is_frobenius());
}

#[test]
fn incompatible_morphisms_are_rejected() {
    let gc = qc2_regular(q());
    let mut mor = GradedMorphism::identity(&gc);
    mor.phi = vec![0, 0];
    let rep = check_graded_morphism(&mor);
    assert!(!rep.all_pass());
    assert!(coring_morphism(&mor).is_err());
}

#[test]
fn graded_induction_frobenius_verdicts() {
    use coring_core::frobenius::Budget;
    let f = q();
    let budget = Budget::default();
    let cases = [
        (GradedMorphism::identity(&qc2_regular(f)), true),
        (unit_morphism(FinAlgebra::cyclic_group_algebra(f, 2)), true),
        (unit_morphism(FinAlgebra::upper_triangular(f)), false),
    ];
    for (mor, expect) in cases {
        let rep = tstar_frobenius_check(&mor, &budget).unwrap();
        assert_eq!(rep.verdict.is_frobenius(), expect, "{:?}\n{}", rep.verdict, rep.checks);
        assert_eq!(rep.verdict.is_not_frobenius(), !expect);
        let mirror = tstar_mirror_check(&mor, &budget).unwrap();
        assert_eq!(mirror.verdict.label(), rep.verdict.label());
    }
}
