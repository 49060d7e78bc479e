use std::sync::Arc;

use proptest::prelude::*;

use coring_core::algkernel::FinAlgebra;
use coring_core::coring::{check_coring, Coring};
use coring_core::entwine::*;
use coring_core::exactla::{Field, Mat};
use coring_core::frobenius::Budget;
use coring_core::graded::*;

fn q() -> Field {
    Field::Rationals
}

fn graded_pair(order: usize, regular: bool) -> (GradedAlgebra, GSetRef) {
    let g = Arc::new(FiniteGroup::cyclic(order));
    let a = GradedAlgebra::group_algebra(q(), g.clone());
    let x = if regular { GSet::regular(g) } else { GSet::fixed_points(g, 2) };
    (a, Arc::new(x))
}

fn trivial(alg: FinAlgebra) -> Entwining {
    let f = alg.field();
    Entwining::flip(Arc::new(alg), Arc::new(Coring::ground(f))).unwrap()
}

#[test]
fn flip_over_the_ground_field_is_the_coalgebra() {
    let f = q();
    for c in [Coring::grouplike(f, 3), Coring::dual_of(&FinAlgebra::upper_triangular(f))] {
        let e = Entwining::flip(Arc::new(FinAlgebra::ground(f)), Arc::new(c.clone())).unwrap();
        assert!(check_entwining(&e).all_pass());
        assert_eq!(entwining_coring(&e).unwrap(), c);
    }
    let t = trivial(FinAlgebra::upper_triangular(f));
    assert_eq!(entwining_coring(&t).unwrap(), Coring::trivial(&t.algebra));
}

#[test]
fn graded_entwining_gives_the_graded_coring() {
    for (order, regular) in [(2, true), (2, false), (3, true)] {
        let (a, x) = graded_pair(order, regular);
        let e = Entwining::graded(&a, &x).unwrap();
        assert_eq!(e.psi.rank(), e.psi.rows(), "ψ is bijective");
        let c = entwining_coring(&e).unwrap();
        assert!(check_coring(&c).all_pass());
        assert_eq!(c, *build_graded_coring(&a, &x).unwrap().coring);
    }
}

#[test]
fn perturbed_entwining_fails_with_a_witness() {
    let (a, x) = graded_pair(2, true);
    let mut e = Entwining::graded(&a, &x).unwrap();
    // ψ(x₀⊗g) now also hits g⊗x₀, breaking compatibility with the product.
    let f = q();
    e.psi.set(2, 1, f.one());
    let rep = check_entwining(&e);
    assert!(!rep.all_pass());
    let fail = rep.failures().next().unwrap();
    assert!(!fail.witnesses.is_empty() || !fail.detail.is_empty(), "{rep}");
}

#[test]
fn morphism_compatibility_is_checked() {
    let (a, x) = graded_pair(2, true);
    let e = Entwining::graded(&a, &x).unwrap();
    let mut m = EntwiningMorphism::identity(&e);
    assert!(check_entwining_morphism(&m).all_pass());
    // Collapsing both points onto x₀ forgets that x₀·g = x₁.
    m.gamma = Mat::from_fn(q(), 2, 2, |r, _| q().from_i64((r == 0) as i64));
    assert!(!check_entwining_morphism(&m).all_pass());
    assert!(entwined_frobenius_check(&m, &Budget::default()).is_err());
}

#[test]
fn frobenius_verdicts() {
    let f = q();
    let budget = Budget::default();
    let (a, x) = graded_pair(2, true);
    let id = EntwiningMorphism::identity(&Entwining::graded(&a, &x).unwrap());
    let rep = entwined_frobenius_check(&id, &budget).unwrap();
    assert!(rep.verdict.is_frobenius(), "{:?}", rep.verdict);
    assert!(rep.checks.tags.iter().any(|t| t.contains("coseparable")));

    let t2 = FinAlgebra::upper_triangular(f);
    let m = EntwiningMorphism {
        source: trivial(FinAlgebra::ground(f)),
        alpha: t2.unit_map(),
        target: trivial(t2),
        gamma: Mat::identity(f, 1),
    };
    let rep = entwined_frobenius_check(&m, &budget).unwrap();
    assert!(rep.verdict.is_not_frobenius(), "{:?}", rep.verdict);
}

#[test]
fn graded_quotient_agrees_with_the_graded_route() {
    let f = q();
    let (a, x) = graded_pair(2, true);
    let triv = Arc::new(FiniteGroup::trivial());
    let a2 = GradedAlgebra::concentrated(a.algebra().clone(), triv.clone());
    let pt = Arc::new(GSet::fixed_points(triv, 1));
    let gm = GradedMorphism {
        source: Arc::new(build_graded_coring(&a, &x).unwrap()),
        target: Arc::new(build_graded_coring(&a2, &pt).unwrap()),
        f: vec![0, 0],
        phi: vec![0, 0],
        alpha: Mat::identity(f, 2),
    };
    let em = EntwiningMorphism {
        source: Entwining::graded(&a, &x).unwrap(),
        target: Entwining::graded(&a2, &pt).unwrap(),
        alpha: Mat::identity(f, 2),
        gamma: Mat::from_fn(f, 1, 2, |_, _| f.one()),
    };
    assert!(check_entwining_morphism(&em).all_pass());
    let cm = em.coring_morphism().unwrap();
    let gcm = coring_morphism(&gm).unwrap();
    assert_eq!(cm.phi, gcm.phi);
    assert_eq!(*cm.target, *gcm.target);
    let budget = Budget::default();
    let e = entwined_frobenius_check(&em, &budget).unwrap();
    let g = tstar_frobenius_check(&gm, &budget).unwrap();
    assert_eq!(e.verdict.label(), g.verdict.label());
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 8, .. ProptestConfig::default() })]

    #[test]
    fn graded_entwinings_are_valid((order, regular) in (1usize..=3, any::<bool>())) {
        let (a, x) = graded_pair(order, regular);
        let e = Entwining::graded(&a, &x).unwrap();
        prop_assert!(check_entwining(&e).all_pass());
        let id = EntwiningMorphism::identity(&e);
        prop_assert!(check_entwining_morphism(&id).all_pass());
    }
}
