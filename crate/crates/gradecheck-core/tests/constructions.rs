use std::collections::BTreeSet;
use std::sync::Arc;

use gradecheck_core::algebra::{ideal_closure, Subspace};
use gradecheck_core::composition::{standard_grading, StandardKind};
use gradecheck_core::constructions::{
    bases, catalog, catalog_names, grading_closure, loop_algebra, loop_to_product,
    tensor_with_involution, transfer_to_tensor, Character,
};
use gradecheck_core::field::{Scalar, SVec};
use gradecheck_core::grading::{graded_simple, invariants, universal_group, verify, AbelianGroup, GroupElement, Hom};
use gradecheck_core::Error;
use proptest::prelude::*;

fn el(c: &[i64]) -> GroupElement {
    GroupElement::new(c.to_vec())
}

fn v(terms: &[(usize, i64)]) -> SVec {
    SVec::from_terms(terms.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect())
}

fn cd_to_z2_4() -> (gradecheck_core::grading::Grading, Hom) {
    let base = standard_grading(bases().c.clone(), StandardKind::CayleyDickson).unwrap();
    let g = AbelianGroup::new(0, vec![2, 2, 2, 2]).unwrap();
    let pi = Hom::new(g, base.group().clone(), vec![el(&[0, 0, 0]), el(&[1, 0, 0]), el(&[0, 1, 0]), el(&[0, 0, 1])])
        .unwrap();
    (base, pi)
}

#[test]
fn tensor_with_the_field_is_the_cayley_algebra() {
    let b = bases();
    assert_eq!(b.cf.dim(), 8);
    assert_eq!(b.cf.table(), b.c.table());
    assert_eq!(b.cf.involution(), b.c.involution());
    assert_eq!(b.cf.unit(), b.c.unit());
}

#[test]
fn tensor_product_of_pure_tensors() {
    let ck = &bases().ck;
    // u1 is index 2 of C; u = e1 - e2 in K; 1 = e1 + e2 in K
    let u1_1 = v(&[(2 * 2, 1), (2 * 2 + 1, 1)]);
    let one_u = v(&[(0, 1), (1, -1), (2, 1), (3, -1)]);
    let u1_u = v(&[(4, 1), (5, -1)]);
    assert_eq!(ck.mul(&u1_1, &one_u), u1_u);
    assert_eq!(ck.label(5), "u1⊗e2");
}

#[test]
fn tensor_requires_involutions() {
    let c = bases().c.as_ref().clone().with_involution_unchecked(None);
    assert!(matches!(tensor_with_involution(&c, &bases().k), Err(Error::Missing { .. })));
}

#[test]
fn direct_product_has_two_minimal_ideals() {
    let b = bases();
    let cxc = &b.cxc;
    assert_eq!(cxc.dim(), 16);
    for i in 0..8 {
        for j in 8..16 {
            assert!(cxc.product(i, j).is_zero() && cxc.product(j, i).is_zero());
        }
    }
    let left = ideal_closure(cxc, &[SVec::basis(2)]);
    let right = ideal_closure(cxc, &[SVec::basis(8 + 5)]);
    assert_eq!(left, Subspace::span(16, (0..8).map(SVec::basis)));
    assert_eq!(right, Subspace::span(16, (8..16).map(SVec::basis)));
    // a diagonal element generates everything
    assert_eq!(ideal_closure(cxc, &[v(&[(2, 1), (10, 1)])]).dim(), 16);
}

#[test]
fn loop_algebra_of_the_cd_grading() {
    let (base, pi) = cd_to_z2_4();
    let (l, g) = loop_algebra(&base, &pi).unwrap();
    assert_eq!(l.dim(), 16);
    let r = verify(&g, true);
    assert!(r.passed, "{:?}", r.counterexample);
    assert!(g.components().values().all(|c| c.len() == 1));
    // 1⊗0 ± 1⊗h map to (2, 0) and (0, 2) in C x C
    let one = l.unit().unwrap().clone();
    let h = el(&[1, 0, 0, 0]);
    let shifted = SVec::from_terms(
        one.iter().map(|(k, c)| (l.index_of(&l.label(*k).replace("⊗(0,0,0,0)", &format!("⊗{h}"))).unwrap(), c.clone())).collect(),
    );
    let l = Arc::new(l);
    let i1 = ideal_closure(&l, &[one.add(&shifted)]);
    let i2 = ideal_closure(&l, &[one.sub(&shifted)]);
    assert_eq!((i1.dim(), i2.dim()), (8, 8));
    assert!(graded_simple(&g, &[i1, i2]).unwrap());
}

#[test]
fn loop_algebra_over_an_isomorphism_is_a_relabeling() {
    let base = standard_grading(bases().c.clone(), StandardKind::Cartan).unwrap();
    let z2 = base.group().clone();
    let swap = Hom::new(z2.clone(), z2, vec![el(&[0, 1]), el(&[1, 0])]).unwrap();
    let (l, g) = loop_algebra(&base, &swap).unwrap();
    assert_eq!(l.table(), base.homogeneous_algebra().table());
    for i in 0..8 {
        let d = base.degree(i).coords();
        assert_eq!(g.degree(i), &el(&[d[1], d[0]]));
    }
}

#[test]
fn loop_algebra_rejects_bad_projections() {
    let base = standard_grading(bases().c.clone(), StandardKind::Cartan).unwrap();
    let z2 = base.group().clone();
    let not_onto = Hom::new(z2.clone(), z2.clone(), vec![el(&[2, 0]), el(&[0, 1])]).unwrap();
    assert!(matches!(loop_algebra(&base, &not_onto), Err(Error::InvalidHom(_))));
    let z3 = AbelianGroup::free(3);
    let infinite = Hom::new(z3, z2, vec![el(&[1, 0]), el(&[0, 1]), el(&[0, 0])]).unwrap();
    assert!(matches!(loop_algebra(&base, &infinite), Err(Error::InvalidHom(_))));
}

#[test]
fn loop_to_product_components() {
    let b = bases();
    let comp = |name: &str, g: &[i64]| catalog(name).unwrap().grading.component(&el(g));
    // (e1, -e1), (e2, -e2) in degree h
    let h = comp("cxc-loop-z2z2", &[0, 0, 1]);
    assert_eq!(h, Subspace::span(16, [v(&[(0, 1), (8, -1)]), v(&[(1, 1), (9, -1)])]));
    assert_eq!(comp("cxc-loop-z2z2", &[0, 0, 0]), Subspace::span(16, [v(&[(0, 1), (8, 1)]), v(&[(1, 1), (9, 1)])]));
    assert_eq!(comp("cxc-loop-z2z2", &[1, 0, 0]), Subspace::span(16, [v(&[(2, 1), (10, 1)])]));
    // u = e1 - e2 has CD degree (1,0,0)
    let u = v(&[(0, 1), (1, -1)]);
    let uu = u.add(&u.reindex(|k| k + 8));
    assert_eq!(comp("cxc-loop-z2^4", &[0, 1, 0, 0]), Subspace::span(16, [uu.clone()]));
    let ui = u.add(&u.reindex(|k| k + 8).scale(&Scalar::i()));
    assert_eq!(comp("cxc-loop-z4", &[1, 0, 0]), Subspace::span(16, [ui]));
    let umi = u.add(&u.reindex(|k| k + 8).scale(&Scalar::i_pow(3)));
    assert_eq!(comp("cxc-loop-z4", &[3, 0, 0]), Subspace::span(16, [umi]));
    assert_eq!(*catalog("cxc-loop-z4").unwrap().grading.algebra().as_ref(), *b.cxc.as_ref());
}

#[test]
fn characters() {
    let g = AbelianGroup::new(1, vec![4, 2]).unwrap();
    let chi = Character::new(g.clone(), vec![Scalar::i(), Scalar::i(), Scalar::from_int(-1)]).unwrap();
    assert_eq!(chi.eval(&el(&[1, 1, 1])), Scalar::i_pow(4));
    assert_eq!(chi.eval(&el(&[-1, 0, 0])), Scalar::i_pow(3));
    assert!(Character::new(g.clone(), vec![Scalar::from_int(2), Scalar::one(), Scalar::one()]).is_err());
    // i has order 4 and cannot sit on a generator of order 2
    assert!(Character::new(g, vec![Scalar::one(), Scalar::one(), Scalar::i()]).is_err());
}

#[test]
fn loop_to_product_needs_chi_h_minus_one() {
    let (base, pi) = cd_to_z2_4();
    let g = pi.source().clone();
    let trivial = Character::new(g.clone(), vec![Scalar::one(); 4]).unwrap();
    assert!(loop_to_product(&base, &pi, &el(&[1, 0, 0, 0]), &trivial).is_err());
    let chi = Character::new(g, vec![Scalar::from_int(-1), Scalar::one(), Scalar::one(), Scalar::one()]).unwrap();
    assert!(loop_to_product(&base, &pi, &el(&[0, 1, 0, 0]), &chi).is_err());
    assert!(loop_to_product(&base, &pi, &el(&[1, 0, 0, 0]), &chi).is_ok());
}

#[test]
fn closure_of_a_full_homogeneous_basis_is_the_grading() {
    let c = bases().c.clone();
    let g = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let gens: Vec<_> = (0..8).map(|i| (g.basis_vector(i), g.degree(i).clone())).collect();
    let closed = grading_closure(c, g.group().clone(), &gens).unwrap();
    for d in g.support() {
        assert_eq!(closed.component(&d), g.component(&d), "{d}");
    }
    assert_eq!(closed.support(), g.support());
}

#[test]
fn closure_errors() {
    let b = bases();
    let e1_1 = v(&[(0, 1)]);
    let r = grading_closure(b.cc.clone(), AbelianGroup::trivial(), &[(e1_1, GroupElement::new(vec![]))]);
    assert!(matches!(r, Err(Error::DoesNotGenerate { got: 2, dim: 64 })), "{r:?}");
    let g = AbelianGroup::free(2);
    let u1 = SVec::basis(2);
    let r = grading_closure(b.c.clone(), g, &[(u1.clone(), el(&[1, 0])), (u1, el(&[2, 0])), (SVec::basis(5), el(&[-1, 0]))]);
    assert!(matches!(r, Err(Error::ComponentsCollide(_))), "{r:?}");
}

#[test]
fn every_catalog_entry_verifies_over_its_stated_universal_group() {
    for name in catalog_names() {
        let e = catalog(name).unwrap();
        let r = verify(&e.grading, true);
        assert!(r.passed, "{name}: {:?}", r.counterexample);
        let u = universal_group(&e.grading).unwrap();
        assert!(
            u.group.is_isomorphic(&e.stated_group),
            "{name}: universal group {} but stated {}",
            u.group,
            e.stated_group
        );
        assert!(e.grading.group().is_isomorphic(&e.stated_group), "{name}");
    }
}

#[test]
fn catalog_names_and_unknown_name() {
    let names = catalog_names();
    assert_eq!(names.len(), 22);
    match catalog("nonsense") {
        Err(Error::UnknownCatalog { valid, .. }) => assert_eq!(valid.len(), 22),
        other => panic!("{other:?}"),
    }
}

#[test]
fn inequivalent_entries_have_different_invariants() {
    let families: [&[&str]; 5] = [
        &["ctc-1", "ctc-2", "ctc-3", "ctc-4", "ctc-5", "ctc-6"],
        &["cxc-prod-11", "cxc-prod-12", "cxc-prod-22", "cxc-loop-z2z2", "cxc-loop-z2^4", "cxc-loop-z4"],
        &["cxh-1", "cxh-2", "cxh-3", "cxh-4"],
        &["cxk-1", "cxk-2"],
        &["smirnov-z2", "smirnov-z2cubed"],
    ];
    for fam in families {
        let inv: Vec<_> = fam.iter().map(|n| invariants(&catalog(n).unwrap().grading).unwrap()).collect();
        let distinct: BTreeSet<String> = inv.iter().map(|i| i.to_string()).collect();
        assert_eq!(distinct.len(), fam.len(), "{fam:?}: {inv:?}");
    }
}

#[test]
fn loop_entries_are_graded_simple_and_product_entries_are_not() {
    let cxc = &bases().cxc;
    let left = ideal_closure(cxc, &[SVec::basis(0)]);
    let right = ideal_closure(cxc, &[SVec::basis(8)]);
    for name in ["cxc-loop-z2z2", "cxc-loop-z2^4", "cxc-loop-z4"] {
        assert!(graded_simple(&catalog(name).unwrap().grading, &[left.clone(), right.clone()]).unwrap(), "{name}");
    }
    for name in ["cxc-prod-11", "cxc-prod-12", "cxc-prod-22"] {
        assert!(!graded_simple(&catalog(name).unwrap().grading, &[left.clone(), right.clone()]).unwrap(), "{name}");
    }
}

#[test]
fn transfer_from_c_x_c_matches_the_tensor_catalog() {
    let pairs = [
        ("cxc-loop-z2z2", "ctc-4"),
        ("cxc-loop-z2^4", "ctc-5"),
        ("cxc-loop-z4", "ctc-6"),
        ("cxc-prod-11", "ctc-1"),
        ("cxc-prod-12", "ctc-2"),
        ("cxc-prod-22", "ctc-3"),
    ];
    for (src, dst) in pairs {
        let moved = transfer_to_tensor(&catalog(src).unwrap().grading).unwrap();
        let target = catalog(dst).unwrap().grading;
        assert_eq!(moved.group(), target.group(), "{src} -> {dst}");
        assert_eq!(moved.support(), target.support(), "{src} -> {dst}");
        for d in target.support() {
            assert_eq!(moved.component(&d), target.component(&d), "{src} -> {dst} at {d}");
        }
    }
}

#[test]
fn closure_from_skew_generators_over_z2_4() {
    let e = catalog("ctc-5").unwrap();
    assert_eq!(e.grading.dim(), 64);
    // 8 + 14 * 4 = 64; the element h = (1,0,0,0) is not in the support
    let comps = e.grading.components();
    assert_eq!(comps.len(), 15);
    assert_eq!(comps[&el(&[0, 0, 0, 0])].len(), 8);
    assert!(comps.iter().filter(|(d, _)| **d != el(&[0, 0, 0, 0])).all(|(_, c)| c.len() == 4));
    assert!(!comps.contains_key(&el(&[1, 0, 0, 0])));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn characters_are_homomorphisms(a in proptest::collection::vec(-9i64..9, 3), b in proptest::collection::vec(-9i64..9, 3)) {
        let g = AbelianGroup::new(1, vec![4, 2]).unwrap();
        let chi = Character::new(g.clone(), vec![Scalar::i(), Scalar::from_int(-1), Scalar::from_int(-1)]).unwrap();
        let (x, y) = (g.reduce(a), g.reduce(b));
        prop_assert_eq!(chi.eval(&g.add(&x, &y)), chi.eval(&x).mul_ref(&chi.eval(&y)));
    }

    /// Any generating set of homogeneous CD basis vectors closes up to the
    /// CD grading itself.
    #[test]
    fn closure_of_cd_generators(extra in proptest::collection::vec(0usize..8, 0..5)) {
        let c = bases().c.clone();
        let g = standard_grading(c.clone(), StandardKind::CayleyDickson).unwrap();
        // u, v, w sit at positions 1, 2, 3 of the homogeneous basis
        let picks: BTreeSet<usize> = [1, 2, 3].into_iter().chain(extra).collect();
        let gens: Vec<_> = picks.iter().map(|&i| (g.basis_vector(i), g.degree(i).clone())).collect();
        let closed = grading_closure(c, g.group().clone(), &gens).unwrap();
        prop_assert_eq!(closed.support(), g.support());
        for d in g.support() {
            prop_assert_eq!(closed.component(&d), g.component(&d));
        }
    }
}
