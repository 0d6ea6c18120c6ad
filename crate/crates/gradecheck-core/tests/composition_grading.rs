use std::collections::BTreeMap;
use std::sync::Arc;

use gradecheck_core::algebra::Algebra;
use gradecheck_core::composition::{norm_form, split_hurwitz, standard_grading, StandardKind};
use gradecheck_core::field::{Matrix, SVec};
use gradecheck_core::grading::{
    check_equivalence_witness, coarsen, invariants, universal_group, verify, AbelianGroup, EquivalenceWitness,
    Grading, GroupElement, Hom,
};
use proptest::prelude::*;

fn cayley() -> Arc<Algebra> {
    Arc::new(split_hurwitz(8).unwrap().0)
}

fn el(c: &[i64]) -> GroupElement {
    GroupElement::new(c.to_vec())
}

#[test]
fn standard_gradings_verify_over_their_universal_groups() {
    let cases = [
        (8, StandardKind::Cartan, 2, vec![]),
        (8, StandardKind::CayleyDickson, 0, vec![2, 2, 2]),
        (4, StandardKind::Cartan, 1, vec![]),
        (4, StandardKind::CayleyDickson, 0, vec![2, 2]),
        (2, StandardKind::CayleyDickson, 0, vec![2]),
    ];
    for (dim, kind, free, tors) in cases {
        let a = Arc::new(split_hurwitz(dim).unwrap().0);
        let g = standard_grading(a, kind).unwrap();
        let r = verify(&g, true);
        assert!(r.passed, "{dim} {kind:?}: {:?}", r.counterexample);
        let u = universal_group(&g).unwrap();
        assert_eq!(u.group.free_rank(), free, "{dim} {kind:?}");
        assert_eq!(u.group.invariant_factors(), tors, "{dim} {kind:?}");
    }
    let k = Arc::new(split_hurwitz(2).unwrap().0);
    assert!(standard_grading(k, StandardKind::Cartan).is_err());
}

#[test]
fn cartan_degrees_as_listed() {
    let c = cayley();
    let g = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    assert_eq!(g.degree(c.index_of("u1").unwrap()), &el(&[1, 0]));
    assert_eq!(g.degree(c.index_of("v3").unwrap()), &el(&[1, 1]));
    assert_eq!(g.support().len(), 7);
    let cd = standard_grading(c, StandardKind::CayleyDickson).unwrap();
    assert!(cd.components().values().all(|v| v.len() == 1));
    assert_eq!(cd.support().len(), 8);
    let k = standard_grading(Arc::new(split_hurwitz(2).unwrap().0), StandardKind::CayleyDickson).unwrap();
    assert_eq!(k.degrees(), &[el(&[0]), el(&[1])]);
}

#[test]
fn norm_is_homogeneous_for_standard_gradings() {
    for kind in [StandardKind::Cartan, StandardKind::CayleyDickson] {
        let c = cayley();
        let q = norm_form(&c).unwrap();
        let g = standard_grading(c, kind).unwrap();
        for i in 0..8 {
            for j in 0..8 {
                let v = q.polar(&g.basis_vector(i), &g.basis_vector(j));
                if !v.is_zero() {
                    assert!(g.group().is_zero(&g.group().add(g.degree(i), g.degree(j))), "{kind:?} {i} {j}");
                }
            }
        }
    }
}

#[test]
fn corrupted_cartan_degree_fails_at_u1_u2() {
    let c = cayley();
    let g = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let mut degs = g.degrees().to_vec();
    degs[c.index_of("u1").unwrap()] = el(&[2, 0]);
    let bad = Grading::new(c, None, AbelianGroup::free(2), degs).unwrap();
    let r = verify(&bad, false);
    assert!(!r.passed);
    assert_eq!(r.counterexample.unwrap().inputs, vec!["u1", "u2"]);
    assert!(universal_group(&bad).is_err());
}

#[test]
fn trivial_grading_and_invariants() {
    let c = cayley();
    let t = Grading::new(c.clone(), None, AbelianGroup::trivial(), vec![el(&[]); 8]).unwrap();
    assert!(verify(&t, true).passed);
    let inv = invariants(&t).unwrap();
    assert_eq!((inv.support_size, inv.component_dims.clone()), (1, vec![8]));
    assert_eq!((inv.universal_free_rank, inv.universal_torsion.clone()), (0, vec![]));

    let cartan = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let i1 = invariants(&cartan).unwrap();
    assert_eq!(i1.component_dims, vec![2, 1, 1, 1, 1, 1, 1]);
    assert_eq!(i1.universal_free_rank, 2);
    let i2 = invariants(&standard_grading(c, StandardKind::CayleyDickson).unwrap()).unwrap();
    assert_eq!(i2.component_dims, vec![1; 8]);
    assert_eq!(i2.universal_torsion, vec![2, 2, 2]);
    assert_ne!(i1, i2);
}

#[test]
fn coarsening_to_z() {
    let c = cayley();
    let g = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let z = AbelianGroup::free(1);
    let hom = Hom::new(AbelianGroup::free(2), z.clone(), vec![el(&[1]), el(&[1])]).unwrap();
    let h = coarsen(&g, &hom).unwrap();
    assert_eq!(h.degree(c.index_of("v3").unwrap()), &el(&[2]));
    assert!(verify(&h, true).passed);
    let to_trivial = Hom::new(AbelianGroup::free(2), AbelianGroup::trivial(), vec![el(&[]), el(&[])]).unwrap();
    let t = coarsen(&g, &to_trivial).unwrap();
    assert_eq!(t.support().len(), 1);
    let wrong = Hom::new(z.clone(), z, vec![el(&[1])]).unwrap();
    assert!(coarsen(&g, &wrong).is_err());
}

/// `e1 <-> e2, u_i <-> v_i` is an automorphism commuting with the
/// conjugation, and it sends the Cartan component of degree `g` to `-g`.
#[test]
fn swap_automorphism_negates_cartan_support() {
    let c = cayley();
    let g = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let swap = [1usize, 0, 5, 6, 7, 2, 3, 4];
    let rows: Vec<SVec> = swap.iter().map(|&j| SVec::basis(j)).collect();
    let bij: BTreeMap<GroupElement, GroupElement> =
        g.support().into_iter().map(|d| (d.clone(), g.group().neg(&d))).collect();
    let w = EquivalenceWitness { map: Matrix::from_rows(&rows, 8).unwrap(), support_bijection: bij.clone() };
    let r = check_equivalence_witness(&g, &g, &w);
    assert!(r.passed, "{:?}", r.counterexample);
    let inv = invariants(&g).unwrap();
    assert_eq!(inv, invariants(&g).unwrap());

    // the conjugation reverses products, so it is not a witness
    let sig = Matrix::from_rows(c.involution().unwrap(), 8).unwrap();
    let r = check_equivalence_witness(&g, &g, &EquivalenceWitness { map: sig, support_bijection: bij });
    assert!(!r.passed);

    let id: BTreeMap<GroupElement, GroupElement> = g.support().into_iter().map(|d| (d.clone(), d)).collect();
    let w = EquivalenceWitness { map: Matrix::identity(8), support_bijection: id };
    assert!(check_equivalence_witness(&g, &g, &w).passed);
}

#[test]
fn cartan_and_cd_are_not_equivalent_by_any_bijection() {
    let c = cayley();
    let g1 = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let g2 = standard_grading(c, StandardKind::CayleyDickson).unwrap();
    let bij: BTreeMap<GroupElement, GroupElement> = g1.support().into_iter().zip(g2.support()).collect();
    let w = EquivalenceWitness { map: Matrix::identity(8), support_bijection: bij };
    assert!(!check_equivalence_witness(&g1, &g2, &w).passed);
}

#[test]
fn universal_group_is_idempotent() {
    let c = cayley();
    for kind in [StandardKind::Cartan, StandardKind::CayleyDickson] {
        let g = standard_grading(c.clone(), kind).unwrap();
        let u = universal_group(&g).unwrap();
        let again = universal_group(&u.grading).unwrap();
        assert!(u.group.is_isomorphic(&again.group));
        assert!(verify(&u.grading, true).passed);
    }
}

fn small_group() -> impl Strategy<Value = AbelianGroup> {
    (0usize..3, proptest::collection::vec(2u64..5, 0..3)).prop_map(|(f, t)| AbelianGroup::new(f, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Coarsening a valid grading along any homomorphism gives a valid grading.
    #[test]
    fn coarsenings_verify(target in small_group(), raw in proptest::collection::vec(proptest::collection::vec(-3i64..4, 5), 3), cd in any::<bool>()) {
        let c = cayley();
        let kind = if cd { StandardKind::CayleyDickson } else { StandardKind::Cartan };
        let g = standard_grading(c, kind).unwrap();
        let src = g.group().clone();
        // multiply torsion-source images by the target exponent so orders are respected
        let images: Vec<GroupElement> = (0..src.len()).map(|k| {
            let img = target.reduce(raw[k % 3][..target.len()].to_vec());
            match src.generator_order(k) {
                Some(m) => {
                    // send a Z/m generator to an m-torsion element; m = 2 here
                    let two_torsion: Vec<i64> = img.coords().iter().enumerate().map(|(t, &x)| {
                        if t < target.free_rank() { 0 } else {
                            let mt = target.torsion()[t - target.free_rank()] as i64;
                            if mt % m as i64 == 0 { x * (mt / m as i64) } else { 0 }
                        }
                    }).collect();
                    target.reduce(two_torsion)
                }
                None => img,
            }
        }).collect();
        let hom = Hom::new(src, target, images).unwrap();
        let h = coarsen(&g, &hom).unwrap();
        prop_assert!(verify(&h, true).passed);
    }
}
