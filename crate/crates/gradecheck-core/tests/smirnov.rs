use gradecheck_core::algebra::{check_structurable, derivation_algebra, split_involution, Algebra, LinearMap};
use gradecheck_core::composition::{check_composition, norm_form, standard_grading, StandardKind};
use gradecheck_core::constructions::bases;
use gradecheck_core::field::{matrix_rank, RankMethod, Scalar, SVec};
use gradecheck_core::grading::{universal_group, verify, AbelianGroup, Grading, GroupElement};
use gradecheck_core::smirnov::{build_smirnov_with_coefficient, sym_index, Smirnov, SMIRNOV_DIM};
use proptest::prelude::*;

fn t() -> &'static Smirnov {
    &bases().smirnov
}

/// Index of a good-basis skew element of C inside T(C), e.g. "u1".
fn s(label: &str) -> usize {
    t().algebra().index_of(label).unwrap()
}

fn sym(x: &SVec, y: &SVec) -> SVec {
    let a = t().algebra();
    let h = Scalar::frac(1, 2).unwrap();
    a.mul(x, y).add(&a.mul(y, x)).scale(&h)
}

#[test]
fn dimensions_and_involution() {
    let a = t().algebra();
    assert_eq!(a.dim(), SMIRNOV_DIM);
    let (skew, herm) = split_involution(a).unwrap();
    assert_eq!((skew.dim(), herm.dim()), (7, 28));
    assert_eq!(&a.labels()[..7], ["e1-e2", "u1", "u2", "u3", "v1", "v2", "v3"]);
    assert_eq!(a.label(sym_index(1, 4)), "u1×v1");
}

#[test]
fn smirnov_algebra_is_structurable() {
    let r = check_structurable(t().algebra()).unwrap();
    assert!(r.passed, "{:?}", r.counterexample);
    assert_eq!(r.checks_run, 35u64.pow(4) + 70);
}

#[test]
fn dot_with_a_cross_orthogonal_to_s() {
    // n(u1, u2) = n(u1, v2) = 0, so u1 ⊙ (u2 × v2) = -n(u2, v2) u1
    let (u1, u2, v2) = (s("u1"), s("u2"), s("v2"));
    let tt = t();
    let n = tt.norm(&SVec::basis(u2), &SVec::basis(v2));
    assert!(!n.is_zero());
    let h = SVec::basis(sym_index(u2, v2));
    assert_eq!(sym(&SVec::basis(u1), &h), SVec::single(u1, n.mul_ref(&Scalar::from_int(-1))));
}

#[test]
fn bracket_of_crosses_with_vanishing_pairings() {
    // u1, u2, u3 span a totally isotropic subspace
    let a = t().algebra();
    let x = SVec::basis(sym_index(s("u1"), s("u2")));
    let y = SVec::basis(sym_index(s("u3"), s("u1")));
    assert!(a.commutator(&x, &y).is_zero());
}

#[test]
fn skew_bracket_is_the_cayley_commutator() {
    let tt = t();
    let c = tt.cayley();
    for (a, x) in tt.skew_basis().iter().enumerate() {
        for (b, y) in tt.skew_basis().iter().enumerate() {
            let in_t = tt.algebra().commutator(&SVec::basis(a), &SVec::basis(b));
            assert_eq!(in_t, tt.skew_vector(&c.commutator(x, y)).unwrap());
        }
    }
}

#[test]
fn unit_from_an_orthogonal_basis() {
    let tt = t();
    let a = tt.algebra();
    let xs = tt.orthogonal_skew_basis().unwrap();
    let one = tt.unit_vector(&xs).unwrap();
    assert_eq!(Some(&one), a.unit());
    for i in 0..SMIRNOV_DIM {
        let b = SVec::basis(i);
        assert_eq!(a.mul(&one, &b), b);
        assert_eq!(a.mul(&b, &one), b);
    }
    assert_eq!(a.mul(&one, &one), one);
    assert_eq!(tt.trace(&one), Scalar::from_int(7));
    // the good basis is not orthogonal
    assert!(tt.unit_vector(tt.skew_basis()).is_err());
}

#[test]
fn unit_from_the_canonical_orthogonal_basis() {
    // e1 - e2, u_i ± v_i: norms -1 and ∓1
    let tt = t();
    let c = tt.cayley();
    let idx = |l: &str| c.index_of(l).unwrap();
    let mut xs = vec![SVec::from_terms(vec![(0, Scalar::one()), (1, Scalar::from_int(-1))])];
    for k in 1..=3 {
        let (u, v) = (SVec::basis(idx(&format!("u{k}"))), SVec::basis(idx(&format!("v{k}"))));
        xs.push(u.add(&v));
        xs.push(u.sub(&v));
    }
    assert_eq!(Some(&tt.unit_vector(&xs).unwrap()), tt.algebra().unit());
}

#[test]
fn trace_form() {
    let tt = t();
    for i in 0..7 {
        assert!(tt.trace(&SVec::basis(i)).is_zero());
    }
    let gram = tt.trace_gram();
    assert_eq!(matrix_rank(&gram.row_svecs(), SMIRNOV_DIM, RankMethod::default()).unwrap(), SMIRNOV_DIM);
    let r = tt.check_trace_invariance();
    assert!(r.passed, "{:?}", r.counterexample);
    // tr(x) = tr(x, 1)
    let one = tt.algebra().unit().unwrap();
    for i in 0..SMIRNOV_DIM {
        let b = SVec::basis(i);
        assert_eq!(tt.trace(&b), tt.trace_form(&b, one));
    }
}

#[test]
fn trace_is_homogeneous_for_the_induced_gradings() {
    let tt = t();
    for kind in [StandardKind::Cartan, StandardKind::CayleyDickson] {
        let g = tt.induce_grading(&standard_grading(tt.cayley().clone(), kind).unwrap()).unwrap();
        let r = tt.check_trace_homogeneity(&g);
        assert!(r.passed, "{kind:?}: {:?}", r.counterexample);
    }
}

#[test]
fn realization_inside_c_tensor_c() {
    let tt = t();
    let it = tt.in_tensor().unwrap();
    assert!(it.report.passed, "{:?}", it.report.counterexample);
    assert_eq!(it.subspace.dim(), 35);
    let (skew, _) = split_involution(&it.tensor).unwrap();
    for k in 0..7 {
        assert!(skew.contains(&it.psi[k]));
    }
    assert_eq!(it.report.checks_run, 1 + 1 + 35 * 36 + 35 * 36);
}

#[test]
fn recovered_cayley_product() {
    let tt = t();
    let (rec, r) = tt.recover_cayley().unwrap();
    assert!(r.passed, "{:?}", r.counterexample);
    assert_eq!(r.checks_run, 64 + 1);
    // the recovered algebra is a composition algebra with the standard conjugation
    let rec = Algebra::new(rec.name(), rec.labels().to_vec(), rec.table().to_vec(), rec.involution().map(<[SVec]>::to_vec), rec.unit().cloned()).unwrap();
    let q = norm_form(&rec).unwrap();
    assert!(check_composition(&rec, &q).passed);
    // n(s_a, s_b) carried over
    for a in 0..7 {
        for b in 0..7 {
            let want = tt.norm(&SVec::basis(a), &SVec::basis(b));
            assert_eq!(q.polar(&SVec::basis(a + 1), &SVec::basis(b + 1)), want);
        }
    }
}

#[test]
fn wrong_coefficient_breaks_structurability() {
    let c = t().cayley();
    for bad in [Scalar::frac(1, 2).unwrap(), Scalar::one(), Scalar::frac(-1, 4).unwrap()] {
        let m = build_smirnov_with_coefficient(c, &bad).unwrap();
        let r = check_structurable(m.algebra()).unwrap();
        assert!(!r.passed, "coefficient {bad}");
    }
}

#[test]
fn wrong_input_dimension() {
    assert!(build_smirnov_with_coefficient(&bases().h, &Scalar::frac(1, 4).unwrap()).is_err());
}

#[test]
fn derivations_form_g2() {
    let a = t().algebra();
    let der = derivation_algebra(a);
    assert_eq!(der.dim(), 14);
    // closed under the commutator of operators
    let n = a.dim();
    let ops: Vec<LinearMap> = der
        .basis()
        .iter()
        .map(|v| LinearMap {
            rows: (0..n).map(|k| SVec::from_terms(v.iter().filter(|(i, _)| i / n == k).map(|(i, c)| (i % n, c.clone())).collect())).collect(),
        })
        .collect();
    let flat = |m: &LinearMap| SVec::from_terms(m.flatten(n, 0));
    for d1 in &ops {
        for d2 in &ops {
            let ab = d2.after(d1);
            let ba = d1.after(d2);
            let br = LinearMap { rows: ab.rows.iter().zip(&ba.rows).map(|(x, y)| x.sub(y)).collect() };
            assert!(der.contains(&flat(&br)));
        }
    }
}

#[test]
fn induced_gradings() {
    let tt = t();
    let c = tt.cayley().clone();
    let cases = [(StandardKind::Cartan, AbelianGroup::free(2)), (StandardKind::CayleyDickson, AbelianGroup::new(0, vec![2, 2, 2]).unwrap())];
    for (kind, want) in cases {
        let g = tt.induce_grading(&standard_grading(c.clone(), kind).unwrap()).unwrap();
        assert!(verify(&g, true).passed);
        assert!(universal_group(&g).unwrap().group.is_isomorphic(&want), "{kind:?}");
    }
    let trivial = Grading::new(c.clone(), None, AbelianGroup::trivial(), vec![GroupElement::new(vec![]); 8]).unwrap();
    let g = tt.induce_grading(&trivial).unwrap();
    assert_eq!(g.support().len(), 1);
    // a broken grading on C is refused
    let cartan = standard_grading(c.clone(), StandardKind::Cartan).unwrap();
    let mut degrees = cartan.degrees().to_vec();
    degrees[2] = GroupElement::new(vec![5, 0]);
    let broken = Grading::new(c, None, AbelianGroup::free(2), degrees).unwrap();
    assert!(tt.induce_grading(&broken).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// tr(xy, z) = tr(x, z ȳ) on random integer combinations.
    #[test]
    fn trace_invariance_on_random_vectors(
        x in proptest::collection::vec((0usize..35, -3i64..4), 1..4),
        y in proptest::collection::vec((0usize..35, -3i64..4), 1..4),
        z in proptest::collection::vec((0usize..35, -3i64..4), 1..4),
    ) {
        let tt = t();
        let a = tt.algebra();
        let mk = |t: &[(usize, i64)]| SVec::from_terms(t.iter().map(|&(i, c)| (i, Scalar::from_int(c))).collect());
        let (x, y, z) = (mk(&x), mk(&y), mk(&z));
        let lhs = tt.trace_form(&a.mul(&x, &y), &z);
        let rhs = tt.trace_form(&x, &a.mul(&z, &a.conj(&y).unwrap()));
        prop_assert_eq!(lhs, rhs);
    }
}
