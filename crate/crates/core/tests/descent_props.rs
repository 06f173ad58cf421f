//! Galois extensions, crossed products, descent data and the forms they produce.

use gradmat_core::descent::{
    datum_descent, descend, dual_crossed_iso, dual_group_extension, frobenius_extension, good_basis_for_split_form,
    identity_component_invariant, make_quadratic, quadratic_form_classes, splitting_witness, CrossedProduct,
    DescentDatum, GaloisExtension,
};
use gradmat_core::field::Field;
use gradmat_core::graded::{good_iso, GradedVectorSpace, Grading};
use gradmat_core::group::FiniteAbelianGroup;
use gradmat_core::matrix::Matrix;
use proptest::prelude::*;

fn quadratic_fields() -> Vec<Field> {
    vec![
        Field::Rational,
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::prime(2).unwrap(),
        Field::galois(4).unwrap(),
    ]
}

/// Every extension the library constructs with `d·|H| <= 16`.
fn sample_extensions() -> Vec<GaloisExtension> {
    let mut out = Vec::new();
    for f in quadratic_fields() {
        let alphas: Vec<_> = match f.elements() {
            Some(all) => all
                .into_iter()
                .filter(|a| f.characteristic() == 2 || !f.is_zero(a))
                .collect(),
            None => [2, 3, -1, 5, 4].iter().map(|&x| f.from_i64(x)).collect(),
        };
        for a in alphas {
            out.push(make_quadratic(&f, &a).unwrap());
        }
    }
    for (p, d) in [(2, 2), (3, 2), (5, 2), (2, 3), (3, 3), (5, 3)] {
        out.push(frobenius_extension(p, d).unwrap());
    }
    for factors in [&[2u64][..], &[3], &[4], &[2, 2]] {
        let h = FiniteAbelianGroup::new(factors).unwrap();
        out.push(dual_group_extension(&h, &Field::prime(3).unwrap()).unwrap());
        out.push(dual_group_extension(&h, &Field::Rational).unwrap());
    }
    out
}

fn trivial_w(ext: &GaloisExtension) -> GradedVectorSpace {
    GradedVectorSpace::new(ext.group().clone(), vec![ext.group().identity()]).unwrap()
}

/// Nontrivial idempotents among all `c_1 b_1 + c_2 b_2`, by exhaustion.
fn nontrivial_idempotents(grading: &Grading) -> usize {
    let f = grading.field();
    let basis = grading.component(&grading.group().identity());
    let all = f.elements().unwrap();
    let id = Matrix::identity(f, 2);
    let mut count = 0;
    for a in &all {
        for b in &all {
            let e = Matrix::combination(f, &[a.clone(), b.clone()], basis);
            if e.mul(f, &e) == e && !e.is_zero(f) && e != id {
                count += 1;
            }
        }
    }
    count
}

#[test]
fn every_sample_extension_is_galois() {
    for ext in sample_extensions() {
        assert!(ext.is_galois().is_galois(), "{:?}", ext.construction());
    }
}

#[test]
fn j_is_multiplicative() {
    for ext in sample_extensions() {
        let f = ext.field().clone();
        let cp = CrossedProduct::new(&ext).unwrap();
        for a in 0..cp.dim() {
            for b in 0..cp.dim() {
                let (x, y) = (cp.basis(a), cp.basis(b));
                assert_eq!(cp.j(&cp.mul(&x, &y)), cp.j(&x).mul(&f, &cp.j(&y)));
                let degree = ext.group().mul(cp.degree(a), cp.degree(b));
                let prod = cp.mul(&x, &y);
                assert!(prod
                    .iter()
                    .enumerate()
                    .all(|(k, c)| f.is_zero(c) || cp.degree(k) == &degree));
            }
        }
    }
}

#[test]
fn descended_gradings_split_over_l() {
    for ext in sample_extensions() {
        let a = descend(&ext).unwrap();
        assert!(a.grading.verify().is_pass(), "{:?}", ext.construction());
        assert_eq!(
            a.grading.component_dims(),
            vec![ext.dim(); ext.group().order() as usize]
        );
        let cert = splitting_witness(&a, &ext).unwrap();
        assert_eq!(cert.units.len(), ext.dim() * ext.dim());
        let shown = a.change_basis(&ext.descent_basis()).unwrap();
        splitting_witness(&shown, &ext).unwrap();
    }
}

#[test]
fn datum_route_agrees_with_j_route() {
    for ext in sample_extensions().into_iter().filter(|e| e.group().order() == 2) {
        let by_j = descend(&ext).unwrap();
        let by_datum = datum_descent(&ext, &trivial_w(&ext)).unwrap();
        assert!(by_datum.grading.verify().is_pass());
        assert_eq!(
            identity_component_invariant(&by_j.grading).unwrap(),
            identity_component_invariant(&by_datum.grading).unwrap()
        );
        splitting_witness(&by_j, &ext).unwrap();
        splitting_witness(&by_datum, &ext).unwrap();
    }
}

#[test]
fn datum_route_for_larger_groups() {
    for ext in [
        frobenius_extension(2, 3).unwrap(),
        dual_group_extension(&FiniteAbelianGroup::new(&[2, 2]).unwrap(), &Field::prime(3).unwrap()).unwrap(),
    ] {
        let by_datum = datum_descent(&ext, &trivial_w(&ext)).unwrap();
        assert!(by_datum.grading.verify().is_pass());
        splitting_witness(&by_datum, &ext).unwrap();
    }
    // W of dimension 2 with trivial inertia
    let ext = make_quadratic(&Field::prime(5).unwrap(), &Field::prime(5).unwrap().from_i64(2)).unwrap();
    let g = ext.group();
    let w = GradedVectorSpace::new(g.clone(), vec![g.identity(), g.identity()]).unwrap();
    let by_datum = datum_descent(&ext, &w).unwrap();
    assert_eq!(by_datum.grading.size(), 4);
    assert!(by_datum.grading.verify().is_pass());
    splitting_witness(&by_datum, &ext).unwrap();
}

#[test]
fn fixed_points_have_full_rank() {
    for ext in sample_extensions() {
        let f = ext.field().clone();
        let (datum, v) = DescentDatum::shift(&ext, &trivial_w(&ext)).unwrap();
        let fixed = datum.fixed_points().unwrap();
        assert_eq!(fixed.len(), v.dim());
        for x in &fixed {
            for (g, _) in ext.actions() {
                assert_eq!(&datum.map(&g).mul_vec(&f, x), x);
            }
        }
    }
}

#[test]
fn split_descent_is_good() {
    for factors in [&[2u64][..], &[3], &[2, 2], &[4]] {
        let h = FiniteAbelianGroup::new(factors).unwrap();
        let ext = dual_group_extension(&h, &Field::Rational).unwrap();
        let a = descend(&ext).unwrap().grading;
        let degrees = a.good_degrees().expect("good");
        assert!(good_iso(&h, degrees.degrees(), &h.elements()).unwrap().is_some());
    }
}

#[test]
fn dual_crossed_iso_is_j_inverse() {
    for factors in [&[2u64][..], &[3], &[2, 2], &[4]] {
        let h = FiniteAbelianGroup::new(factors).unwrap();
        let iso = dual_crossed_iso(&h, &Field::Rational).unwrap();
        for k in 0..iso.crossed.dim() {
            let x = iso.crossed.basis(k);
            assert_eq!(iso.inverse_image(&x), iso.crossed.j(&x));
        }
    }
}

#[test]
fn odd_finite_field_forms_are_separated() {
    for q in [3u64, 5, 7, 9, 11, 13] {
        let f = Field::galois(q).unwrap();
        let classes = quadratic_form_classes(&f).unwrap();
        assert_eq!(classes.len(), 2);
        let mut invariants = Vec::new();
        for class in &classes {
            let ext = make_quadratic(&f, &class.alpha).unwrap();
            let a = descend(&ext).unwrap().grading;
            let inv = identity_component_invariant(&a).unwrap();
            assert_eq!(inv.split, class.split);
            let idempotents = nontrivial_idempotents(&a);
            match good_basis_for_split_form(&a).unwrap() {
                Some(p) => {
                    assert!(class.split);
                    assert_eq!(idempotents, 2);
                    let good = a.change_basis(&p).unwrap();
                    let c2 = good.group().clone();
                    let degrees = good.good_degrees().unwrap();
                    assert!(good_iso(&c2, degrees.degrees(), &[c2.identity(), c2.generator(0)])
                        .unwrap()
                        .is_some());
                }
                None => {
                    assert!(!class.split);
                    assert_eq!(idempotents, 0);
                }
            }
            invariants.push(inv);
        }
        assert_ne!(invariants[0], invariants[1], "GF({q})");
    }
}

#[test]
fn char2_forms_are_separated() {
    for q in [2u64, 4, 8] {
        let f = Field::galois(q).unwrap();
        for a in f.elements().unwrap() {
            let ext = make_quadratic(&f, &a).unwrap();
            let g = descend(&ext).unwrap().grading;
            let inv = identity_component_invariant(&g).unwrap();
            let trace = f.absolute_trace(&a).unwrap();
            assert_eq!(inv.split, f.is_zero(&trace));
            assert_eq!(nontrivial_idempotents(&g) > 0, inv.split);
        }
    }
}

proptest! {
    #[test]
    fn rational_quadratic_class_is_squarefree_part(alpha in -40i64..40, square in 1i64..6) {
        prop_assume!(alpha != 0);
        let q = Field::Rational;
        let e1 = make_quadratic(&q, &q.from_i64(alpha)).unwrap();
        let e2 = make_quadratic(&q, &q.from_i64(alpha * square * square)).unwrap();
        let i1 = identity_component_invariant(&descend(&e1).unwrap().grading).unwrap();
        let i2 = identity_component_invariant(&descend(&e2).unwrap().grading).unwrap();
        prop_assert_eq!(i1, i2);
    }
}
