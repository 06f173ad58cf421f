//! Forms of the good grading `deg e_11 = deg e_22 = e`, `deg e_12 = deg e_21 = σ`
//! on `M_2(k)`, told apart by the quadratic algebra `A_e`.

use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{internal, invalid, Error, Result};
use crate::field::{Field, Scalar};
use crate::graded::Grading;
use crate::matrix::Matrix;

/// A class of quadratic Galois extensions of a finite field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormClass {
    /// Parameter for [`make_quadratic`](super::make_quadratic).
    pub alpha: Scalar,
    pub split: bool,
}

/// Class of the quadratic extension `A_e`, as a canonical `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormInvariant {
    pub class: Scalar,
    pub split: bool,
}

/// One `α` per class of quadratic extensions: `{1, first nonsquare}` in odd
/// characteristic, `{0, first element of absolute trace 1}` in characteristic 2.
pub fn quadratic_form_classes(field: &Field) -> Result<Vec<FormClass>> {
    let elements = field
        .elements()
        .ok_or_else(|| invalid!("form classes are only enumerated over finite fields"))?;
    if field.characteristic() == 2 {
        let nontrivial = elements
            .into_iter()
            .find(|a| field.absolute_trace(a).is_some_and(|t| field.is_one(&t)))
            .ok_or_else(|| internal!("no element of trace 1 in {field}"))?;
        Ok(alloc::vec![
            FormClass {
                alpha: field.zero(),
                split: true
            },
            FormClass {
                alpha: nontrivial,
                split: false
            },
        ])
    } else {
        let nonsquare = elements
            .into_iter()
            .find(|a| !field.is_square(a))
            .ok_or_else(|| internal!("no nonsquare in {field}"))?;
        Ok(alloc::vec![
            FormClass {
                alpha: field.one(),
                split: true
            },
            FormClass {
                alpha: nonsquare,
                split: false
            },
        ])
    }
}

/// Some element of `A_e` that is not a scalar matrix, with its trace and determinant.
fn quadratic_generator(grading: &Grading) -> Result<(Matrix, Scalar, Scalar)> {
    let group = grading.group();
    if grading.size() != 2 || group.order() != 2 || group.rank() != 1 {
        return Err(invalid!("need a C_2-grading on M_2"));
    }
    if grading.component_dims() != [2, 2] {
        return Err(invalid!(
            "need component dimensions (2, 2), got {:?}",
            grading.component_dims()
        ));
    }
    let f = grading.field();
    let y = grading
        .component(&group.identity())
        .iter()
        .find(|b| !(f.is_zero(&b[(0, 1)]) && f.is_zero(&b[(1, 0)]) && b[(0, 0)] == b[(1, 1)]))
        .ok_or_else(|| invalid!("identity component is spanned by scalars"))?
        .clone();
    let trace = f.add(&y[(0, 0)], &y[(1, 1)]);
    let det = f.sub(&f.mul(&y[(0, 0)], &y[(1, 1)]), &f.mul(&y[(0, 1)], &y[(1, 0)]));
    Ok((y, trace, det))
}

/// `A_e ≅ k[X]/(X² - tX + n)`; returns the class of this extension.
pub fn identity_component_invariant(grading: &Grading) -> Result<FormInvariant> {
    let f = grading.field();
    let (_, t, n) = quadratic_generator(grading)?;
    if f.characteristic() == 2 {
        // X = tZ turns the relation into Z² - Z - n/t²
        let tinv = f
            .inv(&t)
            .ok_or_else(|| invalid!("identity component is not separable"))?;
        let c = f.mul(&n, &f.mul(&tinv, &tinv));
        let trace = f
            .absolute_trace(&c)
            .ok_or_else(|| internal!("characteristic 2 field without trace"))?;
        let classes = quadratic_form_classes(f)?;
        let split = f.is_zero(&trace);
        let class = if split {
            classes[0].alpha.clone()
        } else {
            classes[1].alpha.clone()
        };
        return Ok(FormInvariant { class, split });
    }
    let disc = f.sub(&f.mul(&t, &t), &f.mul(&f.from_i64(4), &n));
    if f.is_zero(&disc) {
        return Err(invalid!("identity component is not separable (zero discriminant)"));
    }
    match f {
        Field::Rational => {
            let Scalar::Rational(r) = &disc else { unreachable!() };
            let class = squarefree_part(&(r.numer() * r.denom()))?;
            let split = class.is_one();
            Ok(FormInvariant {
                class: Scalar::Rational(BigRational::from_integer(class)),
                split,
            })
        }
        Field::Finite(_) => {
            let classes = quadratic_form_classes(f)?;
            let split = f.is_square(&disc);
            let class = if split {
                classes[0].alpha.clone()
            } else {
                classes[1].alpha.clone()
            };
            Ok(FormInvariant { class, split })
        }
    }
}

/// Trial division bound for squarefree parts over Q.
const TRIAL_BOUND: u64 = 1_000_000;

fn squarefree_part(n: &BigInt) -> Result<BigInt> {
    let negative = n.sign() == Sign::Minus;
    let mut rest = n.abs();
    let mut out = BigInt::one();
    let mut p = 2u64;
    while p <= TRIAL_BOUND && BigInt::from(p) * BigInt::from(p) <= rest {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&rest % &bp).is_zero() {
            rest /= &bp;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &bp;
        }
        p += 1;
    }
    // every prime factor of the cofactor now exceeds the bound
    let bound = BigInt::from(TRIAL_BOUND);
    if rest > BigInt::one() {
        if rest >= &bound * &bound * &bound {
            return Err(Error::ResourceLimit {
                what: "squarefree part by trial division",
                needed: alloc::format!("{n}"),
                bound: TRIAL_BOUND,
            });
        }
        let root = rest.sqrt();
        if &root * &root != rest {
            out *= rest;
        }
    }
    Ok(if negative { -out } else { out })
}

fn roots(field: &Field, t: &Scalar, n: &Scalar) -> Vec<Scalar> {
    let f = field;
    let is_root = |x: &Scalar| f.is_zero(&f.add(&f.sub(&f.mul(x, x), &f.mul(t, x)), n));
    match f.elements() {
        Some(all) => all.into_iter().filter(is_root).collect(),
        None => {
            let disc = f.sub(&f.mul(t, t), &f.mul(&f.from_i64(4), n));
            let Some(s) = f.sqrt(&disc) else { return Vec::new() };
            let half = f.inv(&f.from_i64(2)).expect("char 0");
            let mut out = alloc::vec![f.mul(&f.add(t, &s), &half), f.mul(&f.sub(t, &s), &half)];
            out.dedup();
            out
        }
    }
}

/// For a split form, a change of basis `P` making `P⁻¹ A P` good.
/// `None` when `A_e` is a field.
pub fn good_basis_for_split_form(grading: &Grading) -> Result<Option<Matrix>> {
    let f = grading.field();
    let (y, t, n) = quadratic_generator(grading)?;
    let rs = roots(f, &t, &n);
    let [r1, r2] = rs.as_slice() else { return Ok(None) };
    // ε = (y - r2)/(r1 - r2) is a nontrivial idempotent of A_e
    let scale = f.inv(&f.sub(r1, r2)).ok_or_else(|| internal!("repeated root"))?;
    let id = Matrix::identity(f, 2);
    let eps = y.sub(f, &id.scale(f, r2)).scale(f, &scale);
    let comp = id.sub(f, &eps);
    let pick = |m: &Matrix| (0..2).map(|c| m.col(c)).find(|v| v.iter().any(|x| !f.is_zero(x)));
    let (Some(v1), Some(v2)) = (pick(&eps), pick(&comp)) else {
        return Err(internal!("idempotent with zero image"));
    };
    let p = Matrix::from_fn(2, 2, |r, c| if c == 0 { v1[r].clone() } else { v2[r].clone() });
    if !grading.change_basis(&p)?.is_good() {
        return Err(internal!("eigenbasis of A_e does not make the grading good"));
    }
    Ok(Some(p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::{descend, make_quadratic};
    use crate::graded::GradedVectorSpace;
    use crate::group::FiniteAbelianGroup;

    #[test]
    fn classes_small_fields() {
        let f3 = Field::prime(3).unwrap();
        let c = quadratic_form_classes(&f3).unwrap();
        assert_eq!(
            (c[0].alpha.clone(), c[1].alpha.clone()),
            (f3.from_i64(1), f3.from_i64(2))
        );
        let f5 = Field::prime(5).unwrap();
        assert_eq!(quadratic_form_classes(&f5).unwrap()[1].alpha, f5.from_i64(2));
        let f2 = Field::prime(2).unwrap();
        let c = quadratic_form_classes(&f2).unwrap();
        assert_eq!((c[0].alpha.clone(), c[1].alpha.clone()), (f2.zero(), f2.one()));
        let f4 = Field::galois(4).unwrap();
        assert_eq!(quadratic_form_classes(&f4).unwrap()[1].alpha, f4.from_code(2).unwrap());
        assert!(quadratic_form_classes(&Field::Rational).is_err());
    }

    #[test]
    fn good_grading_is_split() {
        let f3 = Field::prime(3).unwrap();
        let c2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let v = GradedVectorSpace::new(c2.clone(), alloc::vec![c2.identity(), c2.generator(0)]).unwrap();
        let a = Grading::end_grading(&v, &f3);
        let inv = identity_component_invariant(&a).unwrap();
        assert!(inv.split);
        assert_eq!(inv.class, f3.one());
    }

    #[test]
    fn descended_forms() {
        let f3 = Field::prime(3).unwrap();
        let a = descend(&make_quadratic(&f3, &f3.from_i64(2)).unwrap()).unwrap().grading;
        assert_eq!(
            identity_component_invariant(&a).unwrap(),
            FormInvariant {
                class: f3.from_i64(2),
                split: false
            }
        );
        assert!(good_basis_for_split_form(&a).unwrap().is_none());

        let f2 = Field::prime(2).unwrap();
        let a = descend(&make_quadratic(&f2, &f2.one()).unwrap()).unwrap().grading;
        assert_eq!(
            identity_component_invariant(&a).unwrap(),
            FormInvariant {
                class: f2.one(),
                split: false
            }
        );

        let q = Field::Rational;
        for (alpha, class) in [(2, 2), (8, 2), (-3, -3), (12, 3)] {
            let e = make_quadratic(&q, &q.from_i64(alpha)).unwrap();
            let a = descend(&e).unwrap().change_basis(&e.descent_basis()).unwrap().grading;
            assert_eq!(
                identity_component_invariant(&a).unwrap().class,
                q.from_i64(class),
                "alpha {alpha}"
            );
        }
        let a = descend(&make_quadratic(&q, &q.from_i64(9)).unwrap()).unwrap().grading;
        assert!(identity_component_invariant(&a).unwrap().split);
        let p = good_basis_for_split_form(&a).unwrap().unwrap();
        assert!(a.change_basis(&p).unwrap().is_good());
    }

    #[test]
    fn squarefree() {
        assert_eq!(squarefree_part(&BigInt::from(72)).unwrap(), BigInt::from(2));
        assert_eq!(squarefree_part(&BigInt::from(-45)).unwrap(), BigInt::from(-5));
        assert_eq!(squarefree_part(&BigInt::from(1)).unwrap(), BigInt::from(1));
    }
}
