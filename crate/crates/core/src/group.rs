//! Finite abelian groups in invariant-factor form.
//!
//! A group is `C_{n_1} x ... x C_{n_r}`; elements are residue tuples. The
//! all-zero tuple is the identity and the group law is written additively on
//! coordinates even though the algebra code reads it multiplicatively.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<u64>,
    order: u64,
}

/// An element of a [`FiniteAbelianGroup`], stored as reduced coordinates.
///
/// The derived ordering is lexicographic on coordinates, which coincides with
/// [`FiniteAbelianGroup::elements`] order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FiniteAbelianGroup {
    /// An empty factor list gives the trivial group `[1]`.
    pub fn new(factors: &[u64]) -> Result<Self> {
        if factors.iter().any(|&n| n == 0) {
            return Err(invalid!("group factor 0 in {factors:?}"));
        }
        let factors: Vec<u64> = if factors.is_empty() {
            alloc::vec![1]
        } else {
            factors.to_vec()
        };
        let order = factors
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n))
            .ok_or_else(|| invalid!("group order overflows u64"))?;
        Ok(Self { factors, order })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn is_cyclic_presentation(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: alloc::vec![0; self.factors.len()],
        }
    }

    /// Builds an element, reducing each coordinate modulo its factor.
    pub fn element(&self, coords: &[u64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(invalid!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.factors.len()
            ));
        }
        Ok(GroupElement {
            coords: coords.iter().zip(&self.factors).map(|(&c, &n)| c % n).collect(),
        })
    }

    /// Like [`Self::element`] but accepts signed coordinates.
    pub fn element_signed(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.factors.len() {
            return Err(invalid!(
                "element has {} coordinates, group has {} factors",
                coords.len(),
                self.factors.len()
            ));
        }
        Ok(GroupElement {
            coords: coords
                .iter()
                .zip(&self.factors)
                .map(|(&c, &n)| c.rem_euclid(n as i64) as u64)
                .collect(),
        })
    }

    /// The generator of the `i`-th cyclic factor.
    pub fn generator(&self, i: usize) -> GroupElement {
        let mut coords = alloc::vec![0; self.factors.len()];
        coords[i] = 1 % self.factors[i];
        GroupElement { coords }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.coords.len() == self.factors.len() && a.coords.iter().zip(&self.factors).all(|(&c, &n)| c < n)
    }

    fn check(&self, a: &GroupElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(invalid!("element ({a}) is not in group {:?}", self.factors))
        }
    }

    /// `a·b`, or `a·b⁻¹` when `negate_b` is set.
    pub fn combine(&self, a: &GroupElement, b: &GroupElement, negate_b: bool) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.combine_unchecked(a, b, negate_b))
    }

    pub(crate) fn combine_unchecked(&self, a: &GroupElement, b: &GroupElement, negate_b: bool) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &n)| if negate_b { (x + n - y) % n } else { (x + y) % n })
            .collect();
        GroupElement { coords }
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.combine_unchecked(a, b, false)
    }

    /// `a·b⁻¹`.
    pub fn div(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.combine_unchecked(a, b, true)
    }

    pub fn inverse(&self, a: &GroupElement) -> GroupElement {
        self.div(&self.identity(), a)
    }

    pub fn pow(&self, a: &GroupElement, k: u64) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| ((c as u128 * k as u128) % n as u128) as u64)
            .collect();
        GroupElement { coords }
    }

    /// Order of an element: lcm over coordinates of `n_i / gcd(c_i, n_i)`.
    pub fn element_order(&self, a: &GroupElement) -> u64 {
        a.coords
            .iter()
            .zip(&self.factors)
            .map(|(&c, &n)| n / num_integer::gcd(c, n))
            .fold(1, num_integer::lcm)
    }

    /// All elements in lexicographic coordinate order, identity first.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = Vec::with_capacity(self.order as usize);
        let mut cur = alloc::vec![0u64; self.factors.len()];
        for _ in 0..self.order {
            out.push(GroupElement { coords: cur.clone() });
            for i in (0..cur.len()).rev() {
                cur[i] += 1;
                if cur[i] < self.factors[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
        out
    }

    /// Position of `a` in [`Self::elements`].
    pub fn index_of(&self, a: &GroupElement) -> usize {
        a.coords
            .iter()
            .zip(&self.factors)
            .fold(0u64, |acc, (&c, &n)| acc * n + c) as usize
    }

    pub fn element_at(&self, mut index: usize) -> GroupElement {
        let mut coords = alloc::vec![0u64; self.factors.len()];
        for i in (0..coords.len()).rev() {
            let n = self.factors[i] as usize;
            coords[i] = (index % n) as u64;
            index /= n;
        }
        GroupElement { coords }
    }

    /// Checks that `elems` is a subgroup (contains `e`, closed under `a·b⁻¹`).
    pub fn is_subgroup(&self, elems: &[GroupElement]) -> bool {
        if !elems.iter().any(GroupElement::is_identity) {
            return false;
        }
        elems
            .iter()
            .all(|a| elems.iter().all(|b| elems.contains(&self.div(a, b))))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn construction() {
        assert_eq!(FiniteAbelianGroup::new(&[2]).unwrap().order(), 2);
        assert_eq!(FiniteAbelianGroup::new(&[2, 2]).unwrap().order(), 4);
        let trivial = FiniteAbelianGroup::new(&[1]).unwrap();
        assert_eq!(trivial.order(), 1);
        assert_eq!(trivial.elements(), vec![trivial.identity()]);
        assert_eq!(FiniteAbelianGroup::new(&[]).unwrap().factors(), &[1]);
        assert!(FiniteAbelianGroup::new(&[3, 0]).is_err());
    }

    #[test]
    fn combine_examples() {
        let c2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let s = c2.element(&[1]).unwrap();
        assert!(c2.combine(&s, &s, false).unwrap().is_identity());

        let c4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let c = c4.element(&[1]).unwrap();
        let c3 = c4.element(&[3]).unwrap();
        assert!(c4.combine(&c, &c3, false).unwrap().is_identity());
        assert_eq!(c4.combine(&c, &c3, true).unwrap(), c4.element(&[2]).unwrap());

        let k = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let a = k.element(&[1, 0]).unwrap();
        let b = k.element(&[0, 1]).unwrap();
        assert_eq!(k.combine(&a, &b, false).unwrap(), k.element(&[1, 1]).unwrap());

        assert!(k.combine(&a, &c, false).is_err());
    }

    #[test]
    fn enumeration_order() {
        let c3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let els = c3.elements();
        assert_eq!(els.iter().map(|e| e.coords()[0]).collect::<Vec<_>>(), vec![0, 1, 2]);
        let k = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        let els = k.elements();
        assert_eq!(els.len(), 6);
        assert!(els[0].is_identity());
        for (i, e) in els.iter().enumerate() {
            assert_eq!(k.index_of(e), i);
            assert_eq!(&k.element_at(i), e);
        }
        assert!(els.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn element_orders() {
        let g = FiniteAbelianGroup::new(&[2, 4]).unwrap();
        assert_eq!(g.element_order(&g.element(&[1, 2]).unwrap()), 2);
        assert_eq!(g.element_order(&g.element(&[1, 1]).unwrap()), 4);
        assert_eq!(g.element_order(&g.identity()), 1);
    }
}
