use alloc::vec::Vec;

use crate::error::{internal, Error, Result};
use crate::field::{Field, Scalar};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::Matrix;

use super::extension::{dual_group_extension, GaloisExtension};

/// `Δ(l, H) = ⊕ l·u_σ` with `(a u_σ)(b u_τ) = a σ(b) u_{στ}`, graded by `deg u_σ = σ`.
///
/// Coordinates: index `h·d + i` is `b_i u_h`, `h` the enumeration index of the element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedProduct {
    ext: GaloisExtension,
    elements: Vec<GroupElement>,
}

impl CrossedProduct {
    /// Builds `Δ(l, H)` and checks associativity on every basis triple.
    pub fn new(ext: &GaloisExtension) -> Result<Self> {
        let cp = Self {
            ext: ext.clone(),
            elements: ext.group().elements(),
        };
        let n = cp.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = cp.mul(&cp.basis(a), &cp.basis(b));
                for c in 0..n {
                    let bc = cp.mul(&cp.basis(b), &cp.basis(c));
                    if cp.mul(&ab, &cp.basis(c)) != cp.mul(&cp.basis(a), &bc) {
                        return Err(Error::InvalidAlgebra {
                            reason: "crossed product not associative",
                            triple: (a, b, c),
                        });
                    }
                }
            }
        }
        Ok(cp)
    }

    pub fn extension(&self) -> &GaloisExtension {
        &self.ext
    }

    fn field(&self) -> &Field {
        self.ext.field()
    }

    pub fn dim(&self) -> usize {
        self.ext.dim() * self.elements.len()
    }

    pub fn basis(&self, index: usize) -> Vec<Scalar> {
        let f = self.field();
        (0..self.dim())
            .map(|k| if k == index { f.one() } else { f.zero() })
            .collect()
    }

    /// Coordinates of `b_i u_σ`.
    pub fn basis_of(&self, i: usize, sigma: &GroupElement) -> Vec<Scalar> {
        self.basis(self.ext.group().index_of(sigma) * self.ext.dim() + i)
    }

    pub fn degree(&self, index: usize) -> &GroupElement {
        &self.elements[index / self.ext.dim()]
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let l = self.ext.algebra();
        let d = self.ext.dim();
        let group = self.ext.group();
        let mut out = alloc::vec![f.zero(); self.dim()];
        for (s, sigma) in self.elements.iter().enumerate() {
            let a = &x[s * d..(s + 1) * d];
            if a.iter().all(|c| f.is_zero(c)) {
                continue;
            }
            for (t, tau) in self.elements.iter().enumerate() {
                let b = &y[t * d..(t + 1) * d];
                if b.iter().all(|c| f.is_zero(c)) {
                    continue;
                }
                let prod = l.mul(a, &self.ext.apply(sigma, b));
                let slot = group.index_of(&group.mul(sigma, tau)) * d;
                for (o, c) in out[slot..slot + d].iter_mut().zip(prod) {
                    *o = f.add(o, &c);
                }
            }
        }
        out
    }

    /// `j(x)`: the operator `b ↦ Σ a_σ σ(b)` on `l`.
    pub fn j(&self, x: &[Scalar]) -> Matrix {
        let f = self.field();
        let d = self.ext.dim();
        let l = self.ext.algebra();
        let mut out = Matrix::zero(f, d, d);
        for (s, sigma) in self.elements.iter().enumerate() {
            let a = &x[s * d..(s + 1) * d];
            out = out.add(f, &l.left_mul_matrix(a).mul(f, self.ext.action(sigma)));
        }
        out
    }
}

/// The correspondence `e_{σ,τ} ↔ v_σ u_{τσ⁻¹}` between `End_k(kH)` and
/// `Δ(Hk, H)`, checked in both directions.
///
/// `End_k(kH)` uses the basis `H` in enumeration order and the grading
/// `deg e_{σ,τ} = τσ⁻¹`.
#[derive(Debug, Clone)]
pub struct DualCrossedIso {
    pub crossed: CrossedProduct,
    /// `images[s·n + t]` are the coordinates of `f(e_{σ_s, σ_t})`.
    pub images: Vec<Vec<Scalar>>,
}

impl DualCrossedIso {
    pub fn group(&self) -> &FiniteAbelianGroup {
        self.crossed.ext.group()
    }

    /// `f⁻¹` on a crossed-product vector, as an `|H|×|H|` matrix.
    pub fn inverse_image(&self, x: &[Scalar]) -> Matrix {
        let f = self.crossed.field();
        let n = self.group().order() as usize;
        let mut out = Matrix::zero(f, n, n);
        for (k, img) in self.images.iter().enumerate() {
            // every image is a basis vector, so f⁻¹ reads off one coordinate
            let pos = img.iter().position(|c| f.is_one(c)).expect("image is a basis vector");
            out[(k / n, k % n)] = x[pos].clone();
        }
        out
    }
}

pub fn dual_crossed_iso(group: &FiniteAbelianGroup, field: &Field) -> Result<DualCrossedIso> {
    let ext = dual_group_extension(group, field)?;
    let crossed = CrossedProduct::new(&ext)?;
    let elements = group.elements();
    let n = elements.len();
    let mut images = Vec::with_capacity(n * n);
    for sigma in &elements {
        for tau in &elements {
            let idx = group.index_of(sigma);
            images.push(crossed.basis_of(idx, &group.div(tau, sigma)));
        }
    }
    let iso = DualCrossedIso { crossed, images };

    let f = field;
    let zero = alloc::vec![f.zero(); n * n];
    for s in 0..n {
        for t in 0..n {
            let x = &iso.images[s * n + t];
            let deg = group.div(&elements[t], &elements[s]);
            let pos = x.iter().position(|c| f.is_one(c)).expect("basis vector");
            if iso.crossed.degree(pos) != &deg {
                return Err(internal!("f does not preserve the degree of e_({s},{t})"));
            }
            for r in 0..n {
                for v in 0..n {
                    let prod = iso.crossed.mul(x, &iso.images[r * n + v]);
                    let expected = if t == r { &iso.images[s * n + v] } else { &zero };
                    if &prod != expected {
                        return Err(internal!("f is not multiplicative on e_({s},{t}) e_({r},{v})"));
                    }
                }
            }
        }
    }
    let mut hit = alloc::vec![false; n * n];
    for img in &iso.images {
        let pos = img.iter().position(|c| f.is_one(c)).expect("basis vector");
        if core::mem::replace(&mut hit[pos], true) {
            return Err(internal!("f is not injective"));
        }
    }
    // inverse direction: f⁻¹ multiplicative on crossed-product basis pairs
    for a in 0..n * n {
        let xa = iso.crossed.basis(a);
        let ma = iso.inverse_image(&xa);
        for b in 0..n * n {
            let xb = iso.crossed.basis(b);
            let lhs = iso.inverse_image(&iso.crossed.mul(&xa, &xb));
            if lhs != ma.mul(f, &iso.inverse_image(&xb)) {
                return Err(internal!("f⁻¹ is not multiplicative on basis pair ({a}, {b})"));
            }
        }
    }
    Ok(iso)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::extension::make_quadratic;

    #[test]
    fn quadratic_crossed_product_rule() {
        let q = Field::Rational;
        let e = make_quadratic(&q, &q.from_i64(2)).unwrap();
        let cp = CrossedProduct::new(&e).unwrap();
        let h = e.group();
        let s = h.generator(0);
        // u_σ · (√2 u_e) = -√2 u_σ
        let lhs = cp.mul(&cp.basis_of(0, &s), &cp.basis_of(1, &h.identity()));
        let mut expected = cp.basis_of(1, &s);
        for c in expected.iter_mut() {
            *c = q.neg(c);
        }
        assert_eq!(lhs, expected);
        assert_eq!(cp.degree(3), &s);
    }

    #[test]
    fn trivial_group_gives_l() {
        let f = Field::prime(5).unwrap();
        let trivial = FiniteAbelianGroup::new(&[]).unwrap();
        let e = dual_group_extension(&trivial, &f).unwrap();
        let cp = CrossedProduct::new(&e).unwrap();
        assert_eq!(cp.dim(), 1);
    }

    #[test]
    fn dual_iso_small_cases() {
        let q = Field::Rational;
        for factors in [&[2u64][..], &[3], &[2, 2]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            let iso = dual_crossed_iso(&g, &q).unwrap();
            let n = g.order() as usize;
            assert_eq!(iso.images.len(), n * n);
        }
        let c3 = FiniteAbelianGroup::cyclic(3).unwrap();
        let iso = dual_crossed_iso(&c3, &q).unwrap();
        // e_{c,c²} ↔ v_c u_c
        assert_eq!(iso.images[3 + 2], iso.crossed.basis_of(1, &c3.element(&[1]).unwrap()));
    }
}
