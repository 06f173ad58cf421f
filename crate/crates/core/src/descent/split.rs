use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{internal, invalid, Result};
use crate::graded::Grading;
use crate::group::GroupElement;
use crate::matrix::{Matrix, SpanTester};

use super::extension::GaloisExtension;

/// A grading on `M_m(k)` obtained by descent, with the data that splits it.
///
/// Over `l`, the matrices `T⁻¹ (e_ij ⊗ I_d) T` are homogeneous matrix units
/// of `l ⊗ A` of degree `g_i g_j⁻¹`, where `g = unit_degrees`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Descended {
    pub grading: Grading,
    pub transport: Matrix,
    pub unit_degrees: Vec<GroupElement>,
}

impl Descended {
    pub fn new(grading: Grading, transport: Matrix, unit_degrees: Vec<GroupElement>) -> Result<Self> {
        let m = grading.size();
        if unit_degrees.len() != m || transport.rows() != transport.cols() || transport.rows() % m != 0 {
            return Err(invalid!("transport must be (m·d)x(m·d) with one degree per row of M_m"));
        }
        Ok(Self {
            grading,
            transport,
            unit_degrees,
        })
    }

    /// Same grading after the change of basis `p`; the transport follows.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let f = self.grading.field();
        let d = self.transport.rows() / self.grading.size();
        Ok(Self {
            grading: self.grading.change_basis(p)?,
            transport: self.transport.mul(f, &p.kron(f, &Matrix::identity(f, d))),
            unit_degrees: self.unit_degrees.clone(),
        })
    }
}

/// `End_k(l)` graded by `deg j(l·u_σ) = σ`, in the algebra basis of `l`.
pub fn descend(ext: &GaloisExtension) -> Result<Descended> {
    ext.require_galois()?;
    let f = ext.field();
    let l = ext.algebra();
    let d = ext.dim();
    let group = ext.group();
    let components = group
        .elements()
        .into_iter()
        .map(|sigma| {
            let basis = (0..d).map(|i| ext.j_operator(i, &sigma)).collect();
            (sigma, basis)
        })
        .collect::<Vec<_>>();
    let grading = Grading::new(group.clone(), f.clone(), d, components)?;

    // m(y ⊗ b) = Σ_ρ y ρ(b) v_ρ: block (ρ, c) is multiplication by ρ(b_c)
    let elements = group.elements();
    let n = elements.len() * d;
    if n != d * d {
        return Err(internal!("Galois extension with |H| != dim l"));
    }
    let mut transport = Matrix::zero(f, n, n);
    for (r, rho) in elements.iter().enumerate() {
        for c in 0..d {
            let block = l.left_mul_matrix(&ext.apply(rho, &l.basis(c)));
            for i in 0..d {
                for j in 0..d {
                    transport[(r * d + i, c * d + j)] = block[(i, j)].clone();
                }
            }
        }
    }
    let unit_degrees = elements.iter().map(|rho| group.inverse(rho)).collect();
    Descended::new(grading, transport, unit_degrees)
}

pub fn descended_grading(ext: &GaloisExtension) -> Result<Grading> {
    Ok(descend(ext)?.grading)
}

/// A complete system of homogeneous matrix units in `l ⊗ A`, each stored as
/// an `(m·d)×(m·d)` matrix over `k` in the layout of [`Grading::base_extend`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplittingCertificate {
    pub size: usize,
    /// `units[i·m + j] = E_ij`.
    pub units: Vec<Matrix>,
    pub degrees: Vec<GroupElement>,
}

impl SplittingCertificate {
    pub fn unit(&self, i: usize, j: usize) -> &Matrix {
        &self.units[i * self.size + j]
    }

    /// Degree of `E_ij`.
    pub fn unit_degree(&self, grading: &Grading, i: usize, j: usize) -> GroupElement {
        grading.group().div(&self.degrees[i], &self.degrees[j])
    }
}

/// Builds and validates the matrix units `T⁻¹ (e_ij ⊗ I_d) T`.
pub fn splitting_witness(descended: &Descended, ext: &GaloisExtension) -> Result<SplittingCertificate> {
    let grading = &descended.grading;
    let f = ext.field();
    let m = grading.size();
    let d = ext.dim();
    let n = m * d;
    if descended.transport.rows() != n {
        return Err(invalid!(
            "transport is {0}x{0}, expected {n}x{n}",
            descended.transport.rows()
        ));
    }
    let t = &descended.transport;
    let t_inv = t.inverse(f).ok_or_else(|| internal!("transport is singular"))?;
    let id = Matrix::identity(f, d);
    let mut units = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            units.push(t_inv.mul(f, &Matrix::unit(f, m, i, j).kron(f, &id)).mul(f, t));
        }
    }
    let cert = SplittingCertificate {
        size: m,
        units,
        degrees: descended.unit_degrees.clone(),
    };

    let extended = grading.base_extend(ext.algebra())?;
    let testers: BTreeMap<&GroupElement, SpanTester> = extended
        .components()
        .iter()
        .map(|(g, basis)| (g, SpanTester::new(f, basis)))
        .collect();
    let zero = Matrix::zero(f, n, n);
    let mut sum = zero.clone();
    for i in 0..m {
        sum = sum.add(f, cert.unit(i, i));
        for j in 0..m {
            let e = cert.unit(i, j);
            let deg = cert.unit_degree(grading, i, j);
            if !testers.get(&deg).is_some_and(|t| t.contains(f, e)) {
                return Err(internal!("E_{i}{j} is not homogeneous of degree ({deg}) in l ⊗ A"));
            }
            for r in 0..m {
                for s in 0..m {
                    let expected = if j == r { cert.unit(i, s) } else { &zero };
                    if &e.mul(f, cert.unit(r, s)) != expected {
                        return Err(internal!("E_{i}{j} E_{r}{s} violates the matrix unit relations"));
                    }
                }
            }
        }
    }
    if sum != Matrix::identity(f, n) {
        return Err(internal!("diagonal matrix units do not sum to the identity"));
    }
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::extension::{dual_group_extension, frobenius_extension, make_quadratic};
    use crate::field::Field;
    use crate::graded::{good_iso, GradedVectorSpace};
    use crate::group::FiniteAbelianGroup;
    use crate::matrix::in_span;

    fn same_span(f: &Field, a: &[Matrix], b: &[Matrix]) -> bool {
        a.len() == b.len() && a.iter().all(|x| in_span(f, b, x)) && b.iter().all(|x| in_span(f, a, x))
    }

    #[test]
    fn rational_quadratic_display() {
        let q = Field::Rational;
        let e = make_quadratic(&q, &q.from_i64(2)).unwrap();
        let a = descend(&e).unwrap().change_basis(&e.descent_basis()).unwrap();
        assert!(a.grading.verify().is_pass());
        let g = e.group();
        let be = [Matrix::identity(&q, 2), Matrix::from_i64(&q, &[&[0, 1], &[2, 0]])];
        let bs = [
            Matrix::from_i64(&q, &[&[1, 0], &[0, -1]]),
            Matrix::from_i64(&q, &[&[0, 1], &[-2, 0]]),
        ];
        assert!(same_span(&q, a.grading.component(&g.identity()), &be));
        assert!(same_span(&q, a.grading.component(&g.generator(0)), &bs));
        splitting_witness(&a, &e).unwrap();
    }

    #[test]
    fn binary_quadratic_display() {
        let f = Field::prime(2).unwrap();
        let e = make_quadratic(&f, &f.one()).unwrap();
        let a = descend(&e).unwrap();
        let g = e.group();
        let be = [Matrix::identity(&f, 2), Matrix::from_i64(&f, &[&[0, 1], &[1, 1]])];
        let bs = [
            Matrix::from_i64(&f, &[&[1, 1], &[0, 1]]),
            Matrix::from_i64(&f, &[&[0, 1], &[1, 0]]),
        ];
        assert!(same_span(&f, a.grading.component(&g.identity()), &be));
        assert!(same_span(&f, a.grading.component(&g.generator(0)), &bs));
        splitting_witness(&a, &e).unwrap();
    }

    #[test]
    fn split_extension_gives_good_grading() {
        let f = Field::prime(5).unwrap();
        let h = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let e = dual_group_extension(&h, &f).unwrap();
        let a = descend(&e).unwrap();
        assert!(a.grading.verify().is_pass());
        let degrees = a.grading.good_degrees().expect("split descent is good");
        assert!(good_iso(&h, degrees.degrees(), &h.elements()).unwrap().is_some());
        splitting_witness(&a, &e).unwrap();
    }

    #[test]
    fn witnesses_for_frobenius_and_datum_route() {
        let e = frobenius_extension(2, 3).unwrap();
        let a = descend(&e).unwrap();
        assert!(a.grading.verify().is_pass());
        splitting_witness(&a, &e).unwrap();

        let w = GradedVectorSpace::new(e.group().clone(), alloc::vec![e.group().identity()]).unwrap();
        let b = super::super::datum::datum_descent(&e, &w).unwrap();
        assert!(b.grading.verify().is_pass());
        splitting_witness(&b, &e).unwrap();
    }

    #[test]
    fn datum_route_matches_displays() {
        let q = Field::Rational;
        let e = make_quadratic(&q, &q.from_i64(2)).unwrap();
        let w = GradedVectorSpace::new(e.group().clone(), alloc::vec![e.group().identity()]).unwrap();
        let by_datum = super::super::datum::datum_descent(&e, &w).unwrap();
        let by_j = descend(&e).unwrap().change_basis(&e.descent_basis()).unwrap();
        for (g, basis) in by_j.grading.components() {
            assert!(same_span(&q, basis, by_datum.grading.component(g)), "degree {g}");
        }
    }
}
