use alloc::vec::Vec;

use crate::error::{internal, invalid, Result};
use crate::field::Scalar;
use crate::graded::{GradedVectorSpace, Grading};
use crate::group::GroupElement;
use crate::matrix::Matrix;

use super::extension::GaloisExtension;
use super::split::Descended;

/// A descent datum on `l ⊗ k^r`: one `σ`-semilinear automorphism per `σ ∈ H`.
///
/// Coordinates of `l ⊗ k^r` are indexed `i·d + a`, with `i` the position in
/// `k^r` and `a` the coefficient on the `l`-basis element `b_a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DescentDatum {
    ext: GaloisExtension,
    rank: usize,
    /// Indexed by group enumeration index.
    maps: Vec<Matrix>,
    /// `ψ(σ)` when the datum has the form `φ(σ) = ψ(σ) ⊗ σ`.
    linear: Option<Vec<Matrix>>,
}

impl DescentDatum {
    /// Checks semilinearity and the homomorphism property.
    pub fn new(
        ext: &GaloisExtension,
        rank: usize,
        maps: impl IntoIterator<Item = (GroupElement, Matrix)>,
    ) -> Result<Self> {
        let group = ext.group();
        let n = ext.dim() * rank;
        let mut slots: Vec<Option<Matrix>> = alloc::vec![None; group.order() as usize];
        for (g, m) in maps {
            if !group.contains(&g) {
                return Err(invalid!("datum given for ({g}), which is not in H"));
            }
            if m.rows() != n || m.cols() != n || !m.belongs_to(ext.field()) {
                return Err(invalid!("datum map of ({g}) must be {n}x{n} over {}", ext.field()));
            }
            slots[group.index_of(&g)] = Some(m);
        }
        let maps = group
            .elements()
            .iter()
            .zip(slots)
            .map(|(g, m)| m.ok_or_else(|| invalid!("datum map of ({g}) is missing")))
            .collect::<Result<Vec<_>>>()?;
        let datum = Self {
            ext: ext.clone(),
            rank,
            maps,
            linear: None,
        };
        datum.validate()?;
        Ok(datum)
    }

    /// `φ(σ) = ψ(σ) ⊗ σ` for `k`-matrices `ψ(σ)` of size `rank`.
    pub fn from_linear(ext: &GaloisExtension, psi: impl IntoIterator<Item = (GroupElement, Matrix)>) -> Result<Self> {
        let f = ext.field();
        let psi: Vec<(GroupElement, Matrix)> = psi.into_iter().collect();
        let rank = psi
            .first()
            .map(|(_, m)| m.rows())
            .ok_or_else(|| invalid!("empty datum"))?;
        if psi.iter().any(|(_, m)| m.rows() != rank || m.cols() != rank) {
            return Err(invalid!("linear parts must all be {rank}x{rank}"));
        }
        let maps = psi.iter().map(|(g, m)| (g.clone(), m.kron(f, ext.action(g))));
        let mut datum = Self::new(ext, rank, maps)?;
        let group = ext.group();
        let mut linear = alloc::vec![Matrix::zero(f, rank, rank); group.order() as usize];
        for (g, m) in psi {
            linear[group.index_of(&g)] = m;
        }
        datum.linear = Some(linear);
        Ok(datum)
    }

    /// The shift datum on `V = kH ⊗ W`: `φ(σ)` translates the `kH` factor by
    /// `σ` and acts by `σ` on `l`. Returns the datum and `V`, whose basis
    /// `(h, w)` has index `h·dim W + w` and degree `h·w`.
    pub fn shift(ext: &GaloisExtension, w: &GradedVectorSpace) -> Result<(Self, GradedVectorSpace)> {
        let group = ext.group();
        if w.group() != group {
            return Err(invalid!("W must be graded by the Galois group H"));
        }
        if w.inertia_group().len() != 1 {
            return Err(invalid!("W must have trivial inertia group"));
        }
        let f = ext.field();
        let elements = group.elements();
        let v = GradedVectorSpace::tensor_with_group_algebra(&elements, w)?;
        let dw = w.dim();
        let r = v.dim();
        let psi = elements.iter().map(|sigma| {
            let mut m = Matrix::zero(f, r, r);
            for (h_idx, h) in elements.iter().enumerate() {
                let target = group.index_of(&group.mul(h, sigma));
                for w_idx in 0..dw {
                    m[(target * dw + w_idx, h_idx * dw + w_idx)] = f.one();
                }
            }
            (sigma.clone(), m)
        });
        let datum = Self::from_linear(ext, psi)?;
        for i in 0..group.rank() {
            let g = group.generator(i);
            let phi = datum.map(&g);
            let power = (1..group.element_order(&g)).fold(phi.clone(), |acc, _| acc.mul(f, phi));
            if power != Matrix::identity(f, r * ext.dim()) {
                return Err(internal!("shift datum does not have order dividing ord({g})"));
            }
        }
        Ok((datum, v))
    }

    fn validate(&self) -> Result<()> {
        let ext = &self.ext;
        let f = ext.field();
        let group = ext.group();
        let l = ext.algebra();
        let ir = Matrix::identity(f, self.rank);
        let elements = group.elements();
        for (sigma, phi) in elements.iter().zip(&self.maps) {
            for t in 0..ext.dim() {
                let b = l.basis(t);
                let scalar = ir.kron(f, &l.left_mul_matrix(&b));
                let twisted = ir.kron(f, &l.left_mul_matrix(&ext.apply(sigma, &b)));
                if phi.mul(f, &scalar) != twisted.mul(f, phi) {
                    return Err(invalid!("datum map of ({sigma}) is not σ-semilinear on b_{t}"));
                }
            }
        }
        if self.maps[0] != Matrix::identity(f, self.rank * ext.dim()) {
            return Err(invalid!("datum map of the identity is not the identity"));
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let ab = group.index_of(&group.mul(a, b));
                if self.maps[ab] != self.maps[i].mul(f, &self.maps[j]) {
                    return Err(invalid!("datum is not a homomorphism on ({a}), ({b})"));
                }
            }
        }
        Ok(())
    }

    pub fn extension(&self) -> &GaloisExtension {
        &self.ext
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn map(&self, sigma: &GroupElement) -> &Matrix {
        &self.maps[self.ext.group().index_of(sigma)]
    }

    pub fn linear_part(&self, sigma: &GroupElement) -> Option<&Matrix> {
        self.linear.as_ref().map(|l| &l[self.ext.group().index_of(sigma)])
    }

    /// A `k`-basis of the fixed vectors. Its size equals the rank.
    pub fn fixed_points(&self) -> Result<Vec<Vec<Scalar>>> {
        let f = self.ext.field();
        let n = self.rank * self.ext.dim();
        let id = Matrix::identity(f, n);
        let rows: Vec<Vec<Scalar>> = self.maps.iter().flat_map(|m| m.sub(f, &id).to_rows()).collect();
        let basis = Matrix::from_rows(rows)?.kernel(f);
        if basis.len() != self.rank {
            return Err(internal!(
                "fixed space has dimension {} over k, expected {}",
                basis.len(),
                self.rank
            ));
        }
        Ok(basis)
    }

    pub fn is_fixed(&self, v: &[Scalar]) -> bool {
        let f = self.ext.field();
        self.maps.iter().all(|m| m.mul_vec(f, v) == v)
    }
}

/// Fixed basis `Σ_σ σ(p_c) ⊗ (σ, w)` of the shift datum, for `p_c` the
/// columns of `p` and `w` the basis of `W`. Index `w·d + c`.
pub fn shift_fixed_basis(datum: &DescentDatum, w: &GradedVectorSpace, p: &Matrix) -> Result<Vec<Vec<Scalar>>> {
    let ext = datum.extension();
    let f = ext.field();
    let d = ext.dim();
    let group = ext.group();
    let dw = w.dim();
    let n = datum.rank() * d;
    if p.rows() != d || p.cols() != d || p.inverse(f).is_none() {
        return Err(invalid!("l-basis change must be an invertible {d}x{d} matrix"));
    }
    let mut out = Vec::with_capacity(dw * d);
    for w_idx in 0..dw {
        for c in 0..d {
            let pc = p.col(c);
            let mut v = alloc::vec![f.zero(); n];
            for (s, sigma) in group.elements().iter().enumerate() {
                let image = ext.apply(sigma, &pc);
                let base = (s * dw + w_idx) * d;
                v[base..base + d].clone_from_slice(&image);
            }
            if !datum.is_fixed(&v) {
                return Err(internal!("shift basis vector ({w_idx}, {c}) is not fixed"));
            }
            out.push(v);
        }
    }
    Ok(out)
}

/// Descends `l ⊗ END(V)` along `datum` to `End_k(Ṽ)` with `Ṽ` spanned by `fixed`.
///
/// The transport of the result maps `l ⊗ Ṽ` onto `l ⊗ V`.
pub fn descend_with_datum(datum: &DescentDatum, v: &GradedVectorSpace, fixed: &[Vec<Scalar>]) -> Result<Descended> {
    let ext = datum.extension();
    let f = ext.field();
    let l = ext.algebra();
    let group = ext.group();
    let d = ext.dim();
    let r = v.dim();
    if datum.rank() != r || fixed.len() != r {
        return Err(invalid!("datum rank, dim V and fixed basis size must agree"));
    }
    if v.group() != group {
        return Err(invalid!("V must be graded by the Galois group H"));
    }
    let n = r * d;
    let fixed_cols = Matrix::from_fn(n, r, |row, c| fixed[c][row].clone());
    if fixed_cols.rank(f) != r || fixed.iter().any(|x| !datum.is_fixed(x)) {
        return Err(invalid!("fixed basis must be {r} independent fixed vectors"));
    }
    let scalars: Vec<Matrix> = (0..d).map(|t| l.left_mul_matrix(&l.basis(t))).collect();
    let generators: Vec<&Matrix> = (0..group.rank()).map(|i| datum.map(&group.generator(i))).collect();

    let mut components: Vec<(GroupElement, Vec<Matrix>)> = Vec::new();
    for tau in group.elements() {
        let mut params: Vec<Matrix> = Vec::new();
        for i in 0..r {
            for j in 0..r {
                if group.div(&v.degrees()[i], &v.degrees()[j]) == tau {
                    let unit = Matrix::unit(f, r, i, j);
                    params.extend(scalars.iter().map(|s| unit.kron(f, s)));
                }
            }
        }
        if params.is_empty() {
            continue;
        }
        // X commutes with every φ(σ) exactly when it descends
        let columns: Vec<Vec<Scalar>> = params
            .iter()
            .map(|x| {
                generators
                    .iter()
                    .flat_map(|phi| x.mul(f, phi).sub(f, &phi.mul(f, x)).entries().to_vec())
                    .collect()
            })
            .collect();
        let system = Matrix::from_fn(columns[0].len(), params.len(), |row, c| columns[c][row].clone());
        let mut basis = Vec::new();
        for coeffs in system.kernel(f) {
            let x = Matrix::combination(f, &coeffs, &params);
            let image = x.mul(f, &fixed_cols);
            let cols: Vec<Vec<Scalar>> = (0..r)
                .map(|c| {
                    fixed_cols
                        .solve(f, &image.col(c))
                        .ok_or_else(|| internal!("descended operator does not preserve the fixed space"))
                })
                .collect::<Result<_>>()?;
            basis.push(Matrix::from_fn(r, r, |row, c| cols[c][row].clone()));
        }
        components.push((tau, basis));
    }
    let grading = Grading::new(group.clone(), f.clone(), r, components)?;

    let ir = Matrix::identity(f, r);
    let mut transport = Matrix::zero(f, n, n);
    for (s, vec) in fixed.iter().enumerate() {
        for (a, scalar) in scalars.iter().enumerate() {
            let col = ir.kron(f, scalar).mul_vec(f, vec);
            for (row, x) in col.into_iter().enumerate() {
                transport[(row, s * d + a)] = x;
            }
        }
    }
    Descended::new(grading, transport, v.degrees().to_vec())
}

/// The datum-route descent of `END(kH ⊗ W)` along the shift datum, shown in
/// the basis built from [`GaloisExtension::descent_basis`].
pub fn datum_descent(ext: &GaloisExtension, w: &GradedVectorSpace) -> Result<Descended> {
    ext.require_galois()?;
    let (datum, v) = DescentDatum::shift(ext, w)?;
    let fixed = shift_fixed_basis(&datum, w, &ext.descent_basis())?;
    descend_with_datum(&datum, &v, &fixed)
}

pub fn datum_grading(ext: &GaloisExtension, w: &GradedVectorSpace) -> Result<Grading> {
    Ok(datum_descent(ext, w)?.grading)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descent::extension::{frobenius_extension, make_quadratic};
    use crate::field::Field;
    use crate::group::FiniteAbelianGroup;

    #[test]
    fn frobenius_fixed_points_are_k() {
        let e = frobenius_extension(2, 2).unwrap();
        let f = e.field().clone();
        let h = e.group().clone();
        let datum =
            DescentDatum::from_linear(&e, h.elements().into_iter().map(|g| (g, Matrix::identity(&f, 1)))).unwrap();
        let fixed = datum.fixed_points().unwrap();
        assert_eq!(fixed, alloc::vec![alloc::vec![f.one(), f.zero()]]);
    }

    #[test]
    fn rational_quadratic_fixed_points() {
        let q = Field::Rational;
        let e = make_quadratic(&q, &q.from_i64(2)).unwrap();
        let c2 = e.group().clone();
        let w = GradedVectorSpace::new(c2.clone(), alloc::vec![c2.identity()]).unwrap();
        let (datum, v) = DescentDatum::shift(&e, &w).unwrap();
        assert_eq!(v.degrees(), &[c2.identity(), c2.generator(0)]);
        let fixed = datum.fixed_points().unwrap();
        assert_eq!(fixed.len(), 2);
        let nice = shift_fixed_basis(&datum, &w, &e.descent_basis()).unwrap();
        // u = e + σ
        assert_eq!(nice[0], [1, 0, 1, 0].iter().map(|&x| q.from_i64(x)).collect::<Vec<_>>());
        // v = (x/2) e - (x/2) σ
        let half = q.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(nice[1], alloc::vec![q.zero(), half.clone(), q.zero(), q.neg(&half)]);
    }

    #[test]
    fn rejects_non_semilinear_map() {
        let q = Field::Rational;
        let e = make_quadratic(&q, &q.from_i64(3)).unwrap();
        let c2 = e.group().clone();
        // identity on l ⊗ k for σ is linear, not semilinear
        let err = DescentDatum::new(
            &e,
            1,
            [
                (c2.identity(), Matrix::identity(&q, 2)),
                (c2.generator(0), Matrix::identity(&q, 2)),
            ],
        );
        assert!(err.is_err());
    }

    #[test]
    fn shift_requires_trivial_inertia() {
        let f = Field::prime(3).unwrap();
        let e = make_quadratic(&f, &f.from_i64(2)).unwrap();
        let c2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let w = GradedVectorSpace::new(c2.clone(), alloc::vec![c2.identity(), c2.generator(0)]).unwrap();
        assert!(DescentDatum::shift(&e, &w).is_err());
    }
}
