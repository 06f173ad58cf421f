use alloc::vec::Vec;

use crate::algebra::CommutativeAlgebra;
use crate::error::{internal, invalid, Error, Result};
use crate::field::{Field, Scalar};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::Matrix;
use crate::poly;

/// Bound on `|H|` and on `dim_k l`; every validation is exhaustive over basis tuples.
pub const MAX_EXTENSION_SIZE: usize = 16;

/// How an extension was built. Only affects [`GaloisExtension::descent_basis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Construction {
    Split,
    Quadratic { alpha: Scalar },
    Frobenius { p: u64, degree: u32 },
    Custom,
}

/// A commutative `k`-algebra `l` with an action of a finite abelian group `H`
/// by algebra automorphisms. Being Galois is a separate check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisExtension {
    algebra: CommutativeAlgebra,
    group: FiniteAbelianGroup,
    /// Indexed by the enumeration index of the group element.
    action: Vec<Matrix>,
    construction: Construction,
}

/// Outcome of [`GaloisExtension::is_galois`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisReport {
    pub fixed_dimension: usize,
    /// Rank of the `(d·|H|) × d²` matrix of `j`.
    pub j_rank: usize,
    pub j_rows: usize,
    pub j_cols: usize,
}

impl GaloisReport {
    pub fn fixed_ok(&self) -> bool {
        self.fixed_dimension == 1
    }

    pub fn j_bijective(&self) -> bool {
        self.j_rows == self.j_cols && self.j_rank == self.j_rows
    }

    pub fn is_galois(&self) -> bool {
        self.fixed_ok() && self.j_bijective()
    }
}

impl GaloisExtension {
    /// `action` must list every group element exactly once.
    pub fn new(
        algebra: CommutativeAlgebra,
        group: FiniteAbelianGroup,
        action: impl IntoIterator<Item = (GroupElement, Matrix)>,
    ) -> Result<Self> {
        Self::build(algebra, group, action, Construction::Custom)
    }

    fn build(
        algebra: CommutativeAlgebra,
        group: FiniteAbelianGroup,
        action: impl IntoIterator<Item = (GroupElement, Matrix)>,
        construction: Construction,
    ) -> Result<Self> {
        let d = algebra.dim();
        let order = group.order() as usize;
        if d > MAX_EXTENSION_SIZE || order > MAX_EXTENSION_SIZE {
            return Err(Error::ResourceLimit {
                what: "extension size (dim l, |H|)",
                needed: alloc::format!("({d}, {order})"),
                bound: MAX_EXTENSION_SIZE as u64,
            });
        }
        let mut slots: Vec<Option<Matrix>> = alloc::vec![None; order];
        for (g, m) in action {
            if !group.contains(&g) {
                return Err(invalid!("action given for ({g}), which is not in the group"));
            }
            let slot = &mut slots[group.index_of(&g)];
            if slot.is_some() {
                return Err(invalid!("action of ({g}) given twice"));
            }
            *slot = Some(m);
        }
        let elements = group.elements();
        let mut action = Vec::with_capacity(order);
        for (g, slot) in elements.iter().zip(slots) {
            let m = slot.ok_or_else(|| invalid!("action of ({g}) is missing"))?;
            if !m.belongs_to(algebra.field()) || !algebra.is_algebra_map(&m) || m.inverse(algebra.field()).is_none() {
                return Err(invalid!("action of ({g}) is not an algebra automorphism of l"));
            }
            action.push(m);
        }
        let f = algebra.field();
        if action[0] != Matrix::identity(f, d) {
            return Err(invalid!("the identity of H must act trivially"));
        }
        for (i, a) in elements.iter().enumerate() {
            for (j, b) in elements.iter().enumerate() {
                let ab = group.index_of(&group.mul(a, b));
                if action[ab] != action[i].mul(f, &action[j]) {
                    return Err(invalid!("action is not a homomorphism on ({a}), ({b})"));
                }
            }
        }
        Ok(Self {
            algebra,
            group,
            action,
            construction,
        })
    }

    pub fn algebra(&self) -> &CommutativeAlgebra {
        &self.algebra
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn construction(&self) -> &Construction {
        &self.construction
    }

    /// Matrix of `σ` on `l`, columns are images of basis vectors.
    pub fn action(&self, sigma: &GroupElement) -> &Matrix {
        &self.action[self.group.index_of(sigma)]
    }

    /// Pairs `(σ, matrix)` in group enumeration order.
    pub fn actions(&self) -> impl Iterator<Item = (GroupElement, &Matrix)> {
        self.group.elements().into_iter().zip(self.action.iter())
    }

    pub fn apply(&self, sigma: &GroupElement, a: &[Scalar]) -> Vec<Scalar> {
        self.action(sigma).mul_vec(self.field(), a)
    }

    /// Dimension of `l^H`.
    pub fn fixed_dimension(&self) -> usize {
        let f = self.field();
        let d = self.dim();
        let stacked: Vec<Vec<Scalar>> = self
            .action
            .iter()
            .flat_map(|m| m.sub(f, &Matrix::identity(f, d)).to_rows())
            .collect();
        match Matrix::from_rows(stacked) {
            Ok(m) => m.kernel(f).len(),
            Err(_) => d,
        }
    }

    /// `j(b_i u_σ)`: the operator `b ↦ b_i σ(b)` on `l`.
    pub fn j_operator(&self, i: usize, sigma: &GroupElement) -> Matrix {
        let f = self.field();
        self.algebra
            .left_mul_matrix(&self.algebra.basis(i))
            .mul(f, self.action(sigma))
    }

    /// Row `h·d + i` is `j(b_i u_h)` flattened row-major, `h` in group order.
    pub fn j_matrix(&self) -> Matrix {
        let rows: Vec<Vec<Scalar>> = self
            .group
            .elements()
            .iter()
            .flat_map(|h| (0..self.dim()).map(move |i| (i, h.clone())))
            .map(|(i, h)| self.j_operator(i, &h).entries().to_vec())
            .collect();
        Matrix::from_rows(rows).expect("j rows share a length")
    }

    pub fn is_galois(&self) -> GaloisReport {
        let j = self.j_matrix();
        GaloisReport {
            fixed_dimension: self.fixed_dimension(),
            j_rank: j.rank(self.field()),
            j_rows: j.rows(),
            j_cols: j.cols(),
        }
    }

    pub(crate) fn require_galois(&self) -> Result<()> {
        let report = self.is_galois();
        if report.is_galois() {
            Ok(())
        } else {
            Err(invalid!(
                "extension is not Galois (dim l^H = {}, rank j = {} of {}x{})",
                report.fixed_dimension,
                report.j_rank,
                report.j_rows,
                report.j_cols
            ))
        }
    }

    /// Columns are the `l`-basis in which descended gradings are displayed:
    /// `{1, x/α}` for `k[X]/(X² - α)`, the algebra basis otherwise.
    pub fn descent_basis(&self) -> Matrix {
        let f = self.field();
        let d = self.dim();
        let mut p = Matrix::identity(f, d);
        if let Construction::Quadratic { alpha } = &self.construction {
            if f.characteristic() != 2 {
                p[(1, 1)] = f.inv(alpha).expect("alpha is nonzero");
            }
        }
        p
    }
}

/// `Hk = ⊕ k·v_γ` with componentwise product and `δ·v_γ = v_{γδ⁻¹}`.
pub fn dual_group_extension(group: &FiniteAbelianGroup, field: &Field) -> Result<GaloisExtension> {
    let n = group.order() as usize;
    if n > MAX_EXTENSION_SIZE {
        return Err(Error::ResourceLimit {
            what: "group order",
            needed: alloc::format!("{n}"),
            bound: MAX_EXTENSION_SIZE as u64,
        });
    }
    let algebra = CommutativeAlgebra::split(field.clone(), n)?;
    let elements = group.elements();
    let action = elements.iter().map(|delta| {
        let delta_inv = group.inverse(delta);
        let mut m = Matrix::zero(field, n, n);
        for (c, gamma) in elements.iter().enumerate() {
            m[(group.index_of(&group.mul(gamma, &delta_inv)), c)] = field.one();
        }
        (delta.clone(), m)
    });
    GaloisExtension::build(algebra, group.clone(), action, Construction::Split)
}

/// `k[X]/(X² - α)` with `σ(x) = -x`, or `k[X]/(X² - X - α)` with
/// `σ(x) = x + 1` in characteristic 2.
pub fn make_quadratic(field: &Field, alpha: &Scalar) -> Result<GaloisExtension> {
    if !field.contains(alpha) {
        return Err(invalid!("α = {alpha} is not an element of {field}"));
    }
    let (zero, one) = (field.zero(), field.one());
    let (algebra, sigma) = if field.characteristic() == 2 {
        let monic = [field.neg(alpha), field.neg(&one), one.clone()];
        let sigma = Matrix::from_rows(alloc::vec![
            alloc::vec![one.clone(), one.clone()],
            alloc::vec![zero.clone(), one.clone()]
        ])?;
        (CommutativeAlgebra::monogenic(field.clone(), &monic)?, sigma)
    } else {
        if field.is_zero(alpha) {
            return Err(invalid!("α must be nonzero: X² has a nilpotent and is not Galois"));
        }
        let monic = [field.neg(alpha), zero.clone(), one.clone()];
        let sigma = Matrix::from_rows(alloc::vec![
            alloc::vec![one.clone(), zero.clone()],
            alloc::vec![zero, field.neg(&one)]
        ])?;
        (CommutativeAlgebra::monogenic(field.clone(), &monic)?, sigma)
    };
    let group = FiniteAbelianGroup::cyclic(2)?;
    let d = algebra.dim();
    let action = [
        (group.identity(), Matrix::identity(field, d)),
        (group.generator(0), sigma),
    ];
    GaloisExtension::build(algebra, group, action, Construction::Quadratic { alpha: alpha.clone() })
}

/// `GF(p^d) = GF(p)[X]/(f)` over `GF(p)` with `H = C_d` generated by Frobenius.
/// `f` is the first monic irreducible in code order.
pub fn frobenius_extension(p: u64, d: u32) -> Result<GaloisExtension> {
    if !poly::is_prime(p) {
        return Err(invalid!("{p} is not prime"));
    }
    if d < 2 {
        return Err(invalid!("extension degree must be at least 2"));
    }
    let order = p.checked_pow(d).filter(|&q| q <= crate::field::MAX_FIELD_ORDER);
    if order.is_none() {
        return Err(Error::ResourceLimit {
            what: "extension field order p^d",
            needed: alloc::format!("{p}^{d}"),
            bound: crate::field::MAX_FIELD_ORDER,
        });
    }
    let field = Field::prime(p)?;
    let f =
        poly::first_irreducible(p, d as usize).ok_or_else(|| internal!("no irreducible of degree {d} over GF({p})"))?;
    let monic: Vec<Scalar> = f.iter().map(|&c| field.from_i64(c as i64)).collect();
    let algebra = CommutativeAlgebra::monogenic(field.clone(), &monic)?;
    let dim = d as usize;
    let cols: Vec<Vec<Scalar>> = (0..dim).map(|j| algebra.pow(&algebra.basis(j), p)).collect();
    let frob = Matrix::from_fn(dim, dim, |r, c| cols[c][r].clone());
    let group = FiniteAbelianGroup::cyclic(d as u64)?;
    let mut power = Matrix::identity(&field, dim);
    let mut action = Vec::with_capacity(dim);
    for g in group.elements() {
        action.push((g, power.clone()));
        power = power.mul(&field, &frob);
    }
    GaloisExtension::build(algebra, group, action, Construction::Frobenius { p, degree: d })
}
