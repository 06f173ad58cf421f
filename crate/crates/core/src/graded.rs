//! Graded vector spaces, gradings on `M_m(k)` and the good gradings `END(V)`.
//!
//! A [`Grading`] stores an explicit basis for every homogeneous component, so
//! it can hold gradings whose components are not spanned by matrix units.
//! Matrix unit `e_ij` is written zero-based throughout.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::algebra::CommutativeAlgebra;
use crate::error::{internal, invalid, Result};
use crate::field::{Field, Scalar};
use crate::group::{FiniteAbelianGroup, GroupElement};
use crate::matrix::{self, Matrix, SpanTester};

/// A finite-dimensional `G`-graded space, recorded by the degrees of a
/// homogeneous basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedVectorSpace {
    group: FiniteAbelianGroup,
    degrees: Vec<GroupElement>,
}

/// Which side a suspension shifts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `V(σ)`, with `V(σ)_g = V_{gσ}`.
    Left,
    /// `(σ)V`, with `(σ)V_g = V_{σg}`.
    Right,
}

/// Output of [`GradedVectorSpace::split_off_kh`]: `V ≅ kH ⊗ W` with `I(W) = {e}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KhSplitting {
    pub inertia: Vec<GroupElement>,
    /// Lexicographically minimal element of each coset of the inertia group.
    pub representatives: Vec<GroupElement>,
    pub w: GradedVectorSpace,
}

impl GradedVectorSpace {
    pub fn new(group: FiniteAbelianGroup, degrees: Vec<GroupElement>) -> Result<Self> {
        if degrees.is_empty() {
            return Err(invalid!("a graded vector space needs dimension at least 1"));
        }
        if let Some(bad) = degrees.iter().find(|g| !group.contains(g)) {
            return Err(invalid!("degree ({bad}) is not an element of the group"));
        }
        Ok(Self { group, degrees })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn degrees(&self) -> &[GroupElement] {
        &self.degrees
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// Degrees with multiplicities.
    pub fn multiset(&self) -> BTreeMap<GroupElement, usize> {
        multiset(&self.degrees)
    }

    pub fn suspend(&self, sigma: &GroupElement, side: Side) -> Result<Self> {
        if !self.group.contains(sigma) {
            return Err(invalid!("suspension by ({sigma}) outside the group"));
        }
        // A vector of degree h sits in V(σ)_g exactly when gσ = h.
        let sigma_inv = self.group.inverse(sigma);
        let degrees = self
            .degrees
            .iter()
            .map(|g| match side {
                Side::Left => self.group.mul(g, &sigma_inv),
                Side::Right => self.group.mul(&sigma_inv, g),
            })
            .collect();
        Ok(Self {
            group: self.group.clone(),
            degrees,
        })
    }

    fn translated(&self, sigma: &GroupElement) -> Vec<GroupElement> {
        self.degrees.iter().map(|g| self.group.mul(g, sigma)).collect()
    }

    /// `I(V)`: the translations leaving the degree multiset unchanged.
    pub fn inertia_group(&self) -> Vec<GroupElement> {
        let base = self.multiset();
        self.group
            .elements()
            .into_iter()
            .filter(|s| multiset(&self.translated(s)) == base)
            .collect()
    }

    /// Splits `V ≅ kH ⊗ W` for `H = I(V)`, keeping in `W` the degrees that are
    /// coset representatives. The returned value has been checked.
    pub fn split_off_kh(&self) -> Result<KhSplitting> {
        let inertia = self.inertia_group();
        let mut representatives: Vec<GroupElement> = Vec::new();
        for g in self.group.elements() {
            let covered = representatives.iter().any(|r| inertia.contains(&self.group.div(&g, r)));
            if !covered {
                representatives.push(g);
            }
        }
        let degrees: Vec<GroupElement> = self
            .degrees
            .iter()
            .filter(|g| representatives.contains(g))
            .cloned()
            .collect();
        let w = Self::new(self.group.clone(), degrees)?;

        let mut rebuilt = Vec::with_capacity(self.dim());
        for h in &inertia {
            rebuilt.extend(w.translated(h));
        }
        if multiset(&rebuilt) != self.multiset() {
            return Err(internal!("kH ⊗ W does not reproduce the degrees of V"));
        }
        let w_inertia = w.inertia_group();
        if w_inertia.len() != 1 {
            return Err(internal!("W still has nontrivial inertia of order {}", w_inertia.len()));
        }
        Ok(KhSplitting {
            inertia,
            representatives,
            w,
        })
    }

    /// `kH ⊗ W` for a subgroup `H` listed in `h`, basis ordered `(h, w)`
    /// with `h` outer.
    pub fn tensor_with_group_algebra(h: &[GroupElement], w: &GradedVectorSpace) -> Result<Self> {
        let degrees = h
            .iter()
            .flat_map(|x| w.degrees.iter().map(move |g| w.group.mul(x, g)))
            .collect();
        Self::new(w.group.clone(), degrees)
    }
}

fn multiset(degrees: &[GroupElement]) -> BTreeMap<GroupElement, usize> {
    let mut out = BTreeMap::new();
    for g in degrees {
        *out.entry(g.clone()).or_insert(0) += 1;
    }
    out
}

/// `(π, σ)` with `h_i = g_{π(i)}·σ` for all `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodIsoWitness {
    pub permutation: Vec<usize>,
    pub translation: GroupElement,
}

/// Decides whether `END` of two degree tuples are graded-isomorphic, and if
/// so returns the permutation and translation relating them.
pub fn good_iso(group: &FiniteAbelianGroup, g: &[GroupElement], h: &[GroupElement]) -> Result<Option<GoodIsoWitness>> {
    if g.len() != h.len() {
        return Err(invalid!("tuples have lengths {} and {}", g.len(), h.len()));
    }
    if let Some(bad) = g.iter().chain(h).find(|x| !group.contains(x)) {
        return Err(invalid!("({bad}) is not an element of the group"));
    }
    let mut h_order: Vec<usize> = (0..h.len()).collect();
    h_order.sort_by(|&a, &b| h[a].cmp(&h[b]).then(a.cmp(&b)));
    for sigma in group.elements() {
        let shifted: Vec<GroupElement> = g.iter().map(|x| group.mul(x, &sigma)).collect();
        let mut g_order: Vec<usize> = (0..g.len()).collect();
        g_order.sort_by(|&a, &b| shifted[a].cmp(&shifted[b]).then(a.cmp(&b)));
        if g_order.iter().zip(&h_order).all(|(&a, &b)| shifted[a] == h[b]) {
            let mut permutation = alloc::vec![0; h.len()];
            for (&gi, &hi) in g_order.iter().zip(&h_order) {
                permutation[hi] = gi;
            }
            return Ok(Some(GoodIsoWitness {
                permutation,
                translation: sigma,
            }));
        }
    }
    Ok(None)
}

/// The grading axiom a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    DirectSum,
    Identity,
    Product,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::DirectSum => "direct-sum",
            Axiom::Identity => "identity",
            Axiom::Product => "product",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Component bases are independent but do not fill the whole algebra.
    DimensionCount { found: usize, expected: usize },
    /// Basis matrix `index` of `degree` lies in the span of the earlier ones.
    DependentMatrix { degree: GroupElement, index: usize },
    /// The identity is not in the neutral component.
    IdentityOutsideNeutral,
    /// `left · right` escapes the component of the product degree.
    ProductEscapes {
        left: (GroupElement, usize),
        right: (GroupElement, usize),
        target: GroupElement,
    },
}

impl Violation {
    pub fn axiom(&self) -> Axiom {
        match self {
            Violation::DimensionCount { .. } | Violation::DependentMatrix { .. } => Axiom::DirectSum,
            Violation::IdentityOutsideNeutral => Axiom::Identity,
            Violation::ProductEscapes { .. } => Axiom::Product,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GradingReport {
    Pass,
    Fail(Violation),
}

impl GradingReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, GradingReport::Pass)
    }

    pub fn violation(&self) -> Option<&Violation> {
        match self {
            GradingReport::Pass => None,
            GradingReport::Fail(v) => Some(v),
        }
    }
}

type Components = BTreeMap<GroupElement, Vec<Matrix>>;

/// Axiom check shared by [`Grading`] and [`ExtendedGrading`].
fn check_components(
    field: &Field,
    group: &FiniteAbelianGroup,
    size: usize,
    expected_dim: usize,
    components: &Components,
) -> GradingReport {
    let mut seen: Vec<Matrix> = Vec::new();
    let mut rank = 0;
    for (degree, basis) in components {
        for (index, b) in basis.iter().enumerate() {
            seen.push(b.clone());
            let r = matrix::span_dimension(field, &seen);
            if r == rank {
                return GradingReport::Fail(Violation::DependentMatrix {
                    degree: degree.clone(),
                    index,
                });
            }
            rank = r;
        }
    }
    if rank != expected_dim {
        return GradingReport::Fail(Violation::DimensionCount {
            found: rank,
            expected: expected_dim,
        });
    }
    let neutral = components.get(&group.identity()).map(Vec::as_slice).unwrap_or(&[]);
    if !matrix::in_span(field, neutral, &Matrix::identity(field, size)) {
        return GradingReport::Fail(Violation::IdentityOutsideNeutral);
    }
    let testers: BTreeMap<&GroupElement, SpanTester> = components
        .iter()
        .map(|(g, basis)| (g, SpanTester::new(field, basis)))
        .collect();
    let empty = SpanTester::new(field, &[]);
    for (s, bs) in components {
        for (t, bt) in components {
            let target = group.mul(s, t);
            let tester = testers.get(&target).unwrap_or(&empty);
            for (i, x) in bs.iter().enumerate() {
                for (j, y) in bt.iter().enumerate() {
                    if !tester.contains(field, &x.mul(field, y)) {
                        return GradingReport::Fail(Violation::ProductEscapes {
                            left: (s.clone(), i),
                            right: (t.clone(), j),
                            target,
                        });
                    }
                }
            }
        }
    }
    GradingReport::Pass
}

/// A `G`-grading of `M_m(k)` given by a basis of each homogeneous component.
/// Degrees with an empty component are simply absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    group: FiniteAbelianGroup,
    field: Field,
    m: usize,
    components: Components,
}

impl Grading {
    /// Checks shapes and fields only; use [`Grading::verify`] for the axioms.
    pub fn new(
        group: FiniteAbelianGroup,
        field: Field,
        m: usize,
        components: impl IntoIterator<Item = (GroupElement, Vec<Matrix>)>,
    ) -> Result<Self> {
        if m == 0 {
            return Err(invalid!("matrix size must be positive"));
        }
        let mut map = Components::new();
        for (g, basis) in components {
            if !group.contains(&g) {
                return Err(invalid!("component key ({g}) is not a group element"));
            }
            for b in &basis {
                if b.rows() != m || b.cols() != m {
                    return Err(invalid!(
                        "component ({g}) holds a {}x{} matrix, expected {m}x{m}",
                        b.rows(),
                        b.cols()
                    ));
                }
                if !b.belongs_to(&field) {
                    return Err(invalid!("component ({g}) has entries outside {field}"));
                }
            }
            if !basis.is_empty() {
                map.entry(g).or_default().extend(basis);
            }
        }
        Ok(Self {
            group,
            field,
            m,
            components: map,
        })
    }

    /// `END(V)`: degree `σ` is spanned by the `e_ij` with `g_i g_j⁻¹ = σ`.
    pub fn end_grading(v: &GradedVectorSpace, field: &Field) -> Self {
        let m = v.dim();
        let mut components = Components::new();
        for i in 0..m {
            for j in 0..m {
                let deg = v.group.div(&v.degrees[i], &v.degrees[j]);
                components.entry(deg).or_default().push(Matrix::unit(field, m, i, j));
            }
        }
        Self {
            group: v.group.clone(),
            field: field.clone(),
            m,
            components,
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.m
    }

    pub fn components(&self) -> &BTreeMap<GroupElement, Vec<Matrix>> {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> &[Matrix] {
        self.components.get(g).map(Vec::as_slice).unwrap_or(&[])
    }

    /// Component dimensions in group enumeration order (zeros included).
    pub fn component_dims(&self) -> Vec<usize> {
        self.group.elements().iter().map(|g| self.component(g).len()).collect()
    }

    pub fn verify(&self) -> GradingReport {
        check_components(&self.field, &self.group, self.m, self.m * self.m, &self.components)
    }

    /// Degree of `x` if it is a nonzero homogeneous element.
    pub fn homogeneous_degree(&self, x: &Matrix) -> Option<GroupElement> {
        if x.is_zero(&self.field) {
            return None;
        }
        self.components
            .iter()
            .find(|(_, basis)| matrix::in_span(&self.field, basis, x))
            .map(|(g, _)| g.clone())
    }

    /// Whether every matrix unit is homogeneous.
    pub fn is_good(&self) -> bool {
        self.unit_degrees().is_some()
    }

    fn unit_degrees(&self) -> Option<Vec<GroupElement>> {
        let m = self.m;
        let mut out = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                out.push(self.homogeneous_degree(&Matrix::unit(&self.field, m, i, j))?);
            }
        }
        Some(out)
    }

    /// For a good grading, degrees `g` with `deg e_ij = g_i g_j⁻¹` and `g_0 = e`.
    pub fn good_degrees(&self) -> Option<GradedVectorSpace> {
        let units = self.unit_degrees()?;
        let m = self.m;
        let degrees: Vec<GroupElement> = (0..m).map(|i| units[i * m].clone()).collect();
        let consistent = (0..m).all(|i| (0..m).all(|j| units[i * m + j] == self.group.div(&degrees[i], &degrees[j])));
        if !consistent {
            return None;
        }
        GradedVectorSpace::new(self.group.clone(), degrees).ok()
    }

    /// The same grading after the change of basis `p`: components `p⁻¹ X p`.
    pub fn change_basis(&self, p: &Matrix) -> Result<Self> {
        let f = &self.field;
        if p.rows() != self.m || p.cols() != self.m {
            return Err(invalid!("change of basis must be {0}x{0}", self.m));
        }
        let inv = p
            .inverse(f)
            .ok_or_else(|| invalid!("change-of-basis matrix is singular"))?;
        let components = self
            .components
            .iter()
            .map(|(g, basis)| (g.clone(), basis.iter().map(|x| inv.mul(f, &x.mul(f, p))).collect()))
            .collect();
        Ok(Self {
            group: self.group.clone(),
            field: self.field.clone(),
            m: self.m,
            components,
        })
    }

    /// Reinterprets the grading over `l`, realizing `M_m(l)` as `(m·d)×(m·d)`
    /// block matrices over `k` with `l` acting through its regular representation.
    pub fn base_extend(&self, l: &CommutativeAlgebra) -> Result<ExtendedGrading> {
        if l.field() != &self.field {
            return Err(invalid!("extension is over {}, grading over {}", l.field(), self.field));
        }
        let f = &self.field;
        let scalars: Vec<Matrix> = (0..l.dim()).map(|t| l.left_mul_matrix(&l.basis(t))).collect();
        let components = self
            .components
            .iter()
            .map(|(g, basis)| {
                let ext = basis
                    .iter()
                    .flat_map(|b| scalars.iter().map(move |s| b.kron(f, s)))
                    .collect();
                (g.clone(), ext)
            })
            .collect();
        Ok(ExtendedGrading {
            group: self.group.clone(),
            algebra: l.clone(),
            m: self.m,
            components,
        })
    }

    /// Graded Skolem–Noether: given the images `γ(e_ij)` (row-major in
    /// `(i, j)`) of a degree-preserving automorphism of a good grading, finds
    /// a homogeneous invertible `x` with `x·γ(a) = a·x` for all `a`.
    ///
    /// The returned matrix is the first kernel vector of the component
    /// system that has one, scaled so its first nonzero entry is 1.
    pub fn homogeneous_conjugator(&self, images: &[Matrix]) -> Result<Conjugator> {
        let f = &self.field;
        let m = self.m;
        if !self.is_good() {
            return Err(invalid!("homogeneous_conjugator needs a good grading"));
        }
        if images.len() != m * m {
            return Err(invalid!(
                "expected {} images of matrix units, got {}",
                m * m,
                images.len()
            ));
        }
        if images
            .iter()
            .any(|x| x.rows() != m || x.cols() != m || !x.belongs_to(f))
        {
            return Err(invalid!("images must be {m}x{m} matrices over {f}"));
        }
        let img = |i: usize, j: usize| &images[i * m + j];
        let zero = Matrix::zero(f, m, m);
        for i in 0..m {
            for j in 0..m {
                for r in 0..m {
                    for s in 0..m {
                        let expected = if j == r { img(i, s) } else { &zero };
                        if &img(i, j).mul(f, img(r, s)) != expected {
                            return Err(invalid!("γ is not multiplicative on e_{i}{j}·e_{r}{s}"));
                        }
                    }
                }
            }
        }
        let sum = (0..m).fold(zero.clone(), |acc, i| acc.add(f, img(i, i)));
        if sum != Matrix::identity(f, m) {
            return Err(invalid!("γ is not unital"));
        }
        if matrix::span_dimension(f, images) != m * m {
            return Err(invalid!("γ is not bijective"));
        }
        let apply = |a: &Matrix| -> Matrix {
            let coeffs: Vec<Scalar> = a.entries().to_vec();
            Matrix::combination(f, &coeffs, images)
        };
        for (g, basis) in &self.components {
            let tester = SpanTester::new(f, basis);
            if let Some(b) = basis.iter().find(|b| !tester.contains(f, &apply(b))) {
                return Err(invalid!("γ moves {b} out of degree ({g})"));
            }
        }

        for (degree, basis) in &self.components {
            // x = Σ c_t B_t; equations B_t γ(e_ij) - e_ij B_t over all (i, j).
            let columns: Vec<Vec<Scalar>> = basis
                .iter()
                .map(|b| {
                    let mut col = Vec::with_capacity(m * m * m * m);
                    for i in 0..m {
                        for j in 0..m {
                            let e = Matrix::unit(f, m, i, j);
                            let d = b.mul(f, img(i, j)).sub(f, &e.mul(f, b));
                            col.extend_from_slice(d.entries());
                        }
                    }
                    col
                })
                .collect();
            let system = Matrix::from_fn(m * m * m * m, basis.len(), |r, c| columns[c][r].clone());
            let kernel = system.kernel(f);
            let Some(coeffs) = kernel.first() else { continue };
            let x = Matrix::combination(f, coeffs, basis).normalized(f);
            if x.inverse(f).is_none() {
                return Err(internal!("homogeneous solution of degree ({degree}) is singular"));
            }
            return Ok(Conjugator {
                matrix: x,
                degree: degree.clone(),
            });
        }
        Err(internal!(
            "no homogeneous conjugator exists for a degree-preserving automorphism"
        ))
    }
}

/// Output of [`Grading::homogeneous_conjugator`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Conjugator {
    pub matrix: Matrix,
    pub degree: GroupElement,
}

/// Images `y⁻¹ e_ij y` of the matrix units under conjugation by `y`, in the
/// layout [`Grading::homogeneous_conjugator`] expects.
pub fn conjugation_images(field: &Field, y: &Matrix) -> Result<Vec<Matrix>> {
    let inv = y
        .inverse(field)
        .ok_or_else(|| invalid!("conjugating matrix is singular"))?;
    let m = y.rows();
    let mut out = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            out.push(inv.mul(field, &Matrix::unit(field, m, i, j)).mul(field, y));
        }
    }
    Ok(out)
}

/// A grading extended to `l ⊗ M_m(k) = M_m(l)`, stored as `k`-bases of
/// `(m·d)×(m·d)` block matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedGrading {
    group: FiniteAbelianGroup,
    algebra: CommutativeAlgebra,
    m: usize,
    components: Components,
}

impl ExtendedGrading {
    pub fn algebra(&self) -> &CommutativeAlgebra {
        &self.algebra
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// Side length of the block matrices over `k`.
    pub fn block_size(&self) -> usize {
        self.m * self.algebra.dim()
    }

    pub fn components(&self) -> &BTreeMap<GroupElement, Vec<Matrix>> {
        &self.components
    }

    pub fn component(&self, g: &GroupElement) -> &[Matrix] {
        self.components.get(g).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn verify(&self) -> GradingReport {
        let d = self.algebra.dim();
        check_components(
            self.algebra.field(),
            &self.group,
            self.m * d,
            self.m * self.m * d,
            &self.components,
        )
    }

    /// Whether `x` lies in the extended component of degree `g`.
    pub fn contains(&self, g: &GroupElement, x: &Matrix) -> bool {
        matrix::in_span(self.algebra.field(), self.component(g), x)
    }
}
