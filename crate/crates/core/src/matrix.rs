//! Dense matrices over a [`Field`] and exact Gaussian elimination.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{invalid, Error, Result};
use crate::field::{Field, Scalar};

/// Row-major dense matrix. Entries all belong to one field, which is passed
/// to every arithmetic operation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for r in 0..self.rows {
            if r > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for c in 0..self.cols {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl core::ops::Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        &self.data[r * self.cols + c]
    }
}

impl core::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Scalar {
        &mut self.data[r * self.cols + c]
    }
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if r == 0 || c == 0 {
            return Err(invalid!("matrix must have at least one row and column"));
        }
        if rows.iter().any(|row| row.len() != c) {
            return Err(invalid!("ragged matrix rows"));
        }
        Ok(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_flat(rows: usize, cols: usize, data: Vec<Scalar>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count mismatch");
        Self { rows, cols, data }
    }

    /// Convenience constructor from small integers.
    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows[0].len();
        let data = rows
            .iter()
            .flat_map(|row| {
                assert_eq!(row.len(), c, "ragged matrix rows");
                row.iter().map(|&x| field.from_i64(x))
            })
            .collect();
        Self { rows: r, cols: c, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: alloc::vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::from_fn(n, n, |r, c| if r == c { field.one() } else { field.zero() })
    }

    /// Matrix unit `e_ij` (zero-based indices).
    pub fn unit(field: &Field, n: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        m[(i, j)] = field.one();
        m
    }

    /// Column vector.
    pub fn column(entries: Vec<Scalar>) -> Self {
        let n = entries.len();
        Self::from_flat(n, 1, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn belongs_to(&self, field: &Field) -> bool {
        self.data.iter().all(|x| field.contains(x))
    }

    pub fn is_zero(&self, field: &Field) -> bool {
        self.data.iter().all(|x| field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn add(&self, field: &Field, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.add(a, b))
                .collect(),
        }
    }

    pub fn sub(&self, field: &Field, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape mismatch");
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| field.sub(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, field: &Field, s: &Scalar) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| field.mul(a, s)).collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zero(field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if field.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let b = &other[(k, c)];
                    if field.is_zero(b) {
                        continue;
                    }
                    let t = field.mul(a, b);
                    out[(r, c)] = field.add(&out[(r, c)], &t);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, field: &Field, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch in matrix-vector product");
        (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(field.zero(), |acc, (a, b)| field.add(&acc, &field.mul(a, b)))
            })
            .collect()
    }

    /// Kronecker product: block `(r, c)` is `self[r][c] * other`.
    pub fn kron(&self, field: &Field, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            field.mul(
                &self[(r / other.rows, c / other.cols)],
                &other[(r % other.rows, c % other.cols)],
            )
        })
    }

    /// Linear combination `Σ coeffs_i · mats_i`.
    pub fn combination(field: &Field, coeffs: &[Scalar], mats: &[Matrix]) -> Self {
        assert_eq!(coeffs.len(), mats.len());
        let first = mats.first().expect("empty combination");
        let mut acc = Self::zero(field, first.rows, first.cols);
        for (c, m) in coeffs.iter().zip(mats) {
            if !field.is_zero(c) {
                acc = acc.add(field, &m.scale(field, c));
            }
        }
        acc
    }

    /// Index and value of the first nonzero entry in row-major order.
    pub fn first_nonzero(&self, field: &Field) -> Option<(usize, &Scalar)> {
        self.data.iter().enumerate().find(|(_, x)| !field.is_zero(x))
    }

    /// Scales so the first nonzero entry (row-major) is 1.
    pub fn normalized(&self, field: &Field) -> Self {
        match self.first_nonzero(field) {
            Some((_, lead)) => {
                let inv = field.inv(lead).expect("nonzero lead");
                self.scale(field, &inv)
            }
            None => self.clone(),
        }
    }

    pub fn rank(&self, field: &Field) -> usize {
        rref(field, self).1.len()
    }

    pub fn inverse(&self, field: &Field) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, |r, c| {
            if c < n {
                self[(r, c)].clone()
            } else if c - n == r {
                field.one()
            } else {
                field.zero()
            }
        });
        let (red, pivots) = rref(field, &aug);
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        Some(Self::from_fn(n, n, |r, c| red[(r, c + n)].clone()))
    }

    /// Basis of `{x : A x = 0}`, one vector per free column in increasing
    /// order; each has a 1 at its own free column and 0 at the other free columns.
    pub fn kernel(&self, field: &Field) -> Vec<Vec<Scalar>> {
        let (red, pivots) = rref(field, self);
        let mut is_pivot = alloc::vec![None; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            is_pivot[pc] = Some(row);
        }
        (0..self.cols)
            .filter(|&c| is_pivot[c].is_none())
            .map(|free| {
                let mut v = alloc::vec![field.zero(); self.cols];
                v[free] = field.one();
                for (pc, row) in is_pivot.iter().enumerate() {
                    if let Some(row) = row {
                        v[pc] = field.neg(&red[(*row, free)]);
                    }
                }
                v
            })
            .collect()
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, field: &Field, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(b.len(), self.rows);
        let aug = Self::from_fn(self.rows, self.cols + 1, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                b[r].clone()
            }
        });
        let (red, pivots) = rref(field, &aug);
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = alloc::vec![field.zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red[(row, self.cols)].clone();
        }
        Some(x)
    }
}

/// Reduced row echelon form and the pivot columns.
pub fn rref(field: &Field, m: &Matrix) -> (Matrix, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..a.cols {
        if row == a.rows {
            break;
        }
        let Some(p) = (row..a.rows).find(|&r| !field.is_zero(&a[(r, col)])) else {
            continue;
        };
        if p != row {
            for c in 0..a.cols {
                a.data.swap(p * a.cols + c, row * a.cols + c);
            }
        }
        let inv = field.inv(&a[(row, col)]).expect("pivot is nonzero");
        for c in col..a.cols {
            a[(row, c)] = field.mul(&a[(row, c)], &inv);
        }
        for r in 0..a.rows {
            if r == row || field.is_zero(&a[(r, col)]) {
                continue;
            }
            let factor = a[(r, col)].clone();
            for c in col..a.cols {
                let t = field.mul(&factor, &a[(row, c)]);
                a[(r, c)] = field.sub(&a[(r, c)], &t);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (a, pivots)
}

/// Matrix whose columns are the flattened (row-major) inputs.
pub(crate) fn columns_of(mats: &[Matrix]) -> Matrix {
    let len = mats[0].data.len();
    Matrix::from_fn(len, mats.len(), |r, c| mats[c].data[r].clone())
}

/// Coordinates of `target` in the span of `basis`.
///
/// `Ok(None)` means the target lies outside the span; a dependent basis is an
/// error, reported with the index of the first redundant element.
pub fn span_solve(field: &Field, basis: &[Matrix], target: &Matrix) -> Result<Option<Vec<Scalar>>> {
    if basis.is_empty() {
        return Ok(target.is_zero(field).then(Vec::new));
    }
    for b in basis {
        if (b.rows, b.cols) != (target.rows, target.cols) {
            return Err(invalid!(
                "basis matrix is {}x{}, target is {}x{}",
                b.rows,
                b.cols,
                target.rows,
                target.cols
            ));
        }
    }
    let a = columns_of(basis);
    let (_, pivots) = rref(field, &a);
    if pivots.len() < basis.len() {
        let index = (0..basis.len())
            .find(|&i| pivots.get(i) != Some(&i))
            .unwrap_or(basis.len() - 1);
        return Err(Error::InvalidBasis { index });
    }
    Ok(a.solve(field, &target.data))
}

/// Membership of a matrix in a span, tolerating dependent spanning sets.
pub fn in_span(field: &Field, spanning: &[Matrix], target: &Matrix) -> bool {
    SpanTester::new(field, spanning).contains(field, target)
}

/// `true` iff every product `x·y` with `x ∈ b1`, `y ∈ b2` lies in `span(b3)`.
pub fn subspace_contains_products(field: &Field, b1: &[Matrix], b2: &[Matrix], b3: &[Matrix]) -> Result<bool> {
    Ok(first_escaping_product(field, b1, b2, b3)?.is_none())
}

/// First pair `(i, j)` whose product leaves `span(b3)`.
pub(crate) fn first_escaping_product(
    field: &Field,
    b1: &[Matrix],
    b2: &[Matrix],
    b3: &[Matrix],
) -> Result<Option<(usize, usize)>> {
    for x in b1 {
        for y in b2 {
            if x.cols != y.rows {
                return Err(invalid!(
                    "cannot multiply {}x{} by {}x{}",
                    x.rows,
                    x.cols,
                    y.rows,
                    y.cols
                ));
            }
            if let Some(t) = b3.first() {
                if (t.rows, t.cols) != (x.rows, y.cols) {
                    return Err(invalid!("product shape does not match target span"));
                }
            }
        }
    }
    let tester = SpanTester::new(field, b3);
    for (i, x) in b1.iter().enumerate() {
        for (j, y) in b2.iter().enumerate() {
            if !tester.contains(field, &x.mul(field, y)) {
                return Ok(Some((i, j)));
            }
        }
    }
    Ok(None)
}

/// Precomputed membership test for the span of a fixed list of matrices.
#[derive(Debug, Clone)]
pub struct SpanTester {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl SpanTester {
    pub fn new(field: &Field, spanning: &[Matrix]) -> Self {
        if spanning.is_empty() {
            return Self {
                rows: Vec::new(),
                pivots: Vec::new(),
            };
        }
        let len = spanning[0].data.len();
        let stacked = Matrix::from_fn(spanning.len(), len, |r, c| spanning[r].data[c].clone());
        let (red, pivots) = rref(field, &stacked);
        let rows = (0..pivots.len()).map(|r| red.row(r).to_vec()).collect();
        Self { rows, pivots }
    }

    pub fn dimension(&self) -> usize {
        self.pivots.len()
    }

    pub fn contains_vec(&self, field: &Field, v: &[Scalar]) -> bool {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if field.is_zero(&v[pc]) {
                continue;
            }
            let f = v[pc].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !field.is_zero(r) {
                    *x = field.sub(x, &field.mul(&f, r));
                }
            }
        }
        v.iter().all(|x| field.is_zero(x))
    }

    pub fn contains(&self, field: &Field, m: &Matrix) -> bool {
        self.contains_vec(field, &m.data)
    }
}

/// Dimension of the span of a list of matrices.
pub fn span_dimension(field: &Field, mats: &[Matrix]) -> usize {
    if mats.is_empty() {
        0
    } else {
        columns_of(mats).rank(field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn span_solve_examples() {
        let q = Field::Rational;
        let id = Matrix::identity(&q, 2);
        let three = id.scale(&q, &q.from_i64(3));
        assert_eq!(
            span_solve(&q, &[id.clone()], &three).unwrap(),
            Some(vec![q.from_i64(3)])
        );

        let e11 = Matrix::unit(&q, 2, 0, 0);
        let e22 = Matrix::unit(&q, 2, 1, 1);
        let e12 = Matrix::unit(&q, 2, 0, 1);
        assert_eq!(span_solve(&q, &[e11.clone(), e22.clone()], &e12).unwrap(), None);

        let f = Field::prime(3).unwrap();
        let s = Matrix::from_i64(&f, &[&[1, 0], &[0, 1]]);
        let d = Matrix::from_i64(&f, &[&[1, 0], &[0, -1]]);
        let t = Matrix::unit(&f, 2, 0, 0);
        assert_eq!(
            span_solve(&f, &[s, d], &t).unwrap(),
            Some(vec![f.from_i64(2), f.from_i64(2)])
        );

        let dep = span_solve(&q, &[id.clone(), three.clone()], &id);
        assert_eq!(dep, Err(Error::InvalidBasis { index: 1 }));
    }

    #[test]
    fn product_containment_examples() {
        let q = Field::Rational;
        let id = Matrix::identity(&q, 2);
        let e11 = Matrix::unit(&q, 2, 0, 0);
        let e22 = Matrix::unit(&q, 2, 1, 1);
        let e12 = Matrix::unit(&q, 2, 0, 1);
        let e21 = Matrix::unit(&q, 2, 1, 0);
        assert!(subspace_contains_products(&q, &[id.clone()], &[id.clone()], &[id]).unwrap());
        assert!(!subspace_contains_products(&q, &[e12.clone()], &[e21.clone()], &[e12.clone()]).unwrap());
        assert!(subspace_contains_products(&q, &[e12], &[e21], &[e11, e22]).unwrap());
    }

    #[test]
    fn inverse_and_kernel() {
        let q = Field::Rational;
        let a = Matrix::from_i64(&q, &[&[2, 1], &[1, 1]]);
        let inv = a.inverse(&q).unwrap();
        assert_eq!(a.mul(&q, &inv), Matrix::identity(&q, 2));
        let sing = Matrix::from_i64(&q, &[&[1, 2], &[2, 4]]);
        assert!(sing.inverse(&q).is_none());
        let k = sing.kernel(&q);
        assert_eq!(k, vec![vec![q.from_i64(-2), q.from_i64(1)]]);
        assert_eq!(sing.mul_vec(&q, &k[0]), vec![q.zero(), q.zero()]);
    }

    #[test]
    fn kron_blocks() {
        let f = Field::prime(5).unwrap();
        let a = Matrix::from_i64(&f, &[&[1, 2], &[0, 1]]);
        let b = Matrix::identity(&f, 2);
        let k = a.kron(&f, &b);
        assert_eq!(k.rows(), 4);
        assert_eq!(k[(0, 2)], f.from_i64(2));
        assert_eq!(k[(1, 3)], f.from_i64(2));
        assert_eq!(k[(0, 3)], f.zero());
    }
}
