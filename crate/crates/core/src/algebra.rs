//! Finite-dimensional commutative algebras given by structure constants.

use alloc::vec::Vec;

use crate::error::{invalid, Error, Result};
use crate::field::{Field, Scalar};
use crate::matrix::Matrix;

/// A commutative unital `k`-algebra with basis `b_0, …, b_{d-1}`.
///
/// `table[i][j]` holds the coordinates of `b_i · b_j`. Construction checks
/// commutativity, associativity on every basis triple and the unit law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeAlgebra {
    field: Field,
    dim: usize,
    table: Vec<Vec<Vec<Scalar>>>,
    unit: Vec<Scalar>,
}

impl CommutativeAlgebra {
    pub fn new(field: Field, table: Vec<Vec<Vec<Scalar>>>, unit: Vec<Scalar>) -> Result<Self> {
        let dim = unit.len();
        if dim == 0 {
            return Err(invalid!("algebra dimension must be positive"));
        }
        if table.len() != dim
            || table
                .iter()
                .any(|row| row.len() != dim || row.iter().any(|v| v.len() != dim))
        {
            return Err(invalid!("structure constants must form a {dim}x{dim}x{dim} table"));
        }
        if table
            .iter()
            .flatten()
            .flatten()
            .chain(&unit)
            .any(|x| !field.contains(x))
        {
            return Err(invalid!("structure constant outside the base field {field}"));
        }
        let alg = Self {
            field,
            dim,
            table,
            unit,
        };
        alg.validate()?;
        Ok(alg)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.dim {
            for j in 0..self.dim {
                if self.table[i][j] != self.table[j][i] {
                    return Err(Error::InvalidAlgebra {
                        reason: "not commutative",
                        triple: (i, j, j),
                    });
                }
            }
        }
        for i in 0..self.dim {
            let b = self.basis(i);
            if self.mul(&self.unit, &b) != b {
                return Err(Error::InvalidAlgebra {
                    reason: "unit does not act as identity",
                    triple: (i, i, i),
                });
            }
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                let ij = &self.table[i][j];
                for k in 0..self.dim {
                    let left = self.mul(ij, &self.basis(k));
                    let right = self.mul(&self.basis(i), &self.table[j][k]);
                    if left != right {
                        return Err(Error::InvalidAlgebra {
                            reason: "not associative",
                            triple: (i, j, k),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn table(&self) -> &[Vec<Vec<Scalar>>] {
        &self.table
    }

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn basis(&self, i: usize) -> Vec<Scalar> {
        let f = &self.field;
        (0..self.dim).map(|k| if k == i { f.one() } else { f.zero() }).collect()
    }

    pub fn zero(&self) -> Vec<Scalar> {
        alloc::vec![self.field.zero(); self.dim]
    }

    /// Embeds a scalar as `c · 1`.
    pub fn scalar(&self, c: &Scalar) -> Vec<Scalar> {
        self.unit.iter().map(|u| self.field.mul(u, c)).collect()
    }

    pub fn mul(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let f = &self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (o, c) in out.iter_mut().zip(&self.table[i][j]) {
                    *o = f.add(o, &f.mul(&xy, c));
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn pow(&self, a: &[Scalar], exp: u64) -> Vec<Scalar> {
        let mut acc = self.unit.clone();
        let mut base = a.to_vec();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// Regular representation: column `j` holds the coordinates of `a · b_j`.
    pub fn left_mul_matrix(&self, a: &[Scalar]) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|j| self.mul(a, &self.basis(j))).collect();
        Matrix::from_fn(self.dim, self.dim, |r, c| cols[c][r].clone())
    }

    /// Checks that the `d×d` matrix `m` (columns = images of basis vectors)
    /// is a unital algebra endomorphism.
    pub fn is_algebra_map(&self, m: &Matrix) -> bool {
        if m.rows() != self.dim || m.cols() != self.dim {
            return false;
        }
        let f = &self.field;
        if m.mul_vec(f, &self.unit) != self.unit {
            return false;
        }
        let images: Vec<Vec<Scalar>> = (0..self.dim).map(|j| m.col(j)).collect();
        (0..self.dim)
            .all(|i| (0..self.dim).all(|j| m.mul_vec(f, &self.table[i][j]) == self.mul(&images[i], &images[j])))
    }

    /// `k[X]/(f)` for monic `f` given low degree first, basis `1, x, …, x^{d-1}`.
    pub fn monogenic(field: Field, monic: &[Scalar]) -> Result<Self> {
        let d = monic
            .len()
            .checked_sub(1)
            .filter(|&d| d > 0)
            .ok_or_else(|| invalid!("need degree >= 1"))?;
        if !field.is_one(&monic[d]) {
            return Err(invalid!("defining polynomial must be monic"));
        }
        // x^k for k < 2d-1 reduced by x^d = -(f_0 + … + f_{d-1} x^{d-1})
        let mut powers: Vec<Vec<Scalar>> = Vec::with_capacity(2 * d);
        for k in 0..(2 * d - 1) {
            if k < d {
                let mut v = alloc::vec![field.zero(); d];
                v[k] = field.one();
                powers.push(v);
            } else {
                let prev = &powers[k - 1];
                let top = prev[d - 1].clone();
                let mut v = alloc::vec![field.zero(); d];
                for i in 1..d {
                    v[i] = prev[i - 1].clone();
                }
                for i in 0..d {
                    v[i] = field.sub(&v[i], &field.mul(&top, &monic[i]));
                }
                powers.push(v);
            }
        }
        let table = (0..d)
            .map(|i| (0..d).map(|j| powers[i + j].clone()).collect())
            .collect();
        let mut unit = alloc::vec![field.zero(); d];
        unit[0] = field.one();
        Self::new(field, table, unit)
    }

    /// `k^d` with componentwise product (basis of orthogonal idempotents).
    pub fn split(field: Field, d: usize) -> Result<Self> {
        let table = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        (0..d)
                            .map(|k| if i == j && j == k { field.one() } else { field.zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let unit = alloc::vec![field.one(); d];
        Self::new(field, table, unit)
    }
}
