//! Small dense matrices over `Q(sqrt(3))(i)` with exact arithmetic.
//!
//! Sizes stay at or below 16x16 (the spin module of `Cl(8)`), so plain
//! Gaussian elimination with exact pivots is entirely adequate for rank and
//! kernel computations.

use crate::scalar::{ComplexScalar, Scalar};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

#[derive(Debug, thiserror::Error)]
pub enum MatrixError {
    #[error("matrix size mismatch: {0}x{0} vs {1}x{1}")]
    SizeMismatch(usize, usize),
}

/// A square matrix with exact complex entries, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    n: usize,
    data: Vec<ComplexScalar>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix { n, data: vec![ComplexScalar::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = ComplexScalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ComplexScalar>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        CMatrix { n, data: rows.into_iter().flatten().collect() }
    }

    pub fn diagonal(entries: &[ComplexScalar]) -> Self {
        let mut m = CMatrix::zeros(entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    pub fn real_diagonal(entries: &[Scalar]) -> Self {
        let cs: Vec<ComplexScalar> = entries.iter().map(|s| ComplexScalar::from_real(s.clone())).collect();
        CMatrix::diagonal(&cs)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| e.is_zero())
    }

    pub fn scale(&self, c: &ComplexScalar) -> CMatrix {
        CMatrix { n: self.n, data: self.data.iter().map(|e| e.clone() * c).collect() }
    }

    pub fn scale_real(&self, c: &Scalar) -> CMatrix {
        self.scale(&ComplexScalar::from_real(c.clone()))
    }

    pub fn adjoint(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn transpose(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> ComplexScalar {
        let mut t = ComplexScalar::zero();
        for i in 0..self.n {
            t += self[(i, i)].clone();
        }
        t
    }

    pub fn is_hermitian(&self) -> bool {
        *self == self.adjoint()
    }

    pub fn is_skew_hermitian(&self) -> bool {
        self.adjoint() == self.clone().neg()
    }

    pub fn commutes_with(&self, other: &CMatrix) -> bool {
        self.clone() * other.clone() == other.clone() * self.clone()
    }

    /// Shift by a real multiple of the identity: `self - lambda * I`.
    pub fn shift(&self, lambda: &Scalar) -> CMatrix {
        let mut out = self.clone();
        for i in 0..self.n {
            out[(i, i)] = out[(i, i)].clone() - ComplexScalar::from_real(lambda.clone());
        }
        out
    }

    /// Exact rank by Gaussian elimination over the field.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let n = m.n;
        let mut rank = 0;
        for col in 0..n {
            // find a pivot
            let Some(pivot_row) = (rank..n).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot_row);
            let inv = m[(rank, col)].inverse().expect("pivot is nonzero");
            for c in 0..n {
                m[(rank, c)] = m[(rank, c)].clone() * &inv;
            }
            for r in 0..n {
                if r != rank && !m[(r, col)].is_zero() {
                    let factor = m[(r, col)].clone();
                    for c in 0..n {
                        let sub = factor.clone() * m[(rank, c)].clone();
                        m[(r, c)] = m[(r, c)].clone() - sub;
                    }
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }

    pub fn kernel_dim(&self) -> usize {
        self.n - self.rank()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.n {
            self.data.swap(a * self.n + c, b * self.n + c);
        }
    }

    /// Kronecker product; the left factor indexes the coarse blocks.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let n = self.n * other.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self[(i, j)].is_zero() {
                    continue;
                }
                for k in 0..other.n {
                    for l in 0..other.n {
                        out[(i * other.n + k, j * other.n + l)] =
                            self[(i, j)].clone() * other[(k, l)].clone();
                    }
                }
            }
        }
        out
    }

    /// Real and imaginary parts as `f64` matrices (row-major).
    pub fn to_f64(&self) -> (Vec<f64>, Vec<f64>) {
        let mut re = Vec::with_capacity(self.n * self.n);
        let mut im = Vec::with_capacity(self.n * self.n);
        for e in &self.data {
            let (r, i) = e.to_f64_pair();
            re.push(r);
            im.push(i);
        }
        (re, im)
    }

    /// Largest absolute value of any entry, in floating point.
    pub fn sup_norm_f64(&self) -> f64 {
        self.data
            .iter()
            .map(|e| {
                let (r, i) = e.to_f64_pair();
                (r * r + i * i).sqrt()
            })
            .fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = ComplexScalar;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexScalar {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexScalar {
        let n = self.n;
        &mut self.data[i * n + j]
    }
}

impl Add for CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        CMatrix {
            n: self.n,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        CMatrix {
            n: self.n,
            data: self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for CMatrix {
    type Output = CMatrix;
    fn neg(self) -> CMatrix {
        CMatrix { n: self.n, data: self.data.into_iter().map(|a| -a).collect() }
    }
}

impl Mul for CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n, "matrix size mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &rhs[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let prod = a.clone() * b.clone();
                    out[(i, j)] += prod;
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.n {
            write!(f, "  [")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;

    fn c(v: i64) -> ComplexScalar {
        ComplexScalar::from_int(v)
    }

    #[test]
    fn rank_and_kernel() {
        let m = CMatrix::from_rows(vec![
            vec![c(1), c(2), c(3)],
            vec![c(2), c(4), c(6)],
            vec![c(0), c(1), c(1)],
        ]);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.kernel_dim(), 1);
        assert_eq!(CMatrix::identity(4).rank(), 4);
        assert_eq!(CMatrix::zeros(4).rank(), 0);
    }

    #[test]
    fn kron_is_multiplicative() {
        let a = CMatrix::from_rows(vec![vec![c(1), c(2)], vec![c(3), c(4)]]);
        let b = CMatrix::from_rows(vec![vec![c(0), c(1)], vec![c(-1), c(0)]]);
        let left = a.clone().kron(&b) * a.clone().kron(&b);
        let right = (a.clone() * a).kron(&(b.clone() * b));
        assert_eq!(left, right);
    }

    #[test]
    fn hermitian_predicates() {
        let i = ComplexScalar::i();
        let h = CMatrix::from_rows(vec![vec![c(2), i.clone()], vec![-i.clone(), c(0)]]);
        assert!(h.is_hermitian());
        assert!(!h.is_skew_hermitian());
        let s = CMatrix::from_rows(vec![vec![ComplexScalar::zero(), c(1)], vec![c(-1), ComplexScalar::zero()]]);
        assert!(s.is_skew_hermitian());
        let _ = Scalar::zero();
    }
}
