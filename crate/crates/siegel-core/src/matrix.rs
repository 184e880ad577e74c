//! Small dense matrices over `ComplexRational` and over `Poly`.
//!
//! Everything here is exact; sizes stay tiny (at most `2n x 2n`), so naive
//! algorithms are the right tool.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use crate::error::AutError;
use crate::poly::Poly;
use crate::scalar::ComplexRational;

/// Dense matrix of exact complex scalars.
#[derive(Clone, PartialEq, Eq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<ComplexRational>,
}

impl CMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![ComplexRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = ComplexRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<ComplexRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn scalar(n: usize, c: &ComplexRational) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].clone();
            }
        }
        out
    }

    pub fn conj(&self) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(ComplexRational::conj).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        self.conj().transpose()
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&ComplexRational::from_int(-1))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(ComplexRational::is_zero)
    }

    pub fn mul_vec(&self, v: &[ComplexRational]) -> Vec<ComplexRational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = ComplexRational::zero();
                for j in 0..self.cols {
                    acc += &(&self[(i, j)] * &v[j]);
                }
                acc
            })
            .collect()
    }

    /// Exact determinant by fraction-aware Gaussian elimination.
    pub fn det(&self) -> ComplexRational {
        assert!(self.is_square(), "determinant of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut det = ComplexRational::one();
        for col in 0..n {
            let pivot_row = (col..n).find(|&r| !a[(r, col)].is_zero());
            let Some(pivot_row) = pivot_row else {
                return ComplexRational::zero();
            };
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a[(col, j)].clone();
                    a[(col, j)] = a[(pivot_row, j)].clone();
                    a[(pivot_row, j)] = tmp;
                }
                det = -&det;
            }
            let pivot = a[(col, col)].clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for r in col + 1..n {
                if a[(r, col)].is_zero() {
                    continue;
                }
                let factor = &a[(r, col)] * &inv;
                for j in col..n {
                    let delta = &factor * &a[(col, j)];
                    let val = &a[(r, j)] - &delta;
                    a[(r, j)] = val;
                }
            }
        }
        det
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, AutError> {
        assert!(self.is_square(), "inverse of non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a[(r, col)].is_zero())
                .ok_or(AutError::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a[(col, j)].clone();
                    a[(col, j)] = a[(pivot_row, j)].clone();
                    a[(pivot_row, j)] = tmp;
                    let tmp = inv[(col, j)].clone();
                    inv[(col, j)] = inv[(pivot_row, j)].clone();
                    inv[(pivot_row, j)] = tmp;
                }
            }
            let pivot_inv = a[(col, col)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(col, j)] = &a[(col, j)] * &pivot_inv;
                inv[(col, j)] = &inv[(col, j)] * &pivot_inv;
            }
            for r in 0..n {
                if r == col || a[(r, col)].is_zero() {
                    continue;
                }
                let factor = a[(r, col)].clone();
                for j in 0..n {
                    let da = &factor * &a[(col, j)];
                    a[(r, j)] = &a[(r, j)] - &da;
                    let di = &factor * &inv[(col, j)];
                    inv[(r, j)] = &inv[(r, j)] - &di;
                }
            }
        }
        Ok(inv)
    }

    /// Solves `self * x = b` exactly.
    pub fn solve(&self, b: &[ComplexRational]) -> Result<Vec<ComplexRational>, AutError> {
        Ok(self.inverse()?.mul_vec(b))
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = ComplexRational;
    fn index(&self, (i, j): (usize, usize)) -> &ComplexRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut ComplexRational {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &CMatrix {
    type Output = CMatrix;
    fn add(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CMatrix {
    type Output = CMatrix;
    fn sub(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let mut out = CMatrix::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let prod = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] += &prod;
                }
            }
        }
        out
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Dense matrix of polynomials, used for complexified structures and
/// Jacobians.
#[derive(Clone, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zero(rows: usize, cols: usize, dim: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![Poly::zero(dim); rows * cols],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Poly::is_zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &Poly)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, p)| ((k / self.cols, k % self.cols), p))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl std::ops::Index<(usize, usize)> for PolyMatrix {
    type Output = Poly;
    fn index(&self, (i, j): (usize, usize)) -> &Poly {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for PolyMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Poly {
        &mut self.data[i * self.cols + j]
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, rhs.rows, "matrix shape mismatch");
        let dim = self.data.first().map_or(0, Poly::dim);
        let mut out = PolyMatrix::zero(self.rows, rhs.cols, dim);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    if rhs[(k, j)].is_zero() {
                        continue;
                    }
                    let prod = &self[(i, k)] * &rhs[(k, j)];
                    out[(i, j)] = &out[(i, j)] + &prod;
                }
            }
        }
        out
    }
}

impl Sub for &PolyMatrix {
    type Output = PolyMatrix;
    fn sub(self, rhs: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl fmt::Debug for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for i in 0..self.rows {
            write!(f, "  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{:?}", self[(i, j)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
