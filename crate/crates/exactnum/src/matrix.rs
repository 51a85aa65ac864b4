//! Dense matrices over the scalar field, with exact elimination.
//!
//! Row reduction, inversion, kernels and linear solving are all performed by
//! Gauss–Jordan elimination over ℚ(q); there is no pivoting heuristic beyond
//! taking the first nonzero entry, since arithmetic is exact.

use std::ops::{Add, Mul, Neg, Sub};

use crate::{NumError, Scalar};

/// A dense `rows × cols` matrix of scalars, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Result of solving a linear system `A·x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// Exactly one solution.
    Unique(Vec<Scalar>),
    /// Infinitely many solutions; one particular solution is reported
    /// (all free variables set to zero).
    NonUnique(Vec<Scalar>),
    /// The system is inconsistent.
    NoSolution,
}

impl Matrix {
    /// The zero matrix of the given shape.
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    /// The `n × n` identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Build from a closure evaluated at every position.
    pub fn from_fn<F: FnMut(usize, usize) -> Scalar>(rows: usize, cols: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Build from explicit rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let n_rows = rows.len();
        let n_cols = rows.first().map(|r| r.len()).unwrap_or(0);
        assert!(
            rows.iter().all(|r| r.len() == n_cols),
            "ragged rows in matrix literal"
        );
        Matrix {
            rows: n_rows,
            cols: n_cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// A diagonal matrix with the given entries.
    pub fn diagonal_from(entries: &[Scalar]) -> Self {
        let n = entries.len();
        let mut m = Matrix::zero(n, n);
        for (i, e) in entries.iter().enumerate() {
            m.set(i, i, e.clone());
        }
        m
    }

    /// Number of rows.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at `(r, c)`.
    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    /// Overwrite the entry at `(r, c)`.
    pub fn set(&mut self, r: usize, c: usize, value: Scalar) {
        self.data[r * self.cols + c] = value;
    }

    /// The transpose.
    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Multiply every entry by a scalar.
    pub fn scale(&self, factor: &Scalar) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) * factor)
    }

    /// Whether every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    /// Whether this is a square identity matrix.
    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == Matrix::identity(self.rows)
    }

    /// The diagonal entries, provided every off-diagonal entry is zero.
    pub fn diagonal(&self) -> Option<Vec<Scalar>> {
        if self.rows != self.cols {
            return None;
        }
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c && !self.get(r, c).is_zero() {
                    return None;
                }
            }
        }
        Some((0..self.rows).map(|i| self.get(i, i).clone()).collect())
    }

    /// Apply to a column vector.
    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "vector length mismatch");
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c) * &v[c])
                    .sum::<Scalar>()
            })
            .collect()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row >= m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).recip().expect("pivot is nonzero");
            for c in col..m.cols {
                let v = m.get(row, c) * &inv;
                m.set(row, c, v);
            }
            for r in 0..m.rows {
                if r != row && !m.get(r, col).is_zero() {
                    let factor = m.get(r, col).clone();
                    for c in col..m.cols {
                        let v = m.get(r, c) - &(&factor * m.get(row, c));
                        m.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    /// The rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// The inverse of a square matrix, or [`NumError::Singular`].
    pub fn inverse(&self) -> Result<Matrix, NumError> {
        if self.rows != self.cols {
            return Err(NumError::Shape(format!(
                "cannot invert a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, Scalar::one());
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().any(|&p| p >= n) {
            return Err(NumError::Singular);
        }
        Ok(Matrix::from_fn(n, n, |r, c| red.get(r, n + c).clone()))
    }

    /// Integer power of a square matrix; negative exponents invert first.
    pub fn pow(&self, exp: i64) -> Result<Matrix, NumError> {
        if self.rows != self.cols {
            return Err(NumError::Shape("power of a non-square matrix".to_string()));
        }
        let mut base = if exp < 0 {
            self.inverse()?
        } else {
            self.clone()
        };
        let mut n = exp.unsigned_abs();
        let mut acc = Matrix::identity(self.rows);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        Ok(acc)
    }

    /// A basis for the kernel (null space), as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (red, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[fc] = Scalar::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -red.get(row, fc);
                }
                v
            })
            .collect()
    }

    /// Solve `self · x = rhs` exactly.
    pub fn solve(&self, rhs: &[Scalar]) -> SolveOutcome {
        assert_eq!(self.rows, rhs.len(), "right-hand side length mismatch");
        let mut aug = Matrix::zero(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, rhs[r].clone());
        }
        let (red, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return SolveOutcome::NoSolution;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = red.get(row, self.cols).clone();
        }
        if pivots.len() < self.cols {
            SolveOutcome::NonUnique(x)
        } else {
            SolveOutcome::Unique(x)
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }
}

impl Add<&Matrix> for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) + rhs.get(r, c))
    }
}

impl Sub<&Matrix> for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c) - rhs.get(r, c))
    }
}

impl Mul<&Matrix> for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "inner dimension mismatch: {}x{} times {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        Matrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols)
                .map(|k| self.get(r, k) * rhs.get(k, c))
                .sum::<Scalar>()
        })
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| -self.get(r, c))
    }
}

impl Add for Matrix {
    type Output = Matrix;
    fn add(self, rhs: Matrix) -> Matrix {
        &self + &rhs
    }
}

impl Sub for Matrix {
    type Output = Matrix;
    fn sub(self, rhs: Matrix) -> Matrix {
        &self - &rhs
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(text: &str) -> Scalar {
        Scalar::parse(text).unwrap()
    }

    fn m2(a: &str, b: &str, c: &str, d: &str) -> Matrix {
        Matrix::from_rows(vec![vec![s(a), s(b)], vec![s(c), s(d)]])
    }

    #[test]
    fn inverse_round_trip() {
        let m = m2("q", "1", "0", "q^-1");
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn singular_detected() {
        let m = m2("q", "q^2", "1", "q");
        assert!(matches!(m.inverse(), Err(NumError::Singular)));
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).iter().all(Scalar::is_zero));
    }

    #[test]
    fn solve_outcomes() {
        // Unique: diagonal system.
        let d = m2("q", "0", "0", "q^2 + 1");
        match d.solve(&[s("q^2"), s("q^4 - 1")]) {
            SolveOutcome::Unique(x) => {
                assert_eq!(x, vec![s("q"), s("q^2 - 1")]);
            }
            other => panic!("expected unique solution, got {:?}", other),
        }

        // Non-unique: rank-deficient but consistent.
        let r = m2("1", "1", "2", "2");
        match r.solve(&[s("q"), s("2*q")]) {
            SolveOutcome::NonUnique(x) => {
                assert_eq!(r.mul_vec(&x), vec![s("q"), s("2*q")]);
            }
            other => panic!("expected non-unique solution, got {:?}", other),
        }

        // No solution.
        assert_eq!(r.solve(&[s("q"), s("q")]), SolveOutcome::NoSolution);
    }

    #[test]
    fn rref_pivots() {
        let m = Matrix::from_rows(vec![
            vec![s("0"), s("1"), s("2")],
            vec![s("0"), s("2"), s("4")],
        ]);
        let (red, pivots) = m.rref();
        assert_eq!(pivots, vec![1]);
        assert_eq!(red.get(0, 1), &s("1"));
        assert_eq!(red.get(0, 2), &s("2"));
        assert!(red.get(1, 1).is_zero() && red.get(1, 2).is_zero());
    }

    #[test]
    fn power_with_negative_exponent() {
        let m = m2("q", "0", "0", "-q^-3");
        let p = m.pow(-2).unwrap();
        assert_eq!(p.get(0, 0), &s("q^-2"));
        assert_eq!(p.get(1, 1), &s("q^6"));
        assert!((&p * &m.pow(2).unwrap()).is_identity());
    }
}
