//! Exact integer linear algebra: labeled matrices, fraction-free (Bareiss)
//! determinants, rank over Q, and integer kernel vectors.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum MatrixError {
    #[error("matrix is not square: {0}x{1}")]
    NotSquare(usize, usize),
    #[error("dimension mismatch: {0}x{1} vs {2}x{3}")]
    DimensionMismatch(usize, usize, usize, usize),
    #[error("label {0} not present in the other matrix")]
    LabelMismatch(String),
    #[error("label lists differ in length: {0} vs {1}")]
    LabelLengthMismatch(usize, usize),
}

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c));
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.at(r, c).clone());
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.at(i, j) + a * other.at(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &IntMatrix) -> Result<IntMatrix, MatrixError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(MatrixError::DimensionMismatch(
                self.rows, self.cols, other.rows, other.cols,
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a + b)
            .collect();
        Ok(IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn scale(&self, k: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * k).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols && *self == IntMatrix::identity(self.rows)
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m.at(k, k).is_zero() {
                let swap = (k + 1..n).find(|&r| !m.at(r, k).is_zero());
                match swap {
                    Some(r) => {
                        for c in 0..n {
                            let tmp = m.at(k, c).clone();
                            m.set(k, c, m.at(r, c).clone());
                            m.set(r, c, tmp);
                        }
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                    let (q, r) = num.div_rem(&prev);
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    m.set(i, j, q);
                }
                m.set(i, k, BigInt::zero());
            }
            prev = m.at(k, k).clone();
        }
        Ok(sign * m.at(n - 1, n - 1).clone())
    }

    /// Rank over Q by fraction-free elimination with full pivot search.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let (rows, cols) = (m.rows, m.cols);
        let mut rank = 0;
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !m.at(r, col).is_zero());
            let Some(p) = pivot else { continue };
            if p != row {
                for c in 0..cols {
                    let tmp = m.at(row, c).clone();
                    m.set(row, c, m.at(p, c).clone());
                    m.set(p, c, tmp);
                }
            }
            for r in row + 1..rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let pivot_val = m.at(row, col).clone();
                let factor = m.at(r, col).clone();
                for c in col..cols {
                    let v = m.at(r, c) * &pivot_val - &factor * m.at(row, c);
                    m.set(r, c, v);
                }
            }
            rank += 1;
            row += 1;
            if row == rows {
                break;
            }
        }
        rank
    }

    /// A primitive integer kernel vector for a singular square matrix, if any.
    pub fn kernel_vector(&self) -> Option<Vec<BigInt>> {
        let basis = self.rational_kernel_basis();
        let v = basis.into_iter().next()?;
        // clear denominators, divide by gcd
        let lcm = v
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
        let gcd = ints
            .iter()
            .fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !gcd.is_zero() && !gcd.is_one() {
            for x in &mut ints {
                *x /= &gcd;
            }
        }
        // sign normalization: first nonzero entry positive
        if let Some(first) = ints.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                for x in &mut ints {
                    *x = -x.clone();
                }
            }
        }
        Some(ints)
    }

    pub fn rational_kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (rows, cols) = (self.rows, self.cols);
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                (0..cols)
                    .map(|c| BigRational::from_integer(self.at(r, c).clone()))
                    .collect()
            })
            .collect();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
        let mut row = 0;
        for col in 0..cols {
            let pivot = (row..rows).find(|&r| !m[r][col].is_zero());
            let Some(p) = pivot else { continue };
            m.swap(p, row);
            let inv = m[row][col].recip();
            for c in 0..cols {
                m[row][c] = &m[row][c] * &inv;
            }
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let factor = m[r][col].clone();
                    for c in 0..cols {
                        let v = &m[r][c] - &factor * &m[row][c];
                        m[r][c] = v;
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
            if row == rows {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in 0..cols {
            if pivot_of_col[free].is_some() {
                continue;
            }
            let mut v = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (col, piv) in pivot_of_col.iter().enumerate() {
                if let Some(r) = piv {
                    v[col] = -m[*r][free].clone();
                }
            }
            basis.push(v);
        }
        basis
    }
}

/// An integer matrix with row and column labels; all cross-module composition
/// matches by label, never by position.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledMatrix {
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub matrix: IntMatrix,
}

impl LabeledMatrix {
    pub fn square(labels: Vec<String>, matrix: IntMatrix) -> Self {
        assert_eq!(labels.len(), matrix.rows);
        assert_eq!(labels.len(), matrix.cols);
        LabeledMatrix {
            row_labels: labels.clone(),
            col_labels: labels,
            matrix,
        }
    }

    pub fn at_labels(&self, row: &str, col: &str) -> Option<&BigInt> {
        let r = self.row_labels.iter().position(|l| l == row)?;
        let c = self.col_labels.iter().position(|l| l == col)?;
        Some(self.matrix.at(r, c))
    }

    /// Reorder rows and columns into the given label orders.
    pub fn reordered(
        &self,
        row_order: &[String],
        col_order: &[String],
    ) -> Result<LabeledMatrix, MatrixError> {
        if row_order.len() != self.row_labels.len() {
            return Err(MatrixError::LabelLengthMismatch(
                row_order.len(),
                self.row_labels.len(),
            ));
        }
        if col_order.len() != self.col_labels.len() {
            return Err(MatrixError::LabelLengthMismatch(
                col_order.len(),
                self.col_labels.len(),
            ));
        }
        let rperm = permutation_to(&self.row_labels, row_order)?;
        let cperm = permutation_to(&self.col_labels, col_order)?;
        let mut out = IntMatrix::zero(self.matrix.rows, self.matrix.cols);
        for (new_r, &old_r) in rperm.iter().enumerate() {
            for (new_c, &old_c) in cperm.iter().enumerate() {
                out.set(new_r, new_c, self.matrix.at(old_r, old_c).clone());
            }
        }
        Ok(LabeledMatrix {
            row_labels: row_order.to_vec(),
            col_labels: col_order.to_vec(),
            matrix: out,
        })
    }

    /// Right-aligned text rendering with label headers.
    pub fn render_text(&self) -> String {
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend(self.col_labels.iter().cloned());
        cells.push(header);
        for (r, label) in self.row_labels.iter().enumerate() {
            let mut row = vec![label.clone()];
            for c in 0..self.matrix.cols {
                row.push(self.matrix.at(r, c).to_string());
            }
            cells.push(row);
        }
        let widths: Vec<usize> = (0..cells[0].len())
            .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap_or(0))
            .collect();
        let mut out = String::new();
        for row in &cells {
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    out.push(' ');
                }
                out.push_str(&" ".repeat(widths[c].saturating_sub(cell.len())));
                out.push_str(cell);
            }
            out.push('\n');
        }
        out
    }
}

fn permutation_to(from: &[String], to: &[String]) -> Result<Vec<usize>, MatrixError> {
    to.iter()
        .map(|label| {
            from.iter()
                .position(|l| l == label)
                .ok_or_else(|| MatrixError::LabelMismatch(label.clone()))
        })
        .collect()
}

impl fmt::Display for LabeledMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_of_identity() {
        assert_eq!(IntMatrix::identity(5).det().unwrap(), BigInt::one());
    }

    #[test]
    fn det_of_published_matrices() {
        let complex = IntMatrix::from_i64_rows(&[&[172, 2, 165], &[4, 9, 0], &[2, 2, 5]]);
        assert_eq!(complex.det().unwrap(), BigInt::from(6050));
        let modular = IntMatrix::from_i64_rows(&[&[187, 176], &[17, 16]]);
        assert_eq!(modular.det().unwrap(), BigInt::zero());
        assert_eq!(modular.rank(), 1);
    }

    #[test]
    fn rank_edge_cases() {
        assert_eq!(IntMatrix::zero(3, 3).rank(), 0);
        let d = IntMatrix::from_i64_rows(&[&[1, 0], &[1, 1], &[0, 1]]);
        assert_eq!(d.rank(), 2);
    }

    #[test]
    fn kernel_of_singular_published_matrix() {
        let modular = IntMatrix::from_i64_rows(&[&[187, 176], &[17, 16]]);
        let v = modular.kernel_vector().unwrap();
        assert_eq!(v, vec![BigInt::from(16), BigInt::from(-17)]);
    }

    #[test]
    fn det_requires_square() {
        let m = IntMatrix::zero(2, 3);
        assert!(matches!(m.det(), Err(MatrixError::NotSquare(2, 3))));
    }

    #[test]
    fn det_matches_cofactor_on_random_small_matrices() {
        fn cofactor_det(m: &IntMatrix) -> BigInt {
            let n = m.rows;
            if n == 0 {
                return BigInt::one();
            }
            if n == 1 {
                return m.at(0, 0).clone();
            }
            let mut acc = BigInt::zero();
            for c in 0..n {
                let mut minor = IntMatrix::zero(n - 1, n - 1);
                for r in 1..n {
                    let mut cc = 0;
                    for c2 in 0..n {
                        if c2 == c {
                            continue;
                        }
                        minor.set(r - 1, cc, m.at(r, c2).clone());
                        cc += 1;
                    }
                }
                let term = m.at(0, c) * cofactor_det(&minor);
                if c % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            acc
        }
        // deterministic pseudo-random entries
        let mut state = 0x2545f4914f6cdd1du64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 21) as i64 - 10
        };
        for n in 1..=4 {
            for _ in 0..20 {
                let rows: Vec<Vec<BigInt>> = (0..n)
                    .map(|_| (0..n).map(|_| BigInt::from(next())).collect())
                    .collect();
                let m = IntMatrix::from_rows(rows);
                assert_eq!(m.det().unwrap(), cofactor_det(&m));
                // rank < n iff det == 0
                assert_eq!(m.rank() < n, m.det().unwrap().is_zero());
            }
        }
    }

    #[test]
    fn reorder_by_labels() {
        let m = LabeledMatrix::square(
            vec!["a".into(), "b".into()],
            IntMatrix::from_i64_rows(&[&[1, 2], &[3, 4]]),
        );
        let order = vec!["b".to_string(), "a".to_string()];
        let r = m.reordered(&order, &order).unwrap();
        assert_eq!(r.matrix, IntMatrix::from_i64_rows(&[&[4, 3], &[2, 1]]));
        assert!(m
            .reordered(&["b".to_string(), "c".to_string()], &order)
            .is_err());
    }
}
