//! Dense exact matrices over the integers and the rationals.
//!
//! Resolution dual graphs at desk scale have a few dozen components, so the
//! matrices here are tiny; everything is dense and exact. Determinants use
//! fraction-free Bareiss elimination over `BigInt`, inverses use Gauss-Jordan
//! over `Rat`.

use std::fmt;
use std::ops::Index;

use num::{BigInt, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rat;

#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

#[derive(Clone, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
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
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn neg(&self) -> Self {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    *out.get_mut(i, j) += t;
                }
            }
        }
        out
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Rat::from_integer(x.clone())).collect(),
        }
    }

    /// Exact determinant by fraction-free Bareiss elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = (0..n)
            .map(|i| (0..n).map(|j| self.get(i, j).clone()).collect())
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = &num / &prev;
                }
                a[i][k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Leading principal minors all positive (Sylvester's criterion).
    pub fn is_positive_definite(&self) -> bool {
        assert!(self.is_square());
        (1..=self.rows).all(|k| {
            let mut minor = IntMatrix::zero(k, k);
            for i in 0..k {
                for j in 0..k {
                    *minor.get_mut(i, j) = self.get(i, j).clone();
                }
            }
            minor.determinant().is_positive()
        })
    }
}

impl RatMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RatMatrix::zero(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = Rat::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rat {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        assert!(r < self.rows && c < self.cols, "index out of bounds");
        &mut self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> Vec<Rat> {
        (0..self.cols).map(|c| self.get(r, c).clone()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn neg(&self) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| -x).collect(),
        }
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = RatMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let t = a * other.get(k, j);
                    *out.get_mut(i, j) += t;
                }
            }
        }
        out
    }

    /// `M * v` for a column vector.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn invert(&self) -> Result<RatMatrix> {
        assert!(self.rows == self.cols, "inverse of a non-square matrix");
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(Error::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..n {
                    let aj = a.get(pivot_row, j).clone();
                    *a.get_mut(pivot_row, j) = a.get(col, j).clone();
                    *a.get_mut(col, j) = aj;
                    let ij = inv.get(pivot_row, j).clone();
                    *inv.get_mut(pivot_row, j) = inv.get(col, j).clone();
                    *inv.get_mut(col, j) = ij;
                }
            }
            let p = a.get(col, col).clone();
            for j in 0..n {
                *a.get_mut(col, j) /= p.clone();
                *inv.get_mut(col, j) /= p.clone();
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for j in 0..n {
                    let t = &f * a.get(col, j);
                    *a.get_mut(r, j) -= t;
                    let t = &f * inv.get(col, j);
                    *inv.get_mut(r, j) -= t;
                }
            }
        }
        Ok(inv)
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        self.get(r, c)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rat;
    fn index(&self, (r, c): (usize, usize)) -> &Rat {
        self.get(r, c)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols)
                .map(|j| crate::rational::render_rat(self.get(i, j)))
                .collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn rat_from_rows(rows: Vec<Vec<Rat>>) -> RatMatrix {
        let r = rows.len();
        let c = rows[0].len();
        let mut m = RatMatrix::zero(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.into_iter().enumerate() {
                *m.get_mut(i, j) = x;
            }
        }
        m
    }

    #[test]
    fn determinant_examples() {
        assert_eq!(IntMatrix::identity(2).determinant(), BigInt::one());
        assert_eq!(
            IntMatrix::from_rows(vec![vec![2]]).determinant(),
            BigInt::from(2)
        );
        // minus the cusp intersection matrix
        let minus_e = IntMatrix::from_rows(vec![vec![3, 0, -1], vec![0, 2, -1], vec![-1, -1, 1]]);
        assert_eq!(minus_e.determinant(), BigInt::one());
        let singular = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), BigInt::zero());
    }

    #[test]
    fn invert_identity_and_1x1() {
        let id = RatMatrix::identity(3);
        assert_eq!(id.invert().unwrap(), id);
        let m = rat_from_rows(vec![vec![rat(-2, 1)]]);
        let inv = m.invert().unwrap();
        assert_eq!(inv.get(0, 0), &rat(-1, 2));
    }

    #[test]
    fn invert_cusp_intersection_matrix() {
        // E = [[-3,0,1],[0,-2,1],[1,1,-1]]; -E^{-1} = [[1,1,2],[1,2,3],[2,3,6]]
        let e = IntMatrix::from_rows(vec![vec![-3, 0, 1], vec![0, -2, 1], vec![1, 1, -1]]);
        let m = e.to_rat().invert().unwrap().neg();
        let expected = IntMatrix::from_rows(vec![vec![1, 1, 2], vec![1, 2, 3], vec![2, 3, 6]]);
        assert_eq!(m, expected.to_rat());
        // defining property E * M = -Id
        let prod = e.to_rat().mul(&m);
        assert_eq!(prod, RatMatrix::identity(3).neg());
    }

    #[test]
    fn invert_reports_singular() {
        let m = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 4]]).to_rat();
        assert!(matches!(m.invert(), Err(Error::SingularMatrix)));
    }

    #[test]
    fn positive_definite_check() {
        let a2 = IntMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]);
        assert!(a2.is_positive_definite());
        let not_pd = IntMatrix::from_rows(vec![vec![1, 2], vec![2, 1]]);
        assert!(!not_pd.is_positive_definite());
    }

    #[test]
    fn inverse_times_matrix_is_identity() {
        let m = rat_from_rows(vec![
            vec![rat(2, 1), rat(1, 3), rat(0, 1)],
            vec![rat(1, 1), rat(1, 1), rat(5, 2)],
            vec![rat(0, 1), rat(-1, 7), rat(1, 1)],
        ]);
        let inv = m.invert().unwrap();
        assert_eq!(inv.mul(&m), RatMatrix::identity(3));
        assert_eq!(m.mul(&inv), RatMatrix::identity(3));
    }
}
