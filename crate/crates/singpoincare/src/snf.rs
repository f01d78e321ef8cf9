//! Smith normal form over the integers, with both unimodular transforms.
//!
//! `left * m * right = diag(d_1, ..., d_k)` with `d_1 | d_2 | ... | d_k` and
//! all `d_i >= 0`. Reduction is the classical elementary-operation scheme;
//! pivots are chosen with minimal absolute value to keep coefficients small.
//! Matrices here are small, so no effort is spent on asymptotics.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::matrix::IntMatrix;
use crate::rational::lcm_big;

#[derive(Clone, Debug)]
pub struct SmithForm {
    /// Invariant factors, length `min(rows, cols)`, padded with zeros past the rank.
    pub diagonal: Vec<BigInt>,
    /// Unimodular row transform, `rows x rows`.
    pub left: IntMatrix,
    /// Unimodular column transform, `cols x cols`.
    pub right: IntMatrix,
    pub rows: usize,
    pub cols: usize,
}

impl SmithForm {
    /// `left * m * right` as a full matrix, for checking.
    pub fn diagonal_matrix(&self) -> IntMatrix {
        let mut d = IntMatrix::zero(self.rows, self.cols);
        for (i, x) in self.diagonal.iter().enumerate() {
            *d.get_mut(i, i) = x.clone();
        }
        d
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let rows = m.rows();
    let cols = m.cols();
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);

    let n = rows.min(cols);
    let mut t = 0;
    while t < n {
        // smallest nonzero entry of the trailing submatrix becomes the pivot
        let pivot = min_abs_entry(&a, t);
        let (pi, pj) = match pivot {
            Some(p) => p,
            None => break,
        };
        swap_rows(&mut a, &mut left, t, pi);
        swap_cols(&mut a, &mut right, t, pj);

        // clear row and column t; restarts whenever a remainder appears,
        // which shrinks the pivot and guarantees termination
        let mut clean = true;
        for i in t + 1..rows {
            if a.get(i, t).is_zero() {
                continue;
            }
            let q = div_round(a.get(i, t), a.get(t, t));
            row_sub(&mut a, &mut left, i, t, &q);
            if !a.get(i, t).is_zero() {
                clean = false;
            }
        }
        for j in t + 1..cols {
            if a.get(t, j).is_zero() {
                continue;
            }
            let q = div_round(a.get(t, j), a.get(t, t));
            col_sub(&mut a, &mut right, j, t, &q);
            if !a.get(t, j).is_zero() {
                clean = false;
            }
        }
        if !clean {
            continue;
        }

        // pivot must divide the whole trailing submatrix
        let mut fixed = true;
        'scan: for i in t + 1..rows {
            for j in t + 1..cols {
                if !a.get(i, j).mod_floor(a.get(t, t)).is_zero() {
                    row_add(&mut a, &mut left, t, i);
                    fixed = false;
                    break 'scan;
                }
            }
        }
        if fixed {
            t += 1;
        }
    }

    // nonnegative diagonal
    for i in 0..n {
        if a.get(i, i).is_negative() {
            negate_row(&mut a, &mut left, i);
        }
    }

    let snf = SmithForm {
        diagonal: (0..n).map(|i| a.get(i, i).clone()).collect(),
        left,
        right,
        rows,
        cols,
    };
    debug_assert!(verify(m, &snf));
    snf
}

fn verify(m: &IntMatrix, s: &SmithForm) -> bool {
    let prod = s.left.mul(m).mul(&s.right);
    if prod != s.diagonal_matrix() {
        return false;
    }
    if s.left.determinant().abs() != BigInt::one() || s.right.determinant().abs() != BigInt::one() {
        return false;
    }
    s.diagonal.windows(2).all(|w| {
        if w[0].is_zero() {
            w[1].is_zero()
        } else {
            w[1].mod_floor(&w[0]).is_zero()
        }
    })
}

fn min_abs_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let v = a.get(i, j).abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(_, _, b)| v < *b) {
                best = Some((i, j, v));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Division rounded to nearest, so remainders have at most half the pivot.
fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = a.div_rem(b);
    if &r.abs() * 2 > b.abs() {
        if (r.is_negative()) == (b.is_negative()) {
            q + 1
        } else {
            q - 1
        }
    } else {
        q
    }
}

fn swap_rows(a: &mut IntMatrix, left: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for c in 0..a.cols() {
        let t = a.get(i, c).clone();
        *a.get_mut(i, c) = a.get(j, c).clone();
        *a.get_mut(j, c) = t;
    }
    for c in 0..left.cols() {
        let t = left.get(i, c).clone();
        *left.get_mut(i, c) = left.get(j, c).clone();
        *left.get_mut(j, c) = t;
    }
}

fn swap_cols(a: &mut IntMatrix, right: &mut IntMatrix, i: usize, j: usize) {
    if i == j {
        return;
    }
    for r in 0..a.rows() {
        let t = a.get(r, i).clone();
        *a.get_mut(r, i) = a.get(r, j).clone();
        *a.get_mut(r, j) = t;
    }
    for r in 0..right.rows() {
        let t = right.get(r, i).clone();
        *right.get_mut(r, i) = right.get(r, j).clone();
        *right.get_mut(r, j) = t;
    }
}

/// row_i -= q * row_j
fn row_sub(a: &mut IntMatrix, left: &mut IntMatrix, i: usize, j: usize, q: &BigInt) {
    for c in 0..a.cols() {
        let t = q * a.get(j, c);
        *a.get_mut(i, c) -= t;
    }
    for c in 0..left.cols() {
        let t = q * left.get(j, c);
        *left.get_mut(i, c) -= t;
    }
}

/// col_j -= q * col_k
fn col_sub(a: &mut IntMatrix, right: &mut IntMatrix, j: usize, k: usize, q: &BigInt) {
    for r in 0..a.rows() {
        let t = q * a.get(r, k);
        *a.get_mut(r, j) -= t;
    }
    for r in 0..right.rows() {
        let t = q * right.get(r, k);
        *right.get_mut(r, j) -= t;
    }
}

/// row_i += row_j
fn row_add(a: &mut IntMatrix, left: &mut IntMatrix, i: usize, j: usize) {
    for c in 0..a.cols() {
        let t = a.get(j, c).clone();
        *a.get_mut(i, c) += t;
    }
    for c in 0..left.cols() {
        let t = left.get(j, c).clone();
        *left.get_mut(i, c) += t;
    }
}

fn negate_row(a: &mut IntMatrix, left: &mut IntMatrix, i: usize) {
    for c in 0..a.cols() {
        let t = -a.get(i, c).clone();
        *a.get_mut(i, c) = t;
    }
    for c in 0..left.cols() {
        let t = -left.get(i, c).clone();
        *left.get_mut(i, c) = t;
    }
}

/// A finite abelian group presented by invariant factors, together with the
/// projection of the ambient lattice basis onto it. For a dual graph this is
/// `H = Z^Gamma / Im(-E)`, the divisor class group, and the basis vector
/// `e_sigma` maps to the loop class `h_sigma`.
#[derive(Clone, Debug)]
pub struct FiniteAbelianGroup {
    /// `d_1 | d_2 | ... | d_m`, each >= 1 (trivial factors kept for indexing).
    pub invariant_factors: Vec<BigInt>,
    /// Row transform of the SNF; column sigma gives the coordinates of
    /// `h_sigma` in the `Z/d_1 x ... x Z/d_m` presentation.
    left: IntMatrix,
}

impl FiniteAbelianGroup {
    /// Cokernel presentation from the SNF of a square nonsingular matrix.
    pub fn from_smith(s: &SmithForm) -> Self {
        assert_eq!(s.rows, s.cols, "cokernel of a non-square matrix");
        assert!(
            s.diagonal.iter().all(|d| !d.is_zero()),
            "cokernel is infinite"
        );
        FiniteAbelianGroup {
            invariant_factors: s.diagonal.clone(),
            left: s.left.clone(),
        }
    }

    pub fn order(&self) -> BigInt {
        self.invariant_factors
            .iter()
            .fold(BigInt::one(), |acc, d| acc * d)
    }

    pub fn is_trivial(&self) -> bool {
        self.order().is_one()
    }

    /// Coordinates of `h_sigma` in the invariant-factor presentation,
    /// reduced mod `d_i`.
    pub fn generator_image(&self, sigma: usize) -> Vec<BigInt> {
        (0..self.invariant_factors.len())
            .map(|i| {
                self.left
                    .get(i, sigma)
                    .mod_floor(&self.invariant_factors[i])
            })
            .collect()
    }

    /// Order of `h_sigma` in the group.
    pub fn generator_order(&self, sigma: usize) -> BigInt {
        let img = self.generator_image(sigma);
        let mut ord = BigInt::one();
        for (x, d) in img.iter().zip(&self.invariant_factors) {
            let g = x.gcd(d);
            ord = lcm_big(&ord, &(d / g));
        }
        ord
    }

    /// Invariant factors with the trivial ones dropped, for display.
    pub fn nontrivial_factors(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn snf_1x1() {
        let s = smith_normal_form(&IntMatrix::from_rows(vec![vec![2]]));
        assert_eq!(s.diagonal, vec![BigInt::from(2)]);
    }

    #[test]
    fn snf_identity() {
        let s = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(s.diagonal, vec![BigInt::one(); 3]);
    }

    #[test]
    fn snf_2_3_gives_1_6() {
        // Z/2 + Z/3 = Z/6
        let s = smith_normal_form(&IntMatrix::from_rows(vec![vec![2, 0], vec![0, 3]]));
        assert_eq!(s.diagonal, vec![BigInt::one(), BigInt::from(6)]);
    }

    #[test]
    fn snf_transforms_are_exact() {
        let m = IntMatrix::from_rows(vec![vec![4, 6, 10], vec![2, -2, 8], vec![0, 12, 6]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
        assert_eq!(s.left.determinant().abs(), BigInt::one());
        assert_eq!(s.right.determinant().abs(), BigInt::one());
        // invariant factor product = |det| for nonsingular square input
        let prod: BigInt = s.diagonal.iter().product();
        assert_eq!(prod, m.determinant().abs());
    }

    #[test]
    fn snf_handles_rank_deficiency() {
        let m = IntMatrix::from_rows(vec![vec![2, 4], vec![1, 2]]);
        let s = smith_normal_form(&m);
        assert_eq!(s.diagonal, vec![BigInt::one(), BigInt::zero()]);
        assert_eq!(s.left.mul(&m).mul(&s.right), s.diagonal_matrix());
    }

    #[test]
    fn cokernel_of_a2_chain() {
        // -E = [[2,-1],[-1,2]] has cokernel Z/3
        let m = IntMatrix::from_rows(vec![vec![2, -1], vec![-1, 2]]);
        let g = FiniteAbelianGroup::from_smith(&smith_normal_form(&m));
        assert_eq!(g.order(), BigInt::from(3));
        assert_eq!(g.nontrivial_factors(), vec![BigInt::from(3)]);
        // both generators have order 3
        assert_eq!(g.generator_order(0), BigInt::from(3));
        assert_eq!(g.generator_order(1), BigInt::from(3));
    }

    #[test]
    fn generator_orders_in_z2_z4() {
        // diag(2, 4): e_0 has order 2, e_1 has order 4
        let m = IntMatrix::from_rows(vec![vec![2, 0], vec![0, 4]]);
        let g = FiniteAbelianGroup::from_smith(&smith_normal_form(&m));
        assert_eq!(g.order(), BigInt::from(8));
        assert_eq!(g.generator_order(0), BigInt::from(2));
        assert_eq!(g.generator_order(1), BigInt::from(4));
    }
}
