//! Gaussian elimination over (possibly noncommutative) division rings.
//!
//! A system `A·x = b` with the unknowns on the right is solved with row
//! operations that left-multiply rows. A system `x·A = b` with the unknowns
//! on the left is the same problem in the opposite ring: it is solved on
//! the transpose with right-multiplied rows. Pivots are the first nonzero
//! entry of each column.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::rational::Q;

/// The operations elimination needs. Elements carry their own context (a
/// field handle), so `zero_like`/`one_like` build constants from a sample.
pub trait DivisionRing: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn inverse(&self) -> Option<Self>;
}

impl DivisionRing for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_ref(&self, other: &Self) -> Self {
        self + other
    }
    fn sub_ref(&self, other: &Self) -> Self {
        self - other
    }
    fn mul_ref(&self, other: &Self) -> Self {
        self * other
    }
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// Which side the unknowns sit on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    /// `A·x = b`
    Right,
    /// `x·A = b`
    Left,
}

fn scale<T: DivisionRing>(side: Side, c: &T, v: &T) -> T {
    match side {
        Side::Right => c.mul_ref(v),
        Side::Left => v.mul_ref(c),
    }
}

fn transpose<T: Clone>(m: &[Vec<T>]) -> Vec<Vec<T>> {
    if m.is_empty() {
        return Vec::new();
    }
    let cols = m[0].len();
    (0..cols)
        .map(|j| m.iter().map(|row| row[j].clone()).collect())
        .collect()
}

/// Row-reduces `m` in place; the first `ncols` columns are eligible as pivot
/// columns (extra columns ride along as right-hand sides). Returns the pivot
/// columns, one per nonzero row, in order.
fn rref<T: DivisionRing>(m: &mut [Vec<T>], ncols: usize, side: Side) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        if row >= m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col]
            .inverse()
            .expect("nonzero element of a division ring is invertible");
        let normalized: Vec<T> = m[row].iter().map(|v| scale(side, &inv, v)).collect();
        m[row] = normalized;
        for r in 0..m.len() {
            if r == row || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            let pivot_row = m[row].clone();
            for (entry, p) in m[r].iter_mut().zip(pivot_row.iter()) {
                if p.is_zero() {
                    continue;
                }
                *entry = entry.sub_ref(&scale(side, &factor, p));
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

fn oriented<T: DivisionRing>(a: &[Vec<T>], side: Side) -> Vec<Vec<T>> {
    match side {
        Side::Right => a.to_vec(),
        Side::Left => transpose(a),
    }
}

/// Solves `A·x = b` (`Side::Right`) or `x·A = b` (`Side::Left`). Free
/// variables are set to zero. Returns `None` when inconsistent.
pub fn solve<T: DivisionRing>(a: &[Vec<T>], b: &[T], side: Side) -> Option<Vec<T>> {
    let mut m = oriented(a, side);
    let nvars = match side {
        Side::Right => a.first().map_or(0, |r| r.len()),
        Side::Left => a.len(),
    };
    assert_eq!(m.len(), b.len(), "right-hand side has the wrong length");
    let sample = b.first()?.clone();
    for (row, rhs) in m.iter_mut().zip(b.iter()) {
        row.push(rhs.clone());
    }
    let pivots = rref(&mut m, nvars, side);
    for row in m.iter().skip(pivots.len()) {
        if !row[nvars].is_zero() {
            return None;
        }
    }
    let mut x = alloc::vec![sample.zero_like(); nvars];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][nvars].clone();
    }
    Some(x)
}

/// Basis of the solution space of `A·x = 0` (right vector space) or
/// `x·A = 0` (left vector space).
pub fn kernel<T: DivisionRing>(a: &[Vec<T>], nvars: usize, side: Side) -> Vec<Vec<T>> {
    let mut m = oriented(a, side);
    let Some(sample) = m.iter().flatten().next().cloned() else {
        return Vec::new();
    };
    let pivots = rref(&mut m, nvars, side);
    let mut basis = Vec::new();
    for free in (0..nvars).filter(|c| !pivots.contains(c)) {
        let mut v = alloc::vec![sample.zero_like(); nvars];
        v[free] = sample.one_like();
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = sample.zero_like().sub_ref(&m[r][free]);
        }
        basis.push(v);
    }
    basis
}

pub fn rank<T: DivisionRing>(a: &[Vec<T>]) -> usize {
    let mut m = a.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    rref(&mut m, ncols, Side::Right).len()
}

/// Determinant over a commutative field.
pub fn determinant<T: DivisionRing>(a: &[Vec<T>]) -> Option<T> {
    let n = a.len();
    let sample = a.first()?.first()?.clone();
    let mut m = a.to_vec();
    let mut det = sample.one_like();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return Some(sample.zero_like());
        };
        if p != col {
            m.swap(p, col);
            det = sample.zero_like().sub_ref(&det);
        }
        det = det.mul_ref(&m[col][col]);
        let inv = m[col][col].inverse()?;
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].mul_ref(&inv);
            for c in col..n {
                let sub = factor.mul_ref(&m[col][c]);
                m[r][c] = m[r][c].sub_ref(&sub);
            }
        }
    }
    Some(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use alloc::vec;

    #[test]
    fn solves_rational_system() {
        let a = vec![vec![q(2), q(1)], vec![q(1), q(3)]];
        let b = vec![q(3), q(5)];
        let x = solve(&a, &b, Side::Right).unwrap();
        assert_eq!(x, vec![q_frac(4, 5), q_frac(7, 5)]);
        let y = solve(&a, &b, Side::Left).unwrap();
        // y·A = b
        assert_eq!(&y[0] * q(2) + &y[1] * q(1), q(3));
        assert_eq!(&y[0] * q(1) + &y[1] * q(3), q(5));
    }

    #[test]
    fn detects_inconsistency() {
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(solve(&a, &[q(1), q(3)], Side::Right).is_none());
    }

    #[test]
    fn kernel_and_rank() {
        let a = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]];
        assert_eq!(rank(&a), 1);
        let k = kernel(&a, 3, Side::Right);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: Q = a[0].iter().zip(v).map(|(x, y)| x * y).sum();
            assert!(Zero::is_zero(&s));
        }
    }

    #[test]
    fn determinant_of_small_matrix() {
        let a = vec![vec![q(0), q(2)], vec![q(3), q(4)]];
        assert_eq!(determinant(&a).unwrap(), q(-6));
    }
}
