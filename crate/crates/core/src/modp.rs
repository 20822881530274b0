//! Arithmetic modulo the Mersenne prime `p = 2^61 − 1`, used only for
//! certificates. A square matrix of `p`-integral rationals whose reduction
//! mod `p` is invertible is invertible over `ℚ`, so a full rank found here
//! is a proof; a rank drop proves nothing and the caller falls back to
//! exact arithmetic.

use alloc::vec::Vec;

use dashu_int::Sign;

use crate::rational::Q;

pub(crate) const P: u64 = (1 << 61) - 1;

pub(crate) fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

pub(crate) fn mul(a: u64, b: u64) -> u64 {
    let w = u128::from(a) * u128::from(b);
    // 2^61 ≡ 1, so fold the high bits onto the low ones
    let s = (w as u64 & P) + (w >> 61) as u64;
    if s >= P {
        s - P
    } else {
        s
    }
}

fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

fn inv(a: u64) -> u64 {
    debug_assert!(a != 0);
    pow(a, P - 2)
}

/// Image of `q` in `𝔽_p`, or `None` if `p` divides the denominator.
pub(crate) fn reduce(q: &Q) -> Option<u64> {
    let (n, d) = q.to_parts();
    let d = d % P;
    if d == 0 {
        return None;
    }
    let (sign, mag) = n.into_parts();
    let r = mag % P;
    let r = if sign == Sign::Negative && r != 0 { P - r } else { r };
    Some(mul(r, inv(d)))
}

/// Whether the square matrix is invertible over `𝔽_p`.
pub(crate) fn full_rank(mut rows: Vec<Vec<u64>>) -> bool {
    let n = rows.len();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| rows[r][col] != 0) else {
            return false;
        };
        rows.swap(col, pivot);
        let scale = inv(rows[col][col]);
        let pivot_row: Vec<u64> = rows[col][col..].iter().map(|&x| mul(x, scale)).collect();
        for row in rows.iter_mut().skip(col + 1) {
            let c = row[col];
            if c == 0 {
                continue;
            }
            for (x, &y) in row[col..].iter_mut().zip(&pivot_row) {
                *x = add(*x, P - mul(c, y));
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, q_frac};
    use alloc::vec;

    #[test]
    fn field_operations() {
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(mul(inv(12345), 12345), 1);
        assert_eq!(reduce(&q(-1)), Some(P - 1));
        assert_eq!(mul(reduce(&q_frac(2, 3)).unwrap(), 3), 2);
        assert_eq!(reduce(&q_frac(1, (1 << 61) - 1)), None);
    }

    #[test]
    fn rank() {
        assert!(full_rank(vec![vec![1, 2], vec![3, 4]]));
        assert!(!full_rank(vec![vec![1, 2], vec![2, 4]]));
        assert!(!full_rank(vec![vec![0, 1], vec![0, 5]]));
    }
}
