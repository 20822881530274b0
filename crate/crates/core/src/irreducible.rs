//! Irreducibility over `ℚ` for polynomials of small degree.
//!
//! Factor-degree patterns modulo small primes prune the candidate degrees of
//! a rational factor; the survivors are settled by Kronecker's interpolation
//! search.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::rational::{primitive_integer_vector, Q};
use crate::upoly::QPoly;
use crate::MAX_IRREDUCIBLE_DEGREE;

const PRIMES: [u64; 24] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
];

/// Decides irreducibility of `f` over `ℚ` for `1 ≤ deg f ≤ 8`.
pub fn is_irreducible_over_q(f: &QPoly) -> Result<bool> {
    let n = f.degree().ok_or(Error::InvalidDescriptor("zero polynomial".into()))?;
    if n > MAX_IRREDUCIBLE_DEGREE {
        return Err(Error::CapExceeded {
            what: "polynomial degree",
            cap: MAX_IRREDUCIBLE_DEGREE,
        });
    }
    if n == 0 {
        return Ok(false);
    }
    if n == 1 {
        return Ok(true);
    }
    let ints = primitive_integer_vector(f.coeffs());
    if ints[0].is_zero() {
        return Ok(false);
    }
    let g = f.gcd(&f.derivative());
    if g.degree() != Some(0) {
        return Ok(false);
    }

    let mut candidates: Vec<bool> = vec![true; n / 2 + 1];
    candidates[0] = false;
    for &p in PRIMES.iter() {
        let Some(fp) = reduce_mod_p(&ints, p) else { continue };
        let Some(pattern) = factor_degrees_mod_p(&fp, p) else { continue };
        if pattern.len() == 1 {
            return Ok(true);
        }
        let sums = subset_sums(&pattern, n);
        for (e, c) in candidates.iter_mut().enumerate() {
            if !sums[e] {
                *c = false;
            }
        }
        if !candidates.iter().any(|&c| c) {
            return Ok(true);
        }
    }
    for e in 1..=n / 2 {
        if candidates[e] && kronecker_has_factor(&ints, e) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subset_sums(parts: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in parts {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn reduce_mod_p(ints: &[BigInt], p: u64) -> Option<Vec<u64>> {
    let pb = BigInt::from(p);
    let v: Vec<u64> = ints
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().unwrap())
        .collect();
    if *v.last()? == 0 {
        return None;
    }
    Some(v)
}

// ---- polynomials over F_p, ascending coefficients ----

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pmul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

fn pdivrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    let inv = inv_mod(b[db], p);
    let mut r = a.to_vec();
    trim(&mut r);
    let mut q = vec![0u64; r.len().saturating_sub(db)];
    while r.len() > db {
        let top = r.len() - 1;
        let c = r[top] * inv % p;
        for (j, &bj) in b.iter().enumerate() {
            let idx = top - db + j;
            r[idx] = (r[idx] + p - c * bj % p) % p;
        }
        q[top - db] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

fn pgcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut x, mut y) = (a.to_vec(), b.to_vec());
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let r = pdivrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    x
}

fn pderiv(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| (i as u64 % p) * c % p)
        .collect();
    trim(&mut out);
    out
}

fn ppowmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = pdivrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = pdivrem(&pmul(&result, &b, p), m, p).1;
        }
        b = pdivrem(&pmul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

/// Degrees of the irreducible factors of a squarefree `f` over `F_p`;
/// `None` when `f` is not squarefree modulo `p`.
fn factor_degrees_mod_p(f: &[u64], p: u64) -> Option<Vec<usize>> {
    let g = pgcd(f, &pderiv(f, p), p);
    if g.len() != 1 {
        return None;
    }
    let mut rest = f.to_vec();
    let mut degrees = Vec::new();
    let x = vec![0u64, 1];
    let mut h = x.clone();
    let mut i = 1usize;
    while rest.len() > 2 * i {
        h = ppowmod(&h, p, &rest, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        trim(&mut diff);
        let g = pgcd(&rest, &diff, p);
        let dg = g.len() - 1;
        if dg > 0 {
            for _ in 0..dg / i {
                degrees.push(i);
            }
            rest = pdivrem(&rest, &g, p).0;
            h = pdivrem(&h, &rest, p).1;
        }
        i += 1;
    }
    if rest.len() > 1 {
        degrees.push(rest.len() - 1);
    }
    Some(degrees)
}

// ---- Kronecker ----

fn eval_int(ints: &[BigInt], a: i64) -> BigInt {
    let a = BigInt::from(a);
    ints.iter().rev().fold(BigInt::zero(), |acc, c| acc * &a + c)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let mut m = n.abs().to_u64()?;
    if m > 1_000_000_000_000 {
        return None;
    }
    let mut primes: Vec<(u64, u32)> = Vec::new();
    let mut d = 2u64;
    while d * d <= m {
        let mut e = 0;
        while m % d == 0 {
            m /= d;
            e += 1;
        }
        if e > 0 {
            primes.push((d, e));
        }
        d += 1;
    }
    if m > 1 {
        primes.push((m, 1));
    }
    let mut divs = vec![1u64];
    for (pr, e) in primes {
        let mut next = Vec::new();
        for &dv in &divs {
            let mut x = dv;
            for _ in 0..=e {
                next.push(x);
                x *= pr;
            }
        }
        divs = next;
    }
    divs.sort_unstable();
    Some(divs.into_iter().map(BigInt::from).collect())
}

fn interpolate(xs: &[i64], ys: &[BigInt]) -> QPoly {
    let mut result = QPoly::zero();
    for (i, &xi) in xs.iter().enumerate() {
        let mut basis = QPoly::one();
        let mut denom = Q::one();
        for (j, &xj) in xs.iter().enumerate() {
            if i != j {
                basis = basis.mul(&QPoly::from_ints(&[-xj, 1]));
                denom *= Q::from_integer(BigInt::from(xi - xj));
            }
        }
        let c = Q::from_integer(ys[i].clone()) / denom;
        result = result.add(&basis.scale(&c));
    }
    result
}

fn kronecker_has_factor(ints: &[BigInt], e: usize) -> bool {
    let f = QPoly::from_bigints(ints);
    let mut points: Vec<(usize, i64, Vec<BigInt>)> = Vec::new();
    for a in -24i64..=24 {
        let v = eval_int(ints, a);
        if v.is_zero() {
            return true;
        }
        if let Some(d) = divisors(&v) {
            points.push((d.len(), a, d));
        }
    }
    if points.len() < e + 1 {
        // not expected for degree <= 8 polynomials; report no factor found
        return false;
    }
    points.sort_by_key(|(count, a, _)| (*count, a.abs()));
    let chosen = &points[..=e];
    let xs: Vec<i64> = chosen.iter().map(|(_, a, _)| *a).collect();
    let mut idx = vec![0usize; e + 1];
    let mut signs = vec![false; e + 1];
    loop {
        let ys: Vec<BigInt> = (0..=e)
            .map(|i| {
                let d = chosen[i].2[idx[i]].clone();
                if signs[i] {
                    -d
                } else {
                    d
                }
            })
            .collect();
        let g = interpolate(&xs, &ys);
        if g.degree() == Some(e) && g.coeffs().iter().all(|c| c.is_integer()) {
            let (_, r) = f.divrem(&g);
            if r.is_zero() {
                return true;
            }
        }
        // advance the mixed-radix counter; the first sign stays positive
        let mut pos = 0;
        loop {
            if pos > e {
                return false;
            }
            if pos > 0 && !signs[pos] {
                signs[pos] = true;
                break;
            }
            signs[pos] = false;
            idx[pos] += 1;
            if idx[pos] < chosen[pos].2.len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Content-free integer polynomial with positive leading coefficient.
pub fn primitive_part(f: &QPoly) -> Vec<BigInt> {
    let mut v = primitive_integer_vector(f.coeffs());
    if v.last().is_some_and(|c| c.is_negative()) {
        for c in v.iter_mut() {
            *c = -&*c;
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn irr(c: &[i64]) -> bool {
        is_irreducible_over_q(&QPoly::from_ints(c)).unwrap()
    }

    #[test]
    fn classic_cases() {
        assert!(irr(&[1, 0, 1]));
        assert!(!irr(&[-1, 0, 1]));
        assert!(irr(&[1, 0, 0, 0, 1])); // x^4 + 1 splits mod every prime
        assert!(!irr(&[4, 0, 0, 0, 1])); // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(irr(&[1, -2, -1, 1])); // simplest cubic at s = 1
        assert!(!irr(&[1, 0, 2, 0, 1])); // (x^2+1)^2
        assert!(irr(&[1, 1, 1, 1, 1, 1, 1])); // 7th cyclotomic
        assert!(!irr(&[1, 0, 0, 0, 0, 0, 0, 0, -1]));
    }

    #[test]
    fn degree_cap() {
        let f = QPoly::from_ints(&[1, 0, 0, 0, 0, 0, 0, 0, 0, 1]);
        assert!(matches!(
            is_irreducible_over_q(&f),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn products_of_quadratics_are_found() {
        // (x^2 + x + 1)(x^2 - 3) and (x^2+1)(x^2+2)(x^2+3)(x^2+5)
        let a = QPoly::from_ints(&[1, 1, 1]).mul(&QPoly::from_ints(&[-3, 0, 1]));
        assert!(!is_irreducible_over_q(&a).unwrap());
        let b = [1, 2, 3, 5]
            .iter()
            .fold(QPoly::one(), |acc, &c| acc.mul(&QPoly::from_ints(&[c, 0, 1])));
        assert!(!is_irreducible_over_q(&b).unwrap());
    }
}
