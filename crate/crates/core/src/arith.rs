//! Exact scalar, polynomial and matrix helpers shared by every module.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

pub type Q = Ratio<i128>;

pub fn q(n: i128) -> Q {
    Q::from_integer(n)
}

/// A commutative ring with the operations division-free algorithms need.
pub trait Ring: Clone {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self {
        self.zero_like().sub(self)
    }
}

impl Ring for i128 {
    fn zero_like(&self) -> Self {
        0
    }
    fn one_like(&self) -> Self {
        1
    }
    fn add(&self, o: &Self) -> Self {
        self.checked_add(*o).expect("i128 overflow")
    }
    fn sub(&self, o: &Self) -> Self {
        self.checked_sub(*o).expect("i128 overflow")
    }
    fn mul(&self, o: &Self) -> Self {
        self.checked_mul(*o).expect("i128 overflow")
    }
}

impl Ring for Q {
    fn zero_like(&self) -> Self {
        Q::zero()
    }
    fn one_like(&self) -> Self {
        Q::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// Characteristic polynomial `det(x·I − A)` by Berkowitz's division-free
/// algorithm. Coefficients are returned from `x^n` down to `x^0`.
pub fn berkowitz<R: Ring>(a: &[Vec<R>]) -> Vec<R> {
    let n = a.len();
    assert!(n > 0, "empty matrix");
    let one = a[0][0].one_like();
    let mut c = vec![one.clone(), a[0][0].neg()];
    for r in 1..n {
        // column of the Toeplitz matrix: 1, -a_rr, -R S, -R A S, ...
        let s: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        let row: Vec<R> = (0..r).map(|j| a[r][j].clone()).collect();
        let mut col = Vec::with_capacity(r + 2);
        col.push(one.clone());
        col.push(a[r][r].neg());
        let mut v = s;
        for _ in 0..r {
            let dot = row
                .iter()
                .zip(&v)
                .fold(one.zero_like(), |acc, (x, y)| acc.add(&x.mul(y)));
            col.push(dot.neg());
            v = (0..r)
                .map(|i| (0..r).fold(one.zero_like(), |acc, k| acc.add(&a[i][k].mul(&v[k]))))
                .collect();
        }
        let mut next = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = one.zero_like();
            for (j, cj) in c.iter().enumerate() {
                if i >= j && i - j < col.len() {
                    acc = acc.add(&col[i - j].mul(cj));
                }
            }
            next.push(acc);
        }
        c = next;
    }
    c
}

/// Determinant from the constant term of the characteristic polynomial.
pub fn det<R: Ring>(a: &[Vec<R>]) -> R {
    let n = a.len();
    let c = berkowitz(a);
    if n % 2 == 0 {
        c[n].clone()
    } else {
        c[n].neg()
    }
}

/// Inverse of a square rational matrix, `None` when singular.
pub fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a rational matrix.
pub fn rank(m: &[Vec<Q>]) -> usize {
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut rank = 0;
    for col in 0..cols {
        let Some(piv) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, piv);
        for r in rank + 1..rows {
            if !a[r][col].is_zero() {
                let f = a[r][col] / a[rank][col];
                let pr = a[rank].clone();
                for (x, y) in a[r].iter_mut().zip(pr) {
                    *x -= f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// Dense univariate polynomials, coefficient `i` multiplies `x^i`.

pub fn poly_trim<T: Zero>(p: &mut Vec<T>) {
    while p.len() > 1 && p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub fn ipoly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    if a.is_empty() || b.is_empty() {
        return vec![0];
    }
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

/// Exact division `a / b` over the integers; `None` if the remainder is
/// nonzero or the quotient is not integral.
pub fn ipoly_divexact(a: &[i128], b: &[i128]) -> Option<Vec<i128>> {
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let mut rem = a.to_vec();
    poly_trim(&mut rem);
    let db = b.len() - 1;
    let lead = *b.last()?;
    if lead == 0 {
        return None;
    }
    if rem.len() < b.len() {
        return if rem.iter().all(|c| *c == 0) { Some(vec![0]) } else { None };
    }
    let mut quot = vec![0i128; rem.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        if c % lead != 0 {
            return None;
        }
        let f = c / lead;
        quot[i] = f;
        for (j, bj) in b.iter().enumerate() {
            rem[i + j] = rem[i + j].sub(&f.mul(bj));
        }
    }
    if rem.iter().any(|c| *c != 0) {
        return None;
    }
    Some(quot)
}

pub fn qpoly_from_int(p: &[i128]) -> Vec<Q> {
    p.iter().map(|c| q(*c)).collect()
}

pub fn qpoly_derivative(p: &[Q]) -> Vec<Q> {
    if p.len() <= 1 {
        return vec![Q::zero()];
    }
    p.iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * q(i as i128))
        .collect()
}

fn qpoly_rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let mut b = b.to_vec();
    poly_trim(&mut b);
    let db = b.len() - 1;
    let lead = b[db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let shift = r.len() - 1 - db;
        let f = r[r.len() - 1] / lead;
        for (j, bj) in b.iter().enumerate() {
            r[shift + j] -= f * bj;
        }
        r.pop();
        poly_trim(&mut r);
        if r.len() <= db {
            break;
        }
    }
    if r.is_empty() {
        r.push(Q::zero());
    }
    r
}

/// Monic gcd over the rationals.
pub fn qpoly_gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    poly_trim(&mut x);
    poly_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let r = qpoly_rem(&x, &y);
        x = y;
        y = r;
    }
    let lead = *x.last().unwrap();
    if lead.is_zero() {
        return x;
    }
    x.iter().map(|c| c / lead).collect()
}

/// True when the polynomial has no repeated root over an algebraic closure.
pub fn qpoly_squarefree(p: &[Q]) -> bool {
    let mut p = p.to_vec();
    poly_trim(&mut p);
    if p.len() <= 2 {
        return true;
    }
    qpoly_gcd(&p, &qpoly_derivative(&p)).len() == 1
}

// ---------------------------------------------------------------------------
// Arithmetic modulo word-sized primes.

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    r
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `count` largest primes below `2^61`.
pub fn large_primes(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut c = (1u64 << 61) - 1;
    while out.len() < count {
        if is_prime_u64(c) {
            out.push(c);
        }
        c -= 2;
    }
    out
}

pub fn to_mod(x: i128, m: u64) -> u64 {
    x.rem_euclid(m as i128) as u64
}

pub fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

pub fn abs_q(x: &Q) -> Q {
    x.abs()
}

/// Smallest integer `>= x`.
pub fn ceil_q(x: &Q) -> i128 {
    x.ceil().to_integer()
}

/// Largest integer `<= x`.
pub fn floor_q(x: &Q) -> i128 {
    x.floor().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn berkowitz_matches_known_charpoly() {
        // [[2,1],[1,2]] has charpoly x^2 - 4x + 3
        let a = vec![vec![2i128, 1], vec![1, 2]];
        assert_eq!(berkowitz(&a), vec![1, -4, 3]);
        let b = vec![vec![0i128, 1, 0], vec![0, 0, 1], vec![6, -11, 6]];
        // companion matrix of x^3 - 6x^2 + 11x - 6
        assert_eq!(berkowitz(&b), vec![1, -6, 11, -6]);
        assert_eq!(det(&b), 6);
    }

    #[test]
    fn exact_division_and_gcd() {
        let a = ipoly_mul(&[1, 1], &[-1, 1]);
        assert_eq!(ipoly_divexact(&a, &[1, 1]), Some(vec![-1, 1]));
        assert_eq!(ipoly_divexact(&a, &[2, 1]), None);
        let sq = qpoly_from_int(&ipoly_mul(&[1, 1], &[1, 1]));
        assert!(!qpoly_squarefree(&sq));
        assert!(qpoly_squarefree(&qpoly_from_int(&[-2, 0, 1])));
    }

    #[test]
    fn primes_are_prime() {
        let ps = large_primes(3);
        assert_eq!(ps[0], (1u64 << 61) - 1);
        assert!(ps.iter().all(|p| is_prime_u64(*p)));
        assert!(!is_prime_u64(561));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![q(2), q(1)], vec![q(1), q(1)]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![q(1), q(-1)], vec![q(-1), q(2)]]);
        assert_eq!(rank(&m), 2);
    }
}
