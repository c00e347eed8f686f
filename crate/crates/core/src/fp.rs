//! Dense univariate polynomials over a prime field `F_p`, low-to-high.

use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{mulmod, powmod};

pub fn inv(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

pub fn trim(a: &mut Vec<u64>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub fn deg(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|c| *c != 0)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == 0 {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(*x, *y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = deg(b).expect("division by zero polynomial");
    let lead = inv(b[db], p);
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u64; r.len() - db];
    while let Some(dr) = deg(&r) {
        if dr < db {
            break;
        }
        let c = mulmod(r[dr], lead, p);
        q[dr - db] = c;
        for (i, y) in b.iter().enumerate().take(db + 1) {
            let s = mulmod(c, *y, p);
            r[dr - db + i] = (r[dr - db + i] + p - s) % p;
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
    match deg(a) {
        Some(d) => {
            let l = inv(a[d], p);
            a[..=d].iter().map(|c| mulmod(*c, l, p)).collect()
        }
        None => Vec::new(),
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(&a, p)
}

pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, c)| mulmod(*c, i as u64 % p, p)).collect();
    trim(&mut out);
    out
}

/// `base^e mod m`.
pub fn powmod_poly(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = divrem(base, m, p).1;
    while e > 0 {
        if e & 1 == 1 {
            result = divrem(&mul(&result, &b, p), m, p).1;
        }
        b = divrem(&mul(&b, &b, p), m, p).1;
        e >>= 1;
    }
    result
}

/// Whether every root of the squarefree `h` lies in `F_p`.
pub fn splits(h: &[u64], p: u64) -> bool {
    if deg(h).unwrap_or(0) == 0 {
        return true;
    }
    let mut yp = powmod_poly(&[0, 1], p, h, p);
    // y^p - y ≡ 0 mod h
    if yp.len() < 2 {
        yp.resize(2, 0);
    }
    yp[1] = (yp[1] + p - 1) % p;
    divrem(&yp, h, p).1.is_empty()
}

/// Roots of a squarefree polynomial that splits into linear factors.
pub fn roots(h: &[u64], p: u64) -> Vec<u64> {
    let h = monic(h, p);
    match deg(&h) {
        None | Some(0) => Vec::new(),
        Some(1) => vec![(p - h[0]) % p],
        Some(d) => {
            for a in 1u64.. {
                let mut g = powmod_poly(&[a % p, 1], (p - 1) / 2, &h, p);
                if g.is_empty() {
                    g.push(0);
                }
                g[0] = (g[0] + p - 1) % p;
                trim(&mut g);
                let f = gcd(&h, &g, p);
                let df = deg(&f).unwrap_or(0);
                if df > 0 && df < d {
                    let (q, _) = divrem(&h, &f, p);
                    let mut out = roots(&f, p);
                    out.extend(roots(&q, p));
                    return out;
                }
            }
            unreachable!()
        }
    }
}

/// Multiplicity of the root `r` in `a`.
pub fn root_multiplicity(a: &[u64], r: u64, p: u64) -> usize {
    let lin = [(p - r) % p, 1];
    let mut cur = a.to_vec();
    trim(&mut cur);
    let mut m = 0;
    while !cur.is_empty() {
        let (q, rem) = divrem(&cur, &lin, p);
        if !rem.is_empty() {
            break;
        }
        cur = q;
        m += 1;
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u64 = 1_000_000_007;

    #[test]
    fn roots_of_split_polynomial() {
        // (y - 2)(y - 5)(y + 3)
        let h = mul(&mul(&[P - 2, 1], &[P - 5, 1], P), &[3, 1], P);
        assert!(splits(&h, P));
        let mut r = roots(&h, P);
        r.sort();
        assert_eq!(r, vec![2, 5, P - 3]);
        assert_eq!(root_multiplicity(&mul(&h, &[P - 2, 1], P), 2, P), 2);
    }

    #[test]
    fn irreducible_quadratic_does_not_split() {
        // y^2 + 1 is irreducible when p ≡ 3 mod 4
        assert!(!splits(&[1, 0, 1], 1_000_000_007));
        assert_eq!(gcd(&[P - 1, 0, 1], &[P - 1, 1], P), vec![P - 1, 1]);
    }
}
