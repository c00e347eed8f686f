//! Polynomials in `t` truncated modulo `t^K`, with integer coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::arith::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TPoly {
    coeffs: Vec<i128>,
}

impl TPoly {
    pub fn zero(k: usize) -> Self {
        TPoly { coeffs: vec![0; k] }
    }

    pub fn constant(c: i128, k: usize) -> Self {
        let mut p = Self::zero(k);
        if k > 0 {
            p.coeffs[0] = c;
        }
        p
    }

    /// `c·t^e`, zero when `e >= K`.
    pub fn monomial(c: i128, e: usize, k: usize) -> Self {
        let mut p = Self::zero(k);
        if e < k {
            p.coeffs[e] = c;
        }
        p
    }

    pub fn from_coeffs(mut coeffs: Vec<i128>, k: usize) -> Self {
        coeffs.resize(k, 0);
        TPoly { coeffs }
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    pub fn coeff(&self, e: usize) -> i128 {
        self.coeffs.get(e).copied().unwrap_or(0)
    }

    pub fn set_coeff(&mut self, e: usize, c: i128) {
        if e < self.coeffs.len() {
            self.coeffs[e] = c;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| *c == 0)
    }

    /// `t`-adic valuation; `None` when the element is zero modulo `t^K`.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| *c != 0)
    }

    pub fn truncate(&self, k: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().copied().take(k).collect(), k)
    }

    pub fn scale(&self, c: i128) -> Self {
        TPoly { coeffs: self.coeffs.iter().map(|x| x.mul(&c)).collect() }
    }

    /// Multiply by `t^e`.
    pub fn shift(&self, e: usize) -> Self {
        let k = self.precision();
        let mut out = Self::zero(k);
        for i in 0..k.saturating_sub(e) {
            out.coeffs[i + e] = self.coeffs[i];
        }
        out
    }

    /// Sum of absolute values of the coefficients, as a float bound.
    pub fn l1_norm(&self) -> u128 {
        self.coeffs.iter().fold(0u128, |a, c| a.saturating_add(c.unsigned_abs()))
    }
}

impl Ring for TPoly {
    fn zero_like(&self) -> Self {
        TPoly::zero(self.precision())
    }
    fn one_like(&self) -> Self {
        TPoly::constant(1, self.precision())
    }
    fn add(&self, o: &Self) -> Self {
        TPoly { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect() }
    }
    fn sub(&self, o: &Self) -> Self {
        TPoly { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let k = self.precision().min(o.precision());
        let mut out = vec![0i128; k];
        for (i, a) in self.coeffs.iter().enumerate().take(k) {
            if *a == 0 {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(k - i) {
                if *b != 0 {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        TPoly { coeffs: out }
    }
}

impl fmt::Debug for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if *c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}t")?,
                _ => write!(f, "{c}t^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " (mod t^{})", self.precision())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn truncated_product_drops_high_terms() {
        let a = TPoly::from_coeffs(vec![1, 1], 3);
        let sq = a.mul(&a).mul(&a);
        assert_eq!(sq.coeffs(), &[1, 3, 3]);
        assert_eq!(TPoly::monomial(5, 2, 4).valuation(), Some(2));
        assert_eq!(TPoly::zero(4).valuation(), None);
        assert_eq!(a.shift(2).coeffs(), &[0, 0, 1]);
    }
}
