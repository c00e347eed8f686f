//! Integer partitions: enumeration, transposition, dominance, rim hooks and
//! the parity collapses used for classical nilpotent orbits.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use alloc::format;

/// A partition stored as a weakly decreasing list of positive parts.
pub type Partition = Vec<u32>;

pub fn normalize(mut p: Vec<u32>) -> Partition {
    p.retain(|x| *x > 0);
    p.sort_unstable_by(|a, b| b.cmp(a));
    p
}

pub fn size(p: &[u32]) -> u32 {
    p.iter().sum()
}

/// All partitions of `n`, in reverse lexicographic order (`[n]` first).
pub fn partitions(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for part in (1..=max.min(n)).rev() {
            cur.push(part);
            rec(n - part, part, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

pub fn transpose(p: &[u32]) -> Partition {
    let Some(&first) = p.first() else {
        return Vec::new();
    };
    (1..=first).map(|i| p.iter().filter(|x| **x >= i).count() as u32).collect()
}

/// `a >= b` in the dominance order (same size assumed).
pub fn dominates(a: &[u32], b: &[u32]) -> bool {
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0u32, 0u32);
    for i in 0..len {
        sa += a.get(i).copied().unwrap_or(0);
        sb += b.get(i).copied().unwrap_or(0);
        if sa < sb {
            return false;
        }
    }
    true
}

/// `n(λ) = Σ (i-1) λ_i`.
pub fn n_invariant(p: &[u32]) -> u32 {
    p.iter().enumerate().map(|(i, x)| i as u32 * x).sum()
}

pub fn multiplicity(p: &[u32], part: u32) -> usize {
    p.iter().filter(|x| **x == part).count()
}

/// All partitions obtained by removing a rim hook of length `k`, with the
/// sign `(-1)^{height}`.
pub fn remove_rim_hooks(p: &[u32], k: u32) -> Vec<(Partition, i128)> {
    // beta numbers: λ_i + (len - i - 1), strictly decreasing
    let len = p.len();
    let beta: Vec<i64> = p
        .iter()
        .enumerate()
        .map(|(i, x)| *x as i64 + (len - i - 1) as i64)
        .collect();
    let mut out = Vec::new();
    for (i, b) in beta.iter().enumerate() {
        let nb = b - k as i64;
        if nb < 0 || beta.contains(&nb) {
            continue;
        }
        let between = beta.iter().filter(|x| **x > nb && **x < *b).count();
        let mut newbeta = beta.clone();
        newbeta[i] = nb;
        newbeta.sort_unstable_by(|a, b| b.cmp(a));
        let parts: Vec<u32> = newbeta
            .iter()
            .enumerate()
            .map(|(j, x)| (x - (len - j - 1) as i64) as u32)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        out.push((normalize(parts), sign));
    }
    out
}

/// Classical family attached to a partition parity rule.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Parity {
    /// `sl_n`: no constraint.
    A,
    /// `so_{2n+1}`: even parts with even multiplicity.
    B,
    /// `sp_{2n}`: odd parts with even multiplicity.
    C,
    /// `so_{2n}`: even parts with even multiplicity.
    D,
}

pub fn satisfies(p: &[u32], parity: Parity) -> bool {
    let bad = |par: u32| p.iter().any(|x| x % 2 == par && multiplicity(p, *x) % 2 == 1);
    match parity {
        Parity::A => true,
        Parity::B | Parity::D => !bad(0),
        Parity::C => !bad(1),
    }
}

fn size_ok(n: u32, parity: Parity) -> bool {
    match parity {
        Parity::A => true,
        Parity::B => n % 2 == 1,
        Parity::C | Parity::D => n % 2 == 0,
    }
}

/// The largest partition dominated by `p` satisfying the parity rule.
pub fn collapse(p: &[u32], parity: Parity) -> Result<Partition> {
    let n = size(p);
    if !size_ok(n, parity) {
        return Err(Error::NoValidCollapse(format!("{p:?} has the wrong size for {parity:?}")));
    }
    let bad_parity = match parity {
        Parity::A => return Ok(normalize(p.to_vec())),
        Parity::B | Parity::D => 0,
        Parity::C => 1,
    };
    let mut cur = normalize(p.to_vec());
    loop {
        let q = cur
            .iter()
            .copied()
            .filter(|x| x % 2 == bad_parity && multiplicity(&cur, *x) % 2 == 1)
            .max();
        let Some(q) = q else {
            return Ok(cur);
        };
        let last = cur.iter().rposition(|x| *x == q).unwrap();
        cur[last] -= 1;
        match cur.iter().position(|x| *x < q - 1) {
            Some(j) if j > last => cur[j] += 1,
            _ => cur.push(1),
        }
        cur = normalize(cur);
    }
}

/// Brute-force version of [`collapse`]: scan every partition of the same
/// size. Used as an independent check.
pub fn collapse_bruteforce(p: &[u32], parity: Parity) -> Option<Partition> {
    let n = size(p);
    let cands: Vec<Partition> = partitions(n)
        .into_iter()
        .filter(|c| satisfies(c, parity) && dominates(p, c))
        .collect();
    cands
        .iter()
        .find(|c| cands.iter().all(|d| dominates(c, d)))
        .cloned()
}

pub fn parts_display(p: &[u32]) -> alloc::string::String {
    let v: Vec<alloc::string::String> = p.iter().map(|x| format!("{x}")).collect();
    v.join(",")
}

pub fn parse_parts(s: &str) -> Result<Partition> {
    let s = s.trim().trim_start_matches('[').trim_end_matches(']');
    if s.is_empty() || s == "-" {
        return Ok(vec![]);
    }
    let mut out = Vec::new();
    for tok in s.split(',') {
        let t = tok.trim();
        let v: u32 = t.parse().map_err(|_| Error::Parse(format!("bad part '{t}'")))?;
        out.push(v);
    }
    Ok(normalize(out))
}
