//! Root systems in integer ambient coordinates, Langlands duality, the
//! extended Dynkin diagram, parahorics and their facet points.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{One, Zero};

use crate::arith::{gcd_i128, q, Q};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    B,
    C,
    D,
    G,
    F,
}

impl Family {
    pub fn dual(self) -> Family {
        match self {
            Family::B => Family::C,
            Family::C => Family::B,
            f => f,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Family::A | Family::B | Family::C | Family::D)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Self {
        CartanType { family, rank }
    }

    pub fn is_supported(&self) -> bool {
        let r = self.rank;
        match self.family {
            Family::A => (1..=6).contains(&r),
            Family::B | Family::C => (2..=4).contains(&r),
            Family::D => (4..=5).contains(&r),
            Family::G => r == 2,
            Family::F => r == 4,
        }
    }

    pub fn parse(s: &str) -> Result<CartanType> {
        let s = s.trim();
        let mut chars = s.chars();
        let fam = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('G') => Family::G,
            Some('F') => Family::F,
            _ => return Err(Error::UnsupportedType(s.into())),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| Error::UnsupportedType(s.into()))?;
        let t = CartanType::new(fam, rank);
        if !t.is_supported() {
            return Err(Error::UnsupportedType(s.into()));
        }
        Ok(t)
    }

    /// Degrees of the fundamental invariants.
    pub fn degrees(&self) -> Vec<u32> {
        let n = self.rank as u32;
        match self.family {
            Family::A => (2..=n + 1).collect(),
            Family::B | Family::C => (1..=n).map(|i| 2 * i).collect(),
            Family::D => {
                let mut d: Vec<u32> = (1..n).map(|i| 2 * i).collect();
                d.push(n);
                d.sort_unstable();
                d
            }
            Family::G => vec![2, 6],
            Family::F => vec![2, 6, 8, 12],
        }
    }

    /// Simple roots in the standard ambient lattice, Bourbaki order.
    fn simple_ambient(&self) -> Vec<Vec<i64>> {
        let n = self.rank;
        let e = |dim: usize, i: usize| {
            let mut v = vec![0i64; dim];
            v[i] = 1;
            v
        };
        let diff = |dim: usize, i: usize| {
            let mut v = vec![0i64; dim];
            v[i] = 1;
            v[i + 1] = -1;
            v
        };
        match self.family {
            Family::A => (0..n).map(|i| diff(n + 1, i)).collect(),
            Family::B | Family::C | Family::D => {
                let mut s: Vec<Vec<i64>> = (0..n - 1).map(|i| diff(n, i)).collect();
                s.push(match self.family {
                    Family::B => e(n, n - 1),
                    Family::C => e(n, n - 1).iter().map(|x| 2 * x).collect(),
                    _ => {
                        let mut v = e(n, n - 1);
                        v[n - 2] = 1;
                        v
                    }
                });
                s
            }
            Family::G => vec![vec![1, -1, 0], vec![-2, 1, 1]],
            Family::F => vec![vec![0, 2, -2, 0], vec![0, 0, 2, -2], vec![0, 0, 0, 2], vec![1, -1, -1, -1]],
        }
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// A finite crystallographic root system with a chosen base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    pub ty: CartanType,
    /// Simple roots in ambient coordinates.
    pub simple: Vec<Vec<i64>>,
    /// `cartan[i][j] = <α_j, α_i^∨>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots in simple-root coordinates, sorted by height.
    pub positive: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.ty.degrees()
    }

    pub fn weyl_order(&self) -> u64 {
        self.degrees().iter().map(|d| *d as u64).product()
    }

    /// All roots: positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut out = self.positive.clone();
        out.extend(self.positive.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        out
    }

    pub fn ambient(&self, coords: &[i64]) -> Vec<i64> {
        let dim = self.simple[0].len();
        let mut v = vec![0i64; dim];
        for (c, s) in coords.iter().zip(&self.simple) {
            for (vi, si) in v.iter_mut().zip(s) {
                *vi += c * si;
            }
        }
        v
    }

    pub fn ambient_dim(&self) -> usize {
        self.simple[0].len()
    }

    pub fn norm2(&self, coords: &[i64]) -> i64 {
        let v = self.ambient(coords);
        dot(&v, &v)
    }

    /// `<β, α_i^∨>` for `β` in simple coordinates.
    pub fn pair_simple_coroot(&self, beta: &[i64], i: usize) -> i64 {
        beta.iter().enumerate().map(|(j, b)| b * self.cartan[i][j]).sum()
    }

    pub fn highest_root(&self) -> Vec<i64> {
        self.positive.last().cloned().expect("nonempty root system")
    }

    pub fn marks(&self) -> Vec<i64> {
        self.highest_root()
    }

    pub fn max_norm(&self) -> i64 {
        (0..self.rank()).map(|i| self.norm2(&unit(self.rank(), i))).max().unwrap_or(0)
    }

    pub fn is_long(&self, coords: &[i64]) -> bool {
        self.norm2(coords) == self.max_norm()
    }

    pub fn simply_laced(&self) -> bool {
        (0..self.rank()).all(|i| self.norm2(&unit(self.rank(), i)) == self.max_norm())
    }

    /// Coroot of `β` (simple coordinates) as a rational ambient vector.
    pub fn coroot_ambient(&self, coords: &[i64]) -> Vec<Q> {
        let v = self.ambient(coords);
        let n = dot(&v, &v) as i128;
        v.iter().map(|x| Q::new(2 * *x as i128, n)).collect()
    }

    /// Index of a root (simple coordinates) in [`RootDatum::roots`].
    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        if let Some(i) = self.positive.iter().position(|r| r == coords) {
            return Some(i);
        }
        let neg: Vec<i64> = coords.iter().map(|c| -c).collect();
        self.positive.iter().position(|r| *r == neg).map(|i| i + self.positive.len())
    }

    pub fn is_root(&self, coords: &[i64]) -> bool {
        self.root_index(coords).is_some()
    }

    /// Dimension of the Lie algebra.
    pub fn dim_g(&self) -> usize {
        self.rank() + 2 * self.num_positive()
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0i64; n];
    v[i] = 1;
    v
}

fn from_simple(ty: CartanType, simple: Vec<Vec<i64>>) -> RootDatum {
    let r = simple.len();
    let cartan: Vec<Vec<i64>> = (0..r)
        .map(|i| {
            let ni = dot(&simple[i], &simple[i]);
            (0..r).map(|j| 2 * dot(&simple[j], &simple[i]) / ni).collect()
        })
        .collect();
    // closure under simple reflections, in simple coordinates
    let mut seen: BTreeSet<Vec<i64>> = (0..r).map(|i| unit(r, i)).collect();
    let mut frontier: Vec<Vec<i64>> = seen.iter().cloned().collect();
    while let Some(b) = frontier.pop() {
        for i in 0..r {
            let p: i64 = b.iter().enumerate().map(|(j, c)| c * cartan[i][j]).sum();
            let mut nb = b.clone();
            nb[i] -= p;
            if seen.insert(nb.clone()) {
                frontier.push(nb);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = seen.into_iter().filter(|v| v.iter().all(|c| *c >= 0)).collect();
    positive.sort_by_key(|v| (v.iter().sum::<i64>(), core::cmp::Reverse(v.clone())));
    RootDatum { ty, simple, cartan, positive }
}

pub fn build_root_datum(ty: CartanType) -> Result<RootDatum> {
    if !ty.is_supported() {
        return Err(Error::UnsupportedType(format!("{ty}")));
    }
    Ok(standard_datum(ty))
}

/// Standard realization of any irreducible type, without the support check.
/// Used for levi factors.
pub(crate) fn standard_datum(ty: CartanType) -> RootDatum {
    from_simple(ty, ty.simple_ambient())
}

/// The Langlands dual: simple coroots, rescaled to a primitive integral
/// root system.
pub fn dual_datum(d: &RootDatum) -> RootDatum {
    let coroots: Vec<Vec<Q>> = d.roots().iter().map(|r| d.coroot_ambient(r)).collect();
    let mut den: i128 = 1;
    for c in coroots.iter().flatten() {
        den = num_integer::lcm(den, *c.denom());
    }
    let mut g: i128 = 0;
    for c in coroots.iter().flatten() {
        g = gcd_i128(g, (c * q(den)).to_integer());
    }
    let scale = Q::new(den, g);
    let simple = (0..d.rank())
        .map(|i| {
            d.coroot_ambient(&unit(d.rank(), i))
                .iter()
                .map(|c| (c * scale).to_integer() as i64)
                .collect()
        })
        .collect();
    from_simple(CartanType::new(d.ty.family.dual(), d.rank()), simple)
}

// ---------------------------------------------------------------------------
// Parahorics

/// A factor of a levi: an irreducible root system embedded in the big one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviFactor {
    pub ty: CartanType,
    /// Simple roots of the factor (standard Dynkin order), in the big
    /// datum's simple coordinates.
    pub simple: Vec<Vec<i64>>,
    /// Positive roots of the factor in the big datum's simple coordinates.
    pub positive: Vec<Vec<i64>>,
    /// All roots of the factor are short roots of a non-simply-laced datum.
    pub short: bool,
}

impl LeviFactor {
    pub fn datum(&self) -> RootDatum {
        standard_datum(self.ty)
    }

    /// Image of a factor root given in the factor's own simple coordinates.
    pub fn embed(&self, coords: &[i64]) -> Vec<i64> {
        let n = self.simple[0].len();
        let mut v = vec![0i64; n];
        for (c, s) in coords.iter().zip(&self.simple) {
            for (vi, si) in v.iter_mut().zip(s) {
                *vi += c * si;
            }
        }
        v
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Levi {
    pub factors: Vec<LeviFactor>,
    pub torus_rank: usize,
}

impl Levi {
    pub fn num_positive(&self) -> usize {
        self.factors.iter().map(|f| f.positive.len()).sum()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.ty.rank).sum()
    }

    /// All positive levi roots in the big simple coordinates.
    pub fn positive_roots(&self) -> Vec<Vec<i64>> {
        self.factors.iter().flat_map(|f| f.positive.iter().cloned()).collect()
    }

    pub fn type_name(&self) -> String {
        if self.factors.is_empty() {
            return String::from("T");
        }
        let names: Vec<String> = self
            .factors
            .iter()
            .map(|f| format!("{}{}", if f.short { "~" } else { "" }, f.ty))
            .collect();
        names.join("x")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parahoric {
    /// Subset of the affine nodes `0..=r`; node 0 is `-θ`.
    pub nodes: Vec<usize>,
    /// `α_i(x)` for the simple roots, `i = 1..=r` (stored 0-based).
    pub x: Vec<Q>,
    pub levi: Levi,
}

impl Parahoric {
    /// `β(x)` for `β` in simple coordinates.
    pub fn value(&self, beta: &[i64]) -> Q {
        beta.iter().zip(&self.x).map(|(b, xi)| q(*b as i128) * xi).sum()
    }

    pub fn label(&self) -> String {
        let v: Vec<String> = self.nodes.iter().map(|n| format!("{n}")).collect();
        format!("{{{}}}", v.join(","))
    }

    pub fn is_hyperspecial_root(&self) -> bool {
        self.x.iter().all(|v| v.is_zero())
    }
}

/// Parse a node subset written as `0,2`, `{0,2}` or `{}`.
pub fn parse_nodes(s: &str, rank: usize) -> Result<Vec<usize>> {
    let s = s.trim().trim_start_matches('{').trim_end_matches('}').trim();
    let mut out = Vec::new();
    if !s.is_empty() && s != "-" {
        for t in s.split(',') {
            let v: usize = t.trim().parse().map_err(|_| Error::Parse(format!("bad node '{t}'")))?;
            if v > rank {
                return Err(Error::Parse(format!("node {v} out of range 0..={rank}")));
            }
            out.push(v);
        }
    }
    out.sort_unstable();
    out.dedup();
    if out.len() == rank + 1 {
        return Err(Error::Parse("node set must be a proper subset".into()));
    }
    Ok(out)
}

/// Barycenter of the facet of the fundamental alcove cut out by `nodes`,
/// as the values `α_i(x)`.
pub fn facet_point(nodes: &[usize], d: &RootDatum) -> Vec<Q> {
    let r = d.rank();
    let marks = d.marks();
    let outside: Vec<usize> = (0..=r).filter(|k| !nodes.contains(k)).collect();
    let count = q(outside.len() as i128);
    (1..=r)
        .map(|i| {
            if outside.contains(&i) {
                Q::one() / (count * q(marks[i - 1] as i128))
            } else {
                Q::zero()
            }
        })
        .collect()
}

pub fn build_parahoric(nodes: &[usize], d: &RootDatum) -> Result<Parahoric> {
    let r = d.rank();
    if nodes.len() > r || nodes.iter().any(|n| *n > r) {
        return Err(Error::Parse(format!("{nodes:?} is not a proper subset of 0..={r}")));
    }
    let x = facet_point(nodes, d);
    let mut simple: Vec<Vec<i64>> = Vec::new();
    if nodes.contains(&0) {
        simple.push(d.highest_root().iter().map(|c| -c).collect());
    }
    for n in nodes.iter().filter(|n| **n > 0) {
        simple.push(unit(r, n - 1));
    }
    let factors = decompose(d, &simple)?;
    let levi = Levi { torus_rank: r - simple.len(), factors };
    Ok(Parahoric { nodes: nodes.to_vec(), x, levi })
}

/// All `2^(r+1) - 1` standard parahorics, ordered by size then lexicographically.
pub fn enumerate_parahorics(d: &RootDatum) -> Result<Vec<Parahoric>> {
    let r = d.rank();
    let mut subsets: Vec<Vec<usize>> = (0u32..(1 << (r + 1)) - 1)
        .map(|m| (0..=r).filter(|i| m & (1 << i) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    subsets.iter().map(|s| build_parahoric(s, d)).collect()
}

/// Split a simple system (big simple coordinates) into irreducible
/// components and identify each with a standard type.
pub fn decompose(d: &RootDatum, simple: &[Vec<i64>]) -> Result<Vec<LeviFactor>> {
    let n = simple.len();
    let amb: Vec<Vec<i64>> = simple.iter().map(|s| d.ambient(s)).collect();
    let c: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * dot(&amb[j], &amb[i]) / dot(&amb[i], &amb[i])).collect())
        .collect();
    let mut comp = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = comps.len();
        let mut stack = vec![s];
        let mut members = Vec::new();
        comp[s] = id;
        while let Some(a) = stack.pop() {
            members.push(a);
            for b in 0..n {
                if comp[b] == usize::MAX && c[a][b] != 0 {
                    comp[b] = id;
                    stack.push(b);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut factors = Vec::new();
    for members in comps {
        let sub: Vec<Vec<i64>> = members.iter().map(|a| members.iter().map(|b| c[*a][*b]).collect()).collect();
        let k = members.len();
        let mut found = None;
        for fam in candidate_families(k, d.ty.family) {
            let ty = CartanType::new(fam, k);
            let std = standard_datum(ty);
            // for D factors keep the fork nodes on ±e_i ± e_j so the vector
            // representation of the factor sits inside the ambient one
            let fork_ok = |perm: &[usize]| {
                if fam != Family::D || !d.ty.family.is_classical() {
                    return true;
                }
                let (a, b) = (&amb[members[perm[k - 1]]], &amb[members[perm[k - 2]]]);
                let diff: Vec<i64> = a.iter().zip(b).map(|(x, y)| x - y).collect();
                diff.iter().all(|x| x % 2 == 0) && dot(&diff, &diff) == 4
            };
            if let Some(perm) = match_cartan(&std.cartan, &sub, &fork_ok) {
                found = Some((ty, std, perm));
                break;
            }
        }
        let (ty, std, perm) =
            found.ok_or_else(|| Error::Internal(format!("unrecognized levi component {sub:?}")))?;
        let fsimple: Vec<Vec<i64>> = perm.iter().map(|p| simple[members[*p]].clone()).collect();
        let mut f = LeviFactor { ty, simple: fsimple, positive: Vec::new(), short: false };
        f.positive = std.positive.iter().map(|r| f.embed(r)).collect();
        f.short = !d.simply_laced() && f.simple.iter().all(|s| !d.is_long(s));
        factors.push(f);
    }
    Ok(factors)
}

fn candidate_families(k: usize, ambient: Family) -> Vec<Family> {
    let mut out = vec![Family::A];
    if k >= 4 {
        out.push(Family::D);
    }
    if k >= 2 {
        if ambient == Family::C {
            out.extend([Family::C, Family::B]);
        } else {
            out.extend([Family::B, Family::C]);
        }
    }
    if k == 2 {
        out.push(Family::G);
    }
    if k == 4 {
        out.push(Family::F);
    }
    out
}

/// Find `perm` with `std[i][j] == sub[perm[i]][perm[j]]` accepted by `ok`,
/// falling back to the first match.
fn match_cartan(std: &[Vec<i64>], sub: &[Vec<i64>], ok: &dyn Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    fn rec(
        std: &[Vec<i64>],
        sub: &[Vec<i64>],
        perm: &mut Vec<usize>,
        used: &mut [bool],
        accept: &dyn Fn(&[usize]) -> bool,
        first: &mut Option<Vec<usize>>,
    ) -> bool {
        let i = perm.len();
        if i == std.len() {
            if first.is_none() {
                *first = Some(perm.clone());
            }
            return accept(perm);
        }
        for cand in 0..sub.len() {
            if used[cand] {
                continue;
            }
            let ok = (0..i).all(|j| std[i][j] == sub[cand][perm[j]] && std[j][i] == sub[perm[j]][cand]);
            if ok {
                used[cand] = true;
                perm.push(cand);
                if rec(std, sub, perm, used, accept, first) {
                    return true;
                }
                perm.pop();
                used[cand] = false;
            }
        }
        false
    }
    if std.len() != sub.len() {
        return None;
    }
    let mut perm = Vec::new();
    let mut used = vec![false; sub.len()];
    let mut first = None;
    if rec(std, sub, &mut perm, &mut used, ok, &mut first) {
        Some(perm)
    } else {
        first
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dat(s: &str) -> RootDatum {
        build_root_datum(CartanType::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (s, n) in [("A1", 1), ("A2", 3), ("B3", 9), ("C2", 4), ("D4", 12), ("G2", 6), ("F4", 24)] {
            assert_eq!(dat(s).num_positive(), n, "{s}");
        }
        assert_eq!(dat("C2").marks(), vec![2, 1]);
        assert_eq!(dat("G2").marks(), vec![3, 2]);
        assert_eq!(dat("F4").marks(), vec![2, 3, 4, 2]);
        assert!(CartanType::parse("E6").is_err());
        assert!(CartanType::parse("A7").is_err());
    }

    #[test]
    fn duality() {
        for s in ["A3", "B3", "C3", "D4", "G2", "F4", "B2"] {
            let d = dat(s);
            let dd = dual_datum(&d);
            assert_eq!(dd.ty.family, d.ty.family.dual());
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    assert_eq!(dd.cartan[i][j], d.cartan[j][i]);
                }
            }
            assert_eq!(dual_datum(&dd), d, "{s}");
        }
        assert_eq!(dual_datum(&dat("B3")), dat("C3"));
    }

    #[test]
    fn parahoric_levis() {
        let c2 = dat("C2");
        let ps = enumerate_parahorics(&c2).unwrap();
        assert_eq!(ps.len(), 7);
        let p = build_parahoric(&[0, 2], &c2).unwrap();
        assert_eq!(p.levi.type_name(), "A1xA1");
        assert_eq!(p.value(&c2.highest_root()), Q::one());
        let a2 = dat("A2");
        let p = build_parahoric(&[1, 2], &a2).unwrap();
        assert!(p.is_hyperspecial_root());
        assert_eq!(p.levi.type_name(), "A2");
        let g2 = dat("G2");
        assert_eq!(build_parahoric(&[0, 1], &g2).unwrap().levi.type_name(), "A1x~A1");
        assert_eq!(build_parahoric(&[0, 2], &g2).unwrap().levi.type_name(), "A2");
        let a1 = dat("A1");
        let iw = build_parahoric(&[], &a1).unwrap();
        assert_eq!(iw.x, vec![Q::new(1, 2)]);
        assert_eq!(iw.levi.torus_rank, 1);
    }
}
