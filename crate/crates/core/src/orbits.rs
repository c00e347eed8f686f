//! Nilpotent orbits: classification by partitions, dimensions, Spaltenstein
//! duality, specialness and the Springer correspondence.
//!
//! Specialness is decided by duality (`d(d(O)) = O`), not by comparing a and b
//! invariants; the two agree for Weyl groups.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::characters::CharTable;
use crate::error::{Error, Result};
use crate::exceptional::Tables;
use crate::label::{Label, ProdLabel, Sign};
use crate::partition::{collapse, normalize, partitions, satisfies, transpose, Parity, Partition};
use crate::rootdata::{CartanType, Family};
use crate::subgroup::ReflectionSubgroup;
use crate::weyl::WeylGroup;

pub fn parity(f: Family) -> Option<Parity> {
    match f {
        Family::A => Some(Parity::A),
        Family::B => Some(Parity::B),
        Family::C => Some(Parity::C),
        Family::D => Some(Parity::D),
        _ => None,
    }
}

/// Size of the defining representation.
pub fn defining_size(ty: CartanType) -> usize {
    let n = ty.rank;
    match ty.family {
        Family::A => n + 1,
        Family::B => 2 * n + 1,
        _ => 2 * n,
    }
}

pub fn is_very_even(p: &[u32]) -> bool {
    !p.is_empty() && p.iter().all(|x| x % 2 == 0 && p.iter().filter(|y| *y == x).count() % 2 == 0)
}

/// Orbit labels of a classical type, dominance-compatible order (regular first).
pub fn classical_orbits(ty: CartanType) -> Result<Vec<Label>> {
    let par = parity(ty.family).ok_or_else(|| Error::ExternalTableRequired(format!("orbits of {ty}")))?;
    let mut out = Vec::new();
    for p in partitions(defining_size(ty) as u32) {
        if !satisfies(&p, par) {
            continue;
        }
        if ty.family == Family::D && is_very_even(&p) {
            out.push(Label::Tagged(p.clone(), Sign::Plus));
            out.push(Label::Tagged(p, Sign::Minus));
        } else {
            out.push(Label::Part(p));
        }
    }
    Ok(out)
}

/// Dimension of the classical orbit with Jordan type `p`.
pub fn orbit_dim(ty: CartanType, p: &[u32]) -> u32 {
    let n = defining_size(ty) as i64;
    let t: i64 = transpose(p).iter().map(|x| (*x as i64).pow(2)).sum();
    let odd = p.iter().filter(|x| *x % 2 == 1).count() as i64;
    let d = match ty.family {
        Family::A => n * n - t,
        Family::B | Family::D => n * (n - 1) / 2 - (t - odd) / 2,
        _ => n * (n + 1) / 2 - (t + odd) / 2,
    };
    d as u32
}

/// Spaltenstein duality within the same classical type.
pub fn spaltenstein_dual(ty: CartanType, l: &Label) -> Result<Label> {
    let par = parity(ty.family).ok_or_else(|| Error::UnsupportedType(format!("{ty}")))?;
    let p = l.partition().ok_or_else(|| Error::Parse(format!("{l} is not a partition label")))?;
    let d = collapse(&transpose(p), par)?;
    Ok(tag_like(ty, d, l))
}

fn tag_like(ty: CartanType, p: Partition, like: &Label) -> Label {
    if ty.family == Family::D && is_very_even(&p) {
        let s = match like {
            Label::Tagged(_, s) => *s,
            _ => Sign::Plus,
        };
        Label::Tagged(p, s)
    } else {
        Label::Part(p)
    }
}

pub fn is_special_classical(ty: CartanType, l: &Label) -> Result<bool> {
    Ok(spaltenstein_dual(ty, &spaltenstein_dual(ty, l)?)? == *l)
}

/// Springer character (constant local system) of a classical orbit.
pub fn springer_classical(ty: CartanType, l: &Label) -> Result<Label> {
    let p = l.partition().ok_or_else(|| Error::Parse(format!("{l} is not a partition label")))?;
    if ty.family == Family::A {
        return Ok(Label::Part(p.clone()));
    }
    let mut parts: Vec<u32> = p.iter().rev().copied().collect();
    let want_odd = ty.family != Family::D;
    if (parts.len() % 2 == 1) != want_odd {
        parts.insert(0, 0);
    }
    let star: Vec<u32> = parts.iter().enumerate().map(|(i, x)| x + i as u32).collect();
    // C: even entries give 2ξ, odd give 2η+1; B: odd give 2ξ+1, even give 2η;
    // D: even give 2ξ, odd give 2η+1
    let (xi, eta): (Vec<u32>, Vec<u32>) = match ty.family {
        Family::B => (
            star.iter().filter(|x| *x % 2 == 1).map(|x| (x - 1) / 2).collect(),
            star.iter().filter(|x| *x % 2 == 0).map(|x| x / 2).collect(),
        ),
        _ => (
            star.iter().filter(|x| *x % 2 == 0).map(|x| x / 2).collect(),
            star.iter().filter(|x| *x % 2 == 1).map(|x| (x - 1) / 2).collect(),
        ),
    };
    let shift = |v: &[u32]| -> Result<Partition> {
        let mut out = Vec::new();
        for (i, x) in v.iter().enumerate() {
            out.push(x.checked_sub(i as u32).ok_or_else(|| Error::Internal(format!("bad symbol for {l}")))?);
        }
        Ok(normalize(out))
    };
    let (a, b) = (shift(&xi)?, shift(&eta)?);
    if ty.family != Family::D {
        return Ok(Label::Bi(a, b));
    }
    Ok(match (a.cmp(&b), l) {
        (core::cmp::Ordering::Equal, Label::Tagged(_, s)) => Label::SplitBi(a, b, *s),
        (core::cmp::Ordering::Equal, _) => return Err(Error::Internal(format!("{l} should be very even"))),
        (core::cmp::Ordering::Less, _) => Label::Bi(b, a),
        _ => Label::Bi(a, b),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub label: Label,
    pub dim: u32,
    /// Dimension of the Springer fiber, `(dim N - dim O)/2`.
    pub d: u32,
    pub special: bool,
    /// Index of the Springer character.
    pub springer: usize,
}

#[derive(Clone, Debug)]
pub struct OrbitData {
    pub ty: CartanType,
    pub orbits: Vec<Orbit>,
}

impl OrbitData {
    /// Orbits of an irreducible type, with the Springer map checked against
    /// `d_O = b` on special orbits and for injectivity.
    pub fn new(g: &WeylGroup, t: &CharTable, b: &[u32], tables: &Tables) -> Result<OrbitData> {
        let ty = g.datum.ty;
        let dim_n = 2 * g.datum.num_positive() as u32;
        let mut orbits = Vec::new();
        if ty.family.is_classical() {
            for l in classical_orbits(ty)? {
                let p = l.partition().unwrap();
                let dim = orbit_dim(ty, p);
                let sl = springer_classical(ty, &l)?;
                let springer = t
                    .index(&sl)
                    .ok_or_else(|| Error::SpringerNormalization(format!("{l} maps to unknown character {sl}")))?;
                orbits.push(Orbit { special: is_special_classical(ty, &l)?, d: (dim_n - dim) / 2, label: l, dim, springer });
            }
        } else {
            let tab = tables
                .orbit_table(ty)
                .ok_or_else(|| Error::ExternalTableRequired(format!("orbit table for {ty}")))?;
            for row in &tab.rows {
                if row.dim > dim_n || (dim_n - row.dim) % 2 == 1 {
                    return Err(Error::Table(format!("orbit {} has impossible dimension {}", row.name, row.dim)));
                }
                let springer = t
                    .by_name(&row.springer)
                    .ok_or_else(|| Error::Table(format!("unknown Springer character {}", row.springer)))?;
                orbits.push(Orbit {
                    label: Label::Named(row.name.clone()),
                    dim: row.dim,
                    d: (dim_n - row.dim) / 2,
                    special: row.special,
                    springer,
                });
            }
        }
        let data = OrbitData { ty, orbits };
        data.check_springer(b)?;
        Ok(data)
    }

    fn check_springer(&self, b: &[u32]) -> Result<()> {
        for (i, o) in self.orbits.iter().enumerate() {
            if self.orbits[..i].iter().any(|p| p.springer == o.springer) {
                return Err(Error::SpringerNormalization(format!("{}: Springer map not injective at {}", self.ty, o.label)));
            }
            if o.special && b[o.springer] != o.d {
                return Err(Error::SpringerNormalization(format!(
                    "{}: orbit {} has d = {} but b = {}",
                    self.ty, o.label, o.d, b[o.springer]
                )));
            }
        }
        Ok(())
    }

    pub fn index(&self, l: &Label) -> Option<usize> {
        self.orbits.iter().position(|o| o.label == *l)
    }

    pub fn by_name(&self, s: &str) -> Option<usize> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        self.orbits.iter().position(|o| format!("{}", o.label) == s)
    }

    pub fn springer_inverse(&self, ch: usize) -> Option<usize> {
        self.orbits.iter().position(|o| o.springer == ch)
    }

    /// The zero orbit (largest Springer fiber).
    pub fn zero(&self) -> usize {
        (0..self.orbits.len()).max_by_key(|i| self.orbits[*i].d).unwrap()
    }

    pub fn regular(&self) -> usize {
        (0..self.orbits.len()).min_by_key(|i| self.orbits[*i].d).unwrap()
    }
}

/// Orbits of a levi: tuples of factor orbits.
#[derive(Clone, Debug)]
pub struct ProductOrbits {
    pub factors: Vec<OrbitData>,
}

impl ProductOrbits {
    pub fn new(sub: &ReflectionSubgroup, fb: &[Vec<u32>], tables: &Tables) -> Result<ProductOrbits> {
        let factors = sub
            .factors
            .iter()
            .zip(fb)
            .map(|(f, b)| OrbitData::new(&f.group, &f.table, b, tables))
            .collect::<Result<_>>()?;
        Ok(ProductOrbits { factors })
    }

    pub fn all(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new()];
        for f in &self.factors {
            let mut next = Vec::new();
            for t in &out {
                for i in 0..f.orbits.len() {
                    let mut u = t.clone();
                    u.push(i);
                    next.push(u);
                }
            }
            out = next;
        }
        out
    }

    pub fn special(&self, o: &[usize]) -> bool {
        self.factors.iter().zip(o).all(|(f, i)| f.orbits[*i].special)
    }

    pub fn d(&self, o: &[usize]) -> u32 {
        self.factors.iter().zip(o).map(|(f, i)| f.orbits[*i].d).sum()
    }

    pub fn springer(&self, o: &[usize]) -> Vec<usize> {
        self.factors.iter().zip(o).map(|(f, i)| f.orbits[*i].springer).collect()
    }

    pub fn label(&self, o: &[usize]) -> ProdLabel {
        ProdLabel(self.factors.iter().zip(o).map(|(f, i)| f.orbits[*i].label.clone()).collect())
    }

    pub fn parse(&self, s: &str) -> Result<Vec<usize>> {
        let s = s.trim();
        let parts: Vec<&str> = if s == "()" || s.is_empty() { Vec::new() } else { s.split(" x ").collect() };
        if parts.len() != self.factors.len() {
            return Err(Error::OrbitLeviMismatch(format!("'{s}' has {} factors, levi has {}", parts.len(), self.factors.len())));
        }
        self.factors
            .iter()
            .zip(parts)
            .map(|(f, p)| f.by_name(p).ok_or_else(|| Error::OrbitLeviMismatch(format!("{p} is not an orbit of {}", f.ty))))
            .collect()
    }
}

/// Lusztig-Spaltenstein induction from a levi, as `Spr⁻¹ ∘ j ∘ Spr`.
pub fn ls_induce(
    sub: &ReflectionSubgroup,
    fb: &[Vec<u32>],
    fusion: &[usize],
    levi_orbits: &ProductOrbits,
    o: &[usize],
    big: &crate::invariants::GroupData,
    big_orbits: &OrbitData,
) -> Result<usize> {
    let e = levi_orbits.springer(o);
    let j = crate::invariants::j_induce(sub, fb, &e, fusion, big)?;
    big_orbits.springer_inverse(j).ok_or_else(|| {
        Error::CorrespondenceGap(format!("j-induced {} is not a Springer character", big.table.chars[j].label))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::GroupData;
    use crate::rootdata::build_root_datum;

    fn orbits(s: &str) -> (GroupData, OrbitData) {
        let ty = CartanType::parse(s).unwrap();
        let g = GroupData::new(&build_root_datum(ty).unwrap(), &[]).unwrap();
        let o = OrbitData::new(&g.group, &g.table, &g.b, &Tables::default()).unwrap();
        (g, o)
    }

    #[test]
    fn small_examples() {
        let (_, o) = orbits("A2");
        let ds: Vec<u32> = o.orbits.iter().map(|x| x.d).collect();
        assert_eq!(ds, vec![0, 1, 3]);
        let (g, o) = orbits("C2");
        assert_eq!(o.orbits.len(), 4);
        let i = o.index(&Label::Part(vec![2, 1, 1])).unwrap();
        assert!(!o.orbits[i].special);
        let reg = o.index(&Label::Part(vec![4])).unwrap();
        assert_eq!(g.table.chars[o.orbits[reg].springer].label, Label::Bi(vec![2], vec![]));
        let c2 = CartanType::parse("C2").unwrap();
        assert_eq!(springer_classical(c2, &Label::Part(vec![2, 2])).unwrap(), Label::Bi(vec![1], vec![1]));
        let b2 = CartanType::parse("B2").unwrap();
        assert_eq!(springer_classical(b2, &Label::Part(vec![2, 2, 1])).unwrap(), Label::Bi(vec![], vec![2]));
    }

    #[test]
    fn type_a_induction_transposes_blocks() {
        use crate::invariants::factor_b;
        use crate::rootdata::build_parahoric;
        let (g, o) = orbits("A3");
        for (nodes, want) in [(vec![1, 3], vec![2, 2]), (vec![], vec![4]), (vec![1, 2], vec![2, 1, 1]), (vec![1, 2, 3], vec![1, 1, 1, 1])] {
            let p = build_parahoric(&nodes, g.datum()).unwrap();
            let sub = ReflectionSubgroup::from_factors(g.datum(), &p.levi.factors, &[]).unwrap();
            let fb = factor_b(&sub).unwrap();
            let po = ProductOrbits::new(&sub, &fb, &Tables::default()).unwrap();
            let zero: Vec<usize> = po.factors.iter().map(|f| f.zero()).collect();
            let fusion = sub.fusion(&g.group).unwrap();
            let i = ls_induce(&sub, &fb, &fusion, &po, &zero, &g, &o).unwrap();
            assert_eq!(o.orbits[i].label, Label::Part(want));
        }
    }

    #[test]
    fn every_classical_type_normalizes() {
        for s in ["A1", "A4", "A6", "B2", "B3", "B4", "C3", "C4", "D4", "D5"] {
            let (_, o) = orbits(s);
            let ty = o.ty;
            for x in &o.orbits {
                let p = x.label.partition().unwrap();
                let t = transpose(p);
                let cross = match ty.family {
                    Family::A => true,
                    Family::B => satisfies(&t, Parity::B),
                    _ => satisfies(&t, Parity::C),
                };
                assert_eq!(x.special, cross, "{s} {}", x.label);
            }
        }
    }
}
