//! Fake degrees, b-invariants and truncated induction.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{ipoly_divexact, ipoly_mul, poly_trim};
use crate::characters::{character_table_with, CharTable};
use crate::error::{Error, Result};
use crate::label::ProdLabel;
use crate::rootdata::RootDatum;
use crate::subgroup::{ExternalTables, ReflectionSubgroup};
use crate::weyl::WeylGroup;

/// Fake degree of every character in `t`, as coefficient lists (`q^0` first).
pub fn fake_degrees(g: &WeylGroup, t: &CharTable) -> Result<Vec<Vec<i128>>> {
    let mut num = vec![1i128];
    for d in g.datum.degrees() {
        let mut f = vec![0i128; d as usize + 1];
        f[0] = 1;
        f[d as usize] = -1;
        num = ipoly_mul(&num, &f);
    }
    // Q_c = ∏(1 - q^d) / det(1 - q w_c); det(1 - q w) is the char poly read backwards
    let qc: Vec<Vec<i128>> = g
        .classes
        .iter()
        .map(|c| {
            ipoly_divexact(&num, &c.char_poly)
                .ok_or_else(|| Error::Internal(format!("det(1-qw) does not divide for class {}", c.label)))
        })
        .collect::<Result<_>>()?;
    let order = g.order() as i128;
    t.chars
        .iter()
        .map(|ch| {
            let mut acc = vec![0i128; num.len()];
            for ((c, qp), v) in g.classes.iter().zip(&qc).zip(&ch.values) {
                let w = c.size as i128 * v;
                for (k, x) in qp.iter().enumerate() {
                    acc[k] += w * x;
                }
            }
            let mut out = Vec::with_capacity(acc.len());
            for a in acc {
                if a % order != 0 {
                    return Err(Error::Internal(format!("non-integral fake degree for {}", ch.label)));
                }
                out.push(a / order);
            }
            poly_trim(&mut out);
            Ok(out)
        })
        .collect()
}

/// Lowest exponent with a nonzero coefficient.
pub fn b_invariant(poly: &[i128]) -> u32 {
    poly.iter().position(|c| *c != 0).unwrap_or(0) as u32
}

/// A Weyl group together with its character table and fake degrees.
#[derive(Clone, Debug)]
pub struct GroupData {
    pub group: WeylGroup,
    pub table: CharTable,
    pub fake: Vec<Vec<i128>>,
    pub b: Vec<u32>,
}

impl GroupData {
    pub fn new(d: &RootDatum, ext: ExternalTables) -> Result<GroupData> {
        let group = WeylGroup::new(d)?;
        let external = ext.iter().find(|(t, _)| *t == d.ty).map(|(_, t)| t);
        let table = character_table_with(&group, external)?;
        let fake = fake_degrees(&group, &table)?;
        let b = fake.iter().map(|p| b_invariant(p)).collect();
        Ok(GroupData { group, table, fake, b })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.group.datum
    }
}

/// b-invariants of the characters of each factor of a subgroup.
pub fn factor_b(sub: &ReflectionSubgroup) -> Result<Vec<Vec<u32>>> {
    sub.factors
        .iter()
        .map(|f| Ok(fake_degrees(&f.group, &f.table)?.iter().map(|p| b_invariant(p)).collect()))
        .collect()
}

/// Coefficient of `q^b` in each factor character's fake degree; the
/// truncated-induction theorem needs this to be 1.
pub fn factor_b_multiplicity(sub: &ReflectionSubgroup) -> Result<Vec<Vec<i128>>> {
    sub.factors
        .iter()
        .map(|f| Ok(fake_degrees(&f.group, &f.table)?.iter().map(|p| p[b_invariant(p) as usize]).collect()))
        .collect()
}

pub fn product_b_multiplicity(fm: &[Vec<i128>], ch: &[usize]) -> i128 {
    fm.iter().zip(ch).map(|(m, i)| m[*i]).product()
}

/// b-invariant of a product character (sum over factors).
pub fn product_b(fb: &[Vec<u32>], ch: &[usize]) -> u32 {
    fb.iter().zip(ch).map(|(b, i)| b[*i]).sum()
}

/// Truncated induction `j_{W_P}^W`: the unique constituent of minimal
/// b-invariant, which must equal `b(E_P)` and occur once.
pub fn j_induce(
    sub: &ReflectionSubgroup,
    fb: &[Vec<u32>],
    ch: &[usize],
    fusion: &[usize],
    big: &GroupData,
) -> Result<usize> {
    let mult = sub.induce_with(ch, fusion, &big.table)?;
    let bp = product_b(fb, ch);
    let name = || format!("{}", sub.char_label(ch));
    let min_b = mult
        .iter()
        .zip(&big.b)
        .filter(|(m, _)| **m > 0)
        .map(|(_, b)| *b)
        .min()
        .ok_or_else(|| Error::MlsViolation(format!("Ind({}) is zero", name())))?;
    if min_b != bp {
        return Err(Error::MlsViolation(format!("Ind({}) has minimal b = {min_b}, expected {bp}", name())));
    }
    let minimal: Vec<usize> = (0..mult.len()).filter(|i| mult[*i] > 0 && big.b[*i] == min_b).collect();
    if minimal.len() != 1 || mult[minimal[0]] != 1 {
        return Err(Error::MlsViolation(format!(
            "Ind({}) has {} constituents of minimal b (multiplicities {:?})",
            name(),
            minimal.len(),
            minimal.iter().map(|i| mult[*i]).collect::<Vec<_>>()
        )));
    }
    Ok(minimal[0])
}

/// Convenience wrapper taking a product character label.
pub fn j_induce_label(sub: &ReflectionSubgroup, label: &ProdLabel, big: &GroupData) -> Result<usize> {
    let ch = sub
        .char_by_label(label)
        .ok_or_else(|| Error::Parse(format!("no character {label} of the subgroup")))?;
    let fusion = sub.fusion(&big.group)?;
    j_induce(sub, &factor_b(sub)?, &ch, &fusion, big)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::label::Label;
    use crate::rootdata::{build_parahoric, build_root_datum, CartanType};

    fn data(s: &str) -> GroupData {
        GroupData::new(&build_root_datum(CartanType::parse(s).unwrap()).unwrap(), &[]).unwrap()
    }

    #[test]
    fn s3_fake_degrees() {
        let g = data("A2");
        let std = g.table.index(&Label::Part(vec![2, 1])).unwrap();
        assert_eq!(g.fake[std], vec![0, 1, 1]);
        assert_eq!(g.b[g.table.trivial()], 0);
        assert_eq!(g.b[g.table.sign(&g.group)], 3);
    }

    #[test]
    fn j_of_sign_from_s2() {
        let g = data("A2");
        let sub = ReflectionSubgroup::from_factors(g.datum(), &build_parahoric(&[1], g.datum()).unwrap().levi.factors, &[]).unwrap();
        let j = j_induce_label(&sub, &ProdLabel::single(Label::Part(vec![1, 1])), &g).unwrap();
        assert_eq!(g.table.chars[j].label, Label::Part(vec![2, 1]));
    }
}
