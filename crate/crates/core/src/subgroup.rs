//! Reflection subgroups of a Weyl group (levis and pseudo-levis) as products
//! of standard Weyl groups, with product labels and class fusion.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::characters::{character_table_with, CharTable};
use crate::error::{Error, Result};
use crate::label::ProdLabel;
use crate::rootdata::{decompose, CartanType, LeviFactor, RootDatum};
use crate::weyl::{identity, mat_apply, mat_mul, reflection, Mat, WeylGroup};

/// Externally supplied character tables, keyed by type.
pub type ExternalTables<'a> = &'a [(CartanType, CharTable)];

#[derive(Clone, Debug)]
pub struct Factor {
    pub levi: LeviFactor,
    pub group: WeylGroup,
    pub table: CharTable,
    /// Simple reflections of the factor as matrices of the big group.
    pub gens_big: Vec<Mat>,
}

impl Factor {
    /// Image in the big group of factor element `i`.
    pub fn embed_element(&self, i: usize) -> Mat {
        let r = self.gens_big[0].len().isqrt();
        self.group
            .word(i)
            .iter()
            .fold(identity(r), |acc, g| mat_mul(&acc, &self.gens_big[*g as usize], r))
    }
}

#[derive(Clone, Debug)]
pub struct ReflectionSubgroup {
    pub rank_big: usize,
    pub factors: Vec<Factor>,
    elt_map: Option<BTreeMap<Mat, Vec<usize>>>,
}

fn mixed_radix(radices: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for r in radices {
        let mut next = Vec::with_capacity(out.len() * r);
        for t in &out {
            for i in 0..*r {
                let mut u = t.clone();
                u.push(i);
                next.push(u);
            }
        }
        out = next;
    }
    out
}

impl ReflectionSubgroup {
    pub fn from_factors(d: &RootDatum, levis: &[LeviFactor], ext: ExternalTables) -> Result<Self> {
        let mut factors = Vec::new();
        for lf in levis {
            let group = WeylGroup::new(&lf.datum())?;
            let external = ext.iter().find(|(t, _)| *t == lf.ty).map(|(_, t)| t);
            let table = character_table_with(&group, external)?;
            let gens_big = lf.simple.iter().map(|s| reflection(d, s)).collect();
            factors.push(Factor { levi: lf.clone(), group, table, gens_big });
        }
        Ok(ReflectionSubgroup { rank_big: d.rank(), factors, elt_map: None })
    }

    /// The reflection subgroup generated by a simple system (big simple
    /// coordinates).
    pub fn from_simple(d: &RootDatum, simple: &[Vec<i64>], ext: ExternalTables) -> Result<Self> {
        Self::from_factors(d, &decompose(d, simple)?, ext)
    }

    /// The reflection subgroup generated by a root subsystem, given as its
    /// positive roots.
    pub fn from_roots(d: &RootDatum, positive: &[Vec<i64>], ext: ExternalTables) -> Result<Self> {
        let simple: Vec<Vec<i64>> = positive
            .iter()
            .filter(|b| {
                let s = reflection(d, b);
                positive.iter().all(|g| {
                    if g == *b {
                        return true;
                    }
                    let img = mat_apply(&s, g);
                    positive.contains(&img)
                })
            })
            .cloned()
            .collect();
        Self::from_simple(d, &simple, ext)
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|f| f.group.order()).product()
    }

    pub fn rank(&self) -> usize {
        self.factors.iter().map(|f| f.group.rank()).sum()
    }

    pub fn num_positive(&self) -> usize {
        self.factors.iter().map(|f| f.group.datum.num_positive()).sum()
    }

    /// All classes as tuples of factor class indices.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        mixed_radix(&self.factors.iter().map(|f| f.group.classes.len()).collect::<Vec<_>>())
    }

    /// All irreducible characters as tuples of factor character indices.
    pub fn chars(&self) -> Vec<Vec<usize>> {
        mixed_radix(&self.factors.iter().map(|f| f.table.len()).collect::<Vec<_>>())
    }

    pub fn class_size(&self, c: &[usize]) -> usize {
        self.factors.iter().zip(c).map(|(f, i)| f.group.classes[*i].size).product()
    }

    pub fn char_value(&self, ch: &[usize], c: &[usize]) -> i128 {
        self.factors.iter().zip(ch.iter().zip(c)).map(|(f, (x, k))| f.table.chars[*x].values[*k]).product()
    }

    pub fn char_dim(&self, ch: &[usize]) -> i128 {
        self.factors.iter().zip(ch).map(|(f, x)| f.table.dim(&f.group, *x)).product()
    }

    pub fn class_label(&self, c: &[usize]) -> ProdLabel {
        ProdLabel(self.factors.iter().zip(c).map(|(f, i)| f.group.classes[*i].label.clone()).collect())
    }

    pub fn char_label(&self, ch: &[usize]) -> ProdLabel {
        ProdLabel(self.factors.iter().zip(ch).map(|(f, i)| f.table.chars[*i].label.clone()).collect())
    }

    pub fn char_by_label(&self, l: &ProdLabel) -> Option<Vec<usize>> {
        if l.0.len() != self.factors.len() {
            return None;
        }
        self.factors.iter().zip(&l.0).map(|(f, x)| f.table.index(x)).collect()
    }

    /// Image in the big group of the representative of a product class.
    pub fn class_rep(&self, c: &[usize]) -> Mat {
        let r = self.rank_big;
        self.factors
            .iter()
            .zip(c)
            .fold(identity(r), |acc, (f, i)| mat_mul(&acc, &f.embed_element(f.group.classes[*i].rep), r))
    }

    /// Class fusion into the big group.
    pub fn fusion(&self, big: &WeylGroup) -> Result<Vec<usize>> {
        self.classes().iter().map(|c| big.class_of_matrix(&self.class_rep(c))).collect()
    }

    /// Product class containing a big-group element, if it lies in the
    /// subgroup.
    pub fn class_of_element(&mut self, m: &[i64]) -> Option<Vec<usize>> {
        if self.elt_map.is_none() {
            let r = self.rank_big;
            let mut map = BTreeMap::new();
            let elems = mixed_radix(&self.factors.iter().map(|f| f.group.order()).collect::<Vec<_>>());
            for t in elems {
                let mat = self
                    .factors
                    .iter()
                    .zip(&t)
                    .fold(identity(r), |acc, (f, i)| mat_mul(&acc, &f.embed_element(*i), r));
                let cls: Vec<usize> = self.factors.iter().zip(&t).map(|(f, i)| f.group.class_of(*i)).collect();
                map.insert(mat, cls);
            }
            self.elt_map = Some(map);
        }
        self.elt_map.as_ref().and_then(|m2| m2.get(m).cloned())
    }

    /// Multiplicities of `Ind(E_P)` in the characters of `big`.
    pub fn induce(&self, ch: &[usize], big: &WeylGroup, big_table: &CharTable) -> Result<Vec<i128>> {
        let fusion = self.fusion(big)?;
        self.induce_with(ch, &fusion, big_table)
    }

    pub fn induce_with(&self, ch: &[usize], fusion: &[usize], big_table: &CharTable) -> Result<Vec<i128>> {
        let order = self.order() as i128;
        let classes = self.classes();
        big_table
            .chars
            .iter()
            .map(|e| {
                let s: i128 = classes
                    .iter()
                    .zip(fusion)
                    .map(|(c, f)| self.class_size(c) as i128 * self.char_value(ch, c) * e.values[*f])
                    .sum();
                if s % order != 0 {
                    return Err(Error::Internal("non-integral induction multiplicity".into()));
                }
                Ok(s / order)
            })
            .collect()
    }
}
