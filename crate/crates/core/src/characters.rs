//! Irreducible characters of Weyl groups.
//!
//! Type A uses Murnaghan-Nakayama. Types B/C label characters by
//! bipartitions `(α;β)`, the induced character of `χ_α ⊗ (χ_β·δ)` from
//! `W(B_a) × W(B_b)`, where `δ` is −1 on sign changes; so `(n;-)` is trivial
//! and `(-;1^n)` is the sign. Type D restricts from B, splitting `(α;α)` into
//! two characters. G2 is written down directly; F4 must be supplied.

use alloc::format;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::label::{Label, Sign};
use crate::partition::{partitions, remove_rim_hooks, Partition};
use crate::rootdata::Family;
use crate::weyl::WeylGroup;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrChar {
    pub label: Label,
    /// One value per conjugacy class, in the group's class order.
    pub values: Vec<i128>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharTable {
    pub chars: Vec<IrrChar>,
}

impl CharTable {
    pub fn len(&self) -> usize {
        self.chars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chars.is_empty()
    }

    pub fn index(&self, label: &Label) -> Option<usize> {
        self.chars.iter().position(|c| c.label == *label)
    }

    pub fn by_name(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        self.chars.iter().position(|c| format!("{}", c.label) == s)
    }

    pub fn dim(&self, g: &WeylGroup, i: usize) -> i128 {
        self.chars[i].values[g.identity_class()]
    }

    /// Index of the trivial character.
    pub fn trivial(&self) -> usize {
        self.chars.iter().position(|c| c.values.iter().all(|v| *v == 1)).expect("trivial character")
    }

    /// Index of the sign character `det`.
    pub fn sign(&self, g: &WeylGroup) -> usize {
        let det: Vec<i128> = g.classes.iter().map(|c| det_sign(&c.char_poly, g.rank())).collect();
        self.chars.iter().position(|c| c.values == det).expect("sign character")
    }
}

fn det_sign(cp: &[i128], r: usize) -> i128 {
    // det(xI - M) at x=0 is (-1)^r det M
    let c0 = cp[cp.len() - 1];
    if r % 2 == 0 {
        c0
    } else {
        -c0
    }
}

/// `χ_λ` of the symmetric group on cycle type `μ`.
pub fn sym_char(lambda: &[u32], mu: &[u32]) -> i128 {
    let Some((&k, rest)) = mu.split_first() else {
        return if lambda.is_empty() { 1 } else { 0 };
    };
    remove_rim_hooks(lambda, k).iter().map(|(l, s)| s * sym_char(l, rest)).sum()
}

/// Hyperoctahedral character `(α;β)` on signed cycle type `(λ;μ)`.
pub fn hyp_char(alpha: &[u32], beta: &[u32], pos: &[u32], neg: &[u32]) -> i128 {
    let (k, sign, pos, neg) = if let Some((&k, rest)) = pos.split_first() {
        (k, 1i128, rest, neg)
    } else if let Some((&k, rest)) = neg.split_first() {
        (k, -1i128, pos, rest)
    } else {
        return if alpha.is_empty() && beta.is_empty() { 1 } else { 0 };
    };
    let mut total = 0;
    for (a, s) in remove_rim_hooks(alpha, k) {
        total += s * hyp_char(&a, beta, pos, neg);
    }
    for (b, s) in remove_rim_hooks(beta, k) {
        total += sign * s * hyp_char(alpha, &b, pos, neg);
    }
    total
}

pub fn bipartitions(n: u32) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for a in (0..=n).rev() {
        for al in partitions(a) {
            for be in partitions(n - a) {
                out.push((al.clone(), be));
            }
        }
    }
    out
}

fn class_cycles(label: &Label) -> (Partition, Partition) {
    match label {
        Label::Part(p) => (p.clone(), Vec::new()),
        Label::Bi(a, b) | Label::SplitBi(a, b, _) => (a.clone(), b.clone()),
        _ => (Vec::new(), Vec::new()),
    }
}

pub fn character_table(g: &WeylGroup) -> Result<CharTable> {
    let n = g.rank() as u32;
    let chars = match g.datum.ty.family {
        Family::A => partitions(n + 1)
            .into_iter()
            .map(|l| {
                let values = g.classes.iter().map(|c| sym_char(&l, &class_cycles(&c.label).0)).collect();
                IrrChar { label: Label::Part(l), values }
            })
            .collect(),
        Family::B | Family::C => bipartitions(n)
            .into_iter()
            .map(|(a, b)| {
                let values = g
                    .classes
                    .iter()
                    .map(|c| {
                        let (p, m) = class_cycles(&c.label);
                        hyp_char(&a, &b, &p, &m)
                    })
                    .collect();
                IrrChar { label: Label::Bi(a, b), values }
            })
            .collect(),
        Family::D => type_d_chars(g, n),
        Family::G => g2_chars(g)?,
        Family::F => {
            return Err(Error::ExternalTableRequired(format!("character table of {}", g.datum.ty)));
        }
    };
    let t = CharTable { chars };
    verify_orthogonality(g, &t)?;
    Ok(t)
}

fn type_d_chars(g: &WeylGroup, n: u32) -> Vec<IrrChar> {
    let mut out = Vec::new();
    for (a, b) in bipartitions(n) {
        if a < b {
            continue;
        }
        let restricted: Vec<i128> = g
            .classes
            .iter()
            .map(|c| {
                let (p, m) = class_cycles(&c.label);
                hyp_char(&a, &b, &p, &m)
            })
            .collect();
        if a != b {
            out.push(IrrChar { label: Label::Bi(a, b), values: restricted });
            continue;
        }
        for sign in [Sign::Plus, Sign::Minus] {
            let values = g
                .classes
                .iter()
                .zip(&restricted)
                .map(|(c, v)| {
                    let half = v / 2;
                    match &c.label {
                        Label::SplitBi(pos, _, cs) => {
                            let nu: Vec<u32> = pos.iter().map(|p| p / 2).collect();
                            let corr = (1i128 << (nu.len() - 1)) * sym_char(&a, &nu);
                            if *cs == sign {
                                half + corr
                            } else {
                                half - corr
                            }
                        }
                        _ => half,
                    }
                })
                .collect();
            out.push(IrrChar { label: Label::SplitBi(a.clone(), b.clone(), sign), values });
        }
    }
    out
}

fn g2_chars(g: &WeylGroup) -> Result<Vec<IrrChar>> {
    // columns: 1, A1, ~A1, A1+~A1, A2, G2
    let names = ["1", "A1", "~A1", "A1+~A1", "A2", "G2"];
    let rows: [(&str, [i128; 6]); 6] = [
        ("phi1,0", [1, 1, 1, 1, 1, 1]),
        ("phi1,6", [1, -1, -1, 1, 1, 1]),
        ("phi1,3'", [1, -1, 1, -1, 1, -1]),
        ("phi1,3''", [1, 1, -1, -1, 1, -1]),
        ("phi2,1", [2, 0, 0, -2, -1, 1]),
        ("phi2,2", [2, 0, 0, 2, -1, -1]),
    ];
    let cols: Vec<usize> = g
        .classes
        .iter()
        .map(|c| names.iter().position(|n| Label::Named((*n).into()) == c.label))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| Error::Internal("unexpected G2 class labels".into()))?;
    Ok(rows
        .iter()
        .map(|(name, vals)| IrrChar {
            label: Label::Named((*name).into()),
            values: cols.iter().map(|c| vals[*c]).collect(),
        })
        .collect())
}

/// Both orthogonality relations, exactly.
pub fn verify_orthogonality(g: &WeylGroup, t: &CharTable) -> Result<()> {
    let order = g.order() as i128;
    let k = g.classes.len();
    if t.chars.len() != k {
        return Err(Error::Table(format!("{} characters for {} classes", t.chars.len(), k)));
    }
    for (i, x) in t.chars.iter().enumerate() {
        for (j, y) in t.chars.iter().enumerate().skip(i) {
            let s: i128 = (0..k).map(|c| g.classes[c].size as i128 * x.values[c] * y.values[c]).sum();
            let want = if i == j { order } else { 0 };
            if s != want {
                return Err(Error::Table(format!("row orthogonality fails for {} and {}", x.label, y.label)));
            }
        }
    }
    for a in 0..k {
        for b in a..k {
            let s: i128 = t.chars.iter().map(|x| x.values[a] * x.values[b]).sum();
            let want = if a == b { order / g.classes[a].size as i128 } else { 0 };
            if s != want {
                return Err(Error::Table(format!(
                    "column orthogonality fails for {} and {}",
                    g.classes[a].label, g.classes[b].label
                )));
            }
        }
    }
    Ok(())
}

/// Build a table from externally supplied rows (values in class order).
pub fn table_from_rows(g: &WeylGroup, rows: Vec<(Label, Vec<i128>)>) -> Result<CharTable> {
    let t = CharTable { chars: rows.into_iter().map(|(label, values)| IrrChar { label, values }).collect() };
    if t.chars.iter().any(|c| c.values.len() != g.classes.len()) {
        return Err(Error::Table("row length differs from the number of classes".into()));
    }
    verify_orthogonality(g, &t)?;
    Ok(t)
}

/// Character table for any datum, using `external` for types without a
/// built-in construction.
pub fn character_table_with(g: &WeylGroup, external: Option<&CharTable>) -> Result<CharTable> {
    match character_table(g) {
        Err(Error::ExternalTableRequired(m)) => match external {
            Some(t) => {
                verify_orthogonality(g, t)?;
                Ok(t.clone())
            }
            None => Err(Error::ExternalTableRequired(m)),
        },
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, CartanType};
    use alloc::vec;

    fn table(s: &str) -> (WeylGroup, CharTable) {
        let g = WeylGroup::new(&build_root_datum(CartanType::parse(s).unwrap()).unwrap()).unwrap();
        let t = character_table(&g).unwrap();
        (g, t)
    }

    #[test]
    fn small_tables() {
        let (g, t) = table("A2");
        let std = t.index(&Label::Part(vec![2, 1])).unwrap();
        assert_eq!(t.chars[std].values, vec![2, 0, -1]);
        assert_eq!(t.sign(&g), t.index(&Label::Part(vec![1, 1, 1])).unwrap());
        let (g, t) = table("C2");
        assert_eq!(t.len(), 5);
        let dims: Vec<i128> = (0..5).map(|i| t.dim(&g, i)).collect();
        assert_eq!(dims.iter().filter(|d| **d == 1).count(), 4);
        assert_eq!(t.sign(&g), t.index(&Label::Bi(vec![], vec![1, 1])).unwrap());
    }

    #[test]
    fn all_builtin_tables_are_orthogonal() {
        for s in ["A1", "A3", "A5", "B3", "C4", "D4", "D5", "G2"] {
            let (_, t) = table(s);
            assert!(!t.is_empty(), "{s}");
        }
    }
}
