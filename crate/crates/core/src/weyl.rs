//! Weyl groups as explicit integer matrices on the root lattice, with
//! conjugacy classes and their labels.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{berkowitz, invert, q, rank, Q};
use crate::error::{Error, Result};
use crate::label::{Label, Sign};
use crate::partition::normalize;
use crate::rootdata::{Family, RootDatum};

/// Upper bound on enumerated group size.
pub const MAX_ORDER: usize = 100_000;

/// Row-major `r×r` matrix acting on simple-root coordinates.
pub type Mat = Vec<i64>;

pub fn mat_mul(a: &[i64], b: &[i64], r: usize) -> Mat {
    let mut out = vec![0i64; r * r];
    for i in 0..r {
        for k in 0..r {
            let x = a[i * r + k];
            if x == 0 {
                continue;
            }
            for j in 0..r {
                out[i * r + j] += x * b[k * r + j];
            }
        }
    }
    out
}

pub fn mat_apply(m: &[i64], v: &[i64]) -> Vec<i64> {
    let r = v.len();
    (0..r).map(|i| (0..r).map(|j| m[i * r + j] * v[j]).sum()).collect()
}

pub fn identity(r: usize) -> Mat {
    let mut m = vec![0i64; r * r];
    for i in 0..r {
        m[i * r + i] = 1;
    }
    m
}

/// Reflection in the root `beta` (simple coordinates).
pub fn reflection(d: &RootDatum, beta: &[i64]) -> Mat {
    let r = d.rank();
    let b = d.ambient(beta);
    let nb: i64 = b.iter().map(|x| x * x).sum();
    let mut m = identity(r);
    for j in 0..r {
        let aj = d.ambient(&crate::rootdata::unit(r, j));
        let p = 2 * aj.iter().zip(&b).map(|(x, y)| x * y).sum::<i64>() / nb;
        for i in 0..r {
            m[i * r + j] -= p * beta[i];
        }
    }
    m
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub label: Label,
    pub size: usize,
    /// Index of the representative element.
    pub rep: usize,
    /// Characteristic polynomial on the reflection representation,
    /// coefficients from `x^r` down to `x^0`.
    pub char_poly: Vec<i128>,
    pub fixed_dim: usize,
    pub order: usize,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub datum: RootDatum,
    elts: Vec<Mat>,
    words: Vec<Vec<u8>>,
    index: BTreeMap<Mat, usize>,
    gens: Vec<Mat>,
    pub classes: Vec<ConjClass>,
    elt_class: Vec<usize>,
}

impl WeylGroup {
    pub fn new(datum: &RootDatum) -> Result<WeylGroup> {
        let r = datum.rank();
        let gens: Vec<Mat> = (0..r).map(|i| reflection(datum, &crate::rootdata::unit(r, i))).collect();
        let mut elts = vec![identity(r)];
        let mut words: Vec<Vec<u8>> = vec![Vec::new()];
        let mut index = BTreeMap::new();
        index.insert(identity(r), 0usize);
        let mut queue = VecDeque::from([0usize]);
        while let Some(w) = queue.pop_front() {
            for (i, g) in gens.iter().enumerate() {
                let n = mat_mul(g, &elts[w], r);
                if index.contains_key(&n) {
                    continue;
                }
                if elts.len() >= MAX_ORDER {
                    return Err(Error::GroupTooLarge(elts.len() + 1));
                }
                let mut word = vec![i as u8];
                word.extend_from_slice(&words[w]);
                index.insert(n.clone(), elts.len());
                elts.push(n);
                words.push(word);
                queue.push_back(elts.len() - 1);
            }
        }
        let mut g = WeylGroup {
            datum: datum.clone(),
            elts,
            words,
            index,
            gens,
            classes: Vec::new(),
            elt_class: Vec::new(),
        };
        g.build_classes()?;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.elts.len()
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elts[i]
    }

    pub fn word(&self, i: usize) -> &[u8] {
        &self.words[i]
    }

    pub fn generators(&self) -> &[Mat] {
        &self.gens
    }

    pub fn index_of(&self, m: &[i64]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn class_of(&self, elt: usize) -> usize {
        self.elt_class[elt]
    }

    pub fn class_of_matrix(&self, m: &[i64]) -> Result<usize> {
        self.index_of(m)
            .map(|i| self.elt_class[i])
            .ok_or_else(|| Error::Internal("matrix is not an element of W".into()))
    }

    /// Evaluate a word in the simple reflections.
    pub fn eval_word(&self, word: &[u8]) -> Mat {
        let r = self.rank();
        word.iter().fold(identity(r), |acc, i| mat_mul(&acc, &self.gens[*i as usize], r))
    }

    pub fn identity_class(&self) -> usize {
        self.elt_class[0]
    }

    pub fn class_index(&self, label: &Label) -> Option<usize> {
        self.classes.iter().position(|c| c.label == *label)
    }

    /// Look up a class by its printed label.
    pub fn class_by_name(&self, s: &str) -> Option<usize> {
        let s = s.trim().trim_start_matches('[').trim_end_matches(']');
        self.classes.iter().position(|c| format!("{}", c.label) == s)
    }

    fn build_classes(&mut self) -> Result<()> {
        let r = self.rank();
        let n = self.elts.len();
        let mut cls = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for e in 0..n {
            if cls[e] != usize::MAX {
                continue;
            }
            let id = members.len();
            cls[e] = id;
            let mut stack = vec![e];
            let mut mem = Vec::new();
            while let Some(x) = stack.pop() {
                mem.push(x);
                for g in &self.gens {
                    let y = mat_mul(&mat_mul(g, &self.elts[x], r), g, r);
                    let yi = self.index[&y];
                    if cls[yi] == usize::MAX {
                        cls[yi] = id;
                        stack.push(yi);
                    }
                }
            }
            members.push(mem);
        }
        let mut classes: Vec<ConjClass> = Vec::new();
        for mem in &members {
            let rep = *mem.iter().min().unwrap();
            let m = &self.elts[rep];
            let rows: Vec<Vec<i128>> = (0..r).map(|i| (0..r).map(|j| m[i * r + j] as i128).collect()).collect();
            let char_poly = berkowitz(&rows);
            let shifted: Vec<Vec<Q>> = (0..r)
                .map(|i| (0..r).map(|j| q((m[i * r + j] - (i == j) as i64) as i128)).collect())
                .collect();
            let fixed_dim = r - rank(&shifted);
            let mut order = 1;
            let mut p = m.clone();
            while p != identity(r) {
                p = mat_mul(&p, m, r);
                order += 1;
            }
            classes.push(ConjClass {
                label: Label::Named(alloc::string::String::new()),
                size: mem.len(),
                rep,
                char_poly,
                fixed_dim,
                order,
            });
        }
        self.classes = classes;
        self.elt_class = cls;
        self.assign_labels()?;
        // canonical order: by label
        let mut perm: Vec<usize> = (0..self.classes.len()).collect();
        perm.sort_by(|a, b| self.classes[*a].label.cmp(&self.classes[*b].label));
        let mut inv = vec![0; perm.len()];
        for (new, old) in perm.iter().enumerate() {
            inv[*old] = new;
        }
        self.classes = perm.iter().map(|i| self.classes[*i].clone()).collect();
        for c in self.elt_class.iter_mut() {
            *c = inv[*c];
        }
        Ok(())
    }

    /// Action of an element on the ambient lattice (classical types), as a
    /// signed permutation: `e_k ↦ sign·e_{target}`.
    pub fn signed_permutation(&self, elt: usize) -> Result<Vec<(usize, i64)>> {
        let d = &self.datum;
        let r = d.rank();
        let dim = d.ambient_dim();
        let m = &self.elts[elt];
        // basis: simple roots, plus the all-ones vector for type A
        let mut s: Vec<Vec<Q>> = vec![vec![q(0); dim]; dim];
        for j in 0..r {
            for i in 0..dim {
                s[i][j] = q(d.simple[j][i] as i128);
            }
        }
        if dim == r + 1 {
            for row in s.iter_mut() {
                row[r] = q(1);
            }
        } else if dim != r {
            return Err(Error::Internal("ambient action needs a classical datum".into()));
        }
        let sinv = invert(&s).ok_or_else(|| Error::Internal("singular simple-root basis".into()))?;
        let mut big = vec![vec![q(0); dim]; dim];
        for i in 0..r {
            for j in 0..r {
                big[i][j] = q(m[i * r + j] as i128);
            }
        }
        if dim == r + 1 {
            big[r][r] = q(1);
        }
        let prod = |a: &[Vec<Q>], b: &[Vec<Q>]| -> Vec<Vec<Q>> {
            (0..dim)
                .map(|i| (0..dim).map(|j| (0..dim).map(|k| a[i][k] * b[k][j]).sum()).collect())
                .collect()
        };
        let amb = prod(&prod(&s, &big), &sinv);
        let mut out = Vec::with_capacity(dim);
        for k in 0..dim {
            let nz: Vec<usize> = (0..dim).filter(|i| amb[*i][k] != q(0)).collect();
            if nz.len() != 1 || !amb[nz[0]][k].is_integer() || amb[nz[0]][k].to_integer().abs() != 1 {
                return Err(Error::Internal(format!("element {elt} is not a signed permutation")));
            }
            out.push((nz[0], amb[nz[0]][k].to_integer() as i64));
        }
        Ok(out)
    }

    /// Element with the given ambient signed permutation (classical types).
    pub fn element_from_signed_permutation(&self, sp: &[(usize, i64)]) -> Result<usize> {
        let d = &self.datum;
        let r = d.rank();
        let dim = d.ambient_dim();
        // image of α_j = Σ_i a_ij e_i, expressed back in simple coordinates
        let mut s: Vec<Vec<Q>> = vec![vec![q(0); r]; r];
        for j in 0..r {
            for i in 0..r {
                s[i][j] = q(d.simple[j][i] as i128);
            }
        }
        let sinv = invert(&s).ok_or_else(|| Error::Internal("singular simple-root basis".into()))?;
        let mut m = vec![0i64; r * r];
        for j in 0..r {
            let mut img = vec![0i64; dim];
            for (k, c) in d.simple[j].iter().enumerate() {
                let (t, sg) = sp[k];
                img[t] += c * sg;
            }
            // type A: drop the last coordinate, the sum-zero constraint fixes it
            for i in 0..r {
                let v: Q = (0..r).map(|k| sinv[i][k] * q(img[k] as i128)).sum();
                if !v.is_integer() {
                    return Err(Error::Internal("non-integral image".into()));
                }
                m[i * r + j] = v.to_integer() as i64;
            }
        }
        self.index_of(&m).ok_or_else(|| Error::Internal("signed permutation not in W".into()))
    }

    fn assign_labels(&mut self) -> Result<()> {
        let fam = self.datum.ty.family;
        let mut labels = Vec::with_capacity(self.classes.len());
        for c in &self.classes {
            let l = match fam {
                Family::A | Family::B | Family::C | Family::D => {
                    let sp = self.signed_permutation(c.rep)?;
                    let (pos, neg) = signed_cycle_type(&sp);
                    if fam == Family::A {
                        Label::Part(pos)
                    } else {
                        Label::Bi(pos, neg)
                    }
                }
                _ => Label::Named(self.exceptional_name(c)),
            };
            labels.push(l);
        }
        if fam == Family::D {
            self.split_d_labels(&mut labels)?;
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Internal(format!("class labels of {} collide: {labels:?}", self.datum.ty)));
        }
        for (c, l) in self.classes.iter_mut().zip(labels) {
            c.label = l;
        }
        Ok(())
    }

    fn split_d_labels(&self, labels: &mut [Label]) -> Result<()> {
        let n = self.rank();
        for i in 0..labels.len() {
            let Label::Bi(pos, neg) = labels[i].clone() else { continue };
            if !neg.is_empty() || pos.iter().any(|p| p % 2 == 1) {
                continue;
            }
            // standard representative: consecutive positive cycles
            let mut sp = vec![(0usize, 1i64); n];
            let mut start = 0;
            for p in &pos {
                let p = *p as usize;
                for k in 0..p {
                    sp[start + k] = (start + (k + 1) % p, 1);
                }
                start += p;
            }
            let std_class = self.elt_class[self.element_from_signed_permutation(&sp)?];
            let sign = if std_class == i { Sign::Plus } else { Sign::Minus };
            labels[i] = Label::SplitBi(pos, neg, sign);
        }
        Ok(())
    }

    /// Number of positive roots of each length sent to their negatives.
    pub fn negated_roots(&self, elt: usize) -> (usize, usize) {
        let d = &self.datum;
        let m = &self.elts[elt];
        let mut long = 0;
        let mut short = 0;
        for b in &d.positive {
            let img = mat_apply(m, b);
            if img.iter().zip(b).all(|(x, y)| *x == -*y) {
                if d.is_long(b) {
                    long += 1;
                } else {
                    short += 1;
                }
            }
        }
        (long, short)
    }

    /// Number of positive roots of each length fixed by the element.
    pub fn fixed_roots(&self, elt: usize) -> (usize, usize) {
        let d = &self.datum;
        let m = &self.elts[elt];
        let fixed = d.positive.iter().filter(|b| mat_apply(m, b) == **b);
        fixed.fold((0, 0), |(l, s), b| if d.is_long(b) { (l + 1, s) } else { (l, s + 1) })
    }

    fn exceptional_name(&self, c: &ConjClass) -> alloc::string::String {
        let (nl, ns) = self.negated_roots(c.rep);
        if self.datum.ty.family == Family::G {
            let s = match (c.order, c.fixed_dim) {
                (1, _) => "1",
                (2, 1) if nl == 1 => "A1",
                (2, 1) => "~A1",
                (2, _) => "A1+~A1",
                (3, _) => "A2",
                _ => "G2",
            };
            return s.into();
        }
        let (fl, fs) = self.fixed_roots(c.rep);
        format!("o{}-f{}-s{}-n{}.{}-z{}.{}", c.order, c.fixed_dim, c.size, nl, ns, fl, fs)
    }
}

/// Positive and negative cycle lengths of a signed permutation.
pub fn signed_cycle_type(sp: &[(usize, i64)]) -> (Vec<u32>, Vec<u32>) {
    let n = sp.len();
    let mut seen = vec![false; n];
    let (mut pos, mut neg) = (Vec::new(), Vec::new());
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let (mut len, mut sign, mut k) = (0u32, 1i64, s);
        while !seen[k] {
            seen[k] = true;
            len += 1;
            sign *= sp[k].1;
            k = sp[k].0;
        }
        if sign > 0 {
            pos.push(len);
        } else {
            neg.push(len);
        }
    }
    (normalize(pos), normalize(neg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_datum, CartanType};

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(&build_root_datum(CartanType::parse(s).unwrap()).unwrap()).unwrap()
    }

    #[test]
    fn orders_match_degrees() {
        for s in ["A1", "A2", "A3", "B2", "C3", "D4", "G2", "F4"] {
            let g = group(s);
            assert_eq!(g.order() as u64, g.datum.weyl_order(), "{s}");
            assert_eq!(g.classes.iter().map(|c| c.size).sum::<usize>(), g.order());
        }
    }

    #[test]
    fn class_labels() {
        let a2 = group("A2");
        let names: Vec<_> = a2.classes.iter().map(|c| (format!("{}", c.label), c.size)).collect();
        assert_eq!(names, vec![("1,1,1".into(), 1), ("2,1".into(), 3), ("3".into(), 2)]);
        assert_eq!(group("C2").classes.len(), 5);
        assert_eq!(group("D4").classes.len(), 13);
        assert_eq!(group("F4").classes.len(), 25);
        let g2 = group("G2");
        let mut n: Vec<_> = g2.classes.iter().map(|c| format!("{}", c.label)).collect();
        n.sort();
        assert_eq!(n, vec!["1", "A1", "A1+~A1", "A2", "G2", "~A1"]);
    }

    #[test]
    fn words_evaluate_to_elements() {
        let g = group("B3");
        for i in (0..g.order()).step_by(7) {
            assert_eq!(g.eval_word(g.word(i)), *g.element(i));
        }
    }
}
