//! Matrix model of parahoric lattices in the loop algebra of a classical
//! group, nilpotent lifts, seeded generic sampling, characteristic
//! polynomials over `Z[t]/t^K` and discriminant valuations.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::arith::{berkowitz, ceil_q, floor_q, invert, large_primes, q, rank, Ring, Q};
use crate::error::{Error, Result};
use crate::label::{Label, Sign};
use crate::orbits::{defining_size, ProductOrbits};
use crate::partition::{multiplicity, normalize, Partition};
use crate::rootdata::{Family, LeviFactor, Parahoric, RootDatum};
use crate::tpoly::TPoly;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Form {
    None,
    Symmetric,
    Alternating,
}

/// The defining representation of a classical group.
#[derive(Clone, Debug)]
pub struct Model {
    pub family: Family,
    pub n: usize,
    pub form: Form,
    /// Weight of each basis vector, in ambient coordinates.
    weights: Vec<Vec<i64>>,
    /// `s_i = J_{i, n-1-i}` for the antidiagonal form.
    signs: Vec<i64>,
}

impl Model {
    pub fn new(d: &RootDatum) -> Result<Model> {
        let fam = d.ty.family;
        if !fam.is_classical() {
            return Err(Error::UnsupportedType(format!("no loop-lattice model for {}", d.ty)));
        }
        let n = defining_size(d.ty);
        let r = d.rank();
        let dim = d.ambient_dim();
        let e = |i: usize, s: i64| {
            let mut v = vec![0i64; dim];
            v[i] = s;
            v
        };
        let weights: Vec<Vec<i64>> = match fam {
            Family::A => (0..n).map(|i| e(i, 1)).collect(),
            _ => (0..n)
                .map(|i| {
                    if i < r {
                        e(i, 1)
                    } else if n - 1 - i < r {
                        e(n - 1 - i, -1)
                    } else {
                        vec![0; dim]
                    }
                })
                .collect(),
        };
        let form = match fam {
            Family::A => Form::None,
            Family::C => Form::Alternating,
            _ => Form::Symmetric,
        };
        let signs = (0..n).map(|i| if form == Form::Alternating && i >= n / 2 { -1 } else { 1 }).collect();
        Ok(Model { family: fam, n, form, weights, signs })
    }

    pub fn partner(&self, i: usize) -> usize {
        self.n - 1 - i
    }

    /// Partner entry and the factor relating them: `γ_ij = f·γ_partner`.
    pub fn partner_entry(&self, i: usize, j: usize) -> Option<((usize, usize), i64)> {
        if self.form == Form::None {
            return None;
        }
        let (ip, jp) = (self.partner(i), self.partner(j));
        Some(((jp, ip), -self.signs[jp] * self.signs[ip]))
    }

    /// Weight of the entry `(i, j)`: `wt(i) - wt(j)`.
    pub fn entry_weight(&self, i: usize, j: usize) -> Vec<i64> {
        self.weights[i].iter().zip(&self.weights[j]).map(|(a, b)| a - b).collect()
    }

    /// Entry carrying the root vector of `beta` (ambient coordinates).
    pub fn root_entry(&self, beta: &[i64]) -> Result<(usize, usize)> {
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && self.entry_weight(i, j) == beta && self.entry_allowed(i, j) {
                    return Ok((i, j));
                }
            }
        }
        Err(Error::Internal(format!("no matrix entry of weight {beta:?}")))
    }

    fn entry_allowed(&self, i: usize, j: usize) -> bool {
        match self.partner_entry(i, j) {
            Some((p, f)) => p != (i, j) || f == 1,
            None => true,
        }
    }

    /// Representatives of the independent entries of the Lie algebra.
    pub fn free_entries(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut done = vec![false; n * n];
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if done[i * n + j] {
                    continue;
                }
                done[i * n + j] = true;
                if let Some(((p, q2), _)) = self.partner_entry(i, j) {
                    done[p * n + q2] = true;
                }
                if !self.entry_allowed(i, j) {
                    continue;
                }
                if self.form == Form::None && i == j && i == n - 1 {
                    continue; // trace zero fixes the last diagonal entry
                }
                out.push((i, j));
            }
        }
        out
    }
}

/// `x` as an ambient vector, from its values on the simple roots.
pub fn x_ambient(d: &RootDatum, p: &Parahoric) -> Vec<Q> {
    let r = d.rank();
    let amb: Vec<Vec<i64>> = (0..r).map(|i| d.ambient(&crate::rootdata::unit(r, i))).collect();
    let gram: Vec<Vec<Q>> = (0..r)
        .map(|i| (0..r).map(|j| q(amb[i].iter().zip(&amb[j]).map(|(a, b)| a * b).sum::<i64>() as i128)).collect())
        .collect();
    let ginv = invert(&gram).expect("Gram matrix is invertible");
    let c: Vec<Q> = (0..r).map(|i| (0..r).map(|k| ginv[i][k] * p.x[k]).sum()).collect();
    (0..d.ambient_dim()).map(|a| (0..r).map(|k| c[k] * q(amb[k][a] as i128)).sum()).collect()
}

fn pair(v: &[i64], x: &[Q]) -> Q {
    v.iter().zip(x).map(|(a, b)| q(*a as i128) * b).sum()
}

/// Lower bounds on the `t`-valuation of each entry of `Lie P` and `Lie P⁺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationPattern {
    pub n: usize,
    pub shifts: Vec<i64>,
    pub plus_shifts: Vec<i64>,
}

pub fn valuation_pattern(model: &Model, d: &RootDatum, p: &Parahoric) -> ValuationPattern {
    let x = x_ambient(d, p);
    let n = model.n;
    let mut shifts = vec![0; n * n];
    let mut plus_shifts = vec![0; n * n];
    for i in 0..n {
        for j in 0..n {
            let a = pair(&model.entry_weight(i, j), &x);
            shifts[i * n + j] = ceil_q(&-a) as i64;
            plus_shifts[i * n + j] = floor_q(&-a) as i64 + 1;
        }
    }
    ValuationPattern { n, shifts, plus_shifts }
}

/// A square matrix over `Z[t]/t^K`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LoopElement {
    pub n: usize,
    pub k: usize,
    pub entries: Vec<TPoly>,
}

impl LoopElement {
    pub fn zero(n: usize, k: usize) -> Self {
        LoopElement { n, k, entries: vec![TPoly::zero(k); n * n] }
    }

    pub fn get(&self, i: usize, j: usize) -> &TPoly {
        &self.entries[i * self.n + j]
    }

    fn add_coeff(&mut self, i: usize, j: usize, deg: usize, c: i128) {
        let e = &mut self.entries[i * self.n + j];
        let v = e.coeff(deg);
        e.set_coeff(deg, v + c);
    }

    /// Add `c·t^deg` at `(i, j)` and the matching multiple at its partner.
    pub fn add_with_partner(&mut self, model: &Model, i: usize, j: usize, deg: usize, c: i128) {
        self.add_coeff(i, j, deg, c);
        if let Some(((p, q2), f)) = model.partner_entry(i, j) {
            if (p, q2) != (i, j) {
                self.add_coeff(p, q2, deg, c * f as i128);
            }
        }
    }

    pub fn truncate(&self, k: usize) -> Self {
        LoopElement { n: self.n, k, entries: self.entries.iter().map(|e| e.truncate(k)).collect() }
    }

    /// Value at `t = 1` as an integer matrix.
    pub fn at_one(&self) -> Vec<Vec<i128>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).coeffs().iter().sum()).collect()).collect()
    }

    /// Constant term.
    pub fn at_zero(&self) -> Vec<Vec<i128>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).coeff(0)).collect()).collect()
    }

    /// Check the form constraint `γᵀJ + Jγ = 0` and trace zero for type A.
    pub fn satisfies_form(&self, model: &Model) -> bool {
        let n = self.n;
        if model.form == Form::None {
            let mut tr = TPoly::zero(self.k);
            for i in 0..n {
                tr = tr.add(self.get(i, i));
            }
            return tr.is_zero();
        }
        (0..n).all(|i| {
            (0..n).all(|j| match model.partner_entry(i, j) {
                Some(((p, q2), f)) => *self.get(i, j) == self.get(p, q2).scale(f as i128),
                None => true,
            })
        })
    }
}

/// Jordan type of a nilpotent integer matrix, from ranks of its powers.
pub fn jordan_type(m: &[Vec<i128>]) -> Partition {
    let n = m.len();
    let to_q = |a: &[Vec<i128>]| -> Vec<Vec<Q>> { a.iter().map(|r| r.iter().map(|x| q(*x)).collect()).collect() };
    let mut ranks = vec![n];
    let mut p = m.to_vec();
    loop {
        let rk = rank(&to_q(&p));
        ranks.push(rk);
        if rk == 0 || ranks.len() > n + 1 {
            break;
        }
        p = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| p[i][k] * m[k][j]).sum()).collect()).collect();
    }
    // number of blocks of size >= k is ranks[k-1] - ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut parts = Vec::new();
    for k in 0..at_least.len() {
        let exact = at_least[k] - at_least.get(k + 1).copied().unwrap_or(0);
        for _ in 0..exact {
            parts.push(k as u32 + 1);
        }
    }
    normalize(parts)
}

fn root_from_ambient(d: &RootDatum, v: &[Q]) -> Result<Vec<i64>> {
    d.roots()
        .into_iter()
        .find(|r| d.ambient(r).iter().zip(v).all(|(a, b)| q(*a as i128) == *b))
        .ok_or_else(|| Error::Internal(format!("{v:?} is not a root")))
}

/// Root vectors (with coefficients) whose sum is a representative of the
/// factor orbit, as roots of the big datum.
fn factor_nilpotent(
    d: &RootDatum,
    model: &Model,
    f: &LeviFactor,
    label: &Label,
) -> Result<Vec<(Vec<i64>, i128)>> {
    let lam = label
        .partition()
        .ok_or_else(|| Error::OrbitLeviMismatch(format!("{label} is not a classical orbit")))?
        .clone();
    let m = f.ty.rank;
    if f.ty.family == Family::A {
        let mut out = Vec::new();
        let mut pos = 0usize;
        for part in &lam {
            for k in 0..(*part as usize).saturating_sub(1) {
                out.push((f.simple[pos + k].clone(), 1));
            }
            pos += *part as usize;
        }
        return Ok(out);
    }
    // factor coordinates ε_1..ε_m as rational ambient vectors
    let beta: Vec<Vec<Q>> = f.simple.iter().map(|s| d.ambient(s).iter().map(|x| q(*x as i128)).collect()).collect();
    let dim = beta[0].len();
    let half = Q::new(1, 2);
    let mut eps: Vec<Vec<Q>> = vec![vec![Q::zero(); dim]; m];
    match f.ty.family {
        Family::C => eps[m - 1] = beta[m - 1].iter().map(|x| x * half).collect(),
        Family::B => eps[m - 1] = beta[m - 1].clone(),
        Family::D => {
            eps[m - 1] = beta[m - 1].iter().zip(&beta[m - 2]).map(|(a, b)| (a - b) * half).collect();
            eps[m - 2] = beta[m - 1].iter().zip(&beta[m - 2]).map(|(a, b)| (a + b) * half).collect();
        }
        _ => return Err(Error::UnsupportedType(format!("{} factor", f.ty))),
    }
    let top = if f.ty.family == Family::D { m - 2 } else { m - 1 };
    for i in (0..top).rev() {
        eps[i] = eps[i + 1].iter().zip(&beta[i]).map(|(a, b)| a + b).collect();
    }
    if f.ty.family == Family::D {
        if let Label::Tagged(_, Sign::Minus) = label {
            eps[m - 1] = eps[m - 1].iter().map(|x| -x).collect();
        }
    }
    let comb = |a: usize, sa: i64, b: Option<(usize, i64)>| -> Vec<Q> {
        (0..dim)
            .map(|k| {
                let mut v = q(sa as i128) * eps[a][k];
                if let Some((bi, sb)) = b {
                    v += q(sb as i128) * eps[bi][k];
                }
                v
            })
            .collect()
    };
    // lay out blocks on consecutive coordinates
    let mut plain: Vec<(Vec<Q>, i128)> = Vec::new();
    let mut pairs: Vec<(Vec<usize>, Vec<usize>, usize)> = Vec::new();
    let mut next = 0usize;
    let chain = |start: usize, len: usize, plain: &mut Vec<(Vec<Q>, i128)>| {
        for i in start..start + len.saturating_sub(1) {
            plain.push((comb(i, 1, Some((i + 1, -1))), 1));
        }
    };
    let mut distinct: Vec<u32> = lam.clone();
    distinct.dedup();
    let mut leftovers: Vec<u32> = Vec::new();
    for part in distinct {
        let mult = multiplicity(&lam, part);
        for _ in 0..mult / 2 {
            chain(next, part as usize, &mut plain);
            next += part as usize;
        }
        if mult % 2 == 1 {
            leftovers.push(part);
        }
    }
    match f.ty.family {
        Family::C => {
            for part in leftovers {
                let len = part as usize / 2;
                chain(next, len, &mut plain);
                plain.push((comb(next + len - 1, 2, None), 1));
                next += len;
            }
        }
        _ => {
            if f.ty.family == Family::B {
                let part = leftovers.remove(0);
                let len = (part as usize - 1) / 2;
                if len > 0 {
                    chain(next, len, &mut plain);
                    plain.push((comb(next + len - 1, 1, None), 1));
                }
                next += len;
            }
            for pr in leftovers.chunks(2) {
                let (a, c) = ((pr[0] as usize - 1) / 2, (pr[1] as usize - 1) / 2);
                let u: Vec<usize> = (next..next + a).collect();
                let v: Vec<usize> = (next + a..next + a + c).collect();
                let dcoord = next + a + c;
                chain(next, a, &mut plain);
                chain(next + a, c, &mut plain);
                pairs.push((u, v, dcoord));
                next += a + c + 1;
            }
        }
    }
    if next != m {
        return Err(Error::OrbitLeviMismatch(format!("{label} does not fit a {} factor", f.ty)));
    }
    let to_roots = |terms: &[(Vec<Q>, i128)]| -> Result<Vec<(Vec<i64>, i128)>> {
        terms.iter().map(|(v, c)| Ok((root_from_ambient(d, v)?, *c))).collect()
    };
    let base = to_roots(&plain)?;
    if pairs.is_empty() {
        return Ok(base);
    }
    // the two odd blocks of a pair live on complementary lines of the shared
    // coordinate; search the relative signs that realize them
    let n_big = model.n;
    let want = {
        let mut w = lam.clone();
        w.extend(core::iter::repeat_n(1, n_big - lam.iter().sum::<u32>() as usize));
        normalize(w)
    };
    let np = pairs.len();
    for mask in 0..(1u32 << (2 * np)) {
        let mut terms = plain.clone();
        for (k, (u, v, dc)) in pairs.iter().enumerate() {
            let s1 = if mask & (1 << (2 * k)) != 0 { -1 } else { 1 };
            let s2 = if mask & (1 << (2 * k + 1)) != 0 { -1 } else { 1 };
            if let Some(&ul) = u.last() {
                terms.push((comb(ul, 1, Some((*dc, -1))), 1));
                terms.push((comb(ul, 1, Some((*dc, 1))), s1));
            }
            if let Some(&vl) = v.last() {
                terms.push((comb(vl, 1, Some((*dc, -1))), 1));
                terms.push((comb(vl, 1, Some((*dc, 1))), s2));
            }
        }
        let roots = to_roots(&terms)?;
        let mut e = LoopElement::zero(n_big, 1);
        for (r, c) in &roots {
            let (i, j) = model.root_entry(&d.ambient(r))?;
            e.add_with_partner(model, i, j, 0, *c);
        }
        if jordan_type(&e.at_one()) == want {
            return Ok(roots);
        }
    }
    Err(Error::Internal(format!("no sign choice realizes {label} in {}", f.ty)))
}

/// Lift of a levi orbit representative: each root vector `e_β` is placed
/// with the factor `t^{-β(x)}`.
pub fn lift_nilpotent(
    d: &RootDatum,
    model: &Model,
    p: &Parahoric,
    orbits: &ProductOrbits,
    o: &[usize],
    k: usize,
) -> Result<LoopElement> {
    if orbits.factors.len() != p.levi.factors.len() || o.len() != orbits.factors.len() {
        return Err(Error::OrbitLeviMismatch("orbit tuple does not match the levi".into()));
    }
    let mut e = LoopElement::zero(model.n, k);
    for ((f, od), i) in p.levi.factors.iter().zip(&orbits.factors).zip(o) {
        for (root, c) in factor_nilpotent(d, model, f, &od.orbits[*i].label)? {
            let v = -p.value(&root);
            if !v.is_integer() || v < Q::zero() || v > Q::one() {
                return Err(Error::Internal(format!("levi root {root:?} has value {v} at x")));
            }
            let (a, b) = model.root_entry(&d.ambient(&root))?;
            e.add_with_partner(model, a, b, v.to_integer() as usize, c);
        }
    }
    Ok(e)
}

/// `e_lift` plus uniform nonzero integers in `[-bound, bound]` on every
/// coefficient of a basis of `Lie P⁺` modulo `t^k`.
pub fn sample_generic(
    e_lift: &LoopElement,
    model: &Model,
    pattern: &ValuationPattern,
    bound: i128,
    seed: u64,
) -> LoopElement {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = e_lift.clone();
    if bound == 0 {
        return g;
    }
    let span = (2 * bound) as u64;
    let n = model.n;
    for (i, j) in model.free_entries() {
        let lo = pattern.plus_shifts[i * n + j].max(0) as usize;
        for deg in lo..g.k {
            let c = (rng.next_u64() % span) as i128 - bound;
            let c = if c >= 0 { c + 1 } else { c };
            g.add_with_partner(model, i, j, deg, c);
        }
    }
    if model.form == Form::None {
        let mut tr = TPoly::zero(g.k);
        for i in 0..n - 1 {
            tr = tr.add(g.get(i, i));
        }
        g.entries[(n - 1) * n + (n - 1)] = tr.neg();
    }
    g
}

/// `det(x·I − γ)`, coefficients from `x^0` up to `x^n`.
pub fn char_poly_t(g: &LoopElement) -> Vec<TPoly> {
    let rows: Vec<Vec<TPoly>> = (0..g.n).map(|i| (0..g.n).map(|j| g.get(i, j).clone()).collect()).collect();
    let mut c = berkowitz(&rows);
    c.reverse();
    c
}

// ---------------------------------------------------------------------------
// Discriminant valuation

fn modp(x: i128, p: u64) -> u64 {
    crate::arith::to_mod(x, p)
}

/// `t`-adic valuation of `det` of a matrix over `F_p[[t]]` known modulo
/// `t^prec`, by elimination with minimal-valuation pivots.
fn det_valuation_mod(mut m: Vec<Vec<Vec<u64>>>, p: u64, prec: usize) -> Option<usize> {
    use crate::arith::{mulmod, powmod};
    let n = m.len();
    let mut prec = prec;
    let mut total = 0usize;
    let val = |e: &[u64], prec: usize| e.iter().take(prec).position(|c| *c != 0);
    for col in 0..n {
        // pivot of least valuation in the remaining block
        let mut best: Option<(usize, usize, usize)> = None;
        for r in col..n {
            for c in col..n {
                if let Some(v) = val(&m[r][c], prec) {
                    if best.is_none_or(|b| v < b.2) {
                        best = Some((r, c, v));
                    }
                }
            }
        }
        let (r, c, v) = best?;
        m.swap(col, r);
        for row in m.iter_mut() {
            row.swap(col, c);
        }
        total += v;
        if v >= prec {
            return None;
        }
        // unit part of the pivot, inverted modulo t^(prec - v)
        let work = prec - v;
        let unit: Vec<u64> = (0..work).map(|k| m[col][col][k + v]).collect();
        let mut inv = vec![0u64; work];
        inv[0] = powmod(unit[0], p - 2, p);
        for k in 1..work {
            let mut s = 0u64;
            for j in 1..=k {
                s = (s + mulmod(unit[j], inv[k - j], p)) % p;
            }
            inv[k] = mulmod(p - s % p, inv[0], p) % p;
        }
        for rr in col + 1..n {
            // factor = (a / t^v) · unit^{-1}, known modulo t^(prec - v)
            let a: Vec<u64> = (0..work).map(|k| m[rr][col][k + v]).collect();
            let mut fac = vec![0u64; work];
            for i in 0..work {
                if a[i] == 0 {
                    continue;
                }
                for j in 0..work - i {
                    fac[i + j] = (fac[i + j] + mulmod(a[i], inv[j], p)) % p;
                }
            }
            for cc in col..n {
                let pivot_row = m[col][cc].clone();
                let target = &mut m[rr][cc];
                for i in 0..work {
                    if fac[i] == 0 {
                        continue;
                    }
                    for j in 0..work - i {
                        let sub = mulmod(fac[i], pivot_row[j], p);
                        target[i + j] = (target[i + j] + p - sub) % p;
                    }
                }
            }
        }
        prec -= v;
    }
    Some(total)
}

/// `val_t Res_x(f, f')` for a monic `f` given low-to-high in `x`.
pub fn resultant_valuation(f: &[TPoly]) -> Result<usize> {
    let deg = f.len() - 1;
    if deg <= 1 {
        return Ok(0);
    }
    let k = f[0].precision();
    let df: Vec<TPoly> = (1..=deg).map(|e| f[e].scale(e as i128)).collect();
    // Sylvester matrix: deg-1 shifted rows of f, deg shifted rows of f'
    let size = 2 * deg - 1;
    let zero = TPoly::zero(k);
    let mut rows: Vec<Vec<TPoly>> = Vec::new();
    for s in 0..deg - 1 {
        let mut row = vec![zero.clone(); size];
        for (e, c) in f.iter().enumerate() {
            row[s + e] = c.clone();
        }
        rows.push(row);
    }
    for s in 0..deg {
        let mut row = vec![zero.clone(); size];
        for (e, c) in df.iter().enumerate() {
            row[s + e] = c.clone();
        }
        rows.push(row);
    }
    // enough primes that their product exceeds any coefficient of the determinant
    let log_bound: u32 = rows
        .iter()
        .map(|r| 128 - r.iter().fold(1u128, |a, e| a.saturating_add(e.l1_norm())).leading_zeros())
        .sum();
    let count = log_bound as usize / 60 + 2;
    let mut best: Option<usize> = None;
    for p in large_primes(count) {
        let m: Vec<Vec<Vec<u64>>> =
            rows.iter().map(|r| r.iter().map(|e| e.coeffs().iter().map(|c| modp(*c, p)).collect()).collect()).collect();
        match det_valuation_mod(m, p, k) {
            Some(v) => best = Some(best.map_or(v, |b| b.min(v))),
            None => {
                return Err(Error::InsufficientTruncation(format!("resultant vanishes modulo t^{k}")));
            }
        }
    }
    Ok(best.unwrap())
}

fn poly_valuation(c: &TPoly) -> Result<usize> {
    c.valuation().ok_or_else(|| Error::InsufficientTruncation("constant term vanishes modulo t^K".into()))
}

/// Valuation of the Lie-algebra discriminant `∏_α α(γ)`, from the
/// characteristic polynomial in the defining representation. For B/C/D the
/// eigenvalues are `±λ_i` and the resultant is taken in `u = x²`.
pub fn lie_discriminant_valuation(family: Family, p: &[TPoly]) -> Result<usize> {
    let even = |f: &[TPoly]| -> Vec<TPoly> { f.iter().step_by(2).cloned().collect() };
    match family {
        Family::A => resultant_valuation(p),
        Family::B => {
            let q2 = even(&p[1..]);
            Ok(resultant_valuation(&q2)? + poly_valuation(&q2[0])?)
        }
        Family::C => {
            let q2 = even(p);
            Ok(resultant_valuation(&q2)? + poly_valuation(&q2[0])?)
        }
        Family::D => resultant_valuation(&even(p)),
        _ => Err(Error::UnsupportedType(format!("{family:?}"))),
    }
}

/// `δ = (val Δ − (r − dim t^w))/2`.
pub fn delta(val_disc: usize, rank: usize, fixed_dim: usize) -> Q {
    Q::new(val_disc as i128 - (rank - fixed_dim) as i128, 2)
}

/// Valuations `val α(γ)` over all roots, for a diagonal element with the
/// given entries on the ambient coordinates.
pub fn root_valuations(d: &RootDatum, diag: &[TPoly]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for r in d.roots() {
        let amb = d.ambient(&r);
        let k = diag[0].precision();
        let mut v = TPoly::zero(k);
        for (c, x) in amb.iter().zip(diag) {
            v = v.add(&x.scale(*c as i128));
        }
        out.push(poly_valuation(&v)?);
    }
    out.sort_unstable();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_parahoric, build_root_datum, CartanType};

    fn datum(s: &str) -> RootDatum {
        build_root_datum(CartanType::parse(s).unwrap()).unwrap()
    }

    #[test]
    fn iwahori_patterns() {
        let d = datum("A1");
        let m = Model::new(&d).unwrap();
        let p = build_parahoric(&[], &d).unwrap();
        let vp = valuation_pattern(&m, &d, &p);
        assert_eq!(vp.shifts, vec![0, 0, 1, 0]);
        assert_eq!(vp.plus_shifts, vec![1, 0, 1, 1]);
        let d3 = datum("A2");
        let m3 = Model::new(&d3).unwrap();
        let vp = valuation_pattern(&m3, &d3, &build_parahoric(&[], &d3).unwrap());
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(vp.shifts[i * 3 + j], (i > j) as i64);
            }
        }
        let full = build_parahoric(&[1, 2], &d3).unwrap();
        let vp = valuation_pattern(&m3, &d3, &full);
        assert!(vp.shifts.iter().all(|s| *s == 0) && vp.plus_shifts.iter().all(|s| *s == 1));
    }

    #[test]
    fn samples_respect_the_form() {
        for s in ["A2", "B2", "C2", "D4"] {
            let d = datum(s);
            let m = Model::new(&d).unwrap();
            let p = build_parahoric(&[], &d).unwrap();
            let vp = valuation_pattern(&m, &d, &p);
            let g = sample_generic(&LoopElement::zero(m.n, 6), &m, &vp, 7, 3);
            assert!(g.satisfies_form(&m), "{s}");
            let cp = char_poly_t(&g);
            // p(-x) = (-1)^n p(x) for the orthogonal and symplectic cases
            if m.form != Form::None {
                for (e, c) in cp.iter().enumerate() {
                    if (m.n - e) % 2 == 1 {
                        assert!(c.is_zero(), "{s} odd coefficient {e}");
                    }
                }
            }
        }
    }

    #[test]
    fn discriminant_examples() {
        // x^2 - t: val disc = 1
        let p = vec![TPoly::from_coeffs(vec![0, -1], 8), TPoly::zero(8), TPoly::constant(1, 8)];
        assert_eq!(resultant_valuation(&p).unwrap(), 1);
        // (x - t)(x + t) = x^2 - t^2: val disc = 2
        let p = vec![TPoly::from_coeffs(vec![0, 0, -1], 8), TPoly::zero(8), TPoly::constant(1, 8)];
        assert_eq!(resultant_valuation(&p).unwrap(), 2);
        assert_eq!(delta(1, 1, 0), Q::zero());
    }

    #[test]
    fn jordan_types() {
        let m = vec![vec![0, 1, 0], vec![0, 0, 0], vec![0, 0, 0]];
        assert_eq!(jordan_type(&m), vec![2, 1]);
    }
}
