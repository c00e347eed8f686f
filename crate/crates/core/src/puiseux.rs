//! Newton-Puiseux analysis of characteristic polynomials over `Z[[t]]`
//! and the sampling oracle for Kazhdan-Lusztig maps.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::{large_primes, to_mod, Q};
use crate::fp;
use crate::error::{Error, Result};
use crate::label::{Label, Sign};
use crate::looplattice::{
    char_poly_t, delta, lie_discriminant_valuation, lift_nilpotent, sample_generic, valuation_pattern, LoopElement,
    Model,
};
use crate::orbits::ProductOrbits;
use crate::partition::normalize;
use crate::rootdata::{Family, Parahoric, RootDatum};
use crate::tpoly::TPoly;
use crate::weyl::WeylGroup;

/// One edge of the lower Newton polygon. Its `length` roots have valuation
/// `num/den` and fall into `length/den` Galois orbits of size `den`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub num: i64,
    pub den: i64,
    pub length: usize,
    /// Residual polynomial, low-to-high.
    pub residual: Vec<i128>,
}

impl Segment {
    pub fn orbits(&self) -> usize {
        self.length / self.den as usize
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Lower Newton polygon of a monic polynomial given low-to-high in `x`.
pub fn newton_polygon(p: &[TPoly]) -> Result<Vec<Segment>> {
    let n = p.len() - 1;
    let pts: Vec<(i64, i64)> =
        p.iter().enumerate().filter_map(|(e, c)| c.valuation().map(|v| (e as i64, v as i64))).collect();
    if pts.first().map(|pt| pt.0) != Some(0) {
        return Err(Error::InsufficientTruncation("constant coefficient vanishes modulo t^K".into()));
    }
    if pts.last() != Some(&(n as i64, 0)) {
        return Err(Error::Internal("polynomial is not monic".into()));
    }
    let hull = lower_hull(&pts);
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let ((e1, v1), (e2, v2)) = (w[0], w[1]);
        let (rise, run) = (v1 - v2, e2 - e1);
        let g = gcd(rise, run);
        let (num, den) = (rise / g, run / g);
        let k = run / den;
        let residual =
            (0..=k).map(|j| p[(e1 + j * den) as usize].coeff((v1 - j * num) as usize)).collect::<Vec<i128>>();
        out.push(Segment { num, den, length: run as usize, residual });
    }
    Ok(out)
}

enum Failure {
    Precision,
    Prime,
}

type Series = Vec<u64>;

fn series_val(s: &[u64]) -> Option<usize> {
    s.iter().position(|c| *c != 0)
}

/// Extended gcd: `(u, v)` with `u·b − v·a = 1` for coprime `a ≥ 0`, `b > 0`.
fn bezout(a: i64, b: i64) -> (i64, i64) {
    let (mut r0, mut r1, mut s0, mut s1, mut t0, mut t1) = (b, a, 1i64, 0i64, 0i64, 1i64);
    while r1 != 0 {
        let qt = r0 / r1;
        (r0, r1) = (r1, r0 - qt * r1);
        (s0, s1) = (s1, s0 - qt * s1);
        (t0, t1) = (t1, t0 - qt * t1);
    }
    // s0·b + t0·a = 1
    (s0, -t0)
}

fn fp_pow(x: u64, e: i64, p: u64) -> u64 {
    if e >= 0 {
        crate::arith::powmod(x, e as u64, p)
    } else {
        crate::arith::powmod(fp::inv(x, p), (-e) as u64, p)
    }
}

/// Galois orbits of the roots of positive valuation of a polynomial over
/// `F_p[[t]]`, as `(orbit size, root valuation)`.
fn branch_orbits(c: &[Series], p: u64, depth: usize) -> core::result::Result<Vec<(usize, Q)>, Failure> {
    if depth > 16 {
        return Err(Failure::Precision);
    }
    let Some(m) = c.iter().position(|s| s.first().is_some_and(|x| *x != 0)) else {
        return Err(Failure::Precision);
    };
    if m == 0 {
        return Ok(Vec::new());
    }
    let pts: Vec<(i64, i64)> =
        c[..=m].iter().enumerate().filter_map(|(e, s)| series_val(s).map(|v| (e as i64, v as i64))).collect();
    if pts[0].0 != 0 {
        return Err(Failure::Precision);
    }
    let hull = lower_hull(&pts);
    let mut out = Vec::new();
    for w in hull.windows(2) {
        let ((e1, v1), (e2, v2)) = (w[0], w[1]);
        let g = gcd(v1 - v2, e2 - e1);
        let (a, b) = ((v1 - v2) / g, (e2 - e1) / g);
        let k = (e2 - e1) / b;
        let slope = Q::new(a as i128, b as i128);
        let mut r: Vec<u64> = (0..=k).map(|j| c[(e1 + j * b) as usize][(v1 - j * a) as usize]).collect();
        fp::trim(&mut r);
        let sq = fp::gcd(&r, &fp::derivative(&r, p), p);
        let rad = fp::divrem(&r, &sq, p).0;
        let repeated = fp::gcd(&rad, &sq, p);
        let simple = fp::deg(&rad).unwrap_or(0) - fp::deg(&repeated).unwrap_or(0);
        out.extend(core::iter::repeat_n((b as usize, slope), simple));
        if fp::deg(&repeated).unwrap_or(0) == 0 {
            continue;
        }
        if !fp::splits(&repeated, p) {
            return Err(Failure::Prime);
        }
        let (u, v) = bezout(a, b);
        for xi in fp::roots(&repeated, p) {
            let mult = fp::root_multiplicity(&r, xi, p);
            // t = μ T^b, x = ν T^a (1 + x1)
            let (mu, nu) = (fp_pow(xi, v, p), fp_pow(xi, u, p));
            let sub = substitute(c, a, b, b * v1 + a * e1, mu, nu, p);
            let inner = branch_orbits(&sub, p, depth + 1)?;
            if inner.iter().map(|(s, _)| s).sum::<usize>() != mult {
                return Err(Failure::Precision);
            }
            out.extend(inner.into_iter().map(|(s, _)| (s * b as usize, slope)));
        }
    }
    Ok(out)
}

fn lower_hull(pts: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in pts {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 - a.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// `T^{-n0} · f(ν T^a (1 + x1))` with `t = μ T^b`, as a polynomial in `x1`.
fn substitute(c: &[Series], a: i64, b: i64, n0: i64, mu: u64, nu: u64, p: u64) -> Vec<Series> {
    use crate::arith::mulmod;
    let deg = c.len() - 1;
    let prec = c[0].len() as i64;
    let new_prec = (b * prec - n0).max(0) as usize;
    let mut out = vec![vec![0u64; new_prec]; deg + 1];
    let mut binom = vec![vec![0u64; deg + 1]; deg + 1];
    for e in 0..=deg {
        binom[e][0] = 1;
        for j in 1..=e {
            binom[e][j] = (binom[e - 1][j - 1] + if j < e { binom[e - 1][j] } else { 0 }) % p;
        }
    }
    let mut nu_e = 1u64;
    for (e, s) in c.iter().enumerate() {
        let mut mu_i = 1u64;
        for (i, x) in s.iter().enumerate() {
            let exp = b * i as i64 + a * e as i64 - n0;
            if *x != 0 && exp >= 0 && (exp as usize) < new_prec {
                let base = mulmod(mulmod(*x, mu_i, p), nu_e, p);
                for j in 0..=e {
                    let slot = &mut out[j][exp as usize];
                    *slot = (*slot + mulmod(base, binom[e][j], p)) % p;
                }
            }
            mu_i = mulmod(mu_i, mu, p);
        }
        nu_e = mulmod(nu_e, nu, p);
    }
    out
}

/// Galois orbits of the roots of `f`, reduced modulo two primes that agree.
fn orbits_of(f: &[TPoly]) -> Result<Vec<(usize, Q)>> {
    let mut found: Vec<Vec<(usize, Q)>> = Vec::new();
    for p in large_primes(12) {
        let c: Vec<Series> = f.iter().map(|s| s.coeffs().iter().map(|x| to_mod(*x, p)).collect()).collect();
        match branch_orbits(&c, p, 0) {
            Ok(mut o) => {
                o.sort();
                if found.last().is_some_and(|prev| *prev != o) {
                    return Err(Error::DegenerateSample("branch structure depends on the prime".into()));
                }
                found.push(o);
                if found.len() == 2 {
                    return Ok(found.pop().unwrap());
                }
            }
            Err(Failure::Precision) => {
                return Err(Error::InsufficientTruncation("Puiseux recursion ran out of precision".into()));
            }
            Err(Failure::Prime) => {}
        }
    }
    Err(Error::DegenerateSample("repeated residual roots do not split modulo the available primes".into()))
}

/// Conjugacy class of the centralizer torus of a regular semisimple element
/// with characteristic polynomial `p`, as a class label of the Weyl group.
pub fn cartan_type(family: Family, p: &[TPoly]) -> Result<Label> {
    match family {
        Family::A => {
            let o = orbits_of(p)?;
            if o.iter().map(|x| x.0).sum::<usize>() != p.len() - 1 {
                return Err(Error::InsufficientTruncation("not every eigenvalue is topologically nilpotent".into()));
            }
            Ok(Label::Part(normalize(o.into_iter().map(|x| x.0 as u32).collect())))
        }
        Family::B | Family::C | Family::D => {
            let body = if family == Family::B {
                if !p[0].is_zero() {
                    return Err(Error::FormViolation("odd orthogonal element without zero eigenvalue".into()));
                }
                &p[1..]
            } else {
                p
            };
            if body.iter().skip(1).step_by(2).any(|c| !c.is_zero()) {
                return Err(Error::FormViolation("characteristic polynomial is not even".into()));
            }
            // eigenvalues ±√μ over the roots μ of the polynomial in x²
            let half: Vec<TPoly> = body.iter().step_by(2).cloned().collect();
            let o = orbits_of(&half)?;
            if o.iter().map(|x| x.0).sum::<usize>() != half.len() - 1 {
                return Err(Error::InsufficientTruncation("not every eigenvalue is topologically nilpotent".into()));
            }
            let (mut pos, mut neg) = (Vec::new(), Vec::new());
            for (size, val) in o {
                // √μ generates a further quadratic extension iff size·val is odd
                let scaled = val * Q::from(size as i128);
                if scaled.to_integer() % 2 != 0 {
                    neg.push(size as u32);
                } else {
                    pos.push(size as u32);
                }
            }
            let (pos, neg) = (normalize(pos), normalize(neg));
            if family == Family::D {
                if neg.len() % 2 == 1 {
                    return Err(Error::FormViolation("odd number of negative cycles in type D".into()));
                }
                if neg.is_empty() && pos.iter().all(|x| x % 2 == 0) {
                    return Ok(Label::SplitBi(pos, neg, Sign::Plus));
                }
            }
            Ok(Label::Bi(pos, neg))
        }
        _ => Err(Error::UnsupportedType(format!("{family:?}"))),
    }
}

/// Sampling protocol.
#[derive(Clone, Debug)]
pub struct SamplingOptions {
    pub seed: u64,
    /// Truncation order; `None` uses `2N + r + 4`.
    pub trunc: Option<usize>,
    pub bound: i128,
    pub samples: usize,
    /// Number of bound doublings tried before giving up.
    pub rounds: usize,
    /// Extra truncation steps tried on insufficient precision.
    pub max_extensions: usize,
}

impl Default for SamplingOptions {
    fn default() -> Self {
        SamplingOptions { seed: 0, trunc: None, bound: 7, samples: 8, rounds: 6, max_extensions: 4 }
    }
}

pub fn default_truncation(d: &RootDatum) -> usize {
    2 * d.num_positive() + d.rank() + 4
}

/// Result of the oracle on one parahoric orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KlReport {
    pub class: usize,
    pub label: Label,
    pub val_disc: usize,
    /// Minimal `δ` over the batch.
    pub delta: Q,
    pub truncation: usize,
    pub bound: i128,
    pub samples: usize,
    pub diagnostics: Vec<String>,
}

fn analyze(model: &Model, g: &LoopElement) -> Result<(Label, usize)> {
    if !g.satisfies_form(model) {
        return Err(Error::FormViolation("sample leaves the Lie algebra".into()));
    }
    let cp = char_poly_t(g);
    let label = cartan_type(model.family, &cp)?;
    let v = lie_discriminant_valuation(model.family, &cp)?;
    Ok((label, v))
}

fn sub_seed(seed: u64, round: usize, k: usize) -> u64 {
    let mut z = seed ^ ((round as u64) << 40) ^ (k as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Parahoric KL map on `(P, O_P)`: the Cartan type of a generic element of
/// `e_P + Lie P⁺`, with the valuation of its discriminant.
pub fn kl_parahoric(
    d: &RootDatum,
    group: &WeylGroup,
    p: &Parahoric,
    orbits: &ProductOrbits,
    o: &[usize],
    opts: &SamplingOptions,
) -> Result<KlReport> {
    let model = Model::new(d)?;
    let pattern = valuation_pattern(&model, d, p);
    let mut k = opts.trunc.unwrap_or_else(|| default_truncation(d));
    let mut extensions = 0;
    let mut diagnostics = Vec::new();
    let mut bound = opts.bound;
    'rounds: for round in 0..opts.rounds.max(1) {
        let lift = lift_nilpotent(d, &model, p, orbits, o, k + 2)?;
        let mut batch: Vec<(Label, usize)> = Vec::new();
        let mut attempt = 0usize;
        while batch.len() < opts.samples {
            if attempt > 4 * opts.samples {
                diagnostics.push(format!("round {round}: too many degenerate samples"));
                bound *= 2;
                continue 'rounds;
            }
            let seed = sub_seed(opts.seed, round, attempt);
            attempt += 1;
            let g = sample_generic(&lift, &model, &pattern, bound, seed);
            let res = analyze(&model, &g.truncate(k)).and_then(|a| {
                let b = analyze(&model, &g)?;
                if a == b {
                    Ok(a)
                } else {
                    Err(Error::InsufficientTruncation(format!("result changes between K = {k} and K = {}", k + 2)))
                }
            });
            match res {
                Ok(r) => batch.push(r),
                Err(Error::DegenerateSample(m)) => diagnostics.push(format!("seed {seed:#x}: {m}")),
                Err(Error::InsufficientTruncation(m)) => {
                    if extensions >= opts.max_extensions {
                        return Err(Error::InsufficientTruncation(m));
                    }
                    extensions += 1;
                    k += 4;
                    diagnostics.push(format!("{m}; raising K to {k}"));
                    return kl_parahoric(
                        d,
                        group,
                        p,
                        orbits,
                        o,
                        &SamplingOptions { trunc: Some(k), max_extensions: opts.max_extensions - extensions, ..opts.clone() },
                    )
                    .map(|mut r| {
                        diagnostics.append(&mut r.diagnostics);
                        r.diagnostics = diagnostics;
                        r
                    });
                }
                Err(e) => return Err(e),
            }
        }
        let first = batch[0].0.clone();
        if batch.iter().all(|(l, _)| *l == first) {
            let class = group
                .class_index(&first)
                .ok_or_else(|| Error::Internal(format!("oracle produced unknown class {first}")))?;
            let val = batch.iter().map(|(_, v)| *v).min().unwrap();
            let fixed = group.classes[class].fixed_dim;
            return Ok(KlReport {
                class,
                label: first,
                val_disc: val,
                delta: delta(val, d.rank(), fixed),
                truncation: k,
                bound,
                samples: batch.len(),
                diagnostics,
            });
        }
        let mut seen: Vec<String> = batch.iter().map(|(l, _)| format!("{l}")).collect();
        seen.sort();
        seen.dedup();
        diagnostics.push(format!("round {round} (bound {bound}): classes disagree: {}", seen.join(", ")));
        bound *= 2;
    }
    Err(Error::InconclusiveSample(diagnostics.join("; ")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(cs: &[&[i128]], k: usize) -> Vec<TPoly> {
        cs.iter().map(|c| TPoly::from_coeffs(c.to_vec(), k)).collect()
    }

    #[test]
    fn polygon_of_x2_minus_t() {
        let p = poly(&[&[0, -1], &[], &[1]], 6);
        let s = newton_polygon(&p).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!((s[0].num, s[0].den, s[0].length), (1, 2, 2));
        assert_eq!(cartan_type(Family::A, &p).unwrap(), Label::Part(vec![2]));
    }

    #[test]
    fn split_torus_in_a2() {
        // (x - t)(x - 2t)(x + 3t) = x^3 - 7t^2 x + 6t^3
        let p = poly(&[&[0, 0, 0, 6], &[0, 0, -7], &[], &[1]], 8);
        assert_eq!(cartan_type(Family::A, &p).unwrap(), Label::Part(vec![1, 1, 1]));
        // (x - t)^2 (x + 2t) is not regular semisimple
        let p = poly(&[&[0, 0, 0, 2], &[0, 0, -3], &[], &[1]], 8);
        assert!(cartan_type(Family::A, &p).is_err());
    }

    #[test]
    fn symplectic_cycles() {
        // x^2 - t: one negative 1-cycle
        let p = poly(&[&[0, -1], &[], &[1]], 6);
        assert_eq!(cartan_type(Family::C, &p).unwrap(), Label::Bi(vec![], vec![1]));
        // x^2 - t^2: one positive 1-cycle
        let p = poly(&[&[0, 0, -1], &[], &[1]], 6);
        assert_eq!(cartan_type(Family::C, &p).unwrap(), Label::Bi(vec![1], vec![]));
        // x^4 - t: a negative 2-cycle
        let p = poly(&[&[0, -1], &[], &[], &[], &[1]], 6);
        assert_eq!(cartan_type(Family::C, &p).unwrap(), Label::Bi(vec![], vec![2]));
    }

    #[test]
    fn repeated_residual_roots_recurse() {
        // (x - t - t^2)(x - t + t^2): two branches sharing a leading term
        let p = poly(&[&[0, 0, 1, 0, -1], &[0, -2], &[1]], 10);
        assert_eq!(cartan_type(Family::A, &p).unwrap(), Label::Part(vec![1, 1]));
        // (x - t)^2 - t^3: one ramified branch below a split leading term
        let p = poly(&[&[0, 0, 1, -1], &[0, -2], &[1]], 10);
        assert_eq!(cartan_type(Family::A, &p).unwrap(), Label::Part(vec![2]));
    }
}
