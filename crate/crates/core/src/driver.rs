//! End-to-end pipelines: the parahoric KL identity for every parahoric and
//! special levi orbit, the cell map, strata, the two-parameter identity and
//! predicted tables for exceptional types.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::arith::Q;
use crate::error::{Error, Result};
use crate::exceptional::Tables;
use crate::invariants::{factor_b, j_induce, product_b, GroupData};
use crate::label::ProdLabel;
use crate::looplattice::root_valuations;
use crate::orbits::{OrbitData, ProductOrbits};
use crate::puiseux::{kl_parahoric, KlReport, SamplingOptions};
use crate::rootdata::{build_parahoric, dual_datum, enumerate_parahorics, CartanType, Parahoric, RootDatum};
use crate::subgroup::ReflectionSubgroup;
use crate::tpoly::TPoly;

/// One side of the duality: a datum with its Weyl group data and orbits.
#[derive(Clone, Debug)]
pub struct Side {
    pub data: GroupData,
    pub orbits: OrbitData,
    pub parahorics: Vec<Parahoric>,
}

impl Side {
    pub fn new(d: &RootDatum, tables: &Tables) -> Result<Side> {
        let data = GroupData::new(d, &tables.chartabs)?;
        let orbits = OrbitData::new(&data.group, &data.table, &data.b, tables)?;
        let parahorics = enumerate_parahorics(d)?;
        Ok(Side { data, orbits, parahorics })
    }

    pub fn datum(&self) -> &RootDatum {
        self.data.datum()
    }

    pub fn class_name(&self, c: usize) -> String {
        self.data.group.classes[c].label.to_string()
    }

    pub fn char_name(&self, c: usize) -> String {
        self.data.table.chars[c].label.to_string()
    }
}

/// Data attached to one parahoric: the levi Weyl group and its orbits.
#[derive(Clone, Debug)]
pub struct LeviData {
    pub parahoric: Parahoric,
    pub sub: ReflectionSubgroup,
    pub fb: Vec<Vec<u32>>,
    pub fusion: Vec<usize>,
    pub orbits: ProductOrbits,
}

impl LeviData {
    pub fn new(side: &Side, p: &Parahoric, tables: &Tables) -> Result<LeviData> {
        let sub = ReflectionSubgroup::from_factors(side.datum(), &p.levi.factors, &tables.chartabs)?;
        let fb = factor_b(&sub)?;
        let fusion = sub.fusion(&side.data.group)?;
        let orbits = ProductOrbits::new(&sub, &fb, tables)?;
        Ok(LeviData { parahoric: p.clone(), sub, fb, fusion, orbits })
    }
}

/// `G`, `G∨` and the identification of their Weyl groups through words in
/// the simple reflections.
#[derive(Clone, Debug)]
pub struct Context {
    pub g: Side,
    pub dual: Side,
    /// Class of `W` to class of `W∨`.
    pub class_map: Vec<usize>,
    pub class_map_inv: Vec<usize>,
    pub tables: Tables,
}

impl Context {
    pub fn new(ty: CartanType, tables: &Tables) -> Result<Context> {
        let d = crate::rootdata::build_root_datum(ty)?;
        let g = Side::new(&d, tables)?;
        let dual = Side::new(&dual_datum(&d), tables)?;
        let class_map: Vec<usize> = g
            .data
            .group
            .classes
            .iter()
            .map(|c| dual.data.group.class_of_matrix(&dual.data.group.eval_word(g.data.group.word(c.rep))))
            .collect::<Result<_>>()?;
        let mut class_map_inv = vec![usize::MAX; class_map.len()];
        for (i, j) in class_map.iter().enumerate() {
            class_map_inv[*j] = i;
        }
        if class_map_inv.contains(&usize::MAX) {
            return Err(Error::Internal("W and its dual have different class structures".into()));
        }
        Ok(Context { g, dual, class_map, class_map_inv, tables: tables.clone() })
    }

    pub fn is_classical(&self) -> bool {
        self.g.datum().ty.family.is_classical()
    }

    /// The character of `W∨` with the same values under the identification.
    pub fn char_to_dual(&self, ch: usize) -> Result<usize> {
        let v = &self.g.data.table.chars[ch].values;
        self.dual
            .data
            .table
            .chars
            .iter()
            .position(|e| self.class_map.iter().enumerate().all(|(c, dc)| e.values[*dc] == v[c]))
            .ok_or_else(|| Error::Internal(format!("no dual character matches {}", self.g.char_name(ch))))
    }

    /// `KL_{G∨}` of a dual orbit, as a class of `W`.
    pub fn dual_kl(&self, orbit: usize, opts: &SamplingOptions) -> Result<(usize, String, Option<KlReport>)> {
        let side = &self.dual;
        let name = side.orbits.orbits[orbit].label.to_string();
        if side.datum().ty.family.is_classical() {
            let r = full_kl(side, orbit, &self.tables, opts)?;
            Ok((self.class_map_inv[r.class], "oracle".into(), Some(r)))
        } else {
            let cls = self.tables.kl_class(side.datum().ty, &name)?;
            let c = side
                .data
                .group
                .class_by_name(cls)
                .ok_or_else(|| Error::Table(format!("kl table names unknown class {cls}")))?;
            Ok((self.class_map_inv[c], "table".into(), None))
        }
    }
}

/// Classical KL map of one orbit of the group itself.
pub fn full_kl(side: &Side, orbit: usize, tables: &Tables, opts: &SamplingOptions) -> Result<KlReport> {
    let r = side.datum().rank();
    let nodes: Vec<usize> = (1..=r).collect();
    let p = build_parahoric(&nodes, side.datum())?;
    let ld = LeviData::new(side, &p, tables)?;
    let label = &side.orbits.orbits[orbit].label;
    let i = ld.orbits.factors[0]
        .index(label)
        .ok_or_else(|| Error::Internal(format!("orbit {label} missing from the full levi")))?;
    kl_parahoric(side.datum(), &side.data.group, &p, &ld.orbits, &[i], opts)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Status {
    Match,
    Mismatch,
    Predicted,
}

impl core::fmt::Display for Status {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Status::Match => "match",
            Status::Mismatch => "MISMATCH",
            Status::Predicted => "predicted",
        })
    }
}

/// One `(P, O_P)` row of the identity `KL_{G∨}(Spr j E_P) = KL_G^P(Spr E_P)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThmRow {
    pub parahoric: String,
    pub levi: String,
    pub orbit: String,
    pub d_o: u32,
    pub e_p: String,
    pub j_char: usize,
    pub j: String,
    pub dual_orbit: String,
    pub rhs_class: String,
    pub rhs_source: String,
    pub lhs_class: Option<String>,
    pub delta: Option<Q>,
    pub delta_check: Option<bool>,
    pub status: Status,
    pub diagnostics: Vec<String>,
}

fn context(p: &Parahoric, orbit: &str) -> impl Fn(Error) -> Error {
    let where_ = format!("parahoric {} orbit {orbit}", p.label());
    move |e| match e {
        Error::MlsViolation(m) => Error::MlsViolation(format!("{where_}: {m}")),
        Error::CorrespondenceGap(m) => Error::CorrespondenceGap(format!("{where_}: {m}")),
        Error::InconclusiveSample(m) => Error::InconclusiveSample(format!("{where_}: {m}")),
        Error::InsufficientTruncation(m) => Error::InsufficientTruncation(format!("{where_}: {m}")),
        other => other,
    }
}

/// The identity for every parahoric and every special orbit of its levi.
/// For exceptional types the right side is emitted as a prediction.
pub fn verify_thm_kl(ctx: &Context, opts: &SamplingOptions) -> Result<Vec<ThmRow>> {
    let mut dual_cache: BTreeMap<usize, (usize, String, Option<KlReport>)> = BTreeMap::new();
    let mut rows = Vec::new();
    for p in &ctx.g.parahorics {
        let ld = LeviData::new(&ctx.g, p, &ctx.tables)?;
        for o in ld.orbits.all() {
            if !ld.orbits.special(&o) {
                continue;
            }
            let orbit = ld.orbits.label(&o).to_string();
            let wrap = context(p, &orbit);
            let ch = ld.orbits.springer(&o);
            let j = j_induce(&ld.sub, &ld.fb, &ch, &ld.fusion, &ctx.g.data).map_err(&wrap)?;
            let jd = ctx.char_to_dual(j)?;
            let ov = ctx.dual.orbits.springer_inverse(jd).ok_or_else(|| {
                wrap(Error::CorrespondenceGap(format!("{} is not a Springer character of the dual", ctx.dual.char_name(jd))))
            })?;
            if !dual_cache.contains_key(&ov) {
                let v = ctx.dual_kl(ov, opts).map_err(&wrap)?;
                dual_cache.insert(ov, v);
            }
            let (rhs, rhs_source, _) = dual_cache[&ov].clone();
            let d_o = ld.orbits.d(&o);
            let mut row = ThmRow {
                parahoric: p.label(),
                levi: p.levi.type_name(),
                orbit,
                d_o,
                e_p: ld.sub.char_label(&ch).to_string(),
                j_char: j,
                j: ctx.g.char_name(j),
                dual_orbit: ctx.dual.orbits.orbits[ov].label.to_string(),
                rhs_class: ctx.g.class_name(rhs),
                rhs_source,
                lhs_class: None,
                delta: None,
                delta_check: None,
                status: Status::Predicted,
                diagnostics: Vec::new(),
            };
            if ctx.is_classical() {
                let r = kl_parahoric(ctx.g.datum(), &ctx.g.data.group, p, &ld.orbits, &o, opts).map_err(&wrap)?;
                row.delta_check = Some(r.delta == Q::from(d_o as i128));
                row.delta = Some(r.delta);
                row.status = if r.class == rhs { Status::Match } else { Status::Mismatch };
                row.lhs_class = Some(ctx.g.class_name(r.class));
                row.diagnostics = vec![format!("K={} B={} samples={}", r.truncation, r.bound, r.samples)];
                row.diagnostics.extend(r.diagnostics);
            }
            rows.push(row);
        }
    }
    Ok(rows)
}

/// Cell map: the cell of a dual orbit goes to `KL_{G∨}` of that orbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AvRow {
    pub dual_orbit: String,
    pub special: bool,
    pub class: String,
    pub source: String,
}

pub fn av_map(ctx: &Context, opts: &SamplingOptions) -> Result<Vec<AvRow>> {
    let mut rows = Vec::new();
    let mut seen: BTreeMap<usize, String> = BTreeMap::new();
    for (i, o) in ctx.dual.orbits.orbits.iter().enumerate() {
        let (c, source, _) = ctx.dual_kl(i, opts)?;
        if let Some(prev) = seen.insert(c, o.label.to_string()) {
            return Err(Error::VerificationFailure(format!(
                "cell map is not injective: {prev} and {} both go to {}",
                o.label,
                ctx.g.class_name(c)
            )));
        }
        rows.push(AvRow { dual_orbit: o.label.to_string(), special: o.special, class: ctx.g.class_name(c), source });
    }
    Ok(rows)
}

/// A stratum label `j_{W_x}^W Spr(u)` with the pairs `(x, u)` producing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumLabel {
    pub label: String,
    pub sources: Vec<(String, String)>,
    pub kl_class: String,
}

/// Strata from the rows of [`verify_thm_kl`]: labels grouped with their
/// sources; the KL class must not depend on the source, and distinct labels
/// must have distinct classes.
pub fn strata(ctx: &Context, rows: &[ThmRow]) -> Result<Vec<StratumLabel>> {
    let mut groups: BTreeMap<usize, StratumLabel> = BTreeMap::new();
    for r in rows {
        let cls = r.lhs_class.clone().unwrap_or_else(|| r.rhs_class.clone());
        let entry = groups.entry(r.j_char).or_insert_with(|| StratumLabel {
            label: r.j.clone(),
            sources: Vec::new(),
            kl_class: cls.clone(),
        });
        if entry.kl_class != cls {
            return Err(Error::VerificationFailure(format!(
                "stratum {} has KL classes {} and {} (from {} {})",
                r.j, entry.kl_class, cls, r.parahoric, r.orbit
            )));
        }
        entry.sources.push((r.parahoric.clone(), r.orbit.clone()));
    }
    let out: Vec<StratumLabel> = groups.into_values().collect();
    for (i, a) in out.iter().enumerate() {
        if let Some(b) = out[i + 1..].iter().find(|b| b.kl_class == a.kl_class) {
            return Err(Error::VerificationFailure(format!(
                "strata {} and {} share the KL class {}",
                a.label, b.label, a.kl_class
            )));
        }
    }
    let _ = ctx;
    Ok(out)
}

/// Classes `KL^P(u)` over every parahoric `P` of a classical side and every
/// orbit `u` of its levi.
pub fn kl_class_set(side: &Side, tables: &Tables, opts: &SamplingOptions) -> Result<BTreeSet<usize>> {
    let mut out = BTreeSet::new();
    for p in &side.parahorics {
        let ld = LeviData::new(side, p, tables)?;
        for o in ld.orbits.all() {
            let orbit = ld.orbits.label(&o).to_string();
            let r = kl_parahoric(side.datum(), &side.data.group, p, &ld.orbits, &o, opts).map_err(context(p, &orbit))?;
            out.insert(r.class);
        }
    }
    Ok(out)
}

/// `S_G` and `S_{G∨}`, both as sets of classes of `W`.
pub fn kl_class_sets(ctx: &Context, opts: &SamplingOptions) -> Result<(BTreeSet<usize>, BTreeSet<usize>)> {
    if !ctx.is_classical() {
        return Err(Error::UnsupportedType(format!("{} has no sampling oracle", ctx.g.datum().ty)));
    }
    let s = kl_class_set(&ctx.g, &ctx.tables, opts)?;
    let sd = kl_class_set(&ctx.dual, &ctx.tables, opts)?.into_iter().map(|c| ctx.class_map_inv[c]).collect();
    Ok((s, sd))
}

/// Check the ingested KL table of the dual is a total map into classes.
pub fn check_kl_table(ctx: &Context) -> Result<()> {
    let side = &ctx.dual;
    if side.datum().ty.family.is_classical() {
        return Ok(());
    }
    for o in &side.orbits.orbits {
        let name = o.label.to_string();
        let cls = ctx.tables.kl_class(side.datum().ty, &name)?;
        if side.data.group.class_by_name(cls).is_none() {
            return Err(Error::Table(format!("kl row {name} names unknown class {cls}")));
        }
    }
    Ok(())
}

/// Predicted parahoric KL table for an exceptional type.
pub fn emit_exceptional(ctx: &Context) -> Result<Vec<ThmRow>> {
    if ctx.is_classical() {
        return Err(Error::UnsupportedType(format!("{} is classical; use verify", ctx.g.datum().ty)));
    }
    check_kl_table(ctx)?;
    verify_thm_kl(ctx, &SamplingOptions::default())
}

// ---------------------------------------------------------------------------
// Two-parameter identity

/// Coroot of a root, in the simple coordinates of the dual datum.
pub fn coroot(d: &RootDatum, alpha: &[i64]) -> Vec<i64> {
    let n = d.norm2(alpha);
    alpha
        .iter()
        .enumerate()
        .map(|(i, a)| a * d.norm2(&crate::rootdata::unit(d.rank(), i)) / n)
        .collect()
}

fn class_index(sub: &ReflectionSubgroup, t: &[usize]) -> usize {
    sub.classes().iter().position(|c| c == t).expect("class tuple")
}

/// Truncated induction between two reflection subgroups `small ⊂ big`.
pub fn j_between(small: &ReflectionSubgroup, ch: &[usize], big: &mut ReflectionSubgroup) -> Result<Vec<usize>> {
    let sfb = factor_b(small)?;
    let bfb = factor_b(big)?;
    let fusion: Vec<usize> = small
        .classes()
        .iter()
        .map(|c| {
            let m = small.class_rep(c);
            big.class_of_element(&m)
                .map(|t| class_index(big, &t))
                .ok_or_else(|| Error::IncompatiblePair("subgroup is not contained in the levi".into()))
        })
        .collect::<Result<_>>()?;
    let bclasses = big.classes();
    let order = small.order() as i128;
    let mut best: Option<(u32, Vec<(Vec<usize>, i128)>)> = None;
    for psi in big.chars() {
        let s: i128 = small
            .classes()
            .iter()
            .zip(&fusion)
            .map(|(c, f)| small.class_size(c) as i128 * small.char_value(ch, c) * big.char_value(&psi, &bclasses[*f]))
            .sum();
        let m = s / order;
        if m == 0 {
            continue;
        }
        let b = product_b(&bfb, &psi);
        match &mut best {
            Some((bb, list)) if *bb == b => list.push((psi, m)),
            Some((bb, _)) if *bb < b => {}
            _ => best = Some((b, vec![(psi, m)])),
        }
    }
    let (b, list) = best.ok_or_else(|| Error::MlsViolation("induced character is zero".into()))?;
    if b != product_b(&sfb, ch) || list.len() != 1 || list[0].1 != 1 {
        return Err(Error::MlsViolation(format!(
            "no unique minimal-b constituent (b = {b}, expected {})",
            product_b(&sfb, ch)
        )));
    }
    Ok(list[0].0.clone())
}

fn orbit_of_char(po: &ProductOrbits, ch: &[usize]) -> Result<Vec<usize>> {
    po.factors
        .iter()
        .zip(ch)
        .map(|(f, c)| {
            f.springer_inverse(*c)
                .ok_or_else(|| Error::CorrespondenceGap("j-induced character is not a Springer character".into()))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneralizedRow {
    pub x: String,
    pub zeta: String,
    pub common: String,
    pub e: String,
    pub lhs_orbit: String,
    pub rhs_orbit: String,
    pub lhs_class: String,
    pub rhs_class: String,
    pub matches: bool,
}

/// `KL_{G∨}^{Q_ζ}(Spr j_{W_{x,ζ}}^{W_ζ} E) = KL_G^{P_x}(Spr j_{W_{x,ζ}}^{W_x} E)`
/// with `W_{x,ζ}` generated by the roots of `P_x` whose coroots are roots of
/// `Q_ζ`.
pub fn generalized_identity(
    ctx: &Context,
    x: &[usize],
    zeta: &[usize],
    e: &ProdLabel,
    opts: &SamplingOptions,
) -> Result<GeneralizedRow> {
    if !ctx.is_classical() {
        return Err(Error::UnsupportedType("the two-parameter identity needs the classical oracle".into()));
    }
    let (d, dd) = (ctx.g.datum(), ctx.dual.datum());
    let px = build_parahoric(x, d)?;
    let pz = build_parahoric(zeta, dd)?;
    let zroots: Vec<Vec<i64>> = {
        let pos = pz.levi.positive_roots();
        let mut all = pos.clone();
        all.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        all
    };
    let psi: Vec<Vec<i64>> = px.levi.positive_roots().into_iter().filter(|a| zroots.contains(&coroot(d, a))).collect();
    let psi_dual: Vec<Vec<i64>> = psi.iter().map(|a| coroot(d, a)).collect();
    let ext = &ctx.tables.chartabs;
    let small = ReflectionSubgroup::from_roots(d, &psi, ext)?;
    let mut small_dual = ReflectionSubgroup::from_roots(dd, &psi_dual, ext)?;
    let ech = small
        .char_by_label(e)
        .ok_or_else(|| Error::Parse(format!("{e} is not a character of {}", common_name(&small))))?;
    let fb = factor_b(&small)?;
    let po_small = ProductOrbits::new(&small, &fb, &ctx.tables)?;
    let o_small = orbit_of_char(&po_small, &ech).ok();
    if !o_small.as_ref().is_some_and(|o| po_small.special(o)) {
        return Err(Error::Parse(format!("{e} is not special")));
    }
    // transport E to the dual realization of the common subgroup
    let g = &ctx.g.data.group;
    let gd = &ctx.dual.data.group;
    let mut image = Vec::new();
    for c in small.classes() {
        let m = small.class_rep(&c);
        let w = g.index_of(&m).ok_or_else(|| Error::Internal("class representative outside W".into()))?;
        let md = gd.eval_word(g.word(w));
        let t = small_dual
            .class_of_element(&md)
            .ok_or_else(|| Error::IncompatiblePair("coroots do not generate the same subgroup".into()))?;
        image.push((c, t));
    }
    let ech_dual = small_dual
        .chars()
        .into_iter()
        .find(|psi2| image.iter().all(|(c, t)| small_dual.char_value(psi2, t) == small.char_value(&ech, c)))
        .ok_or_else(|| Error::IncompatiblePair("no matching character on the dual side".into()))?;

    let ldx = LeviData::new(&ctx.g, &px, &ctx.tables)?;
    let mut subx = ldx.sub.clone();
    let jx = j_between(&small, &ech, &mut subx)?;
    let ox = orbit_of_char(&ldx.orbits, &jx)?;
    let rhs = kl_parahoric(d, g, &px, &ldx.orbits, &ox, opts)?;

    let ldz = LeviData::new(&ctx.dual, &pz, &ctx.tables)?;
    let mut subz = ldz.sub.clone();
    let jz = j_between(&small_dual, &ech_dual, &mut subz)?;
    let oz = orbit_of_char(&ldz.orbits, &jz)?;
    let lhs = kl_parahoric(dd, gd, &pz, &ldz.orbits, &oz, opts)?;
    let lhs_class = ctx.class_map_inv[lhs.class];
    Ok(GeneralizedRow {
        x: px.label(),
        zeta: pz.label(),
        common: common_name(&small),
        e: e.to_string(),
        lhs_orbit: ldz.orbits.label(&oz).to_string(),
        rhs_orbit: ldx.orbits.label(&ox).to_string(),
        lhs_class: ctx.g.class_name(lhs_class),
        rhs_class: ctx.g.class_name(rhs.class),
        matches: lhs_class == rhs.class,
    })
}

fn common_name(s: &ReflectionSubgroup) -> String {
    if s.factors.is_empty() {
        return "T".into();
    }
    let names: Vec<String> = s.factors.iter().map(|f| f.levi.ty.to_string()).collect();
    names.join("x")
}

/// Sorted root valuations of a diagonal element in `G` and, with the same
/// eigenvalues, in `G∨`.
pub fn root_valuation_pair(ctx: &Context, diag: &[TPoly]) -> Result<(Vec<usize>, Vec<usize>)> {
    Ok((root_valuations(ctx.g.datum(), diag)?, root_valuations(ctx.dual.datum(), diag)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_rows() {
        let ctx = Context::new(CartanType::parse("A1").unwrap(), &Tables::default()).unwrap();
        let rows = verify_thm_kl(&ctx, &SamplingOptions::default()).unwrap();
        let mut ps: Vec<&str> = rows.iter().map(|r| r.parahoric.as_str()).collect();
        ps.dedup();
        assert_eq!(ps.len(), 3);
        assert_eq!(rows.len(), 5);
        assert!(rows.iter().all(|r| r.status == Status::Match && r.delta_check == Some(true)));
        let iw = rows.iter().find(|r| r.parahoric == "{}").unwrap();
        assert_eq!(iw.rhs_class, "2");
    }
}
