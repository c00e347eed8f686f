//! Kazhdan-Lusztig oracle commands: single orbits, the parahoric identity,
//! the cell map, strata and exceptional predictions.

use cellmap_core::driver::{self, av_map, emit_exceptional, verify_thm_kl, Context, LeviData, Side, Status, ThmRow};
use cellmap_core::puiseux::kl_parahoric;
use cellmap_core::rootdata::{build_parahoric, parse_nodes, CartanType};
use cellmap_core::weyl::identity;
use serde::Serialize;

use super::info::datum;
use super::Env;
use crate::render::{q, table, Report};
use crate::{Failure, EXIT_DATA, EXIT_USAGE, EXIT_VERIFY};

#[derive(Serialize)]
struct KlOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    parahoric: String,
    levi: String,
    orbit: String,
    special: bool,
    d_o: u32,
    class: String,
    source: String,
    cartan_label: Option<String>,
    val_disc: Option<usize>,
    delta: Option<String>,
    truncation: Option<usize>,
    bound: Option<i64>,
    samples: Option<usize>,
    seed: u64,
    diagnostics: Vec<String>,
}

fn strip_brackets(s: &str) -> &str {
    s.trim().trim_start_matches('[').trim_end_matches(']')
}

pub fn kl(env: &Env, ty: CartanType, orbit: &str, parahoric: Option<&str>) -> Result<Report, Failure> {
    let d = datum(ty)?;
    let side = Side::new(&d, &env.tables)?;
    let nodes = match parahoric {
        Some(s) => parse_nodes(s, d.rank()).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?,
        None => (1..=d.rank()).collect(),
    };
    let p = build_parahoric(&nodes, &d)?;
    let ld = LeviData::new(&side, &p, &env.tables)?;
    let o = ld.orbits.parse(strip_brackets(orbit))?;
    let mut out = KlOut {
        command: "kl",
        ty: ty.to_string(),
        parahoric: p.label(),
        levi: p.levi.type_name(),
        orbit: ld.orbits.label(&o).to_string(),
        special: ld.orbits.special(&o),
        d_o: ld.orbits.d(&o),
        class: String::new(),
        source: String::new(),
        cartan_label: None,
        val_disc: None,
        delta: None,
        truncation: None,
        bound: None,
        samples: None,
        seed: env.opts.seed,
        diagnostics: Vec::new(),
    };
    if ty.family.is_classical() {
        let r = kl_parahoric(&d, &side.data.group, &p, &ld.orbits, &o, &env.opts)?;
        out.class = side.class_name(r.class);
        out.source = "oracle".into();
        out.cartan_label = Some(r.label.to_string());
        out.val_disc = Some(r.val_disc);
        out.delta = Some(q(&r.delta));
        out.truncation = Some(r.truncation);
        out.bound = Some(r.bound as i64);
        out.samples = Some(r.samples);
        out.diagnostics = r.diagnostics;
    } else {
        if !p.is_hyperspecial_root() {
            return Err(Failure::new(EXIT_DATA, format!("{ty} has no sampling oracle; only the hyperspecial kl table is available")));
        }
        out.class = env.tables.kl_class(ty, &out.orbit)?.to_string();
        out.source = "table".into();
    }
    let mut text = format!("type {}  parahoric {}  levi {}\n", out.ty, out.parahoric, out.levi);
    text += &format!("orbit {}  special {}  d_O {}\n", out.orbit, out.special, out.d_o);
    text += &format!("class {}  source {}\n", out.class, out.source);
    if let (Some(v), Some(dl), Some(k), Some(b), Some(n)) = (out.val_disc, &out.delta, out.truncation, out.bound, out.samples) {
        text += &format!("val_disc {v}  delta {dl}  K {k}  B {b}  samples {n}  seed {}\n", out.seed);
    }
    for l in &out.diagnostics {
        text += &format!("note {l}\n");
    }
    Ok(Report::new(&out, text))
}

#[derive(Serialize)]
struct RowOut {
    parahoric: String,
    levi: String,
    orbit: String,
    d_o: u32,
    e_p: String,
    j: String,
    dual_orbit: String,
    rhs_class: String,
    rhs_source: String,
    lhs_class: Option<String>,
    delta: Option<String>,
    delta_check: Option<bool>,
    status: String,
    diagnostics: Vec<String>,
}

impl From<&ThmRow> for RowOut {
    fn from(r: &ThmRow) -> RowOut {
        RowOut {
            parahoric: r.parahoric.clone(),
            levi: r.levi.clone(),
            orbit: r.orbit.clone(),
            d_o: r.d_o,
            e_p: r.e_p.clone(),
            j: r.j.clone(),
            dual_orbit: r.dual_orbit.clone(),
            rhs_class: r.rhs_class.clone(),
            rhs_source: r.rhs_source.clone(),
            lhs_class: r.lhs_class.clone(),
            delta: r.delta.as_ref().map(q),
            delta_check: r.delta_check,
            status: r.status.to_string(),
            diagnostics: r.diagnostics.clone(),
        }
    }
}

#[derive(Serialize)]
struct VerifyOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    dual_type: String,
    seed: u64,
    rows: Vec<RowOut>,
    total: usize,
    matches: usize,
    mismatches: usize,
    delta_failures: usize,
    predicted: usize,
}

fn row_table(rows: &[RowOut]) -> String {
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            vec![
                r.parahoric.clone(),
                r.levi.clone(),
                r.orbit.clone(),
                r.e_p.clone(),
                r.j.clone(),
                r.dual_orbit.clone(),
                r.rhs_class.clone(),
                r.lhs_class.clone().unwrap_or_else(|| "-".into()),
                r.delta.clone().map(|dl| format!("{dl}/{}", r.d_o)).unwrap_or_else(|| format!("-/{}", r.d_o)),
                r.status.clone(),
            ]
        })
        .collect();
    table(&["P", "levi", "orbit", "E_P", "jE_P", "dual orbit", "KL dual", "KL^P", "delta/d_O", "status"], &body)
}

fn verify_report(env: &Env, ctx: &Context, command: &'static str, rows: &[ThmRow]) -> Report {
    let out_rows: Vec<RowOut> = rows.iter().map(RowOut::from).collect();
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    let out = VerifyOut {
        command,
        ty: ctx.g.datum().ty.to_string(),
        dual_type: ctx.dual.datum().ty.to_string(),
        seed: env.opts.seed,
        total: rows.len(),
        matches: count(Status::Match),
        mismatches: count(Status::Mismatch),
        delta_failures: rows.iter().filter(|r| r.delta_check == Some(false)).count(),
        predicted: count(Status::Predicted),
        rows: out_rows,
    };
    let mut text = format!("{} vs dual {}  seed {}\n", out.ty, out.dual_type, out.seed);
    text += &row_table(&out.rows);
    text += &format!(
        "rows {}  match {}  mismatch {}  delta failures {}  predicted {}\n",
        out.total, out.matches, out.mismatches, out.delta_failures, out.predicted
    );
    let (bad, df) = (out.mismatches, out.delta_failures);
    let rep = Report::new(&out, text);
    if bad > 0 || df > 0 {
        rep.failing(EXIT_VERIFY, format!("{bad} mismatching rows, {df} delta failures"))
    } else {
        rep
    }
}

pub fn verify(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    if !ty.family.is_classical() {
        return Err(Failure::new(EXIT_DATA, format!("{ty} is exceptional; use 'predict {ty}'")));
    }
    let ctx = Context::new(ty, &env.tables)?;
    let rows = verify_thm_kl(&ctx, &env.opts)?;
    Ok(verify_report(env, &ctx, "verify", &rows))
}

#[derive(Serialize)]
struct AvRowOut {
    dual_orbit: String,
    special: bool,
    class: String,
    source: String,
}

#[derive(Serialize)]
struct AvOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    dual_type: String,
    injective: bool,
    rows: Vec<AvRowOut>,
}

pub fn av(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let ctx = Context::new(ty, &env.tables)?;
    let rows: Vec<AvRowOut> = av_map(&ctx, &env.opts)?
        .into_iter()
        .map(|r| AvRowOut { dual_orbit: r.dual_orbit, special: r.special, class: r.class, source: r.source })
        .collect();
    let body: Vec<Vec<String>> = rows
        .iter()
        .map(|r| vec![r.dual_orbit.clone(), if r.special { "yes" } else { "no" }.into(), r.class.clone(), r.source.clone()])
        .collect();
    let text = format!("cell map {} -> classes of W({ty}), injective\n", ctx.dual.datum().ty)
        + &table(&["dual orbit", "special", "class", "source"], &body);
    let out = AvOut { command: "av", ty: ty.to_string(), dual_type: ctx.dual.datum().ty.to_string(), injective: true, rows };
    Ok(Report::new(&out, text))
}

#[derive(Serialize)]
struct StratumOut {
    label: String,
    kl_class: String,
    sources: Vec<(String, String)>,
}

#[derive(Serialize)]
struct StrataOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    strata: Vec<StratumOut>,
}

pub fn strata(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let ctx = Context::new(ty, &env.tables)?;
    let rows = verify_thm_kl(&ctx, &env.opts)?;
    let st: Vec<StratumOut> = driver::strata(&ctx, &rows)?
        .into_iter()
        .map(|s| StratumOut { label: s.label, kl_class: s.kl_class, sources: s.sources })
        .collect();
    let body: Vec<Vec<String>> = st
        .iter()
        .map(|s| {
            let src: Vec<String> = s.sources.iter().map(|(p, o)| format!("{p}:{o}")).collect();
            vec![s.label.clone(), s.kl_class.clone(), src.join(" ")]
        })
        .collect();
    let text = table(&["stratum", "KL class", "sources (P:orbit)"], &body);
    Ok(Report::new(&StrataOut { command: "strata", ty: ty.to_string(), strata: st }, text))
}

pub fn predict(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    if ty.family.is_classical() {
        return Err(Failure::new(EXIT_DATA, format!("{ty} is classical; use 'verify {ty}'")));
    }
    let ctx = Context::new(ty, &env.tables)?;
    let rows = emit_exceptional(&ctx)?;
    let w = &ctx.g.data.group;
    let r = ctx.g.datum().rank();
    let id = w.class_of_matrix(&identity(r))?;
    let word: Vec<u8> = (0..r as u8).collect();
    let cox = w.class_of_matrix(&w.eval_word(&word))?;
    let hyper = build_parahoric(&(1..=r).collect::<Vec<_>>(), ctx.g.datum())?.label();
    let zero = ctx.g.orbits.orbits[ctx.g.orbits.zero()].label.to_string();
    let reg = ctx.g.orbits.orbits[ctx.g.orbits.regular()].label.to_string();
    let find = |o: &str| rows.iter().find(|x| x.parahoric == hyper && x.orbit == o).map(|x| x.rhs_class.clone());
    let mut problems = Vec::new();
    if find(&zero) != Some(ctx.g.class_name(id)) {
        problems.push(format!("zero orbit at {hyper} does not give the identity class"));
    }
    if find(&reg) != Some(ctx.g.class_name(cox)) {
        problems.push(format!("regular orbit at {hyper} does not give the Coxeter class"));
    }
    let rep = verify_report(env, &ctx, "predict", &rows);
    if problems.is_empty() {
        Ok(rep)
    } else {
        Ok(rep.failing(EXIT_VERIFY, problems.join("; ")))
    }
}
