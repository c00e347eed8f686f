//! Every invariant suite in one pass.

use cellmap_core::arith::ipoly_mul;
use cellmap_core::characters::verify_orthogonality;
use cellmap_core::driver::{av_map, emit_exceptional, full_kl, strata, verify_thm_kl, Context, Side, Status};
use cellmap_core::invariants::{factor_b, factor_b_multiplicity, j_induce, product_b_multiplicity, GroupData};
use cellmap_core::orbits::{spaltenstein_dual, OrbitData};
use cellmap_core::rootdata::{build_root_datum, dual_datum, enumerate_parahorics, CartanType};
use cellmap_core::subgroup::ReflectionSubgroup;
use serde::Serialize;

use super::Env;
use crate::render::{table, Report};
use crate::{Failure, EXIT_VERIFY};

const CLASSICAL: &[&str] = &["A1", "A2", "A3", "A4", "A5", "A6", "B2", "B3", "B4", "C2", "C3", "C4", "D4", "D5"];

#[derive(Serialize)]
struct SuiteOut {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Serialize)]
struct SelftestOut {
    command: &'static str,
    suites: Vec<SuiteOut>,
    passed: usize,
    failed: usize,
}

fn types(env: &Env) -> Vec<CartanType> {
    let mut v: Vec<CartanType> = CLASSICAL.iter().map(|s| CartanType::parse(s).unwrap()).collect();
    v.push(CartanType::parse("G2").unwrap());
    if env.tables.chartabs.iter().any(|(t, _)| t.to_string() == "F4") {
        v.push(CartanType::parse("F4").unwrap());
    }
    v
}

type Check = Result<String, String>;

fn err<E: ToString>(ty: CartanType) -> impl Fn(E) -> String {
    move |e| format!("{ty}: {}", e.to_string())
}

fn characters(env: &Env) -> Check {
    let ts = types(env);
    for ty in &ts {
        let g = GroupData::new(&build_root_datum(*ty).map_err(err(*ty))?, &env.tables.chartabs).map_err(err(*ty))?;
        verify_orthogonality(&g.group, &g.table).map_err(err(*ty))?;
        let sum: i128 = (0..g.table.len()).map(|i| g.table.dim(&g.group, i).pow(2)).sum();
        if sum != g.group.order() as i128 {
            return Err(format!("{ty}: sum of squared dimensions {sum} != |W|"));
        }
    }
    Ok(format!("{} tables", ts.len()))
}

fn fake_degrees(env: &Env) -> Check {
    let ts = types(env);
    for ty in &ts {
        let g = GroupData::new(&build_root_datum(*ty).map_err(err(*ty))?, &env.tables.chartabs).map_err(err(*ty))?;
        let mut want = vec![1i128];
        for d in g.datum().degrees() {
            want = ipoly_mul(&want, &vec![1i128; d as usize]);
        }
        let mut got = vec![0i128; want.len()];
        for (i, p) in g.fake.iter().enumerate() {
            let dim = g.table.dim(&g.group, i);
            for (k, c) in p.iter().enumerate() {
                got[k] += dim * c;
            }
        }
        if got != want {
            return Err(format!("{ty}: graded regular representation identity fails"));
        }
        if g.b[g.table.trivial()] != 0 || g.b[g.table.sign(&g.group)] as usize != g.datum().num_positive() {
            return Err(format!("{ty}: b(triv) or b(sign) wrong"));
        }
    }
    Ok(format!("{} groups", ts.len()))
}

fn mls(env: &Env) -> Check {
    let mut checked = 0usize;
    let mut outside = 0usize;
    for ty in types(env) {
        let g = GroupData::new(&build_root_datum(ty).map_err(err(ty))?, &env.tables.chartabs).map_err(err(ty))?;
        for p in enumerate_parahorics(g.datum()).map_err(err(ty))? {
            let sub = ReflectionSubgroup::from_factors(g.datum(), &p.levi.factors, &env.tables.chartabs).map_err(err(ty))?;
            let fb = factor_b(&sub).map_err(err(ty))?;
            let fm = factor_b_multiplicity(&sub).map_err(err(ty))?;
            let fusion = sub.fusion(&g.group).map_err(err(ty))?;
            for ch in sub.chars() {
                let r = j_induce(&sub, &fb, &ch, &fusion, &g);
                if product_b_multiplicity(&fm, &ch) == 1 {
                    r.map_err(err(ty))?;
                    checked += 1;
                } else if r.is_err() {
                    outside += 1;
                }
            }
        }
    }
    Ok(format!("{checked} pairs unique; {outside} pairs outside the multiplicity-one hypothesis fail as expected"))
}

fn springer(env: &Env) -> Check {
    let ts = types(env);
    let mut n = 0;
    for ty in &ts {
        if !ty.family.is_classical() && env.tables.orbit_table(*ty).is_none() {
            continue;
        }
        let g = GroupData::new(&build_root_datum(*ty).map_err(err(*ty))?, &env.tables.chartabs).map_err(err(*ty))?;
        let od = OrbitData::new(&g.group, &g.table, &g.b, &env.tables).map_err(err(*ty))?;
        if ty.family.is_classical() {
            for o in od.orbits.iter().filter(|o| o.special) {
                let dd = spaltenstein_dual(*ty, &spaltenstein_dual(*ty, &o.label).map_err(err(*ty))?).map_err(err(*ty))?;
                if dd != o.label {
                    return Err(format!("{ty}: duality is not an involution on {}", o.label));
                }
            }
        }
        n += od.orbits.len();
    }
    Ok(format!("{n} orbits, d_O = b on specials, injective"))
}

fn duality(env: &Env) -> Check {
    for ty in types(env) {
        let d = build_root_datum(ty).map_err(err(ty))?;
        if dual_datum(&dual_datum(&d)) != d {
            return Err(format!("{ty}: dual of dual differs"));
        }
    }
    Ok("dual(dual(d)) = d".into())
}

fn type_a_oracle(env: &Env) -> Check {
    let mut n = 0;
    for s in ["A1", "A2", "A3"] {
        let ty = CartanType::parse(s).unwrap();
        let side = Side::new(&build_root_datum(ty).map_err(err(ty))?, &env.tables).map_err(err(ty))?;
        for (i, o) in side.orbits.orbits.iter().enumerate() {
            let r = full_kl(&side, i, &env.tables, &env.opts).map_err(err(ty))?;
            if side.class_name(r.class) != o.label.to_string() {
                return Err(format!("{ty}: orbit {} gave class {}", o.label, side.class_name(r.class)));
            }
            n += 1;
        }
    }
    Ok(format!("{n} orbits map to their own partition"))
}

fn identity_rank_two(env: &Env) -> Check {
    let mut n = 0;
    for s in ["A1", "A2", "B2", "C2"] {
        let ty = CartanType::parse(s).unwrap();
        let ctx = Context::new(ty, &env.tables).map_err(err(ty))?;
        let rows = verify_thm_kl(&ctx, &env.opts).map_err(err(ty))?;
        if let Some(r) = rows.iter().find(|r| r.status != Status::Match || r.delta_check != Some(true)) {
            return Err(format!("{ty}: {} {} is {}", r.parahoric, r.orbit, r.status));
        }
        strata(&ctx, &rows).map_err(err(ty))?;
        av_map(&ctx, &env.opts).map_err(err(ty))?;
        n += rows.len();
    }
    Ok(format!("{n} rows match; strata and cell map consistent"))
}

fn exceptional(env: &Env) -> Check {
    let mut done = Vec::new();
    for ty in types(env).into_iter().filter(|t| !t.family.is_classical()) {
        if env.tables.kl_table(ty).is_none() || env.tables.orbit_table(ty).is_none() {
            continue;
        }
        let ctx = Context::new(ty, &env.tables).map_err(err(ty))?;
        let rows = emit_exceptional(&ctx).map_err(err(ty))?;
        done.push(format!("{ty} ({} rows)", rows.len()));
    }
    Ok(if done.is_empty() { "no exceptional tables registered".into() } else { done.join(", ") })
}

pub fn selftest(env: &Env) -> Result<Report, Failure> {
    let suites: [(&str, fn(&Env) -> Check); 8] = [
        ("character tables", characters),
        ("fake degrees", fake_degrees),
        ("truncated induction", mls),
        ("springer correspondence", springer),
        ("root datum duality", duality),
        ("type A oracle", type_a_oracle),
        ("parahoric identity (rank <= 2)", identity_rank_two),
        ("exceptional predictions", exceptional),
    ];
    let out: Vec<SuiteOut> = suites
        .iter()
        .map(|(name, f)| match f(env) {
            Ok(detail) => SuiteOut { name: name.to_string(), pass: true, detail },
            Err(detail) => SuiteOut { name: name.to_string(), pass: false, detail },
        })
        .collect();
    let failed = out.iter().filter(|s| !s.pass).count();
    let body: Vec<Vec<String>> = out
        .iter()
        .map(|s| vec![if s.pass { "PASS" } else { "FAIL" }.into(), s.name.clone(), s.detail.clone()])
        .collect();
    let text = table(&["result", "suite", "detail"], &body);
    let rep = Report::new(&SelftestOut { command: "selftest", passed: out.len() - failed, failed, suites: out }, text);
    Ok(if failed > 0 { rep.failing(EXIT_VERIFY, format!("{failed} suites failed")) } else { rep })
}
