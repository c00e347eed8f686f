//! Group-theoretic dumps: roots, classes, characters, fake degrees, orbits,
//! Springer correspondence and j-induction.

use cellmap_core::invariants::{factor_b, j_induce_label, product_b, GroupData};
use cellmap_core::label::ProdLabel;
use cellmap_core::orbits::{spaltenstein_dual, OrbitData};
use cellmap_core::rootdata::{build_parahoric, build_root_datum, dual_datum, parse_nodes, CartanType, RootDatum};
use cellmap_core::subgroup::ReflectionSubgroup;
use serde::Serialize;

use super::Env;
use crate::render::{list, table, Report};
use crate::tables::Kind;
use crate::{Failure, EXIT_USAGE};

pub fn datum(ty: CartanType) -> Result<RootDatum, Failure> {
    Ok(build_root_datum(ty)?)
}

pub fn group_data(env: &Env, ty: CartanType) -> Result<GroupData, Failure> {
    Ok(GroupData::new(&datum(ty)?, &env.tables.chartabs)?)
}

pub fn orbit_data(env: &Env, g: &GroupData) -> Result<OrbitData, Failure> {
    Ok(OrbitData::new(&g.group, &g.table, &g.b, &env.tables)?)
}

#[derive(Serialize)]
struct RootsOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    dual_type: String,
    rank: usize,
    simple_roots: Vec<Vec<i64>>,
    cartan_matrix: Vec<Vec<i64>>,
    degrees: Vec<u32>,
    num_positive: usize,
    highest_root: Vec<i64>,
    marks: Vec<i64>,
    positive_roots: Vec<Vec<i64>>,
}

pub fn roots(ty: CartanType) -> Result<Report, Failure> {
    let d = datum(ty)?;
    let out = RootsOut {
        command: "roots",
        ty: ty.to_string(),
        dual_type: dual_datum(&d).ty.to_string(),
        rank: d.rank(),
        simple_roots: d.simple.clone(),
        cartan_matrix: d.cartan.clone(),
        degrees: d.degrees(),
        num_positive: d.num_positive(),
        highest_root: d.highest_root(),
        marks: d.marks(),
        positive_roots: d.positive.clone(),
    };
    let mut text = format!("type {}  dual {}  rank {}  N {}\n", out.ty, out.dual_type, out.rank, out.num_positive);
    text += &format!("degrees {}\n", list(&out.degrees));
    text += &format!("highest root {}  marks {}\n", list(&out.highest_root), list(&out.marks));
    for (i, s) in out.simple_roots.iter().enumerate() {
        text += &format!("alpha_{} = {}\n", i + 1, list(s));
    }
    text += "cartan matrix\n";
    for row in &out.cartan_matrix {
        text += &format!("  {}\n", list(row));
    }
    text += "positive roots (simple coordinates)\n";
    for r in &out.positive_roots {
        text += &format!("  {}\n", list(r));
    }
    Ok(Report::new(&out, text))
}

#[derive(Serialize)]
struct ClassOut {
    label: String,
    size: usize,
    char_poly: Vec<i64>,
    fixed_dim: usize,
    word: Vec<u8>,
}

#[derive(Serialize)]
struct ClassesOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    order: usize,
    classes: Vec<ClassOut>,
}

pub fn classes(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let g = group_data(env, ty)?;
    let w = &g.group;
    let classes: Vec<ClassOut> = w
        .classes
        .iter()
        .map(|c| ClassOut {
            label: c.label.to_string(),
            size: c.size,
            char_poly: c.char_poly.iter().map(|x| *x as i64).collect(),
            fixed_dim: c.fixed_dim,
            word: w.word(c.rep).iter().map(|s| s + 1).collect(),
        })
        .collect();
    let rows: Vec<Vec<String>> = classes
        .iter()
        .map(|c| vec![c.label.clone(), c.size.to_string(), c.fixed_dim.to_string(), list(&c.char_poly), list(&c.word)])
        .collect();
    let text = format!("W({ty}) order {}\n", w.order()) + &table(&["class", "size", "fixed", "char_poly", "word"], &rows);
    Ok(Report::new(&ClassesOut { command: "classes", ty: ty.to_string(), order: w.order(), classes }, text))
}

#[derive(Serialize)]
struct CharOut {
    label: String,
    dim: i64,
    values: Vec<i64>,
}

#[derive(Serialize)]
struct CharsOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    classes: Vec<String>,
    characters: Vec<CharOut>,
}

pub fn chars(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let g = group_data(env, ty)?;
    let classes: Vec<String> = g.group.classes.iter().map(|c| c.label.to_string()).collect();
    let characters: Vec<CharOut> = g
        .table
        .chars
        .iter()
        .enumerate()
        .map(|(i, c)| CharOut {
            label: c.label.to_string(),
            dim: g.table.dim(&g.group, i) as i64,
            values: c.values.iter().map(|v| *v as i64).collect(),
        })
        .collect();
    let mut headers: Vec<&str> = vec!["char"];
    headers.extend(classes.iter().map(|s| s.as_str()));
    let rows: Vec<Vec<String>> = characters
        .iter()
        .map(|c| std::iter::once(c.label.clone()).chain(c.values.iter().map(|v| v.to_string())).collect())
        .collect();
    let text = table(&headers, &rows);
    Ok(Report::new(&CharsOut { command: "chars", ty: ty.to_string(), classes, characters }, text))
}

#[derive(Serialize)]
struct FakeOut {
    label: String,
    b: u32,
    fake_degree: Vec<i64>,
}

#[derive(Serialize)]
struct FakedegOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    characters: Vec<FakeOut>,
}

pub fn fakedeg(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let g = group_data(env, ty)?;
    let characters: Vec<FakeOut> = g
        .table
        .chars
        .iter()
        .enumerate()
        .map(|(i, c)| FakeOut {
            label: c.label.to_string(),
            b: g.b[i],
            fake_degree: g.fake[i].iter().map(|x| *x as i64).collect(),
        })
        .collect();
    let rows: Vec<Vec<String>> =
        characters.iter().map(|c| vec![c.label.clone(), c.b.to_string(), list(&c.fake_degree)]).collect();
    let text = table(&["char", "b", "fake degree (q^0 upward)"], &rows);
    Ok(Report::new(&FakedegOut { command: "fakedeg", ty: ty.to_string(), characters }, text))
}

#[derive(Serialize)]
struct OrbitOut {
    label: String,
    dim: u32,
    d: u32,
    special: bool,
    springer: String,
    b: u32,
    dual: String,
}

#[derive(Serialize)]
struct OrbitsOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    orbits: Vec<OrbitOut>,
}

fn orbit_rows(env: &Env, ty: CartanType) -> Result<Vec<OrbitOut>, Failure> {
    let g = group_data(env, ty)?;
    let od = orbit_data(env, &g)?;
    od.orbits
        .iter()
        .map(|o| {
            let dual = if ty.family.is_classical() {
                spaltenstein_dual(ty, &o.label)?.to_string()
            } else {
                let name = o.label.to_string();
                env.registry
                    .get(ty, Kind::Orbits)
                    .and_then(|f| f.records.iter().find(|r| r.fields[0] == name))
                    .map(|r| r.fields[3].clone())
                    .unwrap_or_default()
            };
            Ok(OrbitOut {
                label: o.label.to_string(),
                dim: o.dim,
                d: o.d,
                special: o.special,
                springer: g.table.chars[o.springer].label.to_string(),
                b: g.b[o.springer],
                dual,
            })
        })
        .collect()
}

pub fn orbits(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let orbits = orbit_rows(env, ty)?;
    let rows: Vec<Vec<String>> = orbits
        .iter()
        .map(|o| {
            vec![
                o.label.clone(),
                o.dim.to_string(),
                o.d.to_string(),
                if o.special { "yes" } else { "no" }.into(),
                o.dual.clone(),
            ]
        })
        .collect();
    let text = table(&["orbit", "dim", "d_O", "special", "dual"], &rows);
    Ok(Report::new(&OrbitsOut { command: "orbits", ty: ty.to_string(), orbits }, text))
}

pub fn springer(env: &Env, ty: CartanType) -> Result<Report, Failure> {
    let orbits = orbit_rows(env, ty)?;
    let rows: Vec<Vec<String>> = orbits
        .iter()
        .map(|o| vec![o.label.clone(), o.springer.clone(), o.d.to_string(), o.b.to_string(), if o.special { "yes" } else { "no" }.into()])
        .collect();
    let text = table(&["orbit", "springer", "d_O", "b", "special"], &rows);
    Ok(Report::new(&OrbitsOut { command: "springer", ty: ty.to_string(), orbits }, text))
}

#[derive(Serialize)]
struct JinduceOut {
    command: &'static str,
    #[serde(rename = "type")]
    ty: String,
    parahoric: String,
    levi: String,
    rep: String,
    b_rep: u32,
    j: String,
    b_j: u32,
}

pub fn jinduce(env: &Env, ty: CartanType, levi: &str, rep: &str) -> Result<Report, Failure> {
    let g = group_data(env, ty)?;
    let d = g.datum();
    let nodes = parse_nodes(levi, d.rank()).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))?;
    let p = build_parahoric(&nodes, d)?;
    let sub = ReflectionSubgroup::from_factors(d, &p.levi.factors, &env.tables.chartabs)?;
    let label = ProdLabel::parse(rep)?;
    let ch = sub
        .char_by_label(&label)
        .ok_or_else(|| Failure::new(crate::EXIT_DATA, format!("{rep} is not a character of the levi {}", p.levi.type_name())))?;
    let j = j_induce_label(&sub, &label, &g)?;
    let out = JinduceOut {
        command: "jinduce",
        ty: ty.to_string(),
        parahoric: p.label(),
        levi: p.levi.type_name(),
        rep: sub.char_label(&ch).to_string(),
        b_rep: product_b(&factor_b(&sub)?, &ch),
        j: g.table.chars[j].label.to_string(),
        b_j: g.b[j],
    };
    let text = format!(
        "parahoric {}  levi {}\nj({}) = {}  (b = {})\n",
        out.parahoric, out.levi, out.rep, out.j, out.b_j
    );
    Ok(Report::new(&out, text))
}
