use cellmap_core::driver::*;
use cellmap_core::exceptional::Tables;
use cellmap_core::label::{Label, ProdLabel};
use cellmap_core::looplattice::{jordan_type, lift_nilpotent, valuation_pattern, Model};
use cellmap_core::orbits::ProductOrbits;
use cellmap_core::puiseux::SamplingOptions;
use cellmap_core::rootdata::{build_parahoric, CartanType};
use cellmap_core::tpoly::TPoly;

fn ctx(s: &str) -> Context {
    Context::new(CartanType::parse(s).unwrap(), &Tables::default()).unwrap()
}

fn full_levi(c: &Context) -> (cellmap_core::rootdata::Parahoric, ProductOrbits) {
    let d = c.g.datum();
    let nodes: Vec<usize> = (1..=d.rank()).collect();
    let p = build_parahoric(&nodes, d).unwrap();
    let ld = LeviData::new(&c.g, &p, &c.tables).unwrap();
    (p, ld.orbits)
}

#[test]
fn lifts_have_the_orbit_jordan_type() {
    for s in ["A3", "B3", "C3", "D4", "D5"] {
        let c = ctx(s);
        let d = c.g.datum();
        let m = Model::new(d).unwrap();
        let (p, po) = full_levi(&c);
        for o in po.all() {
            let e = lift_nilpotent(d, &m, &p, &po, &o, 4).unwrap();
            assert!(e.satisfies_form(&m), "{s} {}", po.label(&o));
            let want = match &po.label(&o).factors()[0] {
                Label::Part(q) | Label::Tagged(q, _) => q.clone(),
                other => panic!("unexpected orbit label {other}"),
            };
            assert_eq!(jordan_type(&e.at_one()), want, "{s}");
        }
    }
}

#[test]
fn lifts_lie_in_the_parahoric() {
    for s in ["A2", "B2", "C3", "D4"] {
        let c = ctx(s);
        let d = c.g.datum();
        let m = Model::new(d).unwrap();
        for p in &c.g.parahorics {
            let ld = LeviData::new(&c.g, p, &c.tables).unwrap();
            let vp = valuation_pattern(&m, d, p);
            for o in ld.orbits.all() {
                let e = lift_nilpotent(d, &m, p, &ld.orbits, &o, 4).unwrap();
                for i in 0..m.n {
                    for j in 0..m.n {
                        if let Some(v) = e.get(i, j).valuation() {
                            assert!(v as i64 >= vp.shifts[i * m.n + j], "{s} {} entry ({i},{j})", p.label());
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn type_a_regular_chain_and_subregular() {
    let c = ctx("A2");
    let (_, po) = full_levi(&c);
    let o = po.parse("2,1").unwrap();
    let i = c.g.orbits.index(&po.label(&o).factors()[0]).unwrap();
    let r = full_kl(&c.g, i, &c.tables, &SamplingOptions::default()).unwrap();
    assert_eq!(c.g.class_name(r.class), "2,1");
    assert_eq!(r.delta, 1.into());
    let reg = full_kl(&c.g, c.g.orbits.regular(), &c.tables, &SamplingOptions::default()).unwrap();
    assert_eq!(c.g.class_name(reg.class), "3");
    assert_eq!(reg.delta, 0.into());
}

#[test]
fn root_valuations_agree_across_b2_c2() {
    let k = 12;
    let t = |cs: &[i128]| TPoly::from_coeffs(cs.to_vec(), k);
    let cases = [
        (vec![t(&[0, 1]), t(&[0, 0, 1])], vec![1, 1, 1, 1, 1, 1, 2, 2]),
        (vec![t(&[0, 1]), t(&[0, 1, 1])], vec![1, 1, 1, 1, 1, 1, 2, 2]),
        (vec![t(&[0, 0, 3]), t(&[0, 0, 3, 1])], vec![2, 2, 2, 2, 2, 2, 3, 3]),
        (vec![t(&[1]), t(&[0, 0, 0, 1])], vec![0, 0, 0, 0, 0, 0, 3, 3]),
    ];
    for s in ["B2", "C2"] {
        let c = ctx(s);
        for (diag, want) in &cases {
            let (a, b) = root_valuation_pair(&c, diag).unwrap();
            assert_eq!(&a, want, "{s}");
            assert_eq!(a, b, "{s}");
        }
    }
}

#[test]
fn generalized_identity_reduces_to_the_parahoric_identity() {
    let c = ctx("C2");
    let opts = SamplingOptions::default();
    let rows = verify_thm_kl(&c, &opts).unwrap();
    let full: Vec<usize> = (1..=c.dual.datum().rank()).collect();
    for p in &c.g.parahorics {
        let x = p.nodes.clone();
        for r in rows.iter().filter(|r| r.parahoric == p.label()) {
            let e = ProdLabel::parse(&r.e_p).unwrap();
            let g = generalized_identity(&c, &x, &full, &e, &opts).unwrap();
            assert!(g.matches, "{:?}", g);
            assert_eq!(g.rhs_class, r.lhs_class.clone().unwrap(), "{} {}", r.parahoric, r.orbit);
        }
    }
}

#[test]
fn generalized_identity_on_b2_and_c2() {
    let opts = SamplingOptions::default();
    let subsets: [&[usize]; 5] = [&[0, 2], &[1, 2], &[0, 1], &[1], &[]];
    let labels = ["()", "2", "1,1", "2 x 2", "1,1 x 1,1", "2;-", "1;1", "-;1,1", "-;2", "1,1;-"];
    for s in ["B2", "C2"] {
        let c = ctx(s);
        let mut n = 0;
        for x in subsets {
            for z in subsets {
                for e in labels {
                    if let Ok(g) = generalized_identity(&c, x, z, &ProdLabel::parse(e).unwrap(), &opts) {
                        assert!(g.matches, "{s}: {g:?}");
                        n += 1;
                    }
                }
            }
        }
        assert!(n >= 30, "{s}: only {n} admissible triples");
    }
}

#[test]
fn kl_class_sets_agree_under_duality() {
    for s in ["A2", "B2"] {
        let c = ctx(s);
        let (a, b) = kl_class_sets(&c, &SamplingOptions::default()).unwrap();
        assert_eq!(a, b, "{s}");
    }
}

#[test]
fn strata_and_cell_map_for_rank_two() {
    for s in ["A2", "B2", "C2"] {
        let c = ctx(s);
        let opts = SamplingOptions::default();
        let rows = verify_thm_kl(&c, &opts).unwrap();
        assert!(rows.iter().all(|r| r.status == Status::Match && r.delta_check == Some(true)), "{s}");
        let st = strata(&c, &rows).unwrap();
        let special = c.dual.orbits.orbits.iter().filter(|o| o.special).count();
        assert!(st.len() >= special, "{s}");
        let distinct: std::collections::BTreeSet<usize> = rows.iter().map(|r| r.j_char).collect();
        assert_eq!(st.len(), distinct.len(), "{s}");
        let av = av_map(&c, &opts).unwrap();
        assert_eq!(av.len(), c.dual.orbits.orbits.len());
    }
}
