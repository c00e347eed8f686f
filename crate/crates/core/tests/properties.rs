use cellmap_core::driver::{j_between, Context, LeviData};
use cellmap_core::invariants::{factor_b, j_induce, GroupData};
use cellmap_core::subgroup::ReflectionSubgroup;
use cellmap_core::exceptional::Tables;
use cellmap_core::label::Label;
use cellmap_core::looplattice::{lift_nilpotent, sample_generic, valuation_pattern, Model};
use cellmap_core::orbits::spaltenstein_dual;
use cellmap_core::partition::{dominates, size};
use cellmap_core::puiseux::{kl_parahoric, SamplingOptions};
use cellmap_core::rootdata::{build_parahoric, build_root_datum, dual_datum, enumerate_parahorics, CartanType, Family};
use cellmap_core::weyl::WeylGroup;
use proptest::prelude::*;

const TYPES: &[&str] = &["A1", "A2", "A3", "A4", "B2", "B3", "C2", "C3", "D4", "G2"];
const SMALL: &[&str] = &["A2", "A3", "B2", "C2"];

fn ty(s: &str) -> CartanType {
    CartanType::parse(s).unwrap()
}

fn subset(mask: u32, r: usize) -> Vec<usize> {
    let v: Vec<usize> = (0..=r).filter(|i| mask & (1 << i) != 0).collect();
    if v.len() == r + 1 {
        v[1..].to_vec()
    } else {
        v
    }
}

fn partition_of(l: &Label) -> Vec<u32> {
    match l {
        Label::Part(p) | Label::Tagged(p, _) => p.clone(),
        other => panic!("not a partition label: {other}"),
    }
}

fn cycle_total(l: &Label) -> u32 {
    match l {
        Label::Part(p) | Label::Tagged(p, _) => size(p),
        Label::Bi(a, b) | Label::SplitBi(a, b, _) => size(a) + size(b),
        Label::Named(_) => 0,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn weyl_order_is_product_of_degrees(i in 0..TYPES.len()) {
        let d = build_root_datum(ty(TYPES[i])).unwrap();
        let w = WeylGroup::new(&d).unwrap();
        let prod: u64 = d.degrees().iter().map(|x| *x as u64).product();
        prop_assert_eq!(w.order() as u64, prod);
        prop_assert_eq!(d.roots().len(), 2 * d.num_positive());
        let sum: u32 = d.degrees().iter().map(|x| x - 1).sum();
        prop_assert_eq!(sum as usize, d.num_positive());
    }

    #[test]
    fn parahoric_levi_rank_and_roots(i in 0..TYPES.len(), mask in 0u32..64) {
        let d = build_root_datum(ty(TYPES[i])).unwrap();
        let nodes = subset(mask, d.rank());
        let p = build_parahoric(&nodes, &d).unwrap();
        let rank: usize = p.levi.factors.iter().map(|f| f.ty.rank).sum();
        prop_assert_eq!(rank, nodes.len());
        for f in &p.levi.factors {
            prop_assert_eq!(f.positive.len(), build_root_datum(f.ty).unwrap().num_positive());
        }
        let dd = dual_datum(&d);
        prop_assert_eq!(enumerate_parahorics(&dd).unwrap().len(), enumerate_parahorics(&d).unwrap().len());
    }

    #[test]
    fn spaltenstein_dual_reverses_dominance(i in 0..6usize, a in 0usize..64, b in 0usize..64) {
        let t = ty(["A4", "B3", "C3", "B4", "C4", "D4"][i]);
        let c = Context::new(t, &Tables::default()).unwrap();
        let orbits = &c.g.orbits.orbits;
        let (x, y) = (&orbits[a % orbits.len()], &orbits[b % orbits.len()]);
        let (px, py) = (partition_of(&x.label), partition_of(&y.label));
        if dominates(&px, &py) {
            let dx = partition_of(&spaltenstein_dual(t, &x.label).unwrap());
            let dy = partition_of(&spaltenstein_dual(t, &y.label).unwrap());
            prop_assert!(dominates(&dy, &dx));
        }
    }

    #[test]
    fn hyperspecial_samples_reduce_to_the_lift(i in 0..SMALL.len(), o in 0usize..16, seed in any::<u64>()) {
        let c = Context::new(ty(SMALL[i]), &Tables::default()).unwrap();
        let d = c.g.datum();
        let m = Model::new(d).unwrap();
        let nodes: Vec<usize> = (1..=d.rank()).collect();
        let p = build_parahoric(&nodes, d).unwrap();
        let ld = LeviData::new(&c.g, &p, &c.tables).unwrap();
        let all = ld.orbits.all();
        let o = &all[o % all.len()];
        let e = lift_nilpotent(d, &m, &p, &ld.orbits, o, 6).unwrap();
        let g = sample_generic(&e, &m, &valuation_pattern(&m, d, &p), 5, seed);
        prop_assert!(g.satisfies_form(&m));
        prop_assert_eq!(g.at_zero(), e.at_zero());
    }

    #[test]
    fn oracle_is_deterministic_and_sizes_add_up(i in 0..SMALL.len(), pi in 0usize..8, oi in 0usize..16, seed in 0u64..1000) {
        let c = Context::new(ty(SMALL[i]), &Tables::default()).unwrap();
        let d = c.g.datum();
        let p = &c.g.parahorics[pi % c.g.parahorics.len()];
        let ld = LeviData::new(&c.g, p, &c.tables).unwrap();
        let all = ld.orbits.all();
        let o = &all[oi % all.len()];
        let opts = SamplingOptions { seed, ..SamplingOptions::default() };
        let a = kl_parahoric(d, &c.g.data.group, p, &ld.orbits, o, &opts).unwrap();
        let b = kl_parahoric(d, &c.g.data.group, p, &ld.orbits, o, &opts).unwrap();
        prop_assert_eq!(&a, &b);
        let want = match d.ty.family {
            Family::A => d.rank() as u32 + 1,
            _ => d.rank() as u32,
        };
        prop_assert_eq!(cycle_total(&a.label), want);
        if ld.orbits.special(o) {
            prop_assert_eq!(a.delta, (ld.orbits.d(o) as i128).into());
        }
    }

    #[test]
    fn j_induction_is_transitive(i in 0..TYPES.len(), outer in 0u32..64, inner in 0u32..64, ci in 0usize..64) {
        let d = build_root_datum(ty(TYPES[i])).unwrap();
        let g = GroupData::new(&d, &[]).unwrap();
        let q_nodes = subset(outer, d.rank());
        let p_nodes: Vec<usize> = q_nodes.iter().copied().filter(|n| inner & (1 << n) != 0).collect();
        let q = build_parahoric(&q_nodes, &d).unwrap();
        let p = build_parahoric(&p_nodes, &d).unwrap();
        let wp = ReflectionSubgroup::from_factors(&d, &p.levi.factors, &[]).unwrap();
        let mut wq = ReflectionSubgroup::from_factors(&d, &q.levi.factors, &[]).unwrap();
        let chars = wp.chars();
        let ch = &chars[ci % chars.len()];
        let direct = j_induce(&wp, &factor_b(&wp).unwrap(), ch, &wp.fusion(&g.group).unwrap(), &g);
        let step = j_between(&wp, ch, &mut wq)
            .and_then(|m| j_induce(&wq, &factor_b(&wq).unwrap(), &m, &wq.fusion(&g.group).unwrap(), &g));
        if let (Ok(a), Ok(b)) = (direct, step) {
            prop_assert_eq!(a, b);
        }
    }
}
