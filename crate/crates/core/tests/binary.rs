use std::collections::HashSet;
use std::sync::OnceLock;

use cgt_core::algebra::Perm;
use cgt_core::binary::related::DEFAULT_NODE_BUDGET;
use cgt_core::binary::{
    binary_bounded, conjugates_of, nonbinary_witness, pad_violation, r_related, stabilizer_filter,
    ti_binary_criterion, BinaryVerdict, CosetAction, FilterVerdict, TiVerdict,
};
use cgt_core::catalog::{make_group, make_group_on, CatalogGroup, DomainKind, GroupSpec, RootKind};
use cgt_core::components::{ClassRegistry, TransportOptions};
use cgt_core::group::{stream, FiniteGroup};

use proptest::prelude::*;

fn cat(spec: &str) -> CatalogGroup {
    make_group(&spec.parse::<GroupSpec>().unwrap()).unwrap()
}

fn perm(n: usize, cycles: &[&[u32]]) -> Perm {
    let c: Vec<Vec<u32>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(n, &c).unwrap()
}

fn group(n: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
    FiniteGroup::new(n, gens.iter().map(|g| perm(n, g)).collect()).unwrap()
}

/// Checks `H1 ∩ H2 H3 = 1` over every triple of distinct conjugates, by
/// forming all products.
fn triples_intersect_trivially(conj: &[Vec<Perm>]) -> bool {
    let sets: Vec<HashSet<&Perm>> = conj.iter().map(|c| c.iter().collect()).collect();
    for (k2, h2) in conj.iter().enumerate() {
        for (k3, h3) in conj.iter().enumerate() {
            if k2 == k3 {
                continue;
            }
            for a in h2 {
                for b in h3 {
                    let x = a.mul(b);
                    if x.is_identity() {
                        continue;
                    }
                    if sets.iter().enumerate().any(|(k1, s)| k1 != k2 && k1 != k3 && s.contains(&x)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Relatedness by scanning every group element.
fn naive_related(elems: &[Perm], i: &[u32], j: &[u32], r: usize) -> bool {
    fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
        if r == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for last in r - 1..n {
            for mut s in subsets(last, r - 1) {
                s.push(last);
                out.push(s);
            }
        }
        out
    }
    subsets(i.len(), r).iter().all(|ks| elems.iter().any(|g| ks.iter().all(|&k| g.apply(i[k]) == j[k])))
}

#[test]
fn suzuki_centre_action() {
    let c = cat("Sz(8)");
    let g = c.group();
    let h = c.root_subgroup(RootKind::Long).unwrap();
    assert_eq!(h.order(), 8);
    let act = CosetAction::new(g, &h).unwrap();
    assert_eq!(act.degree(), 3640);
    let t = h.generators()[0].clone();
    // Cosets H x fixed by t are those with x t x^-1 in H.
    let hs: HashSet<Perm> = h.elements(8).unwrap().into_iter().collect();
    let mut count = 0u128;
    g.for_each_element(30_000, |x| {
        if hs.contains(&x.mul(&t).mul(&x.inverse())) {
            count += 1;
        }
        true
    })
    .unwrap();
    assert_eq!(count / 8, 56);
    assert_eq!(act.fixity(&t).unwrap(), 56);
    assert!(matches!(ti_binary_criterion(g, &h).unwrap(), TiVerdict::Binary { conjugates: 65 }));

    let mut reg = ClassRegistry::for_catalog(&c);
    match stabilizer_filter(&mut reg, &h, &TransportOptions::default()).unwrap() {
        FilterVerdict::Pass { fixity, delta_order, .. } => {
            assert_eq!(fixity, 56);
            assert_eq!(delta_order, 8);
        }
        v => panic!("{v:?}"),
    }
}

#[test]
fn sl2_sylow_triples_intersect_trivially() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let spec: GroupSpec = format!("SL(2,{q})").parse().unwrap();
        let kind = if q % 2 == 0 { DomainKind::Projective } else { DomainKind::Vectors };
        let c = make_group_on(&spec, kind).unwrap();
        let h = c.sylow().unwrap();
        assert_eq!(h.order(), q as u128);
        let conj = conjugates_of(c.group(), &h).unwrap();
        assert_eq!(conj.len() as u64, q + 1);
        assert!(triples_intersect_trivially(&conj), "q = {q}");
        assert!(matches!(ti_binary_criterion(c.group(), &h).unwrap(), TiVerdict::Binary { .. }), "q = {q}");
    }
}

#[test]
fn projective_sl2_odd_sylow_actions_are_not_binary() {
    for q in [3u64, 5, 7, 9] {
        let c = cat(&format!("SL(2,{q})"));
        let h = c.sylow().unwrap();
        let conj = conjugates_of(c.group(), &h).unwrap();
        assert!(!triples_intersect_trivially(&conj), "q = {q}");
        assert!(matches!(ti_binary_criterion(c.group(), &h).unwrap(), TiVerdict::NotBinary { .. }), "q = {q}");
    }
}

#[test]
fn psu3_3_long_root_centre_is_binary() {
    let c = cat("SU(3,3)");
    assert_eq!(c.group().order(), 6048);
    let h = c.root_subgroup(RootKind::Long).unwrap();
    assert_eq!(h.order(), 3);
    let conj = conjugates_of(c.group(), &h).unwrap();
    // One centre for each isotropic point.
    assert_eq!(conj.len(), 28);
    assert!(triples_intersect_trivially(&conj));
    assert!(matches!(ti_binary_criterion(c.group(), &h).unwrap(), TiVerdict::Binary { .. }));
}

fn a6() -> FiniteGroup {
    group(6, &[&[&[1, 2, 3]], &[&[2, 3, 4, 5, 6]]])
}

#[test]
fn a6_natural_action_is_not_binary() {
    let g = a6();
    let elems = g.elements(360).unwrap();
    let g1 = perm(6, &[&[1, 2], &[3, 4]]);
    let g2 = perm(6, &[&[1, 2], &[5, 6]]);
    let w = nonbinary_witness(&g, &g1, &g2).unwrap();
    assert!(w.certifies_nonbinary());
    assert!(naive_related(&elems, &w.i, &w.j, 2));
    assert!(!naive_related(&elems, &w.i, &w.j, w.i.len()));

    let BinaryVerdict::Violation { i, j, n } = binary_bounded(&g, 6, DEFAULT_NODE_BUDGET).unwrap() else {
        panic!("A6 is not binary on 6 points");
    };
    assert!(naive_related(&elems, &i, &j, 2));
    assert!(!naive_related(&elems, &i, &j, n));
    let (i6, j6) = pad_violation(&g, &i, &j, 6).unwrap().unwrap();
    assert!(naive_related(&elems, &i6, &j6, 2));
    assert!(!naive_related(&elems, &i6, &j6, 6));
    assert!(r_related(&g, &i6, &j6, 2).unwrap());
    assert!(!r_related(&g, &i6, &j6, 6).unwrap());
}

/// Small transitive groups with a point stabilizer or another subgroup of
/// small index.
fn small_actions() -> Vec<(&'static str, FiniteGroup, FiniteGroup)> {
    vec![
        ("S3/C2", group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]), group(3, &[&[&[1, 2]]])),
        ("A4/C3", group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]), group(4, &[&[&[1, 2, 3]]])),
        ("A4/C2", group(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]), group(4, &[&[&[1, 2], &[3, 4]]])),
        ("D10/C2", group(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 5], &[3, 4]]]), group(5, &[&[&[2, 5], &[3, 4]]])),
        ("F20/C4", group(5, &[&[&[1, 2, 3, 4, 5]], &[&[2, 3, 5, 4]]]), group(5, &[&[&[2, 3, 5, 4]]])),
        ("F21/C3", group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]]), group(7, &[&[&[2, 3, 5], &[4, 7, 6]]])),
        ("S4/C3", group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]), group(4, &[&[&[1, 2, 3]]])),
        ("A5/C5", group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]), group(5, &[&[&[1, 2, 3, 4, 5]]])),
        ("A5/V4", group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]), group(5, &[&[&[1, 2], &[3, 4]], &[&[1, 3], &[2, 4]]])),
        ("S4/V4", group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]), group(4, &[&[&[1, 2]], &[&[3, 4]]])),
    ]
}

#[test]
fn ti_criterion_agrees_with_bounded_search() {
    let mut checked = 0;
    for (name, g, h) in small_actions() {
        let act = CosetAction::new(&g, &h).unwrap();
        assert_eq!(act.degree() as u128, g.order() / h.order(), "{name}");
        let verdict = ti_binary_criterion(&g, &h).unwrap();
        if matches!(verdict, TiVerdict::NotTi) {
            continue;
        }
        let image = act.image();
        let bounded = binary_bounded(image, image.degree(), DEFAULT_NODE_BUDGET).unwrap();
        match (&verdict, &bounded) {
            (TiVerdict::Binary { .. }, BinaryVerdict::NoViolation { .. }) => {}
            (TiVerdict::NotBinary { .. }, BinaryVerdict::Violation { .. }) => {}
            _ => panic!("{name}: {verdict:?} vs {bounded:?}"),
        }
        checked += 1;
    }
    assert!(checked >= 7);
}

#[test]
fn coset_actions_satisfy_burnside() {
    let mut cases = small_actions();
    let c = cat("SL(2,8)");
    cases.push(("SL(2,8)/P", c.group().clone(), c.sylow().unwrap()));
    for (name, g, h) in cases {
        let act = CosetAction::new(&g, &h).unwrap();
        let mut total = 0u128;
        g.for_each_element(1_000, |x| {
            total += act.fixity(x).unwrap() as u128;
            true
        })
        .unwrap();
        assert_eq!(total, g.order(), "{name}");
        // The base point is stabilized by exactly H.
        for x in h.generators() {
            assert_eq!(act.act(x).unwrap().apply(0), 0, "{name}");
        }
        assert_eq!(act.image().order(), g.order(), "{name}");
    }
}

#[test]
fn filter_never_rejects_a_binary_action() {
    for (name, g, h) in small_actions() {
        if h.order() % 2 != 0 {
            continue;
        }
        let act = CosetAction::new(&g, &h).unwrap();
        let image = act.image();
        let binary = matches!(
            binary_bounded(image, image.degree(), DEFAULT_NODE_BUDGET).unwrap(),
            BinaryVerdict::NoViolation { .. }
        );
        let mut reg = ClassRegistry::new(&g, 2).unwrap();
        let v = stabilizer_filter(&mut reg, &h, &TransportOptions::default()).unwrap();
        if binary {
            assert!(!matches!(v, FilterVerdict::Fail { .. }), "{name}: {v:?}");
        }
    }
}

fn pgl25() -> &'static (FiniteGroup, Vec<Perm>) {
    // PGL(2,5) on the projective line, sharply 3-transitive of degree 6.
    static G: OnceLock<(FiniteGroup, Vec<Perm>)> = OnceLock::new();
    G.get_or_init(|| {
        let g = group(6, &[&[&[1, 2, 3, 4, 5]], &[&[1, 2, 4, 3]], &[&[1, 6], &[2, 3], &[4, 5]]]);
        let elems = g.elements(1_000).unwrap();
        (g, elems)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn relatedness_is_downward_monotone(
        seed in any::<u64>(),
        i in proptest::collection::vec(0u32..6, 2..=6),
        swaps in proptest::collection::vec((0usize..6, 0u32..6), 0..3),
    ) {
        let (g, elems) = pgl25();
        let mut rng = stream(seed, "tuples", 0);
        let x = g.random_element(&mut rng);
        let mut j: Vec<u32> = i.iter().map(|&a| x.apply(a)).collect();
        for (k, v) in swaps {
            let k = k % j.len();
            j[k] = v;
        }
        let n = i.len();
        let mut previous = true;
        for r in 1..=n {
            let rel = r_related(g, &i, &j, r).unwrap();
            prop_assert_eq!(rel, naive_related(elems, &i, &j, r));
            prop_assert!(previous || !rel, "related at {} but not below", r);
            previous = rel;
        }
    }
}
