use std::sync::OnceLock;

use cgt_core::algebra::{Elem, Field, Matrix};
use cgt_core::catalog::{make_group, CatalogGroup, GroupSpec, InvolutionLabel};
use cgt_core::group::centralizer::bray_elements;
use cgt_core::group::{stream, FiniteGroup, OrbitBudget, OrbitIndex};

use proptest::prelude::*;

fn cat(spec: &str) -> CatalogGroup {
    make_group(&spec.parse::<GroupSpec>().unwrap()).unwrap()
}

/// Catalog groups of order at most 10^7 in characteristic 2, where every
/// involution class has a label.
const SMALL_GROUPS: &[&str] = &[
    "SL(2,4)", "SL(2,8)", "SL(2,16)", "SL(2,32)", "SL(2,64)", "SL(3,2)", "SL(3,4)", "SL(4,2)", "SL(5,2)",
    "Sp(4,4)", "Sp(6,2)", "SU(3,4)", "SU(3,8)", "SU(4,2)", "O+(6,2)", "O-(6,2)", "Sz(8)",
];

/// The centralizer is built from Bray elements, without reference to the
/// conjugation orbit, so the identity checks both.
#[test]
fn orbit_stabilizer_for_every_label() {
    for s in SMALL_GROUPS {
        let c = cat(s);
        let g = c.group();
        assert!(g.order() <= 10_000_000, "{s}");
        let labels = c.labels();
        assert!(!labels.is_empty(), "{s}");
        for label in labels {
            let t = c.involution_rep(&label).unwrap();
            let orbit = OrbitIndex::build(g, &t, &OrbitBudget::default()).unwrap();
            let mut gens = vec![t.clone()];
            gens.extend(bray_elements(g, &t, 60, 11));
            let z = FiniteGroup::new(g.degree(), gens).unwrap();
            assert!(z.generators().iter().all(|x| x.commutes_with(&t)), "{s} {label}");
            assert_eq!(orbit.len() as u128 * z.order(), g.order(), "{s} {label}");
        }
    }
}

#[test]
fn labels_round_trip_and_match_invariants() {
    for s in SMALL_GROUPS.iter().chain(&["Sp(8,2)", "O+(8,2)", "O-(8,2)", "SL(6,2)"]) {
        let c = cat(s);
        for label in c.labels() {
            let shown = label.to_string();
            assert_eq!(InvolutionLabel::parse(&shown, c.spec()).unwrap(), label, "{s} {shown}");
            let t = c.involution_rep(&label).unwrap();
            assert!(t.is_involution());
            assert_eq!(c.label_of(&t).unwrap(), label, "{s} {shown}");
            let rank = c.class_invariant(&t).unwrap().rank;
            let n = c.spec().n;
            match label {
                InvolutionLabel::Jordan { a, b } => {
                    assert_eq!(rank, a);
                    assert_eq!(2 * a + b, n);
                }
                InvolutionLabel::Wv { a, b, c: v, .. } => {
                    assert_eq!(rank, 2 * b + v);
                    assert_eq!(2 * a + 4 * b + 2 * v, n);
                }
                InvolutionLabel::Suzuki => assert_eq!(rank, 2),
            }
        }
    }
}

const FIELD_ORDERS: &[u64] = &[2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 128, 256, 343, 512];

fn fields() -> &'static Vec<std::sync::Arc<Field>> {
    static F: OnceLock<Vec<std::sync::Arc<Field>>> = OnceLock::new();
    F.get_or_init(|| FIELD_ORDERS.iter().map(|&q| Field::of_order(q).unwrap()).collect())
}

fn random_matrix(f: &Field, rows: usize, cols: usize, seed: u64, rank_cap: usize) -> Matrix {
    use rand::Rng;
    let field = Field::of_order(f.order() as u64).unwrap();
    let mut rng = stream(seed, "matrix", 0);
    // A product of rows x k and k x cols factors has rank at most k.
    let k = rank_cap.max(1);
    let a: Vec<Elem> = (0..rows * k).map(|_| rng.random_range(0..f.order()) as Elem).collect();
    let b: Vec<Elem> = (0..k * cols).map(|_| rng.random_range(0..f.order()) as Elem).collect();
    let a = Matrix::new(&field, rows, k, a).unwrap();
    let b = Matrix::new(&field, k, cols, b).unwrap();
    a.mul(&b).unwrap()
}

fn gf2_groups() -> &'static Vec<CatalogGroup> {
    static G: OnceLock<Vec<CatalogGroup>> = OnceLock::new();
    G.get_or_init(|| ["Sp(6,2)", "O-(6,2)", "O+(8,2)"].iter().map(|s| cat(s)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(fi in 0..FIELD_ORDERS.len(), x in any::<u32>(), y in any::<u32>(), z in any::<u32>()) {
        let f = &fields()[fi];
        let q = f.order();
        let (x, y, z) = ((x % q) as Elem, (y % q) as Elem, (z % q) as Elem);
        prop_assert_eq!(f.add(f.add(x, y), z), f.add(x, f.add(y, z)));
        prop_assert_eq!(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
        prop_assert_eq!(f.add(x, y), f.add(y, x));
        prop_assert_eq!(f.mul(x, y), f.mul(y, x));
        prop_assert_eq!(f.mul(x, f.add(y, z)), f.add(f.mul(x, y), f.mul(x, z)));
        prop_assert_eq!(f.add(x, f.neg(x)), f.zero());
        prop_assert_eq!(f.mul(x, f.one()), x);
        prop_assert_eq!(f.sub(f.add(x, y), y), x);
        if x != f.zero() {
            prop_assert_eq!(f.mul(x, f.inv(x).unwrap()), f.one());
            prop_assert_eq!(f.pow(x, q as u64 - 1), f.one());
        } else {
            prop_assert!(f.inv(x).is_err());
        }
        prop_assert_eq!(f.frobenius(f.add(x, y)), f.add(f.frobenius(x), f.frobenius(y)));
    }

    #[test]
    fn rank_of_product_is_bounded(
        fi in 0..FIELD_ORDERS.len(),
        seed in any::<u64>(),
        (r, k, c) in (1usize..7, 1usize..7, 1usize..7),
        (ca, cb) in (1usize..7, 1usize..7),
    ) {
        let f = &fields()[fi];
        let a = random_matrix(f, r, k, seed, ca);
        let b = random_matrix(f, k, c, seed ^ 1, cb);
        let ab = a.mul(&b).unwrap();
        prop_assert!(ab.rank() <= a.rank().min(b.rank()));
        prop_assert!(a.rank() <= ca.min(r).min(k));
        prop_assert_eq!(a.rank(), a.transpose().rank());
    }

    #[test]
    fn isometries_are_closed_under_products(gi in 0usize..3, seed in any::<u64>()) {
        let c = &gf2_groups()[gi];
        let form = c.form().unwrap();
        let mut rng = stream(seed, "isometry", 0);
        let x = c.matrix(&c.group().random_element(&mut rng)).unwrap();
        let y = c.matrix(&c.group().random_element(&mut rng)).unwrap();
        prop_assert!(form.is_isometry(&x).unwrap());
        prop_assert!(form.is_isometry(&y).unwrap());
        prop_assert!(form.is_isometry(&x.mul(&y).unwrap()).unwrap());
        prop_assert!(form.is_isometry(&x.inverse().unwrap()).unwrap());
        prop_assert_eq!(c.perm(&x.mul(&y).unwrap()).unwrap(), c.perm(&x).unwrap().mul(&c.perm(&y).unwrap()));
    }
}
