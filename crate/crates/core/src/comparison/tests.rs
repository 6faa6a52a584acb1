use super::*;
use crate::linalg::{frac, int};
use crate::zoo::build_qci;

fn qci(m: usize, n: usize, q: Scalar) -> ProductComplex {
    let (fr, fs, t) = build_qci(m, n, &q).unwrap();
    ProductComplex::new(&fr, &fs, &t).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn shuffle_counts_and_signs() {
    for p in 0..=3 {
        for q in 0..=3 {
            let all = shuffles(p, q);
            assert_eq!(all.len(), binomial(p + q, p));
            for sh in &all {
                let mut seen = sh.slots.clone();
                seen.sort();
                assert_eq!(seen, (0..p + q).collect::<Vec<_>>());
                let parity = if sh.inversions(p).len() % 2 == 0 { 1 } else { -1 };
                assert_eq!(sh.sign, parity);
            }
        }
    }
    // (1,1): identity and the transposition.
    let s = shuffles(1, 1);
    assert_eq!((s[0].sign, s[1].sign), (1, -1));
}

#[test]
fn product_differential_squares_to_zero() {
    for q in [int(2), int(-1), frac(1, 3)] {
        let pc = qci(2, 2, q);
        for level in 0..3 {
            for i in 0..pc.dim(level) {
                let h = Cochain { level, values: unit_vec(pc.dim(level), i), degree: None };
                assert!(pc.differential(&pc.differential(&h).unwrap()).unwrap().is_zero());
            }
        }
    }
}

#[test]
fn comparison_maps_are_inverse_chain_maps() {
    for q in [int(2), int(-1), frac(1, 3)] {
        let pc = qci(2, 2, q);
        assert_eq!(pc.identity_failure(3), None);
        assert!(pc.chain_map_check(3).unwrap());
    }
    let pc = qci(2, 3, int(2));
    assert!(pc.identity_check(3));
    assert!(pc.chain_map_check(2).unwrap());
}

#[test]
fn untwisted_shuffles_are_not_a_chain_map() {
    let pc = qci(2, 2, int(2)).with_untwisted_shuffles().unwrap();
    assert!(!pc.chain_map_check(3).unwrap());
}

#[test]
fn product_cohomology_matches_bar_cohomology() {
    let pc = qci(2, 2, int(2));
    let ctx = BVContext::untwisted(&pc.prod).unwrap();
    for level in 0..=3 {
        assert_eq!(pc.cohomology(level).unwrap().dimension, ctx.cohomology(level).unwrap().dimension);
    }
}

#[test]
fn box_product_signs_and_units() {
    let pc = qci(2, 2, int(2));
    let f = Cochain { level: 1, values: unit_vec(pc.bar_r.count(1) * 2, 1), degree: None };
    let g = Cochain { level: 1, values: unit_vec(pc.bar_s.count(1) * 2, 1), degree: None };
    let fg = box_product(&pc, &f, &g).unwrap();
    assert_eq!(pc.value(&fg, 1, 0, 0)[3], int(-1));
    let one_r = Cochain { level: 0, values: unit_vec(2, 0), degree: None };
    let one_s = Cochain { level: 0, values: unit_vec(2, 0), degree: None };
    let unit = box_product(&pc, &one_r, &one_s).unwrap();
    assert!(pc.is_cocycle(&unit).unwrap());
    assert_eq!(unit.values, unit_vec(4, 0));
}

#[test]
fn decomposition_agrees_on_small_products() {
    for (m, n, q) in [(2, 2, int(2)), (2, 2, int(-1)), (2, 3, int(2)), (2, 2, int(1))] {
        let table = decomposition_dims(&qci(m, n, q), 3).unwrap();
        assert!(table.agrees(), "{:?}", table.rows);
    }
    let table = decomposition_dims(&qci(2, 2, int(2)), 3).unwrap();
    assert_eq!(table.totals, vec![2, 2, 1, 0]);
}

#[test]
fn decomposition_formula_holds() {
    for q in [int(2), int(-1), int(-2), frac(1, 3)] {
        let pc = qci(2, 2, q.clone());
        let report = verify_main_theorem(&pc, 3).unwrap();
        assert!(report.passed(), "q = {q}: {:?}", report.failures().collect::<Vec<_>>());
        assert!(!report.pairs.is_empty());
    }
    let report = verify_main_theorem(&qci(2, 3, int(-1)), 3).unwrap();
    assert!(report.passed());
}

#[test]
fn dropped_twist_scalar_breaks_the_formula() {
    let pc = qci(2, 2, int(-1));
    let comps = Components::with_mutation(&pc, Mutation::DropTwistScalar);
    let report = verify_main_theorem_with(&pc, &comps, 3).unwrap();
    assert!(!report.passed());
}

#[test]
fn untwisted_shuffles_break_the_formula_at_minus_one() {
    let pc = qci(2, 2, int(-1)).with_untwisted_shuffles().unwrap();
    assert!(pc.identity_check(3));
    assert!(!verify_main_theorem(&pc, 3).unwrap().passed());
}
