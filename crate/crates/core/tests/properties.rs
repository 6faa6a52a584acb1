use proptest::prelude::*;
use twisted_bv::algebra::automorphism_twisted_module;
use twisted_bv::comparison::{box_product, shuffles, ProductComplex};
use twisted_bv::format::AlgebraFile;
use twisted_bv::frobenius::{check_nakayama_product_formula, twisted_frobenius_product};
use twisted_bv::hochschild::{chain_differential, connes_beta, t_operator, BarComplex, BarIndex, Chain, Cochain};
use twisted_bv::linalg::{display_scalar, frac, parse_scalar, Scalar};
use twisted_bv::zoo::build_qci;

fn rational() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=5).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| frac(n, d))
}

fn small_vec(len: usize) -> impl Strategy<Value = Vec<Scalar>> {
    proptest::collection::vec((-3i64..=3).prop_map(|x| frac(x, 1)), len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn scalars_render_and_parse_back(n in -1000i64..1000, d in 1i64..50) {
        let x = frac(n, d);
        prop_assert_eq!(parse_scalar(&display_scalar(&x)), Some(x));
    }

    #[test]
    fn product_definitions_round_trip(m in 2usize..=3, n in 2usize..=3, q in rational()) {
        let (fr, fs, t) = build_qci(m, n, &q).unwrap();
        let prod = twisted_frobenius_product(&fr, &fs, &t).unwrap();
        let text = AlgebraFile::from_frobenius(&prod).to_toml();
        let back = AlgebraFile::parse(&text, "p.toml").unwrap();
        prop_assert_eq!(back.to_toml(), text);
        prop_assert_eq!(back.frobenius().unwrap(), prod);
    }

    #[test]
    fn nakayama_formula_holds(m in 2usize..=4, n in 2usize..=4, q in rational()) {
        let (fr, fs, t) = build_qci(m, n, &q).unwrap();
        prop_assert!(check_nakayama_product_formula(&fr, &fs, &t));
    }

    #[test]
    fn connes_identity_on_random_chains(q in rational(), seed in small_vec(36)) {
        let (fr, fs, t) = build_qci(2, 2, &q).unwrap();
        let a = twisted_frobenius_product(&fr, &fs, &t).unwrap();
        let (alg, nu) = (&a.algebra, a.nakayama());
        let module = automorphism_twisted_module(alg, nu).unwrap();
        let c = Chain { level: 2, values: seed };
        let b = connes_beta(alg, nu, &c).unwrap();
        let bd = connes_beta(alg, nu, &chain_differential(alg, &module, &c).unwrap()).unwrap();
        let db = chain_differential(alg, &module, &b).unwrap();
        let tc = t_operator(alg, nu, &c).unwrap();
        for i in 0..c.values.len() {
            prop_assert_eq!(&db.values[i] + &bd.values[i], &c.values[i] - &tc.values[i]);
        }
    }

    #[test]
    fn cochain_differential_squares_to_zero(q in rational(), seed in small_vec(12)) {
        let (fr, fs, t) = build_qci(2, 2, &q).unwrap();
        let a = twisted_frobenius_product(&fr, &fs, &t).unwrap();
        let cx = BarComplex::new(&a.algebra, &twisted_bv::algebra::regular_bimodule(&a.algebra)).unwrap();
        let f = Cochain { level: 1, values: seed, degree: None };
        let dd = cx.differential(&cx.differential(&f).unwrap()).unwrap();
        prop_assert!(dd.is_zero());
    }

    #[test]
    fn product_complex_is_a_complex(q in rational(), seed in small_vec(24)) {
        let (fr, fs, t) = build_qci(2, 2, &q).unwrap();
        let pc = ProductComplex::new(&fr, &fs, &t).unwrap();
        let h = Cochain { level: 1, values: seed[..pc.zero(1).values.len()].to_vec(), degree: None };
        prop_assert!(pc.differential(&pc.differential(&h).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn box_products_of_cocycles_are_cocycles(q in rational()) {
        let (fr, fs, t) = build_qci(2, 3, &q).unwrap();
        let pc = ProductComplex::new(&fr, &fs, &t).unwrap();
        let zero = twisted_bv::algebra::Degree(vec![0]);
        let cr = twisted_bv::bv::BVContext::right(&fr, &t, &zero).unwrap();
        let cs = twisted_bv::bv::BVContext::left(&fs, &t, &zero).unwrap();
        for f in cr.cohomology(1).unwrap().representatives_of_degree(&zero) {
            for g in cs.cohomology(1).unwrap().representatives_of_degree(&zero) {
                prop_assert!(pc.is_cocycle(&box_product(&pc, f, g).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn shuffle_signs_are_permutation_parities(p in 0usize..4, q in 0usize..4) {
        for sh in shuffles(p, q) {
            let mut inv = 0;
            for i in 0..sh.slots.len() {
                for j in i + 1..sh.slots.len() {
                    if sh.slots[i] > sh.slots[j] {
                        inv += 1;
                    }
                }
            }
            prop_assert_eq!(sh.sign, if inv % 2 == 0 { 1 } else { -1 });
        }
    }
}

#[test]
fn bar_counts_match_powers() {
    let (fr, _, _) = build_qci(4, 2, &frac(2, 1)).unwrap();
    let bar = BarIndex::new(&fr.algebra);
    assert_eq!(bar.count(3), 27);
}
