use super::*;
use crate::algebra::{automorphism_twisted_module, regular_bimodule, Bicharacter};
use crate::frobenius::{twisted_frobenius_product, FrobeniusStructure};
use crate::linalg::{int, unit_vec};
use crate::zoo::{build_qci, build_truncated};

fn qci(m: usize, n: usize, q: i64) -> (FrobeniusStructure, FrobeniusStructure, Bicharacter, FrobeniusStructure) {
    let (fr, fs, t) = build_qci(m, n, &int(q)).unwrap();
    let a = twisted_frobenius_product(&fr, &fs, &t).unwrap();
    (fr, fs, t, a)
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dense_rows(rows: &[SparseVec], ncols: usize) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| crate::linalg::sparse::to_dense(r, ncols)).collect()).unwrap()
}

fn contexts() -> Vec<DualityData> {
    let (fr, fs, t, a) = qci(2, 2, 2);
    vec![
        DualityData::new(&build_truncated(3).unwrap(), Twist::None, None).unwrap(),
        DualityData::new(&a, Twist::None, None).unwrap(),
        DualityData::new(&fr, Twist::Right(Degree(vec![1])), Some(&t)).unwrap(),
        DualityData::new(&fs, Twist::Left(Degree(vec![1])), Some(&t)).unwrap(),
    ]
}

#[test]
fn bar_index_round_trips() {
    let f = build_truncated(4).unwrap();
    let bar = BarIndex::new(&f.algebra);
    assert_eq!(bar.nred(), 3);
    for t in 0..bar.count(3) {
        assert_eq!(bar.encode(&bar.decode(t, 3)), t);
    }
    assert_eq!(bar.decode(5, 2), vec![1, 2]);
}

#[test]
fn cochain_differential_squares_to_zero() {
    for data in contexts() {
        let cx = &data.complex;
        for p in 0..3 {
            let d0 = dense_rows(&cx.differential_rows(p), cx.cochain_len(p));
            let d1 = dense_rows(&cx.differential_rows(p + 1), cx.cochain_len(p + 1));
            assert!(d1.mul(&d0).unwrap().is_zero(), "level {p}");
        }
    }
}

#[test]
fn connes_identity_holds_on_basis_chains() {
    let (_, _, _, a) = qci(2, 2, 2);
    for frob in [build_truncated(2).unwrap(), build_truncated(3).unwrap(), a] {
        let alg = &frob.algebra;
        let phi = frob.nakayama();
        let module = automorphism_twisted_module(alg, phi).unwrap();
        let n = alg.dim();
        let bar = BarIndex::new(alg);
        for p in 0..=3 {
            let len = bar.count(p) * n;
            for i in 0..len {
                let c = Chain::basis(p, len, i);
                let b = connes_beta(alg, phi, &c).unwrap();
                let mut lhs = chain_differential(alg, &module, &b).unwrap().values;
                if p > 0 {
                    let d = chain_differential(alg, &module, &c).unwrap();
                    let bd = connes_beta(alg, phi, &d).unwrap();
                    lhs = lhs.iter().zip(&bd.values).map(|(x, y)| x + y).collect();
                }
                let tc = t_operator(alg, phi, &c).unwrap();
                let rhs: Vec<Scalar> = c.values.iter().zip(&tc.values).map(|(x, y)| x - y).collect();
                assert_eq!(lhs, rhs, "p = {p}, basis chain {i}");
            }
        }
    }
}

#[test]
fn chain_differential_squares_to_zero() {
    let (_, _, _, a) = qci(2, 2, 3);
    let module = automorphism_twisted_module(&a.algebra, a.nakayama()).unwrap();
    let bar = BarIndex::new(&a.algebra);
    for p in 2..=4 {
        let len = bar.count(p) * 4;
        for i in 0..len {
            let c = Chain::basis(p, len, i);
            let d = chain_differential(&a.algebra, &module, &c).unwrap();
            assert!(chain_differential(&a.algebra, &module, &d).unwrap().is_zero());
        }
    }
}

#[test]
fn transport_is_an_anti_chain_map_and_intertwines_t() {
    for data in contexts() {
        let alg = &data.frob.algebra;
        let chains = automorphism_twisted_module(alg, &data.phi).unwrap();
        let cx = &data.complex;
        let n = alg.dim();
        for p in 0..3 {
            for j in 0..cx.cochain_len(p) {
                let f = Cochain { level: p, values: unit_vec(cx.cochain_len(p), j), degree: None };
                let ff = dual_transport(&data, &f).unwrap();
                let df = dual_transport(&data, &cx.differential(&f).unwrap()).unwrap();
                let tf = dual_transport(&data, &t_star(&data, &f).unwrap()).unwrap();
                let len1 = cx.bar.count(p + 1) * n;
                for i in 0..len1 {
                    let c = Chain::basis(p + 1, len1, i);
                    let dc = chain_differential(alg, &chains, &c).unwrap();
                    assert_eq!(df[i], -dot(&ff, &dc.values));
                }
                for i in 0..ff.len() {
                    let c = Chain::basis(p, ff.len(), i);
                    let tc = t_operator(alg, &data.phi, &c).unwrap();
                    assert_eq!(tf[i], dot(&ff, &tc.values));
                }
                let back = dual_transport_inverse(&data, p, &ff).unwrap();
                assert_eq!(back.values, f.values);
            }
        }
    }
}

#[test]
fn cohomology_dimensions_match_dense_ranks() {
    for data in contexts() {
        let cx = &data.complex;
        for p in 0..3 {
            let d = dense_rows(&cx.differential_rows(p), cx.cochain_len(p));
            let kernel = cx.cochain_len(p) - d.rank();
            let image = if p == 0 {
                0
            } else {
                dense_rows(&cx.differential_rows(p - 1), cx.cochain_len(p - 1)).rank()
            };
            let h = cohomology(cx, p).unwrap();
            assert_eq!(h.dimension, kernel - image, "level {p}");
            assert_eq!(h.graded_dims.values().sum::<usize>(), h.dimension);
            for r in &h.representatives {
                assert!(cx.is_cocycle(r).unwrap());
                assert!(!h.is_coboundary(r));
            }
            for b in h.coboundary_basis() {
                assert!(h.is_coboundary(&b));
                assert!(h.coordinates(&b).unwrap().iter().all(Zero::is_zero));
            }
        }
    }
}

#[test]
fn quantum_complete_intersection_low_degrees() {
    let (_, _, _, a) = qci(2, 2, 2);
    let data = DualityData::new(&a, Twist::None, None).unwrap();
    let dims: Vec<usize> = (0..4).map(|p| cohomology(&data.complex, p).unwrap().dimension).collect();
    assert_eq!(dims[0], 2);
    assert_eq!(dims, vec![2, 2, 1, 0]);
}

#[test]
fn truncated_center_and_derivations() {
    let f = build_truncated(3).unwrap();
    let cx = BarComplex::new(&f.algebra, &regular_bimodule(&f.algebra)).unwrap();
    // Λ(3) is commutative: HH^0 is the whole algebra.
    assert_eq!(cohomology(&cx, 0).unwrap().dimension, 3);
    // x ↦ x^2 is a derivation, x ↦ x is not inner, so both survive.
    let euler = cx.build_cochain(1, |a| match a[0] {
        0 => vec![int(0), int(1), int(0)],
        _ => vec![int(0), int(0), int(2)],
    });
    assert!(cx.is_cocycle(&euler).unwrap());
    assert!(!cx.is_coboundary(1, &euler.values).unwrap());
}

#[test]
fn invariant_representatives_are_fixed_and_cohomologous() {
    for data in contexts() {
        let cx = &data.complex;
        for p in 0..3 {
            for r in cohomology(cx, p).unwrap().representatives {
                let g = invariant_representative(&data, &r).unwrap();
                assert!(is_invariant(&data, &g).unwrap());
                assert!(classes_equal_in(cx, &r, &g).unwrap());
            }
        }
    }
}

#[test]
fn non_cocycles_are_rejected() {
    let data = DualityData::new(&build_truncated(2).unwrap(), Twist::None, None).unwrap();
    let f = Cochain { level: 1, values: vec![int(1), int(0)], degree: None };
    assert_eq!(invariant_representative(&data, &f), Err(Error::NotCocycle));
    let c = Chain::basis(0, 2, 1);
    assert_eq!(chain_differential(&data.frob.algebra, data.module(), &c), Err(Error::LevelZero));
}
