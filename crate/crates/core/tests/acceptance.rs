//! Acceptance suite: one line per criterion, exit status 1 if any fails.

use std::time::Instant;
use twisted_bv::algebra::automorphism_twisted_module;
use twisted_bv::bv::{check_bv_axioms, BVContext, Mutation};
use twisted_bv::comparison::{decomposition_dims, verify_main_theorem, verify_main_theorem_with, Components, ProductComplex};
use twisted_bv::frobenius::{
    check_nakayama_product_formula, nakayama_semisimple, twisted_frobenius_product, FrobeniusStructure,
};
use twisted_bv::hochschild::{chain_differential, connes_beta, t_operator, BarIndex, Chain};
use twisted_bv::linalg::{frac, int, Scalar};
use twisted_bv::zoo::{build_qci, build_truncated, qci_report};
use twisted_bv::Result;

fn zoo() -> Vec<(usize, usize, Scalar)> {
    let mut out = Vec::new();
    for m in 2..=4 {
        for n in 2..=4 {
            for q in [int(1), int(2), frac(1, 3)] {
                out.push((m, n, q));
            }
        }
    }
    out
}

fn product(m: usize, n: usize, q: &Scalar) -> Result<ProductComplex> {
    let (fr, fs, t) = build_qci(m, n, q)?;
    ProductComplex::new(&fr, &fs, &t)
}

fn frobenius_products() -> Result<(bool, String)> {
    let mut ok = 0;
    for (m, n, q) in zoo() {
        let (fr, fs, t) = build_qci(m, n, &q)?;
        if twisted_frobenius_product(&fr, &fs, &t).is_ok() {
            ok += 1;
        }
    }
    Ok((ok == zoo().len(), format!("{ok}/{} products validate", zoo().len())))
}

fn nakayama_formula() -> Result<(bool, String)> {
    let mut ok = 0;
    for (m, n, q) in zoo() {
        let (fr, fs, t) = build_qci(m, n, &q)?;
        if check_nakayama_product_formula(&fr, &fs, &t) {
            ok += 1;
        }
    }
    Ok((ok == zoo().len(), format!("{ok}/{} Nakayama matrices match the formula", zoo().len())))
}

fn semisimplicity() -> Result<(bool, String)> {
    let mut ok = 0;
    for (m, n, q) in zoo() {
        let (fr, fs, t) = build_qci(m, n, &q)?;
        if nakayama_semisimple(&twisted_frobenius_product(&fr, &fs, &t)?) {
            ok += 1;
        }
    }
    Ok((ok == zoo().len(), format!("{ok}/{} products have semisimple Nakayama", zoo().len())))
}

fn homotopy_identity() -> Result<(bool, String)> {
    let (fr, fs, t) = build_qci(2, 2, &int(2))?;
    let mut checked = 0;
    let mut failed = 0;
    for frob in [build_truncated(2)?, twisted_frobenius_product(&fr, &fs, &t)?] {
        let alg = &frob.algebra;
        let nu = frob.nakayama();
        let module = automorphism_twisted_module(alg, nu)?;
        let bar = BarIndex::new(alg);
        for p in 0..=4 {
            let len = bar.count(p) * alg.dim();
            for i in 0..len {
                let c = Chain::basis(p, len, i);
                let mut lhs = chain_differential(alg, &module, &connes_beta(alg, nu, &c)?)?.values;
                if p > 0 {
                    let bd = connes_beta(alg, nu, &chain_differential(alg, &module, &c)?)?;
                    lhs = lhs.iter().zip(&bd.values).map(|(x, y)| x + y).collect();
                }
                let tc = t_operator(alg, nu, &c)?;
                let rhs: Vec<Scalar> = c.values.iter().zip(&tc.values).map(|(x, y)| x - y).collect();
                checked += 1;
                if lhs != rhs {
                    failed += 1;
                }
            }
        }
    }
    Ok((failed == 0, format!("{checked} basis chains, {failed} failures")))
}

fn comparison_identity() -> Result<(bool, String)> {
    let mut detail = Vec::new();
    let mut ok = true;
    for (name, q) in [("Λ_2(2,2)", int(2)), ("Λ(2)⊗Λ(2)", int(1))] {
        let pc = product(2, 2, &q)?;
        let id = pc.identity_check(4);
        let chain = pc.chain_map_check(4)?;
        ok &= id && chain;
        detail.push(format!("{name}: AW∘EZ=1 {id}, chain maps {chain}"));
    }
    Ok((ok, detail.join("; ")))
}

fn decomposition() -> Result<(bool, String)> {
    let a = decomposition_dims(&product(2, 2, &int(2))?, 3)?;
    let b = decomposition_dims(&product(2, 3, &int(2))?, 3)?;
    let ok = a.totals == vec![2, 2, 1, 0] && a.agrees() && b.agrees();
    Ok((ok, format!("Λ_2(2,2) dims {:?} agrees {}; Λ_2(2,3) dims {:?} agrees {}", a.totals, a.agrees(), b.totals, b.agrees())))
}

fn bv_values() -> Result<(bool, String)> {
    let a = qci_report(2, 2, &int(2), 3)?;
    let b = qci_report(2, 3, &int(2), 2)?;
    // Frozen regression values: V is the Euler derivation of the first factor Λ(m).
    let ok = a.delta_u == int(0)
        && a.delta_v == int(1)
        && a.delta_w == int(1)
        && a.bracket_vu == int(1)
        && b.delta_u == int(0)
        && b.delta_v == int(1)
        && b.delta_w == int(2)
        && b.bracket_vu == int(1);
    Ok((
        ok,
        format!(
            "(2,2): Δ(U)={} Δ(V)={} Δ(W)={} [V,U]={}U; (2,3): Δ(U)={} Δ(V)={} Δ(W)={} [V,U]={}U",
            a.delta_u, a.delta_v, a.delta_w, a.bracket_vu, b.delta_u, b.delta_v, b.delta_w, b.bracket_vu
        ),
    ))
}

fn main_theorem() -> Result<(bool, String)> {
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, m, n, q) in [
        ("Λ_2(2,2)", 2, 2, int(2)),
        ("Λ_2(2,3)", 2, 3, int(2)),
        ("Λ(2)⊗Λ(2)", 2, 2, int(1)),
        ("Λ_-1(2,2)", 2, 2, int(-1)),
    ] {
        let r = verify_main_theorem(&product(m, n, &q)?, 3)?;
        let passed = r.pairs.iter().filter(|p| p.passed).count();
        ok &= r.passed();
        detail.push(format!("{name} {passed}/{}", r.pairs.len()));
    }
    Ok((ok, detail.join(", ")))
}

fn bv_axioms() -> Result<(bool, String)> {
    let (fr, fs, t) = build_qci(2, 2, &int(2))?;
    let algebras: Vec<(&str, FrobeniusStructure)> = vec![
        ("Λ(2)", build_truncated(2)?),
        ("Λ(3)", build_truncated(3)?),
        ("Λ_2(2,2)", twisted_frobenius_product(&fr, &fs, &t)?),
    ];
    let mut ok = true;
    let mut detail = Vec::new();
    for (name, frob) in algebras {
        let r = check_bv_axioms(&BVContext::untwisted(&frob)?, 3)?;
        ok &= r.passed() && r.checked > 0;
        detail.push(format!("{name} {} checks {} failures", r.checked, r.failures.len()));
    }
    Ok((ok, detail.join(", ")))
}

fn mutations() -> Result<(bool, String)> {
    let mut scalar_caught = false;
    for (m, n, q) in [(2, 2, int(2)), (2, 3, int(2)), (2, 2, int(1)), (2, 2, int(-1))] {
        let pc = product(m, n, &q)?;
        let comps = Components::with_mutation(&pc, Mutation::DropTwistScalar);
        scalar_caught |= !verify_main_theorem_with(&pc, &comps, 3)?.passed();
    }
    let mut ez_caught = false;
    for q in [int(2), int(1)] {
        let bad = product(2, 2, &q)?.with_untwisted_shuffles()?;
        ez_caught |= !(bad.identity_check(4) && bad.chain_map_check(4)?);
    }
    ez_caught |= !verify_main_theorem(&product(2, 2, &int(-1))?.with_untwisted_shuffles()?, 3)?.passed();
    Ok((
        scalar_caught && ez_caught,
        format!("dropped twist factor detected {scalar_caught}, untwisted shuffles detected {ez_caught}"),
    ))
}

fn main() {
    type Check = fn() -> Result<(bool, String)>;
    let criteria: [(&str, Check); 10] = [
        ("Frobenius product", frobenius_products),
        ("Nakayama product formula", nakayama_formula),
        ("semisimplicity transfer", semisimplicity),
        ("homotopy identity δβ+βδ=1−T", homotopy_identity),
        ("AW/EZ identity", comparison_identity),
        ("decomposition dimensions", decomposition),
        ("BV values on Λ_q(m,n)", bv_values),
        ("BV formula for twisted products", main_theorem),
        ("BV axioms", bv_axioms),
        ("mutation sensitivity", mutations),
    ];
    let mut all = true;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let (ok, detail) = check().unwrap_or_else(|e| (false, format!("error: {e}")));
        all &= ok;
        println!(
            "criterion {:>2} {} {name}: {detail} [{:.1}s]",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64()
        );
    }
    if !all {
        std::process::exit(1);
    }
}
