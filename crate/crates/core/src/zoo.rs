//! Standard examples: truncated polynomial algebras and quantum complete
//! intersections.

use crate::algebra::{Bicharacter, Degree, GradedAlgebra};
use crate::bv::{bv_delta, gerstenhaber_bracket, BVContext};
use crate::comparison::{
    box_product_checked, decomposition_dims, verify_main_theorem, DecompositionTable, ProductComplex, TheoremReport,
};
use crate::error::{Error, Result};
use crate::frobenius::{validate_frobenius, FrobeniusStructure};
use crate::hochschild::{invariant_representative, Cochain};
use crate::linalg::{int, unit_vec, zero_vec, Matrix, Scalar};
use num_traits::{One, Signed, Zero};

/// k[v]/(v^n) with |v| = 1; basis names `1, v, v^2, …`.
pub fn truncated_algebra_named(n: usize, var: &str) -> Result<GradedAlgebra> {
    if n < 2 {
        return Err(Error::Invalid(format!("truncation degree must be at least 2, got {n}")));
    }
    let names = (0..n)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        })
        .collect();
    let degrees = (0..n).map(|i| Degree(vec![i as i64])).collect();
    let mut products = Vec::new();
    for i in 0..n {
        for j in 0..n - i {
            products.push((i, j, i + j, int(1)));
        }
    }
    GradedAlgebra::new(names, degrees, &products, 0)
}

/// `⟨x^i, x^j⟩ = 1` iff `i + j = n − 1`.
pub fn truncated_gram(n: usize) -> Matrix {
    let mut g = Matrix::zeros(n, n);
    for i in 0..n {
        g.set(i, n - 1 - i, int(1));
    }
    g
}

pub fn build_truncated_named(n: usize, var: &str) -> Result<FrobeniusStructure> {
    let alg = truncated_algebra_named(n, var)?;
    validate_frobenius(&alg, &truncated_gram(n))
}

/// Λ(n) = k[x]/(x^n) with its symmetric Frobenius form.
pub fn build_truncated(n: usize) -> Result<FrobeniusStructure> {
    build_truncated_named(n, "x")
}

/// The factors Λ(m) (in x), Λ(n) (in y) and the bicharacter [q] of Λ_q(m, n).
pub fn build_qci(m: usize, n: usize, q: &Scalar) -> Result<(FrobeniusStructure, FrobeniusStructure, Bicharacter)> {
    if q.is_zero() {
        return Err(Error::InvalidBicharacter("q must be nonzero".into()));
    }
    let fr = build_truncated_named(m, "x")?;
    let fs = build_truncated_named(n, "y")?;
    let t = Bicharacter::new(vec![vec![q.clone()]])?;
    Ok((fr, fs, t))
}

/// The standard classes and BV data of `HH^*(Λ_q(m, n))`.
#[derive(Clone, Debug)]
pub struct QciReport {
    pub m: usize,
    pub n: usize,
    pub q: Scalar,
    pub max_level: usize,
    /// `dim HH^level` for `level = 0..=max_level`.
    pub totals: Vec<usize>,
    /// `(level, internal degree, dimension)`, nonzero entries only.
    pub graded: Vec<(usize, Degree, usize)>,
    /// `U = x^{m−1} ⊗ y^{n−1}` in `HH^0`.
    pub u: Cochain,
    /// Euler derivation in the first factor, `x^i y^j ↦ i x^i y^j`.
    pub v: Cochain,
    /// Euler derivation in the second factor, `x^i y^j ↦ j x^i y^j`.
    pub w: Cochain,
    /// Whether `V` and `W` are the classes of `E_x ⊠ 1` and `1 ⊠ E_y`.
    pub v_is_box_class: bool,
    pub w_is_box_class: bool,
    pub delta_u: Scalar,
    pub delta_v: Scalar,
    pub delta_w: Scalar,
    /// `c` with `[V, U] = c U`.
    pub bracket_vu: Scalar,
    pub decomposition: DecompositionTable,
    pub theorem: TheoremReport,
}

/// Cohomology, BV values and decomposition checks for `Λ_q(m, n)`; refuses
/// `q = ±1`, the only rational roots of unity.
pub fn qci_report(m: usize, n: usize, q: &Scalar, max_level: usize) -> Result<QciReport> {
    if q.abs().is_one() {
        return Err(Error::Invalid(format!(
            "q = {q} is a root of unity; the standard class description needs |q| != 1"
        )));
    }
    if max_level < 1 {
        return Err(Error::Invalid("the report needs max level at least 1".into()));
    }
    let (fr, fs, t) = build_qci(m, n, q)?;
    let pc = ProductComplex::new(&fr, &fs, &t)?;
    let ctx = BVContext::untwisted(&pc.prod)?;
    let alg = ctx.algebra().clone();
    let dim = alg.dim();
    let mut totals = Vec::new();
    let mut graded = Vec::new();
    for level in 0..=max_level {
        let h = ctx.cohomology(level)?;
        totals.push(h.dimension);
        graded.extend(h.graded_dims.iter().map(|(d, k)| (level, d.clone(), *k)));
    }

    let u_index = (m - 1) * n + (n - 1);
    let u = ctx.complex().with_degree(Cochain { level: 0, values: unit_vec(dim, u_index), degree: None });
    if !ctx.complex().is_cocycle(&u)? || ctx.is_zero_class(&u)? {
        return Err(Error::Invalid("x^{m-1} y^{n-1} is not a nonzero central class".into()));
    }
    let euler = |which: usize| {
        let bar = &ctx.complex().bar;
        ctx.complex().build_cochain(1, |a| {
            let k = bar.basis(a[0]);
            let exponent = if which == 0 { k / n } else { k % n };
            let mut v = zero_vec(dim);
            v[k] = int(exponent as i64);
            v
        })
    };
    let v = invariant_representative(&ctx.data, &euler(0))?;
    let w = invariant_representative(&ctx.data, &euler(1))?;

    let zero = Degree(vec![0]);
    let (cr, cs) = (BVContext::right(&fr, &t, &zero)?, BVContext::left(&fs, &t, &zero)?);
    let euler_factor = |c: &BVContext, k: usize| {
        c.complex().build_cochain(1, |a| {
            let i = c.complex().bar.basis(a[0]);
            let mut v = zero_vec(k);
            v[i] = int(i as i64);
            v
        })
    };
    let unit_r = Cochain { level: 0, values: unit_vec(m, 0), degree: Some(zero.clone()) };
    let unit_s = Cochain { level: 0, values: unit_vec(n, 0), degree: Some(zero.clone()) };
    let v_box = box_product_checked(&pc, &cr, &euler_factor(&cr, m), &cs, &unit_s)?;
    let w_box = box_product_checked(&pc, &cr, &unit_r, &cs, &euler_factor(&cs, n))?;
    let v_is_box_class = ctx.classes_equal(&pc.aw_pullback(&v_box)?, &v)?;
    let w_is_box_class = ctx.classes_equal(&pc.aw_pullback(&w_box)?, &w)?;

    let unit = alg.unit();
    let scalar_of = |x: &Cochain, base: &[Scalar], what: &str| {
        multiple_of(&x.values, base).ok_or_else(|| Error::Invalid(format!("{what} is not a multiple of the expected class")))
    };
    let delta_v = scalar_of(&bv_delta(&ctx, &v)?, &unit, "Δ(V)")?;
    let delta_w = scalar_of(&bv_delta(&ctx, &w)?, &unit, "Δ(W)")?;
    let delta_u = match ctx.delta_class(&u)? {
        None => Scalar::zero(),
        Some(d) => scalar_of(&d, &unit, "Δ(U)")?,
    };
    let bracket = gerstenhaber_bracket(&ctx, &v, &u)?.expect("level 0 bracket");
    let bracket_vu = scalar_of(&bracket, &u.values, "[V, U]")?;

    Ok(QciReport {
        m,
        n,
        q: q.clone(),
        max_level,
        totals,
        graded,
        u,
        v,
        w,
        v_is_box_class,
        w_is_box_class,
        delta_u,
        delta_v,
        delta_w,
        bracket_vu,
        decomposition: decomposition_dims(&pc, max_level)?,
        theorem: verify_main_theorem(&pc, max_level)?,
    })
}

/// `c` with `x = c · base`, if any.
fn multiple_of(x: &[Scalar], base: &[Scalar]) -> Option<Scalar> {
    let pivot = base.iter().position(|b| !b.is_zero())?;
    let c = &x[pivot] / &base[pivot];
    x.iter().zip(base).all(|(a, b)| *a == &c * b).then_some(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_algebra, twisted_tensor};

    #[test]
    fn generated_examples_are_valid() {
        for n in 2..=5 {
            let f = build_truncated(n).unwrap();
            assert!(check_algebra(&f.algebra).is_empty());
            assert_eq!(f.sigma(), &Degree(vec![-(n as i64 - 1)]));
            assert_eq!(f.nakayama(), &Matrix::identity(n));
        }
        assert!(build_truncated(1).is_err());
        assert!(build_qci(2, 2, &int(0)).is_err());
        let (fr, fs, t) = build_qci(2, 2, &int(2)).unwrap();
        assert_eq!(twisted_tensor(&fr.algebra, &fs.algebra, &t).unwrap().dim(), 4);
    }

    #[test]
    fn qci_report_refuses_roots_of_unity() {
        assert!(qci_report(2, 2, &int(1), 3).is_err());
        assert!(qci_report(2, 2, &int(-1), 3).is_err());
    }

    #[test]
    fn qci_report_small_case() {
        let r = qci_report(2, 2, &int(2), 3).unwrap();
        assert_eq!(r.totals, vec![2, 2, 1, 0]);
        assert!(r.v_is_box_class && r.w_is_box_class);
        assert_eq!((r.delta_u.clone(), r.delta_v.clone(), r.delta_w.clone()), (int(0), int(1), int(1)));
        assert_eq!(r.bracket_vu, int(1));
        assert!(r.decomposition.agrees());
        assert!(r.theorem.passed());
    }

    #[test]
    fn qci_report_labels_by_factor() {
        let r = qci_report(2, 3, &int(2), 2).unwrap();
        assert_eq!((r.delta_v.clone(), r.delta_w.clone()), (int(1), int(2)));
        assert_eq!(r.bracket_vu, int(1));
        let r = qci_report(3, 2, &int(2), 2).unwrap();
        assert_eq!((r.delta_v.clone(), r.delta_w.clone()), (int(2), int(1)));
        assert_eq!(r.bracket_vu, int(2));
    }
}
