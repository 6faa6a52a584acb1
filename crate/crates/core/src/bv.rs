//! BV operators on Hochschild cohomology, cup products and the Gerstenhaber
//! bracket.

use crate::algebra::{Bicharacter, Degree, GradedAlgebra};
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusStructure;
use crate::hochschild::{
    cohomology, invariant_representative, is_invariant, BarComplex, Cochain, CohomologyGroup, DualityData, Twist,
};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{is_semisimple, zero_vec, Matrix, Scalar};
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

/// Deliberate defects, used to check that the verification suites notice them.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mutation {
    #[default]
    None,
    /// Drop the bicharacter scalar from the right-twisted transport.
    DropTwistScalar,
    /// Flip the sign of the last cyclic term of Δ.
    FlipLastTerm,
}

/// A Frobenius algebra with a choice of coefficients, ready to compute BV
/// operators.  Cohomology groups are cached per level.
#[derive(Debug)]
pub struct BVContext {
    pub data: DualityData,
    mutation: Mutation,
    cache: Mutex<HashMap<usize, Arc<CohomologyGroup>>>,
}

impl Clone for BVContext {
    fn clone(&self) -> Self {
        BVContext { data: self.data.clone(), mutation: self.mutation, cache: Mutex::new(HashMap::new()) }
    }
}

impl BVContext {
    pub fn new(frob: &FrobeniusStructure, twist: Twist, t: Option<&Bicharacter>) -> Result<Self> {
        let data = DualityData::new(frob, twist, t)?;
        if !is_semisimple(&data.phi)? {
            return Err(Error::NotSemisimple("composite automorphism is not semisimple".into()));
        }
        Ok(BVContext { data, mutation: Mutation::None, cache: Mutex::new(HashMap::new()) })
    }

    pub fn untwisted(frob: &FrobeniusStructure) -> Result<Self> {
        Self::new(frob, Twist::None, None)
    }

    pub fn right(frob: &FrobeniusStructure, t: &Bicharacter, b: &Degree) -> Result<Self> {
        Self::new(frob, Twist::Right(b.clone()), Some(t))
    }

    pub fn left(frob: &FrobeniusStructure, t: &Bicharacter, a: &Degree) -> Result<Self> {
        Self::new(frob, Twist::Left(a.clone()), Some(t))
    }

    #[doc(hidden)]
    pub fn with_mutation(&self, mutation: Mutation) -> Result<Self> {
        let data = match mutation {
            Mutation::DropTwistScalar => self.data.without_twist_scalars()?,
            _ => self.data.clone(),
        };
        Ok(BVContext { data, mutation, cache: Mutex::new(HashMap::new()) })
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.data.frob.algebra
    }

    pub fn complex(&self) -> &BarComplex {
        &self.data.complex
    }

    pub fn twist(&self) -> &Twist {
        &self.data.twist
    }

    pub fn composite_automorphism(&self) -> &Matrix {
        &self.data.phi
    }

    pub fn cohomology(&self, level: usize) -> Result<Arc<CohomologyGroup>> {
        if let Some(h) = self.cache.lock().expect("cache").get(&level) {
            return Ok(h.clone());
        }
        let h = Arc::new(cohomology(self.complex(), level)?);
        self.cache.lock().expect("cache").insert(level, h.clone());
        Ok(h)
    }

    /// Invariant representatives of the cohomology basis at `level`.
    pub fn invariant_classes(&self, level: usize) -> Result<Vec<Cochain>> {
        self.cohomology(level)?.representatives.iter().map(|r| invariant_representative(&self.data, r)).collect()
    }

    pub fn is_zero_class(&self, f: &Cochain) -> Result<bool> {
        if !self.complex().is_cocycle(f)? {
            return Err(Error::NotCocycle);
        }
        Ok(self.cohomology(f.level)?.is_coboundary(f))
    }

    pub fn classes_equal(&self, f: &Cochain, g: &Cochain) -> Result<bool> {
        if f.level != g.level {
            return Err(Error::Invalid("cochains of different levels".into()));
        }
        self.is_zero_class(&f.sub(g))
    }

    /// Δ applied to the class of a cocycle: projects to an invariant
    /// representative first; the level-0 case is the zero map (`None`).
    pub fn delta_class(&self, f: &Cochain) -> Result<Option<Cochain>> {
        if f.level == 0 {
            if !self.complex().is_cocycle(f)? {
                return Err(Error::NotCocycle);
            }
            return Ok(None);
        }
        let g = invariant_representative(&self.data, f)?;
        delta_raw(self, &g).map(Some)
    }
}

/// `F_{Δf}(a_0, τ) = F_f(β(a_0, τ))`, recovered tuple by tuple.
fn delta_raw(ctx: &BVContext, f: &Cochain) -> Result<Cochain> {
    let data = &ctx.data;
    let n = f.level;
    if n == 0 {
        return Err(Error::LevelZero);
    }
    if f.values.len() != data.complex.cochain_len(n) {
        return Err(Error::Coefficients("cochain does not match the context".into()));
    }
    if !data.complex.is_cocycle(f)? {
        return Err(Error::NotCocycle);
    }
    if !is_invariant(data, f)? {
        return Err(Error::NotInvariant);
    }
    let p = n - 1;
    let bar = &data.complex.bar;
    let dim = data.dim();
    let mut values = Vec::with_capacity(data.complex.cochain_len(p));
    for t in 0..bar.count(p) {
        let a = bar.decode(t, p);
        let mut v = zero_vec(dim);
        for (i0, vi) in v.iter_mut().enumerate() {
            let Some(a0) = bar.position(i0) else { continue };
            for j in 1..=n {
                let mut slots: Vec<SparseVec> = Vec::with_capacity(n);
                slots.extend(a[j - 1..].iter().map(|&x| vec![(x, Scalar::one())]));
                slots.push(vec![(a0, Scalar::one())]);
                slots.extend(a[..j - 1].iter().map(|&x| data.phi_slot(x).clone()));
                let mut term = data.pair_with_unit(f, &slots);
                if (j * p) % 2 == 1 {
                    term = -term;
                }
                if ctx.mutation == Mutation::FlipLastTerm && j == n {
                    term = -term;
                }
                *vi += term;
            }
        }
        values.extend(data.recover(&v));
    }
    Ok(data.complex.with_degree(Cochain { level: p, values, degree: None }))
}

fn require_twist(ctx: &BVContext, ok: bool, name: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Coefficients(format!("{name} needs a context with matching twist, got {:?}", ctx.twist())))
    }
}

fn require_homogeneous(ctx: &BVContext, f: &Cochain) -> Result<()> {
    if f.is_zero() || ctx.complex().infer_degree(f).is_some() {
        Ok(())
    } else {
        Err(Error::NotHomogeneous)
    }
}

/// Δ on an invariant cocycle with regular coefficients.
pub fn bv_delta(ctx: &BVContext, f: &Cochain) -> Result<Cochain> {
    require_twist(ctx, *ctx.twist() == Twist::None, "bv_delta")?;
    delta_raw(ctx, f)
}

/// Δ_b on a homogeneous invariant cocycle in `C^n(R, R_b̂)`.
pub fn bv_delta_right(ctx: &BVContext, f: &Cochain) -> Result<Cochain> {
    require_twist(ctx, matches!(ctx.twist(), Twist::Right(_)), "bv_delta_right")?;
    require_homogeneous(ctx, f)?;
    delta_raw(ctx, f)
}

/// `_aΔ` on a homogeneous invariant cocycle in `C^m(S, _âS)`.
pub fn bv_delta_left(ctx: &BVContext, g: &Cochain) -> Result<Cochain> {
    require_twist(ctx, matches!(ctx.twist(), Twist::Left(_)), "bv_delta_left")?;
    require_homogeneous(ctx, g)?;
    delta_raw(ctx, g)
}

/// How the values of two cochains are multiplied in a cup product.
#[derive(Clone, Debug)]
pub enum CupCoefficients<'a> {
    /// `A ⊗ A → A`.
    Regular,
    /// `R_b̂ ⊗ R_b̂' → R_{(b+b')^}`, `m ⊗ n ↦ t(|n|, b) m n`.
    RightTwisted { t: &'a Bicharacter, left: Degree, right: Degree },
}

/// `(f⌣g)[a_1|…|a_{p+q}] = f[a_1|…|a_p] · g[a_{p+1}|…|a_{p+q}]`.
pub fn cup_product(alg: &GradedAlgebra, coeffs: &CupCoefficients, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let dim = alg.dim();
    let bar = crate::hochschild::BarIndex::new(alg);
    let (p, q) = (f.level, g.level);
    if f.values.len() != bar.count(p) * dim || g.values.len() != bar.count(q) * dim {
        return Err(Error::Coefficients("cochains do not match the algebra".into()));
    }
    let scale: Vec<Scalar> = match coeffs {
        CupCoefficients::Regular => vec![Scalar::one(); dim],
        CupCoefficients::RightTwisted { t, left, .. } => {
            let chi = t.right_character(left)?;
            alg.degrees().iter().map(|d| chi.eval(d)).collect()
        }
    };
    let nq = bar.count(q);
    let mut values = zero_vec(bar.count(p + q) * dim);
    for t1 in 0..bar.count(p) {
        let fv = f.value(t1, dim);
        if fv.iter().all(Zero::is_zero) {
            continue;
        }
        for t2 in 0..nq {
            let gv: Vec<Scalar> = g.value(t2, dim).iter().zip(&scale).map(|(x, s)| x * s).collect();
            if gv.iter().all(Zero::is_zero) {
                continue;
            }
            let prod = alg.multiply(fv, &gv)?;
            let base = (t1 * nq + t2) * dim;
            for (k, x) in prod.into_iter().enumerate() {
                values[base + k] = x;
            }
        }
    }
    let degree = match (&f.degree, &g.degree, coeffs) {
        (Some(a), Some(b), CupCoefficients::Regular) => Some(a + b),
        _ => None,
    };
    Ok(Cochain { level: p + q, values, degree })
}

fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

fn add_opt(acc: Option<Cochain>, c: &Scalar, x: Option<Cochain>) -> Option<Cochain> {
    match (acc, x) {
        (a, None) => a,
        (None, Some(x)) => Some(x.scale(c)),
        (Some(a), Some(x)) => Some(a.add(&x.scale(c))),
    }
}

/// Bracket via the BV identity
/// `[f,g] = (−1)^{|f|} (Δ(f⌣g) − Δ(f)⌣g − (−1)^{|f|} f⌣Δ(g))`
/// on cohomology; `None` stands for the zero class in the empty level −1.
pub fn gerstenhaber_bracket(ctx: &BVContext, f: &Cochain, g: &Cochain) -> Result<Option<Cochain>> {
    require_twist(ctx, *ctx.twist() == Twist::None, "gerstenhaber_bracket")?;
    let alg = ctx.algebra();
    let reg = CupCoefficients::Regular;
    let total = f.level + g.level;
    if total == 0 {
        for h in [f, g] {
            if !ctx.complex().is_cocycle(h)? {
                return Err(Error::NotCocycle);
            }
        }
        return Ok(None);
    }
    let fg = cup_product(alg, &reg, f, g)?;
    let mut acc = ctx.delta_class(&fg)?;
    let df = ctx.delta_class(f)?.map(|d| cup_product(alg, &reg, &d, g)).transpose()?;
    acc = add_opt(acc, &-Scalar::one(), df);
    let dg = ctx.delta_class(g)?.map(|d| cup_product(alg, &reg, f, &d)).transpose()?;
    acc = add_opt(acc, &-sign(f.level), dg);
    let out = acc
        .map(|c| ctx.complex().with_degree(c.scale(&sign(f.level))))
        .unwrap_or_else(|| Cochain::zero(total - 1, ctx.complex().cochain_len(total - 1)));
    Ok(Some(out))
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: &'static str,
    pub witness: String,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails on {}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BvAxiomReport {
    pub checked: usize,
    pub failures: Vec<AxiomFailure>,
}

impl BvAxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn record(&mut self, axiom: &'static str, ok: Result<bool>, witness: impl FnOnce() -> String) {
        self.checked += 1;
        match ok {
            Ok(true) => {}
            Ok(false) => self.failures.push(AxiomFailure { axiom, witness: witness() }),
            Err(e) => self.failures.push(AxiomFailure { axiom, witness: format!("{} ({e})", witness()) }),
        }
    }
}

fn zero_or_none(ctx: &BVContext, x: &Option<Cochain>) -> Result<bool> {
    match x {
        None => Ok(true),
        Some(c) => ctx.is_zero_class(c),
    }
}

fn bracket_opt(ctx: &BVContext, f: &Option<Cochain>, g: &Option<Cochain>) -> Result<Option<Cochain>> {
    match (f, g) {
        (Some(f), Some(g)) => gerstenhaber_bracket(ctx, f, g),
        _ => Ok(None),
    }
}

/// Checks Δ² = 0, antisymmetry, Jacobi and the Poisson rule on all pairs
/// and triples of cohomology basis classes whose results live in levels ≤ `max_level`.
pub fn check_bv_axioms(ctx: &BVContext, max_level: usize) -> Result<BvAxiomReport> {
    let mut classes: Vec<(String, Cochain)> = Vec::new();
    for level in 0..=max_level {
        for (i, c) in ctx.invariant_classes(level)?.into_iter().enumerate() {
            classes.push((format!("HH^{level}[{i}]"), c));
        }
    }
    let mut report = BvAxiomReport::default();
    let alg = ctx.algebra();
    let reg = CupCoefficients::Regular;
    for (name, f) in &classes {
        if f.level < 2 {
            continue;
        }
        let dd = ctx.delta_class(f).and_then(|d| match d {
            Some(d) => ctx.delta_class(&d),
            None => Ok(None),
        });
        report.record("Δ²=0", dd.and_then(|x| zero_or_none(ctx, &x)), || name.clone());
    }
    for (nf, f) in &classes {
        for (ng, g) in &classes {
            if f.level + g.level > max_level + 1 {
                continue;
            }
            let ok = (|| {
                let fg = gerstenhaber_bracket(ctx, f, g)?;
                let gf = gerstenhaber_bracket(ctx, g, f)?;
                let e = (f.level + 1) * (g.level + 1);
                let sum = add_opt(fg, &sign(e), gf);
                zero_or_none(ctx, &sum)
            })();
            report.record("antisymmetry", ok, || format!("({nf}, {ng})"));
        }
    }
    for (nf, f) in &classes {
        for (ng, g) in &classes {
            for (nh, h) in &classes {
                if f.level + g.level + h.level > max_level + 1 {
                    continue;
                }
                let ok = (|| {
                    let term = |a: &Cochain, b: &Cochain, c: &Cochain| -> Result<(Scalar, Option<Cochain>)> {
                        let ab = gerstenhaber_bracket(ctx, a, b)?;
                        let s = sign((a.level + 1) * (c.level + 1));
                        Ok((s, bracket_opt(ctx, &ab, &Some(c.clone()))?))
                    };
                    let mut acc = None;
                    for (a, b, c) in [(f, g, h), (g, h, f), (h, f, g)] {
                        let (s, x) = term(a, b, c)?;
                        acc = add_opt(acc, &s, x);
                    }
                    zero_or_none(ctx, &acc)
                })();
                report.record("Jacobi", ok, || format!("({nf}, {ng}, {nh})"));
                let ok = (|| {
                    let gh = cup_product(alg, &reg, g, h)?;
                    let lhs = gerstenhaber_bracket(ctx, f, &gh)?;
                    let fg = gerstenhaber_bracket(ctx, f, g)?.map(|x| cup_product(alg, &reg, &x, h)).transpose()?;
                    let fh = gerstenhaber_bracket(ctx, f, h)?.map(|x| cup_product(alg, &reg, g, &x)).transpose()?;
                    let mut acc = add_opt(lhs, &-Scalar::one(), fg);
                    acc = add_opt(acc, &-sign((f.level + 1) * g.level), fh);
                    zero_or_none(ctx, &acc)
                })();
                report.record("Poisson", ok, || format!("({nf}, {ng}, {nh})"));
            }
        }
    }
    Ok(report)
}
