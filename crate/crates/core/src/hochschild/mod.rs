//! Reduced bar (co)chain complexes with bimodule coefficients.
//!
//! Bar tuples `[a_1|…|a_p]` run over the non-unit basis elements; a tuple is
//! addressed by the base-`dim R̄` number whose most significant digit is the
//! first slot.  Cochain and chain arrays are tuple-major: entry
//! `tuple * dim M + k` is the coefficient of the module basis vector `e_k`.

mod cohomology;
mod duality;

pub use cohomology::{cohomology, cohomology_restricted, CochainComplex, CohomologyGroup};
pub use duality::{
    dual_transport, dual_transport_inverse, invariant_representative, is_invariant, t_star, zero_cochain, DualityData,
    Twist,
};

use crate::algebra::{Degree, GradedAlgebra, TwistedBimodule};
use crate::error::{Error, Result};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{is_zero_vec, zero_vec, Matrix, Scalar};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Addressing of reduced bar tuples over a fixed algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BarIndex {
    reduced: Vec<usize>,
    pos: Vec<Option<usize>>,
    degrees: Vec<Degree>,
    rank: usize,
}

impl BarIndex {
    pub fn new(alg: &GradedAlgebra) -> Self {
        let reduced = alg.reduced_basis();
        let mut pos = vec![None; alg.dim()];
        for (p, &b) in reduced.iter().enumerate() {
            pos[b] = Some(p);
        }
        let degrees = reduced.iter().map(|&b| alg.degree(b).clone()).collect();
        BarIndex { reduced, pos, degrees, rank: alg.rank() }
    }

    /// Number of non-unit basis elements.
    pub fn nred(&self) -> usize {
        self.reduced.len()
    }

    pub fn count(&self, p: usize) -> usize {
        self.nred().pow(p as u32)
    }

    pub fn checked_count(&self, p: usize) -> Option<u128> {
        (self.nred() as u128).checked_pow(p as u32)
    }

    pub fn decode(&self, mut idx: usize, p: usize) -> Vec<usize> {
        let n = self.nred();
        let mut out = vec![0; p];
        for slot in (0..p).rev() {
            out[slot] = idx % n;
            idx /= n;
        }
        out
    }

    pub fn encode(&self, pos: &[usize]) -> usize {
        pos.iter().fold(0, |acc, &x| acc * self.nred() + x)
    }

    /// Algebra basis index of a reduced position.
    pub fn basis(&self, pos: usize) -> usize {
        self.reduced[pos]
    }

    /// Reduced position of an algebra basis index (`None` for the unit).
    pub fn position(&self, basis: usize) -> Option<usize> {
        self.pos[basis]
    }

    pub fn tuple_degree(&self, pos: &[usize]) -> Degree {
        let mut d = Degree::zero(self.rank);
        for &p in pos {
            d = &d + &self.degrees[p];
        }
        d
    }

    /// Image of an algebra element in R̄ (the unit component is dropped).
    pub fn reduce_elem(&self, x: &[Scalar]) -> SparseVec {
        x.iter()
            .enumerate()
            .filter(|(b, c)| !c.is_zero() && self.pos[*b].is_some())
            .map(|(b, c)| (self.pos[b].expect("non-unit"), c.clone()))
            .collect()
    }

    pub fn reduce_sparse(&self, x: &SparseVec) -> SparseVec {
        x.iter().filter_map(|(b, c)| self.pos[*b].map(|p| (p, c.clone()))).collect()
    }

    /// Expands a tensor of slot vectors into tuple coordinates.
    pub fn expand(&self, slots: &[SparseVec], visit: &mut dyn FnMut(usize, &Scalar)) {
        fn go(
            idx: &BarIndex,
            slots: &[SparseVec],
            acc_idx: usize,
            acc: &Scalar,
            visit: &mut dyn FnMut(usize, &Scalar),
        ) {
            match slots.split_first() {
                None => visit(acc_idx, acc),
                Some((first, rest)) => {
                    for (p, c) in first {
                        go(idx, rest, acc_idx * idx.nred() + p, &(acc * c), visit);
                    }
                }
            }
        }
        go(self, slots, 0, &Scalar::one(), visit);
    }
}

/// A level-`p` Hochschild cochain: a dense map from bar tuples to the
/// coefficient module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub level: usize,
    pub values: Vec<Scalar>,
    pub degree: Option<Degree>,
}

impl Cochain {
    pub fn zero(level: usize, len: usize) -> Self {
        Cochain { level, values: zero_vec(len), degree: None }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }

    pub fn value(&self, tuple: usize, dim_m: usize) -> &[Scalar] {
        &self.values[tuple * dim_m..(tuple + 1) * dim_m]
    }

    pub fn add(&self, other: &Cochain) -> Cochain {
        assert_eq!(self.level, other.level, "cochain levels differ");
        Cochain {
            level: self.level,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
            degree: if self.degree == other.degree { self.degree.clone() } else { None },
        }
    }

    pub fn sub(&self, other: &Cochain) -> Cochain {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Cochain {
        Cochain { level: self.level, values: self.values.iter().map(|x| c * x).collect(), degree: self.degree.clone() }
    }

    /// Nonzero entries as `(tuple, module basis index, value)`.
    pub fn support(&self, dim_m: usize) -> Vec<(usize, usize, Scalar)> {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i / dim_m, i % dim_m, x.clone()))
            .collect()
    }
}

/// A level-`p` chain `Σ c (e_k, a_1, …, a_p)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub level: usize,
    pub values: Vec<Scalar>,
}

impl Chain {
    pub fn zero(level: usize, len: usize) -> Self {
        Chain { level, values: zero_vec(len) }
    }

    pub fn basis(level: usize, len: usize, i: usize) -> Self {
        Chain { level, values: crate::linalg::unit_vec(len, i) }
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.values)
    }
}

type DiffCache = Mutex<HashMap<usize, Arc<Vec<SparseVec>>>>;

/// The reduced bar cochain complex `C^*(A, M)`.
#[derive(Debug)]
pub struct BarComplex {
    pub alg: GradedAlgebra,
    pub module: TwistedBimodule,
    pub bar: BarIndex,
    cache: DiffCache,
}

impl Clone for BarComplex {
    fn clone(&self) -> Self {
        BarComplex::new(&self.alg, &self.module).expect("already validated")
    }
}

impl BarComplex {
    pub fn new(alg: &GradedAlgebra, module: &TwistedBimodule) -> Result<Self> {
        if !module.same_shape(alg) {
            return Err(Error::Coefficients("module is not over this algebra".into()));
        }
        Ok(BarComplex { alg: alg.clone(), module: module.clone(), bar: BarIndex::new(alg), cache: Mutex::new(HashMap::new()) })
    }

    pub fn dim_m(&self) -> usize {
        self.module.dim()
    }

    pub fn cochain_len(&self, p: usize) -> usize {
        self.bar.count(p) * self.dim_m()
    }

    /// Degree of the basis cochain sending tuple `t` to `e_k`.
    pub fn entry_degree(&self, p: usize, idx: usize) -> Degree {
        let m = self.dim_m();
        let tuple = self.bar.decode(idx / m, p);
        &self.module.degrees()[idx % m] - &self.bar.tuple_degree(&tuple)
    }

    /// Splits a cochain into homogeneous components.
    pub fn homogeneous_components(&self, f: &Cochain) -> BTreeMap<Degree, Cochain> {
        let mut out: BTreeMap<Degree, Cochain> = BTreeMap::new();
        let len = f.values.len();
        for (i, x) in f.values.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            let d = self.entry_degree(f.level, i);
            let c = out.entry(d.clone()).or_insert_with(|| Cochain { level: f.level, values: zero_vec(len), degree: Some(d) });
            c.values[i] = x.clone();
        }
        out
    }

    /// The common degree of all nonzero entries, if any.
    pub fn infer_degree(&self, f: &Cochain) -> Option<Degree> {
        let comps = self.homogeneous_components(f);
        if comps.len() == 1 {
            comps.into_keys().next()
        } else {
            None
        }
    }

    pub fn with_degree(&self, mut f: Cochain) -> Cochain {
        f.degree = self.infer_degree(&f);
        f
    }

    fn build_differential(&self, p: usize) -> Vec<SparseVec> {
        let m = self.dim_m();
        let bar = &self.bar;
        let n_rows = bar.count(p + 1);
        let mut rows = Vec::with_capacity(n_rows * m);
        let sign_last = if (p + 1) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
        for t in 0..n_rows {
            let a = bar.decode(t, p + 1);
            let head = bar.encode(&a[..p]);
            let tail = bar.encode(&a[1..]);
            let left = self.module.left_action(bar.basis(a[0]));
            let right = self.module.right_action(bar.basis(a[p]));
            // middle faces, independent of k'
            let mut merged: Vec<(usize, Scalar)> = Vec::new();
            for i in 0..p {
                let prod = self.alg.mul_basis(bar.basis(a[i]), bar.basis(a[i + 1]));
                let sign = if (i + 1) % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                for (c, coef) in prod {
                    if let Some(pc) = bar.position(*c) {
                        let mut b: Vec<usize> = Vec::with_capacity(p);
                        b.extend_from_slice(&a[..i]);
                        b.push(pc);
                        b.extend_from_slice(&a[i + 2..]);
                        merged.push((bar.encode(&b), &sign * coef));
                    }
                }
            }
            for k2 in 0..m {
                let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                let mut add = |col: usize, c: Scalar| {
                    let e = row.entry(col).or_insert_with(Scalar::zero);
                    *e += c;
                };
                for k in 0..m {
                    let l = left.get(k2, k);
                    if !l.is_zero() {
                        add(tail * m + k, l.clone());
                    }
                    let r = right.get(k2, k);
                    if !r.is_zero() {
                        add(head * m + k, &sign_last * r);
                    }
                }
                for (b, c) in &merged {
                    add(b * m + k2, c.clone());
                }
                rows.push(row.into_iter().filter(|(_, c)| !c.is_zero()).collect());
            }
        }
        rows
    }

    /// `δ^p` as sparse rows (one per entry of a level `p+1` cochain).
    pub fn differential_rows(&self, p: usize) -> Arc<Vec<SparseVec>> {
        if let Some(d) = self.cache.lock().expect("cache").get(&p) {
            return d.clone();
        }
        let d = Arc::new(self.build_differential(p));
        self.cache.lock().expect("cache").insert(p, d.clone());
        d
    }

    pub fn differential(&self, f: &Cochain) -> Result<Cochain> {
        if f.values.len() != self.cochain_len(f.level) {
            return Err(Error::Coefficients(format!(
                "cochain of length {} does not match level {} over this module",
                f.values.len(),
                f.level
            )));
        }
        let rows = self.differential_rows(f.level);
        let values = rows
            .iter()
            .map(|row| row.iter().filter(|(j, _)| !f.values[*j].is_zero()).map(|(j, c)| c * &f.values[*j]).sum())
            .collect();
        Ok(Cochain { level: f.level + 1, values, degree: f.degree.clone() })
    }

    pub fn is_cocycle(&self, f: &Cochain) -> Result<bool> {
        Ok(self.differential(f)?.is_zero())
    }

    /// Evaluates `f` multilinearly on slot vectors (reduced coordinates).
    pub fn evaluate(&self, f: &Cochain, slots: &[SparseVec]) -> Vec<Scalar> {
        let m = self.dim_m();
        let mut out = zero_vec(m);
        self.bar.expand(slots, &mut |t, c| {
            for k in 0..m {
                let v = &f.values[t * m + k];
                if !v.is_zero() {
                    out[k] += c * v;
                }
            }
        });
        out
    }

    /// Cochain with values given per tuple by a closure.
    pub fn build_cochain(&self, level: usize, mut value: impl FnMut(&[usize]) -> Vec<Scalar>) -> Cochain {
        let m = self.dim_m();
        let mut values = Vec::with_capacity(self.cochain_len(level));
        for t in 0..self.bar.count(level) {
            let v = value(&self.bar.decode(t, level));
            debug_assert_eq!(v.len(), m);
            values.extend(v);
        }
        self.with_degree(Cochain { level, values, degree: None })
    }
}

impl CochainComplex for BarComplex {
    fn dim(&self, level: usize) -> usize {
        self.cochain_len(level)
    }

    fn basis_degree(&self, level: usize, idx: usize) -> Degree {
        self.entry_degree(level, idx)
    }

    fn differential_rows(&self, level: usize) -> Arc<Vec<SparseVec>> {
        BarComplex::differential_rows(self, level)
    }
}

pub fn cochain_differential(alg: &GradedAlgebra, module: &TwistedBimodule, f: &Cochain) -> Result<Cochain> {
    BarComplex::new(alg, module)?.differential(f)
}

/// `f − g ∈ im δ`, for two cocycles of the same level.
pub fn classes_equal(alg: &GradedAlgebra, module: &TwistedBimodule, f: &Cochain, g: &Cochain) -> Result<bool> {
    let cx = BarComplex::new(alg, module)?;
    classes_equal_in(&cx, f, g)
}

pub fn classes_equal_in<C: CochainComplex>(cx: &C, f: &Cochain, g: &Cochain) -> Result<bool> {
    if f.level != g.level {
        return Err(Error::Invalid("cochains of different levels".into()));
    }
    for h in [f, g] {
        if !cx.apply(h.level, &h.values)?.iter().all(Zero::is_zero) {
            return Err(Error::NotCocycle);
        }
    }
    let diff: Vec<Scalar> = f.values.iter().zip(&g.values).map(|(a, b)| a - b).collect();
    cx.is_coboundary(f.level, &diff)
}

fn check_chain(alg: &GradedAlgebra, m: usize, c: &Chain) -> Result<BarIndex> {
    let bar = BarIndex::new(alg);
    if c.values.len() != bar.count(c.level) * m {
        return Err(Error::Coefficients(format!(
            "chain of length {} does not match level {} over this module",
            c.values.len(),
            c.level
        )));
    }
    Ok(bar)
}

/// Hochschild boundary on `C_p(A, M)`:
/// `∂(m, a_1, …, a_p) = −(m·a_1, …) − Σ (−1)^i (…, a_i a_{i+1}, …) − (−1)^p (a_p·m, a_1, …, a_{p−1})`.
///
/// The overall sign is chosen so that `∂β + β∂ = 1 − T` holds with
/// `β(a_0) = (1, a_0)`.
pub fn chain_differential(alg: &GradedAlgebra, module: &TwistedBimodule, c: &Chain) -> Result<Chain> {
    if c.level == 0 {
        return Err(Error::LevelZero);
    }
    let m = module.dim();
    let bar = check_chain(alg, m, c)?;
    let p = c.level;
    let mut out = zero_vec(bar.count(p - 1) * m);
    let minus = -Scalar::one();
    for (idx, x) in c.values.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        let (t, k) = (idx / m, idx % m);
        let a = bar.decode(t, p);
        let ek = crate::linalg::unit_vec(m, k);
        // first face: m·a_1
        let first = module.act_right(&ek, bar.basis(a[0]));
        let rest = bar.encode(&a[1..]);
        for (kk, v) in first.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[rest * m + kk] += &minus * x * v;
        }
        // inner faces
        for i in 0..p - 1 {
            let sign = if (i + 1) % 2 == 0 { -Scalar::one() } else { Scalar::one() };
            for (cidx, coef) in alg.mul_basis(bar.basis(a[i]), bar.basis(a[i + 1])) {
                if let Some(pc) = bar.position(*cidx) {
                    let mut b = a[..i].to_vec();
                    b.push(pc);
                    b.extend_from_slice(&a[i + 2..]);
                    out[bar.encode(&b) * m + k] += &sign * x * coef;
                }
            }
        }
        // last face: a_p·m
        let last = module.act_left(bar.basis(a[p - 1]), &ek);
        let front = bar.encode(&a[..p - 1]);
        let sign = if p % 2 == 0 { -Scalar::one() } else { Scalar::one() };
        for (kk, v) in last.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            out[front * m + kk] += &sign * x * v;
        }
    }
    Ok(Chain { level: p - 1, values: out })
}

fn image_slot(bar: &BarIndex, phi: &Matrix, pos: usize) -> SparseVec {
    bar.reduce_elem(&phi.column(bar.basis(pos)))
}

/// Connes-type operator on `C_*(A, A_φ)`:
/// `β(a_0, …, a_p) = Σ_{i=1}^{p+1} (−1)^{ip} (1, a_i, …, a_p, a_0, φ(a_1), …, φ(a_{i−1}))`.
pub fn connes_beta(alg: &GradedAlgebra, phi: &Matrix, c: &Chain) -> Result<Chain> {
    let n = alg.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::Coefficients("automorphism does not match the algebra".into()));
    }
    let bar = check_chain(alg, n, c)?;
    let p = c.level;
    let u = alg.unit_index();
    let mut out = zero_vec(bar.count(p + 1) * n);
    for (idx, x) in c.values.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        let (t, k) = (idx / n, idx % n);
        let Some(a0) = bar.position(k) else { continue };
        let a = bar.decode(t, p);
        for i in 1..=p + 1 {
            let sign = if (i * p) % 2 == 0 { x.clone() } else { -x.clone() };
            let mut slots: Vec<SparseVec> = Vec::with_capacity(p + 1);
            for &ai in &a[i - 1..] {
                slots.push(vec![(ai, Scalar::one())]);
            }
            slots.push(vec![(a0, Scalar::one())]);
            for &aj in &a[..i - 1] {
                slots.push(image_slot(&bar, phi, aj));
            }
            bar.expand(&slots, &mut |tt, coef| out[tt * n + u] += &sign * coef);
        }
    }
    Ok(Chain { level: p + 1, values: out })
}

/// `T(a_0, …, a_p) = (φ(a_0), …, φ(a_p))`.
pub fn t_operator(alg: &GradedAlgebra, phi: &Matrix, c: &Chain) -> Result<Chain> {
    let n = alg.dim();
    if phi.rows() != n || phi.cols() != n {
        return Err(Error::Coefficients("automorphism does not match the algebra".into()));
    }
    let bar = check_chain(alg, n, c)?;
    let p = c.level;
    let mut out = zero_vec(c.values.len());
    for (idx, x) in c.values.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        let (t, k) = (idx / n, idx % n);
        let a = bar.decode(t, p);
        let slots: Vec<SparseVec> = a.iter().map(|&ai| image_slot(&bar, phi, ai)).collect();
        let m0 = phi.column(k);
        bar.expand(&slots, &mut |tt, coef| {
            for (kk, v) in m0.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                out[tt * n + kk] += x * coef * v;
            }
        });
    }
    Ok(Chain { level: p, values: out })
}

#[cfg(test)]
mod tests;
