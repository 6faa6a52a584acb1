//! Comparison between the bar complex of `R ⊗^t S` and the tensor product of
//! the bar complexes of `R` and `S`: shuffles, twisted Eilenberg–Zilber and
//! Alexander–Whitney maps, box products, and the BV decomposition check.

use crate::algebra::{Bicharacter, Degree, GradedAlgebra};
use crate::bv::{bv_delta_left, bv_delta_right, BVContext, Mutation};
use crate::error::{Error, Result};
use crate::frobenius::{nakayama_semisimple, twisted_frobenius_product, FrobeniusStructure};
use crate::hochschild::{
    cohomology, cohomology_restricted, invariant_representative, BarIndex, Cochain, CochainComplex, CohomologyGroup,
};
use crate::linalg::sparse::SparseVec;
use crate::linalg::{unit_vec, zero_vec, Matrix, Scalar};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

/// A `(p, q)`-shuffle: `slots[i]` is the position taken by the `i`-th
/// element, the first `p` elements coming from the left factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub slots: Vec<usize>,
    pub sign: i32,
}

impl Shuffle {
    /// Pairs `(a, b)` of a left index and a right index with `b` placed before `a`.
    pub fn inversions(&self, p: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..p {
            for b in p..self.slots.len() {
                if self.slots[b] < self.slots[a] {
                    out.push((a, b - p));
                }
            }
        }
        out
    }
}

/// All `C(p+q, p)` shuffles in lexicographic order of the left positions.
pub fn shuffles(p: usize, q: usize) -> Vec<Shuffle> {
    fn go(start: usize, left: usize, total: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(acc.clone());
            return;
        }
        for pos in start..=total - left {
            acc.push(pos);
            go(pos + 1, left - 1, total, acc, out);
            acc.pop();
        }
    }
    let n = p + q;
    let mut choices = Vec::new();
    go(0, p, n, &mut Vec::new(), &mut choices);
    choices
        .into_iter()
        .map(|left| {
            let right: Vec<usize> = (0..n).filter(|x| !left.contains(x)).collect();
            let slots: Vec<usize> = left.iter().chain(&right).copied().collect();
            let inv: usize = left.iter().map(|&a| right.iter().filter(|&&b| b < a).count()).sum();
            Shuffle { slots, sign: if inv % 2 == 0 { 1 } else { -1 } }
        })
        .collect()
}

fn sign(e: usize) -> Scalar {
    if e % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// One term `coef · left · [r-tuple] ⊗ [s-tuple] · right` of an
/// Alexander–Whitney image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwTerm {
    pub coef: Scalar,
    pub left: Vec<Scalar>,
    pub r: Vec<usize>,
    pub s: Vec<usize>,
    pub right: Vec<Scalar>,
}

/// The complex `C_t = Hom(BR ⊗ BS, R ⊗^t S)` with the tensor differential,
/// together with the comparison maps to the bar complex of `R ⊗^t S`.
/// On a block of bidegree `(n, m)` the differential is `(−1)^m δ_R + δ_S`;
/// `EZ` carries `(−1)^{nm}` times the shuffle sign and `AW` carries
/// `(−1)^{p(N−p)}` on its `p`-th term.
#[derive(Debug)]
pub struct ProductComplex {
    pub r: FrobeniusStructure,
    pub s: FrobeniusStructure,
    pub t: Bicharacter,
    pub prod: FrobeniusStructure,
    pub bar_r: BarIndex,
    pub bar_s: BarIndex,
    pub bar_a: BarIndex,
    r_in_a: Vec<usize>,
    s_in_a: Vec<usize>,
    a_parts: Vec<(usize, usize)>,
    l_r: Vec<Matrix>,
    r_r: Vec<Matrix>,
    l_s: Vec<Matrix>,
    r_s: Vec<Matrix>,
    drop_ez_coefficients: bool,
    diff_cache: Mutex<HashMap<usize, Arc<Vec<SparseVec>>>>,
    hh_cache: Mutex<HashMap<usize, Arc<CohomologyGroup>>>,
}

impl ProductComplex {
    pub fn new(r: &FrobeniusStructure, s: &FrobeniusStructure, t: &Bicharacter) -> Result<Self> {
        let prod = twisted_frobenius_product(r, s, t)?;
        let (ra, sa) = (&r.algebra, &s.algebra);
        let a = &prod.algebra;
        let ds = sa.dim();
        let (bar_r, bar_s, bar_a) = (BarIndex::new(ra), BarIndex::new(sa), BarIndex::new(a));
        let (ur, us) = (ra.unit_index(), sa.unit_index());
        let r_in_a: Vec<usize> = (0..bar_r.nred())
            .map(|p| bar_a.position(bar_r.basis(p) * ds + us).expect("non-unit"))
            .collect();
        let s_in_a: Vec<usize> = (0..bar_s.nred())
            .map(|p| bar_a.position(ur * ds + bar_s.basis(p)).expect("non-unit"))
            .collect();
        let a_parts = (0..a.dim()).map(|k| (k / ds, k % ds)).collect();
        let elem = |pos: usize| unit_vec(a.dim(), bar_a.basis(pos));
        let l_r = r_in_a.iter().map(|&p| a.left_mult_matrix(&elem(p))).collect();
        let r_r = r_in_a.iter().map(|&p| a.right_mult_matrix(&elem(p))).collect();
        let l_s = s_in_a.iter().map(|&p| a.left_mult_matrix(&elem(p))).collect();
        let r_s = s_in_a.iter().map(|&p| a.right_mult_matrix(&elem(p))).collect();
        Ok(ProductComplex {
            r: r.clone(),
            s: s.clone(),
            t: t.clone(),
            prod,
            bar_r,
            bar_s,
            bar_a,
            r_in_a,
            s_in_a,
            a_parts,
            l_r,
            r_r,
            l_s,
            r_s,
            drop_ez_coefficients: false,
            diff_cache: Mutex::new(HashMap::new()),
            hh_cache: Mutex::new(HashMap::new()),
        })
    }

    /// Same complex whose Eilenberg–Zilber map forgets the bicharacter
    /// coefficients (a deliberately wrong map).
    #[doc(hidden)]
    pub fn with_untwisted_shuffles(&self) -> Result<Self> {
        let mut out = Self::new(&self.r, &self.s, &self.t)?;
        out.drop_ez_coefficients = true;
        Ok(out)
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.prod.algebra
    }

    pub fn dim_a(&self) -> usize {
        self.prod.dim()
    }

    fn block_len(&self, n: usize, m: usize) -> usize {
        self.bar_r.count(n) * self.bar_s.count(m) * self.dim_a()
    }

    /// Offset of the `(n, level − n)` block inside level `level`.
    pub fn block_offset(&self, level: usize, n: usize) -> usize {
        (0..n).map(|i| self.block_len(i, level - i)).sum()
    }

    pub fn index(&self, n: usize, m: usize, tr: usize, ts: usize, k: usize) -> usize {
        self.block_offset(n + m, n) + (tr * self.bar_s.count(m) + ts) * self.dim_a() + k
    }

    /// `(n, r-tuple index, s-tuple index, k)` of an entry at `level`.
    pub fn locate(&self, level: usize, mut idx: usize) -> (usize, usize, usize, usize) {
        for n in 0..=level {
            let len = self.block_len(n, level - n);
            if idx < len {
                let da = self.dim_a();
                let cs = self.bar_s.count(level - n);
                return (n, idx / da / cs, (idx / da) % cs, idx % da);
            }
            idx -= len;
        }
        panic!("index out of range for level {level}");
    }

    fn a_degree(&self, k: usize) -> &Degree {
        self.prod.algebra.degree(k)
    }

    fn tuple_bidegree(&self, r: &[usize], s: &[usize]) -> Degree {
        self.bar_r.tuple_degree(r).concat(&self.bar_s.tuple_degree(s))
    }

    fn r_deg(&self, pos: usize) -> &Degree {
        self.r.algebra.degree(self.bar_r.basis(pos))
    }

    fn s_deg(&self, pos: usize) -> &Degree {
        self.s.algebra.degree(self.bar_s.basis(pos))
    }

    fn tinv(&self, a: &Degree, b: &Degree) -> Scalar {
        self.t.at(a, b).recip()
    }

    fn build_differential(&self, level: usize) -> Vec<SparseVec> {
        let da = self.dim_a();
        let (ra, sa) = (&self.r.algebra, &self.s.algebra);
        let (br, bs) = (&self.bar_r, &self.bar_s);
        let top = level + 1;
        let mut rows = Vec::with_capacity(self.dim(top));
        for n in 0..=top {
            let m = top - n;
            for tr in 0..br.count(n) {
                let r = br.decode(tr, n);
                for ts in 0..bs.count(m) {
                    let s = bs.decode(ts, m);
                    let s_deg = bs.tuple_degree(&s);
                    let r_deg = br.tuple_degree(&r);
                    // (column block entries independent of k') and module actions
                    let mut inner: Vec<(usize, Scalar)> = Vec::new();
                    let mut acts: Vec<(usize, Scalar, &Matrix)> = Vec::new();
                    if n > 0 {
                        let col = self.index(n - 1, m, br.encode(&r[1..]), ts, 0);
                        acts.push((col, sign(m), &self.l_r[r[0]]));
                        for i in 0..n - 1 {
                            for (c, coef) in ra.mul_basis(br.basis(r[i]), br.basis(r[i + 1])) {
                                if let Some(pc) = br.position(*c) {
                                    let mut b = r[..i].to_vec();
                                    b.push(pc);
                                    b.extend_from_slice(&r[i + 2..]);
                                    inner.push((self.index(n - 1, m, br.encode(&b), ts, 0), sign(m + i + 1) * coef));
                                }
                            }
                        }
                        let col = self.index(n - 1, m, br.encode(&r[..n - 1]), ts, 0);
                        let c = sign(m + n) * self.tinv(self.r_deg(r[n - 1]), &s_deg);
                        acts.push((col, c, &self.r_r[r[n - 1]]));
                    }
                    if m > 0 {
                        let eps = Scalar::one();
                        let col = self.index(n, m - 1, tr, bs.encode(&s[1..]), 0);
                        acts.push((col, &eps * self.tinv(&r_deg, self.s_deg(s[0])), &self.l_s[s[0]]));
                        for j in 0..m - 1 {
                            for (c, coef) in sa.mul_basis(bs.basis(s[j]), bs.basis(s[j + 1])) {
                                if let Some(pc) = bs.position(*c) {
                                    let mut b = s[..j].to_vec();
                                    b.push(pc);
                                    b.extend_from_slice(&s[j + 2..]);
                                    inner.push((self.index(n, m - 1, tr, bs.encode(&b), 0), &eps * sign(j + 1) * coef));
                                }
                            }
                        }
                        let col = self.index(n, m - 1, tr, bs.encode(&s[..m - 1]), 0);
                        acts.push((col, &eps * sign(m), &self.r_s[s[m - 1]]));
                    }
                    for k2 in 0..da {
                        let mut row: BTreeMap<usize, Scalar> = BTreeMap::new();
                        let mut add = |col: usize, c: Scalar| {
                            *row.entry(col).or_insert_with(Scalar::zero) += c;
                        };
                        for (base, c, mat) in &acts {
                            for k in 0..da {
                                let x = mat.get(k2, k);
                                if !x.is_zero() {
                                    add(base + k, c * x);
                                }
                            }
                        }
                        for (base, c) in &inner {
                            add(base + k2, c.clone());
                        }
                        rows.push(row.into_iter().filter(|(_, c)| !c.is_zero()).collect());
                    }
                }
            }
        }
        rows
    }

    pub fn zero(&self, level: usize) -> Cochain {
        Cochain::zero(level, self.dim(level))
    }

    pub fn differential(&self, h: &Cochain) -> Result<Cochain> {
        Ok(Cochain { level: h.level + 1, values: self.apply(h.level, &h.values)?, degree: h.degree.clone() })
    }

    pub fn is_cocycle(&self, h: &Cochain) -> Result<bool> {
        Ok(self.differential(h)?.is_zero())
    }

    pub fn cohomology(&self, level: usize) -> Result<Arc<CohomologyGroup>> {
        if let Some(h) = self.hh_cache.lock().expect("cache").get(&level) {
            return Ok(h.clone());
        }
        let h = Arc::new(cohomology(self, level)?);
        self.hh_cache.lock().expect("cache").insert(level, h.clone());
        Ok(h)
    }

    pub fn classes_equal(&self, f: &Cochain, g: &Cochain) -> Result<bool> {
        let diff = f.sub(g);
        if !self.is_cocycle(f)? || !self.is_cocycle(g)? {
            return Err(Error::NotCocycle);
        }
        Ok(self.cohomology(f.level)?.is_coboundary(&diff))
    }

    /// Value `h(r ⊗ s)` as an element of `R ⊗^t S`.
    pub fn value<'a>(&self, h: &'a Cochain, n: usize, tr: usize, ts: usize) -> &'a [Scalar] {
        let i = self.index(n, h.level - n, tr, ts, 0);
        &h.values[i..i + self.dim_a()]
    }

    /// `r ⊗ 1` and `1 ⊗ s` as elements of `R ⊗^t S`.
    fn embed_r(&self, x: &[Scalar]) -> Vec<Scalar> {
        let ds = self.s.dim();
        let us = self.s.algebra.unit_index();
        let mut out = zero_vec(self.dim_a());
        for (i, c) in x.iter().enumerate() {
            out[i * ds + us] = c.clone();
        }
        out
    }

    fn embed_s(&self, y: &[Scalar]) -> Vec<Scalar> {
        let ds = self.s.dim();
        let ur = self.r.algebra.unit_index();
        let mut out = zero_vec(self.dim_a());
        for (j, c) in y.iter().enumerate() {
            out[ur * ds + j] = c.clone();
        }
        out
    }

    /// `EZ^t([r_1|…|r_n] ⊗ [s_1|…|s_m])` as `(coefficient, tuple over R⊗^tS)`.
    pub fn ez_terms(&self, r: &[usize], s: &[usize]) -> Vec<(Scalar, Vec<usize>)> {
        let (n, m) = (r.len(), s.len());
        shuffles(n, m)
            .into_iter()
            .map(|sh| {
                let mut coef = if sh.sign > 0 { sign(n * m) } else { -sign(n * m) };
                if !self.drop_ez_coefficients {
                    for (a, b) in sh.inversions(n) {
                        coef *= self.tinv(self.r_deg(r[a]), self.s_deg(s[b]));
                    }
                }
                let mut tuple = vec![0; n + m];
                for (i, &pos) in sh.slots.iter().enumerate() {
                    tuple[pos] = if i < n { self.r_in_a[r[i]] } else { self.s_in_a[s[i - n]] };
                }
                (coef, tuple)
            })
            .collect()
    }

    /// `AW^t(1[z_1|…|z_N]1)` for basis slots `z_i = r_i ⊗ s_i` of `R ⊗^t S`,
    /// given by reduced positions.
    pub fn aw_terms(&self, z: &[usize]) -> Vec<AwTerm> {
        let (ra, sa) = (&self.r.algebra, &self.s.algebra);
        let nn = z.len();
        let parts: Vec<(usize, usize)> = z.iter().map(|&p| self.a_parts[self.bar_a.basis(p)]).collect();
        let rd = |i: usize| ra.degree(parts[i].0).clone();
        let sd = |i: usize| sa.degree(parts[i].1).clone();
        let zero_r = Degree::zero(ra.rank());
        let zero_s = Degree::zero(sa.rank());
        let mut out = Vec::new();
        for p in 0..=nn {
            let r_front: Option<Vec<usize>> = (0..p).map(|i| self.bar_r.position(parts[i].0)).collect();
            let s_back: Option<Vec<usize>> = (p..nn).map(|i| self.bar_s.position(parts[i].1)).collect();
            let (Some(rt), Some(st)) = (r_front, s_back) else { continue };
            let mut sigma = unit_vec(sa.dim(), sa.unit_index());
            for i in 0..p {
                sigma = sa.multiply(&sigma, &unit_vec(sa.dim(), parts[i].1)).expect("dims");
            }
            let mut rho = unit_vec(ra.dim(), ra.unit_index());
            for i in p..nn {
                rho = ra.multiply(&rho, &unit_vec(ra.dim(), parts[i].0)).expect("dims");
            }
            if sigma.iter().all(Zero::is_zero) || rho.iter().all(Zero::is_zero) {
                continue;
            }
            let sigma_deg = (0..p).fold(zero_s.clone(), |acc, i| &acc + &sd(i));
            let tail_s_deg = (p..nn).fold(zero_s.clone(), |acc, i| &acc + &sd(i));
            let front_r_deg = (0..p).fold(zero_r.clone(), |acc, i| &acc + &rd(i));
            let rho_deg = (p..nn).fold(zero_r.clone(), |acc, i| &acc + &rd(i));
            let mut coef = sign(p * (nn - p)) * self.tinv(&front_r_deg, &sigma_deg) * self.tinv(&rho_deg, &(&sigma_deg + &tail_s_deg));
            for i in 0..nn {
                for j in i + 1..nn {
                    coef *= self.t.at(&rd(j), &sd(i));
                }
            }
            out.push(AwTerm { coef, left: self.embed_s(&sigma), r: rt, s: st, right: self.embed_r(&rho) });
        }
        out
    }

    /// `AW^*h`: the bar cochain `z ↦ h(AW^t(z))` on `R ⊗^t S`.
    pub fn aw_pullback(&self, h: &Cochain) -> Result<Cochain> {
        self.check_len(h)?;
        let a = self.algebra();
        let da = self.dim_a();
        let nn = h.level;
        let mut values = Vec::with_capacity(self.bar_a.count(nn) * da);
        for tz in 0..self.bar_a.count(nn) {
            let z = self.bar_a.decode(tz, nn);
            let mut acc = zero_vec(da);
            for term in self.aw_terms(&z) {
                let n = term.r.len();
                let v = self.value(h, n, self.bar_r.encode(&term.r), self.bar_s.encode(&term.s));
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                let x = a.multiply(&a.multiply(&term.left, v)?, &term.right)?;
                for (k, c) in x.iter().enumerate() {
                    acc[k] += &term.coef * c;
                }
            }
            values.extend(acc);
        }
        Ok(Cochain { level: nn, values, degree: h.degree.clone() })
    }

    /// `EZ^*f`: the product cochain `r ⊗ s ↦ f(EZ^t(r ⊗ s))`.
    pub fn ez_pullback(&self, f: &Cochain) -> Result<Cochain> {
        let da = self.dim_a();
        let nn = f.level;
        if f.values.len() != self.bar_a.count(nn) * da {
            return Err(Error::Coefficients("cochain is not over the product algebra".into()));
        }
        let mut out = self.zero(nn);
        for n in 0..=nn {
            let m = nn - n;
            for tr in 0..self.bar_r.count(n) {
                let r = self.bar_r.decode(tr, n);
                for ts in 0..self.bar_s.count(m) {
                    let s = self.bar_s.decode(ts, m);
                    let base = self.index(n, m, tr, ts, 0);
                    for (c, tuple) in self.ez_terms(&r, &s) {
                        let v = f.value(self.bar_a.encode(&tuple), da);
                        for (k, x) in v.iter().enumerate() {
                            if !x.is_zero() {
                                out.values[base + k] += &c * x;
                            }
                        }
                    }
                }
            }
        }
        out.degree = f.degree.clone();
        Ok(out)
    }

    fn check_len(&self, h: &Cochain) -> Result<()> {
        if h.values.len() != self.dim(h.level) {
            return Err(Error::Coefficients("cochain is not a product cochain of this level".into()));
        }
        Ok(())
    }

    /// Whether `AW^t ∘ EZ^t` is the identity on every generator
    /// `[r] ⊗ [s]` with `|r| + |s| ≤ max_level`, computed in the free bimodule.
    pub fn identity_check(&self, max_level: usize) -> bool {
        self.identity_failure(max_level).is_none()
    }

    /// First generator on which `AW^t ∘ EZ^t` differs from the identity.
    pub fn identity_failure(&self, max_level: usize) -> Option<(Vec<usize>, Vec<usize>)> {
        let da = self.dim_a();
        let unit = self.algebra().unit_index();
        for level in 0..=max_level {
            for n in 0..=level {
                let m = level - n;
                for tr in 0..self.bar_r.count(n) {
                    let r = self.bar_r.decode(tr, n);
                    for ts in 0..self.bar_s.count(m) {
                        let s = self.bar_s.decode(ts, m);
                        let mut acc: BTreeMap<(Vec<usize>, Vec<usize>), Vec<Scalar>> = BTreeMap::new();
                        for (c, tuple) in self.ez_terms(&r, &s) {
                            for term in self.aw_terms(&tuple) {
                                let e = acc.entry((term.r.clone(), term.s.clone())).or_insert_with(|| zero_vec(da * da));
                                for (i, x) in term.left.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                                    for (j, y) in term.right.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                                        e[i * da + j] += &c * &term.coef * x * y;
                                    }
                                }
                            }
                        }
                        let ok = acc.iter().all(|((rr, ss), v)| {
                            let expected = if rr == &r && ss == &s { unit_vec(da * da, unit * da + unit) } else { zero_vec(da * da) };
                            *v == expected
                        }) && acc.contains_key(&(r.clone(), s.clone()));
                        if !ok {
                            return Some((r, s));
                        }
                    }
                }
            }
        }
        None
    }

    /// `AW^*` and `EZ^*` commute with the differentials on every basis
    /// cochain of level `< max_level`.
    pub fn chain_map_check(&self, max_level: usize) -> Result<bool> {
        let bar_cx = crate::hochschild::BarComplex::new(self.algebra(), &crate::algebra::regular_bimodule(self.algebra()))?;
        for level in 0..max_level {
            for i in 0..self.dim(level) {
                let h = Cochain { level, values: unit_vec(self.dim(level), i), degree: None };
                let lhs = bar_cx.differential(&self.aw_pullback(&h)?)?;
                let rhs = self.aw_pullback(&self.differential(&h)?)?;
                if lhs.values != rhs.values {
                    return Ok(false);
                }
            }
            for i in 0..bar_cx.cochain_len(level) {
                let f = Cochain { level, values: unit_vec(bar_cx.cochain_len(level), i), degree: None };
                let lhs = self.differential(&self.ez_pullback(&f)?)?;
                let rhs = self.ez_pullback(&bar_cx.differential(&f)?)?;
                if lhs.values != rhs.values {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Degrees occurring among level-`level` cochains of the left factor.
    pub fn r_degrees(&self, level: usize) -> BTreeSet<Degree> {
        cochain_degrees(&self.r.algebra, &self.bar_r, level)
    }

    pub fn s_degrees(&self, level: usize) -> BTreeSet<Degree> {
        cochain_degrees(&self.s.algebra, &self.bar_s, level)
    }
}

fn cochain_degrees(alg: &GradedAlgebra, bar: &BarIndex, level: usize) -> BTreeSet<Degree> {
    let mut tuple_degrees = BTreeSet::new();
    for t in 0..bar.count(level) {
        tuple_degrees.insert(bar.tuple_degree(&bar.decode(t, level)));
    }
    let mut out = BTreeSet::new();
    for d in alg.degrees() {
        for td in &tuple_degrees {
            out.insert(d - td);
        }
    }
    out
}

impl CochainComplex for ProductComplex {
    fn dim(&self, level: usize) -> usize {
        (0..=level).map(|n| self.block_len(n, level - n)).sum()
    }

    fn basis_degree(&self, level: usize, idx: usize) -> Degree {
        let (n, tr, ts, k) = self.locate(level, idx);
        let r = self.bar_r.decode(tr, n);
        let s = self.bar_s.decode(ts, level - n);
        self.a_degree(k) - &self.tuple_bidegree(&r, &s)
    }

    fn differential_rows(&self, level: usize) -> Arc<Vec<SparseVec>> {
        if let Some(d) = self.diff_cache.lock().expect("cache").get(&level) {
            return d.clone();
        }
        let d = Arc::new(self.build_differential(level));
        self.diff_cache.lock().expect("cache").insert(level, d.clone());
        d
    }
}

/// `(f ⊠ g)([r] ⊗ [s]) = (−1)^{nm} f([r]) ⊗ g([s])`.
pub fn box_product(pc: &ProductComplex, f: &Cochain, g: &Cochain) -> Result<Cochain> {
    let (n, m) = (f.level, g.level);
    let (dr, ds) = (pc.r.dim(), pc.s.dim());
    if f.values.len() != pc.bar_r.count(n) * dr || g.values.len() != pc.bar_s.count(m) * ds {
        return Err(Error::Coefficients("factors do not match the product complex".into()));
    }
    let mut out = pc.zero(n + m);
    let eps = sign(n * m);
    for tr in 0..pc.bar_r.count(n) {
        let fv = f.value(tr, dr);
        if fv.iter().all(Zero::is_zero) {
            continue;
        }
        for ts in 0..pc.bar_s.count(m) {
            let gv = g.value(ts, ds);
            let base = pc.index(n, m, tr, ts, 0);
            for (i, x) in fv.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (j, y) in gv.iter().enumerate().filter(|(_, y)| !y.is_zero()) {
                    out.values[base + i * ds + j] = &eps * x * y;
                }
            }
        }
    }
    out.degree = match (&f.degree, &g.degree) {
        (Some(a), Some(b)) => Some(a.concat(b)),
        _ => None,
    };
    Ok(out)
}

/// Box product of `f ∈ C^n(R, R_b̂)` of degree `a` and `g ∈ C^m(S, _âS)` of
/// degree `b`, checking that the twists are paired as required.
pub fn box_product_checked(
    pc: &ProductComplex,
    ctx_f: &BVContext,
    f: &Cochain,
    ctx_g: &BVContext,
    g: &Cochain,
) -> Result<Cochain> {
    use crate::hochschild::Twist;
    let a = ctx_f.complex().infer_degree(f);
    let b = ctx_g.complex().infer_degree(g);
    let ok = match (ctx_f.twist(), ctx_g.twist(), &a, &b) {
        (Twist::Right(tb), Twist::Left(ta), Some(a), Some(b)) => tb == b && ta == a,
        (_, _, None, _) | (_, _, _, None) => f.is_zero() || g.is_zero(),
        _ => false,
    };
    if !ok {
        return Err(Error::Coefficients("box product needs f ∈ C(R, R_b̂)^a and g ∈ C(S, _âS)^b".into()));
    }
    box_product(pc, f, g)
}

/// `Δ̃(h) = EZ^*(Δ(AW^*h))` on the class of a product cocycle; `None` on
/// level 0.
pub fn delta_tilde(pc: &ProductComplex, ctx_a: &BVContext, h: &Cochain) -> Result<Option<Cochain>> {
    let pulled = pc.aw_pullback(h)?;
    match ctx_a.delta_class(&pulled)? {
        None => Ok(None),
        Some(d) => pc.ez_pullback(&d).map(Some),
    }
}

/// One row of the decomposition table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionRow {
    pub level: usize,
    pub a: Degree,
    pub b: Degree,
    /// `dim HH^level(R ⊗^t S)^{(a,b)}`.
    pub product: usize,
    /// `Σ_{i+j=level} dim HH^i(R, R_b̂)^a · dim HH^j(S, _âS)^b`.
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionTable {
    pub rows: Vec<DecompositionRow>,
    /// Total dimension of `HH^level(R ⊗^t S)` per level.
    pub totals: Vec<usize>,
}

impl DecompositionTable {
    pub fn agrees(&self) -> bool {
        self.rows.iter().all(|r| r.product == r.components)
    }
}

/// Twisted component contexts, built on demand.
#[derive(Debug)]
pub struct Components<'a> {
    pc: &'a ProductComplex,
    right: Mutex<HashMap<Degree, Arc<BVContext>>>,
    left: Mutex<HashMap<Degree, Arc<BVContext>>>,
    mutation: Mutation,
}

impl<'a> Components<'a> {
    pub fn new(pc: &'a ProductComplex) -> Self {
        Components { pc, right: Mutex::new(HashMap::new()), left: Mutex::new(HashMap::new()), mutation: Mutation::None }
    }

    /// Components whose right-twisted contexts carry `mutation`.
    #[doc(hidden)]
    pub fn with_mutation(pc: &'a ProductComplex, mutation: Mutation) -> Self {
        Components { mutation, ..Self::new(pc) }
    }

    /// Context for `C^*(R, R_b̂)`.
    pub fn right(&self, b: &Degree) -> Result<Arc<BVContext>> {
        if let Some(c) = self.right.lock().expect("cache").get(b) {
            return Ok(c.clone());
        }
        let mut ctx = BVContext::right(&self.pc.r, &self.pc.t, b)?;
        if self.mutation != Mutation::None {
            ctx = ctx.with_mutation(self.mutation)?;
        }
        let ctx = Arc::new(ctx);
        self.right.lock().expect("cache").insert(b.clone(), ctx.clone());
        Ok(ctx)
    }

    /// Context for `C^*(S, _âS)`.
    pub fn left(&self, a: &Degree) -> Result<Arc<BVContext>> {
        if let Some(c) = self.left.lock().expect("cache").get(a) {
            return Ok(c.clone());
        }
        let ctx = Arc::new(BVContext::left(&self.pc.s, &self.pc.t, a)?);
        self.left.lock().expect("cache").insert(a.clone(), ctx.clone());
        Ok(ctx)
    }

    fn right_dim(&self, level: usize, a: &Degree, b: &Degree) -> Result<usize> {
        let ctx = self.right(b)?;
        let h = cohomology_restricted(ctx.complex(), level, Some(std::slice::from_ref(a)))?;
        Ok(h.dimension)
    }

    fn left_dim(&self, level: usize, b: &Degree, a: &Degree) -> Result<usize> {
        let ctx = self.left(a)?;
        let h = cohomology_restricted(ctx.complex(), level, Some(std::slice::from_ref(b)))?;
        Ok(h.dimension)
    }
}

/// Graded dimensions of `HH^*(R ⊗^t S)` against the component products,
/// bidegree by bidegree, through `max_level`.
pub fn decomposition_dims(pc: &ProductComplex, max_level: usize) -> Result<DecompositionTable> {
    let comps = Components::new(pc);
    let ctx_a = BVContext::untwisted(&pc.prod)?;
    let rank_r = pc.r.algebra.rank();
    let mut rows = Vec::new();
    let mut totals = Vec::new();
    for level in 0..=max_level {
        let h = ctx_a.cohomology(level)?;
        totals.push(h.dimension);
        let mut candidates: BTreeSet<(Degree, Degree)> =
            h.graded_dims.keys().map(|d| d.split(rank_r)).collect();
        for i in 0..=level {
            for a in pc.r_degrees(i) {
                for b in pc.s_degrees(level - i) {
                    candidates.insert((a.clone(), b));
                }
            }
        }
        for (a, b) in candidates {
            let product = h.graded_dims.get(&a.concat(&b)).copied().unwrap_or(0);
            let mut components = 0;
            for i in 0..=level {
                let j = level - i;
                if !pc.r_degrees(i).contains(&a) || !pc.s_degrees(j).contains(&b) {
                    continue;
                }
                let x = comps.right_dim(i, &a, &b)?;
                if x > 0 {
                    components += x * comps.left_dim(j, &b, &a)?;
                }
            }
            if product > 0 || components > 0 {
                rows.push(DecompositionRow { level, a, b, product, components });
            }
        }
    }
    Ok(DecompositionTable { rows, totals })
}

/// Outcome of the decomposition formula on one pair of component classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    /// Levels `(n, m)` of `f` and `g`.
    pub levels: (usize, usize),
    /// Internal degrees `(|f|, |g|)`.
    pub degrees: (Degree, Degree),
    /// Indices of `f` and `g` among the representatives of their degree.
    pub indices: (usize, usize),
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TheoremReport {
    pub pairs: Vec<PairCheck>,
    pub precondition_failures: Vec<String>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.precondition_failures.is_empty() && self.pairs.iter().all(|p| p.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairCheck> {
        self.pairs.iter().filter(|p| !p.passed)
    }
}

fn add_opt(acc: Option<Cochain>, c: &Scalar, x: Option<Cochain>) -> Option<Cochain> {
    match (acc, x) {
        (a, None) => a,
        (None, Some(x)) => Some(x.scale(c)),
        (Some(a), Some(x)) => Some(a.add(&x.scale(c))),
    }
}

/// Checks `Δ̃(f⊠g) = Δ_c(f) ⊠ g + (−1)^n f ⊠ _dΔ(g)` on every
/// pair of component basis classes with `n + m ≤ max_level`.
pub fn verify_main_theorem(pc: &ProductComplex, max_level: usize) -> Result<TheoremReport> {
    verify_main_theorem_with(pc, &Components::new(pc), max_level)
}

#[doc(hidden)]
pub fn verify_main_theorem_with(pc: &ProductComplex, comps: &Components, max_level: usize) -> Result<TheoremReport> {
    let mut report = TheoremReport::default();
    for (name, f) in [("left", &pc.r), ("right", &pc.s)] {
        if !nakayama_semisimple(f) {
            report.precondition_failures.push(format!("{name} factor has a non-semisimple Nakayama automorphism"));
        }
    }
    if !report.precondition_failures.is_empty() {
        return Ok(report);
    }
    let ctx_a = BVContext::untwisted(&pc.prod)?;
    for total in 0..=max_level {
        for n in 0..=total {
            let m = total - n;
            for d in pc.r_degrees(n) {
                for c in pc.s_degrees(m) {
                    let ctx_f = comps.right(&c)?;
                    let hf = cohomology_restricted(ctx_f.complex(), n, Some(std::slice::from_ref(&d)))?;
                    if hf.dimension == 0 {
                        continue;
                    }
                    let ctx_g = comps.left(&d)?;
                    let hg = cohomology_restricted(ctx_g.complex(), m, Some(std::slice::from_ref(&c)))?;
                    for (i, f0) in hf.representatives.iter().enumerate() {
                        for (j, g0) in hg.representatives.iter().enumerate() {
                            let outcome = check_pair(pc, &ctx_a, &ctx_f, f0, &ctx_g, g0);
                            let (passed, detail) = match outcome {
                                Ok(true) => (true, None),
                                Ok(false) => (false, Some("classes differ".to_string())),
                                Err(e) => (false, Some(e.to_string())),
                            };
                            report.pairs.push(PairCheck {
                                levels: (n, m),
                                degrees: (d.clone(), c.clone()),
                                indices: (i, j),
                                passed,
                                detail,
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

fn check_pair(
    pc: &ProductComplex,
    ctx_a: &BVContext,
    ctx_f: &BVContext,
    f0: &Cochain,
    ctx_g: &BVContext,
    g0: &Cochain,
) -> Result<bool> {
    let (n, m) = (f0.level, g0.level);
    let f = invariant_representative(&ctx_f.data, f0)?;
    let g = invariant_representative(&ctx_g.data, g0)?;
    let fg = box_product_checked(pc, ctx_f, &f, ctx_g, &g)?;
    if !pc.is_cocycle(&fg)? {
        return Err(Error::Invalid("box product of cocycles is not a cocycle".into()));
    }
    let lhs = delta_tilde(pc, ctx_a, &fg)?;
    let df = if n == 0 { None } else { Some(box_product(pc, &bv_delta_right(ctx_f, &f)?, &g)?) };
    let dg = if m == 0 { None } else { Some(box_product(pc, &f, &bv_delta_left(ctx_g, &g)?)?) };
    let rhs = add_opt(df, &sign(n), dg);
    match (lhs, rhs) {
        (None, None) => Ok(true),
        (Some(l), None) => Ok(pc.cohomology(l.level)?.is_coboundary(&l) && pc.is_cocycle(&l)?),
        (None, Some(r)) => Ok(pc.cohomology(r.level)?.is_coboundary(&r) && pc.is_cocycle(&r)?),
        (Some(l), Some(r)) => pc.classes_equal(&l, &r),
    }
}

#[cfg(test)]
mod tests;
